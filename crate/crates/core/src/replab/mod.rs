//! Numerical checks on representation varieties: matrix evaluation of words
//! and polynomials, sampling of the relation loci and their block versions,
//! the maps between them and pointwise verification of the comparison diagrams.

mod diagrams;
mod eval;
mod lab;
mod sample;
mod verify;

use thiserror::Error;

use crate::relator::RelatorError;
use crate::words::WordError;

pub use diagrams::{check_diagrams, DiagramConfig, DiagramReport, Expectation, SquareReport};
pub use eval::{
    assemble, block_corner, block_diagonal, block_lower_left, block_top_bottom, eval_poly,
    eval_word, lambda_n, Assignment, CMat,
};
pub use lab::{Lab, SplitPoint, XPoint, XPrimePoint, YPoint, YPrimePoint};
pub use verify::{run_verification, Check, Tolerances, VerificationReport, VerifyConfig};
pub use sample::{
    random_block_point, random_invertible, sample_rng, sample_v, sample_v_block, SampleRng,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReplabError {
    #[error("matrix for `{name}` is singular or ill-conditioned (condition estimate {condition:e})")]
    Singular { name: String, condition: f64 },
    #[error("generator `{0}` has no matrix assigned")]
    Unassigned(String),
    #[error("matrix for `{name}` is {rows}x{cols}, expected {dim}x{dim}")]
    Shape {
        name: String,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("{0}")]
    Word(#[from] WordError),
    #[error("{0}")]
    Pipeline(#[from] RelatorError),
    #[error("pipeline run has no normalization")]
    NoNormalization,
    #[error("{0}")]
    Data(String),
}
