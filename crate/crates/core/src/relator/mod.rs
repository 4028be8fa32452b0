//! From a cut and a spanning tree to the surface-group relator: pairing of
//! tree edges with cut arrows, substitutions with ideal-membership
//! certificates, relator extraction and normalization.

mod extract;
mod pairing;
mod pipeline;
mod substitution;

use thiserror::Error;

use crate::quiver::QuiverError;
use crate::tiling::TilingError;
use crate::words::WordError;

pub use extract::{extract_relator, normalize_relator, standard_relator, Normalization, RelatorResult};
pub use pairing::{pair_by_peeling, route_lengths, CutTree, Pairing};
pub use pipeline::{enumerate_choices, run_pipeline, PipelineOptions, PipelineRun};
pub use substitution::{solve_substitutions, Substitution, SubstitutionCertificate, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelatorError {
    #[error("tiling stage: {0}")]
    Tiling(#[from] TilingError),
    #[error("quiver stage: {0}")]
    Quiver(#[from] QuiverError),
    #[error("word arithmetic: {0}")]
    Word(#[from] WordError),
    #[error("pairing stage: {0}")]
    Pairing(String),
    #[error("substitution stage: {0}")]
    Substitution(String),
    #[error("certificate stage: {0}")]
    Certificate(String),
    #[error("relator stage: {0}")]
    Relator(String),
    #[error("normalization stage: {0}")]
    Normalization(String),
}
