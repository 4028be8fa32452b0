//! Free groups, their group algebras and automorphisms.

mod alphabet;
mod map;
mod ncpoly;
mod whitehead;
mod word;

use thiserror::Error;

pub use alphabet::{Alphabet, Letter};

/// Whether `name` is a valid identifier for generators, arrows and tiling ids.
pub fn alphabet_name_ok(name: &str) -> bool {
    alphabet::valid_name(name)
}
pub use map::FreeGroupMap;
pub use ncpoly::NcPoly;
pub use whitehead::{
    find_automorphism, minimize, SearchOptions, SearchOutcome, SignChoice, WhiteheadMove,
    WhiteheadWitness,
};
pub use word::{cyclic_reduce_letters, invert_letters, least_rotation, reduce_letters, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` listed twice")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} exceeds the supported maximum {1}")]
    RankTooLarge(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("witness verification failed: {0}")]
    WitnessFailed(String),
}
