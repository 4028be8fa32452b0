//! Bundled example inputs.

/// The genus-2 tiling whose dual potential is
/// `jgea + lhfb + kidc − kgda − jheb − lifc`.
pub const GENUS2_TILING: &str = include_str!("../../../fixtures/genus2.tiling");

/// [`GENUS2_TILING`] with the vertex colours exchanged.
pub const GENUS2_INVERTED_TILING: &str = include_str!("../../../fixtures/genus2-inverted.tiling");
