use super::{Arrow, Quiver, QuiverError, QuiverWithPotential, Term};
use crate::tiling::{Color, RotationSystem};

impl QuiverWithPotential {
    /// The dual quiver with potential of a tiling: one vertex per face, one
    /// arrow per edge (named after the edge) running from the face at its black
    /// end to the face at its white end, and one term per tiling vertex, with
    /// sign `+` for white vertices and `−` for black ones.
    pub fn dual_of(tiling: &RotationSystem) -> Result<Self, QuiverError> {
        let faces = tiling.faces()?;
        if let Some(v) = tiling.vertices.iter().find(|v| v.darts.len() < 2) {
            return Err(QuiverError::Degenerate(format!(
                "vertex `{}` has valence {}; its cycle would be a loop",
                v.id,
                v.darts.len()
            )));
        }
        let edge_faces = tiling.edge_faces()?;
        let vertices = (1..=faces.len()).map(|i| format!("v{i}")).collect();
        let arrows = tiling
            .edges
            .iter()
            .zip(&edge_faces)
            .map(|(e, &(black_face, white_face))| Arrow {
                id: e.id.clone(),
                source: black_face,
                target: white_face,
            })
            .collect();
        let quiver = Quiver::new(vertices, arrows)?;
        let rotations = tiling.vertex_edges()?;
        let terms = tiling
            .vertices
            .iter()
            .zip(rotations)
            .map(|(v, mut edges)| match v.color {
                Color::White => Term {
                    sign: 1,
                    arrows: edges,
                },
                Color::Black => {
                    edges.reverse();
                    Term {
                        sign: -1,
                        arrows: edges,
                    }
                }
            })
            .collect();
        QuiverWithPotential::new(quiver, terms)
    }
}
