use std::collections::VecDeque;

use super::{Contraction, CutData, QuiverError, QuiverWithPotential};
use crate::words::{Alphabet, Letter, Word};
use crate::QPoly;

/// A path in the localized path algebra: arrows outside the cut may be
/// traversed backwards. The word is in written (right-to-left) order.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalPath {
    pub source: usize,
    pub target: usize,
    pub word: Word,
}

/// A square matrix with entries in the path algebra of the contracted quiver.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<QPoly>,
}

impl PolyMatrix {
    pub fn zero(size: usize, alphabet: &Alphabet) -> Self {
        PolyMatrix {
            size,
            entries: vec![QPoly::zero(alphabet); size * size],
        }
    }

    /// `E_{i,j}(p)`.
    pub fn unit(size: usize, i: usize, j: usize, p: QPoly) -> Self {
        let mut m = PolyMatrix::zero(size, p.alphabet());
        m.entries[i * size + j] = p;
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &QPoly {
        &self.entries[i * self.size + j]
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        PolyMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.size;
        let alphabet = self.entries[0].alphabet();
        let mut out = PolyMatrix::zero(n, alphabet);
        for i in 0..n {
            for j in 0..n {
                let mut acc = QPoly::zero(alphabet);
                for k in 0..n {
                    if self.get(i, k).is_zero() || other.get(k, j).is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    /// `(row, column, entry)` for every nonzero entry.
    pub fn nonzero(&self) -> Vec<(usize, usize, &QPoly)> {
        (0..self.size * self.size)
            .filter(|&k| !self.entries[k].is_zero())
            .map(|k| (k / self.size, k % self.size, &self.entries[k]))
            .collect()
    }
}

/// The isomorphism between the localized path algebra of the quiver without
/// the cut and matrices over the localized path algebra of the contracted
/// quiver: a path from `s` to `t` goes to the matrix unit at `(t, s)` carrying
/// its non-tree arrows.
#[derive(Clone, Debug)]
pub struct Localization {
    qp: QuiverWithPotential,
    data: CutData,
    contraction: Contraction,
    /// Tree neighbours of each vertex: `(arrow, other end, forwards)`.
    tree_adjacency: Vec<Vec<(usize, usize, bool)>>,
}

impl Localization {
    pub fn new(qp: &QuiverWithPotential, data: &CutData) -> Result<Self, QuiverError> {
        let contraction = qp.contract(data)?;
        let q = qp.quiver();
        let mut tree_adjacency = vec![Vec::new(); q.num_vertices()];
        for &a in &data.tree {
            let arrow = q.arrow(a);
            tree_adjacency[arrow.source].push((a, arrow.target, true));
            tree_adjacency[arrow.target].push((a, arrow.source, false));
        }
        Ok(Localization {
            qp: qp.clone(),
            data: data.clone(),
            contraction,
            tree_adjacency,
        })
    }

    pub fn contraction(&self) -> &Contraction {
        &self.contraction
    }

    /// Alphabet of the contracted quiver (the entries of σ).
    pub fn target_alphabet(&self) -> &Alphabet {
        self.contraction.qp.alphabet()
    }

    pub fn source_alphabet(&self) -> &Alphabet {
        self.qp.alphabet()
    }

    pub fn size(&self) -> usize {
        self.qp.quiver().num_vertices()
    }

    /// Checks composability of `word` starting at `source`.
    pub fn path(&self, source: usize, word: &Word) -> Result<LocalPath, QuiverError> {
        self.qp.alphabet().ensure_same(word.alphabet())?;
        let q = self.qp.quiver();
        let mut at = source;
        for &l in word.letters().iter().rev() {
            let arrow = q.arrow(l.generator());
            if l.is_inverse() && self.data.cut.contains(&l.generator()) {
                return Err(QuiverError::InvertedCutArrow(arrow.id.clone()));
            }
            let (from, to) = if l.is_inverse() {
                (arrow.target, arrow.source)
            } else {
                (arrow.source, arrow.target)
            };
            if from != at {
                return Err(QuiverError::NotComposable(format!(
                    "{} does not start at {}",
                    self.qp.alphabet().render_letter(l),
                    q.vertices()[at]
                )));
            }
            at = to;
        }
        Ok(LocalPath {
            source,
            target: at,
            word: word.clone(),
        })
    }

    /// The word of a path with its tree arrows deleted, over the contracted alphabet.
    fn non_tree_part(&self, word: &Word) -> Word {
        let letters = word.letters().iter().filter_map(|l| {
            let pos = self.contraction.kept.iter().position(|&k| k == l.generator())?;
            Some(Letter::new(pos, l.exponent()))
        });
        Word::reduce(self.target_alphabet(), letters).expect("kept arrows are in range")
    }

    pub fn sigma(&self, path: &LocalPath) -> PolyMatrix {
        let entry = QPoly::from_word(&self.non_tree_part(&path.word));
        PolyMatrix::unit(self.size(), path.target, path.source, entry)
    }

    /// σ of a linear combination of paths from `source` to `target`.
    pub fn sigma_poly(
        &self,
        source: usize,
        target: usize,
        poly: &QPoly,
    ) -> Result<PolyMatrix, QuiverError> {
        let mut entry = QPoly::zero(self.target_alphabet());
        for (w, c) in poly.terms() {
            let p = self.path(source, &w)?;
            if p.target != target {
                return Err(QuiverError::NotComposable(format!(
                    "{w} ends at {} instead of {}",
                    self.qp.quiver().vertices()[p.target],
                    self.qp.quiver().vertices()[target]
                )));
            }
            entry = entry.add(&QPoly::monomial(&self.non_tree_part(&w), c.clone()));
        }
        Ok(PolyMatrix::unit(self.size(), target, source, entry))
    }

    /// The unique reduced path inside the tree from `from` to `to`, written order.
    pub fn tree_path(&self, from: usize, to: usize) -> Word {
        let n = self.size();
        let mut prev: Vec<Option<(usize, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &(a, u, fwd) in &self.tree_adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    let letter = if fwd {
                        Letter::positive(a)
                    } else {
                        Letter::negative(a)
                    };
                    prev[u] = Some((v, letter));
                    queue.push_back(u);
                }
            }
        }
        // walking back from `to` yields the letters last-first, i.e. written order
        let mut letters = Vec::new();
        let mut at = to;
        while at != from {
            let (p, l) = prev[at].expect("tree spans the quiver");
            letters.push(l);
            at = p;
        }
        Word::reduce(self.qp.alphabet(), letters).expect("tree arrows are in range")
    }

    /// σ⁻¹ of `E_{i,j}(w)`: the path from `j` to `i` that follows the letters of
    /// `w` and joins consecutive letters by tree paths.
    pub fn sigma_inv_entry(&self, i: usize, j: usize, w: &Word) -> Result<LocalPath, QuiverError> {
        self.target_alphabet().ensure_same(w.alphabet())?;
        let q = self.qp.quiver();
        let mut at = j;
        let mut letters: Vec<Letter> = Vec::new();
        for &l in w.letters().iter().rev() {
            let original = self.contraction.kept[l.generator()];
            let arrow = q.arrow(original);
            let (from, to) = if l.is_inverse() {
                (arrow.target, arrow.source)
            } else {
                (arrow.source, arrow.target)
            };
            let mut step = vec![Letter::new(original, l.exponent())];
            step.extend_from_slice(self.tree_path(at, from).letters());
            letters.splice(0..0, step);
            at = to;
        }
        let mut tail = self.tree_path(at, i).letters().to_vec();
        tail.extend(letters);
        let word = Word::reduce(self.qp.alphabet(), tail)?;
        self.path(j, &word)
    }

    /// σ⁻¹ of a matrix: one path polynomial `(source, target, poly)` per nonzero entry.
    pub fn sigma_inv(&self, m: &PolyMatrix) -> Result<Vec<(usize, usize, QPoly)>, QuiverError> {
        let mut out = Vec::new();
        for (i, j, entry) in m.nonzero() {
            let mut poly = QPoly::zero(self.qp.alphabet());
            for (w, c) in entry.terms() {
                let p = self.sigma_inv_entry(i, j, &w)?;
                poly = poly.add(&QPoly::monomial(&p.word, c.clone()));
            }
            out.push((j, i, poly));
        }
        Ok(out)
    }

    /// σ(∂W/∂a) for a cut arrow `a`, a path from the target of `a` to its source.
    pub fn sigma_of_derivative(&self, arrow: usize) -> Result<PolyMatrix, QuiverError> {
        let a = self.qp.quiver().arrow(arrow);
        self.sigma_poly(a.target, a.source, &self.qp.cyclic_derivative(arrow))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::RotationSystem;

    fn fixture() -> Localization {
        let qp = QuiverWithPotential::dual_of(&RotationSystem::genus2_fixture()).unwrap();
        let q = qp.quiver();
        let data = qp
            .cut_data(
                &q.arrow_indices(&["a", "b", "c"]).unwrap(),
                &q.arrow_indices(&["e", "h", "k"]).unwrap(),
            )
            .unwrap();
        Localization::new(&qp, &data).unwrap()
    }

    #[test]
    fn constant_path_is_diagonal_unit() {
        let loc = fixture();
        let p = loc.path(0, &Word::identity(loc.source_alphabet())).unwrap();
        let m = loc.sigma(&p);
        assert_eq!(m.nonzero().len(), 1);
        let (i, j, e) = m.nonzero()[0];
        assert_eq!((i, j), (0, 0));
        assert!(e.as_unit_monomial().is_some_and(|w| w.is_identity()));
    }

    #[test]
    fn derivative_maps_to_single_entry() {
        let loc = fixture();
        let a = 0;
        let m = loc.sigma_of_derivative(a).unwrap();
        let arrow = loc.qp.quiver().arrow(a);
        let nz = m.nonzero();
        assert_eq!(nz.len(), 1);
        assert_eq!((nz[0].0, nz[0].1), (arrow.source, arrow.target));
        let contracted = loc.contraction().qp.cyclic_derivative(a);
        assert_eq!(nz[0].2, &contracted);
    }

    #[test]
    fn round_trip_on_tree_arrow() {
        let loc = fixture();
        let e = loc.qp.quiver().arrow_index("e").unwrap();
        let arrow = loc.qp.quiver().arrow(e).clone();
        let w = Word::generator(loc.source_alphabet(), "e").unwrap();
        let p = loc.path(arrow.source, &w).unwrap();
        let m = loc.sigma(&p);
        let back = loc.sigma_inv(&m).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].2, QPoly::from_word(&w));
    }
}
