use std::collections::VecDeque;

use super::{Arrow, Quiver, QuiverError, QuiverWithPotential, Term};
use crate::tiling::UnionFind;

/// A cut `E` and a spanning tree `T` of the quiver with `E` removed, both as
/// sorted arrow indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutData {
    pub cut: Vec<usize>,
    pub tree: Vec<usize>,
}

/// The one-vertex quiver with potential obtained by contracting the tree.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    pub qp: QuiverWithPotential,
    /// Cut arrows, as indices into the contracted quiver.
    pub cut: Vec<usize>,
    /// Original index of each contracted arrow.
    pub kept: Vec<usize>,
}

impl Contraction {
    /// Contracted arrows outside the cut.
    pub fn free_arrows(&self) -> Vec<usize> {
        (0..self.qp.quiver().num_arrows())
            .filter(|a| !self.cut.contains(a))
            .collect()
    }
}

impl QuiverWithPotential {
    /// Breadth-first spanning tree of the quiver without the cut, starting at
    /// the first vertex and scanning arrows in declaration order.
    pub fn auto_tree(&self, cut: &[usize]) -> Result<Vec<usize>, QuiverError> {
        let q = self.quiver();
        let n = q.num_vertices();
        let mut incident = vec![Vec::new(); n];
        for (k, a) in q.arrows().iter().enumerate() {
            if cut.contains(&k) || a.source == a.target {
                continue;
            }
            incident[a.source].push((k, a.target));
            incident[a.target].push((k, a.source));
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        let mut tree = Vec::new();
        let mut visited = vec![false; n];
        let mut queue = VecDeque::new();
        if n > 0 {
            visited[0] = true;
            queue.push_back(0);
        }
        while let Some(v) = queue.pop_front() {
            for &(k, u) in &incident[v] {
                if !visited[u] {
                    visited[u] = true;
                    tree.push(k);
                    queue.push_back(u);
                }
            }
        }
        if visited.iter().any(|v| !v) {
            return Err(QuiverError::InvalidTree(
                "the quiver without the cut is disconnected".into(),
            ));
        }
        tree.sort_unstable();
        Ok(tree)
    }

    /// Every spanning tree of the quiver without `cut` (at most `limit`), in
    /// lexicographic order of sorted arrow indices.
    pub fn enumerate_trees(&self, cut: &[usize], limit: usize) -> Vec<Vec<usize>> {
        let q = self.quiver();
        let candidates: Vec<usize> = (0..q.num_arrows())
            .filter(|k| !cut.contains(k) && q.arrow(*k).source != q.arrow(*k).target)
            .collect();
        let need = q.num_vertices().saturating_sub(1);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.extend_trees(&candidates, 0, need, &mut chosen, &mut out, limit);
        out
    }

    fn extend_trees(
        &self,
        candidates: &[usize],
        from: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if chosen.len() == need {
            let q = self.quiver();
            let mut uf = UnionFind::new(q.num_vertices());
            if chosen.iter().all(|&a| uf.union(q.arrow(a).source, q.arrow(a).target)) {
                out.push(chosen.clone());
            }
            return;
        }
        for i in from..candidates.len() {
            chosen.push(candidates[i]);
            self.extend_trees(candidates, i + 1, need, chosen, out, limit);
            chosen.pop();
        }
    }

    /// Validates a cut and a spanning tree of the quiver without the cut.
    pub fn cut_data(&self, cut: &[usize], tree: &[usize]) -> Result<CutData, QuiverError> {
        let q = self.quiver();
        let mut cut = cut.to_vec();
        cut.sort_unstable();
        cut.dedup();
        let mut tree = tree.to_vec();
        tree.sort_unstable();
        tree.dedup();
        if !self.is_cut(&cut) {
            return Err(QuiverError::InvalidCut(
                "some term does not contain exactly one cut arrow".into(),
            ));
        }
        if let Some(&a) = tree.iter().find(|a| cut.contains(a)) {
            return Err(QuiverError::InvalidTree(format!(
                "`{}` is a cut arrow",
                q.arrow(a).id
            )));
        }
        if tree.len() + 1 != q.num_vertices() {
            return Err(QuiverError::InvalidTree(format!(
                "{} arrows for {} vertices",
                tree.len(),
                q.num_vertices()
            )));
        }
        let mut uf = UnionFind::new(q.num_vertices());
        for &a in &tree {
            let arrow = q.arrow(a);
            if !uf.union(arrow.source, arrow.target) {
                return Err(QuiverError::InvalidTree(format!(
                    "`{}` closes a cycle",
                    arrow.id
                )));
            }
        }
        Ok(CutData { cut, tree })
    }

    /// Contracts the tree to a point and deletes its arrows from every term.
    pub fn contract(&self, data: &CutData) -> Result<Contraction, QuiverError> {
        let data = self.cut_data(&data.cut, &data.tree)?;
        let q = self.quiver();
        let kept: Vec<usize> = (0..q.num_arrows()).filter(|a| !data.tree.contains(a)).collect();
        let position = |a: usize| kept.iter().position(|&k| k == a);
        let arrows = kept
            .iter()
            .map(|&a| Arrow {
                id: q.arrow(a).id.clone(),
                source: 0,
                target: 0,
            })
            .collect();
        let quiver = Quiver::new(vec!["o".to_string()], arrows)?;
        let terms = self
            .terms()
            .iter()
            .map(|t| Term {
                sign: t.sign,
                arrows: t.arrows.iter().filter_map(|&a| position(a)).collect(),
            })
            .collect();
        let qp = QuiverWithPotential::new(quiver, terms)?;
        let cut = data.cut.iter().filter_map(|&a| position(a)).collect();
        Ok(Contraction { qp, cut, kept })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::RotationSystem;

    #[test]
    fn fixture_contraction_relations() {
        let qp = QuiverWithPotential::dual_of(&RotationSystem::genus2_fixture()).unwrap();
        let q = qp.quiver();
        let data = qp
            .cut_data(
                &q.arrow_indices(&["a", "b", "c"]).unwrap(),
                &q.arrow_indices(&["e", "h", "k"]).unwrap(),
            )
            .unwrap();
        let c = qp.contract(&data).unwrap();
        let free: Vec<&str> = c
            .free_arrows()
            .iter()
            .map(|&a| c.qp.quiver().arrow(a).id.as_str())
            .collect();
        assert_eq!(free, ["d", "f", "g", "i", "j", "l"]);
        assert!(c.qp.is_cut(&c.cut));
        let d = |id: &str| c.qp.cyclic_derivative_by_id(id).unwrap();
        let p = |s: &str| crate::QPoly::parse(c.qp.alphabet(), s).unwrap();
        assert_eq!(d("a"), p("1 * j g - 1 * g d"));
        assert_eq!(d("b"), p("1 * l f - 1 * j"));
        assert_eq!(d("c"), p("1 * i d - 1 * l i f"));
    }
}
