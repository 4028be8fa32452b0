use std::collections::VecDeque;

use super::{Dimer, RotationSystem, TilingError, UnionFind};

/// A spanning tree of the tiling graph containing a dimer, together with the
/// tree edges outside the dimer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub edges: Vec<usize>,
    pub complement: Vec<usize>,
}

impl SpanningTree {
    pub fn complement_ids<'a>(&self, tiling: &'a RotationSystem) -> Vec<&'a str> {
        self.complement
            .iter()
            .map(|&e| tiling.edges[e].id.as_str())
            .collect()
    }
}

impl RotationSystem {
    /// Extends a dimer to a spanning tree avoiding `excluded` edges: dimer edges
    /// first, then a breadth-first sweep from the first vertex taking incident
    /// edges in declaration order.
    pub fn extend_to_spanning_tree(
        &self,
        dimer: &Dimer,
        excluded: &[usize],
    ) -> Result<SpanningTree, TilingError> {
        let endpoints = self.edge_endpoints()?;
        self.dimer_from_edges(&dimer.edge_ids(self))?;
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for &e in &dimer.edges {
            uf.union(endpoints[e].0, endpoints[e].1);
        }
        let mut incident = vec![Vec::new(); n];
        for (e, &(b, w)) in endpoints.iter().enumerate() {
            if excluded.contains(&e) || dimer.edges.contains(&e) {
                continue;
            }
            incident[b].push((e, w));
            incident[w].push((e, b));
        }
        let mut complement = Vec::new();
        let mut visited = vec![false; n];
        let mut queue = VecDeque::new();
        if n > 0 {
            visited[0] = true;
            queue.push_back(0);
        }
        while let Some(v) = queue.pop_front() {
            for &(e, u) in &incident[v] {
                if uf.union(v, u) {
                    complement.push(e);
                }
                if !visited[u] {
                    visited[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if uf.components() != 1 {
            return Err(TilingError::NotSpanningTree(
                "the graph without the excluded edges is disconnected".into(),
            ));
        }
        complement.sort_unstable();
        let mut edges: Vec<usize> = dimer.edges.iter().chain(&complement).copied().collect();
        edges.sort_unstable();
        Ok(SpanningTree { edges, complement })
    }

    /// Checks that `dimer ∪ complement` is a spanning tree.
    pub fn spanning_tree_from_complement<S: AsRef<str>>(
        &self,
        dimer: &Dimer,
        complement: &[S],
    ) -> Result<SpanningTree, TilingError> {
        let endpoints = self.edge_endpoints()?;
        let mut complement = complement
            .iter()
            .map(|id| self.edge_index(id.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        complement.sort_unstable();
        complement.dedup();
        if let Some(&e) = complement.iter().find(|e| dimer.edges.contains(e)) {
            return Err(TilingError::NotSpanningTree(format!(
                "edge `{}` is already in the dimer",
                self.edges[e].id
            )));
        }
        let mut edges: Vec<usize> = dimer.edges.iter().chain(&complement).copied().collect();
        edges.sort_unstable();
        if edges.len() + 1 != self.vertices.len() {
            return Err(TilingError::NotSpanningTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                self.vertices.len()
            )));
        }
        let mut uf = UnionFind::new(self.vertices.len());
        for &e in &edges {
            if !uf.union(endpoints[e].0, endpoints[e].1) {
                return Err(TilingError::NotSpanningTree(format!(
                    "edge `{}` closes a cycle",
                    self.edges[e].id
                )));
            }
        }
        Ok(SpanningTree { edges, complement })
    }

    /// Every spanning tree containing `dimer` and avoiding `excluded` (at most `limit`).
    pub fn enumerate_spanning_trees(
        &self,
        dimer: &Dimer,
        excluded: &[usize],
        limit: usize,
    ) -> Result<Vec<SpanningTree>, TilingError> {
        let candidates: Vec<usize> = (0..self.edges.len())
            .filter(|e| !excluded.contains(e) && !dimer.edges.contains(e))
            .collect();
        let need = self.vertices.len().saturating_sub(1 + dimer.edges.len());
        let mut out = Vec::new();
        let mut pick = Vec::new();
        self.choose(dimer, &candidates, 0, need, &mut pick, &mut out, limit);
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &self,
        dimer: &Dimer,
        candidates: &[usize],
        from: usize,
        need: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<SpanningTree>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if pick.len() == need {
            let ids: Vec<&str> = pick.iter().map(|&e| self.edges[e].id.as_str()).collect();
            if let Ok(t) = self.spanning_tree_from_complement(dimer, &ids) {
                out.push(t);
            }
            return;
        }
        for k in from..candidates.len() {
            pick.push(candidates[k]);
            self.choose(dimer, candidates, k + 1, need, pick, out, limit);
            pick.pop();
        }
    }
}
