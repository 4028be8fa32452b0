use std::collections::VecDeque;

use super::RelatorError;
use crate::tiling::{Dimer, RotationSystem, SpanningTree};

/// The spanning tree seen with each dimer edge collapsed to a node: nodes
/// are cut arrows, edges are the tree edges outside the dimer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutTree {
    pub nodes: Vec<usize>,
    /// `(h, node, node)`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl CutTree {
    pub fn new(nodes: Vec<usize>, edges: Vec<(usize, usize, usize)>) -> Result<Self, RelatorError> {
        for &(h, a, b) in &edges {
            if !nodes.contains(&a) || !nodes.contains(&b) || a == b {
                return Err(RelatorError::Pairing(format!(
                    "edge {h} does not join two distinct nodes"
                )));
            }
        }
        if edges.len() + 1 != nodes.len() {
            return Err(RelatorError::Pairing(format!(
                "{} edges cannot form a tree on {} nodes",
                edges.len(),
                nodes.len()
            )));
        }
        Ok(CutTree { nodes, edges })
    }

    /// Builds the collapsed tree of a tiling; edge indices double as arrow indices.
    pub fn from_tiling(
        tiling: &RotationSystem,
        dimer: &Dimer,
        tree: &SpanningTree,
    ) -> Result<Self, RelatorError> {
        let endpoints = tiling.edge_endpoints()?;
        let mut matched = vec![usize::MAX; tiling.num_vertices()];
        for &e in &dimer.edges {
            matched[endpoints[e].0] = e;
            matched[endpoints[e].1] = e;
        }
        let edges = tree
            .complement
            .iter()
            .map(|&h| (h, matched[endpoints[h].0], matched[endpoints[h].1]))
            .collect();
        CutTree::new(dimer.edges.clone(), edges)
    }

    fn incident(&self, node: usize) -> impl Iterator<Item = &(usize, usize, usize)> {
        self.edges
            .iter()
            .filter(move |&&(_, a, b)| a == node || b == node)
    }
}

/// Pairs `(h_i, e_i)` of tree edges with adjacent cut arrows, plus the one
/// unpaired cut arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    pub leftover: usize,
}

/// Pairs by repeatedly removing a leaf node together with its only edge.
/// Leaves are taken first-in first-out, initial leaves in increasing order;
/// `root`, when given, is never removed and becomes the leftover.
pub fn pair_by_peeling(tree: &CutTree, root: Option<usize>) -> Result<Pairing, RelatorError> {
    if let Some(r) = root {
        if !tree.nodes.contains(&r) {
            return Err(RelatorError::Pairing(format!("root {r} is not a node")));
        }
    }
    let mut nodes = tree.nodes.clone();
    nodes.sort_unstable();
    let mut removed_edge = vec![false; tree.edges.len()];
    let mut degree: Vec<usize> = nodes.iter().map(|&n| tree.incident(n).count()).collect();
    let pos = |n: usize| nodes.iter().position(|&x| x == n).expect("node");
    let mut queue: VecDeque<usize> = nodes
        .iter()
        .enumerate()
        .filter(|&(i, &n)| degree[i] == 1 && Some(n) != root)
        .map(|(_, &n)| n)
        .collect();
    let mut alive = nodes.len();
    let mut pairs = Vec::new();
    let mut gone = vec![false; nodes.len()];
    while alive > 1 {
        let Some(leaf) = queue.pop_front() else {
            return Err(RelatorError::Pairing("no leaf left to peel".into()));
        };
        let (k, &(h, a, b)) = tree
            .edges
            .iter()
            .enumerate()
            .find(|&(k, &(_, a, b))| !removed_edge[k] && (a == leaf || b == leaf))
            .expect("a leaf keeps one edge");
        removed_edge[k] = true;
        pairs.push((h, leaf));
        gone[pos(leaf)] = true;
        alive -= 1;
        let other = if a == leaf { b } else { a };
        let i = pos(other);
        degree[i] -= 1;
        if degree[i] == 1 && Some(other) != root && !gone[i] {
            queue.push_back(other);
        }
    }
    let leftover = nodes
        .iter()
        .enumerate()
        .find(|&(i, _)| !gone[i])
        .map(|(_, &n)| n)
        .ok_or_else(|| RelatorError::Pairing("empty tree".into()))?;
    Ok(Pairing { pairs, leftover })
}

/// `length(h_i) = 1 + Σ length(h_j)` over the other edges `h_j` at node `e_i`.
pub fn route_lengths(tree: &CutTree, pairing: &Pairing) -> Result<Vec<usize>, RelatorError> {
    for &(h, e) in &pairing.pairs {
        let ok = tree
            .edges
            .iter()
            .any(|&(x, a, b)| x == h && (a == e || b == e));
        if !ok {
            return Err(RelatorError::Pairing(format!("{h} is not adjacent to {e}")));
        }
    }
    let mut memo: Vec<Option<usize>> = vec![None; pairing.pairs.len()];
    let mut out = Vec::new();
    for i in 0..pairing.pairs.len() {
        out.push(route(tree, pairing, i, &mut memo, &mut vec![false; pairing.pairs.len()])?);
    }
    Ok(out)
}

fn route(
    tree: &CutTree,
    pairing: &Pairing,
    i: usize,
    memo: &mut Vec<Option<usize>>,
    active: &mut Vec<bool>,
) -> Result<usize, RelatorError> {
    if let Some(v) = memo[i] {
        return Ok(v);
    }
    if active[i] {
        return Err(RelatorError::Pairing("route lengths are not well founded".into()));
    }
    active[i] = true;
    let (h, e) = pairing.pairs[i];
    let mut total = 1;
    for &(other, _, _) in tree.incident(e) {
        if other == h {
            continue;
        }
        let j = pairing
            .pairs
            .iter()
            .position(|&(x, _)| x == other)
            .ok_or_else(|| RelatorError::Pairing(format!("{other} is unpaired")))?;
        total += route(tree, pairing, j, memo, active)?;
    }
    active[i] = false;
    memo[i] = Some(total);
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branching_tree_route_lengths() {
        // nodes 1..5, edges h1=10: 1-2, h2=20: 2-3, h3=30: 3-5, h4=40: 2-4
        let tree = CutTree::new(
            vec![1, 2, 3, 4, 5],
            vec![(10, 1, 2), (20, 2, 3), (30, 3, 5), (40, 2, 4)],
        )
        .unwrap();
        let pairing = pair_by_peeling(&tree, Some(5)).unwrap();
        assert_eq!(pairing.leftover, 5);
        let lengths = route_lengths(&tree, &pairing).unwrap();
        let of = |h: usize| lengths[pairing.pairs.iter().position(|p| p.0 == h).unwrap()];
        assert_eq!((of(10), of(20), of(30), of(40)), (1, 3, 4, 1));
    }

    #[test]
    fn single_node_has_empty_pairing() {
        let tree = CutTree::new(vec![7], vec![]).unwrap();
        let p = pair_by_peeling(&tree, None).unwrap();
        assert!(p.pairs.is_empty());
        assert_eq!(p.leftover, 7);
    }
}
