use super::{Color, RotationSystem, TilingError};

/// A perfect matching of the tiling graph, as edge indices in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dimer {
    pub edges: Vec<usize>,
}

impl Dimer {
    pub fn edge_ids<'a>(&self, tiling: &'a RotationSystem) -> Vec<&'a str> {
        self.edges.iter().map(|&e| tiling.edges[e].id.as_str()).collect()
    }
}

struct Bipartite {
    blacks: Vec<usize>,
    whites: Vec<usize>,
    /// For each black (by position in `blacks`): `(edge, white position)` in edge order.
    adjacency: Vec<Vec<(usize, usize)>>,
}

fn bipartite(t: &RotationSystem) -> Result<Bipartite, TilingError> {
    let endpoints = t.edge_endpoints()?;
    let blacks: Vec<usize> = (0..t.vertices.len())
        .filter(|&v| t.vertices[v].color == Color::Black)
        .collect();
    let whites: Vec<usize> = (0..t.vertices.len())
        .filter(|&v| t.vertices[v].color == Color::White)
        .collect();
    let mut adjacency = vec![Vec::new(); blacks.len()];
    for (e, &(b, w)) in endpoints.iter().enumerate() {
        let bi = blacks.iter().position(|&x| x == b).expect("black endpoint");
        let wi = whites.iter().position(|&x| x == w).expect("white endpoint");
        adjacency[bi].push((e, wi));
    }
    Ok(Bipartite {
        blacks,
        whites,
        adjacency,
    })
}

impl RotationSystem {
    /// A perfect matching found by augmenting paths.
    pub fn find_dimer(&self) -> Result<Dimer, TilingError> {
        let g = bipartite(self)?;
        if g.blacks.len() != g.whites.len() {
            return Err(TilingError::NoDimer(format!(
                "{} black vs {} white vertices",
                g.blacks.len(),
                g.whites.len()
            )));
        }
        let mut match_white: Vec<Option<(usize, usize)>> = vec![None; g.whites.len()];
        for b in 0..g.blacks.len() {
            let mut visited = vec![false; g.whites.len()];
            if !augment(&g, b, &mut visited, &mut match_white) {
                return Err(TilingError::NoDimer(format!(
                    "vertex `{}` cannot be matched",
                    self.vertices[g.blacks[b]].id
                )));
            }
        }
        let mut edges: Vec<usize> = match_white.iter().map(|m| m.expect("perfect").1).collect();
        edges.sort_unstable();
        Ok(Dimer { edges })
    }

    /// Checks that the named edges form a perfect matching.
    pub fn dimer_from_edges<S: AsRef<str>>(&self, ids: &[S]) -> Result<Dimer, TilingError> {
        let endpoints = self.edge_endpoints()?;
        let mut edges = ids
            .iter()
            .map(|id| self.edge_index(id.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        edges.sort_unstable();
        edges.dedup();
        let mut hits = vec![0usize; self.vertices.len()];
        for &e in &edges {
            hits[endpoints[e].0] += 1;
            hits[endpoints[e].1] += 1;
        }
        if let Some(v) = hits.iter().position(|&h| h != 1) {
            return Err(TilingError::InvalidDimer(format!(
                "vertex `{}` is covered {} times",
                self.vertices[v].id, hits[v]
            )));
        }
        Ok(Dimer { edges })
    }

    /// All perfect matchings (at most `limit`), in lexicographic order of edge sets.
    pub fn enumerate_dimers(&self, limit: usize) -> Result<Vec<Dimer>, TilingError> {
        let g = bipartite(self)?;
        let mut out = Vec::new();
        if g.blacks.len() != g.whites.len() {
            return Ok(out);
        }
        let mut used = vec![false; g.whites.len()];
        let mut chosen = Vec::new();
        enumerate(&g, 0, &mut used, &mut chosen, &mut out, limit);
        for d in &mut out {
            d.edges.sort_unstable();
        }
        out.sort_by(|a, b| a.edges.cmp(&b.edges));
        Ok(out)
    }
}

fn augment(
    g: &Bipartite,
    b: usize,
    visited: &mut [bool],
    match_white: &mut [Option<(usize, usize)>],
) -> bool {
    for &(e, w) in &g.adjacency[b] {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        let free = match match_white[w] {
            None => true,
            Some((other, _)) => augment(g, other, visited, match_white),
        };
        if free {
            match_white[w] = Some((b, e));
            return true;
        }
    }
    false
}

fn enumerate(
    g: &Bipartite,
    b: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Dimer>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if b == g.blacks.len() {
        out.push(Dimer {
            edges: chosen.clone(),
        });
        return;
    }
    for &(e, w) in &g.adjacency[b] {
        if used[w] {
            continue;
        }
        used[w] = true;
        chosen.push(e);
        enumerate(g, b + 1, used, chosen, out, limit);
        chosen.pop();
        used[w] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_named_cuts_are_dimers() {
        let t = RotationSystem::genus2_fixture();
        for cut in [["a", "b", "c"], ["d", "e", "f"], ["g", "h", "i"], ["j", "k", "l"]] {
            t.dimer_from_edges(&cut).unwrap();
        }
        assert!(t.dimer_from_edges(&["a", "b"]).is_err());
        let found = t.find_dimer().unwrap();
        t.dimer_from_edges(&found.edge_ids(&t)).unwrap();
        assert!(t.enumerate_dimers(usize::MAX).unwrap().len() >= 4);
    }
}
