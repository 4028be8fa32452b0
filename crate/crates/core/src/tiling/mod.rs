//! Brane tilings as bipartite combinatorial maps: rotation systems, faces,
//! genus, dimers and spanning trees.

mod dimer;
mod parse;
mod tree;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use dimer::Dimer;
pub use tree::SpanningTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn as_str(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingVertex {
    pub id: String,
    pub color: Color,
    /// Darts in counterclockwise order.
    pub darts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingEdge {
    pub id: String,
    pub darts: [String; 2],
}

/// A violated invariant of a rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    DuplicateVertexId(String),
    DuplicateEdgeId(String),
    EmptyVertex(String),
    DartInSeveralVertices(String),
    DartInSeveralEdges(String),
    DartWithoutEdge(String),
    EdgeDartWithoutVertex { edge: String, dart: String },
    NotBipartite { edge: String },
    Disconnected { components: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::DuplicateVertexId(v) => write!(f, "vertex id `{v}` used twice"),
            Diagnostic::DuplicateEdgeId(e) => write!(f, "edge id `{e}` used twice"),
            Diagnostic::EmptyVertex(v) => write!(f, "vertex `{v}` has no darts"),
            Diagnostic::DartInSeveralVertices(d) => {
                write!(f, "dart `{d}` appears in more than one rotation")
            }
            Diagnostic::DartInSeveralEdges(d) => write!(f, "dart `{d}` belongs to several edges"),
            Diagnostic::DartWithoutEdge(d) => write!(f, "dart `{d}` belongs to no edge"),
            Diagnostic::EdgeDartWithoutVertex { edge, dart } => {
                write!(f, "edge `{edge}` uses dart `{dart}` that no vertex lists")
            }
            Diagnostic::NotBipartite { edge } => {
                write!(f, "edge `{edge}` does not join a black and a white vertex")
            }
            Diagnostic::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid tiling: {}", render_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("Euler characteristic gives odd or negative 2g = {0}")]
    BadEuler(i64),
    #[error("declared genus {declared} but the map has genus {computed}")]
    GenusMismatch { declared: usize, computed: usize },
    #[error("degenerate tiling: {0}")]
    Degenerate(String),
    #[error("no dimer: {0}")]
    NoDimer(String),
    #[error("not a dimer: {0}")]
    InvalidDimer(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
}

fn render_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A face of the embedded graph, as the cyclic sequence of darts traced by
/// the face permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<String>,
}

/// Dense indices for a validated rotation system.
#[derive(Clone, Debug)]
struct Index {
    vertex_of: Vec<usize>,
    position: Vec<usize>,
    edge_of: Vec<usize>,
    partner: Vec<usize>,
    dart_names: Vec<String>,
    vertex_darts: Vec<Vec<usize>>,
}

/// A bipartite graph with a counterclockwise cyclic order of darts at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    pub declared_genus: Option<usize>,
    pub vertices: Vec<TilingVertex>,
    pub edges: Vec<TilingEdge>,
}

impl RotationSystem {
    pub fn new(
        declared_genus: Option<usize>,
        vertices: Vec<TilingVertex>,
        edges: Vec<TilingEdge>,
    ) -> Self {
        RotationSystem {
            declared_genus,
            vertices,
            edges,
        }
    }

    pub fn parse(text: &str) -> Result<Self, TilingError> {
        parse::parse(text)
    }

    pub fn render(&self) -> String {
        parse::render(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, id: &str) -> Result<usize, TilingError> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| TilingError::UnknownEdge(id.to_string()))
    }

    pub fn edge_ids(&self) -> Vec<&str> {
        self.edges.iter().map(|e| e.id.as_str()).collect()
    }

    /// Every violated invariant; empty iff the map is valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(&v.id) {
                out.push(Diagnostic::DuplicateVertexId(v.id.clone()));
            }
            if v.darts.is_empty() {
                out.push(Diagnostic::EmptyVertex(v.id.clone()));
            }
        }
        let mut ids = BTreeSet::new();
        for e in &self.edges {
            if !ids.insert(&e.id) {
                out.push(Diagnostic::DuplicateEdgeId(e.id.clone()));
            }
        }
        let mut dart_vertex: HashMap<&str, usize> = HashMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            for d in &v.darts {
                if dart_vertex.insert(d, vi).is_some() {
                    out.push(Diagnostic::DartInSeveralVertices(d.clone()));
                }
            }
        }
        let mut dart_edge: HashMap<&str, usize> = HashMap::new();
        for (ei, e) in self.edges.iter().enumerate() {
            for d in &e.darts {
                if dart_edge.insert(d, ei).is_some() {
                    out.push(Diagnostic::DartInSeveralEdges(d.clone()));
                }
                if !dart_vertex.contains_key(d.as_str()) {
                    out.push(Diagnostic::EdgeDartWithoutVertex {
                        edge: e.id.clone(),
                        dart: d.clone(),
                    });
                }
            }
            let colors: Vec<Option<Color>> = e
                .darts
                .iter()
                .map(|d| dart_vertex.get(d.as_str()).map(|&v| self.vertices[v].color))
                .collect();
            if let [Some(c1), Some(c2)] = colors[..] {
                if c1 == c2 {
                    out.push(Diagnostic::NotBipartite { edge: e.id.clone() });
                }
            }
        }
        for v in &self.vertices {
            for d in &v.darts {
                if !dart_edge.contains_key(d.as_str()) {
                    out.push(Diagnostic::DartWithoutEdge(d.clone()));
                }
            }
        }
        if !self.vertices.is_empty() {
            let mut uf = UnionFind::new(self.vertices.len());
            for e in &self.edges {
                if let (Some(&a), Some(&b)) = (
                    dart_vertex.get(e.darts[0].as_str()),
                    dart_vertex.get(e.darts[1].as_str()),
                ) {
                    uf.union(a, b);
                }
            }
            let components = uf.components();
            if components > 1 {
                out.push(Diagnostic::Disconnected { components });
            }
        }
        out
    }

    fn index(&self) -> Result<Index, TilingError> {
        let diagnostics = self.validate();
        if !diagnostics.is_empty() {
            return Err(TilingError::Invalid(diagnostics));
        }
        let mut dart_names = Vec::new();
        let mut vertex_of = Vec::new();
        let mut position = Vec::new();
        let mut vertex_darts = Vec::new();
        let mut by_name = HashMap::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            let mut ds = Vec::new();
            for (p, d) in v.darts.iter().enumerate() {
                by_name.insert(d.as_str(), dart_names.len());
                ds.push(dart_names.len());
                dart_names.push(d.clone());
                vertex_of.push(vi);
                position.push(p);
            }
            vertex_darts.push(ds);
        }
        let mut edge_of = vec![0; dart_names.len()];
        let mut partner = vec![0; dart_names.len()];
        for (ei, e) in self.edges.iter().enumerate() {
            let a = by_name[e.darts[0].as_str()];
            let b = by_name[e.darts[1].as_str()];
            edge_of[a] = ei;
            edge_of[b] = ei;
            partner[a] = b;
            partner[b] = a;
        }
        Ok(Index {
            vertex_of,
            position,
            edge_of,
            partner,
            dart_names,
            vertex_darts,
        })
    }

    /// Face orbits as dart indices, each orbit starting at its smallest dart.
    fn face_orbits(index: &Index) -> Vec<Vec<usize>> {
        let n = index.dart_names.len();
        let next = |d: usize| {
            let p = index.partner[d];
            let ds = &index.vertex_darts[index.vertex_of[p]];
            ds[(index.position[p] + 1) % ds.len()]
        };
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = next(d);
            }
            faces.push(face);
        }
        faces
    }

    /// Faces traced by `d ↦ (ccw successor of the partner of d)`.
    pub fn faces(&self) -> Result<Vec<Face>, TilingError> {
        let index = self.index()?;
        Ok(Self::face_orbits(&index)
            .into_iter()
            .map(|f| Face {
                darts: f.into_iter().map(|d| index.dart_names[d].clone()).collect(),
            })
            .collect())
    }

    /// Genus from the Euler characteristic, checked against the declared genus.
    pub fn genus(&self) -> Result<usize, TilingError> {
        let faces = self.faces()?.len() as i64;
        let two_g = 2 - self.vertices.len() as i64 + self.edges.len() as i64 - faces;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(TilingError::BadEuler(two_g));
        }
        let genus = (two_g / 2) as usize;
        if let Some(declared) = self.declared_genus {
            if declared != genus {
                return Err(TilingError::GenusMismatch {
                    declared,
                    computed: genus,
                });
            }
        }
        Ok(genus)
    }

    /// Endpoints `(black vertex, white vertex)` of each edge, by vertex index.
    pub fn edge_endpoints(&self) -> Result<Vec<(usize, usize)>, TilingError> {
        let index = self.index()?;
        Ok(self.endpoints_from(&index))
    }

    fn endpoints_from(&self, index: &Index) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.edges.len()];
        for (d, &e) in index.edge_of.iter().enumerate() {
            let v = index.vertex_of[d];
            match self.vertices[v].color {
                Color::Black => out[e].0 = v,
                Color::White => out[e].1 = v,
            }
        }
        out
    }

    /// For each edge, the faces (by index into [`RotationSystem::faces`]) of its
    /// black-end dart and its white-end dart.
    pub fn edge_faces(&self) -> Result<Vec<(usize, usize)>, TilingError> {
        let index = self.index()?;
        let faces = Self::face_orbits(&index);
        let mut face_of = vec![0; index.dart_names.len()];
        for (fi, f) in faces.iter().enumerate() {
            for &d in f {
                face_of[d] = fi;
            }
        }
        let mut out = vec![(0, 0); self.edges.len()];
        for (d, &e) in index.edge_of.iter().enumerate() {
            match self.vertices[index.vertex_of[d]].color {
                Color::Black => out[e].0 = face_of[d],
                Color::White => out[e].1 = face_of[d],
            }
        }
        Ok(out)
    }

    /// Edge indices around each vertex in counterclockwise order.
    pub fn vertex_edges(&self) -> Result<Vec<Vec<usize>>, TilingError> {
        let index = self.index()?;
        Ok(index
            .vertex_darts
            .iter()
            .map(|ds| ds.iter().map(|&d| index.edge_of[d]).collect())
            .collect())
    }

    /// The genus-2 tiling shipped with the crate.
    pub fn genus2_fixture() -> Self {
        parse::parse(crate::fixtures::GENUS2_TILING).expect("bundled fixture parses")
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_valid_genus_two() {
        let t = RotationSystem::genus2_fixture();
        assert!(t.validate().is_empty());
        assert_eq!(t.faces().unwrap().len(), 4);
        assert_eq!(t.genus().unwrap(), 2);
    }

    #[test]
    fn face_of_a_white_dart_matches_hand_trace() {
        let t = RotationSystem::genus2_fixture();
        let faces = t.faces().unwrap();
        let f = faces.iter().find(|f| f.darts.contains(&"a_w".to_string())).unwrap();
        let got: BTreeSet<&str> = f.darts.iter().map(String::as_str).collect();
        let want: BTreeSet<&str> = ["a_w", "d_b", "c_w", "f_b", "b_w", "e_b"].into();
        assert_eq!(got, want);
    }
}
