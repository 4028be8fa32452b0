//! Quivers with potentials: dual quivers of tilings, cyclic derivatives, cuts,
//! tree contraction and the matrix-unit isomorphism of the localized path algebra.
//!
//! Paths are written right to left: the word `j g e a` is the path that
//! traverses `a`, then `e`, then `g`, then `j`. Terms and derivatives are
//! stored in this written order, which is also the order of matrix products.

mod contract;
mod dual;
mod sigma;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::tiling::TilingError;
use crate::words::{alphabet_name_ok, Alphabet, Letter, Word, WordError};
use crate::{QPoly, Rational};

pub use contract::{Contraction, CutData};
pub use sigma::{LocalPath, Localization, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("potential term `{0}` is not a closed composable path")]
    NotClosed(String),
    #[error("degenerate tiling: {0}")]
    Degenerate(String),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("path is not composable: {0}")]
    NotComposable(String),
    #[error("cut arrow `{0}` cannot be inverted")]
    InvertedCutArrow(String),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    alphabet: Alphabet,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let mut seen = HashMap::new();
        for v in &vertices {
            if seen.insert(v.as_str(), ()).is_some() {
                return Err(QuiverError::DuplicateId(v.clone()));
            }
        }
        for a in &arrows {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(QuiverError::UnknownVertex(format!("endpoint of `{}`", a.id)));
            }
        }
        let alphabet = Alphabet::new(arrows.iter().map(|a| a.id.clone())).map_err(|e| match e {
            WordError::DuplicateGenerator(id) => QuiverError::DuplicateId(id),
            other => QuiverError::Word(other),
        })?;
        Ok(Quiver {
            vertices,
            arrows,
            alphabet,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, index: usize) -> &Arrow {
        &self.arrows[index]
    }

    /// Arrow ids as a free-group alphabet (arrow `k` is generator `k`).
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.alphabet
            .index_of(id)
            .ok_or_else(|| QuiverError::UnknownArrow(id.to_string()))
    }

    pub fn arrow_indices<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>, QuiverError> {
        let mut out = ids
            .iter()
            .map(|id| self.arrow_index(id.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| QuiverError::UnknownVertex(id.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
}

/// A signed cyclic path, arrows in written (right-to-left) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub sign: i32,
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuiverWithPotential {
    quiver: Quiver,
    terms: Vec<Term>,
}

impl QuiverWithPotential {
    pub fn new(quiver: Quiver, terms: Vec<Term>) -> Result<Self, QuiverError> {
        let qp = QuiverWithPotential { quiver, terms };
        for t in &qp.terms {
            let n = t.arrows.len();
            let closed = n > 0
                && t.arrows.iter().all(|&a| a < qp.quiver.arrows.len())
                && (0..n).all(|k| {
                    qp.quiver.arrows[t.arrows[k]].source
                        == qp.quiver.arrows[t.arrows[(k + 1) % n]].target
                });
            if !closed || !(t.sign == 1 || t.sign == -1) {
                return Err(QuiverError::NotClosed(qp.term_string(t)));
            }
        }
        Ok(qp)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.quiver.alphabet()
    }

    fn term_string(&self, t: &Term) -> String {
        let names: Vec<&str> = t
            .arrows
            .iter()
            .map(|&a| {
                self.quiver
                    .arrows
                    .get(a)
                    .map(|x| x.id.as_str())
                    .unwrap_or("?")
            })
            .collect();
        join_names(&names)
    }

    pub fn term_word(&self, t: &Term) -> Word {
        Word::reduce(
            self.alphabet(),
            t.arrows.iter().map(|&a| Letter::positive(a)),
        )
        .expect("term arrows lie in the alphabet")
    }

    /// The potential as an element of the path algebra.
    pub fn potential(&self) -> QPoly {
        let mut p = QPoly::zero(self.alphabet());
        for t in &self.terms {
            p = p.add(&QPoly::monomial(&self.term_word(t), Rational::from_integer(t.sign.into())));
        }
        p
    }

    /// Rotate each occurrence of `arrow` to the end of its term and delete it.
    pub fn cyclic_derivative(&self, arrow: usize) -> QPoly {
        let mut out = QPoly::zero(self.alphabet());
        for t in &self.terms {
            for (k, &a) in t.arrows.iter().enumerate() {
                if a != arrow {
                    continue;
                }
                let rest = t.arrows[k + 1..].iter().chain(&t.arrows[..k]);
                let word = Word::reduce(self.alphabet(), rest.map(|&x| Letter::positive(x)))
                    .expect("term arrows lie in the alphabet");
                out = out.add(&QPoly::monomial(&word, Rational::from_integer(t.sign.into())));
            }
        }
        out
    }

    pub fn cyclic_derivative_by_id(&self, id: &str) -> Result<QPoly, QuiverError> {
        Ok(self.cyclic_derivative(self.quiver.arrow_index(id)?))
    }

    /// Every term contains exactly one arrow of `cut`.
    pub fn is_cut(&self, cut: &[usize]) -> bool {
        self.terms
            .iter()
            .all(|t| t.arrows.iter().filter(|a| cut.contains(a)).count() == 1)
    }

    /// Terms as arrow-id sequences in least rotation, sorted, with signs.
    pub fn canonical_terms(&self) -> Vec<(i32, Vec<String>)> {
        let mut out: Vec<(i32, Vec<String>)> = self
            .terms
            .iter()
            .map(|t| {
                let names: Vec<String> =
                    t.arrows.iter().map(|&a| self.quiver.arrows[a].id.clone()).collect();
                (t.sign, least_rotation_by(&names))
            })
            .collect();
        out.sort();
        out
    }

    /// Searches for a bijection of arrows (and a compatible bijection of
    /// vertices) carrying this potential onto `other`, up to cyclic rotation of
    /// terms and a global sign. Returns `(sign, arrow map)`.
    pub fn relabeling_to(&self, other: &QuiverWithPotential) -> Option<(i32, Vec<usize>)> {
        if self.terms.len() != other.terms.len()
            || self.quiver.num_arrows() != other.quiver.num_arrows()
            || self.quiver.num_vertices() != other.quiver.num_vertices()
        {
            return None;
        }
        for sign in [1, -1] {
            let mut state = Relabel {
                arrows: vec![None; self.quiver.num_arrows()],
                arrows_back: vec![None; other.quiver.num_arrows()],
                vertices: vec![None; self.quiver.num_vertices()],
                vertices_back: vec![None; other.quiver.num_vertices()],
                used_terms: vec![false; other.terms.len()],
            };
            if self.match_terms(other, sign, 0, &mut state) {
                let map = state.arrows.into_iter().map(|a| a.expect("all arrows occur")).collect();
                return Some((sign, map));
            }
        }
        None
    }

    fn match_terms(&self, other: &Self, sign: i32, k: usize, st: &mut Relabel) -> bool {
        if k == self.terms.len() {
            return st.arrows.iter().all(Option::is_some);
        }
        let t = &self.terms[k];
        for (j, u) in other.terms.iter().enumerate() {
            if st.used_terms[j] || u.sign != sign * t.sign || u.arrows.len() != t.arrows.len() {
                continue;
            }
            for rot in 0..u.arrows.len() {
                let snapshot = st.clone();
                let ok = (0..t.arrows.len()).all(|i| {
                    let a = t.arrows[i];
                    let b = u.arrows[(i + rot) % u.arrows.len()];
                    st.bind_arrow(&self.quiver, &other.quiver, a, b)
                });
                if ok {
                    st.used_terms[j] = true;
                    if self.match_terms(other, sign, k + 1, st) {
                        return true;
                    }
                }
                *st = snapshot;
            }
        }
        false
    }

    /// Text format: `vertex <id>`, `arrow <id>: <src> -> <tgt>`, `term <+|-> : <arrows>`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for v in &self.quiver.vertices {
            s.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.quiver.arrows {
            s.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.id, self.quiver.vertices[a.source], self.quiver.vertices[a.target]
            ));
        }
        for t in &self.terms {
            let names: Vec<&str> = t.arrows.iter().map(|&a| self.quiver.arrows[a].id.as_str()).collect();
            let sign = if t.sign > 0 { '+' } else { '-' };
            s.push_str(&format!("term {sign} : {}\n", names.join(" ")));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        let mut vertices = Vec::new();
        let mut arrows: Vec<(String, String, String, usize)> = Vec::new();
        let mut terms: Vec<(i32, Vec<String>, usize)> = Vec::new();
        let perr = |line: usize, m: String| QuiverError::Parse { line, message: m };
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertex ") {
                let id = rest.trim();
                if !alphabet_name_ok(id) {
                    return Err(perr(line_no, format!("invalid vertex id `{id}`")));
                }
                vertices.push(id.to_string());
            } else if let Some(rest) = line.strip_prefix("arrow ") {
                let (id, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(line_no, "expected `:`".into()))?;
                let (s, t) = ends
                    .split_once("->")
                    .ok_or_else(|| perr(line_no, "expected `->`".into()))?;
                arrows.push((id.trim().into(), s.trim().into(), t.trim().into(), line_no));
            } else if let Some(rest) = line.strip_prefix("term ") {
                let (sign, body) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(line_no, "expected `:`".into()))?;
                let sign = match sign.trim() {
                    "+" => 1,
                    "-" => -1,
                    other => return Err(perr(line_no, format!("bad sign `{other}`"))),
                };
                terms.push((sign, body.split_whitespace().map(String::from).collect(), line_no));
            } else {
                return Err(perr(line_no, format!("unrecognized line `{line}`")));
            }
        }
        let find_vertex = |id: &str, line: usize| {
            vertices
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| perr(line, format!("unknown vertex `{id}`")))
        };
        let mut arrow_list = Vec::new();
        for (id, s, t, line) in &arrows {
            arrow_list.push(Arrow {
                id: id.clone(),
                source: find_vertex(s, *line)?,
                target: find_vertex(t, *line)?,
            });
        }
        let quiver = Quiver::new(vertices.clone(), arrow_list)?;
        let mut term_list = Vec::new();
        for (sign, names, line) in terms {
            let arrows = names
                .iter()
                .map(|n| {
                    quiver
                        .arrow_index(n)
                        .map_err(|_| perr(line, format!("unknown arrow `{n}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            term_list.push(Term { sign, arrows });
        }
        QuiverWithPotential::new(quiver, term_list)
    }

    /// Compact display of the potential, e.g. `jgea + lhfb − kgda`.
    pub fn potential_string(&self) -> String {
        let mut s = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.sign > 0) {
                (0, true) => {}
                (0, false) => s.push('−'),
                (_, true) => s.push_str(" + "),
                (_, false) => s.push_str(" − "),
            }
            s.push_str(&self.term_string(t));
        }
        s
    }
}

impl fmt::Display for QuiverWithPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.potential_string())
    }
}

#[derive(Clone)]
struct Relabel {
    arrows: Vec<Option<usize>>,
    arrows_back: Vec<Option<usize>>,
    vertices: Vec<Option<usize>>,
    vertices_back: Vec<Option<usize>>,
    used_terms: Vec<bool>,
}

impl Relabel {
    fn bind(map: &mut [Option<usize>], back: &mut [Option<usize>], a: usize, b: usize) -> bool {
        match (map[a], back[b]) {
            (Some(x), _) if x != b => false,
            (_, Some(y)) if y != a => false,
            _ => {
                map[a] = Some(b);
                back[b] = Some(a);
                true
            }
        }
    }

    fn bind_arrow(&mut self, q: &Quiver, r: &Quiver, a: usize, b: usize) -> bool {
        Self::bind(&mut self.arrows, &mut self.arrows_back, a, b)
            && Self::bind(
                &mut self.vertices,
                &mut self.vertices_back,
                q.arrows[a].source,
                r.arrows[b].source,
            )
            && Self::bind(
                &mut self.vertices,
                &mut self.vertices_back,
                q.arrows[a].target,
                r.arrows[b].target,
            )
    }
}

fn least_rotation_by(names: &[String]) -> Vec<String> {
    let n = names.len();
    (0..n)
        .map(|r| names[r..].iter().chain(&names[..r]).cloned().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Concatenates single-character names, space-separates longer ones.
pub(crate) fn join_names(names: &[&str]) -> String {
    if names.iter().all(|n| n.chars().count() == 1) {
        names.concat()
    } else {
        names.join(" ")
    }
}
