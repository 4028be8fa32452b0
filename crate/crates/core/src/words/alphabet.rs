use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::WordError;

/// A letter of a free group: a generator index together with an exponent of ±1.
///
/// Letters order by `(generator, exponent)` with the positive letter first,
/// which is the order used for every deterministic tie-break in this crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    generator: u32,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, exponent: i32) -> Self {
        assert!(exponent == 1 || exponent == -1, "letter exponent must be ±1");
        Letter {
            generator: generator as u32,
            inverse: exponent < 0,
        }
    }

    pub fn positive(generator: usize) -> Self {
        Letter::new(generator, 1)
    }

    pub fn negative(generator: usize) -> Self {
        Letter::new(generator, -1)
    }

    pub fn generator(self) -> usize {
        self.generator as usize
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// Dense index in `0..2 * rank`, positive letters at even positions.
    pub fn index(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }

    pub fn from_index(index: usize) -> Self {
        Letter {
            generator: (index / 2) as u32,
            inverse: index % 2 == 1,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.generator)
        } else {
            write!(f, "g{}", self.generator)
        }
    }
}

struct Inner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered set of generator names shared by words, polynomials and maps.
///
/// Cloning is cheap. Two alphabets are equal when they list the same names in
/// the same order.
#[derive(Clone)]
pub struct Alphabet(Arc<Inner>);

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(WordError::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(WordError::DuplicateGenerator(name.clone()));
            }
        }
        Ok(Alphabet(Arc::new(Inner { names, index })))
    }

    /// `x1, y1, …, xg, yg`: the alphabet of the standard surface relator.
    pub fn surface(genus: usize) -> Self {
        let names = (1..=genus).flat_map(|i| [format!("x{i}"), format!("y{i}")]);
        Alphabet::new(names).expect("standard surface names are valid")
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.0.names[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.index.contains_key(name)
    }

    pub fn letter(&self, name: &str, exponent: i32) -> Result<Letter, WordError> {
        self.index_of(name)
            .map(|g| Letter::new(g, exponent))
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))
    }

    pub fn render_letter(&self, letter: Letter) -> String {
        if letter.is_inverse() {
            format!("{}^-1", self.name(letter.generator()))
        } else {
            self.name(letter.generator()).to_string()
        }
    }

    pub fn parse_letter(&self, token: &str) -> Result<Letter, WordError> {
        match token.strip_suffix("^-1") {
            Some(name) => self.letter(name, -1),
            None => self.letter(token, 1),
        }
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<(), WordError> {
        if self == other {
            Ok(())
        } else {
            Err(WordError::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for Alphabet {}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.names.join(", "))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{self}")
    }
}
