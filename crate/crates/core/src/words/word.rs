use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use super::{Alphabet, Letter, WordError};

/// Free reduction of a raw letter sequence.
pub fn reduce_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for letter in letters {
        match out.last() {
            Some(&last) if last.cancels(letter) => {
                out.pop();
            }
            _ => out.push(letter),
        }
    }
    out
}

pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Splits a reduced sequence as `conjugator · core · conjugator⁻¹` with `core`
/// cyclically reduced. Returns `(core, conjugator)`.
pub fn cyclic_reduce_letters(letters: &[Letter]) -> (Vec<Letter>, Vec<Letter>) {
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo].cancels(letters[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    (letters[lo..hi].to_vec(), letters[..lo].to_vec())
}

/// Lexicographically least rotation of a cyclically reduced sequence.
pub fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = 0;
    for start in 1..n {
        let better = (0..n)
            .map(|k| (letters[(start + k) % n], letters[(best + k) % n]))
            .find(|(a, b)| a != b)
            .is_some_and(|(a, b)| a < b);
        if better {
            best = start;
        }
    }
    letters[best..].iter().chain(&letters[..best]).copied().collect()
}

/// A freely reduced word over an [`Alphabet`]. The empty word is the identity.
#[derive(Clone)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(alphabet: &Alphabet) -> Self {
        Word {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    /// Freely reduces `letters`; fails if a letter is outside the alphabet.
    pub fn reduce<I>(alphabet: &Alphabet, letters: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        let letters = reduce_letters(letters);
        if let Some(bad) = letters.iter().find(|l| l.generator() >= alphabet.len()) {
            return Err(WordError::UnknownGenerator(format!(
                "#{} (alphabet has {})",
                bad.generator(),
                alphabet.len()
            )));
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub(crate) fn from_reduced(alphabet: &Alphabet, letters: Vec<Letter>) -> Self {
        debug_assert_eq!(reduce_letters(letters.iter().copied()), letters);
        Word {
            alphabet: alphabet.clone(),
            letters,
        }
    }

    pub fn generator(alphabet: &Alphabet, name: &str) -> Result<Self, WordError> {
        Ok(Word::from_reduced(alphabet, vec![alphabet.letter(name, 1)?]))
    }

    /// Parses whitespace-separated `g` / `g^-1` tokens; `1` or an empty string
    /// is the identity.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::identity(alphabet));
        }
        let letters = text
            .split_whitespace()
            .map(|tok| alphabet.parse_letter(tok))
            .collect::<Result<Vec<_>, _>>()?;
        Word::reduce(alphabet, letters)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let letters = reduce_letters(self.letters.iter().chain(&other.letters).copied());
        Ok(Word::from_reduced(&self.alphabet, letters))
    }

    pub fn inverse(&self) -> Word {
        Word::from_reduced(&self.alphabet, invert_letters(&self.letters))
    }

    pub fn pow(&self, exponent: i32) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let letters = reduce_letters(
            std::iter::repeat_n(base.letters.iter().copied(), exponent.unsigned_abs() as usize)
                .flatten(),
        );
        Word::from_reduced(&self.alphabet, letters)
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Word) -> Result<Word, WordError> {
        self.multiply(other)?.multiply(&self.inverse())
    }

    /// Returns `(core, conjugator)` with `self = conjugator · core · conjugator⁻¹`
    /// and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let (core, conj) = cyclic_reduce_letters(&self.letters);
        (
            Word::from_reduced(&self.alphabet, core),
            Word::from_reduced(&self.alphabet, conj),
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) if self.letters.len() >= 2 => !a.cancels(*b),
            _ => true,
        }
    }

    /// Rotates a word left by `k` positions (no reduction is needed when the
    /// word is cyclically reduced).
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let letters: Vec<Letter> = self.letters[k..]
            .iter()
            .chain(&self.letters[..k])
            .copied()
            .collect();
        Word {
            alphabet: self.alphabet.clone(),
            letters: reduce_letters(letters),
        }
    }

    /// True when the cyclic reductions of the two words are rotations of each other.
    pub fn cyclically_equal(&self, other: &Word) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let (a, _) = cyclic_reduce_letters(&self.letters);
        let (b, _) = cyclic_reduce_letters(&other.letters);
        least_rotation(&a) == least_rotation(&b)
    }

    /// Finds `u` with `u · self · u⁻¹ = other`, or `None` when the words are
    /// not conjugate. Any returned witness has been checked by substitution.
    pub fn conjugacy_witness(&self, other: &Word) -> Result<Option<Word>, WordError> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let (k1, c1) = self.cyclic_reduce();
        let (k2, c2) = other.cyclic_reduce();
        if k1.len() != k2.len() {
            return Ok(None);
        }
        let n = k1.len();
        let shift = if n == 0 {
            Some(0)
        } else {
            (0..n).find(|&r| (0..n).all(|i| k1.letters[(r + i) % n] == k2.letters[i]))
        };
        let Some(r) = shift else {
            return Ok(None);
        };
        // k1 = x·y and k2 = y·x = x⁻¹·k1·x
        let x = Word::from_reduced(&self.alphabet, k1.letters[..r].to_vec());
        let u = c2.multiply(&x.inverse())?.multiply(&c1.inverse())?;
        if &u.conjugate(self)? != other {
            return Err(WordError::WitnessFailed(format!(
                "conjugator {u} does not carry {self} to {other}"
            )));
        }
        Ok(Some(u))
    }

    /// Renders with explicit generator names, `1` for the identity.
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&l| self.alphabet.render_letter(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Compact rendering for names of one character, e.g. `li⁻¹l⁻¹id`.
    pub fn render_compact(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for &l in &self.letters {
            s.push_str(self.alphabet.name(l.generator()));
            if l.is_inverse() {
                s.push('⁻');
                s.push('¹');
            }
        }
        s
    }

    /// The same letters viewed over a different alphabet with the same generator
    /// names (by name). Fails if a generator is missing.
    pub fn translate(&self, target: &Alphabet) -> Result<Word, WordError> {
        let letters = self
            .letters
            .iter()
            .map(|&l| target.letter(self.alphabet.name(l.generator()), l.exponent()))
            .collect::<Result<Vec<_>, _>>()?;
        Word::reduce(target, letters)
    }

    /// Names of generators occurring in the word.
    pub fn support(&self) -> Vec<&str> {
        let mut seen: Vec<usize> = self.letters.iter().map(|l| l.generator()).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter().map(|g| self.alphabet.name(g)).collect()
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.letters == other.letters
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.render())
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;

    /// Panics on alphabet mismatch; use [`Word::multiply`] for a checked product.
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs).expect("word product over mismatched alphabets")
    }
}
