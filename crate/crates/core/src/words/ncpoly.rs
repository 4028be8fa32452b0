use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use super::word::reduce_letters;
use super::{Alphabet, FreeGroupMap, Letter, Word, WordError};
use crate::scalar::Coefficient;

/// A finite linear combination of reduced words: an element of the group
/// algebra of a free group (equivalently, of a localized one-vertex path algebra).
///
/// Zero coefficients are never stored.
#[derive(Clone)]
pub struct NcPoly<C> {
    alphabet: Alphabet,
    terms: BTreeMap<Vec<Letter>, C>,
}

impl<C: Coefficient> NcPoly<C> {
    pub fn zero(alphabet: &Alphabet) -> Self {
        NcPoly {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        NcPoly::monomial(&Word::identity(alphabet), C::one())
    }

    pub fn monomial(word: &Word, coefficient: C) -> Self {
        let mut p = NcPoly::zero(word.alphabet());
        p.add_term(word.letters().to_vec(), coefficient);
        p
    }

    pub fn from_word(word: &Word) -> Self {
        NcPoly::monomial(word, C::one())
    }

    pub fn from_terms<I>(alphabet: &Alphabet, terms: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = (C, Word)>,
    {
        let mut p = NcPoly::zero(alphabet);
        for (c, w) in terms {
            alphabet.ensure_same(w.alphabet())?;
            p.add_term(w.letters().to_vec(), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, letters: Vec<Letter>, coefficient: C) {
        if coefficient.is_zero() {
            return;
        }
        let letters = reduce_letters(letters);
        match self.terms.get_mut(&letters) {
            Some(c) => {
                let sum = c.clone() + coefficient;
                if sum.is_zero() {
                    self.terms.remove(&letters);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(letters, coefficient);
            }
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in deterministic (letter-sequence) order.
    pub fn terms(&self) -> impl Iterator<Item = (Word, &C)> + '_ {
        self.terms
            .iter()
            .map(|(l, c)| (Word::from_reduced(&self.alphabet, l.clone()), c))
    }

    pub fn coefficient(&self, word: &Word) -> C {
        self.terms
            .get(word.letters())
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.alphabet
            .ensure_same(&other.alphabet)
            .expect("polynomial sum over mismatched alphabets");
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-C::one())
    }

    pub fn scale(&self, factor: C) -> Self {
        let mut out = NcPoly::zero(&self.alphabet);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.clone() * factor.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.alphabet
            .ensure_same(&other.alphabet)
            .expect("polynomial product over mismatched alphabets");
        let mut out = NcPoly::zero(&self.alphabet);
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                let letters: Vec<Letter> = l1.iter().chain(l2).copied().collect();
                out.add_term(letters, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// `left · self · right` for words `left`, `right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        NcPoly::from_word(left).mul(self).mul(&NcPoly::from_word(right))
    }

    /// Linear extension of a free-group homomorphism.
    pub fn apply_map(&self, map: &FreeGroupMap) -> Result<Self, WordError> {
        let mut out = NcPoly::zero(map.target());
        for (w, c) in self.terms() {
            let image = map.apply(&w)?;
            out.add_term(image.letters().to_vec(), c.clone());
        }
        Ok(out)
    }

    /// Reinterprets the polynomial over another alphabet by generator name.
    pub fn translate(&self, target: &Alphabet) -> Result<Self, WordError> {
        let mut out = NcPoly::zero(target);
        for (w, c) in self.terms() {
            out.add_term(w.translate(target)?.letters().to_vec(), c.clone());
        }
        Ok(out)
    }

    /// The single word of a one-term polynomial with coefficient `1`.
    pub fn as_unit_monomial(&self) -> Option<Word> {
        let mut it = self.terms();
        match (it.next(), it.next()) {
            (Some((w, c)), None) if c.is_one() => Some(w),
            _ => None,
        }
    }
}

impl<C: Coefficient> PartialEq for NcPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.terms == other.terms
    }
}

impl<C: Coefficient + Signed + fmt::Display> NcPoly<C> {
    /// Renders as `c * word` terms joined by ` + ` / ` - `; `0` for zero.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, false) => {}
                (0, true) => s.push('-'),
                (_, false) => s.push_str(" + "),
                (_, true) => s.push_str(" - "),
            }
            s.push_str(&format!("{} * {}", c.abs(), w.render()));
        }
        s
    }

    /// Compact form for display only, e.g. `jge − kgd`.
    pub fn render_compact(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, false) => {}
                (0, true) => s.push('−'),
                (_, false) => s.push_str(" + "),
                (_, true) => s.push_str(" − "),
            }
            if !c.abs().is_one() {
                s.push_str(&format!("{}·", c.abs()));
            }
            s.push_str(&w.render_compact());
        }
        s
    }
}

impl<C: Coefficient + Signed + FromStr> NcPoly<C> {
    /// Parses the format produced by [`NcPoly::render`].
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self, WordError> {
        let text = text.trim();
        if text == "0" {
            return Ok(NcPoly::zero(alphabet));
        }
        let mut p = NcPoly::zero(alphabet);
        let mut rest = text;
        let mut sign = C::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -C::one();
            rest = r;
        }
        loop {
            let (term, next) = split_next_term(rest);
            let (coef, word) = term
                .split_once('*')
                .ok_or_else(|| WordError::Parse(format!("term `{term}` lacks `*`")))?;
            let coef: C = coef
                .trim()
                .parse()
                .map_err(|_| WordError::Parse(format!("bad coefficient `{}`", coef.trim())))?;
            let word = Word::parse(alphabet, word)?;
            p.add_term(word.letters().to_vec(), sign.clone() * coef);
            match next {
                Some((s, r)) => {
                    sign = if s == '-' { -C::one() } else { C::one() };
                    rest = r;
                }
                None => break,
            }
        }
        Ok(p)
    }
}

fn split_next_term(text: &str) -> (&str, Option<(char, &str)>) {
    let plus = text.find(" + ");
    let minus = text.find(" - ");
    let cut = match (plus, minus) {
        (Some(p), Some(m)) => Some(p.min(m)),
        (p, m) => p.or(m),
    };
    match cut {
        Some(i) => {
            let sign = text[i + 1..].chars().next().unwrap();
            (&text[..i], Some((sign, &text[i + 3..])))
        }
        None => (text, None),
    }
}

impl<C: Coefficient + Signed + fmt::Display> fmt::Display for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Coefficient> fmt::Debug for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for (w, c) in self.terms() {
            list.entry(&(c, w.render()));
        }
        list.finish()
    }
}
