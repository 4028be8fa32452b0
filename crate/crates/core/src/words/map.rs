use std::fmt;

use super::word::reduce_letters;
use super::{Alphabet, Letter, Word, WordError};

/// A homomorphism between free groups, given by the images of the generators.
#[derive(Clone, PartialEq)]
pub struct FreeGroupMap {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl FreeGroupMap {
    pub fn new(source: &Alphabet, target: &Alphabet, images: Vec<Word>) -> Result<Self, WordError> {
        if images.len() != source.len() {
            return Err(WordError::RankMismatch(source.len(), images.len()));
        }
        for image in &images {
            target.ensure_same(image.alphabet())?;
        }
        Ok(FreeGroupMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Builds a map from `(generator name, image)` pairs covering every source generator.
    pub fn from_pairs<'a, I>(source: &Alphabet, target: &Alphabet, pairs: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = (&'a str, Word)>,
    {
        let mut images: Vec<Option<Word>> = vec![None; source.len()];
        for (name, image) in pairs {
            let g = source
                .index_of(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            images[g] = Some(image);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(g, w)| w.ok_or_else(|| WordError::MissingImage(source.name(g).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        FreeGroupMap::new(source, target, images)
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let images = (0..alphabet.len())
            .map(|g| Word::from_reduced(alphabet, vec![Letter::positive(g)]))
            .collect();
        FreeGroupMap {
            source: alphabet.clone(),
            target: alphabet.clone(),
            images,
        }
    }

    /// Sends the `i`-th generator of `source` to the `i`-th generator of `target`.
    pub fn rename(source: &Alphabet, target: &Alphabet) -> Result<Self, WordError> {
        if source.len() != target.len() {
            return Err(WordError::RankMismatch(source.len(), target.len()));
        }
        let images = (0..target.len())
            .map(|g| Word::from_reduced(target, vec![Letter::positive(g)]))
            .collect();
        FreeGroupMap::new(source, target, images)
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub fn image_of(&self, name: &str) -> Result<&Word, WordError> {
        self.source
            .index_of(name)
            .map(|g| &self.images[g])
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))
    }

    pub(crate) fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut raw = Vec::new();
        for &l in letters {
            let image = self.images[l.generator()].letters();
            if l.is_inverse() {
                raw.extend(image.iter().rev().map(|x| x.inverse()));
            } else {
                raw.extend_from_slice(image);
            }
        }
        reduce_letters(raw)
    }

    pub fn apply(&self, word: &Word) -> Result<Word, WordError> {
        self.source.ensure_same(word.alphabet())?;
        Ok(Word::from_reduced(&self.target, self.apply_letters(word.letters())))
    }

    /// `outer ∘ self`: apply `self` first, then `outer`.
    pub fn then(&self, outer: &FreeGroupMap) -> Result<FreeGroupMap, WordError> {
        self.target.ensure_same(&outer.source)?;
        let images = self
            .images
            .iter()
            .map(|w| outer.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        FreeGroupMap::new(&self.source, &outer.target, images)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .images
                .iter()
                .enumerate()
                .all(|(g, w)| w.letters() == [Letter::positive(g)])
    }

    /// True when `other ∘ self` and `self ∘ other` are both identities.
    pub fn is_inverse_of(&self, other: &FreeGroupMap) -> bool {
        let fwd = self.then(other).map(|m| m.is_identity()).unwrap_or(false);
        let back = other.then(self).map(|m| m.is_identity()).unwrap_or(false);
        fwd && back
    }

    /// `name -> image` pairs separated by `; `.
    pub fn render(&self) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(g, w)| format!("{} -> {}", self.source.name(g), w.render()))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Parses the format produced by [`FreeGroupMap::render`].
    pub fn parse(source: &Alphabet, target: &Alphabet, text: &str) -> Result<Self, WordError> {
        let mut pairs = Vec::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, image) = part
                .split_once("->")
                .ok_or_else(|| WordError::Parse(format!("missing `->` in `{part}`")))?;
            pairs.push((name.trim(), Word::parse(target, image)?));
        }
        FreeGroupMap::from_pairs(source, target, pairs)
    }
}

impl fmt::Display for FreeGroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for FreeGroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeGroupMap({})", self.render())
    }
}
