//! Whitehead's algorithm: deciding whether one cyclic word is carried to another
//! (or to its inverse) by an automorphism of the free group, with an explicit
//! automorphism as witness.

use std::collections::{HashMap, VecDeque};

use log::debug;

use super::word::{cyclic_reduce_letters, invert_letters, least_rotation, reduce_letters};
use super::{Alphabet, FreeGroupMap, Letter, Word, WordError};

const MAX_RANK: usize = 8;

/// An elementary automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WhiteheadMove {
    /// Signed permutation of the generators: generator `g` goes to `images[g]`.
    Permutation { images: Vec<Letter> },
    /// The Whitehead automorphism `(A, a)`: every letter `y ∉ {a, a⁻¹}` goes to
    /// `[a⁻¹ if y⁻¹ ∈ A] · y · [a if y ∈ A]`. `set` is a bitmask over
    /// [`Letter::index`] and always contains `multiplier` but not its inverse.
    Multiply { set: u64, multiplier: Letter },
}

impl WhiteheadMove {
    fn in_set(set: u64, l: Letter) -> bool {
        set >> l.index() & 1 == 1
    }

    /// Image of each generator as a raw letter sequence.
    fn generator_images(&self, rank: usize) -> Vec<Vec<Letter>> {
        match self {
            WhiteheadMove::Permutation { images } => images.iter().map(|&l| vec![l]).collect(),
            WhiteheadMove::Multiply { set, multiplier } => (0..rank)
                .map(|g| {
                    let x = Letter::positive(g);
                    if g == multiplier.generator() {
                        return vec![x];
                    }
                    let mut img = Vec::with_capacity(3);
                    if Self::in_set(*set, x.inverse()) {
                        img.push(multiplier.inverse());
                    }
                    img.push(x);
                    if Self::in_set(*set, x) {
                        img.push(*multiplier);
                    }
                    img
                })
                .collect(),
        }
    }

    /// Image of every letter, indexed by [`Letter::index`].
    fn letter_table(&self, rank: usize) -> Vec<Vec<Letter>> {
        let gens = self.generator_images(rank);
        let mut table = Vec::with_capacity(2 * rank);
        for img in gens {
            let inv = invert_letters(&img);
            table.push(img);
            table.push(inv);
        }
        table
    }

    pub fn to_map(&self, alphabet: &Alphabet) -> FreeGroupMap {
        let images = self
            .generator_images(alphabet.len())
            .into_iter()
            .map(|l| Word::from_reduced(alphabet, l))
            .collect();
        FreeGroupMap::new(alphabet, alphabet, images).expect("move images have full rank")
    }

    pub fn inverse(&self) -> WhiteheadMove {
        match self {
            WhiteheadMove::Permutation { images } => {
                let mut inv = vec![Letter::positive(0); images.len()];
                for (g, &l) in images.iter().enumerate() {
                    inv[l.generator()] = Letter::new(g, l.exponent());
                }
                WhiteheadMove::Permutation { images: inv }
            }
            WhiteheadMove::Multiply { set, multiplier } => {
                let a = *multiplier;
                let set = (set & !(1u64 << a.index())) | 1u64 << a.inverse().index();
                WhiteheadMove::Multiply {
                    set,
                    multiplier: a.inverse(),
                }
            }
        }
    }
}

/// Which power of the target may be reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignChoice {
    Either,
    Plus,
    Minus,
}

impl SignChoice {
    fn signs(self) -> &'static [i32] {
        match self {
            SignChoice::Either => &[1, -1],
            SignChoice::Plus => &[1],
            SignChoice::Minus => &[-1],
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Maximum number of cyclic words visited on the minimal level.
    pub budget: usize,
    pub sign: SignChoice,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 1_000_000,
            sign: SignChoice::Either,
        }
    }
}

/// An automorphism `ε` with `ε(w) = u · target^sign · u⁻¹`.
#[derive(Clone, Debug)]
pub struct WhiteheadWitness {
    pub automorphism: FreeGroupMap,
    pub inverse: FreeGroupMap,
    pub sign: i32,
    pub conjugator: Word,
    pub moves: Vec<WhiteheadMove>,
    pub explored: usize,
}

impl WhiteheadWitness {
    /// Re-checks the witness from scratch.
    pub fn verify(&self, word: &Word, target: &Word) -> bool {
        let Ok(image) = self.automorphism.apply(word) else {
            return false;
        };
        let expected = self.conjugator.conjugate(&target.pow(self.sign));
        self.automorphism.is_inverse_of(&self.inverse) && expected.is_ok_and(|e| e == image)
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(Box<WhiteheadWitness>),
    /// No automorphism exists.
    Absent { reason: String, explored: usize },
    /// The budget ran out before the minimal level was exhausted.
    Unknown { explored: usize },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&WhiteheadWitness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

struct MoveTable {
    moves: Vec<WhiteheadMove>,
    tables: Vec<Vec<Vec<Letter>>>,
    multiply_count: usize,
}

impl MoveTable {
    fn new(rank: usize) -> Self {
        let letters = 2 * rank;
        let mut moves = Vec::new();
        for ai in 0..letters {
            let a = Letter::from_index(ai);
            let free: Vec<usize> = (0..letters)
                .filter(|&i| i != ai && i != a.inverse().index())
                .collect();
            for bits in 0u64..(1u64 << free.len()) {
                if bits == 0 || bits == (1u64 << free.len()) - 1 {
                    // the identity and the inner automorphism by `a`
                    continue;
                }
                let mut set = 1u64 << ai;
                for (k, &i) in free.iter().enumerate() {
                    if bits >> k & 1 == 1 {
                        set |= 1u64 << i;
                    }
                }
                moves.push(WhiteheadMove::Multiply { set, multiplier: a });
            }
        }
        let multiply_count = moves.len();
        for i in 0..rank {
            for j in i + 1..rank {
                let mut images: Vec<Letter> = (0..rank).map(Letter::positive).collect();
                images.swap(i, j);
                moves.push(WhiteheadMove::Permutation { images });
            }
            let mut images: Vec<Letter> = (0..rank).map(Letter::positive).collect();
            images[i] = Letter::negative(i);
            moves.push(WhiteheadMove::Permutation { images });
        }
        let tables = moves.iter().map(|m| m.letter_table(rank)).collect();
        MoveTable {
            moves,
            tables,
            multiply_count,
        }
    }

    /// Cyclically reduced image of a cyclic word under move `k`.
    fn apply(&self, k: usize, core: &[Letter]) -> Vec<Letter> {
        let table = &self.tables[k];
        let raw = reduce_letters(core.iter().flat_map(|l| table[l.index()].iter().copied()));
        cyclic_reduce_letters(&raw).0
    }
}

fn check_rank(alphabet: &Alphabet) -> Result<(), WordError> {
    if alphabet.len() > MAX_RANK {
        return Err(WordError::RankTooLarge(alphabet.len(), MAX_RANK));
    }
    Ok(())
}

/// Greedily shortens the cyclic word with Whitehead moves until no move helps.
/// Returns the minimal cyclic word and the moves applied, in order.
pub fn minimize(word: &Word) -> Result<(Word, Vec<WhiteheadMove>), WordError> {
    check_rank(word.alphabet())?;
    let table = MoveTable::new(word.alphabet().len());
    Ok(minimize_with(&table, word))
}

fn minimize_with(table: &MoveTable, word: &Word) -> (Word, Vec<WhiteheadMove>) {
    let mut core = cyclic_reduce_letters(word.letters()).0;
    let mut applied = Vec::new();
    loop {
        let mut best: Option<(usize, Vec<Letter>, usize, Vec<Letter>)> = None;
        for k in 0..table.multiply_count {
            let image = table.apply(k, &core);
            if image.len() >= core.len() {
                continue;
            }
            let key = least_rotation(&image);
            let better = match &best {
                None => true,
                Some((len, bkey, _, _)) => (image.len(), &key) < (*len, bkey),
            };
            if better {
                best = Some((image.len(), key, k, image));
            }
        }
        match best {
            Some((_, _, k, image)) => {
                applied.push(table.moves[k].clone());
                core = image;
            }
            None => break,
        }
    }
    (Word::from_reduced(word.alphabet(), core), applied)
}

fn compose(alphabet: &Alphabet, moves: &[WhiteheadMove]) -> FreeGroupMap {
    moves
        .iter()
        .fold(FreeGroupMap::identity(alphabet), |acc, m| {
            acc.then(&m.to_map(alphabet)).expect("same alphabet")
        })
}

/// Searches for an automorphism carrying the cyclic word `word` to a conjugate
/// of `target` or `target⁻¹`.
pub fn find_automorphism(
    word: &Word,
    target: &Word,
    options: SearchOptions,
) -> Result<SearchOutcome, WordError> {
    let alphabet = word.alphabet().clone();
    alphabet.ensure_same(target.alphabet())?;
    check_rank(&alphabet)?;
    let table = MoveTable::new(alphabet.len());
    let (w_min, w_moves) = minimize_with(&table, word);
    let (t_min, t_moves) = minimize_with(&table, target);
    debug!(
        "whitehead: minimal lengths {} (word) and {} (target)",
        w_min.len(),
        t_min.len()
    );
    if w_min.len() != t_min.len() {
        return Ok(SearchOutcome::Absent {
            reason: format!(
                "minimal lengths differ: {} vs {}",
                w_min.len(),
                t_min.len()
            ),
            explored: 0,
        });
    }
    let level = w_min.len();
    let goals: Vec<(i32, Vec<Letter>)> = options
        .sign
        .signs()
        .iter()
        .map(|&c| (c, least_rotation(t_min.pow(c).letters())))
        .collect();

    let start = least_rotation(w_min.letters());
    let mut nodes: Vec<(Vec<Letter>, usize, usize)> = vec![(start.clone(), usize::MAX, usize::MAX)];
    let mut seen: HashMap<Vec<Letter>, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut found: Option<(usize, i32)> = None;

    'search: while let Some(i) = queue.pop_front() {
        for (c, goal) in &goals {
            if &nodes[i].0 == goal {
                found = Some((i, *c));
                break 'search;
            }
        }
        let current = nodes[i].0.clone();
        let permutations_first = (table.multiply_count..table.moves.len()).chain(0..table.multiply_count);
        for k in permutations_first {
            let image = table.apply(k, &current);
            if image.len() != level {
                continue;
            }
            let key = least_rotation(&image);
            if seen.contains_key(&key) {
                continue;
            }
            if nodes.len() >= options.budget {
                return Ok(SearchOutcome::Unknown {
                    explored: nodes.len(),
                });
            }
            seen.insert(key.clone(), nodes.len());
            queue.push_back(nodes.len());
            nodes.push((key, i, k));
        }
    }
    let explored = nodes.len();
    let Some((end, sign)) = found else {
        return Ok(SearchOutcome::Absent {
            reason: format!("minimal level of length {level} exhausted ({explored} words)"),
            explored,
        });
    };

    let mut path = Vec::new();
    let mut i = end;
    while nodes[i].1 != usize::MAX {
        path.push(table.moves[nodes[i].2].clone());
        i = nodes[i].1;
    }
    path.reverse();

    let mut moves = w_moves;
    moves.extend(path);
    moves.extend(t_moves.iter().rev().map(WhiteheadMove::inverse));
    let inverse_moves: Vec<WhiteheadMove> = moves.iter().rev().map(WhiteheadMove::inverse).collect();
    let automorphism = compose(&alphabet, &moves);
    let inverse = compose(&alphabet, &inverse_moves);
    if !automorphism.is_inverse_of(&inverse) {
        return Err(WordError::WitnessFailed(
            "composed moves and their inverses do not cancel".into(),
        ));
    }
    let image = automorphism.apply(word)?;
    let conjugator = target.pow(sign).conjugacy_witness(&image)?.ok_or_else(|| {
        WordError::WitnessFailed(format!(
            "image {image} is not conjugate to the target power {sign}"
        ))
    })?;
    let witness = WhiteheadWitness {
        automorphism,
        inverse,
        sign,
        conjugator,
        moves,
        explored,
    };
    debug_assert!(witness.verify(word, target));
    Ok(SearchOutcome::Found(Box::new(witness)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn move_inverse_round_trip() {
        let a = Alphabet::surface(2);
        let table = MoveTable::new(a.len());
        for m in table.moves.iter().step_by(7) {
            assert!(m.to_map(&a).is_inverse_of(&m.inverse().to_map(&a)), "{m:?}");
        }
    }

    #[test]
    fn primitive_word_minimizes_to_a_letter() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let p = Word::parse(&a, "a b a b").unwrap();
        let (m, _) = minimize(&p).unwrap();
        assert_eq!(m.len(), 2, "a b a b is (ab)^2: minimal length 2");
        let (m, _) = minimize(&Word::parse(&a, "a b a").unwrap()).unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn commutator_found_from_conjugate_image() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let t = Word::parse(&a, "a b a^-1 b^-1").unwrap();
        let f = FreeGroupMap::parse(&a, &a, "a -> a b; b -> b").unwrap();
        let g = FreeGroupMap::parse(&a, &a, "a -> b a; b -> b").unwrap();
        let w = g.apply(&f.apply(&t).unwrap()).unwrap();
        assert!(w.len() > t.len());
        let out = find_automorphism(&w, &t, SearchOptions::default()).unwrap();
        let wit = out.witness().unwrap_or_else(|| panic!("{out:?} for {w}"));
        assert!(wit.verify(&w, &t));
    }

    #[test]
    fn different_levels_are_absent() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let t = Word::parse(&a, "a b a^-1 b^-1").unwrap();
        let w = Word::parse(&a, "a a b").unwrap();
        let out = find_automorphism(&w, &t, SearchOptions::default()).unwrap();
        assert!(matches!(out, SearchOutcome::Absent { .. }));
    }
}
