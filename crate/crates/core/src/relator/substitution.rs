use num_traits::{One, Signed};

use super::RelatorError;
use crate::quiver::QuiverWithPotential;
use crate::words::{Alphabet, FreeGroupMap, Letter, Word};
use crate::{QPoly, Rational};

/// One summand `coefficient · left · (∂W/∂relation) · right`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub coefficient: Rational,
    pub left: Word,
    pub relation: usize,
    pub right: Word,
}

/// `h ↦ image`, with `h − image = Σ witnesses`.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub h: usize,
    pub e: usize,
    pub route_length: usize,
    pub image: Word,
    pub witnesses: Vec<Witness>,
}

/// Substitutions eliminating the tree-complement arrows, in solving order,
/// over the alphabet of the contracted quiver.
#[derive(Clone, Debug, PartialEq)]
pub struct SubstitutionCertificate {
    pub alphabet: Alphabet,
    pub steps: Vec<Substitution>,
}

impl SubstitutionCertificate {
    /// The endomorphism sending each solved `h` to its image and fixing every other arrow.
    pub fn tau(&self) -> FreeGroupMap {
        let mut images: Vec<Word> = (0..self.alphabet.len())
            .map(|g| Word::reduce(&self.alphabet, [Letter::positive(g)]).expect("in range"))
            .collect();
        for s in &self.steps {
            images[s.h] = s.image.clone();
        }
        FreeGroupMap::new(&self.alphabet, &self.alphabet, images).expect("same alphabet")
    }

    pub fn step_for(&self, h: usize) -> Option<&Substitution> {
        self.steps.iter().find(|s| s.h == h)
    }

    /// Expands each witness sum and compares it with `h − image`.
    pub fn replay(&self, qp: &QuiverWithPotential) -> Result<(), RelatorError> {
        for s in &self.steps {
            let mut sum = QPoly::zero(&self.alphabet);
            for w in &s.witnesses {
                let rel = qp.cyclic_derivative(w.relation);
                sum = sum.add(&rel.sandwich(&w.left, &w.right).scale(w.coefficient.clone()));
            }
            let h = Word::reduce(&self.alphabet, [Letter::positive(s.h)])?;
            let expected = QPoly::from_word(&h).sub(&QPoly::from_word(&s.image));
            if sum != expected {
                return Err(RelatorError::Certificate(format!(
                    "witnesses for `{}` expand to {} instead of {}",
                    self.alphabet.name(s.h),
                    sum.render(),
                    expected.render()
                )));
            }
        }
        Ok(())
    }
}

/// Solves `h_i ↦ p_i` in increasing route length from the relations `∂W/∂e_i`
/// of the contracted quiver. `pairs` and `lengths` use contracted arrow indices.
pub fn solve_substitutions(
    qp: &QuiverWithPotential,
    pairs: &[(usize, usize)],
    lengths: &[usize],
) -> Result<SubstitutionCertificate, RelatorError> {
    let alphabet = qp.alphabet().clone();
    let hs: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| lengths[i]);
    let mut steps: Vec<Substitution> = Vec::new();
    for i in order {
        let (h, e) = pairs[i];
        let name = alphabet.name(h).to_string();
        let fail = |m: String| RelatorError::Substitution(format!("`{name}`: {m}"));
        let relation = qp.cyclic_derivative(e);
        let terms: Vec<(Word, Rational)> = relation.terms().map(|(w, c)| (w, c.clone())).collect();
        if terms.len() != 2 || !terms.iter().all(|(_, c)| c.abs().is_one()) {
            return Err(fail(format!("relation {} is not a binomial", relation.render())));
        }
        let occurrences = |w: &Word| w.letters().iter().filter(|l| l.generator() == h).count();
        let (with_h, other): (Vec<_>, Vec<_>) = terms.into_iter().partition(|(w, _)| occurrences(w) > 0);
        let ([(hw, sign)], [(p_prime, _)]) = (&with_h[..], &other[..]) else {
            return Err(fail(format!("relation {} must contain it in exactly one term", relation.render())));
        };
        if occurrences(hw) != 1 {
            return Err(fail(format!("it occurs more than once in {hw}")));
        }
        for w in [hw, p_prime] {
            if let Some(l) = w.letters().iter().find(|l| {
                l.generator() != h
                    && hs.contains(&l.generator())
                    && !steps.iter().any(|s| s.h == l.generator())
            }) {
                return Err(fail(format!(
                    "relation {} contains unsolved `{}`",
                    relation.render(),
                    alphabet.name(l.generator())
                )));
            }
        }
        if hw.letters().iter().any(|l| l.is_inverse() && l.generator() == h) {
            return Err(fail("it occurs inverted".into()));
        }
        let k = hw.letters().iter().position(|l| l.generator() == h).expect("present");
        let q1 = Word::reduce(&alphabet, hw.letters()[..k].iter().copied())?;
        let q2 = Word::reduce(&alphabet, hw.letters()[k + 1..].iter().copied())?;
        // relation = sign · (q1 h q2 − p'), so h − q1⁻¹ p' q2⁻¹ = sign · q1⁻¹ relation q2⁻¹
        let x = q1.inverse().multiply(p_prime)?.multiply(&q2.inverse())?;
        let mut witnesses = vec![Witness {
            coefficient: sign.clone(),
            left: q1.inverse(),
            relation: e,
            right: q2.inverse(),
        }];
        // telescope x − τ(x) one solved letter at a time
        let mut prefix = Word::identity(&alphabet);
        let letters = x.letters();
        for (pos, &l) in letters.iter().enumerate() {
            let suffix = Word::reduce(&alphabet, letters[pos + 1..].iter().copied())?;
            let Some(step) = steps.iter().find(|s| s.h == l.generator()) else {
                prefix = prefix.multiply(&Word::reduce(&alphabet, [l])?)?;
                continue;
            };
            if l.is_inverse() {
                let h_inv = Word::reduce(&alphabet, [l])?;
                let p_inv = step.image.inverse();
                for w in &step.witnesses {
                    witnesses.push(Witness {
                        coefficient: -w.coefficient.clone(),
                        left: prefix.multiply(&h_inv)?.multiply(&w.left)?,
                        relation: w.relation,
                        right: w.right.multiply(&p_inv)?.multiply(&suffix)?,
                    });
                }
                prefix = prefix.multiply(&p_inv)?;
            } else {
                for w in &step.witnesses {
                    witnesses.push(Witness {
                        coefficient: w.coefficient.clone(),
                        left: prefix.multiply(&w.left)?,
                        relation: w.relation,
                        right: w.right.multiply(&suffix)?,
                    });
                }
                prefix = prefix.multiply(&step.image)?;
            }
        }
        steps.push(Substitution {
            h,
            e,
            route_length: lengths[i],
            image: prefix,
            witnesses,
        });
    }
    Ok(SubstitutionCertificate { alphabet, steps })
}
