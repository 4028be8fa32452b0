use num_traits::One;

use super::{RelatorError, SubstitutionCertificate};
use crate::quiver::QuiverWithPotential;
use crate::words::{
    find_automorphism, Alphabet, FreeGroupMap, Letter, SearchOptions, SearchOutcome, Word,
};
use crate::{QPoly, Rational};

/// The surface-group relator read off from the unpaired cut arrow.
#[derive(Clone, Debug)]
pub struct RelatorResult {
    /// The surviving arrows (neither cut, tree nor substituted), as an alphabet.
    pub reduced_alphabet: Alphabet,
    /// `τ(∂W/∂e₀) = p₀ − q₀`, over the contracted alphabet.
    pub image_of_leftover: QPoly,
    pub p0: Word,
    pub q0: Word,
    /// `p₀ q₀⁻¹` over `reduced_alphabet`.
    pub relator: Word,
}

/// An automorphism identifying the relator with the standard surface relator.
#[derive(Clone, Debug)]
pub struct Normalization {
    /// Reduced alphabet → standard generators, with `map(relator) = u · λ^sign · u⁻¹`.
    pub map: FreeGroupMap,
    pub inverse: FreeGroupMap,
    pub conjugator: Word,
    pub sign: i32,
    pub explored: usize,
}

/// `x₁ y₁ x₁⁻¹ y₁⁻¹ ⋯ x_g y_g x_g⁻¹ y_g⁻¹`.
pub fn standard_relator(genus: usize) -> Word {
    let alphabet = Alphabet::surface(genus);
    let letters = (0..genus).flat_map(|i| {
        let (x, y) = (2 * i, 2 * i + 1);
        [
            Letter::positive(x),
            Letter::positive(y),
            Letter::negative(x),
            Letter::negative(y),
        ]
    });
    Word::reduce(&alphabet, letters).expect("surface alphabet")
}

/// Applies τ to `∂W/∂e₀`, checks the binomial shape, the vanishing of the paired
/// relations and the rank of the surviving alphabet.
pub fn extract_relator(
    qp: &QuiverWithPotential,
    free_arrows: &[usize],
    certificate: &SubstitutionCertificate,
    leftover: usize,
    genus: usize,
) -> Result<RelatorResult, RelatorError> {
    let tau = certificate.tau();
    for step in &certificate.steps {
        let image = qp.cyclic_derivative(step.e).apply_map(&tau)?;
        if !image.is_zero() {
            return Err(RelatorError::Relator(format!(
                "τ(∂W/∂{}) = {} is not zero",
                qp.alphabet().name(step.e),
                image.render()
            )));
        }
    }
    let image = qp.cyclic_derivative(leftover).apply_map(&tau)?;
    let terms: Vec<(Word, Rational)> = image.terms().map(|(w, c)| (w, c.clone())).collect();
    let one = Rational::one();
    let (p0, q0) = match &terms[..] {
        [(w1, c1), (w2, c2)] if *c1 == one && *c2 == -one.clone() => (w1.clone(), w2.clone()),
        [(w1, c1), (w2, c2)] if *c1 == -one.clone() && *c2 == one => (w2.clone(), w1.clone()),
        _ => {
            return Err(RelatorError::Relator(format!(
                "τ(∂W/∂{}) = {} is not of the form p₀ − q₀",
                qp.alphabet().name(leftover),
                image.render()
            )))
        }
    };
    let survivors: Vec<usize> = free_arrows
        .iter()
        .copied()
        .filter(|a| certificate.step_for(*a).is_none())
        .collect();
    if survivors.len() != 2 * genus {
        return Err(RelatorError::Relator(format!(
            "{} surviving arrows, expected 2g = {}",
            survivors.len(),
            2 * genus
        )));
    }
    let names: Vec<String> = survivors
        .iter()
        .map(|&a| qp.alphabet().name(a).to_string())
        .collect();
    let reduced_alphabet = Alphabet::new(names)?;
    let relator = p0
        .multiply(&q0.inverse())?
        .translate(&reduced_alphabet)
        .map_err(|e| RelatorError::Relator(format!("relator uses a removed arrow: {e}")))?;
    Ok(RelatorResult {
        reduced_alphabet,
        image_of_leftover: image,
        p0,
        q0,
        relator,
    })
}

/// Renames the relator's generators in order of first appearance to
/// `x₁, y₁, x₂, …`, then searches for an automorphism onto the standard relator.
pub fn normalize_relator(
    result: &RelatorResult,
    genus: usize,
    options: SearchOptions,
) -> Result<Option<Normalization>, RelatorError> {
    let source = &result.reduced_alphabet;
    let surface = Alphabet::surface(genus);
    let mut order: Vec<usize> = Vec::new();
    for l in result.relator.letters() {
        if !order.contains(&l.generator()) {
            order.push(l.generator());
        }
    }
    for g in 0..source.len() {
        if !order.contains(&g) {
            order.push(g);
        }
    }
    let mut images = vec![Word::identity(&surface); source.len()];
    let mut back = vec![Word::identity(source); source.len()];
    for (k, &g) in order.iter().enumerate() {
        images[g] = Word::reduce(&surface, [Letter::positive(k)])?;
        back[k] = Word::reduce(source, [Letter::positive(g)])?;
    }
    let rename = FreeGroupMap::new(source, &surface, images)?;
    let rename_back = FreeGroupMap::new(&surface, source, back)?;
    let renamed = rename.apply(&result.relator)?;
    let target = standard_relator(genus);
    match find_automorphism(&renamed, &target, options)? {
        SearchOutcome::Found(w) => {
            let map = rename.then(&w.automorphism)?;
            let inverse = w.inverse.then(&rename_back)?;
            let image = map.apply(&result.relator)?;
            if image != w.conjugator.conjugate(&target.pow(w.sign))? {
                return Err(RelatorError::Normalization("witness does not verify".into()));
            }
            Ok(Some(Normalization {
                map,
                inverse,
                conjugator: w.conjugator.clone(),
                sign: w.sign,
                explored: w.explored,
            }))
        }
        SearchOutcome::Unknown { explored } => {
            log::warn!("normalization budget exhausted after {explored} words");
            Ok(None)
        }
        SearchOutcome::Absent { reason, .. } => Err(RelatorError::Normalization(format!(
            "relator is not in the orbit of the standard relator: {reason}"
        ))),
    }
}
