use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{assemble, Assignment, CMat, ReplabError};
use crate::words::Alphabet;
use crate::Real;

/// Generator used for all sampling; one stream per sample keeps results
/// independent of scheduling.
pub type SampleRng = ChaCha8Rng;

/// A generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn disc<T: Real, R: Rng>(rng: &mut R) -> Complex<T> {
    let r = rng.random::<f64>().sqrt();
    let t = rng.random::<f64>() * std::f64::consts::TAU;
    Complex::new(<T as Real>::from_f64(r * t.cos()), <T as Real>::from_f64(r * t.sin()))
}

fn random_matrix<T: Real, R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMat<T> {
    CMat::<T>::from_fn(rows, cols, |_, _| disc(rng))
}

/// `2·Id` plus a unit-disc matrix scaled by `1/√n`: well conditioned.
pub fn random_invertible<T: Real, R: Rng>(rng: &mut R, n: usize) -> CMat<T> {
    let scale = <T as Real>::from_f64(1.0 / (n.max(1) as f64).sqrt());
    let two = Complex::new(<T as Real>::from_f64(2.0), T::zero());
    random_matrix::<T, R>(rng, n, n).map(|z| z * scale) + CMat::<T>::identity(n, n) * two
}

fn random_block_upper<T: Real, R: Rng>(rng: &mut R, m: usize, n: usize) -> CMat<T> {
    let top = random_invertible(rng, m);
    let bottom = random_invertible(rng, n);
    let corner = random_matrix(rng, m, n);
    assemble(&top, &corner, &bottom)
}

fn random_diagonal<T: Real, R: Rng>(rng: &mut R, n: usize) -> CMat<T> {
    let entries: Vec<Complex<T>> = (0..n)
        .map(|_| {
            let r = 0.5 + rng.random::<f64>();
            let t = rng.random::<f64>() * std::f64::consts::TAU;
            Complex::new(<T as Real>::from_f64(r * t.cos()), <T as Real>::from_f64(r * t.sin()))
        })
        .collect();
    CMat::<T>::from_diagonal(&nalgebra::DVector::from_vec(entries))
}

fn conjugate_all<T: Real>(
    alphabet: &Alphabet,
    p: &CMat<T>,
    diagonals: Vec<CMat<T>>,
) -> Result<Assignment<T>, ReplabError> {
    let p_inv = p.clone().lu().try_inverse().ok_or_else(|| ReplabError::Singular {
        name: "conjugator".into(),
        condition: f64::INFINITY,
    })?;
    let mats = diagonals.into_iter().map(|d| p * d * &p_inv).collect();
    Assignment::from_matrices(alphabet, mats)
}

/// A point of the genus-`g` relation locus in size `n`: simultaneously
/// diagonal tuples conjugated by one random invertible matrix.
pub fn sample_v<T: Real, R: Rng>(genus: usize, n: usize, rng: &mut R) -> Result<Assignment<T>, ReplabError> {
    let alphabet = Alphabet::surface(genus);
    let diagonals = (0..2 * genus).map(|_| random_diagonal(rng, n)).collect();
    let p = random_invertible(rng, n);
    conjugate_all(&alphabet, &p, diagonals)
}

/// A point of the block relation locus: block-diagonal diagonal tuples
/// conjugated by a random block-upper-triangular matrix.
pub fn sample_v_block<T: Real, R: Rng>(
    genus: usize,
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<Assignment<T>, ReplabError> {
    let alphabet = Alphabet::surface(genus);
    let diagonals = (0..2 * genus).map(|_| random_diagonal(rng, m + n)).collect();
    let p = random_block_upper(rng, m, n);
    conjugate_all(&alphabet, &p, diagonals)
}

/// Random block-upper-triangular invertible matrices for every generator.
pub fn random_block_point<T: Real, R: Rng>(
    alphabet: &Alphabet,
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<Assignment<T>, ReplabError> {
    let mats = (0..alphabet.len()).map(|_| random_block_upper(rng, m, n)).collect();
    Assignment::from_matrices(alphabet, mats)
}

#[cfg(test)]
mod tests {
    use super::super::{block_lower_left, lambda_n};
    use super::*;

    #[test]
    fn samples_lie_on_the_locus() {
        let mut rng = sample_rng(7, 0);
        let v = sample_v::<f64, _>(2, 3, &mut rng).unwrap();
        assert!(lambda_n(&v).unwrap().norm() < 1e-10);
        let b = sample_v_block::<f64, _>(2, 1, 1, &mut rng).unwrap();
        assert!(lambda_n(&b).unwrap().norm() < 1e-10);
        for g in 0..4 {
            assert!(block_lower_left(b.get(g).unwrap(), 1).norm() < 1e-12);
        }
    }
}
