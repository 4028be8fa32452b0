use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::ToPrimitive;

use super::ReplabError;
use crate::words::{Alphabet, Word};
use crate::{QPoly, Real};

/// Square complex matrix over the real field `T`.
pub type CMat<T> = DMatrix<Complex<T>>;

/// Matrices attached to (some of) the generators of an alphabet, all of one
/// size, with inverses computed once at assignment time.
#[derive(Clone, Debug)]
pub struct Assignment<T: Real> {
    alphabet: Alphabet,
    dim: usize,
    matrices: Vec<Option<CMat<T>>>,
    inverses: Vec<Option<CMat<T>>>,
}

impl<T: Real> Assignment<T> {
    pub fn new(alphabet: &Alphabet, dim: usize) -> Self {
        Assignment {
            alphabet: alphabet.clone(),
            dim,
            matrices: vec![None; alphabet.len()],
            inverses: vec![None; alphabet.len()],
        }
    }

    /// Assigns every generator in order.
    pub fn from_matrices(alphabet: &Alphabet, matrices: Vec<CMat<T>>) -> Result<Self, ReplabError> {
        let dim = matrices.first().map_or(0, |m| m.nrows());
        let mut a = Assignment::new(alphabet, dim);
        if matrices.len() != alphabet.len() {
            return Err(ReplabError::Data(format!(
                "{} matrices for {} generators",
                matrices.len(),
                alphabet.len()
            )));
        }
        for (g, m) in matrices.into_iter().enumerate() {
            a.set(g, m)?;
        }
        Ok(a)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stores `m` for generator `g` after checking its shape and conditioning.
    pub fn set(&mut self, g: usize, m: CMat<T>) -> Result<(), ReplabError> {
        let name = self.alphabet.name(g).to_string();
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(ReplabError::Shape {
                name,
                rows: m.nrows(),
                cols: m.ncols(),
                dim: self.dim,
            });
        }
        let inv = m.clone().lu().try_inverse();
        let condition = inv
            .as_ref()
            .map_or(f64::INFINITY, |i| m.norm().to_f64() * i.norm().to_f64());
        if !condition.is_finite() || condition * T::arithmetic_floor() > 1.0 {
            return Err(ReplabError::Singular { name, condition });
        }
        self.matrices[g] = Some(m);
        self.inverses[g] = inv;
        Ok(())
    }

    pub fn get(&self, g: usize) -> Option<&CMat<T>> {
        self.matrices[g].as_ref()
    }

    pub fn inverse(&self, g: usize) -> Option<&CMat<T>> {
        self.inverses[g].as_ref()
    }

    pub fn matrix(&self, g: usize) -> Result<&CMat<T>, ReplabError> {
        self.get(g)
            .ok_or_else(|| ReplabError::Unassigned(self.alphabet.name(g).to_string()))
    }

    /// Largest `‖A A⁻¹ − I‖` over assigned generators.
    pub fn inverse_residual(&self) -> f64 {
        let id = CMat::<T>::identity(self.dim, self.dim);
        self.matrices
            .iter()
            .zip(&self.inverses)
            .filter_map(|(m, i)| Some((m.as_ref()?, i.as_ref()?)))
            .map(|(m, i)| (m * i - &id).norm().to_f64())
            .fold(0.0, f64::max)
    }

    /// Applies `f` to every assigned matrix, keeping the alphabet.
    pub fn map<F>(&self, dim: usize, f: F) -> Result<Assignment<T>, ReplabError>
    where
        F: Fn(&CMat<T>) -> CMat<T>,
    {
        let mut out = Assignment::new(&self.alphabet, dim);
        for g in 0..self.alphabet.len() {
            if let Some(m) = &self.matrices[g] {
                out.set(g, f(m))?;
            }
        }
        Ok(out)
    }
}

/// Product of the letter matrices in written order.
pub fn eval_word<T: Real>(rho: &Assignment<T>, w: &Word) -> Result<CMat<T>, ReplabError> {
    rho.alphabet.ensure_same(w.alphabet())?;
    let mut out = CMat::<T>::identity(rho.dim, rho.dim);
    for l in w.letters() {
        let g = l.generator();
        let m = if l.is_inverse() {
            rho.inverse(g)
        } else {
            rho.get(g)
        }
        .ok_or_else(|| ReplabError::Unassigned(rho.alphabet.name(g).to_string()))?;
        out *= m;
    }
    Ok(out)
}

pub fn eval_poly<T: Real>(rho: &Assignment<T>, p: &QPoly) -> Result<CMat<T>, ReplabError> {
    let mut out = CMat::<T>::zeros(rho.dim, rho.dim);
    for (w, c) in p.terms() {
        let c = c
            .to_f64()
            .ok_or_else(|| ReplabError::Data(format!("coefficient {c} is not representable")))?;
        out += eval_word(rho, &w)? * Complex::new(<T as Real>::from_f64(c), T::zero());
    }
    Ok(out)
}

/// `Π A_i B_i A_i⁻¹ B_i⁻¹ − Id` for an assignment to `x₁, y₁, …, x_g, y_g`.
pub fn lambda_n<T: Real>(rho: &Assignment<T>) -> Result<CMat<T>, ReplabError> {
    let genus = rho.alphabet.len() / 2;
    let w = crate::relator::standard_relator(genus).translate(&rho.alphabet)?;
    Ok(eval_word(rho, &w)? - CMat::<T>::identity(rho.dim, rho.dim))
}

/// `(upper-left m×m, lower-right)` diagonal blocks.
pub fn block_top_bottom<T: Real>(a: &CMat<T>, m: usize) -> (CMat<T>, CMat<T>) {
    let n = a.nrows() - m;
    (
        a.view((0, 0), (m, m)).into_owned(),
        a.view((m, m), (n, n)).into_owned(),
    )
}

/// The upper-right `m×n` block.
pub fn block_corner<T: Real>(a: &CMat<T>, m: usize) -> CMat<T> {
    let n = a.nrows() - m;
    a.view((0, m), (m, n)).into_owned()
}

/// The lower-left `n×m` block, zero for points of the block locus.
pub fn block_lower_left<T: Real>(a: &CMat<T>, m: usize) -> CMat<T> {
    let n = a.nrows() - m;
    a.view((m, 0), (n, m)).into_owned()
}

/// `[[top, corner], [0, bottom]]`.
pub fn assemble<T: Real>(top: &CMat<T>, corner: &CMat<T>, bottom: &CMat<T>) -> CMat<T> {
    let (m, n) = (top.nrows(), bottom.nrows());
    let mut out = CMat::<T>::zeros(m + n, m + n);
    out.view_mut((0, 0), (m, m)).copy_from(top);
    out.view_mut((0, m), (m, n)).copy_from(corner);
    out.view_mut((m, m), (n, n)).copy_from(bottom);
    out
}

pub fn block_diagonal<T: Real>(top: &CMat<T>, bottom: &CMat<T>) -> CMat<T> {
    assemble(top, &CMat::<T>::zeros(top.nrows(), bottom.nrows()), bottom)
}
