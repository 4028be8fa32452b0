use num_complex::Complex;
use rand::Rng;

use super::{
    assemble, block_corner, block_top_bottom, eval_poly, eval_word, lambda_n, sample_v,
    sample_v_block, Assignment, CMat, ReplabError,
};
use crate::quiver::QuiverWithPotential;
use crate::relator::{standard_relator, PipelineRun, SubstitutionCertificate};
use crate::words::{Alphabet, FreeGroupMap, Word};
use crate::{QPoly, Real};

/// Symbolic data of one pipeline run, in the form the numeric maps need.
/// Arrow indices refer to the contracted quiver.
#[derive(Clone, Debug)]
pub struct Lab {
    pub genus: usize,
    pub surface: Alphabet,
    pub qp: QuiverWithPotential,
    /// Arrows surviving the substitutions, in normalization order.
    pub kept: Vec<usize>,
    /// Every non-cut arrow in index order.
    pub free: Vec<usize>,
    /// Cut arrows in listing order.
    pub cut: Vec<usize>,
    pub leftover: usize,
    /// `(h, e)` in solving order.
    pub pairs: Vec<(usize, usize)>,
    pub certificate: SubstitutionCertificate,
    /// `∂W/∂e` for `e` in `cut`.
    pub derivatives: Vec<QPoly>,
    /// Free arrow ↦ its word in the standard generators.
    pub arrow_map: FreeGroupMap,
    /// The standard relator pulled back to the kept arrows.
    pub relator_pullback: Word,
    /// The conjugator pulled back to the kept arrows.
    pub conjugator: Word,
    pub q0: Word,
    pub sign: i32,
}

/// A point of `GL_m^{2g} × GL_n^{2g} × Mat_{m×n}`.
#[derive(Clone, Debug)]
pub struct YPoint<T: Real> {
    pub top: Assignment<T>,
    pub bottom: Assignment<T>,
    pub r: CMat<T>,
}

/// A point of `M_m × M_n × Mat_{m×n}^{|E|}`, one corner per cut arrow.
#[derive(Clone, Debug)]
pub struct YPrimePoint<T: Real> {
    pub top: Assignment<T>,
    pub bottom: Assignment<T>,
    pub r: Vec<CMat<T>>,
}

/// A `YPoint` with one corner per free arrow.
#[derive(Clone, Debug)]
pub struct XPoint<T: Real> {
    pub y: YPoint<T>,
    pub corners: Vec<CMat<T>>,
}

/// A `YPrimePoint` with one corner per free arrow.
#[derive(Clone, Debug)]
pub struct XPrimePoint<T: Real> {
    pub y: YPrimePoint<T>,
    pub corners: Vec<CMat<T>>,
}

/// Coordinates of `X_{m,n} × GL_{m,n}^r` in kept arrows: diagonal blocks of the
/// kept arrows, the leftover corner, one corner per free arrow and one full
/// block matrix per substituted arrow.
#[derive(Clone, Debug)]
pub struct SplitPoint<T: Real> {
    pub top: Vec<CMat<T>>,
    pub bottom: Vec<CMat<T>>,
    pub r0: CMat<T>,
    pub corners: Vec<CMat<T>>,
    pub c: Vec<CMat<T>>,
}

fn dist<T: Real>(a: &CMat<T>, b: &CMat<T>) -> f64 {
    (a - b).norm().to_f64()
}

fn max_dist<'a, T: Real + 'a>(
    a: impl IntoIterator<Item = &'a CMat<T>>,
    b: impl IntoIterator<Item = &'a CMat<T>>,
) -> f64 {
    a.into_iter()
        .zip(b)
        .map(|(x, y)| dist(x, y))
        .fold(0.0, f64::max)
}

fn assignment_dist<T: Real>(a: &Assignment<T>, b: &Assignment<T>) -> f64 {
    (0..a.alphabet().len())
        .filter_map(|g| Some(dist(a.get(g)?, b.get(g)?)))
        .fold(0.0, f64::max)
}

impl<T: Real> YPrimePoint<T> {
    pub fn distance(&self, other: &Self) -> f64 {
        assignment_dist(&self.top, &other.top)
            .max(assignment_dist(&self.bottom, &other.bottom))
            .max(max_dist(&self.r, &other.r))
    }
}

impl<T: Real> XPrimePoint<T> {
    pub fn distance(&self, other: &Self) -> f64 {
        self.y
            .distance(&other.y)
            .max(max_dist(&self.corners, &other.corners))
    }
}

impl<T: Real> XPoint<T> {
    pub fn distance(&self, other: &Self) -> f64 {
        assignment_dist(&self.y.top, &other.y.top)
            .max(assignment_dist(&self.y.bottom, &other.y.bottom))
            .max(dist(&self.y.r, &other.y.r))
            .max(max_dist(&self.corners, &other.corners))
    }
}

impl<T: Real> SplitPoint<T> {
    pub fn distance(&self, other: &Self) -> f64 {
        max_dist(&self.top, &other.top)
            .max(max_dist(&self.bottom, &other.bottom))
            .max(dist(&self.r0, &other.r0))
            .max(max_dist(&self.corners, &other.corners))
            .max(max_dist(&self.c, &other.c))
    }

    /// Largest entry, for relative residuals.
    pub fn norm(&self) -> f64 {
        self.top
            .iter()
            .chain(&self.bottom)
            .chain(&self.corners)
            .chain(&self.c)
            .chain(std::iter::once(&self.r0))
            .map(|m| m.norm().to_f64())
            .fold(0.0, f64::max)
    }
}

fn scalar<T: Real>(x: f64) -> Complex<T> {
    Complex::new(<T as Real>::from_f64(x), T::zero())
}

fn letters_word(alphabet: &Alphabet, letters: &[crate::words::Letter]) -> Result<Word, ReplabError> {
    Ok(Word::reduce(alphabet, letters.iter().copied())?)
}

impl Lab {
    pub fn from_run(run: &PipelineRun) -> Result<Lab, ReplabError> {
        let norm = run
            .normalization
            .as_ref()
            .ok_or(ReplabError::NoNormalization)?;
        let qp = run.contraction.qp.clone();
        let alphabet = qp.alphabet().clone();
        let kept = run
            .relator
            .reduced_alphabet
            .names()
            .iter()
            .map(|n| alphabet.index_of(n).expect("kept arrow"))
            .collect();
        let cut = run.contracted_cut().to_vec();
        let derivatives = cut.iter().map(|&e| qp.cyclic_derivative(e)).collect();
        let surface = Alphabet::surface(run.genus);
        let pull = |w: &Word| -> Result<Word, ReplabError> {
            Ok(norm.inverse.apply(w)?.translate(&alphabet)?)
        };
        Ok(Lab {
            genus: run.genus,
            relator_pullback: pull(&standard_relator(run.genus))?,
            conjugator: pull(&norm.conjugator.translate(&surface)?)?,
            surface,
            kept,
            free: run.contraction.free_arrows(),
            cut,
            leftover: run.leftover(),
            pairs: run
                .certificate
                .steps
                .iter()
                .map(|s| (s.h, s.e))
                .collect(),
            certificate: run.certificate.clone(),
            derivatives,
            arrow_map: run.arrow_map()?,
            q0: run.relator.q0.clone(),
            sign: norm.sign,
            qp,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.qp.alphabet()
    }

    fn free_position(&self, a: usize) -> usize {
        self.free.iter().position(|&x| x == a).expect("free arrow")
    }

    fn cut_position(&self, e: usize) -> usize {
        self.cut.iter().position(|&x| x == e).expect("cut arrow")
    }

    /// Surface matrices ↦ matrices on every free arrow.
    pub fn phi_prime<T: Real>(&self, s: &Assignment<T>) -> Result<Assignment<T>, ReplabError> {
        let mut out = Assignment::new(self.alphabet(), s.dim());
        for &a in &self.free {
            out.set(a, eval_word(s, self.arrow_map.image(a))?)?;
        }
        Ok(out)
    }

    /// `∂W/∂e(ρ)` for every cut arrow, in listing order.
    pub fn derivative_values<T: Real>(&self, rho: &Assignment<T>) -> Result<Vec<CMat<T>>, ReplabError> {
        self.derivatives.iter().map(|d| eval_poly(rho, d)).collect()
    }

    pub fn sample_z<T: Real, R: Rng>(&self, n: usize, rng: &mut R) -> Result<Assignment<T>, ReplabError> {
        self.phi_prime(&sample_v(self.genus, n, rng)?)
    }

    pub fn sample_z_block<T: Real, R: Rng>(
        &self,
        m: usize,
        n: usize,
        rng: &mut R,
    ) -> Result<Assignment<T>, ReplabError> {
        self.phi_prime(&sample_v_block(self.genus, m, n, rng)?)
    }

    fn tops<T: Real>(a: &Assignment<T>, m: usize) -> Result<(Assignment<T>, Assignment<T>), ReplabError> {
        let n = a.dim() - m;
        Ok((
            a.map(m, |x| block_top_bottom(x, m).0)?,
            a.map(n, |x| block_top_bottom(x, m).1)?,
        ))
    }

    /// `(diagonal blocks, corner of λ_{m+n})`.
    pub fn map_f<T: Real>(&self, s: &Assignment<T>, m: usize) -> Result<YPoint<T>, ReplabError> {
        let (top, bottom) = Self::tops(s, m)?;
        Ok(YPoint {
            top,
            bottom,
            r: block_corner(&lambda_n(s)?, m),
        })
    }

    /// `(diagonal blocks, corners of ∂W/∂e for every cut arrow)`.
    pub fn map_f_dd<T: Real>(&self, rho: &Assignment<T>, m: usize) -> Result<YPrimePoint<T>, ReplabError> {
        let (top, bottom) = Self::tops(rho, m)?;
        let r = self
            .derivative_values(rho)?
            .iter()
            .map(|d| block_corner(d, m))
            .collect();
        Ok(YPrimePoint { top, bottom, r })
    }

    /// Places the surface corner at the leftover cut arrow, zeros elsewhere.
    pub fn psi_prime<T: Real>(&self, y: &YPoint<T>) -> Result<YPrimePoint<T>, ReplabError> {
        let (m, n) = (y.top.dim(), y.bottom.dim());
        let mut r = vec![CMat::<T>::zeros(m, n); self.cut.len()];
        r[self.cut_position(self.leftover)] = y.r.clone();
        Ok(YPrimePoint {
            top: self.phi_prime(&y.top)?,
            bottom: self.phi_prime(&y.bottom)?,
            r,
        })
    }

    pub fn map_f0<T: Real>(&self, s: &Assignment<T>, m: usize) -> Result<XPoint<T>, ReplabError> {
        let phi = self.phi_prime(s)?;
        let corners = self
            .free
            .iter()
            .map(|&a| Ok(block_corner(phi.matrix(a)?, m)))
            .collect::<Result<_, ReplabError>>()?;
        Ok(XPoint {
            y: self.map_f(s, m)?,
            corners,
        })
    }

    pub fn map_f0_dd<T: Real>(&self, rho: &Assignment<T>, m: usize) -> Result<XPrimePoint<T>, ReplabError> {
        let corners = self
            .free
            .iter()
            .map(|&a| Ok(block_corner(rho.matrix(a)?, m)))
            .collect::<Result<_, ReplabError>>()?;
        Ok(XPrimePoint {
            y: self.map_f_dd(rho, m)?,
            corners,
        })
    }

    pub fn psi_prime_times_id<T: Real>(&self, x: &XPoint<T>) -> Result<XPrimePoint<T>, ReplabError> {
        Ok(XPrimePoint {
            y: self.psi_prime(&x.y)?,
            corners: x.corners.clone(),
        })
    }

    /// `X'_{m,n} ≅ X_{m,n} × GL_{m,n}^r`: the corner of each paired relation
    /// joins the diagonal blocks of its substituted arrow.
    pub fn split<T: Real>(&self, x: &XPrimePoint<T>) -> Result<SplitPoint<T>, ReplabError> {
        let y = &x.y;
        let mut c = Vec::new();
        for &(h, e) in &self.pairs {
            c.push(assemble(
                y.top.matrix(h)?,
                &y.r[self.cut_position(e)],
                y.bottom.matrix(h)?,
            ));
        }
        Ok(SplitPoint {
            top: self
                .kept
                .iter()
                .map(|&a| y.top.matrix(a).cloned())
                .collect::<Result<_, _>>()?,
            bottom: self
                .kept
                .iter()
                .map(|&a| y.bottom.matrix(a).cloned())
                .collect::<Result<_, _>>()?,
            r0: y.r[self.cut_position(self.leftover)].clone(),
            corners: x.corners.clone(),
            c,
        })
    }

    fn image_value<T: Real>(&self, h: usize, rho: &Assignment<T>) -> Result<CMat<T>, ReplabError> {
        let step = self
            .certificate
            .step_for(h)
            .ok_or_else(|| ReplabError::Data(format!("no substitution for arrow {h}")))?;
        eval_word(rho, &step.image)
    }

    fn corner_only<T: Real>(x: &CMat<T>, m: usize) -> CMat<T> {
        let n = x.nrows() - m;
        assemble(&CMat::zeros(m, m), &block_corner(x, m), &CMat::zeros(n, n))
    }

    /// Subtracts the corner of `p_h(ρ)` from each substituted arrow.
    pub fn gamma<T: Real>(&self, rho: &Assignment<T>, m: usize) -> Result<Assignment<T>, ReplabError> {
        self.shift_substituted(rho, m, -1.0)
    }

    pub fn gamma_inv<T: Real>(&self, rho: &Assignment<T>, m: usize) -> Result<Assignment<T>, ReplabError> {
        self.shift_substituted(rho, m, 1.0)
    }

    fn shift_substituted<T: Real>(
        &self,
        rho: &Assignment<T>,
        m: usize,
        sign: f64,
    ) -> Result<Assignment<T>, ReplabError> {
        let mut out = rho.clone();
        for &(h, _) in &self.pairs {
            let corner = Self::corner_only(&self.image_value(h, rho)?, m) * scalar::<T>(sign);
            out.set(h, rho.matrix(h)? + corner)?;
        }
        Ok(out)
    }

    /// `f₀ × id` in kept-arrow coordinates.
    pub fn f0_times_id<T: Real>(&self, rho: &Assignment<T>, m: usize) -> Result<SplitPoint<T>, ReplabError> {
        let dim = rho.dim();
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for &a in &self.kept {
            let (t, b) = block_top_bottom(rho.matrix(a)?, m);
            top.push(t);
            bottom.push(b);
        }
        let lambda = eval_word(rho, &self.relator_pullback)? - CMat::<T>::identity(dim, dim);
        let mut corners = Vec::new();
        for &a in &self.free {
            let value = match self.certificate.step_for(a) {
                Some(_) => self.image_value(a, rho)?,
                None => rho.matrix(a)?.clone(),
            };
            corners.push(block_corner(&value, m));
        }
        let c = self
            .pairs
            .iter()
            .map(|&(h, _)| rho.matrix(h).cloned())
            .collect::<Result<_, _>>()?;
        Ok(SplitPoint {
            top,
            bottom,
            r0: block_corner(&lambda, m),
            corners,
            c,
        })
    }

    /// The inverse of the correcting isomorphism on `X_{m,n} × GL_{m,n}^r`.
    pub fn delta_inv<T: Real>(&self, p: &SplitPoint<T>) -> Result<SplitPoint<T>, ReplabError> {
        let (m, n) = (p.r0.nrows(), p.r0.ncols());
        let alphabet = self.alphabet();
        let mut top = Assignment::new(alphabet, m);
        let mut bottom = Assignment::new(alphabet, n);
        let mut xy = Assignment::new(alphabet, m + n);
        for (k, &a) in self.kept.iter().enumerate() {
            let corner = &p.corners[self.free_position(a)];
            top.set(a, p.top[k].clone())?;
            bottom.set(a, p.bottom[k].clone())?;
            xy.set(a, assemble(&p.top[k], corner, &p.bottom[k]))?;
        }
        for (i, &(h, _)) in self.pairs.iter().enumerate() {
            let (c1, c2) = block_top_bottom(&p.c[i], m);
            let corner = &p.corners[self.free_position(h)];
            xy.set(h, assemble(&c1, corner, &c2))?;
            top.set(h, c1)?;
            bottom.set(h, c2)?;
        }
        let mut f = vec![None; self.cut.len()];
        for (i, &(_, e)) in self.pairs.iter().enumerate() {
            let k = self.cut_position(e);
            let d = &self.derivatives[k];
            f[k] = Some(assemble(
                &eval_poly(&top, d)?,
                &block_corner(&p.c[i], m),
                &eval_poly(&bottom, d)?,
            ));
        }
        let mut g = Vec::new();
        for &(h, _) in &self.pairs {
            let step = self.certificate.step_for(h).expect("paired arrow is solved");
            let mut sum = CMat::<T>::zeros(m + n, m + n);
            for w in &step.witnesses {
                let fw = f[self.cut_position(w.relation)].as_ref().ok_or_else(|| {
                    ReplabError::Data(format!("witness uses unpaired relation {}", w.relation))
                })?;
                let coef = num_traits::ToPrimitive::to_f64(&w.coefficient)
                    .ok_or_else(|| ReplabError::Data("coefficient out of range".into()))?;
                sum += eval_word(&xy, &w.left)? * fw * eval_word(&xy, &w.right)? * scalar::<T>(coef);
            }
            g.push(sum);
        }
        let mut pa = Assignment::new(alphabet, m + n);
        for &a in &self.kept {
            pa.set(a, xy.matrix(a)?.clone())?;
        }
        for &(h, _) in &self.pairs {
            pa.set(h, self.image_value(h, &xy)?)?;
        }
        let k0 = self.cut_position(self.leftover);
        let d0 = &self.derivatives[k0];
        let r = assemble(&eval_poly(&top, d0)?, &p.r0, &eval_poly(&bottom, d0)?);
        let mut tele = CMat::<T>::zeros(m + n, m + n);
        for (w, coef) in d0.terms() {
            let coef = num_traits::ToPrimitive::to_f64(coef)
                .ok_or_else(|| ReplabError::Data("coefficient out of range".into()))?;
            let letters = w.letters();
            for (k, l) in letters.iter().enumerate() {
                let Some(i) = self.pairs.iter().position(|&(h, _)| h == l.generator()) else {
                    continue;
                };
                let prefix = eval_word(&xy, &letters_word(alphabet, &letters[..k])?)?;
                let suffix = eval_word(&pa, &letters_word(alphabet, &letters[k + 1..])?)?;
                let middle = if l.is_inverse() {
                    let yi = xy.inverse(l.generator()).expect("assigned");
                    let pi = pa.inverse(l.generator()).expect("assigned");
                    -(yi * &g[i] * pi)
                } else {
                    g[i].clone()
                };
                tele += prefix * middle * suffix * scalar::<T>(coef);
            }
        }
        let u = eval_word(&xy, &self.conjugator)?;
        let u_inv = eval_word(&xy, &self.conjugator.inverse())?;
        let q0_inv = eval_word(&xy, &self.q0.inverse())?;
        let core = u_inv * (r - tele) * q0_inv * u;
        let r0 = if self.sign == 1 {
            block_corner(&core, m)
        } else {
            -block_corner(&(eval_word(&xy, &self.relator_pullback)? * core), m)
        };
        let mut corners = p.corners.clone();
        let mut c = Vec::new();
        for (i, &(h, _)) in self.pairs.iter().enumerate() {
            let gc = block_corner(&g[i], m);
            let k = self.free_position(h);
            corners[k] = &p.corners[k] - &gc;
            let (c1, c2) = block_top_bottom(&p.c[i], m);
            c.push(assemble(&c1, &gc, &c2));
        }
        Ok(SplitPoint {
            top: p.top.clone(),
            bottom: p.bottom.clone(),
            r0,
            corners,
            c,
        })
    }

    /// The correcting isomorphism itself: solves `δ⁻¹(p) = q` for `p`. The
    /// unknown corners enter `δ⁻¹` affinely, so the system is recovered by
    /// probing and solved directly.
    pub fn delta<T: Real>(&self, q: &SplitPoint<T>) -> Result<SplitPoint<T>, ReplabError> {
        let (m, n) = (q.r0.nrows(), q.r0.ncols());
        let block = m * n;
        let unknowns = (self.pairs.len() + 1) * block;
        let mut corners = q.corners.clone();
        for (i, &(h, _)) in self.pairs.iter().enumerate() {
            let k = self.free_position(h);
            corners[k] = &q.corners[k] + block_corner(&q.c[i], m);
        }
        let build = |x: &nalgebra::DVector<Complex<T>>| -> SplitPoint<T> {
            let part = |j: usize| CMat::<T>::from_column_slice(m, n, &x.as_slice()[j * block..(j + 1) * block]);
            let c = self
                .pairs
                .iter()
                .enumerate()
                .map(|(i, _)| {
                    let (c1, c2) = block_top_bottom(&q.c[i], m);
                    assemble(&c1, &part(i), &c2)
                })
                .collect();
            SplitPoint {
                top: q.top.clone(),
                bottom: q.bottom.clone(),
                r0: part(self.pairs.len()),
                corners: corners.clone(),
                c,
            }
        };
        let image = |x: &nalgebra::DVector<Complex<T>>| -> Result<nalgebra::DVector<Complex<T>>, ReplabError> {
            let out = self.delta_inv(&build(x))?;
            let mut parts: Vec<Complex<T>> = Vec::with_capacity(unknowns);
            for c in &out.c {
                parts.extend(block_corner(c, m).iter().copied());
            }
            parts.extend(out.r0.iter().copied());
            Ok(nalgebra::DVector::from_vec(parts))
        };
        let zero = nalgebra::DVector::<Complex<T>>::zeros(unknowns);
        let base = image(&zero)?;
        let mut a = CMat::<T>::zeros(unknowns, unknowns);
        for k in 0..unknowns {
            let mut e = zero.clone();
            e[k] = scalar(1.0);
            a.set_column(k, &(image(&e)? - &base));
        }
        let mut target: Vec<Complex<T>> = Vec::with_capacity(unknowns);
        for c in &q.c {
            target.extend(block_corner(c, m).iter().copied());
        }
        target.extend(q.r0.iter().copied());
        let rhs = nalgebra::DVector::from_vec(target) - base;
        let x = a.lu().solve(&rhs).ok_or_else(|| ReplabError::Singular {
            name: "correcting isomorphism".into(),
            condition: f64::INFINITY,
        })?;
        Ok(build(&x))
    }

    /// A point of `Z_m × Z_n × Mat_{m×n}^{2g+r}` in split coordinates.
    pub fn z_split_point<T: Real, R: Rng>(
        &self,
        m: usize,
        n: usize,
        rng: &mut R,
    ) -> Result<SplitPoint<T>, ReplabError> {
        let top = self.sample_z::<T, R>(m, rng)?;
        let bottom = self.sample_z::<T, R>(n, rng)?;
        let corners: Vec<CMat<T>> = self
            .free
            .iter()
            .map(|_| {
                let x = super::random_block_point::<T, R>(&Alphabet::surface(1), m, n, rng)
                    .expect("well conditioned");
                block_corner(x.get(0).expect("assigned"), m)
            })
            .collect();
        let split_of = |rho: &Assignment<T>| -> Result<Vec<CMat<T>>, ReplabError> {
            self.kept.iter().map(|&a| rho.matrix(a).cloned()).collect()
        };
        let c = self
            .pairs
            .iter()
            .map(|&(h, _)| Ok(super::block_diagonal(top.matrix(h)?, bottom.matrix(h)?)))
            .collect::<Result<_, ReplabError>>()?;
        Ok(SplitPoint {
            top: split_of(&top)?,
            bottom: split_of(&bottom)?,
            r0: CMat::zeros(m, n),
            corners,
            c,
        })
    }
}
