use rayon::prelude::*;

use super::diagrams::{check_diagrams, DiagramConfig, DiagramReport};
use super::sample::sample_rng;
use super::{
    block_lower_left, lambda_n, random_block_point, sample_v, sample_v_block, Assignment, Lab,
    ReplabError,
};
use crate::Real;

/// Residual bounds by kind of identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Pure arithmetic identities.
    pub arithmetic: f64,
    /// Chains with a single solve.
    pub solve: f64,
    /// Composite formulas.
    pub composite: f64,
    /// Long composites and diagram squares.
    pub long: f64,
    /// Relative residual counted as a genuine failure.
    pub generic_threshold: f64,
    /// Share of samples that must fail for a generic failure.
    pub generic_fraction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            arithmetic: 1e-12,
            solve: 1e-10,
            composite: 1e-9,
            long: 1e-8,
            generic_threshold: 1e-3,
            generic_fraction: 0.8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    /// Sizes of the unblocked samples.
    pub sizes: Vec<usize>,
    pub block_sizes: Vec<(usize, usize)>,
    pub tolerances: Tolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 1,
            samples: 100,
            sizes: vec![2, 3, 4],
            block_sizes: vec![(1, 1), (1, 2), (2, 1), (2, 2)],
            tolerances: Tolerances::default(),
        }
    }
}

impl VerifyConfig {
    pub fn diagram_config(&self) -> DiagramConfig {
        DiagramConfig {
            seed: self.seed,
            samples: self.samples,
            block_sizes: self.block_sizes.clone(),
            tolerance: self.tolerances.long,
            generic_threshold: self.tolerances.generic_threshold,
            generic_fraction: self.tolerances.generic_fraction,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub samples: usize,
    pub max_residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Largest lower-left block over the block samples and their images, per `(m, n)`.
    pub block_table: Vec<((usize, usize), f64)>,
    pub diagrams: DiagramReport,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.diagrams.passed()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

const CHECKS: [&str; 6] = [
    "lambda-vanishes",
    "phi-lands-in-z",
    "block-shape",
    "gamma-round-trip",
    "delta-identity-on-z",
    "delta-factorization",
];

fn max_lower_left<T: Real>(rho: &Assignment<T>, m: usize) -> f64 {
    (0..rho.alphabet().len())
        .filter_map(|g| rho.get(g))
        .map(|x| block_lower_left(x, m).norm().to_f64())
        .fold(0.0, f64::max)
}

struct SampleOutcome {
    residuals: [f64; 6],
    block: ((usize, usize), f64),
}

fn one_sample<T: Real>(lab: &Lab, config: &VerifyConfig, index: usize) -> Result<SampleOutcome, ReplabError> {
    let n = config.sizes[index % config.sizes.len()];
    let (bm, bn) = config.block_sizes[index % config.block_sizes.len()];
    let mut rng = sample_rng(config.seed, (1u64 << 32) | index as u64);
    let v = sample_v::<T, _>(lab.genus, n, &mut rng)?;
    let lambda = lambda_n(&v)?.norm().to_f64();
    let z = lab.phi_prime(&v)?;
    let dw = lab
        .derivative_values(&z)?
        .iter()
        .map(|d| d.norm().to_f64())
        .fold(0.0, f64::max);

    let vb = sample_v_block::<T, _>(lab.genus, bm, bn, &mut rng)?;
    let zb = lab.phi_prime(&vb)?;
    let mut shape = max_lower_left(&vb, bm).max(max_lower_left(&zb, bm));
    for d in lab.derivative_values(&zb)? {
        shape = shape.max(block_lower_left(&d, bm).norm().to_f64());
    }

    let mut rho = Assignment::new(lab.alphabet(), bm + bn);
    let noise = random_block_point::<T, _>(lab.alphabet(), bm, bn, &mut rng)?;
    for &a in &lab.free {
        rho.set(a, noise.matrix(a)?.clone())?;
    }
    let gamma = lab.gamma(&rho, bm)?;
    let back = lab.gamma_inv(&gamma, bm)?;
    let mut round = 0.0f64;
    for &a in &lab.free {
        round = round.max((back.matrix(a)? - rho.matrix(a)?).norm().to_f64());
    }

    let zp = lab.z_split_point::<T, _>(bm, bn, &mut rng)?;
    let zid = lab.delta_inv(&zp)?.distance(&zp);

    let f0dd = lab.split(&lab.map_f0_dd(&rho, bm)?)?;
    let corrected = lab.delta(&lab.f0_times_id(&gamma, bm)?)?;
    let factor = corrected.distance(&f0dd);

    Ok(SampleOutcome {
        residuals: [lambda, dw, shape, round, zid, factor],
        block: ((bm, bn), shape),
    })
}

/// Sampled identity checks plus the diagram squares, in parallel.
pub fn run_verification<T: Real>(lab: &Lab, config: &VerifyConfig) -> Result<VerificationReport, ReplabError> {
    let outcomes: Vec<SampleOutcome> = (0..config.samples)
        .into_par_iter()
        .map(|i| one_sample::<T>(lab, config, i))
        .collect::<Result<_, _>>()?;
    let t = &config.tolerances;
    let bounds = [t.solve, t.composite, t.arithmetic, t.arithmetic, t.solve, t.long];
    let checks = CHECKS
        .iter()
        .enumerate()
        .map(|(k, &name)| {
            let max_residual = outcomes.iter().map(|o| o.residuals[k]).fold(0.0, f64::max);
            Check {
                name,
                tolerance: bounds[k],
                samples: outcomes.len(),
                max_residual,
                passed: max_residual <= bounds[k],
            }
        })
        .collect();
    let block_table = config
        .block_sizes
        .iter()
        .map(|&size| {
            let worst = outcomes
                .iter()
                .filter(|o| o.block.0 == size)
                .map(|o| o.block.1)
                .fold(0.0, f64::max);
            (size, worst)
        })
        .collect();
    Ok(VerificationReport {
        checks,
        block_table,
        diagrams: check_diagrams::<T>(lab, &config.diagram_config())?,
    })
}
