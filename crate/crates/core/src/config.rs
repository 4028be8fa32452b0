//! Run configuration in `key: value` form.

use std::path::PathBuf;

use thiserror::Error;

use crate::relator::PipelineOptions;
use crate::replab::{Tolerances, VerifyConfig};
use crate::words::SignChoice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Everything a `relator` or `verify` run needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tiling: Option<PathBuf>,
    pub pipeline: PipelineOptions,
    pub verify: VerifyConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tiling: None,
            pipeline: PipelineOptions::default(),
            verify: VerifyConfig::default(),
        }
    }
}

/// `auto` or a whitespace/comma separated list of ids.
pub fn parse_selection(value: &str) -> Option<Vec<String>> {
    let v = value.trim();
    if v.is_empty() || v == "auto" {
        return None;
    }
    Some(
        v.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect(),
    )
}

/// `MxN` block size.
pub fn parse_block_size(value: &str) -> Option<(usize, usize)> {
    let (m, n) = value.split_once('x')?;
    let (m, n) = (m.trim().parse().ok()?, n.trim().parse().ok()?);
    (m > 0 && n > 0).then_some((m, n))
}

fn parse_list<T>(value: &str, item: impl Fn(&str) -> Option<T>) -> Option<Vec<T>> {
    let out: Option<Vec<T>> = value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(item)
        .collect();
    out.filter(|v| !v.is_empty())
}

impl RunConfig {
    /// Sets one key; `Err` carries a message without line information.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let num = |v: &str| -> Result<f64, String> {
            v.parse::<f64>()
                .ok()
                .filter(|x| *x >= 0.0)
                .ok_or_else(|| format!("`{key}` needs a non-negative number, got `{v}`"))
        };
        let int = |v: &str| -> Result<usize, String> {
            v.parse::<usize>()
                .map_err(|_| format!("`{key}` needs a non-negative integer, got `{v}`"))
        };
        let t = &mut self.verify.tolerances;
        match key {
            "tiling" => self.tiling = Some(PathBuf::from(value)),
            "cut" => self.pipeline.cut = parse_selection(value),
            "tree" => self.pipeline.tree = parse_selection(value),
            "complement" => self.pipeline.complement = parse_selection(value),
            "root" => {
                self.pipeline.root = match parse_selection(value) {
                    None => None,
                    Some(v) if v.len() == 1 => v.into_iter().next(),
                    Some(_) => return Err("`root` takes a single arrow".into()),
                }
            }
            "sign" => {
                self.pipeline.search.sign = match value {
                    "either" | "auto" => SignChoice::Either,
                    "plus" | "+1" | "1" => SignChoice::Plus,
                    "minus" | "-1" => SignChoice::Minus,
                    _ => return Err(format!("`sign` must be plus, minus or either, got `{value}`")),
                }
            }
            "budget" => self.pipeline.search.budget = int(value)?,
            "seed" => {
                self.verify.seed = value
                    .parse()
                    .map_err(|_| format!("`seed` needs an unsigned integer, got `{value}`"))?
            }
            "samples" => {
                let n = int(value)?;
                if n == 0 {
                    return Err("`samples` must be positive".into());
                }
                self.verify.samples = n;
            }
            "sizes" => {
                self.verify.sizes = parse_list(value, |s| s.parse().ok().filter(|&n: &usize| n > 0))
                    .ok_or_else(|| format!("`sizes` needs positive integers, got `{value}`"))?
            }
            "block-sizes" => {
                self.verify.block_sizes = parse_list(value, parse_block_size)
                    .ok_or_else(|| format!("`block-sizes` needs entries like 1x2, got `{value}`"))?
            }
            "tol-arithmetic" => t.arithmetic = num(value)?,
            "tol-solve" => t.solve = num(value)?,
            "tol-composite" => t.composite = num(value)?,
            "tol-long" => t.long = num(value)?,
            "tol-generic" => t.generic_threshold = num(value)?,
            "generic-fraction" => t.generic_fraction = num(value)?,
            "tolerance" => {
                let x = num(value)?;
                *t = Tolerances {
                    arithmetic: x,
                    solve: x,
                    composite: x,
                    long: x,
                    ..*t
                };
            }
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut config = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |message: String| ConfigError::Parse { line: i + 1, message };
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| fail("expected `key: value`".into()))?;
            config.set(k.trim(), v.trim()).map_err(fail)?;
        }
        Ok(config)
    }
}
