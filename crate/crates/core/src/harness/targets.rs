// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Keeps target streams apart from point samplers sharing a seed.
const TARGET_DOMAIN: u64 = 0x7a72_6765_745f_7873;

/// The moving targets `x_1, x_2, ..` on the circle.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetSequence {
    Zero,
    Constant(f64),
    /// Independent uniform targets; `x_n` is a pure function of `(seed, n)`.
    IidUniform {
        seed: u64,
    },
    /// One decimal in `[0, 1)` per line, line `n` holding `x_n`.
    File {
        path: PathBuf,
        values: Arc<Vec<f64>>,
    },
}

impl TargetSequence {
    pub fn constant(v: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&v) {
            return Err(Error::invalid(format!("constant target must lie in [0, 1), got {v}")));
        }
        Ok(TargetSequence::Constant(v))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::TargetFile(format!("{}: {e}", path.display())))?;
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v: f64 = line
                .parse()
                .map_err(|_| Error::TargetFile(format!("{}:{}: not a decimal: {line:?}", path.display(), i + 1)))?;
            if !(0.0..1.0).contains(&v) {
                return Err(Error::TargetFile(format!(
                    "{}:{}: {v} outside [0, 1)",
                    path.display(),
                    i + 1
                )));
            }
            values.push(v);
        }
        Ok(TargetSequence::File {
            path: path.to_path_buf(),
            values: Arc::new(values),
        })
    }

    /// `x_n` for `n ≥ 1`.
    pub fn get(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::invalid("targets are indexed from 1"));
        }
        Ok(match self {
            TargetSequence::Zero => 0.0,
            TargetSequence::Constant(v) => *v,
            TargetSequence::IidUniform { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ TARGET_DOMAIN);
                rng.set_word_pos(2 * (n as u128 - 1));
                (rng.next_u64() >> 11) as f64 * 2f64.powi(-53)
            }
            TargetSequence::File { values, .. } => *values.get(n as usize - 1).ok_or(Error::TargetsExhausted {
                available: values.len(),
                requested: n,
            })?,
        })
    }

    /// `x_1, .., x_N`.
    pub fn take(&self, n_limit: u64) -> Result<Vec<f64>> {
        match self {
            TargetSequence::IidUniform { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ TARGET_DOMAIN);
                Ok((0..n_limit)
                    .map(|_| (rng.next_u64() >> 11) as f64 * 2f64.powi(-53))
                    .collect())
            }
            _ => (1..=n_limit).map(|n| self.get(n)).collect(),
        }
    }

    /// The same sequence with every target moved by `delta` on the circle.
    pub fn shifted(&self, n_limit: u64, delta: f64) -> Result<TargetSequence> {
        let values = self
            .take(n_limit)?
            .into_iter()
            .map(|x| (x + delta).rem_euclid(1.0))
            .collect();
        Ok(TargetSequence::File {
            path: PathBuf::from(format!("<{self} shifted by {delta}>")),
            values: Arc::new(values),
        })
    }
}

impl fmt::Display for TargetSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSequence::Zero => write!(f, "zero"),
            TargetSequence::Constant(v) => write!(f, "constant:{v}"),
            TargetSequence::IidUniform { seed } => write!(f, "iid-uniform:{seed}"),
            TargetSequence::File { path, .. } => write!(f, "file:{}", path.display()),
        }
    }
}

/// Parses `zero`, `constant:V`, `iid-uniform:SEED` or `file:PATH`.
impl FromStr for TargetSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        match (kind, arg) {
            ("zero", None) => Ok(TargetSequence::Zero),
            ("constant", Some(v)) => {
                let v = v
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad constant target {v:?}")))?;
                TargetSequence::constant(v)
            }
            ("iid-uniform", Some(seed)) => Ok(TargetSequence::IidUniform {
                seed: seed
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad target seed {seed:?}")))?,
            }),
            ("file", Some(path)) => TargetSequence::from_file(path),
            _ => Err(Error::invalid(format!(
                "unknown targets {s:?}; expected zero, constant:V, iid-uniform:SEED or file:PATH"
            ))),
        }
    }
}
