//! Deterministic measurement-noise injection for modulus tables.
//!
//! Draws come from a named, portable generator (ChaCha with 8 rounds,
//! seeded with a 64-bit value) so that a seed pins the exact perturbation on
//! every platform. One draw is consumed per matrix entry in row-major
//! order; multi-table experiments give each table its own stream by
//! offsetting the seed with the table's index.

use crate::forward::PhaselessMatrix;
use crate::{Error, Result};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Which perturbation formula to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseModel {
    /// entry ← entry · (1 + δ·e) with e uniform in (−1, 1).
    Relative,
    /// entry ← max(0, entry + δ·e) with e uniform in (−1, 1).
    Absolute,
}

impl NoiseModel {
    pub fn name(&self) -> &'static str {
        match self {
            NoiseModel::Relative => "relative",
            NoiseModel::Absolute => "absolute",
        }
    }

    pub fn parse(name: &str) -> Result<NoiseModel> {
        match name {
            "relative" => Ok(NoiseModel::Relative),
            "absolute" => Ok(NoiseModel::Absolute),
            other => Err(Error::Parse(format!("unknown noise model '{other}'"))),
        }
    }
}

/// A reproducible perturbation: model, level δ ≥ 0, and stream seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub model: NoiseModel,
    pub level: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(model: NoiseModel, level: f64, seed: u64) -> Result<NoiseSpec> {
        if !(level >= 0.0) || !level.is_finite() {
            return Err(Error::Domain(format!("noise level {level} must be finite and ≥ 0")));
        }
        Ok(NoiseSpec { model, level, seed })
    }

    /// The spec for the `index`-th table of a multi-table experiment: same
    /// model and level, seed offset by the index.
    pub fn for_matrix(&self, index: usize) -> NoiseSpec {
        NoiseSpec { seed: self.seed.wrapping_add(index as u64), ..*self }
    }
}

/// Map one 64-bit draw to the open interval (−1, 1): the top 52 bits pick a
/// half-integer lattice point, so neither endpoint nor exact zero can occur.
fn unit_open(bits: u64) -> f64 {
    2.0 * (((bits >> 12) as f64 + 0.5) / (1u64 << 52) as f64) - 1.0
}

fn perturb(
    m: &PhaselessMatrix,
    spec: &NoiseSpec,
    f: impl Fn(f64, f64) -> f64,
) -> PhaselessMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = m.clone();
    for v in out.entries.iter_mut() {
        let e = unit_open(rng.next_u64());
        *v = f(*v, spec.level * e);
    }
    out
}

/// Multiplicative perturbation entry·(1 + δ·e), preserving metadata.
pub fn add_relative_noise(m: &PhaselessMatrix, spec: &NoiseSpec) -> Result<PhaselessMatrix> {
    if spec.model != NoiseModel::Relative {
        return Err(Error::Domain(format!(
            "relative perturbation called with a {} spec",
            spec.model.name()
        )));
    }
    Ok(perturb(m, spec, |v, d| v * (1.0 + d)))
}

/// Additive perturbation max(0, entry + δ·e), preserving metadata.
pub fn add_absolute_noise(m: &PhaselessMatrix, spec: &NoiseSpec) -> Result<PhaselessMatrix> {
    if spec.model != NoiseModel::Absolute {
        return Err(Error::Domain(format!(
            "absolute perturbation called with a {} spec",
            spec.model.name()
        )));
    }
    Ok(perturb(m, spec, |v, d| (v + d).max(0.0)))
}

/// Apply whichever perturbation the spec names.
pub fn add_noise(m: &PhaselessMatrix, spec: &NoiseSpec) -> Result<PhaselessMatrix> {
    match spec.model {
        NoiseModel::Relative => add_relative_noise(m, spec),
        NoiseModel::Absolute => add_absolute_noise(m, spec),
    }
}
