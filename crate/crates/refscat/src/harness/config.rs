//! Scenario configuration text format.
//!
//! A scenario file is flat `key = value` text with `#` comment lines, blank
//! lines, and repeated `scatterer` … `end` blocks. Unknown or duplicated
//! keys are errors; every key has a documented default, so the empty file is
//! a valid scenario (an empty scene probed at the library defaults).
//!
//! ```text
//! # Sound-soft kite probed from a distant reference point.
//! k = 8
//! directions = 128
//! quadrature = 256
//! model = coupled
//!
//! scatterer
//! kind = kite
//! center = 0,0
//! bc = dirichlet
//! end
//!
//! z0 = 12,12
//! strengths = -1,1,0;1
//! noise = relative
//! noise-level = 0.1
//! noise-seed = 7
//! grid-x = -6,6
//! grid-y = -6,6
//! grid-spacing = 0.05
//! indicator = iz0
//! ```
//!
//! Top-level keys and defaults:
//!
//! | key            | default     | meaning                                   |
//! |----------------|-------------|-------------------------------------------|
//! | `k`            | `8`         | wavenumber                                |
//! | `directions`   | `128`       | directions N (observations = incidences)  |
//! | `quadrature`   | `256`       | boundary nodes M per curve (even, ≥ 16)   |
//! | `model`        | `coupled`   | forward combination model                 |
//! | `z0`           | `12,12`     | reference point                           |
//! | `strengths`    | `-1,1,0;1`  | reference strengths, comma-separated      |
//! | `noise`        | `none`      | `none`, `relative`, or `absolute`         |
//! | `noise-level`  | —           | δ, required when `noise` is a model       |
//! | `noise-seed`   | `0`         | base RNG seed                             |
//! | `grid-x`       | `-6,6`      | sampling range in x                       |
//! | `grid-y`       | `-6,6`      | sampling range in y                       |
//! | `grid-spacing` | `0.05`      | sampling step                             |
//! | `indicator`    | scheme pick | `iz0`, `itheta`, `i2`, or `i3`            |
//! | `theta-indices`| empty       | direction indices for the Θ variant       |
//! | `incidence`    | `0`         | incidence index for `i3`                  |
//!
//! Block keys: `kind` (required: `kite`, `peanut`, `pear`, `circle`),
//! `center` (default `0,0`), `radius` (required for circles, forbidden
//! otherwise), `bc` (`dirichlet` or `neumann`, default `dirichlet`).
//! Complex values are `re;im` pairs; a bare decimal is a real value.

use crate::forward::{FarFieldModel, Scene};
use crate::geometry::{BoundaryCondition, BoundaryCurve, Scatterer, Vec2};
use crate::harness::io::{parse_f64, parse_pair};
use crate::harness::noise::{NoiseModel, NoiseSpec};
use crate::indicators::GridSpec;
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::HashSet;
use std::fs;
use std::path::Path;

/// Which indicator a reconstruction scheme evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatorKind {
    /// Phaseless indicator using all incident directions.
    Iz0,
    /// Phaseless indicator restricted to a direction subset Θ.
    ITheta,
    /// Phased full-aperture indicator.
    I2,
    /// Phased single-incidence indicator.
    I3,
}

impl IndicatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            IndicatorKind::Iz0 => "iz0",
            IndicatorKind::ITheta => "itheta",
            IndicatorKind::I2 => "i2",
            IndicatorKind::I3 => "i3",
        }
    }

    pub fn parse(name: &str) -> Result<IndicatorKind> {
        match name {
            "iz0" => Ok(IndicatorKind::Iz0),
            "itheta" => Ok(IndicatorKind::ITheta),
            "i2" => Ok(IndicatorKind::I2),
            "i3" => Ok(IndicatorKind::I3),
            other => Err(Error::Parse(format!("unknown indicator '{other}'"))),
        }
    }
}

/// Everything a reconstruction run needs, as parsed from a scenario file.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub k: f64,
    /// Direction count N; observations and incidences share the grid.
    pub directions: usize,
    /// Boundary quadrature nodes M per curve.
    pub quadrature: usize,
    pub scene: Vec<Scatterer>,
    /// Reference point z₀.
    pub z0: Vec2,
    /// Reference strengths, in measurement order.
    pub strengths: Vec<Complex64>,
    pub noise: Option<NoiseSpec>,
    pub grid: GridSpec,
    /// Indicator override; `None` lets the scheme choose its default.
    pub indicator: Option<IndicatorKind>,
    /// Direction indices forming Θ.
    pub theta_indices: Vec<usize>,
    /// Incidence index for the single-incidence indicator.
    pub incidence: usize,
    pub model: FarFieldModel,
}

impl Default for ScenarioConfig {
    fn default() -> ScenarioConfig {
        ScenarioConfig {
            k: 8.0,
            directions: 128,
            quadrature: 256,
            scene: Vec::new(),
            z0: [12.0, 12.0],
            strengths: vec![
                Complex64::new(-1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
            ],
            noise: None,
            grid: GridSpec::new((-6.0, 6.0), (-6.0, 6.0), 0.05)
                .expect("default grid is valid"),
            indicator: None,
            theta_indices: Vec::new(),
            incidence: 0,
            model: FarFieldModel::Coupled,
        }
    }
}

fn parse_complex(s: &str, what: &str) -> Result<Complex64> {
    let s = s.trim();
    if let Some((re, im)) = s.split_once(';') {
        Ok(Complex64::new(parse_f64(re, what)?, parse_f64(im, what)?))
    } else {
        Ok(Complex64::new(parse_f64(s, what)?, 0.0))
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: cannot parse integer '{}'", s.trim())))
}

fn parse_bc(s: &str) -> Result<BoundaryCondition> {
    match s {
        "dirichlet" => Ok(BoundaryCondition::Dirichlet),
        "neumann" => Ok(BoundaryCondition::Neumann),
        other => Err(Error::Parse(format!(
            "unknown bc '{other}' (expected dirichlet or neumann)"
        ))),
    }
}

fn parse_scatterer_block<'a>(
    iter: &mut impl Iterator<Item = (usize, &'a str)>,
    open_line: usize,
) -> Result<Scatterer> {
    let mut kind = None;
    let mut center = None;
    let mut radius = None;
    let mut bc = None;
    let mut seen = HashSet::new();
    loop {
        let Some((ln, raw)) = iter.next() else {
            return Err(Error::Parse(format!(
                "line {}: scatterer block never closed with 'end'",
                open_line + 1
            )));
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "end" {
            break;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!("line {}: expected 'key = value', got '{line}'", ln + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        if !seen.insert(key.to_string()) {
            return Err(Error::Parse(format!("line {}: duplicate key '{key}'", ln + 1)));
        }
        match key {
            "kind" => kind = Some(value.to_string()),
            "center" => {
                let (x, y) = parse_pair(value, "center")?;
                center = Some([x, y]);
            }
            "radius" => radius = Some(parse_f64(value, "radius")?),
            "bc" => bc = Some(parse_bc(value)?),
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unknown scatterer key '{other}'",
                    ln + 1
                )))
            }
        }
    }
    let kind = kind.ok_or_else(|| {
        Error::Parse(format!("line {}: scatterer block lacks 'kind'", open_line + 1))
    })?;
    let center = center.unwrap_or([0.0, 0.0]);
    let curve = match kind.as_str() {
        "circle" => {
            let radius = radius.ok_or_else(|| {
                Error::Parse("circle scatterer needs a 'radius'".into())
            })?;
            if !(radius > 0.0) || !radius.is_finite() {
                return Err(Error::Parse(format!("circle radius must be positive, got {radius}")));
            }
            BoundaryCurve::Circle { center, radius }
        }
        "kite" | "peanut" | "pear" => {
            if radius.is_some() {
                return Err(Error::Parse(format!(
                    "'radius' only applies to circles, not to a {kind}"
                )));
            }
            match kind.as_str() {
                "kite" => BoundaryCurve::Kite { center },
                "peanut" => BoundaryCurve::Peanut { center },
                _ => BoundaryCurve::Pear { center },
            }
        }
        other => return Err(Error::Parse(format!("unknown scatterer kind '{other}'"))),
    };
    Ok(Scatterer { curve, bc: bc.unwrap_or(BoundaryCondition::Dirichlet) })
}

impl ScenarioConfig {
    /// Parse a scenario from its text form.
    pub fn parse(text: &str) -> Result<ScenarioConfig> {
        let mut cfg = ScenarioConfig::default();
        let mut seen = HashSet::new();
        let mut noise_model: Option<NoiseModel> = None;
        let mut noise_level: Option<f64> = None;
        let mut noise_seed: Option<u64> = None;
        let mut grid_x = (-6.0, 6.0);
        let mut grid_y = (-6.0, 6.0);
        let mut grid_spacing = 0.05;

        let mut iter = text.lines().enumerate();
        while let Some((ln, raw)) = iter.next() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "scatterer" {
                cfg.scene.push(parse_scatterer_block(&mut iter, ln)?);
                continue;
            }
            if line == "end" {
                return Err(Error::Parse(format!(
                    "line {}: 'end' without an open scatterer block",
                    ln + 1
                )));
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected 'key = value', got '{line}'", ln + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(Error::Parse(format!("line {}: duplicate key '{key}'", ln + 1)));
            }
            match key {
                "k" => cfg.k = parse_f64(value, "k")?,
                "directions" => cfg.directions = parse_usize(value, "directions")?,
                "quadrature" => cfg.quadrature = parse_usize(value, "quadrature")?,
                "model" => cfg.model = FarFieldModel::parse(value)?,
                "z0" => {
                    let (x, y) = parse_pair(value, "z0")?;
                    cfg.z0 = [x, y];
                }
                "strengths" => {
                    cfg.strengths = value
                        .split(',')
                        .map(|s| parse_complex(s, "strengths"))
                        .collect::<Result<Vec<_>>>()?;
                    if cfg.strengths.is_empty() {
                        return Err(Error::Parse("strengths list is empty".into()));
                    }
                }
                "noise" => match value {
                    "none" => noise_model = None,
                    other => noise_model = Some(NoiseModel::parse(other)?),
                },
                "noise-level" => noise_level = Some(parse_f64(value, "noise-level")?),
                "noise-seed" => {
                    noise_seed = Some(value.parse().map_err(|_| {
                        Error::Parse(format!("noise-seed: cannot parse integer '{value}'"))
                    })?)
                }
                "grid-x" => grid_x = parse_pair(value, "grid-x")?,
                "grid-y" => grid_y = parse_pair(value, "grid-y")?,
                "grid-spacing" => grid_spacing = parse_f64(value, "grid-spacing")?,
                "indicator" => cfg.indicator = Some(IndicatorKind::parse(value)?),
                "theta-indices" => {
                    cfg.theta_indices = value
                        .split(',')
                        .map(|s| parse_usize(s, "theta-indices"))
                        .collect::<Result<Vec<_>>>()?;
                }
                "incidence" => cfg.incidence = parse_usize(value, "incidence")?,
                other => {
                    return Err(Error::Parse(format!("line {}: unknown key '{other}'", ln + 1)))
                }
            }
        }

        cfg.grid = GridSpec::new(grid_x, grid_y, grid_spacing)?;
        cfg.noise = match noise_model {
            Some(model) => {
                let level = noise_level.ok_or_else(|| {
                    Error::Parse("noise model given but 'noise-level' missing".into())
                })?;
                Some(NoiseSpec::new(model, level, noise_seed.unwrap_or(0))?)
            }
            None => {
                if noise_level.is_some() || noise_seed.is_some() {
                    return Err(Error::Parse(
                        "noise-level/noise-seed need 'noise = relative' or 'noise = absolute'"
                            .into(),
                    ));
                }
                None
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Read and parse a scenario file.
    pub fn load(path: &Path) -> Result<ScenarioConfig> {
        ScenarioConfig::parse(&fs::read_to_string(path)?)
    }

    /// Cross-field checks shared by `parse` and programmatic construction.
    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0) || !self.k.is_finite() {
            return Err(Error::Parse(format!("wavenumber must be positive, got {}", self.k)));
        }
        if self.directions < 2 {
            return Err(Error::Parse(format!(
                "need at least 2 directions, got {}",
                self.directions
            )));
        }
        crate::geometry::quadrature_nodes(self.quadrature)?;
        if self.incidence >= self.directions {
            return Err(Error::Parse(format!(
                "incidence index {} out of range for {} directions",
                self.incidence, self.directions
            )));
        }
        for &idx in &self.theta_indices {
            if idx >= self.directions {
                return Err(Error::Parse(format!(
                    "theta index {idx} out of range for {} directions",
                    self.directions
                )));
            }
        }
        if self.model == FarFieldModel::Retrieved {
            return Err(Error::Parse(
                "model 'retrieved' labels recovered data and cannot be synthesized".into(),
            ));
        }
        let scene = Scene::new(self.scene.clone())?;
        if scene.contains(self.z0) {
            return Err(Error::Parse(format!(
                "reference point ({}, {}) lies inside a scatterer",
                self.z0[0], self.z0[1]
            )));
        }
        Ok(())
    }

    /// Assemble the scene object (re-running the disjointness checks).
    pub fn build_scene(&self) -> Result<Scene> {
        Scene::new(self.scene.clone())
    }
}
