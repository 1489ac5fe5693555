//! Direct-sampling indicator fields for locating scatterers from far-field
//! tables.
//!
//! Two families are provided. The phaseless family works from the real
//! cross-correlation table F built out of modulus measurements taken with
//! and without a reference point scatterer: `indicator_iz0` correlates F
//! against plane-wave phases in both the observation and incidence
//! variables, `indicator_itheta` in the observation variable only, summed
//! over a chosen set of incident directions. The phased family works from
//! complex far-field data: `auxiliary_g` is the far-field pattern
//! back-propagated to a sampling point, `indicator_i3` its modulus for one
//! incidence, and `indicator_i2` its incidence-averaged version. All grid
//! sweeps are organized as dense matrix products over node chunks with a
//! fixed summation order, so results are bitwise reproducible.

use crate::forward::{DirectionGrid, FarFieldMatrix, PhaselessMatrix};
use crate::geometry::Vec2;
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Grid nodes processed per dense-product batch.
const NODE_CHUNK: usize = 4096;

/// Real cross-correlation table F(x̂_j, θ̂_l) = |u^∞_{with}|² − |u^∞_{without}|²
/// − |τ|², together with the reference parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FMatrix {
    pub n: usize,
    pub k: f64,
    pub z0: Vec2,
    pub tau: Complex64,
    /// Row-major, rows indexed by observation.
    pub entries: Vec<f64>,
}

impl FMatrix {
    pub fn get(&self, obs: usize, inc: usize) -> f64 {
        self.entries[obs * self.n + inc]
    }
}

/// Difference of squared moduli with the reference self-term removed. The
/// `with` table must carry the reference metadata; the `without` table is
/// the same scene measured with the reference absent.
pub fn f_matrix(
    with: &PhaselessMatrix,
    without: &PhaselessMatrix,
    tau: Complex64,
) -> Result<FMatrix> {
    if with.n != without.n || with.k != without.k {
        return Err(Error::Mismatch(format!(
            "tables disagree: N={}, k={} versus N={}, k={}",
            with.n, with.k, without.n, without.k
        )));
    }
    let z0 = with
        .z0
        .ok_or_else(|| Error::Mismatch("reference table carries no location".into()))?;
    if let Some(other) = without.z0 {
        if other != z0 {
            return Err(Error::Mismatch(format!(
                "tables place the reference at ({}, {}) and ({}, {})",
                z0[0], z0[1], other[0], other[1]
            )));
        }
    }
    if let Some(t) = with.tau {
        if t != tau {
            return Err(Error::Mismatch(format!(
                "reference table was measured with strength {t}, not {tau}"
            )));
        }
    }
    if let Some(t) = without.tau {
        if t != Complex64::ZERO {
            return Err(Error::Mismatch(format!(
                "baseline table was measured with strength {t}, expected zero"
            )));
        }
    }
    let t2 = tau.norm_sqr();
    let entries = with
        .entries
        .iter()
        .zip(&without.entries)
        .map(|(&c, &b)| c * c - b * b - t2)
        .collect();
    Ok(FMatrix { n: with.n, k: with.k, z0, tau, entries })
}

/// Rectangular sampling region with equispaced nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub spacing: f64,
}

impl GridSpec {
    pub fn new(x: (f64, f64), y: (f64, f64), spacing: f64) -> Result<GridSpec> {
        if !(spacing > 0.0) || !x.0.is_finite() || !x.1.is_finite() || !y.0.is_finite()
            || !y.1.is_finite() || x.1 < x.0 || y.1 < y.0
        {
            return Err(Error::Domain(format!(
                "bad sampling grid: x = {x:?}, y = {y:?}, spacing = {spacing}"
            )));
        }
        Ok(GridSpec { x, y, spacing })
    }

    fn axis_count(lo: f64, hi: f64, h: f64) -> usize {
        ((hi - lo) / h + 1e-9).floor() as usize + 1
    }

    pub fn nx(&self) -> usize {
        GridSpec::axis_count(self.x.0, self.x.1, self.spacing)
    }

    pub fn ny(&self) -> usize {
        GridSpec::axis_count(self.y.0, self.y.1, self.spacing)
    }

    pub fn node(&self, ix: usize, iy: usize) -> Vec2 {
        [self.x.0 + ix as f64 * self.spacing, self.y.0 + iy as f64 * self.spacing]
    }

    /// All nodes, y varying slowest — the storage order of [`GridField`].
    pub fn nodes(&self) -> Vec<Vec2> {
        let (nx, ny) = (self.nx(), self.ny());
        let mut out = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                out.push(self.node(ix, iy));
            }
        }
        out
    }
}

/// One nonnegative indicator value per grid node, row-major with y slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub spec: GridSpec,
    pub values: Vec<f64>,
    /// Which indicator produced this field, with its parameters.
    pub provenance: String,
}

impl GridField {
    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.spec.nx() + ix]
    }

    /// Largest value and where it sits.
    pub fn peak(&self) -> (f64, Vec2) {
        let mut best = (0, 0.0_f64);
        for (idx, &v) in self.values.iter().enumerate() {
            if v > best.1 {
                best = (idx, v);
            }
        }
        let nx = self.spec.nx();
        (best.1, self.spec.node(best.0 % nx, best.0 / nx))
    }

    /// Nodes strictly exceeding every in-bounds 8-neighbor, sorted by value,
    /// largest first.
    pub fn local_maxima(&self) -> Vec<(f64, Vec2)> {
        let (nx, ny) = (self.spec.nx(), self.spec.ny());
        let mut out = Vec::new();
        for iy in 0..ny {
            for ix in 0..nx {
                let v = self.get(ix, iy);
                let mut dominant = true;
                'probe: for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let jx = ix as i64 + dx;
                        let jy = iy as i64 + dy;
                        if jx < 0 || jy < 0 || jx >= nx as i64 || jy >= ny as i64 {
                            continue;
                        }
                        if self.get(jx as usize, jy as usize) >= v {
                            dominant = false;
                            break 'probe;
                        }
                    }
                }
                if dominant {
                    out.push((v, self.spec.node(ix, iy)));
                }
            }
        }
        out.sort_by(|a, b| b.0.total_cmp(&a.0));
        out
    }
}

/// A nonempty selection of incident directions, stored as indices into the
/// direction grid the data was tabulated on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSet {
    n: usize,
    indices: Vec<usize>,
}

impl ThetaSet {
    pub fn from_indices(grid: DirectionGrid, indices: Vec<usize>) -> Result<ThetaSet> {
        if indices.is_empty() {
            return Err(Error::Domain("direction selection is empty".into()));
        }
        for &l in &indices {
            if l >= grid.len() {
                return Err(Error::Domain(format!(
                    "direction index {l} outside the {}-direction grid",
                    grid.len()
                )));
            }
        }
        Ok(ThetaSet { n: grid.len(), indices })
    }

    /// Match unit vectors against the grid; directions that are not grid
    /// members are rejected.
    pub fn from_directions(grid: DirectionGrid, dirs: &[Vec2]) -> Result<ThetaSet> {
        let mut indices = Vec::with_capacity(dirs.len());
        for d in dirs {
            let mut found = None;
            for l in 0..grid.len() {
                let g = grid.direction(l);
                if (g[0] - d[0]).abs() < 1e-9 && (g[1] - d[1]).abs() < 1e-9 {
                    found = Some(l);
                    break;
                }
            }
            match found {
                Some(l) => indices.push(l),
                None => {
                    return Err(Error::Domain(format!(
                        "direction ({}, {}) is not on the {}-direction grid",
                        d[0],
                        d[1],
                        grid.len()
                    )));
                }
            }
        }
        ThetaSet::from_indices(grid, indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

/// cos/sin tables of k x̂_j·(p_q − c) for a chunk of sampling points:
/// rows follow the points, columns the grid directions.
fn phase_tables(
    k: f64,
    grid: DirectionGrid,
    pts: &[Vec2],
    center: Vec2,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = grid.len();
    let mut c = DMatrix::zeros(pts.len(), n);
    let mut s = DMatrix::zeros(pts.len(), n);
    for (q, p) in pts.iter().enumerate() {
        let dx = p[0] - center[0];
        let dy = p[1] - center[1];
        for j in 0..n {
            let xh = grid.direction(j);
            let (sv, cv) = (k * (xh[0] * dx + xh[1] * dy)).sin_cos();
            c[(q, j)] = cv;
            s[(q, j)] = sv;
        }
    }
    (c, s)
}

fn field(spec: &GridSpec, values: Vec<f64>, provenance: String) -> GridField {
    GridField { spec: *spec, values, provenance }
}

/// Doubly correlated phaseless indicator: at each node z,
/// |(2π/N)² Σ_j Σ_l F_jl cos(k (x̂_j − θ̂_l)·(z − z₀))|.
/// Peaks on or near scatterer boundaries and, by evenness of the cosine,
/// repeats every feature mirrored through the reference point.
pub fn indicator_iz0(f: &FMatrix, spec: &GridSpec) -> Result<GridField> {
    let grid = DirectionGrid::new(f.n)?;
    let fm = DMatrix::from_fn(f.n, f.n, |j, l| f.get(j, l));
    let w2 = (2.0 * PI / f.n as f64).powi(2);
    let nodes = spec.nodes();
    let mut values = Vec::with_capacity(nodes.len());
    for chunk in nodes.chunks(NODE_CHUNK) {
        let (c, s) = phase_tables(f.k, grid, chunk, f.z0);
        // Re[p† F q] with p, q the node phases in observation and incidence:
        // both variables live on the same grid, so one table serves twice.
        let cf = &c * &fm;
        let sf = &s * &fm;
        for q in 0..chunk.len() {
            let mut acc = 0.0;
            for l in 0..f.n {
                acc += cf[(q, l)] * c[(q, l)] + sf[(q, l)] * s[(q, l)];
            }
            values.push((acc * w2).abs());
        }
    }
    Ok(field(
        spec,
        values,
        format!("iz0 k={} N={} z0=({}, {})", f.k, f.n, f.z0[0], f.z0[1]),
    ))
}

/// Singly correlated phaseless indicator for a direction selection Θ:
/// |(2π/N) Σ_{θ̂∈Θ} Σ_j F_{j,l(θ̂)} cos(k x̂_j·(z − z₀))|, the absolute value
/// taken after the Θ sum.
pub fn indicator_itheta(f: &FMatrix, theta: &ThetaSet, spec: &GridSpec) -> Result<GridField> {
    if theta.n != f.n {
        return Err(Error::Mismatch(format!(
            "direction selection indexes a {}-grid, data uses {}",
            theta.n, f.n
        )));
    }
    let grid = DirectionGrid::new(f.n)?;
    // Collapse the Θ sum first: the correlation is linear in the columns.
    let mut g = DMatrix::zeros(f.n, 1);
    for &l in &theta.indices {
        for j in 0..f.n {
            g[(j, 0)] += f.get(j, l);
        }
    }
    let w = 2.0 * PI / f.n as f64;
    let nodes = spec.nodes();
    let mut values = Vec::with_capacity(nodes.len());
    for chunk in nodes.chunks(NODE_CHUNK) {
        let (c, _s) = phase_tables(f.k, grid, chunk, f.z0);
        let v = &c * &g;
        for q in 0..chunk.len() {
            values.push((v[(q, 0)] * w).abs());
        }
    }
    Ok(field(
        spec,
        values,
        format!(
            "itheta k={} N={} z0=({}, {}) |Theta|={}",
            f.k,
            f.n,
            f.z0[0],
            f.z0[1],
            theta.indices.len()
        ),
    ))
}

/// Far-field pattern for incidence l back-propagated to z:
/// (2π/N) Σ_j U_jl e^{ik x̂_j·z}.
pub fn auxiliary_g(u: &FarFieldMatrix, z: Vec2, l: usize) -> Result<Complex64> {
    if l >= u.n {
        return Err(Error::Domain(format!(
            "incidence index {l} outside the {}-direction grid",
            u.n
        )));
    }
    let grid = DirectionGrid::new(u.n)?;
    let mut acc = Complex64::ZERO;
    for j in 0..u.n {
        let xh = grid.direction(j);
        let (s, c) = (u.k * (xh[0] * z[0] + xh[1] * z[1])).sin_cos();
        acc += u.get(j, l) * Complex64::new(c, s);
    }
    Ok(acc * (2.0 * PI / u.n as f64))
}

/// Single-incidence phased indicator: the modulus of [`auxiliary_g`] swept
/// over the grid. Peaks where the scatterer (or reference point) sits.
pub fn indicator_i3(u: &FarFieldMatrix, l: usize, spec: &GridSpec) -> Result<GridField> {
    if l >= u.n {
        return Err(Error::Domain(format!(
            "incidence index {l} outside the {}-direction grid",
            u.n
        )));
    }
    let grid = DirectionGrid::new(u.n)?;
    let mut re_col = DMatrix::zeros(u.n, 1);
    let mut im_col = DMatrix::zeros(u.n, 1);
    for j in 0..u.n {
        let v = u.get(j, l);
        re_col[(j, 0)] = v.re;
        im_col[(j, 0)] = v.im;
    }
    let w = 2.0 * PI / u.n as f64;
    let nodes = spec.nodes();
    let mut values = Vec::with_capacity(nodes.len());
    for chunk in nodes.chunks(NODE_CHUNK) {
        let (c, s) = phase_tables(u.k, grid, chunk, [0.0, 0.0]);
        let re = &c * &re_col - &s * &im_col;
        let im = &s * &re_col + &c * &im_col;
        for q in 0..chunk.len() {
            values.push(re[(q, 0)].hypot(im[(q, 0)]) * w);
        }
    }
    Ok(field(spec, values, format!("i3 k={} N={} l={}", u.k, u.n, l)))
}

/// Incidence-averaged phased indicator:
/// |(2π/N)² Σ_j Σ_l U_jl e^{ik x̂_j·z} e^{−ik θ̂_l·z}|. Stays positive inside
/// scatterers and decays away from them.
pub fn indicator_i2(u: &FarFieldMatrix, spec: &GridSpec) -> Result<GridField> {
    let grid = DirectionGrid::new(u.n)?;
    let ur = DMatrix::from_fn(u.n, u.n, |j, l| u.get(j, l).re);
    let ui = DMatrix::from_fn(u.n, u.n, |j, l| u.get(j, l).im);
    let w2 = (2.0 * PI / u.n as f64).powi(2);
    let nodes = spec.nodes();
    let mut values = Vec::with_capacity(nodes.len());
    for chunk in nodes.chunks(NODE_CHUNK) {
        let (c, s) = phase_tables(u.k, grid, chunk, [0.0, 0.0]);
        // Row q of (p† U): real part R, imaginary part M; then contract with
        // the conjugated incidence phases.
        let r = &c * &ur - &s * &ui;
        let m = &s * &ur + &c * &ui;
        for q in 0..chunk.len() {
            let mut re = 0.0;
            let mut im = 0.0;
            for l in 0..u.n {
                re += r[(q, l)] * c[(q, l)] + m[(q, l)] * s[(q, l)];
                im += m[(q, l)] * c[(q, l)] - r[(q, l)] * s[(q, l)];
            }
            values.push(re.hypot(im) * w2);
        }
    }
    Ok(field(spec, values, format!("i2 k={} N={}", u.k, u.n)))
}
