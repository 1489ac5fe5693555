//! Boundary-integral discretization: logarithmic-singularity quadrature on
//! each curve, combined-field equations for both boundary conditions, and
//! field evaluation away from the boundary.
//!
//! Sound-soft curves use the combined-field equation (I/2 + K − iηS)ψ = −u^i
//! for a representation u^s = (K̃ − iηS̃)ψ; sound-hard curves use the
//! regularized ansatz u^s = (K̃ + iηS̃)ψ with the hypersingular operator
//! rewritten through tangential derivatives, giving (T + iη(K′ − I/2))ψ =
//! −∂u^i/∂ν. Kernels are split into a smooth part and a ln(4sin²((t−s)/2))
//! part; the latter is integrated with trigonometric product quadrature, so
//! everything converges spectrally on analytic curves. Multiple curves
//! couple through smooth off-diagonal blocks (each curve's potential traced
//! on the others) in one dense system, factored once per scene.

use crate::geometry::{quadrature_nodes, BoundaryCondition, BoundaryCurve, Scatterer, Vec2};
use crate::specfun::hankel1;
use crate::{Error, Result};
use nalgebra::{DMatrix, Dyn, LU};
use num_complex::Complex64;
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Oversampling factor for exterior field evaluation: the density is
/// trigonometrically interpolated to this many times the solve grid, pushing
/// the near-boundary quadrature breakdown distance in by the same factor.
const UPSAMPLE: usize = 4;

fn i_mul(z: Complex64) -> Complex64 {
    Complex64::new(-z.im, z.re)
}

fn cis(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

/// A curve sampled at equispaced parameters, with everything the kernels need.
pub struct CurveNodes {
    pub curve: BoundaryCurve,
    pub bc: BoundaryCondition,
    pub points: Vec<Vec2>,
    pub deriv: Vec<Vec2>,
    pub second: Vec<Vec2>,
    /// |x′(t_j)|
    pub speed: Vec<f64>,
    /// Unnormalized outward normal (x₂′, −x₁′); length equals speed.
    pub normal: Vec<Vec2>,
    /// Largest pairwise node distance.
    pub diameter: f64,
}

impl CurveNodes {
    fn build(scatterer: &Scatterer, m: usize) -> Result<CurveNodes> {
        let nodes = quadrature_nodes(m)?;
        let points: Vec<Vec2> = nodes.iter().map(|&t| scatterer.curve.point(t)).collect();
        let deriv: Vec<Vec2> = nodes.iter().map(|&t| scatterer.curve.derivative(t)).collect();
        let second: Vec<Vec2> =
            nodes.iter().map(|&t| scatterer.curve.second_derivative(t)).collect();
        let speed: Vec<f64> = deriv.iter().map(|d| (d[0] * d[0] + d[1] * d[1]).sqrt()).collect();
        let normal: Vec<Vec2> = deriv.iter().map(|d| [d[1], -d[0]]).collect();
        let mut diameter = 0.0_f64;
        for i in 0..m {
            for j in (i + 1)..m {
                let dx = points[i][0] - points[j][0];
                let dy = points[i][1] - points[j][1];
                diameter = diameter.max((dx * dx + dy * dy).sqrt());
            }
        }
        Ok(CurveNodes {
            curve: scatterer.curve.clone(),
            bc: scatterer.bc,
            points,
            deriv,
            second,
            speed,
            normal,
            diameter,
        })
    }

    fn len(&self) -> usize {
        self.points.len()
    }

    fn distance_to(&self, p: Vec2) -> f64 {
        let mut best = f64::INFINITY;
        for q in &self.points {
            let dx = p[0] - q[0];
            let dy = p[1] - q[1];
            best = best.min((dx * dx + dy * dy).sqrt());
        }
        best
    }
}

/// Quadrature weights R_{|i−j|} for the ln(4sin²((t−s)/2)) factor on an
/// m-point grid (m even).
fn log_weights(m: usize) -> DMatrix<f64> {
    let n = m / 2;
    let mut profile = vec![0.0_f64; m];
    for (j, slot) in profile.iter_mut().enumerate() {
        let dt = PI * j as f64 / n as f64;
        let mut acc = 0.0;
        for q in 1..n {
            acc += (q as f64 * dt).cos() / q as f64;
        }
        *slot = -(2.0 * PI / n as f64) * acc
            - (PI / (n as f64 * n as f64)) * (n as f64 * dt).cos();
    }
    DMatrix::from_fn(m, m, |i, j| profile[i.abs_diff(j)])
}

/// Spectral differentiation matrix for 2π-periodic functions on m nodes.
fn trig_diff(m: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            0.0
        } else {
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            0.5 * sign / ((i as f64 - j as f64) * PI / m as f64).tan()
        }
    })
}

/// Trigonometric cardinal interpolation from m nodes to fine·m nodes.
fn upsample_matrix(m: usize, fine: usize) -> DMatrix<f64> {
    let mf = fine * m;
    DMatrix::from_fn(mf, m, |q, j| {
        let u = 2.0 * PI * (q as f64 / mf as f64 - j as f64 / m as f64);
        let half = 0.5 * u;
        if half.sin().abs() < 1e-14 {
            1.0
        } else {
            (0.5 * m as f64 * u).sin() * half.cos() / (half.sin() * m as f64)
        }
    })
}

/// ln(4sin²((t_i − t_j)/2)), diagonal left at zero (overridden analytically).
fn log_factor(m: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            0.0
        } else {
            let s = (PI * (i as f64 - j as f64) / m as f64).sin();
            (4.0 * s * s).ln()
        }
    })
}

/// Ansatz sign: the single-layer term enters as sgn·iη (− for sound-soft,
/// + for sound-hard).
fn layer_sign(bc: BoundaryCondition) -> f64 {
    match bc {
        BoundaryCondition::Dirichlet => -1.0,
        BoundaryCondition::Neumann => 1.0,
    }
}

/// Self-interaction block: collocation of the curve's own boundary operator.
fn self_block(c: &CurveNodes, k: f64, eta: f64) -> Result<DMatrix<Complex64>> {
    let m = c.len();
    let r = log_weights(m);
    let lg = log_factor(m);
    let w = 2.0 * PI / m as f64;

    // Pairwise distances and Hankel values (diagonal skipped).
    let mut h0 = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
    let mut h1 = h0.clone();
    let mut dist = DMatrix::from_element(m, m, 1.0_f64);
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let dx = c.points[i][0] - c.points[j][0];
            let dy = c.points[i][1] - c.points[j][1];
            let rr = (dx * dx + dy * dy).sqrt();
            dist[(i, j)] = rr;
            h0[(i, j)] = hankel1(0, k * rr)?;
            h1[(i, j)] = hankel1(1, k * rr)?;
        }
    }
    let j0 = h0.map(|z| z.re);
    let j1 = h1.map(|z| z.re);

    match c.bc {
        BoundaryCondition::Dirichlet => {
            // Single layer M(t,s) = (i/4)H₀(kr)|x′(s)| and double layer
            // L(t,s) = (ik/4)H₁(kr)·((x(t)−x(s))·n(s))/r, both split against
            // the log factor; combined operator I/2 + K − iηS.
            let mut block = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
            for i in 0..m {
                for j in 0..m {
                    let entry = if i == j {
                        let sp = c.speed[i];
                        let m1 = -sp / (4.0 * PI);
                        let m2 = Complex64::new(
                            -EULER_GAMMA / (2.0 * PI) - (k * sp / 2.0).ln() / (2.0 * PI),
                            0.25,
                        ) * sp;
                        let l2 = (c.second[i][0] * c.normal[i][0]
                            + c.second[i][1] * c.normal[i][1])
                            / (4.0 * PI * sp * sp);
                        let smat = Complex64::new(r[(i, i)] * m1, 0.0) + m2 * w;
                        let kmat = Complex64::new(0.5 + w * l2, 0.0);
                        kmat - i_mul(smat) * eta
                    } else {
                        let sp_j = c.speed[j];
                        let rr = dist[(i, j)];
                        let mfull = i_mul(h0[(i, j)]) * 0.25 * sp_j;
                        let m1 = -j0[(i, j)] / (4.0 * PI) * sp_j;
                        let m2 = mfull - Complex64::new(m1 * lg[(i, j)], 0.0);
                        let smat = Complex64::new(r[(i, j)] * m1, 0.0) + m2 * w;

                        let d = (c.points[i][0] - c.points[j][0]) * c.normal[j][0]
                            + (c.points[i][1] - c.points[j][1]) * c.normal[j][1];
                        let lfull = i_mul(h1[(i, j)]) * (0.25 * k * d / rr);
                        let l1 = -k / (4.0 * PI) * j1[(i, j)] * d / rr;
                        let l2 = lfull - Complex64::new(l1 * lg[(i, j)], 0.0);
                        let kmat = Complex64::new(r[(i, j)] * l1, 0.0) + l2 * w;
                        kmat - i_mul(smat) * eta
                    };
                    block[(i, j)] = entry;
                }
            }
            Ok(block)
        }
        BoundaryCondition::Neumann => {
            // T + iη(K′ − I/2) with T = (D·Q_Â·D)/|x′| + k²·Q_B: Â has kernel
            // Φ (no Jacobian), B has kernel Φ·(ν(t)·ν(s))·|x′(s)|, K′ is the
            // adjoint double layer.
            let mut kp = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
            let mut a_hat = kp.clone();
            let mut b = kp.clone();
            for i in 0..m {
                for j in 0..m {
                    if i == j {
                        let sp = c.speed[i];
                        let diag2 = Complex64::new(
                            -EULER_GAMMA / (2.0 * PI) - (k * sp / 2.0).ln() / (2.0 * PI),
                            0.25,
                        );
                        let lp2 = (c.second[i][0] * c.normal[i][0]
                            + c.second[i][1] * c.normal[i][1])
                            / (4.0 * PI * sp * sp);
                        kp[(i, i)] = Complex64::new(w * lp2, 0.0);
                        a_hat[(i, i)] =
                            Complex64::new(r[(i, i)] * (-1.0 / (4.0 * PI)), 0.0) + diag2 * w;
                        b[(i, i)] = Complex64::new(r[(i, i)] * (-sp / (4.0 * PI)), 0.0)
                            + diag2 * (w * sp);
                    } else {
                        let rr = dist[(i, j)];
                        let sp_i = c.speed[i];
                        let sp_j = c.speed[j];
                        // K′: L′(t,s) = −(ik/4)H₁(kr)·((x(t)−x(s))·n(t))/r·|x′(s)|/|x′(t)|
                        let dpr = (c.points[i][0] - c.points[j][0]) * c.normal[i][0]
                            + (c.points[i][1] - c.points[j][1]) * c.normal[i][1];
                        let ratio = sp_j / sp_i;
                        let lp = i_mul(h1[(i, j)]) * (-0.25 * k * dpr / rr * ratio);
                        let lp1 = k / (4.0 * PI) * j1[(i, j)] * dpr / rr * ratio;
                        let lp2 = lp - Complex64::new(lp1 * lg[(i, j)], 0.0);
                        kp[(i, j)] = Complex64::new(r[(i, j)] * lp1, 0.0) + lp2 * w;

                        let ah = i_mul(h0[(i, j)]) * 0.25;
                        let ah1 = -j0[(i, j)] / (4.0 * PI);
                        let ah2 = ah - Complex64::new(ah1 * lg[(i, j)], 0.0);
                        a_hat[(i, j)] = Complex64::new(r[(i, j)] * ah1, 0.0) + ah2 * w;

                        let nunu = (c.normal[i][0] * c.normal[j][0]
                            + c.normal[i][1] * c.normal[j][1])
                            / (sp_i * sp_j);
                        let bf = i_mul(h0[(i, j)]) * (0.25 * nunu * sp_j);
                        let b1 = -j0[(i, j)] / (4.0 * PI) * nunu * sp_j;
                        let b2 = bf - Complex64::new(b1 * lg[(i, j)], 0.0);
                        b[(i, j)] = Complex64::new(r[(i, j)] * b1, 0.0) + b2 * w;
                    }
                }
            }
            let d = trig_diff(m).map(|v| Complex64::new(v, 0.0));
            let mut t_op = &d * &(&a_hat * &d);
            for i in 0..m {
                for j in 0..m {
                    t_op[(i, j)] = t_op[(i, j)] / c.speed[i] + b[(i, j)] * (k * k);
                }
            }
            let mut block = t_op;
            for i in 0..m {
                for j in 0..m {
                    let half = if i == j { Complex64::new(0.5, 0.0) } else { Complex64::ZERO };
                    block[(i, j)] += i_mul(kp[(i, j)] - half) * eta;
                }
            }
            Ok(block)
        }
    }
}

/// Values of the source curve's ansatz at exterior collocation points
/// (rows: points, columns: source nodes), trapezoid weights included.
fn eval_block(
    src: &CurveNodes,
    k: f64,
    eta: f64,
    pts: &[Vec2],
) -> Result<DMatrix<Complex64>> {
    let m = src.len();
    let w = 2.0 * PI / m as f64;
    let sgn = layer_sign(src.bc);
    let mut out = DMatrix::from_element(pts.len(), m, Complex64::ZERO);
    for (q, p) in pts.iter().enumerate() {
        for j in 0..m {
            let dx = p[0] - src.points[j][0];
            let dy = p[1] - src.points[j][1];
            let rr = (dx * dx + dy * dy).sqrt();
            let dl = i_mul(hankel1(1, k * rr)?)
                * (0.25 * k * (dx * src.normal[j][0] + dy * src.normal[j][1]) / rr);
            let sl = i_mul(hankel1(0, k * rr)?) * (0.25 * src.speed[j]);
            out[(q, j)] = (dl + i_mul(sl) * (sgn * eta)) * w;
        }
    }
    Ok(out)
}

/// Normal derivative of the source curve's ansatz at collocation points with
/// unit normals `nus` (rows: points, columns: source nodes).
fn eval_dnu_block(
    src: &CurveNodes,
    k: f64,
    eta: f64,
    pts: &[Vec2],
    nus: &[Vec2],
) -> Result<DMatrix<Complex64>> {
    let m = src.len();
    let w = 2.0 * PI / m as f64;
    let sgn = layer_sign(src.bc);
    let mut out = DMatrix::from_element(pts.len(), m, Complex64::ZERO);
    for (q, p) in pts.iter().enumerate() {
        for j in 0..m {
            let dx = p[0] - src.points[j][0];
            let dy = p[1] - src.points[j][1];
            let rr = (dx * dx + dy * dy).sqrt();
            let a = dx * src.normal[j][0] + dy * src.normal[j][1];
            let bq = dx * nus[q][0] + dy * nus[q][1];
            let nn = nus[q][0] * src.normal[j][0] + nus[q][1] * src.normal[j][1];
            let h0 = hankel1(0, k * rr)?;
            let h1 = hankel1(1, k * rr)?;
            let ddl = i_mul(
                h0 * (k * a * bq / (rr * rr)) - h1 * (2.0 * a * bq / (rr * rr * rr))
                    + h1 * (nn / rr),
            ) * (0.25 * k);
            let dsl = i_mul(h1) * (-0.25 * k * bq / rr * src.speed[j]);
            out[(q, j)] = (ddl + i_mul(dsl) * (sgn * eta)) * w;
        }
    }
    Ok(out)
}

/// Incident excitation for a solve.
#[derive(Debug, Clone, Copy)]
pub enum Incident {
    /// Unit-amplitude plane wave e^{ikx·θ̂} from direction θ̂.
    PlaneWave(Vec2),
    /// Point source Φ(·, y) = (i/4)H₀⁽¹⁾(k|·−y|) at y.
    PointSource(Vec2),
}

/// Solved node densities, one column per excitation.
pub struct SceneDensities {
    pub eta: f64,
    /// Nodes per curve of the generating operator.
    pub m: usize,
    pub curve_count: usize,
    /// Stacked curve-major values, (curves·m) × columns.
    pub values: DMatrix<Complex64>,
    /// Max discrete equation residual relative to the right-hand side norm.
    pub residual: f64,
}

/// Assembled and factored boundary-integral system for one scene.
pub struct SceneOperator {
    pub k: f64,
    pub eta: f64,
    pub m: usize,
    pub curves: Vec<CurveNodes>,
    fine: Vec<CurveNodes>,
    interp: DMatrix<f64>,
    matrix: DMatrix<Complex64>,
    lu: LU<Complex64, Dyn, Dyn>,
}

impl SceneOperator {
    /// Discretize every curve with m nodes, assemble the coupled system, and
    /// factor it. The coupling parameter is η = k.
    pub fn new(scatterers: &[Scatterer], k: f64, m: usize) -> Result<SceneOperator> {
        if scatterers.is_empty() {
            return Err(Error::Domain("scene has no scatterers".into()));
        }
        if !(k > 0.0) {
            return Err(Error::Domain(format!("wavenumber {k} must be positive")));
        }
        let eta = k;
        let curves: Vec<CurveNodes> =
            scatterers.iter().map(|s| CurveNodes::build(s, m)).collect::<Result<_>>()?;
        let fine: Vec<CurveNodes> =
            scatterers.iter().map(|s| CurveNodes::build(s, UPSAMPLE * m)).collect::<Result<_>>()?;
        let nc = curves.len();
        let mut matrix = DMatrix::from_element(nc * m, nc * m, Complex64::ZERO);
        for i in 0..nc {
            for j in 0..nc {
                let block = if i == j {
                    self_block(&curves[i], k, eta)?
                } else {
                    match curves[i].bc {
                        BoundaryCondition::Dirichlet => {
                            eval_block(&curves[j], k, eta, &curves[i].points)?
                        }
                        BoundaryCondition::Neumann => {
                            let nus: Vec<Vec2> = (0..m)
                                .map(|q| {
                                    let n = curves[i].normal[q];
                                    let sp = curves[i].speed[q];
                                    [n[0] / sp, n[1] / sp]
                                })
                                .collect();
                            eval_dnu_block(&curves[j], k, eta, &curves[i].points, &nus)?
                        }
                    }
                };
                matrix.view_mut((i * m, j * m), (m, m)).copy_from(&block);
            }
        }
        let lu = matrix.clone().lu();
        if !lu.is_invertible() {
            let diag = lu.u().diagonal();
            let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
            for d in diag.iter() {
                lo = lo.min(d.norm());
                hi = hi.max(d.norm());
            }
            return Err(Error::Solve(format!(
                "boundary system singular: |U| diagonal spread {:.3e}..{:.3e} (condition ≳ {:.3e})",
                lo,
                hi,
                if lo > 0.0 { hi / lo } else { f64::INFINITY }
            )));
        }
        let interp = upsample_matrix(m, UPSAMPLE);
        Ok(SceneOperator { k, eta, m, curves, fine, interp, matrix, lu })
    }

    /// Distance below which exterior evaluation near this curve is refused.
    pub fn guard_distance(&self, curve_index: usize) -> f64 {
        PI * self.curves[curve_index].diameter / self.m as f64
    }

    pub(crate) fn check_exterior(&self, p: Vec2, what: &str) -> Result<()> {
        for (ci, c) in self.curves.iter().enumerate() {
            if c.curve.contains(p) {
                return Err(Error::Domain(format!(
                    "{what} ({}, {}) lies inside a {} scatterer",
                    p[0],
                    p[1],
                    c.curve.kind_name()
                )));
            }
            let d = c.distance_to(p);
            let guard = self.guard_distance(ci);
            if d < guard {
                return Err(Error::Domain(format!(
                    "{what} ({}, {}) is {d:.4} from a boundary; needs ≥ {guard:.4}",
                    p[0], p[1]
                )));
            }
        }
        Ok(())
    }

    /// Right-hand side column for one excitation.
    fn rhs_column(&self, incident: &Incident) -> Result<DMatrix<Complex64>> {
        if let Incident::PointSource(y) = incident {
            self.check_exterior(*y, "point source")?;
        }
        let nc = self.curves.len();
        let m = self.m;
        let mut rhs = DMatrix::from_element(nc * m, 1, Complex64::ZERO);
        for (ci, c) in self.curves.iter().enumerate() {
            for j in 0..m {
                let x = c.points[j];
                let value = match (incident, c.bc) {
                    (Incident::PlaneWave(th), BoundaryCondition::Dirichlet) => {
                        -cis(self.k * (x[0] * th[0] + x[1] * th[1]))
                    }
                    (Incident::PlaneWave(th), BoundaryCondition::Neumann) => {
                        let nu_dot = (c.normal[j][0] * th[0] + c.normal[j][1] * th[1])
                            / c.speed[j];
                        -i_mul(cis(self.k * (x[0] * th[0] + x[1] * th[1]))) * (self.k * nu_dot)
                    }
                    (Incident::PointSource(y), BoundaryCondition::Dirichlet) => {
                        let rr = ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2)).sqrt();
                        -i_mul(hankel1(0, self.k * rr)?) * 0.25
                    }
                    (Incident::PointSource(y), BoundaryCondition::Neumann) => {
                        let dx = x[0] - y[0];
                        let dy = x[1] - y[1];
                        let rr = (dx * dx + dy * dy).sqrt();
                        let nu_dot =
                            (dx * c.normal[j][0] + dy * c.normal[j][1]) / (c.speed[j] * rr);
                        i_mul(hankel1(1, self.k * rr)?) * (0.25 * self.k * nu_dot)
                    }
                };
                rhs[(ci * m + j, 0)] = value;
            }
        }
        Ok(rhs)
    }

    /// Solve for any set of excitations (one density column each) and verify
    /// the discrete residual.
    pub fn solve(&self, incidents: &[Incident]) -> Result<SceneDensities> {
        let rows = self.curves.len() * self.m;
        let mut rhs = DMatrix::from_element(rows, incidents.len(), Complex64::ZERO);
        for (col, inc) in incidents.iter().enumerate() {
            let column = self.rhs_column(inc)?;
            rhs.view_mut((0, col), (rows, 1)).copy_from(&column);
        }
        let values = self
            .lu
            .solve(&rhs)
            .ok_or_else(|| Error::Solve("boundary system solve failed".into()))?;
        let defect = &self.matrix * &values - &rhs;
        let mut worst = 0.0_f64;
        let mut scale = 0.0_f64;
        for v in rhs.iter() {
            scale = scale.max(v.norm());
        }
        for v in defect.iter() {
            worst = worst.max(v.norm());
        }
        let residual = if scale > 0.0 { worst / scale } else { worst };
        if residual > 1e-10 {
            return Err(Error::Solve(format!(
                "discrete residual {residual:.3e} exceeds 1e-10 of the data norm"
            )));
        }
        Ok(SceneDensities {
            eta: self.eta,
            m: self.m,
            curve_count: self.curves.len(),
            values,
            residual,
        })
    }

    fn check_density_shape(&self, densities: &SceneDensities) -> Result<()> {
        if densities.m != self.m || densities.curve_count != self.curves.len() {
            return Err(Error::Mismatch(format!(
                "density layout {}×{} does not match operator {}×{}",
                densities.curve_count,
                densities.m,
                self.curves.len(),
                self.m
            )));
        }
        Ok(())
    }

    /// Far-field values of the ansatz: rows follow `directions`, columns
    /// follow the density columns.
    pub fn far_field(
        &self,
        densities: &SceneDensities,
        directions: &[Vec2],
    ) -> Result<DMatrix<Complex64>> {
        self.check_density_shape(densities)?;
        let m = self.m;
        let w = 2.0 * PI / m as f64;
        let mut out =
            DMatrix::from_element(directions.len(), densities.values.ncols(), Complex64::ZERO);
        for (ci, c) in self.curves.iter().enumerate() {
            let sgn = layer_sign(c.bc);
            let mut kernel = DMatrix::from_element(directions.len(), m, Complex64::ZERO);
            for (q, xh) in directions.iter().enumerate() {
                for j in 0..m {
                    let amp = Complex64::new(
                        0.0,
                        -self.k * (xh[0] * c.normal[j][0] + xh[1] * c.normal[j][1])
                            + sgn * self.eta * c.speed[j],
                    );
                    let phase =
                        cis(-self.k * (xh[0] * c.points[j][0] + xh[1] * c.points[j][1]));
                    kernel[(q, j)] = amp * phase * w;
                }
            }
            out += kernel * densities.values.view((ci * m, 0), (m, densities.values.ncols()));
        }
        Ok(out)
    }

    /// Scattered-field values of the ansatz at exterior points, one row per
    /// point, one column per density column. Evaluation runs on the
    /// oversampled grid; points closer than the guard distance are refused.
    pub fn evaluate(
        &self,
        densities: &SceneDensities,
        pts: &[Vec2],
    ) -> Result<DMatrix<Complex64>> {
        self.check_density_shape(densities)?;
        for p in pts {
            self.check_exterior(*p, "evaluation point")?;
        }
        let m = self.m;
        let cols = densities.values.ncols();
        let mut out = DMatrix::from_element(pts.len(), cols, Complex64::ZERO);
        for (ci, f) in self.fine.iter().enumerate() {
            let coarse = densities.values.view((ci * m, 0), (m, cols));
            let refined = self.interp.map(|v| Complex64::new(v, 0.0)) * coarse;
            let kernel = eval_block(f, self.k, self.eta, pts)?;
            out += kernel * refined;
        }
        Ok(out)
    }
}
