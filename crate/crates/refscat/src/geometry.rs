//! Boundary curves for scatterers: smooth closed 2π-periodic parametrizations
//! with analytic first and second derivatives, outward normals, quadrature
//! node layout, and point-in-region tests.
//!
//! All curves are traversed counterclockwise, so the outward normal at a
//! parameter t is (x₂′(t), −x₁′(t)) normalized.

use crate::{Error, Result};

/// A point or vector in the plane.
pub type Vec2 = [f64; 2];

/// Boundary condition imposed on a scatterer surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    /// Sound-soft: the total field vanishes on the boundary.
    Dirichlet,
    /// Sound-hard: the normal derivative of the total field vanishes.
    Neumann,
}

/// A smooth closed curve in the plane, parametrized over [0, 2π).
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryCurve {
    /// Kite-shaped curve: (cos t + 0.65 cos 2t − 0.65, 1.5 sin t) + center.
    Kite { center: Vec2 },
    /// Peanut: polar radius 2√(3cos²t + 1) about the center.
    Peanut { center: Vec2 },
    /// Pear: polar radius 2 + 0.3 cos 3t about the center.
    Pear { center: Vec2 },
    /// Circle of the given radius about the center.
    Circle { center: Vec2, radius: f64 },
}

impl BoundaryCurve {
    /// The curve name as used in scene configuration files.
    pub fn kind_name(&self) -> &'static str {
        match self {
            BoundaryCurve::Kite { .. } => "kite",
            BoundaryCurve::Peanut { .. } => "peanut",
            BoundaryCurve::Pear { .. } => "pear",
            BoundaryCurve::Circle { .. } => "circle",
        }
    }

    /// Position x(t).
    pub fn point(&self, t: f64) -> Vec2 {
        match *self {
            BoundaryCurve::Kite { center: [a, b] } => {
                [a + t.cos() + 0.65 * (2.0 * t).cos() - 0.65, b + 1.5 * t.sin()]
            }
            BoundaryCurve::Peanut { center } => polar_point(center, t, &peanut_radial(t)),
            BoundaryCurve::Pear { center } => polar_point(center, t, &pear_radial(t)),
            BoundaryCurve::Circle { center: [a, b], radius } => {
                [a + radius * t.cos(), b + radius * t.sin()]
            }
        }
    }

    /// First derivative x′(t).
    pub fn derivative(&self, t: f64) -> Vec2 {
        match *self {
            BoundaryCurve::Kite { .. } => {
                [-t.sin() - 1.3 * (2.0 * t).sin(), 1.5 * t.cos()]
            }
            BoundaryCurve::Peanut { .. } => polar_derivative(t, &peanut_radial(t)),
            BoundaryCurve::Pear { .. } => polar_derivative(t, &pear_radial(t)),
            BoundaryCurve::Circle { radius, .. } => [-radius * t.sin(), radius * t.cos()],
        }
    }

    /// Second derivative x″(t).
    pub fn second_derivative(&self, t: f64) -> Vec2 {
        match *self {
            BoundaryCurve::Kite { .. } => {
                [-t.cos() - 2.6 * (2.0 * t).cos(), -1.5 * t.sin()]
            }
            BoundaryCurve::Peanut { .. } => polar_second_derivative(t, &peanut_radial(t)),
            BoundaryCurve::Pear { .. } => polar_second_derivative(t, &pear_radial(t)),
            BoundaryCurve::Circle { radius, .. } => [-radius * t.cos(), -radius * t.sin()],
        }
    }

    /// Unit outward normal ν(t) = (x₂′, −x₁′)/|x′| for counterclockwise curves.
    pub fn outward_normal(&self, t: f64) -> Vec2 {
        let [dx, dy] = self.derivative(t);
        let speed = (dx * dx + dy * dy).sqrt();
        [dy / speed, -dx / speed]
    }

    /// True when the point lies strictly inside the region bounded by the
    /// curve, decided by the winding number of a fine polygonal approximation
    /// (2048 segments). Points within polygon tolerance of the boundary may
    /// land on either side.
    pub fn contains(&self, p: Vec2) -> bool {
        const SEGMENTS: usize = 2048;
        let mut winding: i32 = 0;
        let mut prev = self.point(0.0);
        for i in 1..=SEGMENTS {
            let t = 2.0 * std::f64::consts::PI * i as f64 / SEGMENTS as f64;
            let cur = self.point(t);
            // Standard crossing rule for the horizontal ray from p to +∞.
            if (prev[1] <= p[1]) != (cur[1] <= p[1]) {
                let cross = (cur[0] - prev[0]) * (p[1] - prev[1])
                    - (cur[1] - prev[1]) * (p[0] - prev[0]);
                if (cross > 0.0) == (cur[1] > prev[1]) {
                    winding += if cur[1] > prev[1] { 1 } else { -1 };
                }
            }
            prev = cur;
        }
        winding != 0
    }

    /// A radius r such that the curve lies inside the disk of radius r about
    /// its center; used for coarse separation checks and evaluation guards.
    pub fn bounding_radius(&self) -> f64 {
        match *self {
            BoundaryCurve::Kite { .. } => 2.0,
            BoundaryCurve::Peanut { .. } => 4.0,
            BoundaryCurve::Pear { .. } => 2.3,
            BoundaryCurve::Circle { radius, .. } => radius,
        }
    }

    /// The center the curve was built around.
    pub fn center(&self) -> Vec2 {
        match *self {
            BoundaryCurve::Kite { center } => center,
            BoundaryCurve::Peanut { center } => center,
            BoundaryCurve::Pear { center } => center,
            BoundaryCurve::Circle { center, .. } => center,
        }
    }
}

/// Radial function value and first two derivatives, for polar-form curves.
struct Radial {
    g: f64,
    dg: f64,
    d2g: f64,
}

fn peanut_radial(t: f64) -> Radial {
    // g(t) = 2√(3cos²t + 1); write u = 3cos²t + 1, so g = 2√u and
    // u′ = −3 sin 2t, u″ = −6 cos 2t.
    let (s, c) = t.sin_cos();
    let u = 3.0 * c * c + 1.0;
    let du = -6.0 * c * s;
    let d2u = -6.0 * (2.0 * t).cos();
    let sq = u.sqrt();
    let g = 2.0 * sq;
    let dg = du / sq;
    let d2g = d2u / sq - du * du / (2.0 * u * sq);
    Radial { g, dg, d2g }
}

fn pear_radial(t: f64) -> Radial {
    let g = 2.0 + 0.3 * (3.0 * t).cos();
    let dg = -0.9 * (3.0 * t).sin();
    let d2g = -2.7 * (3.0 * t).cos();
    Radial { g, dg, d2g }
}

fn polar_point(center: Vec2, t: f64, r: &Radial) -> Vec2 {
    let (s, c) = t.sin_cos();
    [center[0] + r.g * c, center[1] + r.g * s]
}

fn polar_derivative(t: f64, r: &Radial) -> Vec2 {
    let (s, c) = t.sin_cos();
    [r.dg * c - r.g * s, r.dg * s + r.g * c]
}

fn polar_second_derivative(t: f64, r: &Radial) -> Vec2 {
    let (s, c) = t.sin_cos();
    [
        r.d2g * c - 2.0 * r.dg * s - r.g * c,
        r.d2g * s + 2.0 * r.dg * c - r.g * s,
    ]
}

/// A scatterer: a boundary curve together with its boundary condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Scatterer {
    pub curve: BoundaryCurve,
    pub bc: BoundaryCondition,
}

/// Equispaced quadrature parameters t_i = 2πi/M for i = 0..M.
///
/// M must be even (the logarithmic quadrature pairs nodes) and at least 16.
pub fn quadrature_nodes(m: usize) -> Result<Vec<f64>> {
    if m < 16 {
        return Err(Error::Domain(format!("quadrature node count {m} below minimum 16")));
    }
    if m % 2 != 0 {
        return Err(Error::Domain(format!("quadrature node count {m} must be even")));
    }
    let step = 2.0 * std::f64::consts::PI / m as f64;
    Ok((0..m).map(|i| i as f64 * step).collect())
}
