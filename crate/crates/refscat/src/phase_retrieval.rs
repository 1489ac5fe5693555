//! Recovery of complex far-field data from modulus-only measurements.
//!
//! Adding a point scatterer of known strength τ and location z₀ to the scene
//! shifts every far-field entry by the known complex number
//! τ e^{ik z₀·(θ̂_l − x̂_j)}. A modulus measurement of the shifted entry is
//! therefore the distance from the unknown value to the anchor
//! −τ e^{ik z₀·(θ̂_l − x̂_j)} in the complex plane. Three measurements whose
//! strengths are not collinear pin the value down as the common point of
//! three circles, recovered here entrywise by a numerically careful circle
//! intersection.

use crate::forward::{DirectionGrid, FarFieldMatrix, FarFieldModel, PhaselessMatrix};
use crate::geometry::Vec2;
use crate::{Error, Result};
use num_complex::Complex64;

fn cis(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

/// Intersect the circles |w − z₁| = r₁ and |w − z₂| = r₂ and return the
/// candidate that best matches the third circle |w − z₃| = r₃.
///
/// The perpendicular offset is computed from the factored form of Heron's
/// area formula, which stays accurate when the circles are nearly tangent;
/// slightly inconsistent radii (measurement noise) are tolerated by clamping
/// the intermediate quantities to their feasible ranges. The anchors must
/// not be collinear. Ties between the two candidates go to the one on the
/// counterclockwise side of the z₂→z₁ axis.
pub fn trilaterate(anchors: [Complex64; 3], radii: [f64; 3]) -> Complex64 {
    let [z1, z2, z3] = anchors;
    let [r1, r2, r3] = radii;
    // A zero radius names the answer outright.
    if r1 == 0.0 {
        return z1;
    }
    if r2 == 0.0 {
        return z2;
    }
    if r3 == 0.0 {
        return z3;
    }
    let d = (z1 - z2).norm();
    let u = (z1 - z2) / d;
    // Along-axis coordinate of the intersection, measured from z₂.
    let a = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d)).clamp(-r2, r2);
    // Perpendicular offset via the factored Heron form, clamped to zero when
    // the circles fail to meet.
    let h2 = (r1 + r2 - d).max(0.0)
        * (r2 - r1 + d).max(0.0)
        * (r1 - r2 + d).max(0.0)
        * (r1 + r2 + d)
        / (4.0 * d * d);
    let h = h2.max(0.0).sqrt();
    let ih = Complex64::new(0.0, h);
    let cand_a = z2 + (Complex64::new(a, 0.0) + ih) * u;
    let cand_b = z2 + (Complex64::new(a, 0.0) - ih) * u;
    let err_a = ((cand_a - z3).norm() - r3).abs();
    let err_b = ((cand_b - z3).norm() - r3).abs();
    if err_a <= err_b {
        cand_a
    } else {
        cand_b
    }
}

/// Three modulus tables taken with the same reference point at three
/// strengths, validated for joint retrieval.
pub struct RetrievalTriple<'a> {
    measurements: [&'a PhaselessMatrix; 3],
    taus: [Complex64; 3],
    z0: Vec2,
    k: f64,
    n: usize,
}

impl<'a> RetrievalTriple<'a> {
    /// Validate that the three tables share grid size, wavenumber, and
    /// reference location, and that their strengths span a genuine triangle
    /// in the complex plane (collinear strengths leave a reflection
    /// ambiguity that no third circle can break).
    pub fn new(measurements: [&'a PhaselessMatrix; 3]) -> Result<RetrievalTriple<'a>> {
        let first = measurements[0];
        let mut taus = [Complex64::ZERO; 3];
        let mut z0 = None;
        for (q, m) in measurements.iter().enumerate() {
            if m.n != first.n || m.k != first.k {
                return Err(Error::Mismatch(format!(
                    "measurement {q} is tabulated on N={}, k={} but the first uses N={}, k={}",
                    m.n, m.k, first.n, first.k
                )));
            }
            let tau = m.tau.ok_or_else(|| {
                Error::Mismatch(format!("measurement {q} carries no reference strength"))
            })?;
            let here = m.z0.ok_or_else(|| {
                Error::Mismatch(format!("measurement {q} carries no reference location"))
            })?;
            match z0 {
                None => z0 = Some(here),
                Some(z) if z == here => {}
                Some(z) => {
                    return Err(Error::Mismatch(format!(
                        "measurement {q} placed the reference at ({}, {}) instead of ({}, {})",
                        here[0], here[1], z[0], z[1]
                    )));
                }
            }
            taus[q] = tau;
        }
        let area = ((taus[1] - taus[0]) * (taus[2] - taus[0]).conj()).im.abs();
        let mut spread = 0.0_f64;
        for q in 0..3 {
            for l in (q + 1)..3 {
                spread = spread.max((taus[q] - taus[l]).norm_sqr());
            }
        }
        if area <= 1e-9 * spread || spread == 0.0 {
            return Err(Error::Domain(format!(
                "reference strengths {}, {}, {} are collinear; retrieval is ambiguous",
                taus[0], taus[1], taus[2]
            )));
        }
        Ok(RetrievalTriple {
            measurements,
            taus,
            z0: z0.expect("three validated measurements"),
            k: first.k,
            n: first.n,
        })
    }

    /// Entrywise circle intersection across the whole table: returns the
    /// complex far field of the scene with the reference removed.
    pub fn retrieve(&self) -> Result<FarFieldMatrix> {
        let grid = DirectionGrid::new(self.n)?;
        let mut out = FarFieldMatrix::zeros(grid, self.k, FarFieldModel::Retrieved);
        out.z0 = Some(self.z0);
        for j in 0..self.n {
            let xh = grid.direction(j);
            for l in 0..self.n {
                let th = grid.direction(l);
                let phase = self.k
                    * (self.z0[0] * (th[0] - xh[0]) + self.z0[1] * (th[1] - xh[1]));
                let carrier = cis(phase);
                let anchors = [
                    -self.taus[0] * carrier,
                    -self.taus[1] * carrier,
                    -self.taus[2] * carrier,
                ];
                let radii = [
                    self.measurements[0].get(j, l).max(0.0),
                    self.measurements[1].get(j, l).max(0.0),
                    self.measurements[2].get(j, l).max(0.0),
                ];
                out.set(j, l, trilaterate(anchors, radii));
            }
        }
        Ok(out)
    }
}

/// One-call form: validate the triple and retrieve the complex table.
pub fn retrieve_far_field(measurements: [&PhaselessMatrix; 3]) -> Result<FarFieldMatrix> {
    RetrievalTriple::new(measurements)?.retrieve()
}
