//! Separation-of-variables far field for a circular scatterer.
//!
//! Expands the incident plane wave in cylindrical harmonics about the disk
//! center and matches each mode at the boundary, giving the far-field
//! coefficient as a cosine series in the angle between observation and
//! incidence. This route never touches the boundary-integral machinery, so
//! agreement between the two is a real cross-check rather than a tautology.

use crate::geometry::Vec2;
use crate::specfun::{bessel_j, bessel_y};
use crate::{Error, Result};
use num_complex::Complex64;

/// Highest harmonic kept beyond the geometrical-optics band ka.
const EXTRA_MODES: u32 = 40;

fn cis(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

/// Far field of a plane wave from direction `theta_hat` scattered by a disk
/// of radius `radius` centered at `center`, observed in direction `x_hat`.
/// `hard` selects the vanishing-normal-derivative condition; otherwise the
/// field itself vanishes on the boundary.
pub fn mie_far_field_circle(
    k: f64,
    radius: f64,
    center: Vec2,
    hard: bool,
    theta_hat: Vec2,
    x_hat: Vec2,
) -> Result<Complex64> {
    if !(k > 0.0) || !(radius > 0.0) {
        return Err(Error::Domain(format!(
            "need positive wavenumber and radius, got k={k}, radius={radius}"
        )));
    }
    let ka = k * radius;
    let nmax = ka.ceil() as u32 + EXTRA_MODES;
    if nmax + 1 > 200 {
        return Err(Error::Domain(format!(
            "ka = {ka:.3} needs {} harmonics, beyond the supported order range",
            nmax + 1
        )));
    }

    // Mode reflection coefficients c_n = −J_n(ka)/H_n(ka) for the soft disk;
    // the hard disk uses derivatives, J′_n = (J_{n−1} − J_{n+1})/2 with
    // J_{−1} = −J_1, and likewise for H via Y.
    let mut j = Vec::with_capacity(nmax as usize + 2);
    let mut y = Vec::with_capacity(nmax as usize + 2);
    for n in 0..=(nmax + 1) {
        j.push(bessel_j(n, ka)?);
        y.push(bessel_y(n, ka)?);
    }
    let h = |n: usize| Complex64::new(j[n], y[n]);
    let coeff = |n: usize| -> Complex64 {
        if hard {
            let jm = if n == 0 { -j[1] } else { j[n - 1] };
            let ym = if n == 0 { -y[1] } else { y[n - 1] };
            let jp = 0.5 * (jm - j[n + 1]);
            let hp = (Complex64::new(jm, ym) - h(n + 1)) * 0.5;
            -jp / hp
        } else {
            -j[n] / h(n)
        }
    };

    // u^∞(x̂; θ̂) = −4i [c₀ + 2 Σ_{n≥1} c_n cos(nΔ)], Δ the angle between
    // observation and incidence, then a phase shift for the off-center disk.
    let delta = x_hat[1].atan2(x_hat[0]) - theta_hat[1].atan2(theta_hat[0]);
    let mut sum = coeff(0);
    for n in 1..=(nmax as usize) {
        sum += coeff(n) * (2.0 * (n as f64 * delta).cos());
    }
    let base = Complex64::new(0.0, -4.0) * sum;
    let shift = k
        * (center[0] * (theta_hat[0] - x_hat[0]) + center[1] * (theta_hat[1] - x_hat[1]));
    Ok(base * cis(shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn dir(angle: f64) -> Vec2 {
        [angle.cos(), angle.sin()]
    }

    #[test]
    fn tiny_soft_disk_scatters_isotropically() {
        // A sound-soft disk far below resonance is dominated by its
        // monopole: the pattern is flat in angle to within a percent.
        let k = 1.0;
        let a = 0.01;
        let f0 = mie_far_field_circle(k, a, [0.0, 0.0], false, dir(0.0), dir(0.0)).unwrap();
        assert!(f0.norm() > 0.0);
        for q in 1..16 {
            let f = mie_far_field_circle(k, a, [0.0, 0.0], false, dir(0.0), dir(2.0 * PI * q as f64 / 16.0))
                .unwrap();
            assert!(
                (f - f0).norm() / f0.norm() < 1e-2,
                "anisotropy {:e} at slot {q}",
                (f - f0).norm() / f0.norm()
            );
        }
    }

    #[test]
    fn tiny_hard_disk_is_much_weaker_than_soft() {
        // Below resonance the hard disk radiates like a dipole, smaller than
        // the soft monopole by roughly (ka)²·ln(1/ka).
        let k = 1.0;
        let a = 0.01;
        let soft = mie_far_field_circle(k, a, [0.0, 0.0], false, dir(0.3), dir(1.1)).unwrap();
        let hard = mie_far_field_circle(k, a, [0.0, 0.0], true, dir(0.3), dir(1.1)).unwrap();
        assert!(
            hard.norm() / soft.norm() < 1e-2,
            "hard/soft ratio {:e}",
            hard.norm() / soft.norm()
        );
    }

    #[test]
    fn translation_multiplies_by_plane_wave_phase() {
        let k = 3.0;
        let a = 0.7;
        let th = dir(0.4);
        let xh = dir(2.0);
        let centered = mie_far_field_circle(k, a, [0.0, 0.0], false, th, xh).unwrap();
        let h = [1.3, -0.8];
        let moved = mie_far_field_circle(k, a, h, false, th, xh).unwrap();
        let phase = k * (h[0] * (th[0] - xh[0]) + h[1] * (th[1] - xh[1]));
        let predicted = centered * Complex64::new(phase.cos(), phase.sin());
        assert!((moved - predicted).norm() < 1e-12 * centered.norm());
    }

    #[test]
    fn backscatter_symmetry_in_observation_angle() {
        // The pattern depends on observation and incidence only through the
        // angle between them, and is even in that angle.
        let k = 8.0;
        let a = 2.0;
        for hard in [false, true] {
            let plus = mie_far_field_circle(k, a, [0.0, 0.0], hard, dir(0.0), dir(0.9)).unwrap();
            let minus = mie_far_field_circle(k, a, [0.0, 0.0], hard, dir(0.0), dir(-0.9)).unwrap();
            assert!((plus - minus).norm() < 1e-12 * plus.norm().max(1.0));
            let rotated =
                mie_far_field_circle(k, a, [0.0, 0.0], hard, dir(1.7), dir(1.7 + 0.9)).unwrap();
            assert!((plus - rotated).norm() < 1e-12 * plus.norm().max(1.0));
        }
    }

    #[test]
    fn rejects_disks_beyond_supported_band() {
        assert!(mie_far_field_circle(8.0, 25.0, [0.0, 0.0], false, dir(0.0), dir(1.0)).is_err());
        assert!(mie_far_field_circle(-1.0, 1.0, [0.0, 0.0], false, dir(0.0), dir(1.0)).is_err());
    }
}
