//! Bessel functions J, Y and the Hankel function H⁽¹⁾ of integer order for
//! real arguments.
//!
//! Orders 0 and 1 use the defining power series below the crossover argument
//! and Hankel's phase-amplitude asymptotic expansion above it. Higher orders
//! use Miller's backward recurrence with series normalization for J and
//! upward recurrence for Y (stable because |Y| grows with the order). The
//! power series are summed in double-double arithmetic: near the crossover
//! the terms peak four orders of magnitude above the result, and plain f64
//! accumulation would surrender half the accuracy budget to cancellation.
//!
//! The target accuracy is 1e-10 relative away from the functions' zeros,
//! leaving three orders of magnitude of headroom over every consumer in
//! this crate.

use crate::{Error, Result};
use num_complex::Complex64;

/// Euler–Mascheroni constant, used by the Y series.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest supported order.
pub const MAX_ORDER: u32 = 200;

/// Arguments below this use power series for orders 0 and 1, arguments above
/// use the asymptotic expansion. At the seam both branches agree to better
/// than 1e-11 of the oscillation envelope.
const SERIES_LIMIT: f64 = 14.0;

// --- double-double primitives -------------------------------------------
//
// An unevaluated sum hi + lo with |lo| ≤ ulp(hi)/2, giving ~31 significant
// digits. Only the handful of operations the series loops need.

#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    /// Exact scaling by a power of two.
    fn scale_pow2(self, s: f64) -> Dd {
        Dd { hi: self.hi * s, lo: self.lo * s }
    }
}

/// Error-free sum: s + e = a + b exactly.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free sum assuming |a| ≥ |b|.
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product via fused multiply-add: p + e = a·b exactly.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn dd_add(a: Dd, b: Dd) -> Dd {
    let (s, e) = two_sum(a.hi, b.hi);
    let (hi, lo) = quick_two_sum(s, e + a.lo + b.lo);
    Dd { hi, lo }
}

fn dd_mul(a: Dd, b: Dd) -> Dd {
    let (p, e) = two_prod(a.hi, b.hi);
    let (hi, lo) = quick_two_sum(p, e + a.hi * b.lo + a.lo * b.hi);
    Dd { hi, lo }
}

fn dd_div_f64(a: Dd, b: f64) -> Dd {
    let q1 = a.hi / b;
    let (p, e) = two_prod(q1, b);
    let (s, r) = two_sum(a.hi, -p);
    let q2 = (s + (r + a.lo - e)) / b;
    let (hi, lo) = quick_two_sum(q1, q2);
    Dd { hi, lo }
}

/// x²/4 as a double-double, exact.
fn quarter_square(x: f64) -> Dd {
    let (p, e) = two_prod(x, x);
    Dd { hi: p, lo: e }.scale_pow2(0.25)
}

// --- series branch (orders 0 and 1, x below the seam) ---------------------

/// J₀ by its power series Σ (−q)^m/(m!)², q = x²/4.
fn j0_series(x: f64) -> f64 {
    let neg_q = quarter_square(x).neg();
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for m in 1..200u32 {
        term = dd_div_f64(dd_mul(term, neg_q), (m * m) as f64);
        sum = dd_add(sum, term);
        if term.hi.abs() < 1e-20 * sum.hi.abs().max(1e-30) {
            break;
        }
    }
    sum.value()
}

/// J₁ by its power series (x/2) Σ (−q)^m/(m!(m+1)!).
fn j1_series(x: f64) -> f64 {
    let neg_q = quarter_square(x).neg();
    let mut term = Dd::from(0.5 * x);
    let mut sum = term;
    for m in 1..200u32 {
        term = dd_div_f64(dd_mul(term, neg_q), (m * (m + 1)) as f64);
        sum = dd_add(sum, term);
        if term.hi.abs() < 1e-20 * sum.hi.abs().max(1e-30) {
            break;
        }
    }
    sum.value()
}

/// Y₀ by the logarithmic series
/// (2/π)(ln(x/2)+γ)·J₀(x) + (2/π) Σ (−1)^{m+1} H_m q^m/(m!)².
fn y0_series(x: f64) -> f64 {
    let q = quarter_square(x);
    let mut factor = Dd::ONE; // q^m / (m!)²
    let mut harmonic = Dd::ZERO; // H_m
    let mut sum = Dd::ZERO;
    for m in 1..200u32 {
        factor = dd_div_f64(dd_mul(factor, q), (m * m) as f64);
        harmonic = dd_add(harmonic, dd_div_f64(Dd::ONE, m as f64));
        let term = dd_mul(factor, harmonic);
        sum = dd_add(sum, if m % 2 == 1 { term } else { term.neg() });
        if term.hi.abs() < 1e-20 * sum.hi.abs().max(1e-30) {
            break;
        }
    }
    let c = 2.0 / std::f64::consts::PI;
    c * ((0.5 * x).ln() + EULER_GAMMA) * j0_series(x) + c * sum.value()
}

/// Y₁ by the logarithmic series
/// (2/π)(ln(x/2)+γ)·J₁(x) − 2/(πx) − (x/2π) Σ (−1)^m (H_m+H_{m+1}) q^m/(m!(m+1)!).
fn y1_series(x: f64) -> f64 {
    let q = quarter_square(x);
    let mut factor = Dd::ONE; // q^m / (m!(m+1)!)
    let mut harmonic = Dd::ZERO; // H_m
    let mut sum = Dd::ONE; // m = 0 term: H_0 + H_1 = 1
    for m in 1..200u32 {
        factor = dd_div_f64(dd_mul(factor, q), (m * (m + 1)) as f64);
        harmonic = dd_add(harmonic, dd_div_f64(Dd::ONE, m as f64));
        // H_m + H_{m+1} = 2·H_m + 1/(m+1)
        let coeff = dd_add(harmonic.scale_pow2(2.0), dd_div_f64(Dd::ONE, (m + 1) as f64));
        let term = dd_mul(factor, coeff);
        sum = dd_add(sum, if m % 2 == 0 { term } else { term.neg() });
        if term.hi.abs() < 1e-20 * sum.hi.abs().max(1e-30) {
            break;
        }
    }
    let pi = std::f64::consts::PI;
    (2.0 / pi) * ((0.5 * x).ln() + EULER_GAMMA) * j1_series(x) - 2.0 / (pi * x)
        - (x / (2.0 * pi)) * sum.value()
}

// --- asymptotic branch (orders 0 and 1, x above the seam) ------------------

/// Hankel phase-amplitude coefficients P_ν(x), Q_ν(x) for ν ∈ {0, 1}.
///
/// c_j = c_{j-1}·(4ν² − (2j−1)²)/(8xj); P sums the even j with alternating
/// sign, Q the odd. The divergent series is truncated at its smallest term,
/// whose size (~e^{−2x} at the seam) bounds the attainable accuracy.
fn hankel_pq(nu: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (nu * nu) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut c = 1.0;
    let mut last = f64::INFINITY;
    for j in 1u32..40 {
        let odd = (2 * j - 1) as f64;
        c *= (mu - odd * odd) / (8.0 * x * j as f64);
        if c.abs() >= last {
            break; // divergent tail reached
        }
        last = c.abs();
        match j % 4 {
            1 => q += c,
            2 => p -= c,
            3 => q -= c,
            _ => p += c,
        }
        if c.abs() < 1e-18 {
            break;
        }
    }
    (p, q)
}

/// J_ν and Y_ν for ν ∈ {0, 1} from the asymptotic expansion, valid above the seam.
fn jy_asymptotic(nu: u32, x: f64) -> (f64, f64) {
    let (p, q) = hankel_pq(nu, x);
    let chi = x - (2.0 * nu as f64 + 1.0) * std::f64::consts::FRAC_PI_4;
    let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
    let (s, c) = chi.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

fn j0(x: f64) -> f64 {
    if x < SERIES_LIMIT {
        j0_series(x)
    } else {
        jy_asymptotic(0, x).0
    }
}

fn j1(x: f64) -> f64 {
    if x < SERIES_LIMIT {
        j1_series(x)
    } else {
        jy_asymptotic(1, x).0
    }
}

fn y0(x: f64) -> f64 {
    if x < SERIES_LIMIT {
        y0_series(x)
    } else {
        jy_asymptotic(0, x).1
    }
}

fn y1(x: f64) -> f64 {
    if x < SERIES_LIMIT {
        y1_series(x)
    } else {
        jy_asymptotic(1, x).1
    }
}

// --- higher orders ---------------------------------------------------------

/// J_n for n ≥ 2 by Miller's backward recurrence, normalized with the even-
/// order series identity J₀ + 2·Σ J_{2m} = 1.
///
/// The starting order sits safely above both n and x: below order x the
/// recurrence is neutral (oscillatory regime), and the normalization sum
/// only converges once the decaying regime m > x is included.
fn jn_miller(n: u32, x: f64) -> f64 {
    let top = (n as f64).max(x);
    let start = (n.max(x.ceil() as u32)) + 18 + (2.0 * top.sqrt()).ceil() as u32;
    let mut fnext = 0.0_f64;
    let mut f = 1e-300_f64;
    let mut norm = 0.0_f64;
    let mut target = 0.0_f64;
    for m in (0..=start).rev() {
        let fprev = (2.0 * (m + 1) as f64 / x) * f - fnext;
        fnext = f;
        f = fprev;
        // f now holds the unnormalized J_m
        if m == n {
            target = f;
        }
        if m > 0 && m % 2 == 0 {
            norm += 2.0 * f;
        }
        if f.abs() > 1e280 {
            f *= 1e-280;
            fnext *= 1e-280;
            norm *= 1e-280;
            target *= 1e-280;
        }
    }
    norm += f;
    target / norm
}

/// Bessel function of the first kind J_n(x) for integer order n ≥ 0, x ≥ 0.
///
/// Accuracy: about 1e-11 relative to the oscillation envelope √(2/πx), so
/// relative accuracy degrades only in the immediate vicinity of zeros.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::Domain(format!("bessel_j order {order} exceeds {MAX_ORDER}")));
    }
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j argument {x} outside [0, ∞)")));
    }
    Ok(match order {
        0 => j0(x),
        1 => j1(x),
        n => {
            if x == 0.0 {
                0.0
            } else {
                jn_miller(n, x)
            }
        }
    })
}

/// Bessel function of the second kind Y_n(x) for integer order n ≥ 0, x > 0.
///
/// Higher orders use upward recurrence, which is unconditionally stable for Y
/// because the magnitude grows with the order.
pub fn bessel_y(order: u32, x: f64) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::Domain(format!("bessel_y order {order} exceeds {MAX_ORDER}")));
    }
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_y argument {x} outside (0, ∞)")));
    }
    Ok(match order {
        0 => y0(x),
        1 => y1(x),
        n => {
            let mut prev = y0(x);
            let mut cur = y1(x);
            for m in 1..n {
                let next = (2.0 * m as f64 / x) * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    })
}

/// Hankel function of the first kind H⁽¹⁾_n(x) = J_n(x) + i·Y_n(x), x > 0.
pub fn hankel1(order: u32, x: f64) -> Result<Complex64> {
    Ok(Complex64::new(bessel_j(order, x)?, bessel_y(order, x)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference values computed with 40-digit arithmetic, spanning every
    /// evaluation branch: series, asymptotic (including both sides of the
    /// seam), and Miller's recurrence in its oscillatory and decaying
    /// regimes. All abscissae sit away from zeros of the target function.
    const J_TABLE: &[(u32, f64, f64)] = &[
        (0, 0.5, 0.938_469_807_240_812_9),
        (0, 1.0, 0.765_197_686_557_966_55),
        (1, 1.0, 0.440_050_585_744_933_5),
        (0, 9.7, -0.221_795_482_031_722_86),
        (1, 9.7, 0.116_638_647_900_213_16),
        (0, 13.9, 0.183_579_855_457_869_63),
        (0, 14.1, 0.156_952_877_032_601_23),
        (1, 13.9, 0.116_524_890_369_056_39),
        (1, 14.1, 0.148_784_351_297_393_86),
        (2, 3.0, 0.486_091_260_585_891_08),
        (5, 1.0, 2.497_577_302_112_344_3e-4),
        (5, 20.0, 0.151_169_767_982_394_97),
        (12, 7.3, 4.019_064_483_940_809_4e-3),
        (50, 30.0, 2.058_165_663_156_417_8e-8),
        (50, 70.0, -0.113_948_667_387_871_4),
        (120, 90.0, 4.672_226_336_571_848e-9),
        (200, 50.0, 2.138_369_004_239_117_4e-97),
        (0, 80000.0, -3.614_193_236_322_248_4e-4),
        (1, 80000.0, 2.797_697_372_478_224_5e-3),
        (0, 1000.0, 0.024_786_686_152_420_175),
        (3, 2.6, 0.235_293_813_048_963_83),
        (7, 0.03, 3.389_971_619_844_154_4e-17),
    ];

    const Y_TABLE: &[(u32, f64, f64)] = &[
        (0, 0.5, -0.444_518_733_506_706_56),
        (0, 1.0, 0.088_256_964_215_676_96),
        (1, 1.0, -0.781_212_821_300_288_7),
        (0, 9.7, 0.127_874_792_024_186_28),
        (1, 9.7, 0.228_660_029_776_062_33),
        (0, 13.9, 0.109_859_189_459_526_56),
        (0, 14.1, 0.143_136_228_622_544_57),
        (1, 13.9, -0.179_750_951_069_548_3),
        (1, 14.1, -0.151_981_333_467_817_73),
        (2, 3.0, -0.160_400_393_484_923_73),
        (5, 20.0, -0.100_035_767_889_532_43),
        (12, 7.3, -8.371_676_673_773_814),
        (50, 30.0, -386_759.326_027_347_34),
        (50, 70.0, -1.481_515_519_190_867_4e-3),
        (120, 90.0, -858_563.140_891_756_6),
        (200, 50.0, -7.686_918_225_278_971e93),
        (0, 80000.0, 2.797_699_631_294_354_5e-3),
        (1, 80000.0, 3.614_368_092_619_787_2e-4),
        (0, 1000.0, 4.715_917_977_622_813_4e-3),
        (3, 2.6, -0.705_956_708_152_386_7),
        (7, 0.03, -1.341_405_542_497_350_2e15),
        (41, 0.02, -2.597_145_502_318_382_2e129),
        (0, 1e-8, -11.800_773_877_179_531),
        (0, 0.012, -2.889_350_244_397_729_9),
    ];

    fn envelope(x: f64) -> f64 {
        (2.0 / (std::f64::consts::PI * x.max(1e-12))).sqrt()
    }

    #[test]
    fn j_reference_table() {
        for &(n, x, want) in J_TABLE {
            let got = bessel_j(n, x).unwrap();
            assert!(
                (got - want).abs() <= 1e-10 * want.abs(),
                "J_{n}({x}): got {got:e}, want {want:e}"
            );
        }
    }

    #[test]
    fn y_reference_table() {
        for &(n, x, want) in Y_TABLE {
            let got = bessel_y(n, x).unwrap();
            assert!(
                (got - want).abs() <= 1e-10 * want.abs(),
                "Y_{n}({x}): got {got:e}, want {want:e}"
            );
        }
    }

    #[test]
    fn exact_values_at_zero_argument() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(7, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn wronskian_identity_sweep() {
        // J_{n+1}Y_n − J_nY_{n+1} = 2/(πx), checked over a log grid of
        // arguments and a ladder of orders.
        let orders = [0u32, 1, 3, 7, 14, 25, 40, 60];
        for i in 0..=60 {
            let x = 0.1 * (1000.0_f64 / 0.1).powf(i as f64 / 60.0);
            for &n in &orders {
                let jn = bessel_j(n, x).unwrap();
                let jn1 = bessel_j(n + 1, x).unwrap();
                let yn = bessel_y(n, x).unwrap();
                let yn1 = bessel_y(n + 1, x).unwrap();
                let want = 2.0 / (std::f64::consts::PI * x);
                let got = jn1 * yn - jn * yn1;
                assert!(
                    (got - want).abs() <= 1e-10 * want,
                    "wronskian n={n} x={x:.4e}: got {got:e} want {want:e}"
                );
            }
        }
    }

    #[test]
    fn upward_recurrence_consistency() {
        // C_{n+1} = (2n/x)C_n − C_{n−1} for values produced by the public
        // entry points; J comes from backward-stable Miller recurrences,
        // so the identity is a genuine cross-check, not a tautology.
        for i in 0..=30 {
            let x = 1.0 + 99.0 * i as f64 / 30.0;
            for n in 1u32..=50 {
                let jn = bessel_j(n, x).unwrap();
                let scale = jn.abs().max(bessel_j(n + 1, x).unwrap().abs());
                let lhs = bessel_j(n + 1, x).unwrap();
                let rhs = (2.0 * n as f64 / x) * jn - bessel_j(n - 1, x).unwrap();
                assert!(
                    (lhs - rhs).abs() <= 1e-8 * scale.max(envelope(x) * 1e-3),
                    "J recurrence n={n} x={x}: {lhs:e} vs {rhs:e}"
                );
                let ylhs = bessel_y(n + 1, x).unwrap();
                let yrhs = (2.0 * n as f64 / x) * bessel_y(n, x).unwrap() - bessel_y(n - 1, x).unwrap();
                assert!(
                    (ylhs - yrhs).abs() <= 1e-8 * ylhs.abs(),
                    "Y recurrence n={n} x={x}: {ylhs:e} vs {yrhs:e}"
                );
            }
        }
    }

    #[test]
    fn small_argument_power_law() {
        // J_n(x) ≈ (x/2)^n/n! for x → 0.
        let x: f64 = 1e-4;
        let mut factorial = 1.0;
        for n in 0u32..=5 {
            if n > 0 {
                factorial *= n as f64;
            }
            let want = (0.5 * x).powi(n as i32) / factorial;
            let got = bessel_j(n, x).unwrap();
            assert!(
                (got - want).abs() <= 1e-6 * want,
                "small-x law n={n}: got {got:e} want {want:e}"
            );
        }
    }

    #[test]
    fn hankel_composition_and_envelope() {
        let h = hankel1(0, 1.0).unwrap();
        assert_eq!(h.re, bessel_j(0, 1.0).unwrap());
        assert_eq!(h.im, bessel_y(0, 1.0).unwrap());

        let h2 = hankel1(2, 3.0).unwrap();
        assert!((h2.re - 0.486_091_260_585_891_08).abs() < 1e-12);

        // |H₀(x)| approaches the envelope √(2/(πx)) for large x.
        let h1000 = hankel1(0, 1000.0).unwrap();
        let rel = (h1000.norm() - envelope(1000.0)).abs() / envelope(1000.0);
        assert!(rel <= 1e-4, "envelope deviation {rel:e}");
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_j(0, -0.5).is_err());
        assert!(bessel_j(201, 1.0).is_err());
        assert!(bessel_y(0, 0.0).is_err());
        assert!(bessel_y(0, -1.0).is_err());
        assert!(bessel_y(201, 1.0).is_err());
        assert!(hankel1(0, 0.0).is_err());
        assert!(bessel_j(0, f64::NAN).is_err());
    }
}
