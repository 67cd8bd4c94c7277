//! Gamma, digamma and the principal real branch of Lambert W.
//!
//! Gamma uses the Lanczos approximation with Godfrey's coefficient set
//! (g = 607/128, 15 terms) evaluated in logarithmic form for `Re z >= 1/2`,
//! and Euler's reflection formula `Gamma(z) Gamma(1 - z) = pi / sin(pi z)`
//! elsewhere. Digamma shifts the argument up to `Re z >= 10` with the
//! recurrence `psi(z + 1) = psi(z) + 1/z` and finishes with the asymptotic
//! series through the `B_14` Bernoulli term.
//!
//! Complex evaluations are performed in the closed upper half-plane and
//! conjugated for `Im z < 0`, so `f(conj z) == conj(f(z))` holds bit for bit.

use std::f64::consts::{E, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of either complex plane (domain or range of Gamma).
pub type ComplexValue = Complex64;

/// Distance to a non-positive integer below which Gamma and digamma report a pole.
pub const POLE_TOL: f64 = 1e-12;

const LANCZOS_G: f64 = 607.0 / 128.0;

const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126_4e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162_4e-6,
];

/// 0.5 * ln(2 pi)
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_2n / (2n)` for n = 1..=7.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// `B_2n` for n = 1..=7.
const BERNOULLI_EVEN: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const ASYMPTOTIC_THRESHOLD: f64 = 10.0;

/// Tolerance and iteration budget for the iterative kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_iter: 100,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1e-3) {
            return Err(Error::Config(format!(
                "rel_tol must lie in (0, 1e-3), got {}",
                self.rel_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// `sin(pi x)` with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let v = if r < 0.25 {
        (PI * r).sin()
    } else if r < 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * v
}

/// `cos(pi x)` with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    let r = (x - 2.0 * (0.5 * x).round()).abs();
    if r < 0.25 {
        (PI * r).cos()
    } else if r < 0.75 {
        (PI * (0.5 - r)).sin()
    } else {
        -(PI * (1.0 - r)).cos()
    }
}

fn sin_pi_complex(z: ComplexValue) -> ComplexValue {
    let (b_sinh, b_cosh) = ((PI * z.im).sinh(), (PI * z.im).cosh());
    ComplexValue::new(sin_pi(z.re) * b_cosh, cos_pi(z.re) * b_sinh)
}

/// `cot(pi z)`; for `|Im z| > 50` the value is `-i sign(Im z)` to working precision.
fn cot_pi_complex(z: ComplexValue) -> ComplexValue {
    if z.im.abs() > 50.0 {
        return ComplexValue::new(0.0, -z.im.signum());
    }
    let (sa, ca) = (sin_pi(z.re), cos_pi(z.re));
    let b = PI * z.im;
    let (sb, cb) = (b.sinh(), b.cosh());
    let den = sa * sa + sb * sb;
    ComplexValue::new(sa * ca / den, -sb * cb / den)
}

fn nearest_pole(z: ComplexValue) -> Option<f64> {
    let n = z.re.round();
    if n <= 0.0 && (z - n).norm() < POLE_TOL {
        Some(n)
    } else {
        None
    }
}

fn check_argument(z: ComplexValue) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if nearest_pole(z).is_some() {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    Ok(())
}

/// ln Gamma(z) for `Re z >= 1/2`, on the branch continuous from the positive real axis.
fn lanczos_ln_gamma(z: ComplexValue) -> ComplexValue {
    let zm1 = z - 1.0;
    let mut sum = ComplexValue::new(LANCZOS_COEF[0], 0.0);
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (zm1 + i as f64);
    }
    let t = zm1 + (LANCZOS_G + 0.5);
    (zm1 + 0.5) * t.ln() - t + sum.ln() + HALF_LN_2PI
}

fn lanczos_ln_gamma_real(x: f64) -> f64 {
    let xm1 = x - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (xm1 + i as f64);
    }
    let t = xm1 + (LANCZOS_G + 0.5);
    (xm1 + 0.5) * t.ln() - t + sum.ln() + HALF_LN_2PI
}

/// Complex Gamma function.
pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    check_argument(z)?;
    if z.im < 0.0 {
        return gamma(z.conj()).map(|g| g.conj());
    }
    if z.im == 0.0 {
        return gamma_real(z.re).map(|g| ComplexValue::new(g, 0.0));
    }
    let value = if z.re < 0.5 {
        let s = sin_pi_complex(z);
        (PI / s) * (-lanczos_ln_gamma(1.0 - z)).exp()
    } else {
        lanczos_ln_gamma(z).exp()
    };
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Overflow { re: z.re, im: z.im });
    }
    Ok(value)
}

/// Real Gamma function.
pub fn gamma_real(x: f64) -> Result<f64> {
    check_argument(ComplexValue::new(x, 0.0))?;
    let value = if x < 0.5 {
        let s = sin_pi(x);
        s.signum() * (PI.ln() - s.abs().ln() - lanczos_ln_gamma_real(1.0 - x)).exp()
    } else {
        lanczos_ln_gamma_real(x).exp()
    };
    if !value.is_finite() {
        return Err(Error::Overflow { re: x, im: 0.0 });
    }
    Ok(value)
}

/// `ln |Gamma(x)|` for real `x`; finite wherever `x` is not a pole.
pub fn ln_abs_gamma(x: f64) -> Result<f64> {
    check_argument(ComplexValue::new(x, 0.0))?;
    Ok(ln_abs_gamma_unchecked(x))
}

/// `ln |Gamma(x)|` without the pole guard; `+inf` exactly at a pole.
pub(crate) fn ln_abs_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        PI.ln() - sin_pi(x).abs().ln() - lanczos_ln_gamma_real(1.0 - x)
    } else {
        lanczos_ln_gamma_real(x)
    }
}

fn digamma_asymptotic(z: ComplexValue) -> ComplexValue {
    let w = (z * z).inv();
    let mut series = ComplexValue::new(0.0, 0.0);
    for c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        series = series * w + c;
    }
    series *= w;
    z.ln() - 0.5 / z - series
}

/// Complex digamma `psi = Gamma' / Gamma`.
pub fn digamma(z: ComplexValue) -> Result<ComplexValue> {
    check_argument(z)?;
    if z.im < 0.0 {
        return digamma(z.conj()).map(|p| p.conj());
    }
    if z.im == 0.0 {
        return digamma_real(z.re).map(|p| ComplexValue::new(p, 0.0));
    }
    if z.re < 0.5 {
        return Ok(digamma_shifted(1.0 - z) - PI * cot_pi_complex(z));
    }
    Ok(digamma_shifted(z))
}

fn digamma_shifted(mut z: ComplexValue) -> ComplexValue {
    let mut acc = ComplexValue::new(0.0, 0.0);
    while z.re < ASYMPTOTIC_THRESHOLD {
        acc -= z.inv();
        z += 1.0;
    }
    acc + digamma_asymptotic(z)
}

/// Real digamma.
pub fn digamma_real(x: f64) -> Result<f64> {
    check_argument(ComplexValue::new(x, 0.0))?;
    Ok(digamma_real_unchecked(x))
}

pub(crate) fn digamma_real_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        let cot = cos_pi(x) / sin_pi(x);
        return digamma_real_shifted(1.0 - x) - PI * cot;
    }
    digamma_real_shifted(x)
}

fn digamma_real_shifted(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < ASYMPTOTIC_THRESHOLD {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let w = 1.0 / (x * x);
    let mut series = 0.0;
    for c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        series = series * w + c;
    }
    acc + x.ln() - 0.5 / x - series * w
}

/// Real trigamma `psi'`, used as the Newton derivative when locating digamma zeros.
pub fn trigamma_real(x: f64) -> Result<f64> {
    check_argument(ComplexValue::new(x, 0.0))?;
    if x < 0.5 {
        let s = sin_pi(x);
        return Ok(PI * PI / (s * s) - trigamma_real_shifted(1.0 - x));
    }
    Ok(trigamma_real_shifted(x))
}

fn trigamma_real_shifted(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < ASYMPTOTIC_THRESHOLD {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let w = 1.0 / (x * x);
    let mut series = 0.0;
    for b in BERNOULLI_EVEN.iter().rev() {
        series = series * w + b;
    }
    acc + 1.0 / x + 0.5 * w + series * w / x
}

/// Principal branch `W_0` of the Lambert W function on `[-1/e, inf)`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    lambert_w0_with(x, &EvalConfig::default())
}

pub fn lambert_w0_with(x: f64, cfg: &EvalConfig) -> Result<f64> {
    cfg.validate()?;
    const INV_E: f64 = 1.0 / E;
    if x.is_nan() || x < -INV_E {
        return Err(Error::Domain(format!(
            "Lambert W0 requires x >= -1/e, got {x}"
        )));
    }
    if x == -INV_E {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }

    let mut w = if x < -0.32 {
        // branch-point series in p = sqrt(2 (e x + 1))
        let p = (2.0 * E.mul_add(x, 1.0)).max(0.0).sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0))
    } else {
        let l = x.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    };

    let mut converged = false;
    let mut prev_dw = f64::INFINITY;
    for _ in 0..cfg.max_iter {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            return Ok(w);
        }
        let w1 = w + 1.0;
        if w1 == 0.0 {
            return Ok(w);
        }
        let dw = f / (ew * w1 - (w + 2.0) * f / (2.0 * w1));
        if dw.abs() >= prev_dw && dw.abs() <= 1e-8 * w.abs().max(1.0) {
            // rounding floor near the branch point
            return Ok(w);
        }
        prev_dw = dw.abs();
        w -= dw;
        if converged {
            return Ok(w);
        }
        if dw.abs() <= cfg.rel_tol * w.abs().max(f64::MIN_POSITIVE) {
            // one more Halley step takes the iterate to full precision
            converged = true;
        }
    }
    if converged {
        Ok(w)
    } else {
        Err(Error::NonConvergence {
            iterations: cfg.max_iter,
            detail: format!("Halley iteration for W0({x})"),
        })
    }
}
