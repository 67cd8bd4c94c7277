//! Real branches of the inverse Gamma function.
//!
//! [`real_gamma_domain`] selects the x-interval on which Gamma is monotone
//! and attains `g` for branch `k`; [`real_inv_gamma`] solves `Gamma(x) = g`
//! on that interval. The solver works on `ln|Gamma(x)| - ln|g|`, whose
//! derivative is digamma and which stays well scaled next to a pole.

use std::f64::consts::{E, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::critical::{critical_point, BranchIndex};
use crate::error::{Error, Result};
use crate::specfun::{digamma_real_unchecked, lambert_w0, ln_abs_gamma_unchecked, POLE_TOL};

/// Interval of the real line; `hi` may be `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl RealInterval {
    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open {
            x > self.lo
        } else {
            x >= self.lo
        };
        let below = if self.hi_open {
            x < self.hi
        } else {
            x <= self.hi
        };
        above && below
    }

    pub fn is_bounded(&self) -> bool {
        self.hi.is_finite()
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_open { '(' } else { '[' };
        let close = if self.hi_open { ')' } else { ']' };
        if self.hi.is_infinite() {
            write!(f, "{open}{:.15}, inf{close}", self.lo)
        } else {
            write!(f, "{open}{:.15}, {:.15}{close}", self.lo, self.hi)
        }
    }
}

/// Tolerances for the real solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub x_tol: f64,
    pub residual_rel_tol: f64,
    pub max_iter: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            x_tol: 1e-12,
            residual_rel_tol: 1e-11,
            max_iter: 200,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_tol > 0.0 && self.residual_rel_tol > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if self.max_iter < 10 {
            return Err(Error::Config(format!(
                "max_iter must be at least 10, got {}",
                self.max_iter
            )));
        }
        Ok(())
    }
}

/// Which end of the domain carries the Gamma extremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CriticalEnd {
    Lo,
    Hi,
}

#[derive(Debug, Clone, Copy)]
struct Domain {
    interval: RealInterval,
    critical_end: CriticalEnd,
    extremum: f64,
}

fn below_extremum(g: f64, k: i64, m: i64, extremum: f64) -> Error {
    let op = if extremum > 0.0 { '≥' } else { '≤' };
    Error::BelowExtremum {
        k,
        m,
        g_abs: g.abs(),
        extremum_abs: extremum.abs(),
        requirement: format!("g {op} γ_{m} = {extremum:.6}"),
    }
}

fn select_domain(g: f64, k: i64) -> Result<Domain> {
    if !g.is_finite() {
        return Err(Error::Domain(format!("g must be finite, got {g}")));
    }
    // exclude nonexistent branches
    if k >= 1 {
        return Err(Error::NoBranch("k >= 1"));
    }
    if g == 0.0 {
        return Err(Error::NoBranch("g = 0"));
    }
    if k == 0 && g < 0.0 {
        return Err(Error::NoBranch("k = 0 and g < 0"));
    }

    // end-point adjustments near k = 0
    let (lo0, hi0) = if k == 0 {
        (1.0, f64::INFINITY)
    } else if k == -1 && g > 0.0 {
        (0.0, 1.0)
    } else {
        (0.0, 0.0)
    };

    let kf = k as f64;
    let branch = BranchIndex::new(k)?;
    // which side of the pole
    if branch.is_even() ^ (g > 0.0) {
        let lo = kf + 1.0 + lo0;
        // the digamma zero in (lo, k + 2 + hi0)
        let m = k + 1;
        let cp = critical_point(m)?;
        debug_assert!(cp.psi > lo && cp.psi < kf + 2.0 + hi0);
        if g.abs() < cp.gamma.abs() {
            return Err(below_extremum(g, k, m, cp.gamma));
        }
        Ok(Domain {
            interval: RealInterval {
                lo,
                hi: cp.psi,
                lo_open: true,
                hi_open: true,
            },
            critical_end: CriticalEnd::Hi,
            extremum: cp.gamma,
        })
    } else {
        let hi = kf + 1.0 + hi0;
        // the digamma zero in (k + lo0, hi)
        let m = k;
        let cp = critical_point(m)?;
        debug_assert!(cp.psi > kf + lo0 && cp.psi < hi);
        if g.abs() < cp.gamma.abs() {
            return Err(below_extremum(g, k, m, cp.gamma));
        }
        Ok(Domain {
            interval: RealInterval {
                lo: cp.psi,
                hi,
                lo_open: false,
                hi_open: true,
            },
            critical_end: CriticalEnd::Lo,
            extremum: cp.gamma,
        })
    }
}

/// The x-interval on which Gamma is monotone and attains `g` for branch `k`.
pub fn real_gamma_domain(g: f64, k: i64) -> Result<RealInterval> {
    select_domain(g, k).map(|d| d.interval)
}

/// Result of a real inversion with solver diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSolution {
    pub x: f64,
    pub iterations: usize,
    /// Set when `g` lies within `1e-8 |gamma_k|` of the branch extremum,
    /// where the inverse has square-root sensitivity.
    pub reduced_accuracy: bool,
}

const NEAR_BRANCH_REL: f64 = 1e-8;
const NEAR_BRANCH_X_TOL: f64 = 1e-5;

/// Solve `Gamma(x) = g` on branch `k`.
pub fn real_inv_gamma(g: f64, k: i64, cfg: &SolveConfig) -> Result<f64> {
    real_inv_gamma_detailed(g, k, cfg).map(|s| s.x)
}

pub fn real_inv_gamma_detailed(g: f64, k: i64, cfg: &SolveConfig) -> Result<RealSolution> {
    cfg.validate()?;
    let dom = select_domain(g, k)?;
    let iv = dom.interval;
    let psi = match dom.critical_end {
        CriticalEnd::Lo => iv.lo,
        CriticalEnd::Hi => iv.hi,
    };
    let ln_g = g.abs().ln();
    let residual = |x: f64| ln_abs_gamma_unchecked(x) - ln_g;

    let near_branch = (g.abs() - dom.extremum.abs()) <= NEAR_BRANCH_REL * dom.extremum.abs();
    if residual(psi) >= 0.0 {
        // |g| does not exceed the extremum in working precision
        return Ok(RealSolution {
            x: psi,
            iterations: 0,
            reduced_accuracy: true,
        });
    }

    // Bracket [lo, hi] with residual <= 0 at the critical end and > 0 at the other.
    let (mut lo, mut hi) = (iv.lo, iv.hi);
    let seed = initial_guess(g, k, &iv);
    if hi.is_infinite() {
        let mut b = seed.max(lo + 1.0);
        let mut doublings = 0;
        while residual(b) <= 0.0 {
            b = lo + 2.0 * (b - lo);
            doublings += 1;
            if doublings > 64 || !b.is_finite() {
                return Err(Error::NonConvergence {
                    iterations: doublings,
                    detail: "could not bracket the root on the unbounded branch".into(),
                });
            }
        }
        hi = b;
    }

    let mut x = if seed > lo && seed < hi {
        seed
    } else {
        0.5 * (lo + hi)
    };
    let x_tol = cfg.x_tol;
    let mut last_step = f64::INFINITY;

    for it in 1..=cfg.max_iter {
        let f = residual(x);
        let crit_side = f < 0.0;
        match (dom.critical_end, crit_side) {
            (CriticalEnd::Lo, true) | (CriticalEnd::Hi, false) => lo = x,
            (CriticalEnd::Lo, false) | (CriticalEnd::Hi, true) => hi = x,
        }
        if f == 0.0 {
            return finish(x, it, near_branch, ln_g, cfg);
        }

        let d = digamma_real_unchecked(x);
        let newton = x - f / d;
        let next = if d != 0.0 && newton >= lo && newton <= hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        last_step = (next - x).abs();
        let small_step = last_step <= x_tol * x.abs().max(1.0);
        let small_residual = f.abs() <= 0.25 * cfg.residual_rel_tol;
        if (small_step && small_residual) || last_step <= 4.0 * f64::EPSILON * x.abs() {
            return finish(next, it, near_branch, ln_g, cfg);
        }
        if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            return finish(0.5 * (lo + hi), it, near_branch, ln_g, cfg);
        }
        x = next;
    }
    if near_branch && last_step <= NEAR_BRANCH_X_TOL {
        return finish(x, cfg.max_iter, true, ln_g, cfg);
    }
    Err(Error::NonConvergence {
        iterations: cfg.max_iter,
        detail: format!("Gamma(x) = {g} on branch {k} (last step {last_step:e})"),
    })
}

fn finish(
    x: f64,
    iterations: usize,
    near_branch: bool,
    ln_g: f64,
    cfg: &SolveConfig,
) -> Result<RealSolution> {
    // |Gamma(x)/g - 1|, with an allowance for the conditioning |psi(x)| ulp(x)
    let rel = (ln_abs_gamma_unchecked(x) - ln_g).exp_m1().abs();
    let floor = 8.0 * digamma_real_unchecked(x).abs() * f64::EPSILON * x.abs();
    let allowed = cfg.residual_rel_tol.max(floor);
    if rel <= allowed || near_branch {
        Ok(RealSolution {
            x,
            iterations,
            reduced_accuracy: near_branch,
        })
    } else {
        Err(Error::NonConvergence {
            iterations,
            detail: format!("residual {rel:e} exceeds {allowed:e} at x = {x}"),
        })
    }
}

fn initial_guess(g: f64, k: i64, iv: &RealInterval) -> f64 {
    if k == 0 && g >= 2.0 {
        if let Ok(x) = stirling_inverse_approx(g) {
            return x;
        }
    }
    if iv.hi.is_finite() {
        0.5 * (iv.lo + iv.hi)
    } else {
        iv.lo + g.ln().max(1.0)
    }
}

/// Lower end of the real domain of the Stirling-Lambert estimate, `sqrt(2 pi) / e`.
pub fn stirling_threshold() -> f64 {
    (2.0 * PI).sqrt() / E
}

/// Asymptotic estimate of the principal inverse from Stirling's formula:
/// `1/2 + L / W0(L / e)` with `L = ln(x / sqrt(2 pi))`.
///
/// Evaluated as `1/2 + exp(1 + W0(L / e))`, which is the same quantity
/// (`W e^W = L/e`) without the removable 0/0 at `x = sqrt(2 pi)`.
pub fn stirling_inverse_approx(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "Stirling inverse requires x >= sqrt(2 pi)/e ~ 0.92214, got {x}"
        )));
    }
    let l = (x / (2.0 * PI).sqrt()).ln();
    let mut arg = l / E;
    let branch_point = -1.0 / E;
    if arg < branch_point {
        if arg > branch_point - 4.0 * f64::EPSILON {
            arg = branch_point;
        } else {
            return Err(Error::Domain(format!(
                "Stirling inverse requires x >= sqrt(2 pi)/e ~ 0.92214, got {x}"
            )));
        }
    }
    let w = lambert_w0(arg)?;
    Ok(0.5 + (1.0 + w).exp())
}

/// The branch whose real range contains `x`.
pub fn branch_containing(x: f64) -> Result<BranchIndex> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    let n = x.round();
    if n <= 0.0 && (x - n).abs() < POLE_TOL {
        return Err(Error::PolePoint(x));
    }
    let psi0 = critical_point(0)?.psi;
    if x >= psi0 {
        return Ok(BranchIndex::PRINCIPAL);
    }
    if x > 0.0 {
        return BranchIndex::new(-1);
    }
    let cell = x.floor() as i64;
    if x >= critical_point(cell)?.psi {
        BranchIndex::new(cell)
    } else {
        BranchIndex::new(cell - 1)
    }
}
