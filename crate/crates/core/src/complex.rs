//! Complex branches `k = 0` and `k = -1` of the inverse Gamma function.
//!
//! Values are obtained by numerical continuation: start from a real anchor
//! `g_a` whose preimage on branch `k` is known from the real solver, follow
//! a path from `g_a` to `z` that stays in the open half-plane containing `z`,
//! and correct with Newton's method (`Gamma' = Gamma psi`) at every step.
//! The path is linear in `(ln|z|, arg z)`, so it never passes through the
//! singular point `z = 0` and never touches the real axis between its ends.
//!
//! On a cut the value is the limit from the upper half-plane unless
//! [`Closure::Below`] is requested.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::critical::{critical_point, BranchIndex};
use crate::error::{Error, Result};
use crate::real::{real_inv_gamma, SolveConfig};
use crate::specfun::{digamma, gamma, ComplexValue};

/// Vertical strip `lo <= Re w < hi` on which Gamma is single-sheeted near the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub k: BranchIndex,
    pub lo: f64,
    /// `+inf` for the principal strip.
    pub hi: f64,
}

impl Strip {
    pub fn for_branch(k: i64) -> Result<Strip> {
        let branch = BranchIndex::new(k)?;
        let lo = critical_point(k)?.psi;
        let hi = if k == 0 {
            f64::INFINITY
        } else {
            critical_point(k + 1)?.psi
        };
        Ok(Strip { k: branch, lo, hi })
    }

    pub fn contains(&self, w: ComplexValue) -> bool {
        self.lo <= w.re && (self.hi.is_infinite() || w.re < self.hi)
    }
}

/// The strip containing `w`.
pub fn strip_index(w: ComplexValue) -> Result<BranchIndex> {
    let x = w.re;
    if !x.is_finite() {
        return Err(Error::Domain(format!("Re w must be finite, got {x}")));
    }
    if x >= critical_point(0)?.psi {
        return Ok(BranchIndex::PRINCIPAL);
    }
    if x >= 0.0 {
        return BranchIndex::new(-1);
    }
    let cell = x.floor() as i64;
    if x >= critical_point(cell)?.psi {
        BranchIndex::new(cell)
    } else {
        BranchIndex::new(cell - 1)
    }
}

/// Open segments of the real axis across which branch `k` is discontinuous.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutSet {
    pub k: BranchIndex,
    /// Open intervals `(lo, hi)`; `lo` may be `-inf`.
    pub segments: Vec<(f64, f64)>,
}

impl CutSet {
    pub fn contains(&self, x: f64) -> bool {
        self.segments.iter().any(|&(lo, hi)| x > lo && x < hi)
    }
}

fn check_supported(k: i64) -> Result<BranchIndex> {
    let branch = BranchIndex::new(k)?;
    if k < -1 {
        return Err(Error::UnsupportedBranch(k));
    }
    Ok(branch)
}

/// Real values of `z` at which branch `k` is real-valued, as closed-or-open
/// ranges `(lo, hi)`. Branch 0 takes `[gamma_0, inf)`; branch -1 takes
/// `(gamma_0, inf)` and `(-inf, gamma_-1]`.
fn real_ranges(k: i64) -> Result<Vec<(f64, f64)>> {
    let g0 = critical_point(0)?.gamma;
    Ok(match k {
        0 => vec![(g0, f64::INFINITY)],
        -1 => vec![
            (f64::NEG_INFINITY, critical_point(-1)?.gamma),
            (g0, f64::INFINITY),
        ],
        _ => return Err(Error::UnsupportedBranch(k)),
    })
}

/// Cuts of branch `k`: the gaps of the real axis between the branch's real
/// ranges, split at the singular point `z = 0`.
pub fn cut_set(k: i64) -> Result<CutSet> {
    let branch = check_supported(k)?;
    let ranges = real_ranges(k)?;
    let mut gaps = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for &(lo, hi) in &ranges {
        if lo > prev {
            gaps.push((prev, lo));
        }
        prev = hi;
    }
    let mut segments = Vec::new();
    for (lo, hi) in gaps {
        if lo < 0.0 && hi > 0.0 {
            segments.push((lo, 0.0));
            segments.push((0.0, hi));
        } else {
            segments.push((lo, hi));
        }
    }
    Ok(CutSet {
        k: branch,
        segments,
    })
}

pub fn is_on_branch_cut(z: ComplexValue, k: i64) -> Result<bool> {
    let cuts = cut_set(k)?;
    Ok(z.im == 0.0 && cuts.contains(z.re))
}

/// Side from which a value on a cut is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Closure {
    Above,
    Below,
}

/// A complex inversion with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexSolution {
    pub w: ComplexValue,
    /// Whether `w` satisfies the strip membership rule of branch `k`.
    pub in_strip: bool,
    /// Set when `z` lies within `1e-8` of a branch point `gamma_k`.
    pub reduced_accuracy: bool,
    pub steps: usize,
}

const NEAR_BRANCH_ABS: f64 = 1e-8;
const SMALL_Z_MINUS_ONE: f64 = 1e-6;
const INITIAL_DT: f64 = 1.0 / 16.0;
const MAX_DT: f64 = 0.25;
const MIN_DT: f64 = 1e-12;
const CORRECTOR_ITERS: usize = 8;

/// `inv Gamma_k(z)` for `k` in {0, -1}, closing cuts from above.
pub fn inv_gamma_complex(z: ComplexValue, k: i64, cfg: &SolveConfig) -> Result<ComplexValue> {
    inv_gamma_complex_detailed(z, k, Closure::Above, cfg).map(|s| s.w)
}

pub fn inv_gamma_complex_detailed(
    z: ComplexValue,
    k: i64,
    closure: Closure,
    cfg: &SolveConfig,
) -> Result<ComplexSolution> {
    cfg.validate()?;
    check_supported(k)?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("z must be finite, got {z}")));
    }
    let not_in_range = |detail: &str| Error::NotInRange {
        re: z.re,
        im: z.im,
        k,
        detail: detail.to_string(),
    };
    if z.norm() == 0.0 {
        return Err(not_in_range("Gamma has no zeros"));
    }
    if k == -1 && z.norm() < SMALL_Z_MINUS_ONE {
        return Err(not_in_range("|z| < 1e-6 is unreachable on branch -1"));
    }

    // work in the closed upper half-plane; conjugate back at the end
    let flip = z.im < 0.0 || (z.im == 0.0 && closure == Closure::Below);
    let target = if flip { z.conj() } else { z };

    let strip = Strip::for_branch(k)?;
    let reduced_accuracy = branch_points(k)?
        .iter()
        .any(|&g| (z - g).norm() < NEAR_BRANCH_ABS);

    let (w, steps) = if target.im == 0.0 && !is_on_branch_cut(target, k)? {
        // real range of the branch
        (
            ComplexValue::new(real_inv_gamma(target.re, k, cfg)?, 0.0),
            0,
        )
    } else {
        continue_from_anchor(target, k, cfg, reduced_accuracy)
            .map_err(|detail| not_in_range(&detail))?
    };

    let w = if flip { w.conj() } else { w };
    Ok(ComplexSolution {
        w,
        in_strip: strip.contains(w),
        reduced_accuracy,
        steps,
    })
}

fn branch_points(k: i64) -> Result<Vec<f64>> {
    let mut pts = vec![critical_point(0)?.gamma];
    if k == -1 {
        pts.push(critical_point(-1)?.gamma);
    }
    Ok(pts)
}

fn anchor(target: ComplexValue, k: i64) -> Result<f64> {
    if k == 0 {
        let g0 = critical_point(0)?.gamma;
        Ok((2.0 * g0).max(target.norm().min(10.0)))
    } else {
        Ok(1.0)
    }
}

/// Waypoints in `(ln r, theta)` from the anchor to `target` (Im target >= 0).
fn log_polar_path(g_a: f64, target: ComplexValue) -> Vec<(f64, f64)> {
    let start = (g_a.ln(), 0.0);
    let ln_r = target.norm().ln();
    if target.im == 0.0 {
        if target.re < 0.0 {
            vec![start, (ln_r, PI)]
        } else {
            // positive cut: detour through the upper half-plane
            vec![start, (0.5 * (start.0 + ln_r), 0.5 * PI), (ln_r, 0.0)]
        }
    } else {
        vec![start, (ln_r, target.im.atan2(target.re))]
    }
}

fn point_on(a: (f64, f64), b: (f64, f64), t: f64) -> ComplexValue {
    let ln_r = a.0 + t * (b.0 - a.0);
    let theta = a.1 + t * (b.1 - a.1);
    ComplexValue::from_polar(ln_r.exp(), theta)
}

/// Newton correction toward `Gamma(w) = zt`; returns the corrected point and
/// the number of iterations, or `None` when it fails to settle.
fn correct(
    mut w: ComplexValue,
    zt: ComplexValue,
    tol: f64,
    max_iter: usize,
) -> Option<(ComplexValue, usize)> {
    let mut prev_step = f64::INFINITY;
    for it in 1..=max_iter {
        let g = gamma(w).ok()?;
        let d = g * digamma(w).ok()?;
        if d.norm() == 0.0 || !d.re.is_finite() {
            return None;
        }
        let step = (g - zt) / d;
        let size = step.norm();
        if !size.is_finite() || (it > 2 && size > prev_step) {
            return None;
        }
        w -= step;
        if size <= tol * w.norm().max(1.0) {
            return Some((w, it));
        }
        prev_step = size;
    }
    None
}

fn continue_from_anchor(
    target: ComplexValue,
    k: i64,
    cfg: &SolveConfig,
    reduced_accuracy: bool,
) -> std::result::Result<(ComplexValue, usize), String> {
    let g_a = anchor(target, k).map_err(|e| e.to_string())?;
    let x_a = real_inv_gamma(g_a, k, cfg).map_err(|e| e.to_string())?;
    let mut w = ComplexValue::new(x_a, 0.0);
    let waypoints = log_polar_path(g_a, target);
    let mut steps = 0usize;

    for leg in waypoints.windows(2) {
        let (a, b) = (leg[0], leg[1]);
        let mut t = 0.0;
        let mut dt = INITIAL_DT;
        let mut z_prev = point_on(a, b, 0.0);
        while t < 1.0 {
            let t1 = (t + dt).min(1.0);
            let zt = point_on(a, b, t1);
            let accepted = predict(w, z_prev, zt).and_then(|w_pred| {
                let predicted = (w_pred - w).norm();
                correct(w_pred, zt, 1e-10, CORRECTOR_ITERS).filter(|(w_new, _)| {
                    (*w_new - w_pred).norm() <= 0.5 * predicted + 1e-9 * w.norm().max(1.0)
                })
            });
            match accepted {
                Some((w_new, iters)) => {
                    w = w_new;
                    t = t1;
                    z_prev = zt;
                    steps += 1;
                    if iters <= 3 {
                        dt = (dt * 2.0).min(MAX_DT);
                    }
                }
                None => {
                    dt *= 0.5;
                    if dt < MIN_DT {
                        return Err(format!("continuation stalled at t = {t:.6}"));
                    }
                }
            }
        }
    }

    // polish at the target
    let mut polished = None;
    for _ in 0..cfg.max_iter {
        let Some((w_new, _)) = correct(w, target, cfg.x_tol, 1) else {
            break;
        };
        let moved = (w_new - w).norm();
        w = w_new;
        if moved <= cfg.x_tol * w.norm().max(1.0) {
            polished = Some(w);
            break;
        }
    }
    let w = polished.unwrap_or(w);
    let residual = gamma(w).map_err(|e| e.to_string())? - target;
    if residual.norm() <= cfg.residual_rel_tol * target.norm()
        || (reduced_accuracy && residual.norm() <= 1e-6)
    {
        Ok((w, steps))
    } else {
        Err(format!(
            "residual {:e} after continuation",
            residual.norm() / target.norm()
        ))
    }
}

fn predict(w: ComplexValue, z_from: ComplexValue, z_to: ComplexValue) -> Option<ComplexValue> {
    let g = gamma(w).ok()?;
    let d = g * digamma(w).ok()?;
    if d.norm() == 0.0 {
        return Some(w);
    }
    Some(w + (z_to - z_from) / d)
}
