//! Zeros of digamma and the corresponding extrema of Gamma.
//!
//! For every branch `k <= 0` the abscissa `psi_k` is the unique zero of
//! digamma in `(1, 2)` (k = 0) or in `(k, k + 1)` (k < 0), and
//! `gamma_k = Gamma(psi_k)`. Values are computed on demand and cached for
//! the life of the process.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{digamma_real, gamma_real, trigamma_real};

/// Label of a branch of the inverse Gamma function; always `<= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct BranchIndex(i64);

impl BranchIndex {
    pub const PRINCIPAL: BranchIndex = BranchIndex(0);

    pub fn new(k: i64) -> Result<Self> {
        if k > 0 {
            Err(Error::InvalidBranch(k))
        } else {
            Ok(BranchIndex(k))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0 % 2 == 0
    }
}

impl TryFrom<i64> for BranchIndex {
    type Error = Error;

    fn try_from(k: i64) -> Result<Self> {
        BranchIndex::new(k)
    }
}

impl From<BranchIndex> for i64 {
    fn from(k: BranchIndex) -> i64 {
        k.0
    }
}

impl fmt::Display for BranchIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Extremum `(psi_k, gamma_k)` of Gamma bounding branch `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub k: BranchIndex,
    pub psi: f64,
    pub gamma: f64,
}

const BISECTION_WIDTH: f64 = 1e-3;
const DIGAMMA_TOL: f64 = 1e-13;
const MAX_NEWTON: usize = 60;

fn bracket(k: i64) -> (f64, f64) {
    if k == 0 {
        return (1.0, 2.0);
    }
    let kf = k as f64;
    // digamma is infinite at the integers; stay a little inside
    let offset = 1e-9_f64.max(4.0 * f64::EPSILON * kf.abs());
    (kf + offset, kf + 1.0 - offset)
}

fn solve_psi_zero(k: i64) -> Result<f64> {
    // digamma is strictly increasing between consecutive poles
    let (mut lo, mut hi) = bracket(k);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if digamma_real(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON {
        let f = digamma_real(x)?;
        if f.abs() < DIGAMMA_TOL {
            return Ok(x);
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let step = f / trigamma_real(x)?;
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == x || (next - x).abs() <= 2.0 * f64::EPSILON * x.abs() {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NonConvergence {
        iterations: MAX_NEWTON,
        detail: format!("digamma zero for branch {k}"),
    })
}

type Cache = Mutex<HashMap<i64, Arc<OnceLock<CriticalPoint>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Abscissa `psi_k` of the extremum of Gamma bounding branch `k`.
pub fn psi_zero(k: i64) -> Result<f64> {
    critical_point(k).map(|c| c.psi)
}

/// The memoized critical point of branch `k`.
pub fn critical_point(k: i64) -> Result<CriticalPoint> {
    let branch = BranchIndex::new(k)?;
    let slot = {
        let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
        Arc::clone(map.entry(k).or_default())
    };
    if let Some(cp) = slot.get() {
        return Ok(*cp);
    }
    let psi = solve_psi_zero(k)?;
    let gamma = gamma_real(psi)?;
    Ok(*slot.get_or_init(|| CriticalPoint {
        k: branch,
        psi,
        gamma,
    }))
}

/// Critical points for `k = 0, -1, ..., kmin`.
pub fn critical_table(kmin: i64) -> Result<Vec<CriticalPoint>> {
    BranchIndex::new(kmin)?;
    (kmin..=0).rev().map(critical_point).collect()
}
