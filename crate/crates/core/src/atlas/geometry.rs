//! Segment intersection on polylines in the complex plane.

use serde::{Deserialize, Serialize};

use crate::specfun::ComplexValue;

/// Collinearity tolerance on orientation determinants of normalized coordinates.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// Two non-adjacent segments of a polyline that meet. Segment `s` joins
/// points `s` and `s + 1`; `first < second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfIntersection {
    pub first: usize,
    pub second: usize,
}

fn orient(a: ComplexValue, b: ComplexValue, c: ComplexValue) -> f64 {
    let v = (b - a).conj() * (c - a);
    v.im
}

fn sign_with_tol(v: f64) -> i8 {
    if v > COLLINEAR_TOL {
        1
    } else if v < -COLLINEAR_TOL {
        -1
    } else {
        0
    }
}

fn on_segment(a: ComplexValue, b: ComplexValue, p: ComplexValue) -> bool {
    p.re >= a.re.min(b.re) - COLLINEAR_TOL
        && p.re <= a.re.max(b.re) + COLLINEAR_TOL
        && p.im >= a.im.min(b.im) - COLLINEAR_TOL
        && p.im <= a.im.max(b.im) + COLLINEAR_TOL
}

/// Whether closed segments `pq` and `rs` share a point. Coordinates are
/// expected to be normalized to a unit bounding box.
pub fn segments_intersect(
    p: ComplexValue,
    q: ComplexValue,
    r: ComplexValue,
    s: ComplexValue,
) -> bool {
    let d1 = sign_with_tol(orient(r, s, p));
    let d2 = sign_with_tol(orient(r, s, q));
    let d3 = sign_with_tol(orient(p, q, r));
    let d4 = sign_with_tol(orient(p, q, s));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(r, s, p))
        || (d2 == 0 && on_segment(r, s, q))
        || (d3 == 0 && on_segment(p, q, r))
        || (d4 == 0 && on_segment(p, q, s))
}

/// Parameter along `rs` of its meeting point with `pq`, or 0 for collinear overlap.
fn parameter_along(p: ComplexValue, q: ComplexValue, r: ComplexValue, s: ComplexValue) -> f64 {
    let e = s - r;
    let f = q - p;
    let den = e.re * f.im - e.im * f.re;
    if den.abs() < COLLINEAR_TOL {
        return 0.0;
    }
    let g = p - r;
    ((g.re * f.im - g.im * f.re) / den).clamp(0.0, 1.0)
}

/// Scale points into the unit box so the collinearity tolerance is relative.
pub fn normalize(poly: &[ComplexValue]) -> Vec<ComplexValue> {
    let (mut min_re, mut max_re) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_im, mut max_im) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in poly {
        min_re = min_re.min(p.re);
        max_re = max_re.max(p.re);
        min_im = min_im.min(p.im);
        max_im = max_im.max(p.im);
    }
    let scale = (max_re - min_re).max(max_im - min_im);
    if scale <= 0.0 || !scale.is_finite() {
        return poly.to_vec();
    }
    let origin = ComplexValue::new(min_re, min_im);
    poly.iter().map(|p| (p - origin) / scale).collect()
}

/// The first self-intersection met while walking the polyline: the smallest
/// `second` segment that meets an earlier non-adjacent segment, and among its
/// partners the one met earliest along `second`.
pub fn find_self_intersection(poly: &[ComplexValue]) -> Option<SelfIntersection> {
    if poly.len() < 3 {
        return None;
    }
    let pts = normalize(poly);
    let nseg = pts.len() - 1;

    #[derive(Clone, Copy)]
    struct Seg {
        idx: usize,
        min_re: f64,
        max_re: f64,
        min_im: f64,
        max_im: f64,
    }
    let mut segs: Vec<Seg> = (0..nseg)
        .map(|i| {
            let (a, b) = (pts[i], pts[i + 1]);
            Seg {
                idx: i,
                min_re: a.re.min(b.re) - COLLINEAR_TOL,
                max_re: a.re.max(b.re) + COLLINEAR_TOL,
                min_im: a.im.min(b.im) - COLLINEAR_TOL,
                max_im: a.im.max(b.im) + COLLINEAR_TOL,
            }
        })
        .collect();
    segs.sort_by(|a, b| a.min_re.total_cmp(&b.min_re));

    // sweep over x: every pair whose boxes overlap is tested exactly once
    let mut best: Option<(usize, f64, usize)> = None;
    let mut active: Vec<Seg> = Vec::new();
    for s in &segs {
        active.retain(|a| a.max_re >= s.min_re);
        for a in &active {
            let (i, j) = if a.idx < s.idx {
                (a.idx, s.idx)
            } else {
                (s.idx, a.idx)
            };
            if j - i < 2 || a.max_im < s.min_im || s.max_im < a.min_im {
                continue;
            }
            if let Some((bj, _, _)) = best {
                if j > bj {
                    continue;
                }
            }
            if segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                let t = parameter_along(pts[i], pts[i + 1], pts[j], pts[j + 1]);
                let better = match best {
                    None => true,
                    Some((bj, bt, bi)) => j < bj || (j == bj && (t < bt || (t == bt && i < bi))),
                };
                if better {
                    best = Some((j, t, i));
                }
            }
        }
        active.push(*s);
    }
    best.map(|(second, _, first)| SelfIntersection { first, second })
}
