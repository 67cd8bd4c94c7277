#![allow(dead_code)]

use invgamma::specfun::ComplexValue;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All-pairs parametric search: the smallest later segment `j` meeting an
/// earlier non-adjacent segment, then the smallest parameter along `j`,
/// then the smallest `i`.
pub fn brute_force_self_intersection(poly: &[ComplexValue]) -> Option<(usize, usize)> {
    if poly.len() < 3 {
        return None;
    }
    let (mut lo, mut hi) = (poly[0], poly[0]);
    for p in poly {
        lo = ComplexValue::new(lo.re.min(p.re), lo.im.min(p.im));
        hi = ComplexValue::new(hi.re.max(p.re), hi.im.max(p.im));
    }
    let scale = (hi.re - lo.re).max(hi.im - lo.im);
    let pts: Vec<ComplexValue> = poly.iter().map(|p| (p - lo) / scale).collect();
    let cross = |a: ComplexValue, b: ComplexValue| a.re * b.im - a.im * b.re;

    let n = pts.len() - 1;
    for j in 2..n {
        let (r, e) = (pts[j], pts[j + 1] - pts[j]);
        let mut best: Option<(f64, usize)> = None;
        for i in 0..j - 1 {
            let (p, f) = (pts[i], pts[i + 1] - pts[i]);
            let den = cross(e, f);
            let g = p - r;
            let u = if den.abs() < 1e-12 {
                if cross(g, e).abs() > 1e-12 {
                    continue;
                }
                // collinear: overlap of the projections onto e
                let ee = e.norm_sqr();
                let (a, b) = (
                    (g.re * e.re + g.im * e.im) / ee,
                    ((g + f).re * e.re + (g + f).im * e.im) / ee,
                );
                let (a, b) = (a.min(b), a.max(b));
                if b < 0.0 || a > 1.0 {
                    continue;
                }
                0.0
            } else {
                let u = cross(g, f) / den;
                let t = cross(g, e) / den;
                if !(-1e-12..=1.0 + 1e-12).contains(&u) || !(-1e-12..=1.0 + 1e-12).contains(&t) {
                    continue;
                }
                u.clamp(0.0, 1.0)
            };
            if best.is_none_or(|(bu, _)| u < bu) {
                best = Some((u, i));
            }
        }
        if let Some((_, i)) = best {
            return Some((i, j));
        }
    }
    None
}

/// Random polyline with `segments` segments: uniform points or a random walk.
pub fn random_polyline(rng: &mut ChaCha8Rng, segments: usize) -> Vec<ComplexValue> {
    let walk = rng.gen_bool(0.5);
    let mut pts = Vec::with_capacity(segments + 1);
    let mut cur = ComplexValue::new(0.0, 0.0);
    for _ in 0..=segments {
        if walk {
            cur += ComplexValue::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(-3.2..3.2));
            pts.push(cur);
        } else {
            pts.push(ComplexValue::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ));
        }
    }
    pts
}
