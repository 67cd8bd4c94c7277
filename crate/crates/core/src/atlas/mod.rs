//! Contour mapping: vertical contours erected on real values of a branch are
//! pushed through Gamma, and each one is trimmed where its image reaches the
//! real axis. The trimmed endpoints trace out the cuts of the branch; the
//! preimages of the cuts bound the branch's range.

mod export;
pub mod geometry;

use serde::{Deserialize, Serialize};

pub use export::{write_csv, AtlasDocument, ContourRecord};
pub use geometry::{find_self_intersection, SelfIntersection};

use crate::complex::{cut_set, inv_gamma_complex_detailed, Closure};
use crate::critical::{critical_point, BranchIndex};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::real::{branch_containing, real_inv_gamma, SolveConfig};
use crate::specfun::{gamma, ComplexValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContourShape {
    /// Straight vertical segment rising (or falling) from a real anchor.
    Vertical,
    /// Any other polyline, e.g. a mapped cut.
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
    /// Through the anchor, from `x - i height` to `x + i height`.
    Both,
}

/// A polyline in the range plane of the inverse (the domain of Gamma).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub branch: BranchIndex,
    /// Real point the contour rises from.
    pub anchor: f64,
    pub samples: Vec<ComplexValue>,
    pub trimmed: bool,
    pub shape: ContourShape,
}

impl Contour {
    /// `n` evenly spaced samples from `x` to `x +- i height`; with
    /// [`Direction::Both`], `n` samples on each side sharing the anchor. A
    /// zero height gives the single sample `x`.
    pub fn vertical(
        branch: BranchIndex,
        x: f64,
        height: f64,
        n: usize,
        dir: Direction,
    ) -> Result<Contour> {
        if height.is_nan() || height < 0.0 || height.is_infinite() {
            return Err(Error::Domain(format!(
                "contour height must be >= 0, got {height}"
            )));
        }
        if n < 2 {
            return Err(Error::Domain(format!(
                "contour needs at least 2 samples, got {n}"
            )));
        }
        let step = height / (n - 1) as f64;
        let samples = if height == 0.0 {
            vec![ComplexValue::new(x, 0.0)]
        } else {
            let heights: Vec<f64> = match dir {
                Direction::Up => (0..n).map(|j| j as f64 * step).collect(),
                Direction::Down => (0..n).map(|j| -(j as f64) * step).collect(),
                Direction::Both => (0..2 * n - 1)
                    .map(|j| (j as f64 - (n - 1) as f64) * step)
                    .collect(),
            };
            heights
                .into_iter()
                .map(|y| ComplexValue::new(x, y))
                .collect()
        };
        Ok(Contour {
            branch,
            anchor: x,
            samples,
            trimmed: false,
            shape: ContourShape::Vertical,
        })
    }

    fn point_at(&self, seg: usize, t: f64) -> ComplexValue {
        let a = self.samples[seg];
        let b = self.samples[seg + 1];
        a + (b - a) * t
    }
}

/// Contour on branch `k` rising from `real_inv_gamma(anchor_g, k)`.
pub fn build_vertical_contour(k: i64, anchor_g: f64, height: f64, n: usize) -> Result<Contour> {
    build_vertical_contour_dir(k, anchor_g, height, n, Direction::Up)
}

pub fn build_vertical_contour_dir(
    k: i64,
    anchor_g: f64,
    height: f64,
    n: usize,
    dir: Direction,
) -> Result<Contour> {
    let branch = BranchIndex::new(k)?;
    let x = real_inv_gamma(anchor_g, k, &SolveConfig::default())?;
    Contour::vertical(branch, x, height, n, dir)
}

/// A contour together with its image under Gamma.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappedContour {
    pub source: Contour,
    pub image: Vec<ComplexValue>,
    pub self_intersection: Option<SelfIntersection>,
}

pub fn map_contour(c: &Contour) -> Result<MappedContour> {
    let image = c
        .samples
        .iter()
        .map(|&w| gamma(w))
        .collect::<Result<Vec<_>>>()?;
    let self_intersection = find_self_intersection(&image);
    Ok(MappedContour {
        source: c.clone(),
        image,
        self_intersection,
    })
}

/// Where trimming stops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutTarget {
    /// Largest `|Im|` accepted for an image endpoint on the real axis.
    pub axis_tol: f64,
    /// Resolution of the trim position along the contour.
    pub param_tol: f64,
}

impl Default for CutTarget {
    fn default() -> Self {
        Self {
            axis_tol: 1e-3,
            param_tol: 1e-6,
        }
    }
}

/// Insert midpoints wherever the image turns by more than `max_turn`
/// radians between consecutive segments.
pub fn refine_contour(c: &Contour, max_turn: f64) -> Result<Contour> {
    const MAX_PASSES: usize = 12;
    const MAX_SAMPLES: usize = 50_000;
    const MIN_SEGMENT: f64 = 1e-9;

    let mut samples = c.samples.clone();
    let mut image = samples
        .iter()
        .map(|&w| gamma(w))
        .collect::<Result<Vec<_>>>()?;
    for _ in 0..MAX_PASSES {
        if samples.len() < 3 || samples.len() >= MAX_SAMPLES {
            break;
        }
        let mut split = vec![false; samples.len() - 1];
        for i in 1..samples.len() - 1 {
            let d1 = image[i] - image[i - 1];
            let d2 = image[i + 1] - image[i];
            if d1.norm() == 0.0 || d2.norm() == 0.0 {
                continue;
            }
            if (d2 / d1).arg().abs() > max_turn {
                split[i - 1] = true;
                split[i] = true;
            }
        }
        if !split.iter().any(|&s| s) {
            break;
        }
        let mut next_s = Vec::with_capacity(samples.len() * 2);
        let mut next_i = Vec::with_capacity(samples.len() * 2);
        for i in 0..samples.len() - 1 {
            next_s.push(samples[i]);
            next_i.push(image[i]);
            if split[i] && (samples[i + 1] - samples[i]).norm() > MIN_SEGMENT {
                let mid = 0.5 * (samples[i] + samples[i + 1]);
                next_s.push(mid);
                next_i.push(gamma(mid)?);
            }
        }
        next_s.push(*samples.last().unwrap());
        next_i.push(*image.last().unwrap());
        samples = next_s;
        image = next_i;
    }
    Ok(Contour {
        samples,
        ..c.clone()
    })
}

#[derive(Debug, Clone, Copy)]
struct Crossing {
    seg: usize,
    before: ComplexValue,
    after: ComplexValue,
}

impl Crossing {
    fn at(seg: usize, w: ComplexValue) -> Crossing {
        Crossing {
            seg,
            before: w,
            after: w,
        }
    }
}

/// Points where the image of `c` passes through the real axis, excluding a
/// real anchor at the start.
fn axis_crossings(
    c: &Contour,
    image: &[ComplexValue],
    target: &CutTarget,
) -> Result<Vec<Crossing>> {
    let mut out = Vec::new();
    for seg in 1..image.len().saturating_sub(1) {
        let (va, vb) = (image[seg].im, image[seg + 1].im);
        if va == 0.0 {
            out.push(Crossing::at(seg, c.samples[seg]));
            continue;
        }
        if va.signum() == vb.signum() || vb == 0.0 && seg + 2 < image.len() {
            continue;
        }
        out.push(locate_crossing(c, seg, va, target)?);
    }
    // a crossing at the very last sample
    if let Some(last) = image.last() {
        if image.len() >= 2 && last.im == 0.0 && c.samples.last().unwrap().im != 0.0 {
            let seg = image.len() - 2;
            if out.last().is_none_or(|x| x.seg != seg) {
                out.push(Crossing::at(seg, *c.samples.last().unwrap()));
            }
        }
    }
    Ok(out)
}

/// Bisect the sign change of `Im Gamma` on segment `seg`. `before` stays on
/// the side the segment starts from, `after` on the far side.
fn locate_crossing(c: &Contour, seg: usize, v_start: f64, target: &CutTarget) -> Result<Crossing> {
    let len = (c.samples[seg + 1] - c.samples[seg]).norm();
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let (mut v_lo, mut v_hi) = (v_start, gamma(c.samples[seg + 1])?.im);
    for _ in 0..200 {
        if (hi - lo) * len <= target.param_tol
            && v_lo.abs() <= target.axis_tol
            && v_hi.abs() <= target.axis_tol
        {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = gamma(c.point_at(seg, mid))?.im;
        if v == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if v.signum() == v_start.signum() {
            lo = mid;
            v_lo = v;
        } else {
            hi = mid;
            v_hi = v;
        }
    }
    if v_lo.abs() > target.axis_tol || v_hi.abs() > target.axis_tol {
        return Err(Error::TrimFailure(format!(
            "axis crossing of the contour at {} not resolved to |Im| <= {:e}",
            c.anchor, target.axis_tol
        )));
    }
    Ok(Crossing {
        seg,
        before: c.point_at(seg, lo),
        after: c.point_at(seg, hi),
    })
}

fn starts_in_own_range(c: &Contour) -> bool {
    let s0 = c.samples[0];
    s0.im == 0.0 && (branch_containing(s0.re) == Ok(c.branch))
}

/// Cut `c` down to the piece whose image runs from the branch's real range
/// (or, for an exploratory contour that starts outside it, from the first
/// axis crossing) to the next point where the image meets the real axis.
pub fn trim_contour(c: &Contour, target: &CutTarget) -> Result<Contour> {
    if c.samples.len() < 2 {
        return Err(Error::TrimFailure(
            "contour has fewer than 2 samples".into(),
        ));
    }
    if let Some(m) = interior_anchor(c) {
        return trim_through_anchor(c, m, target);
    }
    let image = c
        .samples
        .iter()
        .map(|&w| gamma(w))
        .collect::<Result<Vec<_>>>()?;
    let crossings = axis_crossings(c, &image, target)?;
    let own = starts_in_own_range(c);
    let last_on_axis = image.last().unwrap().im.abs() <= target.axis_tol;

    if own && last_on_axis && crossings.iter().all(|x| x.seg + 2 >= c.samples.len()) {
        return Ok(Contour {
            trimmed: true,
            ..c.clone()
        });
    }

    let (start, end) = if own {
        match crossings.first() {
            Some(end) => (None, *end),
            None => {
                return Err(Error::TrimFailure(format!(
                    "image of the contour at {} never returns to the real axis",
                    c.anchor
                )))
            }
        }
    } else {
        match (crossings.first(), crossings.get(1)) {
            (Some(a), Some(b)) => (Some(*a), *b),
            _ => {
                return Err(Error::TrimFailure(format!(
                    "exploratory contour at {} needs two axis crossings, found {}",
                    c.anchor,
                    crossings.len()
                )))
            }
        }
    };

    let mut samples = Vec::new();
    let first_seg = match start {
        Some(s) => {
            samples.push(s.after);
            s.seg + 1
        }
        None => {
            samples.push(c.samples[0]);
            1
        }
    };
    for i in first_seg..=end.seg {
        push_distinct(&mut samples, c.samples[i]);
    }
    push_distinct(&mut samples, end.before);
    if samples.len() < 2 {
        return Err(Error::TrimFailure("trimmed piece is degenerate".into()));
    }

    let trimmed = Contour {
        samples,
        trimmed: true,
        ..c.clone()
    };
    let mapped = map_contour(&trimmed)?;
    if let Some(si) = mapped.self_intersection {
        return Err(Error::TrimFailure(format!(
            "trimmed image still self-intersects between segments {} and {}",
            si.first, si.second
        )));
    }
    Ok(trimmed)
}

fn interior_anchor(c: &Contour) -> Option<usize> {
    let a = ComplexValue::new(c.anchor, 0.0);
    (1..c.samples.len().saturating_sub(1)).find(|&i| c.samples[i] == a)
}

/// Trim both halves of a contour passing through its real anchor and join
/// them again.
fn trim_through_anchor(c: &Contour, m: usize, target: &CutTarget) -> Result<Contour> {
    let half = |samples: Vec<ComplexValue>| Contour {
        samples,
        ..c.clone()
    };
    let lower = trim_contour(
        &half(c.samples[..=m].iter().rev().copied().collect()),
        target,
    )?;
    let upper = trim_contour(&half(c.samples[m..].to_vec()), target)?;
    let mut samples: Vec<_> = lower.samples.into_iter().rev().collect();
    samples.extend(upper.samples.into_iter().skip(1));
    let joined = Contour {
        samples,
        trimmed: true,
        ..c.clone()
    };
    if let Some(si) = map_contour(&joined)?.self_intersection {
        return Err(Error::TrimFailure(format!(
            "trimmed image still self-intersects between segments {} and {}",
            si.first, si.second
        )));
    }
    Ok(joined)
}

fn push_distinct(v: &mut Vec<ComplexValue>, p: ComplexValue) {
    if v.last().is_none_or(|&q| q != p) {
        v.push(p);
    }
}

/// Parameters of the contour search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtlasConfig {
    /// Samples per unit of contour height before refinement.
    pub samples_per_unit: usize,
    pub initial_height: f64,
    pub max_height: f64,
    /// Turn angle (radians) of the image above which a segment is split.
    pub max_turn: f64,
    pub target: CutTarget,
    /// Also trace the mirrored contours going down from each anchor.
    pub mirror: bool,
}

impl Default for AtlasConfig {
    fn default() -> Self {
        Self {
            samples_per_unit: 32,
            initial_height: 1.0,
            max_height: 40.0,
            max_turn: 0.2,
            target: CutTarget::default(),
            mirror: false,
        }
    }
}

/// Erect a contour at real `x`, grow it until its image reaches the real
/// axis (or self-intersects), then trim it.
pub fn trace_contour(
    branch: BranchIndex,
    x: f64,
    dir: Direction,
    cfg: &AtlasConfig,
) -> Result<Contour> {
    let mut height = cfg.initial_height;
    loop {
        let n = ((cfg.samples_per_unit as f64 * height).ceil() as usize + 1).max(16);
        let raw = Contour::vertical(branch, x, height, n, dir)?;
        let c = refine_contour(&raw, cfg.max_turn)?;
        let image = c
            .samples
            .iter()
            .map(|&w| gamma(w))
            .collect::<Result<Vec<_>>>()?;
        let needed = if starts_in_own_range(&c) { 1 } else { 2 };
        let crossings = axis_crossings(&c, &image, &cfg.target)?.len();
        if crossings >= needed || find_self_intersection(&image).is_some() {
            return trim_contour(&c, &cfg.target);
        }
        height *= 2.0;
        if height > cfg.max_height {
            return Err(Error::TrimFailure(format!(
                "no axis crossing below height {} for the contour at {x}",
                cfg.max_height
            )));
        }
    }
}

/// What to trace: anchors are values `g` on the branch's real range,
/// exploratory points are real abscissae outside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtlasRequest {
    pub branch: i64,
    pub anchors: Vec<f64>,
    pub explore: Vec<f64>,
}

impl AtlasRequest {
    /// Anchors and exploratory abscissae that reveal both cuts of branch `k`.
    pub fn standard(k: i64) -> Result<AtlasRequest> {
        let g0 = critical_point(0)?.gamma;
        let (anchors, explore) = match k {
            0 => (
                vec![
                    g0 * (1.0 + 1e-3),
                    0.9,
                    1.0,
                    1.2,
                    1.5,
                    2.0,
                    3.0,
                    4.0,
                    6.0,
                    10.0,
                    24.0,
                ],
                vec![0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4],
            ),
            -1 => {
                let gm1 = critical_point(-1)?.gamma;
                (
                    vec![
                        g0 * (1.0 + 1e-3),
                        1.0,
                        1.5,
                        2.0,
                        4.0,
                        10.0,
                        gm1 * (1.0 + 1e-3),
                        -4.0,
                        -6.0,
                        -10.0,
                        -30.0,
                    ],
                    vec![-0.506, -0.51, -0.52, -0.55, -0.6, -0.65, -0.7, -0.8, -0.9],
                )
            }
            _ => return Err(Error::UnsupportedBranch(k)),
        };
        Ok(AtlasRequest {
            branch: k,
            anchors,
            explore,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atlas {
    pub branch: BranchIndex,
    pub anchors: Vec<f64>,
    pub contours: Vec<MappedContour>,
}

impl Atlas {
    /// Image points where trimmed contours end on the real axis (anchor
    /// starts excluded).
    pub fn cut_endpoints(&self) -> Vec<ComplexValue> {
        let mut out = Vec::new();
        for mc in self.contours.iter().filter(|m| m.source.trimmed) {
            let (s, img) = (&mc.source.samples, &mc.image);
            for (w, z) in [(s[0], img[0]), (*s.last().unwrap(), *img.last().unwrap())] {
                if w.im != 0.0 {
                    out.push(z);
                }
            }
        }
        out
    }
}

pub fn build_atlas(req: &AtlasRequest, cfg: &AtlasConfig, exec: Execution) -> Result<Atlas> {
    let branch = BranchIndex::new(req.branch)?;
    let solve = SolveConfig::default();
    let mut bases: Vec<f64> = req
        .anchors
        .iter()
        .map(|&g| real_inv_gamma(g, req.branch, &solve))
        .collect::<Result<_>>()?;
    bases.extend(req.explore.iter().copied());

    let dirs: &[Direction] = if cfg.mirror {
        &[Direction::Up, Direction::Down]
    } else {
        &[Direction::Up]
    };
    let jobs: Vec<(f64, Direction)> = bases
        .iter()
        .flat_map(|&x| dirs.iter().map(move |&d| (x, d)))
        .collect();

    let contours = exec::try_map(&jobs, exec, |&(x, dir)| {
        let c = trace_contour(branch, x, dir, cfg)?;
        map_contour(&c)
    })?;
    Ok(Atlas {
        branch,
        anchors: req.anchors.clone(),
        contours,
    })
}

/// Sample points of an open cut segment, geometrically clustered toward the
/// singular point 0 and including a finite nonzero end.
fn cut_samples(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let frac = |j: usize| j as f64 / (n - 1) as f64;
    let (near, far) = (1e-3_f64.ln(), 0.0);
    if lo.is_infinite() {
        // (-inf, 0): from -1e3 to -1e-3
        (0..n)
            .map(|j| -(3.0 * std::f64::consts::LN_10 * (1.0 - 2.0 * frac(j))).exp())
            .collect()
    } else if lo == 0.0 {
        (0..n)
            .map(|j| hi * (near + (far - near) * frac(j)).exp())
            .collect()
    } else {
        (0..n)
            .map(|j| lo * (near + (far - near) * (1.0 - frac(j))).exp())
            .collect()
    }
}

/// Preimages of the cuts of branch `k`, from above and from below, as
/// polylines in the strip of the branch.
pub fn branch_boundary(k: i64, n: usize, exec: Execution) -> Result<Vec<Contour>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 points per cut, got {n}"
        )));
    }
    let cuts = cut_set(k)?;
    let solve = SolveConfig::default();
    let mut jobs = Vec::new();
    for &(lo, hi) in &cuts.segments {
        for closure in [Closure::Above, Closure::Below] {
            jobs.push((cut_samples(lo, hi, n), closure));
        }
    }
    exec::try_map(&jobs, exec, |(zs, closure)| {
        let samples = zs
            .iter()
            .map(|&z| {
                inv_gamma_complex_detailed(ComplexValue::new(z, 0.0), k, *closure, &solve)
                    .map(|s| s.w)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Contour {
            branch: cuts.k,
            anchor: samples[0].re,
            samples,
            trimmed: false,
            shape: ContourShape::Free,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn principal() -> BranchIndex {
        BranchIndex::PRINCIPAL
    }

    #[test]
    fn vertical_contour_from_g_equal_one() {
        let c = build_vertical_contour(0, 1.0, 1.0, 2).unwrap();
        assert_eq!(c.samples.len(), 2);
        assert!((c.anchor - 2.0).abs() < 1e-12);
        let m = map_contour(&c).unwrap();
        assert!((m.image[0] - ComplexValue::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn vertical_contour_anchor_at_four() {
        let c = build_vertical_contour(0, 4.0, 2.0, 3).unwrap();
        let x = c.anchor;
        assert!((x - 3.664_032_797_206_446).abs() < 1e-12);
        assert_eq!(c.samples[1], ComplexValue::new(x, 1.0));
        assert_eq!(c.samples[2], ComplexValue::new(x, 2.0));
    }

    #[test]
    fn contour_just_above_branch_point() {
        let g0 = critical_point(0).unwrap();
        let c = build_vertical_contour(0, g0.gamma + 1e-3, 1.0, 2).unwrap();
        assert!(c.anchor > g0.psi && c.anchor - g0.psi < 0.1);
    }

    #[test]
    fn zero_height_maps_to_anchor_value() {
        let c = Contour::vertical(principal(), 3.0, 0.0, 5, Direction::Up).unwrap();
        let m = map_contour(&c).unwrap();
        assert_eq!(m.image.len(), 1);
        assert!((m.image[0].re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bad_contour_arguments() {
        assert!(Contour::vertical(principal(), 2.0, -1.0, 5, Direction::Up).is_err());
        assert!(Contour::vertical(principal(), 2.0, 1.0, 1, Direction::Up).is_err());
        assert!(build_vertical_contour(0, 0.5, 1.0, 5).is_err());
    }

    #[test]
    fn mirrored_contour_goes_down() {
        let c = build_vertical_contour_dir(0, 2.0, 1.0, 3, Direction::Down).unwrap();
        assert_eq!(c.samples[2].im, -1.0);
    }

    #[test]
    fn pole_on_contour() {
        let c = Contour::vertical(principal(), 0.0, 1.0, 3, Direction::Up).unwrap();
        assert!(matches!(map_contour(&c), Err(Error::Pole { .. })));
    }

    #[test]
    fn tall_contour_through_anchor_self_intersects() {
        let x = critical_point(0).unwrap().psi + 0.05;
        let c = Contour::vertical(principal(), x, 6.0, 400, Direction::Both).unwrap();
        assert_eq!(c.samples.len(), 799);
        let m = map_contour(&c).unwrap();
        assert!(m.self_intersection.is_some());
        let t = trim_contour(&c, &CutTarget::default()).unwrap();
        let tm = map_contour(&t).unwrap();
        assert!(tm.self_intersection.is_none());
        let (a, b) = (tm.image[0], *tm.image.last().unwrap());
        assert!(a.im.abs() <= 1e-3 && b.im.abs() <= 1e-3 && a.re < 0.0);
        assert!((a - b.conj()).norm() < 1e-9);
    }

    #[test]
    fn one_sided_contour_image_spirals_without_crossing_itself() {
        let x = critical_point(0).unwrap().psi + 0.05;
        let c = Contour::vertical(principal(), x, 12.0, 2000, Direction::Up).unwrap();
        let m = map_contour(&c).unwrap();
        assert!(m.self_intersection.is_none());
        let turns = m
            .image
            .windows(2)
            .filter(|p| p[0].im.signum() != p[1].im.signum())
            .count();
        assert!(turns >= 2);
    }

    #[test]
    fn trimmed_principal_contour_stops_on_negative_axis() {
        let cfg = AtlasConfig::default();
        let x = critical_point(0).unwrap().psi + 0.05;
        let c = trace_contour(principal(), x, Direction::Up, &cfg).unwrap();
        let m = map_contour(&c).unwrap();
        let end = *m.image.last().unwrap();
        assert!(end.im.abs() <= 1e-3);
        assert!(end.re < 0.0);
        assert!(m.self_intersection.is_none());
    }

    #[test]
    fn trimming_is_idempotent() {
        let cfg = AtlasConfig::default();
        let c = trace_contour(principal(), 3.0, Direction::Up, &cfg).unwrap();
        let again = trim_contour(&c, &cfg.target).unwrap();
        assert_eq!(again.samples, c.samples);
        assert!(again.trimmed);
    }

    #[test]
    fn exploratory_contour_is_trimmed_at_both_ends() {
        let cfg = AtlasConfig::default();
        let c = trace_contour(principal(), 1.0, Direction::Up, &cfg).unwrap();
        assert!(c.samples[0].im > 0.0);
        let m = map_contour(&c).unwrap();
        let (a, b) = (m.image[0], *m.image.last().unwrap());
        let g0 = critical_point(0).unwrap().gamma;
        assert!(a.im.abs() <= 1e-3 && a.re > 0.0 && a.re < g0, "{a}");
        assert!(b.im.abs() <= 1e-3 && b.re < 0.0, "{b}");
    }

    #[test]
    fn trim_failure_when_too_short_to_reach_axis() {
        let c = Contour::vertical(principal(), 3.0, 0.5, 20, Direction::Up).unwrap();
        assert!(matches!(
            trim_contour(&c, &CutTarget::default()),
            Err(Error::TrimFailure(_))
        ));
    }

    #[test]
    fn boundary_ends_at_branch_point() {
        let curves = branch_boundary(0, 16, Execution::Sequential).unwrap();
        assert_eq!(curves.len(), 4);
        let cp = critical_point(0).unwrap();
        // (0, gamma_0) from above: last sample is the preimage of gamma_0
        let last = *curves[2].samples.last().unwrap();
        assert!(
            (last - ComplexValue::new(cp.psi, 0.0)).norm() < 1e-9,
            "{last}"
        );
        for pair in curves.chunks(2) {
            for (a, b) in pair[0].samples.iter().zip(&pair[1].samples) {
                assert_eq!(*a, b.conj());
            }
        }
    }
}
