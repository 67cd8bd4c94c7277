use invgamma::critical::critical_point;
use invgamma::real::{
    branch_containing, real_gamma_domain, real_inv_gamma, stirling_inverse_approx, SolveConfig,
};
use invgamma::specfun::{digamma_real, gamma_real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 1000;

/// Lower and upper ends of the real range of branch `k`, and the pole inside it.
fn branch_range(k: i64) -> (f64, f64, Option<f64>) {
    let lo = critical_point(k).unwrap().psi;
    if k == 0 {
        (lo, 171.0, None)
    } else {
        (lo, critical_point(k + 1).unwrap().psi, Some(k as f64 + 1.0))
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, a: f64, b: f64) -> f64 {
    (rng.gen_range(a.ln()..b.ln())).exp()
}

/// `g` values on both sides of branch `k`'s real range. Far from the
/// extremum the span is limited to three decades, beyond which the solution
/// sits within a few ulps of a pole.
fn sample_g(k: i64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let own = critical_point(k).unwrap().gamma;
    (0..SAMPLES)
        .map(|i| {
            if k == 0 {
                log_uniform(rng, own, 1e300)
            } else if i % 2 == 0 {
                own.signum() * log_uniform(rng, own.abs(), 1e3 * own.abs())
            } else {
                let next = critical_point(k + 1).unwrap().gamma;
                next.signum() * log_uniform(rng, next.abs() * (1.0 + 1e-12), 1e3 * next.abs())
            }
        })
        .collect()
}

fn in_table_range(x: f64, k: i64) -> bool {
    let (lo, hi, pole) = branch_range(k);
    let upper = if k == 0 { x.is_finite() } else { x < hi };
    lo <= x && upper && (pole != Some(x))
}

#[test]
fn round_trip_from_values() {
    let cfg = SolveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..=5 {
        let k = -k;
        for g in sample_g(k, &mut rng) {
            let x = real_inv_gamma(g, k, &cfg).unwrap_or_else(|e| panic!("k = {k}, g = {g}: {e}"));
            let back = gamma_real(x).unwrap();
            assert!(
                (back - g).abs() <= 1e-10 * g.abs(),
                "k = {k}, g = {g}, x = {x}, back = {back}"
            );
            assert!(in_table_range(x, k), "k = {k}, g = {g}, x = {x}");
            assert!(
                real_gamma_domain(g, k).unwrap().contains(x),
                "k = {k}, g = {g}, x = {x}"
            );
        }
    }
}

#[test]
fn round_trip_from_arguments() {
    let cfg = SolveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..=5 {
        let k = -k;
        let (lo, hi, pole) = branch_range(k);
        for _ in 0..SAMPLES {
            let x = rng.gen_range(lo..hi);
            if pole == Some(x) {
                continue;
            }
            let b = branch_containing(x).unwrap();
            assert_eq!(b.get(), k);
            let g = gamma_real(x).unwrap();
            let back = real_inv_gamma(g, b.get(), &cfg).unwrap();
            assert!((back - x).abs() <= 1e-9, "k = {k}, x = {x}, back = {back}");
        }
    }
}

#[test]
fn monotone_on_each_piece() {
    let cfg = SolveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..=5 {
        let k = -k;
        let mut pieces: [Vec<(f64, f64)>; 2] = [Vec::new(), Vec::new()];
        for g in sample_g(k, &mut rng) {
            let x = real_inv_gamma(g, k, &cfg).unwrap();
            let side = usize::from(k != 0 && x > k as f64 + 1.0);
            pieces[side].push((g, x));
        }
        for piece in pieces.iter_mut().filter(|p| p.len() > 1) {
            piece.sort_by(|a, b| a.0.total_cmp(&b.0));
            piece.dedup_by(|a, b| a.0 == b.0);
            // direction predicted by the sign of Gamma' = Gamma Psi
            let (_, x0) = piece[0];
            let rising = gamma_real(x0).unwrap() * digamma_real(x0).unwrap() > 0.0;
            for w in piece.windows(2) {
                assert_eq!(w[1].1 > w[0].1, rising, "k = {k}: {:?}", w);
            }
        }
    }
}

#[test]
fn branches_meet_at_the_extremum() {
    let cfg = SolveConfig::default();
    let cp = critical_point(0).unwrap();
    let g = cp.gamma + 1e-6;
    let a = real_inv_gamma(g, 0, &cfg).unwrap();
    let b = real_inv_gamma(g, -1, &cfg).unwrap();
    assert!(a > cp.psi && b < cp.psi);
    assert!((a - cp.psi).abs() < 1e-2 && (b - cp.psi).abs() < 1e-2);
}

#[test]
fn seed_accuracy_for_large_arguments() {
    let cfg = SolveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..SAMPLES {
        let x = log_uniform(&mut rng, 6.0, 1e6);
        let est = stirling_inverse_approx(x).unwrap();
        let exact = real_inv_gamma(x, 0, &cfg).unwrap();
        assert!((est - exact).abs() <= 0.01, "x = {x}: {est} vs {exact}");
    }
}

#[test]
fn seed_error_just_above_a_hundredth_at_four() {
    let cfg = SolveConfig::default();
    let err = |x: f64| stirling_inverse_approx(x).unwrap() - real_inv_gamma(x, 0, &cfg).unwrap();
    assert!((err(4.0).abs() - 0.011_39).abs() < 1e-4);
    assert!(err(5.0).abs() > 0.01);
    assert!(err(6.0).abs() < 0.01);
}
