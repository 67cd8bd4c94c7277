use invgamma::complex::{
    inv_gamma_complex, inv_gamma_complex_detailed, strip_index, Closure, Strip,
};
use invgamma::critical::critical_point;
use invgamma::real::SolveConfig;
use invgamma::specfun::{gamma, ComplexValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample_strip(k: i64, rng: &mut ChaCha8Rng) -> ComplexValue {
    let s = Strip::for_branch(k).unwrap();
    let hi = if s.hi.is_finite() { s.hi } else { s.lo + 6.0 };
    ComplexValue::new(rng.gen_range(s.lo..hi), rng.gen_range(-4.0..4.0))
}

#[test]
fn conjugate_symmetry_off_the_cuts() {
    let cfg = SolveConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 500 {
        let k = if checked % 2 == 0 { 0 } else { -1 };
        let z = gamma(sample_strip(k, &mut rng)).unwrap();
        if z.im == 0.0 {
            continue;
        }
        let up = inv_gamma_complex(z, k, &cfg).unwrap();
        let down = inv_gamma_complex(z.conj(), k, &cfg).unwrap();
        assert!(
            (down - up.conj()).norm() <= 1e-10,
            "z = {z}: {up} vs {down}"
        );
        checked += 1;
    }
}

#[test]
fn distinct_points_have_distinct_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for i in 0..10_000 {
        let k = if i % 2 == 0 { 0 } else { -1 };
        let w1 = sample_strip(k, &mut rng);
        let w2 = sample_strip(k, &mut rng);
        if (w1 - w2).norm() <= 1e-3 {
            continue;
        }
        let (g1, g2) = (gamma(w1).unwrap(), gamma(w2).unwrap());
        assert!(
            (g1 - g2).norm() > 1e-12 * g1.norm().max(g2.norm()),
            "{w1} and {w2}"
        );
    }
}

#[test]
fn equal_values_inside_the_principal_strip() {
    let a = ComplexValue::new(3.0, 4.0);
    let b = ComplexValue::new(1.814_995_017_0, -2.502_487_601_0);
    let s = Strip::for_branch(0).unwrap();
    assert!(s.contains(a) && s.contains(b));
    let (ga, gb) = (gamma(a).unwrap(), gamma(b).unwrap());
    assert!((ga - gb).norm() < 1e-9 * ga.norm(), "{ga} vs {gb}");
}

#[test]
fn imaginary_part_keeps_its_sign_up_the_critical_line() {
    for k in [0, -1] {
        let psi = critical_point(k).unwrap().psi;
        let sign = gamma(ComplexValue::new(psi, 0.01)).unwrap().im.signum();
        for j in 1..=400 {
            let eta = 0.01 * j as f64;
            let v = gamma(ComplexValue::new(psi, eta)).unwrap().im;
            assert_eq!(v.signum(), sign, "k = {k}, eta = {eta}");
        }
    }
}

#[test]
fn imaginary_part_changes_sign_higher_up_the_critical_line() {
    for (k, eta) in [(0, 4.2), (-1, 4.2)] {
        let psi = critical_point(k).unwrap().psi;
        let low = gamma(ComplexValue::new(psi, 0.01)).unwrap().im;
        let high = gamma(ComplexValue::new(psi, eta)).unwrap().im;
        assert!(low * high < 0.0, "k = {k}");
    }
}

#[test]
fn branches_meet_across_the_extremum() {
    let cfg = SolveConfig::default();
    let cp = critical_point(0).unwrap();
    for delta in [1e-2, 1e-3, 1e-4] {
        let right = ComplexValue::new(cp.gamma + delta, 0.0);
        let w0 = inv_gamma_complex(right, 0, &cfg).unwrap();
        let w1 = inv_gamma_complex(right, -1, &cfg).unwrap();
        assert_eq!(strip_index(w0).unwrap().get(), 0);
        assert_eq!(strip_index(w1).unwrap().get(), -1);
        let bound = 4.0 * delta.sqrt();
        assert!((w0 - cp.psi).norm() < bound && (w1 - cp.psi).norm() < bound);

        // on the cut to the left, branch 0 from below continues branch -1 from above
        let left = ComplexValue::new(cp.gamma - delta, 0.0);
        let below = inv_gamma_complex_detailed(left, 0, Closure::Below, &cfg)
            .unwrap()
            .w;
        let above = inv_gamma_complex_detailed(left, -1, Closure::Above, &cfg)
            .unwrap()
            .w;
        assert!((below - above).norm() < 1e-9, "{below} vs {above}");
        assert!((below - cp.psi).norm() < bound);
    }
}
