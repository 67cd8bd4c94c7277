use invgamma::critical::{critical_point, critical_table};
use invgamma::specfun::{digamma_real, gamma_real};

const TABLE: [(i64, f64, f64); 6] = [
    (0, 1.461632, 0.885603),
    (-1, -0.504083, -3.544644),
    (-2, -1.573498, 2.302407),
    (-3, -2.610720, -0.888136),
    (-4, -3.635293, 0.245127),
    (-5, -4.653237, -0.052780),
];

#[test]
fn matches_published_table() {
    for &(k, psi, g) in &TABLE {
        let cp = critical_point(k).unwrap();
        assert!((cp.psi - psi).abs() <= 1e-6, "psi_{k} = {}", cp.psi);
        assert!((cp.gamma - g).abs() <= 1e-6, "gamma_{k} = {}", cp.gamma);
    }
}

#[test]
fn digamma_changes_sign_across_each_zero() {
    for cp in critical_table(-40).unwrap() {
        let lo = digamma_real(cp.psi - 1e-6).unwrap();
        let hi = digamma_real(cp.psi + 1e-6).unwrap();
        assert!(lo * hi < 0.0, "k = {}", cp.k);
    }
}

#[test]
fn derivative_of_gamma_vanishes() {
    for cp in critical_table(-40).unwrap() {
        let d = gamma_real(cp.psi).unwrap() * digamma_real(cp.psi).unwrap();
        assert!(d.abs() <= 1e-10, "k = {}: {d:e}", cp.k);
    }
}

#[test]
fn extremal_values_shrink_beyond_second_branch() {
    let t = critical_table(-40).unwrap();
    let mags: Vec<f64> = t
        .iter()
        .filter(|c| c.k.get() <= -2)
        .map(|c| c.gamma.abs())
        .collect();
    assert!(mags.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn each_zero_lies_in_its_cell() {
    for cp in critical_table(-40).unwrap().into_iter().skip(1) {
        let k = cp.k.get() as f64;
        assert!(k < cp.psi && cp.psi < k + 1.0);
    }
}
