//! Frozen reference values against independent oracles, and the crate
//! against those references.

mod common;

use common::frozen;
use optlattice::budget::{optimize_detuning, BudgetInput};
use optlattice::fom::{
    kappa_ellipsoid, kappa_quadrature, kappa_separated_wells, optimize_aspect_ratio,
    optimize_separation, QuadratureOptions,
};
use optlattice::motional::collision_probability;
use optlattice::PacketPair;

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[test]
fn oracle_reproduces_frozen_ellipsoid_value() {
    let k = common::near_field_kappa_oracle(SQRT2 * 0.05, SQRT2 * 0.1, 0.0);
    assert!((k - frozen::ELLIPSOID_KAPPA).abs() < 1e-3, "{k}");
    let lib = kappa_ellipsoid(0.05, 0.1).unwrap().kappa;
    assert!((lib - k).abs() < 1e-3 * k.abs());
}

#[test]
fn oracle_reproduces_frozen_separated_value() {
    let eta = 0.05;
    let k = common::near_field_kappa_oracle(SQRT2 * eta, SQRT2 * eta, 2.5 * eta);
    assert!((k - frozen::SEPARATED_KAPPA).abs() < 1e-3, "{k}");
    let lib = kappa_separated_wells(eta, 2.5).unwrap().kappa;
    assert!((lib - k).abs() < 1e-5 * k.abs());
}

#[test]
fn oracle_matches_prolate_and_oblate_closed_forms() {
    for (perp, par) in [(0.05, 0.02), (0.05, 0.06), (0.03, 0.2)] {
        let k = common::near_field_kappa_oracle(SQRT2 * perp, SQRT2 * par, 0.0);
        let lib = kappa_ellipsoid(perp, par).unwrap().kappa;
        assert!(
            (lib - k).abs() < 1e-5 * k.abs(),
            "({perp}, {par}): {lib} vs {k}"
        );
    }
}

#[test]
fn optimum_values_match_frozen() {
    let a = optimize_aspect_ratio(0.05).unwrap();
    assert!((a.argument - frozen::ASPECT_RATIO_OPT).abs() < 1e-5);
    assert!((a.fom.kappa.abs() * 0.05f64.powi(3) - frozen::ASPECT_C_KAPPA).abs() < 1e-7);
    let s = optimize_separation(0.05).unwrap();
    assert!((s.argument - frozen::SEPARATION_OPT).abs() < 1e-5);
    assert!((s.fom.kappa.abs() * 0.05f64.powi(3) - frozen::SEPARATION_C_KAPPA).abs() < 1e-7);
}

#[test]
fn separation_optimum_is_a_stationary_point() {
    let s = optimize_separation(0.05).unwrap();
    let h = 1e-4;
    let f = |d: f64| kappa_separated_wells(0.05, d).unwrap().kappa.abs();
    let slope = (f(s.argument + h) - f(s.argument - h)) / (2.0 * h);
    assert!(slope.abs() * h < 1e-6 * s.fom.kappa.abs(), "slope {slope}");
}

#[test]
fn quadrature_agrees_with_oracle_off_axis_geometry() {
    // a prolate relative density displaced along the axis: no closed form
    let pair = PacketPair::new([0.04, 0.04, 0.07], [0.04, 0.04, 0.07], 0.15).unwrap();
    let q = kappa_quadrature(&pair, 0, &QuadratureOptions::near_field()).unwrap();
    let k = common::near_field_kappa_oracle(SQRT2 * 0.04, SQRT2 * 0.07, 0.15);
    assert!((q.kappa - k).abs() < 1e-4 * k.abs(), "{} vs {k}", q.kappa);
}

#[test]
fn full_kernel_isotropic_mean_is_inverse_distance() {
    // only the intermediate-field term survives the angular average:
    // ⟨f_00⟩ → ⟨1/kr⟩ = √(2/π)/σ_rel up to O(kr)
    let eta = 0.02;
    let pair = PacketPair::separated(eta, 0.0).unwrap();
    let r = kappa_quadrature(&pair, 0, &QuadratureOptions::default()).unwrap();
    let sigma = SQRT2 * eta;
    let leading = (2.0 / std::f64::consts::PI).sqrt() / sigma;
    assert!((r.mean_f.unwrap() / leading - 1.0).abs() < 1e-3);
}

#[test]
fn budget_optimum_matches_stationary_point() {
    let input = BudgetInput::cesium_example();
    let r = optimize_detuning(&input).unwrap();
    // independent: minimum of A x^{3/4} + B x^{-3/2} is at x = (2B/A)^{4/9}
    let a = r.p_catalysis / r.optimal_detuning.powf(0.75);
    let b = r.p_lattice * r.optimal_detuning.powf(1.5);
    let x = (2.0 * b / a).powf(4.0 / 9.0);
    assert!((x / frozen::CS_DETUNING - 1.0).abs() < 1e-5);
    assert!((1.5 * a * x.powf(0.75) / frozen::CS_RATE_SUM_MIN - 1.0).abs() < 1e-5);
    assert!((r.optimal_detuning / x - 1.0).abs() < 1e-8);
}

#[test]
fn collision_matches_monte_carlo_spot_check() {
    for (d, a) in [(1.0, 1.5), (3.0, 2.0)] {
        let n = 2_000_000;
        let mc = common::collision_monte_carlo(d, a, n, 11);
        let p = collision_probability(d, a).unwrap();
        assert!(
            (mc - p).abs() < 4.0 * common::binomial_se(p, n as f64),
            "({d}, {a}): {mc} vs {p}"
        );
    }
}

#[test]
fn collision_at_zero_separation_matches_radial_integral() {
    for a in [0.3, 1.0, 2.5, 6.0] {
        let oracle = common::radial_cdf_oracle(a);
        assert!((collision_probability(0.0, a).unwrap() - oracle).abs() < 1e-12);
    }
}
