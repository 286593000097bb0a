//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod common;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use optlattice::assay::{estimate_error, expected_counts, simulate, AssayConfig};
use optlattice::budget::{
    closed_form_detuning, closed_form_min_error, optimize_detuning, BudgetInput,
};
use optlattice::fom::{
    kappa_ellipsoid, kappa_quadrature, kappa_separated_wells, kappa_swap, optimize_aspect_ratio,
    optimize_separation, QuadratureOptions,
};
use optlattice::gates::{
    build_swap_model, enumerate_leakage, evolve, ideal_sqrt_swap_block, sqrt_swap_gate,
    unitarity_error, InternalState, TwoAtomState,
};
use optlattice::motional::collision_probability;
use optlattice::units::{derive_trap, AtomSpecies, LatticeConfig};
use optlattice::{OscillatorState, PacketPair};
use rayon::prelude::*;

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<(String, bool)>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Self {
            id,
            title,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.checks.push((detail, ok));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn report(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(d, _)| d.as_str())
            .collect();
        if failed.is_empty() {
            format!(
                "{status} criterion {:>2}: {} ({} checks)",
                self.id,
                self.title,
                self.checks.len()
            )
        } else {
            format!(
                "{status} criterion {:>2}: {} | failed: {}",
                self.id,
                self.title,
                failed.join("; ")
            )
        }
    }
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new(1, "ellipsoidal-well kappa");
    let k = kappa_ellipsoid(0.05, 0.1).unwrap().kappa;
    c.check(
        within(k.abs(), 67.6, 0.5),
        format!("|kappa| = {k} vs 67.6 ± 0.5"),
    );
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new(2, "aspect-ratio optimum");
    let best = optimize_aspect_ratio(0.05).unwrap();
    c.check(
        within(best.argument, 2.18, 0.05),
        format!("ratio* = {} vs 2.18 ± 0.05", best.argument),
    );
    let ck = best.fom.kappa.abs() * 0.05f64.powi(3);
    c.check(
        within(ck, 8.5e-3, 2e-4),
        format!("|kappa*| eta^3 = {ck} vs 8.5e-3 ± 2e-4"),
    );
    for eta in [0.02, 0.1] {
        let other = optimize_aspect_ratio(eta).unwrap().argument;
        c.check(
            within(other, best.argument, 1e-4),
            format!(
                "ratio*({eta}) = {other} vs ratio*(0.05) = {} within 1e-4",
                best.argument
            ),
        );
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new(3, "separated-well kappa");
    let best = optimize_separation(0.05).unwrap();
    c.check(
        within(best.argument, 2.5, 0.05),
        format!("dz* = {} vs 2.5 ± 0.05", best.argument),
    );
    let ck = best.fom.kappa.abs() * 0.05f64.powi(3);
    c.check(
        within(ck, 0.0153, 0.0005),
        format!("|kappa*| eta^3 = {ck} vs 0.0153 ± 5e-4"),
    );
    c.check(
        within(best.fom.kappa.abs(), 123.0, 2.0),
        format!("|kappa*|(0.05) = {} vs 123 ± 2", best.fom.kappa.abs()),
    );
    let far = kappa_separated_wells(0.01, 20.0).unwrap().kappa / (-0.75 / (20.0f64 * 0.01).powi(3));
    c.check(
        within(far, 1.0, 0.01),
        format!("far-field ratio = {far} vs 1 ± 0.01"),
    );
    let near = kappa_separated_wells(0.01, 0.01).unwrap().kappa
        / (-(0.01f64.powi(2)) / (80.0 * PI.sqrt() * 0.01f64.powi(3)));
    c.check(
        within(near, 1.0, 0.01),
        format!("small-separation ratio = {near} vs 1 ± 0.01"),
    );
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new(4, "stretched-state sqrt(SWAP) kappa");
    let k = kappa_swap(0.05).unwrap().kappa.abs();
    c.check(within(k, 32.2, 0.1), format!("|kappa| = {k} vs 32.2 ± 0.1"));
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new(5, "quadrature vs closed form");
    for eta in [0.05, 0.02] {
        for dz in [1.0, 2.5, 5.0] {
            let pair = PacketPair::separated(eta, dz).unwrap();
            let q = kappa_quadrature(&pair, 0, &QuadratureOptions::near_field())
                .unwrap()
                .kappa;
            let cf = kappa_separated_wells(eta, dz).unwrap().kappa;
            let rel = (q / cf - 1.0).abs();
            c.check(
                rel < 0.01,
                format!("near-field (eta {eta}, dz {dz}): rel diff {rel:.2e} < 1%"),
            );
        }
    }
    let best = optimize_separation(0.05).unwrap();
    let pair = PacketPair::separated(0.05, best.argument).unwrap();
    let full = kappa_quadrature(&pair, 0, &QuadratureOptions::default()).unwrap();
    let rel = (full.kappa / best.fom.kappa - 1.0).abs();
    c.check(
        rel < 0.05,
        format!("full kernel at optimum: rel diff {rel:.3} < 5%"),
    );
    let iso = kappa_quadrature(
        &PacketPair::separated(0.05, 0.0).unwrap(),
        0,
        &QuadratureOptions::near_field(),
    )
    .unwrap();
    let f = iso.mean_f.unwrap().abs();
    let tol = iso.quadrature.unwrap().abs_tolerance;
    c.check(
        f <= tol,
        format!("isotropic |<f_00>| = {f:.1e} <= tolerance {tol:.1e}"),
    );
    c
}

fn ket(n: u32, l: u32, m: i32) -> OscillatorState {
    OscillatorState::new(n, l, m).unwrap()
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new(6, "gate algebra");
    let internal = InternalState::new(4, 4).unwrap();
    let chi = 1.3;
    let gate = sqrt_swap_gate(chi, internal).unwrap();
    let mid_err = (gate.middle_block() - ideal_sqrt_swap_block()).norm();
    c.check(
        mid_err < 1e-10,
        format!("middle block error {mid_err:.1e} < 1e-10"),
    );
    let phase_err = (gate.phase_11 + Complex64::new(1.0, 0.0)).norm();
    c.check(
        phase_err < 1e-10,
        format!(
            "<11|U|11> = {:.12} {:+.1e}i vs -1 to 1e-10 (error {phase_err:.2})",
            gate.phase_11.re, gate.phase_11.im
        ),
    );
    let recurrence = gate.propagator[(3, 3)].norm_sqr();
    c.check(
        (recurrence - 1.0).abs() < 1e-10,
        format!("|011>|011> population at tau = {recurrence} vs 1 within 1e-10"),
    );
    let model = build_swap_model(chi, internal).unwrap();
    let mut dark = nalgebra::DVector::from_element(6, Complex64::new(0.0, 0.0));
    dark[4] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    dark[5] = Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut worst_dark: f64 = 0.0;
    let mut worst_unitary: f64 = 0.0;
    for k in 0..50 {
        let t = 0.173 * k as f64;
        let u: DMatrix<Complex64> = evolve(&model, t).unwrap();
        let pop = (dark.adjoint() * &u * &dark)[(0, 0)].norm_sqr();
        worst_dark = worst_dark.max((pop - 1.0).abs());
        worst_unitary = worst_unitary.max(unitarity_error(&u));
    }
    c.check(
        worst_dark < 1e-12,
        format!("dark-state population drift {worst_dark:.1e} < 1e-12"),
    );
    c.check(
        worst_unitary < 1e-12,
        format!("unitarity error {worst_unitary:.1e} < 1e-12"),
    );
    let start = TwoAtomState::with_motion(internal, ket(0, 1, 0), ket(0, 1, 0));
    let found = enumerate_leakage(&start, 0, 0);
    let expected = [
        (ket(0, 1, 0), ket(0, 1, 0)),
        (ket(1, 0, 0), ket(0, 0, 0)),
        (ket(0, 0, 0), ket(1, 0, 0)),
        (ket(0, 2, 0), ket(0, 0, 0)),
        (ket(0, 0, 0), ket(0, 2, 0)),
        (ket(0, 1, 1), ket(0, 1, -1)),
        (ket(0, 1, -1), ket(0, 1, 1)),
    ];
    let exact = found.len() == 7
        && expected
            .iter()
            .all(|&(a, b)| found.contains(&TwoAtomState::with_motion(internal, a, b)));
    c.check(
        exact,
        format!("leakage set has {} states, 7 expected", found.len()),
    );
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new(7, "error budget");
    let input = BudgetInput::cesium_example();
    let r = optimize_detuning(&input).unwrap();
    c.check(
        within(r.p_total, 0.085, 0.005),
        format!("P* = {} vs 0.085 ± 0.005", r.p_total),
    );
    c.check(
        (r.optimal_detuning / 5.8e3 - 1.0).abs() <= 0.10,
        format!("detuning* = {} vs 5.8e3 ± 10%", r.optimal_detuning),
    );
    let dp = (r.p_rate_sum / closed_form_min_error(&input) - 1.0).abs();
    c.check(
        dp < 0.02,
        format!("numerical minimum vs closed-form P: {dp:.4} < 2%"),
    );
    let dd = (r.optimal_detuning / closed_form_detuning(&input) - 1.0).abs();
    c.check(
        dd < 0.02,
        format!("numerical vs closed-form detuning: {dd:.1e} < 2%"),
    );
    let ratio = r.p_catalysis / r.p_lattice;
    c.check(
        within(ratio, 2.0, 0.02),
        format!("P_c/P_L = {ratio} vs 2 ± 1%"),
    );
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new(8, "trap derivations");
    let cs = AtomSpecies::cesium();
    let deep = LatticeConfig::new(1.0, 1e4).unwrap().with_well_depth(1e4);
    let trap = derive_trap(&cs, &deep).unwrap();
    c.check(
        within(trap.omega_osc, 200.0, 1e-12),
        format!("hbar omega_osc = {} E_R vs 200", trap.omega_osc),
    );
    c.check(
        within(trap.lamb_dicke, 200f64.sqrt().recip(), 1e-15)
            && within(trap.lamb_dicke, 0.0707, 5e-5),
        format!("eta = {} vs 0.0707", trap.lamb_dicke),
    );
    // 500 W/cm² standing-wave peak = 4 I_1; Cs I_sat = 1.1 mW/cm²
    let single_beam = 500.0 / 4.0 / 1.1e-3;
    let detuning = 50e9 / cs.linewidth_hz;
    let example = derive_trap(&cs, &LatticeConfig::new(single_beam, detuning).unwrap()).unwrap();
    let rate = example.scatter_rate_si();
    c.check(
        (60.0..=75.0).contains(&rate),
        format!("Gamma' = {rate} s^-1 in [60, 75]"),
    );
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new(9, "collision probability");
    let samples = 10_000_000u64;
    let grid: Vec<(f64, f64)> = [0.5, 1.0, 2.5, 4.0, 6.0]
        .iter()
        .flat_map(|&d| [0.5, 1.0, 2.0, 3.0, 5.0].map(|a| (d, a)))
        .collect();
    let results: Vec<(f64, f64, f64, f64)> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &(d, a))| {
            let mc = common::collision_monte_carlo(d, a, samples, 1000 + i as u64);
            (d, a, mc, collision_probability(d, a).unwrap())
        })
        .collect();
    for (d, a, mc, p) in results {
        let se = common::binomial_se(p, samples as f64);
        c.check(
            (mc - p).abs() <= 3.0 * se,
            format!(
                "(dz {d}, a {a}): MC {mc} vs {p}, |diff| {:.2e} > 3 SE {:.2e}",
                (mc - p).abs(),
                3.0 * se
            ),
        );
    }
    for a in [0.3, 1.0, 2.0, 4.0] {
        let limit = libm::erf(a / 2.0) - a / PI.sqrt() * (-a * a / 4.0).exp();
        let near = collision_probability(1e-7, a).unwrap();
        c.check(
            (near - limit).abs() < 1e-8,
            format!("dz -> 0 at a {a}: {near} vs {limit}"),
        );
    }
    c
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::new(10, "assay");
    for p in [0.01, 0.05, 0.1, 0.3] {
        let record = expected_counts(&AssayConfig::new(1000, p, 0.5, 3).unwrap()).unwrap();
        let est = estimate_error(&record).unwrap();
        c.check(
            (est - p).abs() < 1e-12,
            format!("deterministic P = {p}: estimate {est}"),
        );
    }
    let n = 100_000u64;
    let (p, alpha) = (0.1, 0.5);
    let record = simulate(&AssayConfig::new(n, p, alpha, 3).unwrap().with_seed(2024)).unwrap();
    let est = estimate_error(&record).unwrap();
    let first = n as f64 * (1.0 - p + alpha * p);
    let se = common::binomial_se(p, first);
    c.check(
        (est - p).abs() <= 3.0 * se,
        format!(
            "stochastic N = 1e5: estimate {est}, 3 SE = {:.1e}",
            3.0 * se
        ),
    );
    c
}

fn main() {
    let criteria = [
        criterion_1 as fn() -> Criterion,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failures = 0;
    for run in criteria {
        let c = run();
        println!("{}", c.report());
        if !c.passed() {
            failures += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
