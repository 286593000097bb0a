//! Two-qubit gate algebra: selection rules for the dipole-dipole coupling,
//! the degenerate leakage manifold of overlapping spherical wells, the
//! stretched-state √SWAP interaction matrix and its exact evolution, and the
//! CPHASE / CNOT timing and fidelity.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use nalgebra::{DMatrix, Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{invalid, require_non_negative, require_positive, Result};
use crate::fom::FomResult;
use crate::motional::{shell_states, OscillatorState};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Hyperfine ground state `|F, M_F⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InternalState {
    pub f: u32,
    pub m_f: i32,
}

impl InternalState {
    pub fn new(f: u32, m_f: i32) -> Result<Self> {
        if m_f.unsigned_abs() > f {
            return Err(invalid("m_f", m_f as f64, "|m_f| must not exceed f"));
        }
        Ok(Self { f, m_f })
    }
}

impl fmt::Display for InternalState {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "F={},M={}", self.f, self.m_f)
    }
}

/// Product state of two atoms, each with a hyperfine and a vibrational label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoAtomState {
    pub internal_a: InternalState,
    pub internal_b: InternalState,
    pub motion_a: OscillatorState,
    pub motion_b: OscillatorState,
}

impl TwoAtomState {
    /// Both atoms in `internal`, with the given vibrational states.
    pub fn with_motion(internal: InternalState, a: OscillatorState, b: OscillatorState) -> Self {
        Self {
            internal_a: internal,
            internal_b: internal,
            motion_a: a,
            motion_b: b,
        }
    }

    fn total_m_f(&self) -> i32 {
        self.internal_a.m_f + self.internal_b.m_f
    }

    fn total_m(&self) -> i32 {
        self.motion_a.m + self.motion_b.m
    }

    fn total_quanta(&self) -> u32 {
        self.motion_a.quanta() + self.motion_b.quanta()
    }

    /// Same state with the atoms exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            internal_a: self.internal_b,
            internal_b: self.internal_a,
            motion_a: self.motion_b,
            motion_b: self.motion_a,
        }
    }
}

impl fmt::Display for TwoAtomState {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}⊗{}", self.motion_a, self.motion_b)
    }
}

/// Whether the catalysis-mediated coupling (absorb `q`, emit `q_prime`)
/// connects `initial` to `final_state`: total `M_F` shifts by `q - q'`, the
/// vibrational `m` total by `∓(q - q')`, and mechanical energy is conserved.
pub fn selection_allowed(
    initial: &TwoAtomState,
    final_state: &TwoAtomState,
    q: i32,
    q_prime: i32,
) -> bool {
    if !(-1..=1).contains(&q) || !(-1..=1).contains(&q_prime) {
        return false;
    }
    let dq = q - q_prime;
    let magnetic = final_state.total_m_f() == initial.total_m_f() + dq;
    let dm = final_state.total_m() - initial.total_m();
    let motional = dm == dq || dm == -dq;
    let energy = final_state.total_quanta() == initial.total_quanta();
    magnetic && motional && energy
}

/// All vibrational product states degenerate with `state` and reachable
/// under `(q, q')`, the input included. Internal states are held fixed, so
/// `q ≠ q'` yields an empty set.
pub fn enumerate_leakage(state: &TwoAtomState, q: i32, q_prime: i32) -> Vec<TwoAtomState> {
    let total = state.total_quanta();
    let mut out = Vec::new();
    for quanta_a in 0..=total {
        for a in shell_states(quanta_a) {
            for b in shell_states(total - quanta_a) {
                let candidate = TwoAtomState {
                    internal_a: state.internal_a,
                    internal_b: state.internal_b,
                    motion_a: a,
                    motion_b: b,
                };
                if selection_allowed(state, &candidate, q, q_prime) {
                    out.push(candidate);
                }
            }
        }
    }
    out
}

/// Interaction Hamiltonian on a logical basis plus leakage states.
#[derive(Debug, Clone, PartialEq)]
pub struct GateModel {
    /// Four logical states `|00⟩, |01⟩, |10⟩, |11⟩` followed by leakage states.
    pub basis: Vec<TwoAtomState>,
    /// Hermitian matrix in units of `ħχ`.
    pub v_matrix: DMatrix<Complex64>,
    /// Interaction scale in units of Γ.
    pub chi: f64,
    /// Cooperative decay rate in units of Γ, when known.
    pub gamma_tot: Option<f64>,
}

impl GateModel {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|s| s.to_string()).collect()
    }

    /// Sets `Γ_tot = χ/|κ|`.
    pub fn with_figure_of_merit(mut self, kappa: f64) -> Result<Self> {
        if kappa == 0.0 || !kappa.is_finite() {
            return Err(invalid("kappa", kappa, "must be finite and nonzero"));
        }
        self.gamma_tot = Some(self.chi / kappa.abs());
        Ok(self)
    }

    /// Largest `|V - V†|` entry.
    pub fn hermiticity_error(&self) -> f64 {
        max_abs(&(&self.v_matrix - self.v_matrix.adjoint()))
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn ket(n: u32, l: u32, m: i32) -> OscillatorState {
    OscillatorState::new(n, l, m).expect("valid oscillator label")
}

/// Stretched-state √SWAP model on the basis
/// `|00⟩, |01⟩, |10⟩, |11⟩, |022⟩⊗|000⟩, |000⟩⊗|022⟩`, where logical 0 is
/// `|000⟩` and logical 1 is `|011⟩`. `internal` labels both atoms and does not
/// enter the matrix.
pub fn build_swap_model(chi: f64, internal: InternalState) -> Result<GateModel> {
    require_positive("chi", chi)?;
    let zero = ket(0, 0, 0);
    let one = ket(0, 1, 1);
    let stretched = ket(0, 2, 2);
    let basis = vec![
        TwoAtomState::with_motion(internal, zero, zero),
        TwoAtomState::with_motion(internal, zero, one),
        TwoAtomState::with_motion(internal, one, zero),
        TwoAtomState::with_motion(internal, one, one),
        TwoAtomState::with_motion(internal, stretched, zero),
        TwoAtomState::with_motion(internal, zero, stretched),
    ];
    let mut v = DMatrix::from_element(6, 6, ZERO);
    v[(1, 1)] = re(1.75);
    v[(2, 2)] = re(1.75);
    v[(1, 2)] = re(-1.75);
    v[(2, 1)] = re(-1.75);
    v[(3, 3)] = ONE;
    for k in [4, 5] {
        v[(3, k)] = re(-FRAC_1_SQRT_2);
        v[(k, 3)] = re(-FRAC_1_SQRT_2);
        v[(k, k)] = re(2.25);
    }
    v[(4, 5)] = re(-1.25);
    v[(5, 4)] = re(-1.25);
    Ok(GateModel {
        basis,
        v_matrix: v,
        chi,
        gamma_tot: None,
    })
}

/// `exp(-i V t)` for a Hermitian `V` (already scaled to rate units).
pub fn hermitian_exp(v: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(v.clone());
    let phases = DMatrix::from_diagonal(
        &eig.eigenvalues
            .map(|lambda| Complex64::from_polar(1.0, -lambda * t)),
    );
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Propagator `exp(-i V_dd t/ħ)` after time `t` in units of `1/Γ`.
pub fn evolve(model: &GateModel, t: f64) -> Result<DMatrix<Complex64>> {
    require_non_negative("t", t)?;
    Ok(hermitian_exp(&model.v_matrix, model.chi * t))
}

/// Largest entry of `U†U - I`.
pub fn unitarity_error(u: &DMatrix<Complex64>) -> f64 {
    let n = u.nrows();
    max_abs(&(u.adjoint() * u - DMatrix::identity(n, n)))
}

/// The √SWAP propagator at the recurrence time and its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtSwapGate {
    pub model: GateModel,
    /// `π/χ` in units of `1/Γ`.
    pub tau: f64,
    pub propagator: DMatrix<Complex64>,
    /// Propagator restricted to the logical basis.
    pub logical: Matrix4<Complex64>,
    /// Amplitude `⟨11|U|11⟩`.
    pub phase_11: Complex64,
    /// The same amplitude with the leakage couplings removed, `e^{-iπ}`.
    pub phase_11_without_leakage: Complex64,
    /// Largest population outside the logical basis over logical inputs.
    pub leakage: f64,
    pub unitarity_error: f64,
}

impl SqrtSwapGate {
    /// The `|01⟩, |10⟩` block.
    pub fn middle_block(&self) -> Matrix2<Complex64> {
        self.logical.fixed_view::<2, 2>(1, 1).into_owned()
    }
}

/// Evolves the stretched-state model for `τ = π/χ`.
pub fn sqrt_swap_gate(chi: f64, internal: InternalState) -> Result<SqrtSwapGate> {
    let model = build_swap_model(chi, internal)?;
    let tau = PI / chi;
    let u = evolve(&model, tau)?;
    let logical = Matrix4::from_fn(|i, j| u[(i, j)]);
    let leakage = (0..4)
        .map(|j| (4..u.nrows()).map(|i| u[(i, j)].norm_sqr()).sum::<f64>())
        .fold(0.0, f64::max);
    let unitarity = unitarity_error(&u);
    Ok(SqrtSwapGate {
        phase_11: u[(3, 3)],
        phase_11_without_leakage: Complex64::from_polar(1.0, -model.v_matrix[(3, 3)].re * PI),
        model,
        tau,
        propagator: u,
        logical,
        leakage,
        unitarity_error: unitarity,
    })
}

/// Ideal `e^{iπ/4}/√2 [[1, -i], [-i, 1]]`.
pub fn ideal_sqrt_swap_block() -> Matrix2<Complex64> {
    let s = Complex64::from_polar(FRAC_1_SQRT_2, PI / 4.0);
    let mi = Complex64::new(0.0, -1.0);
    Matrix2::new(s, s * mi, s * mi, s)
}

/// Diagonal CPHASE timing and success probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CphaseGate {
    /// `π/χ` in units of `1/Γ`.
    pub tau: f64,
    /// Cooperative decay rate `χ/|κ|` in units of Γ.
    pub gamma_tot: f64,
    /// Phases acquired by `|00⟩, |01⟩, |10⟩, |11⟩`.
    pub phases: [Complex64; 4],
    /// `exp(-Γ_tot τ) = exp(-π/|κ|)`.
    pub success_probability: f64,
}

impl CphaseGate {
    pub fn unitary(&self) -> Matrix4<Complex64> {
        Matrix4::from_diagonal(&self.phases.into())
    }
}

/// CPHASE from a figure of merit and the level shift `χ = |⟨V_dd⟩|/ħ` (units Γ).
pub fn cphase_gate(kappa: &FomResult, chi: f64) -> Result<CphaseGate> {
    let k = kappa.kappa;
    if k == 0.0 || !k.is_finite() {
        return Err(invalid(
            "kappa",
            k,
            "zero interaction gives an infinite gate time",
        ));
    }
    require_positive("chi", chi)?;
    let tau = PI / chi;
    let gamma_tot = chi / k.abs();
    Ok(CphaseGate {
        tau,
        gamma_tot,
        phases: [ONE, ONE, ONE, -ONE],
        success_probability: (-gamma_tot * tau).exp(),
    })
}

pub fn hadamard() -> Matrix2<Complex64> {
    Matrix2::new(ONE, ONE, ONE, -ONE) * re(FRAC_1_SQRT_2)
}

/// `a ⊗ b` with the first factor as the more significant index.
pub fn kron(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// `(1 ⊗ H) · cphase · (1 ⊗ H)`, target on the second qubit.
pub fn compose_cnot(cphase: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let h_target = kron(&Matrix2::identity(), &hadamard());
    h_target * cphase * h_target
}

pub fn ideal_cnot() -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    m[(0, 0)] = ONE;
    m[(1, 1)] = ONE;
    m[(2, 3)] = ONE;
    m[(3, 2)] = ONE;
    m
}

/// Phase-insensitive overlap `|Tr(target† U)|² / 16`.
pub fn gate_fidelity(u: &Matrix4<Complex64>, target: &Matrix4<Complex64>) -> f64 {
    (target.adjoint() * u).trace().norm_sqr() / 16.0
}
