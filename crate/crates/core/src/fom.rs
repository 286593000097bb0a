//! Dipole-dipole figure of merit `κ = ⟨V_dd⟩ / ⟨ħΓ_tot⟩`.
//!
//! Closed forms cover overlapping ellipsoidal wells, separated spherical
//! wells and the stretched-state √SWAP encoding; a three-dimensional
//! quadrature over the relative-coordinate density evaluates the same ratio
//! with the full retarded kernel. Sign convention: `κ < 0` for densities
//! elongated along the polarization axis.

use std::f64::consts::PI;

use crate::error::{invalid, require_non_negative, require_positive, Error, Result};
use crate::kernel::{diagonal_components, near_field_diagonal};
use crate::motional::{relative_gaussian, PacketPair};
use crate::optimize::golden_section_max;
use crate::quadrature::GaussLegendre;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FomMethod {
    ClosedForm,
    Quadrature,
    /// Quadrature with the kernel truncated to its `(k_L r)⁻³` term and `g ≡ 1`.
    NearFieldQuadrature,
}

impl FomMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FomMethod::ClosedForm => "closed-form",
            FomMethod::Quadrature => "quadrature",
            FomMethod::NearFieldQuadrature => "near-field-quadrature",
        }
    }
}

/// Convergence record of a quadrature evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    /// Refinement levels used (each doubles radial and angular nodes).
    pub levels: usize,
    /// Change in κ between the last two refinements.
    pub error_estimate: f64,
    /// Absolute floor below which two estimates of `⟨f_qq⟩` are equal.
    pub abs_tolerance: f64,
    /// Integrated density, ideally 1.
    pub norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FomResult {
    pub kappa: f64,
    /// `κ η³` for the protocol's reference Lamb-Dicke parameter.
    pub c_kappa: Option<f64>,
    pub mean_f: Option<f64>,
    pub mean_g: Option<f64>,
    pub method: FomMethod,
    pub quadrature: Option<QuadratureReport>,
}

impl FomResult {
    fn closed_form(kappa: f64, eta_ref: f64) -> Self {
        Self {
            kappa,
            c_kappa: Some(kappa * eta_ref.powi(3)),
            mean_f: None,
            mean_g: None,
            method: FomMethod::ClosedForm,
            quadrature: None,
        }
    }

    /// Assembles `κ = -⟨f_qq⟩ / (2(1 + ⟨g_qq⟩))`.
    pub fn from_means(mean_f: f64, mean_g: f64, method: FomMethod) -> Self {
        Self {
            kappa: -mean_f / (2.0 * (1.0 + mean_g)),
            c_kappa: None,
            mean_f: Some(mean_f),
            mean_g: Some(mean_g),
            method,
            quadrature: None,
        }
    }

    /// Probability that no catalysis photon is scattered during the π phase.
    pub fn success_probability(&self) -> f64 {
        (-PI / self.kappa.abs()).exp()
    }
}

/// Gate geometry with a closed-form figure of merit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Protocol {
    Ellipsoid { eta_perp: f64, eta_par: f64 },
    SeparatedWells { eta: f64, dz_bar: f64 },
    Swap { eta: f64 },
}

impl Protocol {
    pub fn kappa(&self) -> Result<FomResult> {
        match *self {
            Protocol::Ellipsoid { eta_perp, eta_par } => kappa_ellipsoid(eta_perp, eta_par),
            Protocol::SeparatedWells { eta, dz_bar } => kappa_separated_wells(eta, dz_bar),
            Protocol::Swap { eta } => kappa_swap(eta),
        }
    }
}

// ---------------------------------------------------------------------------
// Closed forms

/// `B(w)` with `w = (η_⊥/η_∥)² - 1`:
/// `-2 - 3/w + 3(1 + w) A(w)/w` where `A(w) = atan(√w)/√w`, continued to
/// `artanh(√-w)/√-w` for prolate wells.
fn ellipsoid_bracket(w: f64) -> f64 {
    if w.abs() < 0.2 {
        ellipsoid_bracket_series(w)
    } else {
        ellipsoid_bracket_direct(w)
    }
}

fn ellipsoid_bracket_series(w: f64) -> f64 {
    // Σ_{k≥2} (-1)^{k+1} 6 w^{k-1} / ((2k+1)(2k-1))
    let mut sum = 0.0;
    let mut wp = w;
    for k in 2..80u32 {
        let kf = k as f64;
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        let term = sign * 6.0 * wp / ((2.0 * kf + 1.0) * (2.0 * kf - 1.0));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        wp *= w;
    }
    sum
}

fn ellipsoid_bracket_direct(w: f64) -> f64 {
    let a = if w > 0.0 {
        w.sqrt().atan() / w.sqrt()
    } else {
        (-w).sqrt().atanh() / (-w).sqrt()
    };
    -2.0 - 3.0 / w + 3.0 * (1.0 + w) * a / w
}

/// Two atoms in the ground state of one axially symmetric well.
///
/// `κ = -(1/(16√π η_⊥² η_∥)) B` in the near-field approximation, with
/// `c_κ = κ η_⊥³`. Vanishes for a spherical well.
pub fn kappa_ellipsoid(eta_perp: f64, eta_par: f64) -> Result<FomResult> {
    require_positive("eta_perp", eta_perp)?;
    require_positive("eta_par", eta_par)?;
    let ratio = eta_par / eta_perp;
    let w = 1.0 / (ratio * ratio) - 1.0;
    let kappa = -ellipsoid_bracket(w) / (16.0 * PI.sqrt() * eta_perp * eta_perp * eta_par);
    Ok(FomResult::closed_form(kappa, eta_perp))
}

/// `κ η³` for separated spherical wells as a function of `Δz̄ = Δz/x_0`.
fn separated_bracket(d: f64) -> f64 {
    if d < 1.0 {
        separated_bracket_series(d)
    } else {
        separated_bracket_direct(d)
    }
}

fn separated_bracket_series(d: f64) -> f64 {
    // √π h = Σ_{m≥1} (-1)^m m x^m / (4 m! (2m+3)),  x = d²/4
    let x = d * d / 4.0;
    let mut sum = 0.0;
    let mut x_pow_over_fact = 1.0;
    for m in 1..60u32 {
        let mf = m as f64;
        x_pow_over_fact *= x / mf;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * mf * x_pow_over_fact / (4.0 * (2.0 * mf + 3.0));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum / PI.sqrt()
}

fn separated_bracket_direct(d: f64) -> f64 {
    let sqrt_pi = PI.sqrt();
    let e = (-(d / 2.0) * (d / 2.0)).exp();
    e / sqrt_pi * (0.125 + 0.75 / (d * d)) - 3.0 * libm::erf(d / 2.0) / (4.0 * d * d * d)
}

/// Two spherical ground-state packets of Lamb-Dicke parameter `eta` in wells
/// `dz_bar · x_0` apart along the polarization axis.
pub fn kappa_separated_wells(eta: f64, dz_bar: f64) -> Result<FomResult> {
    require_positive("eta", eta)?;
    require_non_negative("dz_bar", dz_bar)?;
    let kappa = separated_bracket(dz_bar) / eta.powi(3);
    Ok(FomResult::closed_form(kappa, eta))
}

/// `c_κ = 1/(140√π)` of the stretched-state √SWAP encoding.
pub fn swap_c_kappa() -> f64 {
    1.0 / (140.0 * PI.sqrt())
}

/// Both atoms in `|n=0, l=1, m=1⟩` of a common spherical well. The relative
/// density is oblate, so κ is positive in this convention.
pub fn kappa_swap(eta: f64) -> Result<FomResult> {
    require_positive("eta", eta)?;
    Ok(FomResult::closed_form(swap_c_kappa() / eta.powi(3), eta))
}

// ---------------------------------------------------------------------------
// Quadrature

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Relative change in κ between refinements accepted as converged.
    pub rel_tol: f64,
    /// Gauss-Legendre order per radial panel.
    pub radial_order: usize,
    /// Gauss-Legendre order per polar half-interval at level 0.
    pub polar_order: usize,
    /// Trapezoid points in φ at level 0 (used only for non-axisymmetric densities).
    pub azimuthal_points: usize,
    pub max_levels: usize,
    pub near_field: bool,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-3,
            radial_order: 16,
            polar_order: 16,
            azimuthal_points: 16,
            max_levels: 6,
            near_field: false,
        }
    }
}

impl QuadratureOptions {
    pub fn near_field() -> Self {
        Self {
            near_field: true,
            ..Self::default()
        }
    }
}

/// `⟨f_qq⟩`, `⟨g_qq⟩` and the integrated norm at one refinement level.
fn kernel_means(
    pair: &PacketPair,
    q: i32,
    level: usize,
    opts: &QuadratureOptions,
) -> (f64, f64, f64) {
    let rel = relative_gaussian(pair);
    let s_min = rel.widths.iter().copied().fold(f64::INFINITY, f64::min);
    let s_max = rel.widths.iter().copied().fold(0.0, f64::max);
    let mu = rel.mean[2];
    let r_min = 1e-6 * s_min;
    let r_max = mu.abs() + 12.0 * s_max;
    let refine = (1usize << level) as f64;

    // Radial panels in u = ln r, no wider than s_min/2 in r.
    let mut breaks = vec![r_min.ln()];
    let u_end = r_max.ln();
    while *breaks.last().unwrap() < u_end {
        let u = *breaks.last().unwrap();
        let du = (0.5_f64).min(0.5 * s_min / u.exp()) / refine;
        breaks.push((u + du).min(u_end));
    }

    let radial = GaussLegendre::new(opts.radial_order);
    let polar = GaussLegendre::new(opts.polar_order << level);
    let axisymmetric = rel.widths[0] == rel.widths[1];
    let n_phi = if axisymmetric {
        1
    } else {
        opts.azimuthal_points << level
    };

    let inv_var = rel.widths.map(|w| 0.5 / (w * w));
    let norm = (2.0 * PI).powf(1.5) * rel.widths.iter().product::<f64>();

    // Polar nodes on [-1, 0] and [0, 1].
    let polar_nodes: Vec<(f64, f64)> = polar
        .mapped(-1.0, 0.0)
        .chain(polar.mapped(0.0, 1.0))
        .collect();

    let mut sum_f = 0.0;
    let mut sum_g = 0.0;
    let mut sum_1 = 0.0;
    for pair_u in breaks.windows(2) {
        for (u, wu) in radial.mapped(pair_u[0], pair_u[1]) {
            let r = u.exp();
            let jac = r * r * r * wu;
            for &(c, wc) in &polar_nodes {
                let s = (1.0 - c * c).max(0.0).sqrt();
                let (f, g) = if opts.near_field {
                    near_field_diagonal(r, c, q)
                } else {
                    diagonal_components(r, c, q)
                };
                let dz = r * c - mu;
                let axial = dz * dz * inv_var[2];
                let mut angular = 0.0;
                if axisymmetric {
                    let rho = (-(r * s) * (r * s) * inv_var[0] - axial).exp();
                    angular = 2.0 * PI * rho;
                } else {
                    let dphi = 2.0 * PI / n_phi as f64;
                    for k in 0..n_phi {
                        let (sp, cp) = (dphi * k as f64).sin_cos();
                        let x = r * s * cp;
                        let y = r * s * sp;
                        angular += (-x * x * inv_var[0] - y * y * inv_var[1] - axial).exp();
                    }
                    angular *= dphi;
                }
                let w = jac * wc * angular / norm;
                sum_f += w * f;
                sum_g += w * g;
                sum_1 += w;
            }
        }
    }
    (sum_f / sum_1, sum_g / sum_1, sum_1)
}

/// Figure of merit by direct integration of the kernel over the relative
/// coordinate density of `pair`, for catalysis polarization `e_q`.
///
/// Refines until κ changes by less than `rel_tol` between levels; otherwise
/// returns the last two estimates in the error.
pub fn kappa_quadrature(pair: &PacketPair, q: i32, opts: &QuadratureOptions) -> Result<FomResult> {
    if !matches!(q, -1..=1) {
        return Err(invalid("polarization_q", q as f64, "must be -1, 0 or +1"));
    }
    require_positive("rel_tol", opts.rel_tol)?;
    let rel = relative_gaussian(pair);
    let s_min = rel.widths.iter().copied().fold(f64::INFINITY, f64::min);
    let f_scale = 3.0 / s_min.powi(3);
    let abs_tol_f = 1e-10 * f_scale;
    let method = if opts.near_field {
        FomMethod::NearFieldQuadrature
    } else {
        FomMethod::Quadrature
    };

    let (mut f_prev, mut g_prev, _) = kernel_means(pair, q, 0, opts);
    let mut kappa_prev = FomResult::from_means(f_prev, g_prev, method).kappa;
    for level in 1..=opts.max_levels {
        let (f, g, norm) = kernel_means(pair, q, level, opts);
        let result = FomResult::from_means(f, g, method);
        let change = (result.kappa - kappa_prev).abs();
        let converged_f = (f - f_prev).abs() <= opts.rel_tol * f.abs() + abs_tol_f;
        let converged_g = (g - g_prev).abs() <= opts.rel_tol * g.abs().max(1e-12);
        if change <= opts.rel_tol * result.kappa.abs() + abs_tol_f / 4.0
            && converged_f
            && converged_g
        {
            return Ok(FomResult {
                quadrature: Some(QuadratureReport {
                    levels: level,
                    error_estimate: change,
                    abs_tolerance: abs_tol_f,
                    norm,
                }),
                ..result
            });
        }
        f_prev = f;
        g_prev = g;
        if level == opts.max_levels {
            return Err(Error::QuadratureNonConvergence {
                last: result.kappa,
                previous: kappa_prev,
            });
        }
        kappa_prev = result.kappa;
    }
    unreachable!("loop returns on its last level")
}

// ---------------------------------------------------------------------------
// Geometry optimization

/// Best geometry parameter and the figure of merit there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub argument: f64,
    pub fom: FomResult,
}

const RATIO_DOMAIN: (f64, f64) = (1.01, 10.0);
const SEPARATION_DOMAIN: (f64, f64) = (1e-3, 20.0);

/// Maximizes `|κ|` of [`kappa_ellipsoid`] over `η_∥/η_⊥` at fixed `η_⊥`.
pub fn optimize_aspect_ratio(eta_perp: f64) -> Result<Optimum> {
    require_positive("eta_perp", eta_perp)?;
    let best = golden_section_max(
        |ratio| {
            kappa_ellipsoid(eta_perp, ratio * eta_perp)
                .map(|r| r.kappa.abs())
                .unwrap_or(f64::NEG_INFINITY)
        },
        RATIO_DOMAIN.0,
        RATIO_DOMAIN.1,
        1e-9,
        300,
    )?;
    Ok(Optimum {
        argument: best.x,
        fom: kappa_ellipsoid(eta_perp, best.x * eta_perp)?,
    })
}

/// Maximizes `|κ|` of [`kappa_separated_wells`] over `Δz̄ ∈ (0, 20]`.
pub fn optimize_separation(eta: f64) -> Result<Optimum> {
    require_positive("eta", eta)?;
    let best = golden_section_max(
        |d| separated_bracket(d).abs(),
        SEPARATION_DOMAIN.0,
        SEPARATION_DOMAIN.1,
        1e-9,
        300,
    )?;
    Ok(Optimum {
        argument: best.x,
        fom: kappa_separated_wells(eta, best.x)?,
    })
}
