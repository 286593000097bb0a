//! Free-space retarded dipole-dipole interaction tensor `T = f + i g` as a
//! function of the dimensionless separation `k_L r`.
//!
//! Normalization: `g → δ_ij` as `k_L r → 0` (Dicke limit) and
//! `f_00 (k_L r)³ → 3 P₂(cos θ)`, so two π dipoles placed head-to-tail along
//! the quantization axis have `f_00 > 0` and a negative (attractive) level
//! shift `V_dd = -(ħΓ/2) f_00`.

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::units::spherical_unit;

/// Real 3×3 tensor in Cartesian components.
pub type Tensor3 = [[f64; 3]; 3];
/// Complex 3×3 tensor.
pub type ComplexTensor3 = [[Complex64; 3]; 3];

/// Relative position of two atoms in units of `1/k_L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeCoordinate {
    pub kr_vector: [f64; 3],
    pub kr: f64,
    /// Polar angle from the z (quantization) axis.
    pub theta: f64,
}

impl RelativeCoordinate {
    pub fn from_vector(kr_vector: [f64; 3]) -> Result<Self> {
        let kr = kr_vector.iter().map(|c| c * c).sum::<f64>().sqrt();
        if kr.is_nan() || kr <= 0.0 || !kr.is_finite() {
            return Err(invalid("kr", kr, "kernel diverges at zero separation"));
        }
        let theta = (kr_vector[2] / kr).clamp(-1.0, 1.0).acos();
        Ok(Self {
            kr_vector,
            kr,
            theta,
        })
    }

    /// Point at distance `kr` and polar angle `theta` in the x-z plane.
    pub fn polar(kr: f64, theta: f64) -> Result<Self> {
        Self::from_vector([kr * theta.sin(), 0.0, kr * theta.cos()])
    }

    pub fn unit(&self) -> [f64; 3] {
        self.kr_vector.map(|c| c / self.kr)
    }
}

/// Kernel value `f + i g` at one separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub f: Tensor3,
    pub g: Tensor3,
}

impl KernelSample {
    /// Spherical component `f_qq' = e_q* · f · e_q'`.
    pub fn f_spherical(&self, q: i32, q_prime: i32) -> Complex64 {
        spherical_element(&self.f, q, q_prime)
    }

    /// Spherical component `g_qq' = e_q* · g · e_q'`.
    pub fn g_spherical(&self, q: i32, q_prime: i32) -> Complex64 {
        spherical_element(&self.g, q, q_prime)
    }

    pub fn complex(&self) -> ComplexTensor3 {
        let mut t = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = Complex64::new(self.f[i][j], self.g[i][j]);
            }
        }
        t
    }
}

/// Radial profiles of the kernel: transverse `(δ - r̂r̂)` and longitudinal
/// `(δ - 3r̂r̂)` coefficients of `f` and `g`.
#[derive(Debug, Clone, Copy)]
struct Radial {
    f_transverse: f64,
    f_quadrupole: f64,
    g_transverse: f64,
    g_quadrupole: f64,
}

fn radial(x: f64) -> Radial {
    let (s, c) = x.sin_cos();
    let x2 = x * x;
    // cos x/x² - sin x/x³, cancels catastrophically near zero.
    let b = if x < 0.1 {
        -1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0 + x2 * x2 * x2 / 45_360.0
    } else {
        c / x2 - s / (x2 * x)
    };
    Radial {
        f_transverse: 1.5 * c / x,
        f_quadrupole: -1.5 * (s / x2 + c / (x2 * x)),
        g_transverse: 1.5 * s / x,
        g_quadrupole: 1.5 * b,
    }
}

/// Evaluates the interaction tensor at `coord`.
pub fn kernel_at(coord: &RelativeCoordinate) -> KernelSample {
    let r = radial(coord.kr);
    let u = coord.unit();
    let mut f = [[0.0; 3]; 3];
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            let uu = u[i] * u[j];
            let transverse = delta - uu;
            let quadrupole = delta - 3.0 * uu;
            f[i][j] = r.f_transverse * transverse + r.f_quadrupole * quadrupole;
            g[i][j] = r.g_transverse * transverse + r.g_quadrupole * quadrupole;
        }
    }
    KernelSample { f, g }
}

/// Diagonal spherical components `(f_qq, g_qq)` at separation `kr` and polar
/// angle with `cos θ = cos_theta`. These depend on θ only, since
/// `|r̂ · e_{±1}|² = sin²θ/2` and `|r̂ · e_0|² = cos²θ`.
pub fn diagonal_components(kr: f64, cos_theta: f64, q: i32) -> (f64, f64) {
    let r = radial(kr);
    let proj = match q {
        0 => cos_theta * cos_theta,
        1 | -1 => 0.5 * (1.0 - cos_theta * cos_theta),
        _ => panic!("spherical index must be -1, 0 or +1, got {q}"),
    };
    let transverse = 1.0 - proj;
    let quadrupole = 1.0 - 3.0 * proj;
    (
        r.f_transverse * transverse + r.f_quadrupole * quadrupole,
        r.g_transverse * transverse + r.g_quadrupole * quadrupole,
    )
}

/// Near-field (`k_L r ≪ 1`) diagonal components: `f_qq` keeps only the
/// `(k_L r)⁻³` term and `g_qq ≡ 1`.
pub fn near_field_diagonal(kr: f64, cos_theta: f64, q: i32) -> (f64, f64) {
    let proj = match q {
        0 => cos_theta * cos_theta,
        1 | -1 => 0.5 * (1.0 - cos_theta * cos_theta),
        _ => panic!("spherical index must be -1, 0 or +1, got {q}"),
    };
    (-1.5 * (1.0 - 3.0 * proj) / (kr * kr * kr), 1.0)
}

fn spherical_element(t: &Tensor3, q: i32, q_prime: i32) -> Complex64 {
    let a = spherical_unit(q);
    let b = spherical_unit(q_prime);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        for j in 0..3 {
            acc += a[i].conj() * t[i][j] * b[j];
        }
    }
    acc
}

/// Index of `q ∈ {-1, 0, +1}` in spherical-basis arrays.
pub fn spherical_index(q: i32) -> usize {
    match q {
        -1 => 0,
        0 => 1,
        1 => 2,
        _ => panic!("spherical index must be -1, 0 or +1, got {q}"),
    }
}

const Q_ORDER: [i32; 3] = [-1, 0, 1];

/// Unitary change of basis to spherical components, ordered `q = -1, 0, +1`:
/// `S_qq' = e_q† T e_q'`.
pub fn spherical_from_cartesian(t: &ComplexTensor3) -> ComplexTensor3 {
    let mut s = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (a, &q) in Q_ORDER.iter().enumerate() {
        let eq = spherical_unit(q);
        for (b, &qp) in Q_ORDER.iter().enumerate() {
            let eqp = spherical_unit(qp);
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..3 {
                for j in 0..3 {
                    acc += eq[i].conj() * t[i][j] * eqp[j];
                }
            }
            s[a][b] = acc;
        }
    }
    s
}

/// Inverse of [`spherical_from_cartesian`]: `T_ij = Σ (e_q)_i S_qq' (e_q')_j*`.
pub fn cartesian_from_spherical(s: &ComplexTensor3) -> ComplexTensor3 {
    let mut t = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, &q) in Q_ORDER.iter().enumerate() {
                let eq = spherical_unit(q);
                for (b, &qp) in Q_ORDER.iter().enumerate() {
                    let eqp = spherical_unit(qp);
                    acc += eq[i] * s[a][b] * eqp[j].conj();
                }
            }
            *v = acc;
        }
    }
    t
}

/// Promotes a real tensor to complex.
pub fn complexify(t: &Tensor3) -> ComplexTensor3 {
    t.map(|row| row.map(|v| Complex64::new(v, 0.0)))
}
