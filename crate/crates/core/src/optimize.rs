//! Deterministic one-dimensional searches.

use crate::error::{Error, Result};

/// Result of a bracketed scalar search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `x_tol`.
pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    x_tol: f64,
    max_iter: usize,
) -> Result<Extremum> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for it in 0..max_iter {
        if (b - a).abs() <= x_tol {
            let (x, value) = if fc < fd { (c, fc) } else { (d, fd) };
            return Ok(Extremum {
                x,
                value,
                iterations: it,
            });
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    Err(Error::OptimizerNonConvergence {
        lo: a,
        hi: b,
        iterations: max_iter,
    })
}

/// Golden-section search for the maximum of `f`.
pub fn golden_section_max<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    x_tol: f64,
    max_iter: usize,
) -> Result<Extremum> {
    golden_section_min(|x| -f(x), lo, hi, x_tol, max_iter).map(|e| Extremum {
        value: -e.value,
        ..e
    })
}

/// Scans `points` samples to locate the best grid cell, then refines it by
/// golden section. Returns `OptimumAtBoundary` when the grid minimum sits on
/// an end of the domain.
pub fn scan_then_refine_min<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    points: usize,
    x_tol: f64,
) -> Result<Extremum> {
    let points = points.max(3);
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for i in 0..points {
        let v = f(lo + step * i as f64);
        if v < best_val {
            best_val = v;
            best = i;
        }
    }
    if best == 0 || best == points - 1 {
        return Err(Error::OptimumAtBoundary {
            at: lo + step * best as f64,
            lo,
            hi,
        });
    }
    let a = lo + step * (best - 1) as f64;
    let b = lo + step * (best + 1) as f64;
    golden_section_min(f, a, b, x_tol, 500)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_minimum() {
        let e = golden_section_min(|x| (x - 1.3).powi(2) + 2.0, -4.0, 7.0, 1e-10, 200).unwrap();
        assert!((e.x - 1.3).abs() < 1e-7);
        assert!((e.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn max_is_negated_min() {
        let e = golden_section_max(|x| -(x - 0.2).powi(2), -1.0, 1.0, 1e-10, 200).unwrap();
        assert!((e.x - 0.2).abs() < 1e-9);
        assert!(e.value <= 0.0 && e.value > -1e-18);
    }

    #[test]
    fn reports_non_convergence() {
        let err = golden_section_min(|x| x * x, -1.0, 1.0, 1e-30, 5).unwrap_err();
        assert!(matches!(err, Error::OptimizerNonConvergence { .. }));
    }

    #[test]
    fn scan_flags_boundary_optimum() {
        let err = scan_then_refine_min(|x| x, 0.0, 1.0, 50, 1e-9).unwrap_err();
        assert!(matches!(err, Error::OptimumAtBoundary { .. }));
    }
}
