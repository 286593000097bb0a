use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("inconsistent geometry: {0}")]
    InconsistentGeometry(&'static str),

    #[error("{0} is undefined for these inputs")]
    Undefined(&'static str),

    #[error("quadrature did not converge within budget (last {last}, previous {previous})")]
    QuadratureNonConvergence { last: f64, previous: f64 },

    #[error("optimizer did not converge: bracket [{lo}, {hi}] after {iterations} iterations")]
    OptimizerNonConvergence { lo: f64, hi: f64, iterations: usize },

    #[error("optimum at search boundary {at} (domain [{lo}, {hi}])")]
    OptimumAtBoundary { at: f64, lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}

/// Rejects NaN and non-positive values.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(invalid(name, value, "must be finite and > 0"))
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(invalid(name, value, "must be finite and >= 0"))
    }
}
