use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument or configuration record violates its contract.
    #[error("invalid {what}: {reason}")]
    InvalidInput { what: &'static str, reason: String },

    #[error(
        "quadrature did not converge: {samples} samples gave {coarse:e}, \
         {refined_samples} samples gave {refined:e} (relative change {relative_change:e} > {tolerance:e})"
    )]
    NonConvergence {
        samples: usize,
        refined_samples: usize,
        coarse: f64,
        refined: f64,
        relative_change: f64,
        tolerance: f64,
    },

    #[error(
        "limit {limit_w_per_kg} W/kg is not reached inside the search range: \
         SAR at {d_hi_m} m is {sar_at_hi_w_per_kg:e} W/kg"
    )]
    LimitUnreachable {
        limit_w_per_kg: f64,
        d_hi_m: f64,
        sar_at_hi_w_per_kg: f64,
    },

    #[error("scenario parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            what,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::LimitUnreachable { .. }
        )
    }
}

pub(crate) fn ensure_finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::invalid(what, format!("must be finite, got {value}")))
    }
}

pub(crate) fn ensure_positive(what: &'static str, value: f64) -> Result<f64> {
    ensure_finite(what, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(what, format!("must be > 0, got {value}")))
    }
}

pub(crate) fn ensure_non_negative(what: &'static str, value: f64) -> Result<f64> {
    ensure_finite(what, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(what, format!("must be >= 0, got {value}")))
    }
}
