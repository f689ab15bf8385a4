//! Regulatory SAR limits, minimum safe separation and distance sweeps.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::exposure::{AveragedExposure, ExposureResult, QuadratureSpec, TissueProperties};
use crate::link::{fspl_db, shannon_rate_bps, LinkScenario};
use crate::quadrature::ordered_map;
use crate::units::linear_to_db;

/// A named SAR threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplianceLimit {
    pub name: String,
    pub sar_limit_w_per_kg: f64,
    #[serde(default)]
    pub averaging_mass_note: String,
}

impl ComplianceLimit {
    pub fn new(name: impl Into<String>, sar_limit_w_per_kg: f64, note: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            sar_limit_w_per_kg,
            averaging_mass_note: note.into(),
        }
    }

    pub fn icnirp() -> Self {
        Self::new("ICNIRP", 2.0, "10-g SAR, 10-10000 MHz")
    }

    pub fn fcc() -> Self {
        Self::new("FCC", 1.6, "1-g SAR, 0.1-6000 MHz")
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("compliance sar_limit_w_per_kg", self.sar_limit_w_per_kg).map(|_| ())
    }
}

pub fn builtin_limits() -> Vec<ComplianceLimit> {
    vec![ComplianceLimit::icnirp(), ComplianceLimit::fcc()]
}

/// Resolves `spec` as a limit name (case-insensitive, searched in `known`
/// and then the built-ins) or as a numeric W/kg value.
pub fn resolve_limit(spec: &str, known: &[ComplianceLimit]) -> Result<ComplianceLimit> {
    let spec = spec.trim();
    let found = known
        .iter()
        .cloned()
        .chain(builtin_limits())
        .find(|l| l.name.eq_ignore_ascii_case(spec));
    if let Some(limit) = found {
        return Ok(limit);
    }
    match spec.parse::<f64>() {
        Ok(value) => {
            let limit = ComplianceLimit::new(format!("{value} W/kg"), value, "custom");
            limit.validate()?;
            Ok(limit)
        }
        Err(_) => Err(Error::invalid(
            "limit",
            format!("`{spec}` is neither a known limit name nor a number"),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchBracket {
    pub d_lo: f64,
    pub d_hi: f64,
    pub tol_m: f64,
}

impl Default for SearchBracket {
    fn default() -> Self {
        Self {
            d_lo: 1e-3,
            d_hi: 1.0,
            tol_m: 1e-5,
        }
    }
}

impl SearchBracket {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("search d_lo", self.d_lo)?;
        ensure_positive("search d_hi", self.d_hi)?;
        ensure_positive("search tol_m", self.tol_m)?;
        if self.d_lo >= self.d_hi {
            return Err(Error::invalid(
                "search bracket",
                format!("need d_lo < d_hi, got [{}, {}]", self.d_lo, self.d_hi),
            ));
        }
        Ok(())
    }

    /// Upper bound on bisection steps: `ceil(log2((d_hi - d_lo) / tol)) + 1`.
    pub fn max_iterations(&self) -> u32 {
        let ratio = (self.d_hi - self.d_lo) / self.tol_m;
        ratio.log2().ceil().max(0.0) as u32 + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SafeDistance {
    /// The limit already holds at `d_lo`.
    CompliantEverywhere,
    /// Smallest compliant distance, within `tol_m` above the true crossing.
    Distance { meters: f64, iterations: u32 },
}

impl SafeDistance {
    pub fn meters(&self) -> Option<f64> {
        match *self {
            SafeDistance::CompliantEverywhere => None,
            SafeDistance::Distance { meters, .. } => Some(meters),
        }
    }
}

/// Bisection for the first point where a strictly decreasing `f` drops to
/// `threshold` or below. Returns the compliant end of the final bracket.
pub fn bisect_decreasing<F>(f: F, threshold: f64, bracket: &SearchBracket) -> Result<SafeDistance>
where
    F: Fn(f64) -> Result<f64>,
{
    bracket.validate()?;
    if f(bracket.d_lo)? <= threshold {
        return Ok(SafeDistance::CompliantEverywhere);
    }
    let at_hi = f(bracket.d_hi)?;
    if at_hi > threshold {
        return Err(Error::LimitUnreachable {
            limit_w_per_kg: threshold,
            d_hi_m: bracket.d_hi,
            sar_at_hi_w_per_kg: at_hi,
        });
    }
    // Invariant: f(lo) > threshold >= f(hi).
    let (mut lo, mut hi) = (bracket.d_lo, bracket.d_hi);
    let mut iterations = 0;
    while hi - lo > bracket.tol_m {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? <= threshold {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(SafeDistance::Distance {
        meters: hi,
        iterations,
    })
}

/// Smallest antenna/skin distance in the bracket at which the angle-averaged
/// SAR satisfies `limit`.
pub fn min_safe_distance(
    scenario: &LinkScenario,
    tissue: &TissueProperties,
    limit: &ComplianceLimit,
    search: &SearchBracket,
    quadrature: &QuadratureSpec,
) -> Result<SafeDistance> {
    limit.validate()?;
    search.validate()?;
    let exposure = AveragedExposure::new(scenario, tissue, quadrature)?;
    bisect_decreasing(|d| exposure.avg_sar(d), limit.sar_limit_w_per_kg, search)
}

fn check_distances(distances: &[f64]) -> Result<()> {
    for &d in distances {
        ensure_positive("sweep distance", d)?;
    }
    if let Some(w) = distances.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::invalid(
            "sweep distances",
            format!("must be strictly increasing, got {} then {}", w[0], w[1]),
        ));
    }
    Ok(())
}

fn evaluate_row(
    scenario: &LinkScenario,
    exposure: &AveragedExposure,
    distance_m: f64,
) -> Result<ExposureResult> {
    let antenna = &scenario.tx_antenna;
    let snr_lin = scenario.snr_linear(
        distance_m,
        antenna.boresight_elevation_deg,
        antenna.boresight_azimuth_deg,
    )?;
    let snr_db = linear_to_db(snr_lin);
    Ok(ExposureResult {
        distance_m,
        path_loss_db: fspl_db(distance_m, scenario.carrier_mhz)?,
        snr_db,
        rate_bps: shannon_rate_bps(scenario.bandwidth_hz, snr_db)?,
        boresight_pd_w_per_m2: exposure.boresight_pd(distance_m)?,
        boresight_sar_w_per_kg: exposure.boresight_sar(distance_m)?,
        avg_sar_w_per_kg: exposure.avg_sar(distance_m)?,
    })
}

/// One [`ExposureResult`] per distance, in input order. Link quantities and
/// the boresight columns use the antenna boresight direction.
pub fn sweep(
    scenario: &LinkScenario,
    tissue: &TissueProperties,
    distances: &[f64],
    quadrature: &QuadratureSpec,
) -> Result<Vec<ExposureResult>> {
    if distances.is_empty() {
        return Ok(Vec::new());
    }
    check_distances(distances)?;
    let exposure = AveragedExposure::new(scenario, tissue, quadrature)?;
    ordered_map(distances, |&d| evaluate_row(scenario, &exposure, d))
        .into_iter()
        .collect()
}
