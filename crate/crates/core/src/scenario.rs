//! Scenario files and built-in presets.
//!
//! Scenario files are TOML. Top-level tables:
//!
//! | table                   | required | contents                                   |
//! |-------------------------|----------|--------------------------------------------|
//! | `[scenario]`            | yes      | [`LinkScenario`] fields                    |
//! | `[scenario.tx_antenna]` | yes      | [`AntennaConfig`] fields                   |
//! | `[tissue]`              | yes      | [`TissueProperties`] fields                |
//! | `[quadrature]`          | no       | [`QuadratureSpec`], defaults 361 / 1e-3    |
//! | `[[limits]]`            | no       | [`ComplianceLimit`] entries, default ICNIRP and FCC |
//! | `[search]`              | no       | [`SearchBracket`], default `[1e-3, 1] m`, tol 1e-5 m |
//! | `[sweep]`               | no       | `start_m`/`stop_m`/`points` or `distances_m` |
//!
//! Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::compliance::{builtin_limits, ComplianceLimit, SearchBracket};
use crate::error::{ensure_positive, Error, Result};
use crate::exposure::{QuadratureSpec, TissueProperties};
use crate::link::LinkScenario;

/// Distances at which a sweep is evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSweep", into = "RawSweep")]
pub enum SweepGrid {
    /// `points` evenly spaced distances from `start_m` to `stop_m` inclusive.
    Range { start_m: f64, stop_m: f64, points: usize },
    List(Vec<f64>),
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid::Range {
            start_m: 1e-3,
            stop_m: 5e-2,
            points: 50,
        }
    }
}

impl SweepGrid {
    pub fn distances(&self) -> Vec<f64> {
        match *self {
            SweepGrid::List(ref d) => d.clone(),
            SweepGrid::Range { start_m, points: 1, .. } => vec![start_m],
            SweepGrid::Range {
                start_m,
                stop_m,
                points,
            } => {
                let last = (points - 1) as f64;
                let mut d: Vec<f64> = (0..points)
                    .map(|i| start_m + (stop_m - start_m) * (i as f64 / last))
                    .collect();
                d[points - 1] = stop_m;
                d
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SweepGrid::Range {
                start_m,
                stop_m,
                points,
            } => {
                ensure_positive("sweep start_m", start_m)?;
                ensure_positive("sweep stop_m", stop_m)?;
                if points == 0 {
                    return Err(Error::invalid("sweep points", "must be >= 1"));
                }
                if points > 1 && start_m >= stop_m {
                    return Err(Error::invalid(
                        "sweep range",
                        format!("need start_m < stop_m, got {start_m} and {stop_m}"),
                    ));
                }
            }
            SweepGrid::List(ref d) => {
                if d.is_empty() {
                    return Err(Error::invalid("sweep distances_m", "needs at least one point"));
                }
                for &x in d {
                    ensure_positive("sweep distances_m entry", x)?;
                }
                if d.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::invalid("sweep distances_m", "must be strictly increasing"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stop_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    distances_m: Option<Vec<f64>>,
}

impl TryFrom<RawSweep> for SweepGrid {
    type Error = String;

    fn try_from(raw: RawSweep) -> std::result::Result<Self, String> {
        match raw {
            RawSweep {
                start_m: None,
                stop_m: None,
                points: None,
                distances_m: Some(d),
            } => Ok(SweepGrid::List(d)),
            RawSweep {
                start_m: Some(start_m),
                stop_m: Some(stop_m),
                points: Some(points),
                distances_m: None,
            } => Ok(SweepGrid::Range {
                start_m,
                stop_m,
                points,
            }),
            _ => Err("sweep needs either `distances_m` or all of `start_m`, `stop_m`, `points`".into()),
        }
    }
}

impl From<SweepGrid> for RawSweep {
    fn from(grid: SweepGrid) -> Self {
        match grid {
            SweepGrid::Range {
                start_m,
                stop_m,
                points,
            } => RawSweep {
                start_m: Some(start_m),
                stop_m: Some(stop_m),
                points: Some(points),
                distances_m: None,
            },
            SweepGrid::List(d) => RawSweep {
                distances_m: Some(d),
                ..RawSweep::default()
            },
        }
    }
}

/// A complete, validated simulation input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenario: LinkScenario,
    pub tissue: TissueProperties,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default = "builtin_limits")]
    pub limits: Vec<ComplianceLimit>,
    #[serde(default)]
    pub search: SearchBracket,
    #[serde(default)]
    pub sweep: SweepGrid,
}

impl ScenarioFile {
    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.tissue.validate()?;
        self.quadrature.validate()?;
        for limit in &self.limits {
            limit.validate()?;
        }
        self.search.validate()?;
        self.sweep.validate()
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Parses and validates scenario text.
pub fn load_scenario(text: &str) -> Result<ScenarioFile> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.validate()?;
    Ok(file)
}

pub fn load_scenario_path(path: impl AsRef<Path>) -> Result<ScenarioFile> {
    let text = std::fs::read_to_string(path)?;
    load_scenario(&text)
}

const PRESETS: &[(&str, &str)] = &[
    (
        "wearable-60ghz",
        include_str!("../scenarios/wearable-60ghz.toml"),
    ),
    (
        "wearable-2.4ghz",
        include_str!("../scenarios/wearable-2.4ghz.toml"),
    ),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(name, _)| *name)
}

/// Source text of a built-in preset.
pub fn preset_source(name: &str) -> Option<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, text)| *text)
}

pub fn preset(name: &str) -> Result<ScenarioFile> {
    let text = preset_source(name).ok_or_else(|| {
        let known: Vec<_> = preset_names().collect();
        Error::invalid(
            "preset",
            format!("unknown preset `{name}`, expected one of {}", known.join(", ")),
        )
    })?;
    load_scenario(text)
}
