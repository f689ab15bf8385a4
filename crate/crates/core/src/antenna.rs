//! Transmit antenna gain patterns.
//!
//! Two pattern families cover the wearable archetypes:
//!
//! * [`PatternModel::ParabolicEnvelope`]: a beamwidth/sidelobe-floor envelope,
//!   `G = Gmax - min(12 (dθ/θ3dB)^2 + 12 (dφ/θ3dB)^2, Am)`. With
//!   [`AntennaConfig::omni_azimuth`] set, the azimuth term is dropped and the
//!   gain depends on elevation only.
//! * [`PatternModel::LinearArrayFactor`]: a uniform linear array of `N`
//!   elements with spacing `δ` wavelengths,
//!   `G = Gmax + 20 log10(|AF_N(dθ)| / N)` floored at `Gmax - Am`, where
//!   `AF_N = sin(N π δ sin dθ) / sin(π δ sin dθ)`.
//!
//! Offsets `dθ`, `dφ` are taken from the configured boresight and wrapped to
//! `[-180°, 180°)`. Angles are degrees at the API, radians inside.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_non_negative, ensure_positive, Error, Result};
use crate::units::{db_to_linear, wrap_degrees};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternModel {
    ParabolicEnvelope,
    LinearArrayFactor,
}

fn default_spacing() -> f64 {
    0.5
}

fn default_theta_3db() -> f64 {
    93.0
}

fn default_floor() -> f64 {
    30.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntennaConfig {
    pub model: PatternModel,
    /// Boresight gain (dBi).
    pub g_max_dbi: f64,
    pub n_elements: u32,
    /// Element separation in wavelengths.
    #[serde(default = "default_spacing")]
    pub element_spacing_wavelengths: f64,
    /// Half-power beamwidth (degrees).
    #[serde(default = "default_theta_3db")]
    pub theta_3db_deg: f64,
    /// Maximum attenuation relative to boresight (dB).
    #[serde(default = "default_floor")]
    pub sidelobe_floor_db: f64,
    #[serde(default)]
    pub boresight_elevation_deg: f64,
    #[serde(default)]
    pub boresight_azimuth_deg: f64,
    /// Drop the azimuth term of the parabolic envelope.
    #[serde(default)]
    pub omni_azimuth: bool,
}

impl AntennaConfig {
    /// Parabolic envelope with the wearable defaults (93° beamwidth, 30 dB floor).
    pub fn parabolic(g_max_dbi: f64, n_elements: u32) -> Self {
        Self {
            model: PatternModel::ParabolicEnvelope,
            g_max_dbi,
            n_elements,
            element_spacing_wavelengths: default_spacing(),
            theta_3db_deg: default_theta_3db(),
            sidelobe_floor_db: default_floor(),
            boresight_elevation_deg: 0.0,
            boresight_azimuth_deg: 0.0,
            omni_azimuth: false,
        }
    }

    /// Uniform linear array with half-wavelength spacing and a 30 dB floor.
    pub fn linear_array(g_max_dbi: f64, n_elements: u32) -> Self {
        Self {
            model: PatternModel::LinearArrayFactor,
            ..Self::parabolic(g_max_dbi, n_elements)
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("antenna g_max_dbi", self.g_max_dbi)?;
        if self.n_elements < 1 {
            return Err(Error::invalid("antenna n_elements", "must be >= 1"));
        }
        ensure_non_negative(
            "antenna element_spacing_wavelengths",
            self.element_spacing_wavelengths,
        )?;
        ensure_positive("antenna theta_3db_deg", self.theta_3db_deg)?;
        if self.theta_3db_deg > 180.0 {
            return Err(Error::invalid(
                "antenna theta_3db_deg",
                format!("must be in (0, 180], got {}", self.theta_3db_deg),
            ));
        }
        ensure_positive("antenna sidelobe_floor_db", self.sidelobe_floor_db)?;
        ensure_finite("antenna boresight_elevation_deg", self.boresight_elevation_deg)?;
        ensure_finite("antenna boresight_azimuth_deg", self.boresight_azimuth_deg)?;
        Ok(())
    }

    pub fn floor_dbi(&self) -> f64 {
        self.g_max_dbi - self.sidelobe_floor_db
    }

    /// Gain in dBi towards `(theta_deg, phi_deg)`.
    pub fn gain_dbi(&self, theta_deg: f64, phi_deg: f64) -> Result<f64> {
        self.validate()?;
        ensure_finite("elevation angle", theta_deg)?;
        ensure_finite("azimuth angle", phi_deg)?;
        Ok(self.gain_dbi_unchecked(theta_deg.to_radians(), phi_deg.to_radians()))
    }

    pub fn gain_linear(&self, theta_deg: f64, phi_deg: f64) -> Result<f64> {
        self.gain_dbi(theta_deg, phi_deg).map(db_to_linear)
    }

    /// Gain at boresight; equals `g_max_dbi` for every model.
    pub fn boresight_gain_dbi(&self) -> Result<f64> {
        self.gain_dbi(self.boresight_elevation_deg, self.boresight_azimuth_deg)
    }

    /// Evaluates the pattern for angles in radians. The config must already
    /// be validated.
    pub(crate) fn gain_dbi_unchecked(&self, theta_rad: f64, phi_rad: f64) -> f64 {
        let d_theta = wrap_degrees(theta_rad.to_degrees() - self.boresight_elevation_deg);
        match self.model {
            PatternModel::ParabolicEnvelope => {
                let mut attenuation = 12.0 * (d_theta / self.theta_3db_deg).powi(2);
                if !self.omni_azimuth {
                    let d_phi = wrap_degrees(phi_rad.to_degrees() - self.boresight_azimuth_deg);
                    attenuation += 12.0 * (d_phi / self.theta_3db_deg).powi(2);
                }
                self.g_max_dbi - attenuation.min(self.sidelobe_floor_db)
            }
            PatternModel::LinearArrayFactor => {
                let ratio = normalized_array_factor(
                    self.n_elements,
                    self.element_spacing_wavelengths,
                    d_theta.to_radians(),
                );
                (self.g_max_dbi + 20.0 * ratio.log10()).max(self.floor_dbi())
            }
        }
    }

    pub(crate) fn gain_linear_unchecked(&self, theta_rad: f64, phi_rad: f64) -> f64 {
        db_to_linear(self.gain_dbi_unchecked(theta_rad, phi_rad))
    }
}

/// `|AF_N(dθ)| / N`, in `[0, 1]`.
fn normalized_array_factor(n: u32, spacing: f64, d_theta_rad: f64) -> f64 {
    let x = std::f64::consts::PI * spacing * d_theta_rad.sin();
    let den = x.sin();
    // sin(Nx)/sin(x) has magnitude N wherever sin(x) vanishes.
    if den.abs() < 1e-12 {
        return 1.0;
    }
    let n = f64::from(n);
    ((n * x).sin() / (n * den)).abs().min(1.0)
}
