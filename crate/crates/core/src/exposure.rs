//! Incident power density, air/skin reflection and SAR.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::antenna::AntennaConfig;
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::link::LinkScenario;
use crate::quadrature::{refined_samples, torus_mean};
use crate::units::FREE_SPACE_IMPEDANCE;

fn default_density() -> f64 {
    1000.0
}

fn default_penetration_depth() -> f64 {
    1e-3
}

/// Dielectric and mass properties of the exposed skin layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TissueProperties {
    /// Complex relative permittivity `ε' - jε''`, written `[re, im]` in files.
    pub rel_permittivity: Complex64,
    pub conductivity_s_per_m: f64,
    #[serde(default = "default_density")]
    pub mass_density_kg_per_m3: f64,
    #[serde(default = "default_penetration_depth")]
    pub penetration_depth_m: f64,
    /// Field reflection coefficient to use instead of the Fresnel value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflection_override: Option<f64>,
}

impl TissueProperties {
    pub fn new(rel_permittivity: Complex64, conductivity_s_per_m: f64) -> Self {
        Self {
            rel_permittivity,
            conductivity_s_per_m,
            mass_density_kg_per_m3: default_density(),
            penetration_depth_m: default_penetration_depth(),
            reflection_override: None,
        }
    }

    pub fn with_reflection(mut self, gamma: f64) -> Self {
        self.reflection_override = Some(gamma);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_permittivity.re.is_finite() && self.rel_permittivity.im.is_finite()) {
            return Err(Error::invalid("tissue rel_permittivity", "must be finite"));
        }
        ensure_non_negative("tissue conductivity_s_per_m", self.conductivity_s_per_m)?;
        ensure_positive("tissue mass_density_kg_per_m3", self.mass_density_kg_per_m3)?;
        ensure_positive("tissue penetration_depth_m", self.penetration_depth_m)?;
        if let Some(gamma) = self.reflection_override {
            if !(0.0..1.0).contains(&gamma) {
                return Err(Error::invalid(
                    "tissue reflection_override",
                    format!("must be in [0, 1), got {gamma}"),
                ));
            }
        }
        Ok(())
    }
}

fn default_samples() -> usize {
    361
}

fn default_tolerance() -> f64 {
    1e-3
}

/// Grid used for the angle average.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Samples per axis over `[0, 2π]`, end points included.
    #[serde(default = "default_samples")]
    pub samples_per_axis: usize,
    /// Largest accepted relative change when the grid spacing is halved.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            samples_per_axis: default_samples(),
            tolerance: default_tolerance(),
        }
    }
}

impl QuadratureSpec {
    pub fn with_samples(samples_per_axis: usize) -> Self {
        Self {
            samples_per_axis,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples_per_axis < 2 {
            return Err(Error::invalid(
                "quadrature samples_per_axis",
                format!("must be >= 2, got {}", self.samples_per_axis),
            ));
        }
        ensure_positive("quadrature tolerance", self.tolerance)?;
        Ok(())
    }
}

/// One evaluated distance of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExposureResult {
    pub distance_m: f64,
    pub path_loss_db: f64,
    pub snr_db: f64,
    pub rate_bps: f64,
    #[serde(rename = "boresight_pd_w_m2")]
    pub boresight_pd_w_per_m2: f64,
    #[serde(rename = "boresight_sar_w_kg")]
    pub boresight_sar_w_per_kg: f64,
    #[serde(rename = "avg_sar_w_kg")]
    pub avg_sar_w_per_kg: f64,
}

/// `|E|^2 / ρ0`.
pub fn power_density_from_field(e_field_v_per_m: f64) -> Result<f64> {
    ensure_non_negative("electric field magnitude", e_field_v_per_m)?;
    Ok(e_field_v_per_m * e_field_v_per_m / FREE_SPACE_IMPEDANCE)
}

/// Far-field power density `P_T G_T / (4π d^2)`.
pub fn power_density(tx_power_w: f64, gain_linear: f64, distance_m: f64) -> Result<f64> {
    ensure_non_negative("tx_power_w", tx_power_w)?;
    ensure_non_negative("gain_linear", gain_linear)?;
    ensure_positive("distance_m", distance_m)?;
    Ok(tx_power_w * gain_linear / (4.0 * std::f64::consts::PI * distance_m * distance_m))
}

/// Field reflection coefficient magnitude at the air/skin boundary.
///
/// Normal-incidence Fresnel `|(√ε - 1) / (√ε + 1)|` with the principal
/// square root, unless the tissue carries an override.
pub fn reflection_coefficient(tissue: &TissueProperties) -> Result<f64> {
    tissue.validate()?;
    if let Some(gamma) = tissue.reflection_override {
        return Ok(gamma);
    }
    let eps = tissue.rel_permittivity;
    if eps.re <= 0.0 {
        return Err(Error::invalid(
            "tissue rel_permittivity",
            format!("real part must be > 0 for the Fresnel coefficient, got {}", eps.re),
        ));
    }
    let n = eps.sqrt();
    Ok(((n - 1.0) / (n + 1.0)).norm())
}

/// Point SAR `σ |E|^2 / ρ`.
pub fn sar_local(e_field_v_per_m: f64, tissue: &TissueProperties) -> Result<f64> {
    tissue.validate()?;
    ensure_non_negative("electric field magnitude", e_field_v_per_m)?;
    Ok(tissue.conductivity_s_per_m * e_field_v_per_m * e_field_v_per_m
        / tissue.mass_density_kg_per_m3)
}

/// SAR at the air/skin boundary, `2 PD (1 - Γ^2) / (δ ρ)`.
pub fn sar_boundary(pd_w_per_m2: f64, tissue: &TissueProperties) -> Result<f64> {
    ensure_non_negative("power density", pd_w_per_m2)?;
    let gamma = reflection_coefficient(tissue)?;
    Ok(sar_boundary_with(pd_w_per_m2, gamma, tissue))
}

fn sar_boundary_with(pd_w_per_m2: f64, gamma: f64, tissue: &TissueProperties) -> f64 {
    2.0 * pd_w_per_m2 * (1.0 - gamma * gamma)
        / (tissue.penetration_depth_m * tissue.mass_density_kg_per_m3)
}

/// `(1/(2π)^2) ∬ G(θ, φ) dθ dφ` of the linear transmit gain over
/// `[0, 2π]^2`, with a grid-doubling convergence check.
pub fn angular_mean_gain(antenna: &AntennaConfig, quadrature: &QuadratureSpec) -> Result<f64> {
    antenna.validate()?;
    quadrature.validate()?;
    let n = quadrature.samples_per_axis;
    let gain = |theta: f64, phi: f64| antenna.gain_linear_unchecked(theta, phi);
    let coarse = torus_mean(gain, n);
    let refined_n = refined_samples(n);
    let refined = torus_mean(gain, refined_n);
    let relative_change = ((refined - coarse) / refined).abs();
    if relative_change > quadrature.tolerance {
        return Err(Error::NonConvergence {
            samples: n,
            refined_samples: refined_n,
            coarse,
            refined,
            relative_change,
            tolerance: quadrature.tolerance,
        });
    }
    Ok(coarse)
}

/// Angle-averaged boundary SAR for a scenario, with the angular integral
/// evaluated once.
///
/// `SAR(d, θ, φ)` is linear in `G(θ, φ)` and `d` only enters through `1/d^2`,
/// so the average over angles equals the boundary SAR of the mean gain.
#[derive(Debug, Clone)]
pub struct AveragedExposure {
    tx_power_w: f64,
    mean_gain_linear: f64,
    boresight_gain_linear: f64,
    gamma: f64,
    tissue: TissueProperties,
}

impl AveragedExposure {
    pub fn new(
        scenario: &LinkScenario,
        tissue: &TissueProperties,
        quadrature: &QuadratureSpec,
    ) -> Result<Self> {
        scenario.validate()?;
        let gamma = reflection_coefficient(tissue)?;
        Ok(Self {
            tx_power_w: scenario.tx_power_w(),
            mean_gain_linear: angular_mean_gain(&scenario.tx_antenna, quadrature)?,
            boresight_gain_linear: crate::units::db_to_linear(
                scenario.tx_antenna.boresight_gain_dbi()?,
            ),
            gamma,
            tissue: tissue.clone(),
        })
    }

    pub fn mean_gain_linear(&self) -> f64 {
        self.mean_gain_linear
    }

    pub fn reflection(&self) -> f64 {
        self.gamma
    }

    pub fn avg_sar(&self, distance_m: f64) -> Result<f64> {
        let pd = power_density(self.tx_power_w, self.mean_gain_linear, distance_m)?;
        Ok(sar_boundary_with(pd, self.gamma, &self.tissue))
    }

    pub fn boresight_pd(&self, distance_m: f64) -> Result<f64> {
        power_density(self.tx_power_w, self.boresight_gain_linear, distance_m)
    }

    pub fn boresight_sar(&self, distance_m: f64) -> Result<f64> {
        let pd = self.boresight_pd(distance_m)?;
        Ok(sar_boundary_with(pd, self.gamma, &self.tissue))
    }
}

/// Angle-averaged SAR at `distance_m`.
pub fn sar_avg(
    scenario: &LinkScenario,
    tissue: &TissueProperties,
    distance_m: f64,
    quadrature: &QuadratureSpec,
) -> Result<f64> {
    ensure_positive("distance_m", distance_m)?;
    AveragedExposure::new(scenario, tissue, quadrature)?.avg_sar(distance_m)
}
