//! Free-space link budget and Shannon rate.

use serde::{Deserialize, Serialize};

use crate::antenna::AntennaConfig;
use crate::error::{ensure_finite, ensure_non_negative, ensure_positive, Error, Result};
use crate::units::{db_to_linear, dbm_to_watt, linear_to_db, BOLTZMANN};

/// One wearable transmitter/receiver pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkScenario {
    /// Free-text description, e.g. the body-node placement.
    #[serde(default)]
    pub label: String,
    pub carrier_mhz: f64,
    pub bandwidth_hz: f64,
    pub tx_power_dbm: f64,
    pub rx_gain_dbi: f64,
    pub noise_figure_db: f64,
    pub temperature_k: f64,
    pub tx_antenna: AntennaConfig,
}

impl LinkScenario {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("carrier_mhz", self.carrier_mhz)?;
        ensure_positive("bandwidth_hz", self.bandwidth_hz)?;
        ensure_finite("tx_power_dbm", self.tx_power_dbm)?;
        ensure_finite("rx_gain_dbi", self.rx_gain_dbi)?;
        ensure_non_negative("noise_figure_db", self.noise_figure_db)?;
        ensure_positive("temperature_k", self.temperature_k)?;
        self.tx_antenna.validate()
    }

    pub fn tx_power_w(&self) -> f64 {
        dbm_to_watt(self.tx_power_dbm)
    }

    /// Received signal-to-noise ratio (linear) at `distance_m` towards the
    /// given transmit direction.
    pub fn snr_linear(&self, distance_m: f64, theta_deg: f64, phi_deg: f64) -> Result<f64> {
        self.validate()?;
        let g_tx = self.tx_antenna.gain_linear(theta_deg, phi_deg)?;
        let loss = fspl_linear(distance_m, self.carrier_mhz)?;
        let received_w = self.tx_power_w() * g_tx * db_to_linear(self.rx_gain_dbi) / loss;
        let noise_w = noise_power_w(self.bandwidth_hz, self.noise_figure_db, self.temperature_k)?;
        Ok(received_w / noise_w)
    }
}

fn check_distance(distance_m: f64) -> Result<f64> {
    ensure_positive("distance_m", distance_m)
}

fn fspl_linear(distance_m: f64, carrier_mhz: f64) -> Result<f64> {
    fspl_db(distance_m, carrier_mhz).map(db_to_linear)
}

/// Free-space path loss in dB with distance in metres and carrier in MHz:
/// `20 log10(d) + 20 log10(f) - 27.55`.
pub fn fspl_db(distance_m: f64, carrier_mhz: f64) -> Result<f64> {
    check_distance(distance_m)?;
    ensure_positive("carrier_mhz", carrier_mhz)?;
    Ok(20.0 * distance_m.log10() + 20.0 * carrier_mhz.log10() - 27.55)
}

fn noise_power_w(bandwidth_hz: f64, noise_figure_db: f64, temperature_k: f64) -> Result<f64> {
    ensure_positive("bandwidth_hz", bandwidth_hz)?;
    ensure_positive("temperature_k", temperature_k)?;
    ensure_finite("noise_figure_db", noise_figure_db)?;
    Ok(BOLTZMANN * temperature_k * bandwidth_hz * db_to_linear(noise_figure_db))
}

/// Receiver noise power `kTB + NF` in dBm.
pub fn noise_power_dbm(bandwidth_hz: f64, noise_figure_db: f64, temperature_k: f64) -> Result<f64> {
    noise_power_w(bandwidth_hz, noise_figure_db, temperature_k).map(|w| linear_to_db(w * 1e3))
}

/// `P_T + G_T(θ, φ) + G_R - FSPL - N` in dB.
pub fn snr_db(scenario: &LinkScenario, distance_m: f64, theta_deg: f64, phi_deg: f64) -> Result<f64> {
    scenario
        .snr_linear(distance_m, theta_deg, phi_deg)
        .map(linear_to_db)
}

/// Shannon capacity `B log2(1 + SNR)` in bit/s.
pub fn shannon_rate_bps(bandwidth_hz: f64, snr_db: f64) -> Result<f64> {
    ensure_positive("bandwidth_hz", bandwidth_hz)?;
    if snr_db.is_nan() || snr_db == f64::INFINITY {
        return Err(Error::invalid("snr_db", format!("must be finite or -inf, got {snr_db}")));
    }
    Ok(bandwidth_hz * db_to_linear(snr_db).ln_1p() / std::f64::consts::LN_2)
}
