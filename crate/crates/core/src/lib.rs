//! Link performance and human EMF exposure for on-body wearable radios.
//!
//! The crate is split along the computation chain:
//!
//! * [`antenna`] evaluates direction-dependent transmit gain.
//! * [`link`] turns a [`link::LinkScenario`] into path loss, SNR and Shannon rate.
//! * [`exposure`] computes power density, air/skin reflection, point SAR and
//!   the angle-averaged SAR.
//! * [`compliance`] holds regulatory limits, solves for the minimum safe
//!   antenna/skin separation and produces distance sweeps.
//! * [`scenario`] and [`output`] handle scenario files, built-in presets and
//!   CSV/JSON emission.
//!
//! Internally every quantity is linear SI (watts, metres, hertz). Decibel
//! units only appear at the API and file boundaries.

pub mod antenna;
pub mod compliance;
mod error;
pub mod exposure;
pub mod link;
pub mod output;
pub mod quadrature;
pub mod scenario;
pub mod units;

pub use antenna::{AntennaConfig, PatternModel};
pub use compliance::{ComplianceLimit, SafeDistance, SearchBracket};
pub use error::{Error, Result};
pub use exposure::{ExposureResult, QuadratureSpec, TissueProperties};
pub use link::LinkScenario;
pub use scenario::{ScenarioFile, SweepGrid};
