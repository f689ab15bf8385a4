//! Physical constants and decibel conversions.

/// Boltzmann constant, exact SI 2019 value (J/K).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Characteristic impedance of free space used for field/power-density conversion (ohm).
pub const FREE_SPACE_IMPEDANCE: f64 = 376.73;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

pub fn dbm_to_watt(dbm: f64) -> f64 {
    db_to_linear(dbm) * 1e-3
}

pub fn watt_to_dbm(watt: f64) -> f64 {
    linear_to_db(watt * 1e3)
}

/// Wraps an angle in degrees to `[-180, 180)`.
pub fn wrap_degrees(deg: f64) -> f64 {
    (deg + 180.0).rem_euclid(360.0) - 180.0
}
