//! CSV and JSON emission of sweep results.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exposure::ExposureResult;

pub const CSV_HEADER: &str =
    "distance_m,path_loss_db,snr_db,rate_bps,boresight_pd_w_m2,boresight_sar_w_kg,avg_sar_w_kg";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::invalid("format", format!("expected csv or json, got `{other}`"))),
        }
    }
}

/// Scientific notation with 9 significant digits.
pub fn sci9(value: f64) -> String {
    format!("{value:.8e}")
}

pub fn write_csv<W: Write>(rows: &[ExposureResult], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        let fields = [
            r.distance_m,
            r.path_loss_db,
            r.snr_db,
            r.rate_bps,
            r.boresight_pd_w_per_m2,
            r.boresight_sar_w_per_kg,
            r.avg_sar_w_per_kg,
        ];
        let line: Vec<String> = fields.iter().map(|&v| sci9(v)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ExposureResult], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows).map_err(|e| Error::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

pub fn emit_results<W: Write>(rows: &[ExposureResult], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(rows, out),
        Format::Json => write_json(rows, out),
    }
}

pub fn emit_to_bytes(rows: &[ExposureResult], format: Format) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    emit_results(rows, format, &mut buf)?;
    Ok(buf)
}
