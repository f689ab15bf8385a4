//! `wearable-emf` command-line tool.
//!
//! Exit codes: 0 success, 1 usage/parse error, 2 numerical failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use wearable_emf::compliance::{min_safe_distance, resolve_limit, sweep};
use wearable_emf::output::{emit_results, Format};
use wearable_emf::scenario::{load_scenario_path, preset, preset_names};
use wearable_emf::{ComplianceLimit, Error, SafeDistance, ScenarioFile, SweepGrid};

#[derive(Debug, Parser)]
#[command(name = "wearable-emf", version, about = "Link rate and EMF exposure of on-body wearable radios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate rate, power density and SAR over a distance sweep
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        /// First distance of the sweep (m)
        #[arg(long)]
        from: Option<f64>,
        /// Last distance of the sweep (m)
        #[arg(long)]
        to: Option<f64>,
        /// Number of sweep points
        #[arg(long)]
        points: Option<usize>,
    },
    /// Solve for the minimum antenna/skin separation meeting a SAR limit
    SafeDistance {
        #[command(flatten)]
        input: InputArgs,
        /// Limit name (ICNIRP, FCC, or one from the scenario) or a value in W/kg.
        /// Defaults to every limit listed in the scenario.
        #[arg(long)]
        limit: Vec<String>,
    },
    /// List the built-in presets
    Presets,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Scenario file (TOML)
    #[arg(long, conflicts_with = "preset")]
    scenario: Option<PathBuf>,
    /// Built-in preset name
    #[arg(long)]
    preset: Option<String>,
    /// Quadrature samples per angular axis
    #[arg(long)]
    quadrature_samples: Option<usize>,
    /// Output format
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Output path, or `stdout`
    #[arg(long, default_value = "stdout")]
    output: String,
}

impl InputArgs {
    fn load(&self) -> Result<ScenarioFile, Error> {
        let mut file = match (&self.scenario, &self.preset) {
            (Some(path), _) => load_scenario_path(path)?,
            (None, Some(name)) => preset(name)?,
            (None, None) => {
                return Err(Error::InvalidInput {
                    what: "input",
                    reason: "pass --scenario <path> or --preset <name>".into(),
                })
            }
        };
        if let Some(n) = self.quadrature_samples {
            file.quadrature.samples_per_axis = n;
        }
        file.validate()?;
        Ok(file)
    }

    fn writer(&self) -> Result<Box<dyn Write>, Error> {
        if self.output == "stdout" || self.output == "-" {
            Ok(Box::new(BufWriter::new(io::stdout().lock())))
        } else {
            Ok(Box::new(BufWriter::new(File::create(&self.output)?)))
        }
    }
}

fn override_grid(
    grid: &SweepGrid,
    from: Option<f64>,
    to: Option<f64>,
    points: Option<usize>,
) -> Result<SweepGrid, Error> {
    if from.is_none() && to.is_none() && points.is_none() {
        return Ok(grid.clone());
    }
    let current = grid.distances();
    let start_m = from.unwrap_or(current[0]);
    let stop_m = to.unwrap_or(*current.last().unwrap_or(&start_m));
    let points = points.unwrap_or(match grid {
        SweepGrid::Range { points, .. } => *points,
        SweepGrid::List(d) => d.len(),
    });
    let grid = SweepGrid::Range {
        start_m,
        stop_m,
        points,
    };
    grid.validate()?;
    Ok(grid)
}

#[derive(Debug, Serialize)]
struct SafeDistanceRow {
    limit: String,
    sar_limit_w_kg: f64,
    status: &'static str,
    safe_distance_m: Option<f64>,
    iterations: Option<u32>,
}

fn write_safe_distances(rows: &[SafeDistanceRow], format: Format, mut out: impl Write) -> Result<(), Error> {
    match format {
        Format::Csv => {
            writeln!(out, "limit,sar_limit_w_kg,status,safe_distance_m,iterations")?;
            for r in rows {
                let d = r.safe_distance_m.map(|d| format!("{d:.8e}")).unwrap_or_default();
                let it = r.iterations.map(|i| i.to_string()).unwrap_or_default();
                writeln!(out, "{},{:.8e},{},{},{}", r.limit, r.sar_limit_w_kg, r.status, d, it)?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows).map_err(|e| Error::Io(e.into()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Presets => {
            let mut out = io::stdout().lock();
            for name in preset_names() {
                let file = preset(name)?;
                let s = &file.scenario;
                writeln!(
                    out,
                    "{name}\t{} MHz, B = {} Hz, P_T = {} dBm, G_max = {} dBi, N = {}\t{}",
                    s.carrier_mhz,
                    s.bandwidth_hz,
                    s.tx_power_dbm,
                    s.tx_antenna.g_max_dbi,
                    s.tx_antenna.n_elements,
                    s.label
                )?;
            }
            Ok(())
        }
        Command::Sweep {
            input,
            from,
            to,
            points,
        } => {
            let file = input.load()?;
            let grid = override_grid(&file.sweep, from, to, points)?;
            let rows = sweep(&file.scenario, &file.tissue, &grid.distances(), &file.quadrature)?;
            let mut out = input.writer()?;
            emit_results(&rows, input.format, &mut out)?;
            out.flush()?;
            Ok(())
        }
        Command::SafeDistance { input, limit } => {
            let file = input.load()?;
            let limits: Vec<ComplianceLimit> = if limit.is_empty() {
                file.limits.clone()
            } else {
                limit
                    .iter()
                    .map(|l| resolve_limit(l, &file.limits))
                    .collect::<Result<_, _>>()?
            };
            let mut rows = Vec::with_capacity(limits.len());
            for l in &limits {
                let result = min_safe_distance(&file.scenario, &file.tissue, l, &file.search, &file.quadrature)?;
                rows.push(match result {
                    SafeDistance::CompliantEverywhere => SafeDistanceRow {
                        limit: l.name.clone(),
                        sar_limit_w_kg: l.sar_limit_w_per_kg,
                        status: "compliant-everywhere",
                        safe_distance_m: None,
                        iterations: None,
                    },
                    SafeDistance::Distance { meters, iterations } => SafeDistanceRow {
                        limit: l.name.clone(),
                        sar_limit_w_kg: l.sar_limit_w_per_kg,
                        status: "distance",
                        safe_distance_m: Some(meters),
                        iterations: Some(iterations),
                    },
                });
            }
            let mut out = input.writer()?;
            write_safe_distances(&rows, input.format, &mut out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
