//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p wearable-emf-cli --test acceptance -- --nocapture --test-threads 1`
//! to see them.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use wearable_emf::antenna::AntennaConfig;
use wearable_emf::compliance::{min_safe_distance, sweep, ComplianceLimit, SafeDistance, SearchBracket};
use wearable_emf::exposure::{
    angular_mean_gain, power_density, sar_avg, sar_boundary, AveragedExposure, QuadratureSpec,
    TissueProperties,
};
use wearable_emf::link::{fspl_db, noise_power_dbm, shannon_rate_bps, snr_db};
use wearable_emf::quadrature::{refined_samples, torus_mean_sequential};
use wearable_emf::scenario::{preset, preset_names};
use wearable_emf::units::db_to_linear;

const BIN: &str = env!("CARGO_BIN_EXE_wearable-emf");

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {name} -- {detail}");
}

fn finish(id: u32, name: &str, checks: &[(bool, String)], elapsed: Duration, budget: Duration) {
    let in_time = elapsed < budget;
    let pass = in_time && checks.iter().all(|(ok, _)| *ok);
    let mut detail: Vec<String> = checks
        .iter()
        .map(|(ok, msg)| format!("{}{msg}", if *ok { "" } else { "!! " }))
        .collect();
    detail.push(format!("runtime {:.2?} (budget {:?})", elapsed, budget));
    let detail = detail.join("; ");
    report(id, name, pass, &detail);
    assert!(pass, "criterion {id} failed: {detail}");
}

/// Runs `safe-distance` through the binary and returns (limit, status, distance).
fn cli_safe_distance(preset_name: &str, limit: &str) -> (String, String, Option<f64>) {
    let out = Command::new(BIN)
        .args(["safe-distance", "--preset", preset_name, "--limit", limit])
        .output()
        .expect("run binary");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().nth(1).expect("one result row");
    let fields: Vec<&str> = line.split(',').collect();
    (
        fields[0].to_string(),
        fields[2].to_string(),
        fields[3].parse().ok(),
    )
}

#[test]
fn criterion_1_safe_distance_reproduction() {
    let start = Instant::now();
    let (_, _, icnirp) = cli_safe_distance("wearable-60ghz", "ICNIRP");
    let (_, _, fcc) = cli_safe_distance("wearable-60ghz", "FCC");
    let elapsed = start.elapsed();
    let icnirp = icnirp.expect("ICNIRP distance");
    let fcc = fcc.expect("FCC distance");
    let checks = vec![
        (
            (icnirp - 0.012).abs() <= 0.005,
            format!("ICNIRP {:.2} mm (12 ± 5)", icnirp * 1e3),
        ),
        (
            (fcc - 0.015).abs() <= 0.005,
            format!("FCC {:.2} mm (15 ± 5)", fcc * 1e3),
        ),
        (fcc > icnirp, "FCC > ICNIRP".to_string()),
    ];
    let gamma = preset("wearable-60ghz").unwrap().tissue.reflection_override;
    println!("  60 GHz preset: LinearArrayFactor N=16, δ=0.5 λ; calibrated Γ = {gamma:?}");
    finish(1, "60 GHz safe distances", &checks, elapsed, Duration::from_secs(10));
}

#[test]
fn criterion_2_low_band_compliance() {
    let start = Instant::now();
    let file = preset("wearable-2.4ghz").unwrap();
    let exposure = AveragedExposure::new(&file.scenario, &file.tissue, &file.quadrature).unwrap();
    // sar_avg is strictly decreasing, so d = 1 mm is the worst case; a grid
    // up to 1 m is scanned as well.
    let worst = exposure.avg_sar(1e-3).unwrap();
    let grid_max = (0..=10_000)
        .map(|i| exposure.avg_sar(1e-3 + i as f64 * 1e-4).unwrap())
        .fold(0.0f64, f64::max);
    let elapsed = start.elapsed();
    let checks = vec![
        (worst < 1.6, format!("sar_avg(1 mm) = {worst:.4} W/kg (< 1.6)")),
        (grid_max < 1.6, format!("max over [1 mm, 1.001 m] = {grid_max:.4} W/kg")),
    ];
    finish(2, "2.4 GHz below FCC limit at every d >= 1 mm", &checks, elapsed, Duration::from_secs(10));
}

#[test]
fn criterion_3_rate_ordering() {
    let start = Instant::now();
    let hi = preset("wearable-60ghz").unwrap().scenario;
    let lo = preset("wearable-2.4ghz").unwrap().scenario;
    let rate = |s: &wearable_emf::LinkScenario, d: f64| {
        let a = &s.tx_antenna;
        let snr = snr_db(s, d, a.boresight_elevation_deg, a.boresight_azimuth_deg).unwrap();
        shannon_rate_bps(s.bandwidth_hz, snr).unwrap()
    };
    let distances: Vec<f64> = (0..50).map(|i| 0.1 + (5.0 - 0.1) * i as f64 / 49.0).collect();
    let mut min_ratio = f64::INFINITY;
    let mut always_higher = true;
    println!("  d_m      rate60_Gbps  rate2.4_Gbps  ratio");
    for (i, &d) in distances.iter().enumerate() {
        let (r60, r24) = (rate(&hi, d), rate(&lo, d));
        always_higher &= r60 > r24;
        min_ratio = min_ratio.min(r60 / r24);
        if i % 7 == 0 || i == distances.len() - 1 {
            println!("  {d:<8.3} {:<12.3} {:<13.4} {:.2}", r60 / 1e9, r24 / 1e9, r60 / r24);
        }
    }
    let elapsed = start.elapsed();
    let checks = vec![
        (always_higher, "60 GHz rate > 2.4 GHz rate at all 50 points".to_string()),
        (min_ratio >= 3.0, format!("min ratio {min_ratio:.2} (>= 3)")),
    ];
    finish(3, "rate ordering over [0.1, 5] m", &checks, elapsed, Duration::from_secs(5));
}

#[test]
fn criterion_4_closed_form_oracles() {
    let start = Instant::now();
    let fspl = fspl_db(1.0, 2400.0).unwrap();
    let noise = noise_power_dbm(2.16e9, 6.0, 290.0).unwrap();
    let tissue = TissueProperties::new(Complex64::new(1.0, 0.0), 0.0).with_reflection(0.0);
    let sar = sar_boundary(1.0, &tissue).unwrap();
    let elapsed = start.elapsed();
    let checks = vec![
        ((fspl - 40.05).abs() <= 0.01, format!("fspl(1 m, 2400 MHz) = {fspl:.4} dB")),
        ((noise + 74.63).abs() <= 0.01, format!("noise(2.16 GHz, 6 dB, 290 K) = {noise:.4} dBm")),
        (((sar - 2.0) / 2.0).abs() <= 1e-12, format!("sar_boundary(1 W/m², Γ=0) = {sar}")),
    ];
    finish(4, "closed-form oracles", &checks, elapsed, Duration::from_secs(5));
}

#[test]
fn criterion_5_property_suite() {
    let start = Instant::now();
    let mut checks = Vec::new();

    // Inverse-square law.
    let mut worst_pd = 0.0f64;
    for &d in &[1e-3, 0.0123, 0.5, 3.0] {
        let r = power_density(0.01, 15.49, d).unwrap() / power_density(0.01, 15.49, 2.0 * d).unwrap();
        worst_pd = worst_pd.max((r / 4.0 - 1.0).abs());
    }
    checks.push((worst_pd < 1e-10, format!("PD inverse-square rel err {worst_pd:.1e}")));

    let mut worst_sar = 0.0f64;
    let mut decreasing = true;
    let mut convergence = 0.0f64;
    let mut gain_bounded = true;
    for name in preset_names() {
        let f = preset(name).unwrap();
        let q = f.quadrature;
        for &d in &[1e-3, 0.012, 0.2] {
            let r = sar_avg(&f.scenario, &f.tissue, d, &q).unwrap()
                / sar_avg(&f.scenario, &f.tissue, 2.0 * d, &q).unwrap();
            worst_sar = worst_sar.max((r / 4.0 - 1.0).abs());
        }
        let exposure = AveragedExposure::new(&f.scenario, &f.tissue, &q).unwrap();
        let values: Vec<f64> = (1..=2000)
            .map(|i| exposure.avg_sar(i as f64 * 5e-4).unwrap())
            .collect();
        decreasing &= values.windows(2).all(|w| w[1] < w[0]);

        let a = &f.scenario.tx_antenna;
        let gain = |t: f64, p: f64| a.gain_linear(t.to_degrees(), p.to_degrees()).unwrap();
        let coarse = torus_mean_sequential(gain, q.samples_per_axis);
        let fine = torus_mean_sequential(gain, refined_samples(q.samples_per_axis));
        convergence = convergence.max(((fine - coarse) / fine).abs());

        for i in 0..720 {
            for j in (0..720).step_by(7) {
                let g = a.gain_dbi(i as f64 * 0.5 - 180.0, j as f64 * 0.5 - 180.0).unwrap();
                gain_bounded &= g <= a.g_max_dbi && g >= a.g_max_dbi - a.sidelobe_floor_db;
            }
        }
    }
    checks.push((worst_sar < 1e-10, format!("sar_avg inverse-square rel err {worst_sar:.1e}")));
    checks.push((decreasing, "sar_avg strictly decreasing on [0.5 mm, 1 m]".to_string()));
    checks.push((gain_bounded, "gain in [g_max - A_m, g_max]".to_string()));
    checks.push((convergence < 1e-3, format!("grid-doubling change {convergence:.1e}")));

    // Isotropic antenna: the average equals the point SAR.
    let mut iso = preset("wearable-60ghz").unwrap();
    iso.scenario.tx_antenna = AntennaConfig::linear_array(11.9, 1);
    let avg = sar_avg(&iso.scenario, &iso.tissue, 0.02, &iso.quadrature).unwrap();
    let point = sar_boundary(
        power_density(iso.scenario.tx_power_w(), db_to_linear(11.9), 0.02).unwrap(),
        &iso.tissue,
    )
    .unwrap();
    let iso_err = ((avg - point) / point).abs();
    checks.push((iso_err < 1e-12, format!("isotropic avg/point rel err {iso_err:.1e}")));

    // Bisection iteration bound.
    let mut bound_ok = true;
    for name in preset_names() {
        let f = preset(name).unwrap();
        for limit in [ComplianceLimit::icnirp(), ComplianceLimit::fcc()] {
            for tol in [1e-3, 1e-5, 1e-8] {
                let search = SearchBracket { tol_m: tol, ..SearchBracket::default() };
                if let SafeDistance::Distance { iterations, .. } =
                    min_safe_distance(&f.scenario, &f.tissue, &limit, &search, &f.quadrature).unwrap()
                {
                    bound_ok &= iterations <= search.max_iterations();
                }
            }
        }
    }
    checks.push((bound_ok, "bisection iterations <= ceil(log2(span/tol)) + 1".to_string()));

    finish(5, "property suite", &checks, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_6_brute_force_solver_oracle() {
    let start = Instant::now();
    let mut checks = Vec::new();
    let points = 100_000usize;
    for name in preset_names() {
        let f = preset(name).unwrap();
        let exposure = AveragedExposure::new(&f.scenario, &f.tissue, &f.quadrature).unwrap();
        let search = f.search;
        let step = (search.d_hi - search.d_lo) / (points - 1) as f64;
        for limit in [ComplianceLimit::icnirp(), ComplianceLimit::fcc()] {
            let first = (0..points)
                .map(|i| search.d_lo + step * i as f64)
                .find(|&d| exposure.avg_sar(d).unwrap() <= limit.sar_limit_w_per_kg);
            let solved =
                min_safe_distance(&f.scenario, &f.tissue, &limit, &search, &f.quadrature).unwrap();
            let (ok, msg) = match (first, solved) {
                (Some(g), SafeDistance::Distance { meters, .. }) => (
                    (g - meters).abs() <= step,
                    format!("{name}/{}: grid {:.4} mm vs bisection {:.4} mm", limit.name, g * 1e3, meters * 1e3),
                ),
                (Some(g), SafeDistance::CompliantEverywhere) => (
                    g == search.d_lo,
                    format!("{name}/{}: compliant everywhere, grid first {g}", limit.name),
                ),
                (None, s) => (false, format!("{name}/{}: no compliant grid point, solver {s:?}", limit.name)),
            };
            checks.push((ok, msg));
        }
    }
    finish(6, "brute-force solver oracle (1e5 grid)", &checks, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_7_deterministic_sweep_csv() {
    let start = Instant::now();
    let run = || {
        let out = Command::new(BIN)
            .args(["sweep", "--preset", "wearable-60ghz", "--from", "0.001", "--to", "0.05", "--points", "200"])
            .output()
            .expect("run binary");
        assert!(out.status.success());
        out.stdout
    };
    let (a, b) = (run(), run());
    let f = preset("wearable-60ghz").unwrap();
    let distances = f.sweep.distances();
    let lib_a = sweep(&f.scenario, &f.tissue, &distances, &f.quadrature).unwrap();
    let lib_b = sweep(&f.scenario, &f.tissue, &distances, &f.quadrature).unwrap();
    let checks = vec![
        (a == b && !a.is_empty(), format!("CLI CSV identical ({} bytes)", a.len())),
        (lib_a == lib_b, "library rows identical".to_string()),
    ];
    // Angular mean from the default path matches the sequential fold bit for bit.
    let mean = angular_mean_gain(&f.scenario.tx_antenna, &QuadratureSpec::default()).unwrap();
    let a_cfg = &f.scenario.tx_antenna;
    let seq = torus_mean_sequential(
        |t, p| a_cfg.gain_linear(t.to_degrees(), p.to_degrees()).unwrap(),
        QuadratureSpec::default().samples_per_axis,
    );
    let mut checks = checks;
    checks.push(((mean - seq).abs() <= 1e-12 * seq, format!("parallel mean {mean:.12} vs sequential {seq:.12}")));
    finish(7, "determinism", &checks, start.elapsed(), Duration::from_secs(30));
}
