//! Controller comparison, summary tables and CSV export.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::control::ControllerMode;
use crate::error::{Error, Result};
use crate::scenario::config::{ScenarioConfig, H_REF};
use crate::scenario::run::{run_scenario_with, scenario_wind, RunResult, RunStats};

pub const CSV_COLUMNS: [&str; 26] = [
    "t",
    "pn",
    "pe",
    "pd",
    "u",
    "v",
    "w",
    "phi_deg",
    "theta_deg",
    "psi_deg",
    "p",
    "q",
    "r",
    "delta_a_deg",
    "delta_e_deg",
    "delta_r_deg",
    "delta_t",
    "Va",
    "beta_est_deg",
    "chi_deg",
    "chi_cmd_deg",
    "chi_cmd_raw_deg",
    "segment_id",
    "e_lateral_m",
    "e_total_150_m",
    "e_total_450_m",
];

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => io_error(path, source),
        other => Error::Io {
            path: path.to_path_buf(),
            source: std::io::Error::other(format!("{other:?}")),
        },
    }
}

/// Writes the per-step log to `out`.
pub fn write_csv<W: Write>(result: &RunResult, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for s in &result.samples {
        let x = &s.state;
        let c = &s.command;
        let row: [String; 26] = [
            s.t.to_string(),
            x.pn.to_string(),
            x.pe.to_string(),
            x.pd.to_string(),
            x.u.to_string(),
            x.v.to_string(),
            x.w.to_string(),
            x.phi.to_degrees().to_string(),
            x.theta.to_degrees().to_string(),
            x.psi.to_degrees().to_string(),
            x.p.to_string(),
            x.q.to_string(),
            x.r.to_string(),
            c.delta_a.to_degrees().to_string(),
            c.delta_e.to_degrees().to_string(),
            c.delta_r.to_degrees().to_string(),
            c.delta_t.to_string(),
            s.va.to_string(),
            s.beta_est.to_degrees().to_string(),
            s.chi.to_degrees().to_string(),
            s.chi_cmd.to_degrees().to_string(),
            s.chi_cmd_raw.to_degrees().to_string(),
            s.segment_id.to_string(),
            s.e_lateral.to_string(),
            s.e_total(H_REF[0]).to_string(),
            s.e_total(H_REF[1]).to_string(),
        ];
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_csv(result: &RunResult, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    write_csv(result, BufWriter::new(file)).map_err(|e| csv_error(path, e))
}

/// One row of the comparison table. Image errors in metres, angles in degrees.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub controller: String,
    pub mean_150: f64,
    pub std_150: f64,
    pub mean_450: f64,
    pub std_450: f64,
    pub rms_450: f64,
    pub lat_mean: f64,
    pub lat_std: f64,
    pub roll_mean_deg: f64,
    pub roll_std_deg: f64,
    pub beta_mean_deg: f64,
    pub beta_std_deg: f64,
}

impl SummaryRow {
    pub fn from_stats(scenario: &str, mode: ControllerMode, s: &RunStats) -> Self {
        Self {
            scenario: scenario.to_string(),
            controller: mode.as_str().to_uppercase(),
            mean_150: s.total[0].mean,
            std_150: s.total[0].std_1sigma,
            mean_450: s.total[1].mean,
            std_450: s.total[1].std_1sigma,
            rms_450: s.total[1].rms,
            lat_mean: s.lateral.mean,
            lat_std: s.lateral.std_1sigma,
            roll_mean_deg: s.roll_deg.mean,
            roll_std_deg: s.roll_deg.std_1sigma,
            beta_mean_deg: s.beta_deg.mean,
            beta_std_deg: s.beta_deg.std_1sigma,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub aotc: RunResult,
    pub ratc: RunResult,
    pub aotc_stats: RunStats,
    pub ratc_stats: RunStats,
    pub rows: Vec<SummaryRow>,
}

impl Comparison {
    /// RATC over AOTC RMS total image error at the higher reference height.
    pub fn rms_450_ratio(&self) -> f64 {
        self.ratc_stats.total[1].rms / self.aotc_stats.total[1].rms
    }

    /// RATC over AOTC mean absolute roll angle.
    pub fn abs_roll_ratio(&self) -> f64 {
        self.ratc_stats.abs_roll_mean_deg / self.aotc_stats.abs_roll_mean_deg
    }

    pub fn ratio_lines(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "RATC/AOTC RMS total image error @450 m: {:.3}",
            self.rms_450_ratio()
        );
        let _ = writeln!(
            s,
            "mean roll angle: RATC {:.2} deg, AOTC {:.2} deg (|phi| ratio {:.3})",
            self.ratc_stats.roll_deg.mean,
            self.aotc_stats.roll_deg.mean,
            self.abs_roll_ratio()
        );
        let _ = writeln!(
            s,
            "mean |beta_est|: RATC {:.2} deg, AOTC {:.2} deg",
            self.ratc_stats.abs_beta_mean_deg, self.aotc_stats.abs_beta_mean_deg
        );
        s
    }
}

/// Runs both controllers over one shared wind realization.
pub fn compare_controllers(cfg: &ScenarioConfig) -> Result<Comparison> {
    let wind = scenario_wind(cfg);
    let aotc = run_scenario_with::<f64>(cfg, ControllerMode::Aotc, &wind)?.ok()?;
    let ratc = run_scenario_with::<f64>(cfg, ControllerMode::Ratc, &wind)?.ok()?;
    let aotc_stats = aotc.stats()?;
    let ratc_stats = ratc.stats()?;
    let rows = vec![
        SummaryRow::from_stats(&cfg.name, ControllerMode::Aotc, &aotc_stats),
        SummaryRow::from_stats(&cfg.name, ControllerMode::Ratc, &ratc_stats),
    ];
    Ok(Comparison {
        aotc,
        ratc,
        aotc_stats,
        ratc_stats,
        rows,
    })
}

/// Fixed-width text rendering of the summary rows.
pub fn summary_table(rows: &[SummaryRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<14} {:<5} {:>9} {:>8} {:>9} {:>8} {:>8} {:>9} {:>8} {:>9} {:>8} {:>9} {:>8}",
        "scenario",
        "ctrl",
        "mean_150",
        "std_150",
        "mean_450",
        "std_450",
        "rms_450",
        "lat_mean",
        "lat_std",
        "roll_mean",
        "roll_std",
        "beta_mean",
        "beta_std"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<14} {:<5} {:>9.2} {:>8.2} {:>9.2} {:>8.2} {:>8.2} {:>9.2} {:>8.2} {:>9.2} {:>8.2} {:>9.2} {:>8.2}",
            r.scenario,
            r.controller,
            r.mean_150,
            r.std_150,
            r.mean_450,
            r.std_450,
            r.rms_450,
            r.lat_mean,
            r.lat_std,
            r.roll_mean_deg,
            r.roll_std_deg,
            r.beta_mean_deg,
            r.beta_std_deg
        );
    }
    s
}

pub fn write_summary_csv(rows: &[SummaryRow], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    for r in rows {
        w.serialize(r).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| io_error(path, e))
}
