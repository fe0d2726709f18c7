//! Scenario configuration files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::control::{ControllerConfig, ControllerMode};
use crate::dynamics::{load_aircraft, AircraftParams, WindModel, DEFAULT_DT};
use crate::error::{Error, Result};
use crate::guidance::{load_plan, FlightPlan, GuidanceConfig};
use crate::scenario::library::BUILTIN_PREFIX;

/// Reference heights (m AGL) at which image error is evaluated.
pub const H_REF: [f64; 2] = [150.0, 450.0];

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub aircraft_source: String,
    pub aircraft: AircraftParams<f64>,
    pub plan_source: String,
    pub plan: FlightPlan<f64>,
    pub wind: WindModel,
    pub mode: ControllerMode,
    pub controller: ControllerConfig<f64>,
    pub guidance: GuidanceConfig<f64>,
    pub airspeed: f64,
    pub dt: f64,
    pub duration: f64,
    /// Statistics skip samples earlier than this (s).
    pub warmup: f64,
    /// Initial displacement from the plan start (N, E), m.
    pub start_offset: [f64; 2],
    pub csv: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

impl ScenarioConfig {
    /// Number of integration steps covering `duration`.
    pub fn steps(&self) -> usize {
        (self.duration / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::Validation(format!(
                "simulation dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.duration >= 0.0) || !self.duration.is_finite() {
            return Err(Error::Validation(format!(
                "simulation duration must be non-negative, got {}",
                self.duration
            )));
        }
        if !(self.warmup >= 0.0) {
            return Err(Error::Validation("simulation warmup must be non-negative".into()));
        }
        if !(self.airspeed > 0.0) {
            return Err(Error::Validation("simulation airspeed must be positive".into()));
        }
        if self.wind.steady.iter().any(|w| !w.is_finite()) || !(self.wind.gust_sigma >= 0.0) {
            return Err(Error::Validation(
                "wind must be finite with non-negative gust_sigma".into(),
            ));
        }
        if !(self.wind.gust_time_constant > 0.0) {
            return Err(Error::Validation(
                "wind gust_time_constant must be positive".into(),
            ));
        }
        self.controller.validate()?;
        self.guidance.validate()?;
        self.aircraft.validate()
    }

    /// Human-readable dump of the resolved configuration, defaults included.
    pub fn describe(&self) -> String {
        let c = &self.controller;
        let g = &self.guidance;
        let mut s = String::new();
        let _ = writeln!(s, "scenario        {}", self.name);
        let _ = writeln!(s, "aircraft        {}", self.aircraft_source);
        let _ = writeln!(
            s,
            "plan            {} ({} segments)",
            self.plan_source,
            self.plan.segments.len()
        );
        let _ = writeln!(s, "mode            {}", self.mode);
        let _ = writeln!(s, "airspeed        {} m/s", self.airspeed);
        let _ = writeln!(
            s,
            "dt / duration   {} s / {} s (warm-up {} s)",
            self.dt, self.duration, self.warmup
        );
        let _ = writeln!(
            s,
            "wind            N {} E {} D {} m/s, gust sigma {} m/s, tau {} s, seed {}",
            self.wind.steady[0],
            self.wind.steady[1],
            self.wind.steady[2],
            self.wind.gust_sigma,
            self.wind.gust_time_constant,
            self.wind.seed
        );
        let _ = writeln!(s, "heading loop    wn {} rad/s, zeta {}", c.wn_psi, c.zeta_psi);
        let _ = writeln!(
            s,
            "roll loop       wn {} rad/s, zeta {}, course zeta {}, separation {}, bank limit {:.1} deg",
            c.wn_roll,
            c.zeta_roll,
            c.zeta_course,
            c.course_separation,
            c.bank_limit.to_degrees()
        );
        let _ = writeln!(
            s,
            "guidance        intercept {:.1} deg, k_path {}, ki_path {}, k_orbit {}, slew {} (engage {:.1} deg/s, walk {:.1} deg/s)",
            g.intercept_angle.to_degrees(),
            g.k_path,
            g.ki_path,
            g.k_orbit,
            if g.slew_enabled { "on" } else { "off" },
            g.slew_threshold.to_degrees(),
            g.slew_rate.to_degrees()
        );
        s
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    name: Option<String>,
    aircraft: String,
    plan: String,
    #[serde(default)]
    simulation: SimulationSection,
    #[serde(default)]
    wind: WindSection,
    #[serde(default)]
    controller: ControllerSection,
    #[serde(default)]
    guidance: GuidanceSection,
    #[serde(default)]
    output: OutputSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct SimulationSection {
    dt: f64,
    duration: f64,
    warmup: f64,
    airspeed: f64,
    start_offset: [f64; 2],
}

impl Default for SimulationSection {
    fn default() -> Self {
        Self {
            dt: DEFAULT_DT,
            duration: 600.0,
            warmup: 5.0,
            airspeed: 20.0,
            start_offset: [0.0, 0.0],
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct WindSection {
    north: f64,
    east: f64,
    down: f64,
    gust_sigma: f64,
    gust_time_constant: f64,
    seed: u64,
}

impl Default for WindSection {
    fn default() -> Self {
        let d = WindModel::default();
        Self {
            north: 0.0,
            east: 0.0,
            down: 0.0,
            gust_sigma: d.gust_sigma,
            gust_time_constant: d.gust_time_constant,
            seed: d.seed,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct ControllerSection {
    mode: Option<String>,
    wn_psi: Option<f64>,
    zeta_psi: Option<f64>,
    wn_roll: Option<f64>,
    zeta_roll: Option<f64>,
    zeta_course: Option<f64>,
    course_separation: Option<f64>,
    bank_limit_deg: Option<f64>,
    wn_pitch: Option<f64>,
    zeta_pitch: Option<f64>,
    wn_altitude: Option<f64>,
    zeta_altitude: Option<f64>,
    wn_airspeed: Option<f64>,
    zeta_airspeed: Option<f64>,
    pitch_limit_deg: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct GuidanceSection {
    intercept_angle_deg: Option<f64>,
    k_path: Option<f64>,
    ki_path: Option<f64>,
    k_orbit: Option<f64>,
    slew: Option<bool>,
    slew_rate_deg_s: Option<f64>,
    slew_threshold_deg_s: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct OutputSection {
    csv: Option<PathBuf>,
    out_dir: Option<PathBuf>,
}

/// Resolves `reference` against the directory of `base`, leaving built-in names alone.
fn resolve(base: &Path, reference: &str) -> PathBuf {
    if reference.starts_with(BUILTIN_PREFIX) {
        return PathBuf::from(reference);
    }
    let p = Path::new(reference);
    if p.is_absolute() || base.to_string_lossy().starts_with(BUILTIN_PREFIX) {
        p.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new("")).join(p)
    }
}

/// Reads, resolves and validates a scenario file (or `builtin:<name>`).
pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = crate::scenario::read_source(path)?;
    let file: ConfigFile = toml::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;

    let aircraft_path = resolve(path, &file.aircraft);
    let plan_path = resolve(path, &file.plan);
    let aircraft = load_aircraft(&aircraft_path)?;
    let plan = load_plan(&plan_path)?;

    let mut controller = ControllerConfig::<f64>::default();
    let c = &file.controller;
    let set = |slot: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(&mut controller.wn_psi, c.wn_psi);
    set(&mut controller.zeta_psi, c.zeta_psi);
    set(&mut controller.wn_roll, c.wn_roll);
    set(&mut controller.zeta_roll, c.zeta_roll);
    set(&mut controller.zeta_course, c.zeta_course);
    set(&mut controller.course_separation, c.course_separation);
    set(&mut controller.bank_limit, c.bank_limit_deg.map(f64::to_radians));
    set(&mut controller.wn_pitch, c.wn_pitch);
    set(&mut controller.zeta_pitch, c.zeta_pitch);
    set(&mut controller.wn_altitude, c.wn_altitude);
    set(&mut controller.zeta_altitude, c.zeta_altitude);
    set(&mut controller.wn_airspeed, c.wn_airspeed);
    set(&mut controller.zeta_airspeed, c.zeta_airspeed);
    set(
        &mut controller.pitch_limit,
        c.pitch_limit_deg.map(f64::to_radians),
    );
    let mode = match &c.mode {
        Some(m) => m.parse()?,
        None => ControllerMode::Ratc,
    };

    let mut guidance = GuidanceConfig::<f64>::default();
    let g = &file.guidance;
    set(
        &mut guidance.intercept_angle,
        g.intercept_angle_deg.map(f64::to_radians),
    );
    set(&mut guidance.k_path, g.k_path);
    set(&mut guidance.ki_path, g.ki_path);
    set(&mut guidance.k_orbit, g.k_orbit);
    set(&mut guidance.slew_rate, g.slew_rate_deg_s.map(f64::to_radians));
    set(
        &mut guidance.slew_threshold,
        g.slew_threshold_deg_s.map(f64::to_radians),
    );
    if let Some(on) = g.slew {
        guidance.slew_enabled = on;
    }

    let w = &file.wind;
    let cfg = ScenarioConfig {
        name: file.name.unwrap_or_else(|| plan.name.clone()),
        aircraft_source: aircraft_path.to_string_lossy().into_owned(),
        aircraft,
        plan_source: plan_path.to_string_lossy().into_owned(),
        plan,
        wind: WindModel {
            steady: [w.north, w.east, w.down],
            gust_sigma: w.gust_sigma,
            gust_time_constant: w.gust_time_constant,
            seed: w.seed,
        },
        mode,
        controller,
        guidance,
        airspeed: file.simulation.airspeed,
        dt: file.simulation.dt,
        duration: file.simulation.duration,
        warmup: file.simulation.warmup,
        start_offset: file.simulation.start_offset,
        csv: file.output.csv,
        out_dir: file.output.out_dir,
    };
    cfg.validate()?;
    Ok(cfg)
}
