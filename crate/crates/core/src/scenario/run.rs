//! Closed-loop execution: trim, then step guidance, autopilot and dynamics at a fixed rate.

use crate::control::{Autopilot, ControlCommand, ControllerMode};
use crate::dynamics::{
    integrate_step, trim, AirData, AircraftModel, AircraftState, TrimOptions, TrimSolution, WindSeries,
};
use crate::error::{Error, Result};
use crate::guidance::PathManager;
use crate::metrics::{beta_estimate, series_stats, total_image_error, ErrorStats};
use crate::scalar::{cast, Scalar};
use crate::scenario::config::{ScenarioConfig, H_REF};

/// One logged control step (SI units, radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub state: AircraftState<f64>,
    pub command: ControlCommand<f64>,
    pub va: f64,
    pub chi: f64,
    /// Air-relative sideslip from the body velocities.
    pub beta: f64,
    /// Course minus heading.
    pub beta_est: f64,
    pub chi_cmd: f64,
    pub chi_cmd_raw: f64,
    /// Bank command of the aileron loop (zero under the wings-level hold).
    pub phi_cmd: f64,
    pub segment_id: usize,
    pub on_orbit: bool,
    pub e_lateral: f64,
    pub wind: [f64; 3],
    pub saturated: bool,
    pub tracked_errors: usize,
}

impl Sample {
    pub fn e_total(&self, h_ref: f64) -> f64 {
        self.e_lateral + h_ref * self.state.phi.tan()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunStatus {
    /// The plan's last segment was completed.
    Completed,
    /// The duration cap was reached first.
    Incomplete,
    Failed {
        time: f64,
        message: String,
        category: &'static str,
        state: [f64; 12],
    },
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub scenario: String,
    pub mode: ControllerMode,
    pub dt: f64,
    pub warmup: f64,
    pub trim: TrimSolution<f64>,
    pub samples: Vec<Sample>,
    pub status: RunStatus,
}

/// Statistics over the post-warm-up part of a run. Angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunStats {
    /// Total image error at each entry of [`H_REF`].
    pub total: [ErrorStats<f64>; 2],
    pub lateral: ErrorStats<f64>,
    pub roll_deg: ErrorStats<f64>,
    pub beta_deg: ErrorStats<f64>,
    pub abs_roll_mean_deg: f64,
    pub abs_beta_mean_deg: f64,
    pub peak_abs_roll_deg: f64,
}

impl RunResult {
    pub fn is_failed(&self) -> bool {
        matches!(self.status, RunStatus::Failed { .. })
    }

    /// Converts a failed status into the corresponding error.
    pub fn ok(self) -> Result<Self> {
        match &self.status {
            RunStatus::Failed {
                time,
                message,
                category,
                ..
            } => Err(Error::RunFault {
                mode: self.mode.to_string(),
                time: *time,
                message: message.clone(),
                category,
            }),
            _ => Ok(self),
        }
    }

    pub fn measured(&self) -> impl Iterator<Item = &Sample> {
        let warmup = self.warmup;
        self.samples.iter().filter(move |s| s.t >= warmup - 1e-9)
    }

    pub fn stats(&self) -> Result<RunStats> {
        let m: Vec<&Sample> = self.measured().collect();
        let col = |f: &dyn Fn(&Sample) -> f64| m.iter().map(|s| f(s)).collect::<Vec<f64>>();
        let mut total = Vec::new();
        for h in H_REF {
            let values = m
                .iter()
                .map(|s| total_image_error(s.e_lateral, s.state.phi, h))
                .collect::<Result<Vec<_>>>()?;
            total.push(series_stats(&values)?);
        }
        let roll = col(&|s| s.state.phi.to_degrees());
        let beta = col(&|s| s.beta_est.to_degrees());
        let n = m.len().max(1) as f64;
        Ok(RunStats {
            total: [total[0], total[1]],
            lateral: series_stats(&col(&|s| s.e_lateral))?,
            roll_deg: series_stats(&roll)?,
            beta_deg: series_stats(&beta)?,
            abs_roll_mean_deg: roll.iter().map(|v| v.abs()).sum::<f64>() / n,
            abs_beta_mean_deg: beta.iter().map(|v| v.abs()).sum::<f64>() / n,
            peak_abs_roll_deg: roll.iter().fold(0.0, |a, v| a.max(v.abs())),
        })
    }
}

/// Wind realization shared by every run of a scenario.
pub fn scenario_wind(cfg: &ScenarioConfig) -> WindSeries {
    WindSeries::generate(cfg.wind, cfg.dt, cfg.steps())
}

/// Runs the scenario in double precision with its own wind realization.
pub fn run_scenario(cfg: &ScenarioConfig, mode: ControllerMode) -> Result<RunResult> {
    run_scenario_with::<f64>(cfg, mode, &scenario_wind(cfg))
}

/// Runs the scenario in scalar type `T` against a supplied wind series.
///
/// Configuration and trim problems are returned as errors; faults during the flight end the
/// run early and are reported in [`RunResult::status`].
pub fn run_scenario_with<T: Scalar>(
    cfg: &ScenarioConfig,
    mode: ControllerMode,
    wind: &WindSeries,
) -> Result<RunResult> {
    cfg.validate()?;
    let model = AircraftModel::new(cfg.aircraft.cast::<T>())?;
    let va: T = cast(cfg.airspeed);
    let trim_sol = trim(&model, va, T::zero(), &TrimOptions::default())?;
    let plan = cfg.plan.cast::<T>()?;
    let altitude = plan.altitude_agl;
    let (start, course) = plan.start();
    let mut state = trim_sol.state;
    state.pn = start[0] + cast(cfg.start_offset[0]);
    state.pe = start[1] + cast(cfg.start_offset[1]);
    state.pd = -altitude;
    state.psi = course;

    let mut manager = PathManager::new(plan, cfg.guidance.cast::<T>());
    let mut autopilot = Autopilot::new(mode, cfg.controller.cast::<T>(), model, &trim_sol, altitude, va)?;
    let dt: T = cast(cfg.dt);
    let steps = cfg.steps();
    let mut samples = Vec::with_capacity(steps);
    let mut status = RunStatus::Incomplete;

    for k in 0..steps {
        let t = k as f64 * cfg.dt;
        let env = wind.at::<T>(k);
        let step = (|| -> Result<(Sample, AircraftState<T>, bool)> {
            let air = AirData::from_state(&state, &env);
            let cc = manager.step([state.pn, state.pe, state.pd], dt)?;
            let out = autopilot.step(cc.chi_cmd, &state, &air, dt)?;
            let sample = Sample {
                t,
                state: state.cast(),
                command: out.command.cast(),
                va: air.va.as_f64(),
                chi: air.chi.as_f64(),
                beta: air.beta.as_f64(),
                beta_est: beta_estimate(air.chi, state.psi).as_f64(),
                chi_cmd: cc.chi_cmd.as_f64(),
                chi_cmd_raw: cc.chi_cmd_raw.as_f64(),
                phi_cmd: out.lateral.phi_cmd.as_f64(),
                segment_id: cc.segment_id,
                on_orbit: cc.on_orbit,
                e_lateral: cc.e_lateral().as_f64(),
                wind: [env.wind_n.as_f64(), env.wind_e.as_f64(), env.wind_d.as_f64()],
                saturated: out.lateral.saturated,
                tracked_errors: out.lateral.topology.tracked_errors(),
            };
            if cc.complete {
                return Ok((sample, state, true));
            }
            let next = integrate_step(&state, &out.command, &env, &autopilot.model, dt)?;
            Ok((sample, next, false))
        })();
        match step {
            Ok((sample, next, done)) => {
                if done {
                    status = RunStatus::Completed;
                    break;
                }
                samples.push(sample);
                state = next;
            }
            Err(e) => {
                status = RunStatus::Failed {
                    time: t,
                    message: e.to_string(),
                    category: e.category(),
                    state: state.to_f64_array(),
                };
                break;
            }
        }
    }

    Ok(RunResult {
        scenario: cfg.name.clone(),
        mode,
        dt: cfg.dt,
        warmup: cfg.warmup,
        trim: TrimSolution {
            state: trim_sol.state.cast(),
            command: trim_sol.command.cast(),
            residual: trim_sol.residual.as_f64(),
            iterations: trim_sol.iterations,
        },
        samples,
        status,
    })
}
