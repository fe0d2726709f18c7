//! Per-step autopilot: reschedules gains on the current airspeed, runs the selected lateral
//! controller and the longitudinal holds, then applies actuator rate limits.

use crate::control::gains::{
    aotc_gain_synthesis, longitudinal_gain_synthesis, ratc_gain_synthesis, roll_plant, AotcGains,
    ControllerConfig, ControllerMode, LongitudinalGains, RatcGains,
};
use crate::control::lateral::{aotc_step, ratc_step, LateralOutput, LoopState};
use crate::control::longitudinal::{longitudinal_holds, LongitudinalTrim};
use crate::control::ControlCommand;
use crate::dynamics::{combined_yaw_coeffs, AirData, AircraftModel, AircraftState, TrimSolution};
use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutopilotOutput<T> {
    pub command: ControlCommand<T>,
    pub lateral: LateralOutput<T>,
    pub ratc: RatcGains<T>,
    pub aotc: AotcGains<T>,
    pub longitudinal: LongitudinalGains<T>,
}

#[derive(Debug, Clone)]
pub struct Autopilot<T> {
    pub mode: ControllerMode,
    pub config: ControllerConfig<T>,
    pub model: AircraftModel<T>,
    pub trim_command: ControlCommand<T>,
    pub trim_alpha: T,
    pub longitudinal_trim: LongitudinalTrim<T>,
    pub altitude_cmd: T,
    pub airspeed_cmd: T,
    pub loop_state: LoopState<T>,
    prev_command: ControlCommand<T>,
}

impl<T: Scalar> Autopilot<T> {
    pub fn new(
        mode: ControllerMode,
        config: ControllerConfig<T>,
        model: AircraftModel<T>,
        trim: &TrimSolution<T>,
        altitude_cmd: T,
        airspeed_cmd: T,
    ) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            mode,
            config,
            model,
            trim_command: trim.command,
            trim_alpha: trim.alpha(),
            longitudinal_trim: LongitudinalTrim {
                theta: trim.state.theta,
                delta_e: trim.command.delta_e,
                delta_t: trim.command.delta_t,
            },
            altitude_cmd,
            airspeed_cmd,
            loop_state: LoopState::default(),
            prev_command: trim.command,
        })
    }

    /// Gains at the given flight condition, exactly as the controller would schedule them.
    pub fn scheduled_gains(
        &self,
        state: &AircraftState<T>,
        airdata: &AirData<T>,
    ) -> Result<(RatcGains<T>, AotcGains<T>, LongitudinalGains<T>)> {
        let params = &self.model.params;
        let coeffs = combined_yaw_coeffs(
            params,
            &self.model.gammas,
            airdata,
            state.p,
            self.prev_command.delta_a,
        )?;
        let ratc = ratc_gain_synthesis(&coeffs, self.config.wn_psi, self.config.zeta_psi)?;
        let plant = roll_plant(&self.model, airdata.va);
        let aotc = aotc_gain_synthesis(&plant, airdata.vg.max(T::one()), params.gravity, &self.config)?;
        let longitudinal = longitudinal_gain_synthesis(
            &self.model,
            airdata.va,
            self.trim_alpha,
            self.longitudinal_trim.delta_t,
            &self.config,
        )?;
        Ok((ratc, aotc, longitudinal))
    }

    pub fn step(
        &mut self,
        chi_cmd: T,
        state: &AircraftState<T>,
        airdata: &AirData<T>,
        dt: T,
    ) -> Result<AutopilotOutput<T>> {
        let (ratc, aotc, longitudinal) = self.scheduled_gains(state, airdata)?;
        let limits = self.model.params.actuators;
        let mut lateral = match self.mode {
            ControllerMode::Ratc => ratc_step(
                chi_cmd,
                state,
                &ratc,
                aotc.kp_roll,
                aotc.kd_roll,
                &limits,
                &mut self.loop_state,
            ),
            ControllerMode::Aotc => {
                aotc_step(chi_cmd, state, airdata, &aotc, &limits, &mut self.loop_state, dt)
            }
        };
        lateral.delta_a = lateral.delta_a + self.trim_command.delta_a;
        lateral.delta_r = lateral.delta_r + self.trim_command.delta_r;
        let (delta_e, delta_t) = longitudinal_holds(
            state,
            airdata,
            self.altitude_cmd,
            self.airspeed_cmd,
            &self.longitudinal_trim,
            &longitudinal,
            &limits,
            &mut self.loop_state,
            dt,
        );
        let command = ControlCommand {
            delta_a: lateral.delta_a,
            delta_e,
            delta_r: lateral.delta_r,
            delta_t,
        }
        .clamped(&limits)
        .rate_limited(&self.prev_command, &limits, dt);
        self.prev_command = command;
        Ok(AutopilotOutput {
            command,
            lateral,
            ratc,
            aotc,
            longitudinal,
        })
    }
}
