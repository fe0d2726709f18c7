//! Lateral step functions for the two trajectory-correction strategies.

use crate::control::clamp_sym;
use crate::control::gains::{AotcGains, RatcGains};
use crate::dynamics::{ActuatorLimits, AirData, AircraftState};
use crate::scalar::{angle_diff, Scalar};

/// How many error signals a lateral controller closes on the way from the course command to
/// a control surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopTopology {
    /// Heading error straight to rudder.
    Single,
    /// Course error to roll command, roll error to aileron.
    Nested,
}

impl LoopTopology {
    pub fn tracked_errors(&self) -> usize {
        match self {
            LoopTopology::Single => 1,
            LoopTopology::Nested => 2,
        }
    }
}

/// Mutable controller memory owned by one simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LoopState<T> {
    pub course_integrator: T,
    pub altitude_integrator: T,
    pub airspeed_integrator: T,
    pub prev_course_error: T,
    pub prev_heading_error: T,
}

impl<T: Scalar> LoopState<T> {
    pub fn is_finite(&self) -> bool {
        [
            self.course_integrator,
            self.altitude_integrator,
            self.airspeed_integrator,
            self.prev_course_error,
            self.prev_heading_error,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LateralOutput<T> {
    pub delta_a: T,
    pub delta_r: T,
    /// Roll command the aileron loop tracked (zero for the wings-level hold).
    pub phi_cmd: T,
    /// Outer-loop error: heading error for RATC, course error for AOTC.
    pub primary_error: T,
    /// Roll error for AOTC's inner loop; `None` when only one error is tracked.
    pub inner_error: Option<T>,
    pub topology: LoopTopology,
    pub saturated: bool,
}

/// Rudder PD on heading (`ψ_c = χ_c`) with measured yaw rate as the derivative, plus an
/// aileron PD holding wings level. Sideslip is never fed back.
pub fn ratc_step<T: Scalar>(
    chi_cmd: T,
    state: &AircraftState<T>,
    gains: &RatcGains<T>,
    roll_kp: T,
    roll_kd: T,
    limits: &ActuatorLimits<T>,
    loop_state: &mut LoopState<T>,
) -> LateralOutput<T> {
    let heading_error = angle_diff(chi_cmd, state.psi);
    loop_state.prev_heading_error = heading_error;
    let dr = gains.kp_psi * heading_error - gains.kd_psi * state.r;
    let da = roll_kp * (T::zero() - state.phi) - roll_kd * state.p;
    let delta_r = clamp_sym(dr, limits.rudder);
    let delta_a = clamp_sym(da, limits.aileron);
    LateralOutput {
        delta_a,
        delta_r,
        phi_cmd: T::zero(),
        primary_error: heading_error,
        inner_error: None,
        topology: LoopTopology::Single,
        saturated: delta_r != dr || delta_a != da,
    }
}

/// Course PI producing a bank command, then roll PD to aileron. The rudder is left at zero.
///
/// The integrator only accumulates while the bank command is unsaturated (or the error would
/// pull it out of saturation) and is bounded so that it alone cannot exceed the bank limit.
pub fn aotc_step<T: Scalar>(
    chi_cmd: T,
    state: &AircraftState<T>,
    airdata: &AirData<T>,
    gains: &AotcGains<T>,
    limits: &ActuatorLimits<T>,
    loop_state: &mut LoopState<T>,
    dt: T,
) -> LateralOutput<T> {
    let course_error = angle_diff(chi_cmd, airdata.chi);
    loop_state.prev_course_error = course_error;

    let unsat = gains.kp_course * course_error + gains.ki_course * loop_state.course_integrator;
    let at_limit = unsat.abs() >= gains.bank_limit;
    let unwinding = unsat * course_error < T::zero();
    if !at_limit || unwinding {
        loop_state.course_integrator = loop_state.course_integrator + course_error * dt;
    }
    if gains.ki_course > T::zero() {
        let bound = gains.bank_limit / gains.ki_course;
        loop_state.course_integrator = clamp_sym(loop_state.course_integrator, bound);
    }
    let phi_raw = gains.kp_course * course_error + gains.ki_course * loop_state.course_integrator;
    let phi_cmd = clamp_sym(phi_raw, gains.bank_limit);

    let roll_error = phi_cmd - state.phi;
    let da = gains.kp_roll * roll_error - gains.kd_roll * state.p;
    let delta_a = clamp_sym(da, limits.aileron);
    LateralOutput {
        delta_a,
        delta_r: T::zero(),
        phi_cmd,
        primary_error: course_error,
        inner_error: Some(roll_error),
        topology: LoopTopology::Nested,
        saturated: delta_a != da || phi_cmd != phi_raw,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> ActuatorLimits<f64> {
        ActuatorLimits {
            aileron: 0.5,
            elevator: 0.5,
            rudder: 0.5,
            aileron_rate: 5.0,
            elevator_rate: 5.0,
            rudder_rate: 5.0,
        }
    }

    fn ratc_gains() -> RatcGains<f64> {
        RatcGains {
            kp_psi: -0.5,
            kd_psi: -0.2,
            wn_psi: 4.0,
            zeta_psi: 0.9,
        }
    }

    fn aotc_gains() -> AotcGains<f64> {
        AotcGains {
            kp_roll: 0.6,
            kd_roll: 0.1,
            wn_roll: 6.0,
            zeta_roll: 0.9,
            kp_course: 2.4,
            ki_course: 0.3,
            wn_course: 1.2,
            zeta_course: 1.0,
            separation: 5.0,
            bank_limit: 45f64.to_radians(),
        }
    }

    #[test]
    fn ratc_fixed_point() {
        let s = AircraftState {
            psi: 0.3,
            ..Default::default()
        };
        let mut ls = LoopState::default();
        let out = ratc_step(0.3, &s, &ratc_gains(), 0.6, 0.1, &limits(), &mut ls);
        assert_eq!((out.delta_a, out.delta_r), (0.0, 0.0));
        assert_eq!(out.topology.tracked_errors(), 1);
    }

    #[test]
    fn ratc_error_sign_follows_gain() {
        let s = AircraftState::default();
        let mut ls = LoopState::default();
        let out = ratc_step(0.1, &s, &ratc_gains(), 0.6, 0.1, &limits(), &mut ls);
        assert!(out.delta_r < 0.0);
    }

    #[test]
    fn aotc_fixed_point_and_sign() {
        let s = AircraftState::default();
        let air = AirData {
            va: 20.0,
            vg: 20.0,
            ..Default::default()
        };
        let mut ls = LoopState::default();
        let out = aotc_step(0.0, &s, &air, &aotc_gains(), &limits(), &mut ls, 0.01);
        assert_eq!(out.delta_a, 0.0);
        assert_eq!(out.topology.tracked_errors(), 2);
        let out = aotc_step(0.2, &s, &air, &aotc_gains(), &limits(), &mut ls, 0.01);
        assert!(out.phi_cmd > 0.0);
    }

    #[test]
    fn aotc_bank_saturates_at_limit() {
        let s = AircraftState::default();
        let air = AirData {
            va: 20.0,
            vg: 20.0,
            chi: 0.0,
            ..Default::default()
        };
        let mut ls = LoopState::default();
        let out = aotc_step(
            std::f64::consts::PI,
            &s,
            &air,
            &aotc_gains(),
            &limits(),
            &mut ls,
            0.01,
        );
        assert_eq!(out.phi_cmd, 45f64.to_radians());
    }

    #[test]
    fn integrator_recovers_quickly_after_long_saturation() {
        let g = aotc_gains();
        let s = AircraftState::default();
        let mut air = AirData {
            va: 20.0,
            vg: 20.0,
            chi: 0.0,
            ..Default::default()
        };
        let mut ls = LoopState::default();
        for _ in 0..6000 {
            aotc_step(1.0, &s, &air, &g, &limits(), &mut ls, 0.01);
        }
        air.chi = 0.6;
        let mut t = 0.0;
        loop {
            let out = aotc_step(0.5, &s, &air, &g, &limits(), &mut ls, 0.01);
            t += 0.01;
            if out.phi_cmd.abs() < g.bank_limit {
                break;
            }
            assert!(t < 2.0, "bank command still saturated after {t} s");
        }
    }
}
