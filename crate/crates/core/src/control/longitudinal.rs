//! Altitude and airspeed holds. Both feed perturbations around the trim point so that zero
//! error reproduces the trim elevator and throttle exactly.

use crate::control::clamp_sym;
use crate::control::gains::LongitudinalGains;
use crate::control::lateral::LoopState;
use crate::dynamics::{ActuatorLimits, AirData, AircraftState};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LongitudinalTrim<T> {
    pub theta: T,
    pub delta_e: T,
    pub delta_t: T,
}

/// Returns `(δe, δt)`. Altitude error drives a pitch command through a PI, pitch is tracked
/// by a PD on elevator, and airspeed error drives throttle through a PI.
#[allow(clippy::too_many_arguments)]
pub fn longitudinal_holds<T: Scalar>(
    state: &AircraftState<T>,
    airdata: &AirData<T>,
    h_cmd: T,
    va_cmd: T,
    trim: &LongitudinalTrim<T>,
    gains: &LongitudinalGains<T>,
    limits: &ActuatorLimits<T>,
    loop_state: &mut LoopState<T>,
    dt: T,
) -> (T, T) {
    let h_error = h_cmd - state.altitude();
    let pitch_raw = gains.kp_altitude * h_error + gains.ki_altitude * loop_state.altitude_integrator;
    if pitch_raw.abs() < gains.pitch_limit || pitch_raw * h_error < T::zero() {
        loop_state.altitude_integrator = loop_state.altitude_integrator + h_error * dt;
    }
    let pitch_offset = clamp_sym(pitch_raw, gains.pitch_limit);
    let theta_cmd = trim.theta + pitch_offset;
    let de = trim.delta_e + gains.kp_pitch * (theta_cmd - state.theta) - gains.kd_pitch * state.q;
    let delta_e = clamp_sym(de, limits.elevator);

    let v_error = va_cmd - airdata.va;
    let dt_raw =
        trim.delta_t + gains.kp_airspeed * v_error + gains.ki_airspeed * loop_state.airspeed_integrator;
    let throttle = dt_raw.max(T::zero()).min(T::one());
    if throttle == dt_raw || (dt_raw - throttle) * v_error < T::zero() {
        loop_state.airspeed_integrator = loop_state.airspeed_integrator + v_error * dt;
    }
    (delta_e, throttle)
}
