//! Lateral trajectory controllers (aileron-only and rudder-augmented), longitudinal holds
//! and the gain synthesis that feeds them.

mod autopilot;
mod gains;
mod lateral;
mod longitudinal;
mod turn;

pub use autopilot::{Autopilot, AutopilotOutput};
pub use gains::{
    aotc_gain_synthesis, longitudinal_gain_synthesis, ratc_gain_synthesis, roll_plant, AotcGains,
    ControllerConfig, ControllerMode, LongitudinalGains, RatcGains, RollPlant,
};
pub use lateral::{aotc_step, ratc_step, LateralOutput, LoopState, LoopTopology};
pub use longitudinal::{longitudinal_holds, LongitudinalTrim};
pub use turn::coordinated_turn_radius;

use crate::dynamics::ActuatorLimits;
use crate::scalar::Scalar;

/// Surface deflections (rad) and throttle (0..1).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ControlCommand<T> {
    pub delta_a: T,
    pub delta_e: T,
    pub delta_r: T,
    pub delta_t: T,
}

impl<T: Scalar> ControlCommand<T> {
    pub fn clamped(&self, limits: &ActuatorLimits<T>) -> Self {
        Self {
            delta_a: clamp_sym(self.delta_a, limits.aileron),
            delta_e: clamp_sym(self.delta_e, limits.elevator),
            delta_r: clamp_sym(self.delta_r, limits.rudder),
            delta_t: self.delta_t.max(T::zero()).min(T::one()),
        }
    }

    /// Moves each surface from `prev` toward `self` no faster than the actuator rate limits.
    pub fn rate_limited(&self, prev: &Self, limits: &ActuatorLimits<T>, dt: T) -> Self {
        let step = |target: T, from: T, rate: T| {
            let max = rate * dt;
            from + clamp_sym(target - from, max)
        };
        Self {
            delta_a: step(self.delta_a, prev.delta_a, limits.aileron_rate),
            delta_e: step(self.delta_e, prev.delta_e, limits.elevator_rate),
            delta_r: step(self.delta_r, prev.delta_r, limits.rudder_rate),
            delta_t: self.delta_t,
        }
    }

    pub fn cast<U: Scalar>(&self) -> ControlCommand<U> {
        use crate::scalar::cast;
        ControlCommand {
            delta_a: cast(self.delta_a),
            delta_e: cast(self.delta_e),
            delta_r: cast(self.delta_r),
            delta_t: cast(self.delta_t),
        }
    }
}

pub(crate) fn clamp_sym<T: Scalar>(x: T, limit: T) -> T {
    x.max(-limit).min(limit)
}
