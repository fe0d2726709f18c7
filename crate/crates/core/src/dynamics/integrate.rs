//! Fixed-step classical Runge-Kutta propagation.

use crate::control::ControlCommand;
use crate::dynamics::{
    aero_forces_moments, gamma_terms, state_derivative, AircraftParams, AircraftState, Environment, GammaSet,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_DT: f64 = 0.01;

/// Airframe parameters paired with their precomputed Γ terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AircraftModel<T> {
    pub params: AircraftParams<T>,
    pub gammas: GammaSet<T>,
}

impl<T: Scalar> AircraftModel<T> {
    pub fn new(params: AircraftParams<T>) -> Result<Self> {
        params.validate()?;
        let gammas = gamma_terms(&params)?;
        Ok(Self { params, gammas })
    }

    /// Full state derivative for a command, including the force/moment buildup.
    pub fn derivative(
        &self,
        state: &AircraftState<T>,
        cmd: &ControlCommand<T>,
        env: &Environment<T>,
    ) -> Result<AircraftState<T>> {
        let fm = aero_forces_moments(state, cmd, &self.params);
        if !fm.is_finite() {
            return Err(Error::IntegrationFault("forces/moments".into()));
        }
        state_derivative(state, &fm, &self.params, &self.gammas, env)
    }
}

/// One classical fourth-order Runge-Kutta step of `y' = f(y)`.
pub fn rk4_step<T, const N: usize, F>(mut f: F, y: &[T; N], dt: T) -> Result<[T; N]>
where
    T: Scalar,
    F: FnMut(&[T; N]) -> Result<[T; N]>,
{
    let half = dt * T::half();
    let offset = |base: &[T; N], k: &[T; N], h: T| -> [T; N] {
        let mut out = *base;
        for (o, ki) in out.iter_mut().zip(k) {
            *o = *o + h * *ki;
        }
        out
    };
    let k1 = f(y)?;
    let k2 = f(&offset(y, &k1, half))?;
    let k3 = f(&offset(y, &k2, half))?;
    let k4 = f(&offset(y, &k3, dt))?;
    let sixth = dt / T::lit(6.0);
    let mut out = *y;
    for i in 0..N {
        out[i] = out[i] + sixth * (k1[i] + T::two() * (k2[i] + k3[i]) + k4[i]);
    }
    Ok(out)
}

/// Advances the aircraft by `dt` with the command and wind held constant over the step.
///
/// Surface deflections are clamped to the actuator limits and throttle to `[0, 1]` before
/// integration; roll and yaw are re-wrapped afterwards.
pub fn integrate_step<T: Scalar>(
    state: &AircraftState<T>,
    cmd: &ControlCommand<T>,
    env: &Environment<T>,
    model: &AircraftModel<T>,
    dt: T,
) -> Result<AircraftState<T>> {
    if !(dt > T::zero()) {
        return Err(Error::Config(format!("time step must be positive, got {dt}")));
    }
    let cmd = cmd.clamped(&model.params.actuators);
    let next = rk4_step(
        |y: &[T; 12]| {
            let d = model.derivative(&AircraftState::from_array(*y), &cmd, env)?;
            let arr = d.to_array();
            if arr.iter().any(|x| !x.is_finite()) {
                return Err(Error::IntegrationFault("state derivative".into()));
            }
            Ok(arr)
        },
        &state.to_array(),
        dt,
    )?;
    let next = AircraftState::from_array(next);
    if !next.is_finite() {
        return Err(Error::IntegrationFault("state".into()));
    }
    Ok(next.wrapped())
}
