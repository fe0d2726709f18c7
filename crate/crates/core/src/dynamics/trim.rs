//! Straight-line trim by damped Newton iteration.
//!
//! Unknowns are `(α, β, θ, δe, δt, δa, δr)` with wings level and zero body rates; residuals
//! are `(u̇, v̇, ẇ, ṗ, q̇, ṙ)` plus the air-relative climb-angle error. For a laterally
//! symmetric airframe the lateral unknowns stay exactly at zero.

use crate::control::ControlCommand;
use crate::dynamics::{body_to_inertial, AircraftModel, AircraftState, Environment};
use crate::error::{Error, Result};
use crate::scalar::{cast, Scalar};

const N: usize = 7;

#[derive(Debug, Clone, Copy)]
pub struct TrimOptions<T> {
    pub tolerance: T,
    pub max_iterations: usize,
}

impl<T: Scalar> Default for TrimOptions<T> {
    fn default() -> Self {
        // Single precision cannot resolve 1e-6 m/s² residuals on a 100 N airframe.
        let floor = T::epsilon().sqrt() * T::lit(10.0);
        Self {
            tolerance: T::lit(1e-6).max(floor),
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TrimSolution<T> {
    pub state: AircraftState<T>,
    pub command: ControlCommand<T>,
    /// Infinity norm of the residual vector at the returned point.
    pub residual: T,
    pub iterations: usize,
}

impl<T: Scalar> TrimSolution<T> {
    pub fn alpha(&self) -> T {
        self.state.w.atan2(self.state.u)
    }
}

fn unpack<T: Scalar>(x: &[T; N], va: T) -> (AircraftState<T>, ControlCommand<T>) {
    let (alpha, beta, theta) = (x[0], x[1], x[2]);
    let state = AircraftState {
        u: va * alpha.cos() * beta.cos(),
        v: va * beta.sin(),
        w: va * alpha.sin() * beta.cos(),
        theta,
        ..Default::default()
    };
    let cmd = ControlCommand {
        delta_e: x[3],
        delta_t: x[4],
        delta_a: x[5],
        delta_r: x[6],
    };
    (state, cmd)
}

fn residual<T: Scalar>(model: &AircraftModel<T>, x: &[T; N], va: T, gamma: T) -> Result<[T; N]> {
    let (state, cmd) = unpack(x, va);
    let d = model.derivative(&state, &cmd, &Environment::calm())?;
    let rot = body_to_inertial(state.phi, state.theta, state.psi);
    let climb_rate = -(rot[2][0] * state.u + rot[2][1] * state.v + rot[2][2] * state.w);
    let gamma_air = (climb_rate / va).max(-T::one()).min(T::one()).asin();
    Ok([d.u, d.v, d.w, d.p, d.q, d.r, gamma_air - gamma])
}

fn inf_norm<T: Scalar>(r: &[T; N]) -> T {
    r.iter().fold(T::zero(), |m, v| m.max(v.abs()))
}

/// Newton step `a·x = b`, solved by LU in double precision whatever `T` is.
fn solve<T: Scalar>(a: [[T; N]; N], b: [T; N]) -> Option<[T; N]> {
    let a = nalgebra::SMatrix::<f64, N, N>::from_fn(|i, j| a[i][j].as_f64());
    let b = nalgebra::SVector::<f64, N>::from_fn(|i, _| b[i].as_f64());
    let x = a.lu().solve(&b)?;
    if x.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(std::array::from_fn(|i| cast(x[i])))
}

/// Trims the airframe for straight flight at airspeed `va` and air-relative climb angle
/// `gamma`. The returned state sits at the origin heading north.
pub fn trim<T: Scalar>(
    model: &AircraftModel<T>,
    va: T,
    gamma: T,
    options: &TrimOptions<T>,
) -> Result<TrimSolution<T>> {
    if !(va > T::lit(1.0)) {
        return Err(Error::InvalidAirData(format!("trim airspeed too low: {va}")));
    }
    let alpha0 = T::lit(0.05);
    let mut x = [
        alpha0,
        T::zero(),
        alpha0 + gamma,
        T::zero(),
        T::half(),
        T::zero(),
        T::zero(),
    ];
    let mut r = residual(model, &x, va, gamma)?;
    let mut norm = inf_norm(&r);
    let step_floor = T::epsilon().sqrt();

    for iteration in 0..options.max_iterations {
        if norm < options.tolerance {
            return finish(model, x, va, norm, iteration);
        }
        let mut jac = [[T::zero(); N]; N];
        for j in 0..N {
            let h = step_floor * x[j].abs().max(T::one());
            let mut xp = x;
            let mut xm = x;
            xp[j] = xp[j] + h;
            xm[j] = xm[j] - h;
            let rp = residual(model, &xp, va, gamma)?;
            let rm = residual(model, &xm, va, gamma)?;
            for i in 0..N {
                jac[i][j] = (rp[i] - rm[i]) / (T::two() * h);
            }
        }
        let neg_r = r.map(|v| -v);
        let Some(dx) = solve(jac, neg_r) else {
            return Err(Error::TrimFailure {
                iterations: iteration,
                residual: norm.as_f64(),
            });
        };

        let mut lambda = T::one();
        let mut accepted = false;
        for _ in 0..30 {
            let mut trial = x;
            for i in 0..N {
                trial[i] = trial[i] + lambda * dx[i];
            }
            if let Ok(rt) = residual(model, &trial, va, gamma) {
                let nt = inf_norm(&rt);
                if nt < norm {
                    x = trial;
                    r = rt;
                    norm = nt;
                    accepted = true;
                    break;
                }
            }
            lambda = lambda * T::half();
        }
        if !accepted {
            break;
        }
    }
    if norm < options.tolerance {
        return finish(model, x, va, norm, options.max_iterations);
    }
    Err(Error::TrimFailure {
        iterations: options.max_iterations,
        residual: norm.as_f64(),
    })
}

fn finish<T: Scalar>(
    model: &AircraftModel<T>,
    x: [T; N],
    va: T,
    residual: T,
    iterations: usize,
) -> Result<TrimSolution<T>> {
    let (state, command) = unpack(&x, va);
    if command.delta_t < T::zero() || command.delta_t > T::one() {
        return Err(Error::TrimFailure {
            iterations,
            residual: residual.as_f64(),
        });
    }
    let limits = &model.params.actuators;
    if command.delta_e.abs() > limits.elevator
        || command.delta_a.abs() > limits.aileron
        || command.delta_r.abs() > limits.rudder
    {
        return Err(Error::TrimFailure {
            iterations,
            residual: residual.as_f64(),
        });
    }
    Ok(TrimSolution {
        state,
        command,
        residual,
        iterations,
    })
}
