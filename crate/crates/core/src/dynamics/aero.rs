//! Aerodynamic, propulsive and gravitational force/moment buildup.

use crate::control::ControlCommand;
use crate::dynamics::{AirData, AircraftParams, AircraftState, GammaSet, LateralDerivatives};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Below this airspeed the aerodynamic terms are zeroed instead of normalising rates by `Va`.
pub const MIN_AERO_AIRSPEED: f64 = 0.1;

/// Body-axis forces (gravity and thrust included) and moments about the centre of gravity.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ForcesMoments<T> {
    pub fx: T,
    pub fy: T,
    pub fz: T,
    pub l: T,
    pub m: T,
    pub n: T,
}

impl<T: Scalar> ForcesMoments<T> {
    pub fn is_finite(&self) -> bool {
        [self.fx, self.fy, self.fz, self.l, self.m, self.n]
            .iter()
            .all(|x| x.is_finite())
    }
}

/// Gravity resolved into body axes.
pub fn gravity_body<T: Scalar>(weight: T, phi: T, theta: T) -> [T; 3] {
    [
        -weight * theta.sin(),
        weight * theta.cos() * phi.sin(),
        weight * theta.cos() * phi.cos(),
    ]
}

pub fn aero_forces_moments<T: Scalar>(
    state: &AircraftState<T>,
    cmd: &ControlCommand<T>,
    params: &AircraftParams<T>,
) -> ForcesMoments<T> {
    let va = state.airspeed();
    let [gx, gy, gz] = gravity_body(params.weight(), state.phi, state.theta);
    let thrust = params.propulsion.thrust(cmd.delta_t, va);
    let mut fm = ForcesMoments {
        fx: gx + thrust,
        fy: gy,
        fz: gz,
        l: T::zero(),
        m: T::zero(),
        n: T::zero(),
    };
    if va < T::lit(MIN_AERO_AIRSPEED) {
        return fm;
    }

    let alpha = state.w.atan2(state.u);
    let beta = (state.v / va).max(-T::one()).min(T::one()).asin();
    let qbar_s = T::half() * params.air_density * va * va * params.wing_area;
    let b = params.wing_span;
    let c = params.mean_chord;
    let two_va = T::two() * va;
    let p_hat = b * state.p / two_va;
    let r_hat = b * state.r / two_va;
    let q_hat = c * state.q / two_va;

    let c_lift = params.lift.evaluate(alpha, q_hat, cmd.delta_e);
    let c_drag = params.drag.evaluate(alpha, q_hat, cmd.delta_e);
    let c_side = params.side.evaluate(beta, p_hat, r_hat, cmd.delta_a, cmd.delta_r);
    let c_roll = params.roll.evaluate(beta, p_hat, r_hat, cmd.delta_a, cmd.delta_r);
    let c_yaw = params.yaw.evaluate(beta, p_hat, r_hat, cmd.delta_a, cmd.delta_r);
    let c_pitch = params.pitch.evaluate(alpha, q_hat, cmd.delta_e);

    let (sa, ca) = alpha.sin_cos();
    fm.fx = fm.fx + qbar_s * (-c_drag * ca + c_lift * sa);
    fm.fy = fm.fy + qbar_s * c_side;
    fm.fz = fm.fz + qbar_s * (-c_drag * sa - c_lift * ca);
    fm.l = qbar_s * b * c_roll;
    fm.m = qbar_s * c * c_pitch;
    fm.n = qbar_s * b * c_yaw;
    fm
}

/// Combined roll/yaw derivatives `C_r* = Γ4·C_l* + Γ8·C_n*` and the second-order heading
/// plant `ψ̈ = −a_ψ1·ψ̇ + a_ψ2·δr + d_ψ` built from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombinedYawCoeffs<T> {
    pub cr: LateralDerivatives<T>,
    /// Yaw-rate damping, 1/s.
    pub a_psi1: T,
    /// Rudder effectiveness, rad/s² per rad.
    pub a_psi2: T,
    /// Lumped disturbance from sideslip, roll rate, aileron and the zero term, rad/s².
    pub d_psi: T,
}

/// Builds the combined coefficients and heading plant at the given flight condition.
///
/// `p` and `delta_a` feed only the disturbance term.
pub fn combined_yaw_coeffs<T: Scalar>(
    params: &AircraftParams<T>,
    gammas: &GammaSet<T>,
    airdata: &AirData<T>,
    p: T,
    delta_a: T,
) -> Result<CombinedYawCoeffs<T>> {
    let va = airdata.va;
    if !(va > T::zero()) || !va.is_finite() {
        return Err(Error::InvalidAirData(format!(
            "airspeed must be positive, got {va}"
        )));
    }
    let cr = params.roll.combine(gammas.gamma4, &params.yaw, gammas.gamma8);
    let rho = params.air_density;
    let s = params.wing_area;
    let b = params.wing_span;
    let qbar_sb = T::half() * rho * va * va * s * b;
    let a_psi1 = -rho * va * s * b * b * cr.r / T::lit(4.0);
    let a_psi2 = qbar_sb * cr.delta_r;
    let p_hat = b * p / (T::two() * va);
    let d_psi = qbar_sb * (cr.zero + cr.beta * airdata.beta + cr.p * p_hat + cr.delta_a * delta_a);
    Ok(CombinedYawCoeffs {
        cr,
        a_psi1,
        a_psi2,
        d_psi,
    })
}

/// `ṙ` evaluated through the combined coefficients rather than through `Γ4·l + Γ8·n`.
pub fn yaw_acceleration_combined<T: Scalar>(
    state: &AircraftState<T>,
    cmd: &ControlCommand<T>,
    params: &AircraftParams<T>,
    gammas: &GammaSet<T>,
) -> T {
    let va = state.airspeed();
    let inertial = gammas.gamma7 * state.p * state.q - gammas.gamma1 * state.q * state.r;
    if va < T::lit(MIN_AERO_AIRSPEED) {
        return inertial;
    }
    let cr = params.roll.combine(gammas.gamma4, &params.yaw, gammas.gamma8);
    let beta = (state.v / va).max(-T::one()).min(T::one()).asin();
    let b = params.wing_span;
    let qbar_sb = T::half() * params.air_density * va * va * params.wing_area * b;
    let two_va = T::two() * va;
    inertial
        + qbar_sb
            * cr.evaluate(
                beta,
                b * state.p / two_va,
                b * state.r / two_va,
                cmd.delta_a,
                cmd.delta_r,
            )
}
