//! Rigid-body equations of motion.

use crate::dynamics::{AircraftParams, AircraftState, ForcesMoments, GammaSet, StateDerivative};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Distance from ±90° pitch at which the Euler kinematics are considered singular.
pub const PITCH_SINGULARITY_MARGIN: f64 = 1.0e-3;

/// Instantaneous wind in NED, m/s.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Environment<T> {
    pub wind_n: T,
    pub wind_e: T,
    pub wind_d: T,
}

impl<T: Scalar> Environment<T> {
    pub fn calm() -> Self {
        Self::default()
    }

    pub fn steady(wind_n: T, wind_e: T, wind_d: T) -> Self {
        Self {
            wind_n,
            wind_e,
            wind_d,
        }
    }
}

/// ZYX body-to-inertial direction cosine matrix, row-major.
pub fn body_to_inertial<T: Scalar>(phi: T, theta: T, psi: T) -> [[T; 3]; 3] {
    let (sf, cf) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = psi.sin_cos();
    [
        [ct * cp, sf * st * cp - cf * sp, cf * st * cp + sf * sp],
        [ct * sp, sf * st * sp + cf * cp, cf * st * sp - sf * cp],
        [-st, sf * ct, cf * ct],
    ]
}

fn check_pitch<T: Scalar>(state: &AircraftState<T>) -> Result<()> {
    let limit = T::FRAC_PI_2() - T::lit(PITCH_SINGULARITY_MARGIN);
    if !(state.theta.abs() < limit) {
        return Err(Error::Singularity {
            theta_deg: state.theta.as_f64().to_degrees(),
            state: state.to_f64_array(),
        });
    }
    Ok(())
}

/// Twelve state derivatives given the applied forces and moments.
pub fn state_derivative<T: Scalar>(
    state: &AircraftState<T>,
    fm: &ForcesMoments<T>,
    params: &AircraftParams<T>,
    gammas: &GammaSet<T>,
    env: &crate::dynamics::Environment<T>,
) -> Result<StateDerivative<T>> {
    check_pitch(state)?;
    let AircraftState {
        u,
        v,
        w,
        phi,
        theta,
        psi,
        p,
        q,
        r,
        ..
    } = *state;
    let mass = params.mass;

    let rot = body_to_inertial(phi, theta, psi);
    let nav = |row: usize| rot[row][0] * u + rot[row][1] * v + rot[row][2] * w;

    let (sf, cf) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let tt = st / ct;

    Ok(AircraftState {
        pn: env.wind_n + nav(0),
        pe: env.wind_e + nav(1),
        pd: env.wind_d + nav(2),
        u: r * v - q * w + fm.fx / mass,
        v: p * w - r * u + fm.fy / mass,
        w: q * u - p * v + fm.fz / mass,
        phi: p + sf * tt * q + cf * tt * r,
        theta: cf * q - sf * r,
        psi: (sf * q + cf * r) / ct,
        p: gammas.gamma1 * p * q - gammas.gamma2 * q * r + gammas.gamma3 * fm.l + gammas.gamma4 * fm.n,
        q: gammas.gamma5 * p * r - gammas.gamma6 * (p * p - r * r) + fm.m / params.iyy,
        r: gammas.gamma7 * p * q - gammas.gamma1 * q * r + gammas.gamma4 * fm.l + gammas.gamma8 * fm.n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::gamma_terms;
    use crate::dynamics::testing::unit_params;
    use proptest::prelude::*;

    fn deriv(state: AircraftState<f64>, env: Environment<f64>) -> AircraftState<f64> {
        let p = unit_params();
        let g = gamma_terms(&p).unwrap();
        state_derivative(&state, &ForcesMoments::default(), &p, &g, &env).unwrap()
    }

    #[test]
    fn pure_forward_translation() {
        let d = deriv(
            AircraftState {
                u: 20.0,
                ..Default::default()
            },
            Environment::calm(),
        );
        let expected = AircraftState {
            pn: 20.0,
            ..Default::default()
        };
        assert_eq!(d, expected);
    }

    #[test]
    fn wind_is_additive() {
        let d = deriv(
            AircraftState {
                u: 20.0,
                ..Default::default()
            },
            Environment::steady(3.0, 0.0, 0.0),
        );
        assert_eq!(d.pn, 23.0);
    }

    #[test]
    fn level_roll_rate_kinematics() {
        let d = deriv(
            AircraftState {
                p: 0.1,
                ..Default::default()
            },
            Environment::calm(),
        );
        assert_eq!((d.phi, d.theta, d.psi), (0.1, 0.0, 0.0));
    }

    #[test]
    fn singular_pitch_rejected() {
        let p = unit_params();
        let g = gamma_terms(&p).unwrap();
        let s = AircraftState {
            theta: std::f64::consts::FRAC_PI_2,
            ..Default::default()
        };
        let err = state_derivative(&s, &ForcesMoments::default(), &p, &g, &Environment::calm());
        assert!(matches!(err, Err(Error::Singularity { .. })));
    }

    proptest! {
        #[test]
        fn dcm_is_orthonormal(
            phi in -std::f64::consts::PI..std::f64::consts::PI,
            theta in -1.5_f64..1.5,
            psi in -std::f64::consts::PI..std::f64::consts::PI,
        ) {
            let r = body_to_inertial(phi, theta, psi);
            for i in 0..3 {
                for j in 0..3 {
                    let dot: f64 = (0..3).map(|k| r[i][k] * r[j][k]).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((dot - expected).abs() < 1e-9);
                }
            }
            let det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
            prop_assert!((det - 1.0).abs() < 1e-9);
        }

        #[test]
        fn rotation_preserves_speed(
            u in -30.0_f64..30.0, v in -30.0_f64..30.0, w in -30.0_f64..30.0,
            phi in -3.0_f64..3.0, theta in -1.4_f64..1.4, psi in -3.0_f64..3.0,
        ) {
            let d = deriv(AircraftState { u, v, w, phi, theta, psi, ..Default::default() }, Environment::calm());
            let inertial = (d.pn * d.pn + d.pe * d.pe + d.pd * d.pd).sqrt();
            let body = (u * u + v * v + w * w).sqrt();
            prop_assert!((inertial - body).abs() <= 1e-10 * body.max(1e-12));
        }
    }
}
