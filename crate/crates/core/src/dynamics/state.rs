use crate::dynamics::Environment;
use crate::scalar::{cast, wrap_angle, Scalar};

/// Rigid-body state: NED position, body-axis air-relative velocity, ZYX Euler angles and
/// body rates. Also used to carry time derivatives of the same quantities.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AircraftState<T> {
    pub pn: T,
    pub pe: T,
    pub pd: T,
    pub u: T,
    pub v: T,
    pub w: T,
    pub phi: T,
    pub theta: T,
    pub psi: T,
    pub p: T,
    pub q: T,
    pub r: T,
}

/// Time derivative of [`AircraftState`], field for field.
pub type StateDerivative<T> = AircraftState<T>;

impl<T: Scalar> AircraftState<T> {
    pub fn to_array(&self) -> [T; 12] {
        [
            self.pn, self.pe, self.pd, self.u, self.v, self.w, self.phi, self.theta, self.psi, self.p,
            self.q, self.r,
        ]
    }

    pub fn from_array(a: [T; 12]) -> Self {
        Self {
            pn: a[0],
            pe: a[1],
            pd: a[2],
            u: a[3],
            v: a[4],
            w: a[5],
            phi: a[6],
            theta: a[7],
            psi: a[8],
            p: a[9],
            q: a[10],
            r: a[11],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    /// Altitude above the NED origin (`−pd`).
    pub fn altitude(&self) -> T {
        -self.pd
    }

    pub fn airspeed(&self) -> T {
        (self.u * self.u + self.v * self.v + self.w * self.w).sqrt()
    }

    /// Re-wraps roll and yaw into (−π, π].
    pub fn wrapped(mut self) -> Self {
        self.phi = wrap_angle(self.phi);
        self.psi = wrap_angle(self.psi);
        self
    }

    pub fn cast<U: Scalar>(&self) -> AircraftState<U> {
        AircraftState::from_array(self.to_array().map(cast))
    }

    pub fn to_f64_array(&self) -> [f64; 12] {
        self.to_array().map(Scalar::as_f64)
    }
}

/// Air-relative and ground-relative flight quantities derived from the state.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AirData<T> {
    pub va: T,
    pub vg: T,
    pub alpha: T,
    pub beta: T,
    pub gamma_climb: T,
    pub chi: T,
}

impl<T: Scalar> AirData<T> {
    pub fn from_state(state: &AircraftState<T>, env: &Environment<T>) -> Self {
        let va = state.airspeed();
        let (alpha, beta) = if va > T::zero() {
            (
                state.w.atan2(state.u),
                (state.v / va).max(-T::one()).min(T::one()).asin(),
            )
        } else {
            (T::zero(), T::zero())
        };
        let r = crate::dynamics::body_to_inertial(state.phi, state.theta, state.psi);
        let body = [state.u, state.v, state.w];
        let mut ground = [env.wind_n, env.wind_e, env.wind_d];
        for (i, g) in ground.iter_mut().enumerate() {
            *g = *g + r[i][0] * body[0] + r[i][1] * body[1] + r[i][2] * body[2];
        }
        let vg = (ground[0] * ground[0] + ground[1] * ground[1] + ground[2] * ground[2]).sqrt();
        let horizontal = (ground[0] * ground[0] + ground[1] * ground[1]).sqrt();
        let chi = if horizontal > T::zero() {
            wrap_angle(ground[1].atan2(ground[0]))
        } else {
            wrap_angle(state.psi)
        };
        let gamma_climb = if vg > T::zero() {
            (-ground[2]).atan2(horizontal)
        } else {
            T::zero()
        };
        Self {
            va,
            vg,
            alpha,
            beta,
            gamma_climb,
            chi,
        }
    }
}
