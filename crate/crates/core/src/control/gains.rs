//! Gain synthesis by matching closed loops to second-order design models.

use crate::dynamics::{AircraftModel, CombinedYawCoeffs};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControllerMode {
    /// Aileron-only trajectory correction: course → roll → aileron.
    Aotc,
    /// Rudder-augmented trajectory correction: heading → rudder, ailerons hold wings level.
    Ratc,
}

impl ControllerMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ControllerMode::Aotc => "aotc",
            ControllerMode::Ratc => "ratc",
        }
    }
}

impl std::str::FromStr for ControllerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "aotc" => Ok(ControllerMode::Aotc),
            "ratc" => Ok(ControllerMode::Ratc),
            other => Err(Error::Config(format!(
                "unknown controller mode '{other}' (expected aotc|ratc)"
            ))),
        }
    }
}

impl std::fmt::Display for ControllerMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Design parameters for every loop. Frequencies in rad/s, angles in rad.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerConfig<T> {
    pub wn_psi: T,
    pub zeta_psi: T,
    pub wn_roll: T,
    pub zeta_roll: T,
    pub zeta_course: T,
    /// Roll-to-course bandwidth ratio for successive loop closure.
    pub course_separation: T,
    pub bank_limit: T,
    pub wn_pitch: T,
    pub zeta_pitch: T,
    pub wn_altitude: T,
    pub zeta_altitude: T,
    pub wn_airspeed: T,
    pub zeta_airspeed: T,
    /// Limit on the pitch command relative to trim.
    pub pitch_limit: T,
}

impl<T: Scalar> Default for ControllerConfig<T> {
    fn default() -> Self {
        Self {
            wn_psi: T::lit(4.0),
            zeta_psi: T::lit(0.9),
            wn_roll: T::lit(6.0),
            zeta_roll: T::lit(0.9),
            zeta_course: T::lit(1.0),
            course_separation: T::lit(5.0),
            bank_limit: T::lit(45f64.to_radians()),
            wn_pitch: T::lit(5.0),
            zeta_pitch: T::lit(0.8),
            wn_altitude: T::lit(0.4),
            zeta_altitude: T::lit(1.0),
            wn_airspeed: T::lit(0.5),
            zeta_airspeed: T::lit(1.0),
            pitch_limit: T::lit(20f64.to_radians()),
        }
    }
}

impl<T: Scalar> ControllerConfig<T> {
    pub fn cast<U: Scalar>(&self) -> ControllerConfig<U> {
        use crate::scalar::cast;
        ControllerConfig {
            wn_psi: cast(self.wn_psi),
            zeta_psi: cast(self.zeta_psi),
            wn_roll: cast(self.wn_roll),
            zeta_roll: cast(self.zeta_roll),
            zeta_course: cast(self.zeta_course),
            course_separation: cast(self.course_separation),
            bank_limit: cast(self.bank_limit),
            wn_pitch: cast(self.wn_pitch),
            zeta_pitch: cast(self.zeta_pitch),
            wn_altitude: cast(self.wn_altitude),
            zeta_altitude: cast(self.zeta_altitude),
            wn_airspeed: cast(self.wn_airspeed),
            zeta_airspeed: cast(self.zeta_airspeed),
            pitch_limit: cast(self.pitch_limit),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("wn_psi", self.wn_psi),
            ("zeta_psi", self.zeta_psi),
            ("wn_roll", self.wn_roll),
            ("zeta_roll", self.zeta_roll),
            ("zeta_course", self.zeta_course),
            ("bank_limit", self.bank_limit),
            ("wn_pitch", self.wn_pitch),
            ("zeta_pitch", self.zeta_pitch),
            ("wn_altitude", self.wn_altitude),
            ("zeta_altitude", self.zeta_altitude),
            ("wn_airspeed", self.wn_airspeed),
            ("zeta_airspeed", self.zeta_airspeed),
            ("pitch_limit", self.pitch_limit),
        ];
        for (name, v) in positive {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::Validation(format!(
                    "controller {name} must be positive, got {v}"
                )));
            }
        }
        if !(self.course_separation >= T::one()) {
            return Err(Error::Validation(format!(
                "controller course_separation must be >= 1, got {}",
                self.course_separation
            )));
        }
        if !(self.bank_limit < T::FRAC_PI_2()) {
            return Err(Error::Validation(
                "controller bank_limit must be below 90 deg".into(),
            ));
        }
        Ok(())
    }
}

/// Rudder-to-heading PD gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatcGains<T> {
    pub kp_psi: T,
    pub kd_psi: T,
    pub wn_psi: T,
    pub zeta_psi: T,
}

/// PD gains placing the closed-loop heading poles of `a_ψ2/(s(s+a_ψ1))` at
/// `s² + 2ζωₙs + ωₙ²`.
pub fn ratc_gain_synthesis<T: Scalar>(coeffs: &CombinedYawCoeffs<T>, wn: T, zeta: T) -> Result<RatcGains<T>> {
    if coeffs.a_psi2 == T::zero() || !coeffs.a_psi2.is_finite() {
        return Err(Error::UncontrollablePlant);
    }
    if !(wn > T::zero()) || !(zeta > T::zero()) {
        return Err(Error::Config(format!(
            "design wn and zeta must be positive (wn={wn}, zeta={zeta})"
        )));
    }
    Ok(RatcGains {
        kp_psi: wn * wn / coeffs.a_psi2,
        kd_psi: (T::two() * zeta * wn - coeffs.a_psi1) / coeffs.a_psi2,
        wn_psi: wn,
        zeta_psi: zeta,
    })
}

/// Second-order roll plant `φ̈ = −a_φ1·φ̇ + a_φ2·δa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RollPlant<T> {
    pub a_phi1: T,
    pub a_phi2: T,
}

pub fn roll_plant<T: Scalar>(model: &AircraftModel<T>, va: T) -> RollPlant<T> {
    let p = &model.params;
    let g = &model.gammas;
    let cp = p.roll.combine(g.gamma3, &p.yaw, g.gamma4);
    let rho = p.air_density;
    let s = p.wing_area;
    let b = p.wing_span;
    RollPlant {
        a_phi1: -rho * va * s * b * b * cp.p / T::lit(4.0),
        a_phi2: T::half() * rho * va * va * s * b * cp.delta_a,
    }
}

/// Successive-loop-closure gains: roll PD inside, course PI outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AotcGains<T> {
    pub kp_roll: T,
    pub kd_roll: T,
    pub wn_roll: T,
    pub zeta_roll: T,
    pub kp_course: T,
    pub ki_course: T,
    pub wn_course: T,
    pub zeta_course: T,
    pub separation: T,
    pub bank_limit: T,
}

impl<T: Scalar> AotcGains<T> {
    /// Outer loop at least `separation` times slower than the inner loop.
    pub fn satisfies_separation(&self) -> bool {
        self.wn_course * self.separation <= self.wn_roll * (T::one() + T::epsilon() * T::lit(8.0))
    }
}

/// Roll PD from the aileron plant and course PI from `χ/φ = g/(Vg·s)`.
pub fn aotc_gain_synthesis<T: Scalar>(
    plant: &RollPlant<T>,
    vg: T,
    gravity: T,
    config: &ControllerConfig<T>,
) -> Result<AotcGains<T>> {
    if plant.a_phi2 == T::zero() || !plant.a_phi2.is_finite() {
        return Err(Error::UncontrollablePlant);
    }
    if !(vg > T::zero()) {
        return Err(Error::InvalidAirData(format!(
            "groundspeed must be positive, got {vg}"
        )));
    }
    let wn_roll = config.wn_roll;
    let zeta_roll = config.zeta_roll;
    let wn_course = wn_roll / config.course_separation;
    let zeta_course = config.zeta_course;
    Ok(AotcGains {
        kp_roll: wn_roll * wn_roll / plant.a_phi2,
        kd_roll: (T::two() * zeta_roll * wn_roll - plant.a_phi1) / plant.a_phi2,
        wn_roll,
        zeta_roll,
        kp_course: T::two() * zeta_course * wn_course * vg / gravity,
        ki_course: wn_course * wn_course * vg / gravity,
        wn_course,
        zeta_course,
        separation: config.course_separation,
        bank_limit: config.bank_limit,
    })
}

/// Pitch PD, altitude-from-pitch PI and airspeed-from-throttle PI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LongitudinalGains<T> {
    pub kp_pitch: T,
    pub kd_pitch: T,
    pub kp_altitude: T,
    pub ki_altitude: T,
    pub kp_airspeed: T,
    pub ki_airspeed: T,
    pub pitch_limit: T,
}

pub fn longitudinal_gain_synthesis<T: Scalar>(
    model: &AircraftModel<T>,
    va: T,
    alpha: T,
    throttle: T,
    config: &ControllerConfig<T>,
) -> Result<LongitudinalGains<T>> {
    let p = &model.params;
    let rho = p.air_density;
    let s = p.wing_area;
    let c = p.mean_chord;
    let qbar_sc = T::half() * rho * va * va * s * c / p.iyy;
    let a_theta1 = -rho * va * c * c * s * p.pitch.q / (T::lit(4.0) * p.iyy);
    let a_theta2 = -qbar_sc * p.pitch.alpha;
    let a_theta3 = qbar_sc * p.pitch.delta_e;
    if a_theta3 == T::zero() {
        return Err(Error::UncontrollablePlant);
    }
    let wn_p = config.wn_pitch;
    let kp_pitch = (wn_p * wn_p - a_theta2) / a_theta3;
    let kd_pitch = (T::two() * config.zeta_pitch * wn_p - a_theta1) / a_theta3;
    let dc_gain = a_theta3 * kp_pitch / (wn_p * wn_p);

    let wn_h = config.wn_altitude;
    let kp_altitude = T::two() * config.zeta_altitude * wn_h / (dc_gain * va);
    let ki_altitude = wn_h * wn_h / (dc_gain * va);

    let prop = &p.propulsion;
    let ratio = va / prop.zero_thrust_airspeed;
    let a_v2 = prop.static_thrust * (T::one() - ratio * ratio) / p.mass;
    if !(a_v2 > T::zero()) {
        return Err(Error::UncontrollablePlant);
    }
    let drag = p.drag.zero + p.drag.alpha * alpha;
    let dthrust_dva = -T::two() * throttle * prop.static_thrust * va
        / (prop.zero_thrust_airspeed * prop.zero_thrust_airspeed);
    let a_v1 = (rho * va * s * drag - dthrust_dva) / p.mass;
    let wn_v = config.wn_airspeed;
    Ok(LongitudinalGains {
        kp_pitch,
        kd_pitch,
        kp_altitude,
        ki_altitude,
        kp_airspeed: (T::two() * config.zeta_airspeed * wn_v - a_v1) / a_v2,
        ki_airspeed: wn_v * wn_v / a_v2,
        pitch_limit: config.pitch_limit,
    })
}
