//! Airframe parameters and the on-disk aircraft description.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::{cast, Scalar};

/// Linear lateral-directional derivative set: `C0 + Cβ·β + Cp·p̂ + Cr·r̂ + Cδa·δa + Cδr·δr`,
/// with `p̂ = b·p/(2Va)` and `r̂ = b·r/(2Va)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LateralDerivatives<T> {
    pub zero: T,
    pub beta: T,
    pub p: T,
    pub r: T,
    pub delta_a: T,
    pub delta_r: T,
}

impl<T: Scalar> LateralDerivatives<T> {
    pub fn evaluate(&self, beta: T, p_hat: T, r_hat: T, delta_a: T, delta_r: T) -> T {
        self.zero
            + self.beta * beta
            + self.p * p_hat
            + self.r * r_hat
            + self.delta_a * delta_a
            + self.delta_r * delta_r
    }

    /// Elementwise `a·self + b·other`.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Self {
        Self {
            zero: a * self.zero + b * other.zero,
            beta: a * self.beta + b * other.beta,
            p: a * self.p + b * other.p,
            r: a * self.r + b * other.r,
            delta_a: a * self.delta_a + b * other.delta_a,
            delta_r: a * self.delta_r + b * other.delta_r,
        }
    }

    pub fn cast<U: Scalar>(&self) -> LateralDerivatives<U> {
        LateralDerivatives {
            zero: cast(self.zero),
            beta: cast(self.beta),
            p: cast(self.p),
            r: cast(self.r),
            delta_a: cast(self.delta_a),
            delta_r: cast(self.delta_r),
        }
    }
}

/// Linear longitudinal derivative set: `C0 + Cα·α + Cq·q̂ + Cδe·δe`, `q̂ = c·q/(2Va)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LongitudinalDerivatives<T> {
    pub zero: T,
    pub alpha: T,
    pub q: T,
    pub delta_e: T,
}

impl<T: Scalar> LongitudinalDerivatives<T> {
    pub fn evaluate(&self, alpha: T, q_hat: T, delta_e: T) -> T {
        self.zero + self.alpha * alpha + self.q * q_hat + self.delta_e * delta_e
    }

    pub fn cast<U: Scalar>(&self) -> LongitudinalDerivatives<U> {
        LongitudinalDerivatives {
            zero: cast(self.zero),
            alpha: cast(self.alpha),
            q: cast(self.q),
            delta_e: cast(self.delta_e),
        }
    }
}

/// Surface deflection and slew limits, radians and radians per second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActuatorLimits<T> {
    pub aileron: T,
    pub elevator: T,
    pub rudder: T,
    pub aileron_rate: T,
    pub elevator_rate: T,
    pub rudder_rate: T,
}

impl<T: Scalar> ActuatorLimits<T> {
    pub fn cast<U: Scalar>(&self) -> ActuatorLimits<U> {
        ActuatorLimits {
            aileron: cast(self.aileron),
            elevator: cast(self.elevator),
            rudder: cast(self.rudder),
            aileron_rate: cast(self.aileron_rate),
            elevator_rate: cast(self.elevator_rate),
            rudder_rate: cast(self.rudder_rate),
        }
    }
}

/// Propeller thrust `T = δt · T_static · (1 − (Va/V0)²)`, acting along body x through the
/// centre of gravity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propulsion<T> {
    pub static_thrust: T,
    pub zero_thrust_airspeed: T,
}

impl<T: Scalar> Propulsion<T> {
    pub fn thrust(&self, throttle: T, va: T) -> T {
        let ratio = va / self.zero_thrust_airspeed;
        let available = self.static_thrust * (T::one() - ratio * ratio);
        throttle * available.max(T::zero())
    }

    pub fn cast<U: Scalar>(&self) -> Propulsion<U> {
        Propulsion {
            static_thrust: cast(self.static_thrust),
            zero_thrust_airspeed: cast(self.zero_thrust_airspeed),
        }
    }
}

/// Mass, inertia, geometry, aerodynamic derivatives and actuator limits of the airframe.
///
/// Products of inertia `Ixy` and `Iyz` are zero (laterally symmetric airframe).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AircraftParams<T> {
    pub mass: T,
    pub gravity: T,
    pub air_density: T,
    pub wing_area: T,
    pub wing_span: T,
    pub mean_chord: T,
    pub ixx: T,
    pub iyy: T,
    pub izz: T,
    pub ixz: T,
    /// Rolling moment `C_l`.
    pub roll: LateralDerivatives<T>,
    /// Yawing moment `C_n`.
    pub yaw: LateralDerivatives<T>,
    /// Side force `C_Y`.
    pub side: LateralDerivatives<T>,
    pub lift: LongitudinalDerivatives<T>,
    /// Drag uses only the `zero` and `alpha` terms.
    pub drag: LongitudinalDerivatives<T>,
    pub pitch: LongitudinalDerivatives<T>,
    pub propulsion: Propulsion<T>,
    pub actuators: ActuatorLimits<T>,
}

impl<T: Scalar> AircraftParams<T> {
    pub fn weight(&self) -> T {
        self.mass * self.gravity
    }

    /// `Ixx·Izz − Ixz²`, the determinant of the lateral inertia block.
    pub fn inertia_determinant(&self) -> T {
        self.ixx * self.izz - self.ixz * self.ixz
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("mass", self.mass),
            ("gravity", self.gravity),
            ("air_density", self.air_density),
            ("wing_area", self.wing_area),
            ("wing_span", self.wing_span),
            ("mean_chord", self.mean_chord),
            ("ixx", self.ixx),
            ("iyy", self.iyy),
            ("izz", self.izz),
            ("static_thrust", self.propulsion.static_thrust),
            ("zero_thrust_airspeed", self.propulsion.zero_thrust_airspeed),
            ("aileron limit", self.actuators.aileron),
            ("elevator limit", self.actuators.elevator),
            ("rudder limit", self.actuators.rudder),
            ("aileron rate", self.actuators.aileron_rate),
            ("elevator rate", self.actuators.elevator_rate),
            ("rudder rate", self.actuators.rudder_rate),
        ];
        for (name, value) in positive {
            if !(value > T::zero()) || !value.is_finite() {
                return Err(Error::Validation(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if !(self.inertia_determinant() > T::zero()) {
            return Err(Error::Validation(format!(
                "inertia tensor degenerate: Ixx*Izz - Ixz^2 = {}",
                self.inertia_determinant()
            )));
        }
        Ok(())
    }

    /// True when every zero-input lateral term vanishes, so straight flight trims with the
    /// lateral surfaces centred.
    pub fn is_laterally_symmetric(&self) -> bool {
        self.roll.zero == T::zero() && self.yaw.zero == T::zero() && self.side.zero == T::zero()
    }

    pub fn cast<U: Scalar>(&self) -> AircraftParams<U> {
        AircraftParams {
            mass: cast(self.mass),
            gravity: cast(self.gravity),
            air_density: cast(self.air_density),
            wing_area: cast(self.wing_area),
            wing_span: cast(self.wing_span),
            mean_chord: cast(self.mean_chord),
            ixx: cast(self.ixx),
            iyy: cast(self.iyy),
            izz: cast(self.izz),
            ixz: cast(self.ixz),
            roll: self.roll.cast(),
            yaw: self.yaw.cast(),
            side: self.side.cast(),
            lift: self.lift.cast(),
            drag: self.drag.cast(),
            pitch: self.pitch.cast(),
            propulsion: self.propulsion.cast(),
            actuators: self.actuators.cast(),
        }
    }
}

// ---------------------------------------------------------------------------
// File format

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AircraftFile {
    #[serde(default)]
    pub name: Option<String>,
    pub mass_properties: MassSection,
    pub geometry: GeometrySection,
    pub aero_lateral: LateralSection,
    pub aero_longitudinal: LongitudinalSection,
    pub propulsion: PropulsionSection,
    pub actuators: ActuatorSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassSection {
    pub mass: f64,
    #[serde(default = "default_gravity")]
    pub gravity: f64,
    pub ixx: f64,
    pub iyy: f64,
    pub izz: f64,
    #[serde(default)]
    pub ixz: f64,
}

fn default_gravity() -> f64 {
    9.81
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub wing_area: f64,
    pub wing_span: f64,
    pub mean_chord: f64,
    #[serde(default = "default_density")]
    pub air_density: f64,
}

fn default_density() -> f64 {
    1.2682
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LateralSection {
    pub c_l_0: f64,
    pub c_l_beta: f64,
    pub c_l_p: f64,
    pub c_l_r: f64,
    pub c_l_delta_a: f64,
    pub c_l_delta_r: f64,
    pub c_n_0: f64,
    pub c_n_beta: f64,
    pub c_n_p: f64,
    pub c_n_r: f64,
    pub c_n_delta_a: f64,
    pub c_n_delta_r: f64,
    pub c_y_0: f64,
    pub c_y_beta: f64,
    pub c_y_p: f64,
    pub c_y_r: f64,
    pub c_y_delta_a: f64,
    pub c_y_delta_r: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LongitudinalSection {
    pub c_lift_0: f64,
    pub c_lift_alpha: f64,
    pub c_lift_q: f64,
    pub c_lift_delta_e: f64,
    pub c_drag_0: f64,
    pub c_drag_alpha: f64,
    pub c_m_0: f64,
    pub c_m_alpha: f64,
    pub c_m_q: f64,
    pub c_m_delta_e: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropulsionSection {
    pub static_thrust: f64,
    pub zero_thrust_airspeed: f64,
}

/// Angles in degrees, rates in degrees per second.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActuatorSection {
    pub aileron_limit_deg: f64,
    pub elevator_limit_deg: f64,
    pub rudder_limit_deg: f64,
    #[serde(default = "default_rate")]
    pub aileron_rate_deg_s: f64,
    #[serde(default = "default_rate")]
    pub elevator_rate_deg_s: f64,
    #[serde(default = "default_rate")]
    pub rudder_rate_deg_s: f64,
}

fn default_rate() -> f64 {
    300.0
}

impl AircraftFile {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Converts to validated simulator parameters (degrees become radians here).
    pub fn to_params(&self) -> Result<AircraftParams<f64>> {
        let m = &self.mass_properties;
        let g = &self.geometry;
        let lat = &self.aero_lateral;
        let lon = &self.aero_longitudinal;
        let act = &self.actuators;
        let params = AircraftParams {
            mass: m.mass,
            gravity: m.gravity,
            air_density: g.air_density,
            wing_area: g.wing_area,
            wing_span: g.wing_span,
            mean_chord: g.mean_chord,
            ixx: m.ixx,
            iyy: m.iyy,
            izz: m.izz,
            ixz: m.ixz,
            roll: LateralDerivatives {
                zero: lat.c_l_0,
                beta: lat.c_l_beta,
                p: lat.c_l_p,
                r: lat.c_l_r,
                delta_a: lat.c_l_delta_a,
                delta_r: lat.c_l_delta_r,
            },
            yaw: LateralDerivatives {
                zero: lat.c_n_0,
                beta: lat.c_n_beta,
                p: lat.c_n_p,
                r: lat.c_n_r,
                delta_a: lat.c_n_delta_a,
                delta_r: lat.c_n_delta_r,
            },
            side: LateralDerivatives {
                zero: lat.c_y_0,
                beta: lat.c_y_beta,
                p: lat.c_y_p,
                r: lat.c_y_r,
                delta_a: lat.c_y_delta_a,
                delta_r: lat.c_y_delta_r,
            },
            lift: LongitudinalDerivatives {
                zero: lon.c_lift_0,
                alpha: lon.c_lift_alpha,
                q: lon.c_lift_q,
                delta_e: lon.c_lift_delta_e,
            },
            drag: LongitudinalDerivatives {
                zero: lon.c_drag_0,
                alpha: lon.c_drag_alpha,
                q: 0.0,
                delta_e: 0.0,
            },
            pitch: LongitudinalDerivatives {
                zero: lon.c_m_0,
                alpha: lon.c_m_alpha,
                q: lon.c_m_q,
                delta_e: lon.c_m_delta_e,
            },
            propulsion: Propulsion {
                static_thrust: self.propulsion.static_thrust,
                zero_thrust_airspeed: self.propulsion.zero_thrust_airspeed,
            },
            actuators: ActuatorLimits {
                aileron: act.aileron_limit_deg.to_radians(),
                elevator: act.elevator_limit_deg.to_radians(),
                rudder: act.rudder_limit_deg.to_radians(),
                aileron_rate: act.aileron_rate_deg_s.to_radians(),
                elevator_rate: act.elevator_rate_deg_s.to_radians(),
                rudder_rate: act.rudder_rate_deg_s.to_radians(),
            },
        };
        params.validate()?;
        Ok(params)
    }
}

/// Reads and validates an aircraft parameter file.
pub fn load_aircraft(path: &Path) -> Result<AircraftParams<f64>> {
    let text = crate::scenario::read_source(path)?;
    AircraftFile::parse(&text, path)?.to_params()
}
