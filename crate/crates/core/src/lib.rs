//! Fixed-wing flight simulator and lateral guidance stack comparing aileron-only and
//! rudder-augmented trajectory correction by the camera image error they produce.
//!
//! The numeric modules are generic over [`Scalar`] (`f32` or `f64`); the aliases below fix
//! the common double-precision instantiations.

// `!(x > 0)` is used on purpose throughout validation so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod control;
pub mod dynamics;
pub mod error;
pub mod guidance;
pub mod metrics;
pub mod scalar;
pub mod scenario;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type AircraftState = dynamics::AircraftState<f64>;
pub type AircraftParams = dynamics::AircraftParams<f64>;
pub type AircraftModel = dynamics::AircraftModel<f64>;
pub type AirData = dynamics::AirData<f64>;
pub type Environment = dynamics::Environment<f64>;
pub type ControlCommand = control::ControlCommand<f64>;
pub type ControllerConfig = control::ControllerConfig<f64>;
pub type RatcGains = control::RatcGains<f64>;
pub type AotcGains = control::AotcGains<f64>;
pub type FlightPlan = guidance::FlightPlan<f64>;
pub type PathSegment = guidance::PathSegment<f64>;
pub type GuidanceConfig = guidance::GuidanceConfig<f64>;
pub type ErrorStats = metrics::ErrorStats<f64>;
