//! Nonlinear 6-DOF rigid-body model of a fixed-wing aircraft.

mod aero;
mod eom;
mod gamma;
mod integrate;
mod params;
mod state;
mod trim;
mod wind;

pub use aero::{
    aero_forces_moments, combined_yaw_coeffs, gravity_body, yaw_acceleration_combined, CombinedYawCoeffs,
    ForcesMoments, MIN_AERO_AIRSPEED,
};
pub use eom::{body_to_inertial, state_derivative, Environment, PITCH_SINGULARITY_MARGIN};
pub use gamma::{gamma_terms, GammaSet};
pub use integrate::{integrate_step, rk4_step, AircraftModel, DEFAULT_DT};
pub use params::{
    load_aircraft, ActuatorLimits, AircraftFile, AircraftParams, LateralDerivatives, LongitudinalDerivatives,
    Propulsion,
};
pub use state::{AirData, AircraftState, StateDerivative};
pub use trim::{trim, TrimOptions, TrimSolution};
pub use wind::{GustProcess, WindModel, WindSeries};
