//! Reduced inertia terms that decouple the roll/yaw moment equations for an airframe with
//! `Ixy = Iyz = 0`.

use crate::dynamics::AircraftParams;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GammaSet<T> {
    pub gamma1: T,
    pub gamma2: T,
    pub gamma3: T,
    pub gamma4: T,
    pub gamma5: T,
    pub gamma6: T,
    pub gamma7: T,
    pub gamma8: T,
}

impl<T: Scalar> GammaSet<T> {
    pub fn to_array(&self) -> [T; 8] {
        [
            self.gamma1,
            self.gamma2,
            self.gamma3,
            self.gamma4,
            self.gamma5,
            self.gamma6,
            self.gamma7,
            self.gamma8,
        ]
    }
}

/// Computes Γ1..Γ8 from the inertia fields of `params`.
pub fn gamma_terms<T: Scalar>(params: &AircraftParams<T>) -> Result<GammaSet<T>> {
    let (ixx, iyy, izz, ixz) = (params.ixx, params.iyy, params.izz, params.ixz);
    let det = ixx * izz - ixz * ixz;
    if !(det > T::zero()) || !(iyy > T::zero()) {
        return Err(Error::Config(format!(
            "degenerate inertia: Ixx*Izz - Ixz^2 = {det}, Iyy = {iyy}"
        )));
    }
    Ok(GammaSet {
        gamma1: ixz * (ixx - iyy + izz) / det,
        gamma2: (izz * (izz - iyy) + ixz * ixz) / det,
        gamma3: izz / det,
        gamma4: ixz / det,
        gamma5: (izz - ixx) / iyy,
        gamma6: ixz / iyy,
        gamma7: ((ixx - iyy) * ixx + ixz * ixz) / det,
        gamma8: ixx / det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::testing::unit_params;

    fn with_inertia(ixx: f64, iyy: f64, izz: f64, ixz: f64) -> AircraftParams<f64> {
        let mut p = unit_params();
        p.ixx = ixx;
        p.iyy = iyy;
        p.izz = izz;
        p.ixz = ixz;
        p
    }

    #[test]
    fn unit_inertia() {
        let g = gamma_terms(&with_inertia(1.0, 1.0, 1.0, 0.0)).unwrap();
        assert_eq!(g.to_array(), [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn diagonal_hand_values() {
        let g = gamma_terms(&with_inertia(2.0, 3.0, 4.0, 0.0)).unwrap();
        assert_eq!(g.gamma1, 0.0);
        assert_eq!(g.gamma4, 0.0);
        assert_eq!(g.gamma6, 0.0);
        assert_eq!(g.gamma3, 0.5);
        assert_eq!(g.gamma8, 0.25);
        assert!((g.gamma5 - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(g.gamma2, 0.5);
        assert_eq!(g.gamma7, -0.25);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(gamma_terms(&with_inertia(1.0, 1.0, 1.0, 1.0)).is_err());
        assert!(gamma_terms(&with_inertia(1.0, 1.0, 1.0, 2.0)).is_err());
    }
}
