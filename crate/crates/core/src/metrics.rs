//! Camera image error, sideslip estimation and summary statistics.
//!
//! Standard deviations use the population convention (divide by N) so that
//! `rms² = mean² + std²` holds exactly.

use crate::error::{Error, Result};
use crate::scalar::{angle_diff, Scalar};

/// One logged sample of the image-error decomposition at a reference height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageErrorRecord<T> {
    pub t: T,
    pub e_lateral: T,
    pub e_roll: T,
    pub e_total: T,
    pub h_ref: T,
    pub phi: T,
    pub theta: T,
    pub beta_est: T,
    pub segment_id: usize,
}

impl<T: Scalar> ImageErrorRecord<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        t: T,
        e_lateral: T,
        phi: T,
        theta: T,
        h_ref: T,
        beta_est: T,
        segment_id: usize,
    ) -> Result<Self> {
        let e_total = total_image_error(e_lateral, phi, h_ref)?;
        Ok(Self {
            t,
            e_lateral,
            e_roll: h_ref * phi.tan(),
            e_total,
            h_ref,
            phi,
            theta,
            beta_est,
            segment_id,
        })
    }

    /// Same sample seen from another reference height; only the roll term changes.
    pub fn at_height(&self, h_ref: T) -> Result<Self> {
        Self::new(
            self.t,
            self.e_lateral,
            self.phi,
            self.theta,
            h_ref,
            self.beta_est,
            self.segment_id,
        )
    }
}

/// `e_lateral + h_ref·tan φ`.
pub fn total_image_error<T: Scalar>(e_lateral: T, phi: T, h_ref: T) -> Result<T> {
    if !(phi.abs() < T::FRAC_PI_2()) {
        return Err(Error::Domain(format!(
            "roll angle {phi} rad outside (-pi/2, pi/2)"
        )));
    }
    Ok(e_lateral + h_ref * phi.tan())
}

/// Picks the line error on straight segments and the orbit error on orbits and fillets.
pub fn lateral_error_select<T: Scalar>(line_err: T, orbit_err: T, on_orbit: bool) -> T {
    if on_orbit {
        orbit_err
    } else {
        line_err
    }
}

/// Sideslip estimated as course minus heading, wrapped to the short way round.
pub fn beta_estimate<T: Scalar>(chi: T, psi: T) -> T {
    angle_diff(chi, psi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats<T> {
    pub mean: T,
    pub std_1sigma: T,
    pub rms: T,
    pub count: usize,
}

pub fn series_stats<T: Scalar>(values: &[T]) -> Result<ErrorStats<T>> {
    if values.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: values.len(),
        });
    }
    let n = T::from_usize(values.len()).unwrap_or_else(T::nan);
    let mean = values.iter().fold(T::zero(), |a, &v| a + v) / n;
    let var = values.iter().fold(T::zero(), |a, &v| a + (v - mean) * (v - mean)) / n;
    let ms = values.iter().fold(T::zero(), |a, &v| a + v * v) / n;
    Ok(ErrorStats {
        mean,
        std_1sigma: var.sqrt(),
        rms: ms.sqrt(),
        count: values.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn image_error_examples() {
        assert_eq!(total_image_error(12.0, 0.0, 450.0).unwrap(), 12.0);
        assert!((total_image_error(0.0, 45f64.to_radians(), 450.0).unwrap() - 450.0).abs() < 1e-9);
        let e = total_image_error(0.0, 10f64.to_radians(), 450.0).unwrap();
        assert!((e - 79.35).abs() < 0.005, "{e}");
        assert!(total_image_error(0.0, std::f64::consts::FRAC_PI_2, 450.0).is_err());
    }

    #[test]
    fn selection_and_beta() {
        assert_eq!(lateral_error_select(7.0, 99.0, false), 7.0);
        assert_eq!(lateral_error_select(7.0, -3.0, true), -3.0);
        assert_eq!(beta_estimate(0.4, 0.4), 0.0);
        let b = beta_estimate(350f64.to_radians(), 10f64.to_radians());
        assert!((b.to_degrees() + 20.0).abs() < 1e-9);
    }

    #[test]
    fn stats_examples() {
        let s = series_stats(&[5.0, 5.0, 5.0]).unwrap();
        assert_eq!((s.mean, s.std_1sigma, s.rms), (5.0, 0.0, 5.0));
        let s = series_stats(&[-1.0, 1.0]).unwrap();
        assert_eq!((s.mean, s.rms), (0.0, 1.0));
        let s = series_stats(&[1.0f64, 2.0, 3.0]).unwrap();
        assert!((s.mean - 2.0).abs() < 1e-15);
        assert!((s.rms - (14.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!(matches!(
            series_stats(&[1.0]),
            Err(Error::InsufficientData { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn wings_level_total_equals_lateral() {
        for k in 0..50 {
            let r =
                ImageErrorRecord::new(f64::from(k), f64::from(k) - 20.0, 0.0, 0.0, 450.0, 0.0, 0).unwrap();
            assert_eq!(r.e_total, r.e_lateral);
        }
    }

    proptest! {
        #[test]
        fn rms_identity(values in prop::collection::vec(-500.0f64..500.0, 2..200)) {
            let s = series_stats(&values).unwrap();
            let lhs = s.rms * s.rms;
            let rhs = s.mean * s.mean + s.std_1sigma * s.std_1sigma;
            prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.max(1.0));
        }

        #[test]
        fn shift_scale_covariance(
            values in prop::collection::vec(-100.0f64..100.0, 2..100),
            a in -10.0f64..10.0, b in -50.0f64..50.0
        ) {
            let s = series_stats(&values).unwrap();
            let mapped: Vec<f64> = values.iter().map(|v| a * v + b).collect();
            let m = series_stats(&mapped).unwrap();
            prop_assert!((m.mean - (a * s.mean + b)).abs() < 1e-8);
            prop_assert!((m.std_1sigma - a.abs() * s.std_1sigma).abs() < 1e-8);
        }

        #[test]
        fn height_rescale_touches_only_roll_term(
            lat in -100.0f64..100.0, phi in -1.4f64..1.4, h in 10.0f64..500.0
        ) {
            let r = ImageErrorRecord::new(0.0, lat, phi, 0.0, h, 0.0, 0).unwrap();
            let r3 = r.at_height(3.0 * h).unwrap();
            prop_assert_eq!(r3.e_lateral, r.e_lateral);
            prop_assert!((r3.e_roll - 3.0 * r.e_roll).abs() <= 1e-9 * r.e_roll.abs().max(1.0));
            prop_assert!((r3.e_total - r3.e_lateral - 3.0 * h * phi.tan()).abs() <= 1e-12 * r3.e_total.abs().max(1.0));
        }
    }
}
