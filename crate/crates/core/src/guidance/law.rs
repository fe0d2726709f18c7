//! Path errors and the course laws that null them.

use crate::control::clamp_sym;
use crate::error::{Error, Result};
use crate::guidance::{PathSegment, SegmentKind};
use crate::scalar::{angle_diff, wrap_angle, Scalar};

/// Course-law gains shared by every controller so comparisons see identical guidance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidanceConfig<T> {
    /// Maximum intercept angle relative to the path course (rad).
    pub intercept_angle: T,
    /// Proportional cross-track gain (rad/m).
    pub k_path: T,
    /// Integral cross-track gain (rad/(m·s)); removes the crab-induced standing offset.
    pub ki_path: T,
    /// Orbit capture gain (dimensionless, applied to the radius-normalized error).
    pub k_orbit: T,
    pub slew_enabled: bool,
    /// Per-tick command change, as a rate, above which the limiter engages (rad/s).
    pub slew_threshold: T,
    /// Rate the command is walked at once engaged (rad/s).
    pub slew_rate: T,
}

impl<T: Scalar> Default for GuidanceConfig<T> {
    fn default() -> Self {
        Self {
            intercept_angle: T::lit(45f64.to_radians()),
            k_path: T::lit(0.02),
            ki_path: T::lit(0.0005),
            k_orbit: T::lit(2.0),
            slew_enabled: true,
            // Smooth orbit and fillet commands stay well under the threshold, so only
            // genuine discontinuities engage. The walk rate is about half what the airframe
            // turns at the 45° bank limit at 20 m/s (g·tan45°/Va ≈ 28°/s).
            slew_threshold: T::lit(30f64.to_radians()),
            slew_rate: T::lit(15f64.to_radians()),
        }
    }
}

impl<T: Scalar> GuidanceConfig<T> {
    pub fn cast<U: Scalar>(&self) -> GuidanceConfig<U> {
        use crate::scalar::cast;
        GuidanceConfig {
            intercept_angle: cast(self.intercept_angle),
            k_path: cast(self.k_path),
            ki_path: cast(self.ki_path),
            k_orbit: cast(self.k_orbit),
            slew_enabled: self.slew_enabled,
            slew_threshold: cast(self.slew_threshold),
            slew_rate: cast(self.slew_rate),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.intercept_angle > T::zero() && self.intercept_angle <= T::FRAC_PI_2()) {
            return Err(Error::Validation(
                "guidance intercept_angle must be in (0, 90] deg".into(),
            ));
        }
        if !(self.k_path > T::zero()) || !(self.k_orbit > T::zero()) {
            return Err(Error::Validation(
                "guidance gains k_path and k_orbit must be positive".into(),
            ));
        }
        if !(self.ki_path >= T::zero()) {
            return Err(Error::Validation("guidance ki_path must be non-negative".into()));
        }
        if !(self.slew_rate > T::zero()) || !(self.slew_threshold > T::zero()) {
            return Err(Error::Validation(
                "guidance slew_rate and slew_threshold must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// `(p − r)` expressed in path axes: along-track, cross-track (positive right of the path
/// direction), and down. Orbit segments yield zeros.
pub fn line_error<T: Scalar>(p: [T; 3], seg: &PathSegment<T>) -> (T, T, T) {
    let SegmentKind::Line { origin, direction } = seg.kind else {
        return (T::zero(), T::zero(), T::zero());
    };
    let dn = p[0] - origin[0];
    let de = p[1] - origin[1];
    let dd = p[2] - origin[2];
    let (s, c) = direction[1].atan2(direction[0]).sin_cos();
    (c * dn + s * de, -s * dn + c * de, dd)
}

/// `e_orbit = −λ·(r_d − ‖p − c‖)`; line segments yield zero.
pub fn orbit_error<T: Scalar>(p: [T; 3], seg: &PathSegment<T>) -> T {
    let SegmentKind::Orbit {
        center,
        radius,
        lambda,
    } = seg.kind
    else {
        return T::zero();
    };
    let d = (p[0] - center[0]).hypot(p[1] - center[1]);
    -lambda * (radius - d)
}

/// `χ_c = χ_q − sat(k·e_py + k_i·∫e_py)`, saturating at the intercept angle.
pub fn course_command_line<T: Scalar>(
    e_py: T,
    integral: T,
    seg: &PathSegment<T>,
    config: &GuidanceConfig<T>,
) -> T {
    let correction = clamp_sym(
        config.k_path * e_py + config.ki_path * integral,
        config.intercept_angle,
    );
    wrap_angle(seg.course() - correction)
}

/// Tangent course in the orbit direction plus a capture term
/// `λ·atan(k·(d − r_d)/r_d)` that turns the aircraft toward the circle.
pub fn course_command_orbit<T: Scalar>(
    p: [T; 3],
    seg: &PathSegment<T>,
    config: &GuidanceConfig<T>,
) -> Result<T> {
    let SegmentKind::Orbit {
        center,
        radius,
        lambda,
    } = seg.kind
    else {
        return Ok(seg.course());
    };
    let dn = p[0] - center[0];
    let de = p[1] - center[1];
    let d = dn.hypot(de);
    if d == T::zero() {
        return Err(Error::UndefinedBearing);
    }
    let bearing = de.atan2(dn);
    let capture = (config.k_orbit * (d - radius) / radius).atan();
    Ok(wrap_angle(bearing + lambda * (T::FRAC_PI_2() + capture)))
}

/// Steps from `prev` toward `raw` along the shorter arc, at most `max_rate·dt`.
pub fn slew_limit<T: Scalar>(prev: T, raw: T, max_rate: T, dt: T) -> T {
    let step = angle_diff(raw, prev);
    let max = max_rate * dt;
    if step.abs() <= max {
        wrap_angle(raw)
    } else {
        wrap_angle(prev + max.copysign(step))
    }
}
