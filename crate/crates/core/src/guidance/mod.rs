//! Flight plans, path errors, course commands and the course-command slew limiter.

mod law;
mod manager;
mod plan;

pub use law::{
    course_command_line, course_command_orbit, line_error, orbit_error, slew_limit, GuidanceConfig,
};
pub use manager::{CourseCommand, PathManager};
pub use plan::{load_plan, FlightPlan, OrbitSpec, PlanFile, Waypoint};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentKind<T> {
    /// Straight line through `origin` (NED) along unit `direction`.
    Line { origin: [T; 3], direction: [T; 3] },
    /// Circle about `center` (N, E); `lambda` is +1 clockwise, −1 counter-clockwise.
    Orbit { center: [T; 2], radius: T, lambda: T },
}

/// Condition that hands control to the next segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentExit<T> {
    /// Crossing the line through `point` with normal `normal` (N, E).
    HalfPlane { point: [T; 2], normal: [T; 2] },
    /// Sweeping this many radians around an orbit center.
    Sweep { angle: T },
    /// Never exits on its own.
    Hold,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSegment<T> {
    pub kind: SegmentKind<T>,
    pub exit: SegmentExit<T>,
    /// Radius of the fillet leaving this segment (zero when the corner is sharp).
    pub fillet_radius: T,
    /// True for arcs inserted at a corner.
    pub is_fillet: bool,
}

impl<T: Scalar> PathSegment<T> {
    pub fn line(origin: [T; 3], direction: [T; 3]) -> Self {
        Self {
            kind: SegmentKind::Line { origin, direction },
            exit: SegmentExit::Hold,
            fillet_radius: T::zero(),
            is_fillet: false,
        }
    }

    pub fn orbit(center: [T; 2], radius: T, lambda: T) -> Self {
        Self {
            kind: SegmentKind::Orbit {
                center,
                radius,
                lambda,
            },
            exit: SegmentExit::Hold,
            fillet_radius: T::zero(),
            is_fillet: false,
        }
    }

    pub fn is_orbit(&self) -> bool {
        matches!(self.kind, SegmentKind::Orbit { .. })
    }

    /// Path course of a line; zero for orbits, whose course depends on position.
    pub fn course(&self) -> T {
        match self.kind {
            SegmentKind::Line { direction, .. } => direction[1].atan2(direction[0]),
            SegmentKind::Orbit { .. } => T::zero(),
        }
    }
}
