//! Segment sequencing and course-command generation for one simulation run.

use crate::error::Result;
use crate::guidance::law::{
    course_command_line, course_command_orbit, line_error, orbit_error, slew_limit, GuidanceConfig,
};
use crate::guidance::{FlightPlan, PathSegment, SegmentExit, SegmentKind};
use crate::scalar::{angle_diff, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CourseCommand<T> {
    /// Command after the slew limiter.
    pub chi_cmd: T,
    /// Command straight from the active segment's law.
    pub chi_cmd_raw: T,
    pub segment_id: usize,
    pub on_orbit: bool,
    pub e_py: T,
    pub e_orbit: T,
    /// Set once the last segment's exit condition has been met.
    pub complete: bool,
}

impl<T: Scalar> CourseCommand<T> {
    /// The path error for whichever kind of segment is active; the two never coexist.
    pub fn e_lateral(&self) -> T {
        crate::metrics::lateral_error_select(self.e_py, self.e_orbit, self.on_orbit)
    }
}

#[derive(Debug, Clone)]
pub struct PathManager<T> {
    plan: FlightPlan<T>,
    config: GuidanceConfig<T>,
    index: usize,
    complete: bool,
    swept: T,
    prev_bearing: Option<T>,
    integral: T,
    prev_cmd: Option<T>,
    slewing: bool,
}

impl<T: Scalar> PathManager<T> {
    pub fn new(plan: FlightPlan<T>, config: GuidanceConfig<T>) -> Self {
        Self {
            plan,
            config,
            index: 0,
            complete: false,
            swept: T::zero(),
            prev_bearing: None,
            integral: T::zero(),
            prev_cmd: None,
            slewing: false,
        }
    }

    pub fn plan(&self) -> &FlightPlan<T> {
        &self.plan
    }

    pub fn config(&self) -> &GuidanceConfig<T> {
        &self.config
    }

    pub fn segment_id(&self) -> usize {
        self.index
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn active(&self) -> &PathSegment<T> {
        &self.plan.segments[self.index]
    }

    fn track_sweep(&mut self, p: [T; 3]) {
        if let SegmentKind::Orbit { center, .. } = self.active().kind {
            let bearing = (p[1] - center[1]).atan2(p[0] - center[0]);
            if let Some(prev) = self.prev_bearing {
                self.swept = self.swept + angle_diff(bearing, prev);
            }
            self.prev_bearing = Some(bearing);
        }
    }

    fn exit_reached(&self, p: [T; 3]) -> bool {
        let seg = self.active();
        match seg.exit {
            SegmentExit::HalfPlane { point, normal } => {
                (p[0] - point[0]) * normal[0] + (p[1] - point[1]) * normal[1] >= T::zero()
            }
            SegmentExit::Sweep { angle } => {
                let lambda = match seg.kind {
                    SegmentKind::Orbit { lambda, .. } => lambda,
                    SegmentKind::Line { .. } => T::one(),
                };
                lambda * self.swept >= angle
            }
            SegmentExit::Hold => false,
        }
    }

    fn advance(&mut self, p: [T; 3]) {
        while !self.complete && self.exit_reached(p) {
            if self.index + 1 < self.plan.segments.len() {
                self.index += 1;
                self.swept = T::zero();
                self.prev_bearing = None;
                self.integral = T::zero();
                self.track_sweep(p);
            } else {
                self.complete = true;
            }
        }
    }

    /// Selects the active segment for position `p` (NED) and returns its course command,
    /// slewed when the limiter is enabled.
    pub fn step(&mut self, p: [T; 3], dt: T) -> Result<CourseCommand<T>> {
        self.track_sweep(p);
        self.advance(p);
        let seg = *self.active();
        let (_, e_py, _) = line_error(p, &seg);
        let e_orbit = orbit_error(p, &seg);
        let raw = if seg.is_orbit() {
            course_command_orbit(p, &seg, &self.config)?
        } else {
            let unsat = self.config.k_path * e_py + self.config.ki_path * self.integral;
            if unsat.abs() < self.config.intercept_angle || unsat * e_py < T::zero() {
                self.integral = self.integral + e_py * dt;
            }
            course_command_line(e_py, self.integral, &seg, &self.config)
        };
        let chi_cmd = match self.prev_cmd {
            Some(prev) if self.config.slew_enabled => {
                let jump = angle_diff(raw, prev).abs();
                if self.slewing || jump > self.config.slew_threshold * dt {
                    let out = slew_limit(prev, raw, self.config.slew_rate, dt);
                    self.slewing = out != raw;
                    out
                } else {
                    raw
                }
            }
            _ => raw,
        };
        self.prev_cmd = Some(chi_cmd);
        Ok(CourseCommand {
            chi_cmd,
            chi_cmd_raw: raw,
            segment_id: self.index,
            on_orbit: seg.is_orbit(),
            e_py,
            e_orbit,
            complete: self.complete,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guidance::{OrbitSpec, Waypoint};
    use std::f64::consts::PI;

    fn wp(n: f64, e: f64) -> Waypoint<f64> {
        Waypoint {
            north: n,
            east: e,
            altitude: 150.0,
        }
    }

    #[test]
    fn straight_plan_start() {
        let plan = FlightPlan::new("s", vec![wp(0.0, 0.0), wp(0.0, 500.0)], vec![], 0.0, 150.0).unwrap();
        let mut m = PathManager::new(plan, GuidanceConfig::default());
        let c = m.step([1.0, 0.0, -150.0], 0.01).unwrap();
        assert_eq!(c.segment_id, 0);
        assert!((c.chi_cmd_raw - (PI / 2.0 - 0.0)).abs() < 0.05);
        let c = m.step([0.0, 600.0, -150.0], 0.01).unwrap();
        assert!(c.complete);
        assert_eq!(c.segment_id, 0);
    }

    #[test]
    fn walking_the_fillet_is_continuous_and_monotone() {
        let plan = FlightPlan::new(
            "l",
            vec![wp(0.0, 0.0), wp(400.0, 0.0), wp(400.0, 400.0)],
            vec![],
            100.0,
            150.0,
        )
        .unwrap();
        let cfg = GuidanceConfig {
            slew_enabled: false,
            ..GuidanceConfig::default()
        };
        let mut m = PathManager::new(plan, cfg);
        // Walk exactly along the nominal path: up the leg, around the arc, along the next leg.
        let mut pts = Vec::new();
        for k in 0..300 {
            pts.push([f64::from(k), 0.0, -150.0]);
        }
        for k in 0..=90 {
            let a = PI - f64::from(k).to_radians();
            pts.push([300.0 + 100.0 * a.sin(), 100.0 + 100.0 * a.cos(), -150.0]);
        }
        for k in 101..400 {
            pts.push([400.0, f64::from(k), -150.0]);
        }
        let mut last_id = 0;
        let mut last_cmd: Option<f64> = None;
        for p in pts {
            let c = m.step(p, 0.01).unwrap();
            assert!(c.segment_id >= last_id);
            last_id = c.segment_id;
            if let Some(prev) = last_cmd {
                assert!(angle_diff(c.chi_cmd_raw, prev).abs() < 2f64.to_radians());
            }
            last_cmd = Some(c.chi_cmd_raw);
        }
        assert_eq!(last_id, 2);
    }

    #[test]
    fn slew_engages_only_on_discontinuities() {
        // Square corner with no fillet: the raw command jumps 90° when the leg switches.
        let plan = FlightPlan::new(
            "c",
            vec![wp(0.0, 0.0), wp(400.0, 0.0), wp(400.0, 400.0)],
            vec![],
            0.0,
            150.0,
        )
        .unwrap();
        let cfg = GuidanceConfig::default();
        let mut m = PathManager::new(plan, cfg);
        let dt = 0.01;
        let mut prev = m.step([0.0, 0.0, -150.0], dt).unwrap();
        let mut engaged = 0;
        for k in 1..=1100 {
            let p = if k <= 400 {
                [f64::from(k), 0.0, -150.0]
            } else {
                [400.0, f64::from(k - 400), -150.0]
            };
            let c = m.step(p, dt).unwrap();
            assert!(angle_diff(c.chi_cmd, prev.chi_cmd).abs() <= cfg.slew_threshold * dt + 1e-12);
            if c.chi_cmd != c.chi_cmd_raw {
                engaged += 1;
                assert!((angle_diff(c.chi_cmd, prev.chi_cmd).abs() - cfg.slew_rate * dt).abs() < 1e-12);
            }
            prev = c;
        }
        // 90° at 15°/s is 6 s of walking, i.e. 600 ticks, then the command is released.
        assert!((595..=605).contains(&engaged), "{engaged}");
        assert_eq!(prev.chi_cmd, prev.chi_cmd_raw);

        // A smooth command ramp below the threshold passes through untouched.
        let orbit = OrbitSpec {
            center: [0.0, 0.0],
            radius: 100.0,
            lambda: 1.0,
            turns: 2.0,
        };
        let plan = FlightPlan::new("o", vec![], vec![orbit], 0.0, 150.0).unwrap();
        let mut m = PathManager::new(plan, cfg);
        for k in 0..300 {
            let a = 0.2 * f64::from(k) * dt;
            let c = m.step([100.0 * a.cos(), 100.0 * a.sin(), -150.0], dt).unwrap();
            assert_eq!(c.chi_cmd, c.chi_cmd_raw);
        }
    }

    #[test]
    fn orbit_turn_count_completes() {
        let orbit = OrbitSpec {
            center: [0.0, 0.0],
            radius: 100.0,
            lambda: 1.0,
            turns: 1.0,
        };
        let plan = FlightPlan::new("o", vec![], vec![orbit], 0.0, 150.0).unwrap();
        let mut m = PathManager::new(plan, GuidanceConfig::default());
        let mut done_at = None;
        for k in 0..=400 {
            // clockwise seen from above in NED: bearing increases
            let a = f64::from(k).to_radians();
            let c = m.step([100.0 * a.cos(), 100.0 * a.sin(), -150.0], 0.01).unwrap();
            if c.complete && done_at.is_none() {
                done_at = Some(k);
            }
        }
        assert!(matches!(done_at, Some(360..=361)), "{done_at:?}");
    }
}
