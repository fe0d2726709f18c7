//! Waypoint and orbit plans, with fillet arcs inserted at the interior corners.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::guidance::{PathSegment, SegmentExit, SegmentKind};
use crate::scalar::{cast, Scalar};

/// Waypoint position; altitude is above ground level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waypoint<T> {
    pub north: T,
    pub east: T,
    pub altitude: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSpec<T> {
    pub center: [T; 2],
    pub radius: T,
    pub lambda: T,
    /// Revolutions before the plan moves on; zero loiters forever.
    pub turns: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlightPlan<T> {
    pub name: String,
    pub waypoints: Vec<Waypoint<T>>,
    pub orbits: Vec<OrbitSpec<T>>,
    pub fillet_radius: T,
    pub altitude_agl: T,
    pub segments: Vec<PathSegment<T>>,
}

/// Corner fillet geometry: exit tangent point, arc center, turn direction and the distance
/// from the corner to either tangent point.
struct Fillet<T> {
    exit: [T; 2],
    center: [T; 2],
    lambda: T,
    tangent_distance: T,
}

fn unit<T: Scalar>(from: [T; 2], to: [T; 2]) -> ([T; 2], T) {
    let dn = to[0] - from[0];
    let de = to[1] - from[1];
    let len = dn.hypot(de);
    ([dn / len, de / len], len)
}

fn fillet<T: Scalar>(corner: [T; 2], q_in: [T; 2], q_out: [T; 2], radius: T) -> Option<Fillet<T>> {
    let dot = (q_in[0] * q_out[0] + q_in[1] * q_out[1])
        .max(-T::one())
        .min(T::one());
    let cross = q_in[0] * q_out[1] - q_in[1] * q_out[0];
    // Collinear legs need no arc.
    if cross.abs() < T::lit(1e-9) && dot > T::zero() {
        return None;
    }
    // Included angle between the legs at the corner.
    let varrho = (-dot).acos();
    let half = varrho * T::half();
    let tangent_distance = radius / half.tan();
    let to_center = radius / half.sin();
    let bis = [q_in[0] - q_out[0], q_in[1] - q_out[1]];
    let bis_len = bis[0].hypot(bis[1]);
    Some(Fillet {
        exit: [
            corner[0] + tangent_distance * q_out[0],
            corner[1] + tangent_distance * q_out[1],
        ],
        center: [
            corner[0] - to_center * bis[0] / bis_len,
            corner[1] - to_center * bis[1] / bis_len,
        ],
        lambda: if cross > T::zero() { T::one() } else { -T::one() },
        tangent_distance,
    })
}

impl<T: Scalar> FlightPlan<T> {
    pub fn new(
        name: impl Into<String>,
        waypoints: Vec<Waypoint<T>>,
        orbits: Vec<OrbitSpec<T>>,
        fillet_radius: T,
        altitude_agl: T,
    ) -> Result<Self> {
        let name = name.into();
        if waypoints.len() < 2 && orbits.is_empty() {
            return Err(Error::Validation(format!(
                "plan '{name}' needs at least two waypoints or one orbit"
            )));
        }
        if waypoints.len() == 1 {
            return Err(Error::Validation(format!("plan '{name}' has a single waypoint")));
        }
        if !(fillet_radius >= T::zero()) {
            return Err(Error::Validation(format!(
                "plan '{name}' fillet radius must be >= 0"
            )));
        }
        if !(altitude_agl > T::zero()) {
            return Err(Error::Validation(format!(
                "plan '{name}' altitude_agl must be positive"
            )));
        }
        for (i, o) in orbits.iter().enumerate() {
            if !(o.radius > T::zero()) {
                return Err(Error::Validation(format!(
                    "plan '{name}' orbit {i}: radius must be positive, got {}",
                    o.radius
                )));
            }
            if o.lambda != T::one() && o.lambda != -T::one() {
                return Err(Error::Validation(format!(
                    "plan '{name}' orbit {i}: lambda must be +1 or -1"
                )));
            }
            if !(o.turns >= T::zero()) {
                return Err(Error::Validation(format!(
                    "plan '{name}' orbit {i}: turns must be >= 0"
                )));
            }
        }

        let pts: Vec<[T; 2]> = waypoints.iter().map(|w| [w.north, w.east]).collect();
        let mut legs = Vec::new();
        for i in 0..pts.len().saturating_sub(1) {
            let (q, len) = unit(pts[i], pts[i + 1]);
            if !(len > T::lit(1e-6)) {
                return Err(Error::Validation(format!(
                    "plan '{name}' waypoints {i} and {} coincide",
                    i + 1
                )));
            }
            legs.push((q, len));
        }

        let mut fillets: Vec<Option<Fillet<T>>> = Vec::new();
        for i in 1..pts.len().saturating_sub(1) {
            let (q_in, q_out) = (legs[i - 1].0, legs[i].0);
            let reversal = q_in[0] * q_out[0] + q_in[1] * q_out[1] < T::lit(-1.0 + 1e-9);
            if fillet_radius > T::zero() && reversal {
                return Err(Error::Validation(format!(
                    "plan '{name}' reverses direction at waypoint {i}; no fillet fits"
                )));
            }
            fillets.push(if fillet_radius > T::zero() {
                fillet(pts[i], q_in, q_out, fillet_radius)
            } else {
                None
            });
        }
        let tangent = |corner: usize| -> T {
            if corner == 0 || corner + 1 >= pts.len() {
                return T::zero();
            }
            fillets[corner - 1]
                .as_ref()
                .map_or(T::zero(), |f| f.tangent_distance)
        };
        for (i, (_, len)) in legs.iter().enumerate() {
            if tangent(i) + tangent(i + 1) > *len * (T::one() + T::lit(1e-9)) {
                return Err(Error::Validation(format!(
                    "plan '{name}' fillet radius {fillet_radius} does not fit leg {i} ({len} m)"
                )));
            }
        }

        let mut segments = Vec::new();
        for (i, (q, _)) in legs.iter().enumerate() {
            let w = &waypoints[i];
            let end = pts[i + 1];
            let t = tangent(i + 1);
            let exit_point = [end[0] - t * q[0], end[1] - t * q[1]];
            let mut line = PathSegment::line([w.north, w.east, -w.altitude], [q[0], q[1], T::zero()]);
            line.exit = SegmentExit::HalfPlane {
                point: exit_point,
                normal: *q,
            };
            line.fillet_radius = if t > T::zero() { fillet_radius } else { T::zero() };
            segments.push(line);
            if let Some(Some(f)) = fillets.get(i) {
                let mut arc = PathSegment::orbit(f.center, fillet_radius, f.lambda);
                arc.exit = SegmentExit::HalfPlane {
                    point: f.exit,
                    normal: legs[i + 1].0,
                };
                arc.is_fillet = true;
                segments.push(arc);
            }
        }
        for o in &orbits {
            let mut seg = PathSegment::orbit(o.center, o.radius, o.lambda);
            seg.exit = if o.turns > T::zero() {
                SegmentExit::Sweep {
                    angle: o.turns * T::TAU(),
                }
            } else {
                SegmentExit::Hold
            };
            segments.push(seg);
        }

        Ok(Self {
            name,
            waypoints,
            orbits,
            fillet_radius,
            altitude_agl,
            segments,
        })
    }

    /// Starting position (N, E) and course: the first waypoint along the first leg, or the
    /// northernmost point of the first orbit heading along it.
    pub fn start(&self) -> ([T; 2], T) {
        match self.segments[0].kind {
            SegmentKind::Line { origin, direction } => {
                ([origin[0], origin[1]], direction[1].atan2(direction[0]))
            }
            SegmentKind::Orbit {
                center,
                radius,
                lambda,
            } => ([center[0] + radius, center[1]], lambda * T::FRAC_PI_2()),
        }
    }

    pub fn cast<U: Scalar>(&self) -> Result<FlightPlan<U>> {
        FlightPlan::new(
            self.name.clone(),
            self.waypoints
                .iter()
                .map(|w| Waypoint {
                    north: cast(w.north),
                    east: cast(w.east),
                    altitude: cast(w.altitude),
                })
                .collect(),
            self.orbits
                .iter()
                .map(|o| OrbitSpec {
                    center: [cast(o.center[0]), cast(o.center[1])],
                    radius: cast(o.radius),
                    lambda: cast(o.lambda),
                    turns: cast(o.turns),
                })
                .collect(),
            cast(self.fillet_radius),
            cast(self.altitude_agl),
        )
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub name: Option<String>,
    pub altitude_agl: f64,
    #[serde(default)]
    pub fillet_radius: f64,
    /// `[north_m, east_m, alt_m]` triples.
    #[serde(default)]
    pub waypoints: Vec<[f64; 3]>,
    #[serde(default, rename = "orbit")]
    pub orbits: Vec<OrbitEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitEntry {
    /// `[north_m, east_m]`.
    pub center: [f64; 2],
    pub radius: f64,
    /// `"cw"` or `"ccw"`.
    pub direction: String,
    #[serde(default)]
    pub turns: f64,
}

impl PlanFile {
    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn to_plan(&self, default_name: &str) -> Result<FlightPlan<f64>> {
        let name = self.name.clone().unwrap_or_else(|| default_name.to_string());
        let mut orbits = Vec::new();
        for (i, o) in self.orbits.iter().enumerate() {
            let lambda = match o.direction.to_ascii_lowercase().as_str() {
                "cw" | "clockwise" => 1.0,
                "ccw" | "counterclockwise" => -1.0,
                other => {
                    return Err(Error::Validation(format!(
                        "plan '{name}' orbit {i}: direction '{other}' is not cw|ccw"
                    )))
                }
            };
            orbits.push(OrbitSpec {
                center: o.center,
                radius: o.radius,
                lambda,
                turns: o.turns,
            });
        }
        let waypoints = self
            .waypoints
            .iter()
            .map(|w| Waypoint {
                north: w[0],
                east: w[1],
                altitude: w[2],
            })
            .collect();
        FlightPlan::new(name, waypoints, orbits, self.fillet_radius, self.altitude_agl)
    }
}

pub fn load_plan(path: &Path) -> Result<FlightPlan<f64>> {
    let text = crate::scenario::read_source(path)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "plan".into());
    PlanFile::parse(&text, path)?.to_plan(&stem)
}
