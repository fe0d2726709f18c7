//! Aircraft, plans and scenarios compiled into the library, addressable as `builtin:<name>`.

use std::path::Path;

use crate::dynamics::{AircraftFile, AircraftParams};

pub const BUILTIN_PREFIX: &str = "builtin:";

const ENTRIES: &[(&str, &str)] = &[
    ("aerosonde", include_str!("../../data/aerosonde.toml")),
    ("straight", include_str!("../../data/plans/straight.toml")),
    ("figure_eight", include_str!("../../data/plans/figure_eight.toml")),
    ("circle", include_str!("../../data/plans/circle.toml")),
    ("rectangle", include_str!("../../data/plans/rectangle.toml")),
    ("right_angle", include_str!("../../data/plans/right_angle.toml")),
    ("flight1", include_str!("../../data/scenarios/flight1.toml")),
    ("flight2", include_str!("../../data/scenarios/flight2.toml")),
    ("flight3", include_str!("../../data/scenarios/flight3.toml")),
    (
        "straight_run",
        include_str!("../../data/scenarios/straight_run.toml"),
    ),
    ("slew_step", include_str!("../../data/scenarios/slew_step.toml")),
    (
        "slew_step_fast_yaw",
        include_str!("../../data/scenarios/slew_step_fast_yaw.toml"),
    ),
];

/// Text of a built-in document; a trailing `.toml` on the name is ignored.
pub fn builtin(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".toml").unwrap_or(name);
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

/// The shipped Aerosonde-class airframe.
pub fn aerosonde() -> AircraftParams<f64> {
    let text = builtin("aerosonde").expect("aerosonde entry");
    AircraftFile::parse(text, Path::new("builtin:aerosonde"))
        .and_then(|f| f.to_params())
        .expect("built-in aircraft file is valid")
}
