//! Tolerances used throughout the crate, stated at unit ridge scale.

/// Global geometric tolerance for "intersection exists" / "point on arc"
/// predicates, with the ridge length normalized to 1.
pub const GEOM: f64 = 1e-9;

/// Strictness tolerance for the input-angle condition inequalities.
pub const ANGLE_STRICT: f64 = 1e-12;

/// A side is treated as critical when |phi - 2 zeta| is within this gate.
pub const CRITICAL_GATE: f64 = 1e-9;

/// Switch to the limit formulas when delta is this close to pi/2.
pub const DELTA_HALF_PI: f64 = 1e-8;
