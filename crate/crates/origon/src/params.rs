//! Input-angle validation and the derived scalars `gamma`, `gamma_L`,
//! `gamma_R` and the radius ratio `r`.
//!
//! The five input angles are `alpha`, `beta_L`, `beta_R` (face angles of
//! the net) and `delta_L`, `delta_R` (pleat direction changes). All are
//! radians. `gamma = 2 pi - alpha - beta_L - beta_R` is the angle left
//! between the two ridge images, and `gamma_sigma` is the rotation from
//! the ridge image `A B_sigma` to segment `A C`.

use crate::error::{ConditionTag, Error, Result, Side};
use crate::tol;
use std::f64::consts::{FRAC_PI_2, PI};

/// The five input angles plus the ridge length, before validation.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct RawParams {
    pub alpha: f64,
    pub beta_l: f64,
    pub beta_r: f64,
    pub delta_l: f64,
    pub delta_r: f64,
    pub ridge_length: f64,
}

impl RawParams {
    /// Raw parameters with unit ridge length.
    pub fn new(alpha: f64, beta_l: f64, beta_r: f64, delta_l: f64, delta_r: f64) -> RawParams {
        RawParams { alpha, beta_l, beta_r, delta_l, delta_r, ridge_length: 1.0 }
    }

    /// Convenience constructor taking degrees.
    pub fn from_degrees(alpha: f64, beta_l: f64, beta_r: f64, delta_l: f64, delta_r: f64) -> RawParams {
        RawParams::new(
            alpha.to_radians(),
            beta_l.to_radians(),
            beta_r.to_radians(),
            delta_l.to_radians(),
            delta_r.to_radians(),
        )
    }

    pub fn with_ridge_length(mut self, ridge_length: f64) -> RawParams {
        self.ridge_length = ridge_length;
        self
    }

    pub fn beta(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.beta_l,
            Side::Right => self.beta_r,
        }
    }

    pub fn delta(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.delta_l,
            Side::Right => self.delta_r,
        }
    }
}

/// A validated parameter set; the single source of scalar truth.
///
/// Construct via [`validate`]. Holds the raw angles together with
/// `gamma`, the side split `gamma_L + gamma_R = gamma` (the split is
/// exact by construction: `gamma_R` is defined as `gamma - gamma_L`)
/// and the radius ratio `r = |AC| / |AB|`.
#[derive(Copy, Clone, Debug)]
pub struct GadgetParams {
    raw: RawParams,
    gamma: f64,
    gamma_l: f64,
    gamma_r: f64,
    r: f64,
}

impl GadgetParams {
    pub fn raw(&self) -> &RawParams {
        &self.raw
    }

    pub fn alpha(&self) -> f64 {
        self.raw.alpha
    }

    pub fn beta(&self, side: Side) -> f64 {
        self.raw.beta(side)
    }

    pub fn delta(&self, side: Side) -> f64 {
        self.raw.delta(side)
    }

    pub fn ridge_length(&self) -> f64 {
        self.raw.ridge_length
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn gamma_side(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.gamma_l,
            Side::Right => self.gamma_r,
        }
    }

    /// Radius ratio `|AC| / |AB|`.
    pub fn radius_ratio(&self) -> f64 {
        self.r
    }
}

fn check_raw(raw: &RawParams) -> Result<()> {
    let angles = [
        (raw.alpha, "alpha"),
        (raw.beta_l, "beta_L"),
        (raw.beta_r, "beta_R"),
        (raw.delta_l, "delta_L"),
        (raw.delta_r, "delta_R"),
    ];
    for (v, name) in angles {
        if !v.is_finite() {
            return Err(Error::InvalidRawParams(match name {
                "alpha" => "alpha is not finite",
                "beta_L" => "beta_L is not finite",
                "beta_R" => "beta_R is not finite",
                "delta_L" => "delta_L is not finite",
                _ => "delta_R is not finite",
            }));
        }
    }
    if !(raw.alpha > 0.0 && raw.alpha < PI) {
        return Err(Error::InvalidRawParams("alpha must lie in (0, pi)"));
    }
    if !(raw.beta_l > 0.0 && raw.beta_l < PI) {
        return Err(Error::InvalidRawParams("beta_L must lie in (0, pi)"));
    }
    if !(raw.beta_r > 0.0 && raw.beta_r < PI) {
        return Err(Error::InvalidRawParams("beta_R must lie in (0, pi)"));
    }
    if !(raw.ridge_length.is_finite() && raw.ridge_length > 0.0) {
        return Err(Error::InvalidRawParams("ridge_length must be positive"));
    }
    Ok(())
}

fn violation(tag: ConditionTag, detail: String) -> Error {
    Error::ConditionViolation { tag, detail }
}

/// Checks the five conditions against `raw` (strictly, with tolerance
/// [`tol::ANGLE_STRICT`]; `delta_sigma = 0` is allowed exactly) and
/// derives the remaining scalars. Reports the first failed condition.
pub fn validate(raw: RawParams) -> Result<GadgetParams> {
    check_raw(&raw)?;
    let gamma = 2.0 * PI - raw.alpha - raw.beta_l - raw.beta_r;
    let eps = tol::ANGLE_STRICT;

    for side in Side::BOTH {
        if raw.beta(side) + gamma / 2.0 >= PI - eps {
            return Err(violation(
                ConditionTag::I,
                format!("beta_{side} + gamma/2 must be < pi (beta_{side} = {}, gamma = {gamma})", raw.beta(side)),
            ));
        }
    }
    if raw.beta_l + raw.beta_r + gamma / 2.0 <= PI + eps {
        return Err(violation(
            ConditionTag::I,
            format!("beta_L + beta_R + gamma/2 must be > pi (gamma = {gamma})"),
        ));
    }
    if gamma <= eps {
        return Err(violation(ConditionTag::Ii, format!("gamma = {gamma} must be > 0")));
    }
    for side in Side::BOTH {
        if raw.delta(side) < 0.0 {
            return Err(violation(
                ConditionTag::IiiA,
                format!("delta_{side} = {} must be >= 0", raw.delta(side)),
            ));
        }
    }
    for side in Side::BOTH {
        if raw.delta(side) >= raw.beta(side) - eps {
            return Err(violation(
                ConditionTag::IiiB,
                format!("delta_{side} = {} must be < beta_{side} = {}", raw.delta(side), raw.beta(side)),
            ));
        }
    }
    if gamma + raw.delta_l + raw.delta_r >= PI - eps {
        return Err(violation(
            ConditionTag::IiiC,
            format!("gamma + delta_L + delta_R = {} must be < pi", gamma + raw.delta_l + raw.delta_r),
        ));
    }

    let (gamma_l, gamma_r) = gamma_sides(&raw, gamma);
    let r = radius_ratio_checked(&raw, gamma, gamma_l, gamma_r)?;
    Ok(GadgetParams { raw, gamma, gamma_l, gamma_r, r })
}

/// Splits `gamma` into the side angles `(gamma_L, gamma_R)`.
///
/// `gamma_L` comes from the closed form for `tan gamma_sigma`, written
/// without bare tangents so the `delta = pi/2` limits fall out of the
/// same expression; `gamma_R = gamma - gamma_L` keeps the sum exact.
pub fn gamma_sides(raw: &RawParams, gamma: f64) -> (f64, f64) {
    let gamma_l = gamma_side_closed_form(gamma, raw.delta_l, raw.delta_r);
    (gamma_l, gamma - gamma_l)
}

/// `gamma_sigma` from `tan gamma_sigma =
/// (1 - cos gamma + sin gamma tan delta_sigma') /
/// (sin gamma + cos gamma tan delta_sigma' + tan delta_sigma)`,
/// with numerator and denominator multiplied through by
/// `cos delta_sigma cos delta_sigma'`.
///
/// The tangent determines `gamma_sigma` only up to a half turn inside
/// its range `(-pi/2, pi)`; the branch is fixed by the sign rule
/// `gamma_sigma < 0 iff delta_sigma > pi/2` (with `gamma_sigma = 0` at
/// `delta_sigma = pi/2`).
fn gamma_side_closed_form(gamma: f64, delta: f64, delta_other: f64) -> f64 {
    if (delta - FRAC_PI_2).abs() <= tol::DELTA_HALF_PI {
        return 0.0;
    }
    let (sd, cd) = delta.sin_cos();
    let (sdo, cdo) = delta_other.sin_cos();
    let (sg, cg) = gamma.sin_cos();
    let num = (1.0 - cg) * cdo * cd + sg * sdo * cd;
    let den = sg * cdo * cd + cg * sdo * cd + sd * cdo;
    let mut g = num.atan2(den);
    // Select the representative of atan's half-turn ambiguity that obeys
    // the sign rule.
    if delta > FRAC_PI_2 {
        while g >= 0.0 {
            g -= PI;
        }
        while g <= -FRAC_PI_2 {
            g += PI;
        }
    } else {
        while g < 0.0 {
            g += PI;
        }
        while g >= PI {
            g -= PI;
        }
    }
    g
}

/// `r = cos delta_sigma / cos(gamma_sigma + delta_sigma)`, which is
/// `r = 1 / (cos gamma_sigma - sin gamma_sigma tan delta_sigma)` freed of
/// the tangent. Near `delta_sigma = pi/2` the expression degenerates to
/// 0/0 and only the other side is used.
fn radius_ratio_side(delta: f64, gamma_side: f64) -> Option<f64> {
    if (delta - FRAC_PI_2).abs() <= tol::DELTA_HALF_PI {
        return None;
    }
    Some(delta.cos() / (gamma_side + delta).cos())
}

fn radius_ratio_checked(raw: &RawParams, gamma: f64, gamma_l: f64, gamma_r: f64) -> Result<f64> {
    let _ = gamma;
    let r_l = radius_ratio_side(raw.delta_l, gamma_l);
    let r_r = radius_ratio_side(raw.delta_r, gamma_r);
    let r = match (r_l, r_r) {
        (Some(a), Some(b)) => {
            if (a - b).abs() > tol::GEOM * a.abs().max(1.0) {
                return Err(Error::InternalInconsistency(format!(
                    "radius ratio from the two sides disagrees: {a} vs {b}"
                )));
            }
            0.5 * (a + b)
        }
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => {
            // Excluded by condition (iii.c): both deltas cannot be pi/2.
            return Err(Error::InternalInconsistency(
                "both deltas are at pi/2; excluded by condition (iii.c)".into(),
            ));
        }
    };
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InternalInconsistency(format!("radius ratio {r} is not positive")));
    }
    Ok(r)
}
