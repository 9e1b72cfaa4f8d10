//! Positive gadget construction for an admissible dividing point, with
//! the fold points `G_sigma`, `H_sigma` found by ray intersections and
//! cross-checked against their closed-form distances from `A`.

use crate::critical::critical_numeric;
use crate::error::{Error, Result, Side};
use crate::euclid::{angle_at, distance, ray_segment_intersection, Point2, Ray};
use crate::frame::{e_point, Frame};
use crate::negative::canonical_numeric;
use crate::params::GadgetParams;
use crate::pattern::{Assignment, CreasePattern, GadgetKind};
use crate::tol;
use std::f64::consts::PI;

/// How to pick the dividing point on the minor arc.
#[derive(Copy, Clone, Debug)]
pub enum DividingChoice {
    /// Explicit arc distance from `B_L`.
    PhiL(f64),
    /// Critical on the left: `phi_L = 2 zeta_L`.
    CriticalLeft,
    /// Critical on the right: `phi_R = 2 zeta_R`.
    CriticalRight,
    /// The canonical dividing point shared with the negative gadget.
    Canonical,
}

/// Resolves a dividing choice to the arc distance `phi_L`.
pub fn resolve_phi_l(p: &GadgetParams, choice: DividingChoice) -> Result<f64> {
    Ok(match choice {
        DividingChoice::PhiL(v) => v,
        DividingChoice::CriticalLeft => 2.0 * critical_numeric(p, Side::Left),
        DividingChoice::CriticalRight => p.gamma() - 2.0 * critical_numeric(p, Side::Right),
        DividingChoice::Canonical => canonical_numeric(p)?.phi_l(),
    })
}

/// The closed interval of admissible `phi_L` values, clipped to the open
/// arc `(0, gamma)`: `[gamma - 2 zeta_R, 2 zeta_L]`.
pub fn admissible_interval(p: &GadgetParams) -> (f64, f64) {
    let lo = (p.gamma() - 2.0 * critical_numeric(p, Side::Right)).max(0.0);
    let hi = (2.0 * critical_numeric(p, Side::Left)).min(p.gamma());
    (lo, hi)
}

/// One side of the positive construction.
#[derive(Copy, Clone, Debug)]
pub struct PositiveSide {
    pub e: Point2,
    pub g: Point2,
    /// Present only when `delta_sigma > 0`.
    pub h: Option<Point2>,
    /// Whether this side is at its critical angle (within the gate).
    pub critical: bool,
}

/// The resolved geometry of a positive gadget.
#[derive(Clone, Debug)]
pub struct PositiveGadget {
    pub phi_l: f64,
    pub d: Point2,
    pub left: PositiveSide,
    pub right: PositiveSide,
}

impl PositiveGadget {
    pub fn side(&self, side: Side) -> &PositiveSide {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

/// Runs the positive construction, failing with `NotConstructible` when
/// `phi_sigma` exceeds `2 zeta_sigma` beyond the critical gate.
pub fn positive_gadget(frame: &Frame, choice: DividingChoice) -> Result<PositiveGadget> {
    let p = frame.params();
    let gamma = p.gamma();
    let phi_l = resolve_phi_l(p, choice)?;
    if !(phi_l > 0.0 && phi_l < gamma) {
        return Err(Error::DegenerateDividing(phi_l));
    }
    let d = frame.minor_arc_point(Side::Left, phi_l);

    let mut sides = [None, None];
    for (i, side) in Side::BOTH.into_iter().enumerate() {
        let phi = match side {
            Side::Left => phi_l,
            Side::Right => gamma - phi_l,
        };
        let zeta2 = 2.0 * critical_numeric(p, side);
        if phi > zeta2 + tol::CRITICAL_GATE {
            return Err(Error::NotConstructible { side, phi, zeta2 });
        }
        let critical = (phi - zeta2).abs() <= tol::CRITICAL_GATE;
        let e = e_point(frame, side, phi)?;

        // E_sigma is equidistant from B_sigma (bisector at A), C (on
        // m_sigma) and D (same bisector argument).
        let eb = distance(e, frame.b(side));
        if (eb - distance(e, frame.c())).abs() > tol::GEOM
            || (eb - distance(e, d)).abs() > tol::GEOM
        {
            return Err(Error::InternalInconsistency(format!(
                "E_{side} is not equidistant from B_{side}, C and D"
            )));
        }

        let g = fold_point(frame, side, e, PI - p.beta(side))?;
        // Closed form: in triangle A B_sigma G_sigma the angles at A and
        // B_sigma are phi/2 and pi - beta, so |AG| = sin beta / sin(beta - phi/2).
        let ag_closed = p.ridge_length() * p.beta(side).sin() / (p.beta(side) - phi / 2.0).sin();
        if (distance(frame.a(), g) - ag_closed).abs() > tol::GEOM * ag_closed.max(1.0) {
            return Err(Error::InternalInconsistency(format!(
                "|A G_{side}| differs from its closed form {ag_closed}"
            )));
        }

        let h = if p.delta(side) > 0.0 {
            let angle_abe = angle_at(frame.b(side), frame.a(), e)?;
            let h = fold_point(frame, side, e, angle_abe - p.delta(side))?;
            let ah_closed = p.ridge_length() * (angle_abe - p.delta(side)).sin()
                / (PI - phi / 2.0 - (angle_abe - p.delta(side))).sin();
            if (distance(frame.a(), h) - ah_closed).abs() > tol::GEOM * ah_closed.max(1.0) {
                return Err(Error::InternalInconsistency(format!(
                    "|A H_{side}| differs from its closed form {ah_closed}"
                )));
            }
            Some(h)
        } else {
            None
        };
        sides[i] = Some(PositiveSide { e, g, h, critical });
    }

    Ok(PositiveGadget { phi_l, d, left: sides[0].unwrap(), right: sides[1].unwrap() })
}

/// Point on segment `A E_sigma` seen from `B_sigma` at the unsigned
/// angle `opening` from the ridge `B_sigma A`, on the side of `E_sigma`.
fn fold_point(frame: &Frame, side: Side, e: Point2, opening: f64) -> Result<Point2> {
    let inward = frame.theta_b(side) - PI;
    let theta = match side {
        Side::Left => inward - opening,
        Side::Right => inward + opening,
    };
    let probe = Ray::at_angle(frame.b(side), theta);
    ray_segment_intersection(&probe, frame.a(), e).ok_or(Error::NoIntersection(
        "fold ray misses segment A E; the gadget is not constructible here",
    ))
}

/// Builds the positive crease pattern per the assignment table,
/// including the merged crease labels on critical sides.
pub fn positive_pattern(frame: &Frame, choice: DividingChoice) -> Result<CreasePattern> {
    let p = frame.params();
    let gadget = positive_gadget(frame, choice)?;

    let mut cp = CreasePattern::new(GadgetKind::Positive);
    cp.add_vertex("A", frame.a())?;
    cp.add_vertex("D", gadget.d)?;
    for side in Side::BOTH {
        let s = side.suffix();
        cp.add_vertex(&format!("B_{s}"), frame.b(side))?;
        cp.add_vertex(&format!("E_{s}"), gadget.side(side).e)?;
    }

    cp.add_segment("A D", "A", "D", Assignment::Mountain)?;
    cp.add_segment("E_L E_R", "E_L", "E_R", Assignment::Valley)?;
    for side in Side::BOTH {
        let s = side.suffix();
        let b = format!("B_{s}");
        let e = format!("E_{s}");
        cp.add_ray(&format!("j_{s}"), "A", frame.j(side).dir(), Assignment::Mountain)?;
        cp.add_ray(&format!("l_{s}"), &b, frame.l(side).dir(), Assignment::Mountain)?;
        cp.add_segment(&format!("A B_{s}"), "A", &b, Assignment::Mountain)?;
        cp.add_ray(&format!("k_{s}"), &b, frame.k(side).dir(), Assignment::Valley)?;
        // m_sigma restarts from E_sigma in the pleat direction.
        cp.add_ray(&format!("m_{s}"), &e, frame.l(side).dir(), Assignment::Valley)?;

        let data = gadget.side(side);
        let delta = p.delta(side);
        match (data.critical, delta > 0.0) {
            (false, false) => {
                let g = format!("G_{s}");
                cp.add_vertex(&g, data.g)?;
                cp.add_segment(&format!("A E_{s}"), "A", &g, Assignment::Valley)?;
                cp.add_segment(&format!("A E_{s}"), &g, &e, Assignment::Valley)?;
                cp.add_segment(&format!("B_{s} G_{s}"), &b, &g, Assignment::Mountain)?;
                cp.add_segment(&format!("D E_{s}"), "D", &e, Assignment::Mountain)?;
                cp.add_segment(&format!("D G_{s}"), "D", &g, Assignment::Valley)?;
            }
            (false, true) => {
                let g = format!("G_{s}");
                let h = format!("H_{s}");
                cp.add_vertex(&g, data.g)?;
                cp.add_vertex(&h, data.h.unwrap())?;
                cp.add_segment(&format!("A E_{s}"), "A", &g, Assignment::Valley)?;
                cp.add_segment(&format!("A E_{s}"), &g, &h, Assignment::Valley)?;
                cp.add_segment(&format!("A E_{s}"), &h, &e, Assignment::Valley)?;
                cp.add_segment(&format!("B_{s} G_{s}"), &b, &g, Assignment::Mountain)?;
                cp.add_segment(&format!("B_{s} E_{s}"), &b, &e, Assignment::Mountain)?;
                cp.add_segment(&format!("D H_{s}"), "D", &h, Assignment::Mountain)?;
                cp.add_segment(&format!("D G_{s}"), "D", &g, Assignment::Valley)?;
                cp.add_segment(&format!("B_{s} H_{s}"), &b, &h, Assignment::Valley)?;
            }
            (true, false) => {
                // G_sigma lands on E_sigma; the creases merge.
                cp.add_segment(
                    &format!("B_{s} E_{s} = B_{s} G_{s}"),
                    &b,
                    &e,
                    Assignment::Mountain,
                )?;
                cp.add_segment(&format!("D E_{s} = D G_{s}"), "D", &e, Assignment::Mountain)?;
                cp.add_segment(&format!("A E_{s}"), "A", &e, Assignment::Valley)?;
            }
            (true, true) => {
                // H_sigma lands on G_sigma; the creases merge.
                let g = format!("G_{s}");
                cp.add_vertex(&g, data.g)?;
                cp.add_segment(&format!("A E_{s}"), "A", &g, Assignment::Valley)?;
                cp.add_segment(&format!("A E_{s}"), &g, &e, Assignment::Valley)?;
                cp.add_segment(&format!("B_{s} E_{s}"), &b, &e, Assignment::Mountain)?;
                cp.add_segment(&format!("D G_{s} = D H_{s}"), "D", &g, Assignment::Mountain)?;
                cp.add_segment(
                    &format!("B_{s} G_{s} = B_{s} H_{s}"),
                    &b,
                    &g,
                    Assignment::Valley,
                )?;
            }
        }
    }

    cp.set_metadata("viewed_from", "front");
    cp.set_metadata("phi_L", &format!("{}", gadget.phi_l));
    for side in Side::BOTH {
        cp.set_metadata(
            &format!("critical_{}", side.suffix()),
            if gadget.side(side).critical { "true" } else { "false" },
        );
    }
    cp.validate()?;
    Ok(cp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::build_frame;
    use crate::params::{validate, RawParams};
    use proptest::prelude::*;

    fn frame_deg(a: f64, bl: f64, br: f64, dl: f64, dr: f64) -> Frame {
        build_frame(&validate(RawParams::from_degrees(a, bl, br, dl, dr)).unwrap()).unwrap()
    }

    #[test]
    fn case_s_admissible_interval() {
        let f = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
        let (lo, hi) = admissible_interval(f.params());
        let two_zeta = 2.0 * 0.5f64.atan();
        assert!((hi - two_zeta).abs() < 1e-12);
        assert!((lo - (f.params().gamma() - two_zeta)).abs() < 1e-12);
    }

    #[test]
    fn mid_interval_pattern_counts() {
        let f = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
        let cp = positive_pattern(&f, DividingChoice::PhiL(45f64.to_radians())).unwrap();
        let m = cp.edges().iter().filter(|e| e.assignment == Assignment::Mountain).count();
        let v = cp.edges().iter().filter(|e| e.assignment == Assignment::Valley).count();
        assert_eq!(m, 11);
        assert_eq!(v, 11);
        assert_eq!(cp.vertices().len(), 8);
    }

    #[test]
    fn critical_zero_delta_merges_g_into_e() {
        let f = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
        let cp = positive_pattern(&f, DividingChoice::CriticalLeft).unwrap();
        assert!(cp.vertex("G_L").is_none());
        assert!(cp.vertex("G_R").is_some());
        assert!(cp
            .edges()
            .iter()
            .any(|e| e.role == "B_L E_L = B_L G_L" && e.assignment == Assignment::Mountain));
        assert_eq!(
            cp.metadata().iter().find(|(k, _)| k == "critical_L").map(|(_, v)| v.as_str()),
            Some("true")
        );
    }

    #[test]
    fn critical_positive_delta_merges_h_into_g() {
        let f = frame_deg(100.0, 80.0, 70.0, 10.0, 0.0);
        let cp = positive_pattern(&f, DividingChoice::CriticalLeft).unwrap();
        assert!(cp.vertex("H_L").is_none());
        assert!(cp
            .edges()
            .iter()
            .any(|e| e.role == "B_L G_L = B_L H_L" && e.assignment == Assignment::Valley));
        // The right side is non-critical here with delta_R = 0.
        assert!(cp.edges().iter().any(|e| e.role == "D E_R"));
    }

    #[test]
    fn h_sits_between_g_and_e() {
        let f = frame_deg(100.0, 80.0, 70.0, 10.0, 0.0);
        let p = f.params();
        let (lo, hi) = admissible_interval(p);
        let g = positive_gadget(&f, DividingChoice::PhiL(0.5 * (lo + hi))).unwrap();
        let side = g.side(Side::Left);
        let h = side.h.unwrap();
        let ag = distance(f.a(), side.g);
        let ah = distance(f.a(), h);
        let ae = distance(f.a(), side.e);
        assert!(ag < ah && ah < ae, "expected A..G..H..E, got {ag} {ah} {ae}");
    }

    #[test]
    fn over_critical_dividing_point_is_rejected() {
        let f = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
        let err = positive_gadget(&f, DividingChoice::PhiL(70f64.to_radians())).unwrap_err();
        match err {
            Error::NotConstructible { side, phi, zeta2 } => {
                assert_eq!(side, Side::Left);
                assert!(phi > zeta2);
            }
            other => panic!("expected NotConstructible, got {other:?}"),
        }
    }

    #[test]
    fn canonical_choice_is_always_constructible() {
        for (a, bl, br, dl, dr) in [
            (90.0, 90.0, 90.0, 0.0, 0.0),
            (100.0, 80.0, 70.0, 10.0, 0.0),
            (90.0, 120.0, 70.0, 0.0, 60.0),
            (80.0, 100.0, 95.0, 35.0, 5.0),
        ] {
            let f = frame_deg(a, bl, br, dl, dr);
            let cp = positive_pattern(&f, DividingChoice::Canonical).unwrap();
            cp.validate().unwrap();
        }
    }

    #[test]
    fn dividing_choice_endpoints_match_the_interval() {
        let f = frame_deg(100.0, 80.0, 70.0, 10.0, 0.0);
        let p = f.params();
        let (lo, hi) = admissible_interval(p);
        assert!((resolve_phi_l(p, DividingChoice::CriticalLeft).unwrap() - hi).abs() < 1e-15);
        assert!((resolve_phi_l(p, DividingChoice::CriticalRight).unwrap() - lo).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn admissible_choices_build_on_random_valid_params(
            alpha in 30.0f64..170.0,
            beta_l in 30.0f64..170.0,
            beta_r in 30.0f64..170.0,
            tl in 0.0f64..0.9,
            tr in 0.0f64..0.9,
            frac in 0.05f64..0.95,
        ) {
            let gamma = 360.0 - alpha - beta_l - beta_r;
            prop_assume!(gamma > 1.0 && gamma < 179.0);
            prop_assume!(beta_l + gamma / 2.0 < 179.0 && beta_r + gamma / 2.0 < 179.0);
            prop_assume!(beta_l + beta_r + gamma / 2.0 > 181.0);
            let dl = tl * beta_l.min(90.0) * 0.9;
            let dr = tr * beta_r.min(90.0) * 0.9;
            prop_assume!(gamma + dl + dr < 179.0);
            let params = validate(RawParams::from_degrees(alpha, beta_l, beta_r, dl, dr));
            prop_assume!(params.is_ok());
            let p = params.unwrap();
            let f = build_frame(&p).unwrap();
            let (lo, hi) = admissible_interval(&p);
            prop_assume!(hi - lo > 1e-6);
            let phi = lo + frac * (hi - lo);
            prop_assume!(phi > 1e-6 && phi < p.gamma() - 1e-6);
            let cp = positive_pattern(&f, DividingChoice::PhiL(phi)).unwrap();
            cp.validate().unwrap();
        }
    }
}
