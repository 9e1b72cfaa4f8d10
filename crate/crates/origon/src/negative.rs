//! The canonical dividing point and the negative gadget built on it.
//!
//! The canonical dividing point `D_c` is the unique point of the minor
//! arc for which a negative counterpart shares its pleats with a
//! positive gadget. It is found two independent ways: by intersecting
//! segment `B'C` with the arc, where `B'` is the meeting point of the
//! perpendiculars to `k_L`, `k_R` through `B_L`, `B_R`; and by solving
//! `(V1 - r V2) tan rho_L = W` in closed form. Both must agree.

use crate::error::{Error, Result, Side};
use crate::euclid::{
    angle_at, distance, line_line_intersection, line_ray_intersection, line_segment_intersection,
    perpendicular_through, segment_circle_intersection, Orientation, Point2, Ray,
};
use crate::frame::{e_point, Frame};
use crate::params::GadgetParams;
use crate::pattern::{Assignment, CreasePattern, GadgetKind};
use crate::tol;
use std::f64::consts::{FRAC_PI_2, PI};

/// Closed-form solution for the canonical dividing point, expressed in
/// the angle coordinates at `C` and `A`.
#[derive(Copy, Clone, Debug)]
pub struct CanonicalSolution {
    rho_l: f64,
    psi_l: f64,
    phi_l: f64,
    v1: f64,
    v2: f64,
    w: f64,
}

impl CanonicalSolution {
    /// Angle at `C` between `CA` and `C D_c`, positive towards `B_L`.
    pub fn rho_l(&self) -> f64 {
        self.rho_l
    }

    /// Angle at `A` between `AC` and `A D_c`, positive towards `B_L`.
    pub fn psi_l(&self) -> f64 {
        self.psi_l
    }

    pub fn phi_l(&self) -> f64 {
        self.phi_l
    }

    /// Arc distance of `D_c` from `B_sigma`.
    pub fn phi(&self, side: Side, gamma: f64) -> f64 {
        match side {
            Side::Left => self.phi_l,
            Side::Right => gamma - self.phi_l,
        }
    }

    /// The three trigonometric coefficients `(V1, V2, W)` of the solved
    /// equation `(V1 - r V2) tan rho_L = W`.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.v1, self.v2, self.w)
    }
}

/// Solves for the canonical dividing point in closed form. The raw
/// arctangent is shifted by a half turn if needed to land in the open
/// interval `(gamma_R + delta_R - pi/2, pi/2 - gamma_L - delta_L)` that
/// contains exactly one solution.
pub fn canonical_numeric(p: &GadgetParams) -> Result<CanonicalSolution> {
    let (beta_l, beta_r) = (p.beta(Side::Left), p.beta(Side::Right));
    let (gamma_l, gamma_r) = (p.gamma_side(Side::Left), p.gamma_side(Side::Right));
    let gamma = p.gamma();
    let r = p.radius_ratio();

    let v1 = (beta_l + gamma_l).sin() * beta_r.cos() + (beta_r + gamma_r).sin() * beta_l.cos();
    let v2 = (beta_l + beta_r + gamma).sin();
    let w = (beta_l + gamma_l).cos() * beta_r.cos() - (beta_r + gamma_r).cos() * beta_l.cos();

    let lo = gamma_r + p.delta(Side::Right) - FRAC_PI_2;
    let hi = FRAC_PI_2 - gamma_l - p.delta(Side::Left);
    let mut rho_l = w.atan2(v1 - r * v2);
    while rho_l >= hi {
        rho_l -= PI;
    }
    while rho_l <= lo {
        rho_l += PI;
    }
    if !(rho_l > lo && rho_l < hi) {
        return Err(Error::SolutionOutOfRange(format!(
            "rho_L = {rho_l} has no representative in ({lo}, {hi})"
        )));
    }

    let psi_l = (r * rho_l.sin()).clamp(-1.0, 1.0).asin() - rho_l;
    // The arcsine branch must reproduce rho_L from psi_L.
    let back = psi_l.sin().atan2(r - psi_l.cos());
    if (back - rho_l).abs() > tol::GEOM {
        return Err(Error::InternalInconsistency(format!(
            "psi_L = {psi_l} maps back to rho_L = {back}, expected {rho_l}"
        )));
    }
    if !(psi_l > -gamma_r && psi_l < gamma_l) {
        return Err(Error::SolutionOutOfRange(format!(
            "psi_L = {psi_l} lies outside (-gamma_R, gamma_L) = ({}, {gamma_l})",
            -gamma_r
        )));
    }
    let phi_l = gamma_l - psi_l;
    Ok(CanonicalSolution { rho_l, psi_l, phi_l, v1, v2, w })
}

/// Angles `B_sigma C D_c` (equal to `B_sigma C B'`) from the triangle
/// ratios of the kite `B' B_L C B_R`; an alternative closed-form route
/// to the canonical dividing point.
pub fn bcd_angles(p: &GadgetParams) -> (f64, f64) {
    let side_angle = |side: Side| {
        let beta = p.beta(side);
        let delta = p.delta(side);
        let half = p.gamma() / 2.0;
        let ratio = (p.alpha().sin() / (p.beta(side.other()) + half).sin())
            * ((half + p.delta(side.other())).sin()
                / (p.gamma() + p.delta(Side::Left) + p.delta(Side::Right)).sin());
        (beta - delta).sin().atan2(ratio + (beta - delta).cos())
    };
    (side_angle(Side::Left), side_angle(Side::Right))
}

/// `rho_L` recovered from the angles at `C`: a second closed-form route
/// used for cross-checking.
pub fn rho_l_from_bcd(p: &GadgetParams) -> f64 {
    let (bcd_l, _) = bcd_angles(p);
    FRAC_PI_2 - (p.gamma_side(Side::Left) + p.delta(Side::Left) + bcd_l)
}

/// The ruler-and-compass route to the canonical dividing point.
#[derive(Copy, Clone, Debug)]
pub struct CanonicalPoints {
    /// Meeting point of the perpendiculars to `k_L`, `k_R` through
    /// `B_L`, `B_R`.
    pub b_prime: Point2,
    /// Canonical dividing point on the minor arc.
    pub d_c: Point2,
}

/// Constructs `B'` and `D_c` geometrically and cross-checks the result
/// against [`canonical_numeric`] and [`bcd_angles`].
pub fn canonical_geometric(frame: &Frame) -> Result<CanonicalPoints> {
    let p = frame.params();
    let perp_l = perpendicular_through(frame.b(Side::Left), &frame.k(Side::Left), Orientation::Ccw);
    let perp_r = perpendicular_through(frame.b(Side::Right), &frame.k(Side::Right), Orientation::Ccw);
    let b_prime = line_line_intersection(&perp_l, &perp_r).ok_or_else(|| {
        Error::InternalInconsistency("perpendiculars to k_L and k_R are parallel".into())
    })?;

    // The kite angle at B' is the supplement of the apex angle.
    let at_b_prime = angle_at(b_prime, frame.b(Side::Left), frame.b(Side::Right))?;
    if (at_b_prime - (PI - p.alpha())).abs() > tol::GEOM {
        return Err(Error::InternalInconsistency(format!(
            "angle B_L B' B_R = {at_b_prime}, expected pi - alpha = {}",
            PI - p.alpha()
        )));
    }

    let d_c = segment_circle_intersection(b_prime, frame.c(), &frame.circle())?
        .into_iter()
        .find(|q| frame.phi(Side::Left, *q).is_ok())
        .ok_or_else(|| {
            Error::InternalInconsistency("segment B'C misses the minor arc".into())
        })?;

    let solution = canonical_numeric(p)?;
    let measured_phi = frame.phi(Side::Left, d_c)?;
    if (measured_phi - solution.phi_l()).abs() > tol::GEOM {
        return Err(Error::InternalInconsistency(format!(
            "constructed phi_L(D_c) = {measured_phi} differs from closed form {}",
            solution.phi_l()
        )));
    }
    let (bcd_l, bcd_r) = bcd_angles(p);
    for (side, expected) in [(Side::Left, bcd_l), (Side::Right, bcd_r)] {
        let measured = angle_at(frame.c(), frame.b(side), d_c)?;
        if (measured - expected).abs() > tol::GEOM {
            return Err(Error::InternalInconsistency(format!(
                "measured angle B_{side} C D_c = {measured} differs from closed form {expected}"
            )));
        }
    }

    Ok(CanonicalPoints { b_prime, d_c })
}

/// One side of the resolved negative construction.
#[derive(Copy, Clone, Debug)]
pub struct NegativeSide {
    pub e: Point2,
    pub g_prime: Point2,
    pub p: Point2,
}

/// The resolved geometry of the canonical negative gadget.
#[derive(Copy, Clone, Debug)]
pub struct NegativeGadget {
    pub b_prime: Point2,
    pub d_c: Point2,
    pub phi_l: f64,
    pub left: NegativeSide,
    pub right: NegativeSide,
}

impl NegativeGadget {
    pub fn side(&self, side: Side) -> &NegativeSide {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

/// Resolves the canonical dividing point and the fold points `E_sigma`,
/// `G'_sigma`, `P_sigma` of the negative construction.
pub fn negative_gadget(frame: &Frame) -> Result<NegativeGadget> {
    let p = frame.params();
    let points = canonical_geometric(frame)?;
    let d_c = points.d_c;
    let phi_l = frame.phi(Side::Left, d_c)?;

    let e_l = e_point(frame, Side::Left, phi_l)?;
    let e_r = e_point(frame, Side::Right, p.gamma() - phi_l)?;
    for (side, e) in [(Side::Left, e_l), (Side::Right, e_r)] {
        // E_sigma is the circumcenter of B_sigma, C and D_c, which is
        // what lets the fold close; fail loudly if it drifts.
        let db = distance(e, frame.b(side));
        let dc = distance(e, frame.c());
        let dd = distance(e, d_c);
        if (db - dc).abs() > tol::GEOM || (db - dd).abs() > tol::GEOM {
            return Err(Error::InternalInconsistency(format!(
                "E_{side} is not equidistant from B_{side}, C and D_c: {db} {dc} {dd}"
            )));
        }
    }

    let ee_dir = e_l.to(e_r);
    let through_d = Ray::new(d_c, ee_dir)?;
    let through_c = Ray::new(frame.c(), ee_dir)?;
    let g_l = line_segment_intersection(&through_d, frame.a(), e_l)
        .ok_or(Error::NoIntersection("parallel through D_c misses segment A E_L"))?;
    let g_r = line_segment_intersection(&through_d, frame.a(), e_r)
        .ok_or(Error::NoIntersection("parallel through D_c misses segment A E_R"))?;
    let m_l = Ray::new(e_l, frame.l(Side::Left).dir())?;
    let m_r = Ray::new(e_r, frame.l(Side::Right).dir())?;
    let p_l = line_ray_intersection(&through_c, &m_l)
        .ok_or(Error::NoIntersection("parallel through C misses ray m_L"))?;
    let p_r = line_ray_intersection(&through_c, &m_r)
        .ok_or(Error::NoIntersection("parallel through C misses ray m_R"))?;

    // The fold axis G'_L G'_R must be perpendicular to segment B'C.
    let axis = points.b_prime.to(frame.c());
    if ee_dir.normalized()?.dot(axis.normalized()?).abs() > tol::GEOM {
        return Err(Error::InternalInconsistency(
            "G'_L G'_R is not perpendicular to segment B'C".into(),
        ));
    }

    Ok(NegativeGadget {
        b_prime: points.b_prime,
        d_c,
        phi_l,
        left: NegativeSide { e: e_l, g_prime: g_l, p: p_l },
        right: NegativeSide { e: e_r, g_prime: g_r, p: p_r },
    })
}

/// Builds the crease pattern of the canonical negative gadget. The
/// pattern is drawn as seen from the back of the paper, which the
/// `viewed_from` metadata records.
pub fn negative_pattern(frame: &Frame) -> Result<CreasePattern> {
    let p = frame.params();
    let gadget = negative_gadget(frame)?;
    let phi_l = gadget.phi_l;
    let (e_l, e_r) = (gadget.left.e, gadget.right.e);
    let (g_l, g_r) = (gadget.left.g_prime, gadget.right.g_prime);
    let (p_l, p_r) = (gadget.left.p, gadget.right.p);

    let mut cp = CreasePattern::new(GadgetKind::Negative);
    cp.add_vertex("A", frame.a())?;
    for (side, e, g, pp) in [(Side::Left, e_l, g_l, p_l), (Side::Right, e_r, g_r, p_r)] {
        let s = side.suffix();
        cp.add_vertex(&format!("B_{s}"), frame.b(side))?;
        cp.add_vertex(&format!("E_{s}"), e)?;
        cp.add_vertex(&format!("G'_{s}"), g)?;
        cp.add_vertex(&format!("P_{s}"), pp)?;
    }

    for side in Side::BOTH {
        let s = side.suffix();
        let b = format!("B_{s}");
        let e = format!("E_{s}");
        let g = format!("G'_{s}");
        let pp = format!("P_{s}");
        cp.add_ray(&format!("j_{s}"), "A", frame.j(side).dir(), Assignment::Mountain)?;
        // m_sigma starts at E_sigma and passes through P_sigma.
        cp.add_segment(&format!("m_{s}"), &e, &pp, Assignment::Mountain)?;
        cp.add_ray(&format!("m_{s}"), &pp, frame.l(side).dir(), Assignment::Mountain)?;
        // A E_sigma carries the vertex G'_sigma in its interior.
        cp.add_segment(&format!("A E_{s}"), "A", &g, Assignment::Mountain)?;
        cp.add_segment(&format!("A E_{s}"), &g, &e, Assignment::Mountain)?;
        cp.add_segment(&format!("B_{s} G'_{s}"), &b, &g, Assignment::Mountain)?;
        cp.add_segment(&format!("B_{s} P_{s}"), &b, &pp, Assignment::Mountain)?;

        cp.add_ray(&format!("k_{s}"), &b, frame.k(side).dir(), Assignment::Valley)?;
        cp.add_ray(&format!("l_{s}"), &b, frame.l(side).dir(), Assignment::Valley)?;
        cp.add_segment(&format!("A B_{s}"), "A", &b, Assignment::Valley)?;
        cp.add_segment(&format!("B_{s} E_{s}"), &b, &e, Assignment::Valley)?;
    }
    cp.add_segment("E_L E_R", "E_L", "E_R", Assignment::Mountain)?;
    cp.add_segment("G'_L G'_R", "G'_L", "G'_R", Assignment::Valley)?;
    cp.add_segment("P_L P_R", "P_L", "P_R", Assignment::Valley)?;

    cp.set_metadata("viewed_from", "back");
    cp.set_metadata("phi_L", &format!("{phi_l}"));
    cp.set_metadata("psi_L", &format!("{}", p.gamma_side(Side::Left) - phi_l));
    cp.validate()?;
    Ok(cp)
}
