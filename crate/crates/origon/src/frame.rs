//! The embedded net: ridge images, pleat rays and the construction of
//! the points `C` and `P` by simulated ruler and compass.
//!
//! Embedding convention: `A` sits at the origin, the bisector of
//! `angle B_L A B_R` points down the negative y axis and `B_L` lies on
//! the negative-x side. The minor arc from `B_L` to `B_R` is swept
//! counterclockwise.

use crate::error::{Error, Result, Side};
use crate::euclid::{
    distance, line_line_intersection, signed_angle, Circle, Orientation, Point2, Ray, Vec2,
};
use crate::params::GadgetParams;
use crate::tol;
use std::f64::consts::{FRAC_PI_2, PI};

/// The net with all named points and rays of the base construction.
#[derive(Clone, Debug)]
pub struct Frame {
    params: GadgetParams,
    a: Point2,
    b_l: Point2,
    b_r: Point2,
    c: Point2,
    p: Point2,
    j_l: Ray,
    j_r: Ray,
    k_l: Ray,
    k_r: Ray,
    l_l: Ray,
    l_r: Ray,
    m_l: Ray,
    m_r: Ray,
    circle: Circle,
    theta_b_l: f64,
    theta_b_r: f64,
}

impl Frame {
    pub fn params(&self) -> &GadgetParams {
        &self.params
    }

    pub fn a(&self) -> Point2 {
        self.a
    }

    pub fn b(&self, side: Side) -> Point2 {
        match side {
            Side::Left => self.b_l,
            Side::Right => self.b_r,
        }
    }

    pub fn c(&self) -> Point2 {
        self.c
    }

    /// Excenter of triangle `C B_L B_R`, the meeting point of the two
    /// perpendicular bisectors `m_L`, `m_R`.
    pub fn excenter(&self) -> Point2 {
        self.p
    }

    pub fn j(&self, side: Side) -> Ray {
        match side {
            Side::Left => self.j_l,
            Side::Right => self.j_r,
        }
    }

    pub fn k(&self, side: Side) -> Ray {
        match side {
            Side::Left => self.k_l,
            Side::Right => self.k_r,
        }
    }

    /// Mountain crease of the outgoing pleat on `side`.
    pub fn l(&self, side: Side) -> Ray {
        match side {
            Side::Left => self.l_l,
            Side::Right => self.l_r,
        }
    }

    /// Perpendicular bisector of `B_sigma C`, directed like `l_sigma`.
    pub fn m(&self, side: Side) -> Ray {
        match side {
            Side::Left => self.m_l,
            Side::Right => self.m_r,
        }
    }

    /// The circle through `B_L` and `B_R` centered at `A`.
    pub fn circle(&self) -> Circle {
        self.circle
    }

    /// Polar angle of `A -> B_sigma` in the embedding.
    pub fn theta_b(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.theta_b_l,
            Side::Right => self.theta_b_r,
        }
    }

    /// Point of the minor arc at angle `phi` from `B_sigma` (towards the
    /// other endpoint).
    pub fn minor_arc_point(&self, side: Side, phi: f64) -> Point2 {
        let theta = match side {
            Side::Left => self.theta_b_l + phi,
            Side::Right => self.theta_b_r - phi,
        };
        Point2::polar(self.a, self.params.ridge_length(), theta)
    }

    /// Point of the major arc at angle `phi_prime` from `B_sigma` (away
    /// from the minor arc).
    pub fn major_arc_point(&self, side: Side, phi_prime: f64) -> Point2 {
        let theta = match side {
            Side::Left => self.theta_b_l - phi_prime,
            Side::Right => self.theta_b_r + phi_prime,
        };
        Point2::polar(self.a, self.params.ridge_length(), theta)
    }

    /// Angle function of the minor arc: `phi_sigma(d)` in `[0, gamma]`.
    /// Fails when `d` is off the circle or outside the minor arc range.
    pub fn phi(&self, side: Side, d: Point2) -> Result<f64> {
        let ridge = self.params.ridge_length();
        if (distance(self.a, d) - ridge).abs() > tol::GEOM * ridge.max(1.0) {
            return Err(Error::NotOnArc("point is off circle c_A"));
        }
        let phi = match side {
            Side::Left => signed_angle(self.a, self.b_l, d, Orientation::Ccw)?,
            Side::Right => signed_angle(self.a, self.b_r, d, Orientation::Cw)?,
        };
        let gamma = self.params.gamma();
        if !(-tol::GEOM..=gamma + tol::GEOM).contains(&phi) {
            return Err(Error::NotOnArc("point is outside the minor arc"));
        }
        Ok(phi.clamp(0.0, gamma))
    }

    /// Angle function of the major arc: `phi'_sigma(d)` in `[0, 2 pi - gamma]`.
    pub fn phi_prime(&self, side: Side, d: Point2) -> Result<f64> {
        let ridge = self.params.ridge_length();
        if (distance(self.a, d) - ridge).abs() > tol::GEOM * ridge.max(1.0) {
            return Err(Error::NotOnArc("point is off circle c_A"));
        }
        let theta_d = self.a.to(d).angle();
        let raw = match side {
            Side::Left => self.theta_b_l - theta_d,
            Side::Right => theta_d - self.theta_b_r,
        };
        let two_pi = 2.0 * PI;
        let mut phi = raw.rem_euclid(two_pi);
        let max = two_pi - self.params.gamma();
        // Points within tolerance below B_sigma wrap to almost 2 pi.
        if phi > max + tol::GEOM {
            phi -= two_pi;
        }
        if !(-tol::GEOM..=max + tol::GEOM).contains(&phi) {
            return Err(Error::NotOnArc("point is outside the major arc"));
        }
        Ok(phi.clamp(0.0, max))
    }
}

/// Performs the base ruler-and-compass steps: pleat creases `l_sigma`,
/// the point `C` from the two perpendiculars, the perpendicular
/// bisectors `m_sigma` and their meeting point `P`.
///
/// The measured angles `angle B_sigma A C` are cross-checked against the
/// closed-form `gamma_sigma` of the parameter set, and `|AC|/|AB|`
/// against the closed-form radius ratio.
pub fn build_frame(params: &GadgetParams) -> Result<Frame> {
    let p = *params;
    let gamma = p.gamma();
    let ridge = p.ridge_length();
    let a = Point2::new(0.0, 0.0);
    let theta_b_l = 1.5 * PI - gamma / 2.0;
    let theta_b_r = 1.5 * PI + gamma / 2.0;
    let b_l = Point2::polar(a, ridge, theta_b_l);
    let b_r = Point2::polar(a, ridge, theta_b_r);

    let (delta_l, delta_r) = (p.delta(Side::Left), p.delta(Side::Right));
    let l_l = Ray::at_angle(b_l, theta_b_l - delta_l);
    let l_r = Ray::at_angle(b_r, theta_b_r + delta_r);

    // C: perpendicular to l_sigma through B_sigma, towards the sector.
    let perp_l = Ray::at_angle(b_l, theta_b_l - delta_l + FRAC_PI_2);
    let perp_r = Ray::at_angle(b_r, theta_b_r + delta_r - FRAC_PI_2);
    let c = line_line_intersection(&perp_l, &perp_r).ok_or_else(|| {
        Error::InternalInconsistency("perpendiculars to the pleat creases are parallel".into())
    })?;

    let measured_l = signed_angle(a, b_l, c, Orientation::Ccw)?;
    let measured_r = signed_angle(a, b_r, c, Orientation::Cw)?;
    for (measured, side) in [(measured_l, Side::Left), (measured_r, Side::Right)] {
        if (measured - p.gamma_side(side)).abs() > tol::GEOM {
            return Err(Error::InternalInconsistency(format!(
                "measured angle B_{side} A C = {measured} differs from gamma_{side} = {}",
                p.gamma_side(side)
            )));
        }
    }
    let measured_r_ratio = distance(a, c) / ridge;
    if (measured_r_ratio - p.radius_ratio()).abs() > tol::GEOM * p.radius_ratio().max(1.0) {
        return Err(Error::InternalInconsistency(format!(
            "|AC|/|AB| = {measured_r_ratio} differs from closed-form r = {}",
            p.radius_ratio()
        )));
    }

    // m_sigma: perpendicular bisector of B_sigma C, directed like l_sigma.
    let m_l = Ray::new(b_l.midpoint(c), l_l.dir())?;
    let m_r = Ray::new(b_r.midpoint(c), l_r.dir())?;
    let excenter = line_line_intersection(&m_l, &m_r).ok_or_else(|| {
        Error::InternalInconsistency("perpendicular bisectors m_L and m_R are parallel".into())
    })?;

    let (beta_l, beta_r) = (p.beta(Side::Left), p.beta(Side::Right));
    // k_sigma leaves B_sigma at angle beta_sigma from the ridge, on the
    // far side from the sector (towards the pleat of the same side).
    let k_l = Ray::at_angle(b_l, theta_b_l - PI - beta_l);
    let k_r = Ray::at_angle(b_r, theta_b_r - PI + beta_r);
    let j_l = Ray::at_angle(a, theta_b_l - beta_l);
    let j_r = Ray::at_angle(a, theta_b_r + beta_r);

    Ok(Frame {
        params: p,
        a,
        b_l,
        b_r,
        c,
        p: excenter,
        j_l,
        j_r,
        k_l,
        k_r,
        l_l,
        l_r,
        m_l,
        m_r,
        circle: Circle { center: a, radius: ridge },
        theta_b_l,
        theta_b_r,
    })
}

/// Bisector of `angle B_sigma A D` for a dividing point at arc angle
/// `phi_sigma` from `B_sigma`, as a ray from `A`.
pub fn dividing_bisector(frame: &Frame, side: Side, phi_sigma: f64) -> Ray {
    let theta = match side {
        Side::Left => frame.theta_b(side) + phi_sigma / 2.0,
        Side::Right => frame.theta_b(side) - phi_sigma / 2.0,
    };
    Ray::at_angle(frame.a(), theta)
}

/// The point `E_sigma`: intersection of `m_sigma` (as a line) with the
/// bisector of `angle B_sigma A D`, for a dividing point at arc angle
/// `phi_sigma` from `B_sigma`.
pub fn e_point(frame: &Frame, side: Side, phi_sigma: f64) -> Result<Point2> {
    let bisector = dividing_bisector(frame, side, phi_sigma);
    line_line_intersection(&bisector, &frame.m(side)).ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "bisector of angle B_{side} A D is parallel to m_{side}"
        ))
    })
}

/// Direction of `B_sigma -> A`, handy for angle measurements at `B_sigma`.
pub fn ridge_inward_dir(frame: &Frame, side: Side) -> Vec2 {
    Vec2::from_angle(frame.theta_b(side) - PI)
}

/// Mirror a point across the bisector axis (the y axis).
pub fn mirror_x(p: Point2) -> Point2 {
    Point2::new(-p.x, p.y)
}
