//! Critical angles `zeta_L`, `zeta_R` computed three independent ways —
//! by the original ray construction, by the closed-form expression and
//! by the dividing-point construction on the circle — plus the
//! constructibility tests for a chosen dividing point.

use crate::error::{Error, Result, Side};
use crate::euclid::{
    angle_at, distance, ray_ray_intersection, ray_segment_intersection,
    signed_angle, Circle, Orientation, Point2, Ray, Vec2,
};
use crate::frame::{e_point, Frame};
use crate::params::GadgetParams;
use crate::tol;
use std::f64::consts::{FRAC_PI_2, PI};

/// Arc-angle coordinates of a point `D` of the minor arc: the arc
/// distances `phi_sigma` from the endpoints, the offsets `psi_sigma`
/// from segment `AC` and the angles `rho_sigma` subtended at `C`.
#[derive(Copy, Clone, Debug)]
pub struct ArcAngles {
    phi_l: f64,
    phi_r: f64,
    psi_l: f64,
    psi_r: f64,
    rho_l: f64,
    rho_r: f64,
}

impl ArcAngles {
    pub fn phi(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.phi_l,
            Side::Right => self.phi_r,
        }
    }

    /// `psi_sigma = gamma_sigma - phi_sigma`; the two sides sum to zero.
    pub fn psi(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.psi_l,
            Side::Right => self.psi_r,
        }
    }

    /// Angle at `C` from segment `CA` to segment `CD`, positive towards
    /// `B_sigma`.
    pub fn rho(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.rho_l,
            Side::Right => self.rho_r,
        }
    }
}

/// Measures the arc angles of `d` geometrically and cross-checks the
/// angles at `C` against `tan rho = sin psi / (r - cos psi)`.
pub fn arc_angles(frame: &Frame, d: Point2) -> Result<ArcAngles> {
    let p = frame.params();
    let phi_l = frame.phi(Side::Left, d)?;
    let phi_r = frame.phi(Side::Right, d)?;
    if (phi_l + phi_r - p.gamma()).abs() > tol::GEOM {
        return Err(Error::InternalInconsistency(format!(
            "phi_L + phi_R = {} differs from gamma = {}",
            phi_l + phi_r,
            p.gamma()
        )));
    }
    let psi_l = p.gamma_side(Side::Left) - phi_l;
    let psi_r = -psi_l;
    let r = p.radius_ratio();
    let mut rho = [0.0; 2];
    for (i, (side, psi, orientation)) in [
        (Side::Left, psi_l, Orientation::Ccw),
        (Side::Right, psi_r, Orientation::Cw),
    ]
    .into_iter()
    .enumerate()
    {
        let measured = signed_angle(frame.c(), frame.a(), d, orientation)?;
        let closed = psi.sin().atan2(r - psi.cos());
        if (measured - closed).abs() > tol::GEOM {
            return Err(Error::InternalInconsistency(format!(
                "measured rho_{side} = {measured} differs from closed form {closed}"
            )));
        }
        rho[i] = measured;
    }
    Ok(ArcAngles { phi_l, phi_r, psi_l, psi_r, rho_l: rho[0], rho_r: rho[1] })
}

/// Where the critical dividing point sits relative to the far end of the
/// minor arc.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TrichotomyCase {
    /// Strictly inside the minor arc; `zeta < gamma/2`.
    Interior,
    /// Exactly at the opposite arc endpoint.
    Boundary,
    /// Pinned at the opposite arc endpoint; `zeta = gamma/2`.
    Saturated,
}

impl std::fmt::Display for TrichotomyCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TrichotomyCase::Interior => "interior",
            TrichotomyCase::Boundary => "boundary",
            TrichotomyCase::Saturated => "saturated",
        })
    }
}

/// How far `beta_sigma + gamma/2 + delta_sigma'` exceeds pi. Nonnegative
/// excess pins the critical dividing point to the opposite arc endpoint.
pub fn saturation_excess(p: &GadgetParams, side: Side) -> f64 {
    p.beta(side) + p.gamma() / 2.0 + p.delta(side.other()) - PI
}

/// Closed-form critical angle on `side`, written with cotangents so no
/// bare tangent can blow up inside the admissible parameter region.
pub fn critical_numeric(p: &GadgetParams, side: Side) -> f64 {
    let gamma = p.gamma();
    if saturation_excess(p, side) >= 0.0 {
        return gamma / 2.0;
    }
    let cot = |a: f64| a.cos() / a.sin();
    let k = cot(gamma / 2.0);
    let kp = cot(gamma / 2.0 + p.delta(Side::Left) + p.delta(Side::Right));
    let inv_b = cot(p.beta(side) - p.delta(side));
    let (sd, cd) = p.delta(side).sin_cos();
    let num = cd - sd * kp;
    let den = cd * (k + kp) + (cd + sd * k) * inv_b;
    num.atan2(den)
}

/// Critical angle on `side` by the original construction: a ray from
/// `B_sigma` at interior angle `pi - beta_sigma + delta_sigma` to the
/// ridge meets the chain `A -> P -> (ray from P along l_sigma)`, and the
/// critical angle is subtended at `A` between `B_sigma` and that meeting
/// point.
pub fn critical_original(frame: &Frame, side: Side) -> Result<f64> {
    let p = frame.params();
    let b = frame.b(side);
    let inward = frame.theta_b(side) - PI;
    let opening = PI - p.beta(side) + p.delta(side);
    let theta_n = match side {
        Side::Left => inward - opening,
        Side::Right => inward + opening,
    };
    let n = Ray::at_angle(b, theta_n);
    let a = frame.a();
    let excenter = frame.excenter();
    // Any hit on segment AP lies on the bisector axis, giving gamma/2
    // exactly; otherwise the ray meets the tail from P along l_sigma.
    let q = match ray_segment_intersection(&n, a, excenter) {
        Some(q) => q,
        None => {
            let tail = Ray::new(excenter, frame.l(side).dir())?;
            ray_ray_intersection(&n, &tail).ok_or(Error::NoIntersection(
                "probe ray misses both the bisector segment and the tail ray",
            ))?
        }
    };
    angle_at(a, b, q)
}

/// One side of the dividing-point construction.
#[derive(Copy, Clone, Debug)]
pub struct CriticalSide {
    zeta: f64,
    d: Point2,
    d_prime: Point2,
    b_prime: Point2,
    case: TrichotomyCase,
}

impl CriticalSide {
    /// Critical angle `zeta_sigma`.
    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// Critical dividing point `D_sigma` on the minor arc.
    pub fn d(&self) -> Point2 {
        self.d
    }

    /// Far endpoint of the chord through `B_sigma` perpendicular to
    /// `k_sigma`, at major-arc distance `2 beta_sigma` from `B_sigma`.
    pub fn d_prime(&self) -> Point2 {
        self.d_prime
    }

    /// Second intersection of line `C B_sigma` with the circle, at
    /// major-arc distance `2 delta_sigma` from `B_sigma`.
    pub fn b_prime(&self) -> Point2 {
        self.b_prime
    }

    pub fn case(&self) -> TrichotomyCase {
        self.case
    }
}

/// Both sides of the dividing-point construction.
#[derive(Copy, Clone, Debug)]
pub struct CriticalData {
    left: CriticalSide,
    right: CriticalSide,
}

impl CriticalData {
    pub fn side(&self, side: Side) -> &CriticalSide {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn zeta(&self, side: Side) -> f64 {
        self.side(side).zeta
    }

    pub fn d(&self, side: Side) -> Point2 {
        self.side(side).d
    }
}

/// Second intersection with the circle of the line through `on_circle`
/// in direction `dir`, computed as the reflection of `on_circle` across
/// the foot of the perpendicular from the center. A tangent line returns
/// `on_circle` itself; no discriminant can go negative.
fn second_circle_point(circle: &Circle, on_circle: Point2, dir: Vec2) -> Result<Point2> {
    let line = Ray::new(on_circle, dir)?;
    let foot = line.project(circle.center);
    Ok(line.point_at(2.0 * foot))
}

/// Critical angles by the dividing-point construction, with the
/// auxiliary circle points cross-checked against their closed-form arc
/// distances and the resulting angle against [`critical_numeric`].
pub fn critical_geometric(frame: &Frame) -> Result<CriticalData> {
    Ok(CriticalData {
        left: critical_geometric_side(frame, Side::Left)?,
        right: critical_geometric_side(frame, Side::Right)?,
    })
}

fn critical_geometric_side(frame: &Frame, side: Side) -> Result<CriticalSide> {
    let p = frame.params();
    let circle = frame.circle();
    let b = frame.b(side);
    let c = frame.c();

    // Chord through B_sigma perpendicular to k_sigma.
    let d_prime = second_circle_point(&circle, b, frame.k(side).dir().perp(Orientation::Ccw))?;
    let measured = frame.phi_prime(side, d_prime)?;
    if (measured - 2.0 * p.beta(side)).abs() > tol::GEOM {
        return Err(Error::InternalInconsistency(format!(
            "chord endpoint sits at arc distance {measured}, expected 2 beta_{side} = {}",
            2.0 * p.beta(side)
        )));
    }

    // Line C B_sigma extended to its second circle point (tangent when
    // delta_sigma = 0, in which case it stays at B_sigma).
    let b_prime = second_circle_point(&circle, b, c.to(b))?;
    let measured = frame.phi_prime(side, b_prime)?;
    if (measured - 2.0 * p.delta(side)).abs() > tol::GEOM {
        return Err(Error::InternalInconsistency(format!(
            "pleat-line endpoint sits at arc distance {measured}, expected 2 delta_{side} = {}",
            2.0 * p.delta(side)
        )));
    }

    let excess = saturation_excess(p, side);
    let case = if excess > tol::CRITICAL_GATE {
        TrichotomyCase::Saturated
    } else if excess < -tol::CRITICAL_GATE {
        TrichotomyCase::Interior
    } else {
        TrichotomyCase::Boundary
    };

    let (d, zeta) = if case == TrichotomyCase::Interior {
        // Second circle point of line C D_prime, anchored at the
        // on-circle end so the far-away C cannot poison the precision.
        let d = second_circle_point(&circle, d_prime, c.to(d_prime))?;
        if distance(d, d_prime) <= tol::GEOM || frame.phi(side, d).is_err() {
            return Err(Error::InternalInconsistency(format!(
                "segment from C to the chord endpoint misses the minor arc on side {side}"
            )));
        }
        (d, frame.phi(side, d)? / 2.0)
    } else {
        (frame.b(side.other()), p.gamma() / 2.0)
    };

    let closed = critical_numeric(p, side);
    if (zeta - closed).abs() > tol::GEOM {
        return Err(Error::InternalInconsistency(format!(
            "constructed zeta_{side} = {zeta} differs from closed form {closed}"
        )));
    }

    Ok(CriticalSide { zeta, d, d_prime, b_prime, case })
}

/// Outcome of the three equivalent constructibility tests on one side.
#[derive(Copy, Clone, Debug)]
pub struct SideConstructibility {
    /// The side face fits: the angle the fold line `B_sigma E_sigma`
    /// leaves open at `B_sigma` is at most `beta_sigma - delta_sigma`.
    pub by_angle: bool,
    /// `phi_sigma <= 2 zeta_sigma`.
    pub by_phi: bool,
    /// `beta_sigma + gamma_sigma/2 + psi_sigma/2 + rho_sigma >= pi/2`.
    pub by_psi: bool,
}

impl SideConstructibility {
    pub fn all(&self) -> bool {
        self.by_angle && self.by_phi && self.by_psi
    }

    pub fn agree(&self) -> bool {
        self.by_angle == self.by_phi && self.by_phi == self.by_psi
    }
}

/// Constructibility of a positive gadget for a dividing point.
#[derive(Copy, Clone, Debug)]
pub struct Constructibility {
    left: SideConstructibility,
    right: SideConstructibility,
}

impl Constructibility {
    pub fn side(&self, side: Side) -> &SideConstructibility {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn both_ok(&self) -> bool {
        self.left.all() && self.right.all()
    }
}

/// Runs the three constructibility tests on both sides for the dividing
/// point at arc distance `phi_l` from `B_L`.
pub fn constructible(frame: &Frame, phi_l: f64) -> Result<Constructibility> {
    let p = frame.params();
    if !(phi_l > 0.0 && phi_l < p.gamma()) {
        return Err(Error::DegenerateDividing(phi_l));
    }
    let d = frame.minor_arc_point(Side::Left, phi_l);
    let angles = arc_angles(frame, d)?;
    let mut flags = [None, None];
    for (i, side) in Side::BOTH.into_iter().enumerate() {
        let phi = angles.phi(side);
        let e = e_point(frame, side, phi)?;
        let opening = PI - angle_at(frame.b(side), frame.a(), e)?;
        let by_angle = opening <= p.beta(side) - p.delta(side) + tol::GEOM;
        let by_phi = phi <= 2.0 * critical_numeric(p, side) + tol::GEOM;
        let lhs = p.beta(side) + p.gamma_side(side) / 2.0 + angles.psi(side) / 2.0
            + angles.rho(side);
        let by_psi = lhs >= FRAC_PI_2 - tol::GEOM;
        flags[i] = Some(SideConstructibility { by_angle, by_phi, by_psi });
    }
    Ok(Constructibility { left: flags[0].unwrap(), right: flags[1].unwrap() })
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

    /// Independent closed form for zero pleat slack:
    /// `zeta = atan(1 / (2/tan(gamma/2) + 1/tan(beta)))`.
    fn zeta_zero_delta(gamma: f64, beta: f64) -> f64 {
        (1.0 / (2.0 / (gamma / 2.0).tan() + 1.0 / beta.tan())).atan()
    }

    #[test]
    fn case_s_critical_angle_three_ways() {
        let f = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
        let expect = 0.5f64.atan();
        for side in Side::BOTH {
            assert!((critical_numeric(f.params(), side) - expect).abs() < 1e-12);
            assert!((critical_original(&f, side).unwrap() - expect).abs() < 1e-12);
        }
        let data = critical_geometric(&f).unwrap();
        for side in Side::BOTH {
            assert!((data.zeta(side) - expect).abs() < 1e-12);
            assert_eq!(data.side(side).case(), TrichotomyCase::Interior);
            // Zero slack pins the pleat-line endpoint at B_sigma itself.
            assert!(distance(data.side(side).b_prime(), f.b(side)) < 1e-12);
        }
    }

    #[test]
    fn zero_delta_closed_form_matches_all_routes() {
        for (a, bl, br) in [(100.0, 80.0, 95.0), (120.0, 100.0, 70.0), (90.0, 105.0, 80.0)] {
            let f = frame_deg(a, bl, br, 0.0, 0.0);
            let data = critical_geometric(&f).unwrap();
            for side in Side::BOTH {
                let expect = zeta_zero_delta(f.params().gamma(), f.params().beta(side));
                assert!((critical_numeric(f.params(), side) - expect).abs() < 1e-12);
                assert!((critical_original(&f, side).unwrap() - expect).abs() < 1e-12);
                assert!((data.zeta(side) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn saturated_example_pins_the_dividing_point() {
        // beta_L + gamma/2 + delta_R = 120 + 40 + 60 = 220 degrees >= 180.
        let f = frame_deg(90.0, 120.0, 70.0, 0.0, 60.0);
        let gamma = f.params().gamma();
        assert!((gamma - 80f64.to_radians()).abs() < 1e-12);

        let data = critical_geometric(&f).unwrap();
        assert_eq!(data.side(Side::Left).case(), TrichotomyCase::Saturated);
        assert!((data.zeta(Side::Left) - gamma / 2.0).abs() < 1e-15);
        assert!(distance(data.d(Side::Left), f.b(Side::Right)) < 1e-12);
        assert!((critical_numeric(f.params(), Side::Left) - gamma / 2.0).abs() < 1e-15);
        assert!((critical_original(&f, Side::Left).unwrap() - gamma / 2.0).abs() < 1e-9);

        assert_eq!(data.side(Side::Right).case(), TrichotomyCase::Interior);
        assert!(data.zeta(Side::Right) < gamma / 2.0);
    }

    #[test]
    fn boundary_example_classified_between_the_cases() {
        // beta_L + gamma/2 + delta_R = 100 + 50 + 30 = 180 degrees exactly.
        let f = frame_deg(70.0, 100.0, 90.0, 10.0, 30.0);
        let data = critical_geometric(&f).unwrap();
        assert_eq!(data.side(Side::Left).case(), TrichotomyCase::Boundary);
        assert!((data.zeta(Side::Left) - f.params().gamma() / 2.0).abs() < 1e-12);
        assert!(distance(data.d(Side::Left), f.b(Side::Right)) < 1e-12);
    }

    #[test]
    fn three_routes_agree_with_nonzero_slack() {
        for (a, bl, br, dl, dr) in [
            (100.0, 80.0, 70.0, 10.0, 0.0),
            (90.0, 95.0, 85.0, 20.0, 15.0),
            (80.0, 100.0, 95.0, 35.0, 5.0),
        ] {
            let f = frame_deg(a, bl, br, dl, dr);
            let data = critical_geometric(&f).unwrap();
            for side in Side::BOTH {
                let numeric = critical_numeric(f.params(), side);
                let original = critical_original(&f, side).unwrap();
                assert!(
                    (numeric - original).abs() < 1e-9,
                    "ray route disagrees on {side}: {original} vs {numeric}"
                );
                assert!((numeric - data.zeta(side)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn critical_angles_sum_past_half_gamma() {
        for (a, bl, br, dl, dr) in [
            (90.0, 90.0, 90.0, 0.0, 0.0),
            (90.0, 120.0, 70.0, 0.0, 60.0),
            (100.0, 80.0, 70.0, 10.0, 0.0),
        ] {
            let f = frame_deg(a, bl, br, dl, dr);
            let sum = critical_numeric(f.params(), Side::Left)
                + critical_numeric(f.params(), Side::Right);
            assert!(sum > f.params().gamma() / 2.0);
        }
    }

    #[test]
    fn arc_angle_identities() {
        let f = frame_deg(100.0, 80.0, 70.0, 10.0, 0.0);
        let p = f.params();
        let r = p.radius_ratio();
        for frac in [0.1, 0.3, 0.5, 0.8] {
            let d = f.minor_arc_point(Side::Left, frac * p.gamma());
            let angles = arc_angles(&f, d).unwrap();
            assert!((angles.phi(Side::Left) + angles.phi(Side::Right) - p.gamma()).abs() < 1e-12);
            assert!((angles.psi(Side::Left) + angles.psi(Side::Right)).abs() < 1e-15);
            for side in Side::BOTH {
                let (psi, rho) = (angles.psi(side), angles.rho(side));
                assert!(
                    (psi + angles.phi(side) - p.gamma_side(side)).abs() < 1e-12
                );
                // tan(psi/2 + rho) = (r + 1)/(r - 1) * tan(psi/2)
                let lhs = (psi / 2.0 + rho).tan();
                let rhs = (r + 1.0) / (r - 1.0) * (psi / 2.0).tan();
                assert!((lhs - rhs).abs() < 1e-9, "half-angle identity on {side}");
            }
        }
    }

    #[test]
    fn angle_at_c_is_preserved_along_the_chord() {
        // The critical dividing point lies on the segment from C to the
        // chord endpoint, so both subtend the same angle at C.
        let f = frame_deg(100.0, 80.0, 70.0, 10.0, 0.0);
        let p = f.params();
        let data = critical_geometric(&f).unwrap();
        for side in Side::BOTH {
            let angles = arc_angles(&f, data.d(side)).unwrap();
            let psi_chord = 2.0 * p.beta(side) + p.gamma_side(side);
            let expect = psi_chord.sin().atan2(p.radius_ratio() - psi_chord.cos());
            assert!((angles.rho(side) - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn constructibility_flags_follow_the_critical_angle() {
        let f = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
        let two_zeta = 2.0 * 0.5f64.atan();

        let ok = constructible(&f, 45f64.to_radians()).unwrap();
        assert!(ok.both_ok());
        for side in Side::BOTH {
            assert!(ok.side(side).agree());
        }

        let edge = constructible(&f, two_zeta).unwrap();
        assert!(edge.both_ok(), "equality still counts as constructible");

        let bad = constructible(&f, 70f64.to_radians()).unwrap();
        assert!(!bad.side(Side::Left).all());
        assert!(bad.side(Side::Left).agree());
        assert!(bad.side(Side::Right).all());
    }

    #[test]
    fn degenerate_dividing_angle_is_rejected() {
        let f = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
        assert!(matches!(constructible(&f, 0.0), Err(Error::DegenerateDividing(_))));
        assert!(matches!(
            constructible(&f, f.params().gamma()),
            Err(Error::DegenerateDividing(_))
        ));
    }

    proptest! {
        #[test]
        fn routes_agree_on_random_valid_params(
            alpha in 30.0f64..170.0,
            beta_l in 30.0f64..170.0,
            beta_r in 30.0f64..170.0,
            tl in 0.0f64..0.9,
            tr in 0.0f64..0.9,
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
            let f = build_frame(&params.unwrap()).unwrap();
            let data = critical_geometric(&f).unwrap();
            let mut sum = 0.0;
            for side in Side::BOTH {
                let numeric = critical_numeric(f.params(), side);
                prop_assert!(numeric > 0.0 && numeric <= f.params().gamma() / 2.0 + 1e-15);
                prop_assert!((critical_original(&f, side).unwrap() - numeric).abs() < 1e-9);
                prop_assert!((data.zeta(side) - numeric).abs() < 1e-9);
                sum += numeric;
            }
            prop_assert!(sum > f.params().gamma() / 2.0);
        }
    }
}
