//! Canonical pairs: the positive and negative gadgets built on the same
//! frame and the same canonical dividing point, and the hybrid crease
//! pattern from which either can be folded.

use crate::critical::critical_numeric;
use crate::error::{Error, Result, Side};
use crate::euclid::{distance, Point2, Vec2};
use crate::negative::{canonical_numeric, negative_gadget, negative_pattern, NegativeGadget};
use crate::params::GadgetParams;
use crate::pattern::{Assignment, CreasePattern, GadgetKind};
use crate::positive::{positive_gadget, positive_pattern, DividingChoice, PositiveGadget};
use crate::frame::Frame;
use crate::tol;

/// A canonical positive/negative pair sharing one frame, plus the
/// hybrid pattern that folds into either gadget.
#[derive(Clone, Debug)]
pub struct CanonicalPair {
    pub positive: CreasePattern,
    pub negative: CreasePattern,
    pub hybrid: CreasePattern,
    /// `(phi_L(D_R), phi_L(D_c), phi_L(D_L))`, strictly increasing.
    pub bracket: (f64, f64, f64),
}

/// The strictly increasing bracket `phi_L(D_R) < phi_L(D_c) < phi_L(D_L)`
/// placing the canonical dividing point inside the admissible interval.
/// Endpoints are clamped to the open arc when a side is saturated.
pub fn bracket(p: &GadgetParams) -> Result<(f64, f64, f64)> {
    let gamma = p.gamma();
    let lo = (gamma - 2.0 * critical_numeric(p, Side::Right)).max(0.0);
    let hi = (2.0 * critical_numeric(p, Side::Left)).min(gamma);
    let mid = canonical_numeric(p)?.phi_l();
    if !(lo < mid && mid < hi) {
        return Err(Error::BracketViolation(format!(
            "phi_L(D_R) = {lo}, phi_L(D_c) = {mid}, phi_L(D_L) = {hi} is not strictly increasing"
        )));
    }
    Ok((lo, mid, hi))
}

/// Builds the canonical pair from one frame so the three patterns are
/// co-registered point for point.
pub fn build_pair(frame: &Frame) -> Result<CanonicalPair> {
    let b = bracket(frame.params())?;
    Ok(CanonicalPair {
        positive: positive_pattern(frame, DividingChoice::Canonical)?,
        negative: negative_pattern(frame)?,
        hybrid: hybrid_pattern(frame)?,
        bracket: b,
    })
}

/// Accumulates hybrid vertices and creases, merging vertices that
/// coincide within tolerance and creases that share both endpoints, so
/// the degenerate right-angle case (`G_sigma = G'_sigma`) collapses to
/// single creases with merged labels.
struct HybridBuilder {
    vertices: Vec<(String, Point2)>,
    segments: Vec<(usize, usize, String)>,
    rays: Vec<(usize, Vec2, String)>,
}

impl HybridBuilder {
    fn new() -> HybridBuilder {
        HybridBuilder { vertices: Vec::new(), segments: Vec::new(), rays: Vec::new() }
    }

    fn vertex(&mut self, preferred: &str, at: Point2) -> usize {
        if let Some(i) = self.vertices.iter().position(|(_, q)| distance(*q, at) <= tol::GEOM) {
            return i;
        }
        self.vertices.push((preferred.to_string(), at));
        self.vertices.len() - 1
    }

    fn segment(&mut self, a: usize, b: usize, role: &str) {
        let key = (a.min(b), a.max(b));
        if let Some((_, _, existing)) =
            self.segments.iter_mut().find(|(x, y, _)| (*x, *y) == key)
        {
            if !existing.split(" = ").any(|part| part == role) {
                existing.push_str(" = ");
                existing.push_str(role);
            }
            return;
        }
        self.segments.push((key.0, key.1, role.to_string()));
    }

    fn ray(&mut self, from: usize, dir: Vec2, role: &str) {
        self.rays.push((from, dir, role.to_string()));
    }

    fn finish(self, metadata: Vec<(String, String)>) -> Result<CreasePattern> {
        let mut cp = CreasePattern::new(GadgetKind::Hybrid);
        for (id, at) in &self.vertices {
            cp.add_vertex(id, *at)?;
        }
        for (a, b, role) in &self.segments {
            let (from, to) = (self.vertices[*a].0.clone(), self.vertices[*b].0.clone());
            cp.add_segment(role, &from, &to, Assignment::Flat)?;
        }
        for (from, dir, role) in &self.rays {
            let id = self.vertices[*from].0.clone();
            cp.add_ray(role, &id, *dir, Assignment::Flat)?;
        }
        for (k, v) in metadata {
            cp.set_metadata(&k, &v);
        }
        cp.validate()?;
        Ok(cp)
    }
}

/// The hybrid crease pattern of a canonical pair: the union of the
/// positive and negative crease sets over the shared frame. Hybrid
/// creases are emitted flat (the assignment is chosen only when one of
/// the two gadgets is folded); the common / positive-only /
/// negative-only sectioning is recorded in the metadata.
pub fn hybrid_pattern(frame: &Frame) -> Result<CreasePattern> {
    let p = frame.params();
    let pos = positive_gadget(frame, DividingChoice::Canonical)?;
    let neg = negative_gadget(frame)?;
    for side in Side::BOTH {
        if distance(pos.side(side).e, neg.side(side).e) > tol::GEOM {
            return Err(Error::InternalInconsistency(format!(
                "positive and negative E_{side} disagree on the shared frame"
            )));
        }
    }

    let mut hb = HybridBuilder::new();
    let a = hb.vertex("A", frame.a());
    let d_c = hb.vertex("D_c", pos.d);
    hb.segment(a, d_c, "A D_c");
    let mut common: Vec<String> = vec!["E_L E_R".into()];
    let mut positive_only: Vec<String> = vec!["A D_c".into()];
    let mut negative_only: Vec<String> = vec!["P_L P_R".into()];

    let mut e_ids = [0usize; 2];
    let mut p_ids = [0usize; 2];
    let mut gp_ids = [0usize; 2];
    for (i, side) in Side::BOTH.into_iter().enumerate() {
        let s = side.suffix();
        let b = hb.vertex(&format!("B_{s}"), frame.b(side));
        let e = hb.vertex(&format!("E_{s}"), pos.side(side).e);
        let g = hb.vertex(&format!("G_{s}"), pos.side(side).g);
        let gp = hb.vertex(&format!("G'_{s}"), neg.side(side).g_prime);
        let pp = hb.vertex(&format!("P_{s}"), neg.side(side).p);
        e_ids[i] = e;
        p_ids[i] = pp;
        gp_ids[i] = gp;

        hb.ray(a, frame.j(side).dir(), &format!("j_{s}"));
        hb.ray(b, frame.k(side).dir(), &format!("k_{s}"));
        hb.ray(b, frame.l(side).dir(), &format!("l_{s}"));
        // m_sigma carries P_sigma in its interior.
        hb.segment(e, pp, &format!("m_{s}"));
        hb.ray(pp, frame.l(side).dir(), &format!("m_{s}"));
        hb.segment(a, b, &format!("A B_{s}"));
        hb.segment(b, e, &format!("B_{s} E_{s}"));
        for role in [format!("j_{s}"), format!("k_{s}"), format!("l_{s}"), format!("m_{s}"), format!("A B_{s}"), format!("A E_{s}")] {
            common.push(role);
        }
        if p.delta(side) > 0.0 {
            common.push(format!("B_{s} E_{s}"));
        } else {
            negative_only.push(format!("B_{s} E_{s}"));
        }

        // A E_sigma split at every fold point sitting on it.
        let mut interior = vec![g, gp];
        if let Some(h_at) = pos.side(side).h {
            let h = hb.vertex(&format!("H_{s}"), h_at);
            interior.push(h);
            hb.segment(b, h, &format!("B_{s} H_{s}"));
            hb.segment(d_c, h, &format!("D_c H_{s}"));
            positive_only.push(format!("B_{s} H_{s}"));
            positive_only.push(format!("D_c H_{s}"));
        } else {
            hb.segment(d_c, e, &format!("D_c E_{s}"));
            positive_only.push(format!("D_c E_{s}"));
        }
        interior.sort_by(|x, y| {
            distance(frame.a(), hb.vertices[*x].1)
                .total_cmp(&distance(frame.a(), hb.vertices[*y].1))
        });
        interior.dedup();
        let mut prev = a;
        for v in interior {
            hb.segment(prev, v, &format!("A E_{s}"));
            prev = v;
        }
        hb.segment(prev, e, &format!("A E_{s}"));

        hb.segment(b, g, &format!("B_{s} G_{s}"));
        hb.segment(d_c, g, &format!("D_c G_{s}"));
        hb.segment(b, gp, &format!("B_{s} G'_{s}"));
        hb.segment(b, pp, &format!("B_{s} P_{s}"));
        positive_only.push(format!("B_{s} G_{s}"));
        positive_only.push(format!("D_c G_{s}"));
        negative_only.push(format!("B_{s} G'_{s}"));
        negative_only.push(format!("B_{s} P_{s}"));
    }
    negative_only.push("G'_L G'_R".to_string());

    hb.segment(e_ids[0], e_ids[1], "E_L E_R");
    hb.segment(p_ids[0], p_ids[1], "P_L P_R");
    // D_c lies strictly inside G'_L G'_R and is a hybrid vertex.
    hb.segment(gp_ids[0], d_c, "G'_L G'_R");
    hb.segment(d_c, gp_ids[1], "G'_L G'_R");

    hb.finish(vec![
        ("phi_L".into(), format!("{}", neg.phi_l)),
        ("common".into(), common.join(", ")),
        ("positive_only".into(), positive_only.join(", ")),
        ("negative_only".into(), negative_only.join(", ")),
    ])
}

/// Re-exported handles for callers that want the raw point data of both
/// halves of the pair.
pub fn pair_gadgets(frame: &Frame) -> Result<(PositiveGadget, NegativeGadget)> {
    Ok((positive_gadget(frame, DividingChoice::Canonical)?, negative_gadget(frame)?))
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
    fn case_s_bracket_desk_values() {
        let f = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
        let (lo, mid, hi) = bracket(f.params()).unwrap();
        let two_zeta = 2.0 * 0.5f64.atan();
        assert!((lo - (std::f64::consts::FRAC_PI_2 - two_zeta)).abs() < 1e-12);
        assert!((mid - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((hi - two_zeta).abs() < 1e-12);
    }

    #[test]
    fn pair_builds_and_patterns_validate() {
        let f = frame_deg(100.0, 80.0, 70.0, 10.0, 0.0);
        let pair = build_pair(&f).unwrap();
        pair.positive.validate().unwrap();
        pair.negative.validate().unwrap();
        pair.hybrid.validate().unwrap();
        assert!(pair.bracket.0 < pair.bracket.1 && pair.bracket.1 < pair.bracket.2);
        assert_eq!(pair.hybrid.kind(), GadgetKind::Hybrid);
    }

    #[test]
    fn hybrid_keeps_distinct_g_points_apart() {
        let f = frame_deg(100.0, 80.0, 70.0, 10.0, 0.0);
        let cp = hybrid_pattern(&f).unwrap();
        assert!(cp.vertex("G_L").is_some());
        assert!(cp.vertex("G'_L").is_some());
        // delta_L > 0 on the left: H_L present, B_L E_L common.
        assert!(cp.vertex("H_L").is_some());
        assert!(cp.vertex("H_R").is_none());
        let common = cp
            .metadata()
            .iter()
            .find(|(k, _)| k == "common")
            .map(|(_, v)| v.clone())
            .unwrap();
        assert!(common.contains("B_L E_L"));
        assert!(!common.contains("B_R E_R"));
    }

    #[test]
    fn right_angle_sides_merge_g_with_g_prime() {
        let f = frame_deg(140.0, 90.0, 90.0, 20.0, 10.0);
        let cp = hybrid_pattern(&f).unwrap();
        // G'_sigma coincides with G_sigma, so only the first id survives.
        assert!(cp.vertex("G'_L").is_none());
        assert!(cp.vertex("G_L").is_some());
        assert!(cp
            .edges()
            .iter()
            .any(|e| e.role == "B_L G_L = B_L G'_L"));
    }

    #[test]
    fn hybrid_crease_roles_cover_all_three_sections() {
        let f = frame_deg(100.0, 80.0, 70.0, 10.0, 0.0);
        let cp = hybrid_pattern(&f).unwrap();
        let roles: Vec<&str> = cp.edges().iter().map(|e| e.role.as_str()).collect();
        for needed in ["A D_c", "P_L P_R", "G'_L G'_R", "D_c E_R", "B_R P_R", "D_c H_L"] {
            assert!(roles.contains(&needed), "missing hybrid crease {needed}");
        }
        assert!(cp.edges().iter().all(|e| e.assignment == Assignment::Flat));
    }

    proptest! {
        #[test]
        fn bracket_is_strict_on_random_valid_params(
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
            let p = params.unwrap();
            let (lo, mid, hi) = bracket(&p).unwrap();
            prop_assert!(lo < mid && mid < hi);
            let f = build_frame(&p).unwrap();
            let pair = build_pair(&f).unwrap();
            prop_assert!(pair.hybrid.edges().len() >= pair.positive.edges().len());
        }
    }
}
