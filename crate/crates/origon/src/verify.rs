//! Randomized sweep harness: every structural claim the construction
//! relies on is re-checked over seeded random parameter samples, with
//! worst-case residuals reported per check.

use crate::canonical;
use crate::critical::{
    arc_angles, constructible, critical_geometric, critical_numeric, critical_original,
    saturation_excess, TrichotomyCase,
};
use crate::error::{Error, Result, Side};
use crate::euclid::{distance, signed_angle, Orientation};
use crate::frame::{build_frame, Frame};
use crate::negative::{canonical_numeric, negative_gadget, rho_l_from_bcd};
use crate::params::{validate, GadgetParams, RawParams};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Margin (radians) kept between samples and the boundary of the valid
/// parameter region, where residuals legitimately grow.
const SAMPLE_MARGIN: f64 = 1e-6;

/// How a sweep is run.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
    /// Check names to run; empty means every check.
    pub checks: Vec<String>,
}

impl Default for SweepConfig {
    fn default() -> SweepConfig {
        SweepConfig { samples: 10_000, seed: 42, tolerance: 1e-9, checks: Vec::new() }
    }
}

/// Outcome of one named check over the whole sweep.
#[derive(Clone, Debug)]
pub struct CheckStat {
    pub name: &'static str,
    pub attempted: u64,
    pub passed: u64,
    /// Largest equality residual, or smallest strict-inequality margin,
    /// seen over the sweep (inequality checks pass while this is > 0).
    pub worst_residual: f64,
    pub worst_params: Option<RawParams>,
}

/// Results of a sweep.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub checks: Vec<CheckStat>,
    pub samples: u64,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed == c.attempted)
    }

    /// One line per check: `name attempted passed worst_residual`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} {} {:.3e}\n",
                c.name, c.attempted, c.passed, c.worst_residual
            ));
        }
        out
    }
}

/// Rejection-samples one valid parameter set, keeping every condition
/// satisfied with margin [`SAMPLE_MARGIN`]. Deterministic given the rng
/// state.
pub fn sample_params<R: Rng>(rng: &mut R) -> Result<GadgetParams> {
    for _ in 0..1_000_000u64 {
        let alpha = rng.gen_range(0.0..PI);
        let beta_l = rng.gen_range(0.0..PI);
        let beta_r = rng.gen_range(0.0..PI);
        let gamma = 2.0 * PI - alpha - beta_l - beta_r;
        if gamma <= SAMPLE_MARGIN || gamma >= PI - SAMPLE_MARGIN {
            continue;
        }
        if beta_l + gamma / 2.0 >= PI - SAMPLE_MARGIN
            || beta_r + gamma / 2.0 >= PI - SAMPLE_MARGIN
            || beta_l + beta_r + gamma / 2.0 <= PI + SAMPLE_MARGIN
        {
            continue;
        }
        let delta_l = rng.gen_range(0.0..beta_l);
        let delta_r = rng.gen_range(0.0..beta_r);
        if delta_l >= beta_l - SAMPLE_MARGIN
            || delta_r >= beta_r - SAMPLE_MARGIN
            || gamma + delta_l + delta_r >= PI - SAMPLE_MARGIN
        {
            continue;
        }
        let raw = RawParams::new(alpha, beta_l, beta_r, delta_l, delta_r);
        if let Ok(p) = validate(raw) {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted(1_000_000))
}

type CheckFn = fn(&Frame, &mut ChaCha8Rng) -> Result<f64>;

/// Equality checks report a residual (pass iff residual <= tolerance);
/// inequality checks report a margin through [`margin_as_residual`]
/// (pass iff the returned value <= tolerance, i.e. the raw margin was
/// positive).
const CHECKS: &[(&str, CheckFn)] = &[
    ("critical_three_way", check_critical_three_way),
    ("critical_sum_exceeds_half_gamma", check_critical_sum),
    ("canonical_coincidence", check_canonical_coincidence),
    ("canonical_bracket", check_canonical_bracket),
    ("rho_preserved_at_critical_point", check_rho_preserved),
    ("pleat_chord_arc_is_twice_delta", check_phi_prime_b_prime),
    ("fold_axis_perpendicular", check_fold_axis_perpendicular),
    ("half_angle_identity", check_half_angle_identity),
    ("trichotomy_consistency", check_trichotomy),
    ("constructible_three_way", check_constructible_three_way),
];

/// Maps a strict-inequality margin to a "residual": negative and zero
/// margins become positive residuals that exceed any tolerance.
fn margin_as_residual(margin: f64) -> f64 {
    if margin > 0.0 {
        0.0
    } else {
        margin.abs().max(1.0)
    }
}

fn check_critical_three_way(frame: &Frame, _rng: &mut ChaCha8Rng) -> Result<f64> {
    let geo = critical_geometric(frame)?;
    let mut worst = 0.0f64;
    for side in Side::BOTH {
        let numeric = critical_numeric(frame.params(), side);
        let original = critical_original(frame, side)?;
        let geometric = geo.zeta(side);
        worst = worst
            .max((numeric - original).abs())
            .max((numeric - geometric).abs())
            .max((original - geometric).abs());
    }
    Ok(worst)
}

fn check_critical_sum(frame: &Frame, _rng: &mut ChaCha8Rng) -> Result<f64> {
    let p = frame.params();
    let margin = critical_numeric(p, Side::Left) + critical_numeric(p, Side::Right)
        - p.gamma() / 2.0;
    Ok(margin_as_residual(margin))
}

fn check_canonical_coincidence(frame: &Frame, _rng: &mut ChaCha8Rng) -> Result<f64> {
    let p = frame.params();
    let gadget = negative_gadget(frame)?;
    let solution = canonical_numeric(p)?;
    let phi_residual = (frame.phi(Side::Left, gadget.d_c)? - solution.phi_l()).abs();
    let rho_residual = (rho_l_from_bcd(p) - solution.rho_l()).abs();
    Ok(phi_residual.max(rho_residual))
}

fn check_canonical_bracket(frame: &Frame, _rng: &mut ChaCha8Rng) -> Result<f64> {
    let (lo, mid, hi) = canonical::bracket(frame.params())?;
    Ok(margin_as_residual((mid - lo).min(hi - mid)))
}

fn check_rho_preserved(frame: &Frame, _rng: &mut ChaCha8Rng) -> Result<f64> {
    let geo = critical_geometric(frame)?;
    let mut worst = 0.0f64;
    for side in Side::BOTH {
        if geo.side(side).case() != TrichotomyCase::Interior {
            // At saturation the critical dividing point degenerates to
            // the opposite ridge end; the claim is about interior points.
            continue;
        }
        let orientation = match side {
            Side::Left => Orientation::Ccw,
            Side::Right => Orientation::Cw,
        };
        let rho_at_d = signed_angle(frame.c(), frame.a(), geo.d(side), orientation)?;
        let rho_at_d_prime =
            signed_angle(frame.c(), frame.a(), geo.side(side).d_prime(), orientation)?;
        worst = worst.max((rho_at_d - rho_at_d_prime).abs());
    }
    Ok(worst)
}

fn check_phi_prime_b_prime(frame: &Frame, _rng: &mut ChaCha8Rng) -> Result<f64> {
    let geo = critical_geometric(frame)?;
    let mut worst = 0.0f64;
    for side in Side::BOTH {
        let b_prime = geo.side(side).b_prime();
        if distance(b_prime, frame.b(side)) <= 1e-7 {
            // Tangent case (delta = 0): the chord degenerates to a point.
            continue;
        }
        let phi_prime = frame.phi_prime(side, b_prime)?;
        worst = worst.max((phi_prime - 2.0 * frame.params().delta(side)).abs());
    }
    Ok(worst)
}

fn check_fold_axis_perpendicular(frame: &Frame, _rng: &mut ChaCha8Rng) -> Result<f64> {
    let gadget = negative_gadget(frame)?;
    let axis = gadget.b_prime.to(frame.c()).normalized()?;
    let fold = gadget.left.g_prime.to(gadget.right.g_prime).normalized()?;
    Ok(axis.dot(fold).abs())
}

fn check_half_angle_identity(frame: &Frame, rng: &mut ChaCha8Rng) -> Result<f64> {
    let p = frame.params();
    let phi = rng.gen_range(SAMPLE_MARGIN..p.gamma() - SAMPLE_MARGIN);
    let d = frame.minor_arc_point(Side::Left, phi);
    let angles = arc_angles(frame, d)?;
    let r = p.radius_ratio();
    let mut worst = 0.0f64;
    for side in Side::BOTH {
        let half_psi = angles.psi(side) / 2.0;
        let lifted = half_psi + angles.rho(side);
        // Cross-multiplied form of
        // tan(psi/2 + rho) = (r+1)/(r-1) tan(psi/2), bounded even where
        // a tangent blows up.
        let residual = (r - 1.0) * lifted.sin() * half_psi.cos()
            - (r + 1.0) * half_psi.sin() * lifted.cos();
        worst = worst.max(residual.abs());
    }
    Ok(worst)
}

fn check_trichotomy(frame: &Frame, _rng: &mut ChaCha8Rng) -> Result<f64> {
    let p = frame.params();
    let geo = critical_geometric(frame)?;
    let mut worst = 0.0f64;
    for side in Side::BOTH {
        let excess = saturation_excess(p, side);
        let data = geo.side(side);
        let consistent = match data.case() {
            TrichotomyCase::Interior => excess < 0.0,
            TrichotomyCase::Boundary => excess.abs() <= 1e-6,
            TrichotomyCase::Saturated => excess > -1e-9,
        };
        if !consistent {
            worst = worst.max(1.0);
        }
        if data.case() != TrichotomyCase::Interior {
            // Saturation pins the critical angle and point exactly.
            worst = worst.max((data.zeta() - p.gamma() / 2.0).abs());
            worst = worst.max(distance(data.d(), frame.b(side.other())));
        }
    }
    Ok(worst)
}

fn check_constructible_three_way(frame: &Frame, rng: &mut ChaCha8Rng) -> Result<f64> {
    let p = frame.params();
    let gamma = p.gamma();
    let mut candidates = vec![rng.gen_range(SAMPLE_MARGIN..gamma - SAMPLE_MARGIN)];
    for side in Side::BOTH {
        let zeta2 = 2.0 * critical_numeric(p, side);
        for nudged in [zeta2 - 1e-6, zeta2 + 1e-6] {
            let phi_l = match side {
                Side::Left => nudged,
                Side::Right => gamma - nudged,
            };
            if phi_l > SAMPLE_MARGIN && phi_l < gamma - SAMPLE_MARGIN {
                candidates.push(phi_l);
            }
        }
    }
    for phi_l in candidates {
        let flags = constructible(frame, phi_l)?;
        for side in Side::BOTH {
            if !flags.side(side).agree() {
                return Ok(1.0);
            }
        }
    }
    Ok(0.0)
}

/// Runs the sweep. Sampling is rejection-based, so every enabled check
/// sees exactly `samples` valid parameter sets.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let enabled: Vec<&(&'static str, CheckFn)> = CHECKS
        .iter()
        .filter(|(name, _)| cfg.checks.is_empty() || cfg.checks.iter().any(|c| c == name))
        .collect();
    if enabled.is_empty() {
        return Err(Error::InvalidRawParams("no matching sweep checks"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut stats: Vec<CheckStat> = enabled
        .iter()
        .map(|(name, _)| CheckStat {
            name,
            attempted: 0,
            passed: 0,
            worst_residual: 0.0,
            worst_params: None,
        })
        .collect();

    for _ in 0..cfg.samples {
        let p = sample_params(&mut rng)?;
        let frame = build_frame(&p)?;
        for (stat, (_, check)) in stats.iter_mut().zip(enabled.iter()) {
            stat.attempted += 1;
            let residual = check(&frame, &mut rng)?;
            if residual <= cfg.tolerance {
                stat.passed += 1;
            }
            if residual > stat.worst_residual || stat.worst_params.is_none() {
                stat.worst_residual = residual;
                stat.worst_params = Some(*p.raw());
            }
        }
    }
    Ok(SweepReport { checks: stats, samples: cfg.samples })
}
