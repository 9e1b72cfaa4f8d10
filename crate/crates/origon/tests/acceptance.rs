//! Acceptance gate: each test prints one PASS/FAIL line for one
//! criterion. The heavy randomized sweep is run once and shared.

use origon::canonical::build_pair;
use origon::critical::{arc_angles, critical_geometric, critical_numeric, TrichotomyCase};
use origon::error::Side;
use origon::euclid::distance;
use origon::export::{pair_to_fold, to_fold, to_svg, RenderOptions};
use origon::frame::{build_frame, Frame};
use origon::negative::{canonical_numeric, negative_gadget, negative_pattern};
use origon::params::{validate, RawParams};
use origon::pattern::{Assignment, CreasePattern};
use origon::positive::{positive_gadget, positive_pattern, DividingChoice};
use origon::verify::{run_sweep, CheckStat, SweepConfig, SweepReport};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

const SWEEP_SAMPLES: u64 = 10_000;

fn sweep() -> &'static (SweepReport, Duration) {
    static SWEEP: OnceLock<(SweepReport, Duration)> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let started = Instant::now();
        let report = run_sweep(&SweepConfig { samples: SWEEP_SAMPLES, ..Default::default() })
            .expect("sweep must run");
        (report, started.elapsed())
    })
}

fn stat<'a>(report: &'a SweepReport, name: &str) -> &'a CheckStat {
    report.checks.iter().find(|c| c.name == name).unwrap()
}

fn verdict(number: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "ACCEPTANCE {number} ({name}): {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number} ({name}) failed: {detail}");
}

fn frame_deg(a: f64, bl: f64, br: f64, dl: f64, dr: f64) -> Frame {
    build_frame(&validate(RawParams::from_degrees(a, bl, br, dl, dr)).unwrap()).unwrap()
}

#[test]
fn criterion_01_critical_three_way_equivalence() {
    let (report, elapsed) = sweep();
    let c = stat(report, "critical_three_way");
    let ok = c.passed == SWEEP_SAMPLES && *elapsed <= Duration::from_secs(30);
    verdict(
        1,
        "critical angle three-way agreement",
        ok,
        &format!("{}/{} within 1e-9, worst {:.3e}, sweep took {elapsed:?}", c.passed, c.attempted, c.worst_residual),
    );
}

#[test]
fn criterion_02_existence_inequality() {
    let (report, _) = sweep();
    let c = stat(report, "critical_sum_exceeds_half_gamma");
    verdict(
        2,
        "zeta_L + zeta_R > gamma/2",
        c.passed == SWEEP_SAMPLES,
        &format!("{}/{} strict", c.passed, c.attempted),
    );
}

#[test]
fn criterion_03_canonical_point_coincidence() {
    let (report, _) = sweep();
    let c = stat(report, "canonical_coincidence");
    verdict(
        3,
        "geometric and closed-form canonical points agree",
        c.passed == SWEEP_SAMPLES,
        &format!("{}/{} within 1e-9, worst {:.3e}", c.passed, c.attempted, c.worst_residual),
    );
}

#[test]
fn criterion_04_canonical_bracket() {
    let (report, _) = sweep();
    let c = stat(report, "canonical_bracket");
    verdict(
        4,
        "phi_L(D_R) < phi_L(D_c) < phi_L(D_L) strictly",
        c.passed == SWEEP_SAMPLES,
        &format!("{}/{} strict", c.passed, c.attempted),
    );
}

#[test]
fn criterion_05_desk_values() {
    let f = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
    let p = f.params();
    let zeta_err = Side::BOTH
        .into_iter()
        .map(|s| (critical_numeric(p, s) - 0.5f64.atan()).abs())
        .fold(0.0f64, f64::max);
    let phi_err = (canonical_numeric(p).unwrap().phi_l() - FRAC_PI_4).abs();
    let r_err = (p.radius_ratio() - 2.0f64.sqrt()).abs();
    let ok = zeta_err <= 1e-12 && phi_err <= 1e-12 && r_err <= 1e-12;
    verdict(
        5,
        "symmetric right-angle desk values",
        ok,
        &format!("|zeta - atan(1/2)| = {zeta_err:.3e}, |phi_c - pi/4| = {phi_err:.3e}, |r - sqrt2| = {r_err:.3e}"),
    );
}

#[test]
fn criterion_06_right_angle_special_case() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_psi = 0.0f64;
    let mut worst_g = 0.0f64;
    let mut done = 0;
    while done < 1_000 {
        // beta_L = beta_R = pi/2 forces gamma = pi - alpha.
        let alpha = rng.gen_range(0.1..PI - 0.1);
        let gamma = PI - alpha;
        let head = PI - gamma - 1e-3;
        if head <= 0.0 {
            continue;
        }
        let dl = rng.gen_range(0.0..(head / 2.0).min(FRAC_PI_2 - 1e-3));
        let dr = rng.gen_range(0.0..(head - dl).min(FRAC_PI_2 - 1e-3));
        let raw = RawParams::new(alpha, FRAC_PI_2, FRAC_PI_2, dl, dr);
        let Ok(p) = validate(raw) else { continue };
        let frame = build_frame(&p).unwrap();
        let neg = negative_gadget(&frame).unwrap();
        let pos = positive_gadget(&frame, DividingChoice::Canonical).unwrap();
        let angles = arc_angles(&frame, neg.d_c).unwrap();
        for side in Side::BOTH {
            worst_psi = worst_psi.max(angles.psi(side).abs());
            worst_g = worst_g.max(distance(pos.side(side).g, neg.side(side).g_prime));
        }
        done += 1;
    }
    let ok = worst_psi <= 1e-9 && worst_g <= 1e-9;
    verdict(
        6,
        "right-angle sides: psi(D_c) = 0 and G = G'",
        ok,
        &format!("1000 samples, worst |psi| = {worst_psi:.3e}, worst |G - G'| = {worst_g:.3e}"),
    );
}

#[test]
fn criterion_07_identity_suite() {
    let (report, _) = sweep();
    let names = [
        "half_angle_identity",
        "rho_preserved_at_critical_point",
        "pleat_chord_arc_is_twice_delta",
        "fold_axis_perpendicular",
    ];
    let mut detail = String::new();
    let mut ok = true;
    for name in names {
        let c = stat(report, name);
        ok &= c.passed == SWEEP_SAMPLES;
        detail.push_str(&format!("{name} {}/{} worst {:.3e}; ", c.passed, c.attempted, c.worst_residual));
    }
    verdict(7, "angle identity suite", ok, &detail);
}

#[test]
fn criterion_08_trichotomy_targeted_cases() {
    let cases = [
        // (params, side, expected case)
        ((90.0, 90.0, 90.0, 0.0, 0.0), Side::Left, TrichotomyCase::Interior),
        ((70.0, 100.0, 90.0, 10.0, 30.0), Side::Left, TrichotomyCase::Boundary),
        ((90.0, 120.0, 70.0, 0.0, 60.0), Side::Left, TrichotomyCase::Saturated),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for ((a, bl, br, dl, dr), side, expected) in cases {
        let f = frame_deg(a, bl, br, dl, dr);
        let geo = critical_geometric(&f).unwrap();
        let data = geo.side(side);
        let mut case_ok = data.case() == expected;
        if expected != TrichotomyCase::Interior {
            case_ok &= (data.zeta() - f.params().gamma() / 2.0).abs() <= 1e-12;
            case_ok &= distance(data.d(), f.b(side.other())) <= 1e-12;
        }
        ok &= case_ok;
        detail.push_str(&format!("({a},{bl},{br},{dl},{dr}) -> {}; ", data.case()));
    }
    // The saturated example pins zeta_L to gamma/2 = 40 degrees.
    let f = frame_deg(90.0, 120.0, 70.0, 0.0, 60.0);
    ok &= (critical_numeric(f.params(), Side::Left) - 40f64.to_radians()).abs() <= 1e-12;
    verdict(8, "trichotomy of the critical construction", ok, &detail);
}

#[test]
fn criterion_09_constructibility_equivalence() {
    let (report, _) = sweep();
    let c = stat(report, "constructible_three_way");
    verdict(
        9,
        "three constructibility conditions agree",
        c.passed == SWEEP_SAMPLES,
        &format!("{}/{} including +/-1e-6 nudges around criticality", c.passed, c.attempted),
    );
}

fn roles(cp: &CreasePattern, assignment: Assignment) -> Vec<String> {
    let mut out: Vec<String> = cp
        .edges()
        .iter()
        .filter(|e| e.assignment == assignment)
        .map(|e| e.role.clone())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn sorted(items: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = items.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

#[test]
fn criterion_10_export_integrity() {
    let mut ok = true;
    let mut detail = String::new();

    // Round-trip and determinism.
    let f = frame_deg(100.0, 80.0, 70.0, 10.0, 0.0);
    let pair = build_pair(&f).unwrap();
    for cp in [&pair.positive, &pair.negative, &pair.hybrid] {
        let doc = to_fold(cp).unwrap();
        ok &= doc == to_fold(cp).unwrap();
        let opts = RenderOptions::default();
        ok &= to_svg(cp, &opts).unwrap() == to_svg(cp, &opts).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
        let coords = parsed["vertices_coords"].as_array().unwrap();
        let mut ids: Vec<&str> = cp.vertices().iter().map(|v| v.id.as_str()).collect();
        ids.sort();
        for (i, id) in ids.iter().enumerate() {
            let v = cp.vertex(id).unwrap();
            let err = (coords[i][0].as_f64().unwrap() - v.at.x)
                .abs()
                .max((coords[i][1].as_f64().unwrap() - v.at.y).abs());
            ok &= err <= 1e-9;
        }
    }
    ok &= pair_to_fold(&pair).unwrap() == pair_to_fold(&pair).unwrap();
    detail.push_str("round-trip+determinism; ");

    // Mountain/valley label sets, both-delta-zero positive column.
    let fs = frame_deg(90.0, 90.0, 90.0, 0.0, 0.0);
    let cp = positive_pattern(&fs, DividingChoice::PhiL(45f64.to_radians())).unwrap();
    ok &= roles(&cp, Assignment::Mountain)
        == sorted(&["j_L", "j_R", "l_L", "l_R", "A B_L", "A B_R", "A D", "B_L G_L", "B_R G_R", "D E_L", "D E_R"]);
    ok &= roles(&cp, Assignment::Valley)
        == sorted(&["k_L", "k_R", "m_L", "m_R", "A E_L", "A E_R", "E_L E_R", "D G_L", "D G_R"]);
    detail.push_str("positive delta=0 column; ");

    // Mixed columns: delta_L > 0, delta_R = 0.
    let cp = positive_pattern(&f, DividingChoice::Canonical).unwrap();
    ok &= roles(&cp, Assignment::Mountain)
        == sorted(&["j_L", "j_R", "l_L", "l_R", "A B_L", "A B_R", "A D", "B_L G_L", "B_R G_R", "B_L E_L", "D H_L", "D E_R"]);
    ok &= roles(&cp, Assignment::Valley)
        == sorted(&["k_L", "k_R", "m_L", "m_R", "A E_L", "A E_R", "E_L E_R", "D G_L", "D G_R", "B_L H_L"]);
    detail.push_str("positive mixed columns; ");

    // Negative gadget assignment table (back-side view).
    let cp = negative_pattern(&f).unwrap();
    ok &= roles(&cp, Assignment::Mountain)
        == sorted(&["j_L", "j_R", "m_L", "m_R", "A E_L", "A E_R", "B_L G'_L", "B_R G'_R", "B_L P_L", "B_R P_R", "E_L E_R"]);
    ok &= roles(&cp, Assignment::Valley)
        == sorted(&["k_L", "k_R", "l_L", "l_R", "A B_L", "A B_R", "B_L E_L", "B_R E_R", "G'_L G'_R", "P_L P_R"]);
    detail.push_str("negative table; ");

    // Hybrid sectioning: B_sigma E_sigma is common where delta > 0 and
    // negative-only where delta = 0.
    let meta = |key: &str| {
        pair.hybrid
            .metadata()
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
            .unwrap()
    };
    ok &= meta("common").contains("B_L E_L") && !meta("common").contains("B_R E_R");
    ok &= meta("negative_only").contains("B_R E_R");
    ok &= meta("positive_only").contains("D_c H_L") && meta("positive_only").contains("D_c E_R");
    detail.push_str("hybrid sections");

    verdict(10, "export integrity", ok, &detail);
}

#[test]
fn criterion_11_cli_contract() {
    let bin = env!("CARGO_BIN_EXE_origon");
    let run = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args)
            .output()
            .expect("cli must run")
    };

    let out = run(&["critical", "--alpha", "90", "--beta-l", "90", "--beta-r", "90", "--delta-l", "0", "--delta-r", "0"]);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    let mut ok = out.status.code() == Some(0)
        && text.contains("zeta_L     = 26.5650511771 deg")
        && text.contains("phi_L(D_c) = 45.0000000000 deg");

    let out = run(&["validate", "--alpha", "90", "--beta-l", "120", "--beta-r", "70", "--delta-l", "0", "--delta-r", "70"]);
    ok &= out.status.code() == Some(2)
        && String::from_utf8_lossy(&out.stderr).contains("iii.b");

    let dir = std::env::temp_dir().join("origon-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.fold");
    let out = run(&[
        "pair", "--alpha", "100", "--beta-l", "80", "--beta-r", "70", "--delta-l", "10",
        "--delta-r", "0", "--format", "fold", "--out", path.to_str().unwrap(),
    ]);
    let doc = std::fs::read_to_string(&path).unwrap_or_default();
    ok &= out.status.code() == Some(0)
        && doc.contains("positive origon gadget")
        && doc.contains("negative origon gadget")
        && doc.contains("hybrid origon gadget");

    verdict(11, "command-line contract", ok, "critical desk values, iii.b exit 2, pair file with three frames");
}
