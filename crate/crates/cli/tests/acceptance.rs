//! Acceptance gate: runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use univalence_core::certify::{
    boundary_min, certify_family, collision_factorization, conjugate_pair_witness, region_disjointness,
    FamilyParams, RegionSpec, Relation, Status, TIE_TOL,
};
use univalence_core::decompose::{decompose_exact, Decomposition};
use univalence_core::oracle::{
    boundary_curve, chord_tolerance, collision_scan, is_simple, winding_count, winding_scan, OracleConfig,
    OracleVerdict,
};
use univalence_core::polycore::{roots, Poly, DEFAULT_ROOT_TOL};
use univalence_core::report::{analyze, AnalysisInput, AnalyzeOptions};
use univalence_core::sweep::{run_sweep, SweepGrid, SweepOptions};

const F4_TEXT: &str = "0, 1, 7/6, 2/3, 1/6";

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn f4() -> Poly<Complex64> {
    Poly::from_real(&[0.0, 1.0, 7.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0])
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Largest distance from each expected value to its nearest computed one,
/// after checking the counts match.
fn match_sets(found: &[Complex64], expected: &[Complex64]) -> Result<f64, String> {
    ensure!(found.len() == expected.len(), "expected {} values, found {}", expected.len(), found.len());
    Ok(expected
        .iter()
        .map(|e| found.iter().map(|f| (f - e).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

fn criterion_1() -> Check {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_univalence-lab"))
        .args(["decompose", F4_TEXT])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure!(out.status.success(), "exit status {:?}", out.status.code());
    let r: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let d = &r["decomposition"];
    ensure!(d["kind"] == "composite", "not composite: {d}");
    ensure!(d["exact"] == true, "not exact");
    ensure!(d["a_exact"] == "1", "a = {}", d["a_exact"]);
    ensure!(
        d["q_exact"] == serde_json::json!(["-1/3", "1/6", "1/6"]),
        "q = {}",
        d["q_exact"]
    );
    // the same through the library, compared as rationals
    let p = Poly::new(vec![rat(0, 1), rat(1, 1), rat(7, 6), rat(2, 3), rat(1, 6)]);
    let Decomposition::Composite(lib) = decompose_exact(&p).map_err(|e| e.to_string())? else {
        return Err("library: not decomposable".into());
    };
    let exact = lib.exact.ok_or("library: no exact part")?;
    ensure!(exact.a == rat(1, 1), "library a = {}", exact.a);
    ensure!(exact.q.coeffs() == [rat(-1, 3), rat(1, 6), rat(1, 6)], "library q mismatch");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("a = 1, q = (-1/3, 1/6, 1/6) exact, end-to-end {elapsed:.2?}"))
}

fn criterion_2() -> Check {
    let p = f4();
    let s = SQRT_2;
    let found = roots(&p, DEFAULT_ROOT_TOL).map_err(|e| e.to_string())?.expanded();
    let err_p = match_sets(&found, &[c(0.0, 0.0), c(-2.0, 0.0), c(-1.0, s), c(-1.0, -s)])?;
    let found = roots(&p.derivative(), DEFAULT_ROOT_TOL).map_err(|e| e.to_string())?.expanded();
    let h = FRAC_1_SQRT_2;
    let err_dp = match_sets(&found, &[c(-1.0, 0.0), c(-1.0, h), c(-1.0, -h)])?;
    ensure!(err_p <= 1e-10 && err_dp <= 1e-10, "errors {err_p:e}, {err_dp:e}");
    Ok(format!("max error f4 {err_p:.1e}, f4' {err_dp:.1e}"))
}

fn criterion_3() -> Check {
    let r = region_disjointness(RegionSpec { a: 1.0, t: -0.5 }, TIE_TOL);
    ensure!(r.relation == Relation::Tangent, "relation {:?}", r.relation);
    let half_root3 = 3f64.sqrt() / 2.0;
    let err = match_sets(&r.contact_points, &[c(-0.5, half_root3), c(-0.5, -half_root3)])?;
    ensure!(err <= 1e-12, "contact error {err:e}");
    for z in &r.contact_points {
        let on_circle = (z.norm() - 1.0).abs();
        let on_hyperbola = ((z.re + 1.0).powi(2) - z.im * z.im + 0.5).abs();
        ensure!(on_circle <= 1e-12 && on_hyperbola <= 1e-12, "{z}: {on_circle:e}, {on_hyperbola:e}");
    }
    Ok(format!("Tangent at -1/2 ± (√3/2)i, error {err:.1e}"))
}

fn criterion_4() -> Check {
    let started = Instant::now();
    let p = f4();
    let params = FamilyParams::new(1.0, 1.0 / 6.0, 1.0, -1.0 / 3.0).map_err(|e| e.to_string())?;
    let cert = certify_family(&params).map_err(|e| e.to_string())?;
    ensure!(cert.status == Status::CertifiedUnivalent, "certificate {:?}", cert.status);

    let cfg = OracleConfig::default();
    ensure!(cfg.radial_steps * cfg.angular_steps >= 20_000, "too few samples");
    ensure!(cfg.max_radius() >= 0.999, "radii {:?}", cfg.radii);
    let scan = collision_scan(&p, &cfg).map_err(|e| e.to_string())?;
    ensure!(
        scan.verdict == OracleVerdict::NoCollisionFound && scan.witnesses.is_empty(),
        "collision scan {:?} with {} witnesses",
        scan.verdict,
        scan.witnesses.len()
    );
    let simple = is_simple(&boundary_curve(&p, 0.99, 8192), chord_tolerance(&p, 0.99, 8192))
        .map_err(|e| e.to_string())?;
    ensure!(simple.simple, "boundary at 0.99 has {} crossings", simple.crossing_count);
    let wind = winding_scan(&p, cfg.max_radius(), &cfg).map_err(|e| e.to_string())?;
    ensure!(wind.max_winding == Some(1), "max winding {:?}", wind.max_winding);
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "certified; {} samples, no witness; simple at 0.99; max winding 1; {elapsed:.2?}",
        scan.samples
    ))
}

fn criterion_5() -> Check {
    let p = f4();
    let z = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let (fz, fw) = (p.eval(&z), p.eval(&z.conj()));
    let to_half = (fz - c(-0.5, 0.0)).norm();
    let pair = (fz - fw).norm();
    ensure!(to_half <= 1e-12 && pair <= 1e-12, "|f(z) + 1/2| = {to_half:e}, |f(z) - f(w)| = {pair:e}");
    // the contact sits on |z| = 1: the closed circle is not simple while
    // slightly smaller circles are
    let simple_at = |r: f64| {
        is_simple(&boundary_curve(&p, r, 8192), chord_tolerance(&p, r, 8192)).map(|s| s.simple)
    };
    ensure!(!simple_at(1.0).map_err(|e| e.to_string())?, "r = 1 reported simple");
    ensure!(simple_at(0.999).map_err(|e| e.to_string())?, "r = 0.999 reported not simple");
    Ok(format!("|f4(z) + 1/2| = {to_half:.1e}, |f4(z) - f4(z̄)| = {pair:.1e}; contact only at r = 1"))
}

fn criterion_6() -> Check {
    let mut lines = Vec::new();
    for (a, cc) in [(1.1, 0.3), (1.5, -1.0)] {
        let params = FamilyParams::monic(a, cc).map_err(|e| e.to_string())?;
        let w = conjugate_pair_witness(&params).map_err(|e| e.to_string())?;
        // brute force: evaluate the quartic directly at the pair
        let p = params.quartic();
        let direct = (p.eval(&w.z) - p.eval(&w.w)).norm();
        ensure!(w.z.norm() <= 0.9, "({a}, {cc}): |z| = {}", w.z.norm());
        ensure!(w.residual <= 1e-12 && direct <= 1e-12, "({a}, {cc}): residual {:e}, direct {direct:e}", w.residual);

        let cfg = OracleConfig::default();
        let scan = collision_scan(&p, &cfg).map_err(|e| e.to_string())?;
        let wind = winding_scan(&p, cfg.max_radius(), &cfg).map_err(|e| e.to_string())?;
        ensure!(
            scan.verdict == OracleVerdict::CollisionFound && wind.verdict == OracleVerdict::CollisionFound,
            "({a}, {cc}): oracles {:?} / {:?}",
            scan.verdict,
            wind.verdict
        );

        let report = analyze(&AnalysisInput::Family(params), &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
        let cert = report.verdicts.certificate.as_ref().ok_or("no certificate")?;
        // the inequality evaluated literally: |a| > sqrt 2, or 1 < |a| < sqrt 2 and C > (2 - a^2)/4
        let printed = a.abs() > SQRT_2 || (a.abs() > 1.0 && a.abs() < SQRT_2 && cc > (2.0 - a * a) / 4.0);
        ensure!(cert.status == Status::CertifiedNotUnivalent, "({a}, {cc}): {:?}", cert.status);
        ensure!(cert.remark_verdict == printed && printed, "({a}, {cc}): remark verdict {}", cert.remark_verdict);
        ensure!(cert.disagreement && report.has_disagreement(), "({a}, {cc}): disagreement not flagged");
        lines.push(format!("({a}, {cc}) |z| = {:.3}", w.z.norm()));
    }
    Ok(format!("{}; both oracles collide; disagreement flagged", lines.join(", ")))
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    // factorization identity
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let params = FamilyParams::new(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.1..3.0),
            rng.gen_range(-4.0..4.0),
            rng.gen_range(-3.0..3.0),
        )
        .map_err(|e| e.to_string())?;
        let z = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
        let w = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
        let p = params.quartic();
        let lhs = p.eval(&z) - p.eval(&w);
        let [d, s, h] = collision_factorization(&params, z, w);
        let rhs = d * s * h * params.alpha;
        worst = worst.max((lhs - rhs).norm() / (p.abs_bound(1.0) + lhs.norm()));
    }
    ensure!(worst <= 1e-9, "factorization relative error {worst:e}");

    // exact decompose of composed families
    for k in 0..1000 {
        let mut r = |lo: i64, hi: i64| rat(rng.gen_range(lo..=hi), rng.gen_range(1..=9));
        let (a, alpha, beta, gamma) = (r(-20, 20), r(1, 20), r(-20, 20), r(-20, 20));
        let alpha = if k % 2 == 0 { alpha } else { -alpha };
        let outer = Poly::new(vec![gamma.clone(), beta.clone(), alpha.clone()]);
        let inner = Poly::new(vec![&a * &a, &a + &a, rat(1, 1)]);
        let p = outer.compose(&inner).map_err(|e| e.to_string())?;
        let Decomposition::Composite(d) = decompose_exact(&p).map_err(|e| e.to_string())? else {
            return Err(format!("case {k}: not decomposable"));
        };
        let exact = d.exact.ok_or("no exact part")?;
        ensure!(exact.a == a && exact.q == outer, "case {k}: roundtrip mismatch");
    }

    // closed-form minimum of Re((z + a)^2) against sampled minimization
    let mut worst_region = 0.0f64;
    for _ in 0..100 {
        let a: f64 = rng.gen_range(-3.0..3.0);
        let g = |th: f64| (2.0 * th).cos() + 2.0 * a * th.cos() + a * a;
        let dg = |th: f64| -2.0 * (2.0 * th).sin() - 2.0 * a * th.sin();
        let ddg = |th: f64| -4.0 * (2.0 * th).cos() - 2.0 * a * th.cos();
        let mut th = (0..10_000)
            .map(|k| TAU * k as f64 / 1e4)
            .min_by(|x, y| g(*x).total_cmp(&g(*y)))
            .unwrap();
        let sampled = g(th);
        for _ in 0..50 {
            if ddg(th) <= 0.0 {
                break;
            }
            th -= dg(th) / ddg(th);
        }
        worst_region = worst_region.max((boundary_min(a) - g(th).min(sampled)).abs());
    }
    ensure!(worst_region <= 1e-9, "region error {worst_region:e}");
    Ok(format!(
        "factorization {worst:.1e} over 1e5; 1000 exact roundtrips; region {worst_region:.1e} over 100 a"
    ))
}

fn criterion_8() -> Check {
    let grid = SweepGrid {
        a: (1.0, 2.0),
        c: (-2.0, 3.0),
        step: 0.05,
    };
    let opts = SweepOptions {
        with_oracle: true,
        ..SweepOptions::default()
    };
    let started = Instant::now();
    let result = run_sweep(&grid, &opts).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure!(result.cells.len() == 21 * 101, "{} cells", result.cells.len());
    let conflicts: Vec<String> = result
        .cells
        .iter()
        .filter(|c| c.conflict)
        .map(|c| format!("({}, {})", c.a, c.c))
        .collect();
    let mut first = Vec::new();
    result.write_csv(&mut first).map_err(|e| e.to_string())?;
    let mut second = Vec::new();
    run_sweep(&grid, &opts)
        .map_err(|e| e.to_string())?
        .write_csv(&mut second)
        .map_err(|e| e.to_string())?;
    let inconclusive = result
        .cells
        .iter()
        .filter(|c| c.oracle_verdict.is_some_and(|v| v.supports_univalence().is_none()))
        .count();
    ensure!(conflicts.is_empty(), "{} conflicts: {}", conflicts.len(), conflicts.join(" "));
    ensure!(first == second, "CSV differs between runs");
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!(
        "{} cells, 0 conflicts, {inconclusive} inconclusive oracle cells, CSV stable, {elapsed:.1?}",
        result.cells.len()
    ))
}

fn criterion_9() -> Check {
    for k in 1..=6usize {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        let n = winding_count(&Poly::from_real(&coeffs), c(0.0, 0.0), 1.0, 256).map_err(|e| e.to_string())?;
        ensure!(n == k as i64, "z^{k}: {n}");
    }
    let n = winding_count(&Poly::from_real(&[0.0, 0.0, 1.0]), c(0.1, 0.0), 1.0, 256).map_err(|e| e.to_string())?;
    ensure!(n == 2, "z^2 at 0.1: {n}");
    Ok("z^k -> k for k = 1..6; z^2 at 0.1 -> 2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exact decomposition of f4", criterion_1),
        ("roots of f4 and f4'", criterion_2),
        ("tangency at a = 1, t = -1/2", criterion_3),
        ("f4 certified and oracle-clean", criterion_4),
        ("f4 boundary self-contact", criterion_5),
        ("constructed non-univalent instances", criterion_6),
        ("property suites", criterion_7),
        ("sweep soundness", criterion_8),
        ("winding sanity", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let t = started.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{t:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{t:.2?}]", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
