//! One test per acceptance criterion; each prints a PASS or FAIL line.
//! `cargo test --test acceptance -- --nocapture --test-threads=1` shows them in order.

use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use darboux_core::algebra::{int, rat};
use darboux_core::bessel::compare_ladder_to_bessel;
use darboux_core::grammar::parse_function;
use darboux_core::riccati::{fixed_points, ladder, step, Branch};
use darboux_core::verify::{run, Status, Suite, VerificationReport};

struct Outcome {
    id: u32,
    name: &'static str,
    ok: bool,
    detail: String,
}

fn verify_cli(suite: &str, max_n: u32) -> (Option<i32>, Option<VerificationReport>, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_darboux"))
        .args([
            "verify",
            "--suite",
            suite,
            "--max-n",
            &max_n.to_string(),
            "--format",
            "json",
        ])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let report = serde_json::from_slice::<serde_json::Value>(&out.stdout)
        .ok()
        .map(|v| {
            let cases = v["cases"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|c| darboux_core::verify::Case {
                    id: c["id"].as_str().unwrap_or_default().to_string(),
                    status: match c["status"].as_str() {
                        Some("pass") => Status::Pass,
                        Some("flagged") => Status::Flagged,
                        _ => Status::Fail,
                    },
                    detail: c["detail"].as_str().unwrap_or_default().to_string(),
                })
                .collect();
            VerificationReport::new(v["suite"].as_str().unwrap_or_default(), cases)
        });
    (out.status.code(), report, elapsed)
}

fn all_pass(report: &VerificationReport, prefix: &str) -> (bool, usize) {
    let cases: Vec<_> = report
        .cases
        .iter()
        .filter(|c| c.id.starts_with(prefix))
        .collect();
    (
        !cases.is_empty() && cases.iter().all(|c| c.status == Status::Pass),
        cases.len(),
    )
}

fn criterion_1() -> Outcome {
    let (code, report, elapsed) = verify_cli("riccati", 25);
    let mut ok = code == Some(0) && elapsed < Duration::from_secs(10);
    let mut detail = format!("exit {code:?}, {:.2} s", elapsed.as_secs_f64());
    match report {
        Some(r) => {
            for branch in ["minus", "plus"] {
                let (pass, n) = all_pass(&r, &format!("riccati.residual.{branch}."));
                ok &= pass && n == 25;
                detail.push_str(&format!(", {branch}: {n} zero residuals"));
            }
        }
        None => ok = false,
    }
    let f2 = ladder(2, Branch::Minus).map(|r| r[1].f.clone());
    let printed = parse_function("3/2 + x^2/(1 - x)").expect("literal");
    let f2_ok = f2.as_ref() == Ok(&printed);
    ok &= f2_ok;
    detail.push_str(&format!(", f_2 structural match: {f2_ok}"));
    Outcome {
        id: 1,
        name: "ladder exactness",
        ok,
        detail,
    }
}

fn criterion_2() -> Outcome {
    let lambda = int(1);
    let expected = [
        parse_function("1/2 + x").expect("literal"),
        parse_function("1/2 - x").expect("literal"),
    ];
    let ok = match fixed_points(&lambda) {
        Ok(pts) => {
            pts.len() == 2
                && pts.iter().zip(&expected).all(|((f, b), e)| {
                    f == e && *b == rat(-1, 2) && step(f, b, &lambda) == Ok((f.clone(), rat(1, 2)))
                })
        }
        Err(_) => false,
    };
    Outcome {
        id: 2,
        name: "fixed points",
        ok,
        detail: "step(1/2 ± x, -1/2) = (1/2 ± x, 1/2)".to_string(),
    }
}

fn criterion_3(report: &VerificationReport) -> Outcome {
    let (ok, n) = all_pass(report, "darboux.bessel-shift.");
    Outcome {
        id: 3,
        name: "Darboux/Bessel shift",
        ok: ok && n == 21,
        detail: format!("{n} values of β in 0, 1/2, .., 10 with exact intertwining"),
    }
}

fn criterion_4(report: &VerificationReport) -> Outcome {
    let f = report.case("euler.functoriality");
    let fac = report.case("euler.bessel-factorization");
    let ok = [f, fac]
        .iter()
        .all(|c| c.is_some_and(|c| c.status == Status::Pass));
    Outcome {
        id: 4,
        name: "Euler functoriality",
        ok,
        detail: f.map(|c| c.detail.clone()).unwrap_or_default(),
    }
}

fn criterion_5() -> Outcome {
    let (code, report, elapsed) = verify_cli("chebyshev", 50);
    let mut ok = code == Some(0) && elapsed < Duration::from_secs(5);
    let mut detail = format!("exit {code:?}, {:.2} s", elapsed.as_secs_f64());
    match report {
        Some(r) => {
            for id in [
                "chebyshev.pair.corrected-minus",
                "chebyshev.ode",
                "chebyshev.plus-shift.f1",
            ] {
                ok &= r.case(id).is_some_and(|c| c.status == Status::Pass);
            }
            let flag = r.case("chebyshev.plus-shift.pair-identity");
            let flagged = flag.is_some_and(|c| {
                c.status == Status::Flagged && c.detail.contains("equal to 1 at x = 1/2")
            });
            ok &= flagged;
            detail.push_str(&format!(", n ≤ 50, +x convention flagged: {flagged}"));
        }
        None => ok = false,
    }
    Outcome {
        id: 5,
        name: "Chebyshev",
        ok,
        detail,
    }
}

fn criterion_6() -> Outcome {
    let grid: Vec<f64> = (1..=10).map(|i| i as f64 * 0.5).collect();
    let (ok, detail) = match compare_ladder_to_bessel(10, &grid) {
        Ok(r) => (
            r.max_abs_err <= 1e-10 && r.flagged().count() == 0 && r.rows.len() == 100,
            format!(
                "max abs err {:.3e} over {} rows",
                r.max_abs_err,
                r.rows.len()
            ),
        ),
        Err(e) => (false, e.to_string()),
    };
    Outcome {
        id: 6,
        name: "numeric bridge",
        ok,
        detail,
    }
}

fn criterion_7(report: &VerificationReport) -> Outcome {
    let ids = [
        "riccati.step-round-trip",
        "riccati.cf-collapse.minus",
        "riccati.cf-collapse.plus",
    ];
    let ok = ids.iter().all(|id| {
        report
            .case(id)
            .is_some_and(|c| c.status == Status::Pass && !c.detail.contains("failure"))
    });
    let depth_ok = report
        .case("riccati.cf-collapse.minus")
        .is_some_and(|c| c.detail.contains("j ≤ 15"));
    Outcome {
        id: 7,
        name: "round trips",
        ok: ok && depth_ok,
        detail: "20 random step/inverse pairs, collapse = ladder for depth ≤ 15".to_string(),
    }
}

fn criterion_8(report: &VerificationReport) -> Outcome {
    let flagged: Vec<_> = report
        .cases
        .iter()
        .filter(|c| c.status == Status::Flagged)
        .collect();
    let ids: Vec<&str> = flagged.iter().map(|c| c.id.as_str()).collect();
    let corrections = report.case("riccati.printed-f3-f4").is_some_and(|c| {
        c.detail
            .contains("exact f_3 = 5/2 + (x^2 - x^3)/(3 - 3*x + x^2)")
            && c.detail.contains("exact f_4")
    }) && report
        .case("chebyshev.plus-shift.pair-identity")
        .is_some_and(|c| c.detail.contains("corrected f_n = T_(n-1)/T_n - x"));
    Outcome {
        id: 8,
        name: "documented discrepancies",
        ok: ids == ["chebyshev.plus-shift.pair-identity", "riccati.printed-f3-f4"]
            && corrections
            && report.passed(),
        detail: format!("flagged: {}", ids.join(", ")),
    }
}

fn all_report() -> &'static VerificationReport {
    static REPORT: OnceLock<VerificationReport> = OnceLock::new();
    REPORT.get_or_init(|| run(Suite::All, 25))
}

fn report(o: Outcome) {
    let line = format!(
        "{} criterion {}: {} ({})",
        if o.ok { "PASS" } else { "FAIL" },
        o.id,
        o.name,
        o.detail
    );
    println!("{line}");
    assert!(o.ok, "{line}");
}

#[test]
fn criterion_1_ladder_exactness() {
    report(criterion_1());
}

#[test]
fn criterion_2_fixed_points() {
    report(criterion_2());
}

#[test]
fn criterion_3_bessel_shift() {
    report(criterion_3(all_report()));
}

#[test]
fn criterion_4_euler_functoriality() {
    report(criterion_4(all_report()));
}

#[test]
fn criterion_5_chebyshev() {
    report(criterion_5());
}

#[test]
fn criterion_6_numeric_bridge() {
    report(criterion_6());
}

#[test]
fn criterion_7_round_trips() {
    report(criterion_7(all_report()));
}

#[test]
fn criterion_8_documented_discrepancies() {
    report(criterion_8(all_report()));
}
