//! The ten acceptance criteria, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use rostlab::suites::{run_suite, SuiteConfig, SuiteReport};
use rostlab::Result;
use serde_json::Value;

struct Line {
    ok: bool,
    note: String,
}

fn run(suite: &str, samples: usize) -> Result<(SuiteReport, Duration)> {
    let start = Instant::now();
    let cfg = SuiteConfig {
        samples,
        ..SuiteConfig::default()
    };
    let rep = run_suite(suite, &cfg)?;
    Ok((rep, start.elapsed()))
}

fn summary(rep: &SuiteReport, took: Duration) -> String {
    format!(
        "{}: {:?}, {} cells, {} failures, {} inconclusive, {:.1}s",
        rep.suite,
        rep.status,
        rep.cells,
        rep.failures,
        rep.inconclusive,
        took.as_secs_f64()
    )
}

/// Zero failures and zero inconclusive cells within `limit`.
fn clean(suite: &str, samples: usize, limit: Option<u64>) -> Result<Line> {
    let (rep, took) = run(suite, samples)?;
    let timely = limit.is_none_or(|s| took < Duration::from_secs(s));
    Ok(Line {
        ok: rep.failures == 0 && rep.inconclusive == 0 && rep.exit_code() == 0 && timely,
        note: summary(&rep, took),
    })
}

fn detail<'a>(rep: &'a SuiteReport, field: &str) -> Option<&'a Value> {
    rep.towers.iter().find(|t| t.field == field).map(|t| &t.details)
}

fn steinberg() -> Result<Line> {
    clean("steinberg", 10_000, Some(30))
}

fn exact_sequence() -> Result<Line> {
    clean("exact-sequence", 10_000, Some(10))
}

fn residue_formulas() -> Result<Line> {
    clean("residue-formulas", 1_000, None)
}

fn rost_divisibility() -> Result<Line> {
    let (rep, took) = run("rost-div-l", 10_000)?;
    let counts = [
        ("F_3((x1))((x2)) mod 2^1", 8),
        ("F_3((x1))((x2))((x3)) mod 2^1", 64),
        ("F_7((x1))((x2))((x3)) mod 3^1", 729),
    ];
    let sizes_ok = counts
        .iter()
        .all(|(f, n)| detail(&rep, f).and_then(|d| d["alphas"].as_u64()) == Some(*n));
    Ok(Line {
        ok: sizes_ok && rep.failures == 0 && rep.inconclusive == 0 && took < Duration::from_secs(120),
        note: summary(&rep, took),
    })
}

fn quotient_cross_check() -> Result<Line> {
    clean("thm-4-9", 10_000, None)
}

fn higher_period() -> Result<Line> {
    let (rep, took) = run("thm-1-6", 10_000)?;
    let tower = detail(&rep, "F_5((x1))((x2)) mod 2^2");
    let has_period_4 = tower.is_some_and(|d| d["by_period"].get("4").is_some());
    Ok(Line {
        ok: has_period_4 && rep.failures == 0 && rep.exit_code() != 1 && took < Duration::from_secs(180),
        note: summary(&rep, took),
    })
}

fn inductive_pairs() -> Result<Line> {
    let (rep, took) = run("lemma-4-8", 100)?;
    let d = detail(&rep, "F_5((x1)) mod 2^2").cloned().unwrap_or(Value::Null);
    let both = d["case_1"].as_u64().unwrap_or(0) > 0 && d["case_2"].as_u64().unwrap_or(0) > 0;
    Ok(Line {
        ok: both && d["problems"] == 100 && rep.failures == 0 && rep.exit_code() == 0,
        note: format!("{} (cases {} / {})", summary(&rep, took), d["case_1"], d["case_2"]),
    })
}

fn valuation_prime_to_ell() -> Result<Line> {
    clean("lemma-4-2", 10_000, None)
}

fn albert_chain() -> Result<Line> {
    clean("prop-2-1", 10_000, Some(120))
}

fn dual_path() -> Result<Line> {
    let (rep, took) = run("dual-path", 1_000)?;
    let depth_two = rep.towers.iter().filter(|t| t.field.matches("((").count() == 2).count();
    let quaternion = detail(&rep, "F_3((x1)) mod 2^1").is_some();
    Ok(Line {
        ok: depth_two > 0 && quaternion && rep.failures == 0 && rep.exit_code() == 0,
        note: summary(&rep, took),
    })
}

fn main() {
    type Criterion = (&'static str, fn() -> Result<Line>);
    let criteria: [Criterion; 10] = [
        ("symbol identities", steinberg),
        ("residue exact sequence", exact_sequence),
        ("residue formulas", residue_formulas),
        ("Rost divisibility", rost_divisibility),
        ("quotient cross-check", quotient_cross_check),
        ("higher period", higher_period),
        ("inductive pairs", inductive_pairs),
        ("valuation prime to ell", valuation_prime_to_ell),
        ("Albert forms", albert_chain),
        ("dual path", dual_path),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let line = f().unwrap_or_else(|e| Line {
            ok: false,
            note: format!("error {}: {e}", e.name()),
        });
        if !line.ok {
            failed += 1;
        }
        println!(
            "{} criterion {} ({name}): {}",
            if line.ok { "PASS" } else { "FAIL" },
            i + 1,
            line.note
        );
    }
    let total = start.elapsed();
    println!("total {:.1}s", total.as_secs_f64());
    if total > Duration::from_secs(600) {
        println!("FAIL total runtime above 10 minutes");
        failed += 1;
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
