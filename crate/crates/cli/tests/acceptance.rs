//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mzv_core::index::enumerate_indices;
use mzv_core::quasi_shuffle::{stuffle_word_pair, Regularizer};
use mzv_core::verify::{run_identity, IdentityName, VerificationReport, VerifyConfig};
use mzv_core::zeta::{eval_zeta_direct, eval_zeta_holder};
use mzv_core::{CoefficientRing, Index, Rational, RealValue, ZetaEngine};

const EPS: f64 = 1e-30;

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn idx(parts: &[u32]) -> Index {
    Index::new(parts.to_vec()).unwrap()
}

fn dev(a: &RealValue, b: &RealValue) -> f64 {
    a.sub(b).abs_f64()
}

fn report(name: IdentityName) -> VerificationReport {
    run_identity(&ZetaEngine::new(EPS), name, &VerifyConfig::default())
}

fn summarize(reports: &[VerificationReport]) -> Outcome {
    let pass = reports.iter().all(|r| r.pass);
    let detail = reports
        .iter()
        .map(|r| {
            let mut s = format!(
                "{} max_dev={:.2e} tol={:.0e} checks={}",
                r.identity.name(),
                r.max_dev,
                r.tolerance,
                r.deviations.len()
            );
            if let Some(d) = r.failures().next() {
                s.push_str(&format!(" first_failure={} ({:.2e})", d.key, d.dev));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { pass, detail }
}

fn within(outcome: Outcome, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let limit = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
    Outcome {
        pass: outcome.pass && in_time,
        detail: format!("{} [{:.2}s{limit}]", outcome.detail, elapsed.as_secs_f64()),
    }
}

fn c1_constants() -> Outcome {
    let start = Instant::now();
    let engine = ZetaEngine::new(EPS);
    let z2 = engine.zeta(&idx(&[2])).unwrap();
    let pi = std::f64::consts::PI;
    let d_pi = (z2.to_f64() - pi * pi / 6.0).abs();
    let mut worst = 0.0f64;
    let mut count = 0;
    for k in enumerate_indices(5, true).filter(|k| !k.is_empty()) {
        let h = eval_zeta_holder(&k, EPS).unwrap();
        let d = eval_zeta_direct(&k, 1e-12).unwrap();
        worst = worst.max(dev(&h, &d));
        count += 1;
    }
    within(
        Outcome {
            pass: d_pi <= 1e-12 && worst <= 1e-10,
            detail: format!("|zeta(2)-pi^2/6|={d_pi:.2e}; holder vs direct over {count} indices: {worst:.2e}"),
        },
        start.elapsed(),
        Some(Duration::from_secs(5)),
    )
}

fn c2_euler_stuffle() -> Outcome {
    let e = ZetaEngine::new(EPS);
    let z = |p: &[u32]| e.zeta(&idx(p)).unwrap();
    let euler = dev(&z(&[1, 2]), &z(&[3]));
    let lhs = z(&[2]).mul(&z(&[3]));
    let rhs = z(&[2, 3]).add(&z(&[3, 2])).add(&z(&[5]));
    let stuffle = dev(&lhs, &rhs);
    Outcome {
        pass: euler <= 1e-10 && stuffle <= 1e-10,
        detail: format!("zeta(1,2)-zeta(3)={euler:.2e}; stuffle {stuffle:.2e}"),
    }
}

fn c3_regularization() -> Outcome {
    let e = ZetaEngine::new(EPS);
    let poly = e.zeta_reg_sym(&idx(&[2, 1])).unwrap();
    let z2 = e.zeta(&idx(&[2])).unwrap();
    let z3 = e.zeta(&idx(&[3])).unwrap();
    let c0 = dev(&poly.coeff(0), &z3.scale(&Rational::from_integer((-2).into())));
    let c1 = dev(&poly.coeff(1), &z2);
    let higher = poly.degree().unwrap_or(0) <= 1;

    let reg = Regularizer::new();
    let words: Vec<Index> = enumerate_indices(5, false).collect();
    let mut pairs = 0;
    let mut broken = Vec::new();
    for u in &words {
        for v in words.iter().filter(|v| u.weight() + v.weight() <= 5) {
            pairs += 1;
            let lhs = reg.regularize(u).mul(&reg.regularize(v));
            let rhs = reg.regularize_element(&stuffle_word_pair(u, v));
            if lhs != rhs {
                broken.push(format!("{u}*{v}"));
            }
        }
    }
    Outcome {
        pass: c0 <= 1e-10 && c1 <= 1e-10 && higher && broken.is_empty(),
        detail: format!(
            "reg(2,1): T^0 {c0:.2e}, T^1 {c1:.2e}; ring map exact on {pairs} pairs, {} mismatches",
            broken.len()
        ),
    }
}

fn timed(names: &[IdentityName], limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let reports: Vec<_> = names.iter().map(|&n| report(n)).collect();
    within(summarize(&reports), start.elapsed(), limit)
}

fn c9_hypergeometric() -> Outcome {
    let r = report(IdentityName::Lq3f2);
    let excluded = r.excluded.iter().any(|e| e.contains("t=1/2"));
    let branch = r.branch.join(", ");
    let mut out = summarize(std::slice::from_ref(&r));
    out.pass &= excluded && !branch.is_empty();
    out.detail = format!(
        "{}; branch {branch}; t=1/2 {}",
        out.detail,
        if excluded { "excluded" } else { "NOT reported" }
    );
    out
}

fn c12_determinism() -> Outcome {
    let cache = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_mzv"))
            .args(["verify", "--all"])
            .env("MZV_CACHE_DIR", cache.path())
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && b.status.success();
    let same = a.stdout == b.stdout;
    Outcome {
        pass: ok && same && !a.stdout.is_empty(),
        detail: format!(
            "exit {:?}/{:?}; {} bytes; identical={same}",
            a.status.code(),
            b.status.code(),
            a.stdout.len()
        ),
    }
}

fn main() -> ExitCode {
    use IdentityName::*;
    let min = Some(Duration::from_secs(60));
    let criteria: Vec<Criterion> = vec![
        ("constants", Box::new(c1_constants)),
        ("euler and stuffle", Box::new(c2_euler_stuffle)),
        ("regularization", Box::new(c3_regularization)),
        ("antipode vanishing", Box::new(move || timed(&[Lemma5Antipode], min))),
        ("symmetric sum", Box::new(|| timed(&[Lemma7Symsum], None))),
        ("T-independence", Box::new(|| timed(&[TIndependence], None))),
        ("Ohno-Zagier forms", Box::new(move || timed(&[OzExp, OzGamma], min))),
        ("main identity", Box::new(|| timed(&[Main], Some(Duration::from_secs(600))))),
        ("hypergeometric form", Box::new(c9_hypergeometric)),
        ("corollaries", Box::new(|| timed(&[Cor1, Cor2], None))),
        ("specializations", Box::new(|| timed(&[Specializations], None))),
        ("determinism", Box::new(c12_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2} {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
