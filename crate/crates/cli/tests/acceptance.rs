//! Acceptance criteria, run against the built `miquel` binary.
//!
//! Prints one PASS/FAIL line per criterion and exits nonzero if any fails.
//! Every mathematical check is exact: the tolerance is zero throughout.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use miquel_core::{ArealPoint, ExactRational};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_miquel");

const SWEEP_BUDGET: Duration = Duration::from_secs(60);
const PROVE_BUDGET: Duration = Duration::from_secs(300);
const SWEEP_SAMPLES: u64 = 500;
const AUDIT_SAMPLES: u64 = 100;
const BRIDGE_SAMPLES: u64 = 100;
const CLAIM_COUNT: usize = 13;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn run(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(BIN)
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("the miquel binary runs");
    (out, start.elapsed())
}

fn json(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON: {e}"))
}

fn exit_ok(out: &Output) -> Result<(), String> {
    match out.status.code() {
        Some(0) => Ok(()),
        code => Err(format!(
            "exit {code:?}: {}",
            String::from_utf8_lossy(&out.stderr).trim()
        )),
    }
}

fn q(v: &Value) -> ExactRational {
    v.as_str()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| panic!("exact value expected, got {v}"))
}

fn triple(v: &Value) -> ArealPoint<ExactRational> {
    ArealPoint::new(q(&v[0]), q(&v[1]), q(&v[2]))
}

fn ints(x: i64, y: i64, z: i64) -> ArealPoint<ExactRational> {
    ArealPoint::new(x.into(), y.into(), z.into())
}

fn pair(v: &Value) -> (ExactRational, ExactRational) {
    (q(&v[0]), q(&v[1]))
}

fn rat(s: &str) -> ExactRational {
    s.parse().expect("literal rational")
}

/// Every tally reports `samples` passes out of `samples`.
fn full_tallies(doc: &Value, samples: u64, expected_claims: usize) -> Result<String, String> {
    let claims = doc["claims"].as_array().ok_or("no claim tallies")?;
    if claims.len() != expected_claims {
        return Err(format!(
            "{} claim tallies, expected {expected_claims}",
            claims.len()
        ));
    }
    let mut parts = Vec::new();
    for t in claims {
        let (passed, total) = (t["passed"].as_u64(), t["total"].as_u64());
        if passed != Some(samples) || total != Some(samples) {
            return Err(format!("{t}"));
        }
        parts.push(format!(
            "{} {samples}/{samples}",
            t["claim"].as_str().unwrap_or("?")
        ));
    }
    Ok(parts.join(", "))
}

fn sweep(mode: &str, seed: &str, families: usize) -> Verdict {
    let n = SWEEP_SAMPLES.to_string();
    let (out, took) = run(&["verify", "--mode", mode, "--samples", &n, "--seed", seed]);
    exit_ok(&out)?;
    let summary = full_tallies(&json(&out)?, SWEEP_SAMPLES, families)?;
    if took > SWEEP_BUDGET {
        return Err(format!("took {took:?}, budget {SWEEP_BUDGET:?}"));
    }
    Ok(format!("{summary} in {:.2}s", took.as_secs_f64()))
}

fn criterion_1() -> Verdict {
    sweep("areal", "42", 5)
}

fn criterion_2() -> Verdict {
    sweep("cartesian", "7", 6)
}

fn criterion_3() -> Verdict {
    let (out, took) = run(&["prove"]);
    exit_ok(&out)?;
    let doc = json(&out)?;
    let proofs = doc["proofs"].as_array().ok_or("no proofs")?;
    if proofs.len() != CLAIM_COUNT {
        return Err(format!("{} proofs, expected {CLAIM_COUNT}", proofs.len()));
    }
    for p in proofs {
        let name = p["claim"].as_str().unwrap_or("?");
        if p["status"] != "proven" {
            return Err(format!("{name} is {}", p["status"]));
        }
        let certs = p["certificate"].as_array().ok_or("no certificate")?;
        if certs.is_empty() || certs.iter().any(|c| c["numerator"] != "0") {
            return Err(format!("{name} has a nonzero certificate"));
        }
        if p["side_conditions"].as_array().is_none_or(|s| s.is_empty()) {
            return Err(format!("{name} lists no side conditions"));
        }
    }
    let control = &doc["negative_control"];
    if control["status"] != "refuted" {
        return Err("negative control was not refuted".into());
    }
    if took > PROVE_BUDGET {
        return Err(format!("took {took:?}, budget {PROVE_BUDGET:?}"));
    }
    Ok(format!(
        "{CLAIM_COUNT}/{CLAIM_COUNT} proven, {} refuted, in {:.2}s",
        control["claim"].as_str().unwrap_or("control"),
        took.as_secs_f64()
    ))
}

fn criterion_4() -> Verdict {
    let (out, _) = run(&[
        "construct",
        "--mode",
        "areal",
        "--a2",
        "9",
        "--b2",
        "16",
        "--c2",
        "25",
        "--n",
        "1/5",
    ]);
    exit_ok(&out)?;
    let doc = json(&out)?;
    let checks = [
        ("Q", triple(&doc["points"]["Q"]), ints(0, 4, 5)),
        ("R", triple(&doc["points"]["R"]), ints(-1, 0, 5)),
        ("S", triple(&doc["points"]["S"]), ints(-1, 4, 5)),
        ("centre of CAP", triple(&doc["centers"]["V"]), ints(9, 4, 5)),
    ];
    for (name, got, want) in &checks {
        if !got.same_point(want) {
            return Err(format!("instance I: {name} = {got:?}"));
        }
    }

    let (out, _) = run(&[
        "construct",
        "--mode",
        "cartesian",
        "--v",
        "0",
        "--w",
        "1",
        "--u",
        "1/2",
        "--h",
        "1",
        "--k",
        "1",
    ]);
    exit_ok(&out)?;
    let doc = json(&out)?;
    let expect = [
        ("D", pair(&doc["centers"]["D"]), (rat("1/2"), rat("1/2"))),
        ("E", pair(&doc["centers"]["E"]), (rat("3/2"), rat("1/2"))),
        ("F", pair(&doc["centers"]["F"]), (rat("3/2"), rat("3/2"))),
        (
            "alpha",
            pair(&doc["similarity"]["alpha"]),
            (rat("1/2"), rat("0")),
        ),
        ("S", pair(&doc["miquel_point"]), (rat("1"), rat("1"))),
    ];
    for (name, got, want) in &expect {
        if got != want {
            return Err(format!("instance II: {name} = {got:?}"));
        }
    }
    Ok("instance I: Q, R, S, centre of CAP; instance II: D, E, F, alpha, S".into())
}

fn criterion_5() -> Verdict {
    let n = AUDIT_SAMPLES.to_string();
    let (out, _) = run(&["verify", "--mode", "areal", "--samples", &n, "--seed", "5"]);
    exit_ok(&out)?;
    let doc = json(&out)?;
    let audit = doc["audit"].as_array().ok_or("no audit report")?;
    let find = |item: &str| {
        audit
            .iter()
            .find(|a| a["item"] == item)
            .ok_or_else(|| format!("audit lacks {item}"))
    };
    for item in [
        "centre of CAP",
        "centre of BCP",
        "centre of ARP",
        "centre of BPQ",
    ] {
        let a = find(item)?;
        if a["proportional"].as_u64() != Some(AUDIT_SAMPLES) {
            return Err(format!("{item}: {a}"));
        }
    }
    // The last two are reported whatever their verdict.
    let cqr = find("centre of CQR")?;
    let circle = find("circle through the centres")?;
    Ok(format!(
        "closed-form centres of CAP, BCP, ARP, BPQ proportional {AUDIT_SAMPLES}/{AUDIT_SAMPLES}; \
         CQR centre proportional {}/{AUDIT_SAMPLES}, exact {}/{AUDIT_SAMPLES}; \
         centre circle proportional {}/{AUDIT_SAMPLES}",
        cqr["proportional"], cqr["exact"], circle["proportional"]
    ))
}

fn criterion_6() -> Verdict {
    let n = BRIDGE_SAMPLES.to_string();
    let (out, _) = run(&["verify", "--mode", "bridge", "--samples", &n, "--seed", "6"]);
    exit_ok(&out)?;
    full_tallies(&json(&out)?, BRIDGE_SAMPLES, 1)
}

fn criterion_7() -> Verdict {
    let invocations: [&[&str]; 5] = [
        &[
            "construct",
            "--mode",
            "areal",
            "--a2",
            "9",
            "--b2",
            "16",
            "--c2",
            "25",
            "--n",
            "1/5",
        ],
        &[
            "construct",
            "--mode",
            "cartesian",
            "--v",
            "0",
            "--w",
            "1",
            "--u",
            "1/2",
            "--h",
            "1",
            "--k",
            "1",
        ],
        &[
            "verify",
            "--mode",
            "areal",
            "--samples",
            "50",
            "--seed",
            "42",
        ],
        &[
            "figure", "--mode", "areal", "--a2", "9", "--b2", "16", "--c2", "25", "--n", "1/5",
            "--size", "800",
        ],
        &[
            "figure",
            "--mode",
            "cartesian",
            "--v",
            "0",
            "--w",
            "1",
            "--u",
            "1/2",
            "--h",
            "1",
            "--k",
            "1",
        ],
    ];
    for args in invocations {
        let (first, _) = run(args);
        let (second, _) = run(args);
        exit_ok(&first)?;
        if first.stdout != second.stdout || first.stdout.is_empty() {
            return Err(format!("output differs for {}", args.join(" ")));
        }
    }
    Ok("construct, verify and figure outputs are byte-identical across runs".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("singular sweep, seed 42", criterion_1),
        ("Cartesian sweep, seed 7", criterion_2),
        ("symbolic proofs", criterion_3),
        ("worked instances", criterion_4),
        ("transcription audit", criterion_5),
        ("cross-parametrization bridge", criterion_6),
        ("determinism", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
