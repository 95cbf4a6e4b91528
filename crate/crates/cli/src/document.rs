//! JSON documents for `construct`, `verify` and `prove`.
//!
//! Exact values are always strings, `"p"` or `"p/q"`. Maps are keyed by
//! name and serialize in sorted order, so output is byte-stable.

use std::collections::BTreeMap;

use miquel_core::cartesian::{
    bridge_consistent, build_cartesian_figure, singular_bridge, verify_cartesian,
};
use miquel_core::prover::{self, Claim};
use miquel_core::sampling::{audit_sweep, sweep};
use miquel_core::singular::{
    audit_transcriptions, build_figure, closed_form_points, verify_claims,
};
use miquel_core::{
    ArealPoint, CartPoint, CartesianConfig, CartesianFigure, ExactRational, SingularBridge,
    SingularConfig, SingularFigure, SweepMode, TriangleMetric,
};
use serde_json::{json, Map, Value};

use crate::{CliError, Mode, Outcome, Shared};

type Q = ExactRational;

fn q(x: &Q) -> Value {
    Value::String(x.to_string())
}

fn areal(p: &ArealPoint<Q>) -> Value {
    json!([q(&p.x), q(&p.y), q(&p.z)])
}

fn cart(p: &CartPoint<Q>) -> Value {
    json!([q(&p.x), q(&p.y)])
}

fn named<I: IntoIterator<Item = (&'static str, Value)>>(items: I) -> Value {
    Value::Object(items.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn require(value: &Option<Q>, name: &str, mode: &str) -> Result<Q, CliError> {
    value
        .clone()
        .ok_or_else(|| CliError::Invalid(format!("--{name} is required in {mode} mode")))
}

fn finish(doc: Value, pass: bool, failure: Option<String>) -> Outcome {
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    text.push('\n');
    Outcome {
        text,
        pass,
        failure,
    }
}

pub fn singular_config(s: &Shared) -> Result<SingularConfig<Q>, CliError> {
    let metric = TriangleMetric::new(
        require(&s.a2, "a2", "areal")?,
        require(&s.b2, "b2", "areal")?,
        require(&s.c2, "c2", "areal")?,
    )?;
    Ok(SingularConfig::new(metric, require(&s.n, "n", "areal")?)?)
}

/// The general configuration, or the singular-rule one when `u` and `h`
/// are both absent.
pub fn cartesian_config(
    s: &Shared,
) -> Result<(CartesianConfig<Q>, Option<SingularBridge<Q>>), CliError> {
    let v = require(&s.v, "v", "cartesian")?;
    let w = require(&s.w, "w", "cartesian")?;
    let k = require(&s.k, "k", "cartesian")?;
    match (&s.u, &s.h, s.mode) {
        (None, None, _) | (_, _, Mode::Bridge) => {
            let bridge = singular_bridge(v, w, k)?;
            Ok((bridge.config.clone(), Some(bridge)))
        }
        (Some(u), Some(h), _) => Ok((CartesianConfig::new(v, w, u.clone(), h.clone(), k)?, None)),
        _ => Err(CliError::Invalid(
            "give both --u and --h, or neither for the singular rule".into(),
        )),
    }
}

/// Constructed points, each rescaled to its closed-form representative.
fn singular_points(fig: &SingularFigure<Q>) -> Value {
    let closed = closed_form_points(&fig.config);
    let built = [&fig.p, &fig.q, &fig.r, &fig.s];
    let mut points = vec![
        ("A", areal(&ArealPoint::vertex_a())),
        ("B", areal(&ArealPoint::vertex_b())),
        ("C", areal(&ArealPoint::vertex_c())),
    ];
    for ((name, pr), b) in ["P", "Q", "R", "S"]
        .into_iter()
        .zip(closed.iter())
        .zip(built)
    {
        let rep = if pr.same_point(b) {
            pr.clone()
        } else {
            b.primitive()
        };
        points.push((name, areal(&rep)));
    }
    named(points)
}

fn singular_document(fig: &SingularFigure<Q>) -> (Value, bool) {
    let circle =
        |c: &miquel_core::ArealCircle<Q>| json!({"u": q(&c.u), "v": q(&c.v), "w": q(&c.w)});
    let report = verify_claims(fig);
    let claims: Map<String, Value> = report
        .checks
        .iter()
        .map(|c| (c.claim.name().to_string(), Value::Bool(c.passed)))
        .collect();
    let orientation = report
        .checks
        .iter()
        .find_map(|c| c.orientation)
        .map_or(Value::Null, |o| json!(o));
    let m = &fig.config.metric;
    let doc = json!({
        "mode": "areal",
        "params": {"a2": q(&m.a2), "b2": q(&m.b2), "c2": q(&m.c2), "n": q(&fig.config.n)},
        "points": singular_points(fig),
        "circles": named([
            ("BCP", circle(&fig.circle_bcp)),
            ("CAP", circle(&fig.circle_cap)),
            ("ARP", circle(&fig.circle_arp)),
            ("BPQ", circle(&fig.circle_bpq)),
            ("CQR", circle(&fig.circle_cqr)),
            ("DEF", circle(&fig.center_circle)),
        ]),
        "centers": named([
            ("U", areal(&fig.center_u)),
            ("V", areal(&fig.center_v)),
            ("D", areal(&fig.center_d)),
            ("E", areal(&fig.center_e)),
            ("F", areal(&fig.center_f)),
        ]),
        "claims": claims,
        "orientation_DEF": orientation,
        "audit": audit_transcriptions(fig),
    });
    (doc, report.pass)
}

fn cartesian_document(
    fig: &CartesianFigure<Q>,
    bridge: Option<&SingularBridge<Q>>,
) -> (Value, bool) {
    let cfg = &fig.config;
    let circle = |c: &miquel_core::CartCircle<Q>| json!({"d": q(&c.d), "e": q(&c.e), "f": q(&c.f)});
    let report = verify_cartesian(fig);
    let mut claims: Map<String, Value> = report
        .checks
        .iter()
        .map(|(c, ok)| (c.name().to_string(), Value::Bool(*ok)))
        .collect();
    let mut pass = report.pass;
    let params = match bridge {
        Some(_) => json!({"v": q(&cfg.v), "w": q(&cfg.w), "k": q(&cfg.k)}),
        None => json!({
            "v": q(&cfg.v), "w": q(&cfg.w), "u": q(&cfg.u), "h": q(&cfg.h), "k": q(&cfg.k)
        }),
    };
    let [a, b, c] = &fig.vertices;
    let [p, qq, r] = &fig.side_points;
    let [d, e, f] = &fig.centers;
    let sim = &fig.similarity;
    let (abs, arg) = sim.alpha_polar_approx();
    let mut doc = json!({
        "mode": "cartesian",
        "params": params,
        "points": named([
            ("A", cart(a)), ("B", cart(b)), ("C", cart(c)),
            ("P", cart(p)), ("Q", cart(qq)), ("R", cart(r)),
            ("S", cart(&fig.miquel_point)),
        ]),
        "circles": named([
            ("BPQ", circle(&fig.circles[0])),
            ("CQR", circle(&fig.circles[1])),
            ("ARP", circle(&fig.circles[2])),
        ]),
        "centers": named([("D", cart(d)), ("E", cart(e)), ("F", cart(f))]),
        "similarity": {
            "alpha": [q(&sim.alpha.re), q(&sim.alpha.im)],
            "beta": [q(&sim.beta.re), q(&sim.beta.im)],
            "alpha_modulus_approx": abs,
            "alpha_argument_radians_approx": arg,
        },
        "miquel_point": cart(&fig.miquel_point),
    });
    if let Some(br) = bridge {
        let consistent = bridge_consistent(br).unwrap_or(false);
        claims.insert(
            "bridge_matches_singular_figure".into(),
            Value::Bool(consistent),
        );
        pass &= consistent;
        doc["bridge"] = json!({
            "u": q(&cfg.u), "h": q(&cfg.h),
            "n": q(&br.n), "a2": q(&br.a2), "b2": q(&br.b2), "c2": q(&br.c2),
        });
    }
    doc["claims"] = Value::Object(claims);
    (doc, pass)
}

pub fn construct(s: &Shared) -> Result<Outcome, CliError> {
    let (doc, pass) = match s.mode {
        Mode::Areal => singular_document(&build_figure(&singular_config(s)?)?),
        Mode::Cartesian | Mode::Bridge => {
            let (cfg, bridge) = cartesian_config(s)?;
            cartesian_document(&build_cartesian_figure(&cfg)?, bridge.as_ref())
        }
    };
    Ok(finish(doc, pass, None))
}

pub fn verify(mode: Mode, samples: u64, seed: u64) -> Result<Outcome, CliError> {
    let sweep_mode = match mode {
        Mode::Areal => SweepMode::Areal,
        Mode::Cartesian => SweepMode::Cartesian,
        Mode::Bridge => SweepMode::Bridge,
    };
    let summary = sweep(sweep_mode, samples, seed);
    let failure = summary.failures.first().map(|f| {
        let params: Vec<String> = f.params.iter().map(|(k, v)| format!("--{k} {v}")).collect();
        format!(
            "sample {} fails {} ({} failing samples); reproduce with `construct --mode {} {}`",
            f.index,
            f.failed.join(", "),
            summary.failures.len(),
            serde_json::to_value(summary.mode)
                .expect("mode serializes")
                .as_str()
                .unwrap_or_default(),
            params.join(" ")
        )
    });
    let mut doc = serde_json::to_value(&summary).expect("summary serializes");
    doc["params"] = json!({"samples": samples, "seed": seed});
    if mode == Mode::Areal {
        doc["audit"] = serde_json::to_value(audit_sweep(samples, seed)).expect("audit serializes");
    }
    Ok(finish(doc, summary.pass, failure))
}

pub fn prove(claim: Option<&str>) -> Result<Outcome, CliError> {
    let selected = match claim {
        Some(id) => vec![id
            .parse::<Claim>()
            .map_err(|e| CliError::Invalid(e.to_string()))?],
        None => Claim::all(),
    };
    let proofs = prover::prove_claims(&selected);
    let claims: BTreeMap<&str, &str> = proofs
        .iter()
        .map(|r| (r.claim, if r.proven() { "proven" } else { "refuted" }))
        .collect();
    let mut pass = proofs.iter().all(|r| r.proven());
    let mut failure = proofs
        .iter()
        .find(|r| !r.proven())
        .map(|r| format!("{} is refuted", r.claim));
    let mut doc = json!({
        "mode": "prove",
        "params": {"claim": claim.unwrap_or("all")},
        "claims": claims,
        "proofs": proofs,
    });
    if claim.is_none() {
        let control = prover::prove(Claim::CentroidOnArp);
        if control.proven() {
            pass = false;
            failure = Some("the negative control was proven".into());
        }
        doc["negative_control"] = serde_json::to_value(&control).expect("report serializes");
        doc["audit_closed_form_cqr_center"] =
            serde_json::to_value(prover::prove_with_closed_form_cqr_center())
                .expect("reports serialize");
    }
    Ok(finish(doc, pass, failure))
}
