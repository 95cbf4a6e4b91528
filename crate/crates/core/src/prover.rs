//! Symbolic certification of the claim list.
//!
//! Each claim is rebuilt over rational functions in its free parameters with
//! the same generic code as the sampled path. A claim is proven when every
//! witness has a zero numerator; the witnesses' denominator factors are the
//! side conditions under which the identity holds.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::areal::{circle_through, determinant, ArealCircle, ArealPoint, TriangleMetric};
use crate::cartesian::{
    assemble_cartesian_figure, cartesian_witnesses,
    closed_form_centers as closed_form_centers_cartesian, closed_form_circles, second_common_point,
    CartPoint, CartesianClaim, CartesianConfig, CartesianFigure, ExactComplex,
};
use crate::error::{EvalError, GeometryError};
use crate::poly::MultiPoly;
use crate::ratfunc::{split_factors, RationalFunction};
use crate::scalar::{ExactRational, Scalar};
use crate::singular::{
    build_figure, claim_witnesses, closed_form_centers, SingularClaim, SingularConfig,
    SingularFigure,
};

type Rf = RationalFunction;

pub const AREAL_VARS: [&str; 4] = ["a2", "b2", "c2", "n"];
pub const CARTESIAN_VARS: [&str; 5] = ["u", "v", "w", "h", "k"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    Areal,
    Cartesian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    Singular(SingularClaim),
    CartesianCommonPoint,
    CartesianCentersMatch,
    CartesianRatios,
    FixedPointIsMiquel,
    /// Negative control: the centroid lies on circle ARP. False in general.
    CentroidOnArp,
}

impl Claim {
    /// The thirteen claims of the suite; the negative control is separate.
    pub fn all() -> Vec<Claim> {
        SingularClaim::ALL
            .iter()
            .map(|&c| Claim::Singular(c))
            .chain([
                Claim::CartesianCommonPoint,
                Claim::CartesianCentersMatch,
                Claim::CartesianRatios,
                Claim::FixedPointIsMiquel,
            ])
            .collect()
    }

    pub fn id(self) -> &'static str {
        match self {
            Claim::Singular(c) => c.name(),
            Claim::CartesianCommonPoint => "cartesian_common_point",
            Claim::CartesianCentersMatch => "cartesian_centers_match",
            Claim::CartesianRatios => "cartesian_ratios",
            Claim::FixedPointIsMiquel => "fixed_point_is_miquel",
            Claim::CentroidOnArp => "centroid_on_ARP",
        }
    }

    pub fn context(self) -> Context {
        match self {
            Claim::Singular(_) | Claim::CentroidOnArp => Context::Areal,
            _ => Context::Cartesian,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown claim `{0}`")]
pub struct UnknownClaim(pub String);

impl FromStr for Claim {
    type Err = UnknownClaim;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::all()
            .into_iter()
            .chain([Claim::CentroidOnArp])
            .find(|c| c.id() == s)
            .ok_or_else(|| UnknownClaim(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofStatus {
    Proven,
    Refuted,
}

/// One witness numerator. Zero for every component of a proven claim.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateComponent {
    pub label: String,
    pub numerator: String,
    pub terms: usize,
    pub degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofStats {
    /// Over the certificate numerators; all zero for a proven claim.
    pub certificate_max_degree: u32,
    pub certificate_terms: usize,
    /// Over the numerators of the constructed objects the witnesses use.
    pub input_max_degree: u32,
    pub input_max_terms: usize,
    pub max_denominator_terms: usize,
    pub max_denominator_degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofReport {
    pub claim: &'static str,
    pub context: Context,
    pub status: ProofStatus,
    pub certificate: Vec<CertificateComponent>,
    /// Irreducible-by-construction denominator factors, assumed nonzero.
    pub side_conditions: Vec<String>,
    /// Exclusions imposed by the configuration constructor.
    pub assumptions: Vec<String>,
    pub stats: ProofStats,
    #[serde(skip)]
    witnesses: Vec<(String, Rf)>,
    #[serde(skip)]
    side_polys: Vec<MultiPoly>,
}

impl ProofReport {
    pub fn proven(&self) -> bool {
        self.status == ProofStatus::Proven
    }

    /// The witnesses as rational functions, for evaluation at sample points.
    pub fn witnesses(&self) -> &[(String, Rf)] {
        &self.witnesses
    }

    pub fn side_condition_polys(&self) -> &[MultiPoly] {
        &self.side_polys
    }

    /// Evaluates every witness at an assignment of the context variables.
    pub fn evaluate_witnesses(
        &self,
        assignment: &HashMap<String, ExactRational>,
    ) -> Result<Vec<ExactRational>, EvalError> {
        self.witnesses
            .iter()
            .map(|(_, w)| w.evaluate(assignment))
            .collect()
    }
}

/// The constructor's exclusions, as primitive polynomials.
fn exclusions(ctx: Context) -> Vec<MultiPoly> {
    let polys: Vec<Rf> = match ctx {
        Context::Areal => {
            let (_, s) = symbols(&AREAL_VARS);
            let (a2, b2, c2, n) = (&s[0], &s[1], &s[2], &s[3]);
            vec![
                n.clone(),
                n.clone() - Rf::one(),
                a2.clone() - c2.clone() * n,
                b2.clone() + c2.clone() * n - c2,
            ]
        }
        Context::Cartesian => {
            let (_, s) = symbols(&CARTESIAN_VARS);
            let (u, v, w, h, k) = (&s[0], &s[1], &s[2], &s[3], &s[4]);
            let two = Rf::from_int(2);
            vec![
                w.clone() - v,
                u.clone() - v,
                u.clone() - w,
                h.clone(),
                h.clone() - &two,
                k.clone(),
                k.clone() - &two,
            ]
        }
    };
    polys
        .iter()
        .map(|p| p.numerator().primitive_split().1)
        .collect()
}

fn symbols(names: &[&str]) -> (Arc<[String]>, Vec<Rf>) {
    let ring = MultiPoly::ring(names);
    let vars = names.iter().map(|n| Rf::var(&ring, n)).collect();
    (ring, vars)
}

/// The singular figure over `Q(a², b², c², n)`.
pub fn symbolic_singular_figure() -> Result<SingularFigure<Rf>, GeometryError> {
    let (_, v) = symbols(&AREAL_VARS);
    let metric = TriangleMetric::new(v[0].clone(), v[1].clone(), v[2].clone())?;
    build_figure(&SingularConfig::new(metric, v[3].clone())?)
}

/// The general configuration over `Q(u, v, w, h, k)`.
pub fn symbolic_cartesian_config() -> Result<CartesianConfig<Rf>, GeometryError> {
    let (_, s) = symbols(&CARTESIAN_VARS);
    CartesianConfig::new(
        s[1].clone(),
        s[2].clone(),
        s[0].clone(),
        s[3].clone(),
        s[4].clone(),
    )
}

fn report(claim: Claim, found: Witnesses) -> ProofReport {
    let Witnesses {
        witnesses,
        inputs,
        divisors,
    } = found;
    let known = exclusions(claim.context());
    let mut side: Vec<MultiPoly> = Vec::new();
    let mut add = |atom: &MultiPoly| {
        if !side.contains(atom) {
            side.push(atom.clone());
        }
    };
    for w in witnesses
        .iter()
        .map(|(_, w)| w)
        .chain(inputs.iter())
        .chain(divisors.iter())
    {
        for (atom, _) in w.den_factors() {
            add(atom);
        }
    }
    for d in &divisors {
        for (atom, _) in split_factors(d.numerator(), &known) {
            add(&atom);
        }
    }
    side.sort_by(|a, b| {
        (a.total_degree(), a.term_count(), a.to_string()).cmp(&(
            b.total_degree(),
            b.term_count(),
            b.to_string(),
        ))
    });
    let certificate: Vec<CertificateComponent> = witnesses
        .iter()
        .map(|(label, w)| CertificateComponent {
            label: label.clone(),
            numerator: w.numerator().to_string(),
            terms: w.numerator().term_count(),
            degree: w.numerator().total_degree(),
        })
        .collect();
    let status = if witnesses.iter().all(|(_, w)| w.numerator().is_zero()) {
        ProofStatus::Proven
    } else {
        ProofStatus::Refuted
    };
    let stats = ProofStats {
        certificate_max_degree: certificate.iter().map(|c| c.degree).max().unwrap_or(0),
        certificate_terms: certificate.iter().map(|c| c.terms).sum(),
        input_max_degree: inputs
            .iter()
            .map(|i| i.numerator().total_degree())
            .max()
            .unwrap_or(0),
        input_max_terms: inputs
            .iter()
            .map(|i| i.numerator().term_count())
            .max()
            .unwrap_or(0),
        max_denominator_terms: side.iter().map(|a| a.term_count()).max().unwrap_or(0),
        max_denominator_degree: side.iter().map(|a| a.total_degree()).max().unwrap_or(0),
    };
    ProofReport {
        claim: claim.id(),
        context: claim.context(),
        status,
        certificate,
        side_conditions: side.iter().map(|a| a.to_string()).collect(),
        side_polys: side,
        assumptions: known.iter().map(|p| p.to_string()).collect(),
        stats,
        witnesses,
    }
}

fn labelled(ws: Vec<(&'static str, Rf)>) -> Vec<(String, Rf)> {
    ws.into_iter().map(|(l, w)| (l.to_string(), w)).collect()
}

fn construction_failure(claim: Claim, e: GeometryError) -> ProofReport {
    // A generic construction only fails if a denominator is identically
    // zero, which refutes the claim as stated.
    let mut r = report(claim, Witnesses::default());
    r.status = ProofStatus::Refuted;
    r.certificate.push(CertificateComponent {
        label: format!("construction failed: {e}"),
        numerator: String::new(),
        terms: 0,
        degree: 0,
    });
    r
}

fn point_coords(p: &ArealPoint<Rf>) -> Vec<Rf> {
    p.coords().into_iter().cloned().collect()
}

fn circle_coeffs(c: &ArealCircle<Rf>) -> Vec<Rf> {
    vec![c.u.clone(), c.v.clone(), c.w.clone()]
}

/// The constructed objects a singular claim's witnesses are built from.
fn singular_inputs(fig: &SingularFigure<Rf>, claim: SingularClaim) -> Vec<Rf> {
    let centers_circle = || {
        let mut v = circle_coeffs(&fig.center_circle);
        for p in [&fig.center_d, &fig.center_e, &fig.center_f] {
            v.extend(point_coords(p));
        }
        v
    };
    match claim {
        SingularClaim::SOnArp => [circle_coeffs(&fig.circle_arp), point_coords(&fig.s)].concat(),
        SingularClaim::SOnBpq => [circle_coeffs(&fig.circle_bpq), point_coords(&fig.s)].concat(),
        SingularClaim::SOnCqr => [circle_coeffs(&fig.circle_cqr), point_coords(&fig.s)].concat(),
        SingularClaim::AsqCollinear => [point_coords(&fig.s), point_coords(&fig.q)].concat(),
        SingularClaim::BsrCollinear => [point_coords(&fig.s), point_coords(&fig.r)].concat(),
        SingularClaim::UOnCenterCircle => [centers_circle(), point_coords(&fig.center_u)].concat(),
        SingularClaim::VOnCenterCircle => [centers_circle(), point_coords(&fig.center_v)].concat(),
        SingularClaim::POnCenterCircle => [centers_circle(), point_coords(&fig.p)].concat(),
        SingularClaim::DefSimilarAbc => centers_circle()[3..].to_vec(),
    }
}

fn cartesian_inputs(fig: &CartesianFigure<Rf>) -> Vec<Rf> {
    let mut v = Vec::new();
    for c in &fig.circles {
        v.extend([c.d.clone(), c.e.clone(), c.f.clone()]);
    }
    for p in fig.centers.iter().chain([&fig.miquel_point]) {
        v.extend([p.x.clone(), p.y.clone()]);
    }
    let sim = &fig.similarity;
    v.extend([
        sim.alpha.re.clone(),
        sim.alpha.im.clone(),
        sim.beta.re.clone(),
        sim.beta.im.clone(),
    ]);
    v
}

/// Witnesses of one claim, the constructed values they are built from, and
/// the quantities the construction divided by.
#[derive(Default)]
struct Witnesses {
    witnesses: Vec<(String, Rf)>,
    inputs: Vec<Rf>,
    divisors: Vec<Rf>,
}

fn sums(points: &[&ArealPoint<Rf>]) -> Vec<Rf> {
    points.iter().map(|p| p.sum()).collect()
}

/// Divisors of the singular construction that a claim depends on: the
/// circle-fitting determinants and the coordinate sums that must not vanish.
fn singular_divisors(fig: &SingularFigure<Rf>, claim: SingularClaim) -> Vec<Rf> {
    let (a, b, c) = (
        ArealPoint::<Rf>::vertex_a(),
        ArealPoint::<Rf>::vertex_b(),
        ArealPoint::<Rf>::vertex_c(),
    );
    let (p, q, r) = (&fig.p, &fig.q, &fig.r);
    let mut out = vec![determinant(&c, &a, p), determinant(&b, &c, p)];
    out.extend(sums(&[q, r]));
    let arp = determinant(&a, r, p);
    let bpq = determinant(&b, p, q);
    let cqr = determinant(&c, q, r);
    let (d, e, f) = (
        fig.center_d.primitive(),
        fig.center_e.primitive(),
        fig.center_f.primitive(),
    );
    match claim {
        SingularClaim::SOnArp => out.push(arp),
        SingularClaim::SOnBpq => out.push(bpq),
        SingularClaim::SOnCqr => out.push(cqr),
        SingularClaim::AsqCollinear | SingularClaim::BsrCollinear => {}
        SingularClaim::UOnCenterCircle
        | SingularClaim::VOnCenterCircle
        | SingularClaim::POnCenterCircle => {
            out.extend([arp, bpq, cqr, determinant(&d, &e, &f)]);
            out.extend(sums(&[&d, &e, &f]));
        }
        SingularClaim::DefSimilarAbc => {
            out.extend([arp, bpq, cqr]);
            out.extend(sums(&[&d, &e, &f]));
        }
    }
    out
}

fn cart_det(p1: &CartPoint<Rf>, p2: &CartPoint<Rf>, p3: &CartPoint<Rf>) -> Rf {
    (p2.x.clone() - &p1.x) * (p3.y.clone() - &p1.y)
        - (p3.x.clone() - &p1.x) * (p2.y.clone() - &p1.y)
}

/// Circle-fitting determinants, `v − w` from the closed-form forms, and when
/// the similarity is used, `|B − A|²` and `|1 − α|²`.
fn cartesian_divisors(fig: &CartesianFigure<Rf>, similarity: bool) -> Vec<Rf> {
    let [a, b, c] = &fig.vertices;
    let [p, q, r] = &fig.side_points;
    let mut out = vec![
        cart_det(b, p, q),
        cart_det(c, q, r),
        cart_det(a, r, p),
        fig.config.v.clone() - &fig.config.w,
    ];
    if similarity {
        out.push(b.distance_squared(a));
        let one_minus = ExactComplex::real(Rf::one()) - fig.similarity.alpha.clone();
        out.push(one_minus.norm_squared());
    }
    out
}

fn witnesses_for(claim: Claim) -> Result<Witnesses, GeometryError> {
    match claim {
        Claim::Singular(c) => {
            let fig = symbolic_singular_figure()?;
            Ok(Witnesses {
                witnesses: labelled(claim_witnesses(&fig, c)?),
                inputs: singular_inputs(&fig, c),
                divisors: singular_divisors(&fig, c),
            })
        }
        Claim::CentroidOnArp => {
            let fig = symbolic_singular_figure()?;
            let g = ArealPoint::new(Rf::one(), Rf::one(), Rf::one());
            Ok(Witnesses {
                witnesses: vec![("form_ARP(G)".into(), fig.circle_arp.form(&g))],
                inputs: circle_coeffs(&fig.circle_arp),
                divisors: singular_divisors(&fig, SingularClaim::SOnArp),
            })
        }
        Claim::CartesianCommonPoint => {
            // Independent of the similarity: the second common point of
            // BPQ and ARP through P, substituted into CQR.
            let cfg = symbolic_cartesian_config()?;
            let [bpq, cqr, arp] = closed_form_circles(&cfg);
            let [p, _, _] = cfg.side_points();
            let x = second_common_point(&bpq, &arp, &p)?;
            let [a, b, c] = cfg.vertices();
            let [_, q, r] = cfg.side_points();
            let mut ws = vec![("CQR(X)".to_string(), cqr.form(&x))];
            for (label, circle, pt) in [
                ("BPQ(B)", &bpq, &b),
                ("BPQ(P)", &bpq, &p),
                ("BPQ(Q)", &bpq, &q),
                ("CQR(C)", &cqr, &c),
                ("CQR(Q)", &cqr, &q),
                ("CQR(R)", &cqr, &r),
                ("ARP(A)", &arp, &a),
                ("ARP(R)", &arp, &r),
                ("ARP(P)", &arp, &p),
            ] {
                ws.push((label.to_string(), circle.form(pt)));
            }
            let radical = (bpq.d.clone() - &arp.d).square() + (bpq.e.clone() - &arp.e).square();
            let mut inputs = vec![x.x, x.y];
            for c in [&bpq, &cqr, &arp] {
                inputs.extend([c.d.clone(), c.e.clone(), c.f.clone()]);
            }
            Ok(Witnesses {
                witnesses: ws,
                inputs,
                divisors: vec![cfg.v.clone() - &cfg.w, radical],
            })
        }
        Claim::CartesianCentersMatch => {
            let fig = assemble_cartesian_figure(&symbolic_cartesian_config()?)?;
            let mut ws = labelled(cartesian_witnesses(
                &fig,
                CartesianClaim::CirclesMatchClosedForm,
            ));
            ws.extend(labelled(cartesian_witnesses(
                &fig,
                CartesianClaim::CentersMatchClosedForm,
            )));
            let mut inputs = cartesian_inputs(&fig);
            for c in closed_form_circles(&fig.config) {
                inputs.extend([c.d, c.e, c.f]);
            }
            for p in closed_form_centers_cartesian(&fig.config) {
                inputs.extend([p.x, p.y]);
            }
            Ok(Witnesses {
                witnesses: ws,
                inputs,
                divisors: cartesian_divisors(&fig, false),
            })
        }
        Claim::CartesianRatios => {
            let fig = assemble_cartesian_figure(&symbolic_cartesian_config()?)?;
            Ok(Witnesses {
                witnesses: labelled(cartesian_witnesses(&fig, CartesianClaim::RatioIdentities)),
                inputs: cartesian_inputs(&fig),
                divisors: cartesian_divisors(&fig, false),
            })
        }
        Claim::FixedPointIsMiquel => {
            let fig = assemble_cartesian_figure(&symbolic_cartesian_config()?)?;
            let mut ws = Vec::new();
            for c in [
                CartesianClaim::DirectSimilarity,
                CartesianClaim::FixedPointOnCircles,
                CartesianClaim::ScaleIsSideRatio,
            ] {
                ws.extend(labelled(cartesian_witnesses(&fig, c)));
            }
            Ok(Witnesses {
                witnesses: ws,
                inputs: cartesian_inputs(&fig),
                divisors: cartesian_divisors(&fig, true),
            })
        }
    }
}

pub fn prove(claim: Claim) -> ProofReport {
    match witnesses_for(claim) {
        Ok(found) => report(claim, found),
        Err(e) => construction_failure(claim, e),
    }
}

/// Proves the given claims in parallel; the order of the reports follows
/// the input.
pub fn prove_claims(claims: &[Claim]) -> Vec<ProofReport> {
    claims.par_iter().map(|&c| prove(c)).collect()
}

pub fn prove_all() -> Vec<ProofReport> {
    prove_claims(&Claim::all())
}

/// Concyclicity claims with the closed-form centre of CQR in place of the
/// constructed one.
pub fn prove_with_closed_form_cqr_center() -> Vec<ProofReport> {
    let run = || -> Result<Vec<ProofReport>, GeometryError> {
        let mut fig = symbolic_singular_figure()?;
        let closed = closed_form_centers(&fig.config)[4].clone();
        fig.center_f = closed;
        fig.center_circle = circle_through(
            &fig.config.metric,
            &fig.center_d.primitive(),
            &fig.center_e.primitive(),
            &fig.center_f.primitive(),
        )?;
        Ok([
            SingularClaim::UOnCenterCircle,
            SingularClaim::VOnCenterCircle,
            SingularClaim::POnCenterCircle,
        ]
        .into_iter()
        .map(|c| {
            let claim = Claim::Singular(c);
            match claim_witnesses(&fig, c) {
                Ok(ws) => report(
                    claim,
                    Witnesses {
                        witnesses: labelled(ws),
                        inputs: singular_inputs(&fig, c),
                        divisors: singular_divisors(&fig, c),
                    },
                ),
                Err(e) => construction_failure(claim, e),
            }
        })
        .collect())
    };
    run().unwrap_or_else(|e| {
        vec![construction_failure(
            Claim::Singular(SingularClaim::UOnCenterCircle),
            e,
        )]
    })
}
