//! The general Miquel configuration in Cartesian coordinates.
//!
//! A = (0, 0), B = (2, 2v), C = (2, 2w) with P = (k, kv) on AB,
//! Q = (2, 2u) on BC and R = (h, hw) on CA. The circles ARP, BPQ, CQR have
//! centres D, E, F, and DEF is the image of ABC under a direct similarity
//! `z ↦ αz + β` whose fixed point is the Miquel point S.

use std::ops::{Add, Mul, Sub};

use crate::areal::{ArealPoint, TriangleMetric};
use crate::singular::{build_figure, SingularConfig};
use serde::Serialize;

use crate::error::GeometryError;
use crate::scalar::Scalar;

type Result<T> = std::result::Result<T, GeometryError>;

fn mul<S: Scalar>(a: &S, b: &S) -> S {
    a.clone() * b
}

#[derive(Clone, Debug, PartialEq)]
pub struct CartPoint<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> CartPoint<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(S::zero(), S::zero())
    }

    pub fn to_complex(&self) -> ExactComplex<S> {
        ExactComplex::new(self.x.clone(), self.y.clone())
    }

    pub fn distance_squared(&self, other: &Self) -> S {
        (self.x.clone() - &other.x).square() + (self.y.clone() - &other.y).square()
    }
}

/// `x² + y² + d·x + e·y + f = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartCircle<S> {
    pub d: S,
    pub e: S,
    pub f: S,
}

impl<S: Scalar> CartCircle<S> {
    pub fn new(d: S, e: S, f: S) -> Self {
        Self { d, e, f }
    }

    pub fn form(&self, p: &CartPoint<S>) -> S {
        p.x.square() + p.y.square() + mul(&self.d, &p.x) + mul(&self.e, &p.y) + &self.f
    }

    pub fn contains(&self, p: &CartPoint<S>) -> bool {
        self.form(p).is_zero()
    }

    pub fn center(&self) -> CartPoint<S> {
        let half = S::from_ratio(-1, 2);
        CartPoint::new(mul(&half, &self.d), mul(&half, &self.e))
    }

    /// Squared radius, `d²/4 + e²/4 − f`.
    pub fn radius_squared(&self) -> S {
        let quarter = S::from_ratio(1, 4);
        mul(&quarter, &(self.d.square() + self.e.square())) - &self.f
    }
}

/// Exact complex number over a scalar field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactComplex<S> {
    pub re: S,
    pub im: S,
}

impl<S: Scalar> ExactComplex<S> {
    pub fn new(re: S, im: S) -> Self {
        Self { re, im }
    }

    pub fn real(re: S) -> Self {
        Self::new(re, S::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_squared(&self) -> S {
        self.re.square() + self.im.square()
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let den = rhs.norm_squared();
        let re = mul(&self.re, &rhs.re) + mul(&self.im, &rhs.im);
        let im = mul(&self.im, &rhs.re) - mul(&self.re, &rhs.im);
        Some(Self::new(re.checked_div(&den)?, im.checked_div(&den)?))
    }

    pub fn to_point(&self) -> CartPoint<S> {
        CartPoint::new(self.re.clone(), self.im.clone())
    }
}

impl<S: Scalar> Add for ExactComplex<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<S: Scalar> Sub for ExactComplex<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<S: Scalar> Mul for ExactComplex<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            mul(&self.re, &rhs.re) - mul(&self.im, &rhs.im),
            mul(&self.re, &rhs.im) + mul(&self.im, &rhs.re),
        )
    }
}

/// Direct similarity `z ↦ α·z + β` of the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Similarity<S> {
    pub alpha: ExactComplex<S>,
    pub beta: ExactComplex<S>,
}

impl<S: Scalar> Similarity<S> {
    pub fn new(alpha: ExactComplex<S>, beta: ExactComplex<S>) -> Result<Self> {
        if alpha.is_zero() {
            return Err(GeometryError::DegenerateSource);
        }
        Ok(Self { alpha, beta })
    }

    pub fn identity() -> Self {
        Self {
            alpha: ExactComplex::real(S::one()),
            beta: ExactComplex::real(S::zero()),
        }
    }

    pub fn apply(&self, p: &CartPoint<S>) -> CartPoint<S> {
        (self.alpha.clone() * p.to_complex() + self.beta.clone()).to_point()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            alpha: self.alpha.clone() * other.alpha.clone(),
            beta: self.alpha.clone() * other.beta.clone() + self.beta.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        let one = ExactComplex::real(S::one());
        let inv = one.checked_div(&self.alpha).expect("alpha is nonzero");
        let beta = ExactComplex::real(S::zero()) - inv.clone() * self.beta.clone();
        Self { alpha: inv, beta }
    }
}

/// The similarity taking `src[i]` to `dst[i]`, provided one exists that
/// preserves orientation.
pub fn similarity_from_correspondence<S: Scalar>(
    src: &[CartPoint<S>; 3],
    dst: &[CartPoint<S>; 3],
) -> Result<Similarity<S>> {
    let s0 = src[0].to_complex();
    let s1 = src[1].to_complex();
    let d0 = dst[0].to_complex();
    let d1 = dst[1].to_complex();
    let alpha = (d1 - d0.clone())
        .checked_div(&(s1 - s0.clone()))
        .ok_or(GeometryError::DegenerateSource)?;
    let beta = d0 - alpha.clone() * s0;
    if alpha.is_zero() {
        return Err(GeometryError::DegenerateSource);
    }
    let sim = Similarity { alpha, beta };
    if sim.apply(&src[2]) != dst[2] {
        return Err(GeometryError::NotDirectlySimilar);
    }
    Ok(sim)
}

/// The centre of the similarity, `β / (1 − α)`.
pub fn fixed_point<S: Scalar>(sim: &Similarity<S>) -> Result<CartPoint<S>> {
    let one_minus = ExactComplex::real(S::one()) - sim.alpha.clone();
    sim.beta
        .checked_div(&one_minus)
        .map(|z| z.to_point())
        .ok_or(GeometryError::NoFixedPoint)
}

/// Circle through three points; `CollinearInput` when there is none.
pub fn circle_through_cartesian<S: Scalar>(
    p1: &CartPoint<S>,
    p2: &CartPoint<S>,
    p3: &CartPoint<S>,
) -> Result<CartCircle<S>> {
    // d·x + e·y + f = −(x² + y²) at each point, by Cramer's rule.
    let pts = [p1, p2, p3];
    let rhs: Vec<S> = pts.iter().map(|p| -(p.x.square() + p.y.square())).collect();
    let det2 = |a: &S, b: &S, c: &S, d: &S| mul(a, d) - mul(b, c);
    let det = |col0: [&S; 3], col1: [&S; 3], col2: [&S; 3]| -> S {
        mul(col0[0], &det2(col1[1], col2[1], col1[2], col2[2]))
            - mul(col0[1], &det2(col1[0], col2[0], col1[2], col2[2]))
            + mul(col0[2], &det2(col1[0], col2[0], col1[1], col2[1]))
    };
    let one = S::one();
    let xs = [&p1.x, &p2.x, &p3.x];
    let ys = [&p1.y, &p2.y, &p3.y];
    let ones = [&one, &one, &one];
    let rs = [&rhs[0], &rhs[1], &rhs[2]];
    let main = det(xs, ys, ones);
    if main.is_zero() {
        return Err(GeometryError::CollinearInput);
    }
    let solve = |n: S| n.checked_div(&main).expect("nonzero determinant");
    Ok(CartCircle::new(
        solve(det(rs, ys, ones)),
        solve(det(xs, rs, ones)),
        solve(det(xs, ys, rs)),
    ))
}

/// Parameters `(v, w, u, h, k)`.
#[derive(Clone, Debug)]
pub struct CartesianConfig<S> {
    pub v: S,
    pub w: S,
    pub u: S,
    pub h: S,
    pub k: S,
}

impl<S: Scalar> CartesianConfig<S> {
    pub fn new(v: S, w: S, u: S, h: S, k: S) -> Result<Self> {
        let wv = w.clone() - &v;
        match wv.sign() {
            Some(o) if !o.is_gt() => {
                return Err(GeometryError::DegenerateConfig("w must exceed v".into()))
            }
            None if wv.is_zero() => {
                return Err(GeometryError::DegenerateConfig("w must exceed v".into()))
            }
            _ => {}
        }
        let two = S::from_int(2);
        let fail = |msg: &str| Err(GeometryError::DegenerateConfig(msg.into()));
        if (u.clone() - &v).is_zero() {
            return fail("u = v puts Q at B");
        }
        if (u.clone() - &w).is_zero() {
            return fail("u = w puts Q at C");
        }
        if h.is_zero() {
            return fail("h = 0 puts R at A");
        }
        if (h.clone() - &two).is_zero() {
            return fail("h = 2 puts R at C");
        }
        if k.is_zero() {
            return fail("k = 0 puts P at A");
        }
        if (k.clone() - &two).is_zero() {
            return fail("k = 2 puts P at B");
        }
        Ok(Self { v, w, u, h, k })
    }

    pub fn vertices(&self) -> [CartPoint<S>; 3] {
        let two = S::from_int(2);
        [
            CartPoint::origin(),
            CartPoint::new(two.clone(), mul(&two, &self.v)),
            CartPoint::new(two.clone(), mul(&two, &self.w)),
        ]
    }

    /// P on AB, Q on BC, R on CA.
    pub fn side_points(&self) -> [CartPoint<S>; 3] {
        let two = S::from_int(2);
        [
            CartPoint::new(self.k.clone(), mul(&self.k, &self.v)),
            CartPoint::new(two.clone(), mul(&two, &self.u)),
            CartPoint::new(self.h.clone(), mul(&self.h, &self.w)),
        ]
    }
}

/// Circles BPQ, CQR and ARP fitted through their defining points.
pub fn fitted_circles<S: Scalar>(cfg: &CartesianConfig<S>) -> Result<[CartCircle<S>; 3]> {
    let [a, b, c] = cfg.vertices();
    let [p, q, r] = cfg.side_points();
    Ok([
        circle_through_cartesian(&b, &p, &q)?,
        circle_through_cartesian(&c, &q, &r)?,
        circle_through_cartesian(&a, &r, &p)?,
    ])
}

/// The closed-form equations of circles BPQ, CQR and ARP; the last is divided
/// through by `v − w` to make it monic.
pub fn closed_form_circles<S: Scalar>(cfg: &CartesianConfig<S>) -> [CartCircle<S>; 3] {
    let CartesianConfig { v, w, u, h, k } = cfg;
    let one = S::one();
    let two = S::from_int(2);
    let v2 = v.square() + &one;
    let w2 = w.square() + &one;
    let bpq = CartCircle::new(
        mul(&two, &(mul(u, v) - &one)) - mul(k, &v2),
        -mul(&two, &(u.clone() + v)),
        mul(&two, &mul(k, &v2)),
    );
    let cqr = CartCircle::new(
        mul(&two, &(mul(u, w) - &one)) - mul(h, &w2),
        -mul(&two, &(u.clone() + w)),
        mul(&two, &mul(h, &w2)),
    );
    let vw = v.clone() - w;
    let div = |x: S| x.checked_div(&vw).expect("w > v");
    let arp = CartCircle::new(
        div(mul(&mul(k, w), &v2) - mul(&mul(h, v), &w2)),
        div(mul(h, &w2) - mul(k, &v2)),
        S::zero(),
    );
    [bpq, cqr, arp]
}

/// The closed-form centres D (of ARP), E (of BPQ) and F (of CQR). F is read as
/// `(½(h(w² + 1) − 2(uw − 1)), u + w)`, the reading symmetric with E.
pub fn closed_form_centers<S: Scalar>(cfg: &CartesianConfig<S>) -> [CartPoint<S>; 3] {
    let CartesianConfig { v, w, u, h, k } = cfg;
    let one = S::one();
    let two = S::from_int(2);
    let half = S::from_ratio(1, 2);
    let v2 = v.square() + &one;
    let w2 = w.square() + &one;
    let scale = S::one()
        .checked_div(&mul(&two, &(v.clone() - w)))
        .expect("w > v");
    let d = CartPoint::new(
        mul(&scale, &(mul(&mul(h, v), &w2) - mul(&mul(k, w), &v2))),
        mul(&scale, &(mul(k, &v2) - mul(h, &w2))),
    );
    let e = CartPoint::new(
        mul(&half, &(mul(k, &v2) - mul(&two, &(mul(u, v) - &one)))),
        u.clone() + v,
    );
    let f = CartPoint::new(
        mul(&half, &(mul(h, &w2) - mul(&two, &(mul(u, w) - &one)))),
        u.clone() + w,
    );
    [d, e, f]
}

/// Every constructed object of the general configuration.
#[derive(Clone, Debug)]
pub struct CartesianFigure<S> {
    pub config: CartesianConfig<S>,
    pub vertices: [CartPoint<S>; 3],
    pub side_points: [CartPoint<S>; 3],
    /// BPQ, CQR, ARP.
    pub circles: [CartCircle<S>; 3],
    /// D, E, F: centres of ARP, BPQ, CQR.
    pub centers: [CartPoint<S>; 3],
    pub similarity: Similarity<S>,
    pub miquel_point: CartPoint<S>,
}

/// Assembles the figure without checking any claim: the similarity is fixed
/// by A ↦ D and B ↦ E alone.
pub fn assemble_cartesian_figure<S: Scalar>(
    cfg: &CartesianConfig<S>,
) -> Result<CartesianFigure<S>> {
    let circles = fitted_circles(cfg)?;
    let centers = [
        circles[2].center(),
        circles[0].center(),
        circles[1].center(),
    ];
    let vertices = cfg.vertices();
    let alpha = (centers[1].to_complex() - centers[0].to_complex())
        .checked_div(&(vertices[1].to_complex() - vertices[0].to_complex()))
        .ok_or(GeometryError::DegenerateSource)?;
    let beta = centers[0].to_complex() - alpha.clone() * vertices[0].to_complex();
    let similarity = Similarity::new(alpha, beta)?;
    let miquel_point = fixed_point(&similarity)?;
    Ok(CartesianFigure {
        config: cfg.clone(),
        vertices,
        side_points: cfg.side_points(),
        circles,
        centers,
        similarity,
        miquel_point,
    })
}

/// Builds the figure and insists that ABC ↦ DEF is a direct similarity
/// whose fixed point lies on all three circles.
pub fn build_cartesian_figure<S: Scalar>(cfg: &CartesianConfig<S>) -> Result<CartesianFigure<S>> {
    let fig = assemble_cartesian_figure(cfg)?;
    let checked = similarity_from_correspondence(&fig.vertices, &fig.centers)?;
    debug_assert_eq!(checked, fig.similarity);
    for (name, circle) in ["BPQ", "CQR", "ARP"].into_iter().zip(fig.circles.iter()) {
        if !circle.contains(&fig.miquel_point) {
            return Err(GeometryError::MiquelVerificationFailed(name));
        }
    }
    Ok(fig)
}

impl Similarity<crate::scalar::ExactRational> {
    /// Approximate `|α|` and `arg α` (radians), to 12 significant digits.
    pub fn alpha_polar_approx(&self) -> (String, String) {
        let re = self.alpha.re.to_f64();
        let im = self.alpha.im.to_f64();
        (sig12(re.hypot(im)), sig12(im.atan2(re)))
    }
}

fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{:.11e}", x)
        .parse::<f64>()
        .map(|r| r.to_string())
        .unwrap_or_else(|_| x.to_string())
}

/// `|α|²·AB² − DE²`; zero when the scale factor is the side ratio.
pub fn scale_witness<S: Scalar>(fig: &CartesianFigure<S>) -> S {
    let [a, b, _] = &fig.vertices;
    let [d, e, _] = &fig.centers;
    mul(&fig.similarity.alpha.norm_squared(), &a.distance_squared(b)) - d.distance_squared(e)
}

/// Fixed point of the similarity taking ABC to DEF, checked against all
/// three circles.
pub fn miquel_point<S: Scalar>(cfg: &CartesianConfig<S>) -> Result<CartPoint<S>> {
    Ok(build_cartesian_figure(cfg)?.miquel_point)
}

/// The squared, cross-multiplied side-ratio identities; all vanish when the
/// closed-form ratios hold.
pub fn ratio_witnesses<S: Scalar>(
    cfg: &CartesianConfig<S>,
    centers: &[CartPoint<S>; 3],
) -> Vec<(&'static str, S)> {
    let [d, e, f] = centers;
    let [a, b, c] = cfg.vertices();
    let one = S::one();
    let de = d.distance_squared(e);
    let ef = e.distance_squared(f);
    let df = d.distance_squared(f);
    let v2 = cfg.v.square() + &one;
    let w2 = cfg.w.square() + &one;
    let wv2 = (cfg.w.clone() - &cfg.v).square();
    vec![
        ("DE²(w−v)² − EF²(v²+1)", mul(&de, &wv2) - mul(&ef, &v2)),
        ("DF²(v²+1) − DE²(w²+1)", mul(&df, &v2) - mul(&de, &w2)),
        (
            "DE²·BC² − EF²·AB²",
            mul(&de, &b.distance_squared(&c)) - mul(&ef, &a.distance_squared(&b)),
        ),
    ]
}

pub fn ratio_identities<S: Scalar>(cfg: &CartesianConfig<S>) -> Result<bool> {
    let circles = fitted_circles(cfg)?;
    let centers = [
        circles[2].center(),
        circles[0].center(),
        circles[1].center(),
    ];
    Ok(ratio_witnesses(cfg, &centers)
        .iter()
        .all(|(_, w)| w.is_zero()))
}

/// Second common point of two circles that share `known`: intersect the
/// radical line with the first circle and drop the known root.
pub fn second_common_point<S: Scalar>(
    c1: &CartCircle<S>,
    c2: &CartCircle<S>,
    known: &CartPoint<S>,
) -> Result<CartPoint<S>> {
    if !c1.contains(known) || !c2.contains(known) {
        return Err(GeometryError::KnownPointNotIncident);
    }
    // Radical line (d1 − d2)x + (e1 − e2)y + … = 0 has direction (−Δe, Δd).
    let dx = c2.e.clone() - &c1.e;
    let dy = c1.d.clone() - &c2.d;
    let len = dx.square() + dy.square();
    let two = S::from_int(2);
    let lin =
        mul(&two, &(mul(&known.x, &dx) + mul(&known.y, &dy))) + mul(&c1.d, &dx) + mul(&c1.e, &dy);
    let t = (-lin)
        .checked_div(&len)
        .ok_or(GeometryError::DegenerateConfig(
            "circles are concentric".into(),
        ))?;
    Ok(CartPoint::new(
        known.x.clone() + mul(&t, &dx),
        known.y.clone() + mul(&t, &dy),
    ))
}

/// One checked statement about the general configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CartesianClaim {
    CirclesMatchClosedForm,
    CentersMatchClosedForm,
    DirectSimilarity,
    FixedPointOnCircles,
    RatioIdentities,
    ScaleIsSideRatio,
}

impl CartesianClaim {
    pub const ALL: [CartesianClaim; 6] = [
        CartesianClaim::CirclesMatchClosedForm,
        CartesianClaim::CentersMatchClosedForm,
        CartesianClaim::DirectSimilarity,
        CartesianClaim::FixedPointOnCircles,
        CartesianClaim::RatioIdentities,
        CartesianClaim::ScaleIsSideRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CartesianClaim::CirclesMatchClosedForm => "circles_match_closed_form",
            CartesianClaim::CentersMatchClosedForm => "centers_match_closed_form",
            CartesianClaim::DirectSimilarity => "ABC_to_DEF_direct_similarity",
            CartesianClaim::FixedPointOnCircles => "fixed_point_on_circles",
            CartesianClaim::RatioIdentities => "ratio_identities",
            CartesianClaim::ScaleIsSideRatio => "alpha_modulus_is_side_ratio",
        }
    }
}

/// Quantities that vanish exactly when the claim holds.
pub fn cartesian_witnesses<S: Scalar>(
    fig: &CartesianFigure<S>,
    claim: CartesianClaim,
) -> Vec<(&'static str, S)> {
    match claim {
        CartesianClaim::CirclesMatchClosedForm => {
            let closed = closed_form_circles(&fig.config);
            let names = [
                ["BPQ.d", "BPQ.e", "BPQ.f"],
                ["CQR.d", "CQR.e", "CQR.f"],
                ["ARP.d", "ARP.e", "ARP.f"],
            ];
            let mut out = Vec::new();
            for ((fit, pr), n) in fig.circles.iter().zip(closed.iter()).zip(names) {
                out.push((n[0], fit.d.clone() - &pr.d));
                out.push((n[1], fit.e.clone() - &pr.e));
                out.push((n[2], fit.f.clone() - &pr.f));
            }
            out
        }
        CartesianClaim::CentersMatchClosedForm => {
            let closed = closed_form_centers(&fig.config);
            let names = [["D.x", "D.y"], ["E.x", "E.y"], ["F.x", "F.y"]];
            let mut out = Vec::new();
            for ((fit, pr), n) in fig.centers.iter().zip(closed.iter()).zip(names) {
                out.push((n[0], fit.x.clone() - &pr.x));
                out.push((n[1], fit.y.clone() - &pr.y));
            }
            out
        }
        CartesianClaim::DirectSimilarity => {
            // (E − D)(C − A) − (F − D)(B − A), real and imaginary parts.
            let [a, b, c] = &fig.vertices;
            let [d, e, f] = &fig.centers;
            let z = (e.to_complex() - d.to_complex()) * (c.to_complex() - a.to_complex())
                - (f.to_complex() - d.to_complex()) * (b.to_complex() - a.to_complex());
            vec![("Re cross", z.re), ("Im cross", z.im)]
        }
        CartesianClaim::FixedPointOnCircles => ["BPQ(S)", "CQR(S)", "ARP(S)"]
            .into_iter()
            .zip(fig.circles.iter())
            .map(|(n, c)| (n, c.form(&fig.miquel_point)))
            .collect(),
        CartesianClaim::RatioIdentities => ratio_witnesses(&fig.config, &fig.centers),
        CartesianClaim::ScaleIsSideRatio => vec![("|α|²·AB² − DE²", scale_witness(fig))],
    }
}

#[derive(Clone, Debug)]
pub struct CartesianReport {
    pub checks: Vec<(CartesianClaim, bool)>,
    pub pass: bool,
}

impl CartesianReport {
    pub fn passed(&self, claim: CartesianClaim) -> bool {
        self.checks.iter().any(|&(c, ok)| c == claim && ok)
    }
}

pub fn verify_cartesian<S: Scalar>(fig: &CartesianFigure<S>) -> CartesianReport {
    let checks: Vec<(CartesianClaim, bool)> = CartesianClaim::ALL
        .iter()
        .map(|&c| {
            (
                c,
                cartesian_witnesses(fig, c).iter().all(|(_, w)| w.is_zero()),
            )
        })
        .collect();
    let pass = checks.iter().all(|&(_, ok)| ok);
    CartesianReport { checks, pass }
}

/// `x·A + y·B + z·C` for the normalized triple.
pub fn areal_to_cartesian<S: Scalar>(
    p: &ArealPoint<S>,
    triangle: &[CartPoint<S>; 3],
) -> Result<CartPoint<S>> {
    let n = p.normalized()?;
    let [a, b, c] = triangle;
    Ok(CartPoint::new(
        mul(&n.x, &a.x) + mul(&n.y, &b.x) + mul(&n.z, &c.x),
        mul(&n.x, &a.y) + mul(&n.y, &b.y) + mul(&n.z, &c.y),
    ))
}

/// A general configuration induced by the singular rule, with the matching
/// areal parameters.
#[derive(Clone, Debug)]
pub struct SingularBridge<S> {
    pub config: CartesianConfig<S>,
    /// `n = 1 − k/2`.
    pub n: S,
    /// `a² = 4(w − v)²`, `b² = 4(w² + 1)`, `c² = 4(v² + 1)`.
    pub a2: S,
    pub b2: S,
    pub c2: S,
}

/// Choose Q and R by the singular rule: Q is where circle CAP meets BC
/// again and R where circle BCP meets CA again.
pub fn singular_bridge<S: Scalar>(v: S, w: S, k: S) -> Result<SingularBridge<S>> {
    let two = S::from_int(2);
    let one = S::one();
    let a = CartPoint::origin();
    let b = CartPoint::new(two.clone(), mul(&two, &v));
    let c = CartPoint::new(two.clone(), mul(&two, &w));
    let p = CartPoint::new(k.clone(), mul(&k, &v));
    let bad = |e: GeometryError| GeometryError::DegenerateConfig(e.to_string());
    let cap = circle_through_cartesian(&c, &a, &p).map_err(bad)?;
    let bcp = circle_through_cartesian(&b, &c, &p).map_err(bad)?;
    // On x = 2: y² + e·y + (4 + 2d + f) = 0, one root is 2w.
    let u = mul(&S::from_ratio(1, 2), &(-cap.e.clone() - mul(&two, &w)));
    // On (t, tw): t²(1 + w²) + t(d + e·w) + f = 0, one root is t = 2.
    let h = (-(bcp.d.clone() + mul(&bcp.e, &w)))
        .checked_div(&(w.square() + &one))
        .expect("1 + w² is nonzero")
        - &two;
    let config = CartesianConfig::new(v.clone(), w.clone(), u, h, k.clone())?;
    let four = S::from_int(4);
    Ok(SingularBridge {
        n: one.clone() - mul(&S::from_ratio(1, 2), &k),
        a2: mul(&four, &(w.clone() - &v).square()),
        b2: mul(&four, &(w.square() + &one)),
        c2: mul(&four, &(v.square() + &one)),
        config,
    })
}

/// Rebuilds the bridged configuration in areal form and checks that Q, R
/// and S land on their Cartesian counterparts.
pub fn bridge_consistent<S: Scalar>(bridge: &SingularBridge<S>) -> Result<bool> {
    let metric = TriangleMetric::new(bridge.a2.clone(), bridge.b2.clone(), bridge.c2.clone())?;
    let areal = build_figure(&SingularConfig::new(metric, bridge.n.clone())?)?;
    let fig = build_cartesian_figure(&bridge.config)?;
    let tri = &fig.vertices;
    let [_, q, r] = &fig.side_points;
    Ok(areal_to_cartesian(&areal.q, tri)? == *q
        && areal_to_cartesian(&areal.r, tri)? == *r
        && areal_to_cartesian(&areal.s, tri)? == fig.miquel_point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactRational;

    type Q = ExactRational;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn p(x: &str, y: &str) -> CartPoint<Q> {
        CartPoint::new(q(x), q(y))
    }

    fn circle(d: &str, e: &str, f: &str) -> CartCircle<Q> {
        CartCircle::new(q(d), q(e), q(f))
    }

    fn instance_two() -> CartesianConfig<Q> {
        CartesianConfig::new(q("0"), q("1"), q("1/2"), q("1"), q("1")).unwrap()
    }

    fn cz(re: &str, im: &str) -> ExactComplex<Q> {
        ExactComplex::new(q(re), q(im))
    }

    #[test]
    fn circles_through_three_points() {
        assert_eq!(
            circle_through_cartesian(&p("2", "0"), &p("1", "0"), &p("2", "1")).unwrap(),
            circle("-3", "-1", "2")
        );
        assert_eq!(
            circle_through_cartesian(&p("0", "0"), &p("2", "0"), &p("0", "2")).unwrap(),
            circle("-2", "-2", "0")
        );
        assert_eq!(
            circle_through_cartesian(&p("0", "0"), &p("1", "1"), &p("2", "2")).unwrap_err(),
            GeometryError::CollinearInput
        );
    }

    #[test]
    fn closed_form_circles_at_instance_two() {
        let cfg = instance_two();
        let [bpq, cqr, arp] = closed_form_circles(&cfg);
        assert_eq!(bpq, circle("-3", "-1", "2"));
        assert_eq!(cqr, circle("-3", "-3", "4"));
        assert_eq!(arp, circle("-1", "-1", "0"));
        let [a, b, c] = cfg.vertices();
        let [pp, qq, rr] = cfg.side_points();
        assert!(bpq.contains(&b) && bpq.contains(&pp) && bpq.contains(&qq));
        assert!(cqr.contains(&c) && cqr.contains(&qq) && cqr.contains(&rr));
        assert!(arp.contains(&a) && arp.contains(&rr) && arp.contains(&pp));
        assert_eq!(fitted_circles(&cfg).unwrap(), [bpq, cqr, arp]);
    }

    #[test]
    fn closed_form_centers_at_instance_two() {
        let [d, e, f] = closed_form_centers(&instance_two());
        assert_eq!(d, p("1/2", "1/2"));
        assert_eq!(e, p("3/2", "1/2"));
        assert_eq!(f, p("3/2", "3/2"));
    }

    #[test]
    fn similarities_from_correspondences() {
        let cfg = instance_two();
        let abc = cfg.vertices();
        let id = similarity_from_correspondence(&abc, &abc).unwrap();
        assert_eq!(id, Similarity::identity());
        let def = closed_form_centers(&cfg);
        let sim = similarity_from_correspondence(&abc, &def).unwrap();
        assert_eq!(sim.alpha, cz("1/2", "0"));
        assert_eq!(sim.beta, cz("1/2", "1/2"));
        let [a, b, c] = abc.clone();
        assert_eq!(
            similarity_from_correspondence(&abc, &[a, c, b]).unwrap_err(),
            GeometryError::NotDirectlySimilar
        );
        let same = [p("1", "1"), p("1", "1"), p("0", "0")];
        assert_eq!(
            similarity_from_correspondence(&same, &abc).unwrap_err(),
            GeometryError::DegenerateSource
        );
    }

    #[test]
    fn similarity_algebra() {
        let s = Similarity::new(cz("1/2", "1/3"), cz("2", "-1")).unwrap();
        let t = s.compose(&s.inverse());
        assert_eq!(t, Similarity::identity());
        let z = p("3/7", "-5");
        assert_eq!(s.inverse().apply(&s.apply(&z)), z);
    }

    #[test]
    fn fixed_points() {
        let s = Similarity::new(cz("1/2", "0"), cz("1/2", "1/2")).unwrap();
        assert_eq!(fixed_point(&s).unwrap(), p("1", "1"));
        let s = Similarity::new(cz("2", "0"), cz("0", "0")).unwrap();
        assert_eq!(fixed_point(&s).unwrap(), p("0", "0"));
        let s = Similarity::new(cz("1", "0"), cz("1", "0")).unwrap();
        assert_eq!(fixed_point(&s).unwrap_err(), GeometryError::NoFixedPoint);
    }

    #[test]
    fn miquel_points() {
        let s = miquel_point(&instance_two()).unwrap();
        assert_eq!(s, p("1", "1"));
        let [bpq, cqr, arp] = closed_form_circles(&instance_two());
        assert!(bpq.contains(&s) && cqr.contains(&s) && arp.contains(&s));

        let cfg = CartesianConfig::new(q("0"), q("1"), q("1/2"), q("1/2"), q("1")).unwrap();
        let fig = build_cartesian_figure(&cfg).unwrap();
        assert_eq!(fig.miquel_point, p("4/5", "2/5"));
        assert_eq!(fig.similarity.alpha, cz("1/2", "1/4"));
        assert!(fig.circles.iter().all(|c| c.contains(&fig.miquel_point)));

        let cfg = CartesianConfig::new(q("-1/3"), q("5/2"), q("7/4"), q("3/5"), q("-2/7")).unwrap();
        assert_eq!(
            miquel_point(&cfg).unwrap(),
            p("-16496077/23681149", "23730059/23681149")
        );
    }

    #[test]
    fn config_rejects_degenerate_parameters() {
        let bad = |v: &str, w: &str, u: &str, h: &str, k: &str| {
            CartesianConfig::new(q(v), q(w), q(u), q(h), q(k)).unwrap_err()
        };
        assert!(matches!(
            bad("0", "1", "1/2", "1", "0"),
            GeometryError::DegenerateConfig(_)
        ));
        assert!(matches!(
            bad("1", "0", "1/2", "1", "1"),
            GeometryError::DegenerateConfig(_)
        ));
        assert!(matches!(
            bad("0", "1", "1", "1", "1"),
            GeometryError::DegenerateConfig(_)
        ));
        assert!(matches!(
            bad("0", "1", "0", "1", "1"),
            GeometryError::DegenerateConfig(_)
        ));
        assert!(matches!(
            bad("0", "1", "1/2", "2", "1"),
            GeometryError::DegenerateConfig(_)
        ));
        assert!(matches!(
            bad("0", "1", "1/2", "1", "2"),
            GeometryError::DegenerateConfig(_)
        ));
    }

    #[test]
    fn ratios_hold_and_detect_perturbation() {
        let cfg = instance_two();
        assert!(ratio_identities(&cfg).unwrap());
        let [d, e, f] = closed_form_centers(&cfg);
        assert_eq!(d.distance_squared(&e), q("1"));
        assert_eq!(e.distance_squared(&f), q("1"));
        let moved = CartPoint::new(f.x.clone() + q("1"), f.y.clone());
        let w = ratio_witnesses(&cfg, &[d, e, moved]);
        assert!(w.iter().any(|(_, x)| !Scalar::is_zero(x)));
    }

    #[test]
    fn polar_rendering_and_scale() {
        let fig = build_cartesian_figure(&instance_two()).unwrap();
        assert_eq!(
            fig.similarity.alpha_polar_approx(),
            ("0.5".into(), "0".into())
        );
        assert!(Scalar::is_zero(&scale_witness(&fig)));
        let s = Similarity::new(cz("0", "1"), cz("0", "0")).unwrap();
        assert_eq!(s.alpha_polar_approx().1, "1.57079632679");
    }

    #[test]
    fn bridge_from_singular_rule() {
        let bridge = singular_bridge(q("0"), q("1"), q("1")).unwrap();
        assert_eq!(bridge.config.u, q("1/2"));
        assert_eq!(bridge.config.h, q("1/2"));
        assert_eq!(
            [&bridge.n, &bridge.a2, &bridge.b2, &bridge.c2],
            [&q("1/2"), &q("4"), &q("8"), &q("4")]
        );
        let fig = build_cartesian_figure(&bridge.config).unwrap();
        assert_eq!(fig.miquel_point, p("4/5", "2/5"));
    }

    #[test]
    fn bridge_matches_singular_figure() {
        for (v, w, k) in [("0", "1", "1"), ("-1/3", "5/2", "3/7"), ("1", "3", "-3")] {
            let bridge = singular_bridge(q(v), q(w), q(k)).unwrap();
            assert!(bridge_consistent(&bridge).unwrap(), "{v} {w} {k}");
        }
    }

    #[test]
    fn bridge_degeneracy_scan() {
        // Integer and half-integer k in [-8, 8] away from the excluded 0 and 2.
        let hits: Vec<Q> = (-16..=16)
            .map(|i| Q::from_ratio(i, 2))
            .filter(|k| *k != q("0") && *k != q("2"))
            .filter(|k| singular_bridge(q("0"), q("1"), k.clone()).is_err())
            .collect();
        assert_eq!(hits, vec![q("4")]);
        let err = singular_bridge(q("0"), q("1"), q("4")).unwrap_err();
        assert!(matches!(err, GeometryError::DegenerateConfig(m) if m.contains("h = 2")));
        // Q reaches C when k = 2 − 2(w − v)²/(v² + 1), which is 0 for v = 0, w = 1.
        let err = singular_bridge(q("1"), q("3"), q("-2")).unwrap_err();
        assert!(matches!(err, GeometryError::DegenerateConfig(m) if m.contains("u = w")));
    }

    #[test]
    fn report_at_instance_two_and_negative_control() {
        let mut fig = assemble_cartesian_figure(&instance_two()).unwrap();
        assert!(verify_cartesian(&fig).pass);
        fig.centers[2] = p("5/2", "3/2");
        let report = verify_cartesian(&fig);
        assert!(!report.passed(CartesianClaim::DirectSimilarity));
        assert!(!report.passed(CartesianClaim::CentersMatchClosedForm));
        assert!(report.passed(CartesianClaim::CirclesMatchClosedForm));
    }

    #[test]
    fn radical_line_intersection() {
        let cfg = instance_two();
        let [bpq, _, arp] = closed_form_circles(&cfg);
        let [pp, _, _] = cfg.side_points();
        assert_eq!(second_common_point(&bpq, &arp, &pp).unwrap(), p("1", "1"));
    }

    #[test]
    fn areal_to_cartesian_map() {
        let tri = [p("0", "0"), p("2", "0"), p("2", "2")];
        let s = ArealPoint::new(q("3"), q("1"), q("1"));
        assert_eq!(areal_to_cartesian(&s, &tri).unwrap(), p("4/5", "2/5"));
    }
}
