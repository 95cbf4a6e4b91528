//! Areal (barycentric) geometry relative to a reference triangle ABC.
//!
//! Points and lines are homogeneous triples and are never normalized
//! implicitly. A circle is stored through the three linear coefficients
//! `(u, v, w)` of
//!
//! ```text
//! a²yz + b²zx + c²xy − (x + y + z)(ux + vy + wz) = 0
//! ```
//!
//! whose quadratic part is fixed by the triangle, so `(u, v, w)` is unique.

use crate::error::GeometryError;
use crate::scalar::Scalar;

pub type Result<T> = std::result::Result<T, GeometryError>;

fn mul<S: Scalar>(a: &S, b: &S) -> S {
    a.clone() * b
}

fn cross<S: Scalar>(p: [&S; 3], q: [&S; 3]) -> [S; 3] {
    [
        mul(p[1], q[2]) - mul(p[2], q[1]),
        mul(p[2], q[0]) - mul(p[0], q[2]),
        mul(p[0], q[1]) - mul(p[1], q[0]),
    ]
}

fn det3<S: Scalar>(r0: [&S; 3], r1: [&S; 3], r2: [&S; 3]) -> S {
    let c = cross(r1, r2);
    mul(r0[0], &c[0]) + mul(r0[1], &c[1]) + mul(r0[2], &c[2])
}

/// True iff the two triples are proportional (all 2×2 minors vanish).
fn proportional<S: Scalar>(p: [&S; 3], q: [&S; 3]) -> bool {
    cross(p, q).iter().all(Scalar::is_zero)
}

/// Squared side lengths `a² = BC²`, `b² = CA²`, `c² = AB²`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleMetric<S> {
    pub a2: S,
    pub b2: S,
    pub c2: S,
}

impl<S: Scalar> TriangleMetric<S> {
    /// Checks positivity and realizability wherever signs are decidable.
    pub fn new(a2: S, b2: S, c2: S) -> Result<Self> {
        let metric = Self { a2, b2, c2 };
        for (name, side) in [("a²", &metric.a2), ("b²", &metric.b2), ("c²", &metric.c2)] {
            if matches!(side.sign(), Some(o) if o.is_le()) {
                return Err(GeometryError::Unrealizable(format!(
                    "{name} must be positive"
                )));
            }
        }
        let area = metric.sixteen_area_squared();
        if area.is_zero() || matches!(area.sign(), Some(o) if o.is_lt()) {
            return Err(GeometryError::Unrealizable(
                "side lengths violate the strict triangle inequality".into(),
            ));
        }
        Ok(metric)
    }

    /// `2a²b² + 2b²c² + 2c²a² − a⁴ − b⁴ − c⁴`, sixteen times the squared area.
    pub fn sixteen_area_squared(&self) -> S {
        let two = S::from_int(2);
        two * (mul(&self.a2, &self.b2) + mul(&self.b2, &self.c2) + mul(&self.c2, &self.a2))
            - self.a2.square()
            - self.b2.square()
            - self.c2.square()
    }

    pub fn scaled(&self, factor: &S) -> Self {
        Self {
            a2: mul(&self.a2, factor),
            b2: mul(&self.b2, factor),
            c2: mul(&self.c2, factor),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ArealPoint<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> ArealPoint<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    pub fn vertex_a() -> Self {
        Self::new(S::one(), S::zero(), S::zero())
    }

    pub fn vertex_b() -> Self {
        Self::new(S::zero(), S::one(), S::zero())
    }

    pub fn vertex_c() -> Self {
        Self::new(S::zero(), S::zero(), S::one())
    }

    pub fn coords(&self) -> [&S; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn sum(&self) -> S {
        self.x.clone() + &self.y + &self.z
    }

    pub fn is_at_infinity(&self) -> bool {
        self.sum().is_zero()
    }

    /// Representative with `x + y + z = 1`.
    pub fn normalized(&self) -> Result<Self> {
        let s = self.sum();
        let div = |c: &S| c.checked_div(&s).ok_or(GeometryError::PointAtInfinity);
        Ok(Self::new(div(&self.x)?, div(&self.y)?, div(&self.z)?))
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(mul(&self.x, k), mul(&self.y, k), mul(&self.z, k))
    }

    /// Same projective point with the smallest representative the scalar
    /// domain can find.
    pub fn primitive(&self) -> Self {
        let mut c = [self.x.clone(), self.y.clone(), self.z.clone()];
        S::make_primitive(&mut c);
        let [x, y, z] = c;
        Self::new(x, y, z)
    }

    /// Projective equality; a zero triple equals nothing.
    pub fn same_point(&self, other: &Self) -> bool {
        !self.is_zero() && !other.is_zero() && proportional(self.coords(), other.coords())
    }

    fn combine(&self, k: &S, other: &Self, m: &S) -> Self {
        Self::new(
            mul(&self.x, k) + mul(&other.x, m),
            mul(&self.y, k) + mul(&other.y, m),
            mul(&self.z, k) + mul(&other.z, m),
        )
    }
}

#[derive(Clone, Debug)]
pub struct ArealLine<S> {
    pub l: S,
    pub m: S,
    pub n_coef: S,
}

impl<S: Scalar> ArealLine<S> {
    pub fn new(l: S, m: S, n_coef: S) -> Self {
        Self { l, m, n_coef }
    }

    pub fn coords(&self) -> [&S; 3] {
        [&self.l, &self.m, &self.n_coef]
    }

    pub fn eval(&self, p: &ArealPoint<S>) -> S {
        mul(&self.l, &p.x) + mul(&self.m, &p.y) + mul(&self.n_coef, &p.z)
    }

    pub fn contains(&self, p: &ArealPoint<S>) -> bool {
        self.eval(p).is_zero()
    }

    pub fn same_line(&self, other: &Self) -> bool {
        let zero = |c: [&S; 3]| c.iter().all(|v| v.is_zero());
        !zero(self.coords()) && !zero(other.coords()) && proportional(self.coords(), other.coords())
    }
}

#[derive(Clone, Debug)]
pub struct ArealCircle<S> {
    pub metric: TriangleMetric<S>,
    pub u: S,
    pub v: S,
    pub w: S,
}

impl<S: Scalar> ArealCircle<S> {
    pub fn new(metric: TriangleMetric<S>, u: S, v: S, w: S) -> Self {
        Self { metric, u, v, w }
    }

    /// The circle through A, B and C.
    pub fn circumcircle(metric: TriangleMetric<S>) -> Self {
        Self::new(metric, S::zero(), S::zero(), S::zero())
    }

    fn linear(&self, p: &ArealPoint<S>) -> S {
        mul(&self.u, &p.x) + mul(&self.v, &p.y) + mul(&self.w, &p.z)
    }

    /// Value of the defining quadratic form at `p`.
    pub fn form(&self, p: &ArealPoint<S>) -> S {
        let TriangleMetric { a2, b2, c2 } = &self.metric;
        mul(a2, &mul(&p.y, &p.z)) + mul(b2, &mul(&p.z, &p.x)) + mul(c2, &mul(&p.x, &p.y))
            - mul(&p.sum(), &self.linear(p))
    }

    /// Twice the symmetric bilinear form, so that
    /// `form(p + q) = form(p) + polar2(p, q) + form(q)`.
    pub fn polar2(&self, p: &ArealPoint<S>, q: &ArealPoint<S>) -> S {
        let TriangleMetric { a2, b2, c2 } = &self.metric;
        mul(a2, &(mul(&p.y, &q.z) + mul(&p.z, &q.y)))
            + mul(b2, &(mul(&p.z, &q.x) + mul(&p.x, &q.z)))
            + mul(c2, &(mul(&p.x, &q.y) + mul(&p.y, &q.x)))
            - mul(&p.sum(), &self.linear(q))
            - mul(&q.sum(), &self.linear(p))
    }

    /// Coefficients of x², y², z², yz, zx, xy in the expanded form.
    pub fn conic_coefficients(&self) -> [S; 6] {
        let TriangleMetric { a2, b2, c2 } = &self.metric;
        [
            -self.u.clone(),
            -self.v.clone(),
            -self.w.clone(),
            a2.clone() - &self.v - &self.w,
            b2.clone() - &self.w - &self.u,
            c2.clone() - &self.u - &self.v,
        ]
    }
}

pub fn line_through<S: Scalar>(p: &ArealPoint<S>, q: &ArealPoint<S>) -> Result<ArealLine<S>> {
    let [l, m, n] = cross(p.coords(), q.coords());
    if l.is_zero() && m.is_zero() && n.is_zero() {
        return Err(GeometryError::CoincidentPoints);
    }
    Ok(ArealLine::new(l, m, n))
}

pub fn intersect_lines<S: Scalar>(l1: &ArealLine<S>, l2: &ArealLine<S>) -> Result<ArealPoint<S>> {
    let [x, y, z] = cross(l1.coords(), l2.coords());
    if x.is_zero() && y.is_zero() && z.is_zero() {
        return Err(GeometryError::CoincidentLines);
    }
    Ok(ArealPoint::new(x, y, z))
}

/// The 3×3 determinant of three homogeneous triples.
pub fn determinant<S: Scalar>(p1: &ArealPoint<S>, p2: &ArealPoint<S>, p3: &ArealPoint<S>) -> S {
    det3(p1.coords(), p2.coords(), p3.coords())
}

pub fn collinear<S: Scalar>(p1: &ArealPoint<S>, p2: &ArealPoint<S>, p3: &ArealPoint<S>) -> bool {
    determinant(p1, p2, p3).is_zero()
}

/// Solve `(x+y+z)(ux+vy+wz) = a²yz + b²zx + c²xy` at the three points by
/// Cramer's rule.
pub fn circle_through<S: Scalar>(
    metric: &TriangleMetric<S>,
    p1: &ArealPoint<S>,
    p2: &ArealPoint<S>,
    p3: &ArealPoint<S>,
) -> Result<ArealCircle<S>> {
    let pts = [p1, p2, p3];
    if pts.iter().any(|p| p.is_at_infinity()) {
        return Err(GeometryError::PointAtInfinity);
    }
    let rows: Vec<[S; 3]> = pts
        .iter()
        .map(|p| {
            let s = p.sum();
            [mul(&s, &p.x), mul(&s, &p.y), mul(&s, &p.z)]
        })
        .collect();
    let rhs: Vec<S> = pts
        .iter()
        .map(|p| {
            mul(&metric.a2, &mul(&p.y, &p.z))
                + mul(&metric.b2, &mul(&p.z, &p.x))
                + mul(&metric.c2, &mul(&p.x, &p.y))
        })
        .collect();
    let col = |r: &[S; 3], j: usize, k: usize| -> [S; 3] {
        let mut c = r.clone();
        c[j] = rhs[k].clone();
        c
    };
    let det = det3(refs(&rows[0]), refs(&rows[1]), refs(&rows[2]));
    if det.is_zero() {
        return Err(GeometryError::CollinearInput);
    }
    let mut sol = Vec::with_capacity(3);
    for j in 0..3 {
        let (r0, r1, r2) = (
            col(&rows[0], j, 0),
            col(&rows[1], j, 1),
            col(&rows[2], j, 2),
        );
        let dj = det3(refs(&r0), refs(&r1), refs(&r2));
        sol.push(dj.checked_div(&det).expect("nonzero determinant"));
    }
    let w = sol.pop().unwrap();
    let v = sol.pop().unwrap();
    let u = sol.pop().unwrap();
    Ok(ArealCircle::new(metric.clone(), u, v, w))
}

fn refs<S>(r: &[S; 3]) -> [&S; 3] {
    [&r[0], &r[1], &r[2]]
}

pub fn on_circle<S: Scalar>(c: &ArealCircle<S>, p: &ArealPoint<S>) -> bool {
    c.form(p).is_zero()
}

/// The other common point of a circle and a line through a known common
/// point. A tangent line returns the known point.
///
/// With `D` a second point of the line, `λK + μD` lies on the circle iff
/// `λμ·polar2(K, D) + μ²·form(D) = 0`; dividing out the root `μ = 0` leaves
/// `form(D)·K − polar2(K, D)·D`.
pub fn second_intersection<S: Scalar>(
    c: &ArealCircle<S>,
    line: &ArealLine<S>,
    known: &ArealPoint<S>,
) -> Result<ArealPoint<S>> {
    if known.is_zero() || !line.contains(known) || !on_circle(c, known) {
        return Err(GeometryError::KnownPointNotIncident);
    }
    let [l, m, n] = line.coords();
    let candidates = [
        ArealPoint::new(S::zero(), n.clone(), -m.clone()),
        ArealPoint::new(-n.clone(), S::zero(), l.clone()),
        ArealPoint::new(m.clone(), -l.clone(), S::zero()),
    ];
    let dir = candidates
        .into_iter()
        .find(|d| !d.is_zero() && !d.same_point(known))
        .ok_or(GeometryError::KnownPointNotIncident)?;
    let other = known.combine(&c.form(&dir), &dir, &-c.polar2(known, &dir));
    if other.is_zero() {
        return Ok(known.clone());
    }
    Ok(other)
}

/// Centre of a circle in raw form, each coordinate carrying its factor ¼.
pub fn circle_center<S: Scalar>(c: &ArealCircle<S>) -> ArealPoint<S> {
    let TriangleMetric { a2, b2, c2 } = &c.metric;
    let (u, v, w) = (&c.u, &c.v, &c.w);
    let quarter = S::from_ratio(1, 4);
    let two = S::from_int(2);
    let x = -mul(
        &quarter,
        &(a2.square() - mul(a2, &(b2.clone() + c2 - mul(&two, u) + v + w))
            + mul(&(b2.clone() - c2), &(w.clone() - v))),
    );
    let y = mul(
        &quarter,
        &(mul(a2, &(b2.clone() + u - w)) - b2.square()
            + mul(b2, &(c2.clone() + u - mul(&two, v) + w))
            + mul(c2, &(w.clone() - u))),
    );
    let z = mul(
        &quarter,
        &(mul(a2, &(c2.clone() + u - v)) + mul(b2, &(c2.clone() - u + v)) - c2.square()
            + mul(c2, &(u.clone() + v - mul(&two, w)))),
    );
    ArealPoint::new(x, y, z)
}

pub fn distance_squared<S: Scalar>(
    metric: &TriangleMetric<S>,
    p1: &ArealPoint<S>,
    p2: &ArealPoint<S>,
) -> Result<S> {
    let (a, b) = (p1.normalized()?, p2.normalized()?);
    let dx = a.x - &b.x;
    let dy = a.y - &b.y;
    let dz = a.z - &b.z;
    Ok(-(mul(&metric.a2, &mul(&dy, &dz))
        + mul(&metric.b2, &mul(&dz, &dx))
        + mul(&metric.c2, &mul(&dx, &dy))))
}

/// Determinant of the three normalized triples: the signed area of the
/// triangle they span divided by the area of ABC.
pub fn signed_area_ratio<S: Scalar>(
    p1: &ArealPoint<S>,
    p2: &ArealPoint<S>,
    p3: &ArealPoint<S>,
) -> Result<S> {
    Ok(determinant(
        &p1.normalized()?,
        &p2.normalized()?,
        &p3.normalized()?,
    ))
}

/// `+1` for the orientation of ABC, `-1` for the opposite one, `0` when
/// collinear. Requires a scalar domain with decidable signs.
pub fn orientation_sign<S: Scalar>(
    p1: &ArealPoint<S>,
    p2: &ArealPoint<S>,
    p3: &ArealPoint<S>,
) -> Result<i8> {
    let d = signed_area_ratio(p1, p2, p3)?;
    let sign = d
        .sign()
        .expect("orientation_sign needs a scalar with decidable sign");
    Ok(sign as i8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactRational;

    type Q = ExactRational;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn pt(x: &str, y: &str, z: &str) -> ArealPoint<Q> {
        ArealPoint::new(q(x), q(y), q(z))
    }

    fn line(l: i64, m: i64, n: i64) -> ArealLine<Q> {
        ArealLine::new(Q::from(l), Q::from(m), Q::from(n))
    }

    fn metric() -> TriangleMetric<Q> {
        TriangleMetric::new(q("9"), q("16"), q("25")).unwrap()
    }

    fn circle(u: i64, v: i64, w: i64) -> ArealCircle<Q> {
        ArealCircle::new(metric(), Q::from(u), Q::from(v), Q::from(w))
    }

    fn assert_coords(p: &ArealPoint<Q>, want: [&str; 3]) {
        assert_eq!([&p.x, &p.y, &p.z], [&q(want[0]), &q(want[1]), &q(want[2])]);
    }

    #[test]
    fn metric_rejects_degenerate_triangles() {
        assert!(TriangleMetric::new(q("1"), q("4"), q("9")).is_err());
        assert!(TriangleMetric::new(q("0"), q("4"), q("9")).is_err());
        assert!(TriangleMetric::new(q("1"), q("1"), q("9")).is_err());
        assert_eq!(metric().sixteen_area_squared(), q("576"));
    }

    #[test]
    fn lines_through_points() {
        let l = line_through(&pt("1", "0", "0"), &pt("0", "1", "0")).unwrap();
        assert!(l.same_line(&line(0, 0, 1)));
        let aq = line_through(&pt("1", "0", "0"), &pt("0", "4", "5")).unwrap();
        assert_eq!([&aq.l, &aq.m, &aq.n_coef], [&q("0"), &q("-5"), &q("4")]);
        let br = line_through(&pt("0", "1", "0"), &pt("-1", "0", "5")).unwrap();
        assert_eq!([&br.l, &br.m, &br.n_coef], [&q("5"), &q("0"), &q("1")]);
        assert_eq!(
            line_through(&pt("1", "2", "3"), &pt("2", "4", "6")).unwrap_err(),
            GeometryError::CoincidentPoints
        );
    }

    #[test]
    fn intersections_of_lines() {
        let a = intersect_lines(&line(0, 0, 1), &line(0, 1, 0)).unwrap();
        assert!(a.same_point(&ArealPoint::vertex_a()));
        let s = intersect_lines(&line(0, -5, 4), &line(5, 0, 1)).unwrap();
        assert_coords(&s, ["-5", "20", "25"]);
        assert!(s.same_point(&pt("-1", "4", "5")));
        let c = intersect_lines(&line(1, 0, 0), &line(0, 1, 0)).unwrap();
        assert!(c.same_point(&ArealPoint::vertex_c()));
        assert_eq!(
            intersect_lines(&line(1, 2, 3), &line(-2, -4, -6)).unwrap_err(),
            GeometryError::CoincidentLines
        );
    }

    #[test]
    fn collinearity() {
        let a = ArealPoint::vertex_a();
        assert!(collinear(&a, &pt("-1", "4", "5"), &pt("0", "4", "5")));
        assert!(!collinear(
            &a,
            &ArealPoint::vertex_b(),
            &ArealPoint::vertex_c()
        ));
        assert!(collinear(
            &pt("3", "1", "7"),
            &pt("3", "1", "7"),
            &pt("2", "9", "-4")
        ));
    }

    #[test]
    fn fitted_circles() {
        let m = metric();
        let (a, b, c) = (
            ArealPoint::vertex_a(),
            ArealPoint::vertex_b(),
            ArealPoint::vertex_c(),
        );
        let p = pt("1/5", "4/5", "0");
        let circum = circle_through(&m, &a, &b, &c).unwrap();
        assert_eq!(
            [&circum.u, &circum.v, &circum.w],
            [&q("0"), &q("0"), &q("0")]
        );
        let cap = circle_through(&m, &c, &a, &p).unwrap();
        assert_eq!([&cap.u, &cap.v, &cap.w], [&q("0"), &q("5"), &q("0")]);
        let bcp = circle_through(&m, &b, &c, &p).unwrap();
        assert_eq!([&bcp.u, &bcp.v, &bcp.w], [&q("20"), &q("0"), &q("0")]);
        assert_eq!(
            circle_through(&m, &a, &b, &pt("1", "1", "0")).unwrap_err(),
            GeometryError::CollinearInput
        );
        assert_eq!(
            circle_through(&m, &a, &b, &pt("1", "-1", "0")).unwrap_err(),
            GeometryError::PointAtInfinity
        );
    }

    #[test]
    fn circle_incidence() {
        assert!(on_circle(&circle(0, 0, 0), &ArealPoint::vertex_a()));
        assert!(on_circle(&circle(0, 5, 0), &pt("0", "4", "5")));
        assert_eq!(circle(0, 5, 0).form(&ArealPoint::vertex_b()), q("-5"));
        assert!(!on_circle(&circle(0, 5, 0), &ArealPoint::vertex_b()));
    }

    #[test]
    fn second_intersections() {
        let c = ArealPoint::vertex_c();
        let qp = second_intersection(&circle(0, 5, 0), &line(1, 0, 0), &c).unwrap();
        assert!(qp.same_point(&pt("0", "4", "5")));
        let rp = second_intersection(&circle(20, 0, 0), &line(0, 1, 0), &c).unwrap();
        assert!(rp.same_point(&pt("-1", "0", "5")));
        let bp =
            second_intersection(&circle(0, 0, 0), &line(0, 0, 1), &ArealPoint::vertex_a()).unwrap();
        assert!(bp.same_point(&ArealPoint::vertex_b()));
        assert_eq!(
            second_intersection(&circle(0, 5, 0), &line(1, 0, 0), &ArealPoint::vertex_b())
                .unwrap_err(),
            GeometryError::KnownPointNotIncident
        );
    }

    #[test]
    fn tangent_line_returns_known_point() {
        // Tangent to the circumcircle at A: polar of A is c²y + b²z = 0.
        let tangent = line(0, 25, 16);
        let p = second_intersection(&circle(0, 0, 0), &tangent, &ArealPoint::vertex_a()).unwrap();
        assert!(p.same_point(&ArealPoint::vertex_a()));
    }

    #[test]
    fn centers_from_coefficients() {
        let circum = circle_center(&circle(0, 0, 0));
        // Right angle at C: circumcentre is the midpoint of AB.
        assert_coords(&circum, ["72", "72", "0"]);
        assert!(circum.same_point(&pt("1", "1", "0")));
        assert_coords(&circle_center(&circle(0, 5, 0)), ["72", "32", "40"]);
        assert_coords(&circle_center(&circle(20, 0, 0)), ["-18", "72", "90"]);
    }

    #[test]
    fn areal_distances() {
        let m = metric();
        let (a, b, c) = (
            ArealPoint::vertex_a(),
            ArealPoint::vertex_b(),
            ArealPoint::vertex_c(),
        );
        assert_eq!(distance_squared(&m, &a, &b).unwrap(), q("25"));
        assert_eq!(distance_squared(&m, &b, &c).unwrap(), q("9"));
        assert_eq!(distance_squared(&m, &c, &a).unwrap(), q("16"));
        assert_eq!(
            distance_squared(&m, &pt("2", "3", "4"), &pt("4", "6", "8")).unwrap(),
            q("0")
        );
        assert_eq!(
            distance_squared(&m, &pt("1", "-1", "0"), &a).unwrap_err(),
            GeometryError::PointAtInfinity
        );
    }

    #[test]
    fn orientations() {
        let (a, b, c) = (
            ArealPoint::vertex_a(),
            ArealPoint::vertex_b(),
            ArealPoint::vertex_c(),
        );
        assert_eq!(orientation_sign(&a, &b, &c).unwrap(), 1);
        assert_eq!(orientation_sign(&a, &c, &b).unwrap(), -1);
        assert_eq!(
            orientation_sign(&a, &pt("-1", "4", "5"), &pt("0", "4", "5")).unwrap(),
            0
        );
    }
}
