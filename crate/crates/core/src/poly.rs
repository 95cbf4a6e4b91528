//! Sparse multivariate polynomials over the rationals in canonical form.
//!
//! Terms live in a `BTreeMap` keyed by graded-lexicographic monomial order,
//! so two equal polynomials always have identical term maps and the leading
//! term is the last entry.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::EvalError;
use crate::scalar::ExactRational;

/// Upper bound on the number of indeterminates of one polynomial ring.
pub const MAX_VARS: usize = 8;

/// Exponent vector. Ordered by total degree, then lexicographically with the
/// first indeterminate most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exponents(exponents: &[u16]) -> Self {
        assert!(exponents.len() <= MAX_VARS, "too many indeterminates");
        let mut m = Self::default();
        m.0[..exponents.len()].copy_from_slice(exponents);
        m
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.0[var]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = [0u16; MAX_VARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a.checked_add(*b).expect("exponent overflow");
        }
        Self(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Self) -> Self {
        let mut out = [0u16; MAX_VARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = b - a;
        }
        Self(out)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut out = [0u16; MAX_VARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = *a.min(b);
        }
        Self(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Multivariate polynomial with rational coefficients and no stored zeros.
///
/// Constants may carry an empty indeterminate list; they combine with any
/// ring. Mixing two different nonempty indeterminate lists is a bug and
/// panics.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self {
            vars: Arc::from(Vec::<String>::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: ExactRational) -> Self {
        let mut p = Self::zero();
        let c = c.as_big_rational().clone();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(ExactRational::from(c))
    }

    /// The indeterminate `name` of the ring with indeterminates `vars`.
    pub fn var(vars: &Arc<[String]>, name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown indeterminate `{name}`"));
        let mut exps = [0u16; MAX_VARS];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), BigRational::one());
        Self {
            vars: vars.clone(),
            terms,
        }
    }

    /// Build a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms; like terms merge and zeros are dropped.
    pub fn from_terms<I>(vars: &Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ExactRational)>,
    {
        assert!(vars.len() <= MAX_VARS, "too many indeterminates");
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&mut map, m, c.as_big_rational().clone());
        }
        Self {
            vars: vars.clone(),
            terms: map,
        }
    }

    pub fn ring(names: &[&str]) -> Arc<[String]> {
        assert!(names.len() <= MAX_VARS, "too many indeterminates");
        names.iter().map(|s| s.to_string()).collect()
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<ExactRational> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .get(&Monomial::one())
                .cloned()
                .unwrap_or_else(BigRational::zero)
                .into(),
        )
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.last_key_value()
    }

    /// Canonical form. Storage is always canonical, so this only rebuilds
    /// the map; it exists so callers can state the intent.
    pub fn canonical(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    fn mul_term(&self, mono: &Monomial, c: &BigRational) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Split as `content * primitive` where the primitive part has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_split(&self) -> (ExactRational, MultiPoly) {
        let Some((_, lead)) = self.leading_term() else {
            return (ExactRational::from(1), self.clone());
        };
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if lead.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content.into(), self.scale(&inv))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(*first, |acc, m| acc.gcd(m))
    }

    pub fn div_monomial(&self, mono: &Monomial) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    assert!(mono.divides(m), "monomial does not divide polynomial");
                    (mono.quotient_of(m), c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. With a single divisor the leading term of every
    /// intermediate remainder must be divisible, so the first failure is a
    /// proof of non-divisibility.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        let vars = unify_vars(&self.vars, &divisor.vars);
        if divisor.term_count() == 1 {
            if !self.terms.keys().all(|m| lead_m.divides(m)) {
                return None;
            }
            let inv = lead_c.recip();
            let terms = self
                .terms
                .iter()
                .map(|(m, c)| (lead_m.quotient_of(m), c * &inv))
                .collect();
            return Some(Self { vars, terms });
        }
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        let lead_inv = lead_c.recip();
        while let Some((m, c)) = rem.last_key_value() {
            if !lead_m.divides(m) {
                return None;
            }
            let qm = lead_m.quotient_of(m);
            let qc = c * &lead_inv;
            for (dm, dc) in divisor.terms.iter() {
                accumulate(&mut rem, dm.mul(&qm), -(dc * &qc));
            }
            quot.insert(qm, qc);
        }
        Some(Self { vars, terms: quot })
    }

    /// Exact value at a point; every indeterminate that occurs must be
    /// assigned.
    pub fn evaluate(
        &self,
        assignment: &HashMap<String, ExactRational>,
    ) -> Result<ExactRational, EvalError> {
        let mut values: Vec<Option<BigRational>> = Vec::with_capacity(self.vars.len());
        for name in self.vars.iter() {
            values.push(assignment.get(name).map(|v| v.as_big_rational().clone()));
        }
        let mut powers: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]; self.vars.len()];
        let mut total = BigRational::zero();
        for (m, c) in self.terms.iter() {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate().take(self.vars.len()) {
                if e == 0 {
                    continue;
                }
                let Some(value) = &values[i] else {
                    return Err(EvalError::Unassigned(self.vars[i].clone()));
                };
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * value;
                    table.push(next);
                }
                term *= &table[e as usize];
            }
            total += term;
        }
        Ok(total.into())
    }

    fn binary(&self, rhs: &MultiPoly, negate: bool) -> MultiPoly {
        let vars = unify_vars(&self.vars, &rhs.vars);
        let mut terms = self.terms.clone();
        for (m, c) in rhs.terms.iter() {
            let c = if negate { -c } else { c.clone() };
            accumulate(&mut terms, *m, c);
        }
        MultiPoly { vars, terms }
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn unify_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
    if Arc::ptr_eq(a, b) || b.is_empty() {
        return a.clone();
    }
    if a.is_empty() {
        return b.clone();
    }
    assert!(a == b, "polynomials from different rings: {a:?} vs {b:?}");
    a.clone()
}

/// `poly_canonical`: the unique canonical form of `p`.
pub fn poly_canonical(p: &MultiPoly) -> MultiPoly {
    p.canonical()
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl<'b> Add<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'b MultiPoly) -> MultiPoly {
        self.binary(rhs, false)
    }
}

impl<'b> Sub<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'b MultiPoly) -> MultiPoly {
        self.binary(rhs, true)
    }
}

impl<'b> Mul<&'b MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'b MultiPoly) -> MultiPoly {
        let vars = unify_vars(&self.vars, &rhs.vars);
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let mut p = rhs.mul_term(m, c);
            p.vars = vars;
            return p;
        }
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.terms.iter().next().unwrap();
            let mut p = self.mul_term(m, c);
            p.vars = vars;
            return p;
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len() / 2 + 1);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { vars, terms }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Leading term first, e.g. `a2^2*n - 1/2*b2 + 3`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(ExactRational::from(mag).to_string());
            }
            for (idx, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[idx].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[idx], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}
