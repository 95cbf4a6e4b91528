//! Rational functions over the rationals.
//!
//! The denominator is kept as a product of primitive integer polynomials
//! ("atoms") with positive leading coefficients; every rational constant is
//! folded into the numerator. Atoms are not guaranteed irreducible, but a
//! monomial content is always split off, and a fresh divisor is trial-divided
//! by the atoms already present. After every operation the numerator is
//! trial-divided by each atom, which is enough to keep the expressions that
//! occur in the geometric constructions small without a multivariate gcd.
//!
//! The atom list doubles as the list of side conditions of a symbolic
//! computation: the value is meaningful exactly where no atom vanishes.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::EvalError;
use crate::poly::{Monomial, MultiPoly, MAX_VARS};
use crate::scalar::{ExactRational, Scalar};

#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: Vec<(MultiPoly, u32)>,
}

impl RationalFunction {
    pub fn from_poly(num: MultiPoly) -> Self {
        Self {
            num,
            den: Vec::new(),
        }
    }

    pub fn var(vars: &Arc<[String]>, name: &str) -> Self {
        Self::from_poly(MultiPoly::var(vars, name))
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    /// `num / den`; `None` when `den` is the zero polynomial.
    pub fn new(num: MultiPoly, den: &MultiPoly) -> Option<Self> {
        let inv = Self::from_poly(den.clone()).recip()?;
        Some(Self::from_poly(num) * inv)
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> MultiPoly {
        self.den
            .iter()
            .fold(MultiPoly::from_int(1), |acc, (atom, e)| {
                &acc * &atom.pow(*e)
            })
    }

    /// Denominator atoms with multiplicities.
    pub fn den_factors(&self) -> &[(MultiPoly, u32)] {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn recip(&self) -> Option<Self> {
        self.recip_with_known(&self.den)
    }

    /// Reciprocal, splitting the new denominator against `known` atoms.
    fn recip_with_known(&self, known: &[(MultiPoly, u32)]) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let mut out = Self::from_poly(self.denominator());
        let atoms = split_atoms(&self.num, known);
        let (content, _) = self.num.primitive_split();
        out.num = out.num.scale(
            &content
                .recip()
                .expect("nonzero content")
                .as_big_rational()
                .clone(),
        );
        out.push_atoms(atoms);
        out.cancel();
        Some(out)
    }

    pub fn evaluate(
        &self,
        assignment: &HashMap<String, ExactRational>,
    ) -> Result<ExactRational, EvalError> {
        let mut den = ExactRational::from(1);
        for (atom, e) in &self.den {
            let v = atom.evaluate(assignment)?;
            for _ in 0..*e {
                den = den * &v;
            }
        }
        if Scalar::is_zero(&den) {
            return Err(EvalError::DenominatorVanishes);
        }
        let num = self.num.evaluate(assignment)?;
        Ok(num.checked_div(&den).expect("checked nonzero"))
    }

    fn push_atoms(&mut self, atoms: Vec<(MultiPoly, u32)>) {
        for (atom, e) in atoms {
            match self.den.iter_mut().find(|(a, _)| *a == atom) {
                Some(slot) => slot.1 += e,
                None => self.den.push((atom, e)),
            }
        }
    }

    /// Remove every atom power that divides the numerator.
    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (atom, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.exact_div(atom) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    fn same_den(&self, other: &Self) -> bool {
        self.den.len() == other.den.len()
            && self
                .den
                .iter()
                .all(|(a, e)| other.den.iter().any(|(b, f)| a == b && e == f))
    }

    fn add_sub(&self, rhs: &Self, negate: bool) -> Self {
        let combine = |a: &MultiPoly, b: &MultiPoly| if negate { a - b } else { a + b };
        if self.same_den(rhs) {
            let mut out = Self {
                num: combine(&self.num, &rhs.num),
                den: self.den.clone(),
            };
            out.cancel();
            return out;
        }
        let mut lcm = self.den.clone();
        for (atom, e) in &rhs.den {
            match lcm.iter_mut().find(|(a, _)| a == atom) {
                Some(slot) => slot.1 = slot.1.max(*e),
                None => lcm.push((atom.clone(), *e)),
            }
        }
        let left = &self.num * &cofactor(&lcm, &self.den);
        let right = &rhs.num * &cofactor(&lcm, &rhs.den);
        let mut out = Self {
            num: combine(&left, &right),
            den: lcm,
        };
        out.cancel();
        out
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        let mut left = self.clone();
        let mut right = rhs.clone();
        cross_cancel(&mut left.num, &mut right.den);
        cross_cancel(&mut right.num, &mut left.den);
        let mut out = Self {
            num: &left.num * &right.num,
            den: left.den,
        };
        out.den.retain(|(_, e)| *e > 0);
        right.den.retain(|(_, e)| *e > 0);
        out.push_atoms(right.den);
        if out.num.is_zero() {
            out.den.clear();
        }
        out
    }
}

/// Product of `lcm / part`, atom by atom.
fn cofactor(lcm: &[(MultiPoly, u32)], part: &[(MultiPoly, u32)]) -> MultiPoly {
    let mut acc = MultiPoly::from_int(1);
    for (atom, e) in lcm {
        let have = part.iter().find(|(a, _)| a == atom).map_or(0, |(_, f)| *f);
        for _ in have..*e {
            acc = &acc * atom;
        }
    }
    acc
}

fn cross_cancel(num: &mut MultiPoly, den: &mut [(MultiPoly, u32)]) {
    for (atom, e) in den.iter_mut() {
        while *e > 0 {
            match num.exact_div(atom) {
                Some(q) => {
                    *num = q;
                    *e -= 1;
                }
                None => break,
            }
        }
    }
}

/// Break a nonzero polynomial into primitive atoms: one per indeterminate of
/// its monomial content, then the remaining primitive part with any known
/// atoms divided out.
fn split_atoms(p: &MultiPoly, known: &[(MultiPoly, u32)]) -> Vec<(MultiPoly, u32)> {
    let mut atoms: Vec<(MultiPoly, u32)> = Vec::new();
    let mono = p.monomial_content();
    for var in 0..MAX_VARS {
        let e = mono.exponent(var);
        if e > 0 {
            let mut exps = [0u16; MAX_VARS];
            exps[var] = 1;
            let atom = MultiPoly::from_terms(
                p.vars(),
                [(Monomial::from_exponents(&exps), ExactRational::from(1))],
            );
            atoms.push((atom, u32::from(e)));
        }
    }
    let (_, mut rest) = p.div_monomial(&mono).primitive_split();
    for (atom, _) in known {
        if atom.term_count() <= 1 {
            continue;
        }
        let mut e = 0;
        while rest.total_degree() >= atom.total_degree() {
            match rest.exact_div(atom) {
                Some(q) => {
                    rest = q.primitive_split().1;
                    e += 1;
                }
                None => break,
            }
        }
        if e > 0 {
            atoms.push((atom.clone(), e));
        }
    }
    if !rest.is_constant() {
        atoms.push((rest, 1));
    }
    atoms
}

/// Splits `p` into variable atoms, powers of the `known` primitive factors,
/// and a primitive remainder. No further factorization is attempted.
pub fn split_factors(p: &MultiPoly, known: &[MultiPoly]) -> Vec<(MultiPoly, u32)> {
    if p.is_zero() {
        return Vec::new();
    }
    let known: Vec<(MultiPoly, u32)> = known.iter().map(|k| (k.clone(), 1)).collect();
    split_atoms(p, &known)
}

/// True iff the canonical numerator is the zero polynomial.
pub fn is_identically_zero(f: &RationalFunction) -> bool {
    f.num.is_zero()
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.same_den(other) {
            return self.num == other.num;
        }
        (self - other).num.is_zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})", self.num)?;
        for (atom, e) in &self.den {
            if *e == 1 {
                write!(f, " / ({atom})")?;
            } else {
                write!(f, " / ({atom})^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl<'b> Add<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'b RationalFunction) -> RationalFunction {
        self.add_sub(rhs, false)
    }
}

impl<'b> Sub<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'b RationalFunction) -> RationalFunction {
        self.add_sub(rhs, true)
    }
}

impl<'b> Mul<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'b RationalFunction) -> RationalFunction {
        self.mul_impl(rhs)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(MultiPoly::from_int(1))
    }

    fn from_int(value: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(value))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let known: Vec<(MultiPoly, u32)> = self.den.iter().chain(rhs.den.iter()).cloned().collect();
        Some(self * &rhs.recip_with_known(&known)?)
    }

    fn sign(&self) -> Option<Ordering> {
        if !self.den.is_empty() {
            return None;
        }
        self.num
            .constant_value()
            .map(|c| c.as_big_rational().cmp(&Zero::zero()))
    }

    /// Clears all denominators, then removes the rational content, the
    /// common monomial content and every former denominator atom that
    /// divides all entries.
    fn make_primitive(coords: &mut [Self]) {
        if coords.iter().all(|c| c.num.is_zero()) {
            return;
        }
        let mut lcm: Vec<(MultiPoly, u32)> = Vec::new();
        for c in coords.iter() {
            for (atom, e) in &c.den {
                match lcm.iter_mut().find(|(a, _)| a == atom) {
                    Some(slot) => slot.1 = slot.1.max(*e),
                    None => lcm.push((atom.clone(), *e)),
                }
            }
        }
        let mut polys: Vec<MultiPoly> = coords
            .iter()
            .map(|c| &c.num * &cofactor(&lcm, &c.den))
            .collect();

        let nonzero: Vec<usize> = (0..polys.len()).filter(|&i| !polys[i].is_zero()).collect();
        let mono = nonzero
            .iter()
            .map(|&i| polys[i].monomial_content())
            .reduce(|a, b| a.gcd(&b))
            .unwrap_or_default();
        for p in polys.iter_mut() {
            if !p.is_zero() {
                *p = p.div_monomial(&mono);
            }
        }
        for (atom, _) in &lcm {
            loop {
                let quotients: Option<Vec<MultiPoly>> = polys
                    .iter()
                    .map(|p| {
                        if p.is_zero() {
                            Some(p.clone())
                        } else {
                            p.exact_div(atom)
                        }
                    })
                    .collect();
                match quotients {
                    Some(qs) => polys = qs,
                    None => break,
                }
            }
        }
        // An entry that divides all the others is itself a common factor.
        loop {
            let mut order = nonzero.clone();
            order.sort_by_key(|&i| polys[i].term_count());
            let found = order.iter().find_map(|&i| {
                let (_, cand) = polys[i].primitive_split();
                if cand.is_constant() {
                    return None;
                }
                nonzero
                    .iter()
                    .map(|&j| polys[j].exact_div(&cand).map(|q| (j, q)))
                    .collect::<Option<Vec<_>>>()
            });
            match found {
                Some(qs) => {
                    for (j, q) in qs {
                        polys[j] = q;
                    }
                }
                None => break,
            }
        }
        // Shared rational content, sign fixed by the first nonzero entry.
        let mut content: Option<num_rational::BigRational> = None;
        for &i in &nonzero {
            let (c, _) = polys[i].primitive_split();
            let c = c.as_big_rational().clone();
            content = Some(match content {
                None => c,
                Some(prev) => rational_gcd(&prev, &c),
            });
        }
        if let Some(mut content) = content {
            use num_traits::Signed;
            content = content.abs();
            let first = &polys[nonzero[0]];
            if first.leading_term().is_some_and(|(_, c)| c.is_negative()) {
                content = -content;
            }
            let inv = content.recip();
            for p in polys.iter_mut() {
                *p = p.scale(&inv);
            }
        }
        for (c, p) in coords.iter_mut().zip(polys) {
            *c = Self::from_poly(p);
        }
    }
}

fn rational_gcd(
    a: &num_rational::BigRational,
    b: &num_rational::BigRational,
) -> num_rational::BigRational {
    use num_integer::Integer;
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    if num.is_zero() {
        return num_rational::BigRational::one();
    }
    num_rational::BigRational::new(num, den)
}
