//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] carries its ordered variable list and a map from exponent
//! vectors to nonzero rational coefficients. Terms are kept in graded
//! lexicographic order, so iteration and printing are deterministic and the
//! lowest-order terms come first.

mod hybrid;
mod parse;

pub use hybrid::{FormalMonomial, Hybrid};
pub use parse::{parse_point, parse_polynomial, parse_rational};

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exact rational number, always in lowest terms.
pub type Rational = BigRational;

/// Shared, ordered list of variable names.
pub type Vars = Arc<Vec<String>>;

/// Build a rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Build an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Print a rational as `n` or `n/d`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Build a shared variable list from names.
pub fn vars_of<S: AsRef<str>>(names: &[S]) -> Vars {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

/// A rational number or `∞`, which is larger than every rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn finite(q: Rational) -> Self {
        ExtRational::Finite(q)
    }

    pub fn from_int(n: i64) -> Self {
        ExtRational::Finite(int(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinite => None,
        }
    }

    /// `∞ + q = ∞`.
    pub fn add(&self, other: &ExtRational) -> ExtRational {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinite,
        }
    }

    /// Scale by a positive rational; `∞` is absorbing.
    pub fn scale(&self, c: &Rational) -> ExtRational {
        match self {
            ExtRational::Finite(a) => ExtRational::Finite(a * c),
            ExtRational::Infinite => ExtRational::Infinite,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{}", fmt_rational(q)),
            ExtRational::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then the plain lexicographic order of the entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other - self`, assuming `self` divides `other`.
    pub fn quotient(&self, other: &Exponent) -> Exponent {
        Exponent(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Exponent, Rational>,
}

/// How a maximal-contact hypersurface `z` can be solved for its direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolvableForm {
    /// `z = c·x_n + q(x̃)` with `q` free of `x_n`; restriction substitutes `x_n = -q/c`.
    Linear { c: Rational, q: Polynomial },
    /// `z = x_n·u` with `u(0) ≠ 0`; restriction substitutes `x_n = 0`.
    TimesUnit,
}

fn mismatch(a: &Vars, b: &Vars) -> Error {
    Error::Usage(format!(
        "mismatched variable lists [{}] and [{}]",
        a.join(","),
        b.join(",")
    ))
}

impl Polynomial {
    pub fn zero(vars: Vars) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            let n = p.nvars();
            p.terms.insert(Exponent::zero(n), c);
        }
        p
    }

    pub fn one(vars: Vars) -> Self {
        Polynomial::constant(vars, Rational::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(vars: Vars, i: usize) -> Self {
        let n = vars.len();
        assert!(i < n, "variable index {i} out of range");
        let mut p = Polynomial::zero(vars);
        p.terms.insert(Exponent::unit(n, i), Rational::one());
        p
    }

    /// `c·x^e`.
    pub fn monomial(vars: Vars, e: Exponent, c: Rational) -> Self {
        assert_eq!(e.0.len(), vars.len());
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(vars: Vars, terms: I) -> Self {
        let n = vars.len();
        let mut p = Polynomial::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent length must match variable count");
            p.add_term(Exponent(e), c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Exponent::zero(self.nvars()))
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest exponent in graded-lex order with its coefficient.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Smallest exponent in graded-lex order with its coefficient.
    pub fn lowest_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.terms.keys().next().map(|e| e.degree())
    }

    /// Maximal exponent of `x_i` over the support.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e.0[i] > 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Add `c·x^e` in place.
    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn remove_term(&mut self, e: &Exponent) -> Option<Rational> {
        self.terms.remove(e)
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(mismatch(&self.vars, &other.vars))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^e`.
    pub fn mul_monomial(&self, e: &Exponent) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.add(e), c.clone())).collect(),
        }
    }

    /// Exact division by `x^e`, or `None` when some term is not divisible.
    pub fn div_monomial(&self, e: &Exponent) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            if !e.divides(a) {
                return None;
            }
            terms.insert(e.quotient(a), c.clone());
        }
        Some(Polynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.vars.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `∂^q f / ∂x_i^q`.
    pub fn derivative(&self, i: usize, q: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let a = e.0[i];
            if a < q {
                continue;
            }
            let mut falling = BigInt::one();
            for k in 0..q {
                falling *= BigInt::from(a - k);
            }
            let mut ne = e.clone();
            ne.0[i] = a - q;
            out.add_term(ne, c * Rational::from_integer(falling));
        }
        out
    }

    /// Order at the origin: the least total degree of a term, `∞` for zero.
    pub fn order_at_origin(&self) -> ExtRational {
        match self.min_degree() {
            Some(d) => ExtRational::from_int(d as i64),
            None => ExtRational::Infinite,
        }
    }

    /// Order at a rational point.
    pub fn order_at(&self, point: &[Rational]) -> Result<ExtRational> {
        if point.len() != self.nvars() {
            return Err(Error::Usage(format!(
                "point has {} coordinates but the polynomial has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        Ok(self.translate(point).order_at_origin())
    }

    /// Order along the coordinate subspace `V(x_i : i ∈ s)`.
    pub fn order_along(&self, s: &[usize]) -> Result<ExtRational> {
        if let Some(&bad) = s.iter().find(|&&i| i >= self.nvars()) {
            return Err(Error::Usage(format!("variable index {bad} out of range")));
        }
        Ok(self
            .terms
            .keys()
            .map(|e| s.iter().map(|&i| e.0[i] as i64).sum::<i64>())
            .min()
            .map(ExtRational::from_int)
            .unwrap_or(ExtRational::Infinite))
    }

    /// Compose with `x_i ↦ images[i]`. All images share one variable list,
    /// which becomes the variable list of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::Usage(format!(
                "substitution maps {} variables, polynomial has {}",
                images.len(),
                self.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => {
                return Ok(Polynomial::constant(Arc::new(vec![]), self.constant_term()));
            }
        };
        for im in images {
            if im.vars != target {
                return Err(mismatch(&im.vars, &target));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target.clone()), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target.clone());
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target.clone(), c.clone());
            for (i, &a) in e.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as usize;
                while powers[i].len() <= a {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][a];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitute by variable name; variables missing from the map are
    /// sent to the same-named variable of the target list.
    pub fn substitute_named(
        &self,
        map: &BTreeMap<String, Polynomial>,
        target: &Vars,
    ) -> Result<Polynomial> {
        let mut images = Vec::with_capacity(self.nvars());
        for name in self.vars.iter() {
            match map.get(name) {
                Some(p) => {
                    if &p.vars != target {
                        return Err(mismatch(&p.vars, target));
                    }
                    images.push(p.clone());
                }
                None => match target.iter().position(|v| v == name) {
                    Some(j) => images.push(Polynomial::var(target.clone(), j)),
                    None => {
                        return Err(Error::Usage(format!("variable {name} is not mapped")));
                    }
                },
            }
        }
        if images.is_empty() {
            return Ok(Polynomial::constant(target.clone(), self.constant_term()));
        }
        self.substitute(&images)
    }

    /// `f(x + a)`: moves the point `a` to the origin.
    pub fn translate(&self, point: &[Rational]) -> Polynomial {
        assert_eq!(point.len(), self.nvars());
        if point.iter().all(|a| a.is_zero()) {
            return self.clone();
        }
        let images: Vec<Polynomial> = (0..self.nvars())
            .map(|i| {
                let mut p = Polynomial::var(self.vars.clone(), i);
                p.add_term(Exponent::zero(self.nvars()), point[i].clone());
                p
            })
            .collect();
        self.substitute(&images).expect("translation images are consistent")
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &a) in e.0.iter().enumerate() {
                if a > 0 {
                    t *= num::pow(point[i].clone(), a as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Write `f = x_i^k · g` with `x_i ∤ g` and `k` maximal.
    pub fn monomial_factor(&self, i: usize) -> Result<(u32, Polynomial)> {
        if self.is_zero() {
            return Err(Error::Invalid(
                "the zero polynomial is divisible by every power".into(),
            ));
        }
        let k = self.terms.keys().map(|e| e.0[i]).min().unwrap_or(0);
        let mut e = Exponent::zero(self.nvars());
        e.0[i] = k;
        Ok((k, self.div_monomial(&e).expect("minimum exponent divides")))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Exponent {
        let n = self.nvars();
        let mut it = self.terms.keys();
        match it.next() {
            None => Exponent::zero(n),
            Some(first) => {
                let mut g = first.clone();
                for e in it {
                    for (a, b) in g.0.iter_mut().zip(&e.0) {
                        *a = (*a).min(*b);
                    }
                }
                g
            }
        }
    }

    /// Classify `z` relative to the direction `x_n`.
    pub fn solvable_form(&self, n: usize) -> Option<SolvableForm> {
        let mut c = Rational::zero();
        let mut q = Polynomial::zero(self.vars.clone());
        let mut linear = true;
        for (e, a) in &self.terms {
            match e.0[n] {
                0 => q.add_term(e.clone(), a.clone()),
                1 if e.degree() == 1 => c = a.clone(),
                _ => {
                    linear = false;
                    break;
                }
            }
        }
        if linear && !c.is_zero() {
            return Some(SolvableForm::Linear { c, q });
        }
        let (k, u) = self.monomial_factor(n).ok()?;
        if k == 1 && !u.constant_term().is_zero() {
            return Some(SolvableForm::TimesUnit);
        }
        None
    }

    /// Restrict `f` to `V(z)` where `z` is in solvable form in direction `x_n`.
    pub fn restrict_solvable(&self, z: &Polynomial, n: usize) -> Result<Polynomial> {
        self.check(z)?;
        match z.solvable_form(n) {
            Some(SolvableForm::Linear { c, q }) => {
                let sol = q.scale(&(-c.recip()));
                let images: Vec<Polynomial> = (0..self.nvars())
                    .map(|i| {
                        if i == n {
                            sol.clone()
                        } else {
                            Polynomial::var(self.vars.clone(), i)
                        }
                    })
                    .collect();
                self.substitute(&images)
            }
            Some(SolvableForm::TimesUnit) => {
                let mut out = Polynomial::zero(self.vars.clone());
                for (e, c) in &self.terms {
                    if e.0[n] == 0 {
                        out.add_term(e.clone(), c.clone());
                    }
                }
                Ok(out)
            }
            None => Err(Error::MaximalContactNotSolvable(format!(
                "z = {} is not of the form c*{} + q",
                z, self.vars[n]
            ))),
        }
    }

    /// Reinterpret over a new variable list of the same length.
    pub fn with_vars(&self, vars: Vars) -> Polynomial {
        assert_eq!(vars.len(), self.nvars());
        Polynomial {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// Embed into a list that extends this one with extra trailing variables.
    pub fn extend_vars(&self, vars: Vars) -> Polynomial {
        assert!(vars.len() >= self.nvars());
        assert!(self.vars.iter().zip(vars.iter()).all(|(a, b)| a == b));
        let extra = vars.len() - self.nvars();
        Polynomial {
            vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = e.0.clone();
                    v.extend(std::iter::repeat_n(0, extra));
                    (Exponent(v), c.clone())
                })
                .collect(),
        }
    }

    /// Keep only terms of total degree at most `d`.
    pub fn truncate(&self, d: u64) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u64) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Divide by the leading coefficient (graded-lex largest term).
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Make the lowest term's coefficient positive.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.lowest_term() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Multiply through by the least common multiple of the denominators.
    pub fn clear_denominators(&self) -> Polynomial {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = num::integer::lcm(l, c.denom().clone());
        }
        self.scale(&Rational::from_integer(l))
    }

    /// True when every coefficient is integral and fits in an `i64`.
    pub fn small_integer_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && c.numer().to_i64().is_some())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], e: &Exponent) -> fmt::Result {
    let mut first = true;
    for (i, &a) in e.0.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if a == 1 {
            write!(f, "{}", vars[i])?;
        } else {
            write!(f, "{}^{}", vars[i], a)?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Terms are printed from lowest to highest graded-lex order, so the
    /// output reads like a local expansion, e.g. `x3^2 - x1^2*x2^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e.degree() == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
                write_monomial(f, &self.vars, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(s, Some(&vars_of(vars))).unwrap()
    }

    const XYZ: [&str; 3] = ["x1", "x2", "x3"];

    #[test]
    fn ring_identities() {
        let v = ["x", "y"];
        assert_eq!(&p("x+y", &v) * &p("x-y", &v), p("x^2-y^2", &v));
        assert_eq!(&p("x+y", &v) + &p("0", &v), p("x+y", &v));
        let g = p("x3^2 - x1^2*x2^3", &XYZ);
        assert_eq!(&g - &p("x3^2", &XYZ), p("-x1^2*x2^3", &XYZ));
    }

    #[test]
    fn mismatched_vars_is_usage_error() {
        let a = p("x", &["x"]);
        let b = p("y", &["y"]);
        assert!(matches!(a.checked_add(&b), Err(Error::Usage(_))));
    }

    #[test]
    fn derivatives() {
        let g = p("x3^2 - x1^2*x2^3", &XYZ);
        assert_eq!(g.derivative(2, 1), p("2*x3", &XYZ));
        assert!(p("x1*x2", &XYZ).derivative(2, 1).is_zero());
        // second derivative after x1 = u+v, x2 = u-v
        let f = p("x3^3 - x1*x2", &XYZ);
        let uv = vars_of(&["u", "v", "x3"]);
        let imgs = vec![
            parse_polynomial("u+v", Some(&uv)).unwrap(),
            parse_polynomial("u-v", Some(&uv)).unwrap(),
            parse_polynomial("x3", Some(&uv)).unwrap(),
        ];
        let h = f.substitute(&imgs).unwrap();
        assert_eq!(h.derivative(0, 2), Polynomial::constant(uv, int(-2)));
    }

    #[test]
    fn orders() {
        let g = p("x3^2 - x1^2*x2^3", &XYZ);
        assert_eq!(g.order_at(&[int(0), int(0), int(0)]).unwrap(), ExtRational::from_int(2));
        assert_eq!(Polynomial::zero(vars_of(&XYZ)).order_at_origin(), ExtRational::Infinite);
        assert_eq!(p("1 + x1", &XYZ).order_at_origin(), ExtRational::from_int(0));
        let yv = ["y1", "y2"];
        assert_eq!(p("y1^3*y2^3", &yv).order_along(&[0]).unwrap(), ExtRational::from_int(3));
        assert_eq!(p("5", &yv).order_along(&[0]).unwrap(), ExtRational::from_int(0));
        assert_eq!(
            p("x1*x2 + x2^3", &XYZ).order_along(&[0, 1]).unwrap(),
            ExtRational::from_int(2)
        );
        assert!(p("x1", &XYZ).order_along(&[7]).is_err());
        assert!(p("x1", &XYZ).order_at(&[int(0)]).is_err());
    }

    #[test]
    fn substitution_and_factor() {
        let g = p("x3^2 - x1^2*x2^3", &XYZ);
        let y = ["y1", "y2", "y3"];
        let imgs = vec![p("y1", &y), p("y1*y2", &y), p("y1*y3", &y)];
        let t = g.substitute(&imgs).unwrap();
        assert_eq!(t, p("y1^2*y3^2 - y1^5*y2^3", &y));
        let (k, g1) = t.monomial_factor(0).unwrap();
        assert_eq!(k, 2);
        assert_eq!(g1, p("y3^2 - y1^3*y2^3", &y));
        let ident: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(g.vars().clone(), i)).collect();
        assert_eq!(g.substitute(&ident).unwrap(), g);
        let a = [int(2), rat(1, 3), int(-1)];
        assert_eq!(g.translate(&a).constant_term(), g.evaluate(&a));
        let xy = ["x", "y"];
        assert_eq!(p("x+1", &xy).monomial_factor(0).unwrap(), (0, p("x+1", &xy)));
        assert_eq!(p("x^3*y^2", &xy).monomial_factor(1).unwrap(), (2, p("x^3", &xy)));
        assert!(Polynomial::zero(vars_of(&xy)).monomial_factor(0).is_err());
    }

    #[test]
    fn restriction() {
        assert_eq!(
            p("x1^2*x2^3", &XYZ).restrict_solvable(&p("2*x3", &XYZ), 2).unwrap(),
            p("x1^2*x2^3", &XYZ)
        );
        assert_eq!(
            p("x3^2 + x3*x1", &XYZ)
                .restrict_solvable(&p("2*x3 + x1", &XYZ), 2)
                .unwrap(),
            p("-1/4*x1^2", &XYZ)
        );
        assert_eq!(
            p("x3 + x1*x3^2 + x2", &XYZ)
                .restrict_solvable(&p("x3 + x3^2", &XYZ), 2)
                .unwrap(),
            p("x2", &XYZ)
        );
        assert!(matches!(
            p("x1", &XYZ).restrict_solvable(&p("x3 + x3^2 + x1", &XYZ), 2),
            Err(Error::MaximalContactNotSolvable(_))
        ));
    }

    #[test]
    fn printing_round_trip() {
        for s in ["x3^2 - x1^2*x2^3", "1/2*x1^2 + 3*x2", "0", "-7/3", "-x1 + x2*x3^4"] {
            let a = p(s, &XYZ);
            let b = p(&a.to_string(), &XYZ);
            assert_eq!(a, b, "{s}");
        }
        assert_eq!(p("x3^2 - x1^2*x2^3", &XYZ).to_string(), "x3^2 - x1^2*x2^3");
    }

    #[test]
    fn ext_rational_order() {
        assert!(ExtRational::Infinite > ExtRational::from_int(1_000_000));
        assert_eq!(ExtRational::Infinite.add(&ExtRational::from_int(3)), ExtRational::Infinite);
        assert_eq!(ExtRational::Infinite.scale(&rat(1, 2)), ExtRational::Infinite);
        assert_eq!(ExtRational::finite(rat(5, 2)).to_string(), "5/2");
    }
}
