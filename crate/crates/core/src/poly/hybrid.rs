//! Monomials with rational exponents, and their products with polynomials.
//!
//! A companion divisor `D = Π x_H^{μ_H}` may have fractional exponents. It is
//! kept as a [`FormalMonomial`] and multiplied into pairs as a [`Hybrid`]
//! rather than raised to a common power up front.

use super::{fmt_rational, int, Exponent, ExtRational, Polynomial, Rational, Vars};
use crate::error::{Error, Result};
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// `Π x_i^{q_i}` with positive rational exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FormalMonomial {
    exps: BTreeMap<usize, Rational>,
}

impl FormalMonomial {
    pub fn one() -> Self {
        FormalMonomial::default()
    }

    pub fn from_exponent(e: &Exponent) -> Self {
        let mut m = FormalMonomial::one();
        for (i, &a) in e.0.iter().enumerate() {
            if a > 0 {
                m.exps.insert(i, int(a as i64));
            }
        }
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut m = FormalMonomial::one();
        for (i, q) in pairs {
            m.set(i, q);
        }
        m
    }

    pub fn set(&mut self, i: usize, q: Rational) {
        assert!(!q.is_negative(), "formal monomial exponents are nonnegative");
        if q.is_zero() {
            self.exps.remove(&i);
        } else {
            self.exps.insert(i, q);
        }
    }

    pub fn exponent(&self, i: usize) -> Rational {
        self.exps.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Rational)> {
        self.exps.iter()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total (weighted) degree `Σ q_i`.
    pub fn degree(&self) -> Rational {
        self.exps.values().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn degree_along(&self, s: &[usize]) -> Rational {
        s.iter().map(|i| self.exponent(*i)).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn mul(&self, other: &FormalMonomial) -> FormalMonomial {
        let mut out = self.clone();
        for (i, q) in &other.exps {
            let v = out.exponent(*i) + q;
            out.set(*i, v);
        }
        out
    }

    /// `m^c` for a nonnegative rational `c`.
    pub fn pow(&self, c: &Rational) -> FormalMonomial {
        let mut out = FormalMonomial::one();
        for (i, q) in &self.exps {
            out.set(*i, q * c);
        }
        out
    }

    /// `self / other`, or `None` when some exponent would become negative.
    pub fn div(&self, other: &FormalMonomial) -> Option<FormalMonomial> {
        let mut out = self.clone();
        for (i, q) in &other.exps {
            let v = out.exponent(*i) - q;
            if v.is_negative() {
                return None;
            }
            out.set(*i, v);
        }
        Some(out)
    }

    pub fn is_integral(&self) -> bool {
        self.exps.values().all(|q| q.is_integer())
    }

    /// Least common multiple of the exponent denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.exps
            .values()
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()))
    }

    pub fn to_exponent(&self, n: usize) -> Option<Exponent> {
        let mut e = Exponent::zero(n);
        for (i, q) in &self.exps {
            if !q.is_integer() || *i >= n {
                return None;
            }
            e.0[*i] = q.to_integer().to_u32()?;
        }
        Some(e)
    }

    pub fn fmt_with(&self, vars: &[String]) -> String {
        if self.exps.is_empty() {
            return "1".into();
        }
        self.exps
            .iter()
            .map(|(i, q)| {
                let name = vars.get(*i).cloned().unwrap_or_else(|| format!("#{i}"));
                if q.is_one() {
                    name
                } else if q.is_integer() {
                    format!("{name}^{}", fmt_rational(q))
                } else {
                    format!("{name}^({})", fmt_rational(q))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// `m · P` with `m` a formal monomial and `P` a polynomial not divisible by
/// any variable (the monomial content is always moved into `m`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hybrid {
    mono: FormalMonomial,
    poly: Polynomial,
}

impl Hybrid {
    pub fn new(mono: FormalMonomial, poly: Polynomial) -> Self {
        if poly.is_zero() {
            return Hybrid {
                mono: FormalMonomial::one(),
                poly,
            };
        }
        let content = poly.monomial_content();
        let poly = poly.div_monomial(&content).expect("content divides");
        Hybrid {
            mono: mono.mul(&FormalMonomial::from_exponent(&content)),
            poly,
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Hybrid::new(FormalMonomial::one(), p)
    }

    /// The monomial `m` with unit coefficient.
    pub fn from_monomial(vars: Vars, m: FormalMonomial) -> Self {
        Hybrid::new(m, Polynomial::one(vars))
    }

    pub fn mono(&self) -> &FormalMonomial {
        &self.mono
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn vars(&self) -> &Vars {
        self.poly.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// A monomial times a nonzero constant.
    pub fn is_monomial(&self) -> bool {
        !self.poly.is_zero() && self.poly.is_constant()
    }

    pub fn order_at_origin(&self) -> ExtRational {
        match self.poly.order_at_origin() {
            ExtRational::Finite(d) => ExtRational::Finite(d + self.mono.degree()),
            ExtRational::Infinite => ExtRational::Infinite,
        }
    }

    pub fn order_along(&self, s: &[usize]) -> Result<ExtRational> {
        Ok(match self.poly.order_along(s)? {
            ExtRational::Finite(d) => ExtRational::Finite(d + self.mono.degree_along(s)),
            ExtRational::Infinite => ExtRational::Infinite,
        })
    }

    pub fn mul(&self, other: &Hybrid) -> Result<Hybrid> {
        Ok(Hybrid::new(
            self.mono.mul(&other.mono),
            self.poly.checked_mul(&other.poly)?,
        ))
    }

    pub fn pow(&self, k: u32) -> Hybrid {
        Hybrid::new(self.mono.pow(&int(k as i64)), self.poly.pow(k))
    }

    /// Divide by a formal monomial; fails if it does not divide `m`.
    pub fn div_mono(&self, d: &FormalMonomial) -> Result<Hybrid> {
        match self.mono.div(d) {
            Some(m) => Ok(Hybrid::new(m, self.poly.clone())),
            None => Err(Error::Internal(format!(
                "{} does not divide {}",
                d.fmt_with(self.vars()),
                self
            ))),
        }
    }

    /// The ordinary polynomial `m·P` when all exponents are integral.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        let e = self.mono.to_exponent(self.poly.nvars())?;
        Some(self.poly.mul_monomial(&e))
    }

    /// Smallest `k` such that `self^k` has integral exponents.
    pub fn integrality_power(&self) -> u32 {
        self.mono.denominator_lcm().to_u32().expect("small denominator")
    }

    pub fn sign_normalized(&self) -> Hybrid {
        Hybrid {
            mono: self.mono.clone(),
            poly: self.poly.sign_normalized(),
        }
    }

    /// Evaluate at a point where the monomial part has integral exponents or
    /// the point is away from its variables; used only for constants.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.mono.is_one() && self.poly.is_constant() {
            Some(self.poly.constant_term())
        } else {
            None
        }
    }
}

impl fmt::Display for Hybrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        if self.mono.is_one() {
            return write!(f, "{}", self.poly);
        }
        let m = self.mono.fmt_with(self.vars());
        if self.poly.is_constant() {
            let c = self.poly.constant_term();
            if c.is_one() {
                write!(f, "{m}")
            } else if (-c.clone()).is_one() {
                write!(f, "-{m}")
            } else {
                write!(f, "{}*{m}", fmt_rational(&c))
            }
        } else if self.poly.num_terms() == 1 {
            write!(f, "{}*{m}", self.poly)
        } else {
            write!(f, "{m}*({})", self.poly)
        }
    }
}
