//! Diagrams of initial exponents, truncated formal division, Hilbert–Samuel
//! counting, saturation by a variable, weighted initial exponents, and a
//! Buchberger engine under the global graded-lex order used for certificates.

use crate::error::{Error, Result};
use crate::poly::{int, Exponent, Polynomial, Rational, Vars};
use num::{integer::binomial, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Total orders on `N^n` compatible with addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Lexicographic on `(|α|, α_1, …, α_n)`; the initial exponent is the minimum.
    StandardLocal,
    /// Lexicographic on `(α_1, |α|, α_2, …, α_n)`; minimum-seeking.
    SaturationLocal,
    /// Lexicographic on `(⟨w,α⟩, α_1, …, α_n)` for positive weights; minimum-seeking.
    WeightedLocal(Vec<Rational>),
    /// Graded lexicographic, maximum-seeking. Used only by [`buchberger`].
    GlobalDegLex,
}

impl MonomialOrder {
    /// Sort key; the order is the lexicographic order of keys.
    pub fn key(&self, a: &Exponent) -> Vec<Rational> {
        let deg = int(a.degree() as i64);
        let mut k = Vec::with_capacity(a.0.len() + 1);
        match self {
            MonomialOrder::StandardLocal | MonomialOrder::GlobalDegLex => {
                k.push(deg);
                k.extend(a.0.iter().map(|&x| int(x as i64)));
            }
            MonomialOrder::SaturationLocal => {
                k.push(int(a.0[0] as i64));
                k.push(deg);
                k.extend(a.0.iter().skip(1).map(|&x| int(x as i64)));
            }
            MonomialOrder::WeightedLocal(w) => {
                let s = a
                    .0
                    .iter()
                    .zip(w)
                    .fold(Rational::zero(), |acc, (&x, wi)| acc + wi * int(x as i64));
                k.push(s);
                k.extend(a.0.iter().map(|&x| int(x as i64)));
            }
        }
        k
    }

    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn is_local(&self) -> bool {
        !matches!(self, MonomialOrder::GlobalDegLex)
    }

    fn validate(&self, n: usize) -> Result<()> {
        if let MonomialOrder::WeightedLocal(w) = self {
            if w.len() != n || w.iter().any(|x| !x.is_positive()) {
                return Err(Error::Usage(
                    "weights must be positive, one per variable".into(),
                ));
            }
        }
        Ok(())
    }
}

/// The extremal element of `supp f`: the minimum for local orders, the
/// maximum for the global one.
pub fn initial_exponent(f: &Polynomial, order: &MonomialOrder) -> Result<Exponent> {
    if f.is_zero() {
        return Err(Error::Invalid("the zero polynomial has no initial exponent".into()));
    }
    order.validate(f.nvars())?;
    let it = f.terms().map(|(e, _)| e);
    let pick = if order.is_local() {
        it.min_by(|a, b| order.compare(a, b))
    } else {
        it.max_by(|a, b| order.compare(a, b))
    };
    Ok(pick.expect("nonzero").clone())
}

/// A monomial ideal of `N^n` given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    vertices: Vec<Vec<u32>>,
}

impl Diagram {
    /// Build from any generating set; non-minimal generators are discarded.
    pub fn new(n: usize, generators: &[Exponent]) -> Result<Diagram> {
        if let Some(g) = generators.iter().find(|g| g.0.len() != n) {
            return Err(Error::Usage(format!(
                "exponent {:?} does not have {n} entries",
                g.0
            )));
        }
        let mut sorted: Vec<Exponent> = generators.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut vertices: Vec<Exponent> = Vec::new();
        for g in sorted {
            if !vertices.iter().any(|v| v.divides(&g)) {
                vertices.push(g);
            }
        }
        Ok(Diagram {
            n,
            vertices: vertices.into_iter().map(|e| e.0).collect(),
        })
    }

    pub fn empty(n: usize) -> Diagram {
        Diagram {
            n,
            vertices: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Vertices, sorted under the standard order.
    pub fn vertices(&self) -> Vec<Exponent> {
        self.vertices.iter().cloned().map(Exponent).collect()
    }

    pub fn contains(&self, a: &Exponent) -> bool {
        self.vertices
            .iter()
            .any(|v| v.iter().zip(&a.0).all(|(x, y)| x <= y))
    }
}

/// Every `α ∈ N^n` with `|α| ≤ k`, in graded-lex order.
pub fn exponents_up_to(n: usize, k: u64) -> Vec<Exponent> {
    fn rec(n: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if cur.len() == n {
            out.push(Exponent(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur.push(a as u32);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `#{α ∉ N : |α| ≤ k}`.
pub fn hilbert_samuel_from_diagram(diagram: &Diagram, k: u64) -> u128 {
    exponents_up_to(diagram.dim(), k)
        .iter()
        .filter(|a| !diagram.contains(a))
        .count() as u128
}

/// Hilbert–Samuel function of an order-`ν` hypersurface germ in `n` variables:
/// `C(n+ℓ, n)` for `ℓ < ν`, and `C(n+ℓ, n) − C(n+ℓ−ν, n)` otherwise.
pub fn hs_hypersurface_closed_form(n: u64, nu: u64, ell: u64) -> Result<u128> {
    if nu == 0 {
        return Err(Error::Usage("the order must be at least 1".into()));
    }
    let c = |a: u64, b: u64| binomial(a as u128, b as u128);
    if ell < nu {
        Ok(c(n + ell, n))
    } else {
        Ok(c(n + ell, n) - c(n + ell - nu, n))
    }
}

/// The partition `N^n = Δ_1 ∪ … ∪ Δ_s ∪ Λ_0` determined by an ordered vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxDecomposition {
    vertices: Vec<Exponent>,
}

impl BoxDecomposition {
    pub fn new(vertices: Vec<Exponent>) -> Self {
        BoxDecomposition { vertices }
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    /// `Some(i)` when `γ ∈ Δ_i`, `None` when `γ ∈ Λ_0`.
    pub fn region(&self, g: &Exponent) -> Option<usize> {
        self.vertices.iter().position(|v| v.divides(g))
    }
}

/// Quotients (in the caller's basis order) and remainder of a division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Hironaka division of `F` by a marked basis, truncated at total degree `trunc`.
///
/// The basis is processed in a canonical order (sorted by marked exponent
/// under `order`, ties by polynomial), so the result does not depend on the
/// order in which the caller lists it. Returned quotients follow the caller's
/// order. On return `F − Σ Q_i G_i − R` has no term of total degree `≤ trunc`,
/// `supp Q_i ⊆ Λ_i` and `supp R ⊆ Λ_0`.
pub fn divide(
    f: &Polynomial,
    basis: &[(Polynomial, Exponent)],
    order: &MonomialOrder,
    trunc: u64,
) -> Result<Division> {
    if !order.is_local() {
        return Err(Error::Usage(
            "formal division needs a local (minimum-seeking) order".into(),
        ));
    }
    order.validate(f.nvars())?;
    let vars = f.vars().clone();
    for (g, a) in basis {
        if g.vars() != &vars {
            return Err(Error::Usage("basis and dividend use different variables".into()));
        }
        let e = initial_exponent(g, order)?;
        if &e != a {
            return Err(Error::Invalid(format!(
                "marked exponent {:?} of {} is not its initial exponent {:?}",
                a.0, g, e.0
            )));
        }
    }
    if let Some(d) = f.degree() {
        if d > trunc {
            return Err(Error::Invalid(format!(
                "truncation degree {trunc} is below the degree {d} of the dividend"
            )));
        }
    }

    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&i, &j| {
        order
            .compare(&basis[i].1, &basis[j].1)
            .then_with(|| cmp_poly(&basis[i].0, &basis[j].0))
            .then(i.cmp(&j))
    });
    let boxes = BoxDecomposition::new(idx.iter().map(|&i| basis[i].1.clone()).collect());

    let slope = match order {
        MonomialOrder::SaturationLocal => saturation_slope(basis),
        _ => 0,
    };
    let max_w = match order {
        MonomialOrder::WeightedLocal(w) => w.iter().max().cloned().unwrap_or_else(Rational::one),
        _ => Rational::one(),
    };
    let d = trunc;
    let keep = |g: &Exponent| -> bool {
        match order {
            MonomialOrder::StandardLocal => g.degree() <= d,
            MonomialOrder::WeightedLocal(w) => {
                let s = g
                    .0
                    .iter()
                    .zip(w)
                    .fold(Rational::zero(), |acc, (&x, wi)| acc + wi * int(x as i64));
                s <= &max_w * int(d as i64)
            }
            MonomialOrder::SaturationLocal => {
                let g1 = g.0[0] as u64;
                g1 <= d && g.degree() <= d + slope * (d - g1)
            }
            MonomialOrder::GlobalDegLex => unreachable!(),
        }
    };

    let mut work: BTreeMap<Vec<Rational>, (Exponent, Rational)> = BTreeMap::new();
    let push = |work: &mut BTreeMap<Vec<Rational>, (Exponent, Rational)>, e: Exponent, c: Rational| {
        let k = order.key(&e);
        match work.get_mut(&k) {
            Some(slot) => {
                slot.1 += c;
                if slot.1.is_zero() {
                    work.remove(&k);
                }
            }
            None => {
                work.insert(k, (e, c));
            }
        }
    };
    for (e, c) in f.terms() {
        push(&mut work, e.clone(), c.clone());
    }

    let mut q: Vec<Polynomial> = vec![Polynomial::zero(vars.clone()); basis.len()];
    let mut r = Polynomial::zero(vars.clone());
    while let Some((_, (g, c))) = work.pop_first() {
        match boxes.region(&g) {
            None => r.add_term(g, c),
            Some(pos) => {
                let i = idx[pos];
                let (gi, ai) = &basis[i];
                let shift = ai.quotient(&g);
                let coef = &c / gi.coeff(ai);
                q[i].add_term(shift.clone(), coef.clone());
                for (b, bc) in gi.terms() {
                    if b == ai {
                        continue;
                    }
                    let e = b.add(&shift);
                    if keep(&e) {
                        push(&mut work, e, -(&coef * bc));
                    }
                }
            }
        }
    }
    Ok(Division {
        quotients: q,
        remainder: r,
    })
}

/// Bound on how fast total degree can drop per unit increase of `α_1` when a
/// basis element is multiplied in; used to truncate safely under the
/// saturation order.
fn saturation_slope(basis: &[(Polynomial, Exponent)]) -> u64 {
    let mut l: u64 = 0;
    for (g, a) in basis {
        for (b, _) in g.terms() {
            if b.0[0] > a.0[0] && b.degree() < a.degree() {
                let num = a.degree() - b.degree();
                let den = (b.0[0] - a.0[0]) as u64;
                l = l.max(num.div_ceil(den));
            }
        }
    }
    l
}

fn cmp_poly(a: &Polynomial, b: &Polynomial) -> Ordering {
    a.terms()
        .map(|(e, c)| (e.clone(), c.clone()))
        .cmp(b.terms().map(|(e, c)| (e.clone(), c.clone())))
}

/// Saturation by the first variable of a marked basis: each `F_i` is written
/// `Y_1^{k_i} G_i` with `Y_1 ∤ G_i`, and the `G_i` are returned.
pub fn saturate_marked_basis(basis: &[Polynomial]) -> Result<Vec<Polynomial>> {
    basis
        .iter()
        .map(|f| {
            if f.is_zero() {
                return Err(Error::Invalid("a marked basis element is zero".into()));
            }
            if f.nvars() == 0 {
                return Ok(f.clone());
            }
            Ok(f.monomial_factor(0)?.1)
        })
        .collect()
}

/// Principal-ideal form of the weighted-diagram condition: the diagram of
/// `(F)` under the standard order equals its diagram under the weighted
/// order, i.e. both orders pick the same initial exponent of `F`.
pub fn weighted_diagram_equal(generators: &[Polynomial], w: &[Rational]) -> Result<bool> {
    if generators.len() != 1 {
        return Err(Error::Unsupported(
            "weighted diagrams are implemented for principal ideals only".into(),
        ));
    }
    let f = &generators[0];
    let std = initial_exponent(f, &MonomialOrder::StandardLocal)?;
    let wt = initial_exponent(f, &MonomialOrder::WeightedLocal(w.to_vec()))?;
    Ok(std == wt)
}

// ---------------------------------------------------------------------------
// Global Gröbner bases (graded lex, leading term = largest exponent).
// ---------------------------------------------------------------------------

fn lead(f: &Polynomial) -> (&Exponent, &Rational) {
    f.leading_term().expect("nonzero polynomial")
}

/// Fully reduce `f` modulo `basis` under the global graded-lex order.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut p = f.clone();
    let mut r = Polynomial::zero(f.vars().clone());
    while let Some((e, c)) = p.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
        let divisor = basis.iter().find(|g| lead(g).0.divides(&e));
        match divisor {
            Some(g) => {
                let (ge, gc) = lead(g);
                let shift = ge.quotient(&e);
                let t = g.mul_monomial(&shift).scale(&(&c / gc));
                p = &p - &t;
            }
            None => {
                p.remove_term(&e);
                r.add_term(e, c);
            }
        }
    }
    r
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fe, fc) = lead(f);
    let (ge, gc) = lead(g);
    let l = fe.lcm(ge);
    let a = f.mul_monomial(&fe.quotient(&l)).scale(&fc.recip());
    let b = g.mul_monomial(&ge.quotient(&l)).scale(&gc.recip());
    &a - &b
}

/// Reduced Gröbner basis under graded lex: monic, interreduced and sorted by
/// leading exponent. Pairs are processed smallest lcm first with ties broken
/// by index, and the product and chain criteria discard useless pairs.
pub fn buchberger(generators: &[Polynomial]) -> Vec<Polynomial> {
    let mut g: Vec<Polynomial> = Vec::new();
    for f in generators {
        if !f.is_zero() {
            g.push(f.monic());
        }
    }
    if g.is_empty() {
        return g;
    }
    if g.iter().any(|f| f.is_constant()) {
        return vec![Polynomial::one(g[0].vars().clone())];
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    while !pairs.is_empty() {
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(a, b)), (_, &(c, d))| {
                let l1 = lead(&g[a]).0.lcm(lead(&g[b]).0);
                let l2 = lead(&g[c]).0.lcm(lead(&g[d]).0);
                l1.cmp(&l2).then((a, b).cmp(&(c, d)))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pos);
        done.insert((i, j));
        let (ei, ej) = (lead(&g[i]).0.clone(), lead(&g[j]).0.clone());
        if ei.is_coprime(&ej) {
            continue;
        }
        let l = ei.lcm(&ej);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && lead(&g[k]).0.divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&g[i], &g[j]);
        let r = reduce(&s, &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Polynomial::one(r.vars().clone())];
        }
        let k = g.len();
        g.push(r.monic());
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    interreduce(g)
}

fn interreduce(mut g: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading exponent is divisible by another's
    g.sort_by(|a, b| lead(a).0.cmp(lead(b).0));
    let mut min: Vec<Polynomial> = Vec::new();
    for f in g {
        if !min.iter().any(|m| lead(m).0.divides(lead(&f).0)) {
            min.push(f);
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for k in 0..min.len() {
        let others: Vec<Polynomial> = min
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p.clone())
            .collect();
        let (e, c) = lead(&min[k]);
        let head = Polynomial::monomial(min[k].vars().clone(), e.clone(), c.clone());
        let tail = &min[k] - &head;
        let reduced = &head + &reduce(&tail, &others);
        out.push(reduced.monic());
    }
    out.sort_by(|a, b| lead(a).0.cmp(lead(b).0));
    out
}

/// True iff the generators have no common zero over the algebraic closure.
pub fn is_empty_variety(generators: &[Polynomial]) -> bool {
    let gb = buchberger(generators);
    gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero()
}

/// Whether `f` lies in the ideal whose reduced Gröbner basis is `gb`.
pub fn ideal_contains(gb: &[Polynomial], f: &Polynomial) -> bool {
    reduce(f, gb).is_zero()
}

fn with_extra_var(polys: &[Polynomial], name: &str) -> (Vars, Vec<Polynomial>) {
    let mut names: Vec<String> = polys[0].vars().as_ref().clone();
    let mut extra = name.to_string();
    while names.contains(&extra) {
        extra.push('_');
    }
    names.push(extra);
    let vars: Vars = Arc::new(names);
    let lifted = polys.iter().map(|p| p.extend_vars(vars.clone())).collect();
    (vars, lifted)
}

/// Whether `f` vanishes on `V(generators)`, by the Rabinowitsch trick.
pub fn radical_contains(generators: &[Polynomial], f: &Polynomial) -> bool {
    let mut all = generators.to_vec();
    all.push(f.clone());
    let (vars, mut lifted) = with_extra_var(&all, "rabinowitsch_t");
    let ff = lifted.pop().expect("f present");
    let t = Polynomial::var(vars.clone(), vars.len() - 1);
    let one = Polynomial::one(vars);
    lifted.push(&one - &(&t * &ff));
    is_empty_variety(&lifted)
}

/// Whether `V(generators)` is contained in `{0}`.
pub fn vanishes_only_at_origin(generators: &[Polynomial]) -> bool {
    if generators.is_empty() {
        return false;
    }
    let n = generators[0].nvars();
    (0..n).all(|i| radical_contains(generators, &Polynomial::var(generators[0].vars().clone(), i)))
}

/// If the ideal is `(x_i − c_i : i ∈ T)`, return those `(i, c_i)`.
pub fn as_coordinate_subspace(generators: &[Polynomial]) -> Option<Vec<(usize, Rational)>> {
    let gb = buchberger(generators);
    let mut out = Vec::new();
    for g in &gb {
        if g.is_constant() {
            return None;
        }
        if g.degree() != Some(1) {
            return None;
        }
        let linear: Vec<(usize, Rational)> = g
            .terms()
            .filter(|(e, _)| e.degree() == 1)
            .map(|(e, c)| (e.0.iter().position(|&a| a == 1).expect("linear"), c.clone()))
            .collect();
        if linear.len() != 1 {
            return None;
        }
        let (i, c) = &linear[0];
        out.push((*i, -g.constant_term() / c));
    }
    out.sort_by_key(|(i, _)| *i);
    Some(out)
}

/// Number of vertices of the box `[0, b]^n`, used for exhaustive checks.
pub fn box_points(n: usize, b: u32) -> Vec<Exponent> {
    let mut out = vec![Exponent::zero(n)];
    for i in 0..n {
        let mut next = Vec::new();
        for e in &out {
            for a in 0..=b {
                let mut e2 = e.clone();
                e2.0[i] = a;
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

/// Convert a small rational to `f64` for diagnostics only.
pub fn approx(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat, vars_of};

    fn p(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, Some(&vars_of(v))).unwrap()
    }
    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn initial_exponents() {
        let f = p("x^2 - y", &XY);
        assert_eq!(initial_exponent(&f, &MonomialOrder::StandardLocal).unwrap().0, vec![0, 1]);
        assert_eq!(initial_exponent(&p("x^3*y", &XY), &MonomialOrder::SaturationLocal).unwrap().0, vec![3, 1]);
        let w = MonomialOrder::WeightedLocal(vec![rat(1, 3), rat(1, 5)]);
        assert_eq!(initial_exponent(&p("x^3 + y^5", &XY), &w).unwrap().0, vec![0, 5]);
        assert!(initial_exponent(&Polynomial::zero(vars_of(&XY)), &w).is_err());
        assert_eq!(initial_exponent(&f, &MonomialOrder::GlobalDegLex).unwrap().0, vec![2, 0]);
    }

    #[test]
    fn orders_are_compatible_with_addition() {
        let orders = [
            MonomialOrder::StandardLocal,
            MonomialOrder::SaturationLocal,
            MonomialOrder::WeightedLocal(vec![rat(1, 2), rat(1, 3), int(2)]),
            MonomialOrder::GlobalDegLex,
        ];
        let pts = box_points(3, 2);
        for o in &orders {
            for a in &pts {
                for b in &pts {
                    if o.compare(a, b) != Ordering::Greater {
                        for c in &pts {
                            assert_ne!(o.compare(&a.add(c), &b.add(c)), Ordering::Greater);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn division_examples() {
        let o = MonomialOrder::StandardLocal;
        let d = divide(&p("x^2", &XY), &[(p("x", &XY), Exponent(vec![1, 0]))], &o, 4).unwrap();
        assert_eq!(d.quotients[0], p("x", &XY));
        assert!(d.remainder.is_zero());

        let d = divide(&p("y", &XY), &[(p("x^2 - y", &XY), Exponent(vec![0, 1]))], &o, 4).unwrap();
        assert_eq!(d.quotients[0], p("-1", &XY));
        assert_eq!(d.remainder, p("x^2", &XY));

        let xv = ["x"];
        let d = divide(&p("1", &xv), &[(p("1 - x", &xv), Exponent(vec![0]))], &o, 3).unwrap();
        assert_eq!(d.quotients[0], p("1 + x + x^2 + x^3", &xv));
        assert!(d.remainder.is_zero());
    }

    #[test]
    fn division_errors() {
        let o = MonomialOrder::StandardLocal;
        assert!(divide(&p("x^5", &XY), &[(p("x", &XY), Exponent(vec![1, 0]))], &o, 4).is_err());
        assert!(divide(&p("x", &XY), &[(p("x + y^2", &XY), Exponent(vec![0, 2]))], &o, 4).is_err());
        assert!(divide(&p("x", &XY), &[], &MonomialOrder::GlobalDegLex, 4).is_err());
    }

    #[test]
    fn saturation_order_division_reconstructs() {
        let o = MonomialOrder::SaturationLocal;
        let g = p("y^3 + x", &XY);
        let a = initial_exponent(&g, &o).unwrap();
        let f = p("y^4 + x*y", &XY);
        let d = divide(&f, &[(g.clone(), a)], &o, 6).unwrap();
        let back = &(&d.quotients[0] * &g) + &d.remainder;
        assert_eq!((&f - &back).truncate(6), Polynomial::zero(vars_of(&XY)));
    }

    #[test]
    fn hilbert_samuel() {
        assert_eq!(hilbert_samuel_from_diagram(&Diagram::empty(3), 2), 10);
        let d = Diagram::new(3, &[Exponent(vec![2, 0, 0])]).unwrap();
        assert_eq!(hilbert_samuel_from_diagram(&d, 5), hs_hypersurface_closed_form(3, 2, 5).unwrap());
        let d1 = Diagram::new(1, &[Exponent(vec![2])]).unwrap();
        assert_eq!(hilbert_samuel_from_diagram(&d1, 7), 2);
        assert_eq!(hs_hypersurface_closed_form(3, 2, 1).unwrap(), 4);
        assert_eq!(hs_hypersurface_closed_form(3, 2, 5).unwrap(), 36);
        assert_eq!(hs_hypersurface_closed_form(1, 1, 5).unwrap(), 1);
    }

    #[test]
    fn diagram_vertices_are_minimal() {
        let d = Diagram::new(2, &[Exponent(vec![1, 1]), Exponent(vec![2, 1]), Exponent(vec![0, 3])]).unwrap();
        assert_eq!(d.vertices(), vec![Exponent(vec![1, 1]), Exponent(vec![0, 3])]);
        assert!(d.contains(&Exponent(vec![5, 1])));
        assert!(!d.contains(&Exponent(vec![5, 0])));
    }

    #[test]
    fn box_decomposition_partitions() {
        let b = BoxDecomposition::new(vec![Exponent(vec![2, 0]), Exponent(vec![1, 1]), Exponent(vec![0, 3])]);
        for g in exponents_up_to(2, 12) {
            let hits = b
                .vertices()
                .iter()
                .enumerate()
                .filter(|(i, v)| v.divides(&g) && !b.vertices()[..*i].iter().any(|u| u.divides(&g)))
                .count();
            assert!(hits <= 1);
            assert_eq!(hits == 1, b.region(&g).is_some());
        }
    }

    #[test]
    fn saturation_by_first_variable() {
        let yx = ["y", "x"];
        assert_eq!(saturate_marked_basis(&[p("y^2*(x+y)", &yx)]).unwrap(), vec![p("x + y", &yx)]);
        assert_eq!(saturate_marked_basis(&[p("x", &yx)]).unwrap(), vec![p("x", &yx)]);
        let g = saturate_marked_basis(&[p("y*x", &yx), p("y^2", &yx)]).unwrap();
        assert_eq!(g, vec![p("x", &yx), p("1", &yx)]);
        assert!(saturate_marked_basis(&[Polynomial::zero(vars_of(&yx))]).is_err());
    }

    #[test]
    fn groebner_examples() {
        assert_eq!(buchberger(&[p("x", &XY), p("y", &XY)]), vec![p("y", &XY), p("x", &XY)]);
        let gb = buchberger(&[p("x^2 - y", &XY), p("x", &XY)]);
        assert!(gb.contains(&p("y", &XY)) && gb.contains(&p("x", &XY)));
        assert!(is_empty_variety(&[p("x", &XY), p("x + 1", &XY)]));
        assert!(!is_empty_variety(&[p("x^2 + 1", &["x"])]));
        let v = ["v1", "v2", "v3"];
        let sys = [
            p("v3^2 - v1*v2^2", &v),
            p("2*v3", &v),
            p("-v2^2", &v),
            p("-2*v1*v2", &v),
            p("v1", &v),
            p("v2", &v),
        ];
        assert!(!is_empty_variety(&sys));
        assert!(vanishes_only_at_origin(&sys));
        assert!(!vanishes_only_at_origin(&sys[..4]));
    }

    #[test]
    fn groebner_is_order_independent_and_closed() {
        let v = ["x", "y", "z"];
        let gens = vec![p("x^2 - y*z", &v), p("x*y - z^2", &v), p("y^2 - x*z + 1", &v)];
        let a = buchberger(&gens);
        let mut rev = gens.clone();
        rev.reverse();
        assert_eq!(a, buchberger(&rev));
        for i in 0..a.len() {
            for j in 0..i {
                assert!(reduce(&s_polynomial(&a[i], &a[j]), &a).is_zero());
            }
        }
    }

    #[test]
    fn coordinate_subspace_detection() {
        let v = ["x", "y", "z"];
        let c = as_coordinate_subspace(&[p("x + y", &v), p("x - y", &v)]).unwrap();
        assert_eq!(c, vec![(0, int(0)), (1, int(0))]);
        assert!(as_coordinate_subspace(&[p("x - y", &v)]).is_none());
        assert!(as_coordinate_subspace(&[p("x^2", &v)]).is_none());
        assert_eq!(as_coordinate_subspace(&[p("z - 2", &v)]).unwrap(), vec![(2, int(2))]);
    }

    #[test]
    fn weighted_diagrams() {
        assert!(!weighted_diagram_equal(&[p("x^3 + y^5", &XY)], &[rat(1, 3), rat(1, 5)]).unwrap());
        assert!(weighted_diagram_equal(&[p("x^2", &XY)], &[rat(7, 2), int(1)]).unwrap());
        assert!(weighted_diagram_equal(&[p("x^3 + y^2", &XY)], &[rat(1, 3), rat(1, 3)]).unwrap());
        assert!(weighted_diagram_equal(&[p("x", &XY), p("y", &XY)], &[int(1), int(1)]).is_err());
    }

    #[test]
    fn radical_membership() {
        let v = ["x", "y"];
        assert!(radical_contains(&[p("x^2", &v)], &p("x", &v)));
        assert!(!radical_contains(&[p("x^2", &v)], &p("y", &v)));
        let _ = approx(&rat(1, 2));
    }
}
