//! Infinitesimal presentations `(N, H, E)` of the invariant at a point: marked
//! pairs `(h, μ_h)` on a maximal-contact subspace `N`, together with the
//! exceptional divisors still transverse to it.
//!
//! Every presentation is centred at the origin of translated chart
//! coordinates. `to_chart` records each presentation coordinate as a
//! polynomial in the (untranslated) chart coordinates, so contact
//! hypersurfaces and terminal loci can be written back in the chart.

use crate::chart::{total_transform, Chart, Divisor};
use crate::error::{Error, Result};
use crate::poly::{
    fmt_rational, int, Exponent, ExtRational, FormalMonomial, Hybrid, Polynomial, Rational, Vars,
};
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// A marked pair `(h, μ_h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub h: Hybrid,
    pub mu: Rational,
}

impl Pair {
    /// `None` when `h` vanishes identically.
    pub fn new(h: Hybrid, mu: Rational) -> Option<Pair> {
        if h.is_zero() {
            None
        } else {
            Some(Pair { h, mu })
        }
    }

    pub fn from_poly(h: Polynomial, mu: Rational) -> Option<Pair> {
        Pair::new(Hybrid::from_poly(h), mu)
    }

    pub fn order(&self) -> ExtRational {
        self.h.order_at_origin()
    }

    pub fn is_order_exact(&self) -> bool {
        self.order() == ExtRational::Finite(self.mu.clone())
    }

    /// Raise to the least power making both `μ_h` and the exponents of `h`
    /// integral; returns the resulting polynomial and multiplicity.
    pub fn integralize(&self) -> (Polynomial, u32) {
        let k = num::integer::lcm(
            self.h.integrality_power(),
            self.mu.denom().to_u32().expect("small denominator"),
        );
        let h = self.h.pow(k).to_polynomial().expect("integral after raising");
        let mu = (&self.mu * int(k as i64)).to_integer().to_u32().expect("small multiplicity");
        (h, mu)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, fmt_rational(&self.mu))
    }
}

/// Print a pair collection as `{(h,μ),…}`.
pub fn fmt_pairs(pairs: &[Pair]) -> String {
    let inner: Vec<String> = pairs.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// A linear change `x_target ← x_target + c·x_direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    pub target: usize,
    pub direction: usize,
    pub c: Rational,
}

/// One maximal-contact hypersurface of the chain `N_1 ⊃ N_2 ⊃ …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactStep {
    /// `z` in presentation coordinates.
    pub z: Polynomial,
    /// `z` in chart coordinates.
    pub z_chart: Polynomial,
    /// The eliminated coordinate, `None` when `z` is the last pair itself.
    pub direction: Option<usize>,
    pub change: Option<LinearChange>,
}

/// An infinitesimal presentation at the origin of translated coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub vars: Vars,
    /// The base point in chart coordinates.
    pub point: Vec<Rational>,
    /// Presentation coordinate `i` as a polynomial in chart coordinates.
    pub to_chart: Vec<Polynomial>,
    pub chain: Vec<ContactStep>,
    pub pairs: Vec<Pair>,
    /// Retained divisors `E_r` with their coordinate index.
    pub retained: Vec<(Divisor, usize)>,
    /// Coordinates carrying some divisor through the point; never used as
    /// the target of a linear change.
    pub divisor_vars: Vec<usize>,
}

impl Presentation {
    pub fn codimension(&self) -> usize {
        self.chain.len()
    }

    fn eliminated(&self) -> Vec<usize> {
        self.chain.iter().filter_map(|s| s.direction).collect()
    }

    pub fn with_pairs(&self, pairs: Vec<Pair>, retained: Vec<(Divisor, usize)>) -> Presentation {
        Presentation {
            pairs,
            retained,
            ..self.clone()
        }
    }

    /// The contact hypersurfaces in chart coordinates.
    pub fn chain_ideal(&self) -> Vec<Polynomial> {
        self.chain.iter().map(|s| s.z_chart.clone()).collect()
    }
}

/// Codimension-zero presentation `F_1 = {(g,d)} ∪ {(x_H,1) : H ∈ E¹}` at the
/// origin of `g` (already translated), with retained divisors `E_1`.
pub fn codim0_presentation(
    g: &Polynomial,
    d: u32,
    e_upper: &[(Divisor, usize)],
    retained: &[(Divisor, usize)],
    point: &[Rational],
) -> Result<Presentation> {
    if d == 0 {
        return Err(Error::Invalid(format!("{g} is a unit at the point")));
    }
    let vars = g.vars().clone();
    let n = vars.len();
    let mut pairs = vec![Pair::from_poly(g.sign_normalized(), int(d as i64)).expect("nonzero")];
    for (_, i) in e_upper {
        pairs.push(Pair::from_poly(Polynomial::var(vars.clone(), *i), Rational::one()).expect("nonzero"));
    }
    let to_chart = (0..n)
        .map(|i| {
            let mut x = Polynomial::var(vars.clone(), i);
            x.add_term(Exponent::zero(n), -point[i].clone());
            x
        })
        .collect();
    let mut divisor_vars: Vec<usize> = e_upper.iter().chain(retained).map(|(_, i)| *i).collect();
    divisor_vars.sort();
    Ok(Presentation {
        vars,
        point: point.to_vec(),
        to_chart,
        chain: vec![],
        pairs,
        retained: retained.to_vec(),
        divisor_vars,
    })
}

fn is_coordinate(z: &Polynomial, n: usize) -> bool {
    z.num_terms() == 1 && z.terms().all(|(e, _)| *e == Exponent::unit(z.nvars(), n))
}

fn order_is(p: &Polynomial, d: u32) -> bool {
    p.order_at_origin() == ExtRational::from_int(d as i64)
}

/// Choose a maximal-contact hypersurface and pass to the derivative
/// collection `H = {(∂^q h/∂x_n^q |_N, μ_h − q) : q < μ_h}` on `N = V(z)`.
///
/// Preference order: a coordinate `z`, then any solvable `z`, then a
/// solvable `z` after a linear change `x_m ← x_m + c·x_n`. Pairs are scanned
/// in order and directions in reverse variable order.
pub fn maximal_contact(p: &Presentation) -> Result<Presentation> {
    let n_vars = p.vars.len();
    let eliminated = p.eliminated();
    let retained_vars: Vec<usize> = p.retained.iter().map(|(_, i)| *i).collect();
    let directions: Vec<usize> = (0..n_vars)
        .rev()
        .filter(|i| !eliminated.contains(i) && !retained_vars.contains(i))
        .collect();
    let mut ints: Vec<(Polynomial, u32)> = p.pairs.iter().map(|q| q.integralize()).collect();

    if ints.len() == 1 && ints[0].1 == 1 && order_is(&ints[0].0, 1) {
        let z = ints[0].0.clone();
        let z_chart = z.substitute(&p.to_chart)?;
        let mut out = p.clone();
        out.chain.push(ContactStep {
            z,
            z_chart,
            direction: None,
            change: None,
        });
        out.pairs = vec![];
        return Ok(out);
    }

    let mut choice: Option<(Polynomial, usize, Option<LinearChange>)> = None;
    'search: for coordinate_only in [true, false] {
        for (h, mu) in &ints {
            if !order_is(h, *mu) {
                continue;
            }
            for &n in &directions {
                if h.derivative(n, *mu).constant_term().is_zero() {
                    continue;
                }
                let z = h.derivative(n, mu - 1);
                let ok = if coordinate_only {
                    is_coordinate(&z, n)
                } else {
                    z.solvable_form(n).is_some()
                };
                if ok {
                    choice = Some((z, n, None));
                    break 'search;
                }
            }
        }
    }
    if choice.is_none() {
        let targets: Vec<usize> = (0..n_vars)
            .filter(|i| !eliminated.contains(i) && !p.divisor_vars.contains(i))
            .collect();
        'change: for (h, mu) in &ints {
            if !order_is(h, *mu) {
                continue;
            }
            for &n in &directions {
                for &m in targets.iter().filter(|&&m| m != n) {
                    for c in 1..=3i64 {
                        let change = LinearChange {
                            target: m,
                            direction: n,
                            c: int(c),
                        };
                        let h2 = apply_change(h, &change)?;
                        if h2.derivative(n, *mu).constant_term().is_zero() {
                            continue;
                        }
                        let z = h2.derivative(n, mu - 1);
                        if z.solvable_form(n).is_some() {
                            choice = Some((z, n, Some(change)));
                            break 'change;
                        }
                    }
                }
            }
        }
    }
    let (z, n, change) = choice.ok_or_else(|| {
        Error::MaximalContactNotSolvable(format!(
            "no admissible direction gives a solvable contact hypersurface for {}",
            fmt_pairs(&p.pairs)
        ))
    })?;

    let mut to_chart = p.to_chart.clone();
    if let Some(ch) = &change {
        for pair in ints.iter_mut() {
            pair.0 = apply_change(&pair.0, ch)?;
        }
        to_chart[ch.target] = &to_chart[ch.target] - &to_chart[ch.direction].scale(&ch.c);
    }
    let z_chart = z.substitute(&to_chart)?;
    let mut pairs = Vec::new();
    for (h, mu) in &ints {
        for q in 0..*mu {
            let r = h.derivative(n, q).restrict_solvable(&z, n)?;
            if let Some(pair) = Pair::from_poly(r.sign_normalized(), int((mu - q) as i64)) {
                pairs.push(pair);
            }
        }
    }
    let mut out = p.clone();
    out.to_chart = to_chart;
    out.chain.push(ContactStep {
        z,
        z_chart,
        direction: Some(n),
        change,
    });
    out.pairs = pairs;
    Ok(out)
}

fn apply_change(h: &Polynomial, ch: &LinearChange) -> Result<Polynomial> {
    let vars = h.vars().clone();
    let images: Vec<Polynomial> = (0..h.nvars())
        .map(|i| {
            let x = Polynomial::var(vars.clone(), i);
            if i == ch.target {
                &x + &Polynomial::var(vars.clone(), ch.direction).scale(&ch.c)
            } else {
                x
            }
        })
        .collect();
    h.substitute(&images)
}

/// Whether the coordinate subspace `Z = V(x_i : i ∈ zvars)` lies in the
/// equimultiple locus of the pairs.
pub fn equimultiple_contains(p: &Presentation, zvars: &[usize]) -> Result<bool> {
    let n = p.vars.len();
    if let Some(i) = zvars.iter().find(|i| **i >= n) {
        return Err(Error::Usage(format!("variable index {i} out of range")));
    }
    for step in &p.chain {
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                if zvars.contains(&i) {
                    Polynomial::zero(p.vars.clone())
                } else {
                    Polynomial::var(p.vars.clone(), i)
                }
            })
            .collect();
        if !step.z.substitute(&images)?.is_zero() {
            return Err(Error::Invalid(format!(
                "the subspace does not lie in the contact hypersurface V({})",
                step.z
            )));
        }
    }
    for pair in &p.pairs {
        if pair.h.order_along(zvars)? < ExtRational::Finite(pair.mu.clone()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `μ_H = min_h μ_a(h)/μ_h`, or `∞` when there are no pairs.
pub fn mu_of_presentation(p: &Presentation) -> ExtRational {
    p.pairs
        .iter()
        .map(|q| q.order().scale(&q.mu.recip()))
        .min()
        .unwrap_or(ExtRational::Infinite)
}

/// `μ_{H}` along a retained divisor: `min_h ord_H(h)/μ_h`.
pub fn mu_along_divisor(p: &Presentation, divisor_id: usize) -> Result<Rational> {
    let (_, var) = p
        .retained
        .iter()
        .find(|(d, _)| d.id == divisor_id)
        .ok_or_else(|| Error::Invalid(format!("divisor {divisor_id} is not retained")))?;
    let m = p
        .pairs
        .iter()
        .map(|q| q.h.order_along(&[*var]).map(|o| o.scale(&q.mu.recip())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .unwrap_or(ExtRational::Infinite);
    match m {
        ExtRational::Finite(q) => Ok(q),
        ExtRational::Infinite => Err(Error::Internal("no pairs to measure along a divisor".into())),
    }
}

/// The companion divisor `D = Π x_H^{μ_H}` and residual pairs
/// `(h / D^{μ_h}, μ_h·ν)`. Residuals of multiplicity zero that are units are
/// dropped.
pub fn companion_and_residual(
    p: &Presentation,
    nu: &Rational,
) -> Result<(FormalMonomial, Vec<Pair>)> {
    let mut d = FormalMonomial::one();
    for (div, var) in &p.retained {
        d.set(*var, mu_along_divisor(p, div.id)?);
    }
    let mut residuals = Vec::new();
    for pair in &p.pairs {
        let g = pair.h.div_mono(&d.pow(&pair.mu))?;
        let mu_g = &pair.mu * nu;
        if mu_g.is_zero() && g.order_at_origin() == ExtRational::from_int(0) {
            continue;
        }
        if g.order_at_origin() < ExtRational::Finite(mu_g.clone()) {
            return Err(Error::Internal(format!(
                "residual {g} has order below its multiplicity {}",
                fmt_rational(&mu_g)
            )));
        }
        if let Some(r) = Pair::new(g, mu_g) {
            residuals.push(r);
        }
    }
    Ok((d, residuals))
}

/// `G_{r+1}`: the residuals, plus `(D, 1 − ν)` when `0 ≤ ν < 1`.
pub fn form_g_next(residuals: Vec<Pair>, d: &FormalMonomial, nu: &Rational, vars: &Vars) -> Vec<Pair> {
    let mut out = residuals;
    if nu < &Rational::one() && !nu.is_negative() && !d.is_one() {
        out.push(Pair {
            h: Hybrid::from_monomial(vars.clone(), d.clone()),
            mu: Rational::one() - nu,
        });
    }
    out
}

/// Canonical form of a pair list: signs normalized, order-exact monomial
/// pairs split into their variables `(x_i, 1)`, duplicates removed.
pub fn normalize_pairs(pairs: &[Pair]) -> Vec<Pair> {
    let mut out: Vec<Pair> = Vec::new();
    let mut push = |p: Pair| {
        if !out.contains(&p) {
            out.push(p);
        }
    };
    for pair in pairs {
        let h = pair.h.sign_normalized();
        if h.is_monomial() && pair.is_order_exact() {
            for (i, _) in h.mono().iter() {
                let x = Polynomial::var(h.vars().clone(), *i);
                push(Pair::from_poly(x, Rational::one()).expect("nonzero"));
            }
        } else {
            push(Pair { h, mu: pair.mu.clone() });
        }
    }
    out
}

/// Transform a presentation under the blowing-up `child → parent`, to the
/// point `a'` of the child chart: `h' = y_exc^{−μ_h}·h∘σ`, `z' = ` strict
/// transform of `z`, and the retained divisors through `a'` together with
/// the new exceptional divisor.
pub fn transform_presentation(p: &Presentation, child: &Chart, a: &[Rational]) -> Result<Presentation> {
    if p.chain.iter().any(|s| s.change.is_some()) {
        return Err(Error::Unsupported(
            "transforming a presentation built after a linear change".into(),
        ));
    }
    let k = child
        .exceptional
        .ok_or_else(|| Error::Invalid("chart has no exceptional coordinate".into()))?;
    let n = child.nvars();
    let vars = child.vars.clone();
    let exc = |e: u32| {
        let mut x = Exponent::zero(n);
        x.0[k] = e;
        x
    };
    let mut pairs = Vec::new();
    for pair in &p.pairs {
        let (h, mu) = pair.integralize();
        let h_chart = h.substitute(&p.to_chart)?;
        let t = total_transform(&h_chart, child)?;
        let h1 = t.div_monomial(&exc(mu)).ok_or_else(|| {
            Error::NotInTransform(format!("{h_chart} has order below {mu} along the centre"))
        })?;
        let h1 = h1.translate(a);
        if h1.order_at_origin() < ExtRational::from_int(mu as i64) {
            return Err(Error::NotInTransform(format!(
                "transformed pair {h1} has order below {mu} at the point"
            )));
        }
        if let Some(q) = Pair::from_poly(h1, int(mu as i64)) {
            pairs.push(q);
        }
    }
    let to_chart: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut x = Polynomial::var(vars.clone(), i);
            x.add_term(Exponent::zero(n), -a[i].clone());
            x
        })
        .collect();
    let mut chain = Vec::new();
    for step in &p.chain {
        let t = total_transform(&step.z_chart, child)?;
        let (_, z1) = t.monomial_factor(k)?;
        if !z1.evaluate(a).is_zero() {
            return Err(Error::NotInTransform(format!(
                "the point is not on the strict transform of V({})",
                step.z_chart
            )));
        }
        chain.push(ContactStep {
            z: z1.translate(a),
            z_chart: z1,
            direction: step.direction,
            change: None,
        });
    }
    let mut retained: Vec<(Divisor, usize)> = p
        .retained
        .iter()
        .filter(|(_, i)| *i != k && a[*i].is_zero())
        .cloned()
        .collect();
    if a[k].is_zero() {
        if let Some(d) = child.divisors.iter().find(|d| d.var() == Some(k)) {
            retained.push((d.divisor.clone(), k));
        }
    }
    let mut divisor_vars: Vec<usize> = child
        .divisors_through(a)
        .into_iter()
        .map(|(_, i)| i)
        .collect();
    divisor_vars.sort();
    Ok(Presentation {
        vars,
        point: a.to_vec(),
        to_chart,
        chain,
        pairs,
        retained,
        divisor_vars,
    })
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain: Vec<String> = self.chain.iter().map(|s| s.z_chart.to_string()).collect();
        write!(f, "N = V({}), pairs = {}", chain.join(", "), fmt_pairs(&self.pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{blow_up, CentreSpec};
    use crate::poly::{parse_polynomial, rat, vars_of};

    fn poly(s: &str, v: &Vars) -> Polynomial {
        parse_polynomial(s, Some(v)).unwrap()
    }

    fn zero_point(n: usize) -> Vec<Rational> {
        vec![int(0); n]
    }

    #[test]
    fn example_year_zero_contact() {
        let v = vars_of(&["x1", "x2", "x3"]);
        let g = poly("x3^2 - x1^2*x2^3", &v);
        let p = codim0_presentation(&g, 2, &[], &[], &zero_point(3)).unwrap();
        let p1 = maximal_contact(&p).unwrap();
        assert_eq!(p1.chain[0].z.to_string(), "2*x3");
        assert_eq!(fmt_pairs(&p1.pairs), "{(x1^2*x2^3,2)}");
        assert_eq!(mu_of_presentation(&p1), ExtRational::finite(rat(5, 2)));
    }

    #[test]
    fn contact_from_divisor_pair() {
        let v = vars_of(&["y1", "y2", "y3"]);
        let g = poly("y3 - y1*y2", &v);
        let h1 = (Divisor { id: 1, birth: 1 }, 2);
        let p = codim0_presentation(&g, 1, &[h1], &[], &zero_point(3)).unwrap();
        assert_eq!(fmt_pairs(&p.pairs), "{(y3 - y1*y2,1),(y3,1)}");
        let p1 = maximal_contact(&p).unwrap();
        assert_eq!(p1.chain[0].z.to_string(), "y3");
        assert_eq!(fmt_pairs(&p1.pairs), "{(y1*y2,1)}");
    }

    #[test]
    fn linear_change_search() {
        let v = vars_of(&["x3", "x1", "x2"]);
        let g = poly("x3^3 - x1*x2", &v);
        let p = codim0_presentation(&g, 2, &[], &[], &zero_point(3)).unwrap();
        let p1 = maximal_contact(&p).unwrap();
        let step = &p1.chain[0];
        assert!(step.change.is_some());
        assert_eq!(step.z.order_at_origin(), ExtRational::from_int(1));
        assert_eq!(mu_of_presentation(&p1), ExtRational::from_int(1));
    }

    #[test]
    fn second_derivative_after_substitution() {
        let v = vars_of(&["u", "v", "x3"]);
        let g = poly("x3^3 - (u + v)*(u - v)", &v);
        assert_eq!(g.derivative(0, 2), poly("-2", &v));
    }

    #[test]
    fn equimultiple_examples() {
        let v = vars_of(&["w1", "w2", "w3"]);
        let d = FormalMonomial::from_pairs([(0, rat(1, 2)), (1, int(2))]);
        let mut p = codim0_presentation(&poly("w3^2 - w1*w2^4", &v), 2, &[], &[], &zero_point(3)).unwrap();
        p = maximal_contact(&p).unwrap();
        p.pairs = vec![Pair {
            h: Hybrid::from_monomial(v.clone(), d),
            mu: int(1),
        }];
        assert!(equimultiple_contains(&p, &[1, 2]).unwrap());
        assert!(equimultiple_contains(&p, &[1]).is_err());

        let x = vars_of(&["x1", "x2"]);
        let mut q = codim0_presentation(&poly("x1", &x), 1, &[], &[], &zero_point(2)).unwrap();
        assert!(equimultiple_contains(&q, &[0]).unwrap());
        q.pairs = vec![Pair::from_poly(poly("x1 + x2^2", &x), int(1)).unwrap()];
        assert!(!equimultiple_contains(&q, &[1]).unwrap());
    }

    #[test]
    fn companion_divisor_examples() {
        let v = vars_of(&["y1", "y2", "y3"]);
        let h1 = (Divisor { id: 1, birth: 1 }, 0);
        let p = codim0_presentation(&poly("y3^2 - y1^3*y2^3", &v), 2, &[], &[h1], &zero_point(3)).unwrap();
        let p1 = maximal_contact(&p).unwrap();
        assert_eq!(mu_of_presentation(&p1), ExtRational::from_int(3));
        let m = mu_along_divisor(&p1, 1).unwrap();
        assert_eq!(m, rat(3, 2));
        let (d, res) = companion_and_residual(&p1, &rat(3, 2)).unwrap();
        assert_eq!(d.exponent(0), rat(3, 2));
        assert_eq!(fmt_pairs(&res), "{(y2^3,3)}");
        let g = form_g_next(res.clone(), &d, &rat(3, 2), &v);
        assert_eq!(g.len(), 1);
        assert_eq!(fmt_pairs(&normalize_pairs(&g)), "{(y2,1)}");
        for pair in &p1.pairs {
            let back = Hybrid::new(d.pow(&pair.mu), Polynomial::one(v.clone()))
                .mul(&res[0].h)
                .unwrap();
            assert_eq!(back, pair.h);
        }
        assert!(mu_along_divisor(&p1, 7).is_err());
    }

    #[test]
    fn zero_residual_at_terminal() {
        let v = vars_of(&["w1", "w2", "w3"]);
        let h2 = (Divisor { id: 2, birth: 2 }, 1);
        let h3 = (Divisor { id: 3, birth: 3 }, 0);
        let p = codim0_presentation(&poly("w3^2 - w1*w2^4", &v), 2, &[], &[h2, h3], &zero_point(3)).unwrap();
        let p1 = maximal_contact(&p).unwrap();
        let (d, res) = companion_and_residual(&p1, &int(0)).unwrap();
        assert_eq!(d.fmt_with(&v), "w1^(1/2)*w2^2");
        assert!(res.is_empty());
    }

    #[test]
    fn d_pair_appended_below_one() {
        let v = vars_of(&["x", "h"]);
        let d = FormalMonomial::from_pairs([(1, int(1))]);
        let res = vec![Pair::from_poly(poly("x", &v), rat(1, 2)).unwrap()];
        let g = form_g_next(res, &d, &rat(1, 2), &v);
        assert_eq!(fmt_pairs(&g), "{(x,1/2),(h,1/2)}");
    }

    #[test]
    fn normalization_rules() {
        let v = vars_of(&["x1", "x2"]);
        let a = normalize_pairs(&[Pair::from_poly(poly("x1^2*x2^3", &v), int(5)).unwrap()]);
        assert_eq!(fmt_pairs(&a), "{(x1,1),(x2,1)}");
        let b = Pair::from_poly(poly("x1^2 + x2^3", &v), int(2)).unwrap();
        assert_eq!(normalize_pairs(std::slice::from_ref(&b)), vec![b]);
        let (h, mu) = Pair {
            h: Hybrid::from_monomial(v.clone(), FormalMonomial::from_pairs([(0, rat(3, 2))])),
            mu: rat(1, 2),
        }
        .integralize();
        assert_eq!((h.to_string(), mu), ("x1^3".to_string(), 1));
    }

    #[test]
    fn transform_matches_fresh_presentation() {
        // year one to year two of the first worked example, at the origin of the second chart
        let v = vars_of(&["y1", "y2", "y3"]);
        let h1 = (Divisor { id: 1, birth: 1 }, 0);
        let mut root = crate::chart::Chart::root(v.clone());
        root.id = "U_1".into();
        root.year = 1;
        root.parent = Some("U".into());
        root.divisors = vec![crate::chart::ChartDivisor {
            divisor: h1.0.clone(),
            locus: crate::chart::DivisorLocus::Coordinate(0),
        }];
        let p = codim0_presentation(&poly("y3^2 - y1^3*y2^3", &v), 2, &[], &[h1], &zero_point(3)).unwrap();
        let p1 = maximal_contact(&p).unwrap();
        let centre = CentreSpec {
            coords: (0..3).map(|i| (i, int(0))).collect(),
            labels: vec![],
        };
        let charts = blow_up(&root, &centre, 2).unwrap();
        let u12 = &charts[1];
        let t = transform_presentation(&p1, u12, &zero_point(3)).unwrap();
        assert_eq!(fmt_pairs(&t.pairs), "{(z1^3*z2^4,2)}");

        let g2 = crate::chart::strict_transform(&poly("y3^2 - y1^3*y2^3", &v), u12, 2).unwrap();
        let divs = u12.coordinate_divisors();
        let fresh = maximal_contact(&codim0_presentation(&g2, 2, &[], &divs, &zero_point(3)).unwrap()).unwrap();
        assert_eq!(mu_of_presentation(&t), mu_of_presentation(&fresh));
        for (d, _) in &divs {
            assert_eq!(mu_along_divisor(&t, d.id).unwrap(), mu_along_divisor(&fresh, d.id).unwrap());
        }
        for z in [vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
            assert_eq!(
                equimultiple_contains(&t, &z).unwrap(),
                equimultiple_contains(&fresh, &z).unwrap()
            );
        }
    }
}
