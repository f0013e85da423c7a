//! The desingularization invariant `inv_X(a) = (ν_1, s_1; …; ν_t, s_t; ν_{t+1})`
//! of a hypersurface at a rational point, the residual order `μ_X(a)`, the
//! terminal locus with its divisor labels, and the extended invariant.
//!
//! History enters only through the words of the ancestors of the point: the
//! counts `s_r` depend on the earliest year in which the current prefix of the
//! word was already attained.

use crate::chart::{CentreSpec, Divisor};
use crate::diagram::as_coordinate_subspace;
use crate::error::{Error, Result};
use crate::poly::{fmt_rational, int, parse_rational, ExtRational, Polynomial, Rational};
use crate::presentation::{
    codim0_presentation, companion_and_residual, form_g_next, fmt_pairs, maximal_contact,
    mu_along_divisor, mu_of_presentation, normalize_pairs, Pair, Presentation,
};
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// How the recursion ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Terminal {
    /// `ν_{t+1} = 0`: the residual pairs are monomial in the divisors.
    Zero,
    /// `ν_{t+1} = ∞`: the derivative collection vanished.
    Infinity,
}

/// A value of `inv_X`, ordered lexicographically on its flattened word with
/// `∞` maximal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvValue {
    /// `(ν_r, s_r)` for `r = 1, …, t`.
    pub levels: Vec<(Rational, usize)>,
    pub terminal: Terminal,
}

impl InvValue {
    /// `(ν_1, s_1, …, ν_t, s_t, ν_{t+1})`.
    pub fn word(&self) -> Vec<ExtRational> {
        let mut w = Vec::with_capacity(2 * self.levels.len() + 1);
        for (nu, s) in &self.levels {
            w.push(ExtRational::Finite(nu.clone()));
            w.push(ExtRational::from_int(*s as i64));
        }
        w.push(match self.terminal {
            Terminal::Zero => ExtRational::from_int(0),
            Terminal::Infinity => ExtRational::Infinite,
        });
        w
    }

    pub fn nu1(&self) -> Option<&Rational> {
        self.levels.first().map(|(nu, _)| nu)
    }

    /// Rebuild from a flattened word; inverse of [`InvValue::word`].
    pub fn from_word(w: &[ExtRational]) -> Result<InvValue> {
        if w.len().is_multiple_of(2) {
            return Err(Error::Invalid("an inv word has odd length".into()));
        }
        let mut levels = Vec::new();
        for pair in w[..w.len() - 1].chunks(2) {
            let nu = pair[0]
                .as_finite()
                .filter(|q| q.is_positive())
                .ok_or_else(|| Error::Invalid("inner entries of an inv word are positive".into()))?;
            let s = pair[1]
                .as_finite()
                .filter(|q| q.is_integer() && !q.is_negative())
                .and_then(|q| q.to_integer().to_usize())
                .ok_or_else(|| Error::Invalid("counts in an inv word are natural numbers".into()))?;
            levels.push((nu.clone(), s));
        }
        let terminal = match &w[w.len() - 1] {
            ExtRational::Infinite => Terminal::Infinity,
            ExtRational::Finite(q) if q.is_zero() => Terminal::Zero,
            _ => return Err(Error::Invalid("an inv word ends in 0 or inf".into())),
        };
        Ok(InvValue { levels, terminal })
    }

    /// Parse the printed form `(2,0,5/2,0,1,0,inf)`.
    pub fn parse(text: &str) -> Result<InvValue> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("'{text}' is not a parenthesized inv word"),
            })?;
        let w = inner
            .split(',')
            .map(|e| match e.trim() {
                "inf" => Ok(ExtRational::Infinite),
                q => parse_rational(q).map(ExtRational::Finite),
            })
            .collect::<Result<Vec<_>>>()?;
        InvValue::from_word(&w)
    }
}

impl Ord for InvValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word().cmp(&other.word())
    }
}

impl PartialOrd for InvValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for InvValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.word().iter().map(|e| e.to_string()).collect();
        write!(f, "({})", w.join(","))
    }
}

/// Lexicographic comparison of two invariant values.
pub fn compare_inv(u: &InvValue, v: &InvValue) -> Ordering {
    u.cmp(v)
}

/// One component of the terminal locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Generators in chart coordinates.
    pub ideal: Vec<Polynomial>,
    /// The component as a coordinate subspace, when it is one.
    pub centre: Option<CentreSpec>,
    /// Retained divisors whose intersection cuts out the component inside
    /// the contact subspace (empty for an `∞` terminal).
    pub cut_by: Vec<usize>,
}

impl Component {
    /// Ids of the chart divisors containing the component.
    pub fn labels(&self) -> &[usize] {
        self.centre.as_ref().map(|c| c.labels.as_slice()).unwrap_or(&[])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalLocus {
    pub components: Vec<Component>,
}

/// Input to [`inv_at_point`].
#[derive(Clone, Debug)]
pub struct PointContext<'a> {
    /// The chart's defining polynomial (strict or weak transform).
    pub g: &'a Polynomial,
    pub point: &'a [Rational],
    pub year: usize,
    /// All coordinate divisors of the chart with their variables.
    pub divisors: Vec<(Divisor, usize)>,
    /// Words of the ancestors of the point, as `(year, inv)` in increasing
    /// year order, not including the point itself.
    pub ancestors: Vec<(usize, InvValue)>,
}

/// Everything computed at a point.
#[derive(Clone, Debug)]
pub struct InvResult {
    pub inv: InvValue,
    pub mu_x: Option<Rational>,
    pub locus: TerminalLocus,
    /// The terminal presentation.
    pub presentation: Presentation,
    /// The δ-sequence of each component over the chart's divisors.
    pub deltas: Vec<Vec<bool>>,
    /// Index of the component with maximal label set `J(a)`.
    pub selected: usize,
    /// Human-readable presentation at each level.
    pub trail: Vec<String>,
}

impl InvResult {
    /// `inv_e(a) = (inv_X(a); J(a))` as a sort key.
    pub fn extended(&self) -> ExtendedInv {
        ExtendedInv {
            inv: self.inv.clone(),
            delta: self.deltas[self.selected].clone(),
        }
    }

    pub fn selected_component(&self) -> &Component {
        &self.locus.components[self.selected]
    }
}

/// The extended invariant: `inv_X` followed by the δ-sequence of `J(a)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedInv {
    pub inv: InvValue,
    pub delta: Vec<bool>,
}

impl fmt::Display for ExtendedInv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: String = self.delta.iter().map(|b| if *b { '1' } else { '0' }).collect();
        write!(f, "{}; J = [{}]", self.inv, d)
    }
}

/// Smallest ancestor year whose word starts with `prefix`, else `year`.
fn first_year_with_prefix(ctx: &PointContext, prefix: &[ExtRational]) -> usize {
    ctx.ancestors
        .iter()
        .find(|(_, w)| {
            let w = w.word();
            w.len() >= prefix.len() && w[..prefix.len()] == *prefix
        })
        .map(|(y, _)| *y)
        .unwrap_or(ctx.year)
}

/// Split the divisors not yet consumed into those born by year `i`
/// (counted in `s`) and those retained for the next level.
pub fn s_count(
    remaining: &[(Divisor, usize)],
    i: usize,
) -> (Vec<(Divisor, usize)>, Vec<(Divisor, usize)>) {
    remaining.iter().cloned().partition(|(d, _)| d.birth <= i)
}

/// `ν = μ − Σ μ_H`.
pub fn nu_next(mu: &ExtRational, contributions: &[Rational]) -> Result<ExtRational> {
    let sum = contributions.iter().fold(Rational::zero(), |a, b| a + b);
    let nu = match mu {
        ExtRational::Infinite => ExtRational::Infinite,
        ExtRational::Finite(m) => ExtRational::Finite(m - sum),
    };
    if nu < ExtRational::from_int(0) {
        return Err(Error::Internal(format!("negative invariant entry {nu}")));
    }
    Ok(nu)
}

/// The invariant at a point, with its terminal data.
pub fn inv_at_point(ctx: &PointContext) -> Result<InvResult> {
    let n = ctx.g.nvars();
    if ctx.point.len() != n {
        return Err(Error::Usage(format!(
            "point has {} coordinates, the chart has {n}",
            ctx.point.len()
        )));
    }
    let g0 = ctx.g.translate(ctx.point);
    let d = match g0.order_at_origin() {
        ExtRational::Finite(q) if q.is_zero() => {
            return Err(Error::Invalid("the point does not lie on the hypersurface".into()))
        }
        ExtRational::Finite(q) => q.to_integer().to_u32().expect("small order"),
        ExtRational::Infinite => return Err(Error::Invalid("the zero polynomial has no invariant".into())),
    };
    let mut through: Vec<(Divisor, usize)> = ctx
        .divisors
        .iter()
        .filter(|(_, i)| ctx.point[*i].is_zero())
        .cloned()
        .collect();
    through.sort_by_key(|(h, _)| (h.birth, h.id));

    let mut word = vec![ExtRational::from_int(d as i64)];
    let i = first_year_with_prefix(ctx, &word);
    let (upper, retained) = s_count(&through, i);
    word.push(ExtRational::from_int(upper.len() as i64));
    let mut levels = vec![(int(d as i64), upper.len())];
    let mut p = codim0_presentation(&g0, d, &upper, &retained, ctx.point)?;
    let mut trail = vec![format!("F_1 = {}", fmt_pairs(&p.pairs))];

    let mut outcome = None;
    for _ in 0..=n {
        p = maximal_contact(&p)?;
        trail.push(format!("H = {} on {}", fmt_pairs(&p.pairs), p));
        if p.pairs.is_empty() {
            outcome = Some((Terminal::Infinity, None, vec![]));
            break;
        }
        let mu = mu_of_presentation(&p);
        let mut contributions = Vec::new();
        for (h, _) in &p.retained {
            contributions.push(mu_along_divisor(&p, h.id)?);
        }
        let nu = nu_next(&mu, &contributions)?;
        let nu = nu
            .as_finite()
            .cloned()
            .ok_or_else(|| Error::Internal("finite pairs gave an infinite order".into()))?;
        if nu.is_zero() {
            let mu_x = mu.as_finite().cloned();
            outcome = Some((Terminal::Zero, mu_x, contributions));
            break;
        }
        word.push(ExtRational::Finite(nu.clone()));
        let i = first_year_with_prefix(ctx, &word);
        let (upper, rest) = s_count(&p.retained, i);
        let (dmono, residuals) = companion_and_residual(&p, &nu)?;
        let mut f: Vec<Pair> = form_g_next(residuals, &dmono, &nu, &p.vars);
        for (_, var) in &upper {
            f.push(Pair::from_poly(Polynomial::var(p.vars.clone(), *var), Rational::one()).expect("nonzero"));
        }
        let f = normalize_pairs(&f);
        trail.push(format!(
            "D = {}, F = {}",
            dmono.fmt_with(&p.vars),
            fmt_pairs(&f)
        ));
        word.push(ExtRational::from_int(upper.len() as i64));
        levels.push((nu, upper.len()));
        p = p.with_pairs(f, rest);
    }
    let (terminal, mu_x, contributions) =
        outcome.ok_or_else(|| Error::Internal("the recursion did not terminate within n + 1 levels".into()))?;
    let inv = InvValue { levels, terminal };
    let locus = terminal_locus(&p, terminal, &contributions, &ctx.divisors)?;
    let mut order: Vec<Divisor> = ctx.divisors.iter().map(|(h, _)| h.clone()).collect();
    order.sort_by_key(|h| (h.birth, h.id));
    let (deltas, selected) = extended_inv(&locus, &order);
    Ok(InvResult {
        inv,
        mu_x,
        locus,
        presentation: p,
        deltas,
        selected,
        trail,
    })
}

/// Components of the terminal locus. For an `∞` terminal this is the
/// contact subspace itself; for a zero terminal, the intersections of the
/// contact subspace with the minimal sets of retained divisors whose
/// exponents in the companion monomial add up to at least one.
pub fn terminal_locus(
    p: &Presentation,
    terminal: Terminal,
    contributions: &[Rational],
    divisors: &[(Divisor, usize)],
) -> Result<TerminalLocus> {
    let base = p.chain_ideal();
    let cuts: Vec<Vec<usize>> = match terminal {
        Terminal::Infinity => vec![vec![]],
        Terminal::Zero => {
            let k = p.retained.len();
            if k > 16 {
                return Err(Error::Unsupported("more than 16 retained divisors".into()));
            }
            let total = |mask: u32| -> Rational {
                (0..k)
                    .filter(|j| mask & (1 << j) != 0)
                    .fold(Rational::zero(), |a, j| a + &contributions[j])
            };
            let mut out = Vec::new();
            for mask in 1u32..(1 << k) {
                let big = total(mask) >= Rational::one();
                let minimal = (0..k)
                    .filter(|j| mask & (1 << j) != 0)
                    .all(|j| total(mask & !(1 << j)) < Rational::one());
                if big && minimal {
                    out.push((0..k).filter(|j| mask & (1 << j) != 0).collect::<Vec<usize>>());
                }
            }
            out
        }
    };
    let mut components = Vec::new();
    for cut in cuts {
        let mut ideal = base.clone();
        for j in &cut {
            ideal.push(Polynomial::var(p.vars.clone(), p.retained[*j].1));
        }
        let centre = as_coordinate_subspace(&ideal).map(|coords| {
            let mut labels: Vec<usize> = divisors
                .iter()
                .filter(|(_, v)| coords.iter().any(|(i, c)| i == v && c.is_zero()))
                .map(|(h, _)| h.id)
                .collect();
            labels.sort();
            CentreSpec { coords, labels }
        });
        components.push(Component {
            ideal,
            centre,
            cut_by: cut.iter().map(|j| p.retained[*j].0.id).collect(),
        });
    }
    Ok(TerminalLocus { components })
}

/// δ-sequences of the components over the divisors in birth order, and the
/// index of the lexicographically largest one (first on ties).
pub fn extended_inv(locus: &TerminalLocus, order: &[Divisor]) -> (Vec<Vec<bool>>, usize) {
    let deltas: Vec<Vec<bool>> = locus
        .components
        .iter()
        .map(|c| order.iter().map(|h| c.labels().contains(&h.id)).collect())
        .collect();
    let mut best = 0;
    for (j, d) in deltas.iter().enumerate() {
        if *d > deltas[best] {
            best = j;
        }
    }
    (deltas, best)
}

/// The sorted-intercept profile `(d_1 ≤ d_2 ≤ …)` of the Newton diagram of
/// `f`: the lexicographically largest tuple with `Σ α_i/d_i ≥ 1` on the
/// support, over all assignments of intercepts to axes.
pub fn newton_profile(f: &Polynomial) -> Result<Vec<ExtRational>> {
    let n = f.nvars();
    if n > 8 {
        return Err(Error::Unsupported("newton profile is limited to 8 variables".into()));
    }
    if f.is_zero() || !f.constant_term().is_zero() {
        return Err(Error::Invalid("the profile needs f ≠ 0 with f(0) = 0".into()));
    }
    let support: Vec<Vec<u32>> = f.terms().map(|(e, _)| e.0.clone()).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<ExtRational>> = None;
    loop {
        let mut partial = vec![Rational::zero(); support.len()];
        let mut profile = Vec::with_capacity(n);
        for k in 0..n {
            let mut u = Rational::zero();
            for (a, part) in support.iter().zip(&partial) {
                if part >= &Rational::one() {
                    continue;
                }
                let tail: u32 = perm[k..].iter().map(|&i| a[i]).sum();
                if tail > 0 {
                    let need = (Rational::one() - part) / int(tail as i64);
                    if need > u {
                        u = need;
                    }
                }
            }
            for (a, part) in support.iter().zip(partial.iter_mut()) {
                *part += &u * int(a[perm[k]] as i64);
            }
            profile.push(if u.is_zero() {
                ExtRational::Infinite
            } else {
                ExtRational::Finite(u.recip())
            });
        }
        if best.as_ref().is_none_or(|b| profile > *b) {
            best = Some(profile);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.expect("at least one permutation"))
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn factorial(e: u64) -> BigInt {
    (1..=e).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// The denominator bounds `e_{r−1}!·ν_r ∈ ℕ` with `e_1 = ν_1` and
/// `e_r = max(e_{r−1}!, e_{r−1}!·ν_r)`, and `e_t!·μ_X ∈ ℕ`.
pub fn denominator_bound_check(inv: &InvValue, mu_x: Option<&Rational>) -> bool {
    let Some((nu1, _)) = inv.levels.first() else {
        return false;
    };
    if !nu1.is_integer() || !nu1.is_positive() {
        return false;
    }
    // `None` stands for a bound so large that every denominator divides its factorial.
    let mut e: Option<BigInt> = Some(nu1.to_integer());
    let divides = |e: &Option<BigInt>, q: &Rational| -> bool {
        match e {
            None => true,
            Some(e) if q.denom() <= e => true,
            Some(e) => {
                let f = factorial(e.to_u64().expect("small"));
                (&f * q.numer()) % q.denom() == BigInt::zero()
            }
        }
    };
    for (nu, _) in &inv.levels[1..] {
        if !nu.is_positive() || !divides(&e, nu) {
            return false;
        }
        e = match &e {
            Some(v) if *v <= BigInt::from(20) => {
                let f = factorial(v.to_u64().expect("small"));
                let scaled = (Rational::from_integer(f.clone()) * nu).to_integer();
                Some(f.max(scaled))
            }
            _ => None,
        };
    }
    match mu_x {
        Some(m) => divides(&e, m),
        None => true,
    }
}

/// Print a rational list as `(a,b,…)`.
pub fn fmt_tuple(v: &[ExtRational]) -> String {
    let s: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("({})", s.join(","))
}

/// Print `μ_X` when present.
pub fn fmt_mu(mu: Option<&Rational>) -> String {
    mu.map(fmt_rational).unwrap_or_else(|| "-".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat, vars_of, Vars};

    fn at_origin(g: &str, vars: &Vars) -> InvResult {
        let g = parse_polynomial(g, Some(vars)).unwrap();
        let zero = vec![int(0); vars.len()];
        inv_at_point(&PointContext {
            g: &g,
            point: &zero,
            year: 0,
            divisors: vec![],
            ancestors: vec![],
        })
        .unwrap()
    }

    #[test]
    fn first_example_origin() {
        let v = vars_of(&["x1", "x2", "x3"]);
        let r = at_origin("x3^2 - x1^2*x2^3", &v);
        assert_eq!(r.inv.to_string(), "(2,0,5/2,0,1,0,inf)");
        assert_eq!(r.mu_x, None);
        assert_eq!(r.locus.components.len(), 1);
        let c = r.selected_component().centre.clone().unwrap();
        assert_eq!(c.vars(), vec![0, 1, 2]);
        assert!(denominator_bound_check(&r.inv, None));
    }

    #[test]
    fn same_singularity_without_history() {
        let v = vars_of(&["x1", "x2", "x3"]);
        let r = at_origin("x3^2 - x1*x2^2", &v);
        assert_eq!(r.inv.to_string(), "(2,0,3/2,0,1,0,inf)");
        assert_eq!(r.selected_component().centre.as_ref().unwrap().vars(), vec![0, 1, 2]);
    }

    #[test]
    fn cubic_needs_linear_change() {
        let v = vars_of(&["x1", "x2", "x3"]);
        let r = at_origin("x3^3 - x1*x2", &v);
        assert_eq!(r.inv.to_string(), "(2,0,1,0,3/2,0,inf)");
    }

    #[test]
    fn history_counts_divisors() {
        // the first example one year later, at the origin of U_1
        let v = vars_of(&["y1", "y2", "y3"]);
        let g = parse_polynomial("y3^2 - y1^3*y2^3", Some(&v)).unwrap();
        let h1 = Divisor { id: 1, birth: 1 };
        let zero = vec![int(0); 3];
        let ancestors = vec![(0, InvValue::parse("(2,0,5/2,0,1,0,inf)").unwrap())];
        let r = inv_at_point(&PointContext {
            g: &g,
            point: &zero,
            year: 1,
            divisors: vec![(h1, 0)],
            ancestors,
        })
        .unwrap();
        assert_eq!(r.inv.to_string(), "(2,0,3/2,1,1,0,inf)");
    }

    #[test]
    fn zero_terminal_components() {
        let v = vars_of(&["z1", "z2", "z3"]);
        let g = parse_polynomial("z3^2 - z1^3*z2^4", Some(&v)).unwrap();
        let zero = vec![int(0); 3];
        let ancestors = vec![
            (0, InvValue::parse("(2,0,5/2,0,1,0,inf)").unwrap()),
            (1, InvValue::parse("(2,0,3/2,1,1,0,inf)").unwrap()),
        ];
        let h1 = Divisor { id: 1, birth: 1 };
        let h2 = Divisor { id: 3, birth: 2 };
        let r = inv_at_point(&PointContext {
            g: &g,
            point: &zero,
            year: 2,
            divisors: vec![(h1, 0), (h2, 1)],
            ancestors,
        })
        .unwrap();
        assert_eq!(r.inv.to_string(), "(2,0,0)");
        assert_eq!(r.mu_x, Some(rat(7, 2)));
        assert_eq!(r.locus.components.len(), 2);
        let chosen = r.selected_component().centre.clone().unwrap();
        assert_eq!(chosen.vars(), vec![0, 2]);
        assert_eq!(chosen.labels, vec![1]);
        assert_eq!(r.deltas[r.selected], vec![true, false]);
    }

    #[test]
    fn word_round_trip_and_order() {
        let a = InvValue::parse("(2,0,5/2,0,1,0,inf)").unwrap();
        let b = InvValue::parse("(2,0,3/2,1,1,0,inf)").unwrap();
        let c = InvValue::parse("(2,0,0)").unwrap();
        assert!(b < a);
        assert!(c < b);
        assert_eq!(compare_inv(&a, &a), Ordering::Equal);
        assert_eq!(InvValue::from_word(&a.word()).unwrap(), a);
        assert!(InvValue::parse("(2,0)").is_err());
        assert!(InvValue::parse("(2,0,1)").is_err());
    }

    #[test]
    fn nu_next_values() {
        assert_eq!(
            nu_next(&ExtRational::from_int(3), &[rat(3, 2)]).unwrap(),
            ExtRational::finite(rat(3, 2))
        );
        assert_eq!(
            nu_next(&ExtRational::finite(rat(7, 2)), &[rat(3, 2), int(2)]).unwrap(),
            ExtRational::from_int(0)
        );
        assert!(nu_next(&ExtRational::from_int(1), &[int(2)]).is_err());
    }

    #[test]
    fn newton_profiles() {
        let p = parse_polynomial("x^3 + y^5", None).unwrap();
        assert_eq!(fmt_tuple(&newton_profile(&p).unwrap()), "(3,5)");
        let q = parse_polynomial("x^4", Some(&vars_of(&["x", "y", "z"]))).unwrap();
        assert_eq!(fmt_tuple(&newton_profile(&q).unwrap()), "(4,inf,inf)");
        assert!(newton_profile(&parse_polynomial("1 + x", None).unwrap()).is_err());
    }

    #[test]
    fn denominator_bounds() {
        let a = InvValue::parse("(2,0,5/2,0,1,0,inf)").unwrap();
        assert!(denominator_bound_check(&a, None));
        let c = InvValue::parse("(2,0,0)").unwrap();
        assert!(denominator_bound_check(&c, Some(&rat(5, 2))));
        assert!(!denominator_bound_check(&c, Some(&rat(1, 3))));
        let bad = InvValue::parse("(2,0,1/5,0,inf)").unwrap();
        assert!(!denominator_bound_check(&bad, None));
    }
}
