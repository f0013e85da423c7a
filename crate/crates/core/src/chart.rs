//! Coordinate charts of a tower of blowings-up, the exceptional-divisor
//! registry with birth years, and the strict, weak and total transforms.
//!
//! A centre is either a coordinate subspace `V(x_i − c_i : i ∈ Z)` of a chart
//! or, for the final absorption step of the principal-ideal mode, a smooth
//! hypersurface `V(f)`. Blowing up `V(x_i − c_i : i ∈ Z)` gives one chart per
//! `k ∈ Z` with `x_k = c_k + y_k`, `x_j = c_j + y_k·y_j` for `j ∈ Z ∖ {k}`, and
//! `x_l = y_l` otherwise; the new exceptional divisor is `V(y_k)`.

use crate::error::{Error, Result};
use crate::poly::{int, Exponent, Polynomial, Rational, Vars};
use num::Zero;
use std::sync::Arc;

/// An exceptional hypersurface, identified across charts by its id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    pub id: usize,
    pub birth: usize,
}

/// Where a divisor lives inside a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorLocus {
    /// The coordinate hyperplane `V(x_i)`.
    Coordinate(usize),
    /// A smooth hypersurface absorbed in codimension one.
    Hypersurface(Polynomial),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartDivisor {
    pub divisor: Divisor,
    pub locus: DivisorLocus,
}

impl ChartDivisor {
    pub fn var(&self) -> Option<usize> {
        match self.locus {
            DivisorLocus::Coordinate(i) => Some(i),
            DivisorLocus::Hypersurface(_) => None,
        }
    }
}

/// A coordinate-subspace centre `V(x_i − c_i)`, with the labels of the
/// divisors that contain it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentreSpec {
    pub coords: Vec<(usize, Rational)>,
    pub labels: Vec<usize>,
}

impl CentreSpec {
    pub fn vars(&self) -> Vec<usize> {
        self.coords.iter().map(|(i, _)| *i).collect()
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        self.coords.iter().all(|(i, c)| &p[*i] == c)
    }

    /// Generators `x_i − c_i` over the given variables.
    pub fn generators(&self, vars: &Vars) -> Vec<Polynomial> {
        self.coords
            .iter()
            .map(|(i, c)| {
                let mut g = Polynomial::var(vars.clone(), *i);
                g.add_term(Exponent::zero(vars.len()), -c.clone());
                g
            })
            .collect()
    }

    pub fn fmt_with(&self, vars: &Vars) -> String {
        let gens: Vec<String> = self.generators(vars).iter().map(|g| g.to_string()).collect();
        format!("V({})", gens.join(", "))
    }
}

/// One affine chart of some year of the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub id: String,
    pub year: usize,
    pub vars: Vars,
    pub parent: Option<String>,
    /// Image of each parent variable, as a polynomial in this chart's variables.
    pub substitution: Vec<Polynomial>,
    /// Index of the new exceptional variable, `None` for the root and for
    /// hypersurface absorption.
    pub exceptional: Option<usize>,
    pub divisors: Vec<ChartDivisor>,
}

const LETTERS: [&str; 10] = ["y", "z", "w", "v", "u", "t", "s", "r", "q", "p"];

/// Variable names of a chart of the given year (`y1, y2, …` in year one,
/// then `z`, `w`, `v`, …).
pub fn chart_vars(year: usize, n: usize) -> Vars {
    let names: Vec<String> = (1..=n)
        .map(|i| match LETTERS.get(year.wrapping_sub(1)) {
            Some(l) if year >= 1 => format!("{l}{i}"),
            _ => format!("e{year}_{i}"),
        })
        .collect();
    Arc::new(names)
}

impl Chart {
    pub fn root(vars: Vars) -> Chart {
        Chart {
            id: "U".into(),
            year: 0,
            vars,
            parent: None,
            substitution: vec![],
            exceptional: None,
            divisors: vec![],
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Coordinate divisors as `(divisor, variable)` sorted by birth, then id.
    pub fn coordinate_divisors(&self) -> Vec<(Divisor, usize)> {
        let mut v: Vec<(Divisor, usize)> = self
            .divisors
            .iter()
            .filter_map(|d| d.var().map(|i| (d.divisor.clone(), i)))
            .collect();
        v.sort();
        v
    }

    /// Divisors sorted by birth year then id.
    pub fn divisors_by_birth(&self) -> Vec<Divisor> {
        let mut v: Vec<Divisor> = self.divisors.iter().map(|d| d.divisor.clone()).collect();
        v.sort_by_key(|d| (d.birth, d.id));
        v
    }

    pub fn divisor_var(&self, id: usize) -> Option<usize> {
        self.divisors
            .iter()
            .find(|d| d.divisor.id == id)
            .and_then(|d| d.var())
    }

    /// Coordinate divisors passing through `p`.
    pub fn divisors_through(&self, p: &[Rational]) -> Vec<(Divisor, usize)> {
        self.coordinate_divisors()
            .into_iter()
            .filter(|(_, i)| p[*i].is_zero())
            .collect()
    }

    /// Image of a point of this chart in the parent chart.
    pub fn push_point(&self, p: &[Rational]) -> Option<Vec<Rational>> {
        self.parent.as_ref()?;
        Some(self.substitution.iter().map(|s| s.evaluate(p)).collect())
    }

    /// The preimage in this chart of a parent point lying off the centre, if
    /// it lies in this chart's domain.
    pub fn pull_point(&self, centre: &CentreSpec, p: &[Rational]) -> Option<Vec<Rational>> {
        let k = self.exceptional?;
        let ck = &centre.coords.iter().find(|(i, _)| *i == k)?.1;
        let t = &p[k] - ck;
        if t.is_zero() {
            return None;
        }
        let mut out = p.to_vec();
        for (j, cj) in &centre.coords {
            out[*j] = if *j == k { t.clone() } else { (&p[*j] - cj) / &t };
        }
        Some(out)
    }
}

/// Blow up a coordinate-subspace centre of `chart`. Returns one chart per
/// centre variable, in increasing variable order.
pub fn blow_up(chart: &Chart, centre: &CentreSpec, new_id: usize) -> Result<Vec<Chart>> {
    if centre.coords.is_empty() {
        return Err(Error::Invalid("a centre needs at least one generator".into()));
    }
    let n = chart.nvars();
    let mut coords = centre.coords.clone();
    coords.sort_by_key(|(i, _)| *i);
    for w in coords.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Invalid("repeated centre variable".into()));
        }
    }
    if let Some((i, _)) = coords.iter().find(|(i, _)| *i >= n) {
        return Err(Error::Invalid(format!("centre variable index {i} out of range")));
    }
    for d in &chart.divisors {
        match &d.locus {
            DivisorLocus::Coordinate(i) => {
                if coords.iter().any(|(j, c)| j == i && !c.is_zero()) {
                    return Err(Error::Unsupported(format!(
                        "centre translation would move the divisor on {}",
                        chart.vars[*i]
                    )));
                }
            }
            DivisorLocus::Hypersurface(_) => {
                return Err(Error::Unsupported(
                    "cannot blow up a chart that carries a hypersurface divisor".into(),
                ))
            }
        }
    }
    let year = chart.year + 1;
    let vars = chart_vars(year, n);
    let mut out = Vec::new();
    for (k, _) in &coords {
        let y = |i: usize| Polynomial::var(vars.clone(), i);
        let konst = |c: &Rational| Polynomial::constant(vars.clone(), c.clone());
        let substitution: Vec<Polynomial> = (0..n)
            .map(|j| match coords.iter().find(|(i, _)| *i == j) {
                Some((_, cj)) if j == *k => &konst(cj) + &y(j),
                Some((_, cj)) => &konst(cj) + &(&y(*k) * &y(j)),
                None => y(j),
            })
            .collect();
        let mut divisors: Vec<ChartDivisor> = chart
            .divisors
            .iter()
            .filter(|d| d.var() != Some(*k))
            .cloned()
            .collect();
        divisors.push(ChartDivisor {
            divisor: Divisor {
                id: new_id,
                birth: year,
            },
            locus: DivisorLocus::Coordinate(*k),
        });
        let suffix = if n <= 9 {
            format!("{}", k + 1)
        } else {
            format!("[{}]", k + 1)
        };
        let id = if chart.parent.is_none() && chart.id == "U" {
            format!("U_{suffix}")
        } else {
            format!("{}{suffix}", chart.id)
        };
        out.push(Chart {
            id,
            year,
            vars: vars.clone(),
            parent: Some(chart.id.clone()),
            substitution,
            exceptional: Some(*k),
            divisors,
        });
    }
    Ok(out)
}

/// Blow up a smooth hypersurface `V(f)`: the identity chart, with `V(f)`
/// registered as a new divisor.
pub fn blow_up_hypersurface(chart: &Chart, f: &Polynomial, new_id: usize) -> Result<Chart> {
    if f.vars() != &chart.vars {
        return Err(Error::Usage("centre is not over the chart's variables".into()));
    }
    let year = chart.year + 1;
    let vars = chart_vars(year, chart.nvars());
    let substitution: Vec<Polynomial> = (0..chart.nvars())
        .map(|i| Polynomial::var(vars.clone(), i))
        .collect();
    let mut divisors: Vec<ChartDivisor> = chart
        .divisors
        .iter()
        .map(|d| ChartDivisor {
            divisor: d.divisor.clone(),
            locus: match &d.locus {
                DivisorLocus::Coordinate(i) => DivisorLocus::Coordinate(*i),
                DivisorLocus::Hypersurface(p) => DivisorLocus::Hypersurface(p.with_vars(vars.clone())),
            },
        })
        .collect();
    divisors.push(ChartDivisor {
        divisor: Divisor {
            id: new_id,
            birth: year,
        },
        locus: DivisorLocus::Hypersurface(f.with_vars(vars.clone())),
    });
    let id = if chart.id == "U" {
        "U_h".to_string()
    } else {
        format!("{}h", chart.id)
    };
    Ok(Chart {
        id,
        year,
        vars,
        parent: Some(chart.id.clone()),
        substitution,
        exceptional: None,
        divisors,
    })
}

/// `f∘σ`.
pub fn total_transform(f: &Polynomial, child: &Chart) -> Result<Polynomial> {
    if child.parent.is_none() {
        return Ok(f.clone());
    }
    f.substitute(&child.substitution)
}

/// `y_exc^{−d}·f∘σ`, where `d` must be the exact power of the exceptional
/// variable dividing `f∘σ`.
pub fn strict_transform(f: &Polynomial, child: &Chart, d: u32) -> Result<Polynomial> {
    let k = child
        .exceptional
        .ok_or_else(|| Error::Invalid("chart has no exceptional coordinate".into()))?;
    let t = total_transform(f, child)?;
    let (m, g) = t.monomial_factor(k)?;
    if m != d {
        return Err(Error::Internal(format!(
            "strict transform extracted {m} powers of {}, expected the order {d} along the centre",
            child.vars[k]
        )));
    }
    Ok(g)
}

/// `y_exc^{−ν}·f∘σ` (exact division, no maximal extraction).
pub fn weak_transform(f: &Polynomial, child: &Chart, nu: u32) -> Result<Polynomial> {
    let t = total_transform(f, child)?;
    let k = match child.exceptional {
        Some(k) => k,
        None => return Ok(t),
    };
    let mut e = Exponent::zero(child.nvars());
    e.0[k] = nu;
    t.div_monomial(&e).ok_or_else(|| {
        Error::Invalid(format!(
            "{} is not divisible by {}^{nu}: centre is not admissible",
            t, child.vars[k]
        ))
    })
}

/// Order of `f` along the coordinate-subspace centre.
pub fn order_along_centre(f: &Polynomial, centre: &CentreSpec) -> Result<u32> {
    let mut p = vec![Rational::zero(); f.nvars()];
    for (i, c) in &centre.coords {
        p[*i] = c.clone();
    }
    let o = f.translate(&p).order_along(&centre.vars())?;
    match o.as_finite() {
        Some(q) => Ok(q.to_integer().try_into().unwrap_or(u32::MAX)),
        None => Err(Error::Invalid("the zero polynomial has no order".into())),
    }
}

/// Chart variables evaluated to `0` except those fixed by the centre.
pub fn centre_base_point(n: usize, centre: &CentreSpec) -> Vec<Rational> {
    let mut p = vec![int(0); n];
    for (i, c) in &centre.coords {
        p[*i] = c.clone();
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, vars_of};

    fn origin(n: usize) -> CentreSpec {
        CentreSpec {
            coords: (0..n).map(|i| (i, int(0))).collect(),
            labels: vec![],
        }
    }

    #[test]
    fn point_blow_up_charts() {
        let root = Chart::root(vars_of(&["x1", "x2", "x3"]));
        let charts = blow_up(&root, &origin(3), 1).unwrap();
        assert_eq!(charts.len(), 3);
        let u1 = &charts[0];
        assert_eq!(u1.id, "U_1");
        let subs: Vec<String> = u1.substitution.iter().map(|p| p.to_string()).collect();
        assert_eq!(subs, ["y1", "y1*y2", "y1*y3"]);
        assert_eq!(u1.divisors[0].divisor, Divisor { id: 1, birth: 1 });
        let subs3: Vec<String> = charts[2].substitution.iter().map(|p| p.to_string()).collect();
        assert_eq!(subs3, ["y1*y3", "y2*y3", "y3"]);
    }

    #[test]
    fn transforms() {
        let v = vars_of(&["x1", "x2", "x3"]);
        let root = Chart::root(v.clone());
        let charts = blow_up(&root, &origin(3), 1).unwrap();
        let g = parse_polynomial("x3^2 - x1^2*x2^3", Some(&v)).unwrap();
        let g1 = strict_transform(&g, &charts[0], 2).unwrap();
        assert_eq!(g1.to_string(), "y3^2 - y1^3*y2^3");
        let t = total_transform(&g, &charts[0]).unwrap();
        assert_eq!(t.to_string(), "y1^2*y3^2 - y1^5*y2^3");
        assert!(strict_transform(&g, &charts[0], 1).is_err());

        let h = parse_polynomial("x3^3 - x1*x2", Some(&v)).unwrap();
        assert_eq!(strict_transform(&h, &charts[2], 2).unwrap().to_string(), "y3 - y1*y2");
    }

    #[test]
    fn weak_transform_examples() {
        let v = vars_of(&["x", "y"]);
        let root = Chart::root(v.clone());
        let c = blow_up(&root, &origin(2), 1).unwrap();
        let f = parse_polynomial("x^2*y", Some(&v)).unwrap();
        assert_eq!(weak_transform(&f, &c[0], 3).unwrap().to_string(), "y2");
        let f2 = parse_polynomial("x^2", Some(&v)).unwrap();
        assert_eq!(weak_transform(&f2, &c[1], 2).unwrap().to_string(), "y1^2");
        assert!(weak_transform(&f, &c[0], 4).is_err());
    }

    #[test]
    fn codimension_one_centre() {
        let v = vars_of(&["a", "b"]);
        let root = Chart::root(v.clone());
        let c = blow_up(
            &root,
            &CentreSpec {
                coords: vec![(0, int(0))],
                labels: vec![],
            },
            1,
        )
        .unwrap();
        assert_eq!(c.len(), 1);
        let f = parse_polynomial("a", Some(&v)).unwrap();
        assert_eq!(strict_transform(&f, &c[0], 1).unwrap(), Polynomial::one(c[0].vars.clone()));
    }

    #[test]
    fn point_lineage() {
        let root = Chart::root(vars_of(&["x1", "x2", "x3"]));
        let charts = blow_up(&root, &origin(3), 1).unwrap();
        let p = vec![int(0), int(1), int(0)];
        assert_eq!(charts[0].push_point(&p).unwrap(), vec![int(0); 3]);
        assert!(root.push_point(&p).is_none());
        let q = vec![int(2), int(4), int(6)];
        let pulled = charts[0].pull_point(&origin(3), &q).unwrap();
        assert_eq!(pulled, vec![int(2), int(2), int(3)]);
        assert_eq!(charts[0].push_point(&pulled).unwrap(), q);
    }

    #[test]
    fn divisor_on_centre_variable_is_dropped_in_its_chart() {
        let root = Chart::root(vars_of(&["a", "b"]));
        let c = blow_up(&root, &origin(2), 1).unwrap();
        let c2 = blow_up(&c[1], &origin(2), 2).unwrap();
        let ids = |ch: &Chart| ch.divisors.iter().map(|d| d.divisor.id).collect::<Vec<_>>();
        assert_eq!(ids(&c2[0]), vec![1, 2]);
        assert_eq!(ids(&c2[1]), vec![2]);
    }
}
