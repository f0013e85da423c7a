//! The year-by-year driver: resolution of a hypersurface by strict
//! transforms, and monomialization of a principal ideal by weak transforms.
//!
//! Charts are processed one at a time in year order. In each chart the
//! invariant is evaluated at candidate points (the chart origin, user points
//! carried along from the root, and `{0,1}`-probe points when needed), the
//! point with the largest extended invariant is selected, and the component
//! `J` of its terminal locus is blown up. Every blow-up is checked against
//! semicontinuity and the strict decrease of `(inv, μ_X)` at points of the
//! new exceptional divisor, and the outcome is recorded in the tree.

use crate::chart::{
    blow_up, blow_up_hypersurface, order_along_centre, strict_transform, total_transform, weak_transform,
    CentreSpec, Chart, ChartDivisor, Divisor, DivisorLocus,
};
use crate::diagram::is_empty_variety;
use crate::error::{Error, Result};
use crate::invariant::{inv_at_point, ExtendedInv, InvResult, PointContext, Terminal};
use crate::poly::{fmt_rational, int, parse_polynomial, parse_rational, Exponent, Polynomial, Rational, Vars};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

/// Which transform the driver uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Resolution of singularities of a hypersurface (strict transforms).
    Strict,
    /// Monomialization of a principal ideal (weak transforms).
    Weak,
}

/// Driver options.
#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub mode: Mode,
    pub max_years: usize,
    /// Re-verify transform chains and certificates at every leaf.
    pub certify: bool,
    /// Extra points of the root chart tracked as candidates.
    pub points: Vec<Vec<Rational>>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            mode: Mode::Strict,
            max_years: 32,
            certify: true,
            points: vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub mode: Mode,
    pub max_years: usize,
    pub certify: bool,
    pub points: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRecord {
    pub id: usize,
    pub birth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypersurface: Option<String>,
}

/// A point at which the invariant was evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub coords: Vec<String>,
    pub inv: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_x: Option<String>,
    /// Labels `J(a)` of the selected terminal-locus component.
    pub j: Vec<usize>,
    /// The selected component, when it is a coordinate subspace.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centre: Option<String>,
    pub role: String,
}

/// What happened in a chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Action {
    Pending,
    BlowUp {
        point: Vec<String>,
        inv: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mu_x: Option<String>,
        centre: String,
        centre_coords: Vec<(usize, String)>,
        labels: Vec<usize>,
        order: u32,
        new_divisor: usize,
        admissibility: String,
    },
    Absorb {
        centre: String,
        new_divisor: usize,
    },
    Leaf {
        reason: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        smooth: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normal_crossings: Option<bool>,
    },
}

/// Comparison of a point of a new exceptional divisor with its image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityRecord {
    pub point: Vec<String>,
    pub image: Vec<String>,
    pub inv: String,
    pub image_inv: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_mu_x: Option<String>,
    /// `inv(a') ≤ inv(σ(a'))`.
    pub semicontinuous: bool,
    /// `(inv, μ_X)(a') < (inv, μ_X)(σ(a'))`.
    pub strictly_decreasing: bool,
}

/// The total transform of the root polynomial at a weak-mode leaf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalTransformRecord {
    pub constant: String,
    /// `(divisor id, exponent)`.
    pub exponents: Vec<(usize, u32)>,
    pub expression: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub chart_id: String,
    pub year: usize,
    #[serde(default)]
    pub parent: Option<String>,
    pub vars: Vec<String>,
    /// Images of the parent variables.
    pub substitution: Vec<String>,
    #[serde(default)]
    pub exceptional: Option<usize>,
    pub divisors: Vec<DivisorRecord>,
    pub defining_poly: String,
    pub points: Vec<PointRecord>,
    pub action: Action,
    pub monotonicity: Vec<MonotonicityRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_transform: Option<TotalTransformRecord>,
    /// Whether the transform identities hold along the path from the root.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_verified: Option<bool>,
}

/// The serialized resolution tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRecord {
    pub input: String,
    pub vars: Vec<String>,
    pub config: ConfigRecord,
    pub nodes: Vec<NodeRecord>,
    #[serde(default)]
    pub error: Option<String>,
}

struct Node {
    chart: Chart,
    g: Polynomial,
    parent: Option<usize>,
    /// Exponents of the divisors in the total transform (weak mode).
    exps: BTreeMap<usize, u32>,
    user_points: Vec<Vec<Rational>>,
    record: NodeRecord,
}

/// Resolution state: charts, defining polynomials and memoized invariants.
pub struct Resolver {
    mode: Mode,
    nodes: Vec<Node>,
    index: HashMap<String, usize>,
    memo: HashMap<(usize, Vec<Rational>), InvResult>,
    next_divisor: usize,
}

/// Result of a run; the tree is present even when the run failed.
pub struct Resolution {
    pub tree: TreeRecord,
    pub error: Option<Error>,
    pub resolver: Resolver,
}

fn coords_str(p: &[Rational]) -> Vec<String> {
    p.iter().map(fmt_rational).collect()
}

fn divisor_records(chart: &Chart) -> Vec<DivisorRecord> {
    chart
        .divisors
        .iter()
        .map(|d| DivisorRecord {
            id: d.divisor.id,
            birth: d.divisor.birth,
            var: d.var(),
            hypersurface: match &d.locus {
                DivisorLocus::Hypersurface(p) => Some(p.to_string()),
                DivisorLocus::Coordinate(_) => None,
            },
        })
        .collect()
}

fn new_record(chart: &Chart, g: &Polynomial) -> NodeRecord {
    NodeRecord {
        chart_id: chart.id.clone(),
        year: chart.year,
        parent: chart.parent.clone(),
        vars: chart.vars.as_ref().clone(),
        substitution: chart.substitution.iter().map(|p| p.to_string()).collect(),
        exceptional: chart.exceptional,
        divisors: divisor_records(chart),
        defining_poly: g.to_string(),
        points: vec![],
        action: Action::Pending,
        monotonicity: vec![],
        total_transform: None,
        chain_verified: None,
    }
}

/// `V(g, ∂g/∂x_1, …, ∂g/∂x_n) = ∅`, or `g` a nonzero constant.
pub fn certify_smooth(g: &Polynomial) -> bool {
    if g.is_zero() {
        return false;
    }
    if g.is_constant() {
        return true;
    }
    let mut gens = vec![g.clone()];
    gens.extend((0..g.nvars()).map(|i| g.derivative(i, 1)));
    is_empty_variety(&gens)
}

/// For every subset `S` of the divisor variables,
/// `V(g, x_S, ∂g/∂x_j : j ∉ S) = ∅`.
pub fn certify_normal_crossings(g: &Polynomial, divisor_vars: &[usize]) -> Result<bool> {
    if divisor_vars.len() > 10 {
        return Err(Error::Unsupported("more than 10 divisors in a chart".into()));
    }
    if g.is_zero() {
        return Ok(false);
    }
    if g.is_constant() {
        return Ok(true);
    }
    let k = divisor_vars.len();
    for mask in 0u32..(1 << k) {
        let s: Vec<usize> = (0..k).filter(|j| mask & (1 << j) != 0).map(|j| divisor_vars[j]).collect();
        let mut gens = vec![g.clone()];
        for &i in &s {
            gens.push(Polynomial::var(g.vars().clone(), i));
        }
        for j in (0..g.nvars()).filter(|j| !s.contains(j)) {
            gens.push(g.derivative(j, 1));
        }
        if !is_empty_variety(&gens) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Points of `{0,1}^n`.
fn binary_points(n: usize) -> Vec<Vec<Rational>> {
    (0u32..(1 << n))
        .map(|m| (0..n).map(|i| if m & (1 << i) != 0 { int(1) } else { int(0) }).collect())
        .collect()
}

/// `(inv, μ_X)` ordering: `μ_X` breaks ties only between equal zero-terminal words.
fn inv_mu_cmp(a: &InvResult, b: &InvResult) -> Ordering {
    match a.inv.cmp(&b.inv) {
        Ordering::Equal if a.inv.terminal == Terminal::Zero => a.mu_x.cmp(&b.mu_x),
        o => o,
    }
}

impl Resolver {
    fn new(root: Chart, g: Polynomial, mode: Mode, points: Vec<Vec<Rational>>) -> Resolver {
        let record = new_record(&root, &g);
        let mut index = HashMap::new();
        index.insert(root.id.clone(), 0);
        Resolver {
            mode,
            nodes: vec![Node {
                chart: root,
                g,
                parent: None,
                exps: BTreeMap::new(),
                user_points: points,
                record,
            }],
            index,
            memo: HashMap::new(),
            next_divisor: 1,
        }
    }

    pub fn chart(&self, id: &str) -> Option<&Chart> {
        self.index.get(id).map(|&i| &self.nodes[i].chart)
    }

    pub fn defining_poly(&self, id: &str) -> Option<&Polynomial> {
        self.index.get(id).map(|&i| &self.nodes[i].g)
    }

    pub fn chart_ids(&self) -> Vec<String> {
        self.nodes.iter().map(|n| n.chart.id.clone()).collect()
    }

    /// The invariant at a point of a chart, with the ancestors' words taken
    /// from the images of the point in the earlier charts.
    pub fn inv_in_chart(&mut self, id: &str, p: &[Rational]) -> Result<InvResult> {
        let idx = *self
            .index
            .get(id)
            .ok_or_else(|| Error::Usage(format!("no chart named {id}")))?;
        self.inv_at(idx, p)
    }

    fn inv_at(&mut self, idx: usize, p: &[Rational]) -> Result<InvResult> {
        let key = (idx, p.to_vec());
        if let Some(r) = self.memo.get(&key) {
            return Ok(r.clone());
        }
        let mut chain = Vec::new();
        let mut cur = idx;
        let mut q = p.to_vec();
        while let Some(par) = self.nodes[cur].parent {
            q = self.nodes[cur]
                .chart
                .push_point(&q)
                .ok_or_else(|| Error::Internal("chart without substitution".into()))?;
            chain.push((par, q.clone()));
            cur = par;
        }
        chain.reverse();
        let mut ancestors = Vec::new();
        for (par, q) in chain {
            let r = self.inv_at(par, &q)?;
            ancestors.push((self.nodes[par].chart.year, r.inv));
        }
        let node = &self.nodes[idx];
        let r = inv_at_point(&PointContext {
            g: &node.g,
            point: p,
            year: node.chart.year,
            divisors: node.chart.coordinate_divisors(),
            ancestors,
        })?;
        self.memo.insert(key, r.clone());
        Ok(r)
    }

    fn point_record(r: &InvResult, p: &[Rational], role: &str, vars: &Vars) -> PointRecord {
        let comp = r.selected_component();
        PointRecord {
            coords: coords_str(p),
            inv: r.inv.to_string(),
            mu_x: r.mu_x.as_ref().map(fmt_rational),
            j: comp.labels().to_vec(),
            centre: comp.centre.as_ref().map(|c| c.fmt_with(vars)),
            role: role.into(),
        }
    }

    fn on_divisor(chart: &Chart, p: &[Rational]) -> bool {
        !chart.divisors_through(p).is_empty()
    }

    /// Process one chart: either declare it a leaf or blow it up.
    fn process(&mut self, idx: usize, opts: &Options) -> Result<Vec<usize>> {
        let chart = self.nodes[idx].chart.clone();
        let g = self.nodes[idx].g.clone();
        let n = chart.nvars();
        let divisor_vars: Vec<usize> = chart.coordinate_divisors().iter().map(|(_, i)| *i).collect();
        if g.is_zero() {
            return Err(Error::Invalid("the zero polynomial cannot be resolved".into()));
        }
        if self.mode == Mode::Weak && g.is_constant() {
            self.finish_weak_leaf(idx, opts)?;
            return Ok(vec![]);
        }
        if self.mode == Mode::Strict && is_empty_variety(std::slice::from_ref(&g)) {
            self.nodes[idx].record.action = Action::Leaf {
                reason: "empty".into(),
                smooth: Some(true),
                normal_crossings: Some(true),
            };
            self.finish_strict_leaf(idx, opts)?;
            return Ok(vec![]);
        }
        let smooth = certify_smooth(&g);
        let nc = smooth && certify_normal_crossings(&g, &divisor_vars)?;
        if self.mode == Mode::Strict && smooth && nc {
            self.nodes[idx].record.action = Action::Leaf {
                reason: "smooth, normal crossings".into(),
                smooth: Some(true),
                normal_crossings: Some(true),
            };
            self.finish_strict_leaf(idx, opts)?;
            return Ok(vec![]);
        }
        if chart.year >= opts.max_years {
            return Err(Error::YearCapExceeded(opts.max_years));
        }

        let mut candidates: Vec<Vec<Rational>> = vec![vec![int(0); n]];
        for p in &self.nodes[idx].user_points {
            if !candidates.contains(p) {
                candidates.push(p.clone());
            }
        }
        candidates.retain(|p| g.evaluate(p).is_zero());
        let probes: Vec<Vec<Rational>> = binary_points(n)
            .into_iter()
            .filter(|p| g.evaluate(p).is_zero() && !candidates.contains(p))
            .collect();
        let mut evaluated: Vec<(Vec<Rational>, InvResult, &str)> = Vec::new();
        for p in &candidates {
            evaluated.push((p.clone(), self.inv_at(idx, p)?, "candidate"));
        }
        for p in &probes {
            evaluated.push((p.clone(), self.inv_at(idx, p)?, "probe"));
        }
        let singular = |r: &InvResult| r.inv.nu1().is_some_and(|v| *v >= int(2));
        let pick = |pred: &dyn Fn(&(Vec<Rational>, InvResult, &str)) -> bool| -> Vec<usize> {
            let c: Vec<usize> = (0..evaluated.len())
                .filter(|&i| evaluated[i].2 == "candidate" && pred(&evaluated[i]))
                .collect();
            if !c.is_empty() {
                return c;
            }
            (0..evaluated.len()).filter(|&i| pred(&evaluated[i])).collect()
        };
        let pool: Vec<usize> = if !smooth {
            pick(&|e| singular(&e.1))
        } else if !nc {
            pick(&|e| Self::on_divisor(&chart, &e.0))
        } else {
            // weak mode: V(f) is smooth and crosses E normally, so it is
            // absorbed into the exceptional set in a single year
            for (p, r, role) in &evaluated {
                let rec = Self::point_record(r, p, role, &chart.vars);
                self.nodes[idx].record.points.push(rec);
            }
            return self.absorb(idx);
        };
        if pool.is_empty() {
            return Err(Error::CandidateIncomplete(format!(
                "chart {}: no candidate point meets the locus to be blown up",
                chart.id
            )));
        }
        let key = |i: usize| -> (ExtendedInv, &Vec<Rational>) { (evaluated[i].1.extended(), &evaluated[i].0) };
        let mut best = pool[0];
        for &i in &pool[1..] {
            let (ki, pi) = key(i);
            let (kb, pb) = key(best);
            if ki > kb || (ki == kb && pi < pb) {
                best = i;
            }
        }
        let (point, result, _) = evaluated[best].clone();
        for (p, r, _) in &evaluated {
            if r.inv > result.inv {
                return Err(Error::CandidateIncomplete(format!(
                    "chart {}: point ({}) has inv {} above the selected maximum {}",
                    chart.id,
                    coords_str(p).join(","),
                    r.inv,
                    result.inv
                )));
            }
        }
        for (i, (p, r, role)) in evaluated.iter().enumerate() {
            let role = if i == best { "selected" } else { role };
            let rec = Self::point_record(r, p, role, &chart.vars);
            self.nodes[idx].record.points.push(rec);
        }
        let centre = result.selected_component().centre.clone().ok_or_else(|| {
            Error::Unsupported(format!(
                "chart {}: the selected terminal-locus component is not a coordinate subspace",
                chart.id
            ))
        })?;
        let d = order_along_centre(&g, &centre)?;
        let admissibility = match self.mode {
            Mode::Strict if d >= 2 => format!("centre inside the singular locus (order {d} along the centre)"),
            Mode::Strict if d == 1 && smooth && !centre.labels.is_empty() => {
                "smooth transform, centre inside its intersection with the exceptional divisors".to_string()
            }
            Mode::Weak if d >= 1 => format!("weak transform has order {d} along the centre"),
            _ => {
                return Err(Error::Internal(format!(
                    "chart {}: centre {} is not admissible",
                    chart.id,
                    centre.fmt_with(&chart.vars)
                )))
            }
        };
        let new_id = self.next_divisor;
        self.next_divisor += 1;
        let children = blow_up(&chart, &centre, new_id)?;
        self.nodes[idx].record.action = Action::BlowUp {
            point: coords_str(&point),
            inv: result.inv.to_string(),
            mu_x: result.mu_x.as_ref().map(fmt_rational),
            centre: centre.fmt_with(&chart.vars),
            centre_coords: centre.coords.iter().map(|(i, c)| (*i, fmt_rational(c))).collect(),
            labels: centre.labels.clone(),
            order: d,
            new_divisor: new_id,
            admissibility,
        };
        let mut out = Vec::new();
        for child in children {
            let k = child.exceptional.expect("coordinate blow-up");
            let g1 = match self.mode {
                Mode::Strict => strict_transform(&g, &child, d)?,
                Mode::Weak => weak_transform(&g, &child, d)?,
            };
            let parent_exps = &self.nodes[idx].exps;
            let mut exps = BTreeMap::new();
            let mut new_e = d;
            for cd in &chart.divisors {
                let e = parent_exps.get(&cd.divisor.id).copied().unwrap_or(0);
                match cd.var() {
                    Some(v) if centre.vars().contains(&v) => {
                        new_e += e;
                        if v != k {
                            exps.insert(cd.divisor.id, e);
                        }
                    }
                    _ => {
                        exps.insert(cd.divisor.id, e);
                    }
                }
            }
            exps.insert(new_id, new_e);
            let user_points: Vec<Vec<Rational>> = self.nodes[idx]
                .user_points
                .iter()
                .filter(|p| !centre.contains_point(p))
                .filter_map(|p| child.pull_point(&centre, p))
                .collect();
            let record = new_record(&child, &g1);
            let cidx = self.nodes.len();
            self.index.insert(child.id.clone(), cidx);
            self.nodes.push(Node {
                chart: child,
                g: g1,
                parent: Some(idx),
                exps,
                user_points,
                record,
            });
            self.check_monotonicity(cidx)?;
            out.push(cidx);
        }
        Ok(out)
    }

    /// Compare the invariant at points of the new exceptional divisor with
    /// the invariant at their images.
    fn check_monotonicity(&mut self, cidx: usize) -> Result<()> {
        let chart = self.nodes[cidx].chart.clone();
        let g = self.nodes[cidx].g.clone();
        let parent = self.nodes[cidx].parent.expect("child");
        if g.is_constant() {
            return Ok(());
        }
        let k = chart.exceptional.expect("coordinate blow-up");
        let points: Vec<Vec<Rational>> = binary_points(chart.nvars())
            .into_iter()
            .filter(|p| p[k].is_zero() && g.evaluate(p).is_zero())
            .collect();
        for p in points {
            let r = self.inv_at(cidx, &p)?;
            let image = chart.push_point(&p).expect("child chart");
            let s = self.inv_at(parent, &image)?;
            let rec = MonotonicityRecord {
                point: coords_str(&p),
                image: coords_str(&image),
                inv: r.inv.to_string(),
                image_inv: s.inv.to_string(),
                mu_x: r.mu_x.as_ref().map(fmt_rational),
                image_mu_x: s.mu_x.as_ref().map(fmt_rational),
                semicontinuous: r.inv <= s.inv,
                strictly_decreasing: inv_mu_cmp(&r, &s) == Ordering::Less,
            };
            self.nodes[cidx].record.monotonicity.push(rec);
        }
        Ok(())
    }

    /// Blow up the smooth hypersurface `V(f)` of a weak-mode chart.
    fn absorb(&mut self, idx: usize) -> Result<Vec<usize>> {
        let chart = self.nodes[idx].chart.clone();
        let f = self.nodes[idx].g.clone();
        let new_id = self.next_divisor;
        self.next_divisor += 1;
        let coordinate = f.num_terms() == 1
            && f.terms().all(|(e, _)| e.degree() == 1);
        let (child, f1) = if coordinate {
            let (e, _) = f.leading_term().expect("nonzero");
            let i = e.0.iter().position(|&a| a == 1).expect("linear");
            let centre = CentreSpec {
                coords: vec![(i, int(0))],
                labels: vec![],
            };
            let child = blow_up(&chart, &centre, new_id)?.remove(0);
            let f1 = weak_transform(&f, &child, 1)?;
            (child, f1)
        } else {
            let child = blow_up_hypersurface(&chart, &f, new_id)?;
            let one = Polynomial::one(child.vars.clone());
            (child, one)
        };
        let mut exps = self.nodes[idx].exps.clone();
        let mut new_e = 1;
        if coordinate {
            let k = child.exceptional.expect("coordinate blow-up");
            for cd in &chart.divisors {
                if cd.var() == Some(k) {
                    new_e += exps.remove(&cd.divisor.id).unwrap_or(0);
                }
            }
        }
        exps.insert(new_id, new_e);
        self.nodes[idx].record.action = Action::Absorb {
            centre: format!("V({f})"),
            new_divisor: new_id,
        };
        let record = new_record(&child, &f1);
        let cidx = self.nodes.len();
        self.index.insert(child.id.clone(), cidx);
        self.nodes.push(Node {
            chart: child,
            g: f1,
            parent: Some(idx),
            exps,
            user_points: vec![],
            record,
        });
        Ok(vec![cidx])
    }

    fn path(&self, idx: usize) -> Vec<usize> {
        let mut p = vec![idx];
        let mut cur = idx;
        while let Some(par) = self.nodes[cur].parent {
            p.push(par);
            cur = par;
        }
        p.reverse();
        p
    }

    /// `y_exc^d · g_child = g_parent∘σ` along the path from the root.
    fn verify_strict_chain(&self, idx: usize) -> Result<bool> {
        let path = self.path(idx);
        for w in path.windows(2) {
            let (par, ch) = (&self.nodes[w[0]], &self.nodes[w[1]]);
            let d = match &par.record.action {
                Action::BlowUp { order, .. } => *order,
                _ => return Ok(false),
            };
            let k = ch.chart.exceptional.expect("coordinate blow-up");
            let mut e = Exponent::zero(ch.chart.nvars());
            e.0[k] = d;
            if total_transform(&par.g, &ch.chart)? != ch.g.mul_monomial(&e) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn finish_strict_leaf(&mut self, idx: usize, opts: &Options) -> Result<()> {
        if opts.certify {
            let ok = self.verify_strict_chain(idx)?;
            self.nodes[idx].record.chain_verified = Some(ok);
        }
        Ok(())
    }

    fn finish_weak_leaf(&mut self, idx: usize, opts: &Options) -> Result<()> {
        let node = &self.nodes[idx];
        let c = node.g.constant_term();
        let vars = node.chart.vars.clone();
        let mut expected = node.g.clone();
        let mut factors = Vec::new();
        let mut exponents = Vec::new();
        for cd in &node.chart.divisors {
            let e = node.exps.get(&cd.divisor.id).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            exponents.push((cd.divisor.id, e));
            let base = match &cd.locus {
                DivisorLocus::Coordinate(i) => Polynomial::var(vars.clone(), *i),
                DivisorLocus::Hypersurface(p) => p.clone(),
            };
            expected = &expected * &base.pow(e);
            let text = match &cd.locus {
                DivisorLocus::Coordinate(i) => vars[*i].clone(),
                DivisorLocus::Hypersurface(p) => format!("({p})"),
            };
            factors.push(if e == 1 { text } else { format!("{text}^{e}") });
        }
        let expression = if factors.is_empty() {
            fmt_rational(&c)
        } else if c.is_one() {
            factors.join("*")
        } else if (-c.clone()).is_one() {
            format!("-{}", factors.join("*"))
        } else {
            format!("{}*{}", fmt_rational(&c), factors.join("*"))
        };
        let verified = if opts.certify {
            let path = self.path(idx);
            let mut t = self.nodes[path[0]].g.clone();
            for &j in &path[1..] {
                t = total_transform(&t, &self.nodes[j].chart)?;
            }
            Some(t == expected)
        } else {
            None
        };
        let node = &mut self.nodes[idx];
        node.record.action = Action::Leaf {
            reason: "weak transform is a nonzero constant".into(),
            smooth: None,
            normal_crossings: None,
        };
        node.record.total_transform = Some(TotalTransformRecord {
            constant: fmt_rational(&c),
            exponents,
            expression,
            verified,
        });
        Ok(())
    }

    fn tree(&self, input: &str, opts: &Options, error: Option<&Error>) -> TreeRecord {
        TreeRecord {
            input: input.to_string(),
            vars: self.nodes[0].chart.vars.as_ref().clone(),
            config: ConfigRecord {
                mode: opts.mode,
                max_years: opts.max_years,
                certify: opts.certify,
                points: opts.points.iter().map(|p| coords_str(p)).collect(),
            },
            nodes: self.nodes.iter().map(|n| n.record.clone()).collect(),
            error: error.map(|e| e.to_string()),
        }
    }

    /// Rebuild the charts and defining polynomials of a saved tree.
    pub fn from_tree(tree: &TreeRecord) -> Result<Resolver> {
        let mut nodes: Vec<Node> = Vec::new();
        let mut index = HashMap::new();
        let mut next_divisor = 1;
        for rec in &tree.nodes {
            let vars: Vars = Arc::new(rec.vars.clone());
            let parent = match &rec.parent {
                Some(p) => Some(
                    *index
                        .get(p)
                        .ok_or_else(|| Error::Invalid(format!("parent {p} of {} not found", rec.chart_id)))?,
                ),
                None => None,
            };
            let substitution = rec
                .substitution
                .iter()
                .map(|s| parse_polynomial(s, Some(&vars)))
                .collect::<Result<Vec<_>>>()?;
            let divisors = rec
                .divisors
                .iter()
                .map(|d| {
                    next_divisor = next_divisor.max(d.id + 1);
                    let locus = match (&d.var, &d.hypersurface) {
                        (Some(i), _) => Ok(DivisorLocus::Coordinate(*i)),
                        (None, Some(p)) => Ok(DivisorLocus::Hypersurface(parse_polynomial(p, Some(&vars))?)),
                        (None, None) => Err(Error::Invalid("divisor without a locus".into())),
                    }?;
                    Ok(ChartDivisor {
                        divisor: Divisor { id: d.id, birth: d.birth },
                        locus,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let chart = Chart {
                id: rec.chart_id.clone(),
                year: rec.year,
                vars: vars.clone(),
                parent: rec.parent.clone(),
                substitution,
                exceptional: rec.exceptional,
                divisors,
            };
            let g = parse_polynomial(&rec.defining_poly, Some(&vars))?;
            index.insert(chart.id.clone(), nodes.len());
            nodes.push(Node {
                chart,
                g,
                parent,
                exps: BTreeMap::new(),
                user_points: vec![],
                record: rec.clone(),
            });
        }
        if nodes.is_empty() {
            return Err(Error::Invalid("empty resolution tree".into()));
        }
        Ok(Resolver {
            mode: tree.config.mode,
            nodes,
            index,
            memo: HashMap::new(),
            next_divisor,
        })
    }
}

/// Run the driver on `g` (strict mode resolves `V(g)`, weak mode
/// monomializes the ideal `(g)`).
pub fn run(g: &Polynomial, opts: &Options) -> Resolution {
    let root = Chart::root(g.vars().clone());
    let points: Vec<Vec<Rational>> = opts
        .points
        .iter()
        .filter(|p| p.len() == g.nvars())
        .cloned()
        .collect();
    let mut resolver = Resolver::new(root, g.clone(), opts.mode, points);
    let mut queue = VecDeque::from([0usize]);
    let mut error = None;
    if opts.points.iter().any(|p| p.len() != g.nvars()) {
        error = Some(Error::Usage(format!("points must have {} coordinates", g.nvars())));
        queue.clear();
    }
    while let Some(idx) = queue.pop_front() {
        match resolver.process(idx, opts) {
            Ok(children) => queue.extend(children),
            Err(e) => {
                error = Some(e);
                break;
            }
        }
    }
    let tree = resolver.tree(&g.to_string(), opts, error.as_ref());
    Resolution { tree, error, resolver }
}

/// Resolve the hypersurface `V(g)` by strict transforms.
pub fn resolve_hypersurface(g: &Polynomial, opts: &Options) -> Resolution {
    run(g, &Options { mode: Mode::Strict, ..opts.clone() })
}

/// Monomialize the principal ideal `(f)` by weak transforms.
pub fn monomialize_principal(f: &Polynomial, opts: &Options) -> Resolution {
    run(f, &Options { mode: Mode::Weak, ..opts.clone() })
}

impl TreeRecord {
    /// Leaf records.
    pub fn leaves(&self) -> Vec<&NodeRecord> {
        self.nodes
            .iter()
            .filter(|n| matches!(n.action, Action::Leaf { .. }))
            .collect()
    }

    /// Number of years in which some chart was blown up.
    pub fn years(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n.action, Action::BlowUp { .. } | Action::Absorb { .. }))
            .map(|n| n.year + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn node(&self, id: &str) -> Option<&NodeRecord> {
        self.nodes.iter().find(|n| n.chart_id == id)
    }

    /// All monotonicity records with the chart they belong to.
    pub fn monotonicity(&self) -> Vec<(&str, &MonotonicityRecord)> {
        self.nodes
            .iter()
            .flat_map(|n| n.monotonicity.iter().map(move |m| (n.chart_id.as_str(), m)))
            .collect()
    }

    /// The narrative trace: one line per processed chart, by year then id.
    pub fn trace_text(&self) -> String {
        let mut nodes: Vec<&NodeRecord> = self
            .nodes
            .iter()
            .filter(|n| !matches!(n.action, Action::Pending))
            .collect();
        nodes.sort_by(|a, b| a.year.cmp(&b.year).then(a.chart_id.cmp(&b.chart_id)));
        let letter = if self.config.mode == Mode::Weak { "f" } else { "g" };
        let mut out = String::new();
        for n in nodes {
            let head = format!(
                "Year {}: chart {}, {letter}_{} = {}",
                n.year, n.chart_id, n.year, n.defining_poly
            );
            let tail = match &n.action {
                Action::BlowUp {
                    point, inv, mu_x, centre, ..
                } => {
                    let mu = mu_x.as_ref().map(|m| format!("mu_X = {m}, ")).unwrap_or_default();
                    format!("inv({}) = {inv}, {mu}centre C_{} = {centre}", point.join(","), n.year)
                }
                Action::Absorb { centre, .. } => format!("absorb C_{} = {centre}", n.year),
                Action::Leaf { reason, .. } => match &n.total_transform {
                    Some(t) => format!("leaf (total transform = {})", t.expression),
                    None => format!("leaf ({reason})"),
                },
                Action::Pending => unreachable!(),
            };
            out.push_str(&format!("{head}, {tail}\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        out
    }
}

/// Parse a point given as strings.
pub fn parse_coords(c: &[String]) -> Result<Vec<Rational>> {
    c.iter().map(|s| parse_rational(s)).collect()
}

/// Whether a leaf record passed its certificates.
pub fn leaf_certified(n: &NodeRecord) -> bool {
    match &n.action {
        Action::Leaf {
            smooth, normal_crossings, ..
        } => {
            smooth.unwrap_or(true)
                && normal_crossings.unwrap_or(true)
                && n.chain_verified.unwrap_or(true)
                && n.total_transform.as_ref().is_none_or(|t| t.verified.unwrap_or(true))
        }
        _ => false,
    }
}

/// Unit check used by the weak-mode leaves.
pub fn is_nonzero_constant(p: &Polynomial) -> bool {
    p.is_constant() && !p.constant_term().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars_of;

    fn poly(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, Some(&vars_of(v))).unwrap()
    }

    #[test]
    fn smoothness_certificates() {
        let v = ["y1", "y2", "y3"];
        assert!(!certify_smooth(&poly("y3^2 - y1^3*y2^3", &v)));
        assert!(certify_smooth(&poly("y1", &v)));
        let uv = ["u", "v"];
        assert!(certify_normal_crossings(&poly("1 - u*v", &uv), &[0, 1]).unwrap());
        assert!(certify_normal_crossings(&poly("v - u^2", &uv), &[0]).unwrap());
        assert!(!certify_normal_crossings(&poly("v - u^2", &uv), &[1]).unwrap());
        assert!(certify_normal_crossings(&poly("v - u^2", &uv), &[]).unwrap());
    }

    #[test]
    fn smooth_input_needs_nothing() {
        let r = resolve_hypersurface(&poly("x1", &["x1", "x2"]), &Options::default());
        assert!(r.error.is_none());
        assert_eq!(r.tree.years(), 0);
        assert!(leaf_certified(r.tree.leaves()[0]));
    }

    #[test]
    fn constant_needs_no_monomialization() {
        let r = monomialize_principal(&poly("3", &["x", "y"]), &Options::default());
        assert!(r.error.is_none());
        assert_eq!(r.tree.years(), 0);
        assert_eq!(r.tree.leaves()[0].total_transform.as_ref().unwrap().expression, "3");
    }

    #[test]
    fn cusp_resolves() {
        let r = resolve_hypersurface(&poly("x^2 - y^3", &["x", "y"]), &Options::default());
        assert!(r.error.is_none(), "{:?}", r.error);
        assert!(r.tree.leaves().iter().all(|l| leaf_certified(l)));
        assert!(r.tree.monotonicity().iter().all(|(_, m)| m.semicontinuous && m.strictly_decreasing));
    }

    #[test]
    fn year_cap_is_reported() {
        let opts = Options {
            max_years: 1,
            ..Options::default()
        };
        let r = resolve_hypersurface(&poly("x^2 - y^3", &["x", "y"]), &opts);
        assert_eq!(r.error, Some(Error::YearCapExceeded(1)));
        assert!(!r.tree.nodes.is_empty());
    }
}
