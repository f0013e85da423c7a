//! Simplicial complexes of divisors, stellar blowings-up, integer divisor
//! functions and their transforms, and the algorithm that makes a family of
//! divisor functions locally totally ordered.
//!
//! A maximal simplex plays the role of a point lying on exactly the divisors
//! it contains; blowing up a simplex `I` is the stellar subdivision at the
//! barycentre of `I`, and a divisor function takes the sum of its values on
//! `I` at the new vertex.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A simplicial complex, stored as its vertex set and its maximal
/// simplices (facets), each a sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    facets: BTreeSet<Vec<usize>>,
}

/// Vertex id to integer value.
pub type DivisorFunction = BTreeMap<usize, i64>;

fn subsets(s: &[usize]) -> Vec<Vec<usize>> {
    (0u32..(1 << s.len()))
        .map(|m| (0..s.len()).filter(|i| m & (1 << i) != 0).map(|i| s[i]).collect())
        .collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

impl SimplicialComplex {
    /// The face closure of the given simplices; every listed vertex is a
    /// 0-simplex.
    pub fn new(vertices: &[usize], simplices: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let vset: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut given: Vec<Vec<usize>> = Vec::new();
        for s in simplices {
            let s = sorted(s.clone());
            if s.is_empty() {
                continue;
            }
            if let Some(v) = s.iter().find(|v| !vset.contains(v)) {
                return Err(Error::Invalid(format!("simplex uses unknown vertex {v}")));
            }
            if s.len() > 16 {
                return Err(Error::Unsupported("simplices of more than 16 vertices".into()));
            }
            given.push(s);
        }
        given.extend(vset.iter().map(|v| vec![*v]));
        let facets = given
            .iter()
            .filter(|s| !given.iter().any(|t| t.len() > s.len() && is_subset(s, t)))
            .cloned()
            .collect();
        Ok(SimplicialComplex {
            vertices: vset.into_iter().collect(),
            facets,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Every simplex (nonempty face of a facet), in sorted order.
    pub fn simplices(&self) -> impl Iterator<Item = Vec<usize>> {
        let all: BTreeSet<Vec<usize>> = self
            .facets
            .iter()
            .flat_map(|f| subsets(f).into_iter().filter(|s| !s.is_empty()))
            .collect();
        all.into_iter()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        let s = sorted(s.to_vec());
        !s.is_empty() && self.facets.iter().any(|f| is_subset(&s, f))
    }

    /// Simplices not contained in a larger one.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        self.facets.iter().cloned().collect()
    }
}

/// Stellar subdivision at the barycentre `b` of `sigma`: every simplex
/// `σ ∪ λ` is replaced by the simplices `{b} ∪ τ ∪ λ` with `τ ⊊ σ`. On
/// facets this replaces `F ⊇ σ` by the `F ∖ {v} ∪ {b}` for `v ∈ σ`.
pub fn stellar_blow_up(m: &SimplicialComplex, sigma: &[usize]) -> Result<(SimplicialComplex, usize)> {
    let sigma = sorted(sigma.to_vec());
    if sigma.len() < 2 {
        return Err(Error::Invalid("blowing up needs a simplex with at least two vertices".into()));
    }
    if !m.contains(&sigma) {
        return Err(Error::Invalid(format!("{sigma:?} is not a simplex of the complex")));
    }
    let b = m.vertices.iter().max().map_or(0, |v| v + 1);
    let mut facets = BTreeSet::new();
    for f in &m.facets {
        if is_subset(&sigma, f) {
            for v in &sigma {
                let mut t: Vec<usize> = f.iter().copied().filter(|x| x != v).collect();
                t.push(b);
                facets.insert(sorted(t));
            }
        } else {
            facets.insert(f.clone());
        }
    }
    let mut vertices = m.vertices.clone();
    vertices.push(b);
    Ok((SimplicialComplex { vertices, facets }, b))
}

/// `D'(b) = Σ_{v ∈ σ} D(v)`, other values unchanged.
pub fn transform_divisor(d: &DivisorFunction, sigma: &[usize], b: usize) -> DivisorFunction {
    let mut out = d.clone();
    let total = sigma.iter().map(|v| d.get(v).copied().unwrap_or(0)).sum();
    out.insert(b, total);
    out
}

/// The pair invariant of two functions on a maximal simplex, and the label
/// sets of the components of its maximum locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInvariant {
    pub nu1: i64,
    pub mu2: i64,
    pub components: Vec<Vec<usize>>,
}

fn val(d: &DivisorFunction, v: usize) -> i64 {
    d.get(&v).copied().unwrap_or(0)
}

/// Minimal subsets `J ⊆ pool` with `Σ_J w ≥ target`.
fn minimal_covers(pool: &[usize], w: &dyn Fn(usize) -> i64, target: i64) -> Vec<Vec<usize>> {
    let total = |s: &[usize]| s.iter().map(|&v| w(v)).sum::<i64>();
    subsets(pool)
        .into_iter()
        .filter(|j| !j.is_empty() && total(j) >= target)
        .filter(|j| {
            (0..j.len()).all(|k| {
                let mut r = j.clone();
                r.remove(k);
                total(&r) < target
            })
        })
        .collect()
}

/// `ν_1 = min(ΣD_1, ΣD_2) − ΣD_0` and `μ_2 = max(ΣD_1, ΣD_2) − ΣD_0` over the
/// vertices of `sigma`, with `D_0 = min(D_1, D_2)`, and the components
/// `I = J_1 ∪ J` (`J ⊆ J_2` minimal with `Σ_J (D_2 − D_0) ≥ ν_1`) together with
/// the symmetric ones.
pub fn nu1_mu2(d1: &DivisorFunction, d2: &DivisorFunction, sigma: &[usize]) -> PairInvariant {
    let s1: i64 = sigma.iter().map(|&v| val(d1, v)).sum();
    let s2: i64 = sigma.iter().map(|&v| val(d2, v)).sum();
    let s0: i64 = sigma.iter().map(|&v| val(d1, v).min(val(d2, v))).sum();
    let nu1 = s1.min(s2) - s0;
    let mu2 = s1.max(s2) - s0;
    let mut components = BTreeSet::new();
    if nu1 > 0 {
        let j1: Vec<usize> = sigma.iter().copied().filter(|&v| val(d1, v) > val(d2, v)).collect();
        let j2: Vec<usize> = sigma.iter().copied().filter(|&v| val(d2, v) > val(d1, v)).collect();
        let excess = |a: &DivisorFunction, b: &DivisorFunction, v: usize| val(a, v) - val(a, v).min(val(b, v));
        if s1 <= s2 {
            for j in minimal_covers(&j2, &|v| excess(d2, d1, v), nu1) {
                components.insert(sorted(j1.iter().chain(&j).copied().collect()));
            }
        }
        if s2 <= s1 {
            for j in minimal_covers(&j1, &|v| excess(d1, d2, v), nu1) {
                components.insert(sorted(j2.iter().chain(&j).copied().collect()));
            }
        }
    }
    PairInvariant {
        nu1,
        mu2,
        components: components.into_iter().collect(),
    }
}

/// Whether some ordering of the functions is pointwise increasing on the
/// vertices of `s`.
pub fn totally_ordered_on(ds: &[DivisorFunction], s: &[usize]) -> bool {
    let le = |a: &DivisorFunction, b: &DivisorFunction| s.iter().all(|&v| val(a, v) <= val(b, v));
    // comparability of every pair is equivalent to a total order existing
    ds.iter().all(|a| ds.iter().all(|b| le(a, b) || le(b, a)))
}

/// Whether the functions are totally ordered on every simplex.
pub fn locally_totally_ordered(m: &SimplicialComplex, ds: &[DivisorFunction]) -> bool {
    m.maximal_simplices().iter().all(|s| totally_ordered_on(ds, s))
}

/// One blowing-up performed by [`order_divisors`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUpStep {
    /// The pair of functions being ordered.
    pub pair: (usize, usize),
    pub centre: Vec<usize>,
    pub new_vertex: usize,
    /// `(ν_1, μ_2)` at the centre before the blowing-up.
    pub value: (i64, i64),
    /// Largest `(ν_1, μ_2)` over maximal simplices containing the new vertex.
    pub value_after: (i64, i64),
}

/// A round of blowings-up that removes every occurrence of the current
/// maximum of `(ν_1, μ_2)` for one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub pair: (usize, usize),
    pub max_before: (i64, i64),
    pub max_after: (i64, i64),
    pub steps: Vec<BlowUpStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderResult {
    pub rounds: Vec<Round>,
    pub complex: SimplicialComplex,
    pub functions: Vec<DivisorFunction>,
}

/// `(ν_1, μ_2)` of a pair of dense functions on the vertices of `s`.
fn pair_key(a: &[i64], b: &[i64], s: &[usize]) -> (i64, i64) {
    let (mut s1, mut s2, mut s0) = (0, 0, 0);
    for &v in s {
        s1 += a[v];
        s2 += b[v];
        s0 += a[v].min(b[v]);
    }
    (s1.min(s2) - s0, s1.max(s2) - s0)
}

fn sparse(d: &[i64], s: &[usize]) -> DivisorFunction {
    s.iter().map(|&v| (v, d[v])).collect()
}

/// Working state of [`order_divisors`]: facets in a slab with their cached
/// pair values, facets bucketed by value, a vertex-to-facet incidence
/// index, the functions as dense vectors indexed by vertex, and the
/// components of the facets at the value being removed in this round.
struct Engine {
    facets: Vec<Option<(Vec<usize>, (i64, i64))>>,
    buckets: BTreeMap<(i64, i64), BTreeSet<usize>>,
    incidence: Vec<BTreeSet<usize>>,
    vertices: Vec<usize>,
    fs: Vec<Vec<i64>>,
    pair: (usize, usize),
    target: (i64, i64),
    pending: BTreeSet<(Vec<usize>, usize)>,
}

impl Engine {
    fn new(m: &SimplicialComplex, fs: Vec<Vec<i64>>) -> Engine {
        let mut e = Engine {
            facets: Vec::new(),
            buckets: BTreeMap::new(),
            incidence: vec![BTreeSet::new(); fs.first().map_or(0, |f| f.len())],
            vertices: m.vertices.clone(),
            fs,
            pair: (0, 0),
            target: (0, 0),
            pending: BTreeSet::new(),
        };
        for f in &m.facets {
            e.insert(f.clone(), (0, 0));
        }
        e
    }

    fn components(&self, f: &[usize]) -> Vec<Vec<usize>> {
        let (i, j) = self.pair;
        nu1_mu2(&sparse(&self.fs[i], f), &sparse(&self.fs[j], f), f).components
    }

    fn insert(&mut self, f: Vec<usize>, key: (i64, i64)) {
        let id = self.facets.len();
        if key == self.target && key.0 > 0 {
            for c in self.components(&f) {
                self.pending.insert((c, id));
            }
        }
        for &v in &f {
            self.incidence[v].insert(id);
        }
        self.buckets.entry(key).or_default().insert(id);
        self.facets.push(Some((f, key)));
    }

    fn remove(&mut self, id: usize) -> Vec<usize> {
        let (f, key) = self.facets[id].take().expect("live facet");
        if key == self.target && key.0 > 0 {
            for c in self.components(&f) {
                self.pending.remove(&(c, id));
            }
        }
        for &v in &f {
            self.incidence[v].remove(&id);
        }
        if let Some(b) = self.buckets.get_mut(&key) {
            b.remove(&id);
            if b.is_empty() {
                self.buckets.remove(&key);
            }
        }
        f
    }

    fn rekey(&mut self, i: usize, j: usize) {
        self.pair = (i, j);
        self.target = (0, 0);
        self.pending.clear();
        self.buckets.clear();
        for (id, slot) in self.facets.iter_mut().enumerate() {
            if let Some((f, key)) = slot {
                *key = pair_key(&self.fs[i], &self.fs[j], f);
                self.buckets.entry(*key).or_default().insert(id);
            }
        }
    }

    fn max(&self) -> (i64, i64) {
        self.buckets.keys().next_back().copied().unwrap_or((0, 0))
    }

    /// Start removing the facets at value `target`.
    fn start_round(&mut self, target: (i64, i64)) {
        self.target = target;
        self.pending.clear();
        let ids: Vec<usize> = self.buckets.get(&target).map(|b| b.iter().copied().collect()).unwrap_or_default();
        for id in ids {
            let f = self.facets[id].as_ref().expect("live facet").0.clone();
            for c in self.components(&f) {
                self.pending.insert((c, id));
            }
        }
    }

    /// Smallest component label set among facets at the round's value.
    fn centre(&self) -> Option<Vec<usize>> {
        self.pending.first().map(|(c, _)| c.clone())
    }

    /// Blow up `sigma`; returns the new vertex and the largest pair value
    /// on the new facets.
    fn blow_up(&mut self, sigma: &[usize]) -> (usize, (i64, i64)) {
        let (i, j) = self.pair;
        let b = self.vertices.iter().max().map_or(0, |v| v + 1);
        self.vertices.push(b);
        for f in self.fs.iter_mut() {
            let v = sigma.iter().map(|&x| f[x]).sum();
            f.push(v);
        }
        self.incidence.push(BTreeSet::new());
        let pivot = sigma.iter().min_by_key(|&&v| self.incidence[v].len()).expect("nonempty centre");
        let hit: Vec<usize> = self.incidence[*pivot]
            .iter()
            .copied()
            .filter(|&id| self.facets[id].as_ref().is_some_and(|(f, _)| is_subset(sigma, f)))
            .collect();
        let mut after = (0, 0);
        for id in hit {
            let f = self.remove(id);
            for v in sigma {
                let mut t: Vec<usize> = f.iter().copied().filter(|x| x != v).collect();
                t.push(b);
                let t = sorted(t);
                let key = pair_key(&self.fs[i], &self.fs[j], &t);
                after = after.max(key);
                self.insert(t, key);
            }
        }
        (b, after)
    }

    fn into_parts(self) -> (Vec<usize>, BTreeSet<Vec<usize>>, Vec<Vec<i64>>) {
        let facets = self.facets.into_iter().flatten().map(|(f, _)| f).collect();
        (self.vertices, facets, self.fs)
    }
}

/// Blow up until the functions are locally totally ordered. Pairs are
/// treated in round-robin order; for each pair, rounds blow up the
/// components of the maximal `(ν_1, μ_2)` locus one at a time, smallest
/// label set first, until that maximum drops.
pub fn order_divisors(m: &SimplicialComplex, ds: &[DivisorFunction], max_blowups: usize) -> Result<OrderResult> {
    if ds.is_empty() {
        return Err(Error::Invalid("at least one divisor function is needed".into()));
    }
    let top = m.vertices.iter().max().copied().unwrap_or(0);
    if top > 1_000_000 {
        return Err(Error::Unsupported("vertex ids above 1000000".into()));
    }
    let mut engine = Engine::new(m, ds.iter().map(|d| (0..=top).map(|v| val(d, v)).collect()).collect());
    let mut rounds = Vec::new();
    let mut count = 0;
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            engine.rekey(i, j);
            loop {
                let max_before = engine.max();
                if max_before.0 == 0 {
                    break;
                }
                engine.start_round(max_before);
                let mut steps = Vec::new();
                while engine.max() == max_before {
                    count += 1;
                    if count > max_blowups {
                        return Err(Error::Unsupported(format!(
                            "ordering did not finish within {max_blowups} blowings-up"
                        )));
                    }
                    let centre = engine
                        .centre()
                        .ok_or_else(|| Error::Internal("no component at the maximum".into()))?;
                    let (b, value_after) = engine.blow_up(&centre);
                    steps.push(BlowUpStep {
                        pair: (i, j),
                        centre,
                        new_vertex: b,
                        value: max_before,
                        value_after,
                    });
                }
                rounds.push(Round {
                    pair: (i, j),
                    max_before,
                    max_after: engine.max(),
                    steps,
                });
            }
        }
    }
    let (vertices, facets, fs) = engine.into_parts();
    let functions = fs.iter().map(|f| vertices.iter().map(|&v| (v, f[v])).collect()).collect();
    Ok(OrderResult {
        rounds,
        complex: SimplicialComplex { vertices, facets },
        functions,
    })
}

/// Input format of the `simplicial-order` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderInput {
    pub vertices: Vec<usize>,
    pub simplices: Vec<Vec<usize>>,
    pub functions: Vec<BTreeMap<usize, i64>>,
}
