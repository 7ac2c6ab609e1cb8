//! Randomized fractional biclique partition of graphs with minimum degree at
//! least `n - m`.
//!
//! An outcome is a pair `(A, B)`: every vertex joins `A` independently with
//! probability `p`; `B0` is the set of vertices outside `A` adjacent to all of
//! `A`; each `v` in `B0` joins `B` with probability `(1-p)^(d_v - n + m)`.
//! Every edge is covered with probability exactly `2p(1-p)^m`, so weighting
//! each biclique by its probability over that constant gives a fractional
//! partition in which every vertex has load `(1/p + (1-p)^-m) / 2`.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combin::choose;
use crate::cover::{load_profile, Family, Mode, WeightedCover};
use crate::cuph::Cuph;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::lift::projections;
use crate::random::coin_threshold;
use crate::scalar::{dyadic_approx, powi, Scalar};
use crate::{Cover, Rational};

/// Default vertex limit for exact enumeration (about `3^n` outcomes).
pub const EXACT_LIMIT: usize = 12;

const MC_BLOCK: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseParams {
    p: Rational,
    m: usize,
}

impl DenseParams {
    pub fn new(p: Rational, m: usize) -> Result<DenseParams> {
        if p <= Rational::zero() || p >= Rational::one() {
            return Err(Error::ProbabilityRange(p.to_string()));
        }
        Ok(DenseParams { p, m })
    }

    /// Tightest admissible slack `n - min_degree`, with `p` defaulting to [`default_p`].
    pub fn for_graph(g: &Hypergraph, p: Option<Rational>) -> Result<DenseParams> {
        let m = g.n() - g.min_degree();
        Self::new(p.unwrap_or_else(|| default_p(m)), m)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn q(&self) -> Rational {
        Rational::one() - &self.p
    }

    /// `2p(1-p)^m`, the coverage probability of every edge.
    pub fn normalization(&self) -> Rational {
        Rational::from_integer(2.into()) * &self.p * powi(&self.q(), self.m as u32)
    }

    /// `(1/p + (1-p)^-m) / 2`.
    pub fn target_load(&self) -> Rational {
        (self.p.recip() + powi(&self.q(), self.m as u32).recip()) / Rational::from_integer(2.into())
    }

    /// `1 / (2p(1-p)^m)`, the weight of all outcomes together.
    pub fn total_weight(&self) -> Rational {
        self.normalization().recip()
    }

    /// `p + (1-p)^m`, the probability that a vertex lies in `A` or `B`.
    pub fn membership_probability(&self) -> Rational {
        &self.p + powi(&self.q(), self.m as u32)
    }

    fn check_degrees(&self, g: &Hypergraph) -> Result<()> {
        g.require_graph("the dense construction")?;
        let required = g.n().saturating_sub(self.m);
        match (0..g.n()).find(|&v| g.degree(v) < required) {
            Some(v) => Err(Error::DegreeCondition { vertex: v, degree: g.degree(v), required }),
            None => Ok(()),
        }
    }
}

/// Rational close to `(log m - 2 log log m) / (m log e)`, or `1/2` when that is not positive.
pub fn default_p(m: usize) -> Rational {
    let half = Rational::ratio(1, 2);
    if m < 5 {
        return half;
    }
    let lm = (m as f64).log2();
    let x = (lm - 2.0 * lm.log2()) / (m as f64 * std::f64::consts::LOG2_E);
    if x <= 0.0 {
        return half;
    }
    let bits = 40;
    let tiny = Rational::new(1.into(), num_bigint::BigInt::one() << bits);
    let p = dyadic_approx(x, bits);
    if p < tiny {
        tiny
    } else if p >= Rational::one() {
        Rational::one() - tiny
    } else {
        p
    }
}

/// A sampled pair; either side may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseOutcome {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl DenseOutcome {
    /// The biclique `A x B`, or `None` when a side is empty.
    pub fn biclique(&self) -> Option<Cuph> {
        if self.a.is_empty() || self.b.is_empty() {
            return None;
        }
        Some(Cuph::biclique(self.a.clone(), self.b.clone()).expect("A and B are disjoint"))
    }
}

/// Precomputed adjacency and coin thresholds for repeated sampling.
#[derive(Clone, Debug)]
pub struct DenseSampler {
    n: usize,
    words: usize,
    adjacency: Vec<Vec<u64>>,
    exponent: Vec<usize>,
    a_coin: u128,
    /// `b_coin[e]` decides membership in B for exponent `e`.
    b_coin: Vec<u128>,
}

impl DenseSampler {
    pub fn new(g: &Hypergraph, params: &DenseParams) -> Result<DenseSampler> {
        params.check_degrees(g)?;
        let n = g.n();
        let words = n.div_ceil(64).max(1);
        let mut adjacency = vec![vec![0u64; words]; n];
        for e in g.edges() {
            let (u, v) = (e[0], e[1]);
            adjacency[u][v / 64] |= 1 << (v % 64);
            adjacency[v][u / 64] |= 1 << (u % 64);
        }
        let exponent: Vec<usize> = (0..n).map(|v| g.degree(v) + params.m - n).collect();
        let top = exponent.iter().copied().max().unwrap_or(0);
        let q = params.q();
        let b_coin = (0..=top).map(|e| coin_threshold(&powi(&q, e as u32))).collect();
        Ok(DenseSampler { n, words, adjacency, exponent, a_coin: coin_threshold(&params.p), b_coin })
    }

    /// Draws one outcome: `n` variates for A, then one per vertex of `B0` in increasing order.
    pub fn sample<R: RngCore>(&self, rng: &mut R) -> DenseOutcome {
        let mut a = Vec::new();
        let mut common = vec![u64::MAX; self.words];
        for v in 0..self.n {
            if u128::from(rng.next_u64()) < self.a_coin {
                a.push(v);
                common[v / 64] &= !(1 << (v % 64));
                for (c, adj) in common.iter_mut().zip(&self.adjacency[v]) {
                    *c &= adj;
                }
            }
        }
        let mut b = Vec::new();
        for v in 0..self.n {
            if common[v / 64] >> (v % 64) & 1 == 1 && u128::from(rng.next_u64()) < self.b_coin[self.exponent[v]] {
                b.push(v);
            }
        }
        DenseOutcome { a, b }
    }
}

/// One draw from the outcome distribution.
pub fn sample_dense_biclique<R: RngCore>(g: &Hypergraph, params: &DenseParams, rng: &mut R) -> Result<DenseOutcome> {
    Ok(DenseSampler::new(g, params)?.sample(rng))
}

/// Weight of outcomes with an empty side, which cannot be represented as cuphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateMass {
    pub total: Rational,
    pub per_vertex: Vec<Rational>,
}

/// Exact fractional partition plus the separately tracked degenerate weight.
#[derive(Clone, Debug)]
pub struct DenseCover<'g> {
    pub cover: Cover<'g>,
    pub degenerate: DegenerateMass,
    /// Whether [`DenseCover::total_weight`] and [`DenseCover::loads`] include the degenerate mass.
    pub keep_degenerate: bool,
}

impl DenseCover<'_> {
    pub fn total_weight(&self) -> Rational {
        let base = self.cover.total_weight();
        if self.keep_degenerate {
            base + &self.degenerate.total
        } else {
            base
        }
    }

    pub fn loads(&self) -> Vec<Rational> {
        let mut loads = load_profile(&self.cover).loads;
        if self.keep_degenerate {
            for (l, extra) in loads.iter_mut().zip(&self.degenerate.per_vertex) {
                *l += extra;
            }
        }
        loads
    }

    pub fn max_load(&self) -> Option<Rational> {
        self.loads().into_iter().max()
    }
}

/// Probability of every ordered outcome with nonzero mass, A-subsets in mask order.
pub fn outcome_distribution(g: &Hypergraph, params: &DenseParams, limit: usize) -> Result<Vec<(DenseOutcome, Rational)>> {
    let masses = enumerate_masks(g, params, limit)?;
    let bits = |mask: u32| (0..g.n()).filter(|v| mask >> v & 1 == 1).collect::<Vec<_>>();
    Ok(masses
        .into_iter()
        .flatten()
        .map(|(a, b, w)| (DenseOutcome { a: bits(a), b: bits(b) }, w))
        .collect())
}

fn enumerate_masks(g: &Hypergraph, params: &DenseParams, limit: usize) -> Result<Vec<Vec<(u32, u32, Rational)>>> {
    params.check_degrees(g)?;
    let n = g.n();
    if n > limit.min(30) {
        return Err(Error::LimitExceeded { what: "exact dense enumeration", actual: n, limit: limit.min(30) });
    }
    let mut adjacency = vec![0u32; n];
    for e in g.edges() {
        adjacency[e[0]] |= 1 << e[1];
        adjacency[e[1]] |= 1 << e[0];
    }
    let q = params.q();
    let p_pow: Vec<Rational> = (0..=n).map(|i| powi(&params.p, i as u32)).collect();
    let q_pow: Vec<Rational> = (0..=n.max(params.m)).map(|i| powi(&q, i as u32)).collect();
    let stay: Vec<Rational> = (0..n).map(|v| q_pow[g.degree(v) + params.m - n].clone()).collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let out = (0..=full)
        .into_par_iter()
        .map(|a| {
            let size = a.count_ones() as usize;
            let base = &p_pow[size] * &q_pow[n - size];
            let mut b0 = full & !a;
            for (v, row) in adjacency.iter().enumerate() {
                if a >> v & 1 == 1 {
                    b0 &= row;
                }
            }
            let candidates: Vec<usize> = (0..n).filter(|v| b0 >> v & 1 == 1).collect();
            let mut found = Vec::new();
            extend_b(&candidates, &stay, a, 0, base, &mut found);
            found
        })
        .collect();
    Ok(out)
}

fn extend_b(candidates: &[usize], stay: &[Rational], a: u32, b: u32, mass: Rational, out: &mut Vec<(u32, u32, Rational)>) {
    let Some((&v, rest)) = candidates.split_first() else {
        out.push((a, b, mass));
        return;
    };
    let join = &stay[v];
    if !join.is_zero() {
        extend_b(rest, stay, a, b | 1 << v, &mass * join, out);
    }
    let leave = Rational::one() - join;
    if !leave.is_zero() {
        extend_b(rest, stay, a, b, mass * leave, out);
    }
}

/// Exact enumeration of the construction as a fractional biclique partition.
pub fn dense_exact<'g>(g: &'g Hypergraph, params: &DenseParams, keep_degenerate: bool) -> Result<DenseCover<'g>> {
    dense_exact_with_limit(g, params, keep_degenerate, EXACT_LIMIT)
}

pub fn dense_exact_with_limit<'g>(g: &'g Hypergraph, params: &DenseParams, keep_degenerate: bool, limit: usize) -> Result<DenseCover<'g>> {
    let n = g.n();
    let masses = enumerate_masks(g, params, limit)?;
    let norm = params.normalization();
    // unordered biclique {A, B} -> probability
    let mut bicliques: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    let mut degenerate = DegenerateMass { total: Rational::zero(), per_vertex: vec![Rational::zero(); n] };
    for (a, b, mass) in masses.into_iter().flatten() {
        if a == 0 || b == 0 {
            let w = &mass / &norm;
            for v in 0..n {
                if (a | b) >> v & 1 == 1 {
                    degenerate.per_vertex[v] += &w;
                }
            }
            degenerate.total += w;
        } else {
            *bicliques.entry((a.min(b), a.max(b))).or_insert_with(Rational::zero) += mass;
        }
    }
    let bits = |mask: u32| (0..n).filter(|v| mask >> v & 1 == 1).collect::<Vec<_>>();
    let mut cover = WeightedCover::new(g, Mode::Partition, Family::Cb);
    cover.extend_unchecked(
        bicliques
            .into_iter()
            .map(|((s, t), mass)| (Cuph::biclique(bits(s), bits(t)).expect("disjoint sides"), mass / &norm)),
    );
    Ok(DenseCover { cover, degenerate, keep_degenerate })
}

/// Monte Carlo tallies of edge coverage and vertex membership.
#[derive(Clone, Debug, PartialEq)]
pub struct McReport {
    pub samples: u64,
    pub edge_hits: Vec<u64>,
    pub vertex_hits: Vec<u64>,
    /// `2p(1-p)^m`.
    pub edge_expected: f64,
    /// `p + (1-p)^m`.
    pub vertex_expected: f64,
    pub z_threshold: f64,
}

fn z_score(hits: u64, samples: u64, expected: f64) -> f64 {
    let freq = hits as f64 / samples as f64;
    let se = (expected * (1.0 - expected) / samples as f64).sqrt();
    if se == 0.0 {
        if freq == expected { 0.0 } else { f64::INFINITY }
    } else {
        (freq - expected) / se
    }
}

impl McReport {
    pub fn edge_frequency(&self, e: usize) -> f64 {
        self.edge_hits[e] as f64 / self.samples as f64
    }

    pub fn vertex_frequency(&self, v: usize) -> f64 {
        self.vertex_hits[v] as f64 / self.samples as f64
    }

    /// Standard error of an edge frequency under the closed form.
    pub fn edge_se(&self) -> f64 {
        (self.edge_expected * (1.0 - self.edge_expected) / self.samples as f64).sqrt()
    }

    pub fn vertex_se(&self) -> f64 {
        (self.vertex_expected * (1.0 - self.vertex_expected) / self.samples as f64).sqrt()
    }

    pub fn edge_z(&self, e: usize) -> f64 {
        z_score(self.edge_hits[e], self.samples, self.edge_expected)
    }

    pub fn vertex_z(&self, v: usize) -> f64 {
        z_score(self.vertex_hits[v], self.samples, self.vertex_expected)
    }

    pub fn flagged_edges(&self) -> Vec<usize> {
        (0..self.edge_hits.len()).filter(|&e| self.edge_z(e).abs() > self.z_threshold).collect()
    }

    pub fn flagged_vertices(&self) -> Vec<usize> {
        (0..self.vertex_hits.len()).filter(|&v| self.vertex_z(v).abs() > self.z_threshold).collect()
    }
}

/// Samples in blocks; block `i` uses stream `i` of the master seed, so tallies
/// do not depend on the thread count.
pub fn dense_mc(g: &Hypergraph, params: &DenseParams, samples: u64, seed: u64) -> Result<McReport> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let sampler = DenseSampler::new(g, params)?;
    let blocks = samples.div_ceil(MC_BLOCK);
    let tallies: Vec<(Vec<u64>, Vec<u64>)> = (0..blocks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let count = MC_BLOCK.min(samples - i * MC_BLOCK);
            let mut edges = vec![0u64; g.num_edges()];
            let mut vertices = vec![0u64; g.n()];
            let mut side = vec![0u8; g.n()];
            for _ in 0..count {
                let out = sampler.sample(&mut rng);
                side.fill(0);
                for &v in &out.a {
                    side[v] = 1;
                    vertices[v] += 1;
                }
                for &v in &out.b {
                    side[v] = 2;
                    vertices[v] += 1;
                }
                for (id, e) in g.edges().iter().enumerate() {
                    if side[e[0]] | side[e[1]] == 3 {
                        edges[id] += 1;
                    }
                }
            }
            (edges, vertices)
        })
        .collect();
    let mut edge_hits = vec![0u64; g.num_edges()];
    let mut vertex_hits = vec![0u64; g.n()];
    for (e, v) in tallies {
        edge_hits.iter_mut().zip(e).for_each(|(t, x)| *t += x);
        vertex_hits.iter_mut().zip(v).for_each(|(t, x)| *t += x);
    }
    Ok(McReport {
        samples,
        edge_hits,
        vertex_hits,
        edge_expected: params.normalization().to_f64().expect("finite"),
        vertex_expected: params.membership_probability().to_f64().expect("finite"),
        z_threshold: 4.0,
    })
}

/// Projection graph of one (d-2)-set with isolated vertices removed, and its vertex labels.
fn projection_graph(n: usize, pairs: &[(usize, usize)]) -> Result<(Hypergraph, Vec<usize>)> {
    let mut labels: Vec<usize> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in labels.iter().enumerate() {
        index[v] = i;
    }
    let local: Vec<(usize, usize)> = pairs.iter().map(|&(u, v)| (index[u], index[v])).collect();
    Ok((Hypergraph::graph(labels.len(), &local)?, labels))
}

/// Tightest slack shared by all projection graphs: the largest `n_A - min_degree(G_A)`.
pub fn hyper_slack(h: &Hypergraph) -> usize {
    if h.d() == 2 {
        return h.n() - h.min_degree();
    }
    projections(h)
        .values()
        .map(|pairs| {
            let (g, _) = projection_graph(h.n(), pairs).expect("projected pairs are a graph");
            g.n() - g.min_degree()
        })
        .max()
        .unwrap_or(0)
}

/// Every vertex `u` of `G_A` lies in at least `n_A - m` edges with `A`.
fn check_projection(g: &Hypergraph, labels: &[usize], a: &[usize], m: usize) -> Result<()> {
    let required = g.n().saturating_sub(m);
    match (0..g.n()).find(|&u| g.degree(u) < required) {
        Some(u) => {
            let mut set = a.to_vec();
            set.push(labels[u]);
            set.sort_unstable();
            Err(Error::CodegreeCondition { set, count: g.degree(u), required })
        }
        None => Ok(()),
    }
}

/// The construction on every projection graph `G_A`, lifted with singleton parts
/// from `A` and weights divided by `C(d, 2)`. The slack `m` is shared by all projections.
pub fn dense_hyper<'h>(h: &'h Hypergraph, params: &DenseParams, keep_degenerate: bool) -> Result<DenseCover<'h>> {
    dense_hyper_with_limit(h, params, keep_degenerate, EXACT_LIMIT)
}

pub fn dense_hyper_with_limit<'h>(h: &'h Hypergraph, params: &DenseParams, keep_degenerate: bool, limit: usize) -> Result<DenseCover<'h>> {
    if h.d() == 2 {
        return dense_exact_with_limit(h, params, keep_degenerate, limit);
    }
    let d = h.d() as i64;
    let scale = Rational::from_integer(choose(d, 2)).recip();
    let groups: Vec<_> = projections(h).into_iter().collect();
    type Part = (Vec<(Cuph, Rational)>, DegenerateMass);
    let parts: Vec<Result<Part>> = groups
        .par_iter()
        .map(|(a, pairs)| {
            let (g, labels) = projection_graph(h.n(), pairs)?;
            check_projection(&g, &labels, a, params.m)?;
            let local = dense_exact_with_limit(&g, params, true, limit)?;
            let items = local
                .cover
                .items()
                .iter()
                .map(|(c, w)| {
                    let lifted = c.relabel(&labels).and_then(|c| c.lift(a)).expect("A avoids G_A");
                    (lifted, w * &scale)
                })
                .collect();
            let mut per_vertex = vec![Rational::zero(); h.n()];
            for (i, w) in local.degenerate.per_vertex.iter().enumerate() {
                per_vertex[labels[i]] = w * &scale;
            }
            // A lies in every outcome of its projection, degenerate ones included
            let extra = &local.degenerate.total * &scale;
            for &v in a.iter() {
                per_vertex[v] = extra.clone();
            }
            Ok((items, DegenerateMass { total: extra, per_vertex }))
        })
        .collect();
    let mut cover = WeightedCover::new(h, Mode::Partition, Family::Cb);
    let mut degenerate = DegenerateMass { total: Rational::zero(), per_vertex: vec![Rational::zero(); h.n()] };
    for part in parts {
        let (items, mass) = part?;
        cover.extend_unchecked(items);
        degenerate.total += mass.total;
        for (t, x) in degenerate.per_vertex.iter_mut().zip(mass.per_vertex) {
            *t += x;
        }
    }
    Ok(DenseCover { cover, degenerate, keep_degenerate })
}

/// Monte Carlo report for each projection graph, keyed by its (d-2)-set.
pub fn dense_hyper_mc(h: &Hypergraph, params: &DenseParams, samples: u64, seed: u64) -> Result<Vec<(Vec<usize>, McReport)>> {
    if h.d() == 2 {
        return Ok(vec![(Vec::new(), dense_mc(h, params, samples, seed)?)]);
    }
    projections(h)
        .into_iter()
        .enumerate()
        .map(|(i, (a, pairs))| {
            let (g, labels) = projection_graph(h.n(), &pairs)?;
            check_projection(&g, &labels, &a, params.m)?;
            let report = dense_mc(&g, params, samples, seed.wrapping_add(i as u64))?;
            Ok((a, report))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::cover::validate_cover;

    fn r(a: i64, b: i64) -> Rational {
        Rational::ratio(a, b)
    }

    fn exact_checks(g: &Hypergraph, params: &DenseParams) {
        let dc = dense_exact(g, params, true).unwrap();
        let rep = validate_cover(&dc.cover);
        assert!(rep.is_partition, "{:?}", g.edges());
        assert!(rep.foreign.is_empty());
        assert_eq!(dc.total_weight(), params.total_weight());
        assert!(dc.loads().iter().all(|l| *l == params.target_load()));
    }

    #[test]
    fn default_p_values() {
        let p = default_p(256).to_f64().unwrap();
        assert!((1.0 / p - 184.665).abs() < 1e-3, "{}", 1.0 / p);
        let p = default_p(1 << 16).to_f64().unwrap();
        assert!((1.0 / p - 8192.0 * std::f64::consts::LOG2_E).abs() < 1e-2);
        assert_eq!(default_p(4), r(1, 2));
        // log m - 2 log log m is not positive for 5 <= m <= 16
        assert_eq!(default_p(16), r(1, 2));
        assert!(default_p(17) < r(1, 100));
    }

    #[test]
    fn closed_forms() {
        let params = DenseParams::new(r(1, 2), 1).unwrap();
        assert_eq!(params.target_load(), r(2, 1));
        assert_eq!(params.total_weight(), r(2, 1));
        let params = DenseParams::new(r(1, 3), 1).unwrap();
        assert_eq!(params.target_load(), r(9, 4));
        assert_eq!(params.total_weight(), r(9, 4));
        assert!(DenseParams::new(r(1, 1), 1).is_err());
    }

    #[test]
    fn spec_examples() {
        let k2 = Hypergraph::complete(2, 2).unwrap();
        exact_checks(&k2, &DenseParams::new(r(1, 2), 1).unwrap());
        let k3 = Hypergraph::complete(3, 2).unwrap();
        exact_checks(&k3, &DenseParams::new(r(1, 3), 1).unwrap());
        let c4 = Hypergraph::cycle(4).unwrap();
        let params = DenseParams::new(r(1, 2), 2).unwrap();
        assert_eq!(params.target_load(), r(3, 1));
        exact_checks(&c4, &params);
    }

    #[test]
    fn larger_slack_is_still_exact() {
        let g = Hypergraph::path(4).unwrap();
        for m in 3..6 {
            exact_checks(&g, &DenseParams::new(r(2, 5), m).unwrap());
        }
    }

    #[test]
    fn dropping_degenerates_keeps_partition() {
        let g = Hypergraph::complete(4, 2).unwrap();
        let params = DenseParams::new(r(1, 3), 1).unwrap();
        let dc = dense_exact(&g, &params, false).unwrap();
        assert!(validate_cover(&dc.cover).is_partition);
        assert!(dc.total_weight() < params.total_weight());
        assert!(dc.loads().iter().all(|l| *l < params.target_load()));
        assert_eq!(dc.total_weight() + &dc.degenerate.total, params.total_weight());
    }

    #[test]
    fn degree_condition_enforced() {
        let g = Hypergraph::path(4).unwrap();
        let err = dense_exact(&g, &DenseParams::new(r(1, 2), 2).unwrap(), true).unwrap_err();
        assert!(matches!(err, Error::DegreeCondition { .. }));
        let g = Hypergraph::complete(13, 2).unwrap();
        assert!(dense_exact(&g, &DenseParams::new(r(1, 2), 1).unwrap(), true).is_err());
    }

    #[test]
    fn sampler_edge_cases() {
        let g = Hypergraph::complete(2, 2).unwrap();
        let params = DenseParams::new(r(1, 2), 1).unwrap();
        let sampler = DenseSampler::new(&g, &params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let out = sampler.sample(&mut rng);
            if out.a == [0] {
                assert_eq!(out.b, vec![1]);
            }
            if out.a.is_empty() {
                assert!(out.biclique().is_none());
            }
            assert!(out.a.iter().all(|v| !out.b.contains(v)));
        }
    }

    #[test]
    fn pair_frequency_matches_closed_form() {
        let g = Hypergraph::complete(3, 2).unwrap();
        let params = DenseParams::new(r(1, 3), 1).unwrap();
        let sampler = DenseSampler::new(&g, &params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| {
                let out = sampler.sample(&mut rng);
                out.a.contains(&0) && out.b.contains(&1)
            })
            .count();
        let expect = 2.0 / 9.0;
        let se = (expect * (1.0 - expect) / n as f64).sqrt();
        assert!((hits as f64 / n as f64 - expect).abs() < 4.0 * se);
    }

    #[test]
    fn sampler_matches_enumeration_chi_square() {
        let g = Hypergraph::complete(3, 2).unwrap();
        let params = DenseParams::new(r(1, 3), 1).unwrap();
        let dist = outcome_distribution(&g, &params, EXACT_LIMIT).unwrap();
        let total: Rational = dist.iter().map(|(_, w)| w.clone()).sum();
        assert_eq!(total, Rational::one());
        let sampler = DenseSampler::new(&g, &params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 100_000u64;
        let mut counts: HashMap<DenseOutcome, u64> = HashMap::new();
        for _ in 0..n {
            *counts.entry(sampler.sample(&mut rng)).or_default() += 1;
        }
        assert!(counts.keys().all(|o| dist.iter().any(|(d, _)| d == o)));
        let chi: f64 = dist
            .iter()
            .map(|(o, w)| {
                let e = w.to_f64().unwrap() * n as f64;
                let c = *counts.get(o).unwrap_or(&0) as f64;
                (c - e).powi(2) / e
            })
            .sum();
        // upper 10^-3 quantile of chi-square with 7 degrees of freedom
        assert_eq!(dist.len(), 8);
        assert!(chi < 24.322, "chi-square {chi}");
    }

    #[test]
    fn monte_carlo_report() {
        let g = Hypergraph::complete(5, 2).unwrap();
        let params = DenseParams::new(r(1, 4), 1).unwrap();
        let rep = dense_mc(&g, &params, 100_000, 99).unwrap();
        assert!((rep.edge_expected - 0.375).abs() < 1e-12);
        assert!(rep.flagged_edges().is_empty());
        assert!(rep.flagged_vertices().is_empty());
        assert!(dense_mc(&g, &params, 0, 99).is_err());
        let single = Hypergraph::complete(2, 2).unwrap();
        let rep = dense_mc(&single, &DenseParams::new(r(1, 2), 1).unwrap(), 100_000, 3).unwrap();
        assert!((rep.edge_frequency(0) - 0.5).abs() < 4.0 * rep.edge_se());
    }

    #[test]
    fn monte_carlo_is_thread_independent() {
        let g = Hypergraph::cycle(6).unwrap();
        let params = DenseParams::for_graph(&g, Some(r(1, 3))).unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| dense_mc(&g, &params, 20_000, 5).unwrap());
        let b = four.install(|| dense_mc(&g, &params, 20_000, 5).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn hyper_single_edge() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let params = DenseParams::new(r(1, 2), 1).unwrap();
        let dc = dense_hyper(&h, &params, true).unwrap();
        let rep = validate_cover(&dc.cover);
        assert!(rep.is_partition);
        assert_eq!(rep.totals, vec![r(1, 1)]);
    }

    #[test]
    fn hyper_reduces_to_graph_case() {
        let g = Hypergraph::complete(4, 2).unwrap();
        let params = DenseParams::new(r(1, 3), 1).unwrap();
        let a = dense_hyper(&g, &params, true).unwrap();
        let b = dense_exact(&g, &params, true).unwrap();
        assert_eq!(a.cover.items(), b.cover.items());
        assert_eq!(a.degenerate, b.degenerate);
    }

    #[test]
    fn hyper_complete_three_uniform() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let m = hyper_slack(&h);
        assert_eq!(m, 1);
        let params = DenseParams::new(r(1, 3), m).unwrap();
        let dc = dense_hyper(&h, &params, true).unwrap();
        assert!(validate_cover(&dc.cover).is_partition);
        // each vertex is a graph vertex of five projections and the singleton of one
        let expect = (params.target_load() * r(5, 1) + params.total_weight()) / r(3, 1);
        assert!(dc.loads().iter().all(|l| *l == expect));
        let without = dense_hyper(&h, &params, false).unwrap();
        assert_eq!(without.max_load(), Some(load_profile(&without.cover).max));
    }

    #[test]
    fn hyper_codegree_condition() {
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let err = dense_hyper(&h, &DenseParams::new(r(1, 2), 1).unwrap(), true).unwrap_err();
        assert!(matches!(err, Error::CodegreeCondition { .. }));
        // the projection of {2} is a perfect matching on four vertices
        assert_eq!(hyper_slack(&h), 3);
        assert!(dense_hyper(&h, &DenseParams::new(r(1, 2), 3).unwrap(), true).is_ok());
        let reports = dense_hyper_mc(&h, &DenseParams::new(r(1, 2), 3).unwrap(), 1000, 1).unwrap();
        assert_eq!(reports.len(), 5);
    }

    /// Closed-form load in floating point; `(1-p)^-m` via `exp(-m ln(1-p))`.
    fn closed_form(p: f64, m: usize) -> f64 {
        0.5 * (1.0 / p + (-(m as f64) * (-p).ln_1p()).exp())
    }

    #[test]
    fn default_p_is_near_the_grid_argmin() {
        // holds on a powers-of-two grid from m = 2^10; at m = 2^8 the argmin is 1.5 steps away
        for m in [1usize << 10, 1 << 12, 1 << 16, 1 << 20, 1 << 24] {
            let p = default_p(m).to_f64().unwrap();
            let best = (1..64).min_by(|&a, &b| closed_form(0.5f64.powi(a), m).total_cmp(&closed_form(0.5f64.powi(b), m))).unwrap();
            let gap = (-p.log2() - best as f64).abs();
            assert!(gap <= 1.0, "m = {m}: default at 2^-{:.2}, grid argmin 2^-{best}", -p.log2());
        }
    }
}
