//! Lifting graph biclique partitions to d-cuph partitions of d-uniform hypergraphs.
//!
//! Integral: split each edge `e` into a `(d-2)`-set `A(e)` and a pair `B(e)`.
//! For each `A`, the pairs `B(e)` with `A(e) = A` form a graph `G_A`; partition
//! it with [`crate::ep`] and add the vertices of `A` as singleton parts.
//!
//! Fractional: every edge contains `C(d,2)` distinct `(d-2)`-sets `A`. Each
//! projection graph `G'_A = {e \ A : A ⊆ e}` gets a half-integral partition,
//! lifted the same way with weights divided by `C(d,2)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combin::{choose, subsets_of};
use crate::cover::{Family, Mode, WeightedCover};
use crate::cuph::Cuph;
use crate::ep::{class_bounds, ep_fractional, ep_partition, Orientation};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::scalar::Scalar;

/// For every edge (by id), the `d-2` vertices kept as singleton parts; the
/// remaining two vertices form the pair `B(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSplit {
    a_sets: Vec<Vec<usize>>,
}

impl EdgeSplit {
    /// `A(e)` is the `d-2` smallest vertices of `e`.
    pub fn smallest(h: &Hypergraph) -> EdgeSplit {
        let keep = h.d() - 2;
        EdgeSplit { a_sets: h.edges().iter().map(|e| e[..keep].to_vec()).collect() }
    }

    /// `A(e)` chosen uniformly among the `(d-2)`-subsets of `e`.
    pub fn random(h: &Hypergraph, seed: u64) -> EdgeSplit {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let keep = h.d() - 2;
        let a_sets = h
            .edges()
            .iter()
            .map(|e| {
                let mut a: Vec<usize> = e.choose_multiple(&mut rng, keep).copied().collect();
                a.sort_unstable();
                a
            })
            .collect();
        EdgeSplit { a_sets }
    }

    pub fn from_sets(h: &Hypergraph, a_sets: Vec<Vec<usize>>) -> Result<EdgeSplit> {
        if a_sets.len() != h.num_edges() {
            return Err(Error::BadSplit(format!("{} sets for {} edges", a_sets.len(), h.num_edges())));
        }
        let mut a_sets = a_sets;
        for (a, e) in a_sets.iter_mut().zip(h.edges()) {
            a.sort_unstable();
            a.dedup();
            if a.len() != h.d() - 2 || a.iter().any(|v| e.binary_search(v).is_err()) {
                return Err(Error::BadSplit(format!("{a:?} is not a {}-subset of edge {e}", h.d() - 2)));
            }
        }
        Ok(EdgeSplit { a_sets })
    }

    pub fn a(&self, edge: usize) -> &[usize] {
        &self.a_sets[edge]
    }

    /// The pair `e \ A(e)`.
    pub fn b(&self, h: &Hypergraph, edge: usize) -> (usize, usize) {
        let rest: Vec<usize> = h.edges()[edge].iter().copied().filter(|v| self.a_sets[edge].binary_search(v).is_err()).collect();
        (rest[0], rest[1])
    }
}

/// All projection graphs: for every `(d-2)`-set `A` contained in some edge,
/// the pairs `e \ A` over edges `e ⊇ A`. Keys are sorted.
pub fn projections(h: &Hypergraph) -> BTreeMap<Vec<usize>, Vec<(usize, usize)>> {
    let mut out: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    let keep = h.d() - 2;
    for e in h.edges() {
        for a in subsets_of(e, keep) {
            let rest: Vec<usize> = e.iter().copied().filter(|v| a.binary_search(v).is_err()).collect();
            out.entry(a).or_default().push((rest[0], rest[1]));
        }
    }
    out
}

fn lift_items<T: Scalar>(cover: &WeightedCover<'_, T>, a: &[usize], scale: &T) -> Vec<(Cuph, T)> {
    cover
        .items()
        .iter()
        .map(|(c, w)| (c.lift(a).expect("A is disjoint from every projected pair"), w.clone() * scale.clone()))
        .collect()
}

/// Integral d-cuph partition from an edge split.
pub fn hyper_partition<'h, T: Scalar>(h: &'h Hypergraph, k: usize, split: &EdgeSplit) -> Result<WeightedCover<'h, T>> {
    if k == 0 || k > h.n() {
        return Err(Error::KOutOfRange { k, n: h.n() });
    }
    if split.a_sets.len() != h.num_edges() {
        return Err(Error::BadSplit("split belongs to a different hypergraph".into()));
    }
    let mut groups: BTreeMap<&[usize], Vec<(usize, usize)>> = BTreeMap::new();
    for (id, e) in h.edges().iter().enumerate() {
        let a = split.a(id);
        if a.len() != h.d() - 2 || a.iter().any(|v| e.binary_search(v).is_err()) {
            return Err(Error::BadSplit(format!("A = {a:?} does not fit edge {e}")));
        }
        groups.entry(a).or_default().push(split.b(h, id));
    }
    let groups: Vec<_> = groups.into_iter().collect();
    let lifted: Vec<Result<Vec<(Cuph, T)>>> = groups
        .par_iter()
        .map(|(a, pairs)| {
            let g = Hypergraph::graph(h.n(), pairs)?;
            let part = ep_partition::<T>(&g, k, &Orientation::low_to_high(&g))?;
            Ok(lift_items(&part, a, &T::one()))
        })
        .collect();
    let mut cover = WeightedCover::new(h, Mode::Partition, Family::Cb);
    for items in lifted {
        cover.extend_unchecked(items?);
    }
    Ok(cover)
}

/// Fractional d-cuph partition from all projection graphs.
pub fn hyper_fractional<'h, T: Scalar>(h: &'h Hypergraph, k: usize) -> Result<WeightedCover<'h, T>> {
    if k == 0 || k > h.n() {
        return Err(Error::KOutOfRange { k, n: h.n() });
    }
    let pairs_total = (h.d() * (h.d() - 1) / 2) as i64;
    let scale = T::ratio(1, pairs_total);
    let groups: Vec<_> = projections(h).into_iter().collect();
    let lifted: Vec<Result<Vec<(Cuph, T)>>> = groups
        .par_iter()
        .map(|(a, pairs)| {
            let g = Hypergraph::graph(h.n(), pairs)?;
            let part = ep_fractional::<T>(&g, k)?;
            Ok(lift_items(&part, a, &scale))
        })
        .collect();
    let mut cover = WeightedCover::new(h, Mode::Partition, Family::Cb);
    for items in lifted {
        cover.extend_unchecked(items?);
    }
    Ok(cover)
}

/// Per-vertex load guarantees of the two lifts, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftBounds {
    /// `C(n-1,d-3) 2^k n/k + C(n-1,d-2) (2^(k-1) + ceil(n/k))`.
    pub integral_load: BigRational,
    /// `(C(n-1,d-3) 2^k n/k + C(n-1,d-2) (2^(k-2) + ceil(n/k)/2)) / C(d,2)`.
    pub fractional_load: BigRational,
}

pub fn lift_bounds(n: usize, d: usize, k: usize) -> LiftBounds {
    let b = class_bounds(n, k);
    let (n, d) = (n as i64, d as i64);
    let inside = BigRational::from_integer(choose(n - 1, d - 3));
    let outside = BigRational::from_integer(choose(n - 1, d - 2));
    let pairs = BigRational::from_integer(choose(d, 2));
    LiftBounds {
        integral_load: inside.clone() * b.items.clone() + outside.clone() * b.integral_load,
        fractional_load: (inside * b.items + outside * b.fractional_load) / pairs,
    }
}

/// `true` if every weight times `d^2 - d` is an integer.
pub fn weights_are_multiples(cover: &WeightedCover<'_, BigRational>) -> bool {
    let d = cover.host().d() as i64;
    let unit = BigRational::from_integer(BigInt::from(d * d - d));
    cover.items().iter().all(|(_, w)| (w * &unit).is_integer())
}

/// Smallest number of singleton parts over all items.
pub fn min_singleton_parts<T>(cover: &WeightedCover<'_, T>) -> usize
where
    T: Scalar,
{
    cover
        .items()
        .iter()
        .map(|(c, _)| c.parts().iter().filter(|p| p.len() == 1).count())
        .min()
        .unwrap_or(usize::MAX)
}

/// Number of projection sets containing each edge, for checking the `C(d,2)` multiplicity.
pub fn projection_multiplicity(h: &Hypergraph) -> Vec<usize> {
    let mut counts = vec![0usize; h.num_edges()];
    for (a, pairs) in projections(h) {
        for (x, y) in pairs {
            let mut e = a.clone();
            e.push(x);
            e.push(y);
            if let Some(id) = h.edge_id(&e) {
                counts[id] += 1;
            }
        }
    }
    counts
}
