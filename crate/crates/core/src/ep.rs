//! Biclique partitions of graphs from a vertex class partition.
//!
//! Split the vertices into classes of at most `k` vertices. For a class `H`
//! and a nonempty `S ⊆ H`, the biclique `(S, T_S)` collects every vertex whose
//! out-neighbourhood (under a fixed orientation) meets `H` in exactly `S`.
//! Every edge lands in exactly one of these bicliques, the number of
//! bicliques is below `2^k n / k`, and each vertex lies in at most
//! `2^(k-1) + ceil(n/k)` of them.
//!
//! The half-integral variant uses full neighbourhoods instead; every edge is
//! then covered twice, so each biclique gets weight 1/2 and the load bound
//! halves to `2^(k-2) + ceil(n/k)/2`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::{Family, Mode, WeightedCover};
use crate::cuph::Cuph;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::scalar::Scalar;

/// `max(1, min(n, ceil(log n - 2 log log n)))`, base-2 logarithms.
pub fn default_k(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let log_n = (n as f64).log2();
    let raw = (log_n - 2.0 * log_n.log2()).ceil();
    if raw < 1.0 {
        1
    } else {
        (raw as usize).min(n)
    }
}

/// A head/tail choice for every edge of a graph, indexed like the host's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// `(tail, head)` per edge id.
    arcs: Vec<(usize, usize)>,
}

impl Orientation {
    /// Tail is the smaller endpoint.
    pub fn low_to_high(g: &Hypergraph) -> Orientation {
        Orientation { arcs: g.edges().iter().map(|e| (e[0], e[1])).collect() }
    }

    /// Each edge flipped by an independent fair coin.
    pub fn random(g: &Hypergraph, seed: u64) -> Orientation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arcs = g
            .edges()
            .iter()
            .map(|e| if rng.gen_bool(0.5) { (e[1], e[0]) } else { (e[0], e[1]) })
            .collect();
        Orientation { arcs }
    }

    /// `arcs[i]` must be the endpoints of edge `i` in some order.
    pub fn from_arcs(g: &Hypergraph, arcs: Vec<(usize, usize)>) -> Result<Orientation> {
        g.require_graph("an orientation")?;
        if arcs.len() != g.num_edges() {
            return Err(Error::BadOrientation(format!("{} arcs for {} edges", arcs.len(), g.num_edges())));
        }
        for (i, (&(t, h), e)) in arcs.iter().zip(g.edges()).enumerate() {
            let ok = (t == e[0] && h == e[1]) || (t == e[1] && h == e[0]);
            if !ok {
                return Err(Error::BadOrientation(format!("arc {i} = ({t},{h}) is not edge {e}")));
            }
        }
        Ok(Orientation { arcs })
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn tail(&self, edge: usize) -> usize {
        self.arcs[edge].0
    }

    pub fn head(&self, edge: usize) -> usize {
        self.arcs[edge].1
    }

    /// Sorted out-neighbourhood of every vertex.
    pub fn out_neighbors(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for &(t, h) in &self.arcs {
            out[t].push(h);
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }
}

/// Disjoint vertex classes of size at most `k` that cover `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    k: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ClassPartition {
    /// Consecutive index blocks `{0..k}, {k..2k}, ...`, the last one possibly smaller.
    pub fn consecutive(n: usize, k: usize) -> Result<ClassPartition> {
        check_k(n, k)?;
        let classes = (0..n).step_by(k).map(|start| (start..(start + k).min(n)).collect()).collect();
        ClassPartition::new(n, k, classes)
    }

    /// At most `ceil(n/k)` nonempty classes, each of size at most `k`.
    pub fn new(n: usize, k: usize, classes: Vec<Vec<usize>>) -> Result<ClassPartition> {
        check_k(n, k)?;
        if classes.len() > n.div_ceil(k) {
            return Err(Error::BadClassPartition(format!("{} classes exceed ceil(n/k) = {}", classes.len(), n.div_ceil(k))));
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes = classes;
        for (i, class) in classes.iter_mut().enumerate() {
            class.sort_unstable();
            if class.is_empty() || class.len() > k {
                return Err(Error::BadClassPartition(format!("class {i} has size {}", class.len())));
            }
            for &v in class.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if class_of[v] != usize::MAX {
                    return Err(Error::BadClassPartition(format!("vertex {v} in two classes")));
                }
                class_of[v] = i;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::BadClassPartition(format!("vertex {v} in no class")));
        }
        Ok(ClassPartition { k, classes, class_of })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    Ok(())
}

/// The guarantees of the class construction for given `n` and `k`, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBounds {
    /// Strict upper bound on the number of bicliques: `2^k n / k`.
    pub items: BigRational,
    /// Load bound of the integral partition: `2^(k-1) + ceil(n/k)`.
    pub integral_load: BigRational,
    /// Load bound of the half-integral partition: `2^(k-2) + ceil(n/k)/2`.
    pub fractional_load: BigRational,
}

pub fn class_bounds(n: usize, k: usize) -> ClassBounds {
    let pow2 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as u32)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as u32)
        }
    };
    let k_i = k as i64;
    let classes = BigRational::from_integer(n.div_ceil(k.max(1)).into());
    ClassBounds {
        items: pow2(k_i) * BigRational::new(n.into(), k.max(1).into()),
        integral_load: pow2(k_i - 1) + classes.clone(),
        fractional_load: pow2(k_i - 2) + classes / BigRational::from_integer(2.into()),
    }
}

/// Groups vertices by `neighbors(v) ∩ class` and returns the nonempty groups
/// as `(S, T_S)` in class order, then by `S`.
fn class_bicliques(classes: &ClassPartition, neighbors: &[Vec<usize>]) -> Vec<Cuph> {
    let mut per_class: Vec<BTreeMap<Vec<usize>, Vec<usize>>> = vec![BTreeMap::new(); classes.classes().len()];
    let mut scratch: HashMap<usize, Vec<usize>> = HashMap::new();
    for (v, nb) in neighbors.iter().enumerate() {
        scratch.clear();
        for &w in nb {
            scratch.entry(classes.class_of(w)).or_default().push(w);
        }
        for (&class, s) in scratch.iter_mut() {
            per_class[class].entry(std::mem::take(s)).or_default().push(v);
        }
    }
    per_class
        .into_iter()
        .flat_map(|groups| groups.into_iter().map(|(s, t)| Cuph::biclique(s, t).expect("S and T_S are disjoint and nonempty")))
        .collect()
}

/// Integral biclique partition using consecutive classes of size `k`.
pub fn ep_partition<'g, T: Scalar>(g: &'g Hypergraph, k: usize, orient: &Orientation) -> Result<WeightedCover<'g, T>> {
    g.require_graph("ep_partition")?;
    let classes = ClassPartition::consecutive(g.n(), k)?;
    ep_partition_with(g, &classes, orient)
}

/// Integral biclique partition for an explicit class partition.
pub fn ep_partition_with<'g, T: Scalar>(
    g: &'g Hypergraph,
    classes: &ClassPartition,
    orient: &Orientation,
) -> Result<WeightedCover<'g, T>> {
    g.require_graph("ep_partition")?;
    if orient.arcs().len() != g.num_edges() {
        return Err(Error::BadOrientation("orientation belongs to a different graph".into()));
    }
    let out = orient.out_neighbors(g.n());
    let mut cover = WeightedCover::new(g, Mode::Partition, Family::Cb);
    cover.extend_unchecked(class_bicliques(classes, &out).into_iter().map(|c| (c, T::one())));
    Ok(cover)
}

/// Half-integral biclique partition using consecutive classes of size `k`.
pub fn ep_fractional<'g, T: Scalar>(g: &'g Hypergraph, k: usize) -> Result<WeightedCover<'g, T>> {
    g.require_graph("ep_fractional")?;
    let classes = ClassPartition::consecutive(g.n(), k)?;
    ep_fractional_with(g, &classes)
}

/// Half-integral biclique partition for an explicit class partition. Bicliques
/// produced twice (once from each side) are merged into a single item of weight 1.
pub fn ep_fractional_with<'g, T: Scalar>(g: &'g Hypergraph, classes: &ClassPartition) -> Result<WeightedCover<'g, T>> {
    g.require_graph("ep_fractional")?;
    let nb = g.neighborhoods();
    let half = T::ratio(1, 2);
    let mut cover = WeightedCover::new(g, Mode::Partition, Family::Cb);
    cover.extend_unchecked(class_bicliques(classes, &nb).into_iter().map(|c| (c, half.clone())));
    cover.merge_duplicates();
    Ok(cover)
}
