//! Weighted covers of a host hypergraph and their coverage and load semantics.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;

use crate::cuph::Cuph;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};
use crate::scalar::Scalar;

/// Whether edge totals must be at least one or exactly one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Cover,
    Partition,
}

/// The admissible subhypergraph family: d-cuphs (`Cb`) or (d,k)-cuphs for any `k >= d` (`Cm`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cb,
    Cm,
}

/// Fractional weights or 0/1 weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relax {
    Fractional,
    Integral,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cover => "cover",
            Mode::Partition => "partition",
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cb => "cb",
            Family::Cm => "cm",
        })
    }
}

impl fmt::Display for Relax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relax::Fractional => "fractional",
            Relax::Integral => "integral",
        })
    }
}

/// A list of weighted cuphs attached to a host.
///
/// Items are not required to be subhypergraphs of the host at insertion time;
/// [`validate_cover`] reports the ones that are not. Duplicate cuphs are allowed
/// and can be merged with [`WeightedCover::merge_duplicates`].
#[derive(Clone, Debug)]
pub struct WeightedCover<'h, T> {
    host: &'h Hypergraph,
    items: Vec<(Cuph, T)>,
    mode: Mode,
    family: Family,
}

impl<'h, T: Scalar> WeightedCover<'h, T> {
    pub fn new(host: &'h Hypergraph, mode: Mode, family: Family) -> Self {
        WeightedCover { host, items: Vec::new(), mode, family }
    }

    /// Appends an item. Rejects non-positive weights, uniformity mismatches,
    /// out-of-range vertices and, for `Cb`, cuphs with more than d parts.
    pub fn push(&mut self, cuph: Cuph, weight: T) -> Result<()> {
        if !weight.is_definitely_positive() {
            return Err(Error::NonPositiveWeight(weight.to_string()));
        }
        if cuph.d() != self.host.d() {
            return Err(Error::UniformityMismatch { expected: self.host.d(), got: cuph.d() });
        }
        if self.family == Family::Cb && cuph.k() != cuph.d() {
            return Err(Error::NotBipartiteFamily { d: cuph.d(), k: cuph.k() });
        }
        if let Some(&v) = cuph.vertices().last().filter(|&&v| v >= self.host.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.host.n() });
        }
        self.items.push((cuph, weight));
        Ok(())
    }

    pub fn host(&self) -> &'h Hypergraph {
        self.host
    }

    pub fn items(&self) -> &[(Cuph, T)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn total_weight(&self) -> T {
        self.items.iter().fold(T::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// `true` if every weight equals one.
    pub fn is_integral(&self) -> bool {
        self.items.iter().all(|(_, w)| w.approx_eq(&T::one()))
    }

    /// Sums the weights of canonically equal cuphs, keeping first-occurrence order.
    pub fn merge_duplicates(&mut self) {
        let mut position: HashMap<Cuph, usize> = HashMap::with_capacity(self.items.len());
        let mut merged: Vec<(Cuph, T)> = Vec::with_capacity(self.items.len());
        for (c, w) in self.items.drain(..) {
            match position.get(&c) {
                Some(&i) => merged[i].1 = merged[i].1.clone() + w,
                None => {
                    position.insert(c.clone(), merged.len());
                    merged.push((c, w));
                }
            }
        }
        self.items = merged;
    }

    pub(crate) fn extend_unchecked(&mut self, items: impl IntoIterator<Item = (Cuph, T)>) {
        self.items.extend(items);
    }

    /// Same items attached to a different (equal) host, e.g. after re-reading from disk.
    pub fn rehost<'g>(self, host: &'g Hypergraph) -> WeightedCover<'g, T> {
        WeightedCover { host, items: self.items, mode: self.mode, family: self.family }
    }
}

/// An item that names an edge missing from the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForeignItem {
    pub item: usize,
    pub edge: Edge,
}

/// Per-edge covering totals and the cover/partition verdicts.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverageReport<T> {
    /// Total weight per host edge, in host edge order.
    pub totals: Vec<T>,
    /// `None` when the host has no edges.
    pub min: Option<T>,
    pub max: Option<T>,
    /// Edges with total below one (never touched edges included).
    pub uncovered: Vec<Edge>,
    /// Edges with total above one.
    pub overcovered: Vec<Edge>,
    pub foreign: Vec<ForeignItem>,
    pub is_cover: bool,
    pub is_partition: bool,
}

impl<T> CoverageReport<T> {
    pub fn is_valid(&self, mode: Mode) -> bool {
        match mode {
            Mode::Cover => self.is_cover,
            Mode::Partition => self.is_partition,
        }
    }
}

/// Per-vertex loads.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadProfile<T> {
    pub loads: Vec<T>,
    pub max: T,
}

impl<T: Scalar> LoadProfile<T> {
    pub(crate) fn from_loads(loads: Vec<T>) -> Self {
        let max = loads.iter().fold(T::zero(), |m, l| if *l > m { l.clone() } else { m });
        LoadProfile { loads, max }
    }

    /// Sum of all vertex loads.
    pub fn total(&self) -> T {
        self.loads.iter().fold(T::zero(), |acc, l| acc + l.clone())
    }
}

/// Computes the total covering weight of every host edge.
pub fn validate_cover<T: Scalar>(cover: &WeightedCover<'_, T>) -> CoverageReport<T> {
    let host = cover.host();
    let mut totals = vec![T::zero(); host.num_edges()];
    let mut foreign = Vec::new();
    for (i, (cuph, w)) in cover.items().iter().enumerate() {
        let mut first_bad: Option<Edge> = None;
        if cuph.d() != host.d() {
            first_bad = cuph.edges().into_iter().next();
        } else {
            cuph.for_each_edge(|e| match host.edge_id(e) {
                Some(id) => totals[id] = totals[id].clone() + w.clone(),
                None => {
                    if first_bad.is_none() {
                        first_bad = Some(Edge::from_sorted(e.to_vec()));
                    }
                }
            });
        }
        if let Some(edge) = first_bad {
            foreign.push(ForeignItem { item: i, edge });
        }
    }
    let one = T::one();
    let mut uncovered = Vec::new();
    let mut overcovered = Vec::new();
    for (e, t) in host.edges().iter().zip(&totals) {
        if !t.approx_ge(&one) {
            uncovered.push(e.clone());
        } else if !t.approx_eq(&one) {
            overcovered.push(e.clone());
        }
    }
    let min = totals.iter().cloned().reduce(|a, b| if b < a { b } else { a });
    let max = totals.iter().cloned().reduce(|a, b| if b > a { b } else { a });
    let is_cover = uncovered.is_empty() && foreign.is_empty();
    let is_partition = is_cover && overcovered.is_empty();
    CoverageReport { totals, min, max, uncovered, overcovered, foreign, is_cover, is_partition }
}

/// Load of every vertex: the total weight of the items having it in some part.
pub fn load_profile<T: Scalar>(cover: &WeightedCover<'_, T>) -> LoadProfile<T> {
    let n = cover.host().n();
    let mut loads = vec![T::zero(); n];
    for (cuph, w) in cover.items() {
        for part in cuph.parts() {
            for &v in part {
                if v < n {
                    loads[v] = loads[v].clone() + w.clone();
                }
            }
        }
    }
    LoadProfile::from_loads(loads)
}

/// `|E| / |V|`.
pub fn density(h: &Hypergraph) -> Result<BigRational> {
    if h.n() == 0 {
        return Err(Error::EmptyVertexSet);
    }
    Ok(BigRational::new(h.num_edges().into(), h.n().into()))
}
