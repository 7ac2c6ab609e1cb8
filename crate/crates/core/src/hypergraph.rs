//! d-uniform hypergraphs on dense vertex indices.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::combin::Combinations;
use crate::error::{Error, Result};

/// A sorted set of distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Vec<usize>);

impl Edge {
    /// Sorts the vertices; fails on repeats.
    pub fn new(mut vertices: Vec<usize>) -> Result<Edge> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            let d = vertices.len();
            return Err(Error::EdgeArity { edge: vertices, d });
        }
        Ok(Edge(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Edge {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Edge(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for Edge {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Maps sorted vertex tuples to edge ids.
#[derive(Clone, Debug)]
enum EdgeLookup {
    Dense { n: usize, slots: Vec<u32> },
    Sparse(HashMap<Vec<usize>, usize>),
}

const DENSE_LOOKUP_MAX: usize = 1 << 22;
const NO_EDGE: u32 = u32::MAX;

impl EdgeLookup {
    fn build(n: usize, d: usize, edges: &[Edge]) -> EdgeLookup {
        let dense_size = (n.max(1) as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if dense_size <= DENSE_LOOKUP_MAX as u128 && edges.len() < NO_EDGE as usize {
            let mut slots = vec![NO_EDGE; dense_size as usize];
            for (i, e) in edges.iter().enumerate() {
                slots[Self::rank(n, e)] = i as u32;
            }
            EdgeLookup::Dense { n, slots }
        } else {
            EdgeLookup::Sparse(edges.iter().enumerate().map(|(i, e)| (e.0.clone(), i)).collect())
        }
    }

    fn rank(n: usize, sorted: &[usize]) -> usize {
        sorted.iter().fold(0, |acc, &v| acc * n + v)
    }

    fn get(&self, sorted: &[usize]) -> Option<usize> {
        match self {
            EdgeLookup::Dense { n, slots } => {
                if sorted.iter().any(|&v| v >= *n) {
                    return None;
                }
                match slots[Self::rank(*n, sorted)] {
                    NO_EDGE => None,
                    i => Some(i as usize),
                }
            }
            EdgeLookup::Sparse(map) => map.get(sorted).copied(),
        }
    }
}

/// A d-uniform hypergraph on vertices `0..n`. For `d = 2` this is a simple graph.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: usize,
    d: usize,
    edges: Vec<Edge>,
    lookup: EdgeLookup,
    /// Edge ids incident to each vertex.
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph; edges are sorted into lexicographic order.
    pub fn new<I, E>(n: usize, d: usize, edges: I) -> Result<Hypergraph>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<usize>>,
    {
        if d < 2 {
            return Err(Error::Uniformity(d));
        }
        let mut list = Vec::new();
        for e in edges {
            let raw: Vec<usize> = e.into();
            if raw.len() != d {
                return Err(Error::EdgeArity { edge: raw, d });
            }
            if let Some(&v) = raw.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            list.push(Edge::new(raw)?);
        }
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0.clone()));
        }
        Ok(Self::from_sorted_unique(n, d, list))
    }

    fn from_sorted_unique(n: usize, d: usize, edges: Vec<Edge>) -> Hypergraph {
        let lookup = EdgeLookup::build(n, d, &edges);
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e.iter() {
                incidence[v].push(i);
            }
        }
        Hypergraph { n, d, edges, lookup, incidence }
    }

    pub fn empty(n: usize, d: usize) -> Result<Hypergraph> {
        Self::new(n, d, Vec::<Vec<usize>>::new())
    }

    /// All `C(n, d)` d-subsets as edges.
    pub fn complete(n: usize, d: usize) -> Result<Hypergraph> {
        if d < 2 {
            return Err(Error::Uniformity(d));
        }
        let edges = Combinations::new(n, d).map(Edge::from_sorted).collect();
        Ok(Self::from_sorted_unique(n, d, edges))
    }

    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Hypergraph> {
        Self::new(n, 2, edges.iter().map(|&(a, b)| vec![a, b]))
    }

    pub fn cycle(n: usize) -> Result<Hypergraph> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::graph(n, &edges)
    }

    /// Path on `n` vertices (`n - 1` edges).
    pub fn path(n: usize) -> Result<Hypergraph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::graph(n, &edges)
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Hypergraph> {
        let edges: Vec<_> = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect();
        Self::graph(a + b, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Id of the edge with these vertices (any order).
    pub fn edge_id(&self, vertices: &[usize]) -> Option<usize> {
        if vertices.len() != self.d {
            return None;
        }
        if vertices.windows(2).all(|w| w[0] < w[1]) {
            self.lookup.get(vertices)
        } else {
            let mut v = vertices.to_vec();
            v.sort_unstable();
            self.lookup.get(&v)
        }
    }

    pub fn contains_edge(&self, vertices: &[usize]) -> bool {
        self.edge_id(vertices).is_some()
    }

    /// Ids of edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbourhoods; only meaningful for graphs.
    pub fn neighborhoods(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.n];
        for e in &self.edges {
            for &u in e.iter() {
                for &w in e.iter() {
                    if u != w {
                        nb[u].push(w);
                    }
                }
            }
        }
        for list in &mut nb {
            list.sort_unstable();
            list.dedup();
        }
        nb
    }

    /// Number of edges containing every vertex of `set`.
    pub fn codegree(&self, set: &[usize]) -> usize {
        match set.first() {
            None => self.edges.len(),
            Some(&v) => self.incidence[v]
                .iter()
                .filter(|&&id| set.iter().all(|u| self.edges[id].binary_search(u).is_ok()))
                .count(),
        }
    }

    pub(crate) fn require_graph(&self, what: &'static str) -> Result<()> {
        if self.d != 2 {
            return Err(Error::NotAGraph { what, d: self.d });
        }
        Ok(())
    }
}
