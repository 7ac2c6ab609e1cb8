//! Complete d-uniform k-partite subhypergraphs ("cuphs").

use std::fmt;

use crate::combin::Combinations;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

/// A (d,k)-cuph given by its partite sets. Edges are implicit: every d-set
/// that takes exactly one vertex from each of d distinct parts.
///
/// Always stored canonically (each part sorted, parts in lexicographic order),
/// so equal cuphs compare and hash equal regardless of how they were built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cuph {
    d: usize,
    parts: Vec<Vec<usize>>,
}

impl Cuph {
    pub fn new(d: usize, parts: Vec<Vec<usize>>) -> Result<Cuph> {
        if d < 2 {
            return Err(Error::Uniformity(d));
        }
        if parts.len() < d {
            return Err(Error::TooFewParts { d, k: parts.len() });
        }
        let mut parts = parts;
        for (i, p) in parts.iter_mut().enumerate() {
            if p.is_empty() {
                return Err(Error::EmptyPart(i));
            }
            p.sort_unstable();
            if let Some(w) = p.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::OverlappingParts(w[0]));
            }
        }
        let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
        all.sort_unstable();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::OverlappingParts(w[0]));
        }
        parts.sort();
        Ok(Cuph { d, parts })
    }

    /// Complete bipartite graph with sides `s` and `t`.
    pub fn biclique(s: Vec<usize>, t: Vec<usize>) -> Result<Cuph> {
        Cuph::new(2, vec![s, t])
    }

    /// The cuph consisting of a single edge, every vertex its own part.
    pub fn single_edge(edge: &Edge) -> Cuph {
        Cuph { d: edge.len(), parts: edge.iter().map(|&v| vec![v]).collect() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// All vertices, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.parts.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn num_vertices(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.parts.iter().any(|p| p.binary_search(&v).is_ok())
    }

    /// Number of implicit edges: the degree-d elementary symmetric polynomial of the part sizes.
    pub fn num_edges(&self) -> u128 {
        let mut e = vec![0u128; self.d + 1];
        e[0] = 1;
        for p in &self.parts {
            let size = p.len() as u128;
            for j in (1..=self.d).rev() {
                e[j] += e[j - 1] * size;
            }
        }
        e[self.d]
    }

    /// Calls `f` on every implicit edge (sorted vertex slice), without allocating per edge.
    pub fn for_each_edge<F: FnMut(&[usize])>(&self, mut f: F) {
        let mut buf = vec![0usize; self.d];
        let mut sorted = vec![0usize; self.d];
        for chosen in Combinations::new(self.parts.len(), self.d) {
            let parts: Vec<&[usize]> = chosen.iter().map(|&i| self.parts[i].as_slice()).collect();
            let mut idx = vec![0usize; self.d];
            'odometer: loop {
                for j in 0..self.d {
                    buf[j] = parts[j][idx[j]];
                }
                sorted.copy_from_slice(&buf);
                sorted.sort_unstable();
                f(&sorted);
                let mut j = self.d;
                loop {
                    if j == 0 {
                        break 'odometer;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < parts[j].len() {
                        break;
                    }
                    idx[j] = 0;
                }
            }
        }
    }

    /// The implicit edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        self.for_each_edge(|e| out.push(Edge::from_sorted(e.to_vec())));
        out.sort();
        out
    }

    /// First implicit edge missing from `host`, if any.
    pub fn first_foreign_edge(&self, host: &Hypergraph) -> Option<Edge> {
        if self.d != host.d() {
            return self.edges().into_iter().next();
        }
        let mut found = None;
        self.for_each_edge(|e| {
            if found.is_none() && !host.contains_edge(e) {
                found = Some(Edge::from_sorted(e.to_vec()));
            }
        });
        found
    }

    pub fn is_subhypergraph_of(&self, host: &Hypergraph) -> bool {
        self.d == host.d() && self.vertices().last().is_none_or(|&v| v < host.n()) && self.first_foreign_edge(host).is_none()
    }

    /// Adds each vertex of `singletons` as its own part and raises the uniformity
    /// by the same amount. This is how graph bicliques become d-cuphs.
    pub fn lift(&self, singletons: &[usize]) -> Result<Cuph> {
        let mut parts = self.parts.clone();
        parts.extend(singletons.iter().map(|&v| vec![v]));
        Cuph::new(self.d + singletons.len(), parts)
    }

    /// Renames every vertex through `map`.
    pub fn relabel(&self, map: &[usize]) -> Result<Cuph> {
        Cuph::new(self.d, self.parts.iter().map(|p| p.iter().map(|&v| map[v]).collect()).collect())
    }
}

impl fmt::Display for Cuph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{{")?;
            for (j, v) in p.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}
