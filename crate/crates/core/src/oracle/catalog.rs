use rayon::prelude::*;

use super::{for_each_transversal, Limits};
use crate::cover::Family;
use crate::cuph::Cuph;
use crate::error::Result;
use crate::hypergraph::Hypergraph;

/// Every cuph subhypergraph of a host within one family, with incidence lists.
#[derive(Clone, Debug)]
pub struct SubgraphCatalog<'h> {
    host: &'h Hypergraph,
    family: Family,
    cuphs: Vec<Cuph>,
    edges_of: Vec<Vec<usize>>,
    by_edge: Vec<Vec<usize>>,
    by_vertex: Vec<Vec<usize>>,
}

impl<'h> SubgraphCatalog<'h> {
    pub fn host(&self) -> &'h Hypergraph {
        self.host
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Canonical cuphs in enumeration order (sorted by their vertex labelling).
    pub fn cuphs(&self) -> &[Cuph] {
        &self.cuphs
    }

    pub fn len(&self) -> usize {
        self.cuphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuphs.is_empty()
    }

    /// Host edge ids of cuph `i`.
    pub fn edges_of(&self, i: usize) -> &[usize] {
        &self.edges_of[i]
    }

    /// Catalog indices of the cuphs containing host edge `e`.
    pub fn containing_edge(&self, e: usize) -> &[usize] {
        &self.by_edge[e]
    }

    /// Catalog indices of the cuphs containing vertex `v`.
    pub fn containing_vertex(&self, v: usize) -> &[usize] {
        &self.by_vertex[v]
    }
}

struct Enumerator<'a> {
    host: &'a Hypergraph,
    family: Family,
    parts: Vec<Vec<usize>>,
    out: Vec<Cuph>,
}

impl Enumerator<'_> {
    fn max_parts(&self) -> usize {
        match self.family {
            Family::Cb => self.host.d(),
            Family::Cm => usize::MAX,
        }
    }

    /// Would placing `v` in part `slot` (possibly a new one) keep every implicit edge in the host?
    fn compatible(&self, v: usize, slot: usize) -> bool {
        let host = self.host;
        let mut buf = Vec::with_capacity(host.d());
        for_each_transversal(&self.parts, slot, host.d() - 1, |t| {
            buf.clear();
            buf.extend_from_slice(t);
            buf.push(v);
            buf.sort_unstable();
            host.contains_edge(&buf)
        })
    }

    fn run(&mut self, v: usize) {
        let n = self.host.n();
        if v == n {
            let k = self.parts.len();
            let ok = match self.family {
                Family::Cb => k == self.host.d(),
                Family::Cm => k >= self.host.d(),
            };
            if ok {
                let cuph = Cuph::new(self.host.d(), self.parts.clone()).expect("parts are nonempty and disjoint");
                self.out.push(cuph);
            }
            return;
        }
        self.run(v + 1);
        for j in 0..self.parts.len() {
            if self.compatible(v, j) {
                self.parts[j].push(v);
                self.run(v + 1);
                self.parts[j].pop();
            }
        }
        let slot = self.parts.len();
        if slot < self.max_parts() && self.compatible(v, slot) {
            self.parts.push(vec![v]);
            self.run(v + 1);
            self.parts.pop();
        }
    }
}

/// Enumerates every cuph of `family` (at least one edge) inside `h`.
pub fn enumerate_family<'h>(h: &'h Hypergraph, family: Family, limits: &Limits) -> Result<SubgraphCatalog<'h>> {
    limits.check(h, family)?;
    // split on the smallest vertex so each subtree is independent
    let chunks: Vec<Vec<Cuph>> = (0..h.n())
        .into_par_iter()
        .map(|first| {
            let mut e = Enumerator { host: h, family, parts: vec![vec![first]], out: Vec::new() };
            e.run(first + 1);
            e.out
        })
        .collect();
    let cuphs: Vec<Cuph> = chunks.into_iter().flatten().collect();
    let edges_of: Vec<Vec<usize>> = cuphs
        .par_iter()
        .map(|c| {
            let mut ids = Vec::new();
            c.for_each_edge(|e| ids.push(h.edge_id(e).expect("catalog cuphs are subhypergraphs")));
            ids.sort_unstable();
            ids
        })
        .collect();
    let mut by_edge = vec![Vec::new(); h.num_edges()];
    let mut by_vertex = vec![Vec::new(); h.n()];
    for (i, (c, ids)) in cuphs.iter().zip(&edges_of).enumerate() {
        for &e in ids {
            by_edge[e].push(i);
        }
        for v in c.vertices() {
            by_vertex[v].push(i);
        }
    }
    Ok(SubgraphCatalog { host: h, family, cuphs, edges_of, by_edge, by_vertex })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::combin::subsets_of;
    use crate::random::{gen_random, RandomModel};
    use crate::scalar::Scalar;
    use crate::Rational;

    /// All set partitions of `items`, as lists of blocks.
    fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let Some((&first, rest)) = items.split_first() else {
            return vec![Vec::new()];
        };
        let mut out = Vec::new();
        for p in set_partitions(rest) {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(first);
                out.push(q);
            }
            let mut q = p;
            q.push(vec![first]);
            out.push(q);
        }
        out
    }

    /// Independent reference: every subset, every set partition, filtered.
    fn brute_force(h: &Hypergraph, family: Family) -> BTreeSet<Cuph> {
        let mut found = BTreeSet::new();
        let all: Vec<usize> = (0..h.n()).collect();
        for size in h.d()..=h.n() {
            for subset in subsets_of(&all, size) {
                for parts in set_partitions(&subset) {
                    let k = parts.len();
                    let fits = match family {
                        Family::Cb => k == h.d(),
                        Family::Cm => k >= h.d(),
                    };
                    if !fits {
                        continue;
                    }
                    let c = Cuph::new(h.d(), parts).unwrap();
                    if c.is_subhypergraph_of(h) {
                        found.insert(c);
                    }
                }
            }
        }
        found
    }

    fn catalog_set(h: &Hypergraph, family: Family) -> BTreeSet<Cuph> {
        let cat = enumerate_family(h, family, &Limits::default()).unwrap();
        let set: BTreeSet<Cuph> = cat.cuphs().iter().cloned().collect();
        assert_eq!(set.len(), cat.len(), "catalog has duplicates");
        set
    }

    #[test]
    fn single_edge_has_one_biclique() {
        let h = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        let cat = enumerate_family(&h, Family::Cb, &Limits::default()).unwrap();
        assert_eq!(cat.cuphs(), &[Cuph::biclique(vec![0], vec![1]).unwrap()]);
        assert_eq!(cat.containing_edge(0), &[0]);
    }

    #[test]
    fn triangle_multipartite_count() {
        let h = Hypergraph::complete(3, 2).unwrap();
        let cat = enumerate_family(&h, Family::Cm, &Limits::default()).unwrap();
        assert_eq!(cat.len(), 7);
        let whole = Cuph::new(2, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert!(cat.cuphs().contains(&whole));
        assert_eq!(enumerate_family(&h, Family::Cb, &Limits::default()).unwrap().len(), 6);
    }

    #[test]
    fn four_cycle_contains_k22() {
        let h = Hypergraph::cycle(4).unwrap();
        let set = catalog_set(&h, Family::Cb);
        assert!(set.contains(&Cuph::biclique(vec![0, 2], vec![1, 3]).unwrap()));
    }

    #[test]
    fn matches_independent_enumerator() {
        let mut hosts = vec![
            Hypergraph::complete(5, 2).unwrap(),
            Hypergraph::cycle(6).unwrap(),
            Hypergraph::path(5).unwrap(),
            Hypergraph::complete_bipartite(2, 3).unwrap(),
            Hypergraph::complete(5, 3).unwrap(),
        ];
        for seed in 0..4 {
            hosts.push(gen_random(&RandomModel::new(6, 2, Rational::ratio(1, 2), seed).unwrap()).unwrap());
            hosts.push(gen_random(&RandomModel::new(6, 3, Rational::ratio(1, 2), seed).unwrap()).unwrap());
        }
        for h in &hosts {
            for family in [Family::Cb, Family::Cm] {
                assert_eq!(catalog_set(h, family), brute_force(h, family), "{family} on {:?}", h.edges());
            }
        }
    }

    #[test]
    fn incidence_lists_agree_with_cuphs() {
        let h = Hypergraph::complete(4, 2).unwrap();
        let cat = enumerate_family(&h, Family::Cm, &Limits::default()).unwrap();
        for (i, c) in cat.cuphs().iter().enumerate() {
            assert_eq!(cat.edges_of(i).len() as u128, c.num_edges());
            for v in 0..4 {
                assert_eq!(c.contains(v), cat.containing_vertex(v).contains(&i));
            }
        }
    }

    #[test]
    fn limits_are_enforced() {
        let h = Hypergraph::complete(11, 2).unwrap();
        assert!(enumerate_family(&h, Family::Cm, &Limits::default()).is_err());
        assert!(enumerate_family(&h, Family::Cb, &Limits::default()).is_ok());
    }
}
