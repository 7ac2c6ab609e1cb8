//! Exact optimal loads of small instances.
//!
//! Fractional optima come from an exact rational LP over the full catalog of
//! cuph subhypergraphs; integral optima from a complete search with the LP
//! value as starting cap and a constructive incumbent as the ceiling.

mod catalog;
mod search;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

pub use catalog::{enumerate_family, SubgraphCatalog};

use crate::cover::{load_profile, Family, Mode, Relax, WeightedCover};
use crate::cuph::Cuph;
use crate::ep::{ep_partition, Orientation};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::lift::{hyper_partition, EdgeSplit};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::scalar::Scalar;
use crate::{Cover, Rational};

/// Vertex-count ceilings for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub cb_graph: usize,
    pub cm_graph: usize,
    pub hypergraph: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cb_graph: 12, cm_graph: 10, hypergraph: 8 }
    }
}

impl Limits {
    pub fn check(&self, h: &Hypergraph, family: Family) -> Result<()> {
        let (what, limit) = match (h.d(), family) {
            (2, Family::Cb) => ("CB catalog of a graph", self.cb_graph),
            (2, Family::Cm) => ("CM catalog of a graph", self.cm_graph),
            _ => ("catalog of a hypergraph", self.hypergraph),
        };
        if h.n() > limit {
            return Err(Error::LimitExceeded { what, actual: h.n(), limit });
        }
        Ok(())
    }
}

/// Optimal max load; `Infinite` when no admissible cover or partition exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleValue {
    Finite(Rational),
    Infinite,
}

impl OracleValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            OracleValue::Finite(r) => Some(r),
            OracleValue::Infinite => None,
        }
    }
}

impl Ord for OracleValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (OracleValue::Finite(a), OracleValue::Finite(b)) => a.cmp(b),
            (OracleValue::Finite(_), OracleValue::Infinite) => Ordering::Less,
            (OracleValue::Infinite, OracleValue::Finite(_)) => Ordering::Greater,
            (OracleValue::Infinite, OracleValue::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for OracleValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OracleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleValue::Finite(r) => write!(f, "{r}"),
            OracleValue::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    pub catalog_size: usize,
    pub pivots: usize,
    pub nodes: u64,
}

#[derive(Clone, Debug)]
pub struct OracleResult<'h> {
    pub value: OracleValue,
    /// Attains `value` exactly; absent only when the value is infinite.
    pub certificate: Option<Cover<'h>>,
    pub family: Family,
    pub mode: Mode,
    pub relax: Relax,
    pub stats: OracleStats,
}

/// Minimum possible max vertex load over `family` covers or partitions of `h`.
pub fn opt_load<'h>(h: &'h Hypergraph, family: Family, mode: Mode, relax: Relax, limits: &Limits) -> Result<OracleResult<'h>> {
    limits.check(h, family)?;
    match relax {
        Relax::Fractional => fractional(h, family, mode, limits),
        Relax::Integral => integral(h, family, mode, limits),
    }
}

fn fractional<'h>(h: &'h Hypergraph, family: Family, mode: Mode, limits: &Limits) -> Result<OracleResult<'h>> {
    let cat = enumerate_family(h, family, limits)?;
    let mut stats = OracleStats { catalog_size: cat.len(), ..Default::default() };
    let relax = Relax::Fractional;
    if h.num_edges() == 0 {
        let certificate = Some(WeightedCover::new(h, mode, family));
        return Ok(OracleResult { value: OracleValue::Finite(Rational::zero()), certificate, family, mode, relax, stats });
    }
    // variables: one weight per catalog entry, then the load cap r
    let r = cat.len();
    let mut lp = LinearProgram::new(cat.len() + 1);
    lp.set_objective(r, Rational::ratio(1, 1));
    let relation = match mode {
        Mode::Cover => Relation::Ge,
        Mode::Partition => Relation::Eq,
    };
    for e in 0..h.num_edges() {
        let coeffs = cat.containing_edge(e).iter().map(|&i| (i, Rational::ratio(1, 1))).collect();
        lp.add_constraint(coeffs, relation, Rational::ratio(1, 1));
    }
    for v in 0..h.n() {
        let items = cat.containing_vertex(v);
        if items.is_empty() {
            continue;
        }
        let mut coeffs: Vec<_> = items.iter().map(|&i| (i, Rational::ratio(1, 1))).collect();
        coeffs.push((r, Rational::ratio(-1, 1)));
        lp.add_constraint(coeffs, Relation::Le, Rational::zero());
    }
    match lp.solve() {
        LpOutcome::Optimal(sol) => {
            stats.pivots = sol.pivots;
            let mut cover = WeightedCover::new(h, mode, family);
            for (c, w) in cat.cuphs().iter().zip(&sol.values) {
                if w.is_definitely_positive() {
                    cover.push(c.clone(), w.clone())?;
                }
            }
            debug_assert_eq!(load_profile(&cover).max, sol.objective);
            Ok(OracleResult { value: OracleValue::Finite(sol.objective), certificate: Some(cover), family, mode, relax, stats })
        }
        LpOutcome::Infeasible { pivots } => {
            stats.pivots = pivots;
            Ok(OracleResult { value: OracleValue::Infinite, certificate: None, family, mode, relax, stats })
        }
        LpOutcome::Unbounded { .. } => unreachable!("the load cap is bounded below by zero"),
    }
}

/// Best integral partition among the constructions; valid for both families and modes.
fn incumbent(h: &Hypergraph) -> Result<(usize, Vec<Cuph>)> {
    let singles: Vec<Cuph> = h.edges().iter().map(Cuph::single_edge).collect();
    let mut best = (h.max_degree(), singles);
    for k in 1..=h.n().min(12) {
        let cover = if h.d() == 2 {
            ep_partition::<Rational>(h, k, &Orientation::low_to_high(h))?
        } else {
            hyper_partition::<Rational>(h, k, &EdgeSplit::smallest(h))?
        };
        let load = load_profile(&cover).max.to_integer().to_usize().expect("small load");
        if load < best.0 {
            best = (load, cover.items().iter().map(|(c, _)| c.clone()).collect());
        }
    }
    Ok(best)
}

fn integral<'h>(h: &'h Hypergraph, family: Family, mode: Mode, limits: &Limits) -> Result<OracleResult<'h>> {
    let relax = Relax::Integral;
    let lower = fractional(h, family, mode, limits)?;
    let mut stats = lower.stats;
    let start = match &lower.value {
        OracleValue::Finite(v) => v.ceil().to_integer().to_usize().expect("small load"),
        OracleValue::Infinite => {
            return Ok(OracleResult { value: OracleValue::Infinite, certificate: None, family, mode, relax, stats });
        }
    };
    let (ceiling, mut best) = incumbent(h)?;
    let mut value = ceiling;
    for cap in start..ceiling {
        let out = search::with_load_cap(h, family, mode, cap);
        stats.nodes += out.nodes;
        if let Some(cuphs) = out.cuphs {
            value = cap;
            best = cuphs;
            break;
        }
    }
    let mut cover = WeightedCover::new(h, mode, family);
    for c in best {
        cover.push(c, Rational::ratio(1, 1))?;
    }
    let value = Rational::from_usize(value);
    debug_assert!(h.num_edges() == 0 || load_profile(&cover).max == value);
    Ok(OracleResult { value: OracleValue::Finite(value), certificate: Some(cover), family, mode, relax, stats })
}

/// Densest multipartite subhypergraph, `|E| / |V|`, with a witness; `None` for an edgeless host.
pub fn max_cuph_density(h: &Hypergraph, limits: &Limits) -> Result<Option<(Rational, Cuph)>> {
    let cat = enumerate_family(h, Family::Cm, limits)?;
    let mut best: Option<(Rational, Cuph)> = None;
    for c in cat.cuphs() {
        let rho = Rational::new(c.num_edges().into(), c.num_vertices().into());
        if best.as_ref().is_none_or(|(b, _)| rho > *b) {
            best = Some((rho, c.clone()));
        }
    }
    Ok(best)
}

/// Calls `f` on every choice of one vertex from each of `need` distinct parts
/// other than `skip`, stopping early (and returning `false`) once `f` does.
pub(crate) fn for_each_transversal<F: FnMut(&[usize]) -> bool>(parts: &[Vec<usize>], skip: usize, need: usize, mut f: F) -> bool {
    fn go<F: FnMut(&[usize]) -> bool>(
        parts: &[Vec<usize>],
        skip: usize,
        need: usize,
        start: usize,
        buf: &mut Vec<usize>,
        f: &mut F,
    ) -> bool {
        if need == 0 {
            return f(buf);
        }
        for i in start..parts.len() {
            if i == skip {
                continue;
            }
            for &u in &parts[i] {
                buf.push(u);
                let ok = go(parts, skip, need - 1, i + 1, buf, f);
                buf.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let others = parts.len() - usize::from(skip < parts.len());
    if others < need {
        return true;
    }
    go(parts, skip, need, 0, &mut Vec::with_capacity(need), &mut f)
}
