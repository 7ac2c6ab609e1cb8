//! Exact decision procedure for integral covers and partitions with a load cap.
//!
//! Cuphs are grown lazily. At each node the uncovered edge with the fewest
//! ways to be covered is chosen, and every way is tried: extend an open
//! partial cuph by the edge's missing vertices, or open a new cuph on the
//! edge. A partial cuph is always the restriction of some final cuph to the
//! vertices seen so far, so the search is complete.

use super::for_each_transversal;
use crate::cover::{Family, Mode};
use crate::cuph::Cuph;
use crate::hypergraph::Hypergraph;

const ABSENT: u8 = u8::MAX;

#[derive(Clone, Debug)]
struct Partial {
    parts: Vec<Vec<usize>>,
    part_of: Vec<u8>,
}

/// One way of covering an edge: `(cuph, [(vertex, part)])`, with `cuph == open.len()` for a new one.
#[derive(Clone, Debug)]
struct Move {
    cuph: usize,
    place: Vec<(usize, usize)>,
}

struct Search<'h> {
    host: &'h Hypergraph,
    partition: bool,
    max_parts: usize,
    cap: u32,
    open: Vec<Partial>,
    load: Vec<u32>,
    times_covered: Vec<u32>,
    uncovered: usize,
    nodes: u64,
}

pub(crate) struct SearchOutcome {
    pub cuphs: Option<Vec<Cuph>>,
    pub nodes: u64,
}

/// Finds an integral `family` cover (or partition) of `h` with every load at most `cap`.
pub(crate) fn with_load_cap(h: &Hypergraph, family: Family, mode: Mode, cap: usize) -> SearchOutcome {
    let mut s = Search {
        host: h,
        partition: mode == Mode::Partition,
        max_parts: match family {
            Family::Cb => h.d(),
            Family::Cm => usize::MAX,
        },
        cap: cap as u32,
        open: Vec::new(),
        load: vec![0; h.n()],
        times_covered: vec![0; h.num_edges()],
        uncovered: h.num_edges(),
        nodes: 0,
    };
    let found = s.solve();
    let cuphs = found.then(|| {
        s.open
            .iter()
            .map(|p| Cuph::new(h.d(), p.parts.clone()).expect("partial cuphs keep at least d parts"))
            .collect()
    });
    SearchOutcome { cuphs, nodes: s.nodes }
}

impl Search<'_> {
    fn solve(&mut self) -> bool {
        self.nodes += 1;
        if self.uncovered == 0 {
            return true;
        }
        let Some(moves) = self.branching_edge() else {
            return false;
        };
        for mv in moves {
            let undo = self.apply(&mv);
            if self.solve() {
                return true;
            }
            self.revert(&mv, undo);
        }
        false
    }

    /// Moves for the most constrained uncovered edge; `None` when some edge has none.
    fn branching_edge(&mut self) -> Option<Vec<Move>> {
        let mut best: Option<Vec<Move>> = None;
        for e in 0..self.host.num_edges() {
            if self.times_covered[e] > 0 {
                continue;
            }
            let moves = self.moves_for(e);
            if moves.is_empty() {
                return None;
            }
            if best.as_ref().is_none_or(|b| moves.len() < b.len()) {
                let forced = moves.len() == 1;
                best = Some(moves);
                if forced {
                    break;
                }
            }
        }
        best
    }

    fn moves_for(&mut self, e: usize) -> Vec<Move> {
        let edge: Vec<usize> = self.host.edges()[e].to_vec();
        let mut moves = Vec::new();
        for c in 0..self.open.len() {
            let p = &self.open[c];
            let mut used = Vec::new();
            let mut absent = Vec::new();
            for &v in &edge {
                match p.part_of[v] {
                    ABSENT => absent.push(v),
                    part => used.push(part as usize),
                }
            }
            used.sort_unstable();
            if used.windows(2).any(|w| w[0] == w[1]) || absent.iter().any(|&v| self.load[v] >= self.cap) {
                continue;
            }
            let free: Vec<usize> = (0..p.parts.len()).filter(|j| used.binary_search(j).is_err()).collect();
            let mut assignment = Vec::with_capacity(absent.len());
            self.assignments(c, &absent, &free, &mut vec![false; free.len()], &mut assignment, &mut moves);
        }
        if edge.iter().all(|&v| self.load[v] < self.cap) {
            let place = edge.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            moves.push(Move { cuph: self.open.len(), place });
        }
        moves
    }

    /// Injective placements of `absent` into free parts or fresh parts, each checked by a trial apply.
    fn assignments(
        &mut self,
        c: usize,
        absent: &[usize],
        free: &[usize],
        taken: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Move>,
    ) {
        let Some((&v, rest)) = absent.split_first() else {
            let mv = Move { cuph: c, place: current.clone() };
            if self.is_legal(&mv) {
                out.push(mv);
            }
            return;
        };
        for i in 0..free.len() {
            if !taken[i] {
                taken[i] = true;
                current.push((v, free[i]));
                self.assignments(c, rest, free, taken, current, out);
                current.pop();
                taken[i] = false;
            }
        }
        let fresh = current.iter().filter(|(_, part)| *part >= self.open[c].parts.len()).count();
        let next = self.open[c].parts.len() + fresh;
        if next < self.max_parts {
            current.push((v, next));
            self.assignments(c, rest, free, taken, current, out);
            current.pop();
        }
    }

    fn is_legal(&mut self, mv: &Move) -> bool {
        let mut applied = 0;
        let mut ok = true;
        for &(v, part) in &mv.place {
            match self.place(mv.cuph, v, part) {
                Some(_) => applied += 1,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        for &(v, part) in mv.place[..applied].iter().rev() {
            self.unplace(mv.cuph, v, part);
        }
        ok
    }

    /// Adds `v` to part `part` of cuph `c`, creating the cuph or part if needed.
    /// Returns `None` (and changes nothing) if an implicit edge is foreign or already used.
    fn place(&mut self, c: usize, v: usize, part: usize) -> Option<()> {
        let d = self.host.d();
        let n = self.host.n();
        if c == self.open.len() {
            self.open.push(Partial { parts: Vec::new(), part_of: vec![ABSENT; n] });
        }
        let mut ids = Vec::new();
        let mut buf = Vec::with_capacity(d);
        let ok = for_each_transversal(&self.open[c].parts, part, d - 1, |t| {
            buf.clear();
            buf.extend_from_slice(t);
            buf.push(v);
            buf.sort_unstable();
            match self.host.edge_id(&buf) {
                Some(id) if !(self.partition && self.times_covered[id] > 0) => {
                    ids.push(id);
                    true
                }
                _ => false,
            }
        });
        if !ok {
            if self.open[c].parts.is_empty() {
                self.open.pop();
            }
            return None;
        }
        let p = &mut self.open[c];
        if part == p.parts.len() {
            p.parts.push(Vec::new());
        }
        p.parts[part].push(v);
        p.part_of[v] = part as u8;
        self.load[v] += 1;
        for id in ids {
            if self.times_covered[id] == 0 {
                self.uncovered -= 1;
            }
            self.times_covered[id] += 1;
        }
        Some(())
    }

    fn unplace(&mut self, c: usize, v: usize, part: usize) {
        let d = self.host.d();
        let p = &mut self.open[c];
        p.parts[part].pop();
        p.part_of[v] = ABSENT;
        if p.parts[part].is_empty() {
            p.parts.pop();
        }
        self.load[v] -= 1;
        let mut buf = Vec::with_capacity(d);
        let host = self.host;
        let times_covered = &mut self.times_covered;
        let uncovered = &mut self.uncovered;
        for_each_transversal(&self.open[c].parts, part, d - 1, |t| {
            buf.clear();
            buf.extend_from_slice(t);
            buf.push(v);
            buf.sort_unstable();
            let id = host.edge_id(&buf).expect("placed edges are host edges");
            times_covered[id] -= 1;
            if times_covered[id] == 0 {
                *uncovered += 1;
            }
            true
        });
        if self.open[c].parts.is_empty() {
            self.open.pop();
        }
    }

    fn apply(&mut self, mv: &Move) -> usize {
        for &(v, part) in &mv.place {
            self.place(mv.cuph, v, part).expect("moves are checked before use");
        }
        mv.place.len()
    }

    fn revert(&mut self, mv: &Move, applied: usize) {
        for &(v, part) in mv.place[..applied].iter().rev() {
            self.unplace(mv.cuph, v, part);
        }
    }
}
