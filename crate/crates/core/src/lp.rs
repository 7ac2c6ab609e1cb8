//! Two-phase revised simplex, Dantzig pricing with a Bland's-rule fallback.
//!
//! Intended for the small, highly degenerate programs of the load oracle:
//! a few dozen rows and up to a few thousand sparse columns. The basis
//! inverse is kept dense; columns are sparse. With an exact scalar the
//! reported optimum is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub coeffs: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

/// `minimize c·x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    num_vars: usize,
    objective: Vec<T>,
    constraints: Vec<Constraint<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub objective: T,
    pub values: Vec<T>,
    pub pivots: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal(LpSolution<T>),
    Infeasible { pivots: usize },
    Unbounded { pivots: usize },
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, objective: vec![T::zero(); num_vars], constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_objective(&mut self, var: usize, coeff: T) {
        self.objective[var] = coeff;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, T)>, relation: Relation, rhs: T) {
        debug_assert!(coeffs.iter().all(|(v, _)| *v < self.num_vars));
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome<T> {
        Tableau::build(self).run()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau<T> {
    rows: usize,
    /// Sparse columns: (row, coefficient).
    columns: Vec<Vec<(usize, T)>>,
    kinds: Vec<ColumnKind>,
    cost: Vec<T>,
    num_structural: usize,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    /// Dense basis inverse, row-major.
    inverse: Vec<Vec<T>>,
    values: Vec<T>,
    pivots: usize,
    degenerate_run: usize,
    stall: usize,
    /// Integer copies of the columns, present for exact scalars with integral coefficients.
    int_columns: Option<Vec<Vec<(usize, i64)>>>,
    /// Common denominator of the phase-two costs.
    cost_lcm: BigInt,
}

/// Consecutive degenerate pivots (per row) before pricing falls back to Bland's rule.
const STALL_PER_ROW: usize = 50;

fn add_assign<T: Scalar>(v: &mut T, x: T) {
    let old = std::mem::replace(v, T::zero());
    *v = old + x;
}

fn sub_assign<T: Scalar>(v: &mut T, x: T) {
    let old = std::mem::replace(v, T::zero());
    *v = old - x;
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl<T: Scalar> Tableau<T> {
    fn build(lp: &LinearProgram<T>) -> Self {
        let rows = lp.constraints.len();
        let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); lp.num_vars];
        let mut kinds = vec![ColumnKind::Structural; lp.num_vars];
        let mut rhs = Vec::with_capacity(rows);
        let mut basis = Vec::with_capacity(rows);
        let mut artificial_rows = Vec::new();
        for (i, c) in lp.constraints.iter().enumerate() {
            // normalise to a nonnegative right-hand side
            let flip = c.rhs.is_negative();
            let relation = match (flip, c.relation) {
                (true, Relation::Le) => Relation::Ge,
                (true, Relation::Ge) => Relation::Le,
                (_, r) => r,
            };
            let sign = if flip { -T::one() } else { T::one() };
            for (v, a) in &c.coeffs {
                if !a.is_zero() {
                    columns[*v].push((i, a.clone() * sign.clone()));
                }
            }
            rhs.push(c.rhs.clone() * sign);
            match relation {
                Relation::Le => {
                    basis.push(columns.len());
                    columns.push(vec![(i, T::one())]);
                    kinds.push(ColumnKind::Slack);
                }
                Relation::Ge => {
                    columns.push(vec![(i, -T::one())]);
                    kinds.push(ColumnKind::Slack);
                    basis.push(usize::MAX);
                    artificial_rows.push(i);
                }
                Relation::Eq => {
                    basis.push(usize::MAX);
                    artificial_rows.push(i);
                }
            }
        }
        for i in artificial_rows {
            basis[i] = columns.len();
            columns.push(vec![(i, T::one())]);
            kinds.push(ColumnKind::Artificial);
        }
        for col in &mut columns {
            col.sort_by_key(|(r, _)| *r);
        }
        let mut cost = vec![T::zero(); columns.len()];
        cost[..lp.num_vars].clone_from_slice(&lp.objective);
        let mut in_basis = vec![false; columns.len()];
        for &b in &basis {
            in_basis[b] = true;
        }
        let int_columns = if T::EXACT {
            columns
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(i, a)| {
                            let r = a.to_rational();
                            if r.is_integer() { r.to_integer().to_i64().map(|a| (*i, a)) } else { None }
                        })
                        .collect::<Option<Vec<_>>>()
                })
                .collect::<Option<Vec<_>>>()
        } else {
            None
        };
        let cost_lcm = cost.iter().fold(BigInt::one(), |l, c| l.lcm(c.to_rational().denom()));
        let inverse = (0..rows)
            .map(|i| (0..rows).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        Tableau {
            rows,
            columns,
            kinds,
            cost,
            num_structural: lp.num_vars,
            basis,
            in_basis,
            inverse,
            values: rhs,
            pivots: 0,
            degenerate_run: 0,
            stall: STALL_PER_ROW * rows.max(1),
            int_columns,
            cost_lcm,
        }
    }

    fn run(mut self) -> LpOutcome<T> {
        let has_artificial = self.kinds.contains(&ColumnKind::Artificial);
        if has_artificial {
            let phase_one: Vec<T> = self
                .kinds
                .iter()
                .map(|k| if *k == ColumnKind::Artificial { T::one() } else { T::zero() })
                .collect();
            loop {
                match self.step(&phase_one, true) {
                    Step::Pivoted => {}
                    Step::Optimal => break,
                    Step::Unbounded => unreachable!("phase one is bounded below by zero"),
                }
            }
            let infeasibility = self.objective_value(&phase_one);
            if infeasibility.is_definitely_positive() {
                return LpOutcome::Infeasible { pivots: self.pivots };
            }
            self.drive_out_artificials();
        }
        let cost = self.cost.clone();
        loop {
            match self.step(&cost, false) {
                Step::Pivoted => {}
                Step::Optimal => break,
                Step::Unbounded => return LpOutcome::Unbounded { pivots: self.pivots },
            }
        }
        let mut values = vec![T::zero(); self.num_structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.num_structural {
                values[b] = self.values[i].clone();
            }
        }
        let objective = self.objective_value(&cost);
        LpOutcome::Optimal(LpSolution { objective, values, pivots: self.pivots })
    }

    fn objective_value(&self, cost: &[T]) -> T {
        self.basis
            .iter()
            .zip(&self.values)
            .fold(T::zero(), |acc, (&b, x)| acc + cost[b].clone() * x.clone())
    }

    /// `y = c_B B^-1`.
    fn duals(&self, cost: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.rows];
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (yj, inv) in y.iter_mut().zip(&self.inverse[i]) {
                if !inv.is_zero() {
                    add_assign(yj, inv.clone() * cb);
                }
            }
        }
        y
    }

    fn reduced_cost(&self, cost: &[T], y: &[T], j: usize) -> T {
        let one = T::one();
        let minus_one = -T::one();
        self.columns[j].iter().fold(cost[j].clone(), |acc, (i, a)| {
            let yi = &y[*i];
            if yi.is_zero() {
                acc
            } else if *a == one {
                acc - yi
            } else if *a == minus_one {
                acc + yi
            } else {
                acc - yi.clone() * a
            }
        })
    }

    /// `B^-1 A_j`.
    fn direction(&self, j: usize) -> Vec<T> {
        let one = T::one();
        (0..self.rows)
            .map(|i| {
                self.columns[j].iter().fold(T::zero(), |acc, (r, a)| {
                    let inv = &self.inverse[i][*r];
                    if inv.is_zero() {
                        acc
                    } else if *a == one {
                        acc + inv
                    } else {
                        acc + inv.clone() * a
                    }
                })
            })
            .collect()
    }

    /// Dantzig pricing, switching to Bland's rule after a run of degenerate
    /// pivots; a degenerate run priced by Bland's rule cannot cycle, and every
    /// other pivot strictly improves the objective.
    fn entering(&self, cost: &[T], phase_one: bool) -> Option<usize> {
        let y = self.duals(cost);
        let bland = self.degenerate_run >= self.stall;
        let mut eligible = (0..self.columns.len())
            .filter(|&j| !self.in_basis[j] && (phase_one || self.kinds[j] != ColumnKind::Artificial));
        if let Some(columns) = &self.int_columns {
            // exact prices over a common denominator: integer sums instead of rational ones
            let y: Vec<BigRational> = y.iter().map(Scalar::to_rational).collect();
            let denom = y.iter().fold(self.cost_lcm.clone(), |l, v| l.lcm(v.denom()));
            let scaled: Vec<BigInt> = y.iter().map(|v| v.numer() * (&denom / v.denom())).collect();
            let mut best: Option<(usize, BigInt)> = None;
            for j in eligible {
                let mut d = if cost[j].is_zero() {
                    BigInt::zero()
                } else {
                    let c = cost[j].to_rational();
                    c.numer() * (&denom / c.denom())
                };
                for &(i, a) in &columns[j] {
                    match a {
                        1 => d -= &scaled[i],
                        -1 => d += &scaled[i],
                        _ => d -= &scaled[i] * a,
                    }
                }
                if d.is_negative() {
                    if bland {
                        return Some(j);
                    }
                    if best.as_ref().is_none_or(|(_, b)| d < *b) {
                        best = Some((j, d));
                    }
                }
            }
            return best.map(|(j, _)| j);
        }
        if bland {
            return eligible.find(|&j| self.reduced_cost(cost, &y, j).is_definitely_negative());
        }
        let mut best: Option<(usize, T)> = None;
        for j in eligible {
            let d = self.reduced_cost(cost, &y, j);
            if d.is_definitely_negative() && best.as_ref().is_none_or(|(_, b)| d < *b) {
                best = Some((j, d));
            }
        }
        best.map(|(j, _)| j)
    }

    fn step(&mut self, cost: &[T], phase_one: bool) -> Step {
        let Some(entering) = self.entering(cost, phase_one) else {
            return Step::Optimal;
        };
        let u = self.direction(entering);
        let mut leaving: Option<(usize, T)> = None;
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_definitely_positive() {
                continue;
            }
            let ratio = self.values[i].clone() / ui;
            let better = match &leaving {
                None => true,
                Some((r, best)) => {
                    if ratio.approx_eq(best) {
                        self.basis[i] < self.basis[*r]
                    } else {
                        ratio < *best
                    }
                }
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let Some((row, step)) = leaving else {
            return Step::Unbounded;
        };
        if step.is_approx_zero() {
            self.degenerate_run += 1;
        } else {
            self.degenerate_run = 0;
        }
        self.pivot(row, entering, &u);
        Step::Pivoted
    }

    fn pivot(&mut self, row: usize, entering: usize, u: &[T]) {
        let pivot = u[row].clone();
        for v in self.inverse[row].iter_mut() {
            if !v.is_zero() {
                let old = std::mem::replace(v, T::zero());
                *v = old / &pivot;
            }
        }
        let old = std::mem::replace(&mut self.values[row], T::zero());
        self.values[row] = old / &pivot;
        let pivot_row = self.inverse[row].clone();
        let pivot_value = self.values[row].clone();
        for (i, factor) in u.iter().enumerate().take(self.rows) {
            if i == row || factor.is_zero() {
                continue;
            }
            for (v, p) in self.inverse[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    sub_assign(v, p.clone() * factor);
                }
            }
            sub_assign(&mut self.values[i], pivot_value.clone() * factor);
            if !T::EXACT && self.values[i].is_approx_zero() {
                self.values[i] = T::zero();
            }
        }
        self.in_basis[self.basis[row]] = false;
        self.basis[row] = entering;
        self.in_basis[entering] = true;
        self.pivots += 1;
    }

    /// Pivots zero-valued artificials out of the basis where possible; the rest
    /// sit on redundant rows and can never become nonzero.
    fn drive_out_artificials(&mut self) {
        for row in 0..self.rows {
            if self.kinds[self.basis[row]] != ColumnKind::Artificial {
                continue;
            }
            let candidate = (0..self.columns.len()).find(|&j| {
                !self.in_basis[j]
                    && self.kinds[j] != ColumnKind::Artificial
                    && !self.direction(j)[row].is_approx_zero()
            });
            if let Some(j) = candidate {
                let u = self.direction(j);
                self.pivot(row, j, &u);
            }
        }
    }
}
