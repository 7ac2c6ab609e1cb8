//! Seeded random uniform hypergraphs and the density-based lower bound on
//! fractional multipartite covers.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combin::{choose, factorial, Combinations};
use crate::cover::{density, load_profile, Family, Mode, Relax, WeightedCover};
use crate::cuph::Cuph;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::oracle::{max_cuph_density, opt_load, Limits, OracleValue};
use crate::scalar::{dyadic_approx, Scalar};
use crate::Rational;

/// `H^d(n, p)` with a fixed seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomModel {
    n: usize,
    d: usize,
    p: Rational,
    seed: u64,
}

impl RandomModel {
    pub fn new(n: usize, d: usize, p: Rational, seed: u64) -> Result<RandomModel> {
        if d < 2 {
            return Err(Error::Uniformity(d));
        }
        if n < d {
            return Err(Error::TooFewVertices { n, d });
        }
        if p.is_negative() || p > Rational::one() {
            return Err(Error::EdgeProbabilityRange(p.to_string()));
        }
        Ok(RandomModel { n, d, p, seed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Smallest `t` with `u < t  <=>  u < p 2^64` for every 64-bit `u`.
pub(crate) fn coin_threshold(p: &Rational) -> u128 {
    let scaled = p * Rational::from_integer(BigInt::one() << 64u32);
    scaled.ceil().to_integer().to_u128().expect("p <= 1")
}

/// Draws each d-subset in lexicographic order, one 64-bit variate per subset.
pub fn gen_random(model: &RandomModel) -> Result<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let threshold = coin_threshold(&model.p);
    let edges: Vec<Vec<usize>> = Combinations::new(model.n, model.d)
        .filter(|_| u128::from(rng.next_u64()) < threshold)
        .collect();
    Hypergraph::new(model.n, model.d, edges)
}

/// `ln p` for a rational in (0, 1), accurate also when p is close to 1.
fn ln_rational(p: &Rational) -> f64 {
    if p > &Rational::ratio(1, 2) {
        (p - Rational::one()).to_f64().expect("finite").ln_1p()
    } else {
        p.to_f64().expect("finite").ln()
    }
}

/// A value below `x` by more than the accumulated error of a few libm calls.
fn round_down(x: f64) -> f64 {
    (x - x.abs() * 1e-12).next_down()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// `|E| / |V|`.
    pub density: Rational,
    /// `-ln n / ln p`, rounded down; absent when `n < 2` or `p` is 0 or 1.
    pub threshold: Option<Rational>,
    /// Densest multipartite subhypergraph and its density.
    pub max_cuph_density: Option<(Rational, Cuph)>,
    /// No multipartite subhypergraph is denser than the threshold.
    pub condition_holds: bool,
    /// `-(ln p / ln n) density`, rounded down; present only when the condition holds.
    pub lower_bound: Option<Rational>,
    pub lp_optimum: Option<OracleValue>,
}

impl BoundReport {
    /// `true` if the LP optimum was computed and falls below the implied bound.
    pub fn violated(&self) -> bool {
        match (&self.lp_optimum, &self.lower_bound) {
            (Some(OracleValue::Finite(lp)), Some(b)) => lp < b,
            _ => false,
        }
    }
}

/// Density lower bound on the max load of every fractional multipartite cover of `h`,
/// valid when `h` has no over-dense multipartite subhypergraph.
pub fn density_lower_bound(h: &Hypergraph, p: &Rational, with_lp: bool, limits: &Limits) -> Result<BoundReport> {
    if p.is_negative() || p > &Rational::one() {
        return Err(Error::EdgeProbabilityRange(p.to_string()));
    }
    let rho = density(h)?;
    let defined = h.n() >= 2 && p.is_positive() && p < &Rational::one();
    let mut report = BoundReport {
        density: rho.clone(),
        threshold: None,
        max_cuph_density: None,
        condition_holds: false,
        lower_bound: None,
        lp_optimum: None,
    };
    if defined {
        let ln_n = (h.n() as f64).ln();
        let ln_p = ln_rational(p);
        let threshold = Rational::from_float(round_down(-ln_n / ln_p)).expect("finite");
        let factor = Rational::from_float(round_down(-ln_p / ln_n)).expect("finite");
        report.max_cuph_density = max_cuph_density(h, limits)?;
        report.condition_holds = report.max_cuph_density.as_ref().is_none_or(|(d, _)| *d <= threshold);
        if report.condition_holds {
            report.lower_bound = Some(rho * factor);
        }
        report.threshold = Some(threshold);
    }
    if with_lp {
        report.lp_optimum = Some(opt_load(h, Family::Cm, Mode::Cover, Relax::Fractional, limits)?.value);
    }
    Ok(report)
}

/// Both sides of the first-moment comparison, truncated to `s_min <= s <= s_max`, `k <= k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstMoment {
    /// `sum C(n,s) s^k / k! n^-s`.
    pub left: Rational,
    /// `sum s^k / (s! k!)`.
    pub right: Rational,
    /// Every left term is at most its right term.
    pub termwise: bool,
}

pub fn first_moment_bound(n: usize, s_min: usize, s_max: usize, k_max: usize) -> FirstMoment {
    let mut left = Rational::zero();
    let mut right = Rational::zero();
    let mut termwise = true;
    let n_big = BigInt::from(n);
    for s in s_min..=s_max {
        let s_big = BigInt::from(s);
        let c = Rational::new(choose(n as i64, s as i64), num_traits::pow(n_big.clone(), s));
        let inv_s_fact = Rational::new(BigInt::one(), factorial(s as u64));
        let mut s_pow = BigInt::one();
        for k in 0..=k_max {
            if k > 0 {
                s_pow *= &s_big;
            }
            let base = Rational::new(s_pow.clone(), factorial(k as u64));
            let l = &c * &base;
            let r = &inv_s_fact * &base;
            termwise &= l <= r;
            left += l;
            right += r;
        }
    }
    FirstMoment { left, right, termwise }
}

/// Dyadic rational within `2^-30` of `1/e`.
pub fn inv_e() -> Rational {
    dyadic_approx((-1f64).exp(), 32)
}

/// `-p log2 p`.
pub fn neg_p_log2_p(p: &Rational) -> f64 {
    let x = p.to_f64().expect("finite");
    -x * ln_rational(p) / std::f64::consts::LN_2
}

/// Weighted sizes of a cover: `sum w_i |E_i|`, `sum w_i |V_i|`, and the vertex-load total.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSizes<T> {
    pub edges: T,
    pub vertices: T,
    pub load_total: T,
}

pub fn weighted_sizes<T: Scalar>(cover: &WeightedCover<'_, T>) -> WeightedSizes<T> {
    let mut edges = T::zero();
    let mut vertices = T::zero();
    for (c, w) in cover.items() {
        let m = T::from_u128(c.num_edges()).expect("edge count fits the scalar");
        edges = edges + w.clone() * m;
        vertices = vertices + w.clone() * <T as Scalar>::from_usize(c.num_vertices());
    }
    WeightedSizes { edges, vertices, load_total: load_profile(cover).total() }
}
