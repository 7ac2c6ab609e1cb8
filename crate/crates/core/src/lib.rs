//! Low-load coverings and partitions of graphs and d-uniform hypergraphs by
//! complete bipartite and complete multipartite subhypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`hypergraph`], [`cuph`] and [`cover`] hold the data model: hosts,
//!   complete d-uniform k-partite subhypergraphs, weighted covers, and the
//!   per-edge coverage / per-vertex load semantics.
//! * [`ep`] builds integral and half-integral biclique partitions of graphs
//!   from a vertex class partition, with explicit item-count and load bounds.
//! * [`lift`] turns those into d-cuph partitions of d-uniform hypergraphs.
//! * [`dense`] is the randomized fractional biclique partition for graphs of
//!   large minimum degree: sampler, exact enumerator, Monte Carlo checker, lift.
//! * [`lp`] and [`oracle`] compute exact optimal loads of tiny instances.
//! * [`random`] generates seeded random hypergraphs and checks density-based
//!   lower bounds on fractional multipartite covers.
//!
//! All weights are generic over [`Scalar`]; the aliases below fix the exact
//! rational instantiation used throughout the tests.

pub mod combin;
pub mod cover;
pub mod cuph;
pub mod dense;
pub mod ep;
pub mod error;
pub mod hypergraph;
pub mod lift;
pub mod lp;
pub mod oracle;
pub mod random;
pub mod scalar;

pub use cover::{density, load_profile, validate_cover, CoverageReport, Family, LoadProfile, Mode, Relax, WeightedCover};
pub use cuph::Cuph;
pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph};
pub use scalar::Scalar;

/// Arbitrary-precision rational; the default weight type.
pub type Rational = num_rational::BigRational;

/// Exact-rational weighted cover.
pub type Cover<'h> = WeightedCover<'h, Rational>;
/// Exact-rational coverage report.
pub type Coverage = CoverageReport<Rational>;
/// Exact-rational load profile.
pub type Loads = LoadProfile<Rational>;

/// Floating-point weighted cover, for quick experiments.
pub type CoverF64<'h> = WeightedCover<'h, f64>;
