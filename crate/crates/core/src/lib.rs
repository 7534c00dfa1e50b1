//! Max-min (lattice polynomial) representations of piecewise linear
//! functions, built on integral functions over permutographs.
//!
//! The geometry and PL layers are generic over any [`scalar::ExactScalar`];
//! the aliases below fix the scalar to arbitrary-precision rationals.

pub mod combinatorics;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod graph;
pub mod lattice;
pub mod perm;
pub mod pl;
pub mod scalar;

pub use error::{Error, Result};
pub use perm::{OrderedPartition, Permutation};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

pub type Affine = geometry::AffineFunctional<Rational>;
pub type Constraint = geometry::Constraint<Rational>;
pub type Polyhedron = geometry::Polyhedron<Rational>;
pub type Hyperplane = geometry::Hyperplane<Rational>;
pub type Region = geometry::Region<Rational>;
pub type Arrangement = geometry::Arrangement<Rational>;
pub type PLSpec = pl::PLSpec<Rational>;
pub type PlcDocument = pl::PlcDocument<Rational>;
pub type Synthesis = pl::Synthesis<Rational>;
pub type PointFailure = pl::PointFailure<Rational>;
