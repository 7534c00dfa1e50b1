//! Exact affine geometry: affine functionals, rational polyhedra, the
//! arrangement of component-difference hyperplanes and its region graph.

mod arrangement;
mod feasibility;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

pub use arrangement::{
    build_hyperplanes, enumerate_regions, region_graph, verify_isometric_embedding, Arrangement,
    Hyperplane, Region, RegionGraph, Sign, MAX_REGIONS,
};
pub use feasibility::feasible_interior;

/// `g(x) = a . x + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineFunctional<T> {
    pub coeffs: Vec<T>,
    pub offset: T,
}

impl<T: ExactScalar> AffineFunctional<T> {
    pub fn new(coeffs: Vec<T>, offset: T) -> Self {
        AffineFunctional { coeffs, offset }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[T]) -> T {
        debug_assert_eq!(x.len(), self.coeffs.len());
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.offset.clone(), |acc, (a, xi)| acc + a.clone() * xi.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        AffineFunctional {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
            offset: self.offset.clone() - other.offset.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        })
    }
}

/// `coeffs . x  (<= | < | =)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: ExactScalar> Constraint<T> {
    pub fn new(coeffs: Vec<T>, relation: Relation, rhs: T) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn lhs(&self, x: &[T]) -> T {
        self.coeffs
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (a, xi)| acc + a.clone() * xi.clone())
    }

    pub fn is_satisfied(&self, x: &[T]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Lt => lhs < self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    /// `g(x) > 0` for an affine `g`, as `-a . x < b`.
    pub fn positive(g: &AffineFunctional<T>) -> Self {
        Constraint::new(g.coeffs.iter().map(|a| -a.clone()).collect(), Relation::Lt, g.offset.clone())
    }

    /// `g(x) < 0`, as `a . x < -b`.
    pub fn negative(g: &AffineFunctional<T>) -> Self {
        Constraint::new(g.coeffs.clone(), Relation::Lt, -g.offset.clone())
    }

    /// `g(x) = 0`.
    pub fn zero(g: &AffineFunctional<T>) -> Self {
        Constraint::new(g.coeffs.clone(), Relation::Eq, -g.offset.clone())
    }
}

/// A finite intersection of closed half-spaces, open half-spaces and hyperplanes.
/// The empty constraint list is all of space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron<T> {
    dim: usize,
    constraints: Vec<Constraint<T>>,
}

impl<T: ExactScalar> Polyhedron<T> {
    pub fn new(dim: usize, constraints: Vec<Constraint<T>>) -> Result<Self> {
        if let Some(c) = constraints.iter().find(|c| c.coeffs.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.coeffs.len(),
            });
        }
        Ok(Polyhedron { dim, constraints })
    }

    pub fn whole_space(dim: usize) -> Self {
        Polyhedron {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    pub fn contains(&self, x: &[T]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    /// The interior: every `<=` becomes `<`. An equality yields `EmptyInterior`.
    pub fn interior(&self) -> Result<Self> {
        let constraints = self
            .constraints
            .iter()
            .map(|c| match c.relation {
                Relation::Eq => Err(Error::EmptyInterior),
                _ => Ok(Constraint::new(c.coeffs.clone(), Relation::Lt, c.rhs.clone())),
            })
            .collect::<Result<_>>()?;
        Ok(Polyhedron {
            dim: self.dim,
            constraints,
        })
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Constraint<T>>) -> Self {
        let mut constraints = self.constraints.clone();
        constraints.extend(extra);
        Polyhedron {
            dim: self.dim,
            constraints,
        }
    }
}

/// Comma-separated coordinates, e.g. `-8` or `1/2,3`.
pub fn format_point<T: ExactScalar>(x: &[T]) -> String {
    x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}
