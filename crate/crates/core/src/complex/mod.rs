//! Finite simplicial complexes with finite group actions, and exact
//! Euler-characteristic checks of Smith-type statements on them.
//!
//! Point stabilizers are read off combinatorially: once an action is regular
//! (an element fixing a simplex setwise fixes it vertexwise) the stabilizer is
//! constant on each open simplex, so a compactly supported Euler
//! characteristic of a union of open simplices is the alternating count of
//! those simplices. Every check in [`smith`] regularizes its input first.
//!
//! Fixed-set dimensions are maximal simplex dimensions per component, which
//! stands in for the mod-`p` cohomological dimension. This is exact for the
//! triangulated manifolds used here but is not claimed in general. Manifold
//! status is declared by the caller and only checked as far as the
//! pseudomanifold condition.

pub mod action;
pub mod corpus;
pub mod io;
mod simplicial;
pub mod smith;

pub use action::{EquivariantComplex, FixedSet, Permutation, Subgroup};
pub use simplicial::{Component, Simplex, SimplicialComplex};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Input(String),
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Simplex),
    #[error("{0:?} is not a permutation")]
    NotPermutation(Vec<usize>),
    #[error("generator [{generator}] maps simplex {simplex:?} outside the complex")]
    NotSimplicial { generator: String, simplex: Simplex },
    #[error("action is not regular; subdivide first")]
    NotRegular,
    #[error("group of order {order} is not a p-group")]
    NotPGroup { order: usize },
    #[error("group is not elementary abelian")]
    NotElementaryAbelian,
    #[error("group of order {order} is not cyclic of prime order")]
    NotCyclicPrime { order: usize },
    #[error("action is not free")]
    NotFree,
    #[error("action is not effective")]
    NotEffective,
    #[error("complex is not connected")]
    Disconnected,
    #[error("complex is not a pseudomanifold")]
    NotPseudomanifold,
    #[error("vertex {vertex} is not fixed by the group")]
    BasepointNotFixed { vertex: usize },
    #[error("orbit space is not simplicial after {subdivisions} subdivisions")]
    QuotientNotSimplicial { subdivisions: usize },
    #[error("orientation: {0}")]
    Orientation(String),
    #[error("group enumeration exceeded cap {cap}")]
    CapExceeded { cap: usize },
}
