//! Computational companion to rigidity results for actions of `SAut(F_n)`
//! and `SL_n(Z)` on manifolds.
//!
//! * [`word`] and [`aut`]: free-group words and automorphisms, with the
//!   finite-order generators `e_i`, `(ij)`, `R_i`, `Δ` and subgroup closure.
//! * [`ablin`]: abelianization to integer matrices, determinants and
//!   reduction mod `q`.
//! * [`audit`]: the torsion-subgroup audit.
//! * [`manifold`]: Euler-characteristic descriptors and the manifold expression language.
//! * [`obstruction`]: `p`-rank bounds and triviality verdicts.
//! * [`complex`]: equivariant simplicial complexes and Smith-type checks.
//! * [`report`]: TSV and JSON-lines rendering.

pub mod ablin;
pub mod audit;
pub mod aut;
pub mod complex;
pub mod manifold;
pub mod obstruction;
pub mod report;
pub mod word;
