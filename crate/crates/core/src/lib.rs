//! Middle fixpoints.
//!
//! Least and greatest fixpoints are the two ends of a family: every
//! pre-fixed point of a monotone map sits below a nearest fixpoint, and every
//! post-fixed point above one. This crate computes those middle fixpoints
//! and checks the structure relating them, in three settings:
//!
//! - [`lattice`] and [`interval`]: `μ(x) = sup {x, f(x), f²(x), …}` and
//!   `ν(y) = inf {y, f(y), …}` on finite lattices and on `[0, 1]`, with the
//!   Galois connection `μ(x) ≤ y ⟺ x ≤ ν(y)`.
//! - [`signature`] and [`fixcat`]: the same construction one level up, for
//!   polynomial functors on finite sets. `μ` sends a coalgebra to the colimit
//!   of its unfolding chain, `ν` sends an algebra to the limit of its folding
//!   chain, and the two are adjoint.
//! - [`dagger`]: in the category of finite relations, where converse is a
//!   dagger, `μ(c)†` and `ν(c†)` coincide.
//!
//! [`spec`] reads and writes the JSON input formats, [`dot`] renders chains
//! and lattices, and [`cli`] drives everything from the command line.

pub mod cli;
pub mod dagger;
pub mod dot;
pub mod fixcat;
pub mod interval;
pub mod lattice;
pub mod report;
pub mod signature;
pub mod spec;
