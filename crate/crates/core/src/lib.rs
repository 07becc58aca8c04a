//! Quivers, tilting modules and the dimension vectors of cluster-concealed
//! algebras.
//!
//! The crate works with finite acyclic quivers `Q`, their path algebras `A`
//! over the rationals, and tilting `A`-modules `T`. From these it computes the
//! Euler form `q_A`, the base change `g(x) = (<dim T_i, x>)_i`, the pushed
//! forward form `q_B`, torsion decompositions, and the vectors `abs g(x)`
//! that are the dimension vectors of the indecomposable modules over the
//! cluster-concealed algebra of `B = End(T)`.
//!
//! Everything is exact: linear algebra runs over checked rationals.

pub mod artheory;
pub mod bigraph;
pub mod catalog;
pub mod cluster;
pub mod error;
pub mod forms;
pub mod linrep;
pub mod matrix;
pub mod par;
pub mod quiver;
pub mod scalar;
pub mod tilting;
pub mod vector;

pub use error::{Error, Result};
pub use quiver::{parse_quiver, Quiver};
