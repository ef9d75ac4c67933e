//! Exact computation of the Hopf-Galois structures on a quaternionic
//! (Q8) Galois field extension.
//!
//! The pipeline: enumerate the regular subgroups of `Perm(G)` normalized
//! by the left regular image (each one is the underlying group of a
//! Hopf-Galois structure), classify the resulting Hopf algebras up to
//! Hopf isomorphism via G-equivariant group isomorphisms, and decompose
//! the fixed algebras `K[N]^G` over the rationals into products of fields
//! and quaternion algebras, with all quaternion algebras classified by
//! their ramification sets.
//!
//! Everything is exact: permutations, Cayley tables, big-rational linear
//! algebra, Hilbert symbols, square classes.

pub mod enumerate;
pub mod equivariance;
pub mod arith;
pub mod bases;
pub mod biquad;
pub mod error;
pub mod kalgebra;
pub mod linalg;
pub mod forms;
pub mod group;
pub mod named;
pub mod perm;
pub mod subgroup;
pub mod wedderburn;
