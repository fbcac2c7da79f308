//! Exact and numerical geometry of twistor lines in CP^3.
//!
//! The library makes the twistor fibration pi: CP^3 -> HP^1 computable with
//! exact Gaussian-rational arithmetic: fibers and the fixed-point-free
//! anti-holomorphic involution j, Plucker coordinates on the Klein quadric
//! with incidence and transversal queries, dense homogeneous forms with the
//! coefficient-level involution, exact condition matrices for configurations
//! of disjoint lines and (fat) points with h^0/h^1 by rank, extraction of
//! general and j-invariant members, and numerical enumeration of the lines on
//! a surface with twistor classification.

pub mod analysis;
pub mod io;
pub mod linalg;
pub mod linsys;
pub mod plucker;
pub mod poly;
pub mod quaternion;
pub mod scalar;
pub mod twistor;
pub mod verify;
