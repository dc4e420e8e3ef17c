//! Exact computations with symmetrizable quantum affine superalgebras.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cartan;
pub mod linalg;
pub mod lincomb;
pub mod report;
pub mod scalars;
pub mod transmutation;
pub mod verma;
