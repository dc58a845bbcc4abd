//! Exact computations with normal triple covers of the projective plane.
//!
//! The crate covers both common encodings of a triple cover: the quadruple `(a, b, c, d)` attached
//! to a split trace-free bundle ([`miranda`]) and the factored minimal cubic `z^3 + s z + t`
//! ([`tan`]). It converts between them on the two standard charts ([`chart`]), computes splitting
//! types of rank-2 bundles on lines ([`bundle`]), and mechanizes the uniformity classification for
//! small branch degrees ([`classify`]).

pub mod algebra;
pub mod bundle;
pub mod chart;
pub mod classify;
mod error;
pub mod miranda;
pub mod tan;
pub mod testgen;

pub use algebra::{BinaryForm, FactoredForm, Field, Form, LineP2, Scalar};
pub use error::{Error, Result};
