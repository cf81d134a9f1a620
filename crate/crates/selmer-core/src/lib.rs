//! Exact finite-field computations for the Vinberg representations of odd
//! orthogonal groups, the pair representation of `SO(V1) x SO(V2)`, and
//! hyperelliptic families over the projective line.
//!
//! Everything here is `no_std` with `alloc`; I/O, threading and report
//! formats live in the `selmer` crate.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod error;
pub mod field;
pub mod ring;
pub mod dual;
pub mod poly;
pub mod matrix;
pub mod orthogonal;
pub mod vinberg_odd;
pub mod vinberg_pair;
pub mod densities;
pub mod rng;
pub mod p1;
pub mod bundles;

pub use error::{Error, Result};
pub use field::FiniteField;
pub use ring::{ExactDiv, Field, FiniteRing, Ring};
