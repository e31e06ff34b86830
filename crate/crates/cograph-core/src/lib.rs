//! Exact algebra for graphical realizations of linear codes over prime fields.
//!
//! A *normal realization* is a bipartite system of constraint codes and
//! variables in which symbol variables touch exactly one constraint and state
//! variables exactly two. This crate builds such realizations (including
//! conventional trellises of convolutional codes given by polynomial generator
//! matrices), dualizes them by replacing every constraint with its orthogonal
//! code and inserting one sign inverter per state variable, computes complete
//! and Hamming weight adjacency matrices of single constraints in both the
//! primal and the transform domain, and runs sum-product message updates
//! directly or through the dual code.
//!
//! All arithmetic is exact: scalars are arbitrary-precision rationals extended
//! by a primitive p-th root of unity (see [`algebra::CycloRat`]). Floating
//! point appears only in cross-check tests, never in this crate's code.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the command
//! line front end live in the companion crate `cograph-cli`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod code;
pub mod dpoly;
pub mod error;
pub mod realization;
pub mod sumproduct;
pub mod wam;

pub use error::{Error, Result};

/// Default ceiling on the number of tuples any enumeration is allowed to
/// visit (codewords of one code, or the product of per-constraint codeword
/// counts when intersecting a behavior). Callers can raise or lower it per
/// call; the library never enumerates past the bound it is given.
pub const DEFAULT_BUDGET: u128 = 1 << 24;
