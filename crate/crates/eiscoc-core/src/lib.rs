//! Exact arithmetic for the Eisenstein cocycle of GL₂(ℤ) and its shadows.
//!
//! Everything here is exact: rationals, cyclotomic fields, integer lattices,
//! piecewise-constant functions on the rational circle, truncated power
//! series with explicit polar parts, and zero-cycles on finite groups.
//! The crate builds without `std` (it needs `alloc`).

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod circle_complex;
pub mod cone_laurent;
pub mod error;
pub mod exact_arith;
pub mod gm_cocycle;
pub mod int_lattice;
pub mod siegel_units;
pub mod sl2_toolkit;
pub mod torsion_cycles;

pub use error::{Error, Result};
pub use exact_arith::Rat;
