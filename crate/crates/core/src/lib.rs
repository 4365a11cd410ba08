//! Self-energy of a point charge in a planar three-dielectric stack, and the
//! one-dimensional quantum states that self-energy supports.
//!
//! The crate is split into four layers:
//!
//! * [`electrostatics`] evaluates the polarization potential at the charge by
//!   a grouped reflection series, by explicit image charges, and by numerical
//!   quadrature of the Fourier-Bessel kernels. The three routes check each
//!   other.
//! * [`schrodinger`] turns a sampled potential into bound or box eigenstates
//!   with a Numerov shooting solver, backed by a finite-difference
//!   diagonalization oracle and the hydrogen-like closed forms.
//! * [`scenarios`] wires the two together for the vacuum-gap Schottky sweep,
//!   noble-gas films on a metal, and an electron trapped between two metal
//!   plates (including plate forces and levitation curves).
//! * [`cli`] is the batch front end used by the `imagewell` binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod electrostatics;
mod error;
pub mod integrate;
pub mod scenarios;
pub mod schrodinger;
pub mod units;

pub use error::{Error, Result};
