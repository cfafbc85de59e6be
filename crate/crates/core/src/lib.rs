//! Exact-arithmetic engine for connected simple and monotone Hurwitz numbers.
//!
//! For a fixed ramification type `mu`, both kinds of Hurwitz numbers are
//! finite sums of exponentials in the branch count `b = 2g - 2 + d + l`
//! (times polynomials in `b` for the monotone case). This crate extracts those
//! closed forms from the connected n-point function of the corresponding KP
//! tau-functions and checks them against a brute-force constellation count.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats, parallel
//! sweeps and the command-line tool live in the `hurwitz-cli` crate.

#![no_std]

extern crate alloc;

pub mod affine;
pub mod closedform;
mod error;
pub mod exactarith;
pub mod npoint;
pub mod oracle;
pub mod partitions;

pub use closedform::{
    asymptotics, evaluate, monotone_closed_form, simple_closed_form, structure_checks,
    Asymptotics, GenusClosedForm, Kind, StructureReport, Term,
};
pub use error::{Error, Result};
pub use exactarith::{ExpSum, FactoredRationalFunction, PartialFraction, Polynomial, Rational};
pub use npoint::{monotone_generating, simple_generating};
pub use oracle::{count_constellations, oracle_hurwitz, ConstellationQuery};
pub use partitions::Partition;
