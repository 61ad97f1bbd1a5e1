//! Polynomial identities and central polynomials of matrix algebras over
//! finite fields.
//!
//! The crate provides:
//!
//! - exact arithmetic in `F_p` and `F_{p^m}` ([`gf`]);
//! - sparse noncommutative polynomials and their text syntax ([`freealg`],
//!   [`parse`]);
//! - partial linearization along compositions of the degrees ([`linearize`]);
//! - evaluation at matrices and matrix-unit enumeration ([`mateval`]);
//! - identity and centrality testing with replayable witnesses ([`verify`]);
//! - descent from extension-field to prime-field coefficients ([`descent`]);
//! - stock polynomials: standard, hall, multilinear central ([`fixtures`]).
//!
//! Scans run in parallel by default (the `parallel` feature); disabling it
//! swaps in a sequential engine with identical results and counts.

pub mod descent;
pub mod fixtures;
pub mod freealg;
pub mod gf;
pub mod linearize;
pub mod mateval;
pub mod parse;
pub mod verify;
