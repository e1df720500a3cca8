//! Exact-arithmetic engine for harmonic analysis on sl₂ and PGL₂ over small
//! odd finite fields.
//!
//! Everything in this crate is computed exactly: field elements are polynomial
//! residues over 𝔽_p, scalars of function spaces are elements of cyclotomic
//! fields ℚ(ζ_n) with arbitrary-precision rational coefficients, and all
//! subspace verdicts come from exact Gaussian elimination.  There is no
//! floating point anywhere.
//!
//! Module map:
//! - [`field`] — 𝔽_q arithmetic (odd q), squares, absolute trace, discrete
//!   logs for multiplicative characters.
//! - [`cyclo`] — ℚ(ζ_n) arithmetic reduced mod the cyclotomic polynomial Φ_n.
//! - [`linalg`] — canonical reduced row-echelon bases, kernels, subspace
//!   comparison, and a streaming-column rank accumulator.
//! - [`sl2`] — explicit models of sl₂(𝔽_q) and PGL(2,𝔽_q): orbits, closures,
//!   the elliptic set, nilradical lines / unipotent radicals, incidence sets.
//! - [`spaces`] — function spaces, the trace-pairing Fourier transform, and
//!   the cuspidal / weightless / restricted-cuspidal subspaces with their
//!   comparison verdicts.
//! - [`lemma`] — Gauss sums, the κ_χ transform on the regular nilpotent
//!   orbit, and the explicit two-point witness functions h_χ.
//! - [`chartab`] — the exact character table of PGL(2,q) and multiplicity
//!   diagnostics for permutation representations on conjugacy classes.
//! - [`qtwo`] — Fourier-restriction surjectivity sweeps over extension
//!   towers 𝔽_{q^n} for user-supplied polynomial maps.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chartab;
pub mod cyclo;
pub mod field;
pub mod lemma;
pub mod linalg;
pub mod qtwo;
pub mod sl2;
pub mod spaces;

pub use num_bigint;
pub use num_rational;
pub use num_traits;
