//! Core algorithms for building quasi-periodic KP solutions out of tropical
//! curves with vertex weights.
//!
//! The pipeline implemented here runs:
//!
//! 1. [`graph`] — weighted, length-decorated multigraphs, their genus and a
//!    deterministic fundamental cycle basis;
//! 2. [`period`] — exact rational tropical period matrices `B_C` and their
//!    symbolic counterparts `B_Δ` with linear-form entries in the edge
//!    variables `t_e`;
//! 3. [`troptheta`] — tropical theta values and Delaunay sets via exact
//!    sphere decoding, plus the coefficientwise-maximal linear forms that
//!    index component tau functions;
//! 4. [`riemann`] — numerical Riemann theta functions on the Siegel upper
//!    half space with certified truncation;
//! 5. [`components`] — per-vertex Riemann-surface data (normalized
//!    differentials restricted to the nodal curve, couplings, expansions at
//!    the marked point);
//! 6. [`degeneration`] — the degenerating family `Z(s) = log s · B̄ + L₀`
//!    and its regularized tropical limit;
//! 7. [`tau`] — tau functions of family/limit/component type, the KP field
//!    `u = ∂²_x log τ` and the KP-equation residual verifier.
//!
//! All tropical-side arithmetic is exact over the rationals; analytic parts
//! use `f64`/`Complex64` with reported truncation bounds.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `tropkp` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod cmatrix;
pub mod components;
pub mod degeneration;
pub mod elliptic;
pub mod exact;
pub mod graph;
pub mod jet;
pub mod period;
pub mod quadrature;
pub mod riemann;
pub mod series;
pub mod tau;
pub mod troptheta;

pub use num_complex::Complex64;
pub use num_rational::BigRational as Rat;

/// Shorthand for building an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Shorthand for an integer rational.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(num.into())
}
