//! Humbert confluent double hypergeometric functions Φ₂, Φ₃, Ψ₂.
//!
//! The crate evaluates the three functions by direct double-series summation
//! ([`direct`]), by every supported alternative representation ([`reprs`]),
//! and cross-validates the representations numerically over grids
//! ([`verify`]) and exactly over the rationals through a truncated
//! formal-series oracle ([`oracle`]). The scalar building blocks (Pochhammer
//! symbols, generic pFq, terminating ₂F₁, unit-argument Gauss sum) live in
//! [`kernels`].
//!
//! All evaluators are pure functions; values are plain `Copy` data and safe
//! to share across threads.

pub mod direct;
pub mod error;
mod exact;
mod gamma;
pub mod kernels;
pub mod oracle;
pub mod reprs;
pub mod verify;

pub use direct::{phi2_direct, phi3_direct, psi2_direct, Phi2Params, Phi3Params, Psi2Params};
pub use error::{Error, Result};
pub use kernels::{
    gauss_2f1_unit, hyp2f1_terminating, pfq, pochhammer, EvalOutcome, Scalar, SeriesControl,
};
pub use reprs::{
    phi2_via_2f1_series, phi3_diagonal_2f2, phi3_gauss_terms, phi3_via_2f1_series,
    psi2_equal_args_3f3, psi2_via_2f1_series, psi2_via_phi3,
};
