//! Numerical evaluation of zonal spherical functions on rank-one and complex
//! noncompact symmetric spaces, together with a certifier for the
//! Ehrenpreis–Hörmander "slowly decreasing" lower-bound condition on their
//! Fourier–Laplace data.
//!
//! The library is organised around several independent evaluation routes for
//! the same kernel integral
//!
//! ```text
//! I(ζ) = ∫₀ᵗ cos(ζs) (cosh t − cosh s)^{(n−3)/2}
//!            ₂F₁(1 − q/2, q/2; (n−1)/2; (cosh t − cosh s)/(2 cosh t)) ds,
//! ```
//!
//! which determines the spherical function φ_ζ(exp tH) up to an explicit
//! ζ-independent prefactor:
//!
//! * [`oracle`] — composite Gauss–Legendre quadrature, the reference route;
//! * [`rankone`] — a three-term recurrence (odd dimension) and a Bessel
//!   function series (even dimension);
//! * [`hcseries`] — the Harish-Chandra expansion with the Gangolli-stabilised
//!   coefficient recursion and the c-function;
//! * [`complexgrp`] — Weyl-sum closed forms for complex groups of type A.
//!
//! Routes are interchangeable behind the [`routes::PhiRoute`] trait and are
//! selected by name through [`routes::registry`]. The [`certifier`] module
//! consumes any route and produces machine-checkable slow-decrease and
//! growth-type reports; [`euclid`] handles the Euclidean exponential-polynomial
//! distributions whose invertibility bounds seed the whole approach.

pub mod acceptance;
pub mod certifier;
pub mod complexgrp;
pub mod error;
pub mod euclid;
pub(crate) mod gl;
pub mod hcseries;
pub mod oracle;
pub mod powser;
pub mod rankone;
pub mod rootdata;
pub mod routes;
pub mod specfun;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
