//! Mass spectrum and eigenmodes of a Weyl spinor on a curved disc.
//!
//! The configuration space is an infinite two-dimensional disc whose zweibein
//! carries the conformal factor `f = 1 + (rho/2 rho0)^2`, giving the disc the
//! finite volume of a sphere of radius `rho0` while leaving one point at
//! infinite coordinate radius. A one-parameter family of spin-connection
//! fields, labelled by `epsilon` in `[0, 1/2)`, couples to the spinor. The
//! crate computes:
//!
//! - the exact mass spectrum `(m rho0)^2 = l0 (l0 + 1 - 2 epsilon)` of the
//!   angular-momentum tower built on order `n` ([`spectrum`]),
//! - the terminating Legendre-series profiles of the two spinor components
//!   and their normalization ([`spectrum`]),
//! - the unique normalizable massless mode and the square-integrability
//!   windows that single it out ([`spectrum::massless_solution`]),
//! - independent numerical cross-checks: finite-difference residuals of the
//!   first- and second-order radial equations, a finite-volume eigenvalue
//!   oracle, alternate-basis projections, and a radial-coordinate rewrite
//!   ([`verify`]),
//! - the even-dimensional Clifford-algebra machinery (gamma matrices,
//!   Lorentz generators, nilpotent/projector basis states) that carries the
//!   spinor structure ([`clifford`]).
//!
//! Associated Legendre evaluation ([`legendre`]) and Gaussian quadrature
//! ([`quadrature`]) are provided as shared numerical kernels.

pub mod clifford;
pub mod error;
pub mod geometry;
pub mod legendre;
pub mod quadrature;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
