//! Spinors, holonomy algebras and curvature of Lorentzian Weyl structures.
//!
//! The crate is layered bottom up:
//!
//! * [`scalar`] and [`linalg`]: exact arithmetic in ℚ(i, √2) and row reduction.
//! * [`clifford`]: explicit gamma matrices for `Cl(r, s)`.
//! * [`lie_spin`]: bivectors, the spin lift and the parabolic algebra
//!   `co(1,n+1)_{ℝp}` with its weighted spinor action.
//! * [`catalog`]: generators of the Riemannian holonomy algebras and of the
//!   Weyl holonomy families.
//! * [`spinors`]: annihilators, the invariant Hermitian form and Dirac currents.
//! * [`weyl`]: symbolic curvature of Kundt/Walker Weyl structures and their
//!   infinitesimal holonomy.

#![allow(clippy::needless_range_loop)]

pub mod audit;
pub mod catalog;
pub mod clifford;
pub mod lie_spin;
pub mod linalg;
pub mod scalar;
pub mod spinors;
pub mod weyl;
