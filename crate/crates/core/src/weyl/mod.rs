//! Kundt and Walker Weyl structures: connection, curvature, Ricci tensor,
//! Einstein-Weyl equations and infinitesimal holonomy.

pub mod connection;
pub mod einstein;
pub mod examples;
pub mod holonomy;
pub mod random;
pub mod structure;

pub use connection::*;
pub use einstein::*;
pub use examples::*;
pub use holonomy::*;
pub use random::random_walker;
pub use structure::*;
