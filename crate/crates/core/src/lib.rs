//! Computation and verification toolkit for Ramsey upper densities of
//! infinite graphs.
//!
//! - [`lipschitz`]: crossing functionals Γ±, ℓ±, the σ-sawtooth and closed
//!   forms for f(λ).
//! - [`graphs`]: prefixes of infinite graph families, μ(H, n) and forest cuts.
//! - [`colorings`]: edge colorings of K_n, adversarial constructions and
//!   shadings.
//! - [`flows`]: capacitated bipartite flows with cover certificates.
//! - [`embedder`]: W-structures and the monochromatic embedding procedure.

pub mod colorings;
pub mod embedder;
pub mod error;
pub mod flows;
pub mod graphs;
pub mod lipschitz;

pub use error::{Error, Result};
