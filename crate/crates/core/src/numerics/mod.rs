//! Deterministic numerical kernels: adaptive quadrature, bracketing root
//! finding and a unimodal maximizer.

mod quadrature;
mod roots;

pub use quadrature::{integrate, integrate_semi_infinite, QuadratureSpec};
pub use roots::{find_root, maximize_unimodal, RootSpec};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("quadrature did not reach tolerance within depth {max_depth} (estimate {estimate:e}, error {error:e})")]
    MaxDepthExceeded {
        max_depth: u32,
        estimate: f64,
        error: f64,
    },
    #[error("integrand is not finite at x = {x:e}")]
    NonFiniteIntegrand { x: f64 },
    #[error("no sign change on [{lo:e}, {hi:e}] (g(lo) = {g_lo:e}, g(hi) = {g_hi:e})")]
    NoSignChange {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },
    #[error("root finder did not converge in {0} iterations")]
    MaxIterExceeded(u32),
    #[error("invalid numerical specification: {0}")]
    InvalidSpec(String),
}
