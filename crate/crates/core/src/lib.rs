//! Exact-arithmetic inhomogeneous Diophantine approximation.
//!
//! For a rational `n × m` matrix `Θ` and target `α ∈ ℚⁿ` the crate computes
//! the irrationality-measure function `ψ_{Θᵀ}(t)`, the successive minima of
//! the parallelepipeds `Π(t)` and `Π*(t)`, unimodular bases and fundamental
//! domains inside `d!·Π(t)`, and constructive solutions of inhomogeneous
//! approximation problems (transference, Kronecker, the `ε/|x|` sharpening
//! and primitive solutions). Every quantity is an exact rational; the
//! [`oracle`] module re-derives each of them by naive exhaustive search.

pub mod error;
pub mod exact;
pub mod exec;
pub mod interval;
mod kernel;
pub mod linalg;
pub mod minima;
pub mod oracle;
pub mod psi;
pub mod qser;
pub mod solvers;

pub use error::{Error, Result};
pub use exact::{
    apply_theta_bar, box_enumerate, fmt_q, nearest_int_distance, parse_q, q, qi, sup_norm,
    ApproximationProblem, LatticePoint, RationalMatrix, RationalScalar, RationalVector,
    SearchOptions,
};
pub use exec::Exec;
