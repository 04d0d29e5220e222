//! Creative telescoping for bivariate hypergeometric terms over Q.
//!
//! Given a term T(x, y) described by its shift quotients
//! σ_x(T)/T and σ_y(T)/T in Q(x, y), this crate decides summability in y,
//! computes additive decompositions with exact certificates, finds minimal
//! telescopers L = Σ e_i(x) S_x^i with L(T) = Δ_y(G), and computes order
//! bounds that sandwich the minimal telescoper order.

pub mod algebra;
pub mod bounds;
pub mod error;
pub mod linalg;
pub mod reduction;
pub mod rng;
pub mod rnf;
pub mod shifts;
pub mod telescoping;
pub mod term;

pub use error::Error;
