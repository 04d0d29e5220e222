//! Exact polynomial and rational-function arithmetic: the generic
//! field/polynomial tower, the concrete Q(x)(y) stack, factorization, and
//! partial fractions.

pub mod factor;
pub mod field;
pub mod partfrac;
pub mod poly;
pub mod ratfun;
pub mod roots;
pub mod unifactor;
pub mod xy;
pub(crate) mod zp;
