//! Numerical verification of integral transmutation identities for the Gauss
//! hypergeometric equation.

// `!(x > y)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod diffop;
pub mod error;
pub mod expr;
pub mod quadrature;
pub mod scaled;
pub mod solutions;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use scaled::Scaled;
pub use solutions::{domain_of, eval_w, eval_w_split, in_domain, Interval, SingularPoint, SolutionKind};
pub use special::{gamma, gamma_ratio, hyp2f1, hyp3f2, GammaRatioSpec, HypParams};
