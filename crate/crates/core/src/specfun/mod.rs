//! Gamma-family functions, Gauss hypergeometric series and the logarithmic
//! connection expansion of the normalized ₂F₁(p,q;p+q+n;t) around t = 1.

mod gamma;
mod hyper;
mod logcase;
pub mod quad;

pub use gamma::{digamma_half_integer, gamma, harmonic_number, ln_gamma, pochhammer};
pub use hyper::{gauss_2f1, gauss_2f1_bounded, gauss_value_at_one, normalized_2f1, normalized_2f1_derivs};
pub use logcase::{log_case_expansion, log_case_expansion_auto, log_case_expansion_delta, LogCaseExpansion};
