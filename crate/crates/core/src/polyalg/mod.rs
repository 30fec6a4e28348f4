//! Sparse polynomials in z, z̄ on ℂⁿ and in x on ℝⁿ with exact sphere and ball
//! integration and the differential operators of the ball.

mod coeff;
mod complex;
mod multi;
mod real;

pub use coeff::Coeff;
pub use complex::{ball_inner, norm_sq_sphere, rotate, sphere_inner, ComplexPoly, Monomial};
pub use multi::MultiIndex;
pub use real::{real_ball_inner, real_sphere_inner, RealPoly};

/// Exact big-rational coefficient type.
pub type Rational = num_rational::BigRational;
