//! M-harmonic, pluriharmonic and harmonic Dirichlet spaces on the unit ball:
//! bigraded spherical harmonics, weighted Bergman coefficient functions and
//! their continuation, reproducing kernels and Dirichlet seminorms.

pub mod coeffs;
pub mod error;
pub mod harmonics;
pub mod kernels;
pub mod moebius;
pub mod polyalg;
pub mod realharm;
pub mod sampling;
pub mod seminorms;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
