//! Exact coefficient arithmetic over the Laurent ring in `s = q^{1/2}`,
//! the generic Levi parameters `z_i` and the boundary parameter `t`.

mod frac;
mod gauss;
pub mod gcd;
mod monomial;
mod poly;
mod special;

pub use frac::{Assignment, FracScalar};
pub use gauss::GaussianRational;
pub use monomial::{Exps, Monomial, Var, MAX_Z, NVARS};
pub use poly::LaurentPoly;
pub use special::{gauss_bracket, qbinom, qfactorial, qint};

#[cfg(test)]
mod proptests;
