//! Exact verification of singular vectors, tensor filtrations and spectra for
//! quantum non-Levi conjugacy classes of `SO_q(N)`.

pub mod coeff;
pub mod error;
pub mod linalg;
pub mod natrep;
pub mod rootdata;
pub mod singular;
pub mod spectra;
pub mod suite;
pub mod tensor;
pub mod verma;

pub use coeff::{gauss_bracket, qbinom, Assignment, FracScalar, GaussianRational, LaurentPoly, Monomial, Var};
pub use error::{QError, Result};
pub use rootdata::{ClassData, ConjClass, Mode, OrthoRank, ParamAssignment, RootVec, WeightVec};
