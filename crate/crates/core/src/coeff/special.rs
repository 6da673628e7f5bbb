use super::frac::FracScalar;
use super::monomial::Monomial;
use super::poly::LaurentPoly;
use crate::error::{QError, Result};

/// `(m - m^{-1}) / (q - q^{-1})`, the q-number attached to `m = q^x`.
pub fn gauss_bracket(m: Monomial) -> FracScalar {
    let num = &LaurentPoly::monomial(m) - &LaurentPoly::monomial(m.inv());
    let den = &LaurentPoly::q(1) - &LaurentPoly::q(-1);
    FracScalar::new(num, den).expect("nonzero denominator")
}

/// Symmetric q-integer `[n]_b = (b^n - b^{-n}) / (b - b^{-1})`.
pub fn qint(n: i32, base: Monomial) -> FracScalar {
    let num = &LaurentPoly::monomial(base.pow(n)) - &LaurentPoly::monomial(base.pow(-n));
    let den = &LaurentPoly::monomial(base) - &LaurentPoly::monomial(base.inv());
    FracScalar::new(num, den).expect("base is not a unit")
}

/// Symmetric q-factorial `[n]_b!`.
pub fn qfactorial(n: i32, base: Monomial) -> FracScalar {
    (1..=n).fold(FracScalar::one(), |acc, k| &acc * &qint(k, base))
}

/// Gaussian binomial `[n choose k]_b` in the symmetric normalization.
pub fn qbinom(n: i32, k: i32, base: Monomial) -> Result<FracScalar> {
    if k < 0 || k > n {
        return Err(QError::InvalidArgument(format!("qbinom({n}, {k}) needs 0 <= k <= n")));
    }
    let num = qfactorial(n, base);
    let den = &qfactorial(k, base) * &qfactorial(n - k, base);
    num.checked_div(&den)
}
