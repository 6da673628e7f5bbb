use super::gauss::GaussianRational;
use super::gcd::{div_exact, gcd};
use super::monomial::{Monomial, Var};
use super::poly::LaurentPoly;
use crate::error::{QError, Result};
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Element of the fraction field of the Laurent ring.
///
/// Stored reduced: the denominator is monic, free of monomial factors and
/// coprime to the numerator, so structurally equal values are equal.
#[derive(Clone)]
pub struct FracScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl FracScalar {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(v))
    }

    pub fn from_gauss(c: GaussianRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(LaurentPoly::monomial(m))
    }

    /// `s^k`.
    pub fn s(k: i32) -> Self {
        Self::monomial(Monomial::s(k))
    }

    /// `q^k`.
    pub fn q(k: i32) -> Self {
        Self::monomial(Monomial::q(k))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    /// Builds `num / den` in reduced form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (m, den) = den.split_monomial();
        let mut num = num.shift(&m.neg());
        let mut den = den;
        if !den.is_constant() {
            let g = gcd(&num, &den);
            if !g.is_one() {
                num = div_exact(&num, &g).expect("gcd divides numerator");
                den = div_exact(&den, &g).expect("gcd divides denominator");
            }
        }
        let (lc, den) = den.monic();
        if !lc.is_one() {
            num = num.scale(&lc.inv().expect("nonzero"));
        }
        Self { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value when the fraction has no variables.
    pub fn constant_value(&self) -> Option<GaussianRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        n.div(&d)
    }

    /// Returns the signed monomial when the value is exactly one.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if !self.den.is_one() {
            return None;
        }
        let (e, c) = self.num.as_term()?;
        let unit =
            [GaussianRational::one(), GaussianRational::i(), GaussianRational::from_int(-1), -GaussianRational::i()]
                .iter()
                .position(|u| u == c)?;
        Some(Monomial::new(unit as u8, *e))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inv().map(|v| v.pow_u(k.unsigned_abs()));
        }
        Ok(self.pow_u(k as u32))
    }

    fn pow_u(&self, k: u32) -> Self {
        Self { num: self.num.pow(k), den: self.den.pow(k) }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self::reduce(self.num.mul_monomial(m), self.den.clone())
    }

    /// Replaces a variable by a constant.
    pub fn substitute(&self, v: Var, val: &GaussianRational) -> Result<Self> {
        Self::new(self.num.substitute(v, val), self.den.substitute(v, val))
    }

    /// Replaces a variable by a signed monomial.
    pub fn substitute_monomial(&self, v: Var, m: &Monomial) -> Result<Self> {
        Self::new(self.num.substitute_monomial(v, m), self.den.substitute_monomial(v, m))
    }

    /// Bitmask of occurring variables.
    pub fn mask(&self) -> u32 {
        self.num.mask() | self.den.mask()
    }

    /// Rough size, used to rank pivot candidates.
    pub fn weight(&self) -> u64 {
        self.num.weight() + self.den.weight()
    }

    /// Complex value under a numeric assignment of the variables.
    pub fn eval_numeric(&self, assign: &Assignment) -> Result<Complex64> {
        let (n, _) = eval_poly(&self.num, assign)?;
        let (d, scale) = eval_poly(&self.den, assign)?;
        if d.norm() <= 1e-13 * scale.max(f64::MIN_POSITIVE) {
            return Err(QError::DivisionByNearZero { magnitude: d.norm() });
        }
        Ok(n / d)
    }
}

/// Numeric values for the formal variables; unassigned variables are errors.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    values: Vec<(Var, Complex64)>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, x: Complex64) -> Self {
        self.values.retain(|(w, _)| *w != v);
        self.values.push((v, x));
        self
    }

    pub fn get(&self, v: Var) -> Option<Complex64> {
        self.values.iter().find(|(w, _)| *w == v).map(|(_, x)| *x)
    }
}

fn eval_poly(p: &LaurentPoly, assign: &Assignment) -> Result<(Complex64, f64)> {
    let mut total = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (e, c) in p.terms() {
        let (re, im) = c.to_f64_pair();
        let mut x = Complex64::new(re, im);
        for (i, &k) in e.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let v = Var::from_index(i);
            let val = assign.get(v).ok_or_else(|| QError::InvalidArgument(format!("no value for {}", v.name())))?;
            x *= val.powi(k);
        }
        scale += x.norm();
        total += x;
    }
    Ok((total, scale))
}

impl PartialEq for FracScalar {
    fn eq(&self, o: &Self) -> bool {
        (self.num == o.num && self.den == o.den) || (&self.num * &o.den) == (&o.num * &self.den)
    }
}

impl Eq for FracScalar {}

impl Hash for FracScalar {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.num.hash(h);
        self.den.hash(h);
    }
}

impl Default for FracScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FracScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Monomial> for FracScalar {
    fn from(m: Monomial) -> Self {
        Self::monomial(m)
    }
}

impl From<LaurentPoly> for FracScalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a FracScalar> for &'a FracScalar {
    type Output = FracScalar;
    fn add(self, o: &FracScalar) -> FracScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = &self.num + &o.num;
            if self.den.is_one() {
                return FracScalar { num, den: self.den.clone() };
            }
            return FracScalar::reduce(num, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            return FracScalar::reduce(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den);
        }
        let a = div_exact(&self.den, &g).expect("gcd divides");
        let b = div_exact(&o.den, &g).expect("gcd divides");
        FracScalar::reduce(&(&self.num * &b) + &(&o.num * &a), &(&a * &b) * &g)
    }
}

impl<'a> Sub<&'a FracScalar> for &'a FracScalar {
    type Output = FracScalar;
    fn sub(self, o: &FracScalar) -> FracScalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a FracScalar> for &'a FracScalar {
    type Output = FracScalar;
    fn mul(self, o: &FracScalar) -> FracScalar {
        if self.is_zero() || o.is_zero() {
            return FracScalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return FracScalar { num: &self.num * &o.num, den: LaurentPoly::one() };
        }
        // Cross-cancel before multiplying so the product stays reduced.
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = div_exact(&self.num, &g1).expect("gcd divides");
        let d2 = div_exact(&o.den, &g1).expect("gcd divides");
        let n2 = div_exact(&o.num, &g2).expect("gcd divides");
        let d1 = div_exact(&self.den, &g2).expect("gcd divides");
        FracScalar::reduce(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a FracScalar> for &'a FracScalar {
    type Output = FracScalar;
    /// Panics on division by zero; use [`FracScalar::checked_div`] otherwise.
    fn div(self, o: &FracScalar) -> FracScalar {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &FracScalar {
    type Output = FracScalar;
    fn neg(self) -> FracScalar {
        FracScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for FracScalar {
    type Output = FracScalar;
    fn neg(self) -> FracScalar {
        -&self
    }
}

impl Add for FracScalar {
    type Output = FracScalar;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl Sub for FracScalar {
    type Output = FracScalar;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl Mul for FracScalar {
    type Output = FracScalar;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl fmt::Display for FracScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for FracScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FracScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Exps;

    #[test]
    fn reduction_cancels_common_factor() {
        let num = &LaurentPoly::s(4) - &LaurentPoly::one();
        let den = &LaurentPoly::s(2) - &LaurentPoly::one();
        let x = FracScalar::new(num, den).unwrap();
        assert!(x.is_poly());
        assert_eq!(x.num(), &(&LaurentPoly::s(2) + &LaurentPoly::one()));
    }

    #[test]
    fn monomial_denominator_moves_to_numerator() {
        let x = FracScalar::new(LaurentPoly::one(), LaurentPoly::s(3)).unwrap();
        assert_eq!(x, FracScalar::s(-3));
        assert!(x.is_poly());
    }

    #[test]
    fn field_inverse() {
        let x = &FracScalar::q(1) + &FracScalar::var(Var::T);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(FracScalar::zero().inv().is_err());
    }

    #[test]
    fn eval_detects_pole() {
        let x = FracScalar::new(LaurentPoly::one(), &LaurentPoly::s(2) - &LaurentPoly::one()).unwrap();
        let a = Assignment::new().with(Var::S, Complex64::new(1.0, 0.0));
        assert!(matches!(x.eval_numeric(&a), Err(QError::DivisionByNearZero { .. })));
        let b = Assignment::new().with(Var::S, Complex64::new(2.0, 0.0));
        assert!((x.eval_numeric(&b).unwrap() - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn as_monomial_recognizes_units() {
        let m = Monomial::new(3, Exps::var(Var::S, -5));
        assert_eq!(FracScalar::monomial(m).as_monomial(), Some(m));
        assert_eq!((&FracScalar::q(1) + &FracScalar::one()).as_monomial(), None);
    }
}
