//! Exact Gaussian rationals `(re + i im) / den` over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of `Q(i)`, kept with a positive common denominator and no common factor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigInt,
    im: BigInt,
    den: BigInt,
}

impl GaussianRational {
    pub fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self { re: BigInt::zero(), im: BigInt::one(), den: BigInt::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self { re: BigInt::from(v), im: BigInt::zero(), den: BigInt::one() }
    }

    /// `re_num/re_den + i * im_num/im_den`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        assert!(re_den != 0 && im_den != 0, "zero denominator");
        let (rd, id) = (BigInt::from(re_den), BigInt::from(im_den));
        Self::normalized(BigInt::from(re_num) * &id, BigInt::from(im_num) * &rd, rd * id)
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::from_parts(num, den, 0, 1)
    }

    pub fn from_big(re: BigInt, im: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::normalized(re, im, den)
    }

    fn normalized(mut re: BigInt, mut im: BigInt, mut den: BigInt) -> Self {
        if re.is_zero() && im.is_zero() {
            return Self::zero();
        }
        if den.is_negative() {
            re = -re;
            im = -im;
            den = -den;
        }
        if den.is_one() {
            return Self { re, im, den };
        }
        let g = re.gcd(&im).gcd(&den);
        if !g.is_one() {
            re /= &g;
            im /= &g;
            den /= &g;
        }
        Self { re, im, den }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.den.is_one() && self.re.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Integer numerators and common denominator.
    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.re, &self.im, &self.den)
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im, den: self.den.clone() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::normalized(&self.re * &self.den, -(&self.im * &self.den), norm))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|v| self * &v)
    }

    /// Multiply by `i^k`.
    pub fn mul_unit(&self, k: u8) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Self { re: -&self.im, im: self.re.clone(), den: self.den.clone() },
            2 => -self,
            _ => Self { re: self.im.clone(), im: -&self.re, den: self.den.clone() },
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        // Shift everything down first so huge numerators and denominators stay finite.
        let shift = self.den.bits().saturating_sub(960);
        let part = |x: &BigInt| {
            let top = x.bits().saturating_sub(960).max(shift);
            let d = (&self.den >> shift).to_f64().unwrap_or(f64::INFINITY);
            (x >> top).to_f64().unwrap_or(f64::NAN) * 2f64.powi((top - shift) as i32) / d
        };
        (part(&self.re), part(&self.im))
    }

    /// Integer size proxy used to pick cheap pivots.
    pub fn bits(&self) -> u64 {
        self.re.bits() + self.im.bits() + self.den.bits()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        if self.den == o.den {
            return GaussianRational::normalized(&self.re + &o.re, &self.im + &o.im, self.den.clone());
        }
        GaussianRational::normalized(
            &self.re * &o.den + &o.re * &self.den,
            &self.im * &o.den + &o.im * &self.den,
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        self + &(-o)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if o.im.is_zero() && self.im.is_zero() {
            return GaussianRational::normalized(&self.re * &o.re, BigInt::zero(), &self.den * &o.den);
        }
        GaussianRational::normalized(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
            &self.den * &o.den,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im, den: self.den.clone() }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im, den: self.den }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

fn fmt_rat(f: &mut fmt::Formatter<'_>, n: &BigInt, d: &BigInt) -> fmt::Result {
    let g = n.gcd(d);
    let (n, d) = (n / &g, d / &g);
    if d.is_one() {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rat(f, &self.re, &self.den),
            (true, false) => {
                fmt_rat(f, &self.im, &self.den)?;
                write!(f, "i")
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_rat(f, &self.re, &self.den)?;
                write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
                fmt_rat(f, &self.im.abs(), &self.den)?;
                write!(f, "i)")
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
