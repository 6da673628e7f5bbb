use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::Mul;

/// Number of formal variables: `s`, `z_1..z_4`, `t`.
pub const NVARS: usize = 6;
/// Largest number of generic Levi blocks supported by the exponent layout.
pub const MAX_Z: usize = NVARS - 2;

/// A formal variable. `s` is the square root of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S,
    Z(usize),
    T,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::S => 0,
            Var::Z(i) => {
                assert!((1..=MAX_Z).contains(&i), "z index out of range");
                i
            }
            Var::T => NVARS - 1,
        }
    }

    pub fn from_index(i: usize) -> Var {
        match i {
            0 => Var::S,
            i if i == NVARS - 1 => Var::T,
            i => Var::Z(i),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::S => "s".into(),
            Var::Z(i) => format!("z{i}"),
            Var::T => "t".into(),
        }
    }
}

/// Exponent vector, ordered lexicographically as `(s, z_1, .., z_4, t)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exps(pub [i32; NVARS]);

impl Exps {
    pub const ZERO: Exps = Exps([0; NVARS]);

    pub fn var(v: Var, e: i32) -> Exps {
        let mut x = [0; NVARS];
        x[v.index()] = e;
        Exps(x)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, o: &Exps) -> Exps {
        let mut x = self.0;
        x.iter_mut().zip(o.0.iter()).for_each(|(a, b)| *a += b);
        Exps(x)
    }

    pub fn sub(&self, o: &Exps) -> Exps {
        let mut x = self.0;
        x.iter_mut().zip(o.0.iter()).for_each(|(a, b)| *a -= b);
        Exps(x)
    }

    pub fn neg(&self) -> Exps {
        Exps(self.0.map(|e| -e))
    }

    pub fn scale(&self, k: i32) -> Exps {
        Exps(self.0.map(|e| e * k))
    }

    pub fn meet(&self, o: &Exps) -> Exps {
        let mut x = self.0;
        x.iter_mut().zip(o.0.iter()).for_each(|(a, b)| *a = (*a).min(*b));
        Exps(x)
    }

    /// True when every exponent is at least the corresponding one in `o`.
    pub fn dominates(&self, o: &Exps) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn mask(&self) -> u32 {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn get(&self, v: Var) -> i32 {
        self.0[v.index()]
    }
}

/// A unit `i^unit` times a product of variable powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exps: Exps,
    /// Power of `i`, in `0..4`.
    pub unit: u8,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: Exps::ZERO, unit: 0 };

    pub fn new(unit: u8, exps: Exps) -> Self {
        Self { exps, unit: unit % 4 }
    }

    /// `s^k`.
    pub fn s(k: i32) -> Self {
        Self::new(0, Exps::var(Var::S, k))
    }

    /// `q^k = s^{2k}`.
    pub fn q(k: i32) -> Self {
        Self::s(2 * k)
    }

    pub fn var(v: Var) -> Self {
        Self::new(0, Exps::var(v, 1))
    }

    pub fn unit(k: u8) -> Self {
        Self::new(k, Exps::ZERO)
    }

    pub fn minus_one() -> Self {
        Self::unit(2)
    }

    pub fn s_exp(&self) -> i32 {
        self.exps.0[0]
    }

    pub fn t_exp(&self) -> i32 {
        self.exps.0[NVARS - 1]
    }

    pub fn z_exps(&self) -> &[i32] {
        &self.exps.0[1..NVARS - 1]
    }

    pub fn inv(&self) -> Self {
        Self::new((4 - self.unit) % 4, self.exps.neg())
    }

    pub fn pow(&self, k: i32) -> Self {
        let u = (self.unit as i32 * k).rem_euclid(4) as u8;
        Self::new(u, self.exps.scale(k))
    }

    pub fn is_one(&self) -> bool {
        self.unit == 0 && self.exps.is_zero()
    }

    /// True when the monomial is `±1`.
    pub fn is_plus_minus_one(&self) -> bool {
        self.exps.is_zero() && self.unit.is_multiple_of(2)
    }

    /// Substitute `s = 1`, keeping the unit and the other variables.
    pub fn at_s_one(&self) -> Self {
        let mut e = self.exps;
        e.0[0] = 0;
        Self::new(self.unit, e)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    // Units are powers of i, so they add.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.unit + o.unit, self.exps.add(&o.exps))
    }
}

pub(crate) fn fmt_exps(f: &mut fmt::Formatter<'_>, e: &Exps) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        let name = Var::from_index(i).name();
        if k == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{k}")?;
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i*", "-", "-i*"][self.unit as usize];
        write!(f, "{prefix}")?;
        fmt_exps(f, &self.exps)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_arithmetic() {
        let i = Monomial::unit(1);
        assert_eq!(i * i, Monomial::minus_one());
        assert_eq!(Monomial::unit(3).inv(), i);
        assert_eq!((i * Monomial::s(3)).pow(2), Monomial::minus_one() * Monomial::s(6));
        assert_eq!(Monomial::s(3).pow(-1), Monomial::s(-3));
    }

    #[test]
    fn display() {
        let m = Monomial::new(3, Exps::var(Var::S, -2).add(&Exps::var(Var::Z(1), 2)));
        assert_eq!(m.to_string(), "-i*s^-2*z1^2");
        assert_eq!(Monomial::q(1).to_string(), "s^2");
    }

    #[test]
    fn lex_order_puts_s_first() {
        assert!(Exps::var(Var::S, 1) > Exps::var(Var::T, 5));
        assert!(Exps::var(Var::Z(1), 1) > Exps::var(Var::T, 1));
    }
}
