use super::gauss::GaussianRational;
use super::monomial::{fmt_exps, Exps, Monomial, Var};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial with Gaussian rational coefficients.
///
/// Terms are stored in strictly decreasing lexicographic order of exponents
/// with no zero coefficients, so the leading term comes first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Exps, GaussianRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(Exps::ZERO, c)
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(GaussianRational::from_int(v))
    }

    pub fn term(e: Exps, c: GaussianRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m.exps, GaussianRational::one().mul_unit(m.unit))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    /// `s^k`.
    pub fn s(k: i32) -> Self {
        Self::monomial(Monomial::s(k))
    }

    /// `q^k`.
    pub fn q(k: i32) -> Self {
        Self::monomial(Monomial::q(k))
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exps, GaussianRational)>>(it: I) -> Self {
        let mut map: BTreeMap<Exps, GaussianRational> = BTreeMap::new();
        for (e, c) in it {
            match map.get_mut(&e) {
                Some(v) => *v = &*v + &c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        Self { terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Exps, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_zero())
    }

    pub fn constant_value(&self) -> Option<GaussianRational> {
        match self.terms.as_slice() {
            [] => Some(GaussianRational::zero()),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    /// Single term `c * x^e`, if the polynomial has exactly one.
    pub fn as_term(&self) -> Option<(&Exps, &GaussianRational)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((e, c)),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Exps, GaussianRational)> {
        self.terms.first()
    }

    /// Bitmask of variables that occur.
    pub fn mask(&self) -> u32 {
        self.terms.iter().fold(0, |m, (e, _)| m | e.mask())
    }

    /// Componentwise minimum of exponents.
    pub fn min_exps(&self) -> Exps {
        let mut it = self.terms.iter();
        match it.next() {
            None => Exps::ZERO,
            Some((e, _)) => it.fold(*e, |m, (x, _)| m.meet(x)),
        }
    }

    /// Multiply by `x^e`.
    pub fn shift(&self, e: &Exps) -> Self {
        if e.is_zero() {
            return self.clone();
        }
        Self { terms: self.terms.iter().map(|(x, c)| (x.add(e), c.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self { terms: self.terms.iter().map(|(x, v)| (*x, v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(x, c)| (x.add(&m.exps), c.mul_unit(m.unit))).collect() }
    }

    /// Largest exponent of `v`; `None` for zero.
    pub fn degree_in(&self, v: usize) -> Option<i32> {
        self.terms.iter().map(|(e, _)| e.0[v]).max()
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, v: usize, k: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0[v] == k)
                .map(|(e, c)| {
                    let mut x = *e;
                    x.0[v] = 0;
                    (x, c.clone())
                })
                .collect(),
        }
    }

    /// Splits into coefficients by powers of `v`, highest power first.
    pub fn split_in(&self, v: usize) -> Vec<(i32, Self)> {
        let mut map: BTreeMap<i32, Vec<(Exps, GaussianRational)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut x = *e;
            let k = x.0[v];
            x.0[v] = 0;
            map.entry(k).or_default().push((x, c.clone()));
        }
        map.into_iter()
            .rev()
            .map(|(k, mut t)| {
                t.sort_by_key(|x| std::cmp::Reverse(x.0));
                (k, Self { terms: t })
            })
            .collect()
    }

    /// Replaces variable `v` by the constant `val`.
    pub fn substitute(&self, v: Var, val: &GaussianRational) -> Self {
        let idx = v.index();
        let inv = val.inv();
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let k = e.0[idx];
            let mut x = *e;
            x.0[idx] = 0;
            let factor = if k >= 0 {
                val.pow(k as u32)
            } else {
                inv.as_ref().expect("substituting zero into a negative power").pow((-k) as u32)
            };
            (x, c * &factor)
        }))
    }

    /// Replaces variable `v` by a monomial.
    pub fn substitute_monomial(&self, v: Var, m: &Monomial) -> Self {
        let idx = v.index();
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let k = e.0[idx];
            let mut x = *e;
            x.0[idx] = 0;
            let mk = m.pow(k);
            (x.add(&mk.exps), c.mul_unit(mk.unit))
        }))
    }

    /// Multiplies every exponent of `v` by `k`.
    pub fn dilate(&self, v: Var, k: i32) -> Self {
        let idx = v.index();
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut x = *e;
            x.0[idx] *= k;
            (x, c.clone())
        }))
    }

    /// Lowest-order total size of coefficients, used to rank pivots.
    pub fn weight(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits() + 1).sum()
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &o.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Greater => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((*eb, if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(e, c)| (*e, if negate { -c } else { c.clone() })));
        Self { terms: out }
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

    /// Strips the monomial content: returns `(x^m, p)` with `self = x^m * p`
    /// and every variable occurring in `p` with minimal exponent zero.
    pub fn split_monomial(&self) -> (Exps, Self) {
        let m = self.min_exps();
        (m, self.shift(&m.neg()))
    }

    /// Makes the leading coefficient one; returns the divisor used.
    pub fn monic(&self) -> (GaussianRational, Self) {
        match self.lead() {
            None => (GaussianRational::one(), Self::zero()),
            Some((_, c)) => {
                let c = c.clone();
                let inv = c.inv().expect("nonzero");
                (c, self.scale(&inv))
            }
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.merge(o, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self.merge(o, true)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        if let Some((e, c)) = o.as_term() {
            return LaurentPoly { terms: self.terms.iter().map(|(x, v)| (x.add(e), v * c)).collect() };
        }
        if let Some((e, c)) = self.as_term() {
            return LaurentPoly { terms: o.terms.iter().map(|(x, v)| (e.add(x), c * v)).collect() };
        }
        let mut map: BTreeMap<Exps, GaussianRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.add(eb);
                let p = ca * cb;
                match map.get_mut(&e) {
                    Some(v) => *v = &*v + &p,
                    None => {
                        map.insert(e, p);
                    }
                }
            }
        }
        LaurentPoly { terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> Self {
        -&self
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly::monomial(m)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                fmt_exps(f, e)?;
            } else {
                write!(f, "{c}*")?;
                fmt_exps(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
