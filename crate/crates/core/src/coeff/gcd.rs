//! Polynomial GCD and exact division.
//!
//! Univariate inputs use dense Euclid over `Q(i)`; multivariate inputs use a
//! recursive primitive remainder sequence. Monomials are units in the Laurent
//! ring, so every routine first strips monomial content.

use super::gauss::GaussianRational;
use super::monomial::{Exps, NVARS};
use super::poly::LaurentPoly;

fn single_var(mask: u32) -> Option<usize> {
    (mask.count_ones() == 1).then(|| mask.trailing_zeros() as usize)
}

fn to_dense(p: &LaurentPoly, v: usize) -> Vec<GaussianRational> {
    let deg = p.degree_in(v).unwrap_or(0).max(0) as usize;
    let mut out = vec![GaussianRational::zero(); deg + 1];
    for (e, c) in p.terms() {
        out[e.0[v] as usize] = c.clone();
    }
    out
}

fn from_dense(d: &[GaussianRational], v: usize) -> LaurentPoly {
    LaurentPoly::from_terms(d.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
        let mut e = [0; NVARS];
        e[v] = k as i32;
        (Exps(e), c.clone())
    }))
}

fn trim(d: &mut Vec<GaussianRational>) {
    while d.last().is_some_and(|c| c.is_zero()) {
        d.pop();
    }
}

/// Remainder of `a` by nonzero `b`; `b` need not be monic.
fn dense_rem(mut a: Vec<GaussianRational>, b: &[GaussianRational]) -> Vec<GaussianRational> {
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    trim(&mut a);
    while a.len() > db {
        let k = a.len() - 1;
        let f = &a[k] * &lead_inv;
        let off = k - db;
        for (i, c) in b.iter().enumerate() {
            if !c.is_zero() {
                a[off + i] = &a[off + i] - &(&f * c);
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn dense_div_exact(a: &[GaussianRational], b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    let db = b.len() - 1;
    if r.len() <= db {
        return None;
    }
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut q = vec![GaussianRational::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let f = &r[k] * &lead_inv;
        let off = k - db;
        for (i, c) in b.iter().enumerate() {
            if !c.is_zero() {
                r[off + i] = &r[off + i] - &(&f * c);
            }
        }
        q[off] = f;
        r.pop();
        trim(&mut r);
    }
    r.is_empty().then_some(q)
}

fn make_monic(d: &mut [GaussianRational]) {
    if let Some(lc) = d.last() {
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            d.iter_mut().for_each(|c| *c = &*c * &inv);
        }
    }
}

fn dense_gcd(mut a: Vec<GaussianRational>, mut b: Vec<GaussianRational>) -> Vec<GaussianRational> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    make_monic(&mut b);
    while !b.is_empty() {
        let mut r = dense_rem(a, &b);
        make_monic(&mut r);
        a = b;
        b = r;
    }
    make_monic(&mut a);
    a
}

/// Exact division of ordinary polynomials by lex leading terms.
fn div_exact_ordinary(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(LaurentPoly::zero());
    }
    if let Some((e, c)) = b.as_term() {
        let inv = c.inv()?;
        return Some(a.shift(&e.neg()).scale(&inv));
    }
    if let Some(v) = single_var(a.mask() | b.mask()) {
        return dense_div_exact(&to_dense(a, v), &to_dense(b, v)).map(|q| from_dense(&q, v));
    }
    let (lb_e, lb_c) = b.lead().cloned().expect("nonzero");
    let lb_inv = lb_c.inv().expect("nonzero");
    let mut r = a.clone();
    let mut q_terms = Vec::new();
    while let Some((le, lc)) = r.lead().cloned() {
        if !le.dominates(&lb_e) {
            return None;
        }
        let e = le.sub(&lb_e);
        let c = &lc * &lb_inv;
        r = &r - &b.shift(&e).scale(&c);
        q_terms.push((e, c));
    }
    Some(LaurentPoly::from_terms(q_terms))
}

/// Exact quotient `a / b` in the Laurent ring, or `None` when `b` does not divide `a`.
pub fn div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if b.is_zero() {
        return None;
    }
    let (ma, pa) = a.split_monomial();
    let (mb, pb) = b.split_monomial();
    div_exact_ordinary(&pa, &pb).map(|q| q.shift(&ma.sub(&mb)))
}

/// Content of an ordinary polynomial with respect to variable `v`.
fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for (_, c) in p.split_in(v) {
        g = gcd_ordinary(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let c = content_in(p, v);
    if c.is_one() {
        return normalize_monic(p.clone());
    }
    normalize_monic(div_exact_ordinary(p, &c).expect("content divides"))
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v`.
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = b.degree_in(v).expect("nonzero");
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if dr < db {
            break;
        }
        let lr = r.coeff_in(v, dr);
        let mut e = [0; NVARS];
        e[v] = dr - db;
        r = &(&r * &lb) - &(&b.shift(&Exps(e)) * &lr);
    }
    r
}

fn normalize_monic(p: LaurentPoly) -> LaurentPoly {
    p.monic().1
}

fn gcd_ordinary(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return normalize_monic(b.clone());
    }
    if b.is_zero() {
        return normalize_monic(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return LaurentPoly::one();
    }
    let (ma, mb) = (a.mask(), b.mask());
    if let Some(v) = single_var(ma | mb) {
        return from_dense(&dense_gcd(to_dense(a, v), to_dense(b, v)), v);
    }
    let bits = |m: u32| (0..NVARS).filter(move |i| m & (1 << i) != 0);
    if let Some(v) = bits(ma ^ mb).next() {
        return if ma & (1 << v) == 0 {
            gcd_ordinary(a, &content_in(b, v))
        } else {
            gcd_ordinary(&content_in(a, v), b)
        };
    }
    if bits(ma).all(|v| specialized_degree(a, b, v) == Some(0)) {
        return LaurentPoly::one();
    }
    let v =
        bits(ma).min_by_key(|&v| a.degree_in(v).unwrap_or(0).max(b.degree_in(v).unwrap_or(0))).expect("nonconstant");
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let g_content = gcd_ordinary(&ca, &cb);
    let mut pa = div_exact_ordinary(a, &ca).expect("content divides");
    let mut pb = div_exact_ordinary(b, &cb).expect("content divides");
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g_prim = loop {
        if pb.degree_in(v) == Some(0) {
            break LaurentPoly::one();
        }
        let r = pseudo_rem(&pa, &pb, v);
        if r.is_zero() {
            break pb;
        }
        pa = pb;
        pb = primitive_in(&r, v);
    };
    let g_prim = primitive_in(&g_prim, v);
    normalize_monic(&g_content * &g_prim)
}

/// Degree in `v` of the GCD of `a` and `b` after sending every other
/// variable to a small integer point where the leading coefficient of `a`
/// survives. This bounds the degree in `v` of the true GCD from above.
fn specialized_degree(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> Option<usize> {
    const POINTS: [[i64; NVARS]; 3] = [[2, 3, 5, 7, 11, 13], [3, 7, 2, 13, 5, 17], [5, 2, 11, 3, 17, 7]];
    let lead = a.coeff_in(v, a.degree_in(v)?);
    for pt in POINTS {
        let eval = |p: &LaurentPoly| {
            (0..NVARS).filter(|&i| i != v).fold(p.clone(), |acc, i| {
                acc.substitute(super::monomial::Var::from_index(i), &GaussianRational::from_int(pt[i]))
            })
        };
        if eval(&lead).is_zero() {
            continue;
        }
        let (ea, eb) = (eval(a), eval(b));
        if eb.is_zero() {
            continue;
        }
        let g = dense_gcd(to_dense(&ea, v), to_dense(&eb, v));
        return Some(g.len().saturating_sub(1));
    }
    None
}

/// Monic GCD of two Laurent polynomials, with monomial content removed.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (_, pa) = a.split_monomial();
    let (_, pb) = b.split_monomial();
    gcd_ordinary(&pa, &pb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::monomial::Var;

    fn s(k: i32) -> LaurentPoly {
        LaurentPoly::s(k)
    }
    fn t(k: i32) -> LaurentPoly {
        LaurentPoly::monomial(crate::coeff::Monomial::var(Var::T).pow(k))
    }
    fn one() -> LaurentPoly {
        LaurentPoly::one()
    }

    #[test]
    fn univariate_gcd() {
        let a = &(&s(2) - &one()) * &(&s(1) + &LaurentPoly::from_int(3));
        let b = &(&s(2) - &one()) * &(&s(1) - &LaurentPoly::from_int(5));
        assert_eq!(gcd(&a, &b), &s(2) - &one());
    }

    #[test]
    fn bivariate_gcd() {
        let common = &(&s(1) * &t(1)) + &one();
        let a = &common * &(&s(2) + &t(1));
        let b = &common * &(&s(1) - &t(3));
        let g = gcd(&a, &b);
        assert_eq!(g, normalize_monic(common.clone()));
        assert_eq!(div_exact(&a, &g).unwrap(), &(&s(2) + &t(1)) * &LaurentPoly::one());
    }

    #[test]
    fn coprime_is_one() {
        let a = &s(1) + &t(1);
        let b = &s(1) - &t(1);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn laurent_monomials_are_units() {
        let a = &s(-3) * &(&s(2) + &one());
        let b = s(5);
        assert!(gcd(&a, &b).is_one());
        let q = div_exact(&a, &s(-3)).unwrap();
        assert_eq!(q, &s(2) + &one());
        assert!(div_exact(&(&s(2) + &one()), &(&s(1) + &one())).is_none());
    }
}
