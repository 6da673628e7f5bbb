use super::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn small_coeff() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -2i64..=2, 1i64..=2).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((small_coeff(), -3i32..=3, -1i32..=1, -1i32..=1), 0..4).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(c, s, z, t)| {
            let e = Exps::var(Var::S, s).add(&Exps::var(Var::Z(1), z)).add(&Exps::var(Var::T, t));
            (e, c)
        }))
    })
}

fn frac() -> impl Strategy<Value = FracScalar> {
    (poly(), poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { LaurentPoly::one() } else { d };
        FracScalar::new(n, d).unwrap()
    })
}

fn eval_at(x: &FracScalar, pts: &[(f64, f64, f64)]) -> Option<Vec<Complex64>> {
    pts.iter()
        .map(|&(s, z, t)| {
            let a = Assignment::new()
                .with(Var::S, Complex64::new(s, 0.1))
                .with(Var::Z(1), Complex64::new(z, -0.2))
                .with(Var::T, Complex64::new(t, 0.3));
            x.eval_numeric(&a).ok()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in frac(), b in frac(), c in frac()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &FracScalar::one(), a.clone());
    }

    #[test]
    fn field_inverse(a in frac()) {
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn bracket_identity(k in -6i32..=6, unit in 0u8..4, z in -2i32..=2) {
        let m = Monomial::new(unit, Exps::var(Var::S, k).add(&Exps::var(Var::Z(1), z)));
        let lhs = &(&gauss_bracket(m) * &(&FracScalar::s(2) - &FracScalar::s(-2)))
            + &(&FracScalar::monomial(m.inv()) - &FracScalar::monomial(m));
        prop_assert!(lhs.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equality_agrees_with_evaluation(a in frac(), b in frac()) {
        let pts = [(1.3, 0.7, 1.9), (0.6, 1.4, 0.8), (2.1, 0.5, 1.2), (0.9, 1.7, 0.4), (1.6, 1.1, 2.3)];
        let sum1 = &(&a + &b) * &a;
        let sum2 = &(&a * &a) + &(&b * &a);
        prop_assert_eq!(&sum1, &sum2);
        if let (Some(x), Some(y)) = (eval_at(&sum1, &pts), eval_at(&sum2, &pts)) {
            for (u, v) in x.iter().zip(y.iter()) {
                prop_assert!((u - v).norm() <= 1e-8 * (1.0 + u.norm()));
            }
        }
        let equal = a == b;
        if let (Some(x), Some(y)) = (eval_at(&a, &pts), eval_at(&b, &pts)) {
            let numeric_equal = x.iter().zip(y.iter()).all(|(u, v)| (u - v).norm() <= 1e-9 * (1.0 + u.norm()));
            prop_assert_eq!(equal, numeric_equal);
        }
    }
}
