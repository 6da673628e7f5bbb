use proptest::prelude::*;
use qclass_core::rootdata::Series;
use qclass_core::singular::{c_coefficients, effective_monomials, recurrence_residuals, ConstructionSet};
use qclass_core::verma::VermaModule;
use qclass_core::{ClassData, FracScalar, GaussianRational, Mode, ParamAssignment};

fn setup(n: usize, mode: Mode) -> (ConstructionSet, VermaModule) {
    let class = ClassData::symmetric(n).validate().unwrap();
    let cons = ConstructionSet::build(&class).unwrap();
    (cons, VermaModule::new(&ParamAssignment::new(&class, mode)))
}

fn annihilated(cons: &ConstructionSet, verma: &VermaModule, c: &FracScalar) -> bool {
    let v = verma.vector(&cons.v_singular.scale(c)).unwrap();
    !v.is_zero() && (1..=verma.rank()).all(|i| verma.apply_e(i, &v).unwrap().is_zero())
}

#[test]
fn recurrence_for_all_ranks() {
    for series in [Series::B, Series::D] {
        let start = if matches!(series, Series::B) { 2 } else { 4 };
        for n in start..=9 {
            let c = c_coefficients(series, n);
            assert_eq!(c.len(), n - 1);
            let res = recurrence_residuals(series, n, &c);
            assert!(res.iter().all(FracScalar::is_zero), "{series:?} n={n}");
        }
    }
}

#[test]
fn singular_only_when_specialized() {
    for n in [5, 7, 8, 9] {
        let (cons, special) = setup(n, Mode::Specialized);
        assert!(annihilated(&cons, &special, &FracScalar::one()), "so({n}) specialized");
        let (cons, generic) = setup(n, Mode::Generic);
        assert!(!annihilated(&cons, &generic, &FracScalar::one()), "so({n}) generic");
    }
}

#[test]
fn even_rank_word_count() {
    let (cons, verma) = setup(8, Mode::Specialized);
    let (_, classes) = effective_monomials(&cons, &verma).unwrap();
    assert_eq!(classes, 2 * cons.local_rank - 3);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn projective_invariance(n in prop::sample::select(vec![5usize, 7, 8, 9]), a in 1i64..20, b in -20i64..20, k in -4i32..4) {
        let (cons, verma) = setup(n, Mode::Specialized);
        let c = &FracScalar::q(k).scale(&GaussianRational::from_int(a)) + &FracScalar::from_int(b);
        prop_assume!(!c.is_zero());
        prop_assert!(annihilated(&cons, &verma, &c));
    }
}
