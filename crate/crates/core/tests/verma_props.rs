use proptest::prelude::*;
use qclass_core::rootdata::kostant_dim;
use qclass_core::verma::{enumerate_words, relation_space, ModVec, VermaModule, Word, WordVector};
use qclass_core::{gauss_bracket, ClassData, ConjClass, FracScalar, Mode, ParamAssignment, RootVec};
use std::sync::OnceLock;

fn classes() -> &'static [(ConjClass, VermaModule, VermaModule)] {
    static CACHE: OnceLock<Vec<(ConjClass, VermaModule, VermaModule)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        [
            ClassData::symmetric(5),
            ClassData::symmetric(7),
            ClassData::symmetric(8),
            ClassData { n_dim: 9, gl_blocks: vec![1], m: 2, p: 1 },
        ]
        .into_iter()
        .map(|d| {
            let c = d.validate().unwrap();
            let special = VermaModule::new(&ParamAssignment::new(&c, Mode::Specialized));
            let gen = VermaModule::new(&ParamAssignment::new(&c, Mode::Generic));
            (c, special, gen)
        })
        .collect()
    })
}

/// Class index, mode flag, a word and a permutation seed for a second word of the same weight.
fn setup() -> impl Strategy<Value = (usize, bool, Vec<usize>, Vec<usize>, i64, i64)> {
    (0..4usize, any::<bool>()).prop_flat_map(|(ci, generic)| {
        let rank = classes()[ci].0.rank.rank();
        let word = prop::collection::vec(1..=rank, 0..5);
        word.prop_flat_map(move |w| {
            let perm = Just(w.clone()).prop_shuffle();
            (Just(ci), Just(generic), Just(w), perm, -3i64..=3, -3i64..=3)
        })
    })
}

fn module(ci: usize, generic: bool) -> &'static VermaModule {
    let (_, s, g) = &classes()[ci];
    if generic {
        g
    } else {
        s
    }
}

fn combo(v: &VermaModule, w1: &[usize], w2: &[usize], a: i64, b: i64) -> ModVec {
    let rank = v.rank();
    let mut wv = WordVector::zero(Word(w1.to_vec()).offset(rank));
    wv.add_term(Word(w1.to_vec()), &FracScalar::from_int(a));
    wv.add_term(Word(w2.to_vec()), &FracScalar::from_int(b));
    v.vector(&wv).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ef_commutator((ci, generic, w1, w2, a, b) in setup(), i in 1usize..=4, j in 1usize..=4) {
        let v = module(ci, generic);
        let rank = v.rank();
        let (i, j) = ((i - 1) % rank + 1, (j - 1) % rank + 1);
        let x = combo(v, &w1, &w2, a, b);
        let ef = v.apply_e(i, &v.apply_f(j, &x).unwrap()).unwrap();
        let fe = v.apply_f(j, &v.apply_e(i, &x).unwrap()).unwrap();
        let lhs = ef.sub(&fe);
        let rhs = if i == j { x.scale(&gauss_bracket(v.k_value(i, &x.beta))) } else { ModVec::zero(x.beta.clone()) };
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn normal_form_idempotent_and_linear((ci, generic, w1, w2, a, b) in setup()) {
        let v = module(ci, generic);
        let rank = v.rank();
        let u1 = WordVector::word(Word(w1.clone()), rank);
        let u2 = WordVector::word(Word(w2.clone()), rank);
        let n1 = v.normal_form(&u1).unwrap();
        prop_assert_eq!(v.normal_form(&n1).unwrap(), n1.clone());
        let (ca, cb) = (FracScalar::from_int(a), FracScalar::from_int(b));
        let sum = u1.scale(&ca).add(&u2.scale(&cb)).unwrap();
        let n2 = v.normal_form(&u2).unwrap();
        let expected = n1.scale(&ca).add(&n2.scale(&cb)).unwrap();
        prop_assert_eq!(v.normal_form(&sum).unwrap(), v.normal_form(&expected).unwrap());
    }

    #[test]
    fn dimension_is_word_count_minus_relations(ci in 0..4usize, seed in prop::collection::vec(0i32..=2, 4)) {
        let (class, v, _) = &classes()[ci];
        let delta = class.delta();
        let beta = RootVec(delta.0.iter().zip(&seed).map(|(&d, &s)| s.min(d)).collect());
        let words = enumerate_words(&beta, v.cap()).unwrap();
        let rel = relation_space(class, &words, v.cap()).unwrap();
        let kostant = kostant_dim(class, &beta) as usize;
        prop_assert_eq!(words.len() - rel.rank(), kostant);
        prop_assert_eq!(v.dim(&beta).unwrap(), kostant);
    }
}
