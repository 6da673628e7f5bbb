//! The ten acceptance criteria, one PASS/FAIL line each.

use qclass_core::natrep::{check_reflection_relations, qybe_residual, smatrix, spectral_check, NatAction};
use qclass_core::rootdata::LambdaEval;
use qclass_core::singular::{verify_lemma, verify_singular, ConstructionSet, LemmaName};
use qclass_core::spectra::{
    classical_ideal_check, classical_limit, hw_eigenvalue, min_poly, q_eigenvalues, qtrace_anchor, ClassicalPoint,
    PolyMode,
};
use qclass_core::tensor::{verify_filtration, verify_span, verify_u_nu2_congruence};
use qclass_core::verma::VermaModule;
use qclass_core::{
    ClassData, ConjClass, FracScalar, GaussianRational, Mode, Monomial, OrthoRank, ParamAssignment, Var, WeightVec,
};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn symmetric(n: usize) -> ConjClass {
    ClassData::symmetric(n).validate().unwrap()
}

fn so9_l1() -> ConjClass {
    ClassData { n_dim: 9, gl_blocks: vec![1], m: 2, p: 1 }.validate().unwrap()
}

fn verma(class: &ConjClass, mode: Mode) -> VermaModule {
    VermaModule::new(&ParamAssignment::new(class, mode))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_rmatrix() -> Outcome {
    for n in [5, 7, 8, 9] {
        let start = Instant::now();
        let nat = NatAction::new(OrthoRank::new(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(qybe_residual(&nat).is_zero(), || format!("N={n}: QYBE residual nonzero"))?;
        let eig = [FracScalar::q(1), -FracScalar::q(-1), FracScalar::q(1 - n as i32)];
        ensure(spectral_check(&smatrix(&nat), &eig).pass(), || format!("N={n}: S spectrum"))?;
        let r = check_reflection_relations(&nat);
        ensure(r.kappa_idempotent, || format!("N={n}: kappa^2 != kappa"))?;
        ensure(r.pass(), || format!("N={n}: reflection identities {r:?}"))?;
        ensure(r.scalar == FracScalar::q(1 - n as i32), || format!("N={n}: kappa scalar {}", r.scalar))?;
        if n == 9 {
            let t = start.elapsed();
            ensure(t <= Duration::from_secs(120), || format!("N=9 took {t:?}"))?;
        }
    }
    Ok("N = 5, 7, 8, 9".into())
}

fn c2_verma_dims() -> Outcome {
    for n in [5, 7, 8, 9] {
        let class = symmetric(n);
        let v = verma(&class, Mode::Specialized);
        let delta = class.delta();
        let dim = v.dim(&delta).map_err(|e| e.to_string())?;
        ensure(dim == n - 3, || format!("N={n}: dim {dim}"))?;
        let ker = v.kernel_of_e(&delta, &[class.shift() + 1]).map_err(|e| e.to_string())?.len();
        ensure(ker == class.sub_rank() - 1, || format!("N={n}: ker e_1 dim {ker}"))?;
    }
    Ok("dim = N-3, ker e_1 = n-1".into())
}

fn c3_lemmas() -> Outcome {
    for n in [5, 7, 8, 9] {
        let class = symmetric(n);
        let v = verma(&class, Mode::Specialized);
        let cons = ConstructionSet::build(&class).map_err(|e| e.to_string())?;
        for name in LemmaName::ALL {
            let r = verify_lemma(name, &cons, &v).map_err(|e| e.to_string())?;
            ensure(r.pass, || format!("N={n}: {} failed: {}", name.id(), r.witness))?;
        }
    }
    let class = symmetric(5);
    let v = verma(&class, Mode::Specialized);
    let cons = ConstructionSet::build(&class).map_err(|e| e.to_string())?;
    let y2 = v.vector(&cons.y[0]).map_err(|e| e.to_string())?;
    ensure(!y2.is_zero(), || "so(5): y_2 vanishes".into())?;
    Ok("all lemmas for N = 5, 7, 8, 9; so(5) y_2 != 0".into())
}

fn c4_singular() -> Outcome {
    for n in [5, 7, 8, 9] {
        let class = symmetric(n);
        let cons = ConstructionSet::build(&class).map_err(|e| e.to_string())?;
        let sp = verify_singular(&cons, &verma(&class, Mode::Specialized)).map_err(|e| e.to_string())?;
        ensure(sp.singular_dim == 1 && sp.proportional == Some(true) && sp.recurrence_holds, || {
            format!("N={n} specialized: {sp:?}")
        })?;
        let gen = verify_singular(&cons, &verma(&class, Mode::Generic)).map_err(|e| e.to_string())?;
        ensure(gen.singular_dim == 0, || format!("N={n} generic: dim {}", gen.singular_dim))?;
    }
    let class = so9_l1();
    let v = verma(&class, Mode::Specialized);
    let cons = ConstructionSet::build(&class).map_err(|e| e.to_string())?;
    let sing = v.vector(&cons.v_singular).map_err(|e| e.to_string())?;
    ensure(!sing.is_zero(), || "so(9) l=1: singular vector is zero".into())?;
    for i in 1..=class.rank.rank() {
        let e = v.apply_e(i, &sing).map_err(|e| e.to_string())?;
        ensure(e.is_zero(), || format!("so(9) l=1: e_{i} does not annihilate"))?;
    }
    Ok("dims 1/0 in both modes; so(9) l=1 annihilated by all e_i".into())
}

fn c5_filtration() -> Outcome {
    let limit = Duration::from_secs(600);
    for class in [symmetric(7), symmetric(8), so9_l1()] {
        let start = Instant::now();
        let r = verify_filtration(&verma(&class, Mode::Specialized)).map_err(|e| e.to_string())?;
        ensure(r.pass(), || format!("{}: {r:?}", class.label()))?;
        ensure(start.elapsed() <= limit, || format!("{}: too slow", class.label()))?;
    }
    for n in [5, 7, 8] {
        let class = symmetric(n);
        let start = Instant::now();
        let r = verify_span(&verma(&class, Mode::Specialized)).map_err(|e| e.to_string())?;
        ensure(r.pass(), || format!("N={n} span: {r:?}"))?;
        ensure(start.elapsed() <= limit, || format!("N={n} span: too slow"))?;
    }
    Ok("V_{l+2} = V_{l+3} for so7, so8, so9 l=1; span for so5, so7, so8".into())
}

fn c6_u_nu2() -> Outcome {
    for n in [7, 8] {
        let r = verify_u_nu2_congruence(&verma(&symmetric(n), Mode::Specialized)).map_err(|e| e.to_string())?;
        ensure(r.pass(), || format!("N={n}: {r:?}"))?;
    }
    Ok("so7, so8 with m = 2".into())
}

fn c7_spectrum() -> Outcome {
    for n in [5, 7, 8, 9] {
        let rank = OrthoRank::new(n).unwrap();
        let r = rank.rank();
        let lambda = LambdaEval::integral(&WeightVec::eps(r, 0, 2));
        let nus = [WeightVec::eps(r, 0, 2), WeightVec::eps(r, 1, 2), WeightVec::eps(r, 0, -2)];
        let expected = [Monomial::q(2), Monomial::q(-2), Monomial::q(2 - 2 * n as i32)];
        for (nu, want) in nus.iter().zip(expected) {
            let got = hw_eigenvalue(&rank, &lambda, nu);
            ensure(got == want, || format!("N={n}: eigenvalue {got} for {nu:?}"))?;
        }
        let nat = NatAction::new(rank).map_err(|e| e.to_string())?;
        let s = smatrix(&nat);
        let eig: Vec<FracScalar> = expected.iter().map(|m| FracScalar::monomial(*m)).collect();
        ensure(spectral_check(&s.mul(&s), &eig).pass(), || format!("N={n}: S^2 spectrum"))?;
    }
    for n in [5, 7, 8] {
        for k in 1..=2 {
            let a = qtrace_anchor(&OrthoRank::new(n).unwrap(), k).map_err(|e| e.to_string())?;
            ensure(a.holds, || format!("N={n}, k={k}: partial q-trace differs from {}", a.character))?;
        }
    }
    Ok("S^2 spectrum q^2, q^-2, q^(2-2N); q-trace k = 1, 2".into())
}

fn c8_degree_reduction() -> Outcome {
    let classes = [symmetric(5), symmetric(7), symmetric(8), symmetric(9), so9_l1()];
    for class in &classes {
        let ell = class.ell();
        let param = ParamAssignment::new(class, Mode::Specialized);
        let list = q_eigenvalues(&param, true);
        ensure(list.values.len() == 2 * ell + 2, || format!("{}: {} entries", class.label(), list.values.len()))?;
        ensure(list.distinct(), || format!("{}: repeated eigenvalue", class.label()))?;
        let mut limit: Vec<Monomial> = list.monomials().iter().map(|m| m.at_s_one()).collect();
        // Classical roots: z_i^2 and z_i^-2 per gl block, then -1 and 1.
        let mut classical: Vec<Monomial> = (1..=ell)
            .flat_map(|i| {
                let z2 = Monomial::var(Var::Z(i)).pow(2);
                [z2, z2.inv()]
            })
            .chain([Monomial::minus_one(), Monomial::ONE])
            .collect();
        let from_lib = min_poly(class, &list, PolyMode::Classical).roots;
        limit.sort();
        classical.sort();
        let mut lib_sorted = from_lib.clone();
        lib_sorted.sort();
        ensure(limit == classical, || format!("{}: limit {limit:?} vs {classical:?}", class.label()))?;
        ensure(lib_sorted == classical, || format!("{}: classical min poly {from_lib:?}", class.label()))?;
    }
    Ok("2l+2 distinct entries with the classical limit".into())
}

fn c9_classical_limit() -> Outcome {
    let mut worst: f64 = 0.0;
    for class in [symmetric(8), so9_l1()] {
        let param = ParamAssignment::new(&class, Mode::Specialized);
        let zeta = vec![GaussianRational::rational(3, 2); class.ell()];
        for k in 1..=4 {
            let r = classical_limit(&param, &zeta, k, [1e-4, 1e-5]).map_err(|e| e.to_string())?;
            ensure(r.relative_error <= 1e-6, || format!("{} k={k}: error {:e}", class.label(), r.relative_error))?;
            worst = worst.max(r.relative_error);
        }
    }
    Ok(format!("worst relative error {worst:.2e}"))
}

fn c10_ideal() -> Outcome {
    let point = ClassicalPoint::new(&symmetric(8), vec![]).map_err(|e| e.to_string())?;
    let r = classical_ideal_check(&point).map_err(|e| e.to_string())?;
    ensure(r.group_relation && r.min_poly_relation, || format!("relations fail: {r:?}"))?;
    ensure(r.pass(), || format!("{r:?}"))?;
    ensure(r.jacobian_rank == 48, || format!("Jacobian rank {}", r.jacobian_rank))?;
    Ok("Jacobian rank 48".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("R-matrix layer", c1_rmatrix),
        ("Verma dimensions", c2_verma_dims),
        ("lemma suite", c3_lemmas),
        ("singular vector", c4_singular),
        ("tensor filtration", c5_filtration),
        ("u_nu2 congruence", c6_u_nu2),
        ("spectrum anchor", c7_spectrum),
        ("degree reduction", c8_degree_reduction),
        ("classical limit of traces", c9_classical_limit),
        ("classical ideal", c10_ideal),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
