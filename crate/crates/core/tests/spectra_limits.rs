use qclass_core::spectra::{central_character_at, classical_trace, Point};
use qclass_core::{ClassData, ConjClass, GaussianRational, Mode, ParamAssignment};

/// Distance of the character at `s = 1 + ε` from the classical trace, with `z_i = 3/2`.
fn gap(class: &ConjClass, k: i32, denom: i64) -> f64 {
    let lambda = ParamAssignment::new(class, Mode::Specialized).lambda();
    let z = vec![GaussianRational::rational(3, 2); class.ell()];
    let mu: Vec<GaussianRational> = z.iter().map(|x| x * x).collect();
    let s = GaussianRational::rational(denom + 1, denom);
    let v = central_character_at(&class.rank, &lambda, k, &Point { s, z }).unwrap();
    let cl = classical_trace(class, &mu, k).unwrap();
    let (re, im) = (v - cl).to_f64_pair();
    re.hypot(im)
}

#[test]
fn convergence_is_at_least_first_order() {
    let classes =
        [ClassData::symmetric(7), ClassData::symmetric(8), ClassData { n_dim: 9, gl_blocks: vec![1], m: 2, p: 1 }];
    for data in classes {
        let class = data.validate().unwrap();
        for k in 1..=3 {
            let (coarse, fine) = (gap(&class, k, 1_000), gap(&class, k, 10_000));
            if coarse == 0.0 {
                // Some characters match the classical trace identically in s.
                assert_eq!(fine, 0.0);
                continue;
            }
            let ratio = coarse / fine;
            assert!(ratio > 7.0, "{} k={k}: ratio {ratio}", class.label());
        }
    }
}
