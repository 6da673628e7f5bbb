use qclass_core::rootdata::{kostant_dim, Series};
use qclass_core::{ClassData, ConjClass, Mode, Monomial, OrthoRank, ParamAssignment, RootVec};

/// All valid classes of so(N) for the supported N.
fn all_classes() -> Vec<ConjClass> {
    fn compositions(total: usize) -> Vec<Vec<usize>> {
        if total == 0 {
            return vec![vec![]];
        }
        (1..=total)
            .flat_map(|first| {
                compositions(total - first).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    let mut out = Vec::new();
    for n_dim in [5, 7, 8, 9] {
        let n = n_dim / 2;
        for m in 2..=n {
            for p in 0..=n - m {
                for blocks in compositions(n - m - p) {
                    let data = ClassData { n_dim, gl_blocks: blocks, m, p };
                    if let Ok(c) = data.validate() {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

/// Textbook Cartan matrix `a_ij = <α_i^∨, α_j>`, simple roots numbered with `α_n` at the end.
fn cartan_table(series: Series, n: usize) -> Vec<Vec<i32>> {
    let mut a: Vec<Vec<i32>> = (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
    for i in 0..n - 2 {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    match series {
        Series::B => {
            a[n - 2][n - 1] = -1;
            a[n - 1][n - 2] = -2;
        }
        Series::D => {
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
            if n > 2 {
                a[n - 2][n - 3] = -1;
                a[n - 3][n - 2] = -1;
            }
        }
    }
    a
}

#[test]
fn cartan_matrices_match_tables() {
    for n_dim in [5, 7, 8, 9] {
        let rank = OrthoRank::new(n_dim).unwrap();
        let n = rank.rank();
        let got: Vec<Vec<i32>> =
            (1..=n).map(|i| (1..=n).map(|j| 2 * rank.cartan_pair2(i, j) / rank.cartan_pair2(i, i)).collect()).collect();
        assert_eq!(got, cartan_table(rank.series(), n), "so({n_dim})");
    }
}

#[test]
fn kostant_at_simple_roots() {
    let classes = all_classes();
    assert!(classes.len() > 10);
    for class in classes {
        let n = class.rank.rank();
        // The Levi part ends at the boundary of each gl block.
        let mut ends = Vec::new();
        let mut acc = 0;
        for size in class.blocks.iter().copied().chain([class.m]) {
            acc += size;
            ends.push(acc);
        }
        for j in 1..=n {
            let expected = u64::from(ends.contains(&j));
            assert_eq!(kostant_dim(&class, &RootVec::simple(n, j)), expected, "{} at alpha_{j}", class.label());
        }
    }
}

#[test]
fn specialized_boundary_pairing() {
    for class in all_classes() {
        let param = ParamAssignment::new(&class, Mode::Specialized);
        let j = class.rank.rank() - class.p;
        let big_p = class.big_p() as i32;
        let sq = param.simple_pairing(j).pow(2);
        assert_eq!(sq, Monomial::minus_one() * Monomial::q(-big_p), "{}", class.label());
    }
}
