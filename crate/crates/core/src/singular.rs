//! Explicit vectors of weight `λ - δ` and the checks built on them.
//!
//! Everything is written for the symmetric subalgebra `g' = g_{p+2}` with local
//! simple roots `α_1..α_{p+2}`; local root `k` is global root `k + shift`.

use crate::coeff::{gauss_bracket, FracScalar, Monomial, Var};
use crate::error::{QError, Result};
use crate::linalg::echelon_of;
use crate::rootdata::{ConjClass, Mode, RootVec, Series};
use crate::verma::{ModVec, VermaModule, Word, WordVector};
use serde::Serialize;

/// `x_i = prefix · [f_1, f_2]_a · inner`, letters local.
#[derive(Clone, Debug)]
struct XShape {
    prefix: Vec<usize>,
    inner: Vec<usize>,
}

/// The vectors `ω`, `x_i`, `x'_i`, `x''_i`, `y_k` and the singular vector.
#[derive(Clone, Debug)]
pub struct ConstructionSet {
    pub class: ConjClass,
    /// Rank `p + 2` of `g'`.
    pub local_rank: usize,
    pub shift: usize,
    /// Local index `κ` (`p` for even `N`, `p + 1` for odd `N`).
    pub kappa_index: usize,
    pub omega: WordVector,
    /// `x_2 .. x_n`.
    pub x: Vec<WordVector>,
    /// `x'_2 .. x'_n`.
    pub x_prime: Vec<WordVector>,
    /// `x''_3 .. x''_n`.
    pub x_second: Vec<WordVector>,
    /// `y_2 .. y_{n-1}`, or `y_2` alone when `n = 2`.
    pub y: Vec<WordVector>,
    /// `c_2 .. c_n`.
    pub c: Vec<FracScalar>,
    pub v_singular: WordVector,
}

/// `a = q + q^{-1}`.
pub fn commutator_parameter() -> FracScalar {
    &FracScalar::q(1) + &FracScalar::q(-1)
}

/// Closed-form coefficients `c_2 .. c_n` for a symmetric algebra of rank `n`.
pub fn c_coefficients(series: Series, n: usize) -> Vec<FracScalar> {
    (2..=n)
        .map(|i| match series {
            Series::B => {
                let k = 2 * (n - i) as i32 - 1;
                let c = &FracScalar::s(k) + &FracScalar::s(-k);
                if i % 2 == 1 {
                    -c
                } else {
                    c
                }
            }
            Series::D if i + 2 <= n => {
                let k = (n - 1 - i) as i32;
                let m = Monomial::minus_one() * Monomial::q(1);
                &FracScalar::monomial(m.pow(k)) + &FracScalar::monomial(m.pow(-k))
            }
            Series::D => FracScalar::one(),
        })
        .collect()
}

/// Left-hand sides of the linear recurrence fixing `c_2 .. c_n` up to scale;
/// each must vanish. Equations touching an index below 2 are dropped.
pub fn recurrence_residuals(series: Series, n: usize, c: &[FracScalar]) -> Vec<FracScalar> {
    let a = commutator_parameter();
    let at = |i: usize| &c[i - 2];
    let three = |i: usize| &(at(i - 1) + &(&a * at(i))) + at(i + 1);
    let mut out = Vec::new();
    match series {
        Series::B => {
            if n >= 3 {
                out.extend((3..n).map(three));
                out.push(at(n - 1) + at(n));
            }
        }
        Series::D => {
            out.extend((3..n.saturating_sub(2)).map(three));
            if n >= 5 {
                out.push(&(&(at(n - 3) + &(&a * at(n - 2))) + at(n - 1)) + at(n));
            }
            out.push(at(n - 2) + &(&a * at(n - 1)));
            out.push(at(n - 2) + &(&a * at(n)));
        }
    }
    out
}

fn descending(from: usize, to: usize) -> Vec<usize> {
    if from < to {
        Vec::new()
    } else {
        (to..=from).rev().collect()
    }
}

fn ascending(from: usize, to: usize) -> Vec<usize> {
    (from..=to).collect()
}

fn x_shapes(series: Series, n: usize, omega: &[usize]) -> Vec<XShape> {
    let with_omega = |mut v: Vec<usize>| {
        v.extend_from_slice(omega);
        v
    };
    match series {
        Series::B => (2..=n)
            .map(|i| {
                let mut inner = ascending(i + 1, n);
                inner.push(n);
                XShape { prefix: descending(i, 3), inner: with_omega(inner) }
            })
            .collect(),
        Series::D => {
            let mut out: Vec<XShape> = (2..=n - 2)
                .map(|i| {
                    let mut inner = ascending(i + 1, n - 2);
                    inner.extend([n - 1, n]);
                    XShape { prefix: descending(i, 3), inner: with_omega(inner) }
                })
                .collect();
            let tail = descending(n - 2, 3);
            out.push(XShape { prefix: [vec![n - 1], tail.clone()].concat(), inner: with_omega(vec![n]) });
            out.push(XShape { prefix: [vec![n], tail].concat(), inner: with_omega(vec![n - 1]) });
            out
        }
    }
}

impl ConstructionSet {
    /// Builds every vector for the embedded symmetric algebra of `class`.
    pub fn build(class: &ConjClass) -> Result<Self> {
        let series = class.series();
        let local_rank = class.sub_rank();
        let shift = class.shift();
        if local_rank < 2 || (series == Series::D && local_rank < 4) {
            return Err(QError::Unsupported(format!("{}: embedded algebra too small", class.label())));
        }
        let n = local_rank;
        let rank = class.n();
        let kappa_index = match series {
            Series::B => class.p + 1,
            Series::D => class.p,
        };
        let g = |letters: &[usize]| Word(letters.iter().map(|&k| k + shift).collect());
        let a = commutator_parameter();
        let top = WordVector::highest(rank);
        let comm = |v: &WordVector| v.q_commutator(&g(&[1]), &g(&[2]), &a);
        let omega_letters = descending(kappa_index, 2);
        let omega = WordVector::word(g(&omega_letters), rank);
        let shapes = x_shapes(series, n, &omega_letters);
        let inner = |s: &XShape| top.left_mul(&g(&s.inner));
        let x: Vec<WordVector> = shapes.iter().map(|s| comm(&inner(s)).left_mul(&g(&s.prefix))).collect();
        let x_prime: Vec<WordVector> = shapes
            .iter()
            .map(|s| match s.prefix.split_first() {
                None => inner(s).left_mul(&g(&[1])),
                Some((_, rest)) => comm(&inner(s)).left_mul(&g(rest)),
            })
            .collect();
        let x_second = shapes
            .iter()
            .filter_map(|s| s.prefix.split_first())
            .zip(shapes.iter().skip(1))
            .map(|((_, rest), s)| inner(s).left_mul(&g(&[2])).left_mul(&g(rest)))
            .collect();
        let y = if n == 2 {
            vec![comm(&top.left_mul(&g(&[2])))]
        } else {
            (2..n).map(|k| comm(&top.left_mul(&g(&descending(k, 2)))).left_mul(&g(&descending(k, 3)))).collect()
        };
        let c = c_coefficients(series, n);
        let mut v_singular = WordVector::zero(x[0].beta.clone());
        for (ci, xi) in c.iter().zip(x.iter()) {
            v_singular = v_singular.add(&xi.scale(ci))?;
        }
        Ok(Self { class: class.clone(), local_rank, shift, kappa_index, omega, x, x_prime, x_second, y, c, v_singular })
    }

    /// Global index of local root `k`.
    pub fn global(&self, k: usize) -> usize {
        k + self.shift
    }

    pub fn delta(&self) -> RootVec {
        self.class.delta()
    }
}

/// Named claims checked by [`verify_lemma`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaName {
    OmegaF,
    OmegaE,
    YZero,
    XKer,
    XprimeNonzero,
    EAction,
    Basis,
}

impl LemmaName {
    pub const ALL: [LemmaName; 7] = [
        LemmaName::OmegaF,
        LemmaName::OmegaE,
        LemmaName::YZero,
        LemmaName::XKer,
        LemmaName::XprimeNonzero,
        LemmaName::EAction,
        LemmaName::Basis,
    ];

    pub fn id(self) -> &'static str {
        match self {
            LemmaName::OmegaF => "omega_f",
            LemmaName::OmegaE => "omega_e",
            LemmaName::YZero => "y_zero",
            LemmaName::XKer => "x_ker",
            LemmaName::XprimeNonzero => "xprime_nonzero",
            LemmaName::EAction => "e_action",
            LemmaName::Basis => "basis",
        }
    }

    /// Statement of the claim.
    pub fn anchor(self) -> &'static str {
        match self {
            LemmaName::OmegaF => "omega is annihilated by f_i for 3 <= i <= kappa",
            LemmaName::OmegaE => "omega is annihilated by e_i for i != kappa",
            LemmaName::YZero => "y_k = 0 for k = 2..n-1, and y_2 != 0 when n = 2",
            LemmaName::XKer => "x_i lie in ker e_1",
            LemmaName::XprimeNonzero => "x'_i != 0, with the Shapovalov values of omega, x'_2 and x''_i",
            LemmaName::EAction => "e_j x_i = 0 for orthogonal roots, e_j x_i ~ x'_j otherwise",
            LemmaName::Basis => "x_2..x_n form a basis of ker e_1 at weight lambda - delta",
        }
    }
}

/// Outcome of one named claim.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub name: LemmaName,
    pub pass: bool,
    /// The claim does not apply to this class; `witness` explains.
    pub skipped: bool,
    pub witness: String,
}

fn vec_of(verma: &VermaModule, v: &WordVector) -> Result<ModVec> {
    verma.vector(v)
}

/// Checks one named claim exactly.
pub fn verify_lemma(name: LemmaName, cons: &ConstructionSet, verma: &VermaModule) -> Result<LemmaCheck> {
    let n = cons.local_rank;
    let done = |pass: bool, witness: String| Ok(LemmaCheck { name, pass, skipped: false, witness });
    match name {
        LemmaName::OmegaF => {
            let omega = vec_of(verma, &cons.omega)?;
            let dim = verma.dim(&omega.beta)?;
            if cons.kappa_index < 3 {
                return Ok(LemmaCheck {
                    name,
                    pass: !omega.is_zero(),
                    skipped: true,
                    witness: format!(
                        "kappa = {} < 3, nothing to check; omega != 0, weight space dim {dim}",
                        cons.kappa_index
                    ),
                });
            }
            let mut killed = Vec::new();
            for i in 3..=cons.kappa_index {
                killed.push(verma.apply_f(cons.global(i), &omega)?.is_zero());
            }
            done(
                !omega.is_zero() && dim == 1 && killed.iter().all(|&k| k),
                format!(
                    "f_i omega = 0 for i = 3..{}: {killed:?}; omega != 0; weight space dim {dim}",
                    cons.kappa_index
                ),
            )
        }
        LemmaName::OmegaE => {
            let omega = vec_of(verma, &cons.omega)?;
            let kappa = cons.global(cons.kappa_index);
            let mut bad = Vec::new();
            for i in (1..=verma.rank()).filter(|&i| i != kappa) {
                if !verma.apply_e(i, &omega)?.is_zero() {
                    bad.push(i);
                }
            }
            done(bad.is_empty(), format!("e_i omega = 0 for all global i != {kappa}; failures {bad:?}"))
        }
        LemmaName::YZero => {
            let ys: Vec<bool> = cons.y.iter().map(|y| vec_of(verma, y).map(|v| v.is_zero())).collect::<Result<_>>()?;
            if n == 2 {
                return Ok(LemmaCheck {
                    name,
                    pass: !ys[0],
                    skipped: false,
                    witness: format!("excluded case n = 2: y_2 != 0 is {}", !ys[0]),
                });
            }
            done(ys.iter().all(|&z| z), format!("y_k = 0 for k = 2..{}: {ys:?}", n - 1))
        }
        LemmaName::XKer => {
            let e1 = cons.global(1);
            let zs: Vec<bool> = cons
                .x
                .iter()
                .map(|x| vec_of(verma, x).and_then(|v| verma.apply_e(e1, &v)).map(|v| v.is_zero()))
                .collect::<Result<_>>()?;
            done(zs.iter().all(|&z| z), format!("e_1 x_i = 0 for i = 2..{n}: {zs:?}"))
        }
        LemmaName::XprimeNonzero => xprime_check(cons, verma),
        LemmaName::EAction => e_action_check(cons, verma),
        LemmaName::Basis => basis_check(cons, verma),
    }
}

fn single_word(v: &WordVector) -> Option<Word> {
    (v.terms.len() == 1).then(|| v.terms.keys().next().cloned()).flatten()
}

fn xprime_check(cons: &ConstructionSet, verma: &VermaModule) -> Result<LemmaCheck> {
    let n = cons.local_rank;
    let name = LemmaName::XprimeNonzero;
    let xp: Vec<ModVec> = cons.x_prime.iter().map(|x| vec_of(verma, x)).collect::<Result<_>>()?;
    let nonzero: Vec<bool> = xp.iter().map(|v| !v.is_zero()).collect();
    let delta = cons.delta();
    let d = |local: &[usize]| local.iter().fold(delta.clone(), |b, &k| b.add_simple(cons.global(k), -1));
    let mut dims_ok = verma.dim(&d(&[2]))? == 1;
    for i in 3..=n {
        dims_ok &= verma.dim(&d(&[i]))? == 2 && verma.dim(&d(&[i, 1]))? == 1;
    }
    let pair = verma.param.simple_pairing(cons.global(2));
    let omega_word = single_word(&cons.omega).expect("omega is a monomial");
    let omega = vec_of(verma, &cons.omega)?;
    let omega_norm = verma.shapovalov(&omega_word, &omega)?;
    let omega_ok = omega_norm == gauss_bracket(pair);
    let x2_word = single_word(&cons.x_prime[0]).expect("x'_2 is a monomial");
    let x2_norm = verma.shapovalov(&x2_word, &xp[0])?;
    let x2_ok = x2_norm == omega_norm;
    let x2_bracket = x2_norm == gauss_bracket(pair);
    let expected = &gauss_bracket(pair * Monomial::q(-1)) * &omega_norm;
    let mut second_ok = Vec::new();
    for xs in &cons.x_second {
        let w = single_word(xs).expect("x''_i is a monomial");
        second_ok.push(verma.shapovalov(&w, &vec_of(verma, xs)?)? == expected);
    }
    let pass = nonzero.iter().all(|&b| b) && dims_ok;
    Ok(LemmaCheck {
        name,
        pass,
        skipped: false,
        witness: format!(
            "x'_i != 0: {nonzero:?}; weight dims 1/2/1: {dims_ok}; <omega*,omega> = [(a2,l)]: {omega_ok}; \
             <x'_2*,x'_2> = {x2_norm}: equals <omega*,omega> {x2_ok}, equals [(a2,l)] {x2_bracket}; <x''_i*,x''_i> = [(a2,l)-1]<omega*,omega>: {second_ok:?}"
        ),
    })
}

fn e_action_check(cons: &ConstructionSet, verma: &VermaModule) -> Result<LemmaCheck> {
    let n = cons.local_rank;
    let rank = &cons.class.rank;
    let xs: Vec<ModVec> = cons.x.iter().map(|x| vec_of(verma, x)).collect::<Result<_>>()?;
    let xp: Vec<ModVec> = cons.x_prime.iter().map(|x| vec_of(verma, x)).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut proportional = 0;
    let mut zero = 0;
    for i in 2..=n {
        for j in 2..=n {
            let v = verma.apply_e(cons.global(j), &xs[i - 2])?;
            let orth = rank.cartan_pair2(cons.global(i), cons.global(j)) == 0;
            if orth {
                if v.is_zero() {
                    zero += 1;
                } else {
                    failures.push(format!("e_{j} x_{i} != 0"));
                }
            } else if v.is_zero() || v.ratio_to(&xp[j - 2]).is_some() {
                proportional += 1;
            } else {
                failures.push(format!("e_{j} x_{i} not proportional to x'_{j}"));
            }
        }
    }
    Ok(LemmaCheck {
        name: LemmaName::EAction,
        pass: failures.is_empty(),
        skipped: false,
        witness: format!(
            "{zero} orthogonal pairs vanish, {proportional} adjacent pairs proportional; failures {failures:?}"
        ),
    })
}

fn basis_check(cons: &ConstructionSet, verma: &VermaModule) -> Result<LemmaCheck> {
    let n = cons.local_rank;
    let delta = cons.delta();
    let ker = verma.kernel_of_e(&delta, &[cons.global(1)])?;
    let xs: Vec<ModVec> = cons.x.iter().map(|x| vec_of(verma, x)).collect::<Result<_>>()?;
    let rank = echelon_of(xs.iter().map(|v| v.coords.clone())).rank();
    let in_kernel = xs
        .iter()
        .map(|v| verma.apply_e(cons.global(1), v).map(|w| w.is_zero()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    let (words, effective) = effective_monomials(cons, verma)?;
    let expected_effective = match cons.class.series() {
        Series::B => 2 * n - 2,
        Series::D => 2 * n - 3,
    };
    Ok(LemmaCheck {
        name: LemmaName::Basis,
        pass: ker.len() == n - 1 && rank == n - 1 && in_kernel && effective == expected_effective,
        skipped: false,
        witness: format!(
            "dim ker e_1 = {} (expected {}), rank of x-family = {rank}, all in kernel {in_kernel}; \
             {words} distinct words, {effective} up to proportionality (expected {expected_effective})",
            ker.len(),
            n - 1
        ),
    })
}

/// Distinct words in the `x`-family, and the number of classes of those words
/// up to nonzero proportionality in the module.
pub fn effective_monomials(cons: &ConstructionSet, verma: &VermaModule) -> Result<(usize, usize)> {
    let mut words: Vec<Word> = cons.x.iter().flat_map(|x| x.support()).collect();
    words.sort();
    words.dedup();
    let rank = verma.rank();
    let mut classes: Vec<ModVec> = Vec::new();
    for w in &words {
        let v = verma.vector(&WordVector::word(w.clone(), rank))?;
        if v.is_zero() {
            continue;
        }
        if !classes.iter().any(|c| v.ratio_to(c).is_some()) {
            classes.push(v);
        }
    }
    Ok((words.len(), classes.len()))
}

/// Result of the singular vector analysis at weight `λ - δ`.
#[derive(Clone, Debug, Serialize)]
pub struct SingularReport {
    pub mode: Mode,
    /// Dimension of the common kernel of all `e_i` at `λ - δ`.
    pub singular_dim: usize,
    /// Common kernel of `e_i`, `i` global and different from the image of `α_2`.
    pub relaxed_dim: usize,
    pub v_nonzero: bool,
    /// Every `e_i` kills `Σ c_i x_i`.
    pub v_annihilated: bool,
    /// `Σ c_i x_i` spans the singular space (specialized mode).
    pub proportional: Option<bool>,
    pub recurrence_holds: bool,
    /// Condition on `λ` for the vector to be singular.
    pub condition: String,
    pub condition_holds: bool,
    /// `e_{α_2} v = E_2 x'_2` in generic mode, and whether `E_2` vanishes on the condition.
    pub e2_coefficient: Option<String>,
    pub e2_vanishes_on_condition: Option<bool>,
}

impl SingularReport {
    pub fn pass(&self) -> bool {
        let base = self.v_nonzero && self.recurrence_holds;
        match self.mode {
            Mode::Specialized => {
                base && self.condition_holds
                    && self.singular_dim == 1
                    && self.v_annihilated
                    && self.proportional == Some(true)
            }
            Mode::Generic => {
                base && self.singular_dim == 0 && !self.v_annihilated && self.e2_vanishes_on_condition == Some(true)
            }
        }
    }
}

/// Singular space at `λ - δ`, compared against `Σ c_i x_i`.
pub fn verify_singular(cons: &ConstructionSet, verma: &VermaModule) -> Result<SingularReport> {
    let class = &cons.class;
    let delta = cons.delta();
    let v = verma.vector(&cons.v_singular)?;
    let all: Vec<usize> = (1..=verma.rank()).collect();
    let a2 = cons.global(2);
    let relaxed: Vec<usize> = all.iter().copied().filter(|&i| i != a2).collect();
    let singular = verma.kernel_of_e(&delta, &all)?;
    let relaxed_dim = verma.kernel_of_e(&delta, &relaxed)?.len();
    let mut v_annihilated = true;
    for &i in &all {
        v_annihilated &= verma.apply_e(i, &v)?.is_zero();
    }
    let proportional = (verma.param.mode == Mode::Specialized)
        .then(|| singular.len() == 1 && !v.is_zero() && v.ratio_to(&singular[0]).is_some());
    let recurrence_holds = recurrence_residuals(class.series(), cons.local_rank, &cons.c).iter().all(|r| r.is_zero());
    let big_p = class.big_p() as i32;
    let target = Monomial::minus_one() * Monomial::q(-big_p);
    let condition = format!("q^{{2(alpha_{a2},lambda)}} = -q^{{{}}}", -big_p);
    let condition_holds = verma.param.simple_pairing(a2).pow(2) == target;
    let (e2_coefficient, e2_vanishes_on_condition) = if verma.param.mode == Mode::Generic {
        let xp2 = verma.vector(&cons.x_prime[0])?;
        let image = verma.apply_e(a2, &v)?;
        let e2 = image.ratio_to(&xp2).ok_or_else(|| QError::Unsupported("e_2 v is not a multiple of x'_2".into()))?;
        let special = Monomial::unit(1) * Monomial::s(-big_p);
        let at = e2.substitute_monomial(Var::T, &special)?;
        (Some(e2.to_string()), Some(at.is_zero() && !e2.is_zero()))
    } else {
        (None, None)
    };
    Ok(SingularReport {
        mode: verma.param.mode,
        singular_dim: singular.len(),
        relaxed_dim,
        v_nonzero: !v.is_zero(),
        v_annihilated,
        proportional,
        recurrence_holds,
        condition,
        condition_holds,
        e2_coefficient,
        e2_vanishes_on_condition,
    })
}

/// Coefficients of `u_{ν_2} = Σ_k coeff_k · w_{m+1-k} ⊗ f_{m+1-k} ... f_m v_λ`, `k = 0..m`,
/// with `w` indices 1-based and the word for `k = 0` empty.
#[derive(Clone, Debug)]
pub struct UNu2 {
    pub terms: Vec<(usize, Word, FracScalar)>,
}

/// The singular vector of weight `λ + ε_{m+1}` in `C^N ⊗ M̂_λ`, for classes without `gl` blocks.
pub fn u_nu2(class: &ConjClass, verma: &VermaModule) -> Result<UNu2> {
    if class.ell() != 0 {
        return Err(QError::Unsupported(format!("{}: u_nu2 needs l = 0", class.label())));
    }
    let m = class.m;
    let lead = gauss_bracket(verma.param.simple_pairing(m));
    let mut terms = vec![(m + 1, Word::empty(), lead)];
    let minus_q_inv = Monomial::minus_one() * Monomial::q(-1);
    for k in 1..=m {
        terms.push((m + 1 - k, Word(ascending(m + 1 - k, m)), FracScalar::monomial(minus_q_inv.pow(k as i32))));
    }
    Ok(UNu2 { terms })
}

/// Scalar `q^{-m} [(α_m, λ) + m]` of the congruence `u_{ν_2} ≡ scalar · w_{m+1} ⊗ v_λ`.
pub fn u_nu2_scalar(class: &ConjClass, verma: &VermaModule) -> FracScalar {
    let m = class.m as i32;
    gauss_bracket(verma.param.simple_pairing(class.m) * Monomial::q(m)).mul_monomial(&Monomial::q(-m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{ClassData, ParamAssignment};

    fn setup(n: usize, blocks: &[usize], m: usize, p: usize, mode: Mode) -> (ConstructionSet, VermaModule) {
        let class = ClassData { n_dim: n, gl_blocks: blocks.to_vec(), m, p }.validate().unwrap();
        let cons = ConstructionSet::build(&class).unwrap();
        (cons, VermaModule::new(&ParamAssignment::new(&class, mode)))
    }

    #[test]
    fn closed_form_coefficients() {
        let c7 = c_coefficients(Series::B, 3);
        let h = &FracScalar::s(1) + &FracScalar::s(-1);
        assert_eq!(c7, vec![h.clone(), -h]);
        let c8 = c_coefficients(Series::D, 4);
        assert_eq!(c8, vec![-commutator_parameter(), FracScalar::one(), FracScalar::one()]);
        for n in 2..=7 {
            let r = recurrence_residuals(Series::B, n, &c_coefficients(Series::B, n));
            assert_eq!(r.len(), n - 2);
            assert!(r.iter().all(|x| x.is_zero()), "B n = {n}");
        }
        for n in 4..=8 {
            let r = recurrence_residuals(Series::D, n, &c_coefficients(Series::D, n));
            assert_eq!(r.len(), n - 2);
            assert!(r.iter().all(|x| x.is_zero()), "D n = {n}");
        }
    }

    #[test]
    fn shapes_for_small_ranks() {
        let (c5, _) = setup(5, &[], 2, 0, Mode::Specialized);
        assert_eq!(c5.x.len(), 1);
        assert_eq!(c5.x[0].support(), vec![Word(vec![1, 2, 2]), Word(vec![2, 1, 2])]);
        let (c8, _) = setup(8, &[], 2, 2, Mode::Specialized);
        assert_eq!(c8.x.len(), 3);
        assert_eq!(c8.x[2].support(), vec![Word(vec![4, 1, 2, 3, 2]), Word(vec![4, 2, 1, 3, 2])]);
    }

    #[test]
    fn lemmas_symmetric() {
        for n in [5, 7, 8, 9] {
            let class = ClassData::symmetric(n).validate().unwrap();
            let cons = ConstructionSet::build(&class).unwrap();
            let verma = VermaModule::new(&ParamAssignment::new(&class, Mode::Generic));
            for name in LemmaName::ALL {
                let r = verify_lemma(name, &cons, &verma).unwrap();
                assert!(r.pass, "so({n}) {name:?}: {}", r.witness);
            }
        }
    }

    #[test]
    fn shapovalov_values() {
        for n in [7, 8, 9] {
            let (cons, verma) = setup(n, &[], 2, n / 2 - 2, Mode::Generic);
            let r = verify_lemma(LemmaName::XprimeNonzero, &cons, &verma).unwrap();
            assert!(!r.witness.contains("false"), "so({n}): {}", r.witness);
        }
        // omega = v_lambda here, so <omega*,omega> = 1 while <x'_2*,x'_2> = [(a2,l)]
        let (cons, verma) = setup(5, &[], 2, 0, Mode::Generic);
        let r = verify_lemma(LemmaName::XprimeNonzero, &cons, &verma).unwrap();
        assert!(r.pass);
        assert!(r.witness.contains("equals <omega*,omega> false, equals [(a2,l)] true"), "{}", r.witness);
    }

    #[test]
    fn singular_both_modes() {
        for n in [5, 7, 8] {
            for mode in [Mode::Specialized, Mode::Generic] {
                let class = ClassData::symmetric(n).validate().unwrap();
                let cons = ConstructionSet::build(&class).unwrap();
                let verma = VermaModule::new(&ParamAssignment::new(&class, mode));
                let r = verify_singular(&cons, &verma).unwrap();
                assert!(r.pass(), "so({n}) {mode:?}: {r:?}");
            }
        }
    }

    #[test]
    fn so5_condition_string() {
        let (cons, verma) = setup(5, &[], 2, 0, Mode::Specialized);
        let r = verify_singular(&cons, &verma).unwrap();
        assert_eq!(r.condition, "q^{2(alpha_2,lambda)} = -q^{-1}");
        assert!(r.condition_holds);
    }

    #[test]
    fn scaling_keeps_singular() {
        let (cons, verma) = setup(7, &[], 2, 1, Mode::Specialized);
        let c = &FracScalar::q(3) + &FracScalar::from_int(5);
        let v = verma.vector(&cons.v_singular.scale(&c)).unwrap();
        for i in 1..=3 {
            assert!(verma.apply_e(i, &v).unwrap().is_zero());
        }
    }

    #[test]
    fn general_class_so9() {
        let (cons, verma) = setup(9, &[1], 2, 1, Mode::Specialized);
        assert_eq!(cons.shift, 1);
        for name in LemmaName::ALL {
            let r = verify_lemma(name, &cons, &verma).unwrap();
            assert!(r.pass, "{name:?}: {}", r.witness);
        }
        let r = verify_singular(&cons, &verma).unwrap();
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn u_nu2_coefficients() {
        let (_, verma) = setup(7, &[], 2, 1, Mode::Generic);
        let u = u_nu2(&verma.class, &verma).unwrap();
        assert_eq!(u.terms.len(), 3);
        let t = Monomial::var(Var::T);
        assert_eq!(u.terms[0].2, gauss_bracket(t));
        assert_eq!(u.terms[1].2, -FracScalar::q(-1));
        assert_eq!(u.terms[2].2, FracScalar::q(-2));
        assert_eq!(u.terms[2].1, Word(vec![1, 2]));
    }
}
