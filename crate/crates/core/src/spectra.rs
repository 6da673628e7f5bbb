//! Eigenvalues of the quantum coordinate matrix, minimal polynomials, central
//! characters through q-traces, and the classical ideal of a class.

use crate::coeff::{gauss_bracket, FracScalar, GaussianRational, Monomial};
use crate::error::{QError, Result};
use crate::linalg::{echelon_of, SparseVec};
use crate::natrep::{qtrace_leg1, smatrix, NatAction};
use crate::rootdata::{mu_vector, ConjClass, LambdaEval, OrthoRank, ParamAssignment, WeightVec};
use crate::tensor::nu_indices;
use serde::Serialize;

/// `q^{2(λ+ρ,ν) - 2(ρ,ε_1) + (ν,ν) - 1}`, the eigenvalue of `Q` on the highest
/// weight component of `C^N ⊗ M_λ` with weight `λ + ν`.
///
/// `nu` is in doubled epsilon coordinates, like every [`WeightVec`].
pub fn hw_eigenvalue(rank: &OrthoRank, lambda: &LambdaEval, nu: &WeightVec) -> Monomial {
    let rho = rank.rho();
    let eps1 = WeightVec::eps(rank.rank(), 0, 2);
    let s_exp = 2 * rho.pair_s(nu) - 2 * rho.pair_s(&eps1) + nu.pair_s(nu) - 2;
    lambda.pair(&nu.scaled(2)) * Monomial::s(s_exp)
}

/// Role of an eigenvalue in the list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum EigenTag {
    /// `μ_i`.
    Mu(usize),
    /// `μ_i^{-1} q^{-2N + 2(n_i + 1)}`.
    Reflected(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigenvalue {
    pub tag: EigenTag,
    pub value: Monomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueList {
    pub values: Vec<Eigenvalue>,
    /// The value removed in the quotient, `μ_{l+3} = μ_{l+1}^{-1} q^{-2N+2(m+1)}`.
    pub dropped: Option<Eigenvalue>,
}

impl EigenvalueList {
    /// Pairwise distinct as signed monomials.
    pub fn distinct(&self) -> bool {
        let v = &self.values;
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i].value != v[j].value))
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.values.iter().map(|e| e.value).collect()
    }
}

/// Eigenvalues of `Q` on `C^N ⊗ M̂_λ`, or on `C^N ⊗ M_λ` when `quotient` is set.
pub fn q_eigenvalues(param: &ParamAssignment, quotient: bool) -> EigenvalueList {
    let class = &param.class;
    let ell = class.ell();
    let mu = mu_vector(param);
    let nd = class.rank.dim() as i32;
    let sizes = class.block_sizes();
    let reflected = |i: usize| Eigenvalue {
        tag: EigenTag::Reflected(i),
        value: mu[i - 1].inv() * Monomial::q(-2 * nd + 2 * (sizes[i - 1] as i32 + 1)),
    };
    let mut values: Vec<Eigenvalue> =
        (1..=ell + 1).map(|i| Eigenvalue { tag: EigenTag::Mu(i), value: mu[i - 1] }).collect();
    values.extend((1..=ell).map(reflected));
    let top = reflected(ell + 1);
    let dropped = if quotient {
        Some(top)
    } else {
        values.push(top);
        None
    };
    values.push(Eigenvalue { tag: EigenTag::Mu(ell + 2), value: mu[ell + 1] });
    EigenvalueList { values, dropped }
}

/// `hw_eigenvalue(λ, ν_i)` for the highest weights `ν_1..ν_{2l+3}` of the Levi
/// submodules of `C^N`.
pub fn levi_eigenvalues(param: &ParamAssignment) -> Vec<Monomial> {
    let class = &param.class;
    let nat = NatAction::new(class.rank).expect("natural representation");
    let lambda = param.lambda();
    nu_indices(class).into_iter().map(|k| hw_eigenvalue(&class.rank, &lambda, &nat.weights[k])).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyMode {
    Quantum,
    Classical,
}

/// Roots of a minimal polynomial, in the order of the factored product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinPoly {
    pub roots: Vec<Monomial>,
}

impl MinPoly {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }
}

/// Quantum: `Π(Q - μ_i) (Q - μ_{l+1}) (Q - μ_{l+2}) Π(Q - μ_i^{-1} q^{-2N+2(n_i+1)})`.
/// Classical: `Π(A - μ_i) (A + 1) (A - 1) Π(A - μ_i^{-1})` with `μ_i` the `s → 1` limits.
pub fn min_poly(class: &ConjClass, values: &EigenvalueList, mode: PolyMode) -> MinPoly {
    let ell = class.ell();
    let find = |tag: EigenTag| values.values.iter().find(|e| e.tag == tag).map(|e| e.value);
    let mut roots = Vec::new();
    match mode {
        PolyMode::Quantum => {
            roots.extend((1..=ell).filter_map(|i| find(EigenTag::Mu(i))));
            roots.extend(find(EigenTag::Mu(ell + 1)));
            roots.extend(find(EigenTag::Mu(ell + 2)));
            roots.extend((1..=ell).rev().filter_map(|i| find(EigenTag::Reflected(i))));
        }
        PolyMode::Classical => {
            let limit: Vec<Monomial> = (1..=ell).filter_map(|i| find(EigenTag::Mu(i))).map(|m| m.at_s_one()).collect();
            roots.extend(limit.iter().copied());
            roots.push(Monomial::minus_one());
            roots.push(Monomial::ONE);
            roots.extend(limit.iter().rev().map(|m| m.inv()));
        }
    }
    MinPoly { roots }
}

/// `q^{(λ+ρ+ν, α)}` for every positive root `α`, with `ν` optional.
fn shifted_pairings(rank: &OrthoRank, lambda: &LambdaEval, nu: &WeightVec) -> Vec<Monomial> {
    let rho = rank.rho();
    rank.positive_roots().iter().map(|a| lambda.pair(a) * Monomial::s(rho.pair_s(a) + nu.pair_s(a))).collect()
}

fn prefactor(rank: &OrthoRank, lambda: &LambdaEval, nu: &WeightVec, k: i32) -> Monomial {
    let rho = rank.rho();
    let eps1 = WeightVec::eps(rank.rank(), 0, 2);
    let s_exp = 2 * rho.pair_s(nu) - 2 * rho.pair_s(&eps1) + nu.pair_s(nu) - 2;
    (lambda.pair(&nu.scaled(2)) * Monomial::s(s_exp)).pow(k)
}

/// `χ^λ(τ_k)`, the scalar of `Tr_q(Q^k)` on a module of highest weight `λ`.
pub fn central_character(rank: &OrthoRank, lambda: &LambdaEval, k: i32) -> Result<FracScalar> {
    if k < 1 {
        return Err(QError::InvalidArgument(format!("k = {k} must be positive")));
    }
    let nat = NatAction::new(*rank)?;
    let zero = WeightVec::zero(rank.rank());
    let base = shifted_pairings(rank, lambda, &zero);
    if let Some(m) = base.iter().find(|m| m.pow(2).is_one()) {
        return Err(QError::NonRegular(format!("lambda is not regular: q^(lambda+rho, alpha) = {m}")));
    }
    let mut total = FracScalar::zero();
    for nu in &nat.weights {
        let mut term = FracScalar::monomial(prefactor(rank, lambda, nu, k));
        for (m, b) in shifted_pairings(rank, lambda, nu).into_iter().zip(base.iter()) {
            term = &term * &gauss_bracket(m).checked_div(&gauss_bracket(*b))?;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Exact values assigned to `s` and `z_1..` for evaluating a monomial.
#[derive(Clone, Debug)]
pub struct Point {
    pub s: GaussianRational,
    pub z: Vec<GaussianRational>,
}

fn powi(x: &GaussianRational, e: i32) -> Result<GaussianRational> {
    let p = x.pow(e.unsigned_abs());
    if e >= 0 {
        Ok(p)
    } else {
        p.inv().ok_or_else(|| QError::NonRegular("zero to a negative power".into()))
    }
}

fn eval_monomial(m: &Monomial, at: &Point) -> Result<GaussianRational> {
    if m.t_exp() != 0 {
        return Err(QError::InvalidArgument("t must be specialized before evaluation".into()));
    }
    let mut v = powi(&at.s, m.s_exp())?;
    for (j, &e) in m.z_exps().iter().enumerate() {
        if e != 0 {
            let z = at.z.get(j).ok_or_else(|| QError::InvalidArgument(format!("no value for z{}", j + 1)))?;
            v = v * powi(z, e)?;
        }
    }
    Ok(v.mul_unit(m.unit))
}

/// `χ^λ(τ_k)` evaluated exactly at a point, factor by factor.
pub fn central_character_at(rank: &OrthoRank, lambda: &LambdaEval, k: i32, at: &Point) -> Result<GaussianRational> {
    let nat = NatAction::new(*rank)?;
    let zero = WeightVec::zero(rank.rank());
    let bracket = |m: &Monomial| -> Result<GaussianRational> {
        let x = eval_monomial(m, at)?;
        let inv = x.inv().ok_or_else(|| QError::NonRegular("zero monomial value".into()))?;
        Ok(x - inv)
    };
    let base: Vec<GaussianRational> =
        shifted_pairings(rank, lambda, &zero).iter().map(bracket).collect::<Result<_>>()?;
    let mut total = GaussianRational::zero();
    for nu in &nat.weights {
        let mut term = eval_monomial(&prefactor(rank, lambda, nu, k), at)?;
        for (m, b) in shifted_pairings(rank, lambda, nu).iter().zip(base.iter()) {
            term = (term * bracket(m)?)
                .div(b)
                .ok_or_else(|| QError::NonRegular("lambda is not regular at this point".into()))?;
        }
        total = total + term;
    }
    Ok(total)
}

/// Right-hand side of the classical trace relation,
/// `Σ n_i (μ_i^k + μ_i^{-k}) + 2m (-1)^k + P`.
pub fn classical_trace(class: &ConjClass, mu: &[GaussianRational], k: i32) -> Result<GaussianRational> {
    let mut total =
        GaussianRational::from_int(2 * class.m as i64 * if k % 2 == 0 { 1 } else { -1 } + class.big_p() as i64);
    for (i, &n) in class.blocks.iter().enumerate() {
        let x = powi(&mu[i], k)? + powi(&mu[i], -k)?;
        total = total + x * GaussianRational::from_int(n as i64);
    }
    Ok(total)
}

/// Classical limit of `χ^λ(τ_k)` against the classical trace.
#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub k: i32,
    pub samples: Vec<(f64, f64)>,
    pub extrapolated: f64,
    pub classical: f64,
    pub relative_error: f64,
}

/// Evaluates `χ^λ(τ_k)` at `s = 1 + ε` for each `ε` and `z_i = ζ_i`, then
/// applies first-order Richardson extrapolation to `ε = 0`.
pub fn classical_limit(
    param: &ParamAssignment,
    zeta: &[GaussianRational],
    k: i32,
    eps: [f64; 2],
) -> Result<LimitReport> {
    let class = &param.class;
    let lambda = param.lambda();
    let scale = 1_000_000_000i64;
    let mut samples = Vec::new();
    let mut values = Vec::new();
    for e in eps {
        let s = GaussianRational::rational(scale + (e * scale as f64).round() as i64, scale);
        let v = central_character_at(&class.rank, &lambda, k, &Point { s, z: zeta.to_vec() })?;
        let (re, im) = v.to_f64_pair();
        samples.push((e, re));
        values.push((re, im));
    }
    let [e1, e2] = eps;
    let extrap = |a: f64, b: f64| (e1 * b - e2 * a) / (e1 - e2);
    let re = extrap(values[0].0, values[1].0);
    let im = extrap(values[0].1, values[1].1);
    let mu0: Vec<GaussianRational> = mu_vector(param)[..class.ell()]
        .iter()
        .map(|m| eval_monomial(&m.at_s_one(), &Point { s: GaussianRational::one(), z: zeta.to_vec() }))
        .collect::<Result<_>>()?;
    let (classical, cim) = classical_trace(class, &mu0, k)?.to_f64_pair();
    let err = ((re - classical).powi(2) + (im - cim).powi(2)).sqrt();
    // A vanishing classical trace is compared in absolute terms.
    let relative_error = if classical == 0.0 { err } else { err / classical.abs() };
    Ok(LimitReport { k, samples, extrapolated: re, classical, relative_error })
}

/// `Tr_{q,1}(S^{2k}) = χ^{ε_1}(τ_k) · Id` on the natural representation.
#[derive(Clone, Debug, Serialize)]
pub struct QtraceAnchor {
    pub k: i32,
    pub character: String,
    pub holds: bool,
}

pub fn qtrace_anchor(rank: &OrthoRank, k: i32) -> Result<QtraceAnchor> {
    let nat = NatAction::new(*rank)?;
    let s = smatrix(&nat);
    let x = s.pow(2 * k as u32);
    let lambda = LambdaEval::integral(&WeightVec::eps(rank.rank(), 0, 2));
    let chi = central_character(rank, &lambda, k)?;
    let lhs = qtrace_leg1(&nat, &x);
    Ok(QtraceAnchor { k, character: chi.to_string(), holds: lhs.as_scalar().is_some_and(|c| c == chi) })
}

/// The diagonal initial point `o` of a classical class.
#[derive(Clone, Debug)]
pub struct ClassicalPoint {
    pub class: ConjClass,
    /// `μ_1..μ_l`.
    pub mu: Vec<GaussianRational>,
}

impl ClassicalPoint {
    pub fn new(class: &ConjClass, mu: Vec<GaussianRational>) -> Result<Self> {
        if mu.len() != class.ell() {
            return Err(QError::InvalidArgument(format!("{} values for {} blocks", mu.len(), class.ell())));
        }
        let one = GaussianRational::one();
        let minus = -GaussianRational::one();
        let mut all = mu.clone();
        all.extend(mu.iter().map(|m| m.inv().unwrap_or_default()));
        for (i, x) in mu.iter().enumerate() {
            if x.is_zero() || *x == one || *x == minus || (x.clone() * x.clone()).is_one() {
                return Err(QError::InvalidArgument(format!("mu_{} = {x} is not regular", i + 1)));
            }
        }
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if all[i] == all[j] {
                    return Err(QError::InvalidArgument("mu values are not regular".into()));
                }
            }
        }
        Ok(Self { class: class.clone(), mu })
    }

    /// Diagonal of `o`: `μ_i` on the `gl` blocks, `-1` on the `m` block, `1` on
    /// the middle, then the inverses mirrored.
    pub fn diagonal(&self) -> Vec<GaussianRational> {
        let class = &self.class;
        let (n, nd) = (class.n(), class.rank.dim());
        let mut d = vec![GaussianRational::one(); nd];
        for j in 1..=n {
            let b = class.block_number(j);
            let x = if b <= class.ell() {
                self.mu[b - 1].clone()
            } else if b == class.ell() + 1 {
                -GaussianRational::one()
            } else {
                GaussianRational::one()
            };
            d[nd - j] = x.inv().expect("regular");
            d[j - 1] = x;
        }
        d
    }

    pub fn roots(&self) -> Vec<GaussianRational> {
        let mut r = self.mu.clone();
        r.push(-GaussianRational::one());
        r.push(GaussianRational::one());
        r.extend(self.mu.iter().rev().map(|m| m.inv().expect("regular")));
        r
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealReport {
    pub group_relation: bool,
    pub min_poly_relation: bool,
    pub trace_relations: bool,
    pub jacobian_rank: usize,
    pub expected_rank: usize,
    pub class_dim: usize,
}

impl IdealReport {
    pub fn pass(&self) -> bool {
        self.group_relation
            && self.min_poly_relation
            && self.trace_relations
            && self.jacobian_rank == self.expected_rank
    }
}

/// `dim G - dim K` with `K = GL(n_1) x .. x SO(2m) x SO(P)`.
pub fn class_dimension(class: &ConjClass) -> usize {
    let nd = class.rank.dim();
    let p = class.big_p();
    let k: usize =
        class.blocks.iter().map(|n| n * n).sum::<usize>() + class.m * (2 * class.m - 1) + p * (p.saturating_sub(1)) / 2;
    nd * (nd - 1) / 2 - k
}

/// Checks the group, minimal polynomial and trace relations at `o` and the rank of
/// their Jacobian there.
pub fn classical_ideal_check(point: &ClassicalPoint) -> Result<IdealReport> {
    let class = &point.class;
    let nd = class.rank.dim();
    let d = point.diagonal();
    let roots = point.roots();
    let prime = |j: usize| nd - 1 - j;
    let group_relation = (0..nd).all(|j| (d[j].clone() * d[prime(j)].clone()).is_one());
    let min_poly_relation = d.iter().all(|x| roots.iter().any(|r| r == x));
    let mut trace_relations = true;
    for k in 1..=nd as i32 {
        let tr = d.iter().try_fold(GaussianRational::zero(), |acc, x| powi(x, k).map(|p| acc + p))?;
        trace_relations &= tr == classical_trace(class, &point.mu, k)?;
    }
    let lin = |j: usize| -> Vec<GaussianRational> { roots.iter().map(|r| d[j].clone() - r.clone()).collect() };
    let factors: Vec<Vec<GaussianRational>> = (0..nd).map(lin).collect();
    let nsq = nd * nd;
    let mut columns: Vec<SparseVec> = Vec::new();
    for a in 0..nd {
        for b in 0..nd {
            let mut col = SparseVec::new();
            let mut add = |row: usize, v: GaussianRational| {
                if v.is_zero() {
                    return;
                }
                let cur = col.remove(&row).unwrap_or_default();
                let next = &cur + &FracScalar::from_gauss(v);
                if !next.is_zero() {
                    col.insert(row, next);
                }
            };
            // (E C o^t + o C E^t) for E = E_ab.
            let bp = prime(b);
            add(a * nd + bp, d[bp].clone());
            add(bp * nd + a, d[bp].clone());
            // Σ_j L_j E R_j for the product of (o - r_j).
            let mut v = GaussianRational::zero();
            for j in 0..roots.len() {
                let left = factors[a][..j].iter().fold(GaussianRational::one(), |acc, x| acc * x.clone());
                let right = factors[b][j + 1..].iter().fold(GaussianRational::one(), |acc, x| acc * x.clone());
                v = v + left * right;
            }
            add(nsq + a * nd + b, v);
            if a == b {
                for k in 1..=nd as i32 {
                    add(2 * nsq + (k as usize - 1), powi(&d[a], k - 1)? * GaussianRational::from_int(k as i64));
                }
            }
            columns.push(col);
        }
    }
    let jacobian_rank = echelon_of(columns).rank();
    let class_dim = class_dimension(class);
    Ok(IdealReport {
        group_relation,
        min_poly_relation,
        trace_relations,
        jacobian_rank,
        expected_rank: nsq - class_dim,
        class_dim,
    })
}
