//! The natural representation of `U_q(so(N))`, the R-matrix on `C^N ⊗ C^N`
//! and the identities it satisfies.

use crate::coeff::{gauss_bracket, qbinom, FracScalar, Monomial};
use crate::error::{QError, Result};
use crate::linalg::SparseQMatrix;
use crate::rootdata::{OrthoRank, WeightVec};

/// One arrow of a Chevalley generator on the standard basis: `w_from -> coeff * w_to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub coeff: Monomial,
}

/// Chevalley generators acting on `C^N` with basis `w_1..w_N` (stored 0-based).
#[derive(Clone, Debug)]
pub struct NatAction {
    pub rank: OrthoRank,
    /// Weight of each basis vector, doubled epsilon coordinates.
    pub weights: Vec<WeightVec>,
    f_arrows: Vec<Vec<Arrow>>,
    e_arrows: Vec<Vec<Arrow>>,
}

fn weight_of(rank: &OrthoRank, k: usize) -> WeightVec {
    let (nd, n) = (rank.dim(), rank.rank());
    if k < n {
        WeightVec::eps(n, k, 2)
    } else if k >= nd - n {
        WeightVec::eps(n, nd - 1 - k, -2)
    } else {
        WeightVec::zero(n)
    }
}

/// Entries above the skew diagonal are `+1`, below are `-1` (1-based `a + b < N + 1`).
fn skew_sign(nd: usize, row: usize, col: usize) -> i64 {
    if row + col + 2 < nd + 1 {
        1
    } else {
        -1
    }
}

/// Signs on reversed arrows forced by `[e_i, f_i] = h_i` along each chain of `f_i`.
/// Arrows are `(from, to, sign)`.
fn solve_e_signs(f: &[(usize, usize, i64)], h: &[i64]) -> Option<Vec<(usize, usize, i64)>> {
    let starts: Vec<usize> = f.iter().map(|a| a.0).filter(|&v| !f.iter().any(|b| b.1 == v)).collect();
    let mut out = Vec::new();
    for start in starts {
        let mut node = start;
        let mut incoming = 0i64;
        while let Some(&(from, to, sign)) = f.iter().find(|a| a.0 == node) {
            let need = h[node] + incoming;
            if need % sign != 0 {
                return None;
            }
            let tau = need / sign;
            out.push((to, from, tau));
            incoming = sign * tau;
            node = to;
        }
        if -incoming != h[node] {
            return None;
        }
    }
    Some(out)
}

impl NatAction {
    pub fn new(rank: OrthoRank) -> Result<Self> {
        let nd = rank.dim();
        let weights: Vec<WeightVec> = (0..nd).map(|k| weight_of(&rank, k)).collect();
        let roots = rank.simple_roots();
        let mut f_arrows = Vec::new();
        let mut e_arrows = Vec::new();
        for (i, alpha) in roots.iter().enumerate() {
            let f: Vec<(usize, usize, i64)> = (0..nd)
                .flat_map(|a| {
                    let target = weights[a].minus(alpha);
                    let weights = &weights;
                    (0..nd).filter(move |&b| weights[b] == target).map(move |b| (a, b, skew_sign(nd, b, a)))
                })
                .collect();
            let h: Vec<i64> = weights.iter().map(|w| (alpha.pair_s(w) / 2) as i64).collect();
            let e = solve_e_signs(&f, &h)
                .ok_or_else(|| QError::Unsupported(format!("no sign assignment for e_{} on {rank}", i + 1)))?;
            // The short root moves through the zero weight; the arrows leaving it
            // downward and entering it from below pick up s and s^-1 so that the
            // action intertwines with the R-matrix.
            let zero = |k: usize| weights[k].is_zero();
            let arrow = |(from, to, sign): (usize, usize, i64), s_exp: i32| Arrow {
                from,
                to,
                coeff: Monomial::s(s_exp) * if sign < 0 { Monomial::minus_one() } else { Monomial::ONE },
            };
            f_arrows.push(f.into_iter().map(|a| arrow(a, if zero(a.0) { 1 } else { 0 })).collect());
            e_arrows.push(e.into_iter().map(|a| arrow(a, if zero(a.1) { -1 } else { 0 })).collect());
        }
        Ok(Self { rank, weights, f_arrows, e_arrows })
    }

    pub fn dim(&self) -> usize {
        self.rank.dim()
    }

    /// Arrows of `f_{alpha_i}`, `i` 1-based.
    pub fn f_arrows(&self, i: usize) -> &[Arrow] {
        &self.f_arrows[i - 1]
    }

    pub fn e_arrows(&self, i: usize) -> &[Arrow] {
        &self.e_arrows[i - 1]
    }

    /// `f_i w_k`, if nonzero.
    pub fn f_on(&self, i: usize, k: usize) -> Option<(usize, Monomial)> {
        self.f_arrows[i - 1].iter().find(|a| a.from == k).map(|a| (a.to, a.coeff))
    }

    pub fn e_on(&self, i: usize, k: usize) -> Option<(usize, Monomial)> {
        self.e_arrows[i - 1].iter().find(|a| a.from == k).map(|a| (a.to, a.coeff))
    }

    /// `q^{(alpha_i, wt w_k)}`.
    pub fn k_on(&self, i: usize, k: usize) -> Monomial {
        self.rank.simple_roots()[i - 1].q_pair(&self.weights[k])
    }

    fn arrows_matrix(&self, arrows: &[Arrow]) -> SparseQMatrix {
        let mut m = SparseQMatrix::zeros(self.dim(), self.dim());
        for a in arrows {
            m.set(a.to, a.from, FracScalar::monomial(a.coeff));
        }
        m
    }

    pub fn f_matrix(&self, i: usize) -> SparseQMatrix {
        self.arrows_matrix(self.f_arrows(i))
    }

    pub fn e_matrix(&self, i: usize) -> SparseQMatrix {
        self.arrows_matrix(self.e_arrows(i))
    }

    /// Diagonal matrix of `q^{k h_i}`.
    pub fn k_matrix(&self, i: usize, power: i32) -> SparseQMatrix {
        SparseQMatrix::diag((0..self.dim()).map(|k| FracScalar::monomial(self.k_on(i, k).pow(power))).collect())
    }

    /// `q^{(rho, wt w_k)}` as a power of `s`.
    pub fn rho_s_exp(&self, k: usize) -> i32 {
        self.rank.rho().pair_s(&self.weights[k])
    }
}

/// Outcome of one exact identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
}

fn commutator(a: &SparseQMatrix, b: &SparseQMatrix) -> SparseQMatrix {
    a.mul(b).sub(&b.mul(a))
}

fn serre(xi: &SparseQMatrix, xj: &SparseQMatrix, deg: i32, base: Monomial) -> SparseQMatrix {
    let dim = xi.nrows();
    let mut acc = SparseQMatrix::zeros(dim, dim);
    for k in 0..=deg {
        let c = qbinom(deg, k, base).expect("0 <= k <= deg");
        let c = if k % 2 == 1 { -c } else { c };
        let term = xi.pow((deg - k) as u32).mul(xj).mul(&xi.pow(k as u32));
        acc = acc.add(&term.scale(&c));
    }
    acc
}

/// Cartan-Chevalley relations, `[e_i, f_j]` and the quantum Serre relations.
pub fn check_defining_relations(nat: &NatAction) -> Vec<RelationCheck> {
    let n = nat.rank.rank();
    let roots = nat.rank.simple_roots();
    let mut out = Vec::new();
    let e: Vec<SparseQMatrix> = (1..=n).map(|i| nat.e_matrix(i)).collect();
    let f: Vec<SparseQMatrix> = (1..=n).map(|i| nat.f_matrix(i)).collect();
    for i in 1..=n {
        let k = nat.k_matrix(i, 1);
        let kinv = nat.k_matrix(i, -1);
        for j in 1..=n {
            let c = FracScalar::monomial(roots[i - 1].q_pair(&roots[j - 1]));
            let ke = k.mul(&e[j - 1]).mul(&kinv);
            let kf = k.mul(&f[j - 1]).mul(&kinv);
            let ok = ke == e[j - 1].scale(&c) && kf.scale(&c) == f[j - 1];
            out.push(RelationCheck { name: format!("cartan[{i},{j}]"), pass: ok });
            let lhs = commutator(&e[i - 1], &f[j - 1]);
            let rhs = if i == j {
                SparseQMatrix::diag((0..nat.dim()).map(|kk| gauss_bracket(nat.k_on(i, kk))).collect())
            } else {
                SparseQMatrix::zeros(nat.dim(), nat.dim())
            };
            out.push(RelationCheck { name: format!("ef[{i},{j}]"), pass: lhs == rhs });
            if i != j {
                let aii = roots[i - 1].pair_s(&roots[i - 1]);
                let aij = 2 * roots[i - 1].pair_s(&roots[j - 1]) / aii;
                let base = Monomial::s(aii / 2);
                let deg = 1 - aij;
                let se = serre(&e[i - 1], &e[j - 1], deg, base);
                let sf = serre(&f[i - 1], &f[j - 1], deg, base);
                out.push(RelationCheck { name: format!("serre_e[{i},{j}]"), pass: se.is_zero() });
                out.push(RelationCheck { name: format!("serre_f[{i},{j}]"), pass: sf.is_zero() });
            }
        }
    }
    out
}

fn q_minus_qinv() -> FracScalar {
    &FracScalar::q(1) - &FracScalar::q(-1)
}

/// The flip `P` on `C^N ⊗ C^N`.
pub fn flip(nd: usize) -> SparseQMatrix {
    let mut p = SparseQMatrix::zeros(nd * nd, nd * nd);
    for a in 0..nd {
        for b in 0..nd {
            p.set(b * nd + a, a * nd + b, FracScalar::one());
        }
    }
    p
}

/// The R-matrix of `SO_q(N)` on `C^N ⊗ C^N`, normalized so that `q` is an eigenvalue of `PR`.
pub fn rmatrix(nat: &NatAction) -> SparseQMatrix {
    let nd = nat.dim();
    let prime = |i: usize| nd - 1 - i;
    let mut r = SparseQMatrix::zeros(nd * nd, nd * nd);
    for i in 0..nd {
        for j in 0..nd {
            let e = i32::from(i == j) - i32::from(j == prime(i));
            r.set(i * nd + j, i * nd + j, FracScalar::q(e));
        }
    }
    let h = q_minus_qinv();
    for i in 0..nd {
        for j in 0..i {
            r.add_at(i * nd + j, j * nd + i, &h);
            let c = FracScalar::s(nat.rho_s_exp(i) - nat.rho_s_exp(j));
            r.add_at(i * nd + prime(i), j * nd + prime(j), &-(&h * &c));
        }
    }
    r
}

/// `S = P R`.
pub fn smatrix(nat: &NatAction) -> SparseQMatrix {
    flip(nat.dim()).mul(&rmatrix(nat))
}

/// The rank-one projector onto the invariant line of `C^N ⊗ C^N`.
pub fn kappa(nat: &NatAction) -> SparseQMatrix {
    let nd = nat.dim();
    let prime = |i: usize| nd - 1 - i;
    let mut k0 = SparseQMatrix::zeros(nd * nd, nd * nd);
    for i in 0..nd {
        for j in 0..nd {
            let c = FracScalar::s(nat.rho_s_exp(i) - nat.rho_s_exp(j));
            k0.set(prime(i) * nd + i, j * nd + prime(j), c);
        }
    }
    let tr = k0.trace();
    k0.scale(&tr.inv().expect("nonzero trace"))
}

fn leg12(x: &SparseQMatrix, nd: usize) -> SparseQMatrix {
    x.kron(&SparseQMatrix::identity(nd))
}

fn leg23(x: &SparseQMatrix, nd: usize) -> SparseQMatrix {
    SparseQMatrix::identity(nd).kron(x)
}

/// Quantum Yang-Baxter residual `R12 R13 R23 - R23 R13 R12`.
pub fn qybe_residual(nat: &NatAction) -> SparseQMatrix {
    let nd = nat.dim();
    let r = rmatrix(nat);
    let r12 = leg12(&r, nd);
    let r23 = leg23(&r, nd);
    let p23 = leg23(&flip(nd), nd);
    let r13 = p23.mul(&r12).mul(&p23);
    r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12))
}

/// Evaluated coordinate matrix `Q = R21 R` on `C^N ⊗ C^N`, matrix leg first.
pub fn qhat(nat: &NatAction) -> SparseQMatrix {
    let s = smatrix(nat);
    s.mul(&s)
}

/// Eigenvalues of `S`: `q` on the symmetric traceless part, `-q^{-1}` on the
/// antisymmetric part and `q^{1-N}` on the invariant line.
pub fn s_eigenvalues(rank: &OrthoRank) -> [FracScalar; 3] {
    [FracScalar::q(1), -FracScalar::q(-1), FracScalar::q(1 - rank.dim() as i32)]
}

/// Result of the exact spectral decomposition of a matrix with known candidate eigenvalues.
#[derive(Clone, Debug)]
pub struct SpectralCheck {
    /// Product over all candidates vanishes.
    pub annihilated: bool,
    /// No product over a proper subset vanishes, so every candidate occurs.
    pub minimal: bool,
    /// Trace of each eigenprojector.
    pub multiplicities: Vec<FracScalar>,
}

impl SpectralCheck {
    pub fn pass(&self) -> bool {
        self.annihilated && self.minimal
    }
}

/// Checks that `x` is diagonalizable with exactly the given distinct eigenvalues.
pub fn spectral_check(x: &SparseQMatrix, eig: &[FracScalar]) -> SpectralCheck {
    let dim = x.nrows();
    let id = SparseQMatrix::identity(dim);
    let factor = |c: &FracScalar| x.sub(&id.scale(c));
    let product = |skip: Option<usize>| {
        eig.iter().enumerate().filter(|(k, _)| Some(*k) != skip).fold(id.clone(), |acc, (_, c)| acc.mul(&factor(c)))
    };
    let annihilated = product(None).is_zero();
    let mut minimal = true;
    let mut multiplicities = Vec::new();
    for k in 0..eig.len() {
        let p = product(Some(k));
        minimal &= !p.is_zero();
        let norm = eig
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .fold(FracScalar::one(), |acc, (_, c)| &acc * &(&eig[k] - c));
        let proj = match norm.inv() {
            Ok(inv) => p.scale(&inv),
            Err(_) => {
                minimal = false;
                continue;
            }
        };
        multiplicities.push(proj.trace());
    }
    SpectralCheck { annihilated, minimal, multiplicities }
}

/// The evaluated reflection-equation identities.
#[derive(Clone, Debug)]
pub struct ReflectionReport {
    pub kappa_idempotent: bool,
    pub kappa_rank: usize,
    /// `S kappa = c kappa` with `c` the returned scalar.
    pub s_on_kappa: Option<FracScalar>,
    pub reflection: bool,
    pub kappa_left: bool,
    pub kappa_right: bool,
    pub scalar: FracScalar,
}

impl ReflectionReport {
    pub fn pass(&self) -> bool {
        self.kappa_idempotent && self.kappa_rank == 1 && self.reflection && self.kappa_left && self.kappa_right
    }
}

/// Checks `S12 A2 S12 A2 = A2 S12 A2 S12` and `A2 S12 A2 kappa = q^{1-N} kappa = kappa A2 S12 A2`
/// with `A2 = Q` placed on legs two and three of `(C^N)^{⊗3}`.
pub fn check_reflection_relations(nat: &NatAction) -> ReflectionReport {
    let nd = nat.dim();
    let s = smatrix(nat);
    let k = kappa(nat);
    let scalar = FracScalar::q(1 - nd as i32);
    let kappa_idempotent = k.mul(&k) == k;
    let kappa_rank = k.rank();
    let sk = s.mul(&k);
    let s_on_kappa = {
        let c = k.entries().next().and_then(|(i, j, v)| sk.get(i, j).checked_div(v).ok());
        c.filter(|c| sk == k.scale(c))
    };
    let s12 = leg12(&s, nd);
    let a2 = leg23(&qhat(nat), nd);
    let k12 = leg12(&k, nd);
    let asa = a2.mul(&s12).mul(&a2);
    let reflection = s12.mul(&a2).mul(&s12).mul(&a2) == a2.mul(&s12).mul(&a2).mul(&s12);
    let target = k12.scale(&scalar);
    let kappa_left = asa.mul(&k12) == target;
    let kappa_right = k12.mul(&asa) == target;
    ReflectionReport { kappa_idempotent, kappa_rank, s_on_kappa, reflection, kappa_left, kappa_right, scalar }
}

/// Coproduct images of the generators on `C^N ⊗ C^N`.
pub fn coproduct_images(nat: &NatAction) -> Vec<(String, SparseQMatrix)> {
    let nd = nat.dim();
    let id = SparseQMatrix::identity(nd);
    let mut out = Vec::new();
    for i in 1..=nat.rank.rank() {
        let (e, f) = (nat.e_matrix(i), nat.f_matrix(i));
        let (k, kinv) = (nat.k_matrix(i, 1), nat.k_matrix(i, -1));
        out.push((format!("e{i}"), e.kron(&id).add(&k.kron(&e))));
        out.push((format!("f{i}"), f.kron(&kinv).add(&id.kron(&f))));
        out.push((format!("k{i}"), k.kron(&k)));
    }
    out
}

/// True when `Q` commutes with every coproduct image.
pub fn qhat_is_invariant(nat: &NatAction) -> bool {
    let q = qhat(nat);
    coproduct_images(nat).iter().all(|(_, d)| q.mul(d) == d.mul(&q))
}

/// `Tr(q^{2 h_rho} x)`.
pub fn qtrace(nat: &NatAction, x: &SparseQMatrix) -> FracScalar {
    (0..nat.dim())
        .fold(FracScalar::zero(), |acc, k| &acc + &x.get(k, k).mul_monomial(&Monomial::s(2 * nat.rho_s_exp(k))))
}

/// q-trace over the first leg of an operator on `C^N ⊗ C^N`.
pub fn qtrace_leg1(nat: &NatAction, x: &SparseQMatrix) -> SparseQMatrix {
    let nd = nat.dim();
    let mut out = SparseQMatrix::zeros(nd, nd);
    for a in 0..nd {
        let w = Monomial::s(2 * nat.rho_s_exp(a));
        for b in 0..nd {
            for d in 0..nd {
                let v = x.get(a * nd + b, a * nd + d);
                if !v.is_zero() {
                    out.add_at(b, d, &v.mul_monomial(&w));
                }
            }
        }
    }
    out
}
