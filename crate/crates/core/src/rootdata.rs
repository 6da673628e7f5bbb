//! Root data of `so(N)`, conjugacy class descriptors and weight parameters.

use crate::coeff::{Monomial, Var, MAX_Z};
use crate::error::{QError, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Series {
    B,
    D,
}

/// `so(N)` for `N >= 5`, `N != 6`: type `B_n` for odd `N`, `D_n` for even `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrthoRank {
    n_dim: usize,
}

impl OrthoRank {
    pub fn new(n_dim: usize) -> Result<Self> {
        if n_dim < 5 || n_dim == 6 {
            return Err(QError::validation("N", "N >= 5 and N != 6", format!("got N = {n_dim}")));
        }
        Ok(Self { n_dim })
    }

    /// Dimension `N` of the natural representation.
    pub fn dim(&self) -> usize {
        self.n_dim
    }

    /// Rank `n = floor(N / 2)`.
    pub fn rank(&self) -> usize {
        self.n_dim / 2
    }

    pub fn series(&self) -> Series {
        if self.n_dim % 2 == 1 {
            Series::B
        } else {
            Series::D
        }
    }

    /// Simple roots in doubled epsilon coordinates, indexed from zero.
    pub fn simple_roots(&self) -> Vec<WeightVec> {
        let n = self.rank();
        let mut out = Vec::with_capacity(n);
        for i in 0..n - 1 {
            out.push(WeightVec::eps(n, i, 2).plus(&WeightVec::eps(n, i + 1, -2)));
        }
        out.push(match self.series() {
            Series::B => WeightVec::eps(n, n - 1, 2),
            Series::D => WeightVec::eps(n, n - 2, 2).plus(&WeightVec::eps(n, n - 1, 2)),
        });
        out
    }

    /// Positive roots `e_i - e_j`, `e_i + e_j` (`i < j`) and, for type B, `e_i`.
    pub fn positive_roots(&self) -> Vec<WeightVec> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push(WeightVec::eps(n, i, 2).plus(&WeightVec::eps(n, j, -2)));
                out.push(WeightVec::eps(n, i, 2).plus(&WeightVec::eps(n, j, 2)));
            }
            if self.series() == Series::B {
                out.push(WeightVec::eps(n, i, 2));
            }
        }
        out
    }

    /// Half sum of positive roots: `rho_i = rho_1 - (i - 1)` with
    /// `rho_1 = n - 1/2` (B) or `n - 1` (D).
    pub fn rho(&self) -> WeightVec {
        let n = self.rank() as i32;
        let top2 = match self.series() {
            Series::B => 2 * n - 1,
            Series::D => 2 * n - 2,
        };
        WeightVec((0..n).map(|i| top2 - 2 * i).collect())
    }

    /// Root coordinates of an integral epsilon vector, if it lies in the root lattice.
    pub fn to_root_coords(&self, w: &WeightVec) -> Option<RootVec> {
        let n = self.rank();
        if w.0.iter().any(|x| x % 2 != 0) {
            return None;
        }
        let x: Vec<i32> = w.0.iter().map(|v| v / 2).collect();
        let mut c = vec![0i32; n];
        let mut partial = 0;
        match self.series() {
            Series::B => {
                for j in 0..n {
                    partial += x[j];
                    c[j] = partial;
                }
            }
            Series::D => {
                for j in 0..n - 2 {
                    partial += x[j];
                    c[j] = partial;
                }
                let s = partial + x[n - 2];
                if (s + x[n - 1]) % 2 != 0 {
                    return None;
                }
                c[n - 1] = (s + x[n - 1]) / 2;
                c[n - 2] = (s - x[n - 1]) / 2;
            }
        }
        Some(RootVec(c))
    }

    pub fn root_weight(&self, beta: &RootVec) -> WeightVec {
        let roots = self.simple_roots();
        beta.0.iter().zip(roots.iter()).fold(WeightVec::zero(self.rank()), |acc, (&k, r)| acc.plus(&r.scaled(k)))
    }

    /// Doubled inner product `2 (alpha_i, alpha_j)` of simple roots (1-based).
    pub fn cartan_pair2(&self, i: usize, j: usize) -> i32 {
        let r = self.simple_roots();
        r[i - 1].pair_s(&r[j - 1])
    }

    /// Pairs `(i, j)` of distinct adjacent simple roots.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan_pair2(i, j) != 0
    }
}

impl fmt::Display for OrthoRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "so({})", self.n_dim)
    }
}

/// Weight in doubled epsilon coordinates: entry `k` stores `2 (w, e_{k+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVec(pub Vec<i32>);

impl WeightVec {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `k/2 * e_{i+1}`.
    pub fn eps(n: usize, i: usize, k: i32) -> Self {
        let mut v = vec![0; n];
        v[i] = k;
        Self(v)
    }

    pub fn plus(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i32) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    /// `2 (self, o)`, the exponent of `s` in `q^{(self, o)}`. Panics if odd.
    pub fn pair_s(&self, o: &Self) -> i32 {
        let d: i32 = self.0.iter().zip(o.0.iter()).map(|(a, b)| a * b).sum();
        assert!(d % 2 == 0, "inner product outside half-integers");
        d / 2
    }

    /// `q^{(self, o)}` as a monomial in `s`.
    pub fn q_pair(&self, o: &Self) -> Monomial {
        Monomial::s(self.pair_s(o))
    }
}

/// Element of the root lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootVec(pub Vec<i32>);

impl RootVec {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Simple root `alpha_i`, 1-based.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        Self(v)
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn plus(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn add_simple(&self, i: usize, k: i32) -> Self {
        let mut v = self.0.clone();
        v[i - 1] += k;
        Self(v)
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i - 1]
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { format!("a{}", i + 1) } else { format!("{c}a{}", i + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Raw class descriptor as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    #[serde(rename = "N")]
    pub n_dim: usize,
    #[serde(default)]
    pub gl_blocks: Vec<usize>,
    pub m: usize,
    pub p: usize,
}

impl ClassData {
    pub fn symmetric(n_dim: usize) -> Self {
        Self { n_dim, gl_blocks: Vec::new(), m: 2, p: n_dim / 2 - 2 }
    }

    pub fn validate(&self) -> Result<ConjClass> {
        let rank = OrthoRank::new(self.n_dim)?;
        let n = rank.rank();
        if let Some(pos) = self.gl_blocks.iter().position(|&b| b == 0) {
            return Err(QError::validation(&format!("gl_blocks[{pos}]"), "n_i >= 1", "Levi blocks must be nonempty"));
        }
        if self.gl_blocks.len() > MAX_Z {
            return Err(QError::validation(
                "gl_blocks",
                &format!("at most {MAX_Z} blocks"),
                format!("got {} blocks", self.gl_blocks.len()),
            ));
        }
        if self.m < 2 {
            return Err(QError::validation("m", "m >= 2", format!("got m = {}", self.m)));
        }
        if rank.series() == Series::D && self.p < 2 {
            return Err(QError::validation(
                "p",
                "p >= 2 for even N",
                format!("got p = {} with m = {}", self.p, self.m),
            ));
        }
        let total: usize = self.gl_blocks.iter().sum::<usize>() + self.m + self.p;
        if total != n {
            return Err(QError::validation(
                "gl_blocks/m/p",
                "sum(n_i) + m + p = rank",
                format!("sum is {total}, rank of so({}) is {n}", self.n_dim),
            ));
        }
        Ok(ConjClass { rank, blocks: self.gl_blocks.clone(), m: self.m, p: self.p })
    }
}

/// Which Levi block an epsilon index belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// `gl(n_i)`, `i` in `1..=l`.
    Gl(usize),
    /// The `gl(m)` block with eigenvalue `-1`.
    Mid,
    /// The `so(P)` block.
    Ortho,
}

/// A validated non-Levi class `(n_1, .., n_l; m; p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConjClass {
    pub rank: OrthoRank,
    pub blocks: Vec<usize>,
    pub m: usize,
    pub p: usize,
}

impl ConjClass {
    pub fn ell(&self) -> usize {
        self.blocks.len()
    }

    pub fn n(&self) -> usize {
        self.rank.rank()
    }

    pub fn series(&self) -> Series {
        self.rank.series()
    }

    /// `P = 2p` (D) or `2p + 1` (B).
    pub fn big_p(&self) -> usize {
        match self.series() {
            Series::B => 2 * self.p + 1,
            Series::D => 2 * self.p,
        }
    }

    /// Block sizes `(n_1, .., n_l, m, p)`.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut v = self.blocks.clone();
        v.push(self.m);
        v.push(self.p);
        v
    }

    /// `n_1 + .. + n_{i-1}` for `i` in `1..=l+2`.
    pub fn block_offset(&self, i: usize) -> usize {
        self.block_sizes()[..i - 1].iter().sum()
    }

    /// Block of the 1-based epsilon index `j`.
    pub fn block_of(&self, j: usize) -> Block {
        let sizes = self.block_sizes();
        let mut acc = 0;
        for (i, &sz) in sizes.iter().enumerate() {
            acc += sz;
            if j <= acc {
                return match i {
                    i if i < self.ell() => Block::Gl(i + 1),
                    i if i == self.ell() => Block::Mid,
                    _ => Block::Ortho,
                };
            }
        }
        Block::Ortho
    }

    /// 1-based block number (`1..=l+2`) of epsilon index `j`.
    pub fn block_number(&self, j: usize) -> usize {
        match self.block_of(j) {
            Block::Gl(i) => i,
            Block::Mid => self.ell() + 1,
            Block::Ortho => self.ell() + 2,
        }
    }

    /// Simple roots outside the Levi subalgebra: the block boundaries
    /// `n_1, n_1 + n_2, .., n - p`.
    pub fn levi_complement(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = 0;
        for &b in self.blocks.iter().chain(std::iter::once(&self.m)) {
            acc += b;
            out.push(acc);
        }
        out
    }

    /// `levi[i-1]` is true when `alpha_i` lies in the Levi subalgebra.
    pub fn levi_flags(&self) -> Vec<bool> {
        let comp = self.levi_complement();
        (1..=self.n()).map(|i| !comp.contains(&i)).collect()
    }

    /// The root `delta = e_{n-p-1} + e_{n-p}` in simple-root coordinates.
    pub fn delta(&self) -> RootVec {
        let n = self.n();
        let k = n - self.p - 1;
        let mut c = vec![0; n];
        c[k - 1] = 1;
        match self.series() {
            Series::B => (k..n).for_each(|i| c[i] = 2),
            Series::D => {
                (k..n - 2).for_each(|i| c[i] = 2);
                c[n - 2] = 1;
                c[n - 1] = 1;
            }
        }
        RootVec(c)
    }

    /// Rank of the subalgebra `g'` carrying the singular vector construction.
    pub fn sub_rank(&self) -> usize {
        self.p + 2
    }

    /// Index shift from local roots of `g'` to global roots.
    pub fn shift(&self) -> usize {
        self.n() - self.sub_rank()
    }

    pub fn is_symmetric(&self) -> bool {
        self.blocks.is_empty() && self.m == 2
    }

    /// Positive roots not in the Levi subalgebra, in root coordinates.
    pub fn nilradical_roots(&self) -> Vec<RootVec> {
        let levi = self.levi_flags();
        self.rank
            .positive_roots()
            .iter()
            .map(|r| self.rank.to_root_coords(r).expect("root in root lattice"))
            .filter(|c| c.0.iter().zip(levi.iter()).any(|(&k, &is_levi)| k > 0 && !is_levi))
            .collect()
    }

    pub fn label(&self) -> String {
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        format!("so({})[{}; m={}; p={}]", self.rank.dim(), blocks.join(","), self.m, self.p)
    }
}

/// Number of ways to write `beta` as a sum of roots of the nilradical.
pub fn kostant_dim(class: &ConjClass, beta: &RootVec) -> u64 {
    fn count(roots: &[RootVec], idx: usize, rest: &RootVec, memo: &mut HashMap<(usize, RootVec), u64>) -> u64 {
        if rest.0.iter().all(|&c| c == 0) {
            return 1;
        }
        if idx == roots.len() || !rest.is_nonneg() {
            return 0;
        }
        if let Some(&v) = memo.get(&(idx, rest.clone())) {
            return v;
        }
        let mut total = 0;
        let mut cur = rest.clone();
        loop {
            total += count(roots, idx + 1, &cur, memo);
            cur = cur.minus(&roots[idx]);
            if !cur.is_nonneg() {
                break;
            }
        }
        memo.insert((idx, rest.clone()), total);
        total
    }
    if !beta.is_nonneg() {
        return 0;
    }
    count(&class.nilradical_roots(), 0, beta, &mut HashMap::new())
}

/// How the weight parameter is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `q^{Lambda_{l+1}} = t` formal.
    Generic,
    /// `q^{Lambda_{l+1}} = i s^{-P}`, the value where the singular vector appears.
    Specialized,
}

/// Values `q^{(lambda, e_j)}` of a weight on the epsilon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaEval {
    pub eps: Vec<Monomial>,
}

impl LambdaEval {
    /// An integral weight given in doubled epsilon coordinates.
    pub fn integral(w: &WeightVec) -> Self {
        Self { eps: w.0.iter().map(|&k| Monomial::s(k)).collect() }
    }

    /// `q^{(lambda, w)}` for an integral epsilon vector `w` (doubled coordinates).
    pub fn pair(&self, w: &WeightVec) -> Monomial {
        w.0.iter().zip(self.eps.iter()).fold(Monomial::ONE, |acc, (&k, m)| {
            assert!(k % 2 == 0, "pairing needs an integral vector");
            acc * m.pow(k / 2)
        })
    }
}

/// Weight `lambda = sum Lambda_i E_i` attached to a class, as monomials `q^{Lambda_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamAssignment {
    pub class: ConjClass,
    pub mode: Mode,
    /// `q^{Lambda_i}` for blocks `1..=l+2`.
    pub block_base: Vec<Monomial>,
}

impl ParamAssignment {
    pub fn new(class: &ConjClass, mode: Mode) -> Self {
        let mut base: Vec<Monomial> = (1..=class.ell()).map(|i| Monomial::var(Var::Z(i))).collect();
        base.push(match mode {
            Mode::Generic => Monomial::var(Var::T),
            Mode::Specialized => Monomial::unit(1) * Monomial::s(-(class.big_p() as i32)),
        });
        base.push(Monomial::ONE);
        Self { class: class.clone(), mode, block_base: base }
    }

    pub fn lambda(&self) -> LambdaEval {
        LambdaEval { eps: (1..=self.class.n()).map(|j| self.block_base[self.class.block_number(j) - 1]).collect() }
    }

    /// `q^{(lambda, alpha_i)}` for a simple root.
    pub fn simple_pairing(&self, i: usize) -> Monomial {
        self.lambda().pair(&self.class.rank.simple_roots()[i - 1])
    }
}

/// `mu_i = q^{2 Lambda_i - 2 (n_1 + .. + n_{i-1})}` for `i = 1..=l+2`.
pub fn mu_vector(param: &ParamAssignment) -> Vec<Monomial> {
    let class = &param.class;
    (1..=class.ell() + 2)
        .map(|i| param.block_base[i - 1].pow(2) * Monomial::q(-2 * class.block_offset(i) as i32))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(n: usize, blocks: &[usize], m: usize, p: usize) -> ConjClass {
        ClassData { n_dim: n, gl_blocks: blocks.to_vec(), m, p }.validate().unwrap()
    }

    #[test]
    fn validation_errors() {
        let bad = ClassData { n_dim: 8, gl_blocks: vec![], m: 2, p: 1 };
        match bad.validate() {
            Err(QError::Validation { field, .. }) => assert_eq!(field, "p"),
            other => panic!("{other:?}"),
        }
        assert!(ClassData { n_dim: 9, gl_blocks: vec![], m: 1, p: 3 }.validate().is_err());
        assert!(ClassData { n_dim: 9, gl_blocks: vec![1], m: 2, p: 2 }.validate().is_err());
        assert!(ClassData { n_dim: 6, gl_blocks: vec![], m: 2, p: 1 }.validate().is_err());
        assert!(ClassData { n_dim: 9, gl_blocks: vec![0, 1], m: 2, p: 0 }.validate().is_err());
        let json = r#"{"N": 9, "gl_blocks": [1], "m": 2, "p": 1}"#;
        let c: ClassData = serde_json::from_str(json).unwrap();
        assert!(c.validate().is_ok());
    }

    #[test]
    fn delta_examples() {
        let c5 = class(5, &[], 2, 0);
        assert_eq!(c5.delta(), RootVec(vec![1, 2]));
        assert_eq!(c5.delta().height(), 3);
        let c8 = class(8, &[], 2, 2);
        assert_eq!(c8.delta(), RootVec(vec![1, 2, 1, 1]));
        assert_eq!(c8.delta().height(), 5);
        let c9 = class(9, &[1], 2, 1);
        assert_eq!(c9.delta(), RootVec(vec![0, 1, 2, 2]));
    }

    #[test]
    fn delta_is_eps_sum() {
        for (n, b, m, p) in [(7, vec![], 2, 1), (8, vec![], 2, 2), (9, vec![1], 2, 1), (9, vec![], 3, 1)] {
            let c = class(n, &b, m, p);
            let k = c.n() - p - 1;
            let w = WeightVec::eps(c.n(), k - 1, 2).plus(&WeightVec::eps(c.n(), k, 2));
            assert_eq!(c.rank.root_weight(&c.delta()), w);
            assert_eq!(c.rank.to_root_coords(&w), Some(c.delta()));
        }
    }

    #[test]
    fn levi_complement_examples() {
        assert_eq!(class(8, &[], 2, 2).levi_complement(), vec![2]);
        assert_eq!(class(9, &[1], 2, 1).levi_complement(), vec![1, 3]);
        assert_eq!(class(5, &[], 2, 0).levi_complement(), vec![2]);
    }

    #[test]
    fn rho_is_half_sum() {
        for n in [5, 7, 8, 9, 10] {
            let r = OrthoRank::new(n).unwrap();
            let sum = r.positive_roots().iter().fold(WeightVec::zero(r.rank()), |a, b| a.plus(b));
            assert_eq!(sum, r.rho().scaled(2));
        }
    }

    #[test]
    fn kostant_at_delta() {
        for n in [5, 7, 8, 9] {
            let c = ClassData::symmetric(n).validate().unwrap();
            assert_eq!(kostant_dim(&c, &c.delta()), n as u64 - 3, "N = {n}");
            assert_eq!(kostant_dim(&c, &RootVec::zero(c.n())), 1);
        }
    }

    #[test]
    fn mu_examples() {
        let c8 = class(8, &[], 2, 2);
        let mu = mu_vector(&ParamAssignment::new(&c8, Mode::Specialized));
        assert_eq!(mu[0], Monomial::minus_one() * Monomial::q(-4));
        assert_eq!(mu[1], Monomial::q(-4));
        let c9 = class(9, &[1], 2, 1);
        let mu = mu_vector(&ParamAssignment::new(&c9, Mode::Specialized));
        assert_eq!(mu[0], Monomial::var(Var::Z(1)).pow(2));
        // The n_1 shift enters mu_2 and mu_3; the ell = 0 display would give -q^-2 for mu_2.
        assert_eq!(mu[1], Monomial::minus_one() * Monomial::q(-5));
        assert_eq!(mu[2], Monomial::q(-6));
    }

    #[test]
    fn specialized_pairing_on_boundary_root() {
        let c = class(7, &[], 2, 1);
        let p = ParamAssignment::new(&c, Mode::Specialized);
        assert_eq!(p.simple_pairing(2), Monomial::unit(1) * Monomial::s(-3));
        assert!(p.simple_pairing(1).is_one());
        assert!(p.simple_pairing(3).is_one());
    }
}
