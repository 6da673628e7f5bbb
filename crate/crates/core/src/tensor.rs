//! The module `C^N ⊗ M̂_λ` and its quotient `C^N ⊗ M_λ`, with submodules
//! generated by weight-window closure.

use crate::coeff::{gauss_bracket, FracScalar};
use crate::error::{QError, Result};
use crate::linalg::{echelon_of, Echelon, SparseVec};
use crate::natrep::NatAction;
use crate::rootdata::{ConjClass, Mode, RootVec, WeightVec};
use crate::singular::{u_nu2, u_nu2_scalar, ConstructionSet};
use crate::verma::{ModVec, Submodule, VermaModule, Word};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

const STRIDE_BITS: u32 = 40;

/// A homogeneous vector `Σ_k w_k ⊗ u_k`.
///
/// `depth` is the root-lattice distance from the top weight `λ + ε_1`; the
/// module part at basis index `k` has offset `depth - d_k`, where `d_k` is
/// the distance from `ε_1` to the weight of `w_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector {
    pub depth: RootVec,
    pub parts: BTreeMap<usize, ModVec>,
}

impl TensorVector {
    pub fn zero(depth: RootVec) -> Self {
        Self { depth, parts: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.values().all(ModVec::is_zero)
    }

    fn add_part(&mut self, k: usize, c: &FracScalar, u: &ModVec) {
        if u.is_zero() || c.is_zero() {
            return;
        }
        let next = match self.parts.remove(&k) {
            Some(cur) => cur.axpy(c, u),
            None => u.scale(c),
        };
        if !next.is_zero() {
            self.parts.insert(k, next);
        }
    }

    pub fn scale(&self, c: &FracScalar) -> Self {
        let mut out = Self::zero(self.depth.clone());
        for (&k, u) in &self.parts {
            out.add_part(k, c, u);
        }
        out
    }

    /// `self + c · o`.
    pub fn axpy(&self, c: &FracScalar, o: &Self) -> Result<Self> {
        if !o.is_zero() && !self.is_zero() && o.depth != self.depth {
            return Err(QError::InvalidArgument(format!("weight mismatch: {} vs {}", self.depth, o.depth)));
        }
        let mut out = if self.is_zero() { Self::zero(o.depth.clone()) } else { self.clone() };
        for (&k, u) in &o.parts {
            out.add_part(k, c, u);
        }
        Ok(out)
    }
}

/// Counters for closure work, shared across submodules of one tensor module.
#[derive(Debug, Default)]
pub struct Counters {
    pub closure_weights: AtomicUsize,
    pub closure_vectors: AtomicUsize,
    pub components: AtomicUsize,
}

/// `C^N ⊗ M̂_λ`, optionally taken modulo `C^N ⊗ (U_q(g) v_{λ-δ})`.
pub struct TensorModule<'a> {
    pub verma: &'a VermaModule,
    pub nat: NatAction,
    /// `d_k` for each basis vector of `C^N`.
    offsets: Vec<RootVec>,
    quotient: Option<Submodule>,
    pub counters: Counters,
}

impl<'a> TensorModule<'a> {
    /// The full tensor product `C^N ⊗ M̂_λ`.
    pub fn new(verma: &'a VermaModule) -> Result<Self> {
        let rank = verma.class.rank;
        let nat = NatAction::new(rank)?;
        let top = &nat.weights[0];
        let offsets = nat
            .weights
            .iter()
            .map(|w| rank.to_root_coords(&top.minus(w)).expect("weights of C^N differ by roots"))
            .collect();
        Ok(Self { verma, nat, offsets, quotient: None, counters: Counters::default() })
    }

    /// `C^N ⊗ M_λ`, the quotient by the submodule generated by the vector `Σ c_i x_i`.
    pub fn quotient(verma: &'a VermaModule) -> Result<Self> {
        if verma.param.mode != Mode::Specialized {
            return Err(QError::InvalidArgument("the quotient needs the specialized weight".into()));
        }
        let cons = ConstructionSet::build(&verma.class)?;
        let v = verma.vector(&cons.v_singular)?;
        Ok(Self { quotient: Some(Submodule::new(vec![v])), ..Self::new(verma)? })
    }

    pub fn is_quotient(&self) -> bool {
        self.quotient.is_some()
    }

    pub fn class(&self) -> &ConjClass {
        &self.verma.class
    }

    pub fn dim_nat(&self) -> usize {
        self.nat.dim()
    }

    fn part_beta(&self, depth: &RootVec, k: usize) -> Option<RootVec> {
        let b = depth.minus(&self.offsets[k]);
        b.is_nonneg().then_some(b)
    }

    /// `w_k ⊗ v_λ`, `k` 0-based.
    pub fn basis_tensor(&self, k: usize) -> TensorVector {
        let mut parts = BTreeMap::new();
        parts.insert(k, self.verma.highest());
        TensorVector { depth: self.offsets[k].clone(), parts }
    }

    /// Builds `Σ (k, word, c)` as `Σ c · w_k ⊗ word · v_λ`, all of one weight.
    pub fn from_terms(&self, terms: &[(usize, Word, FracScalar)]) -> Result<TensorVector> {
        let rank = self.verma.rank();
        let mut out: Option<TensorVector> = None;
        for (k, w, c) in terms {
            let depth = w.offset(rank).plus(&self.offsets[*k]);
            let u = self.verma.apply_word(&w.0, &self.verma.highest())?;
            let mut t = TensorVector::zero(depth);
            t.add_part(*k, c, &u);
            out = Some(match out {
                None => t,
                Some(acc) => acc.axpy(&FracScalar::one(), &t)?,
            });
        }
        out.ok_or_else(|| QError::InvalidArgument("empty tensor".into()))
    }

    /// Reduces every module part modulo the singular submodule (quotient mode only).
    pub fn normalize(&self, v: TensorVector) -> Result<TensorVector> {
        let Some(sub) = &self.quotient else {
            return Ok(v);
        };
        let mut out = TensorVector::zero(v.depth.clone());
        for (k, u) in v.parts {
            out.add_part(k, &FracScalar::one(), &sub.reduce(self.verma, &u)?);
        }
        Ok(out)
    }

    /// `f_i (w ⊗ u) = f_i w ⊗ q^{-(α_i, wt u)} u + w ⊗ f_i u`.
    pub fn t_apply_f(&self, i: usize, v: &TensorVector) -> Result<TensorVector> {
        let mut out = TensorVector::zero(v.depth.add_simple(i, 1));
        for (&k, u) in &v.parts {
            if let Some((to, c)) = self.nat.f_on(i, k) {
                let kq = self.verma.k_value(i, &u.beta).inv();
                out.add_part(to, &FracScalar::monomial(c * kq), u);
            }
            out.add_part(k, &FracScalar::one(), &self.verma.apply_f(i, u)?);
        }
        self.normalize(out)
    }

    /// `e_i (w ⊗ u) = e_i w ⊗ u + q^{(α_i, wt w)} w ⊗ e_i u`.
    pub fn t_apply_e(&self, i: usize, v: &TensorVector) -> Result<TensorVector> {
        let depth = v.depth.add_simple(i, -1);
        let mut out = TensorVector::zero(depth.clone());
        if !depth.is_nonneg() {
            return Ok(out);
        }
        for (&k, u) in &v.parts {
            if let Some((to, c)) = self.nat.e_on(i, k) {
                out.add_part(to, &FracScalar::monomial(c), u);
            }
            if u.beta.get(i) > 0 {
                let eu = self.verma.apply_e(i, u)?;
                out.add_part(k, &FracScalar::monomial(self.nat.k_on(i, k)), &eu);
            }
        }
        self.normalize(out)
    }

    /// `q^{h_i}` acting on a homogeneous vector.
    pub fn t_apply_k(&self, i: usize, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zero(v.depth.clone());
        for (&k, u) in &v.parts {
            let c = self.nat.k_on(i, k) * self.verma.k_value(i, &u.beta);
            out.add_part(k, &FracScalar::monomial(c), u);
        }
        out
    }

    /// Dimension of the weight space at `depth`.
    pub fn dim(&self, depth: &RootVec) -> Result<usize> {
        let mut d = 0;
        for k in 0..self.dim_nat() {
            if let Some(b) = self.part_beta(depth, k) {
                d += match &self.quotient {
                    Some(sub) => sub.quotient_dim(self.verma, &b)?,
                    None => self.verma.dim(&b)?,
                };
            }
        }
        Ok(d)
    }

    fn flatten(&self, v: &TensorVector) -> SparseVec {
        let mut out = SparseVec::new();
        for (&k, u) in &v.parts {
            for (&j, c) in &u.coords {
                out.insert((k << STRIDE_BITS) | j, c.clone());
            }
        }
        out
    }

    fn unflatten(&self, depth: &RootVec, row: &SparseVec) -> TensorVector {
        let mut parts: BTreeMap<usize, ModVec> = BTreeMap::new();
        for (&key, c) in row {
            let (k, j) = (key >> STRIDE_BITS, key & ((1 << STRIDE_BITS) - 1));
            let beta = self.part_beta(depth, k).expect("stored part has a valid weight");
            parts.entry(k).or_insert_with(|| ModVec::zero(beta)).coords.insert(j, c.clone());
        }
        TensorVector { depth: depth.clone(), parts }
    }

    /// Submodule generated by `generators`.
    pub fn submodule(&self, generators: &[TensorVector]) -> Result<TensorSubmodule<'_, 'a>> {
        TensorSubmodule::generate(self, generators)
    }
}

/// A submodule of a [`TensorModule`], given by its `U_q(n^+)`-closure and
/// lazily computed lower components.
pub struct TensorSubmodule<'t, 'a> {
    tm: &'t TensorModule<'a>,
    closure: BTreeMap<RootVec, Echelon>,
    memo: Mutex<HashMap<RootVec, Arc<Echelon>>>,
}

impl<'t, 'a> TensorSubmodule<'t, 'a> {
    fn generate(tm: &'t TensorModule<'a>, generators: &[TensorVector]) -> Result<Self> {
        let rank = tm.verma.rank();
        let mut closure: BTreeMap<RootVec, Echelon> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for g in generators {
            queue.push_back(tm.normalize(g.clone())?);
        }
        while let Some(v) = queue.pop_front() {
            if v.is_zero() {
                continue;
            }
            let ech = closure.entry(v.depth.clone()).or_default();
            let before = ech.rank();
            let reduced = ech.reduce(&tm.flatten(&v));
            if reduced.is_empty() {
                continue;
            }
            ech.insert(reduced.clone());
            debug_assert!(ech.rank() == before + 1);
            tm.counters.closure_vectors.fetch_add(1, Ordering::Relaxed);
            let v = tm.unflatten(&v.depth, &reduced);
            for i in 1..=rank {
                let up = tm.t_apply_e(i, &v)?;
                if !up.is_zero() {
                    queue.push_back(up);
                }
            }
        }
        tm.counters.closure_weights.fetch_add(closure.len(), Ordering::Relaxed);
        Ok(Self { tm, closure, memo: Mutex::new(HashMap::new()) })
    }

    /// Weights (as depths) carrying part of the `e`-closure.
    pub fn closure_depths(&self) -> Vec<RootVec> {
        self.closure.keys().cloned().collect()
    }

    fn reachable(&self, depth: &RootVec) -> bool {
        self.closure.keys().any(|c| depth.minus(c).is_nonneg())
    }

    /// Row-reduced span of the submodule at `depth`.
    pub fn component(&self, depth: &RootVec) -> Result<Arc<Echelon>> {
        if let Some(e) = self.memo.lock().expect("memo lock").get(depth) {
            return Ok(e.clone());
        }
        let mut rows: Vec<SparseVec> = self.closure.get(depth).map(|e| e.rows().to_vec()).unwrap_or_default();
        for i in 1..=self.tm.verma.rank() {
            let above = depth.add_simple(i, -1);
            if !above.is_nonneg() || !self.reachable(&above) {
                continue;
            }
            let comp = self.component(&above)?;
            for r in comp.rows() {
                let v = self.tm.t_apply_f(i, &self.tm.unflatten(&above, r))?;
                if !v.is_zero() {
                    rows.push(self.tm.flatten(&v));
                }
            }
        }
        let e = Arc::new(echelon_of(rows));
        self.tm.counters.components.fetch_add(1, Ordering::Relaxed);
        self.memo.lock().expect("memo lock").insert(depth.clone(), e.clone());
        Ok(e)
    }

    pub fn contains(&self, v: &TensorVector) -> Result<bool> {
        let v = self.tm.normalize(v.clone())?;
        if v.is_zero() {
            return Ok(true);
        }
        Ok(self.component(&v.depth)?.contains(&self.tm.flatten(&v)))
    }

    pub fn dim(&self, depth: &RootVec) -> Result<usize> {
        Ok(self.component(depth)?.rank())
    }
}

/// Basis indices (0-based) of `w_{ν_1}, .., w_{ν_{2l+3}}`.
pub fn nu_indices(class: &ConjClass) -> Vec<usize> {
    let (n, nd, ell) = (class.n(), class.rank.dim(), class.ell());
    let mut out: Vec<usize> = (1..=ell + 2).map(|i| class.block_offset(i)).collect();
    // ε_{n+1} does not exist; for P = 1 the so(P) block is the zero weight.
    debug_assert!(out.iter().all(|&j| j <= n));
    out.extend((1..=ell + 1).rev().map(|i| nd - class.block_offset(i + 1)));
    out
}

fn nu_label(tm: &TensorModule, k: usize) -> String {
    let w: &WeightVec = &tm.nat.weights[k];
    match w.0.iter().position(|&x| x != 0) {
        None => "0".into(),
        Some(j) if w.0[j] > 0 => format!("e{}", j + 1),
        Some(j) => format!("-e{}", j + 1),
    }
}

/// One membership fact.
#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub claim: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub nu: Vec<String>,
    /// `e_i (w_{ν_k} ⊗ v_λ) ∈ V_{k-1}` for every `i`, one entry per `k`.
    pub graded: Vec<Membership>,
    /// `w_{ν_{l+3}} ⊗ v_λ ∈ V_{l+2}` in `C^N ⊗ M_λ`.
    pub degree_reduction: Membership,
    /// The same vector is not in `V_{l+2}` inside `C^N ⊗ M̂_λ`.
    pub needs_quotient: bool,
}

impl FiltrationReport {
    pub fn pass(&self) -> bool {
        self.graded.iter().all(|m| m.holds) && self.degree_reduction.holds
    }
}

fn generators(tm: &TensorModule, idx: &[usize]) -> Vec<TensorVector> {
    idx.iter().map(|&k| tm.basis_tensor(k)).collect()
}

/// Graded highest-weight property of `w_{ν_k} ⊗ v_λ` and `V_{l+2} = V_{l+3}`.
pub fn verify_filtration(verma: &VermaModule) -> Result<FiltrationReport> {
    let full = TensorModule::new(verma)?;
    let quot = TensorModule::quotient(verma)?;
    let nu = nu_indices(&verma.class);
    let ell = verma.class.ell();
    let mut graded = Vec::new();
    for (k, &idx) in nu.iter().enumerate() {
        let sub = full.submodule(&generators(&full, &nu[..k]))?;
        let w = full.basis_tensor(idx);
        let mut holds = true;
        for i in 1..=verma.rank() {
            holds &= sub.contains(&full.t_apply_e(i, &w)?)?;
        }
        graded.push(Membership { claim: format!("e_i(w_nu{} (x) v) in V_{k}", k + 1), holds });
    }
    let target = nu[ell + 2];
    let sub = quot.submodule(&generators(&quot, &nu[..ell + 2]))?;
    let degree_reduction = Membership {
        claim: format!("w_nu{} (x) v in V_{} mod C^N (x) M(lambda-delta)", ell + 3, ell + 2),
        holds: sub.contains(&quot.basis_tensor(target))?,
    };
    let hat = full.submodule(&generators(&full, &nu[..ell + 2]))?;
    let needs_quotient = !hat.contains(&full.basis_tensor(target))?;
    Ok(FiltrationReport {
        nu: nu.iter().map(|&k| nu_label(&full, k)).collect(),
        graded,
        degree_reduction,
        needs_quotient,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanReport {
    /// Basis vectors `w_j ⊗ v_λ` (1-based) outside `V_{2l+3}`.
    pub outside_top: Vec<usize>,
    /// For symmetric classes, those outside `V_2`.
    pub outside_v2: Option<Vec<usize>>,
}

impl SpanReport {
    pub fn pass(&self) -> bool {
        self.outside_top.is_empty() && self.outside_v2.as_ref().is_none_or(|v| v.is_empty())
    }
}

/// `C^N ⊗ v_λ ⊂ V_{2l+3}` in `C^N ⊗ M_λ`, and `⊂ V_2` for symmetric classes.
pub fn verify_span(verma: &VermaModule) -> Result<SpanReport> {
    let tm = TensorModule::quotient(verma)?;
    let nu = nu_indices(&verma.class);
    let top = tm.submodule(&generators(&tm, &nu))?;
    let mut outside_top = Vec::new();
    for j in 0..tm.dim_nat() {
        if !top.contains(&tm.basis_tensor(j))? {
            outside_top.push(j + 1);
        }
    }
    let outside_v2 = if verma.class.is_symmetric() {
        let v2 = tm.submodule(&generators(&tm, &nu[..2]))?;
        let mut out = Vec::new();
        for j in 0..tm.dim_nat() {
            if !v2.contains(&tm.basis_tensor(j))? {
                out.push(j + 1);
            }
        }
        Some(out)
    } else {
        None
    };
    Ok(SpanReport { outside_top, outside_v2 })
}

#[derive(Clone, Debug, Serialize)]
pub struct UNu2Report {
    pub scalar: String,
    pub scalar_invertible: bool,
    /// `e_i u_{ν_2} = 0` for all `i`.
    pub singular: bool,
    /// `u_{ν_2} - scalar · w_{m+1} ⊗ v_λ ∈ V_1`.
    pub congruence: bool,
}

impl UNu2Report {
    pub fn pass(&self) -> bool {
        self.scalar_invertible && self.singular && self.congruence
    }
}

/// `u_{ν_2} ≡ q^{-m} [(α_m, λ) + m] w_{m+1} ⊗ v_λ` modulo `V_1`, inside `C^N ⊗ M̂_λ`.
pub fn verify_u_nu2_congruence(verma: &VermaModule) -> Result<UNu2Report> {
    let class = &verma.class;
    let tm = TensorModule::new(verma)?;
    let terms: Vec<(usize, Word, FracScalar)> =
        u_nu2(class, verma)?.terms.into_iter().map(|(k, w, c)| (k - 1, w, c)).collect();
    let u = tm.from_terms(&terms)?;
    let mut singular = true;
    for i in 1..=verma.rank() {
        singular &= tm.t_apply_e(i, &u)?.is_zero();
    }
    let scalar = u_nu2_scalar(class, verma);
    let diff = u.axpy(&-&scalar, &tm.basis_tensor(class.m))?;
    let v1 = tm.submodule(&[tm.basis_tensor(0)])?;
    Ok(UNu2Report {
        scalar: scalar.to_string(),
        scalar_invertible: !scalar.is_zero(),
        singular,
        congruence: v1.contains(&diff)?,
    })
}

/// `[e_i, f_j] v - δ_ij [h_i] v` on a homogeneous tensor vector; zero when the action is a module action.
pub fn commutator_defect(tm: &TensorModule, i: usize, j: usize, v: &TensorVector) -> Result<TensorVector> {
    let ef = tm.t_apply_e(i, &tm.t_apply_f(j, v)?)?;
    let fe = tm.t_apply_f(j, &tm.t_apply_e(i, v)?)?;
    let mut out = ef.axpy(&FracScalar::from_int(-1), &fe)?;
    if i == j {
        let k = tm.t_apply_k(i, v);
        for (&idx, u) in &k.parts {
            let c = v.parts[&idx].ratio_to(u).and_then(|r| r.inv().ok()).expect("k acts diagonally");
            let m = c.as_monomial().expect("monomial eigenvalue");
            let mut t = TensorVector::zero(v.depth.clone());
            t.add_part(idx, &gauss_bracket(m), &v.parts[&idx]);
            out = out.axpy(&FracScalar::from_int(-1), &t)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{ClassData, ParamAssignment};

    fn verma(n: usize, blocks: &[usize], m: usize, p: usize, mode: Mode) -> VermaModule {
        let class = ClassData { n_dim: n, gl_blocks: blocks.to_vec(), m, p }.validate().unwrap();
        VermaModule::new(&ParamAssignment::new(&class, mode))
    }

    #[test]
    fn nu_vectors() {
        let v = verma(7, &[], 2, 1, Mode::Specialized);
        let tm = TensorModule::new(&v).unwrap();
        let nu = nu_indices(&v.class);
        assert_eq!(nu.iter().map(|&k| nu_label(&tm, k)).collect::<Vec<_>>(), ["e1", "e3", "-e2"]);
        let v5 = verma(5, &[], 2, 0, Mode::Specialized);
        assert_eq!(nu_indices(&v5.class), vec![0, 2, 3]);
        let v9 = verma(9, &[1], 2, 1, Mode::Specialized);
        assert_eq!(nu_indices(&v9.class), vec![0, 1, 3, 6, 8]);
    }

    #[test]
    fn basic_actions() {
        let v = verma(8, &[], 2, 2, Mode::Specialized);
        let tm = TensorModule::new(&v).unwrap();
        let w1 = tm.basis_tensor(0);
        for i in 1..=4 {
            assert!(tm.t_apply_e(i, &w1).unwrap().is_zero());
        }
        assert_eq!(tm.t_apply_f(1, &w1).unwrap(), tm.basis_tensor(1));
        let sub = tm.submodule(std::slice::from_ref(&w1)).unwrap();
        assert_eq!(sub.dim(&w1.depth).unwrap(), 1);
    }

    #[test]
    fn module_action_commutators() {
        let v = verma(7, &[], 2, 1, Mode::Generic);
        let tm = TensorModule::new(&v).unwrap();
        let x = tm
            .from_terms(&[
                (1, Word(vec![1, 2, 2]), FracScalar::one()),
                (2, Word(vec![1, 2]), FracScalar::q(2)),
                (0, Word(vec![1, 2, 1, 2]), FracScalar::from_int(3)),
            ])
            .unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                assert!(commutator_defect(&tm, i, j, &x).unwrap().is_zero(), "[e_{i}, f_{j}]");
            }
        }
    }

    #[test]
    fn filtration_small() {
        for (n, p) in [(7, 1), (8, 2)] {
            let v = verma(n, &[], 2, p, Mode::Specialized);
            let r = verify_filtration(&v).unwrap();
            assert!(r.pass(), "so({n}): {r:?}");
        }
    }

    #[test]
    fn span_small() {
        for (n, p) in [(5, 0), (7, 1)] {
            let v = verma(n, &[], 2, p, Mode::Specialized);
            let r = verify_span(&v).unwrap();
            assert!(r.pass(), "so({n}): {r:?}");
        }
    }

    #[test]
    fn u_nu2_so7() {
        let v = verma(7, &[], 2, 1, Mode::Specialized);
        let r = verify_u_nu2_congruence(&v).unwrap();
        assert!(r.pass(), "{r:?}");
    }
}
