//! Weight-truncated parabolic Verma modules `M̂_λ`.
//!
//! A weight space of offset `β` is spanned by the words `f_i · b` with `b`
//! running over a basis of the space of offset `β - α_i`. It is therefore the
//! direct sum of those spaces modulo the images `σ · b` of the quantum Serre
//! relations, and, at height one, the Levi letters. This spans the same
//! relations as inserting Serre relations into all words, since the left ideal
//! part is already accounted for one level up. The flat word-level version is
//! kept in [`relation_space`] as an oracle.

use crate::coeff::{gauss_bracket, qbinom, FracScalar, Monomial};
use crate::error::{QError, Result};
use crate::linalg::{axpy, echelon_of, Echelon, SparseVec};
use crate::rootdata::{ConjClass, LambdaEval, ParamAssignment, RootVec, WeightVec};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// Default cap on the height of a weight offset.
pub const DEFAULT_WORD_CAP: usize = 12;

/// Reads `QCLASS_CAP_WORDLEN`, falling back to [`DEFAULT_WORD_CAP`].
pub fn word_cap_from_env() -> Result<usize> {
    match std::env::var("QCLASS_CAP_WORDLEN") {
        Err(_) => Ok(DEFAULT_WORD_CAP),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(k),
            _ => Err(QError::validation("QCLASS_CAP_WORDLEN", "positive integer", format!("got {v:?}"))),
        },
    }
}

/// `f_{i_1} ... f_{i_d} v_λ`, letters 1-based, the rightmost acting first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Root sum of the letters.
    pub fn offset(&self, rank: usize) -> RootVec {
        self.0.iter().fold(RootVec::zero(rank), |acc, &i| acc.add_simple(i, 1))
    }

    pub fn prepend(&self, i: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, o: &Word) -> Word {
        Word([self.0.as_slice(), o.0.as_slice()].concat())
    }
}

/// Length first, then lexicographic.
impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.0 {
            write!(f, "f{i}.")?;
        }
        write!(f, "v")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Homogeneous linear combination of words.
#[derive(Clone, Debug, PartialEq)]
pub struct WordVector {
    pub beta: RootVec,
    pub terms: BTreeMap<Word, FracScalar>,
}

impl WordVector {
    pub fn zero(beta: RootVec) -> Self {
        Self { beta, terms: BTreeMap::new() }
    }

    pub fn highest(rank: usize) -> Self {
        Self::word(Word::empty(), rank)
    }

    pub fn word(w: Word, rank: usize) -> Self {
        let beta = w.offset(rank);
        let mut terms = BTreeMap::new();
        terms.insert(w, FracScalar::one());
        Self { beta, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &FracScalar) {
        let cur = self.terms.remove(&w).unwrap_or_default();
        let next = &cur + c;
        if !next.is_zero() {
            self.terms.insert(w, next);
        }
    }

    pub fn scale(&self, c: &FracScalar) -> Self {
        let terms = self.terms.iter().map(|(w, x)| (w.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect();
        Self { beta: self.beta.clone(), terms }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.combine(o, &FracScalar::one())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, &FracScalar::from_int(-1))
    }

    fn combine(&self, o: &Self, c: &FracScalar) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.scale(c));
        }
        if !o.is_zero() && o.beta != self.beta {
            return Err(QError::InvalidArgument(format!("weight mismatch: {} vs {}", self.beta, o.beta)));
        }
        let mut out = self.clone();
        for (w, x) in &o.terms {
            out.add_term(w.clone(), &(x * c));
        }
        Ok(out)
    }

    /// `f_i · self` as words.
    pub fn apply_f(&self, i: usize) -> Self {
        let terms = self.terms.iter().map(|(w, c)| (w.prepend(i), c.clone())).collect();
        Self { beta: self.beta.add_simple(i, 1), terms }
    }

    /// `u · self` for a word `u`.
    pub fn left_mul(&self, u: &Word) -> Self {
        u.0.iter().rev().fold(self.clone(), |acc, &i| acc.apply_f(i))
    }

    /// `[X, Y]_a · self = X Y self - a Y X self`.
    pub fn q_commutator(&self, x: &Word, y: &Word, a: &FracScalar) -> Self {
        let xy = self.left_mul(y).left_mul(x);
        let yx = self.left_mul(x).left_mul(y);
        xy.sub(&yx.scale(a)).expect("homogeneous")
    }

    /// Distinct words carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<Word> {
        self.terms.keys().cloned().collect()
    }
}

/// An element of a weight space in normal-form coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ModVec {
    pub beta: RootVec,
    pub coords: SparseVec,
}

impl ModVec {
    pub fn zero(beta: RootVec) -> Self {
        Self { beta, coords: SparseVec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, c: &FracScalar) -> Self {
        let mut coords = SparseVec::new();
        axpy(&mut coords, c, &self.coords);
        Self { beta: self.beta.clone(), coords }
    }

    /// `self + c · o`.
    pub fn axpy(&self, c: &FracScalar, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        assert!(self.is_zero() || self.beta == o.beta, "weight mismatch");
        let mut coords = self.coords.clone();
        axpy(&mut coords, c, &o.coords);
        Self { beta: o.beta.clone(), coords }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.axpy(&FracScalar::one(), o)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.axpy(&FracScalar::from_int(-1), o)
    }

    /// Some `c` with `self = c · o`, if the two are proportional and `o ≠ 0`.
    pub fn ratio_to(&self, o: &Self) -> Option<FracScalar> {
        let (&k, x) = o.coords.iter().next()?;
        let c = self.coords.get(&k).cloned().unwrap_or_default().checked_div(x).ok()?;
        (o.scale(&c).coords == self.coords).then_some(c)
    }
}

/// One weight space `[M̂_λ]_{λ-β}`.
#[derive(Debug)]
pub struct WeightSpace {
    pub beta: RootVec,
    /// Normal words, one per basis vector.
    pub basis: Vec<Word>,
    /// `(letter, child basis index)` for each column of the presentation.
    columns: Vec<(usize, usize)>,
    col_offset: BTreeMap<usize, usize>,
    relations: Echelon,
    col_to_basis: HashMap<usize, usize>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of words `f_i · b` presenting the space.
    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    fn is_top(&self) -> bool {
        self.columns.is_empty() && self.basis.len() == 1 && self.basis[0].is_empty()
    }

    /// Column coordinates to basis coordinates.
    fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.relations
            .reduce(v)
            .into_iter()
            .map(|(c, x)| (*self.col_to_basis.get(&c).expect("non-pivot column"), x))
            .collect()
    }
}

/// A quantum Serre relation as a signed combination of words.
#[derive(Clone, Debug)]
struct SerreRel {
    offset: RootVec,
    terms: Vec<(Word, FracScalar)>,
}

fn serre_relations(class: &ConjClass) -> Vec<SerreRel> {
    let rank = &class.rank;
    let n = rank.rank();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            if rank.adjacent(i, j) {
                let aii = rank.cartan_pair2(i, i);
                let aij = 2 * rank.cartan_pair2(i, j) / aii;
                let deg = 1 - aij;
                let base = Monomial::s(aii / 2);
                let terms = (0..=deg)
                    .map(|k| {
                        let mut letters = vec![i; (deg - k) as usize];
                        letters.push(j);
                        letters.extend(std::iter::repeat_n(i, k as usize));
                        let c = qbinom(deg, k, base).expect("0 <= k <= deg");
                        (Word(letters), if k % 2 == 1 { -c } else { c })
                    })
                    .collect();
                out.push(SerreRel { offset: RootVec::zero(n).add_simple(i, deg).add_simple(j, 1), terms });
            } else if i < j {
                let terms = vec![(Word(vec![i, j]), FracScalar::one()), (Word(vec![j, i]), FracScalar::from_int(-1))];
                out.push(SerreRel { offset: RootVec::zero(n).add_simple(i, 1).add_simple(j, 1), terms });
            }
        }
    }
    out
}

type EKey = (RootVec, usize);

/// The parabolic Verma module `M̂_λ` for a class and a weight assignment.
#[derive(Debug)]
pub struct VermaModule {
    pub class: ConjClass,
    pub param: ParamAssignment,
    lambda: LambdaEval,
    roots: Vec<WeightVec>,
    levi: Vec<bool>,
    cap: usize,
    serre: Vec<SerreRel>,
    spaces: Mutex<HashMap<RootVec, Arc<WeightSpace>>>,
    e_images: Mutex<HashMap<EKey, Arc<Vec<SparseVec>>>>,
}

impl VermaModule {
    pub fn new(param: &ParamAssignment) -> Self {
        Self::with_cap(param, DEFAULT_WORD_CAP)
    }

    pub fn with_cap(param: &ParamAssignment, cap: usize) -> Self {
        let class = param.class.clone();
        Self {
            lambda: param.lambda(),
            roots: class.rank.simple_roots(),
            levi: class.levi_flags(),
            serre: serre_relations(&class),
            class,
            param: param.clone(),
            cap,
            spaces: Mutex::new(HashMap::new()),
            e_images: Mutex::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.class.n()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `q^{(α_i, λ - β)}`.
    pub fn k_value(&self, i: usize, beta: &RootVec) -> Monomial {
        let w = self.class.rank.root_weight(beta);
        self.lambda.pair(&self.roots[i - 1]) * Monomial::s(-self.roots[i - 1].pair_s(&w))
    }

    pub fn highest(&self) -> ModVec {
        let mut coords = SparseVec::new();
        coords.insert(0, FracScalar::one());
        ModVec { beta: RootVec::zero(self.rank()), coords }
    }

    /// The weight space of offset `beta`, built on first use.
    pub fn space(&self, beta: &RootVec) -> Result<Arc<WeightSpace>> {
        if let Some(s) = self.spaces.lock().expect("cache lock").get(beta) {
            return Ok(s.clone());
        }
        let built = Arc::new(self.build_space(beta)?);
        let mut cache = self.spaces.lock().expect("cache lock");
        Ok(cache.entry(beta.clone()).or_insert(built).clone())
    }

    pub fn dim(&self, beta: &RootVec) -> Result<usize> {
        Ok(self.space(beta)?.dim())
    }

    fn empty_space(beta: &RootVec) -> WeightSpace {
        WeightSpace {
            beta: beta.clone(),
            basis: Vec::new(),
            columns: Vec::new(),
            col_offset: BTreeMap::new(),
            relations: Echelon::new(),
            col_to_basis: HashMap::new(),
        }
    }

    fn build_space(&self, beta: &RootVec) -> Result<WeightSpace> {
        if !beta.is_nonneg() {
            return Ok(Self::empty_space(beta));
        }
        let height = beta.height() as usize;
        if height > self.cap {
            return Err(QError::Resource {
                what: format!("weight space of offset {beta}"),
                needed: height,
                cap: self.cap,
            });
        }
        if height == 0 {
            let mut s = Self::empty_space(beta);
            s.basis.push(Word::empty());
            return Ok(s);
        }
        let n = self.rank();
        let mut columns = Vec::new();
        let mut col_offset = BTreeMap::new();
        let mut children = BTreeMap::new();
        for i in 1..=n {
            let lower = beta.add_simple(i, -1);
            if !lower.is_nonneg() {
                continue;
            }
            let child = self.space(&lower)?;
            if child.dim() == 0 {
                continue;
            }
            col_offset.insert(i, columns.len());
            columns.extend((0..child.dim()).map(|k| (i, k)));
            children.insert(i, child);
        }
        let mut rows: Vec<SparseVec> = Vec::new();
        if height == 1 {
            for (&i, &off) in &col_offset {
                if self.levi[i - 1] {
                    rows.push(SparseVec::from([(off, FracScalar::one())]));
                }
            }
        }
        for rel in &self.serre {
            let rest = beta.minus(&rel.offset);
            if !rest.is_nonneg() {
                continue;
            }
            let base = self.space(&rest)?;
            for b in 0..base.dim() {
                let bvec = ModVec { beta: rest.clone(), coords: SparseVec::from([(b, FracScalar::one())]) };
                let mut row = SparseVec::new();
                for (w, c) in &rel.terms {
                    let tail = self.apply_word(&w.0[1..], &bvec)?;
                    let Some(&off) = col_offset.get(&w.0[0]) else { continue };
                    let shifted: SparseVec = tail.coords.iter().map(|(&k, x)| (off + k, x.clone())).collect();
                    axpy(&mut row, c, &shifted);
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        let relations = echelon_of(rows);
        let mut basis = Vec::new();
        let mut col_to_basis = HashMap::new();
        for (c, &(i, k)) in columns.iter().enumerate() {
            if !relations.is_pivot(c) {
                col_to_basis.insert(c, basis.len());
                basis.push(children[&i].basis[k].prepend(i));
            }
        }
        Ok(WeightSpace { beta: beta.clone(), basis, columns, col_offset, relations, col_to_basis })
    }

    /// `f_i · x`.
    pub fn apply_f(&self, i: usize, x: &ModVec) -> Result<ModVec> {
        let target = x.beta.add_simple(i, 1);
        if x.is_zero() {
            return Ok(ModVec::zero(target));
        }
        let sp = self.space(&target)?;
        let off = *sp.col_offset.get(&i).expect("nonzero source space has a column block");
        let cols: SparseVec = x.coords.iter().map(|(&k, c)| (off + k, c.clone())).collect();
        Ok(ModVec { beta: target, coords: sp.reduce(&cols) })
    }

    /// `f_{w_1} ... f_{w_d} · x`.
    pub fn apply_word(&self, letters: &[usize], x: &ModVec) -> Result<ModVec> {
        letters.iter().rev().try_fold(x.clone(), |acc, &i| self.apply_f(i, &acc))
    }

    /// `e_i` applied to each basis vector of the space of offset `beta`.
    fn e_images(&self, i: usize, beta: &RootVec) -> Result<Arc<Vec<SparseVec>>> {
        let key = (beta.clone(), i);
        if let Some(v) = self.e_images.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let sp = self.space(beta)?;
        let lower = beta.add_simple(i, -1);
        let mut out = Vec::with_capacity(sp.dim());
        if !lower.is_nonneg() || sp.is_top() {
            out.resize(sp.dim(), SparseVec::new());
        } else {
            for w in &sp.basis {
                let j = w.0[0];
                let child_beta = beta.add_simple(j, -1);
                let child = self.space(&child_beta)?;
                let k = child.basis.iter().position(|b| b.0 == w.0[1..]).expect("basis word has a basis tail");
                let inner = self.e_images(i, &child_beta)?;
                let inner_vec = ModVec { beta: child_beta.add_simple(i, -1), coords: inner[k].clone() };
                let mut img = self.apply_f(j, &inner_vec)?.coords;
                if i == j {
                    let c = gauss_bracket(self.k_value(i, &child_beta));
                    axpy(&mut img, &c, &SparseVec::from([(k, FracScalar::one())]));
                }
                out.push(img);
            }
        }
        let out = Arc::new(out);
        self.e_images.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// `e_i · x`.
    pub fn apply_e(&self, i: usize, x: &ModVec) -> Result<ModVec> {
        let target = x.beta.add_simple(i, -1);
        if x.is_zero() || !target.is_nonneg() {
            return Ok(ModVec::zero(target));
        }
        let imgs = self.e_images(i, &x.beta)?;
        let mut coords = SparseVec::new();
        for (&k, c) in &x.coords {
            axpy(&mut coords, c, &imgs[k]);
        }
        Ok(ModVec { beta: target, coords })
    }

    /// Normal-form coordinates of a word vector.
    pub fn vector(&self, v: &WordVector) -> Result<ModVec> {
        let mut acc = ModVec::zero(v.beta.clone());
        let top = self.highest();
        for (w, c) in &v.terms {
            if w.offset(self.rank()) != v.beta {
                return Err(QError::InvalidArgument(format!("word {w} is not of offset {}", v.beta)));
            }
            acc = acc.axpy(c, &self.apply_word(&w.0, &top)?);
        }
        Ok(ModVec { beta: v.beta.clone(), coords: acc.coords })
    }

    /// Expands normal-form coordinates back into normal words.
    pub fn to_words(&self, x: &ModVec) -> Result<WordVector> {
        let sp = self.space(&x.beta)?;
        let mut out = WordVector::zero(x.beta.clone());
        for (&k, c) in &x.coords {
            out.add_term(sp.basis[k].clone(), c);
        }
        Ok(out)
    }

    /// Residue of `v` modulo the relations, written in normal words.
    pub fn normal_form(&self, v: &WordVector) -> Result<WordVector> {
        self.to_words(&self.vector(v)?)
    }

    /// `⟨x*, y⟩` with `x* = v*_λ e_{x_d} ... e_{x_1}`; zero across different weights.
    pub fn shapovalov(&self, x: &Word, y: &ModVec) -> Result<FracScalar> {
        if x.offset(self.rank()) != y.beta {
            return Ok(FracScalar::zero());
        }
        let v = x.0.iter().try_fold(y.clone(), |acc, &i| self.apply_e(i, &acc))?;
        Ok(v.coords.get(&0).cloned().unwrap_or_default())
    }

    /// Gram matrix of the Shapovalov form on the normal words of offset `beta`.
    pub fn gram(&self, beta: &RootVec) -> Result<Vec<SparseVec>> {
        let sp = self.space(beta)?;
        (0..sp.dim())
            .map(|a| {
                let mut row = SparseVec::new();
                for b in 0..sp.dim() {
                    let y = ModVec { beta: beta.clone(), coords: SparseVec::from([(b, FracScalar::one())]) };
                    let v = self.shapovalov(&sp.basis[a], &y)?;
                    if !v.is_zero() {
                        row.insert(b, v);
                    }
                }
                Ok(row)
            })
            .collect()
    }

    /// Common kernel of `e_i` for `i` in `indices` on the space of offset `beta`.
    pub fn kernel_of_e(&self, beta: &RootVec, indices: &[usize]) -> Result<Vec<ModVec>> {
        let sp = self.space(beta)?;
        let mut rows: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for &i in indices {
            let imgs = self.e_images(i, beta)?;
            for (a, img) in imgs.iter().enumerate() {
                for (&t, x) in img {
                    rows.entry((i, t)).or_default().insert(a, x.clone());
                }
            }
        }
        let ech = echelon_of(rows.into_values());
        Ok(ech.kernel(sp.dim()).into_iter().map(|coords| ModVec { beta: beta.clone(), coords }).collect())
    }

    /// Vectors of offset `beta` killed by every `e_i`.
    pub fn singular_space(&self, beta: &RootVec) -> Result<Vec<ModVec>> {
        let all: Vec<usize> = (1..=self.rank()).collect();
        self.kernel_of_e(beta, &all)
    }
}

/// The `U_q(n^-)`-span of a set of generators, computed weight by weight.
#[derive(Debug)]
pub struct Submodule {
    generators: Vec<ModVec>,
    cache: Mutex<HashMap<RootVec, Arc<Echelon>>>,
}

impl Submodule {
    pub fn new(generators: Vec<ModVec>) -> Self {
        Self { generators, cache: Mutex::new(HashMap::new()) }
    }

    pub fn generators(&self) -> &[ModVec] {
        &self.generators
    }

    /// Row-reduced span of `u · g` over all words `u` and generators `g` landing at `beta`.
    pub fn component(&self, verma: &VermaModule, beta: &RootVec) -> Result<Arc<Echelon>> {
        if let Some(e) = self.cache.lock().expect("cache lock").get(beta) {
            return Ok(e.clone());
        }
        let mut rows: Vec<SparseVec> =
            self.generators.iter().filter(|g| &g.beta == beta && !g.is_zero()).map(|g| g.coords.clone()).collect();
        let reachable = |b: &RootVec| self.generators.iter().any(|g| b.minus(&g.beta).is_nonneg());
        if reachable(beta) {
            for i in 1..=verma.rank() {
                let lower = beta.add_simple(i, -1);
                if !lower.is_nonneg() || !reachable(&lower) {
                    continue;
                }
                let below = self.component(verma, &lower)?;
                for r in below.rows() {
                    let v = verma.apply_f(i, &ModVec { beta: lower.clone(), coords: r.clone() })?;
                    rows.push(v.coords);
                }
            }
        }
        let e = Arc::new(echelon_of(rows));
        self.cache.lock().expect("cache lock").insert(beta.clone(), e.clone());
        Ok(e)
    }

    /// `x` modulo the submodule.
    pub fn reduce(&self, verma: &VermaModule, x: &ModVec) -> Result<ModVec> {
        let e = self.component(verma, &x.beta)?;
        Ok(ModVec { beta: x.beta.clone(), coords: e.reduce(&x.coords) })
    }

    /// Dimension of the quotient at `beta`.
    pub fn quotient_dim(&self, verma: &VermaModule, beta: &RootVec) -> Result<usize> {
        Ok(verma.dim(beta)? - self.component(verma, beta)?.rank())
    }
}

/// All words of offset `beta`, in length-lexicographic order.
pub fn enumerate_words(beta: &RootVec, cap: usize) -> Result<Vec<Word>> {
    if !beta.is_nonneg() {
        return Ok(Vec::new());
    }
    let height = beta.height() as usize;
    if height > cap {
        return Err(QError::Resource { what: format!("words of offset {beta}"), needed: height, cap });
    }
    fn rec(rest: &mut Vec<i32>, prefix: &mut Vec<usize>, out: &mut Vec<Word>) {
        if rest.iter().all(|&c| c == 0) {
            out.push(Word(prefix.clone()));
            return;
        }
        for i in 0..rest.len() {
            if rest[i] > 0 {
                rest[i] -= 1;
                prefix.push(i + 1);
                rec(rest, prefix, out);
                prefix.pop();
                rest[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut beta.0.clone(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// Flat relation space on the words of offset `beta`: every Serre relation
/// inserted at every position of every shorter word, plus every word ending
/// in a Levi letter. Columns follow the order of `words`.
pub fn relation_space(class: &ConjClass, words: &[Word], cap: usize) -> Result<Echelon> {
    let Some(first) = words.first() else { return Ok(Echelon::new()) };
    let n = class.n();
    let beta = first.offset(n);
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let levi = class.levi_flags();
    let mut rows = Vec::new();
    for (k, w) in words.iter().enumerate() {
        if w.0.last().is_some_and(|&i| levi[i - 1]) {
            rows.push(SparseVec::from([(k, FracScalar::one())]));
        }
    }
    for rel in serre_relations(class) {
        for x in enumerate_words(&beta.minus(&rel.offset), cap)? {
            for p in 0..=x.len() {
                let mut row = SparseVec::new();
                for (w, c) in &rel.terms {
                    let full = Word([&x.0[..p], w.0.as_slice(), &x.0[p..]].concat());
                    axpy(&mut row, c, &SparseVec::from([(index[&full], FracScalar::one())]));
                }
                rows.push(row);
            }
        }
    }
    Ok(echelon_of(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{kostant_dim, ClassData, Mode};

    fn module(n: usize, blocks: &[usize], m: usize, p: usize, mode: Mode) -> VermaModule {
        let class = ClassData { n_dim: n, gl_blocks: blocks.to_vec(), m, p }.validate().unwrap();
        VermaModule::new(&ParamAssignment::new(&class, mode))
    }

    fn sym(n: usize, mode: Mode) -> VermaModule {
        let class = ClassData::symmetric(n).validate().unwrap();
        VermaModule::new(&ParamAssignment::new(&class, mode))
    }

    #[test]
    fn word_enumeration() {
        let b = RootVec(vec![1, 1]);
        let w = enumerate_words(&b, 12).unwrap();
        assert_eq!(w, vec![Word(vec![1, 2]), Word(vec![2, 1])]);
        assert_eq!(enumerate_words(&RootVec(vec![1, 2]), 12).unwrap().len(), 3);
        assert_eq!(enumerate_words(&RootVec(vec![0, 0]), 12).unwrap(), vec![Word::empty()]);
        let err = enumerate_words(&RootVec(vec![7, 7]), 12).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn delta_dimension_is_n_minus_three() {
        for n in [5, 7, 8, 9] {
            let v = sym(n, Mode::Specialized);
            let delta = v.class.delta();
            assert_eq!(v.dim(&delta).unwrap(), n - 3, "so({n})");
            assert_eq!(kostant_dim(&v.class, &delta), (n - 3) as u64);
        }
    }

    #[test]
    fn recursive_matches_flat_relation_space() {
        for (n, blocks, m, p) in [(5, vec![], 2, 0), (7, vec![], 2, 1), (8, vec![], 2, 2), (9, vec![1], 2, 1)] {
            let v = module(n, &blocks, m, p, Mode::Generic);
            let delta = v.class.delta();
            let mut betas = vec![delta.clone()];
            for i in 1..=v.rank() {
                betas.push(delta.add_simple(i, -1));
            }
            for beta in betas.into_iter().filter(|b| b.is_nonneg() && b.height() <= 6) {
                let words = enumerate_words(&beta, 12).unwrap();
                let flat = relation_space(&v.class, &words, 12).unwrap();
                let expected = words.len() - flat.rank();
                assert_eq!(v.dim(&beta).unwrap(), expected, "so({n}) beta {beta}");
                assert_eq!(kostant_dim(&v.class, &beta), expected as u64);
            }
        }
    }

    #[test]
    fn normal_forms() {
        let v = sym(5, Mode::Generic);
        let a = &FracScalar::q(1) + &FracScalar::q(-1);
        // Serre relation in f_1, f_2 with f_1 squared, applied to a vector of offset 0.
        let mut s = WordVector::zero(RootVec(vec![2, 1]));
        s.add_term(Word(vec![1, 1, 2]), &FracScalar::one());
        s.add_term(Word(vec![1, 2, 1]), &-a);
        s.add_term(Word(vec![2, 1, 1]), &FracScalar::one());
        assert!(v.normal_form(&s).unwrap().is_zero());
        assert!(v.normal_form(&WordVector::word(Word(vec![2, 1]), 2)).unwrap().is_zero());
        assert!(!v.normal_form(&WordVector::word(Word(vec![1, 2]), 2)).unwrap().is_zero());
        let x = WordVector::word(Word(vec![1, 2]), 2);
        let nf = v.normal_form(&x).unwrap();
        assert_eq!(v.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn e_action_on_single_letters() {
        let v = sym(5, Mode::Generic);
        let top = v.highest();
        let f2 = v.apply_f(2, &top).unwrap();
        let back = v.apply_e(2, &f2).unwrap();
        let t = Monomial::var(crate::coeff::Var::T);
        assert_eq!(back.coords.get(&0), Some(&gauss_bracket(t)));
        let f1 = v.apply_f(1, &top).unwrap();
        assert!(f1.is_zero());
        assert_eq!(v.shapovalov(&Word::empty(), &top).unwrap(), FracScalar::one());
        assert!(v.shapovalov(&Word(vec![2]), &top).unwrap().is_zero());
    }

    #[test]
    fn commutation_relation_on_words() {
        let v = module(8, &[], 2, 2, Mode::Generic);
        let delta = v.class.delta();
        let sp = v.space(&delta).unwrap();
        let x = ModVec {
            beta: delta.clone(),
            coords: (0..sp.dim()).map(|k| (k, FracScalar::from_int(k as i64 + 2))).collect(),
        };
        for i in 1..=4 {
            for j in 1..=4 {
                let lhs = v.apply_e(i, &v.apply_f(j, &x).unwrap()).unwrap();
                let rhs = v.apply_f(j, &v.apply_e(i, &x).unwrap()).unwrap();
                let diff = lhs.sub(&rhs);
                if i == j {
                    let c = gauss_bracket(v.k_value(i, &delta));
                    assert_eq!(diff.coords, x.scale(&c).coords, "i = {i}");
                } else {
                    assert!(diff.is_zero(), "i = {i}, j = {j}");
                }
            }
        }
    }

    #[test]
    fn singular_space_dimensions() {
        for n in [5, 7, 8] {
            let special = sym(n, Mode::Specialized);
            let gen = sym(n, Mode::Generic);
            let delta = special.class.delta();
            assert_eq!(special.singular_space(&delta).unwrap().len(), 1, "so({n}) specialized");
            assert_eq!(gen.singular_space(&delta).unwrap().len(), 0, "so({n}) generic");
            assert_eq!(special.singular_space(&RootVec::zero(special.rank())).unwrap().len(), 1);
        }
    }

    #[test]
    fn gram_degenerates_only_when_specialized() {
        let special = sym(7, Mode::Specialized);
        let gen = sym(7, Mode::Generic);
        let delta = special.class.delta();
        let rank = |m: &VermaModule| echelon_of(m.gram(&delta).unwrap()).rank();
        assert!(rank(&special) < special.dim(&delta).unwrap());
        assert_eq!(rank(&gen), gen.dim(&delta).unwrap());
    }

    #[test]
    fn quotient_by_singular_vector() {
        let v = sym(5, Mode::Specialized);
        let delta = v.class.delta();
        let sing = v.singular_space(&delta).unwrap();
        let sub = Submodule::new(sing.clone());
        assert_eq!(sub.quotient_dim(&v, &delta).unwrap(), 1);
        assert!(sub.reduce(&v, &sing[0]).unwrap().is_zero());
        let up = delta.add_simple(1, 1);
        assert!(sub.component(&v, &up).unwrap().rank() <= 1);
        assert_eq!(sub.component(&v, &delta).unwrap().rank(), 1);
    }
}
