//! Named verification suites, their check records and the JSON report.

use crate::coeff::FracScalar;
use crate::coeff::GaussianRational;
use crate::error::{QError, Result};
use crate::natrep::{
    check_defining_relations, check_reflection_relations, qhat_is_invariant, qybe_residual, s_eigenvalues, smatrix,
    spectral_check, NatAction,
};
use crate::rootdata::LambdaEval;
use crate::rootdata::{kostant_dim, ClassData, ConjClass, Mode, ParamAssignment, RootVec, WeightVec};
use crate::singular::{recurrence_residuals, verify_lemma, verify_singular, ConstructionSet, LemmaName};
use crate::spectra::{
    classical_ideal_check, classical_limit, hw_eigenvalue, levi_eigenvalues, min_poly, q_eigenvalues, qtrace_anchor,
    ClassicalPoint, PolyMode,
};
use crate::tensor::{verify_filtration, verify_span, verify_u_nu2_congruence};
use crate::verma::{word_cap_from_env, VermaModule};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Rmatrix,
    Verma,
    Singular,
    Tensor,
    Spectra,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Rmatrix, Suite::Verma, Suite::Singular, Suite::Tensor, Suite::Spectra, Suite::All];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rmatrix => "rmatrix",
            Suite::Verma => "verma",
            Suite::Singular => "singular",
            Suite::Tensor => "tensor",
            Suite::Spectra => "spectra",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;
    fn from_str(s: &str) -> std::result::Result<Self, SuiteError> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| SuiteError::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    /// Longest Chevalley word, that is the largest weight height explored.
    #[serde(default = "default_word_len")]
    pub word_len: usize,
}

fn default_word_len() -> usize {
    crate::verma::DEFAULT_WORD_CAP
}

impl Default for Caps {
    fn default() -> Self {
        Self { word_len: default_word_len() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

/// Contents of a config file; the suite itself may come from the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub suite: Option<Suite>,
    pub class: ClassData,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub caps: Caps,
    /// Classical block eigenvalue roots `ζ_i`, as `"a/b"` strings; `μ_i = ζ_i^2`.
    #[serde(default)]
    pub zeta: Vec<String>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

fn default_mode() -> Mode {
    Mode::Specialized
}

impl SuiteConfig {
    pub fn new(class: ClassData, mode: Mode) -> Self {
        Self { suite: None, class, mode, caps: Caps::default(), zeta: Vec::new(), output: None }
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, SuiteError> {
        let cfg: SuiteConfig = serde_json::from_str(text).map_err(|e| SuiteError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> std::result::Result<ConjClass, SuiteError> {
        if self.caps.word_len == 0 {
            return Err(SuiteError::Config("caps.word_len must be positive".into()));
        }
        let class = self.class.validate().map_err(|e| SuiteError::Config(e.to_string()))?;
        self.zeta_values(&class)?;
        Ok(class)
    }

    /// `ζ_1..ζ_l`, defaulting to `3/2, 5/2, ..`.
    pub fn zeta_values(&self, class: &ConjClass) -> std::result::Result<Vec<GaussianRational>, SuiteError> {
        if self.zeta.is_empty() {
            return Ok((1..=class.ell()).map(|i| GaussianRational::rational(2 * i as i64 + 1, 2)).collect());
        }
        if self.zeta.len() != class.ell() {
            return Err(SuiteError::Config(format!(
                "zeta has {} entries, class has {} blocks",
                self.zeta.len(),
                class.ell()
            )));
        }
        self.zeta.iter().map(|z| parse_rational(z)).collect()
    }
}

fn parse_rational(s: &str) -> std::result::Result<GaussianRational, SuiteError> {
    let bad = || SuiteError::Config(format!("cannot parse {s:?} as a rational"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<i64>().map_err(|_| bad())?, b.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(GaussianRational::rational(num, den))
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("check {check}: {source}")]
    Resource { check: String, source: QError },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: Suite,
    pub class: String,
    pub mode: Mode,
    pub pass: bool,
    /// SHA-256 of the records with timings removed.
    pub digest: String,
    pub records: Vec<CheckRecord>,
}

impl Report {
    fn assemble(suite: Suite, class: &ConjClass, mode: Mode, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = records.iter().all(|r| r.status != Status::Fail);
        let mut report = Report {
            schema_version: SCHEMA_VERSION,
            suite,
            class: class.label(),
            mode,
            pass,
            digest: String::new(),
            records,
        };
        report.digest = report.compute_digest();
        report
    }

    /// The report as JSON with every timing set to zero; this is what the digest covers.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.digest.clear();
        for rec in &mut r.records {
            rec.wall_time_ms = 0.0;
        }
        serde_json::to_string(&r).expect("report serializes")
    }

    fn compute_digest(&self) -> String {
        Sha256::digest(self.canonical_json().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "qclass {} report for {} ({:?}), schema {}\n",
            self.suite, self.class, self.mode, self.schema_version
        );
        for r in &self.records {
            out.push_str(&format!("{:<4} {:<32} {:>10.1} ms  {}\n", r.status, r.id, r.wall_time_ms, r.anchor));
            out.push_str(&format!("       {}\n", r.witness));
        }
        let fails = self.records.iter().filter(|r| r.status == Status::Fail).count();
        out.push_str(&format!(
            "{} checks, {} failed; overall {}\ndigest {}\n",
            self.records.len(),
            fails,
            if self.pass { "PASS" } else { "FAIL" },
            self.digest
        ));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// Shared state for the checks of one run.
pub struct Context {
    pub class: ConjClass,
    pub param: ParamAssignment,
    pub verma: VermaModule,
    pub zeta: Vec<GaussianRational>,
}

impl Context {
    pub fn new(config: &SuiteConfig) -> std::result::Result<Self, SuiteError> {
        let class = config.validate()?;
        let param = ParamAssignment::new(&class, config.mode);
        let verma = VermaModule::with_cap(&param, config.caps.word_len);
        let zeta = config.zeta_values(&class)?;
        Ok(Self { class, param, verma, zeta })
    }

    fn specialized(&self) -> bool {
        self.param.mode == Mode::Specialized
    }
}

type Outcome = (Status, Value);
type Runner = fn(&Context) -> Result<Outcome>;

/// A named check.
pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    run: Runner,
}

fn status(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn skip(why: &str) -> Result<Outcome> {
    Ok((Status::Skipped, json!({ "note": why })))
}

fn check_relations(ctx: &Context) -> Result<Outcome> {
    let nat = NatAction::new(ctx.class.rank)?;
    let all = check_defining_relations(&nat);
    let failed: Vec<&str> = all.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    Ok((status(failed.is_empty()), json!({ "relations": all.len(), "failed": failed })))
}

fn check_qybe(ctx: &Context) -> Result<Outcome> {
    let nat = NatAction::new(ctx.class.rank)?;
    let res = qybe_residual(&nat);
    Ok((status(res.is_zero()), json!({ "residual_nonzeros": res.nnz(), "size": res.nrows() })))
}

fn check_s_spectrum(ctx: &Context) -> Result<Outcome> {
    let nat = NatAction::new(ctx.class.rank)?;
    let eig = s_eigenvalues(&ctx.class.rank);
    let r = spectral_check(&smatrix(&nat), &eig);
    Ok((
        status(r.pass()),
        json!({
            "eigenvalues": eig.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "multiplicities": r.multiplicities.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "annihilated": r.annihilated,
            "minimal": r.minimal,
        }),
    ))
}

fn check_reflection(ctx: &Context) -> Result<Outcome> {
    let nat = NatAction::new(ctx.class.rank)?;
    let r = check_reflection_relations(&nat);
    Ok((
        status(r.pass()),
        json!({
            "kappa_idempotent": r.kappa_idempotent,
            "kappa_rank": r.kappa_rank,
            "reflection": r.reflection,
            "kappa_left": r.kappa_left,
            "kappa_right": r.kappa_right,
            "scalar": r.scalar.to_string(),
        }),
    ))
}

fn check_qhat(ctx: &Context) -> Result<Outcome> {
    let nat = NatAction::new(ctx.class.rank)?;
    let ok = qhat_is_invariant(&nat);
    Ok((status(ok), json!({ "commutes": ok })))
}

fn check_delta_dim(ctx: &Context) -> Result<Outcome> {
    let delta = ctx.class.delta();
    let dim = ctx.verma.dim(&delta)?;
    let kostant = kostant_dim(&ctx.class, &delta) as usize;
    let nd = ctx.class.rank.dim();
    let expected = if ctx.class.is_symmetric() { Some(nd - 3) } else { None };
    let pass = dim == kostant && expected.is_none_or(|e| e == dim);
    Ok((status(pass), json!({ "dim": dim, "kostant": kostant, "expected": expected })))
}

fn check_kernel_e1(ctx: &Context) -> Result<Outcome> {
    let delta = ctx.class.delta();
    let e1 = ctx.class.shift() + 1;
    let dim = ctx.verma.kernel_of_e(&delta, &[e1])?.len();
    let expected = ctx.class.sub_rank() - 1;
    Ok((status(dim == expected), json!({ "root": e1, "dim": dim, "expected": expected })))
}

fn sub_weights(top: &RootVec) -> Vec<RootVec> {
    let mut out = vec![RootVec::zero(top.0.len())];
    for (i, &c) in top.0.iter().enumerate() {
        out = out.into_iter().flat_map(|b| (0..=c).map(move |k| b.add_simple(i + 1, k))).collect();
    }
    out
}

fn check_kostant(ctx: &Context) -> Result<Outcome> {
    let mut mismatches = Vec::new();
    let weights = sub_weights(&ctx.class.delta());
    for b in &weights {
        let d = ctx.verma.dim(b)?;
        let k = kostant_dim(&ctx.class, b) as usize;
        if d != k {
            mismatches.push(format!("{b}: {d} vs {k}"));
        }
    }
    Ok((status(mismatches.is_empty()), json!({ "weights": weights.len(), "mismatches": mismatches })))
}

fn check_gram(ctx: &Context) -> Result<Outcome> {
    let delta = ctx.class.delta();
    let gram = ctx.verma.gram(&delta)?;
    let rank = crate::linalg::echelon_of(gram).rank();
    let dim = ctx.verma.dim(&delta)?;
    let pass = if ctx.specialized() { rank < dim } else { rank == dim };
    Ok((status(pass), json!({ "rank": rank, "dim": dim })))
}

fn lemma(name: LemmaName) -> impl Fn(&Context) -> Result<Outcome> {
    move |ctx| {
        let cons = ConstructionSet::build(&ctx.class)?;
        let r = verify_lemma(name, &cons, &ctx.verma)?;
        let st = match (r.skipped, r.pass) {
            (true, true) => Status::Skipped,
            (_, p) => status(p),
        };
        Ok((st, json!({ "witness": r.witness })))
    }
}

macro_rules! lemma_runner {
    ($f:ident, $name:expr) => {
        fn $f(ctx: &Context) -> Result<Outcome> {
            lemma($name)(ctx)
        }
    };
}

lemma_runner!(lemma_omega_f, LemmaName::OmegaF);
lemma_runner!(lemma_omega_e, LemmaName::OmegaE);
lemma_runner!(lemma_y_zero, LemmaName::YZero);
lemma_runner!(lemma_x_ker, LemmaName::XKer);
lemma_runner!(lemma_xprime, LemmaName::XprimeNonzero);
lemma_runner!(lemma_e_action, LemmaName::EAction);
lemma_runner!(lemma_basis, LemmaName::Basis);

fn check_recurrence(ctx: &Context) -> Result<Outcome> {
    let cons = ConstructionSet::build(&ctx.class)?;
    let res = recurrence_residuals(ctx.class.series(), cons.local_rank, &cons.c);
    let nonzero = res.iter().filter(|r| !r.is_zero()).count();
    Ok((
        status(nonzero == 0),
        json!({
            "c": cons.c.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "equations": res.len(),
            "nonzero_residuals": nonzero,
        }),
    ))
}

fn check_singular(ctx: &Context) -> Result<Outcome> {
    let cons = ConstructionSet::build(&ctx.class)?;
    let r = verify_singular(&cons, &ctx.verma)?;
    Ok((status(r.pass()), serde_json::to_value(&r).expect("serializable")))
}

fn check_filtration(ctx: &Context) -> Result<Outcome> {
    if !ctx.specialized() {
        return skip("needs the specialized weight");
    }
    let r = verify_filtration(&ctx.verma)?;
    Ok((status(r.pass()), serde_json::to_value(&r).expect("serializable")))
}

fn check_span(ctx: &Context) -> Result<Outcome> {
    if !ctx.specialized() {
        return skip("needs the specialized weight");
    }
    let r = verify_span(&ctx.verma)?;
    Ok((status(r.pass()), serde_json::to_value(&r).expect("serializable")))
}

fn check_u_nu2(ctx: &Context) -> Result<Outcome> {
    if !ctx.specialized() {
        return skip("needs the specialized weight");
    }
    if ctx.class.ell() != 0 {
        return skip("closed form known only without gl blocks");
    }
    let r = verify_u_nu2_congruence(&ctx.verma)?;
    Ok((status(r.pass()), serde_json::to_value(&r).expect("serializable")))
}

fn check_s2_anchor(ctx: &Context) -> Result<Outcome> {
    let rank = &ctx.class.rank;
    let nat = NatAction::new(*rank)?;
    let lambda = LambdaEval::integral(&WeightVec::eps(rank.rank(), 0, 2));
    let nus =
        [WeightVec::eps(rank.rank(), 0, 2), WeightVec::eps(rank.rank(), 1, 2), WeightVec::eps(rank.rank(), 0, -2)];
    let eig: Vec<FracScalar> = nus.iter().map(|nu| FracScalar::monomial(hw_eigenvalue(rank, &lambda, nu))).collect();
    let s = smatrix(&nat);
    let r = spectral_check(&s.mul(&s), &eig);
    Ok((status(r.pass()), json!({ "eigenvalues": eig.iter().map(|e| e.to_string()).collect::<Vec<_>>() })))
}

fn check_qtrace(ctx: &Context) -> Result<Outcome> {
    let mut results = Vec::new();
    for k in 1..=2 {
        results.push(qtrace_anchor(&ctx.class.rank, k)?);
    }
    Ok((status(results.iter().all(|r| r.holds)), serde_json::to_value(&results).expect("serializable")))
}

fn check_eigenvalues(ctx: &Context) -> Result<Outcome> {
    let ell = ctx.class.ell();
    let quotient = q_eigenvalues(&ctx.param, true);
    let full = q_eigenvalues(&ctx.param, false);
    let dropped = quotient.dropped.as_ref().map(|d| d.value);
    let dropped_distinct = dropped.is_some_and(|d| quotient.values.iter().all(|v| v.value != d));
    let mut hw = levi_eigenvalues(&ctx.param);
    let mut listed = full.monomials();
    hw.sort();
    listed.sort();
    let pass = quotient.values.len() == 2 * ell + 2 && quotient.distinct() && dropped_distinct && hw == listed;
    Ok((
        status(pass),
        json!({
            "quotient": quotient.values.iter().map(|e| e.value.to_string()).collect::<Vec<_>>(),
            "dropped": dropped.map(|d| d.to_string()),
            "distinct": quotient.distinct(),
            "matches_highest_weight_formula": hw == listed,
        }),
    ))
}

fn check_min_poly(ctx: &Context) -> Result<Outcome> {
    let list = q_eigenvalues(&ctx.param, true);
    let quantum = min_poly(&ctx.class, &list, PolyMode::Quantum);
    let classical = min_poly(&ctx.class, &list, PolyMode::Classical);
    let mut lim: Vec<_> = quantum.roots.iter().map(|m| m.at_s_one()).collect();
    let mut cl = classical.roots.clone();
    lim.sort();
    cl.sort();
    let degree_ok = quantum.degree() == 2 * ctx.class.ell() + 2;
    Ok((
        status(degree_ok && lim == cl),
        json!({
            "quantum": quantum.roots.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "classical": classical.roots.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        }),
    ))
}

fn check_classical_limit(ctx: &Context) -> Result<Outcome> {
    if !ctx.specialized() {
        return skip("needs the specialized weight");
    }
    let mut reports = Vec::new();
    for k in 1..=4 {
        reports.push(classical_limit(&ctx.param, &ctx.zeta, k, [1e-4, 1e-5])?);
    }
    let pass = reports.iter().all(|r| r.relative_error <= 1e-6);
    Ok((status(pass), serde_json::to_value(&reports).expect("serializable")))
}

fn check_ideal(ctx: &Context) -> Result<Outcome> {
    let mu = ctx.zeta.iter().map(|z| z.clone() * z.clone()).collect();
    let point = ClassicalPoint::new(&ctx.class, mu)?;
    let r = classical_ideal_check(&point)?;
    Ok((status(r.pass()), serde_json::to_value(&r).expect("serializable")))
}

const RMATRIX: &[Check] = &[
    Check {
        id: "rmatrix.relations",
        anchor: "Chevalley generators satisfy the defining relations on C^N",
        run: check_relations,
    },
    Check { id: "rmatrix.qybe", anchor: "R_12 R_13 R_23 = R_23 R_13 R_12", run: check_qybe },
    Check {
        id: "rmatrix.s_spectrum",
        anchor: "S = PR has exactly the eigenvalues q, -q^-1, q^(1-N)",
        run: check_s_spectrum,
    },
    Check {
        id: "rmatrix.reflection",
        anchor: "reflection equation for A and A_2 S_12 A_2 kappa = q^(1-N) kappa",
        run: check_reflection,
    },
    Check { id: "rmatrix.qhat_invariant", anchor: "Q = S^2 commutes with the coproduct", run: check_qhat },
];

const VERMA: &[Check] = &[
    Check {
        id: "verma.delta_dimension",
        anchor: "dim of the weight space at lambda - delta is N - 3",
        run: check_delta_dim,
    },
    Check { id: "verma.kernel_e1", anchor: "ker e_1 at lambda - delta has dimension n - 1", run: check_kernel_e1 },
    Check {
        id: "verma.kostant",
        anchor: "weight spaces below delta have the parabolic partition count",
        run: check_kostant,
    },
    Check {
        id: "verma.gram",
        anchor: "Shapovalov form at lambda - delta degenerates only at the special weight",
        run: check_gram,
    },
];

const SINGULAR: &[Check] = &[
    Check {
        id: "singular.lemma.omega_f",
        anchor: "omega is annihilated by f_i for 3 <= i <= kappa",
        run: lemma_omega_f,
    },
    Check { id: "singular.lemma.omega_e", anchor: "omega is annihilated by e_i for i != kappa", run: lemma_omega_e },
    Check { id: "singular.lemma.y_zero", anchor: "y_k = 0 for k = 2..n-1, and y_2 != 0 when n = 2", run: lemma_y_zero },
    Check { id: "singular.lemma.x_ker", anchor: "x_i lie in ker e_1", run: lemma_x_ker },
    Check { id: "singular.lemma.xprime_nonzero", anchor: "x'_i != 0", run: lemma_xprime },
    Check { id: "singular.lemma.e_action", anchor: "e_j x_i vanishes or is proportional to x'_j", run: lemma_e_action },
    Check {
        id: "singular.lemma.basis",
        anchor: "x_2..x_n form a basis of ker e_1 at lambda - delta",
        run: lemma_basis,
    },
    Check { id: "singular.recurrence", anchor: "closed-form c_i solve the linear recurrence", run: check_recurrence },
    Check {
        id: "singular.vector",
        anchor: "sum c_i x_i spans the singular vectors at lambda - delta iff the weight is special",
        run: check_singular,
    },
];

const TENSOR: &[Check] = &[
    Check {
        id: "tensor.filtration",
        anchor: "V_k form an ascending filtration and V_{l+2} = V_{l+3}",
        run: check_filtration,
    },
    Check {
        id: "tensor.span",
        anchor: "C^N (x) v_lambda lies in V_{2l+3}, and in V_2 for symmetric classes",
        run: check_span,
    },
    Check {
        id: "tensor.u_nu2",
        anchor: "u_nu2 = q^-m [(alpha,lambda)+m] w_{m+1} (x) v_lambda modulo the submodule of w_1 (x) v_lambda",
        run: check_u_nu2,
    },
];

const SPECTRA: &[Check] = &[
    Check { id: "spectra.s2_anchor", anchor: "S^2 eigenvalues are q^2, q^-2, q^(2-2N)", run: check_s2_anchor },
    Check {
        id: "spectra.qtrace",
        anchor: "partial q-trace of S^2k is the central character of C^N",
        run: check_qtrace,
    },
    Check {
        id: "spectra.eigenvalues",
        anchor: "Q has 2l+2 distinct eigenvalues on C^N (x) M_lambda",
        run: check_eigenvalues,
    },
    Check {
        id: "spectra.min_poly",
        anchor: "quantum minimal polynomial tends to the classical one",
        run: check_min_poly,
    },
    Check {
        id: "spectra.classical_limit",
        anchor: "q-traces tend to the classical traces of the class",
        run: check_classical_limit,
    },
    Check {
        id: "spectra.classical_ideal",
        anchor: "group, minimal polynomial and trace relations cut out the class",
        run: check_ideal,
    },
];

/// The checks making up a suite.
pub fn checks(suite: Suite) -> Vec<&'static Check> {
    let groups: &[&[Check]] = match suite {
        Suite::Rmatrix => &[RMATRIX],
        Suite::Verma => &[VERMA],
        Suite::Singular => &[SINGULAR],
        Suite::Tensor => &[TENSOR],
        Suite::Spectra => &[SPECTRA],
        Suite::All => &[RMATRIX, VERMA, SINGULAR, TENSOR, SPECTRA],
    };
    groups.iter().flat_map(|g| g.iter()).collect()
}

fn run_one(check: &Check, ctx: &Context) -> std::result::Result<CheckRecord, SuiteError> {
    let start = Instant::now();
    let outcome = (check.run)(ctx);
    let wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;
    let (status, witness) = match outcome {
        Ok(o) => o,
        Err(e) if e.is_resource() => return Err(SuiteError::Resource { check: check.id.to_string(), source: e }),
        Err(QError::Unsupported(msg)) => (Status::Skipped, json!({ "note": msg })),
        Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
    };
    Ok(CheckRecord { id: check.id.to_string(), anchor: check.anchor.to_string(), status, witness, wall_time_ms })
}

/// Runs every check of `suite`; checks run concurrently on the current rayon pool.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> std::result::Result<Report, SuiteError> {
    let ctx = Context::new(config)?;
    let records =
        checks(suite).into_par_iter().map(|c| run_one(c, &ctx)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Report::assemble(suite, &ctx.class, config.mode, records))
}

/// Applies `QCLASS_CAP_WORDLEN`, if set, to a config.
pub fn apply_env_caps(config: &mut SuiteConfig) -> std::result::Result<(), SuiteError> {
    config.caps.word_len = match std::env::var("QCLASS_CAP_WORDLEN") {
        Ok(_) => word_cap_from_env().map_err(|e| SuiteError::Config(e.to_string()))?,
        Err(_) => config.caps.word_len,
    };
    Ok(())
}
