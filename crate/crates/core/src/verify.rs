//! Randomized property suites over quaternion matrices with genericity
//! resampling, deterministic reports and replayable counterexamples.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cells::{classify, twist_general, twist_reduced, CellLabel};
use crate::error::{Error, Result};
use crate::factorize::{factor_u_w0, factor_w0_v, product_map, recover_params, verify_double_ratios};
use crate::gauss::{ldu, ldu_elimination};
use crate::matrix::{IndexSet, Matrix, MatrixJson};
use crate::quasidet::identities::{
    dodgson_admissible, dodgson_with, homological_col, homological_row, plucker_admissible, plucker_cols_with,
    plucker_rows_with, sylvester, sylvester_three, Sides,
};
use crate::quasidet::{positive_quasiminor, quasidet, quasidet_by_expansion, MinorSpec};
use crate::skewfield::{Quaternion, Sampler, Scalar};
use crate::weyl::{DoubleWord, Permutation};

pub const SUITES: [&str; 7] =
    ["quasidet-identities", "dodgson", "plucker", "gauss", "twist-involution", "roundtrip", "double-ratios"];

pub const DEFAULT_RETRY_BUDGET: usize = 100;

/// Reads `QBRUHAT_RETRY_BUDGET`, falling back to [`DEFAULT_RETRY_BUDGET`].
pub fn retry_budget_from_env() -> Result<usize> {
    match std::env::var("QBRUHAT_RETRY_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("QBRUHAT_RETRY_BUDGET={v:?}"))),
        Err(_) => Ok(DEFAULT_RETRY_BUDGET),
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub retry_budget: usize,
    pub bound: i64,
    pub parallel: bool,
}

impl VerifyConfig {
    pub fn new(suite: &str, n: usize, trials: usize, seed: u64) -> Self {
        VerifyConfig {
            suite: suite.into(),
            n,
            trials,
            seed,
            retry_budget: DEFAULT_RETRY_BUDGET,
            bound: 3,
            parallel: true,
        }
    }
}

/// One generated input. Twisted and factored suites also carry the word and
/// the parameters the matrix was built from.
#[derive(Clone, Debug)]
pub struct Instance {
    pub matrix: Matrix<Quaternion>,
    pub word: Option<DoubleWord>,
    pub h: Option<Vec<Quaternion>>,
    pub t: Option<Vec<Quaternion>>,
}

impl Instance {
    fn plain(matrix: Matrix<Quaternion>) -> Self {
        Instance { matrix, word: None, h: None, t: None }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Checks {
    pub count: usize,
    pub failures: Vec<String>,
}

impl Checks {
    fn record<S: Scalar>(&mut self, sides: &Sides<S>) {
        self.count += 1;
        if !sides.holds() {
            self.failures.push(sides.to_string());
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: String,
    pub n: usize,
    pub trial: usize,
    /// Base seed of the run; each trial draws from its own stream of it.
    pub seed: u64,
    pub attempt: usize,
    pub matrix: MatrixJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<Vec<String>>,
    pub failures: Vec<String>,
}

impl Counterexample {
    pub fn instance(&self) -> Result<Instance> {
        let parse = |v: &Option<Vec<String>>| -> Result<Option<Vec<Quaternion>>> {
            v.as_ref().map(|v| v.iter().map(|s| s.parse()).collect()).transpose()
        };
        Ok(Instance {
            matrix: Matrix::from_json(&self.matrix)?,
            word: self.word.as_deref().map(|w| DoubleWord::parse(self.n, w)).transpose()?,
            h: parse(&self.h)?,
            t: parse(&self.t)?,
        })
    }

    /// Runs the suite's checks again on the stored input.
    pub fn replay(&self) -> Result<Checks> {
        check(&self.suite, &self.instance()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TrialOutcome {
    Passed { checks: usize, attempts: usize },
    Failed(Box<Counterexample>),
    /// Every attempt hit a genericity failure; holds the last message.
    Exhausted(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub exhausted: usize,
    pub checks: usize,
    pub counterexamples: Vec<Counterexample>,
    pub exhausted_trials: Vec<(usize, String)>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.exhausted == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} n={} seed={} trials={}: {} passed, {} failed, {} exhausted, {} checks",
            self.suite, self.n, self.seed, self.trials, self.passed, self.failed, self.exhausted, self.checks
        )?;
        for c in &self.counterexamples {
            writeln!(f, "  trial {} failed: {}", c.trial, c.failures.first().map(String::as_str).unwrap_or(""))?;
        }
        for (trial, msg) in &self.exhausted_trials {
            writeln!(f, "  trial {trial} exhausted the retry budget: {msg}")?;
        }
        Ok(())
    }
}

fn suite_index(suite: &str) -> Result<usize> {
    SUITES
        .iter()
        .position(|s| *s == suite)
        .ok_or_else(|| Error::Parse(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "))))
}

fn min_order(suite: &str) -> usize {
    match suite {
        "quasidet-identities" | "plucker" => 3,
        _ => 2,
    }
}

fn trial_rng(seed: u64, suite: usize, trial: usize) -> Sampler {
    let mut rng = Sampler::seed_from_u64(seed);
    rng.set_stream(((suite as u64) << 40) | trial as u64);
    rng
}

fn random_matrix(n: usize, rng: &mut Sampler, bound: i64) -> Matrix<Quaternion> {
    Matrix::from_fn(n, n, |_, _| Quaternion::sample(rng, bound))
}

/// A point built along a random double reduced word for `(u, v)`. Rejected
/// as non-generic when cancellation between parameters drops it into a
/// smaller cell.
fn cell_instance(n: usize, rng: &mut Sampler, bound: i64, with_torus: bool) -> Result<Instance> {
    let u = Permutation::random(rng, n);
    let v = Permutation::random(rng, n);
    let word = DoubleWord::random_for(&u, &v, rng);
    let t: Vec<Quaternion> = (0..word.len()).map(|_| Quaternion::sample(rng, bound)).collect();
    let h: Option<Vec<Quaternion>> = with_torus.then(|| (0..n).map(|_| Quaternion::sample(rng, bound)).collect());
    let matrix = product_map(&word, &t, h.as_deref())?;
    if classify(&matrix)? != (CellLabel { u, v }) {
        return Err(Error::not_generic(format!("parameters along {word} cancel")));
    }
    Ok(Instance { matrix, word: Some(word), h, t: Some(t) })
}

pub fn generate(suite: &str, n: usize, rng: &mut Sampler, bound: i64) -> Result<Instance> {
    match suite {
        "twist-involution" => cell_instance(n, rng, bound, false),
        "roundtrip" => cell_instance(n, rng, bound, true),
        _ => {
            suite_index(suite)?;
            Ok(Instance::plain(random_matrix(n, rng, bound)))
        }
    }
}

fn quasidet_identities(x: &Matrix<Quaternion>) -> Result<Checks> {
    let n = x.rows();
    let mut c = Checks::default();
    for i in 1..=n {
        for j in 1..=n {
            for l in (1..=n).filter(|&l| l != j) {
                for s in (1..=n).filter(|&s| s != i) {
                    c.record(&homological_row(x, i, j, l, s)?);
                    c.record(&homological_col(x, i, j, s, l)?);
                }
            }
            if n <= 3 {
                let (a, b) = (quasidet(x, i, j)?, quasidet_by_expansion(x, i, j)?);
                c.expect(a == b, || format!("|A|_{{{i}{j}}}: definition {a}, expansion {b}"));
            }
        }
    }
    let inner = IndexSet::range(2, n - 1);
    for s in [1, n] {
        for t in [1, n] {
            c.record(&sylvester(x, &inner, &inner, s, t)?);
        }
    }
    let (rows, cols) = (IndexSet::range(1, n - 2), IndexSet::range(2, n - 1));
    for s in [n - 1, n] {
        for t in [1, n] {
            c.record(&sylvester(x, &rows, &cols, s, t)?);
        }
    }
    if n == 3 {
        c.record(&sylvester_three(x)?);
    }
    Ok(c)
}

/// `Δ^k_{u,v}(x)` memoized on the underlying `(I, J, i, j)`.
struct DeltaCache<'a> {
    x: &'a Matrix<Quaternion>,
    seen: RefCell<HashMap<MinorSpec, Result<Quaternion>>>,
}

impl<'a> DeltaCache<'a> {
    fn new(x: &'a Matrix<Quaternion>) -> Self {
        DeltaCache { x, seen: RefCell::new(HashMap::new()) }
    }

    fn get(&self, k: usize, u: &Permutation, v: &Permutation) -> Result<Quaternion> {
        let spec = MinorSpec::from_perms(u, v, k);
        if let Some(r) = self.seen.borrow().get(&spec) {
            return r.clone();
        }
        let r = positive_quasiminor(self.x, &spec);
        self.seen.borrow_mut().insert(spec, r.clone());
        r
    }
}

fn dodgson_suite(x: &Matrix<Quaternion>) -> Result<Checks> {
    let n = x.rows();
    let cache = DeltaCache::new(x);
    let perms = Permutation::all(n);
    let mut c = Checks::default();
    for u in &perms {
        for v in &perms {
            for i in (1..n).filter(|&i| dodgson_admissible(u, v, i)) {
                for sides in dodgson_with(|k, a, b| cache.get(k, a, b), u, v, i)? {
                    c.record(&sides);
                }
            }
        }
    }
    Ok(c)
}

fn plucker_suite(x: &Matrix<Quaternion>) -> Result<Checks> {
    let n = x.rows();
    let cache = DeltaCache::new(x);
    let perms = Permutation::all(n);
    let mut c = Checks::default();
    for u in &perms {
        for v in &perms {
            for i in 1..n.saturating_sub(1) {
                if plucker_admissible(u, i) {
                    c.record(&plucker_rows_with(|k, a, b| cache.get(k, a, b), u, v, i)?);
                }
                if plucker_admissible(v, i) {
                    c.record(&plucker_cols_with(|k, a, b| cache.get(k, a, b), u, v, i)?);
                }
            }
        }
    }
    Ok(c)
}

fn gauss_suite(x: &Matrix<Quaternion>) -> Result<Checks> {
    let mut c = Checks::default();
    let a = ldu(x)?;
    let b = ldu_elimination(x)?;
    c.expect(a.product() == *x, || "quasi-Plücker LDU does not reconstruct x".into());
    c.expect(a == b, || "quasi-Plücker LDU differs from elimination".into());
    Ok(c)
}

fn needs<'a, T>(v: &'a Option<T>, what: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::Parse(format!("instance lacks {what}")))
}

fn twist_suite(inst: &Instance) -> Result<Checks> {
    let word = needs(&inst.word, "a word")?;
    let (u, v) = (word.u(), word.v());
    let x = &inst.matrix;
    let mut c = Checks::default();
    let y = twist_reduced(x, &u, &v)?;
    c.expect(classify(&y)? == CellLabel { u: v.clone(), v: u.clone() }, || format!("ψ^{{{u},{v}}}(x) left G^{{{v},{u}}}"));
    c.expect(twist_reduced(&y, &v, &u)? == *x, || format!("ψ^{{{v},{u}}} ∘ ψ^{{{u},{v}}} ≠ id"));
    let g = twist_general(x, &u, &v)?;
    c.expect(g == y, || "general and reduced twists differ on L^{u,v}".into());
    Ok(c)
}

fn roundtrip_suite(inst: &Instance) -> Result<Checks> {
    let word = needs(&inst.word, "a word")?;
    let h = needs(&inst.h, "a torus part")?;
    let t = needs(&inst.t, "parameters")?;
    let mut c = Checks::default();
    let out = recover_params(&inst.matrix, word)?;
    c.expect(&out.h == h, || format!("h along {word}: recovered {:?}", out.h.iter().map(|q| q.to_string()).collect::<Vec<_>>()));
    c.expect(&out.t == t, || format!("t along {word}: recovered {:?}", out.t.iter().map(|q| q.to_string()).collect::<Vec<_>>()));
    let replay = product_map(word, &out.t, Some(&out.h))?;
    c.expect(replay == inst.matrix, || format!("replay along {word} differs"));
    Ok(c)
}

fn double_ratio_suite(x: &Matrix<Quaternion>) -> Result<Checks> {
    let mut c = Checks::default();
    let report = verify_double_ratios(x, false)?;
    for fam in &report.families {
        for chk in &fam.checks {
            c.expect(chk.holds, || format!("{} at {:?}: {} ≠ {}", fam.name, chk.index, chk.lhs, chk.rhs));
        }
    }
    for (name, result) in [
        ("positive standard", factor_u_w0(x).map(|f| f.replay() == *x)),
        ("negative standard", factor_w0_v(x).and_then(|f| Ok(f.replay()? == *x))),
    ] {
        match result {
            Ok(ok) => c.expect(ok, || format!("{name} factorization does not replay")),
            Err(Error::Inconsistent(w)) => c.expect(false, || format!("{name}: {w}")),
            Err(e) => return Err(e),
        }
    }
    Ok(c)
}

/// Runs the checks of `suite` on one instance. Genericity failures come
/// back as errors; a violated identity is recorded in the result.
pub fn check(suite: &str, inst: &Instance) -> Result<Checks> {
    let x = &inst.matrix;
    match suite {
        "quasidet-identities" => quasidet_identities(x),
        "dodgson" => dodgson_suite(x),
        "plucker" => plucker_suite(x),
        "gauss" => gauss_suite(x),
        "twist-involution" => twist_suite(inst),
        "roundtrip" => roundtrip_suite(inst),
        "double-ratios" => double_ratio_suite(x),
        other => Err(Error::Parse(format!("unknown suite {other:?}"))),
    }
}

fn counterexample(cfg: &VerifyConfig, trial: usize, attempt: usize, inst: &Instance, failures: Vec<String>) -> Counterexample {
    let strings = |v: &Option<Vec<Quaternion>>| v.as_ref().map(|v| v.iter().map(|q| q.to_string()).collect());
    Counterexample {
        suite: cfg.suite.clone(),
        n: cfg.n,
        trial,
        seed: cfg.seed,
        attempt,
        matrix: inst.matrix.to_json(),
        word: inst.word.as_ref().map(|w| w.to_string()),
        h: strings(&inst.h),
        t: strings(&inst.t),
        failures,
    }
}

pub fn run_trial(cfg: &VerifyConfig, trial: usize) -> Result<TrialOutcome> {
    let mut rng = trial_rng(cfg.seed, suite_index(&cfg.suite)?, trial);
    let mut last = String::new();
    for attempt in 0..=cfg.retry_budget {
        let inst = match generate(&cfg.suite, cfg.n, &mut rng, cfg.bound) {
            Ok(inst) => inst,
            Err(e) if e.is_genericity() => {
                last = e.to_string();
                continue;
            }
            Err(e) => return Err(e),
        };
        match check(&cfg.suite, &inst) {
            Ok(c) if c.failures.is_empty() => return Ok(TrialOutcome::Passed { checks: c.count, attempts: attempt + 1 }),
            Ok(c) => return Ok(TrialOutcome::Failed(Box::new(counterexample(cfg, trial, attempt, &inst, c.failures)))),
            Err(e) if e.is_genericity() => last = e.to_string(),
            Err(e) => {
                return Ok(TrialOutcome::Failed(Box::new(counterexample(cfg, trial, attempt, &inst, vec![e.to_string()]))))
            }
        }
    }
    Ok(TrialOutcome::Exhausted(last))
}

/// Runs `trials` independent trials; the report does not depend on
/// `parallel`.
pub fn run_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    suite_index(&cfg.suite)?;
    if cfg.n < min_order(&cfg.suite) {
        return Err(Error::ShapeMismatch(format!("suite {} needs n ≥ {}", cfg.suite, min_order(&cfg.suite))));
    }
    let outcomes: Vec<Result<TrialOutcome>> = if cfg.parallel {
        (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect()
    } else {
        (0..cfg.trials).map(|t| run_trial(cfg, t)).collect()
    };
    let mut report = SuiteReport {
        suite: cfg.suite.clone(),
        n: cfg.n,
        seed: cfg.seed,
        trials: cfg.trials,
        passed: 0,
        failed: 0,
        exhausted: 0,
        checks: 0,
        counterexamples: Vec::new(),
        exhausted_trials: Vec::new(),
    };
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        match outcome? {
            TrialOutcome::Passed { checks, .. } => {
                report.passed += 1;
                report.checks += checks;
            }
            TrialOutcome::Failed(c) => {
                report.failed += 1;
                report.counterexamples.push(*c);
            }
            TrialOutcome::Exhausted(msg) => {
                report.exhausted += 1;
                report.exhausted_trials.push((trial, msg));
            }
        }
    }
    Ok(report)
}
