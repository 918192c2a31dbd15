//! Executable property suites with machine-readable reports.
//!
//! Each property returns a [`PropertyResult`]; suites group them. All
//! randomness is drawn from a ChaCha stream seeded by [`VerifyConfig::seed`].

pub mod classical;
pub mod library;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{pos, RatFunc};
use crate::gca::{
    f_context, gf_recursion, h_relation_check, laurent_check, mutate_seed, separation, y_mutation_images, yhat_mutation_check, CoefficientMode,
    FSignConvention, FgcState, GcaError, Seed,
};
use crate::pathalg::{mutate_qp, Qp};
use crate::quiver::{mutate_matrix, mutate_quiver, ExchangeMatrix, HQuiver, MutationDatum};
use crate::rep::fpoly::DEFAULT_PRIMES;
use crate::rep::hmodule::PivotOrder;
use crate::rep::{f_polynomial_oracle, local_freeness, mutate_rep, weight_vectors, DecoratedRep, RepError};
use crate::QPoly;

use library::{alternating, LibraryQp};

/// Largest total dimension handed to the point-counting oracle.
pub const ORACLE_MAX_DIM: usize = 8;
/// Cap for the F-mutation pairs, where both sides need the oracle and
/// `d = (2, 2)` in dimension 8 is out of reach.
pub const FMUT_MAX_DIM: usize = 7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub skipped: usize,
    pub counterexamples: Vec<Value>,
    pub notes: Vec<String>,
}

impl PropertyResult {
    fn new(name: &str) -> Self {
        PropertyResult { name: name.into(), passed: true, checked: 0, skipped: 0, counterexamples: vec![], notes: vec![] }
    }

    fn check(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.fail(payload());
        }
    }

    fn fail(&mut self, payload: Value) {
        self.passed = false;
        // Keep reports bounded.
        if self.counterexamples.len() < 20 {
            self.counterexamples.push(payload);
        }
    }

    fn error(&mut self, context: Value, e: impl fmt::Display) {
        self.fail(json!({ "case": context, "error": e.to_string() }));
    }

    fn require_min(mut self, min: usize) -> Self {
        if self.checked < min {
            self.passed = false;
            self.notes.push(format!("only {} cases checked, {min} required", self.checked));
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Involutions,
    Laurent,
    Signs,
    Interpretation,
    Fmutation,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Involutions, Suite::Laurent, Suite::Signs, Suite::Interpretation, Suite::Fmutation, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Involutions => "involutions",
            Suite::Laurent => "laurent",
            Suite::Signs => "signs",
            Suite::Interpretation => "interpretation",
            Suite::Fmutation => "fmutation",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}' (expected one of involutions, laurent, signs, interpretation, fmutation, oracle)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub conv: FSignConvention,
    pub primes: Vec<u64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, conv: FSignConvention::Classical, primes: DEFAULT_PRIMES.to_vec() }
    }
}

impl VerifyConfig {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let properties = match suite {
        Suite::Involutions => vec![matrix_involution(cfg), seed_involution(cfg), qp_involution(cfg), rep_involution(cfg), splitting_independence(cfg)],
        Suite::Laurent => vec![laurent_rank2(cfg), laurent_rank3(cfg)],
        Suite::Signs => vec![f_structure(cfg), sign_coherence(cfg), g_determinant(cfg), h_relations(cfg), separation_formula(cfg), yhat_mutation(cfg), sign_convention_divergence(cfg)],
        Suite::Interpretation => vec![interpretation(cfg)],
        Suite::Fmutation => vec![f_mutation(cfg), rep_g_rules(cfg), local_freeness_check(cfg)],
        Suite::Oracle => vec![matrix_quiver_agreement(cfg), classical_oracle(cfg)],
    };
    SuiteReport { suite, passed: properties.iter().all(|p| p.passed), seed: cfg.seed, properties }
}

// ---- random inputs ----

fn random_skew(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> ExchangeMatrix {
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-bound..=bound);
            b[i][j] = v;
            b[j][i] = -v;
        }
    }
    ExchangeMatrix::new(b).expect("skew by construction")
}

fn random_d(rng: &mut ChaCha8Rng, n: usize, max: u32) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(1..=max)).collect()
}

/// Path without immediate repetitions.
fn random_reduced_path(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<usize> {
    let mut p: Vec<usize> = Vec::with_capacity(len);
    while p.len() < len {
        let k = rng.gen_range(1..=n);
        if p.last() != Some(&k) || n == 1 {
            p.push(k);
        }
    }
    p
}

/// All reduced paths of exactly `len` steps.
fn reduced_paths(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (1..=n).filter(|&k| p.last() != Some(&k)).map(|k| [p.clone(), vec![k]].concat()).collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn seed_along(seed0: &Seed, path: &[usize]) -> Result<Seed, GcaError> {
    path.iter().try_fold(seed0.clone(), |s, &k| mutate_seed(&s, k))
}

// ---- involutions ----

pub fn matrix_involution(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("matrix-involution");
    let mut rng = cfg.rng(1);
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let b = random_skew(&mut rng, n, 3);
        let datum = MutationDatum::symbolic(random_d(&mut rng, n, 3));
        for k in 1..=n {
            let twice = mutate_matrix(&b, &datum, k).and_then(|m| mutate_matrix(&m, &datum, k));
            res.check(twice.as_ref() == Ok(&b), || json!({ "B": b.rows(), "d": datum.d(), "k": k }));
        }
    }
    res
}

pub fn seed_involution(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("seed-involution");
    let mut rng = cfg.rng(2);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let b = random_skew(&mut rng, n, 2);
        let d = random_d(&mut rng, n, 2);
        let mode = if rng.gen_bool(0.5) { CoefficientMode::TropZ } else { CoefficientMode::Principal };
        let len = rng.gen_range(0..=2);
        let path = random_reduced_path(&mut rng, n, len);
        let k = rng.gen_range(1..=n);
        let case = || json!({ "B": b.rows(), "d": d, "mode": mode, "path": path, "k": k });
        let outcome = Seed::initial(b.clone(), MutationDatum::symbolic(d.clone()), mode)
            .and_then(|s0| seed_along(&s0, &path))
            .and_then(|s| Ok((mutate_seed(&mutate_seed(&s, k)?, k)?, s)));
        match outcome {
            Ok((back, s)) => res.check(back == s, case),
            Err(e) => res.error(case(), e),
        }
    }
    res
}

pub fn qp_involution(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("qp-involution");
    for LibraryQp { name, qp, canonical_involution } in library::qp_library(cfg.seed) {
        for k in 1..=qp.quiver().n() {
            let twice = mutate_qp(&qp, k).and_then(|q| mutate_qp(&q, k));
            let q2 = match twice {
                Ok(q) => q,
                Err(e) => {
                    res.error(json!({ "qp": name, "k": k }), e);
                    continue;
                }
            };
            res.check(q2.quiver().counts() == qp.quiver().counts(), || json!({ "qp": name, "k": k, "what": "arrow counts" }));
            let same = q2.sorted_arrows() == qp.sorted_arrows();
            if canonical_involution {
                res.check(same, || json!({ "qp": name, "k": k, "what": "potential" }));
            } else if !same {
                res.notes.push(format!("{name}, k={k}: potential restored only up to right-equivalence"));
            }
        }
    }
    res
}

/// Dimensions, decoration, g and ǧ.
type RepInvariants = (Vec<usize>, Vec<usize>, Vec<i64>, Vec<i64>);

fn rep_invariants(qp: &Qp, r: &DecoratedRep) -> Result<RepInvariants, RepError> {
    let w = weight_vectors(qp, r)?;
    Ok((r.dims().to_vec(), r.decoration().to_vec(), w.g, w.g_check))
}

fn rep_case(name: &str, r: &DecoratedRep, k: usize) -> Value {
    json!({ "qp": name, "dims": r.dims(), "decoration": r.decoration(), "k": k })
}

pub fn rep_involution(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("rep-involution");
    for LibraryQp { name, qp, .. } in library::qp_library(cfg.seed) {
        for r in library::rep_library(&qp, cfg.seed) {
            for k in 1..=qp.quiver().n() {
                let outcome = (|| {
                    let m = mutate_rep(&qp, &r, k, PivotOrder::Ascending)?;
                    let back = mutate_rep(m.mutated_qp(), &m.rep, k, PivotOrder::Ascending)?;
                    Ok::<_, RepError>(rep_invariants(back.mutated_qp(), &back.rep)? == rep_invariants(&qp, &r)?)
                })();
                match outcome {
                    Ok(ok) => res.check(ok, || rep_case(&name, &r, k)),
                    Err(e) => res.error(rep_case(&name, &r, k), e),
                }
            }
        }
    }
    res
}

/// Pivot order inside the splitting must not change the isomorphism class.
pub fn splitting_independence(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("splitting-independence");
    for LibraryQp { name, qp, .. } in library::qp_library(cfg.seed) {
        for r in library::rep_library(&qp, cfg.seed) {
            for k in 1..=qp.quiver().n() {
                let outcome = (|| {
                    let a = mutate_rep(&qp, &r, k, PivotOrder::Ascending)?;
                    let b = mutate_rep(&qp, &r, k, PivotOrder::Descending)?;
                    Ok::<_, RepError>(rep_invariants(a.mutated_qp(), &a.rep)? == rep_invariants(b.mutated_qp(), &b.rep)?)
                })();
                match outcome {
                    Ok(ok) => res.check(ok, || rep_case(&name, &r, k)),
                    Err(e) => res.error(rep_case(&name, &r, k), e),
                }
            }
        }
    }
    res
}

// ---- Laurent ----

/// Rank-2 `(B, d)` pairs with `d_i ≤ 2` for which exact exchanges stay small.
pub fn rank2_laurent_family() -> Vec<(ExchangeMatrix, Vec<u32>)> {
    let mut out: Vec<_> = [[1, 1], [2, 1], [1, 2], [2, 2]].into_iter().map(|d| (library::rank2_matrix(), d.to_vec())).collect();
    out.push((library::kronecker_matrix(), vec![1, 1]));
    out
}

fn laurent_on(res: &mut PropertyResult, b: &ExchangeMatrix, d: &[u32], path: &[usize]) {
    let case = || json!({ "B": b.rows(), "d": d, "path": path });
    match Seed::initial(b.clone(), MutationDatum::symbolic(d.to_vec()), CoefficientMode::TropZ).and_then(|s| laurent_check(&s, path)) {
        Ok(rep) => {
            res.checked += rep.checked;
            for v in rep.violations {
                res.fail(json!({ "case": case(), "step": v.step, "vertex": v.vertex, "value": v.value }));
            }
        }
        Err(e) => res.error(case(), e),
    }
}

pub fn laurent_rank2(_cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("laurent-rank2");
    for (b, d) in rank2_laurent_family() {
        for (s, o) in [(1, 2), (2, 1)] {
            laurent_on(&mut res, &b, &d, &alternating(s, o, 8));
        }
    }
    res
}

pub fn laurent_rank3(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("laurent-rank3");
    let family = library::rank3_laurent_family();
    let mut rng = cfg.rng(3);
    for _ in 0..100 {
        let (b, d) = &family[rng.gen_range(0..family.len())];
        let path = random_reduced_path(&mut rng, 3, 8);
        laurent_on(&mut res, b, d, &path);
    }
    res
}

// ---- F/g structure ----

/// Seeds on which the F/g properties are run, with the path length.
fn structure_family() -> Vec<(ExchangeMatrix, Vec<u32>, usize)> {
    let mut out: Vec<_> = rank2_laurent_family().into_iter().map(|(b, d)| (b, d, 6)).collect();
    out.extend([(library::kronecker_matrix(), vec![1, 2], 4), (library::kronecker_matrix(), vec![2, 1], 4)]);
    for d in [[1, 1, 1], [1, 2, 1], [2, 2, 1], [2, 1, 2]] {
        out.push((library::cyclic3_matrix(), d.to_vec(), 3));
        out.push((library::linear3_matrix(), d.to_vec(), 3));
    }
    out
}

/// Every state visited by the recursion along every reduced path of the
/// given length, deduplicated by path.
fn visited_states(b: &ExchangeMatrix, d: &[u32], len: usize, conv: FSignConvention) -> Result<Vec<FgcState>, GcaError> {
    let datum = MutationDatum::symbolic(d.to_vec());
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for p in reduced_paths(b.n(), len) {
        for st in gf_recursion(b, &datum, &p, conv)? {
            if seen.insert(st.path.clone()) {
                out.push(st);
            }
        }
    }
    Ok(out)
}

fn for_each_state(res: &mut PropertyResult, cfg: &VerifyConfig, mut f: impl FnMut(&mut PropertyResult, &ExchangeMatrix, &[u32], &FgcState)) {
    for (b, d, len) in structure_family() {
        match visited_states(&b, &d, len, cfg.conv) {
            Ok(states) => states.iter().for_each(|st| f(res, &b, &d, st)),
            Err(e) => res.error(json!({ "B": b.rows(), "d": d }), e),
        }
    }
}

/// Constant term one and a componentwise maximal y-monomial with
/// coefficient one; coefficients are polynomials in the symbols.
fn f_shape_ok(f: &RatFunc, n: usize) -> bool {
    let Some(p) = f.as_laurent() else { return false };
    let mut groups: std::collections::BTreeMap<Vec<i32>, QPoly> = std::collections::BTreeMap::new();
    for (e, c) in p.terms() {
        if e[..n].iter().any(|&v| v < 0) {
            return false;
        }
        let mut rest = e.clone();
        rest[..n].iter_mut().for_each(|v| *v = 0);
        groups.entry(e[..n].to_vec()).or_insert_with(|| QPoly::zero(p.ctx())).add_term(rest, c.clone());
    }
    let is_one = |e: &[i32]| groups.get(e).is_some_and(QPoly::is_one);
    if !is_one(&vec![0; n]) {
        return false;
    }
    let top: Vec<i32> = (0..n).map(|i| groups.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
    is_one(&top)
}

pub fn f_structure(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("f-constant-and-top-term");
    for_each_state(&mut res, cfg, |res, b, d, st| {
        for (l, f) in st.f.iter().enumerate() {
            res.check(f_shape_ok(f, b.n()), || json!({ "B": b.rows(), "d": d, "path": st.path, "l": l + 1, "F": f.to_canonical() }));
        }
    });
    res
}

pub fn sign_coherence(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("g-sign-coherence");
    for_each_state(&mut res, cfg, |res, b, d, st| {
        for k in 0..b.n() {
            let ok = st.g.iter().all(|g| g[k] >= 0) || st.g.iter().all(|g| g[k] <= 0);
            res.check(ok, || json!({ "B": b.rows(), "d": d, "path": st.path, "row": k + 1, "g": st.g }));
        }
    });
    res
}

pub fn g_determinant(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("g-determinant");
    for_each_state(&mut res, cfg, |res, b, d, st| {
        let det = st.g_det();
        res.check(det.abs() == 1, || json!({ "B": b.rows(), "d": d, "path": st.path, "det": det }));
    });
    res
}

/// Rank-2 and rank-3 cases on which `h`-relations are compared; the
/// Kronecker matrix with `d = (2, 2)` is left out.
fn h_family() -> Vec<(ExchangeMatrix, Vec<u32>)> {
    let mut out = rank2_laurent_family();
    out.extend([(library::kronecker_matrix(), vec![1, 2]), (library::kronecker_matrix(), vec![2, 1])]);
    for d in [[1, 2, 1], [2, 2, 1], [2, 1, 2]] {
        out.push((library::cyclic3_matrix(), d.to_vec()));
        out.push((library::linear3_matrix(), d.to_vec()));
    }
    out
}

pub fn h_relations(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("h-relations");
    for (b, d) in h_family() {
        let n = b.n();
        let datum = MutationDatum::symbolic(d.clone());
        let max_len = if n == 2 { 3 } else { 2 };
        let paths: Vec<Vec<usize>> = (0..=max_len).flat_map(|l| reduced_paths(n, l)).collect();
        for p in paths {
            for k in 1..=n {
                let case = || json!({ "B": b.rows(), "d": d, "path": p, "k": k });
                match h_relation_check(&b, &datum, &p, k, cfg.conv) {
                    Ok(r) => res.check(r.ok(), || json!({ "case": case(), "g": r.g_rule_failures, "h": r.h_failures, "F": r.f_failures })),
                    Err(e) => res.error(case(), e),
                }
            }
        }
    }
    res
}

/// Compares F-polynomials under both sign conventions. Divergence is
/// reported in the notes and never counts as a failure.
pub fn sign_convention_divergence(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("f-sign-convention-divergence");
    for (b, d) in h_family() {
        let datum = MutationDatum::symbolic(d.clone());
        let mut diverged = 0;
        let mut first: Option<Vec<usize>> = None;
        for p in (1..=2).flat_map(|l| reduced_paths(b.n(), l)) {
            let ours = match gf_recursion(&b, &datum, &p, cfg.conv) {
                Ok(mut s) => s.pop().expect("initial state present").f,
                Err(e) => {
                    res.error(json!({ "B": b.rows(), "d": d, "path": p }), e);
                    continue;
                }
            };
            res.checked += 1;
            let same = gf_recursion(&b, &datum, &p, cfg.conv.other()).is_ok_and(|mut s| s.pop().is_some_and(|st| st.f == ours));
            if !same {
                diverged += 1;
                first.get_or_insert(p);
            }
        }
        if let Some(p) = first {
            res.notes.push(format!("B={:?} d={d:?}: conventions differ on {diverged} paths, first {p:?}", b.rows()));
        }
    }
    res
}

/// Separation formula against direct mutation with principal coefficients.
pub fn separation_formula(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("separation-formula");
    for (b, d) in h_family() {
        let n = b.n();
        let datum = MutationDatum::symbolic(d.clone());
        let seed0 = match Seed::initial(b.clone(), datum.clone(), CoefficientMode::Principal) {
            Ok(s) => s,
            Err(e) => {
                res.error(json!({ "B": b.rows(), "d": d }), e);
                continue;
            }
        };
        let len = if n == 2 { 4 } else { 3 };
        for p in reduced_paths(n, len) {
            let outcome = (|| {
                let states = gf_recursion(&b, &datum, &p, cfg.conv)?;
                let mut cur = seed0.clone();
                let mut bad = Vec::new();
                for (i, &k) in p.iter().enumerate() {
                    cur = mutate_seed(&cur, k)?;
                    if separation(&states[i + 1], k, &seed0)? != cur.x[k - 1] {
                        bad.push(i + 1);
                    }
                }
                Ok::<_, GcaError>(bad)
            })();
            match outcome {
                Ok(bad) => {
                    res.checked += p.len();
                    if !bad.is_empty() {
                        res.fail(json!({ "B": b.rows(), "d": d, "path": p, "steps": bad }));
                    }
                }
                Err(e) => res.error(json!({ "B": b.rows(), "d": d, "path": p }), e),
            }
        }
    }
    res
}

pub fn yhat_mutation(_cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("yhat-mutation");
    for (b, d) in h_family() {
        let n = b.n();
        for mode in [CoefficientMode::TropZ, CoefficientMode::Principal] {
            for p in (0..=2).flat_map(|l| reduced_paths(n, l)) {
                for k in 1..=n {
                    let case = || json!({ "B": b.rows(), "d": d, "mode": mode, "path": p, "k": k });
                    let outcome = Seed::initial(b.clone(), MutationDatum::symbolic(d.clone()), mode)
                        .and_then(|s| seed_along(&s, &p))
                        .and_then(|s| yhat_mutation_check(&s, k));
                    match outcome {
                        Ok(ok) => res.check(ok, case),
                        Err(e) => res.error(case(), e),
                    }
                }
            }
        }
    }
    res
}

// ---- representations ----

fn oracle_note(res: &mut PropertyResult, what: String, e: &RepError) -> bool {
    match e {
        RepError::NonPolynomialCount(_) | RepError::BadReduction(_) | RepError::Unsupported(_) => {
            res.skipped += 1;
            res.notes.push(format!("excluded {what}: {e}"));
            true
        }
        _ => false,
    }
}

/// Transports the negative simple at `l` of `μ_path(qp)` back to `qp`.
fn transported_negative(qp: &Qp, path: &[usize], l: usize) -> Result<(Qp, DecoratedRep), RepError> {
    let mut qt = qp.clone();
    for &k in path {
        qt = mutate_qp(&qt, k)?;
    }
    let mut rep = DecoratedRep::negative_simple(&qt, l);
    for &k in path.iter().rev() {
        let m = mutate_rep(&qt, &rep, k, PivotOrder::Ascending)?;
        qt = m.mutated_qp().clone();
        rep = m.rep;
    }
    Ok((qt, rep))
}

pub fn interpretation(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("interpretation");
    for d in [vec![2, 1], vec![2, 2]] {
        let qp = library::rank2(d.clone());
        let b0 = qp.quiver().b_matrix();
        let datum = qp.quiver().datum().clone();
        let paths: Vec<Vec<usize>> = (0..=4).flat_map(|len| [alternating(1, 2, len), alternating(2, 1, len)]).collect();
        for p in paths {
            let states = match gf_recursion(&b0, &datum, &p, cfg.conv) {
                Ok(s) => s,
                Err(e) => {
                    res.error(json!({ "d": d, "path": p }), e);
                    continue;
                }
            };
            let st = states.last().expect("initial state present");
            for l in 1..=2 {
                let case = || json!({ "d": d, "path": p, "l": l });
                let (q0, rep) = match transported_negative(&qp, &p, l) {
                    Ok(x) => x,
                    Err(e) => {
                        res.error(case(), e);
                        continue;
                    }
                };
                match weight_vectors(&q0, &rep) {
                    Ok(w) => res.check(w.g_check == st.g[l - 1], || json!({ "case": case(), "g_check": w.g_check, "g": st.g[l - 1] })),
                    Err(e) => res.error(case(), e),
                }
                if rep.total_dim() > ORACLE_MAX_DIM {
                    res.skipped += 1;
                    continue;
                }
                match f_polynomial_oracle(&q0, &rep, &cfg.primes) {
                    Ok(f) => {
                        let expected = &st.f[l - 1];
                        res.check(RatFunc::from(f.clone()) == *expected, || {
                            json!({ "case": case(), "oracle": f.to_canonical(), "recursion": expected.to_canonical() })
                        })
                    }
                    Err(e) => {
                        if !oracle_note(&mut res, format!("d={d:?} path={p:?} l={l}"), &e) {
                            res.error(case(), e);
                        }
                    }
                }
            }
        }
    }
    res
}

fn library_pairs(cfg: &VerifyConfig) -> Vec<(String, Qp, DecoratedRep, usize)> {
    let mut out = Vec::new();
    for LibraryQp { name, qp, .. } in library::qp_library(cfg.seed) {
        for r in library::rep_library(&qp, cfg.seed) {
            for k in 1..=qp.quiver().n() {
                out.push((name.clone(), qp.clone(), r.clone(), k));
            }
        }
    }
    out
}

/// `F_M` and `F_{μ_k M}` related through the y-mutation and the exchange
/// polynomial at `k`, weighted by `β̌₊(k)`.
pub fn f_mutation(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("f-mutation");
    for (name, qp, r, k) in library_pairs(cfg) {
        let dk = qp.quiver().datum().dk(k);
        let what = format!("{name} dims={:?} k={k}", r.dims());
        if dk > 2 {
            res.skipped += 1;
            continue;
        }
        let outcome = (|| {
            let m = mutate_rep(&qp, &r, k, PivotOrder::Ascending)?;
            if r.total_dim() > FMUT_MAX_DIM || m.rep.total_dim() > FMUT_MAX_DIM {
                return Ok(None);
            }
            let q1 = m.mutated_qp().clone();
            let w = weight_vectors(&qp, &r)?;
            let w1 = weight_vectors(&q1, &m.rep)?;
            let f0 = f_polynomial_oracle(&qp, &r, &cfg.primes)?;
            let f1 = f_polynomial_oracle(&q1, &m.rep, &cfg.primes)?;
            Ok::<_, RepError>(Some((w, w1, f0, f1)))
        })();
        let (w, w1, f0, f1) = match outcome {
            Ok(Some(x)) => x,
            Ok(None) => {
                res.skipped += 1;
                continue;
            }
            Err(e) => {
                if !oracle_note(&mut res, what, &e) {
                    res.error(rep_case(&name, &r, k), e);
                }
                continue;
            }
        };
        let ctx = f_context(qp.quiver().datum());
        let identity = (|| {
            let (yprime, sum, sum_prime) = y_mutation_images(&ctx, &qp.quiver().b_matrix(), qp.quiver().datum(), k)?;
            let kk = k - 1;
            let lhs = sum.pow_i(-w.check_beta_plus[kk])?.mul(&RatFunc::from(f0));
            let rhs = sum_prime.pow_i(-w1.check_beta_plus[kk])?.mul(&RatFunc::from(f1).substitute(&yprime)?);
            Ok::<_, GcaError>(lhs == rhs)
        })();
        match identity {
            Ok(ok) => res.check(ok, || rep_case(&name, &r, k)),
            Err(e) => res.error(rep_case(&name, &r, k), e),
        }
    }
    res.require_min(10)
}

/// g, ǧ and β transformation rules and the dimension formula at the
/// mutated vertex.
pub fn rep_g_rules(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("rep-g-rules");
    for (name, qp, r, k) in library_pairs(cfg) {
        let outcome = (|| {
            let m = mutate_rep(&qp, &r, k, PivotOrder::Ascending)?;
            let w = weight_vectors(&qp, &r)?;
            let w1 = weight_vectors(m.mutated_qp(), &m.rep)?;
            Ok::<_, RepError>((m, w, w1))
        })();
        let (m, w, w1) = match outcome {
            Ok(x) => x,
            Err(e) => {
                res.error(rep_case(&name, &r, k), e);
                continue;
            }
        };
        let q = qp.quiver();
        let n = q.n();
        let b = q.b_matrix();
        let dk = q.datum().dk(k);
        let kk = k - 1;
        let g_ok = (1..=n).all(|i| {
            let bik = b.get(i, k);
            let expect = if i == k { -w.g[kk] } else { w.g[i - 1] + dk * pos(-bik) * w.beta_minus[kk] - dk * pos(bik) * w.beta_plus[kk] };
            w1.g[i - 1] == expect
        });
        let gc_ok = (1..=n).all(|i| {
            let bki = b.get(k, i);
            let expect = if i == k {
                -w.g_check[kk]
            } else {
                w.g_check[i - 1] + dk * pos(-bki) * w.check_beta_minus[kk] - dk * pos(bki) * w.check_beta_plus[kk]
            };
            w1.g_check[i - 1] == expect
        });
        // Same rules with β± replaced by [∓g(k)]₊; equal for g-coherent reps.
        let coherent_form = (1..=n).filter(|&i| i != k).all(|i| {
            let (bik, bki) = (b.get(i, k), b.get(k, i));
            w1.g[i - 1] == w.g[i - 1] + dk * pos(-bik) * pos(w.g[kk]) - dk * pos(bik) * pos(-w.g[kk])
                && w1.g_check[i - 1] == w.g_check[i - 1] + dk * pos(-bki) * pos(w.g_check[kk]) - dk * pos(bki) * pos(-w.g_check[kk])
        });
        if !coherent_form {
            let coherent = (0..n).all(|i| w.beta_plus[i].min(w.beta_minus[i]) == 0);
            res.notes.push(format!(
                "{name} dims={:?} k={k}: [±g(k)]₊ form disagrees with the β form (g-coherent: {coherent})",
                r.dims()
            ));
        }
        let beta_ok = w.g[kk] == w1.beta_plus[kk] - w.beta_plus[kk] && w.g_check[kk] == w1.check_beta_plus[kk] - w.check_beta_plus[kk];
        let ins: i64 = q.arrows().iter().filter(|a| a.head == k).map(|a| r.dim(a.tail) as i64).sum();
        let outs: i64 = q.arrows().iter().filter(|a| a.tail == k).map(|a| r.dim(a.head) as i64).sum();
        let (dim_k, dim_new) = (r.dim(k) as i64, m.rep.dim(k) as i64);
        let dim_ok = dim_new == dk * ins - dim_k + dk * w.beta_plus[kk] + dk * w.check_beta_minus[kk]
            && dim_new == dk * outs - dim_k + dk * w.beta_minus[kk] + dk * w.check_beta_plus[kk];
        let others_ok = (1..=n).filter(|&i| i != k).all(|i| m.rep.dim(i) == r.dim(i));
        res.check(g_ok && gc_ok && beta_ok && dim_ok && others_ok, || {
            json!({ "case": rep_case(&name, &r, k), "g": g_ok, "g_check": gc_ok, "beta": beta_ok, "dim": dim_ok && others_ok })
        });
    }
    res
}

/// Left and right local freeness of the library Jacobian algebras and
/// their mutations.
pub fn local_freeness_check(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("local-freeness");
    for LibraryQp { name, qp, .. } in library::qp_library(cfg.seed) {
        let mut qps = vec![(name.clone(), qp.clone())];
        for k in 1..=qp.quiver().n() {
            match mutate_qp(&qp, k) {
                Ok(m) => qps.push((format!("mu_{k}({name})"), m)),
                Err(e) => res.error(json!({ "qp": name, "k": k }), e),
            }
        }
        for (label, q) in qps {
            match local_freeness(&q) {
                Ok(sides) => {
                    for (i, s) in sides.iter().enumerate() {
                        res.check(s.left, || json!({ "qp": label, "vertex": i + 1, "side": "left" }));
                        if s.left != s.right {
                            res.notes.push(format!("{label}, vertex {}: left free {}, right free {}", i + 1, s.left, s.right));
                        }
                    }
                }
                Err(RepError::NotFiniteDimensional(l)) => {
                    res.skipped += 1;
                    res.notes.push(format!("{label}: Jacobian algebra not stable up to length {l}"));
                }
                Err(e) => res.error(json!({ "qp": label }), e),
            }
        }
    }
    res
}

// ---- oracles ----

pub fn matrix_quiver_agreement(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("matrix-quiver-agreement");
    let mut rng = cfg.rng(4);
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let b = random_skew(&mut rng, n, 3);
        let datum = MutationDatum::symbolic(random_d(&mut rng, n, 3));
        let q = match HQuiver::from_matrix(&b, datum.clone()) {
            Ok(q) => q,
            Err(e) => {
                res.error(json!({ "B": b.rows() }), e);
                continue;
            }
        };
        for k in 1..=n {
            let case = || json!({ "B": b.rows(), "d": datum.d(), "k": k });
            match (mutate_quiver(&q, k), mutate_matrix(&b, &datum, k)) {
                (Ok(q1), Ok(b1)) => res.check(q1.b_matrix() == b1, case),
                (Err(e), _) | (_, Err(e)) => res.error(case(), e),
            }
        }
    }
    res
}

/// Classical recursion against the generalized one with `d = 1`.
pub fn classical_oracle(cfg: &VerifyConfig) -> PropertyResult {
    let mut res = PropertyResult::new("classical-oracle");
    let mut rng = cfg.rng(5);
    for _ in 0..50 {
        let n = rng.gen_range(2..=4);
        let b = random_skew(&mut rng, n, 1);
        let len = rng.gen_range(1..=8);
        let path = random_reduced_path(&mut rng, n, len);
        let case = || json!({ "B": b.rows(), "path": path });
        let datum = MutationDatum::classical(n);
        let outcome = (|| {
            let oracle = classical::classical_recursion(&b, &path)?;
            let states = gf_recursion(&b, &datum, &path, cfg.conv)?;
            let mut seed = Seed::initial(b.clone(), datum.clone(), CoefficientMode::Principal)?;
            let mut seeds = vec![seed.clone()];
            for &k in &path {
                seed = mutate_seed(&seed, k)?;
                seeds.push(seed.clone());
            }
            let mut bad = Vec::new();
            for (step, ((o, st), s)) in oracle.iter().zip(&states).zip(&seeds).enumerate() {
                let fs = |v: &[RatFunc]| v.iter().map(RatFunc::to_canonical).collect::<Vec<_>>();
                let mut what = Vec::new();
                if o.g != st.g {
                    what.push("g");
                }
                if o.c != st.c {
                    what.push("c");
                }
                if fs(&o.f) != fs(&st.f) {
                    what.push("F");
                }
                if fs(&o.x) != fs(&s.x) {
                    what.push("x");
                }
                if !what.is_empty() {
                    bad.push(json!({ "step": step, "mismatch": what }));
                }
            }
            Ok::<_, GcaError>(bad)
        })();
        match outcome {
            Ok(bad) => {
                res.checked += path.len() + 1;
                if !bad.is_empty() {
                    res.fail(json!({ "case": case(), "steps": bad }));
                }
            }
            Err(e) => res.error(case(), e),
        }
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn reduced_path_counts() {
        assert_eq!(reduced_paths(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(reduced_paths(3, 3).len(), 3 * 2 * 2);
        assert!(reduced_paths(2, 4).iter().all(|p| p.windows(2).all(|w| w[0] != w[1])));
    }

    #[test]
    fn f_shape_accepts_rank2_f() {
        let ctx = crate::arith::VarCtx::new(["y1", "y2", "z1_1"]);
        let f = RatFunc::parse(&ctx, "1 + z1_1*y1 + y1^2").unwrap();
        assert!(f_shape_ok(&f, 2));
        let g = RatFunc::parse(&ctx, "1 + 2*y1 + y2").unwrap();
        assert!(!f_shape_ok(&g, 2));
        let h = RatFunc::parse(&ctx, "1 + z1_1*y1^2").unwrap();
        assert!(!f_shape_ok(&h, 2));
    }

    #[test]
    fn rng_streams_are_reproducible() {
        let cfg = VerifyConfig::default();
        let a: u64 = cfg.rng(7).gen();
        let b: u64 = cfg.rng(7).gen();
        assert_eq!(a, b);
    }
}
