//! Session state: a live seed, an optional QP and an undo stack.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use hqp::gca::{explore, gf_recursion, mutate_seed, CoefficientMode, ExploreMode, FSignConvention, GcaError, Seed};
use hqp::io::{self, Document, IoError, QpJson, SeedJson};
use hqp::pathalg::{mutate_qp_full, PathAlgError, Qp};

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("no such session: {0}")]
    NotFound(String),
    #[error("nothing to undo")]
    EmptyHistory,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("storage: {0}")]
    Storage(#[from] std::io::Error),
}

impl From<IoError> for SessionError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Json(e) => SessionError::BadRequest(e.to_string()),
            IoError::Invalid(m) => SessionError::BadRequest(m),
            IoError::Arith(e) => SessionError::BadRequest(e.to_string()),
            IoError::Quiver(e) => SessionError::BadRequest(e.to_string()),
            other => SessionError::Precondition(other.to_string()),
        }
    }
}

impl From<GcaError> for SessionError {
    fn from(e: GcaError) -> Self {
        SessionError::Precondition(e.to_string())
    }
}

impl From<PathAlgError> for SessionError {
    fn from(e: PathAlgError) -> Self {
        SessionError::Precondition(e.to_string())
    }
}

/// Serialized form of the live part of a session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub seed: SeedJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qp: Option<QpJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub snapshot: Snapshot,
    /// Vertex that was mutated to leave this snapshot.
    pub k: usize,
}

/// Everything persisted for one session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Session {
    pub id: String,
    pub rng_seed: u64,
    /// Snapshot the session was created from; invariants are relative to it.
    pub root: Snapshot,
    pub current: Snapshot,
    pub history: Vec<HistoryEntry>,
}

/// Options shared by every session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionOptions {
    pub semifield: Option<CoefficientMode>,
    pub trunc: Option<usize>,
    pub conv: FSignConvention,
}

impl Default for SessionOptions {
    fn default() -> Self {
        SessionOptions { semifield: None, trunc: None, conv: FSignConvention::Classical }
    }
}

/// Applies `--semifield` and `--trunc-degree` to a raw seed or QP document.
pub fn apply_overrides(mut v: Value, opts: &SessionOptions) -> Value {
    if let Value::Object(m) = &mut v {
        let is_qp = m.contains_key("terms") || m.contains_key("quiver");
        if is_qp {
            if let Some(t) = opts.trunc {
                m.insert("trunc".into(), json!(t));
            }
        } else if let Some(mode) = opts.semifield {
            m.insert("mode".into(), serde_json::to_value(mode).expect("mode serializes"));
        }
    }
    v
}

pub fn parse_document(text: &str, opts: &SessionOptions) -> Result<Document, IoError> {
    let v: Value = serde_json::from_str(text)?;
    io::import_document(&apply_overrides(v, opts).to_string())
}

impl Snapshot {
    /// A QP document also yields the seed with its exchange matrix.
    pub fn from_document(doc: &Document, opts: &SessionOptions) -> Result<Self, SessionError> {
        Ok(match doc {
            Document::Seed(s) => Snapshot { seed: SeedJson::from(s), qp: None },
            Document::Qp(qp) => {
                let q = qp.quiver();
                let mode = opts.semifield.unwrap_or_default();
                let seed = Seed::initial(q.b_matrix(), q.datum().clone(), mode)?;
                Snapshot { seed: SeedJson::from(&seed), qp: Some(QpJson::from(qp)) }
            }
        })
    }

    pub fn seed(&self) -> Result<Seed, SessionError> {
        Ok(self.seed.to_seed()?)
    }

    pub fn qp(&self) -> Result<Option<Qp>, SessionError> {
        Ok(self.qp.as_ref().map(QpJson::to_qp).transpose()?)
    }

    /// Mutation at `k`, plus the number of 2-cycles removed from the QP.
    pub fn mutate(&self, k: usize) -> Result<(Snapshot, Option<usize>), SessionError> {
        let seed = mutate_seed(&self.seed()?, k)?;
        let (qp, cancelled) = match self.qp()? {
            Some(qp) => {
                let m = mutate_qp_full(&qp, k)?;
                let cancelled = m.reduction.log.trivial_pairs.len();
                (Some(QpJson::from(m.result())), Some(cancelled))
            }
            None => (None, None),
        };
        Ok((Snapshot { seed: SeedJson::from(&seed), qp }, cancelled))
    }
}

impl Session {
    pub fn new(id: String, rng_seed: u64, snapshot: Snapshot) -> Self {
        Session { id, rng_seed, root: snapshot.clone(), current: snapshot, history: Vec::new() }
    }

    /// Public view of the live state.
    pub fn state(&self) -> Value {
        json!({
            "id": self.id,
            "rng_seed": self.rng_seed,
            "seed": self.current.seed,
            "qp": self.current.qp,
            "history": self.history.iter().map(|h| h.k).collect::<Vec<_>>(),
        })
    }

    pub fn mutate(&mut self, k: usize) -> Result<(), SessionError> {
        let (next, _) = self.current.mutate(k)?;
        let prev = std::mem::replace(&mut self.current, next);
        self.history.push(HistoryEntry { snapshot: prev, k });
        Ok(())
    }

    pub fn undo(&mut self) -> Result<(), SessionError> {
        let h = self.history.pop().ok_or(SessionError::EmptyHistory)?;
        self.current = h.snapshot;
        Ok(())
    }

    /// What `mutate(k)` would produce, without touching the session.
    pub fn preview(&self, k: usize) -> Result<Value, SessionError> {
        let (next, cancelled) = self.current.mutate(k)?;
        let before = &self.current.seed;
        let changed: Vec<usize> = match (&before.x, &next.seed.x) {
            (Some(a), Some(b)) => (0..a.len()).filter(|&i| a[i] != b[i]).map(|i| i + 1).collect(),
            _ => vec![],
        };
        Ok(json!({
            "k": k,
            "seed": next.seed,
            "qp": next.qp,
            "diff": {
                "changed_x": changed,
                "B_before": before.b,
                "B_after": next.seed.b,
                "cancelled_two_cycles": cancelled,
            }
        }))
    }

    /// Mutation path from the root, as applied.
    pub fn path(&self) -> Vec<usize> {
        self.history.iter().map(|h| h.k).collect()
    }

    /// g-, c-vectors and F-polynomials of the current seed relative to the
    /// root, with the structural checks evaluated on them.
    pub fn invariants(&self, conv: FSignConvention) -> Result<Value, SessionError> {
        let root = self.root.seed()?;
        let path = self.path();
        let st = gf_recursion(&root.b, &root.datum, &path, conv)?.pop().expect("initial state");
        let agrees = gf_recursion(&root.b, &root.datum, &path, conv.other()).is_ok_and(|mut o| o.pop().is_some_and(|o| o.f == st.f));
        let n = root.n();
        let coherent: Vec<bool> = (0..n).map(|k| st.g.iter().all(|g| g[k] >= 0) || st.g.iter().all(|g| g[k] <= 0)).collect();
        Ok(json!({
            "path": path,
            "label": st.path,
            "B": st.b.rows(),
            "g": st.g,
            "c": st.c,
            "F": st.f.iter().map(|f| f.to_canonical()).collect::<Vec<_>>(),
            "det_G": st.g_det(),
            "sign_coherent": coherent,
            "f_sign_convention": conv,
            "other_convention_agrees": agrees,
        }))
    }

    pub fn graph(&self, depth: usize, budget: usize) -> Result<Value, SessionError> {
        let g = explore(&self.current.seed()?, depth, ExploreMode::Labeled, budget)?;
        Ok(serde_json::from_str(&io::export_graph(&g)).expect("graph export is JSON"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank2() -> Snapshot {
        let doc = parse_document(r#"{"B": [[0, 1], [-1, 0]], "d": [2, 1], "z": {"1": ["1", "z", "1"]}}"#, &SessionOptions::default()).unwrap();
        Snapshot::from_document(&doc, &SessionOptions::default()).unwrap()
    }

    #[test]
    fn mutate_then_undo_restores_state() {
        let mut s = Session::new("a".into(), 0, rank2());
        let before = serde_json::to_string(&s.state()).unwrap();
        s.mutate(1).unwrap();
        assert_ne!(serde_json::to_string(&s.state()).unwrap(), before);
        s.undo().unwrap();
        assert_eq!(serde_json::to_string(&s.state()).unwrap(), before);
        assert!(matches!(s.undo(), Err(SessionError::EmptyHistory)));
    }

    #[test]
    fn preview_is_pure() {
        let s = Session::new("a".into(), 0, rank2());
        let before = s.clone();
        let p1 = s.preview(2).unwrap();
        let p2 = s.preview(2).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(s, before);
        assert_eq!(p1["diff"]["changed_x"], json!([2]));
    }

    #[test]
    fn overrides_reach_documents() {
        let opts = SessionOptions { semifield: Some(CoefficientMode::Principal), trunc: Some(7), ..Default::default() };
        let v = apply_overrides(json!({"B": [[0]], "d": [1], "z": {}}), &opts);
        assert_eq!(v["mode"], json!("principal"));
        let q = apply_overrides(json!({"quiver": {}, "terms": []}), &opts);
        assert_eq!(q["trunc"], json!(7));
        assert!(q.get("mode").is_none());
    }
}
