//! JSON import and export for seeds, quivers with potential, decorated
//! representations and exchange graphs.
//!
//! Every exporter emits pretty-printed JSON from canonical values, so
//! export → import → export is byte-identical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{fmt_rat, parse_rat, ArithError, RatFunc, TropicalValue};
use crate::gca::{CoefficientMode, ExchangeGraph, GcaError, Seed};
use crate::pathalg::{CycWord, PathAlgError, Potential, Qp, DEFAULT_TRUNCATION};
use crate::quiver::{datum_from_json, datum_z_json, ExchangeMatrix, HQuiver, QuiverError, QuiverJson};
use crate::rep::{DecoratedRep, RepError};
use crate::QMatrix;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    PathAlg(#[from] PathAlgError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Gca(#[from] GcaError),
    #[error("invalid document: {0}")]
    Invalid(String),
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

/// Seed document. `x` holds canonical strings over `x1..xn, y1..yn` and the
/// datum symbols; `y` holds tropical exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    pub d: Vec<u32>,
    #[serde(default)]
    pub z: std::collections::BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub mode: CoefficientMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub label: Vec<usize>,
}

impl From<&Seed> for SeedJson {
    fn from(s: &Seed) -> Self {
        SeedJson {
            b: s.b.rows().to_vec(),
            d: s.datum.d().to_vec(),
            z: datum_z_json(&s.datum),
            mode: s.mode(),
            x: Some(s.x.iter().map(RatFunc::to_canonical).collect()),
            y: Some(s.y.iter().map(|t| t.exps().to_vec()).collect()),
            label: s.label.clone(),
        }
    }
}

impl SeedJson {
    /// Rebuilds the seed; absent `x`/`y` mean the initial values.
    pub fn to_seed(&self) -> Result<Seed, IoError> {
        let b = ExchangeMatrix::new(self.b.clone())?;
        let datum = datum_from_json(&self.d, &self.z)?;
        let mut seed = Seed::initial(b, datum, self.mode)?;
        let n = seed.n();
        if let Some(xs) = &self.x {
            if xs.len() != n {
                return Err(IoError::Invalid(format!("{} cluster variables for rank {n}", xs.len())));
            }
            seed.x = xs.iter().map(|s| RatFunc::parse(seed.ctx(), s)).collect::<Result<_, _>>()?;
        }
        if let Some(ys) = &self.y {
            if ys.len() != n {
                return Err(IoError::Invalid(format!("{} coefficients for rank {n}", ys.len())));
            }
            let trop = seed.trop_ctx().clone();
            seed.y = ys.iter().map(|e| TropicalValue::new(&trop, e.clone())).collect::<Result<_, _>>()?;
        }
        seed.label = self.label.clone();
        Ok(seed)
    }
}

pub fn export_seed(s: &Seed) -> String {
    to_pretty(&SeedJson::from(s))
}

pub fn import_seed(text: &str) -> Result<Seed, IoError> {
    serde_json::from_str::<SeedJson>(text)?.to_seed()
}

/// One potential term: `(loop power, arrow id)` pairs with 0-based arrow ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<(u32, usize)>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpJson {
    pub quiver: QuiverJson,
    #[serde(default = "default_trunc")]
    pub trunc: usize,
    pub terms: Vec<TermJson>,
}

fn default_trunc() -> usize {
    DEFAULT_TRUNCATION
}

impl From<&Qp> for QpJson {
    fn from(qp: &Qp) -> Self {
        QpJson {
            quiver: QuiverJson::from(qp.quiver()),
            trunc: qp.trunc(),
            terms: qp
                .potential()
                .terms()
                .iter()
                .map(|(w, c)| TermJson { word: w.pairs(), coeff: fmt_rat(c) })
                .collect(),
        }
    }
}

impl QpJson {
    pub fn to_qp(&self) -> Result<Qp, IoError> {
        let q = HQuiver::try_from(&self.quiver)?;
        let mut pot = Potential::zero(self.trunc);
        for t in &self.terms {
            if let Some(&(_, a)) = t.word.iter().find(|(_, a)| *a >= q.arrows().len()) {
                return Err(PathAlgError::UnknownArrow(a).into());
            }
            let w = CycWord::from_pairs(&q, &t.word).map_err(PathAlgError::BadWord)?;
            if !pot.add_term(w, parse_rat(&t.coeff)?) {
                return Err(IoError::Invalid(format!("term of length {} exceeds truncation {}", t.word.len(), self.trunc)));
            }
        }
        Ok(Qp::new(q, pot)?)
    }
}

pub fn export_qp(qp: &Qp) -> String {
    to_pretty(&QpJson::from(qp))
}

pub fn import_qp(text: &str) -> Result<Qp, IoError> {
    serde_json::from_str::<QpJson>(text)?.to_qp()
}

/// Rational matrix with explicit shape, entries as `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<String>>,
}

impl From<&QMatrix> for MatrixJson {
    fn from(m: &QMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows()).map(|r| m.row(r).iter().map(fmt_rat).collect()).collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<QMatrix, IoError> {
        if self.data.len() != self.rows || self.data.iter().any(|r| r.len() != self.cols) {
            return Err(IoError::Invalid(format!("matrix data does not match shape {}x{}", self.rows, self.cols)));
        }
        let rows = self
            .data
            .iter()
            .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QMatrix::from_rows(rows, self.cols)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub dims: Vec<usize>,
    pub loops: Vec<MatrixJson>,
    pub arrows: Vec<MatrixJson>,
    pub decoration: Vec<usize>,
}

impl From<&DecoratedRep> for RepJson {
    fn from(r: &DecoratedRep) -> Self {
        RepJson {
            dims: r.dims().to_vec(),
            loops: r.loops().iter().map(MatrixJson::from).collect(),
            arrows: r.arrow_matrices().iter().map(MatrixJson::from).collect(),
            decoration: r.decoration().to_vec(),
        }
    }
}

impl RepJson {
    pub fn to_rep(&self) -> Result<DecoratedRep, IoError> {
        let loops = self.loops.iter().map(MatrixJson::to_matrix).collect::<Result<_, _>>()?;
        let arrows = self.arrows.iter().map(MatrixJson::to_matrix).collect::<Result<_, _>>()?;
        Ok(DecoratedRep::new(self.dims.clone(), loops, arrows, self.decoration.clone())?)
    }
}

pub fn export_rep(r: &DecoratedRep) -> String {
    to_pretty(&RepJson::from(r))
}

pub fn import_rep(text: &str) -> Result<DecoratedRep, IoError> {
    serde_json::from_str::<RepJson>(text)?.to_rep()
}

/// Reads a representation and checks it against a QP.
pub fn import_rep_for(qp: &Qp, text: &str) -> Result<DecoratedRep, IoError> {
    let r = import_rep(text)?;
    r.check_shape(qp.quiver(), qp.quiver().arrows().len())?;
    if let Some(v) = crate::rep::check_rep(qp, &r)? {
        return Err(IoError::Invalid(format!("representation violates a relation: {v}")));
    }
    Ok(r)
}

pub fn export_graph(g: &ExchangeGraph) -> String {
    to_pretty(g)
}

pub fn import_graph(text: &str) -> Result<ExchangeGraph, IoError> {
    let g: ExchangeGraph = serde_json::from_str(text)?;
    let ids = g.nodes.len();
    if let Some(e) = g.edges.iter().find(|e| e.from >= ids || e.to >= ids) {
        return Err(IoError::Invalid(format!("edge {} -> {} references a missing node", e.from, e.to)));
    }
    Ok(g)
}

/// A document that is either a seed or a QP.
#[derive(Debug, Clone)]
pub enum Document {
    Seed(Seed),
    Qp(Qp),
}

/// Sniffs the document kind from its top-level keys.
pub fn import_document(text: &str) -> Result<Document, IoError> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if v.get("terms").is_some() || v.get("quiver").is_some() {
        Ok(Document::Qp(serde_json::from_value::<QpJson>(v)?.to_qp()?))
    } else {
        Ok(Document::Seed(serde_json::from_value::<SeedJson>(v)?.to_seed()?))
    }
}

pub fn export_document(d: &Document) -> String {
    match d {
        Document::Seed(s) => export_seed(s),
        Document::Qp(q) => export_qp(q),
    }
}
