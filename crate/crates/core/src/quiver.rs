//! Quivers with one nilpotent loop per vertex, exchange matrices and their
//! mutation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{fmt_rat, parse_rat, pos, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("oriented 2-cycle between vertices {0} and {1}")]
    TwoCycle(usize, usize),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("reciprocity fails at vertex {vertex}: z[{s}] != z[{t}]")]
    Reciprocity { vertex: usize, s: usize, t: usize },
    #[error("invalid mutation datum: {0}")]
    BadDatum(String),
    #[error("arrow {0} is a loop; loops are implicit")]
    ExplicitLoop(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// One-based vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub usize);

impl Vertex {
    pub fn idx(self) -> usize {
        self.0 - 1
    }
}

/// Exchange-polynomial coefficient: a number or a named symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZValue {
    Num(Rational),
    Sym(String),
}

impl ZValue {
    pub fn to_text(&self) -> String {
        match self {
            ZValue::Num(r) => fmt_rat(r),
            ZValue::Sym(s) => s.clone(),
        }
    }

    pub fn from_text(s: &str) -> Self {
        match parse_rat(s) {
            Ok(r) => ZValue::Num(r),
            Err(_) => ZValue::Sym(s.trim().to_string()),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ZValue::Num(r) if *r == rat(1))
    }
}

/// Mutation degrees `d` and exchange coefficients `z[i][s]`, `0 <= s <= d[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationDatum {
    d: Vec<u32>,
    z: Vec<Vec<ZValue>>,
}

impl MutationDatum {
    pub fn new(d: Vec<u32>, z: Vec<Vec<ZValue>>) -> Result<Self, QuiverError> {
        if d.len() != z.len() {
            return Err(QuiverError::BadDatum(format!("{} degrees but {} coefficient lists", d.len(), z.len())));
        }
        for (i, (&di, zi)) in d.iter().zip(&z).enumerate() {
            if di == 0 {
                return Err(QuiverError::BadDatum(format!("vertex {} has degree 0", i + 1)));
            }
            if zi.len() != di as usize + 1 {
                return Err(QuiverError::BadDatum(format!("vertex {} needs {} coefficients", i + 1, di + 1)));
            }
            if !zi[0].is_one() || !zi[di as usize].is_one() {
                return Err(QuiverError::BadDatum(format!("vertex {}: z[0] and z[d] must be 1", i + 1)));
            }
            for s in 0..=di as usize {
                let t = di as usize - s;
                if zi[s] != zi[t] {
                    return Err(QuiverError::Reciprocity { vertex: i + 1, s, t });
                }
            }
        }
        Ok(MutationDatum { d, z })
    }

    /// All inner coefficients are independent symbols `z{i}_{s}` with
    /// `s <= d/2`, identified across the reciprocity pairing.
    pub fn symbolic(d: Vec<u32>) -> Self {
        let z = d
            .iter()
            .enumerate()
            .map(|(i, &di)| {
                (0..=di)
                    .map(|s| {
                        let s = s.min(di - s);
                        if s == 0 {
                            ZValue::Num(rat(1))
                        } else {
                            ZValue::Sym(format!("z{}_{}", i + 1, s))
                        }
                    })
                    .collect()
            })
            .collect();
        MutationDatum { d, z }
    }

    /// Binomial-free datum with every coefficient equal to one.
    pub fn ones(d: Vec<u32>) -> Self {
        let z = d.iter().map(|&di| vec![ZValue::Num(rat(1)); di as usize + 1]).collect();
        MutationDatum { d, z }
    }

    pub fn classical(n: usize) -> Self {
        Self::ones(vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn dk(&self, k: usize) -> i64 {
        self.d[k - 1] as i64
    }

    pub fn z(&self, k: usize) -> &[ZValue] {
        &self.z[k - 1]
    }

    /// Distinct symbol names in order of first appearance.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for zi in &self.z {
            for v in zi {
                if let ZValue::Sym(s) = v {
                    if !out.contains(s) {
                        out.push(s.clone());
                    }
                }
            }
        }
        out
    }
}

/// Integer exchange matrix; `b[i][j] > 0` counts arrows `j -> i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeMatrix {
    b: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        let m = Self::new_unchecked(b)?;
        m.check_skew()?;
        Ok(m)
    }

    /// Square matrix without the skew-symmetry check.
    pub fn new_unchecked(b: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) {
            return Err(QuiverError::Parse("exchange matrix must be square".into()));
        }
        Ok(ExchangeMatrix { b })
    }

    pub fn zero(n: usize) -> Self {
        ExchangeMatrix { b: vec![vec![0; n]; n] }
    }

    pub fn check_skew(&self) -> Result<(), QuiverError> {
        let n = self.n();
        for i in 0..n {
            for j in i..n {
                if self.b[i][j] != -self.b[j][i] {
                    return Err(QuiverError::NotSkewSymmetric(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.check_skew().is_ok()
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// Entry at one-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn check_vertex(&self, k: usize) -> Result<(), QuiverError> {
        if k == 0 || k > self.n() {
            Err(QuiverError::VertexOutOfRange(k, self.n()))
        } else {
            Ok(())
        }
    }

    pub fn rank(&self) -> usize {
        let m = crate::arith::Matrix::from_rows(
            self.b.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(),
            self.n(),
        )
        .expect("square");
        m.rank()
    }
}

/// `b'_{ij} = -b_{ij}` if `k` in `{i, j}`, otherwise
/// `b_{ij} + d_k [b_{ik}]_+ [b_{kj}]_+ - d_k [-b_{ik}]_+ [-b_{kj}]_+`.
pub fn mutate_matrix(b: &ExchangeMatrix, datum: &MutationDatum, k: usize) -> Result<ExchangeMatrix, QuiverError> {
    b.check_vertex(k)?;
    let n = b.n();
    let dk = datum.dk(k);
    let kk = k - 1;
    let mut out = b.b.clone();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == kk || j == kk {
                -b.b[i][j]
            } else {
                let bik = b.b[i][kk];
                let bkj = b.b[kk][j];
                b.b[i][j] + dk * pos(bik) * pos(bkj) - dk * pos(-bik) * pos(-bkj)
            };
        }
    }
    Ok(ExchangeMatrix { b: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

/// A quiver with implicit loops `eps_i` of nilpotency degree `d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HQuiver {
    datum: MutationDatum,
    arrows: Vec<Arrow>,
}

impl HQuiver {
    pub fn new(datum: MutationDatum, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let n = datum.n();
        for (i, a) in arrows.iter().enumerate() {
            for v in [a.tail, a.head] {
                if v == 0 || v > n {
                    return Err(QuiverError::VertexOutOfRange(v, n));
                }
            }
            if a.tail == a.head {
                return Err(QuiverError::ExplicitLoop(i));
            }
        }
        Ok(HQuiver { datum, arrows })
    }

    /// Quiver realizing a skew-symmetric matrix, arrows sorted by (tail, head).
    pub fn from_matrix(b: &ExchangeMatrix, datum: MutationDatum) -> Result<Self, QuiverError> {
        b.check_skew()?;
        let n = b.n();
        let mut arrows = Vec::new();
        for t in 1..=n {
            for h in 1..=n {
                for _ in 0..pos(b.get(h, t)) {
                    arrows.push(Arrow { tail: t, head: h });
                }
            }
        }
        Self::new(datum, arrows)
    }

    pub fn n(&self) -> usize {
        self.datum.n()
    }

    pub fn datum(&self) -> &MutationDatum {
        &self.datum
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// `b_{ij} = #(j -> i) - #(i -> j)`.
    pub fn b_matrix(&self) -> ExchangeMatrix {
        let n = self.n();
        let mut b = vec![vec![0i64; n]; n];
        for a in &self.arrows {
            b[a.head - 1][a.tail - 1] += 1;
            b[a.tail - 1][a.head - 1] -= 1;
        }
        ExchangeMatrix { b }
    }

    /// Multiplicity table `count[t][h]` of arrows `t -> h` (one-based).
    pub fn counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut c = BTreeMap::new();
        for a in &self.arrows {
            *c.entry((a.tail, a.head)).or_insert(0) += 1;
        }
        c
    }

    /// An oriented 2-cycle `(i, j)` with `i < j`, if one exists.
    pub fn two_cycle_witness(&self) -> Option<(usize, usize)> {
        let c = self.counts();
        c.keys().filter(|(t, h)| t < h).find(|(t, h)| c.contains_key(&(*h, *t))).copied()
    }

    pub fn is_two_acyclic(&self) -> bool {
        self.two_cycle_witness().is_none()
    }

    /// A 2-cycle through `k`, as `(min, max)`.
    pub fn two_cycle_at(&self, k: usize) -> Option<(usize, usize)> {
        let c = self.counts();
        (1..=self.n())
            .filter(|&j| j != k)
            .find(|&j| c.contains_key(&(k, j)) && c.contains_key(&(j, k)))
            .map(|j| (k.min(j), k.max(j)))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Q {\n");
        for i in 1..=self.n() {
            let _ = writeln!(s, "  {i} [label=\"{i}\"];");
            let _ = writeln!(s, "  {i} -> {i} [label=\"eps{i}^{}\"];", self.datum.d[i - 1]);
        }
        for ((t, h), m) in self.counts() {
            if m == 1 {
                let _ = writeln!(s, "  {t} -> {h};");
            } else {
                let _ = writeln!(s, "  {t} -> {h} [label=\"{m}\"];");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Arrow-level mutation: add `d_k` composites per path through `k`, reverse
/// the arrows at `k`, then cancel 2-cycles greedily in lexicographic order.
pub fn mutate_quiver(q: &HQuiver, k: usize) -> Result<HQuiver, QuiverError> {
    let n = q.n();
    if k == 0 || k > n {
        return Err(QuiverError::VertexOutOfRange(k, n));
    }
    if let Some((i, j)) = q.two_cycle_at(k) {
        return Err(QuiverError::TwoCycle(i, j));
    }
    let dk = q.datum.d[k - 1] as usize;
    let incoming: Vec<&Arrow> = q.arrows.iter().filter(|a| a.head == k).collect();
    let outgoing: Vec<&Arrow> = q.arrows.iter().filter(|a| a.tail == k).collect();
    let mut arrows: Vec<Arrow> = q.arrows.iter().filter(|a| a.head != k && a.tail != k).copied().collect();
    for a in &incoming {
        for b in &outgoing {
            for _ in 0..dk {
                arrows.push(Arrow { tail: a.tail, head: b.head });
            }
        }
    }
    for a in q.arrows.iter().filter(|a| a.head == k || a.tail == k) {
        arrows.push(Arrow { tail: a.head, head: a.tail });
    }
    Ok(HQuiver { datum: q.datum.clone(), arrows: cancel_two_cycles(arrows) })
}

/// Removes a maximal disjoint collection of 2-cycles, pairing each arrow
/// `i -> j` with the first unused `j -> i` in lexicographic order.
pub fn cancel_two_cycles(arrows: Vec<Arrow>) -> Vec<Arrow> {
    let mut order: Vec<usize> = (0..arrows.len()).collect();
    order.sort_by_key(|&i| (arrows[i], i));
    let mut removed = vec![false; arrows.len()];
    for &i in &order {
        if removed[i] {
            continue;
        }
        let a = arrows[i];
        if let Some(&j) = order.iter().find(|&&j| !removed[j] && j != i && arrows[j].tail == a.head && arrows[j].head == a.tail) {
            removed[i] = true;
            removed[j] = true;
        }
    }
    arrows.into_iter().zip(removed).filter(|(_, r)| !r).map(|(a, _)| a).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub d: Vec<u32>,
    pub z: BTreeMap<String, Vec<String>>,
    pub arrows: Vec<[usize; 2]>,
}

impl From<&HQuiver> for QuiverJson {
    fn from(q: &HQuiver) -> Self {
        QuiverJson {
            n: q.n(),
            d: q.datum.d.clone(),
            z: datum_z_json(&q.datum),
            arrows: q.arrows.iter().map(|a| [a.tail, a.head]).collect(),
        }
    }
}

pub fn datum_z_json(datum: &MutationDatum) -> BTreeMap<String, Vec<String>> {
    datum
        .z
        .iter()
        .enumerate()
        .map(|(i, zi)| ((i + 1).to_string(), zi.iter().map(ZValue::to_text).collect()))
        .collect()
}

pub fn datum_from_json(d: &[u32], z: &BTreeMap<String, Vec<String>>) -> Result<MutationDatum, QuiverError> {
    let mut zs = Vec::with_capacity(d.len());
    for (i, &di) in d.iter().enumerate() {
        match z.get(&(i + 1).to_string()) {
            Some(v) => zs.push(v.iter().map(|s| ZValue::from_text(s)).collect()),
            None if di == 1 => zs.push(vec![ZValue::Num(rat(1)); 2]),
            None => return Err(QuiverError::BadDatum(format!("missing z for vertex {}", i + 1))),
        }
    }
    MutationDatum::new(d.to_vec(), zs)
}

impl TryFrom<&QuiverJson> for HQuiver {
    type Error = QuiverError;
    fn try_from(j: &QuiverJson) -> Result<Self, QuiverError> {
        if j.d.len() != j.n {
            return Err(QuiverError::Parse(format!("n = {} but {} degrees", j.n, j.d.len())));
        }
        let datum = datum_from_json(&j.d, &j.z)?;
        HQuiver::new(datum, j.arrows.iter().map(|[t, h]| Arrow { tail: *t, head: *h }).collect())
    }
}
