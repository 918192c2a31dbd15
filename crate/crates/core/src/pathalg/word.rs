//! Paths and cyclic words in the path algebra with nilpotent loops.
//!
//! A path is `eps^{l_0} a_1 eps^{l_1} a_2 ... a_m eps^{l_m}`, composed right
//! to left: `a_m` acts first. Loop power `l_i` (`i < m`) sits at `h(a_{i+1})`
//! and `l_m` at the start vertex.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::Rational;
use crate::quiver::{Arrow, HQuiver};

pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: usize,
    end: usize,
    arrows: Vec<ArrowId>,
    loops: Vec<u32>,
}

/// Endpoint and loop-degree lookups a path needs.
pub trait QuiverShape {
    fn arrow(&self, id: ArrowId) -> Arrow;
    fn degree(&self, v: usize) -> u32;
}

impl QuiverShape for HQuiver {
    fn arrow(&self, id: ArrowId) -> Arrow {
        self.arrows()[id]
    }
    fn degree(&self, v: usize) -> u32 {
        self.datum().d()[v - 1]
    }
}

impl Path {
    /// `eps_v^l`, or `None` if the power vanishes.
    pub fn idempotent_power(q: &impl QuiverShape, v: usize, l: u32) -> Option<Self> {
        (l < q.degree(v)).then(|| Path { start: v, end: v, arrows: vec![], loops: vec![l] })
    }

    pub fn arrow(q: &impl QuiverShape, id: ArrowId) -> Self {
        let a = q.arrow(id);
        Path { start: a.tail, end: a.head, arrows: vec![id], loops: vec![0, 0] }
    }

    /// Builds a path from its parts, returning `None` on a vanishing loop power.
    pub fn from_parts(q: &impl QuiverShape, start: usize, end: usize, arrows: Vec<ArrowId>, loops: Vec<u32>) -> Option<Self> {
        assert_eq!(loops.len(), arrows.len() + 1, "one loop slot per gap");
        let p = Path { start, end, arrows, loops };
        p.check_shape(q);
        p.loops_ok(q).then_some(p)
    }

    fn check_shape(&self, q: &impl QuiverShape) {
        if self.arrows.is_empty() {
            assert_eq!(self.start, self.end, "empty path with distinct endpoints");
            return;
        }
        assert_eq!(q.arrow(self.arrows[0]).head, self.end, "path end mismatch");
        assert_eq!(q.arrow(*self.arrows.last().unwrap()).tail, self.start, "path start mismatch");
        for w in self.arrows.windows(2) {
            assert_eq!(q.arrow(w[0]).tail, q.arrow(w[1]).head, "incompatible consecutive arrows");
        }
    }

    fn loop_vertex(&self, q: &impl QuiverShape, i: usize) -> usize {
        if i < self.arrows.len() {
            q.arrow(self.arrows[i]).head
        } else {
            self.start
        }
    }

    fn loops_ok(&self, q: &impl QuiverShape) -> bool {
        (0..self.loops.len()).all(|i| self.loops[i] < q.degree(self.loop_vertex(q, i)))
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    /// Arrow length (loops do not count).
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self ∘ right` (right acts first); `None` if a merged loop vanishes.
    pub fn compose(&self, q: &impl QuiverShape, right: &Path) -> Option<Path> {
        assert_eq!(self.start, right.end, "composing paths with mismatched endpoints");
        let m = self.arrows.len();
        let mut loops = self.loops[..m].to_vec();
        loops.push(self.loops[m] + right.loops[0]);
        loops.extend_from_slice(&right.loops[1..]);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&right.arrows);
        let merged_at = if right.arrows.is_empty() { right.start } else { q.arrow(right.arrows[0]).head };
        if loops[m] >= q.degree(merged_at) {
            return None;
        }
        Some(Path { start: right.start, end: self.end, arrows, loops })
    }

    /// Closes a path with equal endpoints into a cyclic word.
    pub fn close(&self, q: &impl QuiverShape) -> Option<CycWord> {
        assert_eq!(self.start, self.end);
        if self.arrows.is_empty() {
            return None;
        }
        let m = self.arrows.len();
        let mut loops = self.loops[..m].to_vec();
        loops[0] += self.loops[m];
        if loops[0] >= q.degree(self.end) {
            return None;
        }
        Some(CycWord { arrows: self.arrows.clone(), loops }.canonical())
    }
}

/// Cyclic word `eps^{l_1} a_1 ... eps^{l_m} a_m` with `l_i` at `h(a_i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycWord {
    arrows: Vec<ArrowId>,
    loops: Vec<u32>,
}

impl CycWord {
    /// Builds a word from `(loop, arrow)` pairs after validating it.
    pub fn from_pairs(q: &impl QuiverShape, pairs: &[(u32, ArrowId)]) -> Result<Self, String> {
        let m = pairs.len();
        if m < 2 {
            return Err(format!("cyclic word needs at least two arrows, got {m}"));
        }
        for i in 0..m {
            let (l, a) = pairs[i];
            let (_, b) = pairs[(i + 1) % m];
            let (aa, bb) = (q.arrow(a), q.arrow(b));
            if aa.tail != bb.head {
                return Err(format!("arrows {a} and {b} are not composable"));
            }
            if l >= q.degree(aa.head) {
                return Err(format!("loop power {l} at vertex {} vanishes", aa.head));
            }
        }
        Ok(CycWord { arrows: pairs.iter().map(|p| p.1).collect(), loops: pairs.iter().map(|p| p.0).collect() }.canonical())
    }

    pub fn pairs(&self) -> Vec<(u32, ArrowId)> {
        self.loops.iter().copied().zip(self.arrows.iter().copied()).collect()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn loop_weight(&self) -> u32 {
        self.loops.iter().sum()
    }

    pub fn rotate(&self, r: usize) -> CycWord {
        let m = self.arrows.len();
        CycWord {
            arrows: (0..m).map(|i| self.arrows[(i + r) % m]).collect(),
            loops: (0..m).map(|i| self.loops[(i + r) % m]).collect(),
        }
    }

    /// Lexicographically least rotation of the `(arrow, loop)` sequence.
    pub fn canonical(&self) -> CycWord {
        let m = self.arrows.len();
        let key = |w: &CycWord| -> Vec<(ArrowId, u32)> { w.arrows.iter().copied().zip(w.loops.iter().copied()).collect() };
        (0..m).map(|r| self.rotate(r)).min_by_key(key).unwrap()
    }

    /// The word read as a closed path starting and ending at `h(a_1)`.
    pub fn as_path(&self, q: &impl QuiverShape) -> Path {
        let v = q.arrow(self.arrows[0]).head;
        let mut loops = self.loops.clone();
        loops.push(0);
        Path { start: v, end: v, arrows: self.arrows.clone(), loops }
    }

    /// `(rest, first)` such that the word equals `a_i · rest` cyclically,
    /// where `rest` runs from `h(a_i)` to `t(a_i)`.
    pub fn cut_at(&self, q: &impl QuiverShape, i: usize) -> Path {
        let m = self.arrows.len();
        let arrows: Vec<ArrowId> = (1..m).map(|s| self.arrows[(i + s) % m]).collect();
        let mut loops: Vec<u32> = (1..m).map(|s| self.loops[(i + s) % m]).collect();
        loops.push(self.loops[i]);
        let a = q.arrow(self.arrows[i]);
        Path { start: a.head, end: a.tail, arrows, loops }
    }

    pub fn relabel(&self, map: &impl Fn(ArrowId) -> ArrowId) -> CycWord {
        CycWord { arrows: self.arrows.iter().map(|&a| map(a)).collect(), loops: self.loops.clone() }.canonical()
    }
}

/// Finite rational combination of paths.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PathElem {
    terms: BTreeMap<Path, Rational>,
}

impl PathElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(p: Path, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn add_term(&mut self, p: Path, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&mut self, o: &PathElem, scale: &Rational) {
        for (p, c) in &o.terms {
            self.add_term(p.clone(), c * scale);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Path, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_len(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    /// Product `self · right`, dropping terms longer than `trunc`; the flag
    /// reports whether anything was dropped.
    pub fn compose(&self, q: &impl QuiverShape, right: &PathElem, trunc: usize) -> (PathElem, bool) {
        let mut out = PathElem::zero();
        let mut lost = false;
        for (p, c) in &self.terms {
            for (r, d) in &right.terms {
                if p.len() + r.len() > trunc {
                    lost = true;
                    continue;
                }
                if let Some(pr) = p.compose(q, r) {
                    out.add_term(pr, c * d);
                }
            }
        }
        (out, lost)
    }
}
