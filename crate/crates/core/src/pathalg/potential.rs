//! Potentials, quivers with potential, and cyclic derivatives.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::word::{ArrowId, CycWord, Path, PathElem, QuiverShape};
use super::PathAlgError;
use crate::arith::Rational;
use crate::quiver::HQuiver;

pub const DEFAULT_TRUNCATION: usize = 12;

/// Rational combination of canonical cyclic words, truncated at arrow
/// length `trunc`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    terms: BTreeMap<CycWord, Rational>,
    trunc: usize,
}

impl Potential {
    pub fn zero(trunc: usize) -> Self {
        Potential { terms: BTreeMap::new(), trunc }
    }

    pub fn from_terms(trunc: usize, terms: impl IntoIterator<Item = (CycWord, Rational)>) -> Self {
        let mut p = Self::zero(trunc);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Adds `c · w`; returns `false` when the word exceeds the truncation.
    pub fn add_term(&mut self, w: CycWord, c: Rational) -> bool {
        if w.len() > self.trunc {
            return false;
        }
        if c.is_zero() {
            return true;
        }
        let w = w.canonical();
        let slot = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
        true
    }

    pub fn terms(&self) -> &BTreeMap<CycWord, Rational> {
        &self.terms
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &CycWord) -> Rational {
        self.terms.get(&w.canonical()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn uses_arrow(&self, a: ArrowId) -> bool {
        self.terms.keys().any(|w| w.arrows().contains(&a))
    }

    /// Image under the algebra map sending arrow `a` to `images[a]` (arrows
    /// without an entry are fixed). Returns the image and a truncation flag.
    pub fn substitute(&self, q: &impl QuiverShape, images: &BTreeMap<ArrowId, PathElem>) -> (Potential, bool) {
        let mut out = Potential::zero(self.trunc);
        let mut lost = false;
        for (w, c) in &self.terms {
            if !w.arrows().iter().any(|a| images.contains_key(a)) {
                out.add_term(w.clone(), c.clone());
                continue;
            }
            let (img, l) = substitute_word(q, w, images, self.trunc);
            lost |= l;
            for (p, d) in img.terms() {
                if let Some(cw) = p.close(q) {
                    out.add_term(cw, c * d);
                }
            }
        }
        (out, lost)
    }
}

/// Expands a cyclic word under an arrow substitution as a closed path.
pub(crate) fn substitute_word(q: &impl QuiverShape, w: &CycWord, images: &BTreeMap<ArrowId, PathElem>, trunc: usize) -> (PathElem, bool) {
    let mut lost = false;
    let pairs = w.pairs();
    let mut acc: Option<PathElem> = None;
    for &(l, a) in pairs.iter().rev() {
        let arr = q.arrow(a);
        let img = images.get(&a).cloned().unwrap_or_else(|| PathElem::single(Path::arrow(q, a), Rational::from_integer(1.into())));
        let eps = match Path::idempotent_power(q, arr.head, l) {
            Some(p) => PathElem::single(p, Rational::from_integer(1.into())),
            None => return (PathElem::zero(), false),
        };
        let (piece, l1) = eps.compose(q, &img, trunc);
        lost |= l1;
        acc = Some(match acc {
            None => piece,
            Some(r) => {
                let (x, l2) = piece.compose(q, &r, trunc);
                lost |= l2;
                x
            }
        });
    }
    (acc.unwrap_or_default(), lost)
}

/// A quiver together with a potential on its arrows.
#[derive(Debug, Clone, PartialEq)]
pub struct Qp {
    quiver: HQuiver,
    potential: Potential,
}

impl Qp {
    pub fn new(quiver: HQuiver, potential: Potential) -> Result<Self, PathAlgError> {
        let m = quiver.arrows().len();
        for w in potential.terms().keys() {
            if let Some(&a) = w.arrows().iter().find(|&&a| a >= m) {
                return Err(PathAlgError::UnknownArrow(a));
            }
            CycWord::from_pairs(&quiver, &w.pairs()).map_err(PathAlgError::BadWord)?;
        }
        Ok(Qp { quiver, potential })
    }

    pub fn with_zero_potential(quiver: HQuiver, trunc: usize) -> Self {
        Qp { quiver, potential: Potential::zero(trunc) }
    }

    pub fn quiver(&self) -> &HQuiver {
        &self.quiver
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn trunc(&self) -> usize {
        self.potential.trunc
    }

    /// Degree-two words without loops; reduced means there are none.
    pub fn quadratic_part(&self) -> Vec<(&CycWord, &Rational)> {
        self.potential.terms.iter().filter(|(w, _)| w.len() == 2 && w.loop_weight() == 0).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.quadratic_part().is_empty()
    }

    /// Same QP with arrows sorted by `(tail, head)` (stable among parallel
    /// arrows) and the potential relabeled accordingly.
    pub fn sorted_arrows(&self) -> Qp {
        let arrows = self.quiver.arrows();
        let mut order: Vec<ArrowId> = (0..arrows.len()).collect();
        order.sort_by_key(|&a| (arrows[a].tail, arrows[a].head));
        let mut new_id = vec![0; arrows.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
        }
        let quiver = HQuiver::new(self.quiver.datum().clone(), order.iter().map(|&a| arrows[a]).collect()).expect("permuted arrows of a valid quiver");
        let potential = Potential::from_terms(self.trunc(), self.potential.terms.iter().map(|(w, c)| (w.relabel(&|a| new_id[a]), c.clone())));
        Qp { quiver, potential }
    }
}

/// `∂_a S`: for each occurrence of `a`, the rest of the word read from
/// `h(a)` around to `t(a)`.
pub fn cyclic_derivative(q: &impl QuiverShape, s: &Potential, a: ArrowId) -> PathElem {
    let mut out = PathElem::zero();
    for (w, c) in s.terms() {
        for (i, &b) in w.arrows().iter().enumerate() {
            if b == a {
                out.add_term(w.cut_at(q, i), c.clone());
            }
        }
    }
    out
}

/// `∂_{eps_k} S`: every loop power `eps_k^l` contributes the `l` rotations
/// `eps^{l-1-j} a_i ... eps^j`.
pub fn eps_derivative(q: &impl QuiverShape, s: &Potential, k: usize) -> PathElem {
    let mut out = PathElem::zero();
    for (w, c) in s.terms() {
        let m = w.len();
        for i in 0..m {
            let a = w.arrows()[i];
            let l = w.loops()[i];
            if q.arrow(a).head != k || l == 0 {
                continue;
            }
            let arrows: Vec<ArrowId> = (0..m).map(|s| w.arrows()[(i + s) % m]).collect();
            for j in 0..l {
                let mut loops = vec![l - 1 - j];
                loops.extend((1..m).map(|s| w.loops()[(i + s) % m]));
                loops.push(j);
                if let Some(p) = Path::from_parts(q, k, k, arrows.clone(), loops) {
                    out.add_term(p, c.clone());
                }
            }
        }
    }
    out
}
