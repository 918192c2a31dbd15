//! Premutation, splitting into trivial and reduced parts, and QP mutation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use super::potential::{Potential, Qp};
use super::word::{ArrowId, CycWord, Path, PathElem};
use super::PathAlgError;
use crate::arith::{Matrix, Rational};
use crate::quiver::{Arrow, HQuiver};

/// Where an arrow of a premutated quiver comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowOrigin {
    Kept(ArrowId),
    /// `[b eps_k^power a]` for `a: x -> k`, `b: k -> y`.
    Composite { out: ArrowId, power: u32, inc: ArrowId },
    Reversed(ArrowId),
}

#[derive(Debug, Clone)]
pub struct Premutation {
    pub qp: Qp,
    pub k: usize,
    pub origin: Vec<ArrowOrigin>,
}

impl Premutation {
    pub fn arrow_for(&self, o: ArrowOrigin) -> Option<ArrowId> {
        self.origin.iter().position(|&x| x == o)
    }
}

fn one() -> Rational {
    Rational::one()
}

/// Rotation of `w` whose first arrow does not end at `k`.
fn rotate_off(q: &HQuiver, w: &CycWord, k: usize) -> CycWord {
    (0..w.len())
        .map(|r| w.rotate(r))
        .find(|r| q.arrows()[r.arrows()[0]].head != k)
        .expect("every cycle visits a vertex other than k")
}

/// Replaces paths through `k` by composite arrows and adds
/// `Δ_k = Σ [b eps^l a] a* eps_k^{d-1-l} b*`.
pub fn premutate_qp(qp: &Qp, k: usize) -> Result<Premutation, PathAlgError> {
    let q = qp.quiver();
    let n = q.n();
    if k == 0 || k > n {
        return Err(PathAlgError::Quiver(crate::quiver::QuiverError::VertexOutOfRange(k, n)));
    }
    if let Some((i, j)) = q.two_cycle_at(k) {
        return Err(PathAlgError::Quiver(crate::quiver::QuiverError::TwoCycle(i, j)));
    }
    let dk = q.datum().d()[k - 1];
    let arrows = q.arrows();
    let incoming: Vec<ArrowId> = (0..arrows.len()).filter(|&i| arrows[i].head == k).collect();
    let outgoing: Vec<ArrowId> = (0..arrows.len()).filter(|&i| arrows[i].tail == k).collect();

    let mut origin = Vec::new();
    let mut new_arrows = Vec::new();
    for (i, a) in arrows.iter().enumerate() {
        if a.head != k && a.tail != k {
            origin.push(ArrowOrigin::Kept(i));
            new_arrows.push(*a);
        }
    }
    for &a in &incoming {
        for &b in &outgoing {
            for l in 0..dk {
                origin.push(ArrowOrigin::Composite { out: b, power: l, inc: a });
                new_arrows.push(Arrow { tail: arrows[a].tail, head: arrows[b].head });
            }
        }
    }
    for (i, a) in arrows.iter().enumerate() {
        if a.head == k || a.tail == k {
            origin.push(ArrowOrigin::Reversed(i));
            new_arrows.push(Arrow { tail: a.head, head: a.tail });
        }
    }
    let nq = HQuiver::new(q.datum().clone(), new_arrows).map_err(PathAlgError::Quiver)?;
    let find = |o: ArrowOrigin| origin.iter().position(|&x| x == o).unwrap();

    let mut pot = Potential::zero(qp.trunc());
    for (w, c) in qp.potential().terms() {
        let w = rotate_off(q, w, k);
        let pairs = w.pairs();
        let mut out = Vec::with_capacity(pairs.len());
        let mut i = 0;
        while i < pairs.len() {
            let (l, a) = pairs[i];
            if arrows[a].tail == k {
                let (power, inc) = pairs[i + 1];
                out.push((l, find(ArrowOrigin::Composite { out: a, power, inc })));
                i += 2;
            } else {
                out.push((l, find(ArrowOrigin::Kept(a))));
                i += 1;
            }
        }
        let nw = CycWord::from_pairs(&nq, &out).map_err(PathAlgError::BadWord)?;
        pot.add_term(nw, c.clone());
    }
    for &a in &incoming {
        for &b in &outgoing {
            for l in 0..dk {
                let comp = find(ArrowOrigin::Composite { out: b, power: l, inc: a });
                let astar = find(ArrowOrigin::Reversed(a));
                let bstar = find(ArrowOrigin::Reversed(b));
                let w = CycWord::from_pairs(&nq, &[(0, comp), (0, astar), (dk - 1 - l, bstar)]).map_err(PathAlgError::BadWord)?;
                pot.add_term(w, one());
            }
        }
    }
    Ok(Premutation { qp: Qp::new(nq, pot)?, k, origin })
}

/// One change of variables applied during reduction. Arrow ids refer to
/// the quiver being reduced throughout.
#[derive(Debug, Clone)]
pub enum ReductionStep {
    /// New arrow at `slot` equals `Σ coeff · old arrow`.
    Linear { defs: Vec<(ArrowId, Vec<(ArrowId, Rational)>)> },
    /// Automorphism `arrow ↦ arrow − coeff · path`.
    Unitriangular { arrow: ArrowId, coeff: Rational, path: Path },
}

#[derive(Debug, Clone)]
pub struct ChangeLog {
    pub steps: Vec<ReductionStep>,
    /// Pairs `(x, y)` with `x y` a summand of the trivial potential.
    pub trivial_pairs: Vec<(ArrowId, ArrowId)>,
    /// Old id of each arrow of the reduced quiver.
    pub reduced_arrows: Vec<ArrowId>,
    pub trivial_arrows: Vec<ArrowId>,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub trivial: Qp,
    pub reduced: Qp,
    pub log: ChangeLog,
    pub truncation_loss: bool,
}

const MAX_ROUNDS: usize = 20_000;

/// Greedy matching of rows to columns by descending `|x|`, ties by index.
fn greedy_matching(x: &Matrix<Rational>, size: usize, rows_first: bool) -> Vec<(usize, usize)> {
    let mut cand: Vec<(Rational, usize, usize)> = Vec::new();
    for r in 0..x.rows() {
        for c in 0..x.cols() {
            if !x.get(r, c).is_zero() {
                cand.push((x.get(r, c).abs(), r, c));
            }
        }
    }
    cand.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut used_r = BTreeSet::new();
    let mut used_c = BTreeSet::new();
    let mut out = Vec::new();
    for (_, r, c) in cand {
        if out.len() == size {
            break;
        }
        if !used_r.contains(&r) && !used_c.contains(&c) {
            used_r.insert(r);
            used_c.insert(c);
            out.push((r, c));
        }
    }
    if rows_first {
        out.sort();
    } else {
        out.sort_by_key(|&(r, c)| (c, r));
    }
    out
}

/// Splits a QP into a trivial part `Σ x_i y_i` and a reduced part.
pub fn split_reduce(qp: &Qp) -> Result<Reduction, PathAlgError> {
    let q = qp.quiver();
    let arrows = q.arrows();
    let n = q.n();
    let mut s = qp.potential().clone();
    let mut steps = Vec::new();
    let mut pairs: Vec<(ArrowId, ArrowId)> = Vec::new();
    let mut lost = false;

    for i in 1..=n {
        for j in i + 1..=n {
            let p_ids: Vec<ArrowId> = (0..arrows.len()).filter(|&x| arrows[x].tail == i && arrows[x].head == j).collect();
            let q_ids: Vec<ArrowId> = (0..arrows.len()).filter(|&x| arrows[x].tail == j && arrows[x].head == i).collect();
            if p_ids.is_empty() || q_ids.is_empty() {
                continue;
            }
            let mut x = Matrix::zeros(p_ids.len(), q_ids.len());
            for (pi, &a) in p_ids.iter().enumerate() {
                for (qi, &b) in q_ids.iter().enumerate() {
                    let w = CycWord::from_pairs(q, &[(0, a), (0, b)]).map_err(PathAlgError::BadWord)?;
                    x.set(pi, qi, s.coeff(&w));
                }
            }
            let full = p_ids.len().min(q_ids.len());
            let rank = x.rank();
            if rank < full {
                return Err(PathAlgError::DegeneratePotential { i, j, rank, needed: full });
            }
            // Orient so that rows are the smaller side: rows become trivial
            // arrows, and the chosen columns are replaced by new arrows.
            let (rows, cols, xm) = if p_ids.len() <= q_ids.len() { (p_ids, q_ids, x) } else { (q_ids, p_ids, x.transpose()) };
            let mut matching = greedy_matching(&xm, full, true);
            let jsel: Vec<usize> = matching.iter().map(|&(_, c)| c).collect();
            if matching.len() < full || xm.select_cols(&jsel).det().is_zero() {
                let piv = xm.rref().pivots;
                matching = (0..full).map(|r| (r, piv[r])).collect();
            }
            let jsel: Vec<usize> = matching.iter().map(|&(_, c)| c).collect();
            let jc: Vec<usize> = (0..cols.len()).filter(|c| !jsel.contains(c)).collect();
            let y = xm.select_cols(&jsel);
            let yinv = y.inverse().map_err(|_| PathAlgError::DegeneratePotential { i, j, rank, needed: full })?;
            let yz = yinv.dot(&xm.select_cols(&jc));
            let mut images: BTreeMap<ArrowId, PathElem> = BTreeMap::new();
            for (pr, &col) in jsel.iter().enumerate() {
                let mut e = PathElem::zero();
                for (sr, &scol) in jsel.iter().enumerate() {
                    e.add_term(Path::arrow(q, cols[scol]), yinv.get(pr, sr).clone());
                }
                for (t, &c) in jc.iter().enumerate() {
                    e.add_term(Path::arrow(q, cols[c]), -yz.get(pr, t).clone());
                }
                images.insert(cols[col], e);
            }
            let defs = (0..full)
                .map(|r| {
                    let slot = cols[jsel[r]];
                    let comb = (0..cols.len()).filter(|&c| !xm.get(r, c).is_zero()).map(|c| (cols[c], xm.get(r, c).clone())).collect();
                    (slot, comb)
                })
                .collect();
            let (ns, l) = s.substitute(q, &images);
            lost |= l;
            s = ns;
            steps.push(ReductionStep::Linear { defs });
            for r in 0..full {
                pairs.push((rows[r], cols[jsel[r]]));
            }
        }
    }

    let partner: BTreeMap<ArrowId, ArrowId> = pairs.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    let quad: BTreeSet<CycWord> = pairs
        .iter()
        .map(|&(a, b)| CycWord::from_pairs(q, &[(0, a), (0, b)]).expect("2-cycle"))
        .collect();
    let mut rounds = 0;
    loop {
        let coupling = s
            .terms()
            .iter()
            .filter(|(w, _)| !quad.contains(*w) && w.arrows().iter().any(|a| partner.contains_key(a)))
            .min_by_key(|(w, _)| (w.len(), w.loop_weight(), (*w).clone()));
        let Some((w, c)) = coupling else { break };
        let (w, c) = (w.clone(), c.clone());
        let pos = w.arrows().iter().position(|a| partner.contains_key(a)).unwrap();
        let x = w.arrows()[pos];
        let y = partner[&x];
        let u = w.cut_at(q, pos);
        // x·y has coefficient one, so y ↦ y − c·u cancels c·x·u.
        let quad_coeff = s.coeff(&CycWord::from_pairs(q, &[(0, x), (0, y)]).expect("2-cycle"));
        let coeff = c / quad_coeff;
        let mut img = PathElem::single(Path::arrow(q, y), one());
        img.add_term(u.clone(), -coeff.clone());
        let (ns, l) = s.substitute(q, &BTreeMap::from([(y, img)]));
        lost |= l;
        s = ns;
        steps.push(ReductionStep::Unitriangular { arrow: y, coeff, path: u });
        rounds += 1;
        if rounds > MAX_ROUNDS {
            return Err(PathAlgError::TooManyRounds(MAX_ROUNDS));
        }
    }

    let trivial_set: BTreeSet<ArrowId> = partner.keys().copied().collect();
    let trivial_arrows: Vec<ArrowId> = trivial_set.iter().copied().collect();
    let reduced_arrows: Vec<ArrowId> = (0..arrows.len()).filter(|a| !trivial_set.contains(a)).collect();
    let (trivial, reduced) = split_parts(qp, &s, &trivial_arrows, &reduced_arrows)?;
    Ok(Reduction {
        trivial,
        reduced,
        log: ChangeLog { steps, trivial_pairs: pairs, reduced_arrows, trivial_arrows },
        truncation_loss: lost,
    })
}

fn restrict(qp: &Qp, s: &Potential, keep: &[ArrowId], pick: impl Fn(&CycWord) -> bool) -> Result<Qp, PathAlgError> {
    let q = qp.quiver();
    let new_id: BTreeMap<ArrowId, ArrowId> = keep.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let arrows = keep.iter().map(|&a| q.arrows()[a]).collect();
    let nq = HQuiver::new(q.datum().clone(), arrows).map_err(PathAlgError::Quiver)?;
    let mut pot = Potential::zero(s.trunc());
    for (w, c) in s.terms() {
        if pick(w) {
            pot.add_term(w.relabel(&|a| new_id[&a]), c.clone());
        }
    }
    Qp::new(nq, pot)
}

fn split_parts(qp: &Qp, s: &Potential, trivial: &[ArrowId], reduced: &[ArrowId]) -> Result<(Qp, Qp), PathAlgError> {
    let tset: BTreeSet<ArrowId> = trivial.iter().copied().collect();
    for w in s.terms().keys() {
        let t = w.arrows().iter().filter(|a| tset.contains(a)).count();
        if t != 0 && t != w.len() {
            return Err(PathAlgError::ReductionIncomplete(format!("{:?}", w.pairs())));
        }
    }
    let tq = restrict(qp, s, trivial, |w| tset.contains(&w.arrows()[0]))?;
    let rq = restrict(qp, s, reduced, |w| !tset.contains(&w.arrows()[0]))?;
    Ok((tq, rq))
}

/// The mutated QP together with the intermediate data needed to transport
/// representations.
#[derive(Debug, Clone)]
pub struct QpMutation {
    pub premutation: Premutation,
    pub reduction: Reduction,
}

impl QpMutation {
    pub fn result(&self) -> &Qp {
        &self.reduction.reduced
    }
}

pub fn mutate_qp_full(qp: &Qp, k: usize) -> Result<QpMutation, PathAlgError> {
    if !qp.is_reduced() {
        return Err(PathAlgError::NotReduced);
    }
    let premutation = premutate_qp(qp, k)?;
    let reduction = split_reduce(&premutation.qp)?;
    Ok(QpMutation { premutation, reduction })
}

/// `μ_k`: premutation followed by taking the reduced part.
pub fn mutate_qp(qp: &Qp, k: usize) -> Result<Qp, PathAlgError> {
    Ok(mutate_qp_full(qp, k)?.reduction.reduced)
}
