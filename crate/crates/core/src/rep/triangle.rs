//! The maps `α: M_in → M_k`, `β: M_k → M_out`, `γ: M_out → M_in` at a
//! vertex and the weight vectors derived from them.

use super::hmodule::{dim, intersect, is_free_subquotient, kernel, span, sum};
use super::{check_rep, eval_elem_with, DecoratedRep, RepError};
use crate::pathalg::{cyclic_derivative, premutate_qp, ArrowId, ArrowOrigin, Potential, Premutation, Qp};
use crate::QMatrix;

/// Triangle at vertex `k` with explicit tensor bases.
///
/// `M_in` has basis `eps^l a ⊗ m` for incoming `a: x → k`, `0 <= l < d`,
/// `m` in the standard basis of `M_x`, ordered by arrow, then `l`, then `m`.
/// `M_out` has basis `eps^f b* ⊗ m` for outgoing `b: k → y` likewise.
#[derive(Debug, Clone)]
pub struct TriangleMaps {
    pub k: usize,
    pub d: usize,
    pub incoming: Vec<ArrowId>,
    pub outgoing: Vec<ArrowId>,
    pub in_offsets: Vec<usize>,
    pub out_offsets: Vec<usize>,
    pub in_dims: Vec<usize>,
    pub out_dims: Vec<usize>,
    pub alpha: QMatrix,
    pub beta: QMatrix,
    pub gamma: QMatrix,
    pub e_k: QMatrix,
    pub e_in: QMatrix,
    pub e_out: QMatrix,
}

impl TriangleMaps {
    pub fn dim_in(&self) -> usize {
        self.alpha.cols()
    }

    pub fn dim_out(&self) -> usize {
        self.beta.rows()
    }

    pub fn in_index(&self, slot: usize, l: usize, j: usize) -> usize {
        self.in_offsets[slot] + l * self.in_dims[slot] + j
    }

    pub fn out_index(&self, slot: usize, f: usize, j: usize) -> usize {
        self.out_offsets[slot] + f * self.out_dims[slot] + j
    }
}

/// Arrow matrices of `rep` transported to the premutated quiver, with the
/// reversed arrows set to zero.
pub(crate) fn premutated_matrices(pm: &Premutation, rep: &DecoratedRep) -> Vec<QMatrix> {
    let k = pm.k;
    let q = pm.qp.quiver();
    pm.origin
        .iter()
        .enumerate()
        .map(|(id, o)| match *o {
            ArrowOrigin::Kept(a) => rep.arrow_matrix(a).clone(),
            ArrowOrigin::Composite { out, power, inc } => {
                rep.arrow_matrix(out).dot(&rep.loop_matrix(k).pow(power)).dot(rep.arrow_matrix(inc))
            }
            ArrowOrigin::Reversed(_) => {
                let a = q.arrows()[id];
                QMatrix::zeros(rep.dim(a.head), rep.dim(a.tail))
            }
        })
        .collect()
}

/// `[S]`: the premutated potential without the `Δ_k` summands.
pub(crate) fn bracket_potential(pm: &Premutation) -> Potential {
    let reversed: Vec<bool> = pm.origin.iter().map(|o| matches!(o, ArrowOrigin::Reversed(_))).collect();
    let s = pm.qp.potential();
    Potential::from_terms(s.trunc(), s.terms().iter().filter(|(w, _)| !w.arrows().iter().any(|&a| reversed[a])).map(|(w, c)| (w.clone(), c.clone())))
}

fn shift_block(d: usize, m: usize) -> QMatrix {
    let mut e = QMatrix::zeros(d * m, d * m);
    for l in 0..d.saturating_sub(1) {
        for j in 0..m {
            e.set((l + 1) * m + j, l * m + j, crate::arith::rat(1));
        }
    }
    e
}

pub fn triangle(qp: &Qp, rep: &DecoratedRep, k: usize) -> Result<TriangleMaps, RepError> {
    if let Some(v) = check_rep(qp, rep)? {
        return Err(RepError::Relation(v));
    }
    let pm = premutate_qp(qp, k)?;
    triangle_with(qp, &pm, rep)
}

pub(crate) fn triangle_with(qp: &Qp, pm: &Premutation, rep: &DecoratedRep) -> Result<TriangleMaps, RepError> {
    let k = pm.k;
    let q = qp.quiver();
    let d = q.datum().d()[k - 1] as usize;
    let arrows = q.arrows();
    let incoming: Vec<ArrowId> = (0..arrows.len()).filter(|&a| arrows[a].head == k).collect();
    let outgoing: Vec<ArrowId> = (0..arrows.len()).filter(|&a| arrows[a].tail == k).collect();
    let in_dims: Vec<usize> = incoming.iter().map(|&a| rep.dim(arrows[a].tail)).collect();
    let out_dims: Vec<usize> = outgoing.iter().map(|&b| rep.dim(arrows[b].head)).collect();
    let offsets = |dims: &[usize]| -> Vec<usize> {
        let mut o = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for &m in dims {
            o.push(acc);
            acc += d * m;
        }
        o
    };
    let in_offsets = offsets(&in_dims);
    let out_offsets = offsets(&out_dims);
    let dim_in: usize = in_dims.iter().map(|m| d * m).sum();
    let dim_out: usize = out_dims.iter().map(|m| d * m).sum();
    let mk = rep.dim(k);
    let e_k = rep.loop_matrix(k).clone();

    let mut alpha = QMatrix::zeros(mk, dim_in);
    for (s, &a) in incoming.iter().enumerate() {
        let ma = rep.arrow_matrix(a);
        for l in 0..d {
            alpha.set_block(0, in_offsets[s] + l * in_dims[s], &e_k.pow(l as u32).dot(ma));
        }
    }
    let mut beta = QMatrix::zeros(dim_out, mk);
    for (s, &b) in outgoing.iter().enumerate() {
        let mb = rep.arrow_matrix(b);
        for f in 0..d {
            beta.set_block(out_offsets[s] + f * out_dims[s], 0, &mb.dot(&e_k.pow((d - f - 1) as u32)));
        }
    }

    let bracket = bracket_potential(pm);
    let pq = pm.qp.quiver();
    let mats = premutated_matrices(pm, rep);
    let mut gamma = QMatrix::zeros(dim_in, dim_out);
    for (sb, &b) in outgoing.iter().enumerate() {
        for (sa, &a) in incoming.iter().enumerate() {
            for l in 0..d {
                let comp = pm.arrow_for(ArrowOrigin::Composite { out: b, power: l as u32, inc: a }).expect("composite arrow");
                let der = cyclic_derivative(pq, &bracket, comp);
                let dm = eval_elem_with(pq, &der, rep.loops(), &mats, in_dims[sa], out_dims[sb]);
                for f in 0..d - l {
                    let row = in_offsets[sa] + (l + f) * in_dims[sa];
                    let col = out_offsets[sb] + f * out_dims[sb];
                    gamma.set_block(row, col, &dm);
                }
            }
        }
    }
    let mut e_in = QMatrix::zeros(dim_in, dim_in);
    for (s, &m) in in_dims.iter().enumerate() {
        e_in.set_block(in_offsets[s], in_offsets[s], &shift_block(d, m));
    }
    let mut e_out = QMatrix::zeros(dim_out, dim_out);
    for (s, &m) in out_dims.iter().enumerate() {
        e_out.set_block(out_offsets[s], out_offsets[s], &shift_block(d, m));
    }
    Ok(TriangleMaps { k, d, incoming, outgoing, in_offsets, out_offsets, in_dims, out_dims, alpha, beta, gamma, e_k, e_in, e_out })
}

/// Per-vertex data `β_±`, `β̌_±` and the vectors `g`, `ǧ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVectors {
    pub beta_plus: Vec<i64>,
    pub beta_minus: Vec<i64>,
    pub check_beta_plus: Vec<i64>,
    pub check_beta_minus: Vec<i64>,
    pub g: Vec<i64>,
    pub g_check: Vec<i64>,
}

impl WeightVectors {
    pub fn add(&self, o: &Self) -> Self {
        let f = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        WeightVectors {
            beta_plus: f(&self.beta_plus, &o.beta_plus),
            beta_minus: f(&self.beta_minus, &o.beta_minus),
            check_beta_plus: f(&self.check_beta_plus, &o.check_beta_plus),
            check_beta_minus: f(&self.check_beta_minus, &o.check_beta_minus),
            g: f(&self.g, &o.g),
            g_check: f(&self.g_check, &o.g_check),
        }
    }
}

/// The four subquotients at `k` whose ranks give the weights.
#[derive(Debug, Clone)]
pub(crate) struct Subquotients {
    pub ker_alpha: QMatrix,
    pub im_alpha: QMatrix,
    pub ker_beta: QMatrix,
    pub im_beta: QMatrix,
    pub ker_gamma: QMatrix,
    pub im_gamma: QMatrix,
}

pub(crate) fn subquotients(t: &TriangleMaps) -> Subquotients {
    Subquotients {
        ker_alpha: span(&kernel(&t.alpha)),
        im_alpha: span(&t.alpha),
        ker_beta: span(&kernel(&t.beta)),
        im_beta: span(&t.beta),
        ker_gamma: span(&kernel(&t.gamma)),
        im_gamma: span(&t.gamma),
    }
}

fn free_rank(e: &QMatrix, u: &QMatrix, w: &QMatrix, d: usize, k: usize, what: &str) -> Result<i64, RepError> {
    let du = dim(u);
    let dw = dim(&intersect(u, w));
    if !is_free_subquotient(e, u, w, d) {
        let top = dim(&sum(&e.pow(d as u32 - 1).dot(u), w)) - dim(w);
        return Err(RepError::NotLocallyFreeWitness { vertex: k, what: what.into(), dim: du - dw, top });
    }
    Ok(((du - dw) / d) as i64)
}

/// Weights at a single vertex: `(β₊, β₋, β̌₊, β̌₋)` including decoration.
pub(crate) fn weights_at(t: &TriangleMaps, v: usize) -> Result<(i64, i64, i64, i64), RepError> {
    let sq = subquotients(t);
    let d = t.d;
    let k = t.k;
    let mk = t.e_k.rows();
    let full_k = QMatrix::identity(mk);
    let bp = free_rank(&t.e_k, &full_k, &sq.im_alpha, d, k, "coker alpha")?;
    let bm = free_rank(&t.e_in, &sq.ker_alpha, &sq.im_gamma, d, k, "ker alpha / im gamma")?;
    let cbp = free_rank(&t.e_k, &sq.ker_beta, &QMatrix::zeros(mk, 0), d, k, "ker beta")?;
    let cbm = free_rank(&t.e_out, &sq.ker_gamma, &sq.im_beta, d, k, "ker gamma / im beta")?;
    Ok((bp, bm + v as i64, cbp, cbm + v as i64))
}

pub fn weight_vectors(qp: &Qp, rep: &DecoratedRep) -> Result<WeightVectors, RepError> {
    if let Some(v) = check_rep(qp, rep)? {
        return Err(RepError::Relation(v));
    }
    let n = qp.quiver().n();
    let mut w = WeightVectors {
        beta_plus: vec![0; n],
        beta_minus: vec![0; n],
        check_beta_plus: vec![0; n],
        check_beta_minus: vec![0; n],
        g: vec![0; n],
        g_check: vec![0; n],
    };
    for k in 1..=n {
        let pm = premutate_qp(qp, k)?;
        let t = triangle_with(qp, &pm, rep)?;
        let (bp, bm, cbp, cbm) = weights_at(&t, rep.decoration()[k - 1])?;
        w.beta_plus[k - 1] = bp;
        w.beta_minus[k - 1] = bm;
        w.check_beta_plus[k - 1] = cbp;
        w.check_beta_minus[k - 1] = cbm;
        w.g[k - 1] = bm - bp;
        w.g_check[k - 1] = cbm - cbp;
    }
    Ok(w)
}
