//! Mutation of decorated representations.

use super::hmodule::{chains, dim, extend, intersect, is_free_subquotient, shift_matrix, PivotOrder};
use super::triangle::{premutated_matrices, subquotients, triangle_with, weights_at, TriangleMaps};
use super::{check_rep, eval_path_with, DecoratedRep, RepError};
use crate::arith::rat;
use crate::pathalg::{mutate_qp_full, ArrowOrigin, ChangeLog, Qp, QpMutation, QuiverShape, ReductionStep};
use crate::QMatrix;

#[derive(Debug, Clone)]
pub struct RepMutation {
    pub qp: QpMutation,
    /// Representation of the premutated QP before reduction.
    pub premutated: DecoratedRep,
    /// Representation of the mutated (reduced) QP.
    pub rep: DecoratedRep,
}

impl RepMutation {
    pub fn mutated_qp(&self) -> &Qp {
        self.qp.result()
    }
}

/// H-linear retraction of `M_out` onto `ker γ`, as a square matrix.
fn retraction(t: &TriangleMaps, ker_gamma: &QMatrix, order: PivotOrder) -> QMatrix {
    let n = t.dim_out();
    let d = t.d;
    let top = t.e_out.pow(d as u32 - 1);
    let gens = chains(&t.e_out, ker_gamma, &QMatrix::zeros(n, 0), order);
    let mut g_heads = Vec::new();
    let mut off = 0;
    for &l in &gens.lengths {
        g_heads.push(gens.basis.col(off));
        off += l;
    }
    let g = QMatrix::from_cols(&g_heads, n);
    let mut std_gens = Vec::new();
    for (s, &m) in t.out_dims.iter().enumerate() {
        for j in 0..m {
            let mut v = vec![rat(0); n];
            v[t.out_index(s, 0, j)] = rat(1);
            std_gens.push(v);
        }
    }
    let std = QMatrix::from_cols(&std_gens, n);
    let chosen_tops = extend(&top.dot(&g), &top.dot(&std), order);
    // Recover which standard generators were picked from their tops.
    let mut picked = Vec::new();
    for j in 0..chosen_tops.cols() {
        let c = chosen_tops.col(j);
        let idx = (0..std.cols()).find(|&i| top.dot(&std.select_cols(&[i])).col(0) == c).expect("chosen top comes from a generator");
        picked.push(std.col(idx));
    }
    let expand = |heads: &[Vec<crate::Rational>]| -> QMatrix {
        let mut b = QMatrix::zeros(n, 0);
        for h in heads {
            let mut v = QMatrix::from_cols(std::slice::from_ref(h), n);
            for _ in 0..d {
                b = b.hstack(&v);
                v = t.e_out.dot(&v);
            }
        }
        b
    };
    let gb = expand(&g_heads);
    let sb = expand(&picked);
    let full = gb.hstack(&sb);
    let coords = full.solve(&QMatrix::identity(n)).expect("H-basis of M_out");
    gb.dot(&coords.block(0, 0, gb.cols(), n))
}

pub fn mutate_rep(qp: &Qp, rep: &DecoratedRep, k: usize, order: PivotOrder) -> Result<RepMutation, RepError> {
    if !qp.is_reduced() {
        return Err(RepError::NotReduced);
    }
    if let Some(v) = check_rep(qp, rep)? {
        return Err(RepError::Relation(v));
    }
    let qpm = mutate_qp_full(qp, k)?;
    let pm = &qpm.premutation;
    let t = triangle_with(qp, pm, rep)?;
    let d = t.d;
    let vk = rep.decoration()[k - 1];
    weights_at(&t, vk)?;
    let sq = subquotients(&t);
    let (n_in, n_out) = (t.dim_in(), t.dim_out());
    if !is_free_subquotient(&t.e_out, &sq.ker_gamma, &QMatrix::zeros(n_out, 0), d) {
        return Err(RepError::NotLocallyFreeWitness { vertex: k, what: "ker gamma".into(), dim: dim(&sq.ker_gamma), top: 0 });
    }

    let s1 = chains(&t.e_out, &sq.ker_gamma, &sq.im_beta, order);
    let s2 = chains(&t.e_in, &sq.im_gamma, &QMatrix::zeros(n_in, 0), order);
    let s3 = chains(&t.e_in, &sq.ker_alpha, &sq.im_gamma, order);
    let v_lengths = vec![d; vk];
    let (d1, d2, d3) = (s1.dim(), s2.dim(), s3.dim());
    let d4 = d * vk;
    let new_mk = d1 + d2 + d3 + d4;
    let mut lengths = s1.lengths.clone();
    lengths.extend(&s2.lengths);
    lengths.extend(&s3.lengths);
    lengths.extend(&v_lengths);
    let e_bar: QMatrix = shift_matrix(&lengths);

    let rho = retraction(&t, &sq.ker_gamma, order);
    let mut alpha_bar = QMatrix::zeros(new_mk, n_out);
    alpha_bar.set_block(0, 0, &s1.coords(&rho).scale(&rat(-1)));
    if d2 > 0 {
        alpha_bar.set_block(d1, 0, &s2.coords(&t.gamma).scale(&rat(-1)));
    }
    let mut beta_bar = QMatrix::zeros(n_in, new_mk);
    beta_bar.set_block(0, d1, &s2.basis);
    beta_bar.set_block(0, d1 + d2, &s3.basis);

    let ker_b = &sq.ker_beta;
    let vbar_dim = dim(ker_b) - dim(&intersect(ker_b, &sq.im_alpha));
    if !vbar_dim.is_multiple_of(d) {
        return Err(RepError::NotLocallyFreeWitness { vertex: k, what: "ker beta / (ker beta ∩ im alpha)".into(), dim: vbar_dim, top: 0 });
    }

    let pq = pm.qp.quiver();
    let mut mats = premutated_matrices(pm, rep);
    let mut dims = rep.dims().to_vec();
    dims[k - 1] = new_mk;
    for (id, o) in pm.origin.iter().enumerate() {
        let ArrowOrigin::Reversed(old) = *o else { continue };
        let arr = qp.quiver().arrows()[old];
        if arr.tail == k {
            let slot = t.outgoing.iter().position(|&b| b == old).unwrap();
            let cols: Vec<usize> = (0..t.out_dims[slot]).map(|j| t.out_index(slot, 0, j)).collect();
            mats[id] = alpha_bar.select_cols(&cols);
        } else {
            let slot = t.incoming.iter().position(|&a| a == old).unwrap();
            let rows: Vec<usize> = (0..t.in_dims[slot]).map(|j| t.in_index(slot, d - 1, j)).collect();
            mats[id] = beta_bar.transpose().select_cols(&rows).transpose();
        }
        debug_assert_eq!(mats[id].rows(), dims[pq.arrows()[id].head - 1]);
    }
    let mut loops = rep.loops().to_vec();
    loops[k - 1] = e_bar;
    let mut decoration = rep.decoration().to_vec();
    decoration[k - 1] = vbar_dim / d;
    let premutated = DecoratedRep::from_parts_unchecked(dims.clone(), loops.clone(), mats.clone(), decoration.clone());

    let transported = transport(pq, &loops, mats, &qpm.reduction.log)?;
    let reduced_mats = qpm.reduction.log.reduced_arrows.iter().map(|&a| transported[a].clone()).collect();
    let out = DecoratedRep::from_parts_unchecked(dims, loops, reduced_mats, decoration);
    Ok(RepMutation { qp: qpm, premutated, rep: out })
}

const MAX_FIXED_POINT: usize = 256;

/// Applies the changes of variables recorded by the reduction: an arrow
/// `x` of the new algebra acts by `M(φ^{-1}(x))`.
pub(crate) fn transport(q: &impl QuiverShape, loops: &[QMatrix], mut mats: Vec<QMatrix>, log: &ChangeLog) -> Result<Vec<QMatrix>, RepError> {
    for step in &log.steps {
        match step {
            ReductionStep::Linear { defs } => {
                let snap = mats.clone();
                for (slot, comb) in defs {
                    let mut acc = QMatrix::zeros(snap[*slot].rows(), snap[*slot].cols());
                    for (a, c) in comb {
                        acc = acc.add(&snap[*a].scale(c));
                    }
                    mats[*slot] = acc;
                }
            }
            ReductionStep::Unitriangular { arrow, coeff, path } => {
                let base = mats[*arrow].clone();
                let mut cur = base.clone();
                let mut converged = false;
                for _ in 0..MAX_FIXED_POINT {
                    let mut trial = mats.clone();
                    trial[*arrow] = cur.clone();
                    let next = base.add(&eval_path_with(q, path, loops, &trial).scale(coeff));
                    if next == cur {
                        converged = true;
                        break;
                    }
                    cur = next;
                }
                if !converged {
                    return Err(RepError::Unsupported("representation is not nilpotent along a reduction path".into()));
                }
                mats[*arrow] = cur;
            }
        }
    }
    Ok(mats)
}
