//! Dimension of the space of morphisms between two representations.

use super::{DecoratedRep, RepError};
use crate::arith::rat;
use crate::quiver::Arrow;
use crate::QMatrix;

/// `dim Hom(M, N)`: families `f_i: M_i -> N_i` commuting with every loop
/// and arrow matrix. Decorations are ignored.
pub fn hom_dim(arrows: &[Arrow], m: &DecoratedRep, n: &DecoratedRep) -> Result<usize, RepError> {
    if m.n() != n.n() || m.arrow_matrices().len() != arrows.len() || n.arrow_matrices().len() != arrows.len() {
        return Err(RepError::Shape("representations of different quivers".into()));
    }
    let mut offsets = Vec::with_capacity(m.n());
    let mut unknowns = 0;
    for v in 1..=m.n() {
        offsets.push(unknowns);
        unknowns += m.dim(v) * n.dim(v);
    }
    if unknowns == 0 {
        return Ok(0);
    }
    // unknown (v, r, c) is entry (r, c) of f_v: an n_v x m_v matrix
    let var = |v: usize, r: usize, c: usize| offsets[v - 1] + r * m.dim(v) + c;
    let mut rows: Vec<Vec<crate::Rational>> = Vec::new();
    // N(a) f_t - f_h M(a) = 0, with loops treated as arrows v -> v
    let mut relation = |t: usize, h: usize, ma: &QMatrix, na: &QMatrix| {
        for r in 0..n.dim(h) {
            for c in 0..m.dim(t) {
                let mut row = vec![rat(0); unknowns];
                for s in 0..n.dim(t) {
                    row[var(t, s, c)] += na.get(r, s);
                }
                for s in 0..m.dim(h) {
                    row[var(h, r, s)] -= ma.get(s, c);
                }
                rows.push(row);
            }
        }
    };
    for v in 1..=m.n() {
        relation(v, v, m.loop_matrix(v), n.loop_matrix(v));
    }
    for (id, a) in arrows.iter().enumerate() {
        relation(a.tail, a.head, m.arrow_matrix(id), n.arrow_matrix(id));
    }
    if rows.is_empty() {
        return Ok(unknowns);
    }
    let sys = QMatrix::from_rows(rows, unknowns).expect("rows share a width");
    Ok(unknowns - sys.rank())
}
