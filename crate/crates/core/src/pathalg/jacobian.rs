//! Truncated Jacobian algebra dimensions.

use std::collections::BTreeMap;

use super::potential::{cyclic_derivative, Qp};
use super::word::{Path, PathElem};
use crate::arith::{Matrix, Rational};

/// Every nonzero path (loops included) of arrow length at most `max_len`.
pub fn all_paths(qp: &Qp, max_len: usize) -> Vec<Path> {
    let q = qp.quiver();
    let mut out = Vec::new();
    let mut frontier: Vec<Path> = Vec::new();
    for v in 1..=q.n() {
        for l in 0..q.datum().d()[v - 1] {
            frontier.push(Path::idempotent_power(q, v, l).unwrap());
        }
    }
    let loops_at = |v: usize| -> Vec<Path> { (0..q.datum().d()[v - 1]).map(|l| Path::idempotent_power(q, v, l).unwrap()).collect() };
    while let Some(p) = frontier.pop() {
        if p.len() < max_len {
            for (id, a) in q.arrows().iter().enumerate() {
                if a.head == p.start() {
                    let ap = Path::arrow(q, id);
                    for e in loops_at(a.tail) {
                        if let Some(x) = ap.compose(q, &e).and_then(|x| p.compose(q, &x)) {
                            frontier.push(x);
                        }
                    }
                }
            }
        }
        out.push(p);
    }
    out.sort();
    out.dedup();
    out
}

/// Dimension of `e (P / (J + m^{L+1})) e`, where `e` sums the idempotents of
/// all vertices except `k` and `P` is the path algebra truncated at arrow
/// length `max_len`.
pub fn jacobian_corner_dim(qp: &Qp, k: usize, max_len: usize) -> usize {
    let q = qp.quiver();
    let paths = all_paths(qp, max_len);
    let corner: Vec<&Path> = paths.iter().filter(|p| p.start() != k && p.end() != k).collect();
    let index: BTreeMap<&Path, usize> = corner.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let one = Rational::from_integer(1.into());
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for a in 0..q.arrows().len() {
        let r = cyclic_derivative(q, qp.potential(), a);
        if r.is_zero() {
            continue;
        }
        let (rs, re) = {
            let arr = q.arrows()[a];
            (arr.head, arr.tail)
        };
        for u in paths.iter().filter(|u| u.start() == re && u.end() != k) {
            let ue = PathElem::single(u.clone(), one.clone());
            let (ur, _) = ue.compose(q, &r, max_len);
            if ur.is_zero() {
                continue;
            }
            for v in paths.iter().filter(|v| v.end() == rs && v.start() != k) {
                let ve = PathElem::single(v.clone(), one.clone());
                let (urv, _) = ur.compose(q, &ve, max_len);
                if urv.is_zero() {
                    continue;
                }
                let mut row = vec![Rational::from_integer(0.into()); corner.len()];
                for (p, c) in urv.terms() {
                    row[index[p]] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return corner.len();
    }
    let m = Matrix::from_rows(rows, corner.len()).expect("rows share a width");
    corner.len() - m.rank()
}
