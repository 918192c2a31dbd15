//! Injective modules of the truncated Jacobian algebra and kernels of
//! random injective presentations.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::triangle::weight_vectors;
use super::{DecoratedRep, RepError};
use crate::arith::{rat, Rational};
use crate::pathalg::{all_paths, cyclic_derivative, Path, PathElem, Qp};
use crate::QMatrix;

/// Largest arrow length tried when looking for a stable truncation.
pub const MAX_JACOBIAN_LEN: usize = 8;

/// `e_j (P / (J + m^{L+1})) e_i` for every pair of vertices: the paths from
/// `i` to `j` and a basis of the functionals vanishing on the relations.
#[derive(Debug, Clone)]
pub struct JacobianSlices {
    pub max_len: usize,
    paths: BTreeMap<(usize, usize), Vec<Path>>,
    index: BTreeMap<Path, usize>,
    /// `(start, end) -> columns spanning the annihilator of the relations`.
    dual: BTreeMap<(usize, usize), QMatrix>,
}

impl JacobianSlices {
    pub fn new(qp: &Qp, max_len: usize) -> Self {
        let q = qp.quiver();
        let all = all_paths(qp, max_len);
        let mut paths: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
        for v in 1..=q.n() {
            for w in 1..=q.n() {
                paths.insert((v, w), Vec::new());
            }
        }
        let mut index = BTreeMap::new();
        for p in &all {
            let slot = paths.get_mut(&(p.start(), p.end())).unwrap();
            index.insert(p.clone(), slot.len());
            slot.push(p.clone());
        }
        let mut rels: BTreeMap<(usize, usize), Vec<Vec<Rational>>> = BTreeMap::new();
        let one = rat(1);
        for a in 0..q.arrows().len() {
            let r = cyclic_derivative(q, qp.potential(), a);
            if r.is_zero() {
                continue;
            }
            let arr = q.arrows()[a];
            for u in all.iter().filter(|u| u.start() == arr.tail) {
                let (ur, _) = PathElem::single(u.clone(), one.clone()).compose(q, &r, max_len);
                if ur.is_zero() {
                    continue;
                }
                for w in all.iter().filter(|w| w.end() == arr.head) {
                    let (urw, _) = ur.compose(q, &PathElem::single(w.clone(), one.clone()), max_len);
                    if urw.is_zero() {
                        continue;
                    }
                    let key = (w.start(), u.end());
                    let mut row = vec![rat(0); paths[&key].len()];
                    for (p, c) in urw.terms() {
                        row[index[p]] = c.clone();
                    }
                    rels.entry(key).or_default().push(row);
                }
            }
        }
        let dual = paths
            .iter()
            .map(|(&key, ps)| {
                let basis = match rels.remove(&key) {
                    Some(rows) => QMatrix::from_rows(rows, ps.len()).expect("rows share a width").kernel(),
                    None => QMatrix::identity(ps.len()),
                };
                (key, basis)
            })
            .collect();
        JacobianSlices { max_len, paths, index, dual }
    }

    /// Smallest truncation at which `m^L ⊆ J + m^{L+1}`.
    pub fn stable(qp: &Qp) -> Result<Self, RepError> {
        let mut prev = Self::new(qp, 0);
        for l in 1..=MAX_JACOBIAN_LEN {
            let cur = Self::new(qp, l);
            if cur.total_dim() == prev.total_dim() {
                return Ok(prev);
            }
            prev = cur;
        }
        Err(RepError::NotFiniteDimensional(MAX_JACOBIAN_LEN))
    }

    pub fn dim(&self, start: usize, end: usize) -> usize {
        self.dual[&(start, end)].cols()
    }

    pub fn total_dim(&self) -> usize {
        self.dual.values().map(|m| m.cols()).sum()
    }

    pub fn paths(&self, start: usize, end: usize) -> &[Path] {
        &self.paths[&(start, end)]
    }

    /// Matrix of `x ↦ left ∘ x ∘ right` from paths `(s, e)` to paths
    /// `(right.start, left.end)`, where `right.end = s` and `left.start = e`.
    fn multiplication(&self, qp: &Qp, left: &Path, right: &Path) -> QMatrix {
        let q = qp.quiver();
        let (s, e) = (right.end(), left.start());
        let src = &self.paths[&(s, e)];
        let tgt_len = self.paths[&(right.start(), left.end())].len();
        let mut m = QMatrix::zeros(tgt_len, src.len());
        for (j, x) in src.iter().enumerate() {
            if x.len() + left.len() + right.len() > self.max_len {
                continue;
            }
            if let Some(y) = x.compose(q, right).and_then(|xr| left.compose(q, &xr)) {
                m.set(self.index[&y], j, rat(1));
            }
        }
        m
    }

    /// Action on dual spaces `D(e_e J e_s) -> D(e_{e'} J e_{s'})` induced by
    /// the multiplication map, in annihilator coordinates.
    fn dual_action(&self, qp: &Qp, left: &Path, right: &Path) -> QMatrix {
        let mult = self.multiplication(qp, left, right);
        let from = &self.dual[&(right.start(), left.end())];
        let to = &self.dual[&(right.end(), left.start())];
        let img = mult.transpose().dot(from);
        to.solve(&img).expect("dual of a quotient map preserves annihilators")
    }
}

/// Freeness of `e_k J` over `H_k` acting on the left and of `J e_k` acting
/// on the right, per vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFreeness {
    pub left: bool,
    pub right: bool,
}

fn is_free_action(t: &QMatrix, d: u32) -> bool {
    t.rows() == 0 || (d as usize) * t.pow(d - 1).rank() == t.rows()
}

/// Checks both one-sided freeness conditions at every vertex of the
/// stable truncation of the Jacobian algebra.
pub fn local_freeness(qp: &Qp) -> Result<Vec<LocalFreeness>, RepError> {
    let slices = JacobianSlices::stable(qp)?;
    let q = qp.quiver();
    let n = q.n();
    Ok((1..=n)
        .map(|k| {
            let d = q.datum().dk(k) as u32;
            let Some(eps) = Path::idempotent_power(q, k, 1) else {
                return LocalFreeness { left: true, right: true };
            };
            let side = |on_left: bool| {
                let blocks: Vec<QMatrix> = (1..=n)
                    .map(|i| {
                        let id = Path::idempotent_power(q, i, 0).expect("idempotent");
                        if on_left {
                            slices.dual_action(qp, &eps, &id)
                        } else {
                            slices.dual_action(qp, &id, &eps)
                        }
                    })
                    .collect();
                blocks.iter().all(|t| is_free_action(t, d))
            };
            LocalFreeness { left: side(true), right: side(false) }
        })
        .collect())
}

/// The injective `I_k = D(e_k J)`: at vertex `v` the dual of the paths from
/// `v` to `k`.
pub fn injective_rep(qp: &Qp, slices: &JacobianSlices, k: usize) -> DecoratedRep {
    let q = qp.quiver();
    let n = q.n();
    let idk = Path::idempotent_power(q, k, 0).unwrap();
    let dims: Vec<usize> = (1..=n).map(|v| slices.dim(v, k)).collect();
    let loops = (1..=n)
        .map(|v| match Path::idempotent_power(q, v, 1) {
            Some(eps) => slices.dual_action(qp, &idk, &eps),
            None => QMatrix::zeros(dims[v - 1], dims[v - 1]),
        })
        .collect();
    let arrows = (0..q.arrows().len()).map(|a| slices.dual_action(qp, &idk, &Path::arrow(q, a))).collect();
    DecoratedRep::from_parts_unchecked(dims, loops, arrows, vec![0; n])
}

/// Kernel of a random map `I([-ǧ]₊) -> I([ǧ]₊)`, decorated so that its
/// ǧ-vector is `g_check`. Map coefficients are integers in `[-bound, bound]`
/// drawn from a generator seeded by `seed + trial`.
pub fn random_kernel_rep(qp: &Qp, g_check: &[i64], trials: usize, seed: u64) -> Result<DecoratedRep, RepError> {
    const BOUND: i64 = 7;
    let q = qp.quiver();
    let n = q.n();
    if g_check.len() != n {
        return Err(RepError::Shape(format!("ǧ has {} entries for {n} vertices", g_check.len())));
    }
    let slices = JacobianSlices::stable(qp)?;
    let expand = |sign: i64| -> Vec<usize> { (1..=n).flat_map(|k| std::iter::repeat_n(k, (sign * g_check[k - 1]).max(0) as usize)).collect() };
    let sources = expand(-1);
    let targets = expand(1);
    let inj: Vec<DecoratedRep> = (1..=n).map(|k| injective_rep(qp, &slices, k)).collect();
    let mut source = DecoratedRep::zero(qp);
    for &i in &sources {
        source = source.direct_sum(&inj[i - 1]);
    }
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
        // coefficient per (target copy, source copy, path from source vertex to target vertex)
        let coeffs: Vec<Vec<Vec<Rational>>> = targets
            .iter()
            .map(|&j| sources.iter().map(|&i| slices.paths(j, i).iter().map(|_| rat(rng.gen_range(-BOUND..=BOUND))).collect()).collect())
            .collect();
        let mut kernels = Vec::with_capacity(n);
        for v in 1..=n {
            let idv = Path::idempotent_power(q, v, 0).unwrap();
            let rows: usize = targets.iter().map(|&j| slices.dim(v, j)).sum();
            let mut f = QMatrix::zeros(rows, source.dim(v));
            let mut r0 = 0;
            for (tj, &j) in targets.iter().enumerate() {
                let mut c0 = 0;
                for (si, &i) in sources.iter().enumerate() {
                    for (pi, p) in slices.paths(j, i).iter().enumerate() {
                        let c = &coeffs[tj][si][pi];
                        if c == &rat(0) {
                            continue;
                        }
                        let block = slices.dual_action(qp, p, &idv).scale(c);
                        for r in 0..block.rows() {
                            for s in 0..block.cols() {
                                f.add_at(r0 + r, c0 + s, block.get(r, s).clone());
                            }
                        }
                    }
                    c0 += slices.dim(v, i);
                }
                r0 += slices.dim(v, j);
            }
            kernels.push(f.kernel());
        }
        let restrict = |m: &QMatrix, t: usize, h: usize| -> QMatrix {
            let img = m.dot(&kernels[t - 1]);
            kernels[h - 1].solve(&img).expect("kernel is a subrepresentation")
        };
        let dims = kernels.iter().map(|k| k.cols()).collect();
        let loops = (1..=n).map(|v| restrict(source.loop_matrix(v), v, v)).collect();
        let arrows = q.arrows().iter().enumerate().map(|(id, a)| restrict(source.arrow_matrix(id), a.tail, a.head)).collect();
        let mut rep = DecoratedRep::from_parts_unchecked(dims, loops, arrows, vec![0; n]);
        let Ok(w) = weight_vectors(qp, &rep) else { continue };
        let deco: Vec<i64> = g_check.iter().zip(&w.g_check).map(|(g, m)| g - m).collect();
        if deco.iter().any(|&x| x < 0) {
            continue;
        }
        rep = DecoratedRep::from_parts_unchecked(rep.dims().to_vec(), rep.loops().to_vec(), rep.arrow_matrices().to_vec(), deco.iter().map(|&x| x as usize).collect());
        return Ok(rep);
    }
    Err(RepError::GenericityFailure(trials))
}
