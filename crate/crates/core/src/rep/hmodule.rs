//! Linear algebra for modules over `K[eps]/(eps^d)`: subspaces given by
//! column bases, subquotients, Jordan chains and freeness.

use crate::arith::{Field, Matrix};

/// Order in which candidate vectors are tried when extending bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotOrder {
    #[default]
    Ascending,
    Descending,
}

/// Column basis of the span of the columns of `m`.
pub fn span<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    m.image()
}

pub fn empty<F: Field>(n: usize) -> Matrix<F> {
    Matrix::zeros(n, 0)
}

pub fn sum<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    span(&a.hstack(b))
}

pub fn dim<F: Field>(a: &Matrix<F>) -> usize {
    a.rank()
}

/// Column basis of `A^{-1}(W)` where `W` is a column basis in the target.
pub fn preimage<F: Field>(a: &Matrix<F>, w: &Matrix<F>) -> Matrix<F> {
    let n = a.cols();
    let big = a.hstack(&w.scale(&-F::one()));
    let k = big.kernel();
    span(&k.block(0, 0, n, k.cols()))
}

pub fn kernel<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    a.kernel()
}

pub fn intersect<F: Field>(u: &Matrix<F>, w: &Matrix<F>) -> Matrix<F> {
    let k = u.hstack(&w.scale(&-F::one())).kernel();
    span(&u.dot(&k.block(0, 0, u.cols(), k.cols())))
}

/// Columns of `candidates` (tried in `order`) that extend `base` to a basis
/// of `span(base) + span(candidates)`.
pub fn extend<F: Field>(base: &Matrix<F>, candidates: &Matrix<F>, order: PivotOrder) -> Matrix<F> {
    let n = candidates.rows();
    let mut idx: Vec<usize> = (0..candidates.cols()).collect();
    if order == PivotOrder::Descending {
        idx.reverse();
    }
    let mut cur = base.clone();
    let mut r = cur.rank();
    let mut chosen = Matrix::zeros(n, 0);
    for j in idx {
        let c = candidates.select_cols(&[j]);
        let next = cur.hstack(&c);
        let nr = next.rank();
        if nr > r {
            cur = next;
            r = nr;
            chosen = chosen.hstack(&c);
        }
    }
    chosen
}

/// Jordan chains of a nilpotent `e` acting on the subquotient `u / w`.
#[derive(Clone)]
pub struct Chains<F: Field> {
    /// Ambient representative vectors, chain by chain: `g, e g, e^2 g, ...`.
    pub basis: Matrix<F>,
    pub lengths: Vec<usize>,
    /// Basis of `w`, used when taking coordinates.
    pub sub: Matrix<F>,
}

impl<F: Field> Chains<F> {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `x` (columns, elements of `u`) in the chain basis,
    /// modulo `w`.
    pub fn coords(&self, x: &Matrix<F>) -> Matrix<F> {
        let s = self.sub.cols();
        let sol = self.sub.hstack(&self.basis).solve(x).expect("vector lies in the subquotient's ambient space");
        sol.block(s, 0, self.basis.cols(), x.cols())
    }

    /// Standard nilpotent shift in the chain basis.
    pub fn shift(&self) -> Matrix<F> {
        shift_matrix(&self.lengths)
    }

    pub fn is_free(&self, d: usize) -> bool {
        self.lengths.iter().all(|&l| l == d)
    }
}

/// Block-diagonal nilpotent shift with one block per chain length.
pub fn shift_matrix<F: Field>(lengths: &[usize]) -> Matrix<F> {
    let n: usize = lengths.iter().sum();
    let mut m = Matrix::zeros(n, n);
    let mut off = 0;
    for &l in lengths {
        for t in 0..l.saturating_sub(1) {
            m.set(off + t + 1, off + t, F::one());
        }
        off += l;
    }
    m
}

/// Induced operator of `e` on `u / w` in the basis `complement`.
pub(crate) fn induced<F: Field>(e: &Matrix<F>, w: &Matrix<F>, complement: &Matrix<F>) -> Matrix<F> {
    let s = w.cols();
    let img = e.dot(complement);
    let sol = w.hstack(complement).solve(&img).expect("subspace is stable under the operator");
    sol.block(s, 0, complement.cols(), complement.cols())
}

pub fn chains<F: Field>(e: &Matrix<F>, u: &Matrix<F>, w: &Matrix<F>, order: PivotOrder) -> Chains<F> {
    let n = e.rows();
    let w = span(w);
    let complement = extend(&w, u, order);
    let c = complement.cols();
    let nind = induced(e, &w, &complement);
    let mut smax = 0;
    let mut p = Matrix::<F>::identity(c);
    while !p.is_zero() {
        p = p.dot(&nind);
        smax += 1;
    }
    let mut gens: Vec<(Vec<F>, usize)> = Vec::new();
    for s in (1..=smax).rev() {
        let a = nind.pow(s as u32).kernel();
        let mut b = nind.pow(s as u32 - 1).kernel();
        for (g, l) in &gens {
            let v = nind.pow((*l - s) as u32).apply(g);
            b = b.hstack(&Matrix::from_cols(&[v], c));
        }
        let new = extend(&b, &a, order);
        for j in 0..new.cols() {
            gens.push((new.col(j), s));
        }
    }
    let mut basis = Matrix::zeros(n, 0);
    let mut lengths = Vec::new();
    for (g, l) in gens {
        let mut v = complement.dot(&Matrix::from_cols(&[g], c));
        for _ in 0..l {
            basis = basis.hstack(&v);
            v = e.dot(&v);
        }
        lengths.push(l);
    }
    Chains { basis, lengths, sub: w }
}

/// `dim(U/W) = d · rank(e^{d-1} on U/W)`.
pub fn is_free_subquotient<F: Field>(e: &Matrix<F>, u: &Matrix<F>, w: &Matrix<F>, d: usize) -> bool {
    let du = dim(u);
    let dw = dim(w);
    let top = e.pow(d as u32 - 1).dot(u);
    let r = dim(&sum(&top, w)) - dw;
    du - dw == d * r
}

/// Jordan block counts `t[l-1]` of a nilpotent operator `t` on the
/// subquotient `u / w`.
pub fn jordan_type<F: Field>(t: &Matrix<F>, u: &Matrix<F>, w: &Matrix<F>) -> Vec<usize> {
    let w = span(w);
    let complement = extend(&w, u, PivotOrder::Ascending);
    let c = complement.cols();
    if c == 0 {
        return vec![];
    }
    let nind = induced(t, &w, &complement);
    let mut ranks = vec![c];
    let mut p = Matrix::<F>::identity(c);
    loop {
        p = p.dot(&nind);
        let r = p.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
        assert!(ranks.len() <= c + 2, "operator is not nilpotent");
    }
    // blocks of size >= s: ranks[s-1] - ranks[s]
    let ge: Vec<usize> = (1..ranks.len()).map(|s| ranks[s - 1] - ranks[s]).collect();
    (0..ge.len()).map(|i| ge[i] - ge.get(i + 1).copied().unwrap_or(0)).collect()
}
