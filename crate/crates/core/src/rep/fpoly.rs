//! Jordan types and the point-counting F-polynomial oracle.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::hmodule::{dim, extend, induced, intersect, jordan_type, preimage, span, sum, PivotOrder};
use super::{check_rep, DecoratedRep, RepError};
use crate::arith::{rat, Field, Fp, Matrix, Rational, VarCtx};
use crate::pathalg::{eps_derivative, Qp};
use crate::quiver::ZValue;
use crate::{QMatrix, QPoly};

/// Primes accepted by the oracle.
pub const ORACLE_PRIMES: [u64; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Default point-count list: enough points to check a polynomial of degree four.
pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn eps_matrices(qp: &Qp, rep: &DecoratedRep) -> Vec<QMatrix> {
    let q = qp.quiver();
    (1..=q.n())
        .map(|k| {
            let der = eps_derivative(q, qp.potential(), k);
            rep.eval(q, &der, k, k)
        })
        .collect()
}

/// `t[k-1][l-1]`: number of size-`l` Jordan blocks of `M(∂_{ε_k}S)` on
/// `ker E_k / im E_k`.
pub fn jordan_type_table(qp: &Qp, rep: &DecoratedRep) -> Result<Vec<Vec<usize>>, RepError> {
    if let Some(v) = check_rep(qp, rep)? {
        return Err(RepError::Relation(v));
    }
    let ts = eps_matrices(qp, rep);
    Ok((0..rep.n())
        .map(|i| {
            let e = rep.loop_matrix(i + 1);
            jordan_type(&ts[i], &e.kernel(), &span(e))
        })
        .collect())
}

/// `f_0 = 1`, `f_1 = z`, `f_l = z f_{l-1} - f_{l-2}`.
pub fn f_recursion_poly(z: &QPoly, l: usize) -> QPoly {
    let mut prev = QPoly::one(z.ctx());
    if l == 0 {
        return prev;
    }
    let mut cur = z.clone();
    for _ in 1..l {
        let next = z.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// A finite field whose elements can be listed.
trait FiniteField: Field + Copy {
    const ORDER: u64;
    fn element(i: u64) -> Self;
    fn reduce(r: &Rational) -> Result<Self, RepError>;
}

impl<const P: u64> FiniteField for Fp<P> {
    const ORDER: u64 = P;

    fn element(i: u64) -> Self {
        Fp::new(i as i64)
    }

    fn reduce(r: &Rational) -> Result<Self, RepError> {
        let p: num_bigint::BigInt = P.into();
        let den = r.denom().mod_floor(&p);
        if den.is_zero() {
            return Err(RepError::BadReduction(P));
        }
        let num = r.numer().mod_floor(&p).to_i64().expect("residue fits");
        Ok(Fp::new(num) / Fp::new(den.to_i64().expect("residue fits")))
    }
}

fn reduce_matrix<F: FiniteField>(m: &QMatrix) -> Result<Matrix<F>, RepError> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, F::reduce(m.get(i, j))?);
        }
    }
    Ok(out)
}

/// All subspaces of `F^c`, as column bases.
fn all_subspaces<F: FiniteField>(c: usize) -> Vec<Matrix<F>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << c) {
        let pivots: Vec<usize> = (0..c).filter(|&i| mask >> i & 1 == 1).collect();
        let s = pivots.len();
        // free slots: row r of the echelon form, columns after pivot r that are not pivots
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..c).filter(|j| !pivots.contains(j)).map(move |j| (r, j)))
            .collect();
        let total = F::ORDER.pow(free.len() as u32);
        for mut code in 0..total {
            let mut m = Matrix::<F>::zeros(c, s);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(p, r, F::one());
            }
            for &(r, j) in &free {
                m.set(j, r, F::element(code % F::ORDER));
                code /= F::ORDER;
            }
            out.push(m);
        }
    }
    out
}

/// Smallest `e`-stable subspace containing the columns of `w`.
fn stable_closure<F: Field>(e: &Matrix<F>, w: &Matrix<F>) -> Matrix<F> {
    let mut cur = span(w);
    loop {
        let next = sum(&cur, &e.dot(&cur));
        if next.cols() == cur.cols() {
            return cur;
        }
        cur = next;
    }
}

/// Largest `e`-stable subspace contained in `u`.
fn stable_interior<F: Field>(e: &Matrix<F>, u: &Matrix<F>) -> Matrix<F> {
    let mut cur = span(u);
    loop {
        let next = intersect(&cur, &preimage(e, &cur));
        if next.cols() == cur.cols() {
            return cur;
        }
        cur = next;
    }
}

fn contains<F: Field>(big: &Matrix<F>, small: &Matrix<F>) -> bool {
    dim(&big.hstack(small)) == dim(big)
}

type StratumKey = (Vec<usize>, Vec<Vec<usize>>);

struct Counter<'a, F> {
    loops: Vec<Matrix<F>>,
    arrows: Vec<Matrix<F>>,
    eps: Vec<Matrix<F>>,
    ends: Vec<(usize, usize)>,
    stratified: &'a [bool],
    counts: BTreeMap<StratumKey, u64>,
}

impl<F: FiniteField> Counter<'_, F> {
    fn dfs(&mut self, chosen: &mut Vec<Matrix<F>>) {
        let i = chosen.len();
        if i == self.loops.len() {
            self.record(chosen);
            return;
        }
        let m = self.loops[i].rows();
        let e = self.loops[i].clone();
        let mut lower = Matrix::<F>::zeros(m, 0);
        let mut upper = Matrix::<F>::identity(m);
        for (a, &(t, h)) in self.ends.iter().enumerate() {
            if h == i && t < i {
                lower = lower.hstack(&self.arrows[a].dot(&chosen[t]));
            } else if t == i && h < i {
                upper = intersect(&upper, &preimage(&self.arrows[a], &chosen[h]));
            }
        }
        let lower = stable_closure(&e, &lower);
        let upper = stable_interior(&e, &upper);
        if !contains(&upper, &lower) {
            return;
        }
        let comp = extend(&lower, &upper, PivotOrder::Ascending);
        let ebar = induced(&e, &lower, &comp);
        for x in all_subspaces::<F>(comp.cols()) {
            if !contains(&x, &ebar.dot(&x)) {
                continue;
            }
            chosen.push(lower.hstack(&comp.dot(&x)));
            self.dfs(chosen);
            chosen.pop();
        }
    }

    fn record(&mut self, chosen: &[Matrix<F>]) {
        let e: Vec<usize> = chosen.iter().map(|c| c.cols()).collect();
        let t: Vec<Vec<usize>> = chosen
            .iter()
            .enumerate()
            .map(|(i, n)| {
                if !self.stratified[i] || n.cols() == 0 {
                    return vec![];
                }
                let en = self.loops[i].dot(n);
                let ker = n.dot(&en.kernel());
                let mut t = jordan_type(&self.eps[i], &ker, &span(&en));
                while t.last() == Some(&0) {
                    t.pop();
                }
                t
            })
            .collect();
        *self.counts.entry((e, t)).or_insert(0) += 1;
    }
}

fn count_strata<F: FiniteField>(qp: &Qp, rep: &DecoratedRep, eps: &[QMatrix], stratified: &[bool]) -> Result<BTreeMap<StratumKey, u64>, RepError> {
    let loops = rep.loops().iter().map(reduce_matrix::<F>).collect::<Result<Vec<_>, _>>()?;
    let arrows = rep.arrow_matrices().iter().map(reduce_matrix::<F>).collect::<Result<Vec<_>, _>>()?;
    let eps = eps.iter().map(reduce_matrix::<F>).collect::<Result<Vec<_>, _>>()?;
    let ends = qp.quiver().arrows().iter().map(|a| (a.tail - 1, a.head - 1)).collect();
    let mut c = Counter { loops, arrows, eps, ends, stratified, counts: BTreeMap::new() };
    c.dfs(&mut Vec::new());
    Ok(c.counts)
}

fn dispatch(p: u64, qp: &Qp, rep: &DecoratedRep, eps: &[QMatrix], st: &[bool]) -> Result<BTreeMap<StratumKey, u64>, RepError> {
    match p {
        2 => count_strata::<Fp<2>>(qp, rep, eps, st),
        3 => count_strata::<Fp<3>>(qp, rep, eps, st),
        5 => count_strata::<Fp<5>>(qp, rep, eps, st),
        7 => count_strata::<Fp<7>>(qp, rep, eps, st),
        11 => count_strata::<Fp<11>>(qp, rep, eps, st),
        13 => count_strata::<Fp<13>>(qp, rep, eps, st),
        17 => count_strata::<Fp<17>>(qp, rep, eps, st),
        19 => count_strata::<Fp<19>>(qp, rep, eps, st),
        23 => count_strata::<Fp<23>>(qp, rep, eps, st),
        29 => count_strata::<Fp<29>>(qp, rep, eps, st),
        31 => count_strata::<Fp<31>>(qp, rep, eps, st),
        _ => Err(RepError::Unsupported(format!("field size {p}: supported sizes are {ORACLE_PRIMES:?}"))),
    }
}

/// Fits a polynomial of degree at most `deg` through `(q, count)` pairs,
/// checks the remaining pairs and integrality, and returns its value at 1.
pub(crate) fn euler_characteristic(points: &[(u64, u64)], deg: usize) -> Result<Rational, String> {
    let used = (deg + 1).min(points.len());
    let vander = Matrix::from_rows(
        points[..used].iter().map(|&(q, _)| (0..used).map(|j| rat(q as i64).pow(j as i32)).collect()).collect(),
        used,
    )
    .map_err(|e| e.to_string())?;
    let rhs = Matrix::from_rows(points[..used].iter().map(|&(_, c)| vec![rat(c as i64)]).collect(), 1).map_err(|e| e.to_string())?;
    let coeffs = vander.solve(&rhs).map_err(|e| e.to_string())?.col(0);
    let eval = |q: u64| coeffs.iter().enumerate().fold(rat(0), |acc, (j, c)| acc + c * rat(q as i64).pow(j as i32));
    for &(q, c) in &points[used..] {
        if eval(q) != rat(c as i64) {
            return Err(format!("count {c} at q={q} does not fit the degree-{deg} polynomial through the other points"));
        }
    }
    if let Some(c) = coeffs.iter().find(|c| !c.is_integer()) {
        return Err(format!("non-integral coefficient {c}"));
    }
    Ok(eval(1))
}

/// F-polynomial of `rep` by counting points of quiver Grassmannian strata
/// over the prime fields in `primes`. Variables: `y1..yn` then the datum
/// symbols.
pub fn f_polynomial_oracle(qp: &Qp, rep: &DecoratedRep, primes: &[u64]) -> Result<QPoly, RepError> {
    if let Some(v) = check_rep(qp, rep)? {
        return Err(RepError::Relation(v));
    }
    let q = qp.quiver();
    let datum = q.datum();
    let n = q.n();
    if let Some(k) = (1..=n).find(|&k| datum.d()[k - 1] > 2 && rep.dim(k) > 0) {
        return Err(RepError::Unsupported(format!("d_{k} > 2")));
    }
    if primes.is_empty() {
        return Err(RepError::Unsupported("empty field list".into()));
    }
    let eps = eps_matrices(qp, rep);
    let stratified: Vec<bool> = datum.d().iter().map(|&d| d == 2).collect();
    let mut per_q = Vec::new();
    for &p in primes {
        per_q.push(dispatch(p, qp, rep, &eps, &stratified)?);
    }
    let keys: std::collections::BTreeSet<&StratumKey> = per_q.iter().flat_map(|m| m.keys()).collect();

    let mut names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    names.extend(datum.symbols());
    let ctx = VarCtx::new(names);
    let z_of = |k: usize| -> QPoly {
        match &datum.z(k)[1] {
            ZValue::Num(r) => QPoly::constant(&ctx, r.clone()),
            ZValue::Sym(s) => QPoly::var(&ctx, ctx.index(s).expect("datum symbol in context")),
        }
    };
    let mut f = QPoly::zero(&ctx);
    for key in keys {
        let (e, t) = key;
        let points: Vec<(u64, u64)> = primes.iter().zip(&per_q).map(|(&p, m)| (p, m.get(key).copied().unwrap_or(0))).collect();
        let deg: usize = e.iter().enumerate().map(|(i, &ei)| ei * (rep.dims()[i] - ei)).sum();
        let deg = deg.min(points.len() - 1);
        let chi = euler_characteristic(&points, deg).map_err(|msg| RepError::NonPolynomialCount(format!("stratum e={e:?} t={t:?}: {msg}")))?;
        if chi.is_zero() {
            continue;
        }
        let mut exps = vec![0i32; ctx.len()];
        for (i, &ei) in e.iter().enumerate() {
            exps[i] = ei as i32;
        }
        let mut term = QPoly::monomial(&ctx, exps, chi);
        for (i, ti) in t.iter().enumerate() {
            for (l, &c) in ti.iter().enumerate() {
                if c > 0 {
                    term = term.mul(&f_recursion_poly(&z_of(i + 1), l + 1).pow(c as u32));
                }
            }
        }
        f = f.add(&term);
    }
    Ok(f)
}
