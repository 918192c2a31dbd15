//! Independent classical recursion with principal coefficients.
//!
//! Works on the extended `2n × n` matrix, exchanges cluster variables with
//! the binomial rule, and reads g-vectors off the `Z^n`-grading
//! `deg x_i = e_i`, `deg y_j = -b_j` of the initial matrix. F-polynomials
//! are the cluster variables at `x = 1`.

use crate::arith::{pos, rat, Ctx, RatFunc, VarCtx};
use crate::gca::GcaError;
use crate::quiver::ExchangeMatrix;
use crate::QPoly;

/// State of the oracle at one vertex of the tree.
#[derive(Debug, Clone)]
pub struct ClassicalState {
    /// Extended matrix, rows `1..2n`.
    pub ext: Vec<Vec<i64>>,
    /// Cluster variables over `x1..xn, y1..yn`.
    pub x: Vec<RatFunc>,
    pub g: Vec<Vec<i64>>,
    /// `c[j-1]`: column `j` of the lower half.
    pub c: Vec<Vec<i64>>,
    /// F-polynomials over `y1..yn`.
    pub f: Vec<RatFunc>,
}

fn xy_context(n: usize) -> Ctx {
    VarCtx::new((1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))))
}

fn y_context(n: usize) -> Ctx {
    VarCtx::new((1..=n).map(|i| format!("y{i}")))
}

fn mutate_ext(ext: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let kk = k - 1;
    let mut out = ext.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = if i == kk || j == kk {
                -ext[i][j]
            } else {
                ext[i][j] + pos(ext[i][kk]) * pos(ext[kk][j]) - pos(-ext[i][kk]) * pos(-ext[kk][j])
            };
        }
    }
    out
}

/// Degree of a homogeneous Laurent polynomial; `None` if inhomogeneous.
fn degree(p: &QPoly, b0: &ExchangeMatrix) -> Option<Vec<i64>> {
    let n = b0.n();
    let mut out: Option<Vec<i64>> = None;
    for e in p.terms().keys() {
        let mut deg: Vec<i64> = e[..n].iter().map(|&v| v as i64).collect();
        for j in 0..n {
            let yj = e[n + j] as i64;
            for (i, di) in deg.iter_mut().enumerate() {
                *di -= yj * b0.get(i + 1, j + 1);
            }
        }
        match &out {
            None => out = Some(deg),
            Some(o) if *o != deg => return None,
            _ => {}
        }
    }
    out
}

fn at_x_one(x: &RatFunc, fctx: &Ctx, n: usize) -> Result<RatFunc, GcaError> {
    let mut images: Vec<RatFunc> = vec![RatFunc::constant(fctx, rat(1)); n];
    images.extend((0..n).map(|j| RatFunc::from(QPoly::var(fctx, j))));
    Ok(x.substitute(&images)?)
}

/// Runs the oracle along `path`, returning every visited state.
pub fn classical_recursion(b0: &ExchangeMatrix, path: &[usize]) -> Result<Vec<ClassicalState>, GcaError> {
    let n = b0.n();
    let ctx = xy_context(n);
    let fctx = y_context(n);
    let mut ext: Vec<Vec<i64>> = b0.rows().to_vec();
    for j in 0..n {
        ext.push((0..n).map(|i| i64::from(i == j)).collect());
    }
    let x: Vec<RatFunc> = (0..n).map(|i| RatFunc::from(QPoly::var(&ctx, i))).collect();
    let state = |ext: Vec<Vec<i64>>, x: Vec<RatFunc>| -> Result<ClassicalState, GcaError> {
        let mut g = Vec::with_capacity(n);
        let mut f = Vec::with_capacity(n);
        for xi in &x {
            let num = xi.as_laurent().ok_or_else(|| GcaError::NotApplicable(format!("non-Laurent cluster variable {}", xi.to_canonical())))?;
            g.push(degree(num, b0).ok_or_else(|| GcaError::NotApplicable("inhomogeneous cluster variable".into()))?);
            f.push(at_x_one(xi, &fctx, n)?);
        }
        let c = (0..n).map(|j| (0..n).map(|i| ext[n + i][j]).collect()).collect();
        Ok(ClassicalState { ext, x, g, c, f })
    };
    let mut out = vec![state(ext.clone(), x.clone())?];
    let mut x = x;
    for &k in path {
        b0.check_vertex(k)?;
        let kk = k - 1;
        let mut plus = vec![0i32; 2 * n];
        let mut minus = vec![0i32; 2 * n];
        for i in 0..2 * n {
            plus[i] = pos(ext[i][kk]) as i32;
            minus[i] = pos(-ext[i][kk]) as i32;
        }
        // Binomial in x and y; cluster variables enter through substitution.
        let split = |e: &[i32]| -> Result<RatFunc, GcaError> {
            let mut acc = RatFunc::from(QPoly::monomial(&ctx, [vec![0; n], e[n..].to_vec()].concat(), rat(1)));
            for i in 0..n {
                if e[i] != 0 {
                    acc = acc.mul(&x[i].pow_i(e[i] as i64)?);
                }
            }
            Ok(acc)
        };
        let xk = split(&plus)?.add(&split(&minus)?).div(&x[kk])?;
        x[kk] = xk;
        ext = mutate_ext(&ext, k);
        out.push(state(ext.clone(), x.clone())?);
    }
    Ok(out)
}
