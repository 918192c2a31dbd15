use super::seed::{mutate_seed, yhat, Seed};
use super::GcaError;
use crate::arith::RatFunc;
use crate::pathalg::Qp;
use crate::rep::{f_polynomial_oracle, triangle::weight_vectors, DecoratedRep};
use crate::QPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentViolation {
    /// Number of mutations applied when the variable appeared.
    pub step: usize,
    pub vertex: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentReport {
    pub checked: usize,
    pub violations: Vec<LaurentViolation>,
}

impl LaurentReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A Laurent polynomial in the cluster whose coefficients are integral.
fn is_integral_laurent(x: &RatFunc) -> bool {
    x.as_laurent().is_some_and(QPoly::is_integral)
}

/// Mutates along `path`, checking every new cluster variable for a monomial
/// denominator and integer coefficients.
pub fn laurent_check(seed0: &Seed, path: &[usize]) -> Result<LaurentReport, GcaError> {
    let mut report = LaurentReport::default();
    let mut cur = seed0.clone();
    for (step, &k) in path.iter().enumerate() {
        cur = mutate_seed(&cur, k)?;
        report.checked += 1;
        let x = &cur.x[k - 1];
        if !is_integral_laurent(x) {
            report.violations.push(LaurentViolation { step: step + 1, vertex: k, value: x.to_canonical() });
        }
    }
    Ok(report)
}

/// Whether an element lies in the upper bound of a seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member,
    /// Not Laurent in the cluster obtained by mutating at `k`; `0` means
    /// the initial cluster.
    NotLaurentIn(usize),
}

/// Old variable `x_k` written in the cluster `μ_k(x)`, whose variables reuse
/// the indeterminates `x1..xn`.
fn old_in_adjacent(seed0: &Seed, k: usize) -> Result<RatFunc, GcaError> {
    let mut fresh = mutate_seed(seed0, k)?;
    fresh.x = (0..seed0.n()).map(|i| QPoly::var(seed0.ctx(), i).into()).collect();
    Ok(mutate_seed(&fresh, k)?.x[k - 1].clone())
}

pub fn upper_membership(element: &RatFunc, seed0: &Seed) -> Result<Membership, GcaError> {
    let n = seed0.n();
    if seed0.b.rank() != n {
        return Err(GcaError::NotApplicable(format!("exchange matrix has rank {} < {n}", seed0.b.rank())));
    }
    if !element.is_laurent() {
        return Ok(Membership::NotLaurentIn(0));
    }
    let ctx = seed0.ctx();
    for k in 1..=n {
        let mut images: Vec<RatFunc> = (0..ctx.len()).map(|v| QPoly::var(ctx, v).into()).collect();
        images[k - 1] = old_in_adjacent(seed0, k)?;
        if !element.substitute(&images)?.is_laurent() {
            return Ok(Membership::NotLaurentIn(k));
        }
    }
    Ok(Membership::Member)
}

/// `C(M) = x^{ǧ(M)} F_M(ŷ, z)` over `seed0`, with `F_M` from the
/// point-counting oracle.
pub fn cluster_character(qp: &Qp, rep: &DecoratedRep, seed0: &Seed, primes: &[u64]) -> Result<RatFunc, GcaError> {
    let n = seed0.n();
    let w = weight_vectors(qp, rep)?;
    let f = f_polynomial_oracle(qp, rep, primes)?;
    let fctx = f.ctx().clone();
    let mut images = Vec::with_capacity(fctx.len());
    for i in 1..=n {
        images.push(yhat(seed0, i)?);
    }
    for v in n..fctx.len() {
        let name = fctx.name(v);
        let idx = seed0.ctx().index(name).ok_or_else(|| GcaError::Shape(format!("symbol {name} missing from the seed")))?;
        images.push(QPoly::var(seed0.ctx(), idx).into());
    }
    let mut c = RatFunc::from(f).substitute(&images)?;
    for (i, &g) in w.g_check.iter().enumerate() {
        if g != 0 {
            c = c.mul(&seed0.x[i].pow_i(g)?);
        }
    }
    Ok(c)
}
