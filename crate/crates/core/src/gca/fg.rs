use super::seed::{yhat, Seed};
use super::GcaError;
use crate::arith::{pos, rat, RatFunc, TropicalValue, VarCtx};
use crate::quiver::{mutate_matrix, ExchangeMatrix, MutationDatum, ZValue};
use crate::QPoly;

/// Exponent signs inside the exchange sum of the F-recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FSignConvention {
    /// `Σ_s z_{k,s} (∏ y_i^{c_{ik}} F_i^{b_{ik}})^s`: gives `1 + y_k` at the first step.
    #[default]
    Classical,
    /// `Σ_s z_{k,s} (∏ y_i^{-c_{ik}} F_i^{-b_{ik}})^s`.
    Printed,
}

impl FSignConvention {
    pub fn other(self) -> Self {
        match self {
            FSignConvention::Classical => FSignConvention::Printed,
            FSignConvention::Printed => FSignConvention::Classical,
        }
    }
}

impl std::str::FromStr for FSignConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "classical" => Ok(FSignConvention::Classical),
            "printed" => Ok(FSignConvention::Printed),
            _ => Err(format!("unknown F sign convention '{s}' (expected classical or printed)")),
        }
    }
}

/// g-vectors, c-vectors and F-polynomials at one vertex of the tree.
#[derive(Debug, Clone, PartialEq)]
pub struct FgcState {
    /// Reduced path from the initial vertex.
    pub path: Vec<usize>,
    pub b: ExchangeMatrix,
    /// `g[l-1]`: g-vector of the `l`-th cluster variable.
    pub g: Vec<Vec<i64>>,
    /// `c[j-1]`: the `j`-th c-vector.
    pub c: Vec<Vec<i64>>,
    /// F-polynomials over `y1..yn` and the datum symbols.
    pub f: Vec<RatFunc>,
}

impl FgcState {
    /// `det G_t`, columns being the g-vectors.
    pub fn g_det(&self) -> i64 {
        let n = self.g.len();
        let m = crate::QMatrix::from_cols(&self.g.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>(), n);
        crate::arith::rational::to_i64(&m.det()).expect("integer determinant")
    }
}

/// Context `y1..yn` followed by the datum symbols.
pub fn f_context(datum: &MutationDatum) -> crate::arith::Ctx {
    let mut names: Vec<String> = (1..=datum.n()).map(|i| format!("y{i}")).collect();
    names.extend(datum.symbols());
    VarCtx::new(names)
}

fn z_poly(ctx: &crate::arith::Ctx, z: &ZValue) -> RatFunc {
    match z {
        ZValue::Num(r) => RatFunc::constant(ctx, r.clone()),
        ZValue::Sym(s) => QPoly::var(ctx, ctx.index(s).expect("datum symbol")).into(),
    }
}

/// `Σ_s z_{k,s} u^s`.
pub(crate) fn exchange_sum(ctx: &crate::arith::Ctx, datum: &MutationDatum, k: usize, u: &RatFunc) -> Result<RatFunc, GcaError> {
    let a: RatFunc = u.num().clone().into();
    let b: RatFunc = u.den().clone().into();
    let num = exchange_numerator(ctx, datum, k, &a, &b)?;
    Ok(num.div(&b.pow_i(datum.dk(k))?)?)
}

/// `Σ_s z_{k,s} a^s b^{d-s}`, the exchange sum of `a/b` times `b^d`.
fn exchange_numerator(ctx: &crate::arith::Ctx, datum: &MutationDatum, k: usize, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, GcaError> {
    let z: Vec<RatFunc> = datum.z(k).iter().map(|z| z_poly(ctx, z)).collect();
    Ok(homogeneous_exchange(&z, a, b))
}

/// `Σ_s z[s] a^s b^{d-s}` with `d = z.len() - 1`.
pub(crate) fn homogeneous_exchange(z: &[RatFunc], a: &RatFunc, b: &RatFunc) -> RatFunc {
    let d = z.len() - 1;
    let one = RatFunc::constant(a.ctx(), rat(1));
    let mut a_pows = vec![one.clone()];
    let mut b_pows = vec![one];
    for _ in 0..d {
        a_pows.push(a_pows.last().unwrap().mul(a));
        b_pows.push(b_pows.last().unwrap().mul(b));
    }
    let mut acc = RatFunc::constant(a.ctx(), rat(0));
    for (s, zs) in z.iter().enumerate() {
        acc = acc.add(&zs.mul(&a_pows[s]).mul(&b_pows[d - s]));
    }
    acc
}

fn y_monomial(ctx: &crate::arith::Ctx, exps: &[i64]) -> RatFunc {
    let mut e = vec![0i32; ctx.len()];
    for (i, &x) in exps.iter().enumerate() {
        e[i] = x as i32;
    }
    QPoly::monomial(ctx, e, rat(1)).into()
}

/// One step of the g- and c-vector recursions at `k`, from matrix `bt`.
pub(crate) fn gc_step(b0: &ExchangeMatrix, datum: &MutationDatum, bt: &ExchangeMatrix, g: &[Vec<i64>], c: &[Vec<i64>], k: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = b0.n();
    let kk = k - 1;
    let d = datum.dk(k);
    let ck = c[kk].clone();
    let mut g_new = g[kk].iter().map(|x| -x).collect::<Vec<i64>>();
    for i in 0..n {
        let w = pos(-bt.get(i + 1, k) * d);
        if w != 0 {
            for (j, gj) in g_new.iter_mut().enumerate() {
                *gj += w * g[i][j];
            }
        }
        let v = pos(-ck[i] * d);
        if v != 0 {
            for (j, gj) in g_new.iter_mut().enumerate() {
                *gj -= b0.get(j + 1, i + 1) * v;
            }
        }
    }
    let mut c_new = c.to_vec();
    for i in 0..n {
        if i == kk {
            c_new[i] = ck.iter().map(|x| -x).collect();
            continue;
        }
        let bki = bt.get(k, i + 1);
        for j in 0..n {
            c_new[i][j] = c[i][j] + d * pos(bki) * ck[j] + d * bki * pos(-ck[j]);
        }
    }
    let mut g_all = g.to_vec();
    g_all[kk] = g_new;
    (g_all, c_new)
}

/// Runs the g/c/F recursions from the initial vertex along `path`,
/// returning the state at every visited vertex (initial one included).
pub fn gf_recursion(b0: &ExchangeMatrix, datum: &MutationDatum, path: &[usize], conv: FSignConvention) -> Result<Vec<FgcState>, GcaError> {
    let n = b0.n();
    if datum.n() != n {
        return Err(GcaError::Shape(format!("datum for {} vertices, matrix of size {n}", datum.n())));
    }
    let ctx = f_context(datum);
    let unit = |l: usize| -> Vec<i64> { (0..n).map(|i| i64::from(i == l)).collect() };
    let mut cur = FgcState {
        path: Vec::new(),
        b: b0.clone(),
        g: (0..n).map(unit).collect(),
        c: (0..n).map(unit).collect(),
        f: vec![RatFunc::constant(&ctx, rat(1)); n],
    };
    let mut out = vec![cur.clone()];
    for &k in path {
        b0.check_vertex(k)?;
        let kk = k - 1;
        let d = datum.dk(k);
        let bt = &cur.b;
        let ck = cur.c[kk].clone();

        let (g_all, c_all) = gc_step(b0, datum, bt, &cur.g, &cur.c, k);

        let sgn = match conv {
            FSignConvention::Classical => 1,
            FSignConvention::Printed => -1,
        };
        // inner = a / b with a, b polynomial; the prefactor is kept apart so
        // that it can cancel against b^d.
        let mono = |f: &dyn Fn(i64) -> i64| y_monomial(&ctx, &ck.iter().map(|&c| f(c)).collect::<Vec<_>>());
        let mut prefactor = mono(&|c| d * pos(-c));
        let mut a = mono(&|c| pos(sgn * c));
        let mut b = mono(&|c| pos(-sgn * c));
        for i in 0..n {
            let bik = bt.get(i + 1, k);
            if bik == 0 {
                continue;
            }
            let w = d * pos(-bik);
            if w != 0 {
                prefactor = prefactor.mul(&cur.f[i].pow_i(w)?);
            }
            let e = sgn * bik;
            if e > 0 {
                a = a.mul(&cur.f[i].pow_i(e)?);
            } else {
                b = b.mul(&cur.f[i].pow_i(-e)?);
            }
        }
        let sum = exchange_numerator(&ctx, datum, k, &a, &b)?;
        let bd = b.pow_i(d)?;
        let top = if prefactor == bd { sum } else { prefactor.mul(&sum).div(&bd)? };
        let f_new = top.div(&cur.f[kk])?;

        cur.b = mutate_matrix(bt, datum, k)?;
        cur.g = g_all;
        cur.f[kk] = f_new;
        cur.c = c_all;
        if cur.path.last() == Some(&k) {
            cur.path.pop();
        } else {
            cur.path.push(k);
        }
        out.push(cur.clone());
    }
    Ok(out)
}

/// `y^h = F|_Trop(y_i ↦ y_i^{-1} ∏_{j≠i} y_j^{d_j [-b_{j,i}]₊})`.
pub fn h_vector(f: &RatFunc, b: &ExchangeMatrix, datum: &MutationDatum) -> Result<Vec<i64>, GcaError> {
    let n = b.n();
    let gens = VarCtx::new((1..=n).map(|i| format!("y{i}")));
    let ctx = f.ctx();
    let mut env = Vec::with_capacity(ctx.len());
    for i in 1..=n {
        let mut e = vec![0i64; n];
        e[i - 1] = -1;
        for j in 1..=n {
            if j != i {
                e[j - 1] = datum.dk(j) * pos(-b.get(j, i));
            }
        }
        env.push(TropicalValue::new(&gens, e)?);
    }
    for _ in n..ctx.len() {
        env.push(TropicalValue::one(&gens));
    }
    let num = crate::arith::tropicalize(f.num(), &env)?;
    let den = crate::arith::tropicalize(f.den(), &env)?;
    Ok(num.div(&den)?.exps().to_vec())
}

/// Outcome of the relations between records based at adjacent initial
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRelationReport {
    /// Cluster variables `l` for which the g-vector rule fails.
    pub g_rule_failures: Vec<usize>,
    /// Failures of `d_k g(k) = h(k) - h'(k)`.
    pub h_failures: Vec<usize>,
    /// Failures of the F transformation identity.
    pub f_failures: Vec<usize>,
}

impl HRelationReport {
    pub fn ok(&self) -> bool {
        self.g_rule_failures.is_empty() && self.h_failures.is_empty() && self.f_failures.is_empty()
    }
}

/// Compares the records at `t` (end of `path`) based at `t0` with matrix
/// `b0`, and based at `t1 = μ_k(t0)` with matrix `μ_k(b0)`.
pub fn h_relation_check(b0: &ExchangeMatrix, datum: &MutationDatum, path: &[usize], k: usize, conv: FSignConvention) -> Result<HRelationReport, GcaError> {
    let n = b0.n();
    let b1 = mutate_matrix(b0, datum, k)?;
    let mut path1 = vec![k];
    for &p in path {
        if path1.last() == Some(&p) {
            path1.pop();
        } else {
            path1.push(p);
        }
    }
    let rec = gf_recursion(b0, datum, path, conv)?.pop().unwrap();
    let rec1 = gf_recursion(&b1, datum, &path1, conv)?.pop().unwrap();
    let ctx = rec.f[0].ctx().clone();
    let d = datum.dk(k);
    let (yprime, sum, sum_prime) = y_mutation_images(&ctx, b0, datum, k)?;

    let mut report = HRelationReport { g_rule_failures: vec![], h_failures: vec![], f_failures: vec![] };
    for l in 1..=n {
        let g = &rec.g[l - 1];
        let g1 = &rec1.g[l - 1];
        let h = h_vector(&rec.f[l - 1], b0, datum)?[k - 1];
        let h1 = h_vector(&rec1.f[l - 1], &b1, datum)?[k - 1];
        let gk = g[k - 1];
        let rule_ok = (1..=n).all(|i| {
            let expect = if i == k { -gk } else { g[i - 1] + d * pos(b0.get(i, k)) * gk - b0.get(i, k) * h };
            g1[i - 1] == expect
        });
        if !rule_ok {
            report.g_rule_failures.push(l);
        }
        if d * gk != h - h1 {
            report.h_failures.push(l);
        }
        let f1_sub = rec1.f[l - 1].substitute(&yprime)?;
        let (lhs, rhs) = if h % d == 0 && h1 % d == 0 {
            (sum.pow_i(h / d)?.mul(&rec.f[l - 1]), sum_prime.pow_i(h1 / d)?.mul(&f1_sub))
        } else {
            (sum.pow_i(h)?.mul(&rec.f[l - 1].pow_i(d)?), sum_prime.pow_i(h1)?.mul(&f1_sub.pow_i(d)?))
        };
        if lhs != rhs {
            report.f_failures.push(l);
        }
    }
    Ok(report)
}

/// Images `y'_i` of the y-mutation at `k` in `Q_sf(y, z)` (symbols map to
/// themselves), with `Σ_s z_{k,s} y_k^s` and `Σ_s z_{k,s} y'_k^s`.
pub(crate) fn y_mutation_images(ctx: &crate::arith::Ctx, b: &ExchangeMatrix, datum: &MutationDatum, k: usize) -> Result<(Vec<RatFunc>, RatFunc, RatFunc), GcaError> {
    let n = b.n();
    let d = datum.dk(k);
    let yk: RatFunc = QPoly::var(ctx, k - 1).into();
    let sum = exchange_sum(ctx, datum, k, &yk)?;
    let mut yprime = Vec::with_capacity(ctx.len());
    for i in 1..=n {
        let yi: RatFunc = QPoly::var(ctx, i - 1).into();
        yprime.push(if i == k {
            yk.inv()?
        } else {
            let bki = b.get(k, i);
            yi.mul(&yk.pow_i(d * pos(bki))?).mul(&sum.pow_i(-bki)?)
        });
    }
    for v in n..ctx.len() {
        yprime.push(QPoly::var(ctx, v).into());
    }
    let sum_prime = exchange_sum(ctx, datum, k, &yprime[k - 1])?;
    Ok((yprime, sum, sum_prime))
}

/// `x_{l;t} = x^g F(ŷ, z) / F|_P(y, z)` over the initial seed.
pub fn separation(state: &FgcState, l: usize, seed0: &Seed) -> Result<RatFunc, GcaError> {
    let n = seed0.n();
    let f = &state.f[l - 1];
    let fctx = f.ctx();
    let mut images = Vec::with_capacity(fctx.len());
    let mut trop_env = Vec::with_capacity(fctx.len());
    for i in 1..=n {
        images.push(yhat(seed0, i)?);
        trop_env.push(seed0.y[i - 1].clone());
    }
    for v in n..fctx.len() {
        let name = fctx.name(v);
        images.push(QPoly::var(seed0.ctx(), seed0.ctx().index(name).expect("symbol in seed context")).into());
        let t = seed0.trop_ctx();
        trop_env.push(match t.index(name) {
            Some(g) => TropicalValue::generator(t, g),
            None => TropicalValue::one(t),
        });
    }
    let num = f.substitute(&images)?;
    let trop = seed0.tropical_value(f.num(), &trop_env)?.div(&seed0.tropical_value(f.den(), &trop_env)?)?;
    let mut x = num.div(&seed0.embed(&trop))?;
    for (i, &gi) in state.g[l - 1].iter().enumerate() {
        if gi != 0 {
            x = x.mul(&seed0.x[i].pow_i(gi)?);
        }
    }
    Ok(x)
}
