use std::sync::Arc;

use super::GcaError;
use crate::arith::{pos, rat, tropicalize, RatFunc, TropicalValue, VarCtx};
use crate::quiver::{mutate_matrix, ExchangeMatrix, MutationDatum, ZValue};
use crate::QPoly;

/// Coefficient semifield of a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientMode {
    /// `Trop(z)` with every `y` equal to one.
    #[default]
    TropZ,
    /// Principal coefficients in `Trop(y, z)`.
    Principal,
}

impl std::str::FromStr for CoefficientMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "trop-z" => Ok(CoefficientMode::TropZ),
            "principal" => Ok(CoefficientMode::Principal),
            _ => Err(format!("unknown semifield '{s}' (expected trop-z or principal)")),
        }
    }
}

/// Labeled seed: cluster in `Q(x, y, z)`, tropical coefficients, exchange
/// matrix and mutation datum, plus the path from the initial seed.
#[derive(Debug, Clone, PartialEq)]
pub struct Seed {
    ctx: crate::arith::Ctx,
    trop: crate::arith::Ctx,
    mode: CoefficientMode,
    pub x: Vec<RatFunc>,
    pub y: Vec<TropicalValue>,
    pub b: ExchangeMatrix,
    pub datum: MutationDatum,
    pub label: Vec<usize>,
}

impl Seed {
    /// Initial seed with indeterminate cluster variables `x1..xn`.
    pub fn initial(b: ExchangeMatrix, datum: MutationDatum, mode: CoefficientMode) -> Result<Self, GcaError> {
        let n = b.n();
        if datum.n() != n {
            return Err(GcaError::Shape(format!("datum for {} vertices, matrix of size {n}", datum.n())));
        }
        let syms = datum.symbols();
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        names.extend((1..=n).map(|i| format!("y{i}")));
        names.extend(syms.iter().cloned());
        let ctx = VarCtx::new(names);
        let trop_names: Vec<String> = match mode {
            CoefficientMode::TropZ => syms,
            CoefficientMode::Principal => (1..=n).map(|i| format!("y{i}")).chain(syms).collect(),
        };
        let trop = VarCtx::new(trop_names);
        let x = (0..n).map(|i| QPoly::var(&ctx, i).into()).collect();
        let y = (0..n)
            .map(|i| match mode {
                CoefficientMode::TropZ => TropicalValue::one(&trop),
                CoefficientMode::Principal => TropicalValue::generator(&trop, i),
            })
            .collect();
        Ok(Seed { ctx, trop, mode, x, y, b, datum, label: Vec::new() })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn ctx(&self) -> &crate::arith::Ctx {
        &self.ctx
    }

    pub fn trop_ctx(&self) -> &crate::arith::Ctx {
        &self.trop
    }

    pub fn mode(&self) -> CoefficientMode {
        self.mode
    }

    /// Image of a tropical monomial in the ambient field.
    pub fn embed(&self, t: &TropicalValue) -> RatFunc {
        let mut e = vec![0i32; self.ctx.len()];
        for (g, &k) in t.exps().iter().enumerate() {
            let name = self.trop.name(g);
            e[self.ctx.index(name).expect("tropical generator in ambient context")] = k as i32;
        }
        QPoly::monomial(&self.ctx, e, rat(1)).into()
    }

    /// `z_{k,s}` in the ambient field.
    pub fn z_field(&self, k: usize, s: usize) -> RatFunc {
        match &self.datum.z(k)[s] {
            ZValue::Num(r) => RatFunc::constant(&self.ctx, r.clone()),
            ZValue::Sym(name) => QPoly::var(&self.ctx, self.ctx.index(name).expect("symbol in context")).into(),
        }
    }

    /// `z_{k,s}` in the coefficient semifield; numeric values map to one.
    pub fn z_trop(&self, k: usize, s: usize) -> TropicalValue {
        match &self.datum.z(k)[s] {
            ZValue::Num(_) => TropicalValue::one(&self.trop),
            ZValue::Sym(name) => TropicalValue::generator(&self.trop, self.trop.index(name).expect("symbol in semifield")),
        }
    }

    /// `⊕_s z_{k,s} y^s` for a tropical `y`.
    pub fn trop_exchange(&self, k: usize, y: &TropicalValue) -> Result<TropicalValue, GcaError> {
        let d = self.datum.d()[k - 1] as i64;
        let mut acc = self.z_trop(k, 0);
        for s in 1..=d {
            acc = acc.add(&self.z_trop(k, s as usize).mul(&y.pow(s))?)?;
        }
        Ok(acc)
    }

    /// `Σ_s z_{k,s} u^s` in the ambient field.
    pub fn field_exchange(&self, k: usize, u: &RatFunc) -> Result<RatFunc, GcaError> {
        let d = self.datum.d()[k - 1] as i64;
        let mut acc = self.z_field(k, 0);
        for s in 1..=d {
            acc = acc.add(&self.z_field(k, s as usize).mul(&u.pow_i(s)?));
        }
        Ok(acc)
    }

    /// Tropical evaluation of a positive polynomial in the semifield of this
    /// seed, with `env[i]` substituted for ambient variable `i`.
    pub fn tropical_value(&self, p: &QPoly, env: &[TropicalValue]) -> Result<TropicalValue, GcaError> {
        if self.trop.is_empty() {
            return Ok(TropicalValue::one(&self.trop));
        }
        Ok(tropicalize(p, env)?)
    }

    /// Same ambient and coefficient contexts.
    pub fn compatible(&self, o: &Seed) -> bool {
        Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx
    }

    /// Canonical text of each cluster variable.
    pub fn x_strings(&self) -> Vec<String> {
        self.x.iter().map(RatFunc::to_canonical).collect()
    }
}

/// `ŷ_i = y_i ∏_j x_j^{b_{j,i}}` in the ambient field.
pub fn yhat(seed: &Seed, i: usize) -> Result<RatFunc, GcaError> {
    let mut acc = seed.embed(&seed.y[i - 1]);
    for j in 1..=seed.n() {
        let b = seed.b.get(j, i);
        if b != 0 {
            acc = acc.mul(&seed.x[j - 1].pow_i(b)?);
        }
    }
    Ok(acc)
}

/// `(d, z)`-mutation at `k`.
pub fn mutate_seed(seed: &Seed, k: usize) -> Result<Seed, GcaError> {
    seed.b.check_vertex(k)?;
    let n = seed.n();
    let d = seed.datum.dk(k);
    let yk = &seed.y[k - 1];
    // x_k x'_k ⊕ = Σ_s z_s a^s b^{d-s} with ŷ_k = a / b.
    let mut a = seed.embed(yk);
    let mut b = RatFunc::constant(&seed.ctx, rat(1));
    for j in 1..=n {
        let e = seed.b.get(j, k);
        if e > 0 {
            a = a.mul(&seed.x[j - 1].pow_i(e)?);
        } else if e < 0 {
            b = b.mul(&seed.x[j - 1].pow_i(-e)?);
        }
    }
    let z: Vec<RatFunc> = (0..=d as usize).map(|s| seed.z_field(k, s)).collect();
    let numer = super::fg::homogeneous_exchange(&z, &a, &b);
    let denom = seed.embed(&seed.trop_exchange(k, yk)?).mul(&seed.x[k - 1]);
    let xk = numer.div(&denom)?;
    let mut x = seed.x.clone();
    x[k - 1] = xk;

    let oplus = seed.trop_exchange(k, yk)?;
    let y = (1..=n)
        .map(|i| {
            if i == k {
                return Ok(yk.pow(-1));
            }
            let bki = seed.b.get(k, i);
            Ok(seed.y[i - 1].mul(&yk.pow(d * pos(bki)))?.mul(&oplus.pow(-bki))?)
        })
        .collect::<Result<Vec<_>, GcaError>>()?;
    let b = mutate_matrix(&seed.b, &seed.datum, k)?;
    let mut label = seed.label.clone();
    if label.last() == Some(&k) {
        label.pop();
    } else {
        label.push(k);
    }
    Ok(Seed { ctx: seed.ctx.clone(), trop: seed.trop.clone(), mode: seed.mode, x, y, b, datum: seed.datum.clone(), label })
}

/// Checks that the ŷ-variables of `μ_k(seed)` are obtained from those of
/// `seed` by the y-mutation rule with ordinary addition.
pub fn yhat_mutation_check(seed: &Seed, k: usize) -> Result<bool, GcaError> {
    let m = mutate_seed(seed, k)?;
    let d = seed.datum.dk(k);
    let yk = yhat(seed, k)?;
    let sum = seed.field_exchange(k, &yk)?;
    for i in 1..=seed.n() {
        let lhs = yhat(&m, i)?;
        let rhs = if i == k {
            yk.inv()?
        } else {
            let bki = seed.b.get(k, i);
            yhat(seed, i)?.mul(&yk.pow_i(d * pos(bki))?).mul(&sum.pow_i(-bki)?)
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
