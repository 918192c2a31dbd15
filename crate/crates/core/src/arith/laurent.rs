//! Sparse multivariate Laurent polynomials over a shared variable context.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use super::field::Field;
use super::rational::{fmt_rat, is_integer, parse_rat, rat, Rational};
use super::ArithError;

/// An immutable, ordered list of variable names.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct VarCtx {
    names: Vec<String>,
}

pub type Ctx = Arc<VarCtx>;

impl VarCtx {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Ctx {
        Arc::new(VarCtx { names: names.into_iter().map(Into::into).collect() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub type Monomial = Vec<i32>;

/// Map from exponent vector to nonzero coefficient.
#[derive(Clone)]
pub struct LaurentPoly<C = Rational> {
    ctx: Ctx,
    terms: BTreeMap<Monomial, C>,
}

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<C: Field> PartialEq for LaurentPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl<C: Field> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly{:?}", self.terms)
    }
}

impl<C: Field> LaurentPoly<C> {
    pub fn zero(ctx: &Ctx) -> Self {
        LaurentPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &Ctx, c: C) -> Self {
        Self::monomial(ctx, vec![0; ctx.len()], c)
    }

    pub fn var(ctx: &Ctx, i: usize) -> Self {
        let mut e = vec![0; ctx.len()];
        e[i] = 1;
        Self::monomial(ctx, e, C::one())
    }

    pub fn monomial(ctx: &Ctx, exps: Monomial, c: C) -> Self {
        assert_eq!(exps.len(), ctx.len(), "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { ctx: ctx.clone(), terms }
    }

    pub fn from_terms(ctx: &Ctx, it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(ctx);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        match self.as_monomial() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, e: &[i32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, e: Monomial, c: C) {
        debug_assert_eq!(e.len(), self.ctx.len());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check(&self, other: &Self) {
        assert!(same_ctx(&self.ctx, &other.ctx), "variable context mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check(other);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(&self.ctx);
        }
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut r = Self::zero(&self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.clone() * c2.clone());
            }
        }
        r
    }

    /// Multiplies by the monomial `c * x^e`.
    pub fn mul_monomial(&self, e: &[i32], c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power; negative powers exist only for monomials.
    pub fn pow_i(&self, n: i64) -> Option<Self> {
        if n >= 0 {
            return Some(self.pow(n as u32));
        }
        let (e, c) = self.as_monomial()?;
        let m = (-n) as i32;
        let inv = C::one() / c.clone();
        let mut coeff = C::one();
        for _ in 0..m {
            coeff = coeff * inv.clone();
        }
        Some(Self::monomial(&self.ctx, e.iter().map(|x| -x * m).collect(), coeff))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Componentwise maximum exponent over all terms.
    pub fn max_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()))
    }

    /// Exact division in the Laurent ring.
    ///
    /// Both operands are shifted to polynomials without monomial factors and
    /// divided with the lexicographic division algorithm; a single divisor
    /// forms a Gröbner basis of its principal ideal, so a zero remainder is
    /// equivalent to divisibility.
    pub fn divexact(&self, b: &Self) -> Result<Self, ArithError> {
        self.check(b);
        if b.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some((e, c)) = b.as_monomial() {
            let neg: Monomial = e.iter().map(|x| -x).collect();
            return Ok(self.mul_monomial(&neg, &(C::one() / c.clone())));
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let mb = b.min_exponents().unwrap();
        let ma = self.min_exponents().unwrap();
        let nb: Monomial = mb.iter().map(|x| -x).collect();
        let na: Monomial = ma.iter().map(|x| -x).collect();
        let b0 = b.mul_monomial(&nb, &C::one());
        let mut r = self.mul_monomial(&na, &C::one());
        let (lb, lc) = b0.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut q = Self::zero(&self.ctx);
        while let Some((lt, c)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let diff: Monomial = lt.iter().zip(&lb).map(|(a, b)| a - b).collect();
            if diff.iter().all(|&x| x >= 0) {
                let f = c / lc.clone();
                for (e, v) in &b0.terms {
                    let ne: Monomial = e.iter().zip(&diff).map(|(a, b)| a + b).collect();
                    r.add_term(ne, -(v.clone() * f.clone()));
                }
                q.add_term(diff, f);
            } else {
                // Later steps only touch smaller terms, so this one stays in
                // the remainder.
                let mut rem = Self::zero(&self.ctx);
                rem.add_term(lt, c);
                return Err(ArithError::NotExact { remainder: format!("{:?}", rem.mul_monomial(&ma, &C::one()).terms) });
            }
        }
        let shift: Monomial = ma.iter().zip(&mb).map(|(a, b)| a - b).collect();
        Ok(q.mul_monomial(&shift, &C::one()))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    ///
    /// Negative exponents require monomial images.
    pub fn substitute(&self, images: &[LaurentPoly<C>]) -> Result<LaurentPoly<C>, ArithError> {
        assert_eq!(images.len(), self.ctx.len());
        let target = images
            .first()
            .map(|p| p.ctx.clone())
            .unwrap_or_else(|| self.ctx.clone());
        let mut out = LaurentPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = LaurentPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    let p = images[i]
                        .pow_i(k as i64)
                        .ok_or_else(|| ArithError::NotMonomial(format!("variable {} raised to {}", self.ctx.name(i), k)))?;
                    t = t.mul(&p);
                }
            }
            out.add_assign(&t);
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly::zero(&self.ctx);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Re-expresses the polynomial in another context; `map[i]` is the index
    /// of old variable `i` in the new context.
    pub fn reembed(&self, ctx: &Ctx, map: &[usize]) -> Self {
        let mut out = Self::zero(ctx);
        for (e, c) in &self.terms {
            let mut ne = vec![0; ctx.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }
}

impl LaurentPoly<Rational> {
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(is_integer)
    }

    pub fn has_nonneg_coeffs(&self) -> bool {
        self.terms.values().all(|c| *c > Rational::zero())
    }

    /// Canonical text: lexicographically sorted terms joined by ` + `.
    pub fn to_canonical(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut s = fmt_rat(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    s.push_str(&format!("*{}", self.ctx.name(i)));
                } else if k != 0 {
                    s.push_str(&format!("*{}^{}", self.ctx.name(i), k));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }

    /// Reads the canonical form and the usual hand-written variants:
    /// implicit unit coefficients, `-` between terms, factors in any order.
    pub fn parse(ctx: &Ctx, s: &str) -> Result<Self, ArithError> {
        let mut p = Self::zero(ctx);
        for (neg, term) in split_terms(s)? {
            let mut c = rat(1);
            let mut e = vec![0; ctx.len()];
            for v in term.split('*').map(str::trim) {
                if v.is_empty() {
                    return Err(ArithError::Parse(format!("empty factor in '{term}'")));
                }
                if v.starts_with(|ch: char| ch.is_ascii_digit()) {
                    c *= parse_rat(v)?;
                    continue;
                }
                let (name, k) = match v.split_once('^') {
                    Some((n, k)) => (n.trim(), k.trim().parse::<i32>().map_err(|_| ArithError::Parse(format!("bad exponent in '{v}'")))?),
                    None => (v, 1),
                };
                let i = ctx.index(name).ok_or_else(|| ArithError::Parse(format!("unknown variable '{name}'")))?;
                e[i] += k;
            }
            p.add_term(e, if neg { -c } else { c });
        }
        Ok(p)
    }
}

/// Splits at top-level `+`/`-`; a sign right after `^`, `*` or `/` belongs
/// to the number that follows it.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>, ArithError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if ch.is_whitespace() {
            continue;
        }
        let unary_ctx = matches!(prev, None | Some('^' | '*' | '/' | '+' | '-'));
        if (ch == '+' || ch == '-') && !matches!(prev, Some('^' | '*' | '/')) {
            if !unary_ctx || !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
                neg = false;
            }
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if cur.is_empty() {
        return Err(ArithError::Parse(format!("bad polynomial '{s}'")));
    }
    out.push((neg, cur));
    // "0" alone is the zero polynomial.
    Ok(out.into_iter().filter(|(_, t)| t != "0").collect())
}

impl fmt::Display for LaurentPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl<C: Field> $tr<&LaurentPoly<C>> for &LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
                LaurentPoly::$m(self, o)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl<C: Field> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly::neg(self)
    }
}
