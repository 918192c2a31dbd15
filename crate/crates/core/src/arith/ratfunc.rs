//! Rational functions as numerator/denominator pairs of Laurent polynomials.

use num_traits::One;

use super::laurent::{Ctx, LaurentPoly};
use super::rational::Rational;
use super::ArithError;

type Poly = LaurentPoly<Rational>;

/// A quotient `num / den` kept in a normal form: monomial denominators are
/// absorbed into the numerator, exact quotients are carried out, and a
/// remaining denominator has leading coefficient one and no monomial factor.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        let one = Poly::one(p.ctx());
        RatFunc { num: p, den: one }
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if let Ok(q) = num.divexact(&den) {
            return RatFunc::from(q);
        }
        let m = den.min_exponents().unwrap();
        let neg: Vec<i32> = m.iter().map(|x| -x).collect();
        let (_, lc) = den.terms().iter().next_back().unwrap();
        let inv = Rational::one() / lc.clone();
        RatFunc { num: num.mul_monomial(&neg, &inv), den: den.mul_monomial(&neg, &inv) }
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        Poly::constant(ctx, c).into()
    }

    pub fn ctx(&self) -> &Ctx {
        self.num.ctx()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&Poly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalize(self.num.add(&o.num), self.den.clone());
        }
        Self::normalize(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow_i(&self, n: i64) -> Result<Self, ArithError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let k = n.unsigned_abs() as u32;
        Ok(Self::normalize(base.num.pow(k), base.den.pow(k)))
    }

    pub fn substitute(&self, images: &[RatFunc]) -> Result<RatFunc, ArithError> {
        eval_poly(&self.num, images)?.div(&eval_poly(&self.den, images)?)
    }

    /// `num` if the denominator is one, otherwise `(num)/(den)`.
    pub fn to_canonical(&self) -> String {
        if self.den.is_one() {
            self.num.to_canonical()
        } else {
            format!("({})/({})", self.num.to_canonical(), self.den.to_canonical())
        }
    }

    /// Accepts `p`, `(p)`, `(p)/(q)` and `(p)/q`.
    pub fn parse(ctx: &Ctx, s: &str) -> Result<Self, ArithError> {
        let s = s.trim();
        let bad = || ArithError::Parse(format!("bad rational function '{s}'"));
        if !s.starts_with('(') {
            return Ok(Poly::parse(ctx, s)?.into());
        }
        let close = matching_paren(s).ok_or_else(bad)?;
        let num = Poly::parse(ctx, &s[1..close])?;
        let rest = s[close + 1..].trim();
        if rest.is_empty() {
            return Ok(num.into());
        }
        let den = rest.strip_prefix('/').ok_or_else(bad)?.trim();
        let den = match den.strip_prefix('(') {
            Some(inner) => inner.strip_suffix(')').ok_or_else(bad)?,
            None => den,
        };
        RatFunc::new(num, Poly::parse(ctx, den)?)
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Evaluates a Laurent polynomial at rational-function arguments.
///
/// All terms are brought over the common denominator
/// `∏ den_i^{hi_i} num_i^{-lo_i}` so that only one normalization happens.
pub fn eval_poly(p: &Poly, images: &[RatFunc]) -> Result<RatFunc, ArithError> {
    let ctx = images.first().map(|r| r.ctx().clone()).unwrap_or_else(|| p.ctx().clone());
    let nv = p.ctx().len();
    let (mut lo, mut hi) = (vec![0i32; nv], vec![0i32; nv]);
    for e in p.terms().keys() {
        for (i, &k) in e.iter().enumerate() {
            lo[i] = lo[i].min(k);
            hi[i] = hi[i].max(k);
        }
    }
    let powers = |base: &Poly, top: i32| -> Vec<Poly> {
        let mut v = vec![Poly::one(&ctx)];
        for _ in 0..top {
            let next = v.last().unwrap().mul(base);
            v.push(next);
        }
        v
    };
    let mut num_pows = Vec::with_capacity(nv);
    let mut den_pows = Vec::with_capacity(nv);
    for i in 0..nv {
        if lo[i] == 0 && hi[i] == 0 {
            num_pows.push(Vec::new());
            den_pows.push(Vec::new());
            continue;
        }
        if lo[i] < 0 && images[i].is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        num_pows.push(powers(images[i].num(), hi[i] - lo[i]));
        den_pows.push(powers(images[i].den(), hi[i] - lo[i]));
    }
    let mut num = Poly::zero(&ctx);
    for (e, c) in p.terms() {
        let mut t = Poly::constant(&ctx, c.clone());
        for (i, &k) in e.iter().enumerate() {
            if lo[i] == 0 && hi[i] == 0 {
                continue;
            }
            let a = &num_pows[i][(k - lo[i]) as usize];
            let b = &den_pows[i][(hi[i] - k) as usize];
            if !a.is_one() {
                t = t.mul(a);
            }
            if !b.is_one() {
                t = t.mul(b);
            }
        }
        num.add_assign(&t);
    }
    let mut den = Poly::one(&ctx);
    for i in 0..nv {
        if lo[i] == 0 && hi[i] == 0 {
            continue;
        }
        let a = &den_pows[i][hi[i] as usize];
        let b = &num_pows[i][(-lo[i]) as usize];
        den = den.mul(a).mul(b);
    }
    RatFunc::new(num, den)
}
