//! Semifields and homomorphic evaluation of subtraction-free expressions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{Ctx, LaurentPoly};
use super::ratfunc::RatFunc;
use super::rational::Rational;
use super::tropical::TropicalValue;
use super::ArithError;

type Poly = LaurentPoly<Rational>;

/// Addition, multiplication and division without subtraction.
pub trait Semifield: Clone {
    fn sf_add(&self, o: &Self) -> Result<Self, ArithError>;
    fn sf_mul(&self, o: &Self) -> Result<Self, ArithError>;
    fn sf_div(&self, o: &Self) -> Result<Self, ArithError>;
    /// A positive constant, in the same ambient structure as `self`.
    fn sf_const(&self, c: &Rational) -> Result<Self, ArithError>;
}

impl Semifield for TropicalValue {
    fn sf_add(&self, o: &Self) -> Result<Self, ArithError> {
        self.add(o)
    }
    fn sf_mul(&self, o: &Self) -> Result<Self, ArithError> {
        self.mul(o)
    }
    fn sf_div(&self, o: &Self) -> Result<Self, ArithError> {
        self.div(o)
    }
    fn sf_const(&self, _c: &Rational) -> Result<Self, ArithError> {
        Ok(TropicalValue::one(self.gens()))
    }
}

impl Semifield for Rational {
    fn sf_add(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self + o)
    }
    fn sf_mul(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self * o)
    }
    fn sf_div(&self, o: &Self) -> Result<Self, ArithError> {
        if o.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self / o)
    }
    fn sf_const(&self, c: &Rational) -> Result<Self, ArithError> {
        Ok(c.clone())
    }
}

impl Semifield for RatFunc {
    fn sf_add(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self.add(o))
    }
    fn sf_mul(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(o))
    }
    fn sf_div(&self, o: &Self) -> Result<Self, ArithError> {
        self.div(o)
    }
    fn sf_const(&self, c: &Rational) -> Result<Self, ArithError> {
        Ok(RatFunc::constant(self.ctx(), c.clone()))
    }
}

/// Numerator/denominator pair with positive coefficients, scaled so that all
/// coefficients are integers with joint gcd one.
#[derive(Clone, Debug, PartialEq)]
pub struct SubtractionFreeValue {
    num: Poly,
    den: Poly,
}

impl SubtractionFreeValue {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if !num.has_nonneg_coeffs() || !den.has_nonneg_coeffs() {
            return Err(ArithError::Subtraction);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: Poly) -> Result<Self, ArithError> {
        let one = Poly::one(p.ctx());
        Self::new(p, one)
    }

    pub fn var(ctx: &Ctx, i: usize) -> Self {
        Self::canonical(Poly::var(ctx, i), Poly::one(ctx))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        let (num, den) = match num.divexact(&den) {
            Ok(q) => {
                let one = Poly::one(q.ctx());
                (q, one)
            }
            Err(_) => {
                let m = den.min_exponents().unwrap();
                let neg: Vec<i32> = m.iter().map(|x| -x).collect();
                (num.mul_monomial(&neg, &Rational::one()), den.mul_monomial(&neg, &Rational::one()))
            }
        };
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in num.terms().values().chain(den.terms().values()) {
            l = l.lcm(c.denom());
        }
        for c in num.terms().values().chain(den.terms().values()) {
            let v = (c * Rational::from_integer(l.clone())).to_integer();
            g = g.gcd(&v);
        }
        let s = Rational::new(l, g.abs());
        SubtractionFreeValue { num: num.scale(&s), den: den.scale(&s) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Joint content of numerator and denominator (one after canonicalization).
    pub fn content(&self) -> BigInt {
        self.num
            .terms()
            .values()
            .chain(self.den.terms().values())
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer()))
    }

    pub fn to_ratfunc(&self) -> Result<RatFunc, ArithError> {
        RatFunc::new(self.num.clone(), self.den.clone())
    }
}

impl Semifield for SubtractionFreeValue {
    fn sf_add(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(Self::canonical(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)))
    }
    fn sf_mul(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(Self::canonical(self.num.mul(&o.num), self.den.mul(&o.den)))
    }
    fn sf_div(&self, o: &Self) -> Result<Self, ArithError> {
        if o.num.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::canonical(self.num.mul(&o.den), self.den.mul(&o.num)))
    }
    fn sf_const(&self, c: &Rational) -> Result<Self, ArithError> {
        let ctx = self.num.ctx();
        Self::new(Poly::constant(ctx, c.clone()), Poly::one(ctx))
    }
}

/// Expression tree over `+`, `×`, `÷` and positive constants. `Sub` exists
/// only so that callers can build it and have evaluation reject it.
#[derive(Clone, Debug)]
pub enum SfExpr {
    Const(Rational),
    Var(usize),
    Add(Vec<SfExpr>),
    Mul(Vec<SfExpr>),
    Div(Box<SfExpr>, Box<SfExpr>),
    Pow(Box<SfExpr>, i64),
    Sub(Box<SfExpr>, Box<SfExpr>),
}

impl SfExpr {
    pub fn contains_subtraction(&self) -> bool {
        match self {
            SfExpr::Sub(..) => true,
            SfExpr::Const(c) => !c.is_positive(),
            SfExpr::Var(_) => false,
            SfExpr::Add(v) | SfExpr::Mul(v) => v.iter().any(|e| e.contains_subtraction()),
            SfExpr::Div(a, b) => a.contains_subtraction() || b.contains_subtraction(),
            SfExpr::Pow(a, _) => a.contains_subtraction(),
        }
    }
}

/// Evaluates `expr` homomorphically with `env[i]` assigned to variable `i`.
pub fn sf_eval<S: Semifield>(expr: &SfExpr, env: &[S]) -> Result<S, ArithError> {
    if expr.contains_subtraction() {
        return Err(ArithError::Subtraction);
    }
    let template = env.first().ok_or_else(|| ArithError::Structure("empty environment".into()))?;
    eval_inner(expr, env, template)
}

fn eval_inner<S: Semifield>(expr: &SfExpr, env: &[S], t: &S) -> Result<S, ArithError> {
    Ok(match expr {
        SfExpr::Const(c) => t.sf_const(c)?,
        SfExpr::Var(i) => env
            .get(*i)
            .cloned()
            .ok_or_else(|| ArithError::Structure(format!("unbound variable {i}")))?,
        SfExpr::Add(v) => {
            let mut it = v.iter();
            let first = it.next().ok_or_else(|| ArithError::Structure("empty sum".into()))?;
            let mut acc = eval_inner(first, env, t)?;
            for e in it {
                acc = acc.sf_add(&eval_inner(e, env, t)?)?;
            }
            acc
        }
        SfExpr::Mul(v) => {
            let mut acc = t.sf_const(&Rational::one())?;
            for e in v {
                acc = acc.sf_mul(&eval_inner(e, env, t)?)?;
            }
            acc
        }
        SfExpr::Div(a, b) => eval_inner(a, env, t)?.sf_div(&eval_inner(b, env, t)?)?,
        SfExpr::Pow(a, n) => {
            let base = eval_inner(a, env, t)?;
            let mut acc = t.sf_const(&Rational::one())?;
            for _ in 0..n.unsigned_abs() {
                acc = acc.sf_mul(&base)?;
            }
            if *n < 0 {
                t.sf_const(&Rational::one())?.sf_div(&acc)?
            } else {
                acc
            }
        }
        SfExpr::Sub(..) => return Err(ArithError::Subtraction),
    })
}

/// Tropical evaluation of a Laurent polynomial with positive coefficients:
/// the componentwise minimum of the substituted monomials.
pub fn tropicalize(p: &Poly, env: &[TropicalValue]) -> Result<TropicalValue, ArithError> {
    if !p.has_nonneg_coeffs() {
        return Err(ArithError::Subtraction);
    }
    let gens = env.first().map(|v| v.gens().clone()).ok_or_else(|| ArithError::Structure("empty environment".into()))?;
    let mut acc: Option<TropicalValue> = None;
    for e in p.terms().keys() {
        let mut m = TropicalValue::one(&gens);
        for (i, &k) in e.iter().enumerate() {
            if k != 0 {
                m = m.mul(&env[i].pow(k as i64))?;
            }
        }
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m)?,
        });
    }
    acc.ok_or(ArithError::DivisionByZero)
}
