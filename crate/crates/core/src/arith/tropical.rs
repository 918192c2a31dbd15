//! Tropical semifield: Laurent monomials with componentwise-min addition.

use std::sync::Arc;

use super::laurent::Ctx;
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalValue {
    gens: Ctx,
    exps: Vec<i64>,
}

impl TropicalValue {
    pub fn one(gens: &Ctx) -> Self {
        TropicalValue { gens: gens.clone(), exps: vec![0; gens.len()] }
    }

    pub fn new(gens: &Ctx, exps: Vec<i64>) -> Result<Self, ArithError> {
        if exps.len() != gens.len() {
            return Err(ArithError::Structure(format!(
                "exponent vector of length {} over {} generators",
                exps.len(),
                gens.len()
            )));
        }
        Ok(TropicalValue { gens: gens.clone(), exps })
    }

    pub fn generator(gens: &Ctx, i: usize) -> Self {
        let mut e = vec![0; gens.len()];
        e[i] = 1;
        TropicalValue { gens: gens.clone(), exps: e }
    }

    pub fn gens(&self) -> &Ctx {
        &self.gens
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    fn check(&self, o: &Self) -> Result<(), ArithError> {
        if Arc::ptr_eq(&self.gens, &o.gens) || self.gens == o.gens {
            Ok(())
        } else {
            Err(ArithError::Structure("tropical generator lists differ".into()))
        }
    }

    fn zip(&self, o: &Self, f: impl Fn(i64, i64) -> i64) -> Result<Self, ArithError> {
        self.check(o)?;
        Ok(TropicalValue {
            gens: self.gens.clone(),
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    /// Tropical sum: componentwise minimum.
    pub fn add(&self, o: &Self) -> Result<Self, ArithError> {
        self.zip(o, i64::min)
    }

    pub fn mul(&self, o: &Self) -> Result<Self, ArithError> {
        self.zip(o, |a, b| a + b)
    }

    pub fn div(&self, o: &Self) -> Result<Self, ArithError> {
        self.zip(o, |a, b| a - b)
    }

    pub fn pow(&self, n: i64) -> Self {
        TropicalValue { gens: self.gens.clone(), exps: self.exps.iter().map(|a| a * n).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// `trop_add` on two values over the same generator list.
pub fn trop_add(a: &TropicalValue, b: &TropicalValue) -> Result<TropicalValue, ArithError> {
    a.add(b)
}
