//! Finite Laurent polynomials in z.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::Ring;

/// `Σ c_k z^k` with finitely many nonzero `c_k`, `k ∈ Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentZ<C> {
    terms: BTreeMap<i32, C>,
}

impl<C: Ring> LaurentZ<C> {
    pub fn monomial(c: C, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentZ { terms }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// The monomial `z^k`.
    pub fn z_pow(k: i32) -> Self {
        Self::monomial(C::one(), k)
    }

    pub fn coeff(&self, k: i32) -> C {
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &C)> {
        self.terms.iter()
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentZ {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> LaurentZ<D> {
        let mut out = LaurentZ::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }

    pub fn try_map<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<LaurentZ<D>, E> {
        let mut out = LaurentZ::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, f(c)?);
        }
        Ok(out)
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }
}

impl<C: Ring> Ring for LaurentZ<C> {
    fn zero() -> Self {
        LaurentZ {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.neg());
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, a.mul(b));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }
    fn from_rational(q: &BigRational) -> Self {
        Self::constant(C::from_rational(q))
    }
}

impl<C: Ring> fmt::Display for LaurentZ<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}
