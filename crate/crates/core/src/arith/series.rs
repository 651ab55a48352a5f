//! Truncated power series in one variable.
//!
//! A series of order `N` carries the coefficients of `x^0 .. x^N`; every
//! operation is exact below that bound and drops everything above it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{factorial, Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    var: &'static str,
    coeffs: Vec<C>,
}

impl<C: Ring> TruncSeries<C> {
    pub fn new(var: &'static str, order: usize, coeffs: Vec<C>) -> Self {
        let mut coeffs = coeffs;
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, C::zero());
        TruncSeries { var, coeffs }
    }

    pub fn zero(var: &'static str, order: usize) -> Self {
        Self::new(var, order, Vec::new())
    }

    pub fn constant(var: &'static str, order: usize, c: C) -> Self {
        Self::new(var, order, vec![c])
    }

    /// The series `x`.
    pub fn variable(var: &'static str, order: usize) -> Self {
        Self::new(var, order, vec![C::zero(), C::one()])
    }

    pub fn from_fn(var: &'static str, order: usize, f: impl Fn(usize) -> C) -> Self {
        TruncSeries {
            var,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.var, order, self.coeffs.clone())
    }

    fn common_order(&self, o: &Self) -> usize {
        self.order().min(o.order())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        Self::from_fn(self.var, n, |k| self.coeffs[k].add(&o.coeffs[k]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        Self::from_fn(self.var, n, |k| self.coeffs[k].sub(&o.coeffs[k]))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.var, self.order(), |k| self.coeffs[k].neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_fn(self.var, self.order(), |k| self.coeffs[k].mul(c))
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&C::from_rational(q))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.common_order(o);
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TruncSeries { var: self.var, coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.var, self.order(), C::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(self.var, n, |i| {
            if i >= k {
                self.coeffs[i - k].clone()
            } else {
                C::zero()
            }
        })
    }

    /// Term-by-term derivative. The order drops by one.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(self.var, 0);
        }
        Self::from_fn(self.var, n - 1, |k| {
            self.coeffs[k + 1].mul(&C::from_int(k as i64 + 1))
        })
    }

    /// Antiderivative with zero constant term. The order grows by one.
    pub fn integral(&self) -> Self {
        let n = self.order();
        Self::from_fn(self.var, n + 1, |k| {
            if k == 0 {
                C::zero()
            } else {
                self.coeffs[k - 1].scale(&BigRational::new(BigInt::one(), BigInt::from(k)))
            }
        })
    }

    /// `f(g(x))`. Requires `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.common_order(g);
        let g = g.truncate(n);
        let mut acc = Self::constant(g.var, n, self.coeffs[n].clone());
        for k in (0..n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// `exp(f)`. Requires `f(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        // e' = f' e
        let n = self.order();
        let mut e = vec![C::zero(); n + 1];
        e[0] = C::one();
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&e[m - k]).mul(&C::from_int(k as i64)));
            }
            e[m] = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(m)));
        }
        Ok(TruncSeries { var: self.var, coeffs: e })
    }

    /// `1/f` for a series with constant term one.
    pub fn inverse_unit(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let mut u = vec![C::zero(); n + 1];
        u[0] = C::one();
        for m in 1..=n {
            let mut acc = C::zero();
            for k in 1..=m {
                acc = acc.add(&self.coeffs[k].mul(&u[m - k]));
            }
            u[m] = acc.neg();
        }
        Ok(TruncSeries { var: self.var, coeffs: u })
    }

    /// Square root with constant term one, of a series with constant term one.
    pub fn sqrt_unit(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut s = vec![C::zero(); n + 1];
        s[0] = C::one();
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..m {
                acc = acc.sub(&s[k].mul(&s[m - k]));
            }
            s[m] = acc.scale(&half);
        }
        Ok(TruncSeries { var: self.var, coeffs: s })
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Returns the first index at which the two series differ.
    pub fn first_difference(&self, o: &Self) -> Option<usize> {
        let n = self.common_order(o);
        (0..=n).find(|&k| self.coeffs[k] != o.coeffs[k])
    }
}

impl<C: Field> TruncSeries<C> {
    /// `1/f` for any series with invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inv().ok_or(Error::NotInvertible)?;
        let normalized = self.scale(&c0);
        Ok(normalized.inverse_unit()?.scale(&c0))
    }
}

/// `arcsin(x)` to order `n`.
pub fn arcsin_series<C: Ring>(var: &'static str, n: usize) -> TruncSeries<C> {
    TruncSeries::from_fn(var, n, |j| {
        if j % 2 == 0 {
            return C::zero();
        }
        let k = (j / 2) as u32;
        let num = factorial(2 * k);
        let den = BigInt::from(4u32).pow(k) * factorial(k).pow(2) * BigInt::from(2 * k + 1);
        C::from_rational(&BigRational::new(num, den))
    })
}

/// `sin(x)` to order `n`.
pub fn sin_series<C: Ring>(var: &'static str, n: usize) -> TruncSeries<C> {
    TruncSeries::from_fn(var, n, |j| {
        if j % 2 == 0 {
            C::zero()
        } else {
            let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
            C::from_rational(&BigRational::new(BigInt::from(sign), factorial(j as u32)))
        }
    })
}

/// `sinh(x)` to order `n`.
pub fn sinh_series<C: Ring>(var: &'static str, n: usize) -> TruncSeries<C> {
    TruncSeries::from_fn(var, n, |j| {
        if j % 2 == 0 {
            C::zero()
        } else {
            C::from_rational(&BigRational::new(BigInt::one(), factorial(j as u32)))
        }
    })
}

/// `exp(x)` to order `n`.
pub fn exp_series<C: Ring>(var: &'static str, n: usize) -> TruncSeries<C> {
    TruncSeries::from_fn(var, n, |j| {
        C::from_rational(&BigRational::new(BigInt::one(), factorial(j as u32)))
    })
}

impl<C: Ring> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}
