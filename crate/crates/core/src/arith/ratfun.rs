//! Multivariate rational functions in canonical form.
//!
//! Numerator and denominator are coprime and the denominator is monic in
//! the polynomial monomial order, which makes the representation unique.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use num_bigint::BigInt;
use num_integer::Integer;

use super::poly::fmt_coeff;
use super::{Field, Poly, Ring, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RatFun<C: Field> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> RatFun<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole("zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.inv().expect("nonzero leading coefficient");
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn into_poly(self) -> Option<Poly<C>> {
        if self.den.is_constant() {
            let inv = self.den.constant_term().inv()?;
            Some(self.num.scale(&inv))
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_constant() {
                return RatFun { num, den: self.den.clone() };
            }
            return Self::reduced(num, self.den.clone());
        }
        if self.den.is_constant() && o.den.is_constant() {
            // Both dens are 1 after canonicalization.
            return RatFun {
                num: self.num.add(&o.num),
                den: Poly::one(),
            };
        }
        let g = self.den.gcd(&o.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        let den = b1.mul(&o.den);
        if g.is_constant() {
            Self::reduced_known_coprime(num, den)
        } else {
            let h = num.gcd(&g);
            if h.is_constant() {
                Self::reduced_known_coprime(num, den)
            } else {
                Self::reduced_known_coprime(
                    num.div_exact(&h).unwrap(),
                    den.div_exact(&h).unwrap(),
                )
            }
        }
    }

    fn reduced_known_coprime(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.inv().unwrap();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFun {
                num: self.num.mul(&o.num),
                den: Poly::one(),
            };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let c = o.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Self::reduced_known_coprime(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Pole("inverse of zero".into()));
        }
        Ok(Self::reduced_known_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&C::from_rational(q))
    }

    pub fn derivative(&self, v: Var) -> Self {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::reduced_known_coprime(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::reduced(num, self.den.mul(&self.den))
    }

    /// Substitutes a constant for one variable. Fails when the denominator
    /// vanishes identically after substitution.
    pub fn subst(&self, v: Var, value: &C) -> Result<Self> {
        let den = self.den.subst(v, value);
        if den.is_zero() {
            return Err(Error::Pole(format!("{} = {}", v.name(), value)));
        }
        Ok(Self::reduced(self.num.subst(v, value), den))
    }

    /// Full evaluation at a point assigning every variable that occurs.
    pub fn eval(&self, point: &[(Var, C)]) -> Result<C> {
        let mut f = self.clone();
        for (v, c) in point {
            f = f.subst(*v, c)?;
        }
        if !f.num.is_constant() || !f.den.is_constant() {
            return Err(Error::InvalidParameter(format!(
                "unassigned variables remain in {f}"
            )));
        }
        let d = f.den.constant_term();
        Ok(f.num.constant_term().div(&d).expect("nonzero denominator"))
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> RatFun<D> {
        RatFun::reduced(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    pub fn is_homogeneous_of_degree(&self, d: i64) -> bool {
        self.num.is_zero()
            || (self.num.is_homogeneous()
                && self.den.is_homogeneous()
                && self.num.total_degree() as i64 - self.den.total_degree() as i64 == d)
    }
}

impl<C: Field> Ring for RatFun<C> {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFun::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFun::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFun::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
    fn from_rational(q: &BigRational) -> Self {
        RatFun::constant(C::from_rational(q))
    }
}

impl<C: Field> Field for RatFun<C> {
    fn inv(&self) -> Option<Self> {
        RatFun::inv(self).ok()
    }
}

fn wrap(s: String, single: bool) -> String {
    if single {
        s
    } else {
        format!("({s})")
    }
}

impl RatFun<BigRational> {
    /// Canonical integer-normalized rendering such as `-(t1 + t2)/(72*t1*t2)`.
    pub fn render(&self) -> String {
        if self.num.is_zero() {
            return "0".into();
        }
        // Scale num and den by the lcm of all coefficient denominators.
        let mut l = BigInt::one();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            l = l.lcm(c.denom());
        }
        let lq = BigRational::from_integer(l);
        let num = self.num.scale(&lq);
        let den = self.den.scale(&lq);
        let mut g = BigInt::from(0);
        for (_, c) in num.terms().chain(den.terms()) {
            g = g.gcd(c.numer());
        }
        let gq = BigRational::from_integer(g);
        let num = num.scale(&gq.recip());
        let den = den.scale(&gq.recip());
        let (num, neg) = if num.len() > 1 && num.leading_coeff().is_negative() {
            (num.neg(), true)
        } else {
            (num, false)
        };
        let single_num = num.len() == 1;
        let mut ns = num.to_string();
        if den.is_constant() && One::is_one(&den.constant_term()) {
            return if neg { format!("-({ns})") } else { ns };
        }
        let ds = den_string(&den);
        if neg {
            ns = format!("-{}", wrap(ns, false));
        } else if !single_num {
            ns = wrap(ns, false);
        }
        let single_den = den.len() == 1 && !ds.contains('*');
        format!("{ns}/{}", wrap(ds, single_den))
    }
}

fn den_string(den: &Poly<BigRational>) -> String {
    if den.len() == 1 {
        let (m, c) = den.leading().unwrap();
        let mono = Poly::monomial(<BigRational as One>::one(), *m).to_string();
        let (_, cs) = fmt_coeff(c);
        if mono == "1" {
            cs
        } else if One::is_one(c) {
            mono
        } else {
            format!("{cs}*{mono}")
        }
    } else {
        den.to_string()
    }
}

impl<C: Field> fmt::Display for RatFun<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    type R = RatFun<BigRational>;

    fn q() -> R {
        R::var(Var::Q)
    }

    fn one() -> R {
        R::one()
    }

    #[test]
    fn evaluation_at_minus_one() {
        let f = one().add(&q()).div(&one().sub(&q())).unwrap();
        assert_eq!(f.eval(&[(Var::Q, int(-1))]).unwrap(), int(0));
        let g = q()
            .scale_rational(&int(4))
            .div(&one().sub(&q()).mul(&one().sub(&q())))
            .unwrap();
        assert_eq!(g.eval(&[(Var::Q, int(-1))]).unwrap(), int(-1));
    }

    #[test]
    fn pole_is_an_error() {
        let f = one().div(&one().sub(&q())).unwrap();
        assert!(matches!(f.eval(&[(Var::Q, int(1))]), Err(Error::Pole(_))));
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = R::var(Var::T1).add(&R::var(Var::T2));
        let b = R::var(Var::T1).mul(&R::var(Var::T2)).scale_rational(&rat(24, 1));
        let f = a.div(&b).unwrap();
        let g = a.scale_rational(&int(3)).div(&b.scale_rational(&int(3))).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.neg().render(), "-(t1 + t2)/(24*t1*t2)");
    }

    #[test]
    fn render_simple_fraction() {
        let f = one().div(&R::var(Var::T).scale_rational(&int(-288))).unwrap();
        assert_eq!(f.render(), "-1/(288*t)");
    }
}
