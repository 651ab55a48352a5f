//! Elements of the cyclotomic field Q(ζ_N).
//!
//! An element is stored as a polynomial in ζ_N of degree below φ(N),
//! reduced modulo the N-th cyclotomic polynomial, with integer numerators
//! over one positive common denominator. The reduced representative is
//! unique, so equality at a fixed order is structural. Binary operations
//! on elements of different orders first lift both operands to the least
//! common multiple of the orders.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring};

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Φ_n, lowest degree first. The result is monic.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_polynomial(d);
            p = divide_exact_monic(&p, &q);
        }
    }
    let p = Arc::new(p);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn divide_exact_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= c * bj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    (cyclotomic_polynomial(n).len() - 1) as u32
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    /// Reduces an arbitrary coefficient sequence in powers of ζ_order.
    pub fn new(order: u32, raw: &[BigRational]) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let den = raw
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = raw
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_integer_parts(order, num, den)
    }

    fn from_integer_parts(order: u32, mut num: Vec<BigInt>, den: BigInt) -> Self {
        let phi = cyclotomic_polynomial(order);
        let d = phi.len() - 1;
        // Exponents are taken modulo the order first.
        if num.len() > order as usize {
            let mut folded = vec![BigInt::zero(); order as usize];
            for (i, c) in num.into_iter().enumerate() {
                folded[i % order as usize] += c;
            }
            num = folded;
        }
        for i in (d..num.len()).rev() {
            if num[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut num[i]);
            for (j, pj) in phi.iter().take(d).enumerate() {
                if *pj != 0 {
                    num[i - d + j] -= &c * BigInt::from(*pj);
                }
            }
        }
        num.resize(d, BigInt::zero());
        let mut out = Cyclotomic { order, num, den };
        out.canonicalize();
        out
    }

    fn canonicalize(&mut self) {
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        }
    }

    pub fn rational(q: &BigRational) -> Self {
        Cyclotomic {
            order: 1,
            num: vec![q.numer().clone()],
            den: q.denom().clone(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut num = vec![BigInt::zero(); e + 1];
        num[e] = BigInt::one();
        Self::from_integer_parts(n, num, BigInt::one())
    }

    /// The imaginary unit, in Q(ζ_4).
    pub fn i() -> Self {
        Self::root_of_unity(4, 1)
    }

    /// `2 sin(π k / m)` as an element of Q(ζ_lcm(4, 2m)).
    pub fn two_sin_pi(k: i64, m: u32) -> Self {
        let n = 2 * m;
        let d = Self::root_of_unity(n, k).sub(&Self::root_of_unity(n, -k));
        d.mul(&Self::i().neg())
    }

    /// `2 cos(2π k / m)`.
    pub fn two_cos_2pi(k: i64, m: u32) -> Self {
        Self::root_of_unity(m, k).add(&Self::root_of_unity(m, -k))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients on 1, ζ, ..., ζ^(φ(N)-1).
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(ζ_m). Requires `order | m`.
    pub fn lift_to(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.order), "cannot lift order {} to {}", self.order, m);
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut num = vec![BigInt::zero(); step * self.num.len().max(1)];
        for (j, c) in self.num.iter().enumerate() {
            num[j * step] = c.clone();
        }
        Self::from_integer_parts(m, num, self.den.clone())
    }

    /// The automorphism ζ_N -> ζ_N^k. Requires gcd(k, N) = 1.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        assert!(k.gcd(&n) == 1 || n == 1, "galois exponent not a unit");
        let mut num = vec![BigInt::zero(); self.order as usize];
        for (j, c) in self.num.iter().enumerate() {
            let e = (j as i64 * k).rem_euclid(n) as usize;
            num[e] += c;
        }
        Self::from_integer_parts(self.order, num, self.den.clone())
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Whether the element lies in the subfield Q(ζ_m).
    pub fn lies_in(&self, m: u32) -> bool {
        let n = lcm(self.order, m);
        let x = self.lift_to(n);
        (1..n as i64)
            .filter(|k| k.gcd(&(n as i64)) == 1 && k.rem_euclid(m as i64) == 1 % m as i64)
            .all(|k| x.galois(k) == x)
    }

    /// Floating point value at ζ_N = exp(2πi/N). Diagnostic only.
    pub fn to_complex(&self) -> (f64, f64) {
        let den = bigint_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / self.order as f64;
            let v = bigint_to_f64(c) / den;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }

    fn lifted_pair(&self, rhs: &Self) -> (Self, Self) {
        if self.order == rhs.order {
            (self.clone(), rhs.clone())
        } else {
            let n = lcm(self.order, rhs.order);
            (self.lift_to(n), rhs.lift_to(n))
        }
    }

    fn poly_q(&self) -> Vec<BigRational> {
        self.coeffs()
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = self.lifted_pair(other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for Cyclotomic {}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic {
            order: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (a, b) = self.lifted_pair(rhs);
        let den = &a.den * &b.den;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        let mut out = Cyclotomic { order: a.order, num, den };
        out.canonicalize();
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let (a, b) = self.lifted_pair(rhs);
        let d = a.num.len();
        let mut num = vec![BigInt::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    num[i + j] += x * y;
                }
            }
        }
        Self::from_integer_parts(a.order, num, &a.den * &b.den)
    }

    fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::rational(q)
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(Self::rational(&q.recip()));
        }
        // Extended Euclid in Q[x] against Φ_N.
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a = trim(self.poly_q());
        let (g, s) = ext_gcd(a, phi);
        let g0 = g[0].clone();
        let s: Vec<BigRational> = s.into_iter().map(|c| c / &g0).collect();
        Some(Cyclotomic::new(self.order, &s))
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() - 1 < db {
        return (vec![<BigRational as Zero>::zero()], r);
    }
    let lc = b[db].clone();
    let mut q = vec![<BigRational as Zero>::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lc;
        if !Zero::is_zero(&c) {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = &r[i + j] - &c * bj;
            }
        }
        q[i] = c;
    }
    (trim(q), trim(r))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![<BigRational as Zero>::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = <BigRational as Zero>::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Returns (g, s) with s·a ≡ g mod m.
fn ext_gcd(a: Vec<BigRational>, m: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, m);
    let (mut s0, mut s1) = (vec![<BigRational as One>::one()], vec![<BigRational as Zero>::zero()]);
    while !(r1.len() == 1 && Zero::is_zero(&r1[0])) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{}", super::fmt_rational(&q));
        }
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let z = match j {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, j),
            };
            if j == 0 {
                write!(f, "{}", super::fmt_rational(&a))?;
            } else if One::is_one(&a) {
                write!(f, "{z}")?;
            } else {
                write!(f, "{}*{z}", super::fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        Ring::add(&self, &rhs)
    }
}

impl std::ops::Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        Ring::sub(&self, &rhs)
    }
}

impl std::ops::Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        Ring::mul(&self, &rhs)
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        Ring::neg(&self)
    }
}
