//! Sparse multivariate polynomials over a field.
//!
//! Monomials are ordered by total degree, then lexicographically with
//! earlier variables dominating. The leading term is the largest monomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::{Field, Ring};

pub const NVARS: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    T1,
    T2,
    L1,
    L2,
    Q,
    Z,
    A,
    B,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::T,
        Var::T1,
        Var::T2,
        Var::L1,
        Var::L2,
        Var::Q,
        Var::Z,
        Var::A,
        Var::B,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::T1 => "t1",
            Var::T2 => "t2",
            Var::L1 => "l1",
            Var::L2 => "l2",
            Var::Q => "q",
            Var::Z => "z",
            Var::A => "a",
            Var::B => "b",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0).all(|(a, b)| *a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Self) -> Self {
        let mut m = o.0;
        for (a, b) in m.iter_mut().zip(self.0) {
            *a -= b;
        }
        Monomial(m)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a = (*a).min(b);
        }
        Monomial(m)
    }

    fn without(&self, v: Var) -> Self {
        let mut m = self.0;
        m[v.index()] = 0;
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(C::one(), Monomial::var(v, 1))
    }

    pub fn monomial(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `Σ coeffs[i] * v^i` for a linear form like `6t` or `3t1 - 2t2`.
    pub fn linear(parts: &[(i64, Var)]) -> Self {
        parts.iter().fold(Self::zero(), |acc, &(c, v)| {
            acc.add(&Self::var(v).scale_int(c))
        })
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
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

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> [bool; NVARS] {
        let mut out = [false; NVARS];
        for m in self.terms.keys() {
            for (o, e) in out.iter_mut().zip(m.0) {
                *o |= e > 0;
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= o.terms.len() {
            (self.clone(), o)
        } else {
            (o.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        big
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x.mul(c))).collect(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&C::from_rational(q))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&C::from_int(n))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        let dm = *dm;
        let dc_inv = dc.inv()?;
        if d.terms.len() == 1 {
            let mut out = BTreeMap::new();
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                out.insert(dm.quotient_of(m), c.mul(&dc_inv));
            }
            return Some(Poly { terms: out });
        }
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((rm, rc)) = r.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let m = dm.quotient_of(rm);
            let c = rc.mul(&dc_inv);
            r = r.sub(&d.mul_monomial(&m).scale(&c));
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn leading_coeff(&self) -> C {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut n = *m;
                n.0[v.index()] -= 1;
                out.add_term(n, c.mul(&C::from_int(e as i64)));
            }
        }
        out
    }

    /// Substitutes `v = value` for a constant value.
    pub fn subst(&self, v: Var, value: &C) -> Self {
        let mut out = Self::zero();
        let mut powers: Vec<C> = vec![C::one()];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            out.add_term(m.without(v), c.mul(&powers[e]));
        }
        out
    }

    /// Substitutes `v = value` for a polynomial value.
    pub fn subst_poly(&self, v: Var, value: &Self) -> Self {
        let coeffs = self.coeffs_in(v);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    pub fn eval(&self, point: &[(Var, C)]) -> Self {
        point
            .iter()
            .fold(self.clone(), |p, (v, c)| p.subst(*v, c))
    }

    /// Coefficients with respect to `v`, lowest power first.
    pub fn coeffs_in(&self, v: Var) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); d + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Self]) -> Self {
        let mut out = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(v, i as u16);
            for (k, x) in &c.terms {
                out.add_term(k.mul(&m), x.clone());
            }
        }
        out
    }

    /// Coefficients with respect to every variable in `vs` jointly.
    fn coeffs_in_set(&self, vs: &[Var]) -> Vec<Self> {
        let mut groups: BTreeMap<Monomial, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = Monomial::one();
            let mut rest = *m;
            for v in vs {
                key.0[v.index()] = m.exp(*v);
                rest = rest.without(*v);
            }
            groups
                .entry(key)
                .or_insert_with(Self::zero)
                .add_term(rest, c.clone());
        }
        groups.into_values().collect()
    }

    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Monomial::one(),
        };
        it.fold(first, |g, m| g.gcd(m))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.is_constant() || o.is_constant() {
            return Self::one();
        }
        if self.terms.len() == 1 || o.terms.len() == 1 {
            let g = self.monomial_content().gcd(&o.monomial_content());
            return Self::monomial(C::one(), g);
        }
        // Pull out monomial contents first.
        let mf = self.monomial_content();
        let mg = o.monomial_content();
        let mgcd = mf.gcd(&mg);
        let f = if mf == Monomial::one() {
            self.clone()
        } else {
            self.div_exact(&Self::monomial(C::one(), mf)).unwrap()
        };
        let g = if mg == Monomial::one() {
            o.clone()
        } else {
            o.div_exact(&Self::monomial(C::one(), mg)).unwrap()
        };
        let core = gcd_nonmonomial(&f, &g);
        core.mul_monomial(&mgcd).monic()
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

fn gcd_nonmonomial<C: Field>(f: &Poly<C>, g: &Poly<C>) -> Poly<C> {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one();
    }
    let vf = f.vars();
    let vg = g.vars();
    if vf != vg {
        // Variables appearing on one side only split that side into
        // coefficients which must all be divisible by the gcd.
        let only_f: Vec<Var> = Var::ALL
            .into_iter()
            .filter(|v| vf[v.index()] && !vg[v.index()])
            .collect();
        let only_g: Vec<Var> = Var::ALL
            .into_iter()
            .filter(|v| vg[v.index()] && !vf[v.index()])
            .collect();
        let mut parts = Vec::new();
        if only_f.is_empty() {
            parts.push(f.clone());
        } else {
            parts.extend(f.coeffs_in_set(&only_f));
        }
        if only_g.is_empty() {
            parts.push(g.clone());
        } else {
            parts.extend(g.coeffs_in_set(&only_g));
        }
        parts.sort_by_key(|p| (p.total_degree(), p.len()));
        let mut acc = parts[0].monic();
        for p in &parts[1..] {
            if acc.is_constant() {
                return Poly::one();
            }
            acc = acc.gcd(p);
        }
        return acc;
    }
    let v = Var::ALL
        .into_iter()
        .filter(|v| vf[v.index()])
        .min_by_key(|v| f.degree_in(*v).min(g.degree_in(*v)))
        .unwrap();
    let fc = f.coeffs_in(v);
    let gc = g.coeffs_in(v);
    let cont_f = content(&fc);
    let cont_g = content(&gc);
    let pf = primitive(&fc, &cont_f);
    let pg = primitive(&gc, &cont_g);
    let cont = cont_f.gcd(&cont_g);
    let (mut a, mut b) = if pf.len() >= pg.len() { (pf, pg) } else { (pg, pf) };
    loop {
        if b.len() == 1 {
            // b is a nonzero polynomial free of v and primitive, so it is a unit.
            return cont.monic();
        }
        let r = pseudo_rem(&a, &b);
        if r.iter().all(Poly::is_zero) {
            break;
        }
        let r = trim_coeffs(r);
        let cr = content(&r);
        a = b;
        b = primitive(&r, &cr);
    }
    Poly::from_coeffs_in(v, &b).mul(&cont).monic()
}

fn content<C: Field>(cs: &[Poly<C>]) -> Poly<C> {
    let mut nz: Vec<&Poly<C>> = cs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|p| (p.total_degree(), p.len()));
    let mut acc = match nz.first() {
        Some(p) => p.monic(),
        None => return Poly::zero(),
    };
    for p in &nz[1..] {
        if acc.is_constant() {
            return Poly::one();
        }
        acc = acc.gcd(p);
    }
    acc
}

fn primitive<C: Field>(cs: &[Poly<C>], cont: &Poly<C>) -> Vec<Poly<C>> {
    let out: Vec<Poly<C>> = if cont.is_constant() {
        cs.to_vec()
    } else {
        cs.iter()
            .map(|c| c.div_exact(cont).expect("content divides coefficients"))
            .collect()
    };
    trim_coeffs(out)
}

fn trim_coeffs<C: Field>(mut cs: Vec<Poly<C>>) -> Vec<Poly<C>> {
    while cs.len() > 1 && cs.last().is_some_and(Poly::is_zero) {
        cs.pop();
    }
    cs
}

fn pseudo_rem<C: Field>(a: &[Poly<C>], b: &[Poly<C>]) -> Vec<Poly<C>> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&bj.mul(&lr));
        }
        r = trim_coeffs(r);
        if r.iter().all(Poly::is_zero) {
            return vec![Poly::zero()];
        }
    }
    r
}

impl<C: Field> Ring for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn from_rational(q: &BigRational) -> Self {
        Poly::constant(C::from_rational(q))
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m.exp(v) {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

/// Coefficient rendering that knows whether the value is a signed rational.
pub(crate) fn fmt_coeff<C: fmt::Display>(c: &C) -> (bool, String) {
    let s = c.to_string();
    let simple = !s[1..].contains([' ', '+']) && !s[1..].contains(" - ");
    if let Some(rest) = s.strip_prefix('-') {
        if simple {
            return (true, rest.to_string());
        }
    }
    if simple {
        (false, s)
    } else {
        (false, format!("({s})"))
    }
}

impl<C: Field> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = fmt_coeff(c);
            let sign = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mono = fmt_monomial(m);
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            write!(f, "{sign}{term}")?;
        }
        Ok(())
    }
}
