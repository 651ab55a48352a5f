//! λ-class polynomials on M̄_{g,n} for g ≤ 3, Mumford relations, and the few
//! Hodge integrals needed for degree-zero invariants.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::arith::{rat, Ring};
use crate::error::{Error, Result};

/// Exponents of `λ₁, λ₂, λ₃`.
pub type LambdaMonomial = [u8; 3];

pub fn lambda_degree(m: &LambdaMonomial) -> u32 {
    m[0] as u32 + 2 * m[1] as u32 + 3 * m[2] as u32
}

/// Complex dimension `3g - 3 + n` of M̄_{g,n}.
pub fn moduli_dim(genus: u32, marked: u32) -> i64 {
    3 * genus as i64 - 3 + marked as i64
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaPoly<C> {
    pub genus: u32,
    pub marked: u32,
    terms: BTreeMap<LambdaMonomial, C>,
}

fn check_genus(g: u32) -> Result<()> {
    if (1..=3).contains(&g) {
        Ok(())
    } else {
        Err(Error::UnsupportedGenus(g))
    }
}

impl<C: Ring> LambdaPoly<C> {
    pub fn zero(genus: u32, marked: u32) -> Result<Self> {
        check_genus(genus)?;
        Ok(LambdaPoly {
            genus,
            marked,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(genus: u32, marked: u32, c: C) -> Result<Self> {
        Self::monomial(genus, marked, [0, 0, 0], c)
    }

    /// `λ_i` for `1 ≤ i ≤ genus`.
    pub fn lambda(genus: u32, marked: u32, i: usize) -> Result<Self> {
        if i == 0 || i > genus as usize {
            return Err(Error::InvalidParameter(format!("λ_{i} in genus {genus}")));
        }
        let mut m = [0; 3];
        m[i - 1] = 1;
        Self::monomial(genus, marked, m, C::one())
    }

    pub fn monomial(genus: u32, marked: u32, m: LambdaMonomial, c: C) -> Result<Self> {
        let mut p = Self::zero(genus, marked)?;
        if m.iter().skip(genus as usize).any(|&e| e > 0) {
            return Err(Error::InvalidParameter(format!("monomial {m:?} in genus {genus}")));
        }
        p.add_term(m, c);
        Ok(p)
    }

    /// `c(E^∨)` evaluated so that `e(w) = Σ (-1)^i w^{g-i} λ_i`.
    pub fn dual_euler(genus: u32, marked: u32, w: &C) -> Result<Self> {
        let mut p = Self::zero(genus, marked)?;
        for i in 0..=genus as usize {
            let sign = if i % 2 == 0 { C::one() } else { C::one().neg() };
            let mut m = [0; 3];
            if i > 0 {
                m[i - 1] = 1;
            }
            p.add_term(m, sign.mul(&w.pow(genus - i as u32)));
        }
        Ok(p)
    }

    fn add_term(&mut self, m: LambdaMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(C::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LambdaMonomial, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &LambdaMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    fn same_space(&self, o: &Self) {
        assert_eq!((self.genus, self.marked), (o.genus, o.marked), "λ-polynomials on different spaces");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_space(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut r = Self {
            genus: self.genus,
            marked: self.marked,
            terms: BTreeMap::new(),
        };
        for (m, x) in &self.terms {
            r.add_term(*m, x.mul(c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_space(o);
        let mut r = Self {
            genus: self.genus,
            marked: self.marked,
            terms: BTreeMap::new(),
        };
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x.mul(y));
            }
        }
        r
    }

    /// Part of exact degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut r = self.clone();
        r.terms.retain(|m, _| lambda_degree(m) == d);
        r
    }

    /// Normal form under the Mumford relations coming from `c(E) c(E^∨) = 1`
    /// and vanishing above the dimension of M̄_{g,n}.
    pub fn mumford_reduce(&self) -> Self {
        let mut out = Self {
            genus: self.genus,
            marked: self.marked,
            terms: BTreeMap::new(),
        };
        let dim = moduli_dim(self.genus, self.marked);
        let mut work: Vec<(LambdaMonomial, C)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        while let Some((m, c)) = work.pop() {
            if lambda_degree(&m) as i64 > dim {
                continue;
            }
            match rewrite(self.genus, m) {
                Rewrite::Zero => {}
                Rewrite::Normal => out.add_term(m, c),
                Rewrite::To(k, m2) => work.push((m2, c.scale(&BigRational::from_integer(k.into())))),
            }
        }
        out
    }
}

enum Rewrite {
    Zero,
    Normal,
    To(i64, LambdaMonomial),
}

/// One step of the graded relations: `λ_g² = 0`, `λ₁² = 2λ₂`, and in genus 3
/// `λ₂² = 2λ₁λ₃`.
fn rewrite(g: u32, m: LambdaMonomial) -> Rewrite {
    let top = g as usize - 1;
    if m[top] >= 2 {
        return Rewrite::Zero;
    }
    if g >= 2 && m[0] >= 2 {
        return Rewrite::To(2, [m[0] - 2, m[1] + 1, m[2]]);
    }
    if g == 3 && m[1] >= 2 {
        return Rewrite::To(2, [m[0] + 1, m[1] - 2, m[2] + 1]);
    }
    Rewrite::Normal
}

impl<C: Ring> fmt::Display for LambdaPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = format!("({c})");
                for (i, e) in m.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*λ{}", i + 1)),
                        _ => s.push_str(&format!("*λ{}^{e}", i + 1)),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Known top-degree integrals `(genus, marked, monomial, value)`.
pub fn hodge_table() -> Vec<(u32, u32, LambdaMonomial, BigRational)> {
    vec![(1, 1, [1, 0, 0], rat(1, 24)), (2, 0, [1, 1, 0], rat(1, 5760))]
}

/// `⟨ψ⟩_{1,1}`.
pub fn psi_1_1() -> BigRational {
    rat(1, 24)
}

/// Integral of a λ-monomial over M̄_{1,1} (genus 1) or M̄_g (genus ≥ 2).
pub fn hodge_value(genus: u32, m: LambdaMonomial) -> Result<BigRational> {
    let marked = if genus == 1 { 1 } else { 0 };
    integrate(&LambdaPoly::monomial(genus, marked, m, rat(1, 1))?)
}

/// Integrates a polynomial with rational coefficients after reduction.
pub fn integrate<C: Ring>(p: &LambdaPoly<C>) -> Result<C> {
    let r = p.mumford_reduce();
    let dim = moduli_dim(p.genus, p.marked);
    let mut total = C::zero();
    let table = hodge_table();
    for (m, c) in r.terms() {
        if lambda_degree(m) as i64 != dim {
            continue;
        }
        let v = table
            .iter()
            .find(|(g, n, tm, _)| *g == p.genus && *n == p.marked && tm == m)
            .map(|(_, _, _, v)| v)
            .ok_or_else(|| Error::UnknownIntegral(format!("λ^{m:?} over M̄_{{{},{}}}", p.genus, p.marked)))?;
        total = total.add(&c.scale(v));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_chain() {
        let p = LambdaPoly::monomial(2, 0, [2, 1, 0], rat(1, 1)).unwrap();
        assert!(p.mumford_reduce().is_zero());
        let top = LambdaPoly::monomial(2, 0, [1, 1, 0], rat(3, 1)).unwrap();
        assert_eq!(top.mumford_reduce(), top);
        let cube = LambdaPoly::monomial(2, 0, [3, 0, 0], rat(1, 1)).unwrap();
        assert_eq!(cube.mumford_reduce().coeff(&[1, 1, 0]), rat(2, 1));
    }

    #[test]
    fn genus_three_squares_vanish() {
        let l3 = LambdaPoly::<BigRational>::lambda(3, 0, 3).unwrap();
        assert!(l3.mul(&l3).mumford_reduce().is_zero());
        let l2 = LambdaPoly::<BigRational>::lambda(3, 0, 2).unwrap();
        let r = l2.mul(&l2).mumford_reduce();
        assert_eq!(r.coeff(&[1, 0, 1]), rat(2, 1));
    }

    #[test]
    fn unsupported_genus() {
        assert!(matches!(
            LambdaPoly::<BigRational>::zero(4, 0),
            Err(Error::UnsupportedGenus(4))
        ));
    }
}
