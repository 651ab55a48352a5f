//! Genus-one one-point Hurwitz–Hodge integrals on `[C²/G]` through the
//! orbifold quantum Riemann–Roch operator.
//!
//! For `p ≥ 1` the degree-`p` operator has a linear part with coefficient
//! `-(B_{p+1}(a) + B_{p+1}(1-a))/(p+1)!` on each twisted class of age `a`
//! (`-2B_{p+1}/(p+1)!` on the identity) and a quadratic part whose
//! coefficient on `∂_δ ∂_δ'` is the centralizer order of `δ` times the same
//! Bernoulli sum. Only `p = 1` is contracted against correlators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::Var;
use crate::error::{Error, Result};
use crate::groups::{Family, Group};
use crate::hodge::{integrate, LambdaPoly};
use crate::localization::R;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |a, k| a * k)
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: u32) -> Vec<BigRational> {
    let n = n as usize;
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut binom = vec![BigInt::one(); 2];
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // Row m+1 of Pascal's triangle.
        let mut next = vec![BigInt::one(); binom.len() + 1];
        for k in 1..binom.len() {
            next[k] = &binom[k - 1] + &binom[k];
        }
        binom = next;
        let mut s = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += bk * BigRational::from_integer(binom[k].clone());
        }
        b.push(-s / q(m as i64 + 1));
    }
    b
}

/// `B_n(x) = Σ_k C(n,k) B_k x^{n-k}`.
pub fn bernoulli_poly(n: u32, x: &BigRational) -> BigRational {
    let b = bernoulli_numbers(n);
    let mut binom = BigInt::one();
    let mut total = BigRational::zero();
    for (k, bk) in b.iter().enumerate() {
        if k > 0 {
            binom = binom * BigInt::from(n as usize - k + 1) / BigInt::from(k);
        }
        let pow = num_traits::pow(x.clone(), n as usize - k);
        total += bk * BigRational::from_integer(binom.clone()) * pow;
    }
    total
}

/// Coefficients of one class in the degree-`p` operator.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassWeight {
    pub class: String,
    pub age: BigRational,
    pub centralizer_order: usize,
    /// Coefficient of `t^γ_l ∂_{γ, l+p}`.
    pub linear: BigRational,
    /// Coefficient of `∂_{γ,l} ∂_{γ,p-1-l}` inside `ħ²/2 Σ_l (-1)^l (...)`.
    pub quadratic: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliWeight {
    pub p: u32,
    pub classes: Vec<ClassWeight>,
}

impl BernoulliWeight {
    pub fn class(&self, label: &str) -> Option<&ClassWeight> {
        self.classes.iter().find(|c| c.class == label)
    }
}

/// `B_{p+1}(a) + B_{p+1}(1-a)`, which is `2B_{p+1}` at `a = 0`.
fn bernoulli_pair(p: u32, age: &BigRational) -> BigRational {
    bernoulli_poly(p + 1, age) + bernoulli_poly(p + 1, &(BigRational::one() - age))
}

pub fn operator_coefficients(g: &Group, p: u32) -> Result<BernoulliWeight> {
    if p == 0 {
        return Err(Error::InvalidParameter("operator degree p must be at least 1".into()));
    }
    let fact = BigRational::from_integer(factorial(p + 1));
    let classes = g
        .classes
        .iter()
        .map(|c| {
            let s = bernoulli_pair(p, &c.age) / &fact;
            ClassWeight {
                class: c.name.clone(),
                age: c.age.clone(),
                centralizer_order: c.centralizer_order,
                linear: -s.clone(),
                quadratic: q(c.centralizer_order as i64) * s,
            }
        })
        .collect();
    Ok(BernoulliWeight { p, classes })
}

/// Source of the genus-zero three-point correlators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Characters,
    Counting,
}

/// Which class the second derivative in `∂_δ ∂_·` acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pairing {
    /// `∂_δ ∂_{δ⁻¹}`: the orbifold Poincaré pairing.
    #[default]
    Inverse,
    /// `∂_δ ∂_δ` for every class.
    Diagonal,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub backend: Backend,
    pub pairing: Pairing,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OnePointResult {
    pub class: String,
    pub psi_integral: BigRational,
    pub ch1_integral: BigRational,
}

fn three_point(g: &Group, c: [usize; 3], backend: Backend) -> Result<BigRational> {
    match backend {
        Backend::Characters => g.three_point_characters(c),
        Backend::Counting => Ok(g.three_point_count(c)),
    }
}

fn partner(g: &Group, d: usize, pairing: Pairing) -> usize {
    match pairing {
        Pairing::Inverse => g.classes[d].inverse,
        Pairing::Diagonal => d,
    }
}

/// `⟨e_γ e_δ e_δ'⟩` for every class `δ`, with `δ'` given by the pairing.
fn contractions(g: &Group, gamma: usize, opts: Options) -> Result<Vec<BigRational>> {
    (0..g.classes.len())
        .map(|d| three_point(g, [gamma, d, partner(g, d, opts.pairing)], opts.backend))
        .collect()
}

/// `⟨e_γ ψ̄⟩_{1,1} = (1/24) Σ_δ n_δ ⟨e_γ e_δ e_δ'⟩_{0,3}`.
pub fn psi_one_point(g: &Group, gamma: &str) -> Result<BigRational> {
    psi_one_point_with(g, gamma, Options::default())
}

pub fn psi_one_point_with(g: &Group, gamma: &str, opts: Options) -> Result<BigRational> {
    let gi = g.class_index(gamma)?;
    let c = contractions(g, gi, opts)?;
    Ok(psi_from(g, &c))
}

fn psi_from(g: &Group, contr: &[BigRational]) -> BigRational {
    let s: BigRational = g
        .classes
        .iter()
        .zip(contr)
        .map(|(cl, v)| q(cl.centralizer_order as i64) * v)
        .sum();
    s / q(24)
}

/// `⟨ch₁ e_γ⟩_{1,1}` for a nontrivial class.
///
/// The string equation turns `⟨e_γ (e_{[1]} ψ̄²)⟩_{1,2}` into
/// `⟨e_γ ψ̄⟩_{1,1}`; the quadratic part contributes
/// `½ Σ_δ n_δ (B₂(a_δ)+B₂(1-a_δ))/2 ⟨e_γ e_δ e_δ'⟩_{0,3}`.
pub fn ch1_one_point(g: &Group, gamma: &str) -> Result<OnePointResult> {
    ch1_one_point_with(g, gamma, Options::default())
}

pub fn ch1_one_point_with(g: &Group, gamma: &str, opts: Options) -> Result<OnePointResult> {
    let gi = g.class_index(gamma)?;
    if gi == identity_class(g) {
        return Err(Error::TrivialClass);
    }
    let w = operator_coefficients(g, 1)?;
    let contr = contractions(g, gi, opts)?;
    let psi = psi_from(g, &contr);
    let b2 = bernoulli_poly(2, &BigRational::zero());
    let half = BigRational::new(1.into(), 2.into());
    let mut total = (b2 + &w.classes[gi].linear) * &psi;
    for (cw, v) in w.classes.iter().zip(&contr) {
        if !v.is_zero() {
            total += &half * &cw.quadratic * v;
        }
    }
    Ok(OnePointResult { class: g.classes[gi].name.clone(), psi_integral: psi, ch1_integral: total })
}

fn identity_class(g: &Group) -> usize {
    g.classes.iter().position(|c| c.element_order == 1).unwrap_or(0)
}

/// Every nontrivial class, in table order.
pub fn ch1_all(g: &Group, opts: Options) -> Result<Vec<OnePointResult>> {
    let id = identity_class(g);
    g.classes
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != id)
        .map(|(_, c)| ch1_one_point_with(g, &c.name, opts))
        .collect()
}

/// Untwisted-sector integral `(1/|G|) ∫_{M̄_{g,n}} e(E^∨ ⊗ C²)/e(C²)`, with
/// one unit insertion in genus one and none in genus two. The torus acts on
/// `C²` with weights `(t₁, t₂)` for cyclic groups and `(t, t)` otherwise.
pub fn trivial_sector(family: Family, genus: u32) -> Result<R> {
    let marked = match genus {
        1 => 1,
        2 => 0,
        _ => return Err(Error::UnsupportedGenus(genus)),
    };
    let (a, b) = if family.is_cyclic() {
        (R::var(Var::T1), R::var(Var::T2))
    } else {
        (R::var(Var::T), R::var(Var::T))
    };
    let e = LambdaPoly::dual_euler(genus, marked, &a)?
        .mul(&LambdaPoly::dual_euler(genus, marked, &b)?)
        .scale(&R::one().div(&a.mul(&b))?);
    let order = BigRational::new(1.into(), BigInt::from(family.order()));
    Ok(integrate(&e)?.scale_rational(&order))
}

/// Whether `24 · ψ` is an integer.
pub fn psi_denominator_divides_24(psi: &BigRational) -> bool {
    (psi * q(24)).denom().is_one()
}
