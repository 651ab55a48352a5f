//! Exact character sums through a split prime.
//!
//! For a prime `p ≡ 1 (mod N)` the ring `Z[ζ_N]/p` is isomorphic to
//! `F_p^φ(N)` through the embeddings `ζ ↦ ω^u`, `u ∈ (Z/N)^×`. If an
//! algebraic integer `X` maps to zero and `|σ(X)| < p` for every complex
//! embedding `σ`, then `X/p` is an algebraic integer of norm below one, so
//! `X = 0`. Identities between cyclotomic numbers with known denominators and
//! bounded complex absolute values can therefore be checked in machine
//! arithmetic, and a sum known to be rational (for instance by Galois
//! stability of the character table) only needs one coordinate.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::Cyclotomic;
use crate::error::{Error, Result};

/// Moduli are kept below 2^50 so that sums of up to 2^14 products fit in u128.
const P_MIN: u64 = 1 << 48;
const P_MAX: u64 = 1 << 50;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Q(ζ_N)` reduced modulo a completely split prime.
#[derive(Clone, Debug)]
pub struct SplitField {
    pub order: u32,
    pub p: u64,
    /// Units `u` of `Z/N`, one per coordinate.
    pub units: Vec<u32>,
    /// `ω^j` for `0 ≤ j < N`.
    omega_pows: Vec<u64>,
    /// `exp(2πij/N)` for `0 ≤ j < N`.
    roots: Vec<(f64, f64)>,
}

/// A cyclotomic number as its residues at every embedding.
pub type Residues = Vec<u64>;

impl SplitField {
    pub fn new(order: u32) -> Result<SplitField> {
        let n = order as u64;
        let mut p = (P_MIN / n + 1) * n + 1;
        while !is_prime(p) {
            p += n;
            if p >= P_MAX {
                return Err(Error::Validation(format!("no split prime for order {order}")));
            }
        }
        let qs = prime_factors(n);
        let omega = (2..)
            .map(|g| powmod(g, (p - 1) / n, p))
            .find(|&w| qs.iter().all(|q| powmod(w, n / q, p) != 1))
            .expect("a primitive root exists");
        let omega_pows = (0..n).scan(1u64, |acc, _| {
            let cur = *acc;
            *acc = mulmod(*acc, omega, p);
            Some(cur)
        });
        let units: Vec<u32> = if order == 1 {
            vec![0]
        } else {
            (1..order).filter(|u| u.gcd(&order) == 1).collect()
        };
        Ok(SplitField {
            order,
            p,
            units,
            omega_pows: omega_pows.collect(),
            roots: (0..n)
                .map(|j| {
                    let t = std::f64::consts::TAU * j as f64 / n as f64;
                    (t.cos(), t.sin())
                })
                .collect(),
        })
    }

    pub fn phi(&self) -> usize {
        self.units.len()
    }

    fn residue(&self, q: &BigRational) -> u64 {
        if q.is_integer() {
            if let Some(v) = q.numer().to_i64() {
                return v.rem_euclid(self.p as i64) as u64;
            }
        }
        let pb = BigInt::from(self.p);
        let n = q.numer().mod_floor(&pb).to_u64().expect("reduced");
        let d = q.denom().mod_floor(&pb).to_u64().expect("reduced");
        mulmod(n, powmod(d, self.p - 2, self.p), self.p)
    }

    pub fn rational(&self, q: &BigRational) -> u64 {
        self.residue(q)
    }

    /// Nonzero coefficients of `x` over `Q(ζ_N)`.
    fn sparse(&self, x: &Cyclotomic) -> Vec<(usize, BigRational)> {
        let x = if x.order() == self.order { x.clone() } else { x.lift_to(self.order) };
        x.coeffs().into_iter().enumerate().filter(|(_, q)| !q.is_zero()).collect()
    }

    /// Residues of `x` at every embedding.
    #[cfg(test)]
    pub fn embed(&self, x: &Cyclotomic) -> Residues {
        self.embed_sparse(&self.sparse(x))
    }

    fn embed_sparse(&self, c: &[(usize, BigRational)]) -> Residues {
        let c: Vec<(u64, u64)> = c.iter().map(|(j, q)| (*j as u64, self.residue(q))).collect();
        let n = self.order as u64;
        self.units
            .iter()
            .map(|&u| {
                c.iter().fold(0u64, |acc, (j, cj)| {
                    let w = self.omega_pows[((u as u64 * j) % n) as usize];
                    (acc + mulmod(*cj, w, self.p)) % self.p
                })
            })
            .collect()
    }

    /// Coordinate of `σ_u(x)` at position `k`, given the residues of `x`.
    pub fn galois_index(&self, u: u32, k: usize) -> usize {
        let target = (u as u64 * self.units[k] as u64 % self.order as u64) as u32;
        self.units.binary_search(&target).expect("units are closed under products")
    }

    /// Coordinate of the complex conjugate.
    pub fn conj_index(&self, k: usize) -> usize {
        self.galois_index(self.order - 1, k)
    }

    /// Integer whose residue is `r`, taken in `(-p/2, p/2)`.
    pub fn lift(&self, r: u64) -> i128 {
        if r > self.p / 2 {
            r as i128 - self.p as i128
        } else {
            r as i128
        }
    }

    /// Largest `|σ(x)|` over the complex embeddings, rounded up.
    #[cfg(test)]
    pub fn abs_max(&self, x: &Cyclotomic) -> f64 {
        self.abs_sparse(&self.sparse(x))
    }

    fn abs_sparse(&self, c: &[(usize, BigRational)]) -> f64 {
        let c: Vec<(usize, f64)> = c
            .iter()
            .map(|(j, q)| (*j, q.to_f64().unwrap_or(f64::INFINITY)))
            .collect();
        let slack = 1e-9 * (1.0 + c.iter().map(|(_, v)| v.abs()).sum::<f64>());
        let n = self.order as usize;
        self.units
            .iter()
            .map(|&u| {
                let (re, im) = c.iter().fold((0.0, 0.0), |(re, im), (j, v)| {
                    let (cs, sn) = self.roots[(u as usize * j) % n];
                    (re + v * cs, im + v * sn)
                });
                re.hypot(im)
            })
            .fold(0.0, f64::max)
            + slack
    }

    /// Whether algebraic integers with every conjugate below `b` in absolute
    /// value are determined by their residues up to sign ambiguity, i.e.
    /// `b < p/2`.
    pub fn separates(&self, b: f64) -> bool {
        b * (1.0 + 1e-9) < self.p as f64 / 2.0
    }
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
}

/// A character table reduced through a split prime. Construction verifies
/// exactly that `Gal(Q(ζ_N)/Q)` permutes the rows.
#[derive(Clone, Debug)]
pub struct ResidueTable {
    pub field: SplitField,
    /// `values[i][c]`: residues of `χ_i` at class `c`.
    pub values: Vec<Vec<Residues>>,
    /// Residues of the defining character.
    pub standard: Vec<Residues>,
    /// Common denominator of every entry.
    pub den: BigInt,
    /// Bound on `|σ(den · χ_i(c))|` over all entries, the defining character
    /// included, and all embeddings `σ`.
    pub abs: f64,
}

impl ResidueTable {
    /// Embeds the table. Fails with a message if some conjugate of a row is
    /// not a row.
    pub fn new(
        order: u32,
        values: &[Vec<Cyclotomic>],
        standard: &[Cyclotomic],
    ) -> std::result::Result<ResidueTable, String> {
        let field = SplitField::new(order).map_err(|e| e.to_string())?;
        let sparse_values: Vec<Vec<Vec<(usize, BigRational)>>> = values
            .iter()
            .map(|r| r.iter().map(|v| field.sparse(v)).collect())
            .collect();
        let sparse_std: Vec<Vec<(usize, BigRational)>> = standard.iter().map(|v| field.sparse(v)).collect();
        let all: Vec<&Vec<(usize, BigRational)>> = sparse_values.iter().flatten().chain(&sparse_std).collect();
        let den = all
            .iter()
            .flat_map(|v| v.iter())
            .fold(BigInt::from(1), |acc, (_, q)| acc.lcm(q.denom()));
        let abs = all.iter().map(|v| field.abs_sparse(v)).fold(0.0, f64::max) * den.to_f64().unwrap_or(f64::INFINITY);
        if !field.separates(2.0 * abs) {
            return Err(format!("table entries too large for the modulus {}", field.p));
        }
        let values: Vec<Vec<Residues>> = sparse_values
            .iter()
            .map(|r| r.iter().map(|v| field.embed_sparse(v)).collect())
            .collect();
        let standard = sparse_std.iter().map(|v| field.embed_sparse(v)).collect();

        let mut by_first: HashMap<Vec<u64>, usize> = HashMap::new();
        for (i, row) in values.iter().enumerate() {
            if by_first.insert(row.iter().map(|r| r[0]).collect(), i).is_some() {
                return Err("two irreps have the same character".into());
            }
        }
        let phi = field.phi();
        for k in 0..phi {
            let u = field.units[k];
            let moved: Vec<usize> = (0..phi).map(|j| field.galois_index(u, j)).collect();
            let mut hit = vec![false; values.len()];
            for row in &values {
                let key: Vec<u64> = row.iter().map(|r| r[moved[0]]).collect();
                let j = *by_first
                    .get(&key)
                    .ok_or_else(|| format!("conjugate by ζ ↦ ζ^{u} of an irrep is not an irrep"))?;
                let same = row
                    .iter()
                    .zip(&values[j])
                    .all(|(a, b)| (0..phi).all(|t| a[moved[t]] == b[t]));
                if !same || hit[j] {
                    return Err(format!("conjugate by ζ ↦ ζ^{u} of an irrep is not an irrep"));
                }
                hit[j] = true;
            }
        }
        Ok(ResidueTable {
            field,
            values,
            standard,
            den,
            abs,
        })
    }

    /// `b · abs^k`, a bound for sums of `b` products of `k` scaled entries.
    pub fn scaled(&self, b: f64, k: i32) -> f64 {
        b * self.abs.powi(k)
    }

    pub fn rows(&self) -> usize {
        self.values.len()
    }

    /// `Σ_c w_c χ_i(c) conj(χ_j(c))` at the first coordinate.
    pub fn row_inner(&self, i: usize, j: usize, weights: &[u64]) -> u64 {
        let f = &self.field;
        let cj = f.conj_index(0);
        let s: u128 = self.values[i]
            .iter()
            .zip(&self.values[j])
            .zip(weights)
            .map(|((a, b), w)| f.mul(a[0], b[cj]) as u128 * *w as u128)
            .sum();
        (s % f.p as u128) as u64
    }

    /// `Σ_i χ_i(a) conj(χ_i(b))` at the first coordinate.
    pub fn column_inner(&self, a: usize, b: usize) -> u64 {
        let f = &self.field;
        let cj = f.conj_index(0);
        let s: u128 = self.values.iter().map(|row| row[a][0] as u128 * row[b][cj] as u128).sum();
        (s % f.p as u128) as u64
    }

    /// Recovers the rational `x` from its residue when `den^k · x` is an
    /// integer bounded by `bound`. `None` if the bound does not separate.
    pub fn recover(&self, r: u64, k: u32, bound: f64) -> Option<BigRational> {
        if !self.field.separates(bound) {
            return None;
        }
        Some(BigRational::new(BigInt::from(self.scaled_integer(r, k)), self.den.pow(k)))
    }

    /// The integer `den^k · x` with residue `r · den^k`, taken in `(-p/2, p/2)`.
    pub fn scaled_integer(&self, r: u64, k: u32) -> i128 {
        let dk = self.field.rational(&BigRational::from_integer(self.den.pow(k)));
        self.field.lift(self.field.mul(r, dk))
    }
}
