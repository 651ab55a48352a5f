//! Change of variables between orbifold coordinates `x_γ` (one per
//! conjugacy class) and resolution coordinates `y_R` (one per irreducible
//! representation):
//!
//! ```text
//! y_0 = x_0
//! y_R = (1/|G|) Σ_g √(2 - χ_{ρ₁}(g)) conj(χ_R(g)) x_[g]    (R nontrivial)
//! q_R = exp(2πi dim R / |G|)
//! ```
//!
//! The square root is taken as `2 sin(πk/m)` for a class of age `k/m`, which
//! is the nonnegative root of `2 - 2cos(2πk/m)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::arith::{Cyclotomic, Field, Ring};
use crate::error::{Error, Result};
use crate::groups::{Family, Group};

#[derive(Clone, Debug, PartialEq)]
pub struct RootOfUnity {
    pub irrep: String,
    /// `q_R = ζ_{|G|}^exponent`.
    pub exponent: usize,
    /// Multiplicative order of `q_R`.
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct ChangeOfVariables {
    pub family: Family,
    /// Row labels: `y0` followed by the nontrivial irreps in table order.
    pub rows: Vec<String>,
    /// Column labels: the classes in table order, identity first.
    pub columns: Vec<String>,
    pub matrix: Vec<Vec<Cyclotomic>>,
    /// `√(2 - χ_{ρ₁}(γ))` per class.
    pub roots: Vec<Cyclotomic>,
    /// `2 - χ_{ρ₁}(γ)` per class.
    pub radicands: Vec<Cyclotomic>,
    pub q: Vec<RootOfUnity>,
    /// Smallest `N` with every entry in `Q(ζ_N)` (as built).
    pub field: u32,
}

/// Outcome of the exact checks on a change of variables.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceCheck {
    pub family: Family,
    /// `2 · exponent(G)`.
    pub target_field: u32,
    /// Entries `(row, column)` lying outside `Q(ζ_target)`.
    pub outside_target: Vec<(String, String)>,
    pub determinant_nonzero: bool,
    /// `M · M⁻¹ = I` exactly.
    pub inverse_verified: bool,
    pub q_are_group_order_roots: bool,
    pub q_product_is_one: bool,
    pub squares_match: bool,
}

impl CorrespondenceCheck {
    pub fn passed(&self) -> bool {
        self.outside_target.is_empty()
            && self.determinant_nonzero
            && self.inverse_verified
            && self.q_are_group_order_roots
            && self.q_product_is_one
            && self.squares_match
    }
}

fn age_root(age: &BigRational) -> Cyclotomic {
    let k: i64 = age.numer().try_into().unwrap_or(0);
    let m: u32 = age.denom().try_into().unwrap_or(1);
    if k == 0 {
        return Cyclotomic::from_i64(0);
    }
    Cyclotomic::two_sin_pi(k, m)
}

pub fn build_change_of_variables(g: &Group) -> Result<ChangeOfVariables> {
    let t = &g.table;
    let n = g.order();
    let id = g.class_index("[1]")?;
    let trivial = t
        .values
        .iter()
        .position(|row| row.iter().all(|v| v.is_one()))
        .ok_or_else(|| Error::Validation(format!("{}: no trivial irrep", g.family)))?;
    let two = Cyclotomic::from_i64(2);
    let mut roots = Vec::with_capacity(g.classes.len());
    let mut radicands = Vec::with_capacity(g.classes.len());
    for (c, cl) in g.classes.iter().enumerate() {
        let s = age_root(&cl.age);
        let rad = two.sub(&t.standard_values[c]);
        if s.mul(&s) != rad {
            return Err(Error::SqrtNotCyclotomic(format!("2 - χ at {}", cl.name)));
        }
        roots.push(s);
        radicands.push(rad);
    }
    let mut field = roots.iter().chain(t.values.iter().flatten()).fold(1u32, |a, x| a.lcm(&x.order()));
    let mut rows = vec!["y0".to_string()];
    let mut matrix = Vec::with_capacity(g.classes.len());
    let mut first = vec![Cyclotomic::from_i64(0); g.classes.len()];
    first[id] = Cyclotomic::from_i64(1);
    matrix.push(first);
    for (r, irrep) in t.irreps.iter().enumerate() {
        if r == trivial {
            continue;
        }
        rows.push(irrep.name.clone());
        let row = g
            .classes
            .iter()
            .enumerate()
            .map(|(c, cl)| {
                let w = BigRational::new(BigInt::from(cl.size), BigInt::from(n));
                roots[c].mul(&t.values[r][c].conj()).scale(&w)
            })
            .collect();
        matrix.push(row);
    }
    field = matrix.iter().flatten().fold(field, |a, x| a.lcm(&x.order()));
    let q = t
        .irreps
        .iter()
        .map(|irrep| RootOfUnity {
            irrep: irrep.name.clone(),
            exponent: irrep.dim % n,
            order: n / n.gcd(&irrep.dim),
        })
        .collect();
    Ok(ChangeOfVariables {
        family: g.family,
        rows,
        columns: g.classes.iter().map(|c| c.name.clone()).collect(),
        matrix,
        roots,
        radicands,
        q,
        field,
    })
}

/// Determinant and inverse by Gaussian elimination over one cyclotomic field.
pub fn invert(m: &[Vec<Cyclotomic>], field: u32) -> Option<(Cyclotomic, Vec<Vec<Cyclotomic>>)> {
    let n = m.len();
    let mut a: Vec<Vec<Cyclotomic>> = m.iter().map(|r| r.iter().map(|x| x.lift_to(field)).collect()).collect();
    let mut inv: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|i| (0..n).map(|j| Cyclotomic::from_i64((i == j) as i64).lift_to(field)).collect())
        .collect();
    let mut det = Cyclotomic::from_i64(1).lift_to(field);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        if piv != col {
            a.swap(piv, col);
            inv.swap(piv, col);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&p);
            inv[col][j] = inv[col][j].mul(&p);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
            }
        }
    }
    Some((det, inv))
}

fn mat_mul(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(Cyclotomic::from_i64(0), |s, (x, brow)| s.add(&x.mul(&brow[j]))))
                .collect()
        })
        .collect()
}

impl ChangeOfVariables {
    pub fn determinant(&self) -> Cyclotomic {
        invert(&self.matrix, self.field).map_or_else(|| Cyclotomic::from_i64(0), |(d, _)| d)
    }

    /// `q_R` as an element of `Q(ζ_{|G|})`.
    pub fn q_value(&self, i: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.family.order() as u32, self.q[i].exponent as i64)
    }

    /// `Π_R q_R^{dim R}`, which is `exp(2πi Σ dim² / |G|)`.
    pub fn q_product(&self, g: &Group) -> Cyclotomic {
        g.table
            .irreps
            .iter()
            .enumerate()
            .fold(Cyclotomic::from_i64(1), |acc, (i, r)| acc.mul(&self.q_value(i).pow(r.dim as u32)))
    }

    pub fn check(&self, g: &Group) -> CorrespondenceCheck {
        let target = 2 * g.exponent();
        let mut outside = Vec::new();
        for (r, row) in self.matrix.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.lies_in(target) {
                    outside.push((self.rows[r].clone(), self.columns[c].clone()));
                }
            }
        }
        let inverse = invert(&self.matrix, self.field);
        let determinant_nonzero = inverse.as_ref().is_some_and(|(d, _)| !d.is_zero());
        let inverse_verified = inverse.as_ref().is_some_and(|(_, mi)| {
            let p = mat_mul(&self.matrix, mi);
            p.iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, x)| *x == Cyclotomic::from_i64((i == j) as i64)))
        });
        let n = g.order() as u32;
        let q_are_group_order_roots =
            (0..self.q.len()).all(|i| self.q_value(i).pow(n).is_one() && (n as usize).is_multiple_of(self.q[i].order));
        let squares_match = self.roots.iter().zip(&self.radicands).all(|(s, r)| s.mul(s) == *r);
        CorrespondenceCheck {
            family: g.family,
            target_field: target,
            outside_target: outside,
            determinant_nonzero,
            inverse_verified,
            q_are_group_order_roots,
            q_product_is_one: self.q_product(g).is_one(),
            squares_match,
        }
    }
}

/// Rows of the report on the q-values: each irrep, its exponent over
/// `ζ_{|G|}` and the order of `q_R`, plus the product check.
pub fn qvalue_consistency(g: &Group) -> Result<(Vec<RootOfUnity>, bool)> {
    let cov = build_change_of_variables(g)?;
    let ok = cov.q_product(g).is_one();
    Ok((cov.q, ok))
}
