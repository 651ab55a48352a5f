//! Character sums on a built group: three-point correlators of BG, the McKay
//! graph, and ranks of Hodge bundles twisted by the standard representation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{dynkin, Group};
use crate::arith::{Cyclotomic, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    /// All marked points have trivial monodromy.
    Trivial,
    Nontrivial,
}

impl Sector {
    pub fn parse(s: &str) -> Result<Sector> {
        match s {
            "trivial" => Ok(Sector::Trivial),
            "nontrivial" => Ok(Sector::Nontrivial),
            _ => Err(Error::InvalidSector(format!("unknown sector {s:?}"))),
        }
    }
}

/// Result of [`Group::check_three_point_sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepCheck {
    pub triples: usize,
    pub mismatches: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McKayGraph {
    /// `adjacency[i][j]` is the multiplicity of irrep `j` in `irrep i ⊗ ρ₁`.
    pub adjacency: Vec<Vec<i64>>,
}

impl McKayGraph {
    pub fn is_symmetric(&self) -> bool {
        let a = &self.adjacency;
        (0..a.len()).all(|i| (0..a.len()).all(|j| a[i][j] == a[j][i]))
    }

    pub fn cartan(&self) -> Vec<Vec<i64>> {
        dynkin::cartan(&self.adjacency)
    }
}

fn q(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Group {
    /// `⟨e_{γ₁} e_{γ₂} e_{γ₃}⟩` from the character table.
    pub fn three_point_characters(&self, c: [usize; 3]) -> Result<BigRational> {
        let t = &self.table;
        let mut sum = Cyclotomic::from_i64(0);
        for (row, irrep) in t.values.iter().zip(&t.irreps) {
            let prod = row[c[0]].mul(&row[c[1]]).mul(&row[c[2]]);
            sum = sum.add(&prod.scale(&BigRational::new(1.into(), BigInt::from(irrep.dim))));
        }
        let sizes = q(self.classes[c[0]].size) * q(self.classes[c[1]].size) * q(self.classes[c[2]].size);
        let n = q(self.order());
        sum.scale(&(sizes / (&n * &n)))
            .to_rational()
            .ok_or_else(|| Error::Validation(format!("{}: irrational three-point sum", self.family)))
    }

    fn pair_counts(&self) -> &Vec<Vec<Vec<u64>>> {
        self.pair_counts.get_or_init(|| {
            let nc = self.classes.len();
            let mut t = vec![vec![vec![0u64; nc]; nc]; nc];
            let n = self.order();
            for g1 in 0..n {
                let c1 = self.class_of[g1];
                for g2 in 0..n {
                    let g3 = self.inv[self.mul[g1][g2] as usize];
                    t[c1][self.class_of[g2]][self.class_of[g3]] += 1;
                }
            }
            t
        })
    }

    /// Number of triples `(g₁, g₂, g₃)` in the given classes with `g₁g₂g₃ = 1`.
    pub fn triple_count(&self, c: [usize; 3]) -> u64 {
        self.pair_counts()[c[0]][c[1]][c[2]]
    }

    /// `⟨e_{γ₁} e_{γ₂} e_{γ₃}⟩` as a triple count divided by `|G|`.
    pub fn three_point_count(&self, c: [usize; 3]) -> BigRational {
        BigRational::new(BigInt::from(self.triple_count(c)), BigInt::from(self.order()))
    }

    /// Three-point correlator by class label, computed from characters and
    /// checked against the triple count.
    pub fn bg_three_point(&self, labels: [&str; 3]) -> Result<BigRational> {
        let c = [
            self.class_index(labels[0])?,
            self.class_index(labels[1])?,
            self.class_index(labels[2])?,
        ];
        let v = self.three_point_characters(c)?;
        if v != self.three_point_count(c) {
            return Err(Error::Validation(format!(
                "{}: character and counting correlators differ at {labels:?}",
                self.family
            )));
        }
        Ok(v)
    }

    /// `⟨e_{γ₁} e_{γ₂} e_{γ₃}⟩` from the character table reduced through a
    /// split prime. Agrees with [`Group::three_point_characters`] and is
    /// much faster on large tables.
    pub fn three_point_modular(&self, c: [usize; 3]) -> Result<BigRational> {
        let sweep = TripleSweep::new(self)?;
        Ok(sweep.value(c, sweep.pair(c[0], c[1]).as_slice()))
    }

    /// Every unordered triple of classes `a ≤ b ≤ c` with its correlator,
    /// computed through a split prime.
    pub fn three_point_sweep(&self) -> Result<Vec<([usize; 3], BigRational)>> {
        let sweep = TripleSweep::new(self)?;
        let nc = self.classes.len();
        let mut out = Vec::with_capacity(nc * (nc + 1) * (nc + 2) / 6);
        for a in 0..nc {
            for b in a..nc {
                let w = sweep.pair(a, b);
                for c in b..nc {
                    out.push(([a, b, c], sweep.value([a, b, c], &w)));
                }
            }
        }
        Ok(out)
    }

    /// Compares the character route with the triple count over every
    /// unordered triple of classes, using integer arithmetic where it fits.
    pub fn check_three_point_sweep(&self) -> Result<SweepCheck> {
        let sweep = TripleSweep::new(self)?;
        let nc = self.classes.len();
        let n = self.order() as i128;
        let scale = self
            .residues
            .den
            .pow(3)
            .to_i128()
            .zip(sweep.lcm.to_i128())
            .and_then(|(d, l)| d.checked_mul(l)?.checked_mul(n));
        let mut out = SweepCheck {
            triples: 0,
            mismatches: Vec::new(),
        };
        for a in 0..nc {
            for b in a..nc {
                let w = sweep.pair(a, b);
                for c in b..nc {
                    let t = [a, b, c];
                    let count = self.triple_count(t) as i128;
                    let sizes = t.iter().map(|&i| self.classes[i].size as i128).product::<i128>();
                    let fast = scale.and_then(|s| {
                        let lhs = sweep.scaled(t, &w).checked_mul(sizes)?;
                        Some(lhs == count.checked_mul(s)?)
                    });
                    let same = match fast {
                        Some(x) => x,
                        None => sweep.value(t, &w) == self.three_point_count(t),
                    };
                    out.triples += 1;
                    if !same {
                        out.mismatches.push(t);
                    }
                }
            }
        }
        Ok(out)
    }

    /// McKay graph of the defining representation. Fails if a multiplicity is
    /// not a non-negative integer or the graph is not the affine diagram.
    pub fn mckay(&self) -> Result<McKayGraph> {
        let r = &self.residues;
        let f = &r.field;
        let k = r.rows();
        let phi = f.phi();
        let bound = r.scaled(self.order() as f64, 3);
        let n = q(self.order());
        let mut adjacency = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in 0..k {
                let coords: Vec<u64> = (0..phi)
                    .map(|t| {
                        let cj = f.conj_index(t);
                        self.classes.iter().enumerate().fold(0, |acc, (c, cl)| {
                            let x = f.mul(f.mul(r.values[i][c][t], r.standard[c][t]), r.values[j][c][cj]);
                            f.add(acc, f.mul(x, cl.size as u64))
                        })
                    })
                    .collect();
                let m = coords
                    .iter()
                    .all(|x| *x == coords[0])
                    .then(|| r.recover(coords[0], 3, bound))
                    .flatten()
                    .map(|s| s / &n)
                    .filter(|m| m.is_integer() && *m.numer() >= BigInt::zero())
                    .and_then(|m| m.numer().to_i64())
                    .ok_or(Error::NonIntegerMultiplicity(i, j))?;
                adjacency[i][j] = m;
            }
        }
        let g = McKayGraph { adjacency };
        if !dynkin::isomorphic(&g.adjacency, &dynkin::affine(self.family)) {
            return Err(Error::Validation(format!(
                "{}: McKay graph is not the affine diagram",
                self.family
            )));
        }
        Ok(g)
    }

    /// Copies of the trivial representation inside `ρ₁` tensored with the
    /// trivial summand of the regular representation, read off the McKay
    /// graph: 2 for cyclic groups, 1 otherwise.
    pub fn regular_rep_trivial_count(&self) -> Result<i64> {
        Ok(self.mckay()?.adjacency[0].iter().sum())
    }

    /// Rank of `R¹π_* f^* V_{ρ₁}` over a component of the moduli of genus `g`
    /// maps with `n` markings, `m` of them with trivial monodromy.
    pub fn hodge_bundle_rank(&self, g: u32, n: u32, m: u32, sector: Sector) -> Result<i64> {
        if m > n {
            return Err(Error::InvalidSector(format!("{m} trivial markings out of {n}")));
        }
        let (g, n, m) = (g as i64, n as i64, m as i64);
        let rank = match sector {
            Sector::Trivial => {
                if m != n {
                    return Err(Error::InvalidSector(format!(
                        "trivial sector needs every marking trivial, got {m} of {n}"
                    )));
                }
                if self.family.is_cyclic() {
                    2 * g
                } else {
                    2 * g - 1
                }
            }
            Sector::Nontrivial => {
                if m == n {
                    return Err(Error::InvalidSector("nontrivial sector needs a nontrivial marking".into()));
                }
                2 * g - 2 + n - m
            }
        };
        Ok(rank.max(0))
    }

    /// The same rank from orbifold Riemann–Roch: `h¹ = h⁰ - χ` with
    /// `χ = 2(1 - g) - (n - m)`, each nontrivial marking contributing age 1.
    pub fn hodge_bundle_rank_rr(&self, g: u32, n: u32, m: u32, sector: Sector) -> Result<i64> {
        self.hodge_bundle_rank(g, n, m, sector)?;
        let h0 = match sector {
            Sector::Trivial => self.regular_rep_trivial_count()?,
            Sector::Nontrivial => 0,
        };
        let chi = 2 * (1 - g as i64) - (n as i64 - m as i64);
        Ok((h0 - chi).max(0))
    }
}

/// Shared data for evaluating many three-point sums at the first coordinate.
/// The sum `Σ_i (L/d_i) χ_i(a) χ_i(b) χ_i(c)`, with `L` the lcm of the
/// degrees, is fixed by the Galois group because the rows are permuted by
/// it, so it is rational and its first residue determines it.
struct TripleSweep<'a> {
    group: &'a Group,
    weights: Vec<u64>,
    lcm: BigInt,
}

impl<'a> TripleSweep<'a> {
    fn new(group: &'a Group) -> Result<Self> {
        let r = &group.residues;
        let f = &r.field;
        let lcm = group
            .table
            .irreps
            .iter()
            .fold(BigInt::from(1), |acc, x| acc.lcm(&BigInt::from(x.dim)));
        let weights = group
            .table
            .irreps
            .iter()
            .map(|x| f.rational(&BigRational::from_integer(&lcm / BigInt::from(x.dim))))
            .collect();
        let bound = r.scaled(r.rows() as f64 * lcm.to_f64().unwrap_or(f64::INFINITY), 3);
        if !f.separates(bound) {
            return Err(Error::Validation(format!(
                "{}: character values too large for the modular sweep",
                group.family
            )));
        }
        Ok(TripleSweep { group, weights, lcm })
    }

    fn pair(&self, a: usize, b: usize) -> Vec<u64> {
        let r = &self.group.residues;
        let f = &r.field;
        r.values
            .iter()
            .zip(&self.weights)
            .map(|(row, w)| f.mul(f.mul(row[a][0], row[b][0]), *w))
            .collect()
    }

    /// `den³ Σ_i (L/d_i) χ_i(a) χ_i(b) χ_i(c)` as an exact integer.
    fn scaled(&self, c: [usize; 3], pair: &[u64]) -> i128 {
        let r = &self.group.residues;
        let acc: u128 = r
            .values
            .iter()
            .zip(pair)
            .map(|(row, w)| row[c[2]][0] as u128 * *w as u128)
            .sum();
        r.scaled_integer((acc % r.field.p as u128) as u64, 3)
    }

    fn value(&self, c: [usize; 3], pair: &[u64]) -> BigRational {
        let g = self.group;
        let t = BigRational::new(BigInt::from(self.scaled(c, pair)), g.residues.den.pow(3));
        let sizes = q(g.classes[c[0]].size) * q(g.classes[c[1]].size) * q(g.classes[c[2]].size);
        let n = q(g.order());
        t * sizes / (n.clone() * n * BigRational::from_integer(self.lcm.clone()))
    }
}
