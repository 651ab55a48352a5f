//! Finite subgroups of SL(2, C) of ADE type.
//!
//! A group is built from a [`GroupData`] record: the generators are closed
//! under multiplication as exact 2×2 matrices, conjugacy classes are found by
//! conjugation, and the character table is checked against the class data.

pub mod dynkin;
pub mod families;
pub mod matrix;
pub mod schema;
pub mod tables;
pub mod word;

mod correlators;
mod modular;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{Cyclotomic, Ring};
use crate::data::DataSource;
use crate::error::{Error, Result};

pub use correlators::{McKayGraph, Sector, SweepCheck};
pub use matrix::Mat2;
pub use schema::{GroupData, StandardSpec};
pub use tables::{StoredTable, TableCheck, TableMismatch};
use modular::ResidueTable;
use word::{Word, WordTarget};

/// Largest cyclic or binary dihedral parameter accepted.
pub const MAX_FAMILY_PARAMETER: u32 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Cyclic of order n + 1.
    A(u32),
    /// Binary dihedral of order 4n - 8.
    D(u32),
    E6,
    E7,
    E8,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("unknown group {s:?}"));
        let f = match s {
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            _ => {
                let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
                let n: u32 = tail.parse().map_err(|_| bad())?;
                match head {
                    "A" => Family::A(n),
                    "D" => Family::D(n),
                    _ => return Err(bad()),
                }
            }
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Family::A(n) if !(1..=MAX_FAMILY_PARAMETER).contains(&n) => Err(Error::InvalidParameter(
                format!("A_n needs 1 <= n <= {MAX_FAMILY_PARAMETER}, got {n}"),
            )),
            Family::D(n) if !(4..=MAX_FAMILY_PARAMETER).contains(&n) => Err(Error::InvalidParameter(
                format!("D_n needs 4 <= n <= {MAX_FAMILY_PARAMETER}, got {n}"),
            )),
            _ => Ok(()),
        }
    }

    pub fn order(self) -> usize {
        match self {
            Family::A(n) => n as usize + 1,
            Family::D(n) => 4 * n as usize - 8,
            Family::E6 => 24,
            Family::E7 => 48,
            Family::E8 => 120,
        }
    }

    /// Number of exceptional curves in the resolution.
    pub fn rank(self) -> usize {
        match self {
            Family::A(n) | Family::D(n) => n as usize,
            Family::E6 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
        }
    }

    pub fn is_cyclic(self) -> bool {
        matches!(self, Family::A(_))
    }

    /// The five families at their smallest interesting sizes plus the E types.
    pub fn sweep(max_a: u32, max_d: u32) -> Vec<Family> {
        let mut v: Vec<Family> = (1..=max_a).map(Family::A).collect();
        v.extend((4..=max_d).map(Family::D));
        v.extend([Family::E6, Family::E7, Family::E8]);
        v
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(n) => write!(f, "A{n}"),
            Family::D(n) => write!(f, "D{n}"),
            Family::E6 => write!(f, "E6"),
            Family::E7 => write!(f, "E7"),
            Family::E8 => write!(f, "E8"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjClass {
    pub name: String,
    pub aliases: Vec<String>,
    /// Index of a representative element.
    pub representative: usize,
    pub size: usize,
    pub centralizer_order: usize,
    pub element_order: usize,
    /// `k/m ∈ [0, 1/2]` with standard eigenvalues `ζ_m^{±k}`.
    pub age: BigRational,
    /// Index of the class of inverses.
    pub inverse: usize,
}

impl ConjClass {
    pub fn answers_to(&self, label: &str) -> bool {
        self.name == label || self.aliases.iter().any(|a| a == label)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub field: u32,
    pub irreps: Vec<Irrep>,
    /// Rows are irreps, columns are classes.
    pub values: Vec<Vec<Cyclotomic>>,
    /// Row of the standard representation when it is irreducible.
    pub standard: Option<usize>,
    /// Character of the defining 2-dimensional representation, per class.
    pub standard_values: Vec<Cyclotomic>,
}

#[derive(Debug)]
pub struct Group {
    pub family: Family,
    pub data: GroupData,
    pub elements: Vec<Mat2>,
    mul: Vec<Vec<u32>>,
    inv: Vec<usize>,
    class_of: Vec<usize>,
    pub classes: Vec<ConjClass>,
    pub table: CharacterTable,
    residues: ResidueTable,
    pair_counts: OnceLock<Vec<Vec<Vec<u64>>>>,
}

type Cache = Mutex<HashMap<(Family, DataSource), Arc<Group>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Raw data for a family, before validation.
pub fn group_data(family: Family, src: &DataSource) -> Result<GroupData> {
    family.validate()?;
    match family {
        Family::A(n) => Ok(families::cyclic(n)),
        Family::D(n) => Ok(families::binary_dihedral(n)),
        _ => GroupData::parse(&src.read(&format!("groups/{family}.txt"))?),
    }
}

struct Builder<'a> {
    field: u32,
    index: &'a HashMap<Vec<BigRational>, usize>,
    gens: &'a HashMap<char, usize>,
    mul: &'a [Vec<u32>],
    inv: &'a [usize],
}

impl WordTarget for Builder<'_> {
    type Elem = usize;
    fn generator(&self, c: char) -> Option<usize> {
        self.gens.get(&c).copied()
    }
    fn one(&self) -> usize {
        0
    }
    fn minus_one(&self) -> Option<usize> {
        let m = Mat2::scalar(&Cyclotomic::from_i64(-1));
        self.index.get(&m.key(self.field)).copied()
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[*a][*b] as usize
    }
    fn inv(&self, a: &usize) -> usize {
        self.inv[*a]
    }
}

fn invalid(family: Family, msg: impl fmt::Display) -> Error {
    Error::Validation(format!("{family}: {msg}"))
}

impl Group {
    /// Builds (or fetches from the cache) the group from the embedded data.
    pub fn get(family: Family) -> Result<Arc<Group>> {
        Self::get_with(family, &DataSource::embedded())
    }

    pub fn get_with(family: Family, src: &DataSource) -> Result<Arc<Group>> {
        family.validate()?;
        let key = (family, src.clone());
        if let Some(g) = cache().lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(Group::from_data(family, group_data(family, src)?)?);
        cache().lock().unwrap().insert(key, g.clone());
        Ok(g)
    }

    /// Builds and validates a group from a data record.
    pub fn from_data(family: Family, data: GroupData) -> Result<Group> {
        if data.order != family.order() {
            return Err(invalid(family, format!("declared order {} != {}", data.order, family.order())));
        }
        let mf = data.matrix_field;
        if mf == 0 || data.character_field == 0 {
            return Err(invalid(family, "field orders must be positive"));
        }
        let mut gens_m = Vec::new();
        for (c, e) in &data.generators {
            let m = Mat2::new(e.clone().map(|v| Cyclotomic::new(mf, &v)));
            if !m.det().is_one() {
                return Err(invalid(family, format!("generator {c} has determinant {}", m.det())));
            }
            gens_m.push((*c, m));
        }

        // Closure by breadth-first search from the identity. `right[i][g]`
        // is element i times generator g; each new element records the
        // element and generator it was reached from.
        let mut elements = vec![Mat2::identity(mf)];
        let mut index: HashMap<Vec<BigRational>, usize> = HashMap::new();
        index.insert(elements[0].key(mf), 0);
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut parent = vec![(0usize, 0usize)];
        let mut head = 0;
        while head < elements.len() {
            let mut row = Vec::with_capacity(gens_m.len());
            for (gi, (_, g)) in gens_m.iter().enumerate() {
                let x = elements[head].mul(g);
                let k = x.key(mf);
                let j = match index.get(&k) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= data.order {
                            return Err(invalid(family, "generators produce more elements than declared"));
                        }
                        index.insert(k, elements.len());
                        elements.push(x);
                        parent.push((head, gi));
                        elements.len() - 1
                    }
                };
                row.push(j as u32);
            }
            right.push(row);
            head += 1;
        }
        if elements.len() != data.order {
            return Err(invalid(
                family,
                format!("generators produce {} elements, expected {}", elements.len(), data.order),
            ));
        }
        let mut gens = HashMap::new();
        for (c, g) in &gens_m {
            gens.insert(*c, index[&g.key(mf)]);
        }

        // x·e_j = (x·e_parent)·g, filled in breadth-first order.
        let n = elements.len();
        let mut mul = vec![vec![0u32; n]; n];
        for (i, row) in mul.iter_mut().enumerate() {
            row[0] = i as u32;
            for j in 1..n {
                let (pj, gj) = parent[j];
                row[j] = right[row[pj] as usize][gj];
            }
        }
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            if let Some(j) = mul[i].iter().position(|&x| x == 0) {
                inv[i] = j;
            }
        }
        if inv.contains(&usize::MAX) {
            return Err(invalid(family, "element without inverse"));
        }

        let b = Builder {
            field: mf,
            index: &index,
            gens: &gens,
            mul: &mul,
            inv: &inv,
        };
        for (l, r) in &data.relations {
            let lv = Word::parse(l)?.eval(&b)?;
            let rv = Word::parse(r)?.eval(&b)?;
            if lv != rv {
                return Err(invalid(family, format!("relation {l} = {r} fails")));
            }
        }

        // Conjugacy classes, in the order the data lists them.
        let mut raw_class = vec![usize::MAX; n];
        let mut nraw = 0;
        for g in 0..n {
            if raw_class[g] != usize::MAX {
                continue;
            }
            for h in 0..n {
                let c = mul[mul[h][g] as usize][inv[h]] as usize;
                raw_class[c] = nraw;
            }
            nraw += 1;
        }
        if data.classes.len() != nraw {
            return Err(invalid(family, format!("{} class labels for {nraw} classes", data.classes.len())));
        }
        let mut raw_to_listed = vec![usize::MAX; nraw];
        let mut reps = Vec::new();
        for (i, spec) in data.classes.iter().enumerate() {
            let e = Word::parse(&spec.word)?.eval(&b)?;
            let r = raw_class[e];
            if raw_to_listed[r] != usize::MAX {
                return Err(invalid(family, format!("class {} duplicates another label", spec.label)));
            }
            raw_to_listed[r] = i;
            reps.push(e);
        }
        let class_of: Vec<usize> = raw_class.iter().map(|r| raw_to_listed[*r]).collect();

        let mut sizes = vec![0usize; data.classes.len()];
        for &c in &class_of {
            sizes[c] += 1;
        }
        let mut classes = Vec::new();
        for (i, spec) in data.classes.iter().enumerate() {
            let rep = reps[i];
            let size = sizes[i];
            let mut ord = 1;
            let mut x = rep;
            while x != 0 {
                x = mul[x][rep] as usize;
                ord += 1;
            }
            let tr = elements[rep].trace();
            // The eigenvalues are ζ^{±k}; the float value picks k and the
            // exact comparison confirms it.
            let t = tr.to_complex().0.clamp(-2.0, 2.0);
            let guess = ((t / 2.0).acos() * ord as f64 / std::f64::consts::TAU).round() as i64;
            if Cyclotomic::two_cos_2pi(guess, ord as u32) != tr {
                return Err(invalid(family, format!("class {} has no age", spec.label)));
            }
            classes.push(ConjClass {
                name: spec.label.clone(),
                aliases: spec.aliases.clone(),
                representative: rep,
                size,
                centralizer_order: n / size,
                element_order: ord,
                age: BigRational::new(BigInt::from(guess), BigInt::from(ord)),
                inverse: class_of[inv[rep]],
            });
        }
        if classes.iter().position(|c| c.representative == 0) != Some(0) {
            return Err(invalid(family, "the first listed class must be the identity"));
        }

        let (table, residues) = Self::character_table(family, &data, &classes, &elements)?;
        Ok(Group {
            family,
            data,
            elements,
            mul,
            inv,
            class_of,
            classes,
            table,
            residues,
            pair_counts: OnceLock::new(),
        })
    }

    fn character_table(
        family: Family,
        data: &GroupData,
        classes: &[ConjClass],
        elements: &[Mat2],
    ) -> Result<(CharacterTable, ResidueTable)> {
        let cf = data.character_field;
        let nc = classes.len();
        let mut irreps = Vec::new();
        let mut values = Vec::new();
        let mut seen: HashMap<&[BigRational], Cyclotomic> = HashMap::new();
        for (name, vals) in &data.irreps {
            if vals.len() != nc {
                return Err(invalid(family, format!("irrep {name} has {} values for {nc} classes", vals.len())));
            }
            let row: Vec<Cyclotomic> = vals
                .iter()
                .map(|v| seen.entry(v.as_slice()).or_insert_with(|| Cyclotomic::new(cf, v)).clone())
                .collect();
            let dim = row[0]
                .to_rational()
                .filter(|q| q.is_integer() && q.numer() > &BigInt::zero())
                .and_then(|q| q.numer().to_usize())
                .ok_or_else(|| invalid(family, format!("irrep {name} has no positive integer degree")))?;
            irreps.push(Irrep {
                name: name.clone(),
                dim,
            });
            values.push(row);
        }
        if irreps.len() != nc {
            return Err(invalid(family, format!("{} irreps for {nc} classes", irreps.len())));
        }
        let dim_sq: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
        if dim_sq != data.order {
            return Err(invalid(family, format!("sum of squared degrees is {dim_sq}")));
        }
        let traces: Vec<Cyclotomic> = classes
            .iter()
            .map(|c| elements[c.representative].trace())
            .collect();
        let standard = match &data.standard {
            StandardSpec::Trace => None,
            StandardSpec::Irrep(r) => {
                let i = irreps
                    .iter()
                    .position(|x| &x.name == r)
                    .ok_or_else(|| invalid(family, format!("standard irrep {r} not listed")))?;
                if irreps[i].dim != 2 || values[i] != traces {
                    return Err(invalid(family, format!("{r} is not the defining representation")));
                }
                Some(i)
            }
        };
        if traces.iter().any(|t| t.conj() != *t) {
            return Err(invalid(family, "standard character is not real"));
        }

        // Orthogonality through a split prime. Once the rows are known to be
        // permuted by the Galois group, every inner product below is rational
        // and one coordinate decides it.
        let field = cf.lcm(&data.matrix_field);
        let res = ResidueTable::new(field, &values, &traces).map_err(|e| invalid(family, e))?;
        let f = &res.field;
        let nb = BigInt::from(data.order);
        let den2 = res.den.pow(2).to_f64().unwrap_or(f64::INFINITY);
        let bound = data.order as f64 * (res.scaled(1.0, 2) + den2);
        if !f.separates(bound) {
            return Err(invalid(family, "character values too large to check"));
        }
        let weights: Vec<u64> = classes.iter().map(|c| c.size as u64).collect();
        let order_res = f.rational(&BigRational::from_integer(nb.clone()));
        for i in 0..nc {
            for j in 0..nc {
                let want = if i == j { order_res } else { 0 };
                if res.row_inner(i, j, &weights) != want {
                    return Err(invalid(
                        family,
                        format!("row orthogonality fails for {} and {}", irreps[i].name, irreps[j].name),
                    ));
                }
            }
        }
        for a in 0..nc {
            for b in 0..nc {
                let want = if a == b { classes[a].centralizer_order as u64 } else { 0 };
                if res.column_inner(a, b) != want {
                    return Err(invalid(
                        family,
                        format!("column orthogonality fails for {} and {}", classes[a].name, classes[b].name),
                    ));
                }
            }
        }
        Ok((
            CharacterTable {
                field: cf,
                irreps,
                values,
                standard,
                standard_values: traces,
            },
            res,
        ))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn name(&self) -> String {
        self.family.to_string()
    }

    pub fn class_index(&self, label: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.answers_to(label))
            .ok_or_else(|| Error::UnknownClass(format!("{label} in {}", self.family)))
    }

    pub fn class(&self, label: &str) -> Result<&ConjClass> {
        Ok(&self.classes[self.class_index(label)?])
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mul[a][b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Exponent of the group: lcm of element orders.
    pub fn exponent(&self) -> u32 {
        self.classes
            .iter()
            .fold(1u32, |acc, c| acc.lcm(&(c.element_order as u32)))
    }

    /// Checks associativity of the multiplication table and that every
    /// element has determinant one. Quadratic in the order squared, so only
    /// run on request.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        for m in &self.elements {
            if !m.det().is_one() {
                return Err(invalid(self.family, "element with determinant != 1"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul[a][b] as usize;
                for c in 0..n {
                    if self.mul[ab][c] != self.mul[a][self.mul[b][c] as usize] {
                        return Err(invalid(self.family, "multiplication is not associative"));
                    }
                }
            }
        }
        let total: usize = self.classes.iter().map(|c| c.size).sum();
        if total != n {
            return Err(invalid(self.family, "class sizes do not add up"));
        }
        Ok(())
    }

    /// Order-preserving class data as `(name, size, centralizer, age)` rows.
    pub fn class_summary(&self) -> Vec<(String, usize, usize, BigRational)> {
        self.classes
            .iter()
            .map(|c| (c.name.clone(), c.size, c.centralizer_order, c.age.clone()))
            .collect()
    }
}
