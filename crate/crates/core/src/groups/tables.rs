//! Stored three-point tables and their comparison with a built group.
//!
//! ```text
//! crepant-data 1
//! kind correlators
//! name E8
//! corr [1] [ab] [ab] 1/4
//! ```
//!
//! A table lists the nonzero correlators; every class triple it omits is
//! read as zero.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::schema::{check_header, lines, parse_err};
use super::{Family, Group};
use crate::arith::{fmt_rational, parse_rational};
use crate::data::DataSource;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct StoredTable {
    pub name: String,
    pub entries: Vec<([String; 3], BigRational)>,
}

impl StoredTable {
    pub fn parse(text: &str) -> Result<StoredTable> {
        let mut it = lines(text);
        check_header(&mut it, "correlators")?;
        let mut name = None;
        let mut entries = Vec::new();
        for (n, key, rest) in it {
            match key {
                "name" => name = Some(rest.to_string()),
                "corr" => {
                    let p: Vec<&str> = rest.split_whitespace().collect();
                    let [a, b, c, v] = p.as_slice() else {
                        return Err(parse_err(n, "expected three classes and a value"));
                    };
                    let v = parse_rational(v).ok_or_else(|| parse_err(n, format!("bad rational {v:?}")))?;
                    entries.push(([a.to_string(), b.to_string(), c.to_string()], v));
                }
                other => return Err(parse_err(n, format!("unknown keyword {other:?}"))),
            }
        }
        Ok(StoredTable {
            name: name.ok_or_else(|| parse_err(0, "missing name"))?,
            entries,
        })
    }

    pub fn load(family: Family, src: &DataSource) -> Result<StoredTable> {
        let t = Self::parse(&src.read(&format!("tables/{family}.txt"))?)?;
        if t.name != family.to_string() {
            return Err(Error::Validation(format!("table {} loaded for {family}", t.name)));
        }
        Ok(t)
    }

    pub fn emit(&self) -> String {
        let mut s = format!("crepant-data {}\nkind correlators\nname {}\n", super::schema::FORMAT_VERSION, self.name);
        for ([a, b, c], v) in &self.entries {
            s.push_str(&format!("corr {a} {b} {c} {}\n", fmt_rational(v)));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableMismatch {
    pub classes: [String; 3],
    pub stored: BigRational,
    pub characters: BigRational,
    pub count: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableCheck {
    /// Entries listed in the table.
    pub listed: usize,
    /// Unordered class triples compared, listed or not.
    pub triples: usize,
    pub mismatches: Vec<TableMismatch>,
}

impl Group {
    /// Compares every unordered class triple with the stored table, through
    /// both the character formula and the triple count.
    pub fn compare_table(&self, table: &StoredTable) -> Result<TableCheck> {
        let mut stored: BTreeMap<[usize; 3], BigRational> = BTreeMap::new();
        for (labels, v) in &table.entries {
            let mut k = [
                self.class_index(&labels[0])?,
                self.class_index(&labels[1])?,
                self.class_index(&labels[2])?,
            ];
            k.sort_unstable();
            if stored.insert(k, v.clone()).is_some() {
                return Err(Error::Validation(format!("{}: table lists {labels:?} twice", self.family)));
            }
        }
        let nc = self.classes.len();
        let mut check = TableCheck {
            listed: stored.len(),
            triples: 0,
            mismatches: Vec::new(),
        };
        for a in 0..nc {
            for b in a..nc {
                for c in b..nc {
                    let t = [a, b, c];
                    let want = stored.get(&t).cloned().unwrap_or_else(BigRational::zero);
                    let characters = self.three_point_characters(t)?;
                    let count = self.three_point_count(t);
                    check.triples += 1;
                    if characters != want || count != want {
                        check.mismatches.push(TableMismatch {
                            classes: t.map(|i| self.classes[i].name.clone()),
                            stored: want,
                            characters,
                            count,
                        });
                    }
                }
            }
        }
        Ok(check)
    }
}
