//! Plain-text group data, version 1.
//!
//! ```text
//! # comment
//! crepant-data 1
//! kind group
//! name E7
//! order 48
//! matrix-field 8
//! generator a [0,1,0,0] [0,0,0,0] [0,0,0,0] [0,0,0,-1]
//! relation a^4 = -1
//! class [ab] a*b
//! alias [-1] [a^2]
//! character-field 8
//! irrep chi1 [1,0,0,0] ...
//! standard chi4
//! ```
//!
//! Matrix entries and character values are coefficient vectors on
//! `1, ζ, ζ², ...` for the declared field. `standard trace` uses the trace of
//! the defining matrices instead of a named irrep (needed for cyclic groups,
//! whose standard representation is reducible).

use std::fmt::Write as _;

use num_rational::BigRational;

use crate::arith::{fmt_rational, parse_rational};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct ClassSpec {
    pub label: String,
    pub word: String,
    pub aliases: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StandardSpec {
    Irrep(String),
    Trace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupData {
    pub name: String,
    pub order: usize,
    pub matrix_field: u32,
    pub generators: Vec<(char, [Vec<BigRational>; 4])>,
    pub relations: Vec<(String, String)>,
    pub classes: Vec<ClassSpec>,
    pub character_field: u32,
    pub irreps: Vec<(String, Vec<Vec<BigRational>>)>,
    pub standard: StandardSpec,
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Iterates over meaningful lines as `(line number, keyword, rest)`.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            return None;
        }
        let (k, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        Some((i + 1, k, rest.trim()))
    })
}

/// Checks the `crepant-data <version>` and `kind <kind>` header.
pub(crate) fn check_header<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str, &'a str)>,
    kind: &str,
) -> Result<()> {
    match it.next() {
        Some((_, "crepant-data", v)) => {
            let v: u32 = v.parse().map_err(|_| parse_err(1, "bad version"))?;
            if v != FORMAT_VERSION {
                return Err(parse_err(1, format!("unsupported format version {v}")));
            }
        }
        Some((n, _, _)) => return Err(parse_err(n, "expected crepant-data header")),
        None => return Err(parse_err(0, "empty file")),
    }
    match it.next() {
        Some((_, "kind", k)) if k == kind => Ok(()),
        Some((n, _, _)) => Err(parse_err(n, format!("expected kind {kind}"))),
        None => Err(parse_err(0, "missing kind")),
    }
}

pub(crate) fn parse_vec(line: usize, s: &str) -> Result<Vec<BigRational>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_err(line, format!("expected [..], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| parse_rational(x).ok_or_else(|| parse_err(line, format!("bad rational {x:?}"))))
        .collect()
}

pub(crate) fn fmt_vec(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(","))
}

fn parse_u32(line: usize, s: &str) -> Result<u32> {
    s.parse().map_err(|_| parse_err(line, format!("expected integer, got {s:?}")))
}

impl GroupData {
    pub fn parse(text: &str) -> Result<GroupData> {
        let mut it = lines(text);
        check_header(&mut it, "group")?;
        let mut name = None;
        let mut order = None;
        let mut matrix_field = None;
        let mut character_field = None;
        let mut standard = None;
        let mut generators = Vec::new();
        let mut relations = Vec::new();
        let mut classes: Vec<ClassSpec> = Vec::new();
        let mut irreps = Vec::new();
        for (n, key, rest) in it {
            match key {
                "name" => name = Some(rest.to_string()),
                "order" => order = Some(parse_u32(n, rest)? as usize),
                "matrix-field" => matrix_field = Some(parse_u32(n, rest)?),
                "character-field" => character_field = Some(parse_u32(n, rest)?),
                "generator" => {
                    let mut parts = rest.split_whitespace();
                    let g = parts.next().ok_or_else(|| parse_err(n, "missing name"))?;
                    let mut cs = g.chars();
                    let c = match (cs.next(), cs.next()) {
                        (Some(c), None) if c.is_ascii_lowercase() => c,
                        _ => return Err(parse_err(n, "generator names are single letters")),
                    };
                    let entries: Vec<Vec<BigRational>> =
                        parts.map(|p| parse_vec(n, p)).collect::<Result<_>>()?;
                    let entries: [Vec<BigRational>; 4] = entries
                        .try_into()
                        .map_err(|_| parse_err(n, "a generator needs four entries"))?;
                    generators.push((c, entries));
                }
                "relation" => {
                    let (l, r) = rest
                        .split_once('=')
                        .ok_or_else(|| parse_err(n, "relation needs ="))?;
                    relations.push((l.trim().to_string(), r.trim().to_string()));
                }
                "class" => {
                    let (label, word) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| parse_err(n, "class needs label and word"))?;
                    classes.push(ClassSpec {
                        label: label.to_string(),
                        word: word.trim().to_string(),
                        aliases: Vec::new(),
                    });
                }
                "alias" => {
                    let (alias, target) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| parse_err(n, "alias needs two labels"))?;
                    let c = classes
                        .iter_mut()
                        .find(|c| c.label == target.trim())
                        .ok_or_else(|| parse_err(n, format!("alias of unknown class {target}")))?;
                    c.aliases.push(alias.to_string());
                }
                "irrep" => {
                    let mut parts = rest.split_whitespace();
                    let r = parts.next().ok_or_else(|| parse_err(n, "missing irrep name"))?;
                    let vals = parts.map(|p| parse_vec(n, p)).collect::<Result<_>>()?;
                    irreps.push((r.to_string(), vals));
                }
                "standard" => {
                    standard = Some(if rest == "trace" {
                        StandardSpec::Trace
                    } else {
                        StandardSpec::Irrep(rest.to_string())
                    })
                }
                other => return Err(parse_err(n, format!("unknown keyword {other:?}"))),
            }
        }
        let missing = |what: &str| parse_err(0, format!("missing {what}"));
        Ok(GroupData {
            name: name.ok_or_else(|| missing("name"))?,
            order: order.ok_or_else(|| missing("order"))?,
            matrix_field: matrix_field.ok_or_else(|| missing("matrix-field"))?,
            generators,
            relations,
            classes,
            character_field: character_field.ok_or_else(|| missing("character-field"))?,
            irreps,
            standard: standard.ok_or_else(|| missing("standard"))?,
        })
    }

    pub fn emit(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "crepant-data {FORMAT_VERSION}");
        let _ = writeln!(s, "kind group");
        let _ = writeln!(s, "name {}", self.name);
        let _ = writeln!(s, "order {}", self.order);
        let _ = writeln!(s, "matrix-field {}", self.matrix_field);
        for (c, e) in &self.generators {
            let es: Vec<String> = e.iter().map(|v| fmt_vec(v)).collect();
            let _ = writeln!(s, "generator {c} {}", es.join(" "));
        }
        for (l, r) in &self.relations {
            let _ = writeln!(s, "relation {l} = {r}");
        }
        for c in &self.classes {
            let _ = writeln!(s, "class {} {}", c.label, c.word);
            for a in &c.aliases {
                let _ = writeln!(s, "alias {a} {}", c.label);
            }
        }
        let _ = writeln!(s, "character-field {}", self.character_field);
        for (r, vals) in &self.irreps {
            let vs: Vec<String> = vals.iter().map(|v| fmt_vec(v)).collect();
            let _ = writeln!(s, "irrep {r} {}", vs.join(" "));
        }
        match &self.standard {
            StandardSpec::Trace => {
                let _ = writeln!(s, "standard trace");
            }
            StandardSpec::Irrep(r) => {
                let _ = writeln!(s, "standard {r}");
            }
        }
        s
    }
}
