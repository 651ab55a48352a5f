//! Torus localization of degree-zero invariants of the minimal resolution
//! of `C²/G`.
//!
//! The torus-fixed locus is described by a graph: isolated fixed points with
//! two tangent weights, and at most one pointwise-fixed exceptional line with
//! its normal weight. Exceptional curves are either edges between two fixed
//! vertices or the fixed line itself.
//!
//! Graph files share the group file header:
//!
//! ```text
//! crepant-data 1
//! kind graph
//! name E6
//! torus t
//! point p1 6t -4t
//! line p3 2t
//! curve E1 p1 p2
//! curve E3 p3
//! ```

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::arith::{Poly, RatFun, Ring, Var};
use crate::data::DataSource;
use crate::error::{Error, Result};
use crate::groups::schema::{check_header, lines, parse_err, FORMAT_VERSION};
use crate::groups::Family;
use crate::hodge::{integrate, LambdaPoly};

pub type R = RatFun<BigRational>;

/// Linear form `a·t₁ + b·t₂`; on a one-dimensional torus only `a` is used
/// and printed as a multiple of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weight(pub i64, pub i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Torus {
    One,
    Two,
}

impl Weight {
    pub fn is_zero(self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    pub fn neg(self) -> Weight {
        Weight(-self.0, -self.1)
    }

    pub fn to_ratfun(self, torus: Torus) -> R {
        let p = match torus {
            Torus::One => Poly::linear(&[(self.0, Var::T)]),
            Torus::Two => Poly::linear(&[(self.0, Var::T1), (self.1, Var::T2)]),
        };
        R::from_poly(p)
    }

    pub fn parse(s: &str, torus: Torus) -> Option<Weight> {
        if s == "0" {
            return Some(Weight(0, 0));
        }
        let mut w = Weight(0, 0);
        let mut rest = s;
        while !rest.is_empty() {
            let (sign, r) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ if rest.len() == s.len() => (1, rest),
                _ => return None,
            };
            let end = r.find(['+', '-']).unwrap_or(r.len());
            let term = &r[..end];
            rest = &r[end..];
            let var_at = term.find('t')?;
            let c: i64 = match &term[..var_at] {
                "" => 1,
                d => d.parse().ok()?,
            };
            match (torus, &term[var_at..]) {
                (Torus::One, "t") | (Torus::Two, "t1") => w.0 += sign * c,
                (Torus::Two, "t2") => w.1 += sign * c,
                _ => return None,
            }
        }
        Some(w)
    }

    pub fn render(self, torus: Torus) -> String {
        let term = |c: i64, v: &str| match c {
            1 => v.to_string(),
            -1 => format!("-{v}"),
            _ => format!("{c}{v}"),
        };
        match torus {
            Torus::One => {
                if self.0 == 0 {
                    "0".into()
                } else {
                    term(self.0, "t")
                }
            }
            Torus::Two => match (self.0, self.1) {
                (0, 0) => "0".into(),
                (a, 0) => term(a, "t1"),
                (0, b) => term(b, "t2"),
                (a, b) => {
                    let t2 = term(b, "t2");
                    if b > 0 {
                        format!("{}+{t2}", term(a, "t1"))
                    } else {
                        format!("{}{t2}", term(a, "t1"))
                    }
                }
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VertexKind {
    Point([Weight; 2]),
    /// Fixed exceptional line, tangent class `2H`, with the given normal weight.
    Line(Weight),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub name: String,
    pub kind: VertexKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind {
    Edge(usize, usize),
    FixedLine(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub name: String,
    pub kind: CurveKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedLocusGraph {
    pub name: String,
    pub torus: Torus,
    pub vertices: Vec<Vertex>,
    /// Exceptional curves `E₁, E₂, …` in order.
    pub curves: Vec<Curve>,
}

/// Restriction of a line bundle `L_i` to a vertex: a constant weight at a
/// point, or `deg·H + weight` on the fixed line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub degree: i64,
    pub weight: Weight,
}

fn graph_err(name: &str, msg: impl fmt::Display) -> Error {
    Error::Validation(format!("graph {name}: {msg}"))
}

impl FixedLocusGraph {
    pub fn load(family: Family, src: &DataSource) -> Result<FixedLocusGraph> {
        family.validate()?;
        let g = match family {
            Family::A(n) => Self::type_a(n),
            Family::D(n) => Self::type_d(n),
            _ => Self::parse(&src.read(&format!("graphs/{family}.txt"))?)?,
        };
        g.validate(family)?;
        Ok(g)
    }

    /// `n + 1` isolated points on a two-dimensional torus.
    pub fn type_a(n: u32) -> FixedLocusGraph {
        let n = n as i64;
        let vertices = (1..=n + 1)
            .map(|k| Vertex {
                name: format!("p{k}"),
                kind: VertexKind::Point([Weight(n + 2 - k, -(k - 1)), Weight(-(n + 1 - k), k)]),
            })
            .collect();
        let curves = (0..n as usize)
            .map(|k| Curve {
                name: format!("E{}", k + 1),
                kind: CurveKind::Edge(k, k + 1),
            })
            .collect();
        FixedLocusGraph {
            name: format!("A{n}"),
            torus: Torus::Two,
            vertices,
            curves,
        }
    }

    /// A chain of `n - 3` points ending on the fixed line, and two more points
    /// attached to the line.
    pub fn type_d(n: u32) -> FixedLocusGraph {
        let n = n as i64;
        let mut vertices: Vec<Vertex> = (1..=n - 3)
            .map(|k| Vertex {
                name: format!("p{k}"),
                kind: VertexKind::Point([Weight(2 * n - 2 * k - 2, 0), Weight(-2 * n + 2 * k + 4, 0)]),
            })
            .collect();
        let line = vertices.len();
        vertices.push(Vertex {
            name: "F".into(),
            kind: VertexKind::Line(Weight(2, 0)),
        });
        for s in ["q+", "q-"] {
            vertices.push(Vertex {
                name: s.into(),
                kind: VertexKind::Point([Weight(-2, 0), Weight(4, 0)]),
            });
        }
        let mut curves = Vec::new();
        for k in 0..line {
            curves.push(CurveKind::Edge(k, k + 1));
        }
        curves.push(CurveKind::FixedLine(line));
        curves.push(CurveKind::Edge(line, line + 1));
        curves.push(CurveKind::Edge(line, line + 2));
        FixedLocusGraph {
            name: format!("D{n}"),
            torus: Torus::One,
            vertices,
            curves: curves
                .into_iter()
                .enumerate()
                .map(|(i, kind)| Curve {
                    name: format!("E{}", i + 1),
                    kind,
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<FixedLocusGraph> {
        let mut it = lines(text);
        check_header(&mut it, "graph")?;
        let mut name = None;
        let mut torus = None;
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut curves = Vec::new();
        for (n, key, rest) in it {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let find = |v: &str, vs: &[Vertex]| {
                vs.iter()
                    .position(|x| x.name == v)
                    .ok_or_else(|| parse_err(n, format!("unknown vertex {v}")))
            };
            match key {
                "name" => name = Some(rest.to_string()),
                "torus" => {
                    torus = Some(match rest {
                        "t" => Torus::One,
                        "t1,t2" => Torus::Two,
                        _ => return Err(parse_err(n, format!("unknown torus {rest:?}"))),
                    })
                }
                "point" | "line" => {
                    let t = torus.ok_or_else(|| parse_err(n, "torus must precede vertices"))?;
                    let w = |s: &str| Weight::parse(s, t).ok_or_else(|| parse_err(n, format!("bad weight {s:?}")));
                    let kind = match (key, parts.as_slice()) {
                        ("point", [_, a, b]) => VertexKind::Point([w(a)?, w(b)?]),
                        ("line", [_, a]) => VertexKind::Line(w(a)?),
                        _ => return Err(parse_err(n, format!("malformed {key}"))),
                    };
                    vertices.push(Vertex {
                        name: parts[0].to_string(),
                        kind,
                    });
                }
                "curve" => {
                    let kind = match parts.as_slice() {
                        [_, a, b] => CurveKind::Edge(find(a, &vertices)?, find(b, &vertices)?),
                        [_, a] => CurveKind::FixedLine(find(a, &vertices)?),
                        _ => return Err(parse_err(n, "malformed curve")),
                    };
                    curves.push(Curve {
                        name: parts[0].to_string(),
                        kind,
                    });
                }
                other => return Err(parse_err(n, format!("unknown keyword {other:?}"))),
            }
        }
        Ok(FixedLocusGraph {
            name: name.ok_or_else(|| parse_err(0, "missing name"))?,
            torus: torus.ok_or_else(|| parse_err(0, "missing torus"))?,
            vertices,
            curves,
        })
    }

    pub fn emit(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "crepant-data {FORMAT_VERSION}");
        let _ = writeln!(s, "kind graph");
        let _ = writeln!(s, "name {}", self.name);
        let _ = writeln!(
            s,
            "torus {}",
            match self.torus {
                Torus::One => "t",
                Torus::Two => "t1,t2",
            }
        );
        for v in &self.vertices {
            match &v.kind {
                VertexKind::Point([a, b]) => {
                    let _ = writeln!(s, "point {} {} {}", v.name, a.render(self.torus), b.render(self.torus));
                }
                VertexKind::Line(w) => {
                    let _ = writeln!(s, "line {} {}", v.name, w.render(self.torus));
                }
            }
        }
        for c in &self.curves {
            match c.kind {
                CurveKind::Edge(a, b) => {
                    let _ = writeln!(s, "curve {} {} {}", c.name, self.vertices[a].name, self.vertices[b].name);
                }
                CurveKind::FixedLine(a) => {
                    let _ = writeln!(s, "curve {} {}", c.name, self.vertices[a].name);
                }
            }
        }
        s
    }

    pub fn points(&self) -> impl Iterator<Item = (usize, &[Weight; 2])> {
        self.vertices.iter().enumerate().filter_map(|(i, v)| match &v.kind {
            VertexKind::Point(w) => Some((i, w)),
            VertexKind::Line(_) => None,
        })
    }

    pub fn lines(&self) -> impl Iterator<Item = (usize, Weight)> + '_ {
        self.vertices.iter().enumerate().filter_map(|(i, v)| match &v.kind {
            VertexKind::Line(w) => Some((i, *w)),
            VertexKind::Point(_) => None,
        })
    }

    /// Checks the shape expected for the family and that every weight and
    /// every edge direction is well defined.
    pub fn validate(&self, family: Family) -> Result<()> {
        let e = |m: String| graph_err(&self.name, m);
        if self.name != family.to_string() {
            return Err(e(format!("expected {family}")));
        }
        let want_torus = if family.is_cyclic() { Torus::Two } else { Torus::One };
        if self.torus != want_torus {
            return Err(e("wrong torus dimension".into()));
        }
        let points = self.points().count();
        let lines = self.lines().count();
        let want = match family {
            Family::A(n) => (n as usize + 1, 0),
            Family::D(n) => (n as usize - 1, 1),
            Family::E6 => (5, 1),
            Family::E7 => (6, 1),
            Family::E8 => (7, 1),
        };
        if (points, lines) != want {
            return Err(e(format!("{points} points and {lines} lines, expected {want:?}")));
        }
        if self.curves.len() != family.rank() {
            return Err(e(format!("{} curves for rank {}", self.curves.len(), family.rank())));
        }
        for v in &self.vertices {
            let zero = match &v.kind {
                VertexKind::Point([a, b]) => a.is_zero() || b.is_zero(),
                VertexKind::Line(w) => w.is_zero(),
            };
            if zero {
                return Err(Error::ZeroWeight(format!("{} in {}", v.name, self.name)));
            }
        }
        for (j, c) in self.curves.iter().enumerate() {
            match c.kind {
                CurveKind::Edge(a, b) => {
                    self.along(j, a)?;
                    self.along(j, b)?;
                }
                CurveKind::FixedLine(a) => {
                    if !matches!(self.vertices[a].kind, VertexKind::Line(_)) {
                        return Err(e(format!("{} is not a fixed line", c.name)));
                    }
                }
            }
        }
        Ok(())
    }

    fn weights_at(&self, v: usize) -> Vec<Weight> {
        match &self.vertices[v].kind {
            VertexKind::Point(w) => w.to_vec(),
            VertexKind::Line(w) => vec![*w],
        }
    }

    /// Tangent weight of edge `j` at its endpoint `v`: the weight at `v` whose
    /// negative is a weight at the other end. On the fixed line this is the
    /// normal weight.
    fn along(&self, j: usize, v: usize) -> Result<Weight> {
        let CurveKind::Edge(a, b) = self.curves[j].kind else {
            return Err(graph_err(&self.name, "not an edge"));
        };
        let other = if v == a { b } else { a };
        let theirs = self.weights_at(other);
        let cands: Vec<Weight> = self
            .weights_at(v)
            .into_iter()
            .filter(|w| theirs.contains(&w.neg()))
            .collect();
        match cands.as_slice() {
            [w] => Ok(*w),
            _ => Err(graph_err(
                &self.name,
                format!(
                    "cannot orient {} at {}",
                    self.curves[j].name, self.vertices[v].name
                ),
            )),
        }
    }

    pub fn divisor_index(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.curves.len() {
            return Err(Error::UnknownDivisor(format!("E{i} in {}", self.name)));
        }
        Ok(i - 1)
    }

    /// Restriction of `L_i = O(E_i)` to vertex `v`.
    pub fn restriction(&self, i: usize, v: usize) -> Result<Restriction> {
        let ci = self.divisor_index(i)?;
        let zero = Restriction {
            degree: 0,
            weight: Weight(0, 0),
        };
        Ok(match (&self.curves[ci].kind, &self.vertices[v].kind) {
            (CurveKind::FixedLine(f), VertexKind::Line(w)) if *f == v => Restriction {
                degree: -2,
                weight: *w,
            },
            (CurveKind::Edge(a, b), VertexKind::Line(_)) if *a == v || *b == v => Restriction {
                degree: 1,
                weight: Weight(0, 0),
            },
            (CurveKind::Edge(a, b), VertexKind::Point([w1, w2])) if *a == v || *b == v => {
                let t = self.along(ci, v)?;
                Restriction {
                    degree: 0,
                    weight: if t == *w1 { *w2 } else { *w1 },
                }
            }
            _ => zero,
        })
    }

    /// `∫_{E_j} c₁(L_i)`, by localization on an edge or as a degree on the
    /// fixed line.
    pub fn divisor_pairing(&self, i: usize, j: usize) -> Result<i64> {
        let cj = self.divisor_index(j)?;
        self.divisor_index(i)?;
        let mut total = R::zero();
        match self.curves[cj].kind {
            CurveKind::FixedLine(f) => return Ok(self.restriction(i, f)?.degree),
            CurveKind::Edge(a, b) => {
                for v in [a, b] {
                    let l = self.restriction(i, v)?.weight.to_ratfun(self.torus);
                    let t = self.along(cj, v)?.to_ratfun(self.torus);
                    total = total.add(&l.div(&t)?);
                }
            }
        }
        constant_integer(&total)
            .ok_or_else(|| graph_err(&self.name, format!("pairing ({i},{j}) is {total}, not an integer")))
    }

    pub fn intersection_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let r = self.curves.len();
        (1..=r)
            .map(|i| (1..=r).map(|j| self.divisor_pairing(i, j)).collect())
            .collect()
    }

    /// Contribution of each vertex to `∫_{[M̄_{g,n}(Y,0)]^vir} Π ev*(c₁ L_{iₖ})`,
    /// where `inserts` lists the divisors at the `n` markings (`None` for
    /// the unit class).
    pub fn contributions(&self, genus: u32, inserts: &[Option<usize>]) -> Result<Vec<(String, R)>> {
        let marked = inserts.len() as u32;
        let mut out = Vec::new();
        for (v, vert) in self.vertices.iter().enumerate() {
            let mut ins = R::one();
            let mut ins_h = R::zero();
            for i in inserts.iter().flatten() {
                let r = self.restriction(*i, v)?;
                let w = r.weight.to_ratfun(self.torus);
                let d = R::from_int(r.degree);
                // (ins + ins_h H)(w + d H) with H² = 0.
                ins_h = ins_h.mul(&w).add(&ins.mul(&d));
                ins = ins.mul(&w);
            }
            let value = match &vert.kind {
                VertexKind::Point([w1, w2]) => {
                    let (a, b) = (w1.to_ratfun(self.torus), w2.to_ratfun(self.torus));
                    let e = LambdaPoly::dual_euler(genus, marked, &a)?
                        .mul(&LambdaPoly::dual_euler(genus, marked, &b)?)
                        .scale(&ins.div(&a.mul(&b))?);
                    integrate(&e)?
                }
                VertexKind::Line(w) => {
                    // e(E^∨ ⊗ N) e(E^∨ ⊗ T_F) / w with T_F = 2H; keep the H-linear part.
                    let wr = w.to_ratfun(self.torus);
                    let en = LambdaPoly::dual_euler(genus, marked, &wr)?;
                    let (t0, t1) = tangent_line_euler(genus, marked)?;
                    let h0 = en.mul(&t0);
                    let h1 = en.mul(&t1);
                    let inv_w = R::one().div(&wr)?;
                    let linear = h1.scale(&ins.mul(&inv_w)).add(&h0.scale(&ins_h.mul(&inv_w)));
                    integrate(&linear)?
                }
            };
            out.push((vert.name.clone(), value));
        }
        Ok(out)
    }

    fn total(&self, genus: u32, inserts: &[Option<usize>]) -> Result<R> {
        Ok(self
            .contributions(genus, inserts)?
            .into_iter()
            .fold(R::zero(), |acc, (_, v)| acc.add(&v)))
    }

    /// `⟨⟩_{1,1,0}` with the unit insertion.
    pub fn genus1_one_point(&self) -> Result<R> {
        self.total(1, &[None])
    }

    /// `⟨⟩_{2,0,0}`.
    pub fn genus2_zero_point(&self) -> Result<R> {
        self.total(2, &[])
    }

    /// `⟨α_i⟩_{1,1,0}` for the divisor class `α_i = c₁(L_i)`.
    pub fn genus1_divisor_insertion(&self, i: usize) -> Result<R> {
        self.divisor_index(i)?;
        self.total(1, &[Some(i)])
    }

    /// Evaluates each requested `(g, n, d)` over every choice of primary
    /// insertions from `{1, α₁, …}`.
    pub fn vanishing_sweep(&self, cases: &[(u32, u32, u32)]) -> Result<Vec<VanishingCase>> {
        let mut out = Vec::new();
        for &(g, n, d) in cases {
            let outcome = if g == 0 {
                Vanishing::OutOfScope
            } else if d > 0 {
                Vanishing::PositiveDegree
            } else {
                let mut evaluated = 0;
                let mut all_zero = true;
                for ins in insertion_choices(self.curves.len(), n as usize) {
                    evaluated += 1;
                    if !self.total(g, &ins)?.is_zero() {
                        all_zero = false;
                    }
                }
                Vanishing::Computed {
                    all_zero,
                    evaluated,
                }
            };
            out.push(VanishingCase {
                genus: g,
                marked: n,
                degree: d,
                outcome,
            });
        }
        Ok(out)
    }
}

/// `e(E^∨ ⊗ T_F)` for `T_F = 2H`, split into its `H⁰` and `H¹` parts.
fn tangent_line_euler(genus: u32, marked: u32) -> Result<(LambdaPoly<R>, LambdaPoly<R>)> {
    let g = genus as usize;
    let sign = |i: usize| if i.is_multiple_of(2) { R::one() } else { R::one().neg() };
    let mut m0 = [0u8; 3];
    m0[g - 1] = 1;
    let h0 = LambdaPoly::monomial(genus, marked, m0, sign(g))?;
    let h1 = if g == 1 {
        LambdaPoly::constant(genus, marked, R::from_int(2))?
    } else {
        let mut m1 = [0u8; 3];
        m1[g - 2] = 1;
        LambdaPoly::monomial(genus, marked, m1, sign(g - 1).mul(&R::from_int(2)))?
    };
    Ok((h0, h1))
}

/// Multisets of size `n` from `{None, Some(1), …, Some(r)}`.
fn insertion_choices(r: usize, n: usize) -> Vec<Vec<Option<usize>>> {
    let opts: Vec<Option<usize>> = std::iter::once(None).chain((1..=r).map(Some)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for c in &out {
            let start = c.last().map_or(0, |x| opts.iter().position(|o| o == x).unwrap());
            for o in &opts[start..] {
                let mut c2 = c.clone();
                c2.push(*o);
                next.push(c2);
            }
        }
        out = next;
    }
    out
}

fn constant_integer(f: &R) -> Option<i64> {
    let p = f.clone().into_poly()?;
    if !p.is_constant() {
        return None;
    }
    let c = p.constant_term();
    if c.is_integer() {
        c.numer().to_i64()
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Vanishing {
    Computed { all_zero: bool, evaluated: usize },
    /// Positive degree with positive genus: zero by the standard argument
    /// that the top λ-class kills these classes; not evaluated.
    PositiveDegree,
    /// Genus zero is handled by the three-point correlators instead.
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingCase {
    pub genus: u32,
    pub marked: u32,
    pub degree: u32,
    pub outcome: Vanishing,
}

/// `-(t₁+t₂)/(24|G| t₁t₂)` for cyclic groups and `-1/(12|G| t)` otherwise.
pub fn expected_genus1(family: Family) -> R {
    expected(family, 24)
}

/// `-(t₁+t₂)/(5760|G| t₁t₂)` for cyclic groups and `-1/(2880|G| t)` otherwise.
pub fn expected_genus2(family: Family) -> R {
    expected(family, 5760)
}

fn expected(family: Family, c: i64) -> R {
    let g = BigInt::from(family.order());
    let q = |n: BigInt| BigRational::from_integer(n);
    if family.is_cyclic() {
        let num = R::var(Var::T1).add(&R::var(Var::T2)).neg();
        let den = R::var(Var::T1).mul(&R::var(Var::T2)).scale_rational(&q(g * c));
        num.div(&den).expect("nonzero")
    } else {
        let den = R::var(Var::T).scale_rational(&q(g * (c / 2)));
        R::one().neg().div(&den).expect("nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_round_trip() {
        for (s, t) in [("6t", Torus::One), ("-4t", Torus::One), ("3t1-2t2", Torus::Two), ("-t1+t2", Torus::Two)] {
            let w = Weight::parse(s, t).unwrap();
            assert_eq!(w.render(t), s);
        }
        assert!(Weight::parse("6x", Torus::One).is_none());
    }

    #[test]
    fn insertion_multisets() {
        assert_eq!(insertion_choices(3, 2).len(), 10);
        assert_eq!(insertion_choices(3, 0).len(), 1);
    }
}
