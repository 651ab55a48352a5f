//! Acceptance suite: one line per criterion.
//!
//! Values are compared exactly. Each criterion also has a wall-clock budget;
//! exceeding it fails the line. Criteria listed in `KNOWN_RED` print their
//! failure but do not fail the binary; the blocking analysis is kept in the
//! decisions ledger.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crepant::arith::{RatFun, Ring, Var};
use crepant::correspondence::build_change_of_variables;
use crepant::data::DataSource;
use crepant::groups::{Family, Group, StoredTable};
use crepant::localization::{FixedLocusGraph, R};
use crepant::qrr::{ch1_one_point, psi_one_point, trivial_sector};
use crepant::series_qde as sq;
use num_rational::BigRational;

/// The stated field Q(zeta_{2 exp G}) does not contain sqrt(3) and its
/// relatives needed for A_n with n even.
const KNOWN_RED: &[u32] = &[10];

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn group(f: Family) -> Result<std::sync::Arc<Group>, String> {
    Group::get(f).map_err(|e| format!("{f}: {e}"))
}

fn graph(f: Family) -> Result<FixedLocusGraph, String> {
    FixedLocusGraph::load(f, &DataSource::embedded()).map_err(|e| format!("{f}: {e}"))
}

fn small_families() -> Vec<Family> {
    let mut v: Vec<Family> = (1..=12).map(Family::A).collect();
    v.extend((4..=12).map(Family::D));
    v.extend([Family::E6, Family::E7, Family::E8]);
    v
}

fn order(f: Family) -> i64 {
    match f {
        Family::A(n) => n as i64 + 1,
        Family::D(n) => 4 * (n as i64 - 2),
        Family::E6 => 24,
        Family::E7 => 48,
        Family::E8 => 120,
    }
}

/// `-(t1+t2)/(c(n+1) t1 t2)` for A_n, `-2/(c|G| t)` otherwise.
fn closed_form(f: Family, c: i64) -> R {
    let k = BigRational::from_integer((c * order(f)).into());
    match f {
        Family::A(_) => {
            let num = R::var(Var::T1).add(&R::var(Var::T2)).neg();
            num.div(&R::var(Var::T1).mul(&R::var(Var::T2)).scale_rational(&k)).unwrap()
        }
        _ => RatFun::constant(q(-2, 1)).div(&R::var(Var::T).scale_rational(&k)).unwrap(),
    }
}

fn closed_form_sweep(genus: u32, c: i64) -> Outcome {
    let mut bad = Vec::new();
    for f in small_families() {
        let g = graph(f)?;
        let v = match genus {
            1 => g.genus1_one_point(),
            _ => g.genus2_zero_point(),
        }
        .map_err(|e| format!("{f}: {e}"))?;
        if v != closed_form(f, c) {
            bad.push(format!("{f}: {}", v.render()));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} groups, e.g. E8 {}", small_families().len(), closed_form(Family::E8, c).render()))
    } else {
        Err(bad.join("; "))
    }
}

fn c1() -> Outcome {
    closed_form_sweep(1, 24)
}

fn c2() -> Outcome {
    closed_form_sweep(2, 5760)
}

/// Dynkin type of a Cartan matrix read from its tree shape.
fn dynkin_type(c: &[Vec<i64>]) -> Option<String> {
    let n = c.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        if c[i][i] != 2 {
            return None;
        }
        for j in 0..n {
            if i != j {
                match (c[i][j], c[j][i]) {
                    (0, 0) => {}
                    (-1, -1) => adj[i].push(j),
                    _ => return None,
                }
            }
        }
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if !std::mem::replace(&mut seen[v], true) {
            stack.extend(&adj[v]);
        }
    }
    if edges + 1 != n || seen.contains(&false) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(format!("A{n}")),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&s| {
                    let (mut prev, mut cur, mut len) = (*b, s, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        (prev, cur, len) = (cur, next, len + 1);
                    }
                    len
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, k] => Some(format!("D{}", k + 3)),
                [1, 2, 2] => Some("E6".into()),
                [1, 2, 3] => Some("E7".into()),
                [1, 2, 4] => Some("E8".into()),
                _ => None,
            }
        }
        _ => None,
    }
}

fn c3() -> Outcome {
    let mut bad = Vec::new();
    let mut divisors = 0;
    for f in small_families() {
        let g = graph(f)?;
        for i in 1..=g.curves.len() {
            divisors += 1;
            match g.genus1_divisor_insertion(i) {
                Ok(v) if v.is_zero() => {}
                Ok(v) => bad.push(format!("{f} alpha{i} = {}", v.render())),
                Err(e) => bad.push(format!("{f} alpha{i}: {e}")),
            }
        }
        let m = g.intersection_matrix().map_err(|e| format!("{f}: {e}"))?;
        let cartan: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let ty = dynkin_type(&cartan);
        if ty.as_deref() != Some(f.to_string().as_str()) {
            bad.push(format!("{f}: minus the pairing has type {ty:?}"));
        }
    }
    let e6 = graph(Family::E6)?.curves.len();
    if e6 != 6 {
        bad.push(format!("E6 has {e6} divisors"));
    }
    if bad.is_empty() {
        Ok(format!("{divisors} divisor insertions vanish; pairings are minus the Cartan matrices"))
    } else {
        Err(bad.join("; "))
    }
}

fn upto_120() -> Vec<Family> {
    let mut v: Vec<Family> = (1..=119).map(Family::A).collect();
    v.extend((4..=32).map(Family::D));
    v.extend([Family::E6, Family::E7, Family::E8]);
    v.retain(|&f| order(f) <= 120);
    v.sort_by_key(|&f| std::cmp::Reverse(order(f)));
    v
}

fn c4() -> Outcome {
    let mut bad = Vec::new();
    for f in [Family::E7, Family::E8] {
        let g = group(f)?;
        let table = StoredTable::load(f, &DataSource::embedded()).map_err(|e| e.to_string())?;
        for (labels, v) in &table.entries {
            let idx: Vec<usize> = labels.iter().map(|l| g.class_index(l)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            let chars = g.three_point_characters([idx[0], idx[1], idx[2]]).map_err(|e| e.to_string())?;
            if &chars != v {
                bad.push(format!("{f} {labels:?}: {chars} != {v}"));
            }
        }
        let full = g.compare_table(&table).map_err(|e| e.to_string())?;
        if !full.mismatches.is_empty() {
            bad.push(format!("{f}: {} triples disagree with the table", full.mismatches.len()));
        }
    }
    let e8 = group(Family::E8)?;
    let v = e8.bg_three_point(["[1]", "[ab]", "[ab]"]).map_err(|e| e.to_string())?;
    if v != q(1, 4) {
        bad.push(format!("E8 <[1][ab][ab]> = {v}"));
    }

    let families = upto_120();
    let next = AtomicUsize::new(0);
    let triples = AtomicUsize::new(0);
    let failures = Mutex::new(Vec::new());
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&f) = families.get(i) else { break };
                match Group::get(f).and_then(|g| g.check_three_point_sweep()) {
                    Ok(c) => {
                        triples.fetch_add(c.triples, Ordering::Relaxed);
                        if !c.mismatches.is_empty() {
                            failures.lock().unwrap().push(format!("{f}: {} mismatches", c.mismatches.len()));
                        }
                    }
                    Err(e) => failures.lock().unwrap().push(format!("{f}: {e}")),
                }
            });
        }
    });
    bad.extend(failures.into_inner().unwrap());
    if bad.is_empty() {
        Ok(format!(
            "E7 and E8 tables agree; {} class triples over {} groups agree with counting",
            triples.into_inner(),
            families.len()
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn printed_psi() -> Vec<(Family, String, BigRational)> {
    let mut v = vec![(Family::E7, "[b]".to_string(), q(14, 24))];
    for (c, n) in [("[a]", 20), ("[a^2]", 6), ("[a^3]", 20), ("[a^4]", 6), ("[b]", 36), ("[b^2]", 6), ("[ab]", 16), ("[-1]", 1)] {
        v.push((Family::E8, c.to_string(), q(n, 24)));
    }
    for n in 4..=12u32 {
        for k in (2..n - 2).step_by(2) {
            v.push((Family::D(n), format!("[a^{k}]"), q(6, 24)));
        }
        if n % 2 == 0 {
            v.push((Family::D(n), format!("[a^{}]", n - 2), q(3, 24)));
        }
    }
    v
}

fn c5() -> Outcome {
    let mut fams: Vec<Family> = (1..=19).map(Family::A).collect();
    fams.extend((4..=12).map(Family::D));
    fams.extend([Family::E6, Family::E7, Family::E8]);
    let mut bad = Vec::new();
    let mut classes = 0;
    for &f in &fams {
        let g = group(f)?;
        for cl in g.classes.iter().filter(|c| c.element_order != 1) {
            classes += 1;
            match ch1_one_point(&g, &cl.name) {
                Ok(r) if r.ch1_integral == q(0, 1) => {}
                Ok(r) => bad.push(format!("{f} {}: {}", cl.name, r.ch1_integral)),
                Err(e) => bad.push(format!("{f} {}: {e}", cl.name)),
            }
        }
    }
    let psi = printed_psi();
    for (f, c, want) in &psi {
        let got = psi_one_point(&*group(*f)?, c).map_err(|e| format!("{f} {c}: {e}"))?;
        if &got != want {
            bad.push(format!("psi {f} {c}: {got} != {want}"));
        }
    }
    if bad.is_empty() {
        Ok(format!("{classes} nontrivial classes over {} groups; {} displayed psi values", fams.len(), psi.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn c6() -> Outcome {
    let mut bad = Vec::new();
    for f in small_families() {
        let g = graph(f)?;
        for genus in [1, 2] {
            let orb = trivial_sector(f, genus).map_err(|e| format!("{f}: {e}"))?;
            let res = if genus == 1 { g.genus1_one_point() } else { g.genus2_zero_point() }.map_err(|e| e.to_string())?;
            if orb != res {
                bad.push(format!("{f} genus {genus}: {} != {}", orb.render(), res.render()));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("genus 1 and 2 over {} groups", small_families().len()))
    } else {
        Err(bad.join("; "))
    }
}

fn c7() -> Outcome {
    let mut out = Vec::new();
    for n in [4, 12] {
        let r = sq::tower_match(n).map_err(|e| format!("N = {n}: {e}"))?;
        out.push(format!("N = {n}: {} coefficients", r.terms_compared));
    }
    Ok(out.join(", "))
}

fn c8() -> Outcome {
    let j = sq::ancestor_j(12);
    let eqs = sq::verify_qde(&j).map_err(|e| e.to_string())?;
    sq::regular_at_minus_one(&j)?;
    Ok(format!("{eqs} QDE equations through t^12; no pole at q = -1"))
}

fn c9() -> Outcome {
    let w = sq::wronskian_identities(20).map_err(|e| e.to_string())?;
    if w.order < 20 {
        return Err(format!("checked only to order {}", w.order));
    }
    Ok(format!(
        "identities {} and {} terms, annihilator {} terms, order {}",
        w.identity_f3_terms, w.identity_f4_terms, w.annihilator_terms, w.order
    ))
}

fn c10() -> Outcome {
    let mut field = Vec::new();
    let mut other = Vec::new();
    for f in small_families() {
        let g = group(f)?;
        let cov = build_change_of_variables(&g).map_err(|e| format!("{f}: {e}"))?;
        let chk = cov.check(&g);
        if !chk.outside_target.is_empty() {
            field.push(format!("{f} (needs Q(zeta_{}), not Q(zeta_{}))", cov.field, chk.target_field));
        }
        for (ok, what) in [
            (chk.determinant_nonzero, "determinant"),
            (chk.inverse_verified, "inverse"),
            (chk.q_are_group_order_roots, "q roots"),
            (chk.q_product_is_one, "q product"),
            (chk.squares_match, "squares"),
        ] {
            if !ok {
                other.push(format!("{f} {what}"));
            }
        }
    }
    match (field.is_empty(), other.is_empty()) {
        (true, true) => Ok(format!("{} groups", small_families().len())),
        (false, true) => Err(format!(
            "entries outside Q(zeta_2exp) for {}; inverse, q-values and squares hold everywhere",
            field.join(", ")
        )),
        _ => Err(format!("field: [{}]; other: [{}]", field.join(", "), other.join(", "))),
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let s = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "genus-one localization closed forms", budget: s(1), run: c1 },
        Criterion { id: 2, name: "genus-two localization closed forms", budget: s(1), run: c2 },
        Criterion { id: 3, name: "divisor insertions and pairing", budget: s(1), run: c3 },
        Criterion { id: 4, name: "three-point tables and counting sweep", budget: s(30), run: c4 },
        Criterion { id: 5, name: "Hurwitz-Hodge ch1 vanishing", budget: s(5), run: c5 },
        Criterion { id: 6, name: "trivial sector equals resolution", budget: s(1), run: c6 },
        Criterion { id: 7, name: "J-function matches I-function", budget: s(60), run: c7 },
        Criterion { id: 8, name: "QDE and regularity at q = -1", budget: s(30), run: c8 },
        Criterion { id: 9, name: "Wronskian identities", budget: s(10), run: c9 },
        Criterion { id: 10, name: "change of variables", budget: s(5), run: c10 },
    ];
    let mut unexpected = BTreeSet::new();
    for c in &criteria {
        let start = Instant::now();
        let out = (c.run)();
        let t = start.elapsed();
        let (ok, detail) = match out {
            Ok(d) if t <= c.budget => (true, d),
            Ok(d) => (false, format!("over budget: {d}")),
            Err(e) => (false, e),
        };
        println!(
            "{} {:>2} {} ({:.2} s, budget {} s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            t.as_secs_f64(),
            c.budget.as_secs()
        );
        if !ok && !KNOWN_RED.contains(&c.id) {
            unexpected.insert(c.id);
        }
        if ok && KNOWN_RED.contains(&c.id) {
            println!("   note: criterion {} listed as known red now passes", c.id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no failures beyond known red {KNOWN_RED:?}");
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        std::process::exit(1);
    }
}
