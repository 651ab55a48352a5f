//! Group data for the infinite families, generated in the same shape as the
//! stored E-type files.

use num_integer::Integer;
use num_rational::BigRational;

use super::schema::{ClassSpec, GroupData, StandardSpec};
use crate::arith::{Cyclotomic, Ring};

fn vec_of(c: &Cyclotomic, field: u32) -> Vec<BigRational> {
    c.lift_to(field).coeffs()
}

fn zero(field: u32) -> Vec<BigRational> {
    vec_of(&Cyclotomic::from_i64(0), field)
}

pub(crate) fn power_label(k: i64) -> String {
    if k == 1 {
        "[a]".into()
    } else {
        format!("[a^{k}]")
    }
}

fn power_word(k: i64) -> String {
    if k == 1 {
        "a".into()
    } else {
        format!("a^{k}")
    }
}

fn class(label: String, word: String) -> ClassSpec {
    ClassSpec {
        label,
        word,
        aliases: Vec::new(),
    }
}

/// Cyclic group Z_{n+1} acting by diag(ζ, ζ⁻¹).
pub fn cyclic(n: u32) -> GroupData {
    let order = n + 1;
    let f = order;
    let roots: Vec<_> = (0..order as i64).map(|k| vec_of(&Cyclotomic::root_of_unity(order, k), f)).collect();
    let z = |k: i64| roots[k.rem_euclid(order as i64) as usize].clone();
    let mut classes = vec![class("[1]".into(), "1".into())];
    for k in 1..=n as i64 {
        classes.push(class(power_label(k), power_word(k)));
    }
    let irreps = (0..=n as i64)
        .map(|j| {
            let vals = (0..=n as i64).map(|k| z(j * k)).collect();
            (format!("chi{}", j + 1), vals)
        })
        .collect();
    GroupData {
        name: format!("A{n}"),
        order: order as usize,
        matrix_field: f,
        generators: vec![('a', [z(1), zero(f), zero(f), z(-1)])],
        relations: vec![(format!("a^{order}"), "1".into())],
        classes,
        character_field: f,
        irreps,
        standard: StandardSpec::Trace,
    }
}

/// Binary dihedral group of order 4(n-2).
pub fn binary_dihedral(n: u32) -> GroupData {
    let m = n - 2;
    let mf = 2 * m;
    let cf = if m % 2 == 1 { mf.lcm(&4) } else { mf };
    let zm = |k: i64| Cyclotomic::root_of_unity(mf, k);
    let one = Cyclotomic::from_i64(1);
    let minus_one = Cyclotomic::from_i64(-1);
    let eps = if m.is_multiple_of(2) { one.clone() } else { Cyclotomic::i() };

    let mut classes = vec![class("[1]".into(), "1".into())];
    for k in 1..m as i64 {
        classes.push(class(power_label(k), power_word(k)));
    }
    let mut centre = class(power_label(m as i64), power_word(m as i64));
    centre.aliases.push("[-1]".into());
    classes.push(centre);
    classes.push(class("[b]".into(), "b".into()));
    classes.push(class("[ab]".into(), "a*b".into()));

    let mut irreps = Vec::new();
    let signs = [
        (one.clone(), one.clone()),
        (one.clone(), minus_one.clone()),
        (minus_one.clone(), eps.clone()),
        (minus_one.clone(), eps.neg()),
    ];
    for (idx, (s, t)) in signs.iter().enumerate() {
        let mut vals = vec![vec_of(&one, cf)];
        for k in 1..=m {
            vals.push(vec_of(&s.pow(k), cf));
        }
        vals.push(vec_of(t, cf));
        vals.push(vec_of(&s.mul(t), cf));
        irreps.push((format!("chi{}", idx + 1), vals));
    }
    for j in 1..m as i64 {
        let mut vals = vec![vec_of(&Cyclotomic::from_i64(2), cf)];
        for k in 1..=m as i64 {
            vals.push(vec_of(&zm(j * k).add(&zm(-j * k)), cf));
        }
        vals.push(zero(cf));
        vals.push(zero(cf));
        irreps.push((format!("chi{}", j + 4), vals));
    }

    let mat = |c: &Cyclotomic| vec_of(c, mf);
    GroupData {
        name: format!("D{n}"),
        order: 4 * m as usize,
        matrix_field: mf,
        generators: vec![
            ('a', [mat(&zm(1)), zero(mf), zero(mf), mat(&zm(-1))]),
            ('b', [zero(mf), mat(&one), mat(&minus_one), zero(mf)]),
        ],
        relations: vec![
            (power_word(m as i64), "-1".into()),
            ("b^2".into(), "-1".into()),
            ("b*a".into(), "a^-1*b".into()),
        ],
        classes,
        character_field: cf,
        irreps,
        standard: StandardSpec::Irrep("chi5".into()),
    }
}
