use crepant::data::DataSource;
use crepant::groups::{Family, Group};
use crepant::localization::FixedLocusGraph;
use crepant::qrr::*;
use crepant::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn fact(n: i64) -> BigRational {
    BigRational::from_integer((1..=n).map(BigInt::from).product())
}

fn b(n: u32, x: BigRational) -> BigRational {
    bernoulli_poly(n, &x)
}

/// `(|γ| / 24|G|) · #{(α, β) : αβα⁻¹β⁻¹ = g}` for a representative `g`.
fn psi_by_commutators(g: &Group, class: usize) -> BigRational {
    let n = g.order();
    let target = g.classes[class].representative;
    let mut count = 0i64;
    for a in 0..n {
        let ai = g.inverse(a);
        for c in 0..n {
            let ci = g.inverse(c);
            if g.multiply(g.multiply(a, c), g.multiply(ai, ci)) == target {
                count += 1;
            }
        }
    }
    r(count * g.classes[class].size as i64, 24 * n as i64)
}

#[test]
fn bernoulli_examples() {
    assert_eq!(b(2, r(0, 1)), r(1, 6));
    assert_eq!(b(2, r(1, 4)), r(-1, 48));
    assert_eq!(b(2, r(1, 2)), r(-1, 12));
    for x in [r(1, 10), r(2, 5), r(3, 8), r(5, 6)] {
        assert_eq!(b(2, x.clone()), &x * &x - &x + r(1, 6));
    }
    // B₃(x) = x³ - 3x²/2 + x/2
    for x in [r(1, 3), r(-2, 7), r(5, 4)] {
        let x2 = &x * &x;
        assert_eq!(b(3, x.clone()), &x2 * &x - r(3, 2) * &x2 + r(1, 2) * &x);
    }
}

#[test]
fn operator_coefficients_match_displays() {
    let e7 = Group::get(Family::E7).unwrap();
    let e8 = Group::get(Family::E8).unwrap();
    for p in 1..=5u32 {
        let pf = fact(p as i64 + 1);
        let w7 = operator_coefficients(&e7, p).unwrap();
        let bp = |x: BigRational| bernoulli_poly(p + 1, &x);
        assert_eq!(w7.class("[a]").unwrap().linear, -(bp(r(1, 8)) + bp(r(7, 8))) / &pf);
        assert_eq!(w7.class("[a^3]").unwrap().linear, -(bp(r(3, 8)) + bp(r(5, 8))) / &pf);
        assert_eq!(w7.class("[c]").unwrap().linear, -(bp(r(1, 6)) + bp(r(5, 6))) / &pf);
        assert_eq!(w7.class("[1]").unwrap().linear, -r(2, 1) * bp(r(0, 1)) / &pf);
        for (label, mult, pair) in [
            ("[1]", 48, bp(r(0, 1)) * r(2, 1)),
            ("[-1]", 48, bp(r(1, 2)) * r(2, 1)),
            ("[ab]", 4, bp(r(1, 4)) + bp(r(3, 4))),
            ("[b]", 8, bp(r(1, 4)) + bp(r(3, 4))),
            ("[c^2]", 6, bp(r(1, 3)) + bp(r(2, 3))),
            ("[c]", 6, bp(r(1, 6)) + bp(r(5, 6))),
            ("[a]", 8, bp(r(1, 8)) + bp(r(7, 8))),
            ("[a^3]", 8, bp(r(3, 8)) + bp(r(5, 8))),
        ] {
            assert_eq!(w7.class(label).unwrap().quadratic, r(mult, 1) * pair / &pf, "E7 {label} p={p}");
        }
        let w8 = operator_coefficients(&e8, p).unwrap();
        assert_eq!(w8.class("[a]").unwrap().quadratic, r(10, 1) * (bp(r(1, 10)) + bp(r(9, 10))) / &pf);
        for n in 4..=12u32 {
            let d = Group::get(Family::D(n)).unwrap();
            let w = operator_coefficients(&d, p).unwrap();
            let m = 2 * n as i64 - 4;
            let minus = w.class(&format!("[a^{}]", n - 2)).unwrap();
            assert_eq!(minus.quadratic, r(2 * m, 1) * r(2, 1) * bp(r(1, 2)) / &pf);
            assert_eq!(minus.linear, -r(2, 1) * bp(r(1, 2)) / &pf);
            assert_eq!(w.class("[1]").unwrap().quadratic, r(2 * m, 1) * r(2, 1) * bp(r(0, 1)) / &pf);
            for k in 1..(n as i64 - 2) {
                let c = w.class(&format!("[a^{k}]").replace("[a^1]", "[a]")).unwrap();
                let pair = bp(r(k, m)) + bp(r(m - k, m));
                assert_eq!(c.linear, -pair.clone() / &pf);
                assert_eq!(c.quadratic, r(m, 1) * pair / &pf);
            }
            for label in ["[b]", "[ab]"] {
                assert_eq!(w.class(label).unwrap().quadratic, r(4, 1) * (bp(r(1, 4)) + bp(r(3, 4))) / &pf);
            }
        }
    }
    assert!(matches!(operator_coefficients(&e7, 0), Err(Error::InvalidParameter(_))));
}

#[test]
fn printed_psi_values() {
    let e7 = Group::get(Family::E7).unwrap();
    assert_eq!(psi_one_point(&e7, "[b]").unwrap(), r(14, 24));
    let e8 = Group::get(Family::E8).unwrap();
    for (label, v) in [
        ("[a]", 20),
        ("[a^2]", 6),
        ("[a^3]", 20),
        ("[a^4]", 6),
        ("[b]", 36),
        ("[b^2]", 6),
        ("[ab]", 16),
        ("[-1]", 1),
    ] {
        assert_eq!(psi_one_point(&e8, label).unwrap(), r(v, 24), "E8 {label}");
    }
    for n in 4..=12u32 {
        let d = Group::get(Family::D(n)).unwrap();
        for k in (2..n - 2).step_by(2) {
            assert_eq!(psi_one_point(&d, &format!("[a^{k}]")).unwrap(), r(6, 24), "D{n} [a^{k}]");
        }
        if n % 2 == 0 {
            assert_eq!(psi_one_point(&d, &format!("[a^{}]", n - 2)).unwrap(), r(3, 24), "D{n}");
        }
        assert!(psi_one_point(&d, "[b]").unwrap().is_zero());
    }
}

#[test]
fn psi_matches_commutator_count() {
    for f in Family::sweep(12, 10) {
        let g = Group::get(f).unwrap();
        for (i, c) in g.classes.iter().enumerate() {
            let psi = psi_one_point(&g, &c.name).unwrap();
            assert_eq!(psi, psi_by_commutators(&g, i), "{f} {}", c.name);
            assert!((psi * r(24, 1)).denom().is_one());
        }
    }
}

#[test]
fn e8_class_a_line() {
    let line = r(20, 24) * b(2, r(0, 1)) - r(20, 24) * b(2, r(1, 10))
        + r(5, 2) * (b(2, r(1, 10)) + b(2, r(2, 5)))
        + r(3, 2) * (b(2, r(1, 6)) + b(2, r(1, 3)))
        + r(2, 1) * b(2, r(1, 4));
    assert!(line.is_zero());
    let e8 = Group::get(Family::E8).unwrap();
    let res = ch1_one_point(&e8, "[a]").unwrap();
    assert_eq!(res.psi_integral, r(20, 24));
    assert!(res.ch1_integral.is_zero());
}

#[test]
fn e7_class_b_line() {
    let line = r(14, 24) * b(2, r(0, 1)) - r(14, 24) * b(2, r(1, 4))
        + b(2, r(1, 4))
        + r(2, 1) * b(2, r(1, 4))
        + r(3, 2) * b(2, r(1, 3))
        + r(3, 2) * b(2, r(1, 6))
        + r(1, 2) * b(2, r(1, 8))
        + r(1, 2) * b(2, r(3, 8));
    assert!(line.is_zero());
    let e7 = Group::get(Family::E7).unwrap();
    assert!(ch1_one_point(&e7, "[b]").unwrap().ch1_integral.is_zero());
}

#[test]
fn ch1_vanishes_everywhere() {
    for f in Family::sweep(20, 12) {
        let g = Group::get(f).unwrap();
        for backend in [Backend::Characters, Backend::Counting] {
            let res = ch1_all(&g, Options { backend, pairing: Pairing::Inverse }).unwrap();
            assert_eq!(res.len(), g.classes.len() - 1);
            for x in res {
                assert!(x.ch1_integral.is_zero(), "{f} {} {backend:?}: {}", x.class, x.ch1_integral);
            }
        }
    }
}

#[test]
fn backends_agree() {
    for f in Family::sweep(10, 8) {
        let g = Group::get(f).unwrap();
        let a = ch1_all(&g, Options { backend: Backend::Characters, ..Default::default() }).unwrap();
        let c = ch1_all(&g, Options { backend: Backend::Counting, ..Default::default() }).unwrap();
        assert_eq!(a, c, "{f}");
    }
}

#[test]
fn diagonal_pairing_agrees_only_on_self_inverse_groups() {
    for f in [Family::D(4), Family::D(6), Family::D(12), Family::E7, Family::E8] {
        let g = Group::get(f).unwrap();
        let diag = ch1_all(&g, Options { pairing: Pairing::Diagonal, ..Default::default() }).unwrap();
        assert_eq!(diag, ch1_all(&g, Options::default()).unwrap(), "{f}");
    }
    let a2 = Group::get(Family::A(2)).unwrap();
    let diag = ch1_one_point_with(&a2, "[a]", Options { pairing: Pairing::Diagonal, ..Default::default() }).unwrap();
    assert_eq!(diag.psi_integral, r(1, 24));
    assert_eq!(diag.ch1_integral, r(-1, 54));
}

#[test]
fn trivial_class_and_unknown_labels() {
    let g = Group::get(Family::E6).unwrap();
    assert_eq!(ch1_one_point(&g, "[1]"), Err(Error::TrivialClass));
    assert!(matches!(ch1_one_point(&g, "[zz]"), Err(Error::UnknownClass(_))));
    assert!(matches!(psi_one_point(&g, "[zz]"), Err(Error::UnknownClass(_))));
}

#[test]
fn trivial_sector_matches_resolution() {
    let src = DataSource::embedded();
    for f in Family::sweep(8, 8) {
        let graph = FixedLocusGraph::load(f, &src).unwrap();
        assert_eq!(trivial_sector(f, 1).unwrap(), graph.genus1_one_point().unwrap(), "{f}");
        assert_eq!(trivial_sector(f, 2).unwrap(), graph.genus2_zero_point().unwrap(), "{f}");
        assert_eq!(trivial_sector(f, 1).unwrap(), crepant::localization::expected_genus1(f));
        assert_eq!(trivial_sector(f, 2).unwrap(), crepant::localization::expected_genus2(f));
    }
    let t = crepant::localization::R::var(crepant::arith::Var::T);
    let e7 = crepant::localization::R::one().neg().div(&t.scale_rational(&r(12 * 48, 1))).unwrap();
    assert_eq!(trivial_sector(Family::E7, 1).unwrap(), e7);
    assert_eq!(trivial_sector(Family::E7, 3), Err(Error::UnsupportedGenus(3)));
}

proptest! {
    #[test]
    fn bernoulli_symmetry_and_difference(n in 0u32..12, num in -40i64..40, den in 1i64..30) {
        let x = r(num, den);
        let sign = if n % 2 == 0 { r(1, 1) } else { r(-1, 1) };
        prop_assert_eq!(b(n, r(1, 1) - &x), sign * b(n, x.clone()));
        if n > 0 {
            let diff = b(n, &x + r(1, 1)) - b(n, x.clone());
            prop_assert_eq!(diff, r(n as i64, 1) * num_traits::pow(x, n as usize - 1));
        }
    }

    #[test]
    fn ch1_vanishes_on_random_groups(a in 1u32..60, d in 4u32..24, pick in 0usize..2) {
        let f = if pick == 0 { Family::A(a) } else { Family::D(d) };
        let g = Group::get(f).unwrap();
        let res = ch1_all(&g, Options { backend: Backend::Counting, ..Default::default() }).unwrap();
        for x in res {
            prop_assert!(x.ch1_integral.is_zero());
            prop_assert!((x.psi_integral * r(24, 1)).denom().is_one());
        }
    }
}
