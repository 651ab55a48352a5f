use crepant::arith::{rat, Cyclotomic, Ring};
use crepant::groups::{dynkin, Family, Group, Sector};
use crepant::Error;
use num_rational::BigRational;
use proptest::prelude::*;

fn g(f: Family) -> std::sync::Arc<Group> {
    Group::get(f).unwrap()
}

#[test]
fn orders_and_axioms() {
    for f in Family::sweep(12, 12) {
        let grp = g(f);
        assert_eq!(grp.order(), f.order(), "{f}");
        grp.check_axioms().unwrap();
        let sizes: usize = grp.classes.iter().map(|c| c.size).sum();
        assert_eq!(sizes, grp.order());
        for c in &grp.classes {
            assert_eq!(c.size * c.centralizer_order, grp.order());
        }
        assert_eq!(grp.classes[0].size, 1);
        assert_eq!(grp.classes[0].age, rat(0, 1));
    }
}

#[test]
fn e7_class_names() {
    let grp = g(Family::E7);
    let names: Vec<&str> = grp.classes.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["[1]", "[-1]", "[ab]", "[b]", "[c^2]", "[c]", "[a]", "[a^3]"]);
    assert_eq!(grp.class("[b]").unwrap().centralizer_order, 8);
}

#[test]
fn e8_class_data() {
    let grp = g(Family::E8);
    let a = grp.class("[a]").unwrap();
    assert_eq!(a.centralizer_order, 10);
    assert_eq!(a.age, rat(1, 10));
    let ages: Vec<BigRational> = ["[-1]", "[a^2]", "[a^3]", "[a^4]", "[b]", "[b^2]", "[ab]"]
        .iter()
        .map(|l| grp.class(l).unwrap().age.clone())
        .collect();
    assert_eq!(ages, [rat(1, 2), rat(1, 5), rat(3, 10), rat(2, 5), rat(1, 6), rat(1, 3), rat(1, 4)]);
    // χ_{ρ₁}([a]) is the golden ratio 1 + ζ₅ + ζ₅⁴.
    let phi = Cyclotomic::from_i64(1)
        .add(&Cyclotomic::root_of_unity(5, 1))
        .add(&Cyclotomic::root_of_unity(5, 4));
    let v = &grp.table.standard_values[grp.class_index("[a]").unwrap()];
    assert_eq!(*v, phi);
    assert!((v.to_complex().0 - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
}

#[test]
fn binary_dihedral_ages() {
    let n = 7;
    let grp = g(Family::D(n));
    let m = n as i64 - 2;
    for k in 1..m {
        let label = if k == 1 { "[a]".to_string() } else { format!("[a^{k}]") };
        assert_eq!(grp.class(&label).unwrap().age, rat(k.min(2 * m - k), 2 * m));
    }
    assert_eq!(grp.class("[-1]").unwrap().age, rat(1, 2));
    assert_eq!(grp.class(&format!("[a^{m}]")).unwrap().name, grp.class("[-1]").unwrap().name);
    assert_eq!(grp.class("[b]").unwrap().age, rat(1, 4));
    assert_eq!(grp.class("[ab]").unwrap().age, rat(1, 4));
}

#[test]
fn z3_table_is_the_dft() {
    let grp = g(Family::A(2));
    for j in 0..3 {
        for k in 0..3 {
            assert_eq!(grp.table.values[j][k], Cyclotomic::root_of_unity(3, (j * k) as i64));
        }
    }
}

#[test]
fn trivial_character_is_one() {
    for f in [Family::A(5), Family::D(6), Family::E6, Family::E7, Family::E8] {
        let grp = g(f);
        assert!(grp.table.values[0].iter().all(|v| v.is_one()), "{f}");
    }
}

#[test]
fn mckay_graphs_are_affine_diagrams() {
    for f in Family::sweep(12, 12) {
        let grp = g(f);
        let m = grp.mckay().unwrap();
        assert!(m.is_symmetric());
        assert!(dynkin::isomorphic(&m.adjacency, &dynkin::affine(f)));
        let c = m.cartan();
        assert!(dynkin::isomorphic(
            &c.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
            &dynkin::cartan(&dynkin::affine(f)).iter().map(|r| r.iter().map(|x| -x).collect()).collect()
        ));
    }
    let z2 = g(Family::A(1)).mckay().unwrap();
    assert_eq!(z2.adjacency, vec![vec![0, 2], vec![2, 0]]);
}

#[test]
fn regular_representation_counts() {
    assert_eq!(g(Family::A(4)).regular_rep_trivial_count().unwrap(), 2);
    assert_eq!(g(Family::D(5)).regular_rep_trivial_count().unwrap(), 1);
    assert_eq!(g(Family::E8).regular_rep_trivial_count().unwrap(), 1);
}

#[test]
fn hodge_bundle_ranks() {
    let a = g(Family::A(3));
    let e7 = g(Family::E7);
    assert_eq!(a.hodge_bundle_rank(1, 0, 0, Sector::Trivial).unwrap(), 2);
    assert_eq!(e7.hodge_bundle_rank(1, 1, 0, Sector::Nontrivial).unwrap(), 1);
    assert_eq!(e7.hodge_bundle_rank(0, 3, 3, Sector::Trivial).unwrap(), 0);
    assert!(matches!(e7.hodge_bundle_rank(1, 2, 1, Sector::Trivial), Err(Error::InvalidSector(_))));
    for f in [Family::A(3), Family::D(6), Family::E6, Family::E8] {
        let grp = g(f);
        for genus in 0..4 {
            for n in 0..4 {
                for m in 0..=n {
                    let s = if m == n { Sector::Trivial } else { Sector::Nontrivial };
                    assert_eq!(
                        grp.hodge_bundle_rank(genus, n, m, s).unwrap(),
                        grp.hodge_bundle_rank_rr(genus, n, m, s).unwrap(),
                        "{f} g={genus} n={n} m={m}"
                    );
                }
            }
        }
    }
}

#[test]
fn invalid_parameters() {
    assert!(matches!(Family::parse("D3"), Err(Error::InvalidParameter(_))));
    assert!(matches!(Family::parse("A0"), Err(Error::InvalidParameter(_))));
    assert!(matches!(Family::parse("F4"), Err(Error::InvalidParameter(_))));
    assert_eq!(Family::parse("A1").unwrap().order(), 2);
    assert!(matches!(g(Family::E7).bg_three_point(["[1]", "[x]", "[1]"]), Err(Error::UnknownClass(_))));
}

#[test]
fn printed_three_point_values() {
    let e8 = g(Family::E8);
    assert_eq!(e8.bg_three_point(["[1]", "[1]", "[1]"]).unwrap(), rat(1, 120));
    assert_eq!(e8.bg_three_point(["[1]", "[a]", "[a]"]).unwrap(), rat(1, 10));
    assert_eq!(e8.bg_three_point(["[1]", "[ab]", "[ab]"]).unwrap(), rat(1, 4));
    let e7 = g(Family::E7);
    assert_eq!(e7.bg_three_point(["[b]", "[b]", "[b]"]).unwrap(), rat(1, 2));
    assert_eq!(e7.bg_three_point(["[1]", "[ab]", "[ab]"]).unwrap(), rat(1, 4));
}

#[test]
fn characters_match_counting_for_small_groups() {
    for f in [Family::A(1), Family::A(5), Family::D(4), Family::D(7), Family::E6, Family::E7] {
        let grp = g(f);
        let nc = grp.classes.len();
        for a in 0..nc {
            for b in a..nc {
                for c in b..nc {
                    assert_eq!(
                        grp.three_point_characters([a, b, c]).unwrap(),
                        grp.three_point_count([a, b, c]),
                        "{f} {a} {b} {c}"
                    );
                }
            }
        }
    }
}

#[test]
fn data_round_trips_through_text() {
    use crepant::data::DataSource;
    use crepant::groups::{group_data, GroupData};
    for f in [Family::E6, Family::E7, Family::E8, Family::D(6), Family::A(3)] {
        let d = group_data(f, &DataSource::embedded()).unwrap();
        assert_eq!(GroupData::parse(&d.emit()).unwrap(), d);
    }
}

#[test]
fn corrupt_character_data_is_rejected() {
    use crepant::data::DataSource;
    use crepant::groups::group_data;
    let mut d = group_data(Family::E7, &DataSource::embedded()).unwrap();
    let last = d.irreps.len() - 1;
    d.irreps[last].1[1][0] = rat(7, 1);
    assert!(matches!(Group::from_data(Family::E7, d), Err(Error::Validation(_))));
}

#[test]
fn stored_tables_match_both_routes() {
    use crepant::data::DataSource;
    use crepant::groups::StoredTable;
    for (f, listed, triples) in [(Family::E7, 35, 120), (Family::E8, 65, 165)] {
        let t = StoredTable::load(f, &DataSource::embedded()).unwrap();
        assert_eq!(StoredTable::parse(&t.emit()).unwrap(), t);
        let c = g(f).compare_table(&t).unwrap();
        assert_eq!((c.listed, c.triples), (listed, triples), "{f}");
        assert!(c.mismatches.is_empty(), "{f}: {:?}", c.mismatches);
    }
    let e8 = g(Family::E8);
    assert_eq!(e8.bg_three_point(["[a^3]", "[a^4]", "[ab]"]).unwrap(), rat(1, 2));
}

#[test]
fn a_wrong_stored_entry_is_reported() {
    use crepant::groups::StoredTable;
    let t = StoredTable::parse("crepant-data 1\nkind correlators\nname E7\ncorr [b] [b] [b] 1/3\n").unwrap();
    let c = g(Family::E7).compare_table(&t).unwrap();
    // The wrong entry plus the 34 unlisted nonzero ones.
    assert_eq!(c.mismatches.len(), 35);
    assert!(c.mismatches.iter().any(|m| m.classes == ["[b]", "[b]", "[b]"] && m.characters == rat(1, 2)));
}

#[test]
fn modular_route_matches_exact_routes() {
    for f in Family::sweep(10, 10) {
        let grp = g(f);
        for (c, v) in grp.three_point_sweep().unwrap() {
            assert_eq!(v, grp.three_point_characters(c).unwrap(), "{f} {c:?}");
            assert_eq!(v, grp.three_point_count(c), "{f} {c:?}");
        }
        assert_eq!(grp.three_point_modular([0, 0, 0]).unwrap(), rat(1, grp.order() as i64));
    }
}

#[test]
fn prime_order_cyclic_groups() {
    for n in [40, 52, 60, 96, 100, 106] {
        let c = g(Family::A(n)).check_three_point_sweep().unwrap();
        assert!(c.mismatches.is_empty(), "A{n}");
        let k = n as usize + 1;
        assert_eq!(c.triples, k * (k + 1) * (k + 2) / 6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn correlators_are_symmetric_and_agree(n in 1u32..=10, d in 4u32..=9, i in 0usize..40, j in 0usize..40, k in 0usize..40) {
        for f in [Family::A(n), Family::D(d)] {
            let grp = g(f);
            let nc = grp.classes.len();
            let c = [i % nc, j % nc, k % nc];
            let v = grp.three_point_characters(c).unwrap();
            prop_assert_eq!(&v, &grp.three_point_count(c));
            prop_assert_eq!(&v, &grp.three_point_characters([c[2], c[0], c[1]]).unwrap());
            prop_assert_eq!(&v, &grp.three_point_count([c[1], c[0], c[2]]));
        }
    }

    #[test]
    fn sweeps_agree_with_counting(n in 1u32..=60, d in 4u32..=24) {
        for f in [Family::A(n), Family::D(d)] {
            let c = g(f).check_three_point_sweep().unwrap();
            prop_assert!(c.mismatches.is_empty(), "{}", f);
        }
    }

    #[test]
    fn inverse_classes_are_involutive(n in 1u32..=15, d in 4u32..=12) {
        for f in [Family::A(n), Family::D(d)] {
            let grp = g(f);
            for (i, c) in grp.classes.iter().enumerate() {
                prop_assert_eq!(grp.classes[c.inverse].inverse, i);
                prop_assert_eq!(grp.classes[c.inverse].size, c.size);
            }
        }
    }
}
