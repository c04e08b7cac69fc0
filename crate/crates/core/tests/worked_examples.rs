//! Small worked examples with answers checked by brute force where possible.

use std::collections::BTreeSet;

use hg_core::automorphisms::{
    automorphism_group, char_simple_decompose, characteristic_subgroups, conj_map, restrict, Automorphism, CharSimple,
};
use hg_core::catalog::{alt, build, bundled_census, cyclic, parse_group_file, product, psl2, serialize, sl2};
use hg_core::group::{
    all_subgroups, are_isomorphic, center, close_generated, derived_series, is_simple, normal_subgroups, quotient,
    GroupTable, Subgroup, SUBGROUP_CAP,
};
use hg_core::holomorph::{build_hol, HolElement};
use hg_core::HgError;

fn g(spec: &str) -> GroupTable {
    build(spec).unwrap()
}

fn iso(a: &GroupTable, b: &GroupTable) -> bool {
    are_isomorphic(a, b).is_some()
}

#[test]
fn table_validation() {
    let t = GroupTable::build_table(&[vec![0]], "1").unwrap();
    assert_eq!(t.order(), 1);
    let z3 = GroupTable::build_table(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], "Z3").unwrap();
    let mut orders = z3.elt_orders().to_vec();
    orders.sort();
    assert_eq!(orders, vec![1, 3, 3]);
    let mut z4: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
    z4[1][2] = 0;
    z4[1][3] = 3;
    assert!(matches!(GroupTable::build_table(&z4, "bad"), Err(HgError::NotAGroup { .. })));
}

#[test]
fn closures() {
    let s3 = g("sym(3)");
    let three = (0..6).find(|&x| s3.elt_order(x) == 3).unwrap();
    assert_eq!(close_generated(&s3, &[three]).len(), 3);
    assert_eq!(close_generated(&s3, &[]).elements(), &[0]);
    let a5 = alt(5).unwrap();
    let five = (0..60).find(|&x| a5.elt_order(x) == 5).unwrap();
    let gen = (0..60)
        .filter(|&x| a5.elt_order(x) == 2)
        .find(|&x| close_generated(&a5, &[five, x]).len() == 60);
    assert!(gen.is_some());
}

/// Every subgroup of these groups is generated by at most two elements, so
/// closures of pairs enumerate the lattice.
fn pair_closures(g: &GroupTable) -> usize {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            seen.insert(close_generated(g, &[a, b]).elements().to_vec());
        }
    }
    seen.len()
}

#[test]
fn subgroup_lattices() {
    for (spec, count) in [("cyclic(6)", 4), ("sym(3)", 6), ("alt(5)", 59)] {
        let t = g(spec);
        let subs = all_subgroups(&t, SUBGROUP_CAP).unwrap();
        assert_eq!(subs.len(), count, "{spec}");
        assert_eq!(pair_closures(&t), count, "{spec}");
    }
    let sizes: BTreeSet<usize> = all_subgroups(&g("cyclic(6)"), SUBGROUP_CAP).unwrap().iter().map(Subgroup::len).collect();
    assert_eq!(sizes, BTreeSet::from([1, 2, 3, 6]));
}

#[test]
fn centers_and_derived_series() {
    let c6 = g("cyclic(6)");
    assert_eq!(center(&c6).len(), 6);
    assert_eq!(center(&g("sym(3)")).len(), 1);
    let s = sl2(5).unwrap();
    let brute = (0..120).filter(|&z| (0..120).all(|x| s.mul(z, x) == s.mul(x, z))).count();
    assert_eq!(brute, 2);
    assert_eq!(center(&s).len(), 2);

    let a5 = derived_series(&alt(5).unwrap());
    assert!(a5.is_perfect() && !a5.is_solvable());
    let s3 = derived_series(&g("sym(3)"));
    assert!(s3.is_solvable());
    assert_eq!(s3.derived_subgroup().len(), 3);
    let c4 = derived_series(&g("cyclic(4)"));
    assert!(c4.is_solvable() && !c4.is_perfect());
    assert_eq!(c4.derived_subgroup().len(), 1);
}

#[test]
fn quotients() {
    let s = sl2(5).unwrap();
    let (q, _) = quotient(&s, &center(&s)).unwrap();
    assert!(iso(&q, &alt(5).unwrap()));
    let c6 = g("cyclic(6)");
    let (same, _) = quotient(&c6, &Subgroup::trivial()).unwrap();
    assert!(iso(&same, &c6));
    let two = close_generated(&c6, &[(0..6).find(|&x| c6.elt_order(x) == 2).unwrap()]);
    let (c3, _) = quotient(&c6, &two).unwrap();
    assert!(iso(&c3, &g("cyclic(3)")));
}

#[test]
fn isomorphism_examples() {
    assert!(!iso(&g("cyclic(6)"), &g("sym(3)")));
    let d4a = g("dihedral(4)");
    let d4b = g("semidirect(cyclic(4),cyclic(2),inv)");
    let phi = are_isomorphic(&d4a, &d4b).unwrap();
    for x in 0..8 {
        for y in 0..8 {
            assert_eq!(phi[d4a.mul(x, y)], d4b.mul(phi[x], phi[y]));
        }
    }
    assert!(iso(&alt(5).unwrap(), &psl2(5).unwrap()));
    assert!(iso(&psl2(4).unwrap(), &alt(5).unwrap()));
}

#[test]
fn constructors() {
    let c15 = g("cyclic(15)");
    assert!(c15.order() == 15 && c15.is_abelian());
    let s = g("SL2(5)");
    assert_eq!(s.order(), 120);
    assert!(derived_series(&s).is_perfect());
    let a5 = g("alt(5)");
    assert_eq!(normal_subgroups(&a5).len(), 2);
    assert!(is_simple(&a5));

    let a5c2 = product(&a5, &cyclic(2).unwrap(), None).unwrap();
    assert_eq!(a5c2.order(), 120);
    assert!(!derived_series(&a5c2).is_perfect());
    assert!(iso(&g("semidirect(cyclic(3),cyclic(2),inversion)"), &g("sym(3)")));
    let f21 = g("semidirect(cyclic(7),cyclic(3),pow2)");
    assert!(f21.order() == 21 && !f21.is_abelian());
}

#[test]
fn file_formats() {
    let c2 = parse_group_file("gtab 1\n2\n0 1\n1 0\n").unwrap();
    assert!(iso(&c2, &g("cyclic(2)")));
    let s3 = g("sym(3)");
    assert_eq!(parse_group_file(&serialize(&s3)).unwrap().rows(), s3.rows());
    let a5 = parse_group_file("pgen 1 table\n5\n(0 1 2 3 4)\n(0 1 2)\n").unwrap();
    assert_eq!(a5.order(), 60);
}

#[test]
fn bundled_tiers() {
    let t15 = bundled_census(15).unwrap();
    assert_eq!(t15.entries.len(), 1);
    assert!(iso(&t15.entries[0].table, &g("cyclic(15)")));

    let t120 = bundled_census(120).unwrap();
    let ins: Vec<_> = t120.insolvable().collect();
    assert_eq!(ins.len(), 3);
    for i in 0..3 {
        for j in i + 1..3 {
            assert!(!iso(&ins[i].table, &ins[j].table));
        }
    }
    let t336 = bundled_census(336).unwrap();
    let perfect: Vec<_> = t336.entries.iter().filter(|e| derived_series(&e.table).is_perfect()).collect();
    assert_eq!(perfect.len(), 1);
    assert!(iso(&perfect[0].table, &sl2(7).unwrap()));
}

#[test]
fn automorphism_examples() {
    assert_eq!(automorphism_group(&g("cyclic(15)")).unwrap().len(), 8);
    assert_eq!(automorphism_group(&g("abelian(2,2)")).unwrap().len(), 6);
    let a = automorphism_group(&sl2(5).unwrap()).unwrap();
    assert_eq!(a.len(), 120);
    assert_eq!(a.inner().len(), 60);

    let s3 = g("sym(3)");
    assert!(conj_map(&s3, 0).is_identity());
    let c6 = g("cyclic(6)");
    assert!((0..6).all(|e| conj_map(&c6, e).is_identity()));
    let t = (0..6).find(|&x| s3.elt_order(x) == 2).unwrap();
    let c = conj_map(&s3, t);
    assert!(!c.is_identity() && c.compose(&c).is_identity());
}

#[test]
fn characteristic_examples() {
    let sizes = |spec: &str| -> (Vec<usize>, Vec<usize>) {
        let cs = characteristic_subgroups(&g(spec)).unwrap();
        let all = cs.iter().map(|c| c.subgroup.len()).collect();
        let max = cs.iter().filter(|c| c.maximal).map(|c| c.subgroup.len()).collect();
        (all, max)
    };
    assert_eq!(sizes("alt(5)"), (vec![1, 60], vec![1]));
    assert_eq!(sizes("cyclic(4)"), (vec![1, 2, 4], vec![2]));
    assert_eq!(sizes("sl2(5)"), (vec![1, 2, 120], vec![2]));
}

#[test]
fn restriction_examples() {
    let c4 = g("cyclic(4)");
    let two = close_generated(&c4, &[(0..4).find(|&x| c4.elt_order(x) == 2).unwrap()]);
    assert!(restrict(&Automorphism::identity(4), &two).unwrap().is_identity());
    let inv = Automorphism::from_images(&c4, (0..4).map(|x| c4.inv(x)).collect()).unwrap();
    assert!(restrict(&inv, &two).unwrap().is_identity());
}

#[test]
fn characteristically_simple_examples() {
    match char_simple_decompose(&g("abelian(2,2)")) {
        CharSimple::Power { t, m } => assert!(t.order() == 2 && m == 2),
        other => panic!("{other:?}"),
    }
    match char_simple_decompose(&alt(5).unwrap()) {
        CharSimple::Power { t, m } => assert!(t.order() == 60 && m == 1),
        other => panic!("{other:?}"),
    }
    let a5 = alt(5).unwrap();
    match char_simple_decompose(&product(&a5, &a5, None).unwrap()) {
        CharSimple::Power { t, m } => assert!(iso(&t, &a5) && m == 2),
        other => panic!("{other:?}"),
    }
    assert!(matches!(char_simple_decompose(&g("cyclic(4)")), CharSimple::NotCharSimple));
}

#[test]
fn holomorph_examples() {
    assert_eq!(build_hol(&g("cyclic(3)")).unwrap().order(), 6);
    let h4 = build_hol(&g("cyclic(4)")).unwrap();
    assert_eq!(h4.order(), 8);
    assert!(iso(&h4.table().unwrap(), &g("dihedral(4)")));
    assert_eq!(build_hol(&g("abelian(2,2)")).unwrap().order(), 24);

    let (l, r) = build_hol(&g("cyclic(6)")).unwrap().lambda_rho_embed();
    assert_eq!(l, r);
    let hs3 = build_hol(&g("sym(3)")).unwrap();
    let (l, r) = hs3.lambda_rho_embed();
    let meet: Vec<_> = l.iter().filter(|x| r.contains(x)).collect();
    assert_eq!(meet, vec![&HolElement::IDENTITY]);

    assert!(hs3.is_regular(&r).unwrap());
    let stab: Vec<HolElement> = (0..hs3.aut().len()).map(|a| HolElement::new(0, a)).collect();
    assert!(!hs3.is_regular(&stab).unwrap());
}

#[test]
fn klein_subgroups_of_hol_c4() {
    let hol = build_hol(&g("cyclic(4)")).unwrap();
    let elems: Vec<HolElement> = (0..8).map(|i| hol.element(i)).collect();
    let involutions: Vec<HolElement> = elems
        .iter()
        .copied()
        .filter(|&h| h != HolElement::IDENTITY && hol.compose(h, h) == HolElement::IDENTITY)
        .collect();
    let mut kleins: BTreeSet<Vec<HolElement>> = BTreeSet::new();
    for &a in &involutions {
        for &b in &involutions {
            let ab = hol.compose(a, b);
            if a < b && ab == hol.compose(b, a) {
                let mut k = vec![HolElement::IDENTITY, a, b, ab];
                k.sort();
                kleins.insert(k);
            }
        }
    }
    // Hol(C4) ≅ D4 has two Klein four-subgroups; one acts regularly.
    assert_eq!(kleins.len(), 2);
    let regular = kleins.iter().filter(|k| hol.is_regular(k).unwrap()).count();
    assert_eq!(regular, 1);
}
