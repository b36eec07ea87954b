use hgc::scat::enumerate::MapSearch;
use hgc::scat::limits::{coproduct, pi0, product, pullback, pushout};
use hgc::scat::standard;
use hgc::scat::{function_complex, nerve, FiniteCategory, Side, SimplicialMap, SimplicialSet, Validate, ViolationKind};
use hgc::Budget;

/// Weakly increasing sequences of length `k + 1` in `0..=n`, by brute force.
fn monotone_count(k: usize, n: usize) -> usize {
    let mut count = 0;
    let total = (n + 1).pow((k + 1) as u32);
    for code in 0..total {
        let mut c = code;
        let mut seq = Vec::new();
        for _ in 0..=k {
            seq.push(c % (n + 1));
            c /= n + 1;
        }
        if seq.windows(2).all(|w| w[0] <= w[1]) {
            count += 1;
        }
    }
    count
}

#[test]
fn standard_simplex_counts_match_enumeration() {
    for n in 0..=3 {
        let d = standard::delta(n, 3);
        for k in 0..=3 {
            assert_eq!(d.count(k), monotone_count(k, n), "Δ[{n}]_{k}");
        }
        assert!(d.validate().is_ok());
    }
}

#[test]
fn nerve_counts() {
    assert_eq!(nerve(&FiniteCategory::terminal(), 3).counts(), &[1, 1, 1, 1]);
    assert_eq!(nerve(&FiniteCategory::chain(1), 3).counts(), &[2, 3, 4, 5]);
    // functions [n] → {0, 1}
    let iso = nerve(&FiniteCategory::walking_iso(), 3);
    let expected: Vec<usize> = (0..=3).map(|n| 1 << (n + 1)).collect();
    assert_eq!(iso.counts(), &expected[..]);
    for c in [
        FiniteCategory::span(),
        FiniteCategory::parallel_pair(),
        FiniteCategory::cyclic(3),
    ] {
        assert!(nerve(&c, 3).validate().is_ok());
    }
}

#[test]
fn j_and_horns() {
    let j = standard::j(2);
    assert_eq!(j.count(1), 4);
    assert_eq!(j.nondegenerate(1).len(), 2);
    assert_eq!(j.counts(), nerve(&FiniteCategory::walking_iso(), 2).counts());
    let h = standard::horn(2, 1, 2).unwrap();
    assert_eq!(h.nondegenerate(0).len(), 3);
    assert_eq!(h.nondegenerate(1).len(), 2);
    assert!(h.nondegenerate(2).is_empty());
    // the missing edge is the one from 0 to 2
    assert!(h.nondegenerate(1).iter().all(|&e| h.vertices_of(1, e) != vec![0, 2]));
    assert!(standard::horn(3, 4, 3).is_err());
    assert!(standard::horn(2, 3, 2).is_err());
}

#[test]
fn non_injective_degeneracy_is_reported() {
    let s = SimplicialSet::from_tables(
        1,
        vec![2, 1],
        vec![vec![], vec![vec![0], vec![0]]],
        vec![vec![vec![0, 0]], vec![]],
        None,
    )
    .unwrap();
    let r = s.validate();
    assert!(r.has(ViolationKind::DegeneracyInjectivity), "{r}");
}

#[test]
fn product_with_a_point() {
    let d1 = standard::delta(1, 3);
    let p = product(&d1, &standard::point(3)).unwrap();
    assert!(p.first.is_bijective_onto(&d1));
    assert!(p.sset().validate().is_ok());
}

#[test]
fn pullback_of_identities() {
    let s = standard::horn(2, 0, 3).unwrap();
    let id = SimplicialMap::identity(&s);
    let pb = pullback(&s, &id, &s, &id).unwrap();
    assert!(pb.first.is_bijective_onto(&s));
    assert!(pb.second.is_bijective_onto(&s));
}

#[test]
fn pushout_collapsing_the_boundary() {
    let dim = 2;
    let p = standard::point(dim);
    let two = coproduct(&p, &p).unwrap();
    let d1 = standard::delta(1, dim);
    // vertex 0 ↦ 0, vertex 1 ↦ 1, extended over degenerates
    let boundary = MapSearch::new(two.sset(), &d1)
        .fix(0, 0, 0)
        .fix(0, 1, 1)
        .first()
        .unwrap()
        .unwrap();
    let collapse = SimplicialMap::to_point(two.sset());
    let po = pushout(two.sset(), &boundary, &d1, &collapse, &p).unwrap();
    assert_eq!(po.sset.count(0), 1);
    assert_eq!(po.sset.count(1), 2);
    assert_eq!(po.sset.nondegenerate(1).len(), 1);
    assert!(po.sset.validate().is_ok());
    assert_eq!(pi0(&po.sset).count, 1);
}

#[test]
fn components() {
    assert_eq!(pi0(&standard::delta(2, 2)).count, 1);
    let p = standard::point(2);
    assert_eq!(pi0(coproduct(&p, &p).unwrap().sset()).count, 2);
}

#[test]
fn function_complex_examples() {
    let b = Budget::default();
    let x = standard::horn(2, 1, 3).unwrap();
    let fc = function_complex(&standard::point(3), &x, 2, &b).unwrap();
    assert_eq!(fc.sset().counts(), &x.counts()[..3]);
    let d1 = standard::delta(1, 2);
    assert_eq!(
        function_complex(&d1, &d1, 0, &b).unwrap().sset().count(0),
        monotone_count(1, 1)
    );
    let iso = nerve(&FiniteCategory::walking_iso(), 2);
    assert_eq!(function_complex(&d1, &iso, 0, &b).unwrap().sset().count(0), iso.count(1));
}

#[test]
fn function_complex_needs_room() {
    let b = Budget::default();
    let d1 = standard::delta(1, 2);
    assert!(function_complex(&standard::delta(2, 2), &d1, 1, &b).is_err());
}

#[test]
fn slices() {
    let t = FiniteCategory::terminal();
    for side in [Side::Over, Side::Under] {
        let s = t.slice(0, side).unwrap();
        assert_eq!((s.category.object_count(), s.category.morphism_count()), (1, 1));
    }
    let a = FiniteCategory::chain(1);
    let over = a.slice(1, Side::Over).unwrap();
    assert_eq!(over.category.object_count(), 2);
    assert_eq!(over.category.non_identities().len(), 1);
    let under = a.slice(1, Side::Under).unwrap();
    assert_eq!((under.category.object_count(), under.category.morphism_count()), (1, 1));
    assert!(a.slice(2, Side::Over).is_err());
}

#[test]
fn product_universal_property() {
    let b = Budget::default();
    let dim = 1;
    let a = standard::delta(1, dim);
    let c = coproduct(&standard::point(dim), &standard::point(dim))
        .unwrap()
        .sset()
        .clone();
    let p = product(&a, &c).unwrap();
    for t in [standard::delta(1, dim), standard::point(dim)] {
        let into_product = MapSearch::new(&t, p.sset()).budget(&b).count().unwrap();
        let pairs = MapSearch::new(&t, &a).budget(&b).count().unwrap() * MapSearch::new(&t, &c).budget(&b).count().unwrap();
        assert_eq!(into_product, pairs);
    }
}
