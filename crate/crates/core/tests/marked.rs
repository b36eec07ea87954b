use hgc::marked::adjunction::{left_triangle, right_triangle};
use hgc::marked::equivalence::{is_witness, push_witness};
use hgc::marked::*;
use hgc::scat::limits::coproduct;
use hgc::scat::standard;
use hgc::scat::{SimplicialMap, Validate};
use hgc::{Budget, Error};

#[test]
fn flat_and_sharp() {
    let f = MarkedSimplicialSet::flat(standard::point(2));
    assert_eq!(f.marked_count(), 1);
    let s = MarkedSimplicialSet::sharp(standard::delta(1, 1));
    assert_eq!(s.marked_count(), 3);
    assert_eq!(f.underlying(), &standard::point(2));
}

#[test]
fn missing_degenerate_edge_is_reported() {
    let d1 = standard::delta(1, 2);
    let m = MarkedSimplicialSet::new(d1.clone(), vec![false; d1.count(1)]);
    assert!(!m.validate().is_ok());
    assert!(MarkedSimplicialSet::flat(d1).validate().is_ok());
}

#[test]
fn equivalence_edges() {
    let d1 = standard::delta(1, 2);
    let degenerate = d1.degen(0, 0, 0);
    let w = is_equivalence_edge(&d1, degenerate).unwrap().unwrap();
    assert!(d1.is_degenerate(2, w.sigma) && d1.is_degenerate(2, w.beta));
    assert!(is_equivalence_edge(&d1, d1.nondegenerate(1)[0]).unwrap().is_none());
    let j = standard::j(2);
    for e in j.nondegenerate(1) {
        let w = is_equivalence_edge(&j, e).unwrap().unwrap();
        assert!(is_witness(&j, e, &w));
    }
    assert!(matches!(
        is_equivalence_edge(&standard::delta(1, 1), 0),
        Err(Error::InsufficientTruncation { .. })
    ));
}

#[test]
fn equivalence_marking() {
    let d1 = standard::delta(1, 3);
    assert_eq!(mark_equivalences(&d1).unwrap(), MarkedSimplicialSet::flat(d1));
    let j = standard::j(3);
    assert_eq!(mark_equivalences(&j).unwrap(), MarkedSimplicialSet::sharp(j));
    let p = standard::point(3);
    assert_eq!(mark_equivalences(&p).unwrap(), MarkedSimplicialSet::flat(p));
}

#[test]
fn cores() {
    let p = standard::point(3);
    let three = coproduct(coproduct(&p, &p).unwrap().sset(), &p).unwrap();
    let (c, inc) = core(&standard::delta(2, 3)).unwrap();
    assert_eq!(c.counts(), three.sset().counts());
    assert!(inc.is_injective());
    let j = standard::j(3);
    assert_eq!(core(&j).unwrap().0.counts(), j.counts());
    assert_eq!(core(&p).unwrap().0.counts(), p.counts());
}

#[test]
fn witnesses_push_forward() {
    let j = standard::j(2);
    let to_point = SimplicialMap::to_point(&j);
    let pt = standard::point(2);
    for e in j.nondegenerate(1) {
        let w = is_equivalence_edge(&j, e).unwrap().unwrap();
        let pushed = push_witness(&to_point, &w);
        assert!(is_witness(&pt, to_point.apply(1, e), &pushed));
    }
}

#[test]
fn localization_examples() {
    let x = MarkedSimplicialSet::flat(standard::point(2));
    let loc = localize(&x).unwrap();
    assert_eq!(loc.sset().counts(), &[1, 2, 5]);
    let y = MarkedSimplicialSet::flat(standard::delta(1, 1));
    // |S_1| + |ℰ|·(2^{n+1} − (n+2)) at n = 1, with the two degenerate edges marked
    let n = 1;
    assert_eq!(localize(&y).unwrap().sset().count(1), 3 + 2 * ((1 << (n + 1)) - (n + 2)));
    let z = MarkedSimplicialSet::sharp(standard::delta(1, 3));
    let loc = localize(&z).unwrap();
    assert!(loc.sset().validate().is_ok());
    for &e in &loc.edges {
        assert!(is_equivalence_edge(loc.sset(), loc.p.apply(1, e)).unwrap().is_some());
    }
    // |S_n| + |ℰ|·(2^{n+1} − (n+2)) with |ℰ| = 3
    for n in 0..=3 {
        assert_eq!(loc.sset().count(n), z.sset.count(n) + 3 * ((1 << (n + 1)) - (n + 2)));
    }
}

#[test]
fn universal_maps() {
    let b = Budget::default();
    let s = standard::horn(2, 1, 2).unwrap();
    let x = MarkedSimplicialSet::flat(s.clone());
    let loc = localize(&x).unwrap();
    let id = SimplicialMap::identity(&s);
    let u = localization_universal(&x, &loc, &id, &s, &b).unwrap();
    assert_eq!(u.compose(&loc.p), id);
    assert!(u.check(loc.sset(), &s).is_ok());

    let d1 = standard::delta(1, 2);
    let sharp = MarkedSimplicialSet::sharp(d1.clone());
    let loc = localize(&sharp).unwrap();
    let j = standard::j(2);
    let g = standard::delta1_into_j(2);
    let u = localization_universal(&sharp, &loc, &g, &j, &b).unwrap();
    assert_eq!(u.compose(&loc.p), g);
    assert!(u.check(loc.sset(), &j).is_ok());

    let err = localization_universal(&sharp, &loc, &SimplicialMap::identity(&d1), &d1, &b).unwrap_err();
    assert!(matches!(err, Error::NotAnEquivalence { edge, .. } if edge == d1.nondegenerate(1)[0]));
}

#[test]
fn marked_hom_examples() {
    let b = Budget::default();
    let y = MarkedSimplicialSet::sharp(standard::delta(1, 2));
    let h = marked_hom(&MarkedSimplicialSet::flat(standard::point(2)), &y, 1, &b).unwrap();
    assert_eq!(h.flat.sset().counts(), &y.sset.counts()[..2]);
    assert!(h.marked.iter().all(|&m| m));

    let d1 = standard::delta(1, 2);
    let h = marked_hom(
        &MarkedSimplicialSet::sharp(d1.clone()),
        &MarkedSimplicialSet::flat(d1.clone()),
        0,
        &b,
    )
    .unwrap();
    assert_eq!(h.flat.sset().count(0), 2);

    let x = MarkedSimplicialSet::flat(d1.clone());
    let h = marked_hom(&x, &MarkedSimplicialSet::sharp(d1), 1, &b).unwrap();
    assert_eq!(h.sharp.counts(), h.flat.sset().counts());
}

#[test]
fn unit_and_counit() {
    let b = Budget::default();
    let u = unit(&MarkedSimplicialSet::sharp(standard::j(2))).unwrap();
    assert!(u.map.is_injective());
    let c = counit(&standard::point(2), &b).unwrap();
    assert!(c.map.is_surjective_onto(&standard::point(2)));
    assert!(!c.map.is_injective());
}

#[test]
fn triangle_identities_on_small_instances() {
    let b = Budget::default();
    for s in [
        standard::point(2),
        standard::delta(1, 2),
        standard::j(2),
        standard::horn(2, 0, 2).unwrap(),
    ] {
        assert!(left_triangle(&MarkedSimplicialSet::flat(s.clone()), &b).unwrap());
        assert!(left_triangle(&MarkedSimplicialSet::sharp(s.clone()), &b).unwrap());
        assert!(right_triangle(&s, &b).unwrap());
    }
}
