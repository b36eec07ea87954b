use hgc::grothendieck::*;
use hgc::marked::{mark_equivalences, MarkedSimplicialSet};
use hgc::scat::bisimplicial::BisimplicialSet;
use hgc::scat::function_complex::function_complex;
use hgc::scat::standard;
use hgc::scat::{nerve, nerve_keyed, Chain, FiniteCategory, MonotoneMap, SimplicialMap, Validate};
use hgc::Budget;

fn arrow_diagram(x0: hgc::scat::SimplicialSet, x1: hgc::scat::SimplicialSet, f: SimplicialMap) -> Diagram {
    let c = FiniteCategory::chain(1);
    let mut given = vec![None; c.morphism_count()];
    given[c.hom(0, 1)[0]] = Some(f);
    Diagram::from_generators(c, vec![x0, x1], given).unwrap()
}

/// `Δ[0] → Δ[1]` picking vertex 0.
fn vertex_zero_diagram(dim: usize) -> Diagram {
    let p = standard::point(dim);
    let d1 = standard::delta(1, dim);
    let f = SimplicialMap::constant_at(&p, &d1, 0);
    arrow_diagram(p, d1, f)
}

/// `Δ[1] → Δ[0]`, which collapses.
fn collapse_diagram(dim: usize) -> Diagram {
    let p = standard::point(dim);
    let d1 = standard::delta(1, dim);
    arrow_diagram(d1.clone(), p.clone(), SimplicialMap::to_point(&d1))
}

#[test]
fn gerbe_over_arrow_with_vertex_source() {
    let x = vertex_zero_diagram(2);
    let b = Budget::default();
    let tower = GerbeTower::new(&x, 0, &b).unwrap();
    let f = x.base.hom(0, 1)[0];
    let g = tower
        .gerbe(&Chain {
            start: 0,
            arrows: vec![f],
        })
        .unwrap();
    // oracle: edges β of Δ[1] with d₁β = 0
    let d1 = standard::delta(1, 2);
    let expected = d1.simplices(1).filter(|&e| d1.face(1, 1, e) == 0).count();
    assert_eq!(g.sset().count(0), expected);
    assert_eq!(expected, 2);
}

#[test]
fn gerbe_over_identity_is_the_path_space() {
    let s = standard::horn(2, 1, 3).unwrap();
    let x = Diagram::constant(FiniteCategory::terminal(), s.clone());
    let b = Budget::default();
    let tower = GerbeTower::new(&x, 1, &b).unwrap();
    for n in 1..=2 {
        let chain = Chain {
            start: 0,
            arrows: vec![x.base.identity(0); n],
        };
        let g = tower.gerbe(&chain).unwrap();
        let fc = function_complex(&standard::delta(n, 3), &s, 1, &b).unwrap();
        assert_eq!(g.sset().counts(), fc.sset().counts());
        assert!(g.p2.is_bijective_onto(g.complex.sset()));
        assert!(g.p2.check(g.sset(), g.complex.sset()).is_ok());
    }
}

#[test]
fn gerbes_validate() {
    let x = collapse_diagram(3);
    let b = Budget::default();
    let tower = GerbeTower::new(&x, 1, &b).unwrap();
    for n in 0..=2 {
        for chain in hgc::scat::nerve::chains(&x.base, n) {
            let g = tower.gerbe(&chain).unwrap();
            assert!(g.sset().validate().is_ok(), "{:?}", chain);
        }
    }
}

#[test]
fn space_validates_and_its_column_is_the_total() {
    let x = collapse_diagram(3);
    let b = Budget::default();
    let sp = grothendieck_space(&x, 2, 1, &b).unwrap();
    assert!(sp.space.validate().is_ok(), "{}", sp.space.validate());
    let total = grothendieck_total(&x.truncate(2).unwrap(), &b).unwrap();
    let col = sp.space.column(0).unwrap();
    assert_eq!(col.counts(), total.sset().counts());
    assert_eq!(col.face_table(1, 0), total.sset().face_table(1, 0));
    assert_eq!(col.face_table(2, 1), total.sset().face_table(2, 1));
}

#[test]
fn terminal_base_space_rows_are_path_spaces() {
    let s = standard::delta(1, 3);
    let x = Diagram::constant(FiniteCategory::terminal(), s.clone());
    let b = Budget::default();
    let sp: BisimplicialSet = grothendieck_space(&x, 2, 1, &b).unwrap().space;
    for n in 0..=2 {
        let fc = function_complex(&standard::delta(n, 3), &s, 1, &b).unwrap();
        assert_eq!(sp.row(n).unwrap().counts(), fc.sset().counts());
    }
}

#[test]
fn constant_point_total_is_the_nerve() {
    let b = Budget::default();
    for c in [FiniteCategory::chain(2), FiniteCategory::span(), FiniteCategory::cyclic(2)] {
        let x = Diagram::constant(c.clone(), standard::point(3));
        let total = grothendieck_total(&x, &b).unwrap();
        let n = nerve(&c, 3);
        assert!(total.projection.is_bijective_onto(&n));
        assert!(total.projection.check(total.sset(), &n).is_ok());
    }
}

#[test]
fn two_points_over_an_arrow_give_an_edge() {
    let p = standard::point(3);
    let x = arrow_diagram(p.clone(), p.clone(), SimplicialMap::identity(&p));
    let total = grothendieck_total(&x, &Budget::default()).unwrap();
    assert_eq!(total.sset().counts(), standard::delta(1, 3).counts());
}

#[test]
fn terminal_base_total_matches_value() {
    let s = standard::horn(2, 0, 3).unwrap();
    let x = Diagram::constant(FiniteCategory::terminal(), s.clone());
    let iso = canonical_iso(&x, &Budget::default()).unwrap();
    assert!(iso.is_iso(), "{iso}");
    assert_eq!(iso.total.sset().counts(), s.counts());
}

#[test]
fn canonical_iso_on_collapsing_and_injective_arrows() {
    let b = Budget::default();
    for x in [collapse_diagram(3), vertex_zero_diagram(3)] {
        let iso = canonical_iso(&x, &b).unwrap();
        assert!(iso.is_iso(), "{iso}");
        let (total, tower) = grothendieck_total_with(&x, &b).unwrap();
        let r = check_total_remarks(&total, &tower).unwrap();
        assert!(r.is_ok(), "{r}");
    }
}

#[test]
fn fiber_laws_on_an_arrow() {
    let b = Budget::default();
    let x = collapse_diagram(3);
    let iso = canonical_iso(&x, &b).unwrap();
    for d in 0..2 {
        let r = relative_fiber_check(&x, &iso.relative, d).unwrap();
        assert!(r.is_iso(), "{}", r.report);
        let t = total_fiber_check(&x, &iso, d).unwrap();
        assert!(t.is_iso(), "{}", t.report);
    }
}

#[test]
fn fiber_of_identity_is_the_simplex() {
    let s = standard::delta(2, 3);
    let id = SimplicialMap::identity(&s);
    for n in 0..=2 {
        for sigma in s.simplices(n) {
            let f = fiber(&id, &s, &s, n, sigma).unwrap();
            assert_eq!(f.sset().counts(), standard::delta(n, 3).counts());
        }
    }
}

#[test]
fn relative_nerve_edges_over_an_arrow() {
    let x = collapse_diagram(2);
    let rn = relative_nerve(&x).unwrap();
    let f = x.base.hom(0, 1)[0];
    // over f: pairs (source vertex a, edge h of X(1) from X(f)(a))
    let over = rn.keyed.keys(1).iter().filter(|k| k.chain.arrows == vec![f]).count();
    let expected: usize = x
        .at(0)
        .simplices(0)
        .map(|a| {
            let start = x.map(f).apply(0, a);
            x.at(1).simplices(1).filter(|&h| x.at(1).face(1, 1, h) == start).count()
        })
        .sum();
    assert_eq!(over, expected);
}

#[test]
fn marked_relative_nerve_markings() {
    // sharp values: every edge marked
    let x = collapse_diagram(2).sharp();
    let (_, m) = marked_relative_nerve(&x).unwrap();
    assert!(m.marked.iter().all(|&e| e));
    // flat values over a discrete base: only degenerate edges
    let d1 = standard::delta(1, 2);
    let y = Diagram::constant(FiniteCategory::discrete(2), d1).flat();
    let (rn, m) = marked_relative_nerve(&y).unwrap();
    assert_eq!(m.marked, rn.sset().degenerate_flags(1));
    // groupoid nerves marked by equivalences: every edge marked
    let j = nerve(&FiniteCategory::walking_iso(), 2);
    let marks = mark_equivalences(&j).unwrap().marked;
    let z = Diagram::constant(FiniteCategory::chain(1), j).with_markings(vec![marks.clone(), marks]);
    let (_, m) = marked_relative_nerve(&z).unwrap();
    assert!(m.marked.iter().all(|&e| e));
}

#[test]
fn left_adjoint_slice_examples() {
    let c = FiniteCategory::chain(1);
    let n = nerve(&c, 3);
    let sharp = MarkedSimplicialSet::sharp(n.clone());
    let id = SimplicialMap::identity(&n);
    let over1 = left_adjoint_slice(&sharp, &id, &c, 1).unwrap();
    assert_eq!(over1.marked.sset.counts(), n.counts());
    let over0 = left_adjoint_slice(&sharp, &id, &c, 0).unwrap();
    assert_eq!(over0.marked.sset.counts(), over0.slice.nerve.sset.counts());
    // discrete base: the fiber
    let d = FiniteCategory::discrete(2);
    let x = Diagram::constant(d.clone(), standard::delta(1, 3));
    let total = grothendieck_total(&x, &Budget::default()).unwrap();
    let m = MarkedSimplicialSet::flat(total.sset().clone());
    let l = left_adjoint_slice(&m, &total.projection, &d, 1).unwrap();
    let v = total.nerve.id(0, &Chain::vertex(1)).unwrap();
    let f = fiber(&total.projection, total.sset(), &total.nerve.sset, 0, v).unwrap();
    assert_eq!(l.marked.sset.counts(), f.sset().counts());
}

#[test]
fn left_adjoint_is_functorial() {
    let c = FiniteCategory::chain(2);
    let n = nerve(&c, 3);
    let sharp = MarkedSimplicialSet::sharp(n.clone());
    let id = SimplicialMap::identity(&n);
    let l: Vec<LeftSlice> = (0..3).map(|d| left_adjoint_slice(&sharp, &id, &c, d).unwrap()).collect();
    let u01 = c.hom(0, 1)[0];
    let u12 = c.hom(1, 2)[0];
    let u02 = c.compose(u12, u01);
    let m01 = left_adjoint_map(&c, u01, &l[0], &l[1]).unwrap();
    let m12 = left_adjoint_map(&c, u12, &l[1], &l[2]).unwrap();
    let m02 = left_adjoint_map(&c, u02, &l[0], &l[2]).unwrap();
    assert_eq!(m12.compose(&m01), m02);
    assert!(m01.check(&l[0].marked.sset, &l[1].marked.sset).is_ok());
}

#[test]
fn right_adjoint_examples() {
    let b = Budget::default();
    // terminal base: Y itself
    let y = standard::delta(1, 3);
    let t = FiniteCategory::terminal();
    let q = SimplicialMap::to_point(&y);
    let r = right_adjoint_value(&y, &q, &t, 0, 2, &b).unwrap();
    assert_eq!(r.sset().counts(), y.truncate(2).unwrap().counts());
    // Y the nerve: a point per degree
    let c = FiniteCategory::chain(1);
    let n = nerve(&c, 3);
    let r = right_adjoint_value(&n, &SimplicialMap::identity(&n), &c, 0, 1, &b).unwrap();
    assert_eq!(r.sset().counts(), &[1, 1]);
    // discrete base: the fiber
    let d = FiniteCategory::discrete(2);
    let x = Diagram::constant(d.clone(), standard::delta(1, 3));
    let total = grothendieck_total(&x, &b).unwrap();
    let r = right_adjoint_value(total.sset(), &total.projection, &d, 0, 2, &b).unwrap();
    assert_eq!(r.sset().counts(), &[2, 3, 4]);
}

#[test]
fn right_adjoint_is_functorial() {
    let b = Budget::default();
    let c = FiniteCategory::chain(2);
    let n = nerve(&c, 4);
    let id = SimplicialMap::identity(&n);
    let r: Vec<RightValue> = (0..3).map(|d| right_adjoint_value(&n, &id, &c, d, 1, &b).unwrap()).collect();
    let u01 = c.hom(0, 1)[0];
    let u12 = c.hom(1, 2)[0];
    let m01 = right_adjoint_map(&c, u01, &r[0], &r[1]).unwrap();
    let m12 = right_adjoint_map(&c, u12, &r[1], &r[2]).unwrap();
    let m02 = right_adjoint_map(&c, c.compose(u12, u01), &r[0], &r[2]).unwrap();
    assert_eq!(m12.compose(&m01), m02);
}

#[test]
fn unit_map_on_terminal_base() {
    let b = Budget::default();
    let s = standard::delta(1, 3);
    let x = Diagram::constant(FiniteCategory::terminal(), s.clone()).sharp();
    let u = unit_map(&x, 0, 2, &b).unwrap();
    assert!(u.report.is_ok(), "{}", u.report);
    assert!(u.map.is_bijective_onto(u.hom.sset()));
}

#[test]
fn unit_map_vertex_lands_in_the_fiber() {
    let b = Budget::default();
    let x = collapse_diagram(3).flat();
    let u = unit_map(&x, 1, 0, &b).unwrap();
    assert!(u.report.is_ok(), "{}", u.report);
    // 1/D has one object (id_1); η(x) at the identity chain is x in the fiber
    let only = u.slice.nerve.id(0, &Chain::vertex(0)).unwrap();
    let value = u.hom.evaluate(0, u.map.apply(0, 0), 0, only, &MonotoneMap::identity(0));
    let (chain, _) = u.iso.total.keyed.key(0, value);
    assert_eq!(chain, &Chain::vertex(1));
}

#[test]
fn unit_map_is_natural_over_an_arrow() {
    let b = Budget::default();
    let x = vertex_zero_diagram(3).sharp();
    let u0 = unit_map(&x, 0, 1, &b).unwrap();
    let u1 = unit_map(&x, 1, 1, &b).unwrap();
    assert!(u0.report.is_ok() && u1.report.is_ok());
    let f = x.base.hom(0, 1)[0];
    let reind = hgc::scat::category::reindex(&x.base, f, &u1.slice.slice, &u0.slice.slice).unwrap();
    let nf = hgc::scat::nerve_map(&u1.slice.nerve, &reind, &u0.slice.nerve);
    let pre = hgc::scat::function_complex::precompose(&u0.hom, &nf, &u1.hom).unwrap();
    let xf = x.map(f).truncate(1);
    assert_eq!(u1.map.compose(&xf), pre.compose(&u0.map));
}

#[test]
fn cotensor_examples() {
    let b = Budget::default();
    let c = FiniteCategory::chain(1);
    let nk = nerve_keyed(&c, 3);
    let n = nk.sset.clone();
    // A = Δ[0]: X itself
    let x = collapse_diagram(3);
    let total = grothendieck_total(&x, &b).unwrap();
    let ct = cotensor_over(&standard::point(3), total.sset(), &total.projection, &n, 2, &b).unwrap();
    assert_eq!(ct.sset().counts(), total.sset().truncate(2).unwrap().counts());
    // X the nerve: the nerve
    let id = SimplicialMap::identity(&n);
    let ct = cotensor_over(&standard::delta(1, 3), &n, &id, &n, 2, &b).unwrap();
    assert_eq!(ct.sset().counts(), n.truncate(2).unwrap().counts());
    // A = Δ[1], X = Δ[1] over itself: a vertex is a map constant at a vertex
    let d1 = standard::delta(1, 3);
    let ct = cotensor_over(&d1, &d1, &SimplicialMap::identity(&d1), &d1, 0, &b).unwrap();
    let brute = hgc::scat::MapSearch::new(&hgc::scat::limits::product(&d1, &standard::point(3)).unwrap().keyed.sset, &d1)
        .count()
        .unwrap();
    assert_eq!(brute, 3);
    assert_eq!(ct.sset().count(0), 2);
}
