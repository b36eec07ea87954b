//! Invariants over randomly drawn corpus diagrams and marked sets.

use hgc::corpus;
use hgc::grothendieck::{canonical_iso, marked_relative_nerve, relative_fiber_check};
use hgc::hocolim::{bar_construction, colim_diagram, iota_comparison};
use hgc::marked::{check_marked_map, localize, MarkedSimplicialSet};
use hgc::scat::limits::product;
use hgc::scat::nerve::chains;
use hgc::scat::Validate;
use hgc::Budget;
use proptest::prelude::*;

fn diagram(seed: u64, cat: usize, dim: usize) -> hgc::grothendieck::Diagram {
    let cats = corpus::categories();
    let c = &cats[cat % cats.len()].1;
    corpus::random_diagram(&mut corpus::rng(seed), c, dim, &Budget::default())
        .unwrap()
        .1
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn bar_counts_follow_the_chain_sum(seed in any::<u64>(), cat in 0usize..9) {
        let x = diagram(seed, cat, 3);
        let bar = bar_construction(&x).unwrap();
        prop_assert!(bar.sset().validate().is_ok());
        for n in 0..=3 {
            let expected: usize = chains(&x.base, n).iter().map(|s| x.at(s.start).count(n)).sum();
            prop_assert_eq!(bar.sset().count(n), expected);
        }
        let degenerate_marked = bar.sset().simplices(1).all(|e| !bar.sset().is_degenerate(1, e) || bar.marked.marked[e]);
        prop_assert!(degenerate_marked);
    }

    #[test]
    fn comparison_is_an_isomorphism(seed in any::<u64>(), cat in 0usize..9) {
        let x = diagram(seed, cat, 3);
        let iso = canonical_iso(&x, &Budget::default()).unwrap();
        prop_assert!(iso.is_iso(), "{}", iso);
    }

    #[test]
    fn relative_nerve_fibers(seed in any::<u64>(), cat in 0usize..9) {
        let x = diagram(seed, cat, 3).flat();
        let (rn, m) = marked_relative_nerve(&x).unwrap();
        prop_assert!(m.validate().is_ok());
        for d in 0..x.base.object_count() {
            prop_assert!(relative_fiber_check(&x, &rn, d).unwrap().is_iso());
        }
    }

    #[test]
    fn bar_comparison_is_marked_over_the_nerve(seed in any::<u64>(), cat in 0usize..9) {
        let x = diagram(seed, cat, 3).flat();
        let io = iota_comparison(&x, &Budget::default()).unwrap();
        prop_assert!(io.report.is_ok(), "{}", io.report);
        prop_assert!(io.fiber_bijective.iter().all(|&b| b));
        prop_assert!(check_marked_map(&io.map, &io.bar.marked, &io.total_marked).is_ok());
        // injective structure maps give an injective comparison; the converse fails
        if x.morphisms.iter().all(|m| m.is_injective()) {
            prop_assert!(io.injective.iter().all(|&b| b));
        }
    }

    #[test]
    fn localization_cardinality(seed in any::<u64>(), v in 0usize..7) {
        let (_, s) = corpus::values(3)[v].clone();
        let marks = corpus::random_marking(&mut corpus::rng(seed), &s);
        let x = MarkedSimplicialSet::new(s.clone(), marks);
        let loc = localize(&x).unwrap();
        let e = x.marked_count();
        for n in 0..=3 {
            prop_assert_eq!(loc.sset().count(n), s.count(n) + e * ((1usize << (n + 1)) - (n + 2)));
        }
        prop_assert!(loc.p.is_injective());
        prop_assert!(loc.sset().validate().is_ok());
    }

    #[test]
    fn product_counts_multiply(a in 0usize..7, b in 0usize..7) {
        let vals = corpus::values(3);
        let p = product(&vals[a].1, &vals[b].1).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(p.sset().count(n), vals[a].1.count(n) * vals[b].1.count(n));
        }
        prop_assert!(p.sset().validate().is_ok());
    }

    #[test]
    fn colimit_injections_are_simplicial(seed in any::<u64>(), cat in 0usize..9) {
        let x = diagram(seed, cat, 2);
        let col = colim_diagram(&x).unwrap();
        prop_assert!(col.sset.validate().is_ok());
        for (d, inj) in col.injections.iter().enumerate() {
            prop_assert!(inj.check(x.at(d), &col.sset).is_ok());
        }
        for f in 0..x.base.morphism_count() {
            let t = x.base.target(f);
            prop_assert_eq!(col.injections[t].compose(x.map(f)), col.injections[x.base.source(f)].clone());
        }
    }
}
