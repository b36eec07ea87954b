//! Unit and counit of localization `L` against equivalence marking `E`.

use crate::error::{Budget, Result};
use crate::marked::equivalence::mark_equivalences;
use crate::marked::localize::{localization_universal, localize, localize_map, Localization};
use crate::marked::MarkedSimplicialSet;
use crate::scat::map::SimplicialMap;
use crate::scat::sset::SimplicialSet;

/// `η_X : X → E(L(X))`.
#[derive(Debug, Clone)]
pub struct Unit {
    pub localization: Localization,
    pub target: MarkedSimplicialSet,
    pub map: SimplicialMap,
}

/// `ε_S : L(E(S)) → S`.
#[derive(Debug, Clone)]
pub struct Counit {
    pub marked: MarkedSimplicialSet,
    pub localization: Localization,
    pub map: SimplicialMap,
}

pub fn unit(x: &MarkedSimplicialSet) -> Result<Unit> {
    let localization = localize(x)?;
    let target = mark_equivalences(localization.sset())?;
    let map = localization.p.clone();
    Ok(Unit {
        localization,
        target,
        map,
    })
}

pub fn counit(s: &SimplicialSet, budget: &Budget) -> Result<Counit> {
    let marked = mark_equivalences(s)?;
    let localization = localize(&marked)?;
    let map = localization_universal(&marked, &localization, &SimplicialMap::identity(s), s, budget)?;
    Ok(Counit {
        marked,
        localization,
        map,
    })
}

/// `ε_{L X} ∘ L(η_X) = id_{L X}`.
pub fn left_triangle(x: &MarkedSimplicialSet, budget: &Budget) -> Result<bool> {
    let eta = unit(x)?;
    let lx = eta.localization.sset().clone();
    let eps = counit(&lx, budget)?;
    let l_eta = localize_map(&eta.map, &eta.localization, &eps.localization)?;
    Ok(eps.map.compose(&l_eta) == SimplicialMap::identity(&lx))
}

/// `E(ε_S) ∘ η_{E S} = id_{E S}`.
pub fn right_triangle(s: &SimplicialSet, budget: &Budget) -> Result<bool> {
    let eps = counit(s, budget)?;
    let eta = unit(&eps.marked)?;
    Ok(eps.map.compose(&eta.map) == SimplicialMap::identity(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::check_marked_map;
    use crate::scat::standard;

    #[test]
    fn unit_on_sharp_j_is_injective_marked_map() {
        let x = MarkedSimplicialSet::sharp(standard::j(2));
        let u = unit(&x).unwrap();
        assert!(u.map.is_injective());
        assert!(check_marked_map(&u.map, &x, &u.target).is_ok());
    }

    #[test]
    fn counit_on_point_collapses() {
        let p = standard::point(2);
        let c = counit(&p, &Budget::default()).unwrap();
        assert!(c.map.check(c.localization.sset(), &p).is_ok());
        assert!(c.map.is_surjective_onto(&p));
        assert!(!c.map.is_injective());
    }

    #[test]
    fn triangles_on_small_instances() {
        let b = Budget::default();
        assert!(left_triangle(&MarkedSimplicialSet::flat(standard::point(2)), &b).unwrap());
        assert!(left_triangle(&MarkedSimplicialSet::sharp(standard::delta(1, 2)), &b).unwrap());
        assert!(right_triangle(&standard::delta(1, 2), &b).unwrap());
        assert!(right_triangle(&standard::point(2), &b).unwrap());
    }
}
