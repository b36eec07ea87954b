//! Marked mapping spaces.

use crate::error::{Budget, Result};
use crate::marked::MarkedSimplicialSet;
use crate::scat::function_complex::{function_complex_with, FunctionComplex, Restrict};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::sset::SimplicialSet;

#[derive(Debug, Clone)]
pub struct MarkedHom {
    /// Degree `k`: marked maps `X × ♭Δ[k] → Y`.
    pub flat: FunctionComplex,
    /// Edges that are marked maps `X × ♯Δ[1] → Y`.
    pub marked: Vec<bool>,
    /// Simplices all of whose edges are marked.
    pub sharp: SimplicialSet,
    pub sharp_inclusion: SimplicialMap,
}

impl MarkedHom {
    pub fn as_marked(&self) -> MarkedSimplicialSet {
        MarkedSimplicialSet::new(self.flat.sset().clone(), self.marked.clone())
    }
}

pub fn marked_hom(x: &MarkedSimplicialSet, y: &MarkedSimplicialSet, k_max: usize, budget: &Budget) -> Result<MarkedHom> {
    let restrict = Restrict {
        marking: Some((&x.marked, &y.marked)),
        ..Default::default()
    };
    let flat = function_complex_with(&x.sset, &y.sset, k_max, restrict, budget)?;
    let fs = flat.sset();
    let marked: Vec<bool> = if k_max >= 1 {
        let prod = &flat.products[1];
        fs.simplices(1)
            .map(|f| {
                let table = &flat.keyed.key(1, f)[1];
                prod.keyed
                    .keys(1)
                    .iter()
                    .enumerate()
                    .all(|(pid, &(e, _))| !x.marked[e] || y.marked[table[pid]])
            })
            .collect()
    } else {
        Vec::new()
    };
    let keep: Vec<Vec<bool>> = (0..=k_max)
        .map(|k| {
            fs.simplices(k)
                .map(|s| (0..=k).all(|i| (i + 1..=k).all(|j| marked[fs.act(k, s, &MonotoneMap::new(k, vec![i, j]))])))
                .collect()
        })
        .collect();
    let (sharp, inc) = fs.subcomplex(&keep)?;
    Ok(MarkedHom {
        flat,
        marked,
        sharp,
        sharp_inclusion: SimplicialMap::new(inc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::standard;

    #[test]
    fn point_source_recovers_marked_target() {
        let y = MarkedSimplicialSet::sharp(standard::delta(1, 2));
        let h = marked_hom(&MarkedSimplicialSet::flat(standard::point(2)), &y, 2, &Budget::default()).unwrap();
        assert_eq!(h.flat.sset().counts(), y.sset.counts());
        assert_eq!(h.marked.iter().filter(|&&m| m).count(), y.marked_count());
    }

    #[test]
    fn sharp_edge_into_flat_edge() {
        let x = MarkedSimplicialSet::sharp(standard::delta(1, 1));
        let y = MarkedSimplicialSet::flat(standard::delta(1, 1));
        let h = marked_hom(&x, &y, 0, &Budget::default()).unwrap();
        assert_eq!(h.flat.sset().count(0), 2);
    }

    #[test]
    fn sharp_target_makes_sharp_space_everything() {
        let x = MarkedSimplicialSet::flat(standard::delta(1, 2));
        let y = MarkedSimplicialSet::sharp(standard::delta(1, 2));
        let h = marked_hom(&x, &y, 1, &Budget::default()).unwrap();
        assert_eq!(h.sharp.counts(), h.flat.sset().counts());
    }
}
