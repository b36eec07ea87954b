//! The relative nerve `N_f(D)` of a diagram.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grothendieck::diagram::Diagram;
use crate::marked::MarkedSimplicialSet;
use crate::scat::category::FiniteCategory;
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::nerve::{nerve_keyed, Chain};
use crate::scat::sset::{Keyed, SimplicialSet};

/// An `n`-simplex: a chain `c_0 → … → c_n` and, for every nonempty
/// `J ⊆ [n]` (as a bitmask), a `(|J|−1)`-simplex `tau[J − 1]` of `f(c_{max J})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RelKey {
    pub chain: Chain,
    pub tau: Vec<usize>,
}

impl RelKey {
    pub fn tau(&self, mask: usize) -> usize {
        self.tau[mask - 1]
    }
}

pub(crate) fn mask_elements(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|&b| mask & (1 << b) != 0).collect()
}

pub(crate) fn mask_max(mask: usize) -> usize {
    usize::BITS as usize - 1 - mask.leading_zeros() as usize
}

/// Subsets of `[n]` ordered by size, then by value.
fn masks_by_size(n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..(1usize << (n + 1))).collect();
    v.sort_by_key(|&m| (m.count_ones(), m));
    v
}

/// `Δ^I → Δ^J` for `I ⊆ J`, as an operator `[|I|−1] → [|J|−1]`.
fn sub_inclusion(i: usize, j: usize) -> MonotoneMap {
    let je = mask_elements(j);
    let values = mask_elements(i)
        .iter()
        .map(|e| je.iter().position(|x| x == e).unwrap())
        .collect();
    MonotoneMap::new(je.len() - 1, values)
}

/// Reindex a simplex along `α : [m] → [n]`.
pub fn act_key(c: &FiniteCategory, f: &Diagram, key: &RelKey, alpha: &MonotoneMap) -> RelKey {
    let m = alpha.domain_dim();
    let tau = (1..(1usize << (m + 1)))
        .map(|mask| {
            let elems = mask_elements(mask);
            let image: Vec<usize> = elems.iter().map(|&e| alpha.apply(e)).collect();
            let mut image_mask = 0usize;
            for &v in &image {
                image_mask |= 1 << v;
            }
            let ranked = mask_elements(image_mask);
            let eps = MonotoneMap::new(
                ranked.len() - 1,
                image.iter().map(|v| ranked.iter().position(|r| r == v).unwrap()).collect(),
            );
            let object = key.chain.object(c, mask_max(image_mask));
            f.at(object).act(ranked.len() - 1, key.tau(image_mask), &eps)
        })
        .collect();
    RelKey {
        chain: key.chain.act(c, alpha),
        tau,
    }
}

/// Condition (iii) for every pair `I ⊆ J`.
pub fn is_compatible(c: &FiniteCategory, f: &Diagram, key: &RelKey) -> bool {
    let n = key.chain.len();
    let full = (1usize << (n + 1)) - 1;
    (1..=full).all(|j| {
        let jmax = mask_max(j);
        let xj = f.at(key.chain.object(c, jmax));
        let dj = j.count_ones() as usize - 1;
        let mut i = j;
        loop {
            if i != 0 {
                let imax = mask_max(i);
                let arrow = key.chain.between(c, imax, jmax);
                let lhs = f.map(arrow).apply(i.count_ones() as usize - 1, key.tau(i));
                let rhs = xj.act(dj, key.tau(j), &sub_inclusion(i, j));
                if lhs != rhs {
                    return false;
                }
            }
            if i == 0 {
                break;
            }
            i = (i - 1) & j;
        }
        true
    })
}

#[derive(Debug, Clone)]
pub struct RelativeNerve {
    pub keyed: Keyed<RelKey>,
    pub nerve: Keyed<Chain>,
    /// `p_f : N_f(D) → N(D)`.
    pub projection: SimplicialMap,
}

impl RelativeNerve {
    pub fn sset(&self) -> &SimplicialSet {
        &self.keyed.sset
    }
}

/// All compatible families over `chain`, built subset by subset: a
/// candidate for `τ^J` must restrict to the known `τ^{J∖{j}}` on every
/// codimension-one face.
fn families(c: &FiniteCategory, f: &Diagram, chain: &Chain) -> Vec<Vec<usize>> {
    let n = chain.len();
    let order = masks_by_size(n);
    let mut out = Vec::new();
    let mut tau = vec![usize::MAX; (1 << (n + 1)) - 1];
    fn go(
        c: &FiniteCategory,
        f: &Diagram,
        chain: &Chain,
        order: &[usize],
        pos: usize,
        tau: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == order.len() {
            out.push(tau.clone());
            return;
        }
        let j = order[pos];
        let jmax = mask_max(j);
        let x = f.at(chain.object(c, jmax));
        let dj = j.count_ones() as usize - 1;
        let elems = mask_elements(j);
        for y in x.simplices(dj) {
            let ok = dj == 0
                || elems.iter().enumerate().all(|(t, &e)| {
                    let i = j & !(1 << e);
                    let face = x.face(dj, t, y);
                    if e == jmax {
                        let arrow = chain.between(c, mask_max(i), jmax);
                        f.map(arrow).apply(dj - 1, tau[i - 1]) == face
                    } else {
                        tau[i - 1] == face
                    }
                });
            if ok {
                tau[j - 1] = y;
                go(c, f, chain, order, pos + 1, tau, out);
            }
        }
        tau[j - 1] = usize::MAX;
    }
    go(c, f, chain, &order, 0, &mut tau, &mut out);
    out
}

pub fn relative_nerve(f: &Diagram) -> Result<RelativeNerve> {
    let c = &f.base;
    let dim = f.dim();
    let nk = nerve_keyed(c, dim);
    let levels = (0..=dim)
        .map(|n| {
            nk.keys(n)
                .iter()
                .flat_map(|chain| {
                    families(c, f, chain).into_iter().map(move |tau| RelKey {
                        chain: chain.clone(),
                        tau,
                    })
                })
                .collect()
        })
        .collect();
    let keyed = Keyed::build(
        dim,
        levels,
        |n, i, k| act_key(c, f, k, &MonotoneMap::coface(n, i)),
        |n, j, k| act_key(c, f, k, &MonotoneMap::codegeneracy(n, j)),
        |n, k| {
            let full = (1usize << (n + 1)) - 1;
            let top = f.at(k.chain.last_object(c)).label(n, k.tau(full));
            format!("{}|{}", k.chain.label(c), top)
        },
    )?;
    let projection = SimplicialMap::new(
        (0..=dim)
            .map(|n| keyed.keys(n).iter().map(|k| nk.id(n, &k.chain).unwrap()).collect())
            .collect(),
    );
    Ok(RelativeNerve {
        keyed,
        nerve: nk,
        projection,
    })
}

/// Marked relative nerve: an edge `(e, h)` is marked iff `h = τ^{[1]}` is
/// marked in `F(target e)`.
pub fn marked_relative_nerve(f: &Diagram) -> Result<(RelativeNerve, MarkedSimplicialSet)> {
    let rn = relative_nerve(f)?;
    let c = &f.base;
    let marked = if f.dim() >= 1 {
        rn.keyed
            .keys(1)
            .iter()
            .map(|k| f.marking(k.chain.last_object(c))[k.tau(0b11)])
            .collect()
    } else {
        Vec::new()
    };
    let m = MarkedSimplicialSet::new(rn.sset().clone(), marked);
    Ok((rn, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::report::Validate;
    use crate::scat::standard;

    #[test]
    fn constant_point_is_the_nerve() {
        let c = FiniteCategory::span();
        let f = Diagram::constant(c.clone(), standard::point(3));
        let rn = relative_nerve(&f).unwrap();
        assert!(rn.sset().validate().is_ok());
        assert!(rn.projection.is_bijective_onto(nk_sset(&rn)));
    }

    fn nk_sset(rn: &RelativeNerve) -> &SimplicialSet {
        &rn.nerve.sset
    }

    #[test]
    fn families_satisfy_full_compatibility() {
        let c = FiniteCategory::chain(1);
        let f01 = c.hom(0, 1)[0];
        let objs = vec![standard::delta(1, 3), standard::delta(1, 3)];
        let mut given = vec![None; c.morphism_count()];
        given[f01] = Some(SimplicialMap::constant_at(&objs[0], &objs[1], 1));
        let f = Diagram::from_generators(c.clone(), objs, given).unwrap();
        let rn = relative_nerve(&f).unwrap();
        assert!(rn.sset().validate().is_ok());
        for n in 0..=3 {
            for k in rn.keyed.keys(n) {
                assert!(is_compatible(&c, &f, k));
            }
        }
    }
}
