//! Standard simplices with their horns and boundaries; the nerve `J` of the
//! walking isomorphism.

use crate::error::{Error, Result};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::sset::{Keyed, SimplicialSet};

/// `Δ[n]` truncated at `dim`, keyed by monotone maps.
pub fn delta_keyed(n: usize, dim: usize) -> Keyed<MonotoneMap> {
    delta_sub(n, dim, |_| true)
}

pub fn delta(n: usize, dim: usize) -> SimplicialSet {
    delta_keyed(n, dim).into_sset()
}

/// Subcomplex of `Δ[n]` of the operators accepted by `keep`, which must be
/// closed under precomposition.
fn delta_sub(n: usize, dim: usize, keep: impl Fn(&MonotoneMap) -> bool) -> Keyed<MonotoneMap> {
    let levels = (0..=dim)
        .map(|k| MonotoneMap::all(k, n).into_iter().filter(|a| keep(a)).collect())
        .collect();
    Keyed::build(
        dim,
        levels,
        |k, i, a| a.compose(&MonotoneMap::coface(k, i)),
        |k, j, a| a.compose(&MonotoneMap::codegeneracy(k, j)),
        |_, a| a.to_string(),
    )
    .expect("standard simplex is closed under operators")
}

/// The horn `Λⁱ[n]`: operators whose image misses some `j ≠ i`.
pub fn horn_keyed(n: usize, i: usize, dim: usize) -> Result<Keyed<MonotoneMap>> {
    if i > n || n == 0 {
        return Err(Error::OutOfRange(format!("horn Λ^{i}[{n}]")));
    }
    if n > dim {
        return Err(Error::OutOfRange(format!("horn dimension {n} above bound {dim}")));
    }
    Ok(delta_sub(n, dim, |a| {
        let mask = a.image_mask();
        (0..=n).any(|j| j != i && mask & (1 << j) == 0)
    }))
}

pub fn horn(n: usize, i: usize, dim: usize) -> Result<SimplicialSet> {
    Ok(horn_keyed(n, i, dim)?.into_sset())
}

/// The boundary `∂Δ[n]`: non-surjective operators.
pub fn boundary_keyed(n: usize, dim: usize) -> Keyed<MonotoneMap> {
    delta_sub(n, dim, |a| !a.is_surjective())
}

pub fn boundary(n: usize, dim: usize) -> SimplicialSet {
    boundary_keyed(n, dim).into_sset()
}

pub fn point(dim: usize) -> SimplicialSet {
    delta(0, dim)
}

/// The empty simplicial set.
pub fn empty(dim: usize) -> SimplicialSet {
    Keyed::<u8>::build(
        dim,
        vec![Vec::new(); dim + 1],
        |_, _, k| *k,
        |_, _, k| *k,
        |_, _| String::new(),
    )
    .expect("empty")
    .into_sset()
}

/// `J`, the nerve of the walking isomorphism: `J_k` is the set of all
/// functions `[k] → {0,1}`, ordered lexicographically.
pub fn j_keyed(dim: usize) -> Keyed<Vec<u8>> {
    let levels = (0..=dim)
        .map(|k| {
            (0..1u32 << (k + 1))
                .map(|bits| (0..=k).rev().map(|p| ((bits >> p) & 1) as u8).collect())
                .collect()
        })
        .collect();
    Keyed::build(
        dim,
        levels,
        |_, i, w: &Vec<u8>| {
            let mut v = w.clone();
            v.remove(i);
            v
        },
        |_, j, w: &Vec<u8>| {
            let mut v = w.clone();
            v.insert(j, w[j]);
            v
        },
        |_, w| w.iter().map(|b| char::from(b'0' + b)).collect(),
    )
    .expect("J is closed under operators")
}

pub fn j(dim: usize) -> SimplicialSet {
    j_keyed(dim).into_sset()
}

/// The id of the edge `0 → 1` of `J`.
pub fn j_forward_edge(jk: &Keyed<Vec<u8>>) -> usize {
    jk.id(1, &vec![0, 1]).expect("J has the edge 01")
}

/// The inclusion `Δ[1] → J`.
pub fn delta1_into_j(dim: usize) -> SimplicialMap {
    let d1 = delta_keyed(1, dim);
    let jk = j_keyed(dim);
    let components = (0..=dim)
        .map(|k| {
            d1.keys(k)
                .iter()
                .map(|a| {
                    let w: Vec<u8> = a.values().iter().map(|&v| v as u8).collect();
                    jk.id(k, &w).unwrap()
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(components)
}

/// The Yoneda map `Δ[n] → X` classifying the `n`-simplex `x`.
pub fn classifying_map(x_set: &SimplicialSet, n: usize, x: usize) -> SimplicialMap {
    let d = delta_keyed(n, x_set.dim());
    let components = (0..=x_set.dim())
        .map(|k| d.keys(k).iter().map(|a| x_set.act(n, x, a)).collect())
        .collect();
    SimplicialMap::new(components)
}

/// The map `Δ[m] → Δ[n]` induced by postcomposition with `alpha`.
pub fn operator_map(alpha: &MonotoneMap, dim: usize) -> SimplicialMap {
    let src = delta_keyed(alpha.domain_dim(), dim);
    let tgt = delta_keyed(alpha.codomain_dim(), dim);
    let components = (0..=dim)
        .map(|k| src.keys(k).iter().map(|a| tgt.id(k, &alpha.compose(a)).unwrap()).collect())
        .collect();
    SimplicialMap::new(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::monotone::binomial;
    use crate::scat::report::Validate;

    #[test]
    fn delta_counts_are_binomial() {
        for n in 0..=3 {
            let d = delta(n, 3);
            assert!(d.validate().is_ok());
            for k in 0..=3 {
                assert_eq!(d.count(k), binomial(n + k + 1, k + 1));
            }
        }
    }

    #[test]
    fn j_has_four_edges_two_nondegenerate() {
        let jj = j(2);
        assert!(jj.validate().is_ok());
        assert_eq!(jj.count(1), 4);
        assert_eq!(jj.nondegenerate(1).len(), 2);
    }

    #[test]
    fn inner_horn_omits_face_and_top() {
        let h = horn_keyed(2, 1, 2).unwrap();
        assert!(h.sset.validate().is_ok());
        assert!(h.id(1, &MonotoneMap::new(2, vec![0, 1])).is_some());
        assert!(h.id(1, &MonotoneMap::new(2, vec![1, 2])).is_some());
        assert!(h.id(1, &MonotoneMap::new(2, vec![0, 2])).is_none());
        assert!(h.id(2, &MonotoneMap::identity(2)).is_none());
    }

    #[test]
    fn classifying_maps_are_valid() {
        let jj = j(3);
        let d = delta(2, 3);
        for x in jj.simplices(2) {
            let m = classifying_map(&jj, 2, x);
            assert!(m.check(&d, &jj).is_ok());
        }
        let inc = delta1_into_j(3);
        assert!(inc.check(&delta(1, 3), &jj).is_ok());
        assert!(inc.is_injective());
    }
}
