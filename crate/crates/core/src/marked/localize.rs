//! `S[ℰ⁻¹]`: glue one copy of `J` along every marked edge.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::marked::equivalence::WitnessIndex;
use crate::marked::MarkedSimplicialSet;
use crate::scat::enumerate::MapSearch;
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::sset::{Keyed, SimplicialSet};
use crate::scat::standard;

/// Simplices of the localization. Glued cells sort before base cells, so
/// that canonical searches in a localization prefer the glued copies of `J`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LocKey {
    /// A simplex `w ∈ J_n ∖ Δ[1]_n` of the copy of `J` glued along `edge`.
    Glued { edge: usize, word: Vec<u8> },
    /// A simplex of `S`.
    Base(usize),
}

#[derive(Debug, Clone)]
pub struct Localization {
    pub keyed: Keyed<LocKey>,
    /// `p : S → S[ℰ⁻¹]`.
    pub p: SimplicialMap,
    /// The marking `p(ℰ)`.
    pub marked: Vec<bool>,
    /// The marked edges of the input, in id order.
    pub edges: Vec<usize>,
    /// Set when the truncation is below 2 and `J` contributes no 2-simplices.
    pub low_dimension: bool,
}

impl Localization {
    pub fn sset(&self) -> &SimplicialSet {
        &self.keyed.sset
    }

    pub fn as_marked(&self) -> MarkedSimplicialSet {
        MarkedSimplicialSet::new(self.keyed.sset.clone(), self.marked.clone())
    }
}

fn monotone_word(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

fn word_operator(w: &[u8]) -> MonotoneMap {
    MonotoneMap::new(1, w.iter().map(|&b| b as usize).collect())
}

pub fn localize(x: &MarkedSimplicialSet) -> Result<Localization> {
    let s = &x.sset;
    let dim = s.dim();
    let edges = if dim >= 1 { x.marked_edges() } else { Vec::new() };
    let jk = standard::j_keyed(dim);
    let levels = (0..=dim)
        .map(|n| {
            let mut level: Vec<LocKey> = Vec::new();
            for &e in &edges {
                for w in jk.keys(n) {
                    if !monotone_word(w) {
                        level.push(LocKey::Glued {
                            edge: e,
                            word: w.clone(),
                        });
                    }
                }
            }
            level.extend(s.simplices(n).map(LocKey::Base));
            level
        })
        .collect();
    let keyed = Keyed::build(
        dim,
        levels,
        |n, i, k| match k {
            LocKey::Base(y) => LocKey::Base(s.face(n, i, *y)),
            LocKey::Glued { edge, word } => {
                let mut w = word.clone();
                w.remove(i);
                if monotone_word(&w) {
                    LocKey::Base(s.act(1, *edge, &word_operator(&w)))
                } else {
                    LocKey::Glued { edge: *edge, word: w }
                }
            }
        },
        |n, j, k| match k {
            LocKey::Base(y) => LocKey::Base(s.degen(n, j, *y)),
            LocKey::Glued { edge, word } => {
                let mut w = word.clone();
                w.insert(j, word[j]);
                LocKey::Glued { edge: *edge, word: w }
            }
        },
        |n, k| match k {
            LocKey::Base(y) => s.label(n, *y).to_string(),
            LocKey::Glued { edge, word } => {
                let w: String = word.iter().map(|b| char::from(b'0' + b)).collect();
                format!("J[{}]:{w}", s.label(1, *edge))
            }
        },
    )?;
    let p = SimplicialMap::new(
        (0..=dim)
            .map(|n| s.simplices(n).map(|y| keyed.id(n, &LocKey::Base(y)).unwrap()).collect())
            .collect(),
    );
    let marked = if dim >= 1 {
        let mut m = vec![false; keyed.sset.count(1)];
        for e in x.marked_edges() {
            m[p.apply(1, e)] = true;
        }
        m
    } else {
        Vec::new()
    };
    Ok(Localization {
        keyed,
        p,
        marked,
        edges,
        low_dimension: dim < 2,
    })
}

/// A map `J → T` extending the edge `y` along `Δ[1] → J`. Witnesses of `y`
/// are tried in lexicographic order; each pins the images of the edge
/// `10` and the 2-simplices `010`, `101`, and the first that extends to all
/// of `J` wins.
pub fn j_extension(t: &SimplicialSet, y: usize, budget: &crate::Budget) -> Result<Option<SimplicialMap>> {
    let dim = t.dim();
    let jk = standard::j_keyed(dim);
    let idx = WitnessIndex::new(t)?;
    let forward = jk.id(1, &vec![0, 1]).unwrap();
    let backward = jk.id(1, &vec![1, 0]).unwrap();
    let s010 = jk.id(2, &vec![0, 1, 0]).unwrap();
    let s101 = jk.id(2, &vec![1, 0, 1]).unwrap();
    for w in idx.witnesses(y) {
        let found = MapSearch::new(&jk.sset, t)
            .fix(1, forward, y)
            .fix(1, backward, w.inverse)
            .fix(2, s010, w.sigma)
            .fix(2, s101, w.beta)
            .budget(budget)
            .first()?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// The map `U : S[ℰ⁻¹] → T` with `U ∘ p = G`, for `G : S → T` sending
/// marked edges to equivalences.
pub fn localization_universal(
    x: &MarkedSimplicialSet,
    loc: &Localization,
    g: &SimplicialMap,
    t: &SimplicialSet,
    budget: &crate::Budget,
) -> Result<SimplicialMap> {
    let s = &x.sset;
    let dim = s.dim();
    if t.dim() != dim {
        return Err(Error::DimMismatch {
            left: dim,
            right: t.dim(),
        });
    }
    if dim < 2 {
        return Err(Error::InsufficientTruncation {
            needed: 2,
            available: dim,
            context: "universal map out of a localization".into(),
        });
    }
    let idx = WitnessIndex::new(t)?;
    let jk = standard::j_keyed(dim);
    let mut extensions: HashMap<usize, SimplicialMap> = HashMap::new();
    for &e in &loc.edges {
        let y = g.apply(1, e);
        if extensions.contains_key(&y) {
            continue;
        }
        if idx.least(y).is_none() {
            return Err(Error::NotAnEquivalence {
                edge: e,
                context: format!("marked edge {} maps to {}", s.label(1, e), t.label(1, y)),
            });
        }
        let ext = j_extension(t, y, budget)?.ok_or(Error::NoExtension { edge: e, degree: dim })?;
        extensions.insert(y, ext);
    }
    let components = (0..=dim)
        .map(|n| {
            loc.keyed
                .keys(n)
                .iter()
                .map(|k| match k {
                    LocKey::Base(z) => g.apply(n, *z),
                    LocKey::Glued { edge, word } => {
                        let u = &extensions[&g.apply(1, *edge)];
                        u.apply(n, jk.id(n, word).unwrap())
                    }
                })
                .collect()
        })
        .collect();
    Ok(SimplicialMap::new(components))
}

/// `L(f) : X[ℰ⁻¹] → Y[ℰ'⁻¹]` for a marked map `f : X → Y`.
pub fn localize_map(f: &SimplicialMap, from: &Localization, to: &Localization) -> Result<SimplicialMap> {
    let components = (0..from.keyed.sset.counts().len())
        .map(|n| {
            from.keyed
                .keys(n)
                .iter()
                .map(|k| {
                    let image = match k {
                        LocKey::Base(z) => LocKey::Base(f.apply(n, *z)),
                        LocKey::Glued { edge, word } => LocKey::Glued {
                            edge: f.apply(1, *edge),
                            word: word.clone(),
                        },
                    };
                    to.keyed
                        .id(n, &image)
                        .ok_or_else(|| Error::Invalid("map does not preserve the marking".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap::new(components))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::equivalence::is_equivalence_edge;
    use crate::scat::report::Validate;
    use crate::Budget;

    #[test]
    fn point_localization_counts() {
        let x = MarkedSimplicialSet::flat(standard::point(2));
        let loc = localize(&x).unwrap();
        assert_eq!(loc.sset().counts(), &[1, 2, 5]);
        assert!(loc.sset().validate().is_ok());
    }

    #[test]
    fn flat_edge_at_bound_one() {
        let x = MarkedSimplicialSet::flat(standard::delta(1, 1));
        let loc = localize(&x).unwrap();
        assert_eq!(loc.sset().count(1), 5);
        assert!(loc.low_dimension);
    }

    #[test]
    fn marked_image_edges_are_equivalences() {
        let x = MarkedSimplicialSet::sharp(standard::delta(1, 3));
        let loc = localize(&x).unwrap();
        for e in 0..loc.marked.len() {
            if loc.marked[e] {
                assert!(is_equivalence_edge(loc.sset(), e).unwrap().is_some());
            }
        }
    }

    #[test]
    fn universal_map_into_j() {
        let n = 3;
        let x = MarkedSimplicialSet::sharp(standard::delta(1, n));
        let loc = localize(&x).unwrap();
        let g = standard::delta1_into_j(n);
        let jj = standard::j(n);
        let u = localization_universal(&x, &loc, &g, &jj, &Budget::default()).unwrap();
        assert!(u.check(loc.sset(), &jj).is_ok());
        assert_eq!(u.compose(&loc.p), g);
    }

    #[test]
    fn non_equivalence_is_named() {
        let n = 2;
        let d1 = standard::delta(1, n);
        let edge = d1.nondegenerate(1)[0];
        let x = MarkedSimplicialSet::with_edges(d1.clone(), &[edge]);
        let loc = localize(&x).unwrap();
        let g = SimplicialMap::identity(&d1);
        let err = localization_universal(&x, &loc, &g, &d1, &Budget::default()).unwrap_err();
        assert_eq!(
            err,
            Error::NotAnEquivalence {
                edge,
                context: "marked edge 01 maps to 01".into(),
            }
        );
    }
}
