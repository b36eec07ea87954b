//! Equivalence edges via the 2-simplex witness criterion.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::marked::MarkedSimplicialSet;
use crate::scat::map::SimplicialMap;
use crate::scat::sset::SimplicialSet;

/// For an edge `y : a → b`: an edge `inverse : b → a` and 2-simplices
/// `sigma` (with `d₂ = y`, `d₀ = inverse`, `d₁ = s₀a`) and `beta` (with
/// `d₂ = inverse`, `d₀ = y`, `d₁ = s₀b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub inverse: usize,
    pub sigma: usize,
    pub beta: usize,
}

fn need_two(s: &SimplicialSet) -> Result<()> {
    if s.dim() < 2 {
        return Err(Error::InsufficientTruncation {
            needed: 2,
            available: s.dim(),
            context: "equivalence witnesses need 2-simplices".into(),
        });
    }
    Ok(())
}

/// Whether the witness satisfies the defining face equations for `y`.
pub fn is_witness(s: &SimplicialSet, y: usize, w: &Witness) -> bool {
    let a = s.face(1, 1, y);
    let b = s.face(1, 0, y);
    let (sa, sb) = (s.degen(0, 0, a), s.degen(0, 0, b));
    s.face(1, 1, w.inverse) == b
        && s.face(1, 0, w.inverse) == a
        && s.face(2, 2, w.sigma) == y
        && s.face(2, 0, w.sigma) == w.inverse
        && s.face(2, 1, w.sigma) == sa
        && s.face(2, 2, w.beta) == w.inverse
        && s.face(2, 0, w.beta) == y
        && s.face(2, 1, w.beta) == sb
}

/// Precomputed 2-simplex index for witness searches.
pub struct WitnessIndex<'a> {
    s: &'a SimplicialSet,
    /// 2-simplices grouped by `(d₂, d₀)`.
    by_outer: HashMap<(usize, usize), Vec<usize>>,
}

impl<'a> WitnessIndex<'a> {
    pub fn new(s: &'a SimplicialSet) -> Result<Self> {
        need_two(s)?;
        let mut by_outer: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for x in s.simplices(2) {
            by_outer.entry((s.face(2, 2, x), s.face(2, 0, x))).or_default().push(x);
        }
        Ok(WitnessIndex { s, by_outer })
    }

    /// All witnesses for `y` in lexicographic order of `(inverse, σ, β)`.
    pub fn witnesses(&self, y: usize) -> Vec<Witness> {
        let s = self.s;
        let a = s.face(1, 1, y);
        let b = s.face(1, 0, y);
        let (sa, sb) = (s.degen(0, 0, a), s.degen(0, 0, b));
        let mut out = Vec::new();
        for inv in s.simplices(1) {
            if s.face(1, 1, inv) != b || s.face(1, 0, inv) != a {
                continue;
            }
            let sigmas: Vec<usize> = self
                .by_outer
                .get(&(y, inv))
                .into_iter()
                .flatten()
                .copied()
                .filter(|&x| s.face(2, 1, x) == sa)
                .collect();
            if sigmas.is_empty() {
                continue;
            }
            let betas: Vec<usize> = self
                .by_outer
                .get(&(inv, y))
                .into_iter()
                .flatten()
                .copied()
                .filter(|&x| s.face(2, 1, x) == sb)
                .collect();
            for &sigma in &sigmas {
                for &beta in &betas {
                    out.push(Witness {
                        inverse: inv,
                        sigma,
                        beta,
                    });
                }
            }
        }
        out
    }

    /// The lexicographically least witness, if any.
    pub fn least(&self, y: usize) -> Option<Witness> {
        let s = self.s;
        let a = s.face(1, 1, y);
        let b = s.face(1, 0, y);
        let (sa, sb) = (s.degen(0, 0, a), s.degen(0, 0, b));
        for inv in s.simplices(1) {
            if s.face(1, 1, inv) != b || s.face(1, 0, inv) != a {
                continue;
            }
            let pick = |key: (usize, usize), unit: usize| {
                self.by_outer
                    .get(&key)
                    .and_then(|v| v.iter().copied().find(|&x| s.face(2, 1, x) == unit))
            };
            if let (Some(sigma), Some(beta)) = (pick((y, inv), sa), pick((inv, y), sb)) {
                return Some(Witness {
                    inverse: inv,
                    sigma,
                    beta,
                });
            }
        }
        None
    }
}

/// Whether `y` is an equivalence edge, with the lexicographically least
/// witness when it is.
pub fn is_equivalence_edge(s: &SimplicialSet, y: usize) -> Result<Option<Witness>> {
    Ok(WitnessIndex::new(s)?.least(y))
}

/// Least witness of every edge.
pub fn equivalence_witnesses(s: &SimplicialSet) -> Result<Vec<Option<Witness>>> {
    let idx = WitnessIndex::new(s)?;
    Ok(s.simplices(1).map(|y| idx.least(y)).collect())
}

/// `E(S)`: mark exactly the equivalence edges.
pub fn mark_equivalences(s: &SimplicialSet) -> Result<MarkedSimplicialSet> {
    let marked = equivalence_witnesses(s)?.into_iter().map(|w| w.is_some()).collect();
    Ok(MarkedSimplicialSet::new(s.clone(), marked))
}

/// Largest subcomplex all of whose edges are equivalences, with its
/// inclusion.
pub fn core(s: &SimplicialSet) -> Result<(SimplicialSet, SimplicialMap)> {
    let eq: Vec<bool> = equivalence_witnesses(s)?.into_iter().map(|w| w.is_some()).collect();
    let mut keep: Vec<Vec<bool>> = Vec::with_capacity(s.dim() + 1);
    for n in 0..=s.dim() {
        let level = s
            .simplices(n)
            .map(|x| {
                if n == 0 {
                    return true;
                }
                (0..=n).all(|i| {
                    (i + 1..=n).all(|j| {
                        let op = crate::scat::monotone::MonotoneMap::new(n, vec![i, j]);
                        eq[s.act(n, x, &op)]
                    })
                })
            })
            .collect();
        keep.push(level);
    }
    let (sub, inclusion) = s.subcomplex(&keep)?;
    Ok((sub, SimplicialMap::new(inclusion)))
}

/// Image of a witness under a simplicial map.
pub fn push_witness(f: &SimplicialMap, w: &Witness) -> Witness {
    Witness {
        inverse: f.apply(1, w.inverse),
        sigma: f.apply(2, w.sigma),
        beta: f.apply(2, w.beta),
    }
}

/// Bounded approximation of invertibility in the homotopy category:
/// paths of nondegenerate edges of length at most `depth + 1`, identified
/// along 2-simplices. An edge counts as invertible when some path `w`
/// of length at most `depth` back to its source composes with it to the
/// identity on both sides.
pub fn is_invertible_up_to(s: &SimplicialSet, y: usize, depth: usize, budget: &Budget) -> Result<bool> {
    need_two(s)?;
    let degenerate = s.degenerate_flags(1);
    if degenerate[y] {
        return Ok(true);
    }
    let max_len = depth + 1;
    // words: (start vertex, nondegenerate edges)
    let mut words: Vec<(usize, Vec<usize>)> = s.simplices(0).map(|v| (v, Vec::new())).collect();
    let mut frontier = words.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (v, w) in &frontier {
            let end = w.last().map(|&e| s.face(1, 0, e)).unwrap_or(*v);
            for e in s.simplices(1) {
                if !degenerate[e] && s.face(1, 1, e) == end {
                    budget.spend(1)?;
                    let mut w2 = w.clone();
                    w2.push(e);
                    next.push((*v, w2));
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let index: HashMap<(usize, Vec<usize>), usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let norm = |e: usize| if degenerate[e] { Vec::new() } else { vec![e] };
    // relations: d₂σ · d₀σ ∼ d₁σ
    let rules: Vec<(usize, Vec<usize>, Vec<usize>)> = s
        .simplices(2)
        .map(|x| {
            let mut lhs = norm(s.face(2, 2, x));
            lhs.extend(norm(s.face(2, 0, x)));
            (s.vertex(2, x, 0), lhs, norm(s.face(2, 1, x)))
        })
        .filter(|(_, l, r)| l != r)
        .collect();
    let vertex_at = |start: usize, w: &[usize], p: usize| -> usize {
        if p == 0 {
            start
        } else {
            s.face(1, 0, w[p - 1])
        }
    };
    let mut uf = UnionFind::<usize>::new(words.len());
    for (wi, (start, w)) in words.iter().enumerate() {
        for (v0, lhs, rhs) in &rules {
            for (from, to) in [(lhs, rhs), (rhs, lhs)] {
                if from.len() > w.len() {
                    continue;
                }
                for p in 0..=w.len() - from.len() {
                    if vertex_at(*start, w, p) != *v0 || &w[p..p + from.len()] != from.as_slice() {
                        continue;
                    }
                    budget.spend(1)?;
                    let mut replaced = w[..p].to_vec();
                    replaced.extend(to.iter().copied());
                    replaced.extend_from_slice(&w[p + from.len()..]);
                    if let Some(&other) = index.get(&(*start, replaced)) {
                        uf.union(wi, other);
                    }
                }
            }
        }
    }
    let a = s.face(1, 1, y);
    let b = s.face(1, 0, y);
    let id_a = index[&(a, Vec::new())];
    let id_b = index[&(b, Vec::new())];
    for (start, w) in &words {
        if *start != b || w.len() > depth {
            continue;
        }
        let end = w.last().map(|&e| s.face(1, 0, e)).unwrap_or(b);
        if end != a {
            continue;
        }
        let mut yw = vec![y];
        yw.extend(w.iter().copied());
        let mut wy = w.clone();
        wy.push(y);
        let (Some(&i1), Some(&i2)) = (index.get(&(a, yw)), index.get(&(b, wy))) else {
            continue;
        };
        if uf.equiv(i1, id_a) && uf.equiv(i2, id_b) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::standard;

    #[test]
    fn degenerate_edges_are_equivalences() {
        let d = standard::delta(1, 2);
        for e in d.simplices(1) {
            let w = is_equivalence_edge(&d, e).unwrap();
            assert_eq!(w.is_some(), d.is_degenerate(1, e));
            if let Some(w) = w {
                assert!(is_witness(&d, e, &w));
                assert!(d.is_degenerate(2, w.sigma));
            }
        }
    }

    #[test]
    fn all_edges_of_j_are_equivalences() {
        let jj = standard::j(2);
        let e = mark_equivalences(&jj).unwrap();
        assert_eq!(e.marked_count(), 4);
        let (c, _) = core(&jj).unwrap();
        assert_eq!(c.counts(), jj.counts());
    }

    #[test]
    fn core_of_a_simplex_is_discrete() {
        let (c, inc) = core(&standard::delta(2, 2)).unwrap();
        assert_eq!(c.counts(), &[3, 3, 3]);
        assert!(inc.is_injective());
    }

    #[test]
    fn low_truncation_is_an_error() {
        assert!(is_equivalence_edge(&standard::delta(1, 1), 0).is_err());
    }

    #[test]
    fn bounded_words_agree_on_small_cases() {
        let b = Budget::default();
        let jj = standard::j(2);
        for e in jj.simplices(1) {
            assert!(is_invertible_up_to(&jj, e, 1, &b).unwrap());
        }
        let d = standard::delta(1, 2);
        let edge = d.nondegenerate(1)[0];
        assert!(!is_invertible_up_to(&d, edge, 2, &b).unwrap());
    }
}
