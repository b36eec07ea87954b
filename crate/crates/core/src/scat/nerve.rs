use serde::{Deserialize, Serialize};

use crate::scat::category::{FiniteCategory, Functor};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::sset::Keyed;

/// A composable chain `c_0 → c_1 → … → c_n`; `arrows[k]` is the arrow
/// `c_k → c_{k+1}`. Vertices are chains with no arrows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn vertex(d: usize) -> Self {
        Chain {
            start: d,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The objects `c_0, …, c_n`.
    pub fn objects(&self, c: &FiniteCategory) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.arrows.len() + 1);
        out.push(self.start);
        for &f in &self.arrows {
            out.push(c.target(f));
        }
        out
    }

    pub fn object(&self, c: &FiniteCategory, k: usize) -> usize {
        if k == 0 {
            self.start
        } else {
            c.target(self.arrows[k - 1])
        }
    }

    pub fn last_object(&self, c: &FiniteCategory) -> usize {
        self.object(c, self.arrows.len())
    }

    /// The composite arrow `c_i → c_j` for `i ≤ j`.
    pub fn between(&self, c: &FiniteCategory, i: usize, j: usize) -> usize {
        assert!(i <= j && j <= self.arrows.len());
        let mut acc = c.identity(self.object(c, i));
        for k in i..j {
            acc = c.compose(self.arrows[k], acc);
        }
        acc
    }

    /// The chain `c_{α(0)} → … → c_{α(m)}`.
    pub fn act(&self, c: &FiniteCategory, alpha: &MonotoneMap) -> Chain {
        let v = alpha.values();
        Chain {
            start: self.object(c, v[0]),
            arrows: v.windows(2).map(|w| self.between(c, w[0], w[1])).collect(),
        }
    }

    pub fn face(&self, c: &FiniteCategory, i: usize) -> Chain {
        let n = self.arrows.len();
        assert!(n >= 1 && i <= n);
        if i == 0 {
            Chain {
                start: c.target(self.arrows[0]),
                arrows: self.arrows[1..].to_vec(),
            }
        } else if i == n {
            Chain {
                start: self.start,
                arrows: self.arrows[..n - 1].to_vec(),
            }
        } else {
            let mut arrows = self.arrows.clone();
            let g = arrows.remove(i);
            arrows[i - 1] = c.compose(g, arrows[i - 1]);
            Chain {
                start: self.start,
                arrows,
            }
        }
    }

    pub fn degen(&self, c: &FiniteCategory, j: usize) -> Chain {
        let mut arrows = self.arrows.clone();
        arrows.insert(j, c.identity(self.object(c, j)));
        Chain {
            start: self.start,
            arrows,
        }
    }

    pub fn map(&self, f: &Functor) -> Chain {
        Chain {
            start: f.objects[self.start],
            arrows: self.arrows.iter().map(|&a| f.morphisms[a]).collect(),
        }
    }

    pub fn label(&self, c: &FiniteCategory) -> String {
        if self.arrows.is_empty() {
            c.object_name(self.start).to_string()
        } else {
            let names: Vec<&str> = self.arrows.iter().map(|&a| c.morphism(a).name.as_str()).collect();
            format!("[{}]", names.join(","))
        }
    }
}

/// All composable chains of `n` arrows, in canonical order.
pub fn chains(c: &FiniteCategory, n: usize) -> Vec<Chain> {
    let mut out = Vec::new();
    for start in 0..c.object_count() {
        let mut cur = Chain::vertex(start);
        extend(c, n, start, &mut cur, &mut out);
    }
    out.sort();
    out
}

fn extend(c: &FiniteCategory, n: usize, at: usize, cur: &mut Chain, out: &mut Vec<Chain>) {
    if cur.arrows.len() == n {
        out.push(cur.clone());
        return;
    }
    for f in 0..c.morphism_count() {
        if c.source(f) == at {
            cur.arrows.push(f);
            extend(c, n, c.target(f), cur, out);
            cur.arrows.pop();
        }
    }
}

/// The nerve of `c` truncated at `dim`, keyed by chains.
pub fn nerve_keyed(c: &FiniteCategory, dim: usize) -> Keyed<Chain> {
    let levels = (0..=dim).map(|n| chains(c, n)).collect();
    Keyed::build(
        dim,
        levels,
        |_, i, ch: &Chain| ch.face(c, i),
        |_, j, ch: &Chain| ch.degen(c, j),
        |_, ch| ch.label(c),
    )
    .expect("nerve is closed under operators")
}

pub fn nerve(c: &FiniteCategory, dim: usize) -> crate::scat::sset::SimplicialSet {
    nerve_keyed(c, dim).into_sset()
}

/// `N(F) : N(C) → N(D)`.
pub fn nerve_map(nc: &Keyed<Chain>, f: &Functor, nd: &Keyed<Chain>) -> SimplicialMap {
    let components = (0..=nc.dim())
        .map(|n| {
            nc.keys(n)
                .iter()
                .map(|ch| nd.id(n, &ch.map(f)).expect("image chain exists"))
                .collect()
        })
        .collect();
    SimplicialMap::new(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::report::Validate;

    #[test]
    fn nerve_counts() {
        let t = nerve(&FiniteCategory::terminal(), 3);
        assert_eq!(t.counts(), &[1, 1, 1, 1]);
        let a = nerve(&FiniteCategory::chain(1), 3);
        assert_eq!(a.counts(), &[2, 3, 4, 5]);
        let w = nerve(&FiniteCategory::walking_iso(), 3);
        assert_eq!(w.counts(), &[2, 4, 8, 16]);
        assert!(w.validate().is_ok());
    }

    #[test]
    fn chain_action_agrees_with_faces() {
        let c = FiniteCategory::chain(3);
        let nk = nerve_keyed(&c, 3);
        for ch in nk.keys(3) {
            for i in 0..=3 {
                assert_eq!(ch.act(&c, &MonotoneMap::coface(3, i)), ch.face(&c, i));
            }
        }
    }
}
