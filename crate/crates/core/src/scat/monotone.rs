use std::fmt;

use serde::{Deserialize, Serialize};

/// A weakly increasing map `[m] → [n]`, i.e. a morphism of the simplex
/// category. Doubles as a `m`-simplex of `Δ[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonotoneMap {
    codomain: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    /// Panics if `values` is empty, decreasing somewhere, or leaves `[n]`.
    pub fn new(codomain: usize, values: Vec<usize>) -> Self {
        assert!(!values.is_empty(), "monotone map needs a nonempty domain");
        assert!(
            values.windows(2).all(|w| w[0] <= w[1]),
            "values must be weakly increasing: {values:?}"
        );
        assert!(values.iter().all(|&v| v <= codomain), "values {values:?} leave [{codomain}]");
        MonotoneMap { codomain, values }
    }

    pub fn try_new(codomain: usize, values: Vec<usize>) -> Option<Self> {
        let ok = !values.is_empty() && values.windows(2).all(|w| w[0] <= w[1]) && values.iter().all(|&v| v <= codomain);
        ok.then_some(MonotoneMap { codomain, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            codomain: n,
            values: (0..=n).collect(),
        }
    }

    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        MonotoneMap::new(n, vec![v; m + 1])
    }

    /// The coface `δ_i : [n-1] → [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        MonotoneMap {
            codomain: n,
            values: (0..=n).filter(|&v| v != i).collect(),
        }
    }

    /// The codegeneracy `σ_j : [n+1] → [n]` hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Self {
        assert!(j <= n);
        MonotoneMap {
            codomain: n,
            values: (0..=n + 1).map(|v| if v <= j { v } else { v - 1 }).collect(),
        }
    }

    /// The order-preserving inclusion of a nonempty subset of `[n]`.
    pub fn inclusion(n: usize, subset: &[usize]) -> Self {
        MonotoneMap::new(n, subset.to_vec())
    }

    /// Inclusion of the subset of `[n]` encoded by the bitmask.
    pub fn from_mask(n: usize, mask: u32) -> Self {
        let subset: Vec<usize> = (0..=n).filter(|&i| mask & (1 << i) != 0).collect();
        MonotoneMap::new(n, subset)
    }

    pub fn domain_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ other`, where `other : [k] → [m]` and `self : [m] → [n]`.
    pub fn compose(&self, other: &MonotoneMap) -> MonotoneMap {
        assert_eq!(other.codomain, self.domain_dim(), "composition mismatch");
        MonotoneMap {
            codomain: self.codomain,
            values: other.values.iter().map(|&v| self.values[v]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && *self.values.last().unwrap() == self.codomain && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img = self.values.clone();
        img.dedup();
        img
    }

    pub fn image_mask(&self) -> u32 {
        self.values.iter().fold(0, |m, &v| m | (1 << v))
    }

    /// Epi–mono factorization `self = mono ∘ epi`.
    pub fn factor(&self) -> (MonotoneMap, MonotoneMap) {
        let image = self.image();
        let epi_values = self.values.iter().map(|v| image.binary_search(v).unwrap()).collect();
        let r = image.len() - 1;
        (
            MonotoneMap {
                codomain: r,
                values: epi_values,
            },
            MonotoneMap {
                codomain: self.codomain,
                values: image,
            },
        )
    }

    /// All monotone maps `[m] → [n]` in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m + 1);
        fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
            if cur.len() == m + 1 {
                out.push(MonotoneMap {
                    codomain: n,
                    values: cur.clone(),
                });
                return;
            }
            for v in lo..=n {
                cur.push(v);
                rec(m, n, v, cur, out);
                cur.pop();
            }
        }
        rec(m, n, 0, &mut cur, &mut out);
        out
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.codomain < 10 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "<{}>", parts.join(","))
        }
    }
}

/// Binomial coefficient, used for simplex counts of `Δ[n]`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coface_and_codegeneracy_shapes() {
        assert_eq!(MonotoneMap::coface(2, 1).values(), &[0, 2]);
        assert_eq!(MonotoneMap::codegeneracy(1, 0).values(), &[0, 0, 1]);
    }

    #[test]
    fn factorization_recomposes() {
        for m in 0..4 {
            for n in 0..4 {
                for a in MonotoneMap::all(m, n) {
                    let (epi, mono) = a.factor();
                    assert!(epi.is_surjective());
                    assert!(mono.is_injective());
                    assert_eq!(mono.compose(&epi), a);
                }
            }
        }
    }

    #[test]
    fn monotone_count_matches_binomial() {
        for m in 0..=3 {
            for n in 0..=3 {
                assert_eq!(MonotoneMap::all(m, n).len(), binomial(n + m + 1, m + 1));
            }
        }
    }

    #[test]
    fn cosimplicial_identity_on_cofaces() {
        // δ_j δ_i = δ_i δ_{j-1} for i < j
        for n in 2..5 {
            for j in 0..=n {
                for i in 0..j {
                    let lhs = MonotoneMap::coface(n, j).compose(&MonotoneMap::coface(n - 1, i));
                    let rhs = MonotoneMap::coface(n, i).compose(&MonotoneMap::coface(n - 1, j - 1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
