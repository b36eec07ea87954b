//! Function complexes `[A, X]`: degree `k` is the set of maps `A × Δ[k] → X`.

use crate::error::{Budget, Error, Result};
use crate::scat::enumerate::MapSearch;
use crate::scat::limits::{product, Pullback};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::sset::{Keyed, SimplicialSet};
use crate::scat::standard;

/// Optional restrictions on the maps enumerated in each degree.
#[derive(Default, Clone, Copy)]
pub struct Restrict<'a> {
    /// `(p, q)` with `p : X → B`, `q : A → B`: keep maps `f` with
    /// `p ∘ f = q ∘ pr_A`.
    pub over: Option<(&'a SimplicialMap, &'a SimplicialMap)>,
    /// Markings of `A` and `X`: keep maps sending marked edges of
    /// `A × ♭Δ[k]` to marked edges of `X`.
    pub marking: Option<(&'a [bool], &'a [bool])>,
    /// Mark every edge of the `Δ[k]` factor instead of only degenerate ones.
    pub sharp_simplex: bool,
}

/// `[A, X]` truncated at `k_max`, keyed by the component tables of the maps.
#[derive(Debug, Clone)]
pub struct FunctionComplex {
    pub keyed: Keyed<Vec<Vec<usize>>>,
    /// `A × Δ[k]` for `k ≤ k_max`.
    pub products: Vec<Pullback>,
    /// `Δ[k]` for `k ≤ k_max`, keyed by operators.
    pub deltas: Vec<Keyed<MonotoneMap>>,
    pub k_max: usize,
}

impl FunctionComplex {
    pub fn sset(&self) -> &SimplicialSet {
        &self.keyed.sset
    }

    pub fn map(&self, k: usize, id: usize) -> SimplicialMap {
        SimplicialMap::new(self.keyed.key(k, id).clone())
    }

    pub fn id_of(&self, k: usize, map: &SimplicialMap) -> Option<usize> {
        self.keyed.id(k, &map.components)
    }

    /// Value of the `k`-simplex `f` at the pair `(a, α)` of degree `m`, with
    /// `α : [m] → [k]`.
    pub fn evaluate(&self, k: usize, f: usize, m: usize, a: usize, alpha: &MonotoneMap) -> usize {
        let aid = self.deltas[k].id(m, alpha).expect("operator in Δ[k]");
        let pid = self.products[k].id(m, a, aid).expect("pair in product");
        self.keyed.key(k, f)[m][pid]
    }
}

/// `id_A × θ : A × Δ[m] → A × Δ[k]` for the operator `θ : [m] → [k]`.
fn product_operator(a_times_m: &Pullback, a_times_k: &Pullback, theta: &MonotoneMap, dim: usize) -> SimplicialMap {
    let op = standard::operator_map(theta, dim);
    SimplicialMap::new(
        (0..=dim)
            .map(|n| {
                a_times_m
                    .keyed
                    .keys(n)
                    .iter()
                    .map(|&(a, al)| a_times_k.id(n, a, op.apply(n, al)).expect("pair exists"))
                    .collect()
            })
            .collect(),
    )
}

pub fn function_complex(a: &SimplicialSet, x: &SimplicialSet, k_max: usize, budget: &Budget) -> Result<FunctionComplex> {
    function_complex_with(a, x, k_max, Restrict::default(), budget)
}

pub fn function_complex_with(
    a: &SimplicialSet,
    x: &SimplicialSet,
    k_max: usize,
    restrict: Restrict<'_>,
    budget: &Budget,
) -> Result<FunctionComplex> {
    if a.dim() != x.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: x.dim(),
        });
    }
    let dim = x.dim();
    let needed = a.top_nondegenerate_dim() + k_max;
    if needed > dim {
        return Err(Error::InsufficientTruncation {
            needed,
            available: dim,
            context: format!(
                "function complex out of a {}-dimensional source up to degree {k_max}",
                a.top_nondegenerate_dim()
            ),
        });
    }
    let products: Vec<Pullback> = (0..=k_max)
        .map(|k| product(a, &standard::delta(k, dim)))
        .collect::<Result<_>>()?;
    let mut levels = Vec::with_capacity(k_max + 1);
    for (k, prod) in products.iter().enumerate() {
        let ps = prod.sset();
        let base;
        let mut search = MapSearch::new(ps, x).budget(budget);
        if let Some((p, q)) = restrict.over {
            base = q.compose(&prod.first);
            search = search.over(p, &base);
        }
        let marks;
        if let Some((am, xm)) = restrict.marking {
            let dk = standard::delta(k, dim);
            let delta_marked: Vec<bool> = if restrict.sharp_simplex {
                vec![true; dk.count(1)]
            } else {
                dk.degenerate_flags(1)
            };
            marks = prod
                .keyed
                .keys(1)
                .iter()
                .map(|&(e, al)| am[e] && delta_marked[al])
                .collect::<Vec<bool>>();
            search = search.marked(&marks, xm);
        }
        let mut level = Vec::new();
        search.for_each(|m| {
            level.push(m.components.clone());
            true
        })?;
        levels.push(level);
    }
    // structure maps by precomposition
    let face_ops: Vec<Vec<SimplicialMap>> = (0..=k_max)
        .map(|k| {
            if k == 0 {
                return Vec::new();
            }
            (0..=k)
                .map(|i| product_operator(&products[k - 1], &products[k], &MonotoneMap::coface(k, i), dim))
                .collect()
        })
        .collect();
    let degen_ops: Vec<Vec<SimplicialMap>> = (0..=k_max)
        .map(|k| {
            if k == k_max {
                return Vec::new();
            }
            (0..=k)
                .map(|j| product_operator(&products[k + 1], &products[k], &MonotoneMap::codegeneracy(k, j), dim))
                .collect()
        })
        .collect();
    let keyed = Keyed::build(
        k_max,
        levels,
        |k, i, f: &Vec<Vec<usize>>| SimplicialMap::new(f.clone()).compose(&face_ops[k][i]).components,
        |k, j, f: &Vec<Vec<usize>>| SimplicialMap::new(f.clone()).compose(&degen_ops[k][j]).components,
        |k, f| describe(&products[k], x, f),
    )?;
    Ok(FunctionComplex {
        keyed,
        products,
        deltas: (0..=k_max).map(|k| standard::delta_keyed(k, dim)).collect(),
        k_max,
    })
}

/// Label a map `A × Δ[k] → X` by its values on the vertices `(a, i)`.
fn describe(prod: &Pullback, x: &SimplicialSet, f: &[Vec<usize>]) -> String {
    let vals: Vec<&str> = (0..prod.sset().count(0)).map(|v| x.label(0, f[0][v])).collect();
    format!("<{}>", vals.join(" "))
}

/// The map `[A, X] → [A, Y]` induced by `h : X → Y`.
pub fn postcompose(from: &FunctionComplex, h: &SimplicialMap, to: &FunctionComplex) -> Result<SimplicialMap> {
    let components = (0..=from.k_max)
        .map(|k| {
            from.keyed
                .keys(k)
                .iter()
                .map(|f| {
                    let g = h.compose(&SimplicialMap::new(f.clone()));
                    to.id_of(k, &g)
                        .ok_or_else(|| Error::Invalid("postcomposite leaves the target complex".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap::new(components))
}

/// The map `[A, X] → [A', X]` induced by `g : A' → A`.
pub fn precompose(from: &FunctionComplex, g: &SimplicialMap, to: &FunctionComplex) -> Result<SimplicialMap> {
    let components = (0..=from.k_max)
        .map(|k| {
            let src = &to.products[k];
            let tgt = &from.products[k];
            let gk = SimplicialMap::new(
                src.keyed
                    .sset
                    .counts()
                    .iter()
                    .enumerate()
                    .map(|(n, _)| {
                        src.keyed
                            .keys(n)
                            .iter()
                            .map(|&(a, al)| tgt.id(n, g.apply(n, a), al).expect("pair exists"))
                            .collect()
                    })
                    .collect(),
            );
            from.keyed
                .keys(k)
                .iter()
                .map(|f| {
                    let h = SimplicialMap::new(f.clone()).compose(&gk);
                    to.id_of(k, &h)
                        .ok_or_else(|| Error::Invalid("precomposite leaves the target complex".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap::new(components))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::category::FiniteCategory;
    use crate::scat::nerve::nerve;
    use crate::scat::report::Validate;

    #[test]
    fn point_source_recovers_target() {
        let x = standard::j(3);
        let fc = function_complex(&standard::point(3), &x, 3, &Budget::default()).unwrap();
        assert_eq!(fc.sset().counts(), x.counts());
        assert!(fc.sset().validate().is_ok());
    }

    #[test]
    fn vertices_of_small_complexes() {
        let b = Budget::default();
        let fc = function_complex(&standard::delta(1, 2), &standard::delta(1, 2), 0, &b).unwrap();
        assert_eq!(fc.sset().count(0), 3);
        let w = nerve(&FiniteCategory::walking_iso(), 2);
        let fc = function_complex(&standard::delta(1, 2), &w, 0, &b).unwrap();
        assert_eq!(fc.sset().count(0), 4);
    }

    #[test]
    fn truncation_is_checked() {
        let r = function_complex(&standard::delta(2, 3), &standard::delta(2, 3), 2, &Budget::default());
        assert!(matches!(r, Err(Error::InsufficientTruncation { needed: 4, .. })));
    }

    #[test]
    fn function_complex_is_simplicial() {
        let fc = function_complex(&standard::delta(1, 3), &standard::delta(1, 3), 2, &Budget::default()).unwrap();
        assert!(fc.sset().validate().is_ok());
    }
}
