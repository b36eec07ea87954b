//! Backtracking enumeration of simplicial maps.
//!
//! A map out of `S` is determined by its values on nondegenerate simplices,
//! subject to face compatibility. The search assigns nondegenerate simplices
//! as soon as all of their faces are determined, and propagates each value
//! to every degenerate simplex sharing the same nondegenerate root.

use crate::error::{Budget, Error, Result};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::sset::SimplicialSet;

const UNSET: usize = usize::MAX;

/// Every simplex `z` written as `r · ε` with `r` nondegenerate and `ε` an
/// epimorphism (Eilenberg–Zilber).
#[derive(Debug, Clone)]
pub struct RootTable {
    /// `root[n][z] = (m, r, ε)`.
    pub root: Vec<Vec<(usize, usize, MonotoneMap)>>,
}

impl RootTable {
    pub fn new(s: &SimplicialSet) -> Self {
        let sources = s.degeneracy_sources();
        let mut root: Vec<Vec<(usize, usize, MonotoneMap)>> = Vec::with_capacity(s.dim() + 1);
        for n in 0..=s.dim() {
            let mut level = Vec::with_capacity(s.count(n));
            for z in s.simplices(n) {
                let entry = match sources[n][z] {
                    None => (n, z, MonotoneMap::identity(n)),
                    Some((j, y)) => {
                        let (m, r, eta) = &root[n - 1][y];
                        (*m, *r, eta.compose(&MonotoneMap::codegeneracy(n - 1, j)))
                    }
                };
                level.push(entry);
            }
            root.push(level);
        }
        RootTable { root }
    }

    pub fn is_nondegenerate(&self, n: usize, z: usize) -> bool {
        self.root[n][z].0 == n
    }
}

/// Configuration of a map enumeration `S → T`.
pub struct MapSearch<'a> {
    source: &'a SimplicialSet,
    target: &'a SimplicialSet,
    fixed: Vec<Vec<Option<usize>>>,
    over: Option<(&'a SimplicialMap, &'a SimplicialMap)>,
    marking: Option<(&'a [bool], &'a [bool])>,
    budget: Option<&'a Budget>,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a SimplicialSet, target: &'a SimplicialSet) -> Self {
        MapSearch {
            source,
            target,
            fixed: source.counts().iter().map(|&c| vec![None; c]).collect(),
            over: None,
            marking: None,
            budget: None,
        }
    }

    /// Require `f(x) = y` for the `n`-simplex `x`.
    pub fn fix(mut self, n: usize, x: usize, y: usize) -> Self {
        self.fixed[n][x] = Some(y);
        self
    }

    /// Require `p ∘ f = base`, where `p : T → B` and `base : S → B`.
    pub fn over(mut self, p: &'a SimplicialMap, base: &'a SimplicialMap) -> Self {
        self.over = Some((p, base));
        self
    }

    /// Require marked edges of `S` to land on marked edges of `T`.
    pub fn marked(mut self, source_marked: &'a [bool], target_marked: &'a [bool]) -> Self {
        self.marking = Some((source_marked, target_marked));
        self
    }

    pub fn budget(mut self, budget: &'a Budget) -> Self {
        self.budget = Some(budget);
        self
    }

    /// Visit every solution in canonical order until `visit` returns false.
    pub fn for_each(&self, mut visit: impl FnMut(&SimplicialMap) -> bool) -> Result<()> {
        let (s, t) = (self.source, self.target);
        if s.dim() != t.dim() {
            return Err(Error::DimMismatch {
                left: s.dim(),
                right: t.dim(),
            });
        }
        let roots = RootTable::new(s);
        let mut dependents: Vec<Vec<Vec<(usize, usize, MonotoneMap)>>> =
            s.counts().iter().map(|&c| vec![Vec::new(); c]).collect();
        for n in 0..=s.dim() {
            for z in s.simplices(n) {
                let (m, r, eps) = roots.root[n][z].clone();
                dependents[m][r].push((n, z, eps));
            }
        }
        let order = assignment_order(s, &roots);
        // target simplices indexed by their 0-th face
        let by_face0: Vec<Vec<Vec<usize>>> = (0..=t.dim())
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                let mut idx = vec![Vec::new(); t.count(n - 1)];
                for y in t.simplices(n) {
                    idx[t.face(n, 0, y)].push(y);
                }
                idx
            })
            .collect();
        let mut state = State {
            search: self,
            dependents: &dependents,
            order: &order,
            by_face0: &by_face0,
            assign: s.counts().iter().map(|&c| vec![UNSET; c]).collect(),
            stop: false,
        };
        state.run(0, &mut visit)
    }

    pub fn all(&self) -> Result<Vec<SimplicialMap>> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(m.clone());
            true
        })?;
        Ok(out)
    }

    pub fn first(&self) -> Result<Option<SimplicialMap>> {
        let mut out = None;
        self.for_each(|m| {
            out = Some(m.clone());
            false
        })?;
        Ok(out)
    }

    pub fn count(&self) -> Result<usize> {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            true
        })?;
        Ok(n)
    }
}

/// Nondegenerate simplices ordered so that each comes right after the
/// roots of all of its faces: vertices in id order, each followed by the
/// simplices it completes.
fn assignment_order(s: &SimplicialSet, roots: &RootTable) -> Vec<(usize, usize)> {
    let mut done: Vec<Vec<bool>> = s.counts().iter().map(|&c| vec![false; c]).collect();
    let nondeg: Vec<Vec<usize>> = (0..=s.dim())
        .map(|n| s.simplices(n).filter(|&z| roots.is_nondegenerate(n, z)).collect())
        .collect();
    let mut order = Vec::new();
    let ready = |done: &Vec<Vec<bool>>, n: usize, x: usize| {
        (0..=n).all(|i| {
            let (m, r, _) = &roots.root[n - 1][s.face(n, i, x)];
            done[*m][*r]
        })
    };
    for &v in &nondeg[0] {
        done[0][v] = true;
        order.push((0, v));
        loop {
            let mut progressed = false;
            for n in 1..=s.dim() {
                for &x in &nondeg[n] {
                    if !done[n][x] && ready(&done, n, x) {
                        done[n][x] = true;
                        order.push((n, x));
                        progressed = true;
                    }
                }
            }
            if !progressed {
                break;
            }
        }
    }
    order
}

struct State<'s, 'a> {
    search: &'s MapSearch<'a>,
    dependents: &'s [Vec<Vec<(usize, usize, MonotoneMap)>>],
    order: &'s [(usize, usize)],
    by_face0: &'s [Vec<Vec<usize>>],
    assign: Vec<Vec<usize>>,
    stop: bool,
}

impl State<'_, '_> {
    fn value(&self, n: usize, z: usize) -> usize {
        self.assign[n][z]
    }

    fn run(&mut self, pos: usize, visit: &mut impl FnMut(&SimplicialMap) -> bool) -> Result<()> {
        if self.stop {
            return Ok(());
        }
        if pos == self.order.len() {
            let map = SimplicialMap::new(self.assign.clone());
            if !visit(&map) {
                self.stop = true;
            }
            return Ok(());
        }
        let (n, x) = self.order[pos];
        let s = self.search.source;
        let t = self.search.target;
        let candidates: Vec<usize> = if let Some(y) = self.search.fixed[n][x] {
            vec![y]
        } else if n == 0 {
            t.simplices(0).collect()
        } else {
            self.by_face0[n][self.value(n - 1, s.face(n, 0, x))].clone()
        };
        for y in candidates {
            if let Some(b) = self.search.budget {
                b.spend(1)?;
            }
            if n >= 1 && (1..=n).any(|i| t.face(n, i, y) != self.value(n - 1, s.face(n, i, x))) {
                continue;
            }
            if let Some((p, base)) = self.search.over {
                if p.apply(n, y) != base.apply(n, x) {
                    continue;
                }
            }
            if self.place(n, x, y) {
                self.run(pos + 1, visit)?;
            }
            self.unplace(n, x);
            if self.stop {
                break;
            }
        }
        Ok(())
    }

    /// Assign the root and all its degenerate dependents; false if a
    /// constraint on a dependent fails.
    fn place(&mut self, n: usize, x: usize, y: usize) -> bool {
        let t = self.search.target;
        let mut ok = true;
        for (k, z, eps) in &self.dependents[n][x] {
            let v = if *k == n { y } else { t.act(n, y, eps) };
            self.assign[*k][*z] = v;
            if let Some(fixed) = self.search.fixed[*k][*z] {
                ok &= fixed == v;
            }
            if *k == 1 {
                if let Some((sm, tm)) = self.search.marking {
                    ok &= !sm[*z] || tm[v];
                }
            }
        }
        ok
    }

    fn unplace(&mut self, n: usize, x: usize) {
        for (k, z, _) in &self.dependents[n][x] {
            self.assign[*k][*z] = UNSET;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::category::FiniteCategory;
    use crate::scat::nerve::nerve;
    use crate::scat::standard;

    #[test]
    fn maps_between_simplices_are_monotone_maps() {
        for m in 0..=2 {
            for n in 0..=2 {
                let a = standard::delta(m, 3);
                let b = standard::delta(n, 3);
                let maps = MapSearch::new(&a, &b).all().unwrap();
                assert_eq!(maps.len(), MonotoneMap::all(m, n).len());
                for f in &maps {
                    assert!(f.check(&a, &b).is_ok());
                }
            }
        }
    }

    #[test]
    fn edges_of_walking_iso_nerve() {
        let a = standard::delta(1, 2);
        let w = nerve(&FiniteCategory::walking_iso(), 2);
        assert_eq!(MapSearch::new(&a, &w).count().unwrap(), 4);
    }

    #[test]
    fn horn_maps_into_nerve_count() {
        // maps Λ¹[2] → N([1]) are composable pairs of arrows: 4
        let h = standard::horn(2, 1, 2).unwrap();
        let nc = nerve(&FiniteCategory::chain(1), 2);
        assert_eq!(MapSearch::new(&h, &nc).count().unwrap(), 4);
    }

    #[test]
    fn budget_stops_the_search() {
        let a = standard::delta(2, 3);
        let b = standard::j(3);
        let budget = Budget::new(3);
        let r = MapSearch::new(&a, &b).budget(&budget).count();
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
