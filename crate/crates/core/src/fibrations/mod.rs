//! Horn lifting by exhaustive search, and bounded inner-fibration and
//! coCartesian checks built on it.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::marked::MarkedSimplicialSet;
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::sset::SimplicialSet;

/// A square from the horn `Λ^missing[n]` into `p : X → S`: the faces of the
/// horn in `X` (`None` at `missing`) and an `n`-simplex of `S` below them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LiftingProblem {
    pub n: usize,
    pub missing: usize,
    pub faces: Vec<Option<usize>>,
    pub bottom: usize,
}

impl LiftingProblem {
    pub fn describe(&self, x: &SimplicialSet, s: &SimplicialSet) -> String {
        let faces: Vec<String> = self
            .faces
            .iter()
            .enumerate()
            .filter_map(|(k, f)| f.map(|y| format!("d{k}={}", x.label(self.n - 1, y))))
            .collect();
        format!(
            "Λ^{}[{}] with {} over {}",
            self.missing,
            self.n,
            faces.join(" "),
            s.label(self.n, self.bottom)
        )
    }

    /// Do the horn faces and the bottom simplex form a commuting square.
    pub fn commutes(&self, x: &SimplicialSet, s: &SimplicialSet, p: &SimplicialMap) -> bool {
        let n = self.n;
        let faces: Vec<(usize, usize)> = self.faces.iter().enumerate().filter_map(|(k, f)| f.map(|y| (k, y))).collect();
        let compatible = faces.iter().all(|&(a, ya)| {
            faces
                .iter()
                .filter(|&&(b, _)| b > a)
                .all(|&(b, yb)| n < 2 || x.face(n - 1, a, yb) == x.face(n - 1, b - 1, ya))
        });
        compatible && faces.iter().all(|&(k, y)| p.apply(n - 1, y) == s.face(n, k, self.bottom))
    }
}

/// All `x ∈ X_n` filling the problem.
pub fn lift_search(x: &SimplicialSet, s: &SimplicialSet, p: &SimplicialMap, prob: &LiftingProblem) -> Vec<usize> {
    debug_assert!(prob.commutes(x, s, p), "lifting problem does not commute");
    let n = prob.n;
    x.simplices(n)
        .filter(|&z| {
            p.apply(n, z) == prob.bottom
                && prob
                    .faces
                    .iter()
                    .enumerate()
                    .all(|(k, f)| f.is_none_or(|y| x.face(n, k, z) == y))
        })
        .collect()
}

/// A bounded verdict: `holds` is meant "for all problems with n ≤ n_max".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub n_max: usize,
    /// Number of lifting problems examined.
    pub checked: usize,
    pub counterexample: Option<LiftingProblem>,
    /// Human-readable form of the counterexample.
    pub detail: Option<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "true up to n_max = {} ({} problems)", self.n_max, self.checked)
        } else {
            write!(f, "false")?;
            if let Some(p) = &self.counterexample {
                write!(f, " at n = {}", p.n)?;
            }
            if let Some(d) = &self.detail {
                write!(f, ": {d}")?;
            }
            Ok(())
        }
    }
}

fn check_shapes(x: &SimplicialSet, s: &SimplicialSet, p: &SimplicialMap, n_max: usize) -> Result<()> {
    if x.dim() != s.dim() || p.dim() != x.dim() {
        return Err(Error::DimMismatch {
            left: x.dim(),
            right: s.dim(),
        });
    }
    if n_max > x.dim() {
        return Err(Error::InsufficientTruncation {
            needed: n_max,
            available: x.dim(),
            context: "horn lifting".into(),
        });
    }
    Ok(())
}

/// Enumerate every `Λ^i[n]` lifting problem, optionally only those whose
/// edge `{0, 1}` is `edge`. Stops when `visit` returns false.
pub fn horn_problems(
    x: &SimplicialSet,
    s: &SimplicialSet,
    p: &SimplicialMap,
    n: usize,
    i: usize,
    edge: Option<usize>,
    budget: &Budget,
    mut visit: impl FnMut(&LiftingProblem) -> bool,
) -> Result<()> {
    assert!(n >= 2 && i <= n, "horns of dimension at least 2");
    // faces are chosen from the top index down, so that d_n (which holds the edge {0, 1}) comes first
    let order: Vec<usize> = (0..=n).rev().filter(|&k| k != i).collect();
    let edge01 = MonotoneMap::new(n - 1, vec![0, 1]);
    let mut bottoms: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for z in s.simplices(n) {
        let key: Vec<usize> = order.iter().map(|&k| s.face(n, k, z)).collect();
        bottoms.entry(key).or_default().push(z);
    }
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut stop = false;
    #[allow(clippy::too_many_arguments)]
    fn go(
        x: &SimplicialSet,
        p: &SimplicialMap,
        n: usize,
        i: usize,
        order: &[usize],
        edge: Option<usize>,
        edge01: &MonotoneMap,
        bottoms: &HashMap<Vec<usize>, Vec<usize>>,
        chosen: &mut Vec<(usize, usize)>,
        budget: &Budget,
        stop: &mut bool,
        visit: &mut dyn FnMut(&LiftingProblem) -> bool,
    ) -> Result<()> {
        if *stop {
            return Ok(());
        }
        if chosen.len() == order.len() {
            let key: Vec<usize> = chosen.iter().map(|&(_, y)| p.apply(n - 1, y)).collect();
            if let Some(zs) = bottoms.get(&key) {
                for &z in zs {
                    let mut faces = vec![None; n + 1];
                    for &(k, y) in chosen.iter() {
                        faces[k] = Some(y);
                    }
                    let prob = LiftingProblem {
                        n,
                        missing: i,
                        faces,
                        bottom: z,
                    };
                    if !visit(&prob) {
                        *stop = true;
                        return Ok(());
                    }
                }
            }
            return Ok(());
        }
        let b = order[chosen.len()];
        for y in x.simplices(n - 1) {
            budget.spend(1)?;
            if b == n {
                if let Some(e) = edge {
                    if x.act(n - 1, y, edge01) != e {
                        continue;
                    }
                }
            }
            // d_a y_b = d_{b−1} y_a for a < b
            let ok = chosen.iter().all(|&(a, ya)| {
                if a < b {
                    x.face(n - 1, a, y) == x.face(n - 1, b - 1, ya)
                } else {
                    x.face(n - 1, b, ya) == x.face(n - 1, a - 1, y)
                }
            });
            if ok {
                chosen.push((b, y));
                go(x, p, n, i, order, edge, edge01, bottoms, chosen, budget, stop, visit)?;
                chosen.pop();
                if *stop {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
    go(
        x,
        p,
        n,
        i,
        &order,
        edge,
        &edge01,
        &bottoms,
        &mut chosen,
        budget,
        &mut stop,
        &mut visit,
    )
}

/// Exhaustive check of the horns `Λ^i[n]` with `2 ≤ n ≤ n_max` and `i` from
/// `horn_range(n)`.
fn check_horns(
    x: &SimplicialSet,
    s: &SimplicialSet,
    p: &SimplicialMap,
    n_max: usize,
    horn_range: impl Fn(usize) -> Vec<usize>,
    edge: Option<usize>,
    budget: &Budget,
) -> Result<Verdict> {
    check_shapes(x, s, p, n_max)?;
    let mut checked = 0;
    let mut counterexample = None;
    'outer: for n in 2..=n_max {
        for i in horn_range(n) {
            horn_problems(x, s, p, n, i, edge, budget, |prob| {
                checked += 1;
                if lift_search(x, s, p, prob).is_empty() {
                    counterexample = Some(prob.clone());
                    false
                } else {
                    true
                }
            })?;
            if counterexample.is_some() {
                break 'outer;
            }
        }
    }
    let detail = counterexample.as_ref().map(|c| format!("no filler for {}", c.describe(x, s)));
    Ok(Verdict {
        holds: counterexample.is_none(),
        n_max,
        checked,
        counterexample,
        detail,
    })
}

pub fn is_inner_fibration(
    x: &SimplicialSet,
    s: &SimplicialSet,
    p: &SimplicialMap,
    n_max: usize,
    budget: &Budget,
) -> Result<Verdict> {
    check_horns(x, s, p, n_max, |n| (1..n).collect(), None, budget)
}

pub fn is_quasi_category(s: &SimplicialSet, n_max: usize, budget: &Budget) -> Result<Verdict> {
    let point = crate::scat::standard::point(s.dim());
    is_inner_fibration(s, &point, &SimplicialMap::to_point(s), n_max, budget)
}

/// Is `f` `p`-coCartesian up to `n_max`. Fails with a note when `p` is not
/// an inner fibration up to `n_max`.
pub fn is_cocartesian_edge(
    x: &SimplicialSet,
    s: &SimplicialSet,
    p: &SimplicialMap,
    f: usize,
    n_max: usize,
    budget: &Budget,
) -> Result<Verdict> {
    let inner = is_inner_fibration(x, s, p, n_max, budget)?;
    if !inner.holds {
        return Ok(Verdict {
            detail: Some(format!(
                "precondition failed, not an inner fibration: {}",
                inner.detail.unwrap_or_default()
            )),
            ..inner
        });
    }
    check_horns(x, s, p, n_max, |_| vec![0], Some(f), budget)
}

/// Edges of `X` that are `p`-coCartesian up to `n_max`, in one pass over all
/// `Λ^0[n]` problems.
pub fn cocartesian_edges(
    x: &SimplicialSet,
    s: &SimplicialSet,
    p: &SimplicialMap,
    n_max: usize,
    budget: &Budget,
) -> Result<Vec<bool>> {
    check_shapes(x, s, p, n_max)?;
    let mut good = vec![true; if x.dim() >= 1 { x.count(1) } else { 0 }];
    if x.dim() < 1 {
        return Ok(good);
    }
    for n in 2..=n_max {
        let edge01 = MonotoneMap::new(n - 1, vec![0, 1]);
        horn_problems(x, s, p, n, 0, None, budget, |prob| {
            let top = prob.faces[n].expect("face d_n is part of Λ^0[n]");
            let e = x.act(n - 1, top, &edge01);
            if good[e] && lift_search(x, s, p, prob).is_empty() {
                good[e] = false;
            }
            true
        })?;
    }
    Ok(good)
}

/// Verdict on coCartesian fibrations: inner fibration, and every
/// base edge out of `p(v)` has a coCartesian lift starting at `v`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CocartesianReport {
    pub inner: Verdict,
    /// Per edge of `X`.
    pub cocartesian: Vec<bool>,
    /// `(base edge, source vertex)` without a coCartesian lift.
    pub missing_lift: Option<(usize, usize)>,
    pub holds: bool,
    pub n_max: usize,
}

impl fmt::Display for CocartesianReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "coCartesian fibration up to n_max = {}", self.n_max)
        } else if !self.inner.holds {
            write!(f, "not an inner fibration: {}", self.inner)
        } else if let Some((e, v)) = self.missing_lift {
            write!(
                f,
                "no coCartesian lift of base edge #{e} at vertex #{v} up to n_max = {}",
                self.n_max
            )
        } else {
            write!(f, "not a coCartesian fibration")
        }
    }
}

pub fn is_cocartesian_fibration(
    x: &SimplicialSet,
    s: &SimplicialSet,
    p: &SimplicialMap,
    n_max: usize,
    budget: &Budget,
) -> Result<CocartesianReport> {
    let inner = is_inner_fibration(x, s, p, n_max, budget)?;
    let cocartesian = cocartesian_edges(x, s, p, n_max, budget)?;
    let mut missing_lift = None;
    if inner.holds && x.dim() >= 1 {
        'outer: for e in s.simplices(1) {
            let source = s.face(1, 1, e);
            for v in x.simplices(0).filter(|&v| p.apply(0, v) == source) {
                let found = x
                    .simplices(1)
                    .any(|f| cocartesian[f] && p.apply(1, f) == e && x.face(1, 1, f) == v);
                if !found {
                    missing_lift = Some((e, v));
                    break 'outer;
                }
            }
        }
    }
    let holds = inner.holds && missing_lift.is_none();
    Ok(CocartesianReport {
        inner,
        cocartesian,
        missing_lift,
        holds,
        n_max,
    })
}

/// `X` marked by its `p`-coCartesian edges.
pub fn natural_marking(
    x: &SimplicialSet,
    s: &SimplicialSet,
    p: &SimplicialMap,
    n_max: usize,
    budget: &Budget,
) -> Result<MarkedSimplicialSet> {
    let marks = cocartesian_edges(x, s, p, n_max, budget)?;
    Ok(MarkedSimplicialSet::new(x.clone(), marks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::standard;

    #[test]
    fn vertex_reversing_horn_has_no_filler() {
        let d1 = standard::delta(1, 2);
        let pt = standard::point(2);
        let p = SimplicialMap::to_point(&d1);
        let e01 = d1.nondegenerate(1)[0];
        let e00 = d1.degen(0, 0, 0);
        let prob = LiftingProblem {
            n: 2,
            missing: 0,
            faces: vec![None, Some(e00), Some(e01)],
            bottom: 0,
        };
        assert!(prob.commutes(&d1, &pt, &p));
        assert!(lift_search(&d1, &pt, &p, &prob).is_empty());
    }

    #[test]
    fn nerves_are_quasi_categories() {
        let c = crate::scat::FiniteCategory::span();
        let n = crate::scat::nerve(&c, 3);
        assert!(is_quasi_category(&n, 3, &Budget::default()).unwrap().holds);
    }

    #[test]
    fn inner_horn_is_not() {
        let h = standard::horn(2, 1, 2).unwrap();
        let v = is_quasi_category(&h, 2, &Budget::default()).unwrap();
        assert!(!v.holds);
        assert!(v.counterexample.is_some());
    }
}
