use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scat::report::{Report, Validate, ViolationKind};
use crate::scat::sset::SimplicialSet;

/// Degreewise functions between two simplicial sets of equal truncation.
/// Source and target are held by the caller; `check` verifies compatibility.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialMap {
    pub components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(components: Vec<Vec<usize>>) -> Self {
        SimplicialMap { components }
    }

    pub fn identity(s: &SimplicialSet) -> Self {
        SimplicialMap {
            components: s.counts().iter().map(|&c| (0..c).collect()).collect(),
        }
    }

    /// The map sending everything to the single simplex of each degree of a
    /// terminal object.
    pub fn to_point(s: &SimplicialSet) -> Self {
        SimplicialMap {
            components: s.counts().iter().map(|&c| vec![0; c]).collect(),
        }
    }

    /// Map `S → T` constant at a vertex `v` of `T`: degree `n` goes to the
    /// totally degenerate simplex on `v`.
    pub fn constant_at(s: &SimplicialSet, t: &SimplicialSet, v: usize) -> Self {
        let mut components = Vec::with_capacity(s.dim() + 1);
        let mut cur = v;
        for n in 0..=s.dim() {
            components.push(vec![cur; s.count(n)]);
            if n < t.dim() {
                cur = t.degen(n, 0, cur);
            }
        }
        SimplicialMap { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len() - 1
    }

    #[inline]
    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.components[n][x]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SimplicialMap) -> SimplicialMap {
        assert_eq!(self.components.len(), first.components.len(), "dimension mismatch");
        SimplicialMap {
            components: first
                .components
                .iter()
                .enumerate()
                .map(|(n, c)| c.iter().map(|&x| self.components[n][x]).collect())
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|c| {
            let mut v = c.clone();
            v.sort_unstable();
            v.windows(2).all(|w| w[0] != w[1])
        })
    }

    pub fn is_surjective_onto(&self, target: &SimplicialSet) -> bool {
        self.components.iter().enumerate().all(|(n, c)| {
            let mut hit = vec![false; target.count(n)];
            for &y in c {
                hit[y] = true;
            }
            hit.into_iter().all(|h| h)
        })
    }

    pub fn is_bijective_onto(&self, target: &SimplicialSet) -> bool {
        self.is_injective() && self.is_surjective_onto(target)
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self, target: &SimplicialSet) -> Result<SimplicialMap> {
        if !self.is_bijective_onto(target) {
            return Err(Error::Invalid("map is not bijective".into()));
        }
        let components = self
            .components
            .iter()
            .map(|c| {
                let mut inv = vec![0; c.len()];
                for (x, &y) in c.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Ok(SimplicialMap { components })
    }

    pub fn truncate(&self, m: usize) -> SimplicialMap {
        SimplicialMap {
            components: self.components[..=m].to_vec(),
        }
    }

    /// Verify the map against its source and target.
    pub fn check(&self, source: &SimplicialSet, target: &SimplicialSet) -> Report {
        let mut report = Report::new();
        if source.dim() != target.dim() || self.components.len() != source.dim() + 1 {
            report.push(
                ViolationKind::MapDimension,
                format!(
                    "source bound {}, target bound {}, map has {} components",
                    source.dim(),
                    target.dim(),
                    self.components.len()
                ),
            );
            return report;
        }
        for n in 0..=source.dim() {
            if self.components[n].len() != source.count(n) || self.components[n].iter().any(|&y| y >= target.count(n)) {
                report.push(ViolationKind::Shape, format!("component {n} malformed"));
                return report;
            }
        }
        const CAP: usize = 32;
        for n in 0..=source.dim() {
            for x in source.simplices(n) {
                let fx = self.components[n][x];
                if n >= 1 {
                    for i in 0..=n {
                        if self.components[n - 1][source.face(n, i, x)] != target.face(n, i, fx) && report.violations.len() < CAP
                        {
                            report.push(
                                ViolationKind::MapFace,
                                format!("d_{i} not preserved at {} in degree {n}", source.label(n, x)),
                            );
                        }
                    }
                }
                if n < source.dim() {
                    for j in 0..=n {
                        if self.components[n + 1][source.degen(n, j, x)] != target.degen(n, j, fx)
                            && report.violations.len() < CAP
                        {
                            report.push(
                                ViolationKind::MapDegeneracy,
                                format!("s_{j} not preserved at {} in degree {n}", source.label(n, x)),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    pub fn is_valid(&self, source: &SimplicialSet, target: &SimplicialSet) -> bool {
        self.check(source, target).is_ok()
    }
}

/// A map together with its endpoints, for use with [`Validate`].
pub struct Bound<'a> {
    pub map: &'a SimplicialMap,
    pub source: &'a SimplicialSet,
    pub target: &'a SimplicialSet,
}

impl Validate for Bound<'_> {
    fn validate(&self) -> Report {
        self.map.check(self.source, self.target)
    }
}

/// Extend a map given on vertices and nondegenerate simplices to all
/// degrees, filling degenerate simplices through their degeneracy sources.
/// `partial[n][x]` must be set for every nondegenerate `x`.
pub fn fill_degenerate(
    source: &SimplicialSet,
    target: &SimplicialSet,
    mut partial: Vec<Vec<Option<usize>>>,
) -> Result<SimplicialMap> {
    let sources = source.degeneracy_sources();
    for n in 1..=source.dim() {
        for x in source.simplices(n) {
            if partial[n][x].is_none() {
                let (j, y) =
                    sources[n][x].ok_or_else(|| Error::Invalid(format!("no value for nondegenerate {}", source.label(n, x))))?;
                let fy = partial[n - 1][y].expect("lower degree filled first");
                partial[n][x] = Some(target.degen(n - 1, j, fy));
            }
        }
    }
    let components = partial
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|v| v.ok_or_else(|| Error::Invalid("unfilled vertex".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::standard;

    #[test]
    fn identity_is_valid_and_bijective() {
        let s = standard::delta(2, 3);
        let id = SimplicialMap::identity(&s);
        assert!(id.check(&s, &s).is_ok());
        assert!(id.is_bijective_onto(&s));
        assert_eq!(id.compose(&id), id);
    }

    #[test]
    fn constant_map_is_valid() {
        let s = standard::delta(2, 3);
        let t = standard::delta(1, 3);
        let c = SimplicialMap::constant_at(&s, &t, 1);
        assert!(c.check(&s, &t).is_ok());
    }

    #[test]
    fn broken_map_is_reported() {
        let s = standard::delta(1, 2);
        let mut id = SimplicialMap::identity(&s);
        id.components[0].swap(0, 1);
        assert!(id.check(&s, &s).has(ViolationKind::MapFace));
    }
}
