//! Marked simplicial sets and their localization.

pub mod adjunction;
pub mod equivalence;
pub mod hom;
pub mod localize;

use crate::scat::map::SimplicialMap;
use crate::scat::report::{Report, Validate, ViolationKind};
use crate::scat::sset::SimplicialSet;

pub use adjunction::{counit, unit, Counit, Unit};
pub use equivalence::{core, is_equivalence_edge, mark_equivalences, Witness};
pub use hom::{marked_hom, MarkedHom};
pub use localize::{localization_universal, localize, localize_map, LocKey, Localization};

/// A simplicial set with a set of marked edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSimplicialSet {
    pub sset: SimplicialSet,
    /// One flag per edge; empty when the truncation has no edges.
    pub marked: Vec<bool>,
}

impl MarkedSimplicialSet {
    pub fn new(sset: SimplicialSet, marked: Vec<bool>) -> Self {
        MarkedSimplicialSet { sset, marked }
    }

    /// Only degenerate edges marked.
    pub fn flat(sset: SimplicialSet) -> Self {
        let marked = if sset.dim() >= 1 {
            sset.degenerate_flags(1)
        } else {
            Vec::new()
        };
        MarkedSimplicialSet { sset, marked }
    }

    /// Every edge marked.
    pub fn sharp(sset: SimplicialSet) -> Self {
        let marked = if sset.dim() >= 1 {
            vec![true; sset.count(1)]
        } else {
            Vec::new()
        };
        MarkedSimplicialSet { sset, marked }
    }

    /// Mark the given edges plus all degenerate ones.
    pub fn with_edges(sset: SimplicialSet, edges: &[usize]) -> Self {
        let mut m = Self::flat(sset);
        for &e in edges {
            m.marked[e] = true;
        }
        m
    }

    pub fn underlying(&self) -> &SimplicialSet {
        &self.sset
    }

    pub fn is_marked(&self, e: usize) -> bool {
        self.marked[e]
    }

    pub fn marked_edges(&self) -> Vec<usize> {
        (0..self.marked.len()).filter(|&e| self.marked[e]).collect()
    }

    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    /// Restrict the marking to degrees `0..=m`.
    pub fn truncate(&self, m: usize) -> crate::Result<MarkedSimplicialSet> {
        let sset = self.sset.truncate(m)?;
        let marked = if m >= 1 { self.marked.clone() } else { Vec::new() };
        Ok(MarkedSimplicialSet { sset, marked })
    }
}

impl Validate for MarkedSimplicialSet {
    fn validate(&self) -> Report {
        let mut report = self.sset.validate();
        if self.sset.dim() == 0 {
            return report;
        }
        if self.marked.len() != self.sset.count(1) {
            report.push(ViolationKind::Shape, "marking has the wrong length");
            return report;
        }
        for (e, deg) in self.sset.degenerate_flags(1).into_iter().enumerate() {
            if deg && !self.marked[e] {
                report.push(
                    ViolationKind::Marking,
                    format!("degenerate edge {} is not marked", self.sset.label(1, e)),
                );
            }
        }
        report
    }
}

/// Check a map of marked simplicial sets: simplicial, and `f(ℰ) ⊆ ℰ'`.
pub fn check_marked_map(f: &SimplicialMap, source: &MarkedSimplicialSet, target: &MarkedSimplicialSet) -> Report {
    let mut report = f.check(&source.sset, &target.sset);
    if !report.is_ok() || source.sset.dim() == 0 {
        return report;
    }
    for e in source.marked_edges() {
        if !target.marked[f.apply(1, e)] {
            report.push(
                ViolationKind::MarkedMap,
                format!(
                    "marked edge {} goes to unmarked {}",
                    source.sset.label(1, e),
                    target.sset.label(1, f.apply(1, e))
                ),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::standard;

    #[test]
    fn flat_and_sharp_markings() {
        let p = MarkedSimplicialSet::flat(standard::point(2));
        assert_eq!(p.marked_count(), 1);
        assert!(p.validate().is_ok());
        let s = MarkedSimplicialSet::sharp(standard::delta(1, 1));
        assert_eq!(s.marked_count(), 3);
        let d = standard::delta(2, 2);
        assert_eq!(MarkedSimplicialSet::flat(d.clone()).underlying(), &d);
    }

    #[test]
    fn missing_degenerate_mark_is_rejected() {
        let mut m = MarkedSimplicialSet::flat(standard::delta(1, 2));
        let e = m.marked_edges()[0];
        m.marked[e] = false;
        assert!(m.validate().has(ViolationKind::Marking));
    }
}
