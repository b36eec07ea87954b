use crate::error::{Error, Result};
use crate::marked::{check_marked_map, MarkedSimplicialSet};
use crate::scat::category::FiniteCategory;
use crate::scat::map::SimplicialMap;
use crate::scat::report::{Report, Validate, ViolationKind};
use crate::scat::sset::SimplicialSet;

/// A functor from a finite category to (optionally marked) simplicial sets
/// of a common truncation.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub base: FiniteCategory,
    pub objects: Vec<SimplicialSet>,
    /// One map per morphism of `base`.
    pub morphisms: Vec<SimplicialMap>,
    /// Edge markings of each value, for marked diagrams.
    pub markings: Option<Vec<Vec<bool>>>,
}

impl Diagram {
    pub fn new(base: FiniteCategory, objects: Vec<SimplicialSet>, morphisms: Vec<SimplicialMap>) -> Result<Self> {
        if objects.len() != base.object_count() || morphisms.len() != base.morphism_count() {
            return Err(Error::Invalid("diagram tables do not match the base category".into()));
        }
        let dim = objects.first().map(|o| o.dim()).unwrap_or(0);
        for o in &objects {
            if o.dim() != dim {
                return Err(Error::DimMismatch {
                    left: dim,
                    right: o.dim(),
                });
            }
        }
        Ok(Diagram {
            base,
            objects,
            morphisms,
            markings: None,
        })
    }

    /// Build a diagram from maps given on some morphisms; identities and
    /// composites are filled in. Fails if some morphism stays undetermined.
    pub fn from_generators(base: FiniteCategory, objects: Vec<SimplicialSet>, given: Vec<Option<SimplicialMap>>) -> Result<Self> {
        let nm = base.morphism_count();
        if given.len() != nm {
            return Err(Error::Invalid("one entry per morphism expected".into()));
        }
        let mut maps = given;
        for d in 0..base.object_count() {
            let id = base.identity(d);
            if maps[id].is_none() {
                maps[id] = Some(SimplicialMap::identity(&objects[d]));
            }
        }
        loop {
            let mut progressed = false;
            for g in 0..nm {
                for f in 0..nm {
                    if let Some(h) = base.try_compose(g, f) {
                        if maps[h].is_none() {
                            if let (Some(mg), Some(mf)) = (&maps[g], &maps[f]) {
                                maps[h] = Some(mg.compose(mf));
                                progressed = true;
                            }
                        }
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        let morphisms = maps
            .into_iter()
            .enumerate()
            .map(|(f, m)| m.ok_or_else(|| Error::Invalid(format!("no map determined for morphism {}", base.morphism(f).name))))
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(base, objects, morphisms)
    }

    /// The constant diagram at `s`.
    pub fn constant(base: FiniteCategory, s: SimplicialSet) -> Self {
        let objects = vec![s.clone(); base.object_count()];
        let morphisms = vec![SimplicialMap::identity(&s); base.morphism_count()];
        Diagram {
            base,
            objects,
            morphisms,
            markings: None,
        }
    }

    pub fn with_markings(mut self, markings: Vec<Vec<bool>>) -> Self {
        self.markings = Some(markings);
        self
    }

    /// Mark every value flat.
    pub fn flat(mut self) -> Self {
        self.markings = Some(
            self.objects
                .iter()
                .map(|o| MarkedSimplicialSet::flat(o.clone()).marked)
                .collect(),
        );
        self
    }

    /// Mark every value sharp.
    pub fn sharp(mut self) -> Self {
        self.markings = Some(
            self.objects
                .iter()
                .map(|o| MarkedSimplicialSet::sharp(o.clone()).marked)
                .collect(),
        );
        self
    }

    pub fn dim(&self) -> usize {
        self.objects.first().map(|o| o.dim()).unwrap_or(0)
    }

    pub fn at(&self, d: usize) -> &SimplicialSet {
        &self.objects[d]
    }

    pub fn map(&self, f: usize) -> &SimplicialMap {
        &self.morphisms[f]
    }

    pub fn is_marked(&self) -> bool {
        self.markings.is_some()
    }

    /// Marking of `X(d)`; flat when the diagram carries none.
    pub fn marking(&self, d: usize) -> Vec<bool> {
        match &self.markings {
            Some(m) => m[d].clone(),
            None => MarkedSimplicialSet::flat(self.objects[d].clone()).marked,
        }
    }

    pub fn marked_at(&self, d: usize) -> MarkedSimplicialSet {
        MarkedSimplicialSet::new(self.objects[d].clone(), self.marking(d))
    }

    /// Forget the markings.
    pub fn underlying(&self) -> Diagram {
        Diagram {
            markings: None,
            ..self.clone()
        }
    }

    /// Truncate every value and map at `m`.
    pub fn truncate(&self, m: usize) -> Result<Diagram> {
        Ok(Diagram {
            base: self.base.clone(),
            objects: self.objects.iter().map(|o| o.truncate(m)).collect::<Result<_>>()?,
            morphisms: self.morphisms.iter().map(|f| f.truncate(m)).collect(),
            markings: if m >= 1 { self.markings.clone() } else { None },
        })
    }

    /// Total number of nondegenerate simplices of the largest value.
    pub fn max_value_size(&self) -> usize {
        self.objects.iter().map(|o| o.nondegenerate_count()).max().unwrap_or(0)
    }
}

impl Validate for Diagram {
    fn validate(&self) -> Report {
        let mut report = self.base.validate().with_prefix("base");
        let dim = self.dim();
        for (d, o) in self.objects.iter().enumerate() {
            if o.dim() != dim {
                report.push(
                    ViolationKind::MapDimension,
                    format!("value at {} has another bound", self.base.object_name(d)),
                );
            }
            report.extend(o.validate().with_prefix(&format!("value at {}", self.base.object_name(d))));
            if let Some(m) = &self.markings {
                report.extend(
                    self.marked_at(d)
                        .validate()
                        .with_prefix(&format!("marking at {}", self.base.object_name(d))),
                );
                let _ = m;
            }
        }
        if !report.is_ok() {
            return report;
        }
        for f in 0..self.base.morphism_count() {
            let (s, t) = (self.base.source(f), self.base.target(f));
            let name = &self.base.morphism(f).name;
            let r = if self.markings.is_some() {
                check_marked_map(&self.morphisms[f], &self.marked_at(s), &self.marked_at(t))
            } else {
                self.morphisms[f].check(&self.objects[s], &self.objects[t])
            };
            report.extend(r.with_prefix(&format!("map {name}")));
        }
        if !report.is_ok() {
            return report;
        }
        for d in 0..self.base.object_count() {
            if self.morphisms[self.base.identity(d)] != SimplicialMap::identity(&self.objects[d]) {
                report.push(
                    ViolationKind::Functoriality,
                    format!("identity of {} is not sent to the identity", self.base.object_name(d)),
                );
            }
        }
        for g in 0..self.base.morphism_count() {
            for f in 0..self.base.morphism_count() {
                if let Some(h) = self.base.try_compose(g, f) {
                    if self.morphisms[h] != self.morphisms[g].compose(&self.morphisms[f]) {
                        report.push(
                            ViolationKind::Functoriality,
                            format!(
                                "X({} ∘ {}) ≠ X({}) ∘ X({})",
                                self.base.morphism(g).name,
                                self.base.morphism(f).name,
                                self.base.morphism(g).name,
                                self.base.morphism(f).name
                            ),
                        );
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::standard;

    #[test]
    fn composites_are_filled() {
        let base = FiniteCategory::chain(2);
        let objs = vec![standard::point(2), standard::delta(1, 2), standard::delta(2, 2)];
        let mut given = vec![None; base.morphism_count()];
        let f01 = base.hom(0, 1)[0];
        let f12 = base.hom(1, 2)[0];
        given[f01] = Some(SimplicialMap::constant_at(&objs[0], &objs[1], 0));
        given[f12] = Some(standard::operator_map(&crate::scat::MonotoneMap::coface(2, 2), 2));
        let d = Diagram::from_generators(base, objs, given).unwrap();
        assert!(d.validate().is_ok());
    }

    #[test]
    fn broken_functoriality_is_reported() {
        let base = FiniteCategory::cyclic(2);
        let s = standard::delta(1, 2);
        let mut d = Diagram::constant(base, s.clone());
        // the generator acts as a non-involution constant map
        d.morphisms[1] = SimplicialMap::constant_at(&s, &s, 0);
        assert!(d.validate().has(ViolationKind::Functoriality));
    }
}
