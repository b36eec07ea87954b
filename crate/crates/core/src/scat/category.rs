use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scat::report::{Report, Validate, ViolationKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category given by explicit objects, morphisms, identities, and
/// a composition table `compose[g][f] = g ∘ f` (defined iff `target f = source g`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
}

impl FiniteCategory {
    /// Assemble a category without checking the axioms; use `validate`.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let no = objects.len();
        let nm = morphisms.len();
        if identities.len() != no || identities.iter().any(|&i| i >= nm) {
            return Err(Error::Invalid("identity table malformed".into()));
        }
        if morphisms.iter().any(|m| m.source >= no || m.target >= no) {
            return Err(Error::Invalid("morphism endpoint out of range".into()));
        }
        if compose.len() != nm
            || compose
                .iter()
                .any(|row| row.len() != nm || row.iter().flatten().any(|&h| h >= nm))
        {
            return Err(Error::Invalid("composition table malformed".into()));
        }
        Ok(FiniteCategory {
            objects,
            morphisms,
            identities,
            compose,
        })
    }

    /// The category of a finite preorder given by `leq(i, j)`; `leq` must be
    /// reflexive and transitive. Morphisms are the pairs `i ≤ j`, ordered
    /// lexicographically, so identities come first for each source.
    pub fn preorder(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let mut morphisms = Vec::new();
        let mut index = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    index[i][j] = Some(morphisms.len());
                    let name = if i == j {
                        format!("id_{}", names[i])
                    } else {
                        format!("{}<{}", names[i], names[j])
                    };
                    morphisms.push(Morphism {
                        name,
                        source: i,
                        target: j,
                    });
                }
            }
        }
        let identities = (0..n).map(|i| index[i][i].expect("reflexive")).collect();
        let nm = morphisms.len();
        let mut compose = vec![vec![None; nm]; nm];
        for (g, mg) in morphisms.iter().enumerate() {
            for (f, mf) in morphisms.iter().enumerate() {
                if mf.target == mg.source {
                    compose[g][f] = Some(index[mf.source][mg.target].expect("transitive"));
                }
            }
        }
        FiniteCategory {
            objects: names,
            morphisms,
            identities,
            compose,
        }
    }

    pub fn terminal() -> Self {
        Self::preorder(vec!["*".into()], |_, _| true)
    }

    /// The ordinal `[n] = {0 < 1 < … < n}`.
    pub fn chain(n: usize) -> Self {
        Self::preorder((0..=n).map(|i| i.to_string()).collect(), |i, j| i <= j)
    }

    pub fn discrete(k: usize) -> Self {
        Self::preorder((0..k).map(|i| i.to_string()).collect(), |i, j| i == j)
    }

    /// Two objects `a, b` with arrows `f, g : a → b`.
    pub fn parallel_pair() -> Self {
        let morphisms = vec![
            Morphism {
                name: "id_a".into(),
                source: 0,
                target: 0,
            },
            Morphism {
                name: "id_b".into(),
                source: 1,
                target: 1,
            },
            Morphism {
                name: "f".into(),
                source: 0,
                target: 1,
            },
            Morphism {
                name: "g".into(),
                source: 0,
                target: 1,
            },
        ];
        let mut compose = vec![vec![None; 4]; 4];
        compose[0][0] = Some(0);
        compose[1][1] = Some(1);
        for f in [2, 3] {
            compose[f][0] = Some(f);
            compose[1][f] = Some(f);
        }
        FiniteCategory {
            objects: vec!["a".into(), "b".into()],
            morphisms,
            identities: vec![0, 1],
            compose,
        }
    }

    /// `b ← a → c`.
    pub fn span() -> Self {
        Self::preorder(vec!["a".into(), "b".into(), "c".into()], |i, j| i == j || i == 0)
    }

    /// `a → c ← b`.
    pub fn cospan() -> Self {
        Self::preorder(vec!["a".into(), "b".into(), "c".into()], |i, j| i == j || j == 2)
    }

    /// The walking isomorphism: objects `0, 1`, arrows `f : 0 → 1`, `g : 1 → 0`
    /// inverse to each other.
    pub fn walking_iso() -> Self {
        let morphisms = vec![
            Morphism {
                name: "id_0".into(),
                source: 0,
                target: 0,
            },
            Morphism {
                name: "id_1".into(),
                source: 1,
                target: 1,
            },
            Morphism {
                name: "f".into(),
                source: 0,
                target: 1,
            },
            Morphism {
                name: "g".into(),
                source: 1,
                target: 0,
            },
        ];
        let mut compose = vec![vec![None; 4]; 4];
        compose[0][0] = Some(0);
        compose[1][1] = Some(1);
        compose[2][0] = Some(2);
        compose[1][2] = Some(2);
        compose[3][1] = Some(3);
        compose[0][3] = Some(3);
        compose[3][2] = Some(0); // g ∘ f
        compose[2][3] = Some(1); // f ∘ g
        FiniteCategory {
            objects: vec!["0".into(), "1".into()],
            morphisms,
            identities: vec![0, 1],
            compose,
        }
    }

    /// The cyclic group of order `k` as a one-object category.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        let morphisms = (0..k)
            .map(|i| Morphism {
                name: if i == 0 { "e".into() } else { format!("t{i}") },
                source: 0,
                target: 0,
            })
            .collect();
        let compose = (0..k).map(|g| (0..k).map(|f| Some((g + f) % k)).collect()).collect();
        FiniteCategory {
            objects: vec!["*".into()],
            morphisms,
            identities: vec![0],
            compose,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, d: usize) -> &str {
        &self.objects[d]
    }

    pub fn object_id(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_id(&self, name: &str) -> Result<usize> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .ok_or_else(|| Error::UnknownObject(format!("morphism {name}")))
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn identity(&self, d: usize) -> usize {
        self.identities[d]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.source(f)] == f
    }

    /// `g ∘ f`; panics when the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.compose[g][f].unwrap_or_else(|| panic!("{} ∘ {} is not composable", self.morphisms[g].name, self.morphisms[f].name))
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn compose_table(&self) -> &[Vec<Option<usize>>] {
        &self.compose
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.source(f) == a && self.target(f) == b)
            .collect()
    }

    /// Morphisms other than identities.
    pub fn non_identities(&self) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| !self.is_identity(f)).collect()
    }

    /// Whether every morphism is invertible.
    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms.len()).all(|f| {
            self.hom(self.target(f), self.source(f))
                .into_iter()
                .any(|g| self.compose(g, f) == self.identity(self.source(f)))
        })
    }

    /// The slice `D/d` (`Side::Over`) or `d/D` (`Side::Under`) with its
    /// projection functor to `D`.
    pub fn slice(&self, d: usize, side: Side) -> Result<Slice> {
        if d >= self.objects.len() {
            return Err(Error::UnknownObject(format!("object #{d}")));
        }
        let objs: Vec<usize> = (0..self.morphisms.len())
            .filter(|&f| match side {
                Side::Over => self.target(f) == d,
                Side::Under => self.source(f) == d,
            })
            .collect();
        let mut morphisms = Vec::new();
        let mut underlying = Vec::new();
        for (a, &fa) in objs.iter().enumerate() {
            for (b, &fb) in objs.iter().enumerate() {
                let (from, to) = match side {
                    Side::Over => (self.source(fa), self.source(fb)),
                    Side::Under => (self.target(fa), self.target(fb)),
                };
                for h in self.hom(from, to) {
                    let ok = match side {
                        Side::Over => self.compose(fb, h) == fa,
                        Side::Under => self.compose(h, fa) == fb,
                    };
                    if ok {
                        morphisms.push(Morphism {
                            name: format!(
                                "{}:{}→{}",
                                self.morphisms[h].name, self.morphisms[fa].name, self.morphisms[fb].name
                            ),
                            source: a,
                            target: b,
                        });
                        underlying.push(h);
                    }
                }
            }
        }
        let find = |a: usize, b: usize, h: usize| -> usize {
            (0..morphisms.len())
                .find(|&m| morphisms[m].source == a && morphisms[m].target == b && underlying[m] == h)
                .expect("slice morphism exists")
        };
        let identities: Vec<usize> = objs
            .iter()
            .enumerate()
            .map(|(a, &fa)| {
                let obj = match side {
                    Side::Over => self.source(fa),
                    Side::Under => self.target(fa),
                };
                find(a, a, self.identity(obj))
            })
            .collect();
        let nm = morphisms.len();
        let mut compose = vec![vec![None; nm]; nm];
        for g in 0..nm {
            for f in 0..nm {
                if morphisms[f].target == morphisms[g].source {
                    let h = self.compose(underlying[g], underlying[f]);
                    compose[g][f] = Some(find(morphisms[f].source, morphisms[g].target, h));
                }
            }
        }
        let names = objs.iter().map(|&f| self.morphisms[f].name.clone()).collect();
        let category = FiniteCategory {
            objects: names,
            morphisms,
            identities,
            compose,
        };
        let projection = Functor {
            objects: objs
                .iter()
                .map(|&f| match side {
                    Side::Over => self.source(f),
                    Side::Under => self.target(f),
                })
                .collect(),
            morphisms: underlying,
        };
        Ok(Slice {
            category,
            projection,
            arrows: objs,
            side,
            apex: d,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `D/d`: arrows into `d`.
    Over,
    /// `d/D`: arrows out of `d`.
    Under,
}

/// A slice category together with its projection and the arrow of `D`
/// underlying each of its objects.
#[derive(Debug, Clone)]
pub struct Slice {
    pub category: FiniteCategory,
    pub projection: Functor,
    pub arrows: Vec<usize>,
    pub side: Side,
    pub apex: usize,
}

impl Slice {
    pub fn object_of_arrow(&self, f: usize) -> Option<usize> {
        self.arrows.iter().position(|&a| a == f)
    }

    fn morphism_over(&self, a: usize, b: usize, h: usize) -> usize {
        (0..self.category.morphism_count())
            .find(|&m| {
                let mm = self.category.morphism(m);
                mm.source == a && mm.target == b && self.projection.morphisms[m] == h
            })
            .expect("reindexed morphism exists")
    }
}

/// The reindexing functor between slices induced by `u : d → d'` in `base`:
/// postcomposition `D/d → D/d'` for over-slices, precomposition
/// `d'/D → d/D` for under-slices.
pub fn reindex(base: &FiniteCategory, u: usize, from: &Slice, to: &Slice) -> Result<Functor> {
    if from.side != to.side {
        return Err(Error::Invalid("slices on different sides".into()));
    }
    let expected = match from.side {
        Side::Over => (from.apex, to.apex),
        Side::Under => (to.apex, from.apex),
    };
    if (base.source(u), base.target(u)) != expected {
        return Err(Error::Invalid("reindexing arrow has the wrong endpoints".into()));
    }
    let objects: Vec<usize> = from
        .arrows
        .iter()
        .map(|&f| {
            let g = match from.side {
                Side::Over => base.compose(u, f),
                Side::Under => base.compose(f, u),
            };
            to.object_of_arrow(g).expect("reindexed object exists")
        })
        .collect();
    let morphisms = (0..from.category.morphism_count())
        .map(|m| {
            let mm = from.category.morphism(m);
            to.morphism_over(objects[mm.source], objects[mm.target], from.projection.morphisms[m])
        })
        .collect();
    Ok(Functor { objects, morphisms })
}

/// A functor between finite categories, given on objects and morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Self {
        Functor {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Functor) -> Functor {
        Functor {
            objects: first.objects.iter().map(|&o| self.objects[o]).collect(),
            morphisms: first.morphisms.iter().map(|&m| self.morphisms[m]).collect(),
        }
    }

    pub fn check(&self, source: &FiniteCategory, target: &FiniteCategory) -> Report {
        let mut report = Report::new();
        if self.objects.len() != source.object_count()
            || self.morphisms.len() != source.morphism_count()
            || self.objects.iter().any(|&o| o >= target.object_count())
            || self.morphisms.iter().any(|&m| m >= target.morphism_count())
        {
            report.push(ViolationKind::Shape, "functor tables malformed");
            return report;
        }
        for f in 0..source.morphism_count() {
            let ff = self.morphisms[f];
            if target.source(ff) != self.objects[source.source(f)] || target.target(ff) != self.objects[source.target(f)] {
                report.push(
                    ViolationKind::Functoriality,
                    format!("{} lands on an arrow with wrong endpoints", source.morphism(f).name),
                );
            }
        }
        if !report.is_ok() {
            return report;
        }
        for d in 0..source.object_count() {
            if self.morphisms[source.identity(d)] != target.identity(self.objects[d]) {
                report.push(
                    ViolationKind::Functoriality,
                    format!("identity of {} not preserved", source.object_name(d)),
                );
            }
        }
        for g in 0..source.morphism_count() {
            for f in 0..source.morphism_count() {
                if let Some(gf) = source.try_compose(g, f) {
                    if self.morphisms[gf] != target.compose(self.morphisms[g], self.morphisms[f]) {
                        report.push(
                            ViolationKind::Functoriality,
                            format!(
                                "composite {} ∘ {} not preserved",
                                source.morphism(g).name,
                                source.morphism(f).name
                            ),
                        );
                    }
                }
            }
        }
        report
    }
}

impl Validate for FiniteCategory {
    fn validate(&self) -> Report {
        let mut report = Report::new();
        let nm = self.morphisms.len();
        for (d, &id) in self.identities.iter().enumerate() {
            if self.source(id) != d || self.target(id) != d {
                report.push(
                    ViolationKind::Unit,
                    format!("identity of {} has wrong endpoints", self.objects[d]),
                );
            }
        }
        for g in 0..nm {
            for f in 0..nm {
                let composable = self.target(f) == self.source(g);
                match (composable, self.compose[g][f]) {
                    (true, None) => report.push(
                        ViolationKind::CompositionUndefined,
                        format!("{} ∘ {} missing", self.morphisms[g].name, self.morphisms[f].name),
                    ),
                    (false, Some(_)) => report.push(
                        ViolationKind::CompositionUndefined,
                        format!(
                            "{} ∘ {} defined on a non-composable pair",
                            self.morphisms[g].name, self.morphisms[f].name
                        ),
                    ),
                    (true, Some(h)) => {
                        if self.source(h) != self.source(f) || self.target(h) != self.target(g) {
                            report.push(
                                ViolationKind::CompositionUndefined,
                                format!("{} ∘ {} has wrong endpoints", self.morphisms[g].name, self.morphisms[f].name),
                            );
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !report.is_ok() {
            return report;
        }
        for f in 0..nm {
            let (s, t) = (self.source(f), self.target(f));
            if self.compose(f, self.identity(s)) != f || self.compose(self.identity(t), f) != f {
                report.push(
                    ViolationKind::Unit,
                    format!("identity law fails at {}", self.morphisms[f].name),
                );
            }
        }
        for h in 0..nm {
            for g in 0..nm {
                if self.target(g) != self.source(h) {
                    continue;
                }
                for f in 0..nm {
                    if self.target(f) != self.source(g) {
                        continue;
                    }
                    let lhs = self.compose(h, self.compose(g, f));
                    let rhs = self.compose(self.compose(h, g), f);
                    if lhs != rhs {
                        report.push(
                            ViolationKind::Associativity,
                            format!(
                                "({} ∘ {}) ∘ {} ≠ {} ∘ ({} ∘ {})",
                                self.morphisms[h].name,
                                self.morphisms[g].name,
                                self.morphisms[f].name,
                                self.morphisms[h].name,
                                self.morphisms[g].name,
                                self.morphisms[f].name
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

    #[test]
    fn builders_are_categories() {
        for c in [
            FiniteCategory::terminal(),
            FiniteCategory::chain(2),
            FiniteCategory::discrete(3),
            FiniteCategory::parallel_pair(),
            FiniteCategory::span(),
            FiniteCategory::cospan(),
            FiniteCategory::walking_iso(),
            FiniteCategory::cyclic(2),
            FiniteCategory::cyclic(3),
        ] {
            assert!(c.validate().is_ok(), "{:?}", c.objects());
        }
    }

    #[test]
    fn broken_associativity_is_reported() {
        let c = FiniteCategory::cyclic(3);
        let mut table = c.compose_table().to_vec();
        table[1][1] = Some(0);
        let bad =
            FiniteCategory::from_parts(c.objects().to_vec(), c.morphisms().to_vec(), c.identities().to_vec(), table).unwrap();
        assert!(!bad.validate().is_ok());
    }

    #[test]
    fn slices_of_the_arrow() {
        let c = FiniteCategory::chain(1);
        let over = c.slice(1, Side::Over).unwrap();
        assert!(over.category.validate().is_ok());
        assert_eq!(over.category.object_count(), 2);
        assert_eq!(over.category.non_identities().len(), 1);
        let under = c.slice(1, Side::Under).unwrap();
        assert_eq!(under.category.object_count(), 1);
        assert_eq!(under.category.morphism_count(), 1);
        let t = FiniteCategory::terminal();
        for side in [Side::Over, Side::Under] {
            let s = t.slice(0, side).unwrap();
            assert_eq!(s.category.object_count(), 1);
            assert_eq!(s.category.morphism_count(), 1);
        }
        assert!(c.slice(5, Side::Over).is_err());
    }

    #[test]
    fn reindexing_is_a_functor() {
        let c = FiniteCategory::chain(2);
        let u = c.hom(0, 1)[0];
        let over0 = c.slice(0, Side::Over).unwrap();
        let over1 = c.slice(1, Side::Over).unwrap();
        let r = reindex(&c, u, &over0, &over1).unwrap();
        assert!(r.check(&over0.category, &over1.category).is_ok());
        let under0 = c.slice(0, Side::Under).unwrap();
        let under1 = c.slice(1, Side::Under).unwrap();
        let r = reindex(&c, u, &under1, &under0).unwrap();
        assert!(r.check(&under1.category, &under0.category).is_ok());
    }
}
