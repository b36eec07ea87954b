//! Colimits of diagrams, plain and marked, and the homotopy colimit
//! obtained by localizing the bar construction.

pub mod bar;

pub use bar::{bar_construction, bar_size_formula, iota_comparison, Bar, Iota};

use crate::error::{Budget, Error, Result};
use crate::grothendieck::diagram::Diagram;
use crate::marked::{localize, mark_equivalences, Localization, MarkedSimplicialSet};
use crate::scat::enumerate::MapSearch;
use crate::scat::limits::{colimit, product, Colimit};
use crate::scat::map::SimplicialMap;
use crate::scat::report::{Report, ViolationKind};
use crate::scat::sset::SimplicialSet;

/// `colim F`: the degreewise quotient of `⊔_d F(d)` by `x ∼ F(f)(x)`.
pub fn colim_diagram(f: &Diagram) -> Result<Colimit> {
    let objects: Vec<&SimplicialSet> = f.objects.iter().collect();
    let arrows: Vec<(usize, usize, &SimplicialMap)> = (0..f.base.morphism_count())
        .filter(|&m| !f.base.is_identity(m))
        .map(|m| (f.base.source(m), f.base.target(m), f.map(m)))
        .collect();
    colimit(&objects, &arrows)
}

/// `colim⁺ F`: the colimit, marked at the images of marked edges.
pub fn colim_marked(f: &Diagram) -> Result<(Colimit, MarkedSimplicialSet)> {
    let col = colim_diagram(f)?;
    let mut marked = vec![false; if f.dim() >= 1 { col.sset.count(1) } else { 0 }];
    if f.dim() >= 1 {
        for d in 0..f.base.object_count() {
            let m = f.marking(d);
            for e in f.at(d).simplices(1) {
                if m[e] {
                    marked[col.injections[d].apply(1, e)] = true;
                }
            }
        }
    }
    let ms = MarkedSimplicialSet::new(col.sset.clone(), marked);
    Ok((col, ms))
}

/// Objectwise equivalence marking `Eᴰ`.
pub fn mark_objectwise(f: &Diagram) -> Result<Diagram> {
    let marks = f
        .objects
        .iter()
        .map(|o| mark_equivalences(o).map(|m| m.marked))
        .collect::<Result<Vec<_>>>()?;
    Ok(f.underlying().with_markings(marks))
}

/// The stages of `L ∘ u_! ∘ 𝔏⁺ ∘ Eᴰ`.
#[derive(Debug, Clone)]
pub struct Hocolim {
    pub marked_diagram: Diagram,
    pub bar: Bar,
    pub localization: Localization,
}

impl Hocolim {
    pub fn sset(&self) -> &SimplicialSet {
        self.localization.sset()
    }

    /// Simplex counts of the bar object and of the result, per degree.
    pub fn sizes(&self) -> (Vec<usize>, Vec<usize>) {
        (self.bar.sset().counts().to_vec(), self.sset().counts().to_vec())
    }
}

pub fn hocolim(f: &Diagram) -> Result<Hocolim> {
    if f.dim() < 2 {
        return Err(Error::InsufficientTruncation {
            needed: 2,
            available: f.dim(),
            context: "homotopy colimit".into(),
        });
    }
    let marked_diagram = mark_objectwise(f)?;
    let bar = bar_construction(&marked_diagram)?;
    // u_! forgets the projection to the nerve
    let localization = localize(&bar.marked)?;
    Ok(Hocolim {
        marked_diagram,
        bar,
        localization,
    })
}

/// `X ⊗ K`: objectwise product with `♭K`.
pub fn tensor_diagram(x: &Diagram, k: &SimplicialSet) -> Result<Diagram> {
    let prods = x.objects.iter().map(|o| product(o, k)).collect::<Result<Vec<_>>>()?;
    let objects: Vec<SimplicialSet> = prods.iter().map(|p| p.sset().clone()).collect();
    let morphisms = (0..x.base.morphism_count())
        .map(|m| {
            let (s, t) = (x.base.source(m), x.base.target(m));
            let fm = x.map(m);
            SimplicialMap::new(
                (0..=x.dim())
                    .map(|n| {
                        prods[s]
                            .keyed
                            .keys(n)
                            .iter()
                            .map(|&(a, b)| prods[t].id(n, fm.apply(n, a), b).unwrap())
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect();
    let markings = (0..x.base.object_count())
        .map(|d| {
            let m = x.marking(d);
            if x.dim() == 0 {
                return Vec::new();
            }
            prods[d]
                .keyed
                .keys(1)
                .iter()
                .map(|&(a, b)| m[a] && k.is_degenerate(1, b))
                .collect()
        })
        .collect();
    Ok(Diagram::new(x.base.clone(), objects, morphisms)?.with_markings(markings))
}

/// Compare `𝔏⁺(X ⊗ K)` with `𝔏⁺(X) ⊗ K` through `(σ, (x, k)) ↦ ((σ, x), k)`.
pub fn tensor_compat_check(x: &Diagram, k: &SimplicialSet) -> Result<Report> {
    let left = bar_construction(&tensor_diagram(x, k)?)?;
    let bx = bar_construction(x)?;
    let right = product(bx.sset(), k)?;
    let prods: Vec<_> = x.objects.iter().map(|o| product(o, k)).collect::<Result<Vec<_>>>()?;
    let mut report = Report::new();
    let map = SimplicialMap::new(
        (0..=x.dim())
            .map(|n| {
                left.keyed
                    .keys(n)
                    .iter()
                    .map(|(s, xk_id)| {
                        let (a, b) = prods[s.start].pair(n, *xk_id);
                        let sx = bx.keyed.id(n, &(s.clone(), a)).unwrap();
                        right.id(n, sx, b).unwrap()
                    })
                    .collect()
            })
            .collect(),
    );
    report.extend(map.check(left.sset(), right.sset()));
    if !map.is_bijective_onto(right.sset()) {
        report.push(ViolationKind::MapDimension, "the canonical map is not a bijection");
    }
    if x.dim() >= 1 {
        for e in left.sset().simplices(1) {
            let (be, ke) = right.pair(1, map.apply(1, e));
            let expected = bx.marked.marked[be] && k.is_degenerate(1, ke);
            if left.marked.marked[e] != expected {
                report.push(
                    ViolationKind::MarkedMap,
                    format!("marking differs at {}", left.sset().label(1, e)),
                );
            }
        }
    }
    Ok(report)
}

/// Maps out of a colimit against cocones, for a fixed target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoconeCheck {
    pub cocones: usize,
    pub maps: usize,
    /// Restriction along the injections is a bijection from maps to cocones.
    pub bijective: bool,
}

/// Enumerate all cocones `F ⇒ Y` and all maps `colim F → Y` and compare.
pub fn cocone_check(f: &Diagram, y: &SimplicialSet, budget: &Budget) -> Result<CoconeCheck> {
    let col = colim_diagram(f)?;
    let per_object: Vec<Vec<SimplicialMap>> = f
        .objects
        .iter()
        .map(|o| MapSearch::new(o, y).budget(budget).all())
        .collect::<Result<_>>()?;
    let mut cocones: Vec<Vec<SimplicialMap>> = Vec::new();
    let mut current: Vec<SimplicialMap> = Vec::new();
    fn go(f: &Diagram, per: &[Vec<SimplicialMap>], cur: &mut Vec<SimplicialMap>, out: &mut Vec<Vec<SimplicialMap>>) {
        let d = cur.len();
        if d == per.len() {
            out.push(cur.clone());
            return;
        }
        for m in &per[d] {
            cur.push(m.clone());
            // every arrow between chosen objects must commute
            let ok = (0..f.base.morphism_count()).all(|a| {
                let (s, t) = (f.base.source(a), f.base.target(a));
                s > d || t > d || cur[t].compose(f.map(a)) == cur[s]
            });
            if ok {
                go(f, per, cur, out);
            }
            cur.pop();
        }
    }
    go(f, &per_object, &mut current, &mut cocones);
    let maps = MapSearch::new(&col.sset, y).budget(budget).all()?;
    let mut restricted: Vec<Vec<SimplicialMap>> = maps
        .iter()
        .map(|m| col.injections.iter().map(|i| m.compose(i)).collect())
        .collect();
    restricted.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    let before = restricted.len();
    restricted.dedup();
    let mut expected = cocones.clone();
    expected.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    let bijective = before == restricted.len() && restricted == expected;
    Ok(CoconeCheck {
        cocones: cocones.len(),
        maps: maps.len(),
        bijective,
    })
}

/// `|𝒮(L colim⁺ Eᴰ F, Y)|` and `|𝒮(colim F, Y)|`, reported side by side.
pub fn colimit_hom_counts(f: &Diagram, y: &SimplicialSet, budget: &Budget) -> Result<(usize, usize)> {
    let (_, marked) = colim_marked(&mark_objectwise(f)?)?;
    let loc = localize(&marked)?;
    let left = MapSearch::new(loc.sset(), y).budget(budget).count()?;
    let right = MapSearch::new(&colim_diagram(f)?.sset, y).budget(budget).count()?;
    Ok((left, right))
}
