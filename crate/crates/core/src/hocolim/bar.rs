//! The bar construction `𝔏⁺_D(F)` and its comparison with `∫F`.

use crate::error::{Budget, Error, Result};
use crate::grothendieck::adjoints::total_marking;
use crate::grothendieck::diagram::Diagram;
use crate::grothendieck::fiber::fiber;
use crate::grothendieck::iso::{canonical_iso, IsoCheck};
use crate::grothendieck::relnerve::{mask_elements, mask_max, RelKey};
use crate::marked::{check_marked_map, MarkedSimplicialSet};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::nerve::{nerve_keyed, Chain};
use crate::scat::report::{Report, ViolationKind};
use crate::scat::sset::{Keyed, SimplicialSet};

/// Degree `n` is `⊔_σ {σ} × F(σ(0))_n`.
#[derive(Debug, Clone)]
pub struct Bar {
    pub keyed: Keyed<(Chain, usize)>,
    pub nerve: Keyed<Chain>,
    pub marked: MarkedSimplicialSet,
    pub projection: SimplicialMap,
}

impl Bar {
    pub fn sset(&self) -> &SimplicialSet {
        &self.keyed.sset
    }
}

/// Faces other than `d_0` act on both coordinates. `d_0` drops the first
/// object of the chain, so the simplex is carried along `f_1` into the
/// value at the new first object; this is the only choice under which the
/// projection and the comparison with `∫F` are simplicial.
pub fn bar_construction(f: &Diagram) -> Result<Bar> {
    let c = &f.base;
    let dim = f.dim();
    let nk = nerve_keyed(c, dim);
    let levels = (0..=dim)
        .map(|n| {
            nk.keys(n)
                .iter()
                .flat_map(|s| f.at(s.start).simplices(n).map(move |x| (s.clone(), x)))
                .collect()
        })
        .collect();
    let keyed = Keyed::build(
        dim,
        levels,
        |n, i, (s, x)| {
            let y = f.at(s.start).face(n, i, *x);
            if i == 0 {
                (s.face(c, 0), f.map(s.arrows[0]).apply(n - 1, y))
            } else {
                (s.face(c, i), y)
            }
        },
        |n, j, (s, x)| (s.degen(c, j), f.at(s.start).degen(n, j, *x)),
        |n, (s, x)| format!("{}|{}", s.label(c), f.at(s.start).label(n, *x)),
    )?;
    let marked = if dim >= 1 {
        keyed.keys(1).iter().map(|(s, x)| f.marking(s.start)[*x]).collect()
    } else {
        Vec::new()
    };
    let projection = SimplicialMap::new(
        (0..=dim)
            .map(|n| keyed.keys(n).iter().map(|(s, _)| nk.id(n, s).unwrap()).collect())
            .collect(),
    );
    Ok(Bar {
        marked: MarkedSimplicialSet::new(keyed.sset.clone(), marked),
        keyed,
        nerve: nk,
        projection,
    })
}

/// `|𝔏⁺(F)_n| = Σ_{σ ∈ N(D)_n} |F(σ(0))_n|` in every degree.
pub fn bar_size_formula(f: &Diagram, bar: &Bar) -> bool {
    (0..=f.dim()).all(|n| {
        let expected: usize = bar.nerve.keys(n).iter().map(|s| f.at(s.start).count(n)).sum();
        expected == bar.sset().count(n)
    })
}

/// `ι : 𝔏⁺(F) → ∫F` and its checks.
#[derive(Debug, Clone)]
pub struct Iota {
    pub bar: Bar,
    pub iso: IsoCheck,
    pub total_marked: MarkedSimplicialSet,
    pub map: SimplicialMap,
    /// Degrees in which `ι` is injective.
    pub injective: Vec<bool>,
    /// Objects whose fiber map is a bijection.
    pub fiber_bijective: Vec<bool>,
    /// Whether the map is a marked map over the nerve.
    pub report: Report,
}

impl Iota {
    pub fn holds(&self) -> bool {
        self.report.is_ok() && self.injective.iter().all(|&b| b) && self.fiber_bijective.iter().all(|&b| b)
    }
}

/// The relative-nerve image of `(σ, x)`: `τ^J = F(σ(0 → max J))(x|_J)`,
/// whose top component is `F(f_n ∘ … ∘ f_1)(x)`.
pub fn iota_key(f: &Diagram, s: &Chain, n: usize, x: usize) -> RelKey {
    let c = &f.base;
    let tau = (1..(1usize << (n + 1)))
        .map(|mask| {
            let sub = f.at(s.start).act(n, x, &MonotoneMap::new(n, mask_elements(mask)));
            f.map(s.between(c, 0, mask_max(mask)))
                .apply(mask.count_ones() as usize - 1, sub)
        })
        .collect();
    RelKey { chain: s.clone(), tau }
}

pub fn iota_comparison(f: &Diagram, budget: &Budget) -> Result<Iota> {
    let bar = bar_construction(f)?;
    let iso = canonical_iso(f, budget)?;
    if !iso.is_iso() {
        return Err(Error::Invalid(format!("comparison map failed: {iso}")));
    }
    let inverse = iso.map.inverse(iso.relative.sset())?;
    let total_marked = MarkedSimplicialSet::new(iso.total.sset().clone(), total_marking(f, &iso));
    let dim = f.dim();
    let mut report = Report::new();
    let mut components = Vec::new();
    for n in 0..=dim {
        let mut level = Vec::new();
        for (s, x) in bar.keyed.keys(n) {
            match iso.relative.keyed.id(n, &iota_key(f, s, n, *x)) {
                Some(r) => level.push(inverse.apply(n, r)),
                None => {
                    report.push(ViolationKind::MapFace, format!("no image for {}", s.label(&f.base)));
                    level.push(0);
                }
            }
        }
        components.push(level);
    }
    let map = SimplicialMap::new(components);
    if report.is_ok() {
        report.extend(check_marked_map(&map, &bar.marked, &total_marked));
        if iso.total.projection.compose(&map) != bar.projection {
            report.push(ViolationKind::MapFace, "ι does not commute with the projections");
        }
    }
    let injective = (0..=dim)
        .map(|n| {
            let mut seen = std::collections::HashSet::new();
            map.components[n].iter().all(|&y| seen.insert(y))
        })
        .collect();
    let mut fiber_bijective = Vec::new();
    if report.is_ok() {
        for d in 0..f.base.object_count() {
            let v = bar.nerve.id(0, &Chain::vertex(d)).unwrap();
            let fb = fiber(&bar.projection, bar.sset(), &bar.nerve.sset, 0, v)?;
            let ft = fiber(&iso.total.projection, iso.total.sset(), &iso.total.nerve.sset, 0, v)?;
            let fmap = SimplicialMap::new(
                (0..=dim)
                    .map(|n| {
                        fb.keyed
                            .keys(n)
                            .iter()
                            .map(|&(a, b)| ft.id(n, a, map.apply(n, b)).expect("ι preserves fibers"))
                            .collect()
                    })
                    .collect(),
            );
            fiber_bijective.push(fmap.is_bijective_onto(ft.sset()));
        }
    }
    Ok(Iota {
        bar,
        iso,
        total_marked,
        map,
        injective,
        fiber_bijective,
        report,
    })
}
