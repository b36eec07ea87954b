//! Slice-wise adjoints, the unit map into the marked mapping space, and
//! cotensors over the nerve.

use crate::error::{Budget, Error, Result};
use crate::grothendieck::diagram::Diagram;
use crate::grothendieck::iso::{canonical_iso, IsoCheck};
use crate::grothendieck::relnerve::{mask_elements, mask_max, RelKey};
use crate::marked::{check_marked_map, MarkedSimplicialSet};
use crate::scat::category::{reindex, FiniteCategory, Side, Slice};
use crate::scat::function_complex::{
    function_complex, function_complex_with, postcompose, precompose, FunctionComplex, Restrict,
};
use crate::scat::limits::{pullback, Pullback};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::nerve::{nerve_keyed, nerve_map, Chain};
use crate::scat::report::{Report, ViolationKind};
use crate::scat::sset::{Keyed, SimplicialSet};

/// A slice of the base together with its nerve and the nerve of its
/// projection, at a fixed bound.
#[derive(Debug, Clone)]
pub struct SliceNerve {
    pub slice: Slice,
    pub nerve: Keyed<Chain>,
    /// `N(D/d) → N(D)` or `N(d/D) → N(D)`.
    pub projection: SimplicialMap,
}

pub fn slice_nerve(base: &FiniteCategory, d: usize, side: Side, dim: usize) -> Result<SliceNerve> {
    let slice = base.slice(d, side)?;
    let nerve = nerve_keyed(&slice.category, dim);
    let nd = nerve_keyed(base, dim);
    let projection = nerve_map(&nerve, &slice.projection, &nd);
    Ok(SliceNerve {
        slice,
        nerve,
        projection,
    })
}

/// `X ×_{♯N(D)} ♯N(D/d)`, marked where the `X` component is marked.
#[derive(Debug, Clone)]
pub struct LeftSlice {
    pub slice: SliceNerve,
    pub pullback: Pullback,
    pub marked: MarkedSimplicialSet,
}

pub fn left_adjoint_slice(x: &MarkedSimplicialSet, p: &SimplicialMap, base: &FiniteCategory, d: usize) -> Result<LeftSlice> {
    let slice = slice_nerve(base, d, Side::Over, x.sset.dim())?;
    let pb = pullback(&x.sset, p, &slice.nerve.sset, &slice.projection)?;
    let marked = if x.sset.dim() >= 1 {
        pb.keyed.keys(1).iter().map(|&(e, _)| x.marked[e]).collect()
    } else {
        Vec::new()
    };
    let m = MarkedSimplicialSet::new(pb.sset().clone(), marked);
    Ok(LeftSlice {
        slice,
        pullback: pb,
        marked: m,
    })
}

/// The map `𝔏(X)(d) → 𝔏(X)(d')` induced by `u : d → d'`.
pub fn left_adjoint_map(base: &FiniteCategory, u: usize, from: &LeftSlice, to: &LeftSlice) -> Result<SimplicialMap> {
    let f = reindex(base, u, &from.slice.slice, &to.slice.slice)?;
    let nf = nerve_map(&from.slice.nerve, &f, &to.slice.nerve);
    let components = (0..from.pullback.keyed.sset.counts().len())
        .map(|n| {
            from.pullback
                .keyed
                .keys(n)
                .iter()
                .map(|&(xv, s)| to.pullback.id(n, xv, nf.apply(n, s)).expect("reindexed pair exists"))
                .collect()
        })
        .collect();
    Ok(SimplicialMap::new(components))
}

/// `[N(d/D), Y]_D` up to degree `k_max`.
#[derive(Debug, Clone)]
pub struct RightValue {
    pub slice: SliceNerve,
    pub complex: FunctionComplex,
}

impl RightValue {
    pub fn sset(&self) -> &SimplicialSet {
        self.complex.sset()
    }
}

pub fn right_adjoint_value(
    y: &SimplicialSet,
    q: &SimplicialMap,
    base: &FiniteCategory,
    d: usize,
    k_max: usize,
    budget: &Budget,
) -> Result<RightValue> {
    let slice = slice_nerve(base, d, Side::Under, y.dim())?;
    let restrict = Restrict {
        over: Some((q, &slice.projection)),
        ..Default::default()
    };
    let complex = function_complex_with(&slice.nerve.sset, y, k_max, restrict, budget)?;
    Ok(RightValue { slice, complex })
}

/// `ℜ(Y)(u) : ℜ(Y)(d) → ℜ(Y)(d')` by precomposition with `N(d'/D) → N(d/D)`.
pub fn right_adjoint_map(base: &FiniteCategory, u: usize, from: &RightValue, to: &RightValue) -> Result<SimplicialMap> {
    let f = reindex(base, u, &to.slice.slice, &from.slice.slice)?;
    let nf = nerve_map(&to.slice.nerve, &f, &from.slice.nerve);
    precompose(&from.complex, &nf, &to.complex)
}

/// `η(d) : X(d) → [♯N(d/D), ∫X]⁺_D`.
#[derive(Debug, Clone)]
pub struct UnitMap {
    pub iso: IsoCheck,
    /// `∫X` marked through the comparison with the marked relative nerve.
    pub total_marked: MarkedSimplicialSet,
    pub slice: SliceNerve,
    pub hom: FunctionComplex,
    /// Edges of the mapping space that are marked maps `♯Δ[1] × A → ∫X`.
    pub hom_marked: Vec<bool>,
    pub map: SimplicialMap,
    pub report: Report,
}

/// Marking of `∫X` read off the relative nerve: the edge over `e` is marked
/// iff its component in `X(target e)` is.
pub fn total_marking(x: &Diagram, iso: &IsoCheck) -> Vec<bool> {
    if x.dim() == 0 {
        return Vec::new();
    }
    let c = &x.base;
    iso.map.components[1]
        .iter()
        .map(|&r| {
            let k = iso.relative.keyed.key(1, r);
            x.marking(k.chain.last_object(c))[k.tau(0b11)]
        })
        .collect()
}

pub fn unit_map(x: &Diagram, d: usize, k_max: usize, budget: &Budget) -> Result<UnitMap> {
    let c = &x.base;
    let dim = x.dim();
    let iso = canonical_iso(x, budget)?;
    if !iso.is_iso() {
        return Err(Error::Invalid(format!("comparison map failed: {iso}")));
    }
    let inverse = iso.map.inverse(iso.relative.sset())?;
    let total_marked = MarkedSimplicialSet::new(iso.total.sset().clone(), total_marking(x, &iso));
    let slice = slice_nerve(c, d, Side::Under, dim)?;
    let a = &slice.nerve.sset;
    let a_marks = vec![true; if dim >= 1 { a.count(1) } else { 0 }];
    let hom = function_complex_with(
        a,
        iso.total.sset(),
        k_max,
        Restrict {
            over: Some((&iso.total.projection, &slice.projection)),
            marking: Some((&a_marks, &total_marked.marked)),
            sharp_simplex: false,
        },
        budget,
    )?;
    let hom_marked: Vec<bool> = if k_max >= 1 {
        hom.sset()
            .simplices(1)
            .map(|f| hom.keyed.key(1, f)[1].iter().all(|&t| total_marked.marked[t]))
            .collect()
    } else {
        Vec::new()
    };
    let xd = x.at(d).truncate(k_max)?;
    let mut report = Report::new();
    let mut components = Vec::new();
    for k in 0..=k_max {
        let prod = &hom.products[k];
        let mut level = Vec::new();
        for y in xd.simplices(k) {
            // value on (a, α): τ^J = X(g_{max J})(y · α|_J)
            let comps: Vec<Vec<usize>> = (0..=dim)
                .map(|m| {
                    prod.keyed
                        .keys(m)
                        .iter()
                        .map(|&(s, al)| {
                            let sc = slice.nerve.key(m, s);
                            let alpha = hom.deltas[k].key(m, al);
                            let chain = sc.map(&slice.slice.projection);
                            let objs = sc.objects(&slice.slice.category);
                            let tau = (1..(1usize << (m + 1)))
                                .map(|mask| {
                                    let g = slice.slice.arrows[objs[mask_max(mask)]];
                                    let sub: Vec<usize> = mask_elements(mask).iter().map(|&e| alpha.apply(e)).collect();
                                    let v = x.at(d).act(k, y, &MonotoneMap::new(k, sub));
                                    x.map(g).apply(mask.count_ones() as usize - 1, v)
                                })
                                .collect();
                            let r = iso
                                .relative
                                .keyed
                                .id(m, &RelKey { chain, tau })
                                .expect("unit value is a relative-nerve simplex");
                            inverse.apply(m, r)
                        })
                        .collect()
                })
                .collect();
            match hom.id_of(k, &SimplicialMap::new(comps)) {
                Some(id) => level.push(id),
                None => {
                    report.push(
                        ViolationKind::MarkedMap,
                        format!("η({}) is not a marked map over the nerve", xd.label(k, y)),
                    );
                    level.push(0);
                }
            }
        }
        components.push(level);
    }
    let map = SimplicialMap::new(components);
    if report.is_ok() {
        let src = MarkedSimplicialSet::new(
            xd.clone(),
            if k_max >= 1 {
                x.marking(d)[..xd.count(1)].to_vec()
            } else {
                Vec::new()
            },
        );
        let tgt = MarkedSimplicialSet::new(hom.sset().clone(), hom_marked.clone());
        report.extend(check_marked_map(&map, &src, &tgt));
    }
    Ok(UnitMap {
        iso,
        total_marked,
        slice,
        hom,
        hom_marked,
        map,
        report,
    })
}

/// `A ⋔ X = [A, X] ×_{[A, N(D)]} N(D)` for `p : X → N(D)`.
#[derive(Debug, Clone)]
pub struct Cotensor {
    pub pullback: Pullback,
    pub maps_into_x: FunctionComplex,
    pub maps_into_base: FunctionComplex,
    /// The structure map to the (truncated) base.
    pub projection: SimplicialMap,
}

impl Cotensor {
    pub fn sset(&self) -> &SimplicialSet {
        self.pullback.sset()
    }
}

pub fn cotensor_over(
    a: &SimplicialSet,
    x: &SimplicialSet,
    p: &SimplicialMap,
    base: &SimplicialSet,
    k_max: usize,
    budget: &Budget,
) -> Result<Cotensor> {
    let ax = function_complex(a, x, k_max, budget)?;
    let ab = function_complex(a, base, k_max, budget)?;
    let post = postcompose(&ax, p, &ab)?;
    let bt = base.truncate(k_max)?;
    // b ↦ ((a, α) ↦ b · α)
    let diagonal = (0..=k_max)
        .map(|k| {
            let prod = &ab.products[k];
            bt.simplices(k)
                .map(|b| {
                    let comps: Vec<Vec<usize>> = (0..=prod.keyed.dim())
                        .map(|m| {
                            prod.keyed
                                .keys(m)
                                .iter()
                                .map(|&(_, al)| base.act(k, b, ab.deltas[k].key(m, al)))
                                .collect()
                        })
                        .collect();
                    ab.id_of(k, &SimplicialMap::new(comps))
                        .ok_or_else(|| Error::Invalid("constant map missing from [A, N(D)]".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let pb = pullback(ax.sset(), &post, &bt, &SimplicialMap::new(diagonal))?;
    let projection = pb.second.clone();
    Ok(Cotensor {
        pullback: pb,
        maps_into_x: ax,
        maps_into_base: ab,
        projection,
    })
}
