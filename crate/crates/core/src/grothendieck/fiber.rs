//! Fibers of maps over simplices of the base, and the fiber laws for the
//! relative nerve and the total space.

use crate::error::{Error, Result};
use crate::grothendieck::diagram::Diagram;
use crate::grothendieck::iso::IsoCheck;
use crate::grothendieck::relnerve::{mask_elements, RelKey, RelativeNerve};
use crate::scat::limits::{pullback, Pullback};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::nerve::Chain;
use crate::scat::report::{Report, ViolationKind};
use crate::scat::sset::SimplicialSet;
use crate::scat::standard;

/// `Δ[n] ×_B E` for `p : E → B` and `σ ∈ B_n`; simplices are pairs `(δ, e)`.
pub fn fiber(p: &SimplicialMap, total: &SimplicialSet, base: &SimplicialSet, n: usize, sigma: usize) -> Result<Pullback> {
    if n > base.dim() || sigma >= base.count(n) {
        return Err(Error::OutOfRange(format!("simplex {sigma} of degree {n}")));
    }
    let delta = standard::delta(n, base.dim());
    let s = standard::classifying_map(base, n, sigma);
    pullback(&delta, &s, total, p)
}

#[derive(Debug, Clone)]
pub struct FiberCheck {
    /// `X(d) → fiber over d`.
    pub map: SimplicialMap,
    pub fiber: Pullback,
    pub report: Report,
}

impl FiberCheck {
    pub fn is_iso(&self) -> bool {
        self.report.is_ok()
    }
}

fn finish(map: SimplicialMap, source: &SimplicialSet, fiber: Pullback) -> FiberCheck {
    let mut report = map.check(source, fiber.sset());
    if report.is_ok() && !map.is_bijective_onto(fiber.sset()) {
        report.push(ViolationKind::MapDimension, "the comparison is not a bijection");
    }
    FiberCheck { map, fiber, report }
}

/// The relative-nerve simplex over the identity chain on `d` whose top
/// component is `y ∈ X(d)_k`.
pub fn vertex_key(x: &Diagram, d: usize, k: usize, y: usize) -> RelKey {
    let id = x.base.identity(d);
    let tau = (1..(1usize << (k + 1)))
        .map(|mask| x.at(d).act(k, y, &MonotoneMap::new(k, mask_elements(mask))))
        .collect();
    RelKey {
        chain: Chain {
            start: d,
            arrows: vec![id; k],
        },
        tau,
    }
}

/// `f(d) ≅` the fiber of `p_f` over the vertex `d`.
pub fn relative_fiber_check(x: &Diagram, rn: &RelativeNerve, d: usize) -> Result<FiberCheck> {
    let v = rn
        .nerve
        .id(0, &Chain::vertex(d))
        .ok_or_else(|| Error::UnknownObject(format!("object #{d}")))?;
    let fib = fiber(&rn.projection, rn.sset(), &rn.nerve.sset, 0, v)?;
    let xd = x.at(d);
    let mut components = Vec::new();
    for k in 0..=xd.dim() {
        let mut level = Vec::new();
        for y in xd.simplices(k) {
            let r = rn
                .keyed
                .id(k, &vertex_key(x, d, k, y))
                .ok_or_else(|| Error::Invalid(format!("{} has no relative-nerve simplex", xd.label(k, y))))?;
            level.push(fib.id(k, 0, r).expect("simplex lies over d"));
        }
        components.push(level);
    }
    Ok(finish(SimplicialMap::new(components), xd, fib))
}

/// `X(d) ≅` the fiber of `∫X → N(D)` over `d`, through the comparison map.
pub fn total_fiber_check(x: &Diagram, iso: &IsoCheck, d: usize) -> Result<FiberCheck> {
    let total = &iso.total;
    let v = total
        .nerve
        .id(0, &Chain::vertex(d))
        .ok_or_else(|| Error::UnknownObject(format!("object #{d}")))?;
    let fib = fiber(&total.projection, total.sset(), &total.nerve.sset, 0, v)?;
    let inverse = iso.map.inverse(iso.relative.sset())?;
    let xd = x.at(d);
    let mut components = Vec::new();
    for k in 0..=xd.dim() {
        let mut level = Vec::new();
        for y in xd.simplices(k) {
            let r = iso
                .relative
                .keyed
                .id(k, &vertex_key(x, d, k, y))
                .ok_or_else(|| Error::Invalid(format!("{} has no relative-nerve simplex", xd.label(k, y))))?;
            level.push(fib.id(k, 0, inverse.apply(k, r)).expect("simplex lies over d"));
        }
        components.push(level);
    }
    Ok(finish(SimplicialMap::new(components), xd, fib))
}
