//! The comparison `∫X → N_X(D)` and its verification.

use std::fmt;

use crate::error::{Budget, Result};
use crate::grothendieck::diagram::Diagram;
use crate::grothendieck::gerbe::GerbeTower;
use crate::grothendieck::relnerve::{mask_elements, relative_nerve, RelKey, RelativeNerve};
use crate::grothendieck::total::{grothendieck_total_with, top_value, Total};
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::report::{Report, ViolationKind};

#[derive(Debug, Clone)]
pub struct IsoCheck {
    pub total: Total,
    pub relative: RelativeNerve,
    pub map: SimplicialMap,
    /// Per degree: is the map a bijection there.
    pub bijective: Vec<bool>,
    pub report: Report,
}

impl IsoCheck {
    pub fn is_iso(&self) -> bool {
        self.report.is_ok() && self.bijective.iter().all(|&b| b)
    }
}

impl fmt::Display for IsoCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.bijective.len().saturating_sub(1);
        if self.is_iso() {
            write!(f, "bijective, degrees 0..{top}")
        } else {
            let bad: Vec<String> = self
                .bijective
                .iter()
                .enumerate()
                .filter(|(_, &b)| !b)
                .map(|(n, _)| n.to_string())
                .collect();
            write!(f, "not an isomorphism")?;
            if !bad.is_empty() {
                write!(f, "; not bijective in degrees {}", bad.join(", "))?;
            }
            if !self.report.is_ok() {
                write!(f, "\n{}", self.report)?;
            }
            Ok(())
        }
    }
}

/// The relative-nerve key of a total-space simplex: `τ^J` is the top value
/// of `p₂` of the restriction to `Δ^J`.
pub fn relative_key(total: &Total, tower: &GerbeTower<'_>, n: usize, id: usize) -> Result<RelKey> {
    let (chain, _) = total.keyed.key(n, id).clone();
    let tau = (1..(1usize << (n + 1)))
        .map(|mask| {
            let elems = mask_elements(mask);
            let m = elems.len() - 1;
            let sub = total.sset().act(n, id, &MonotoneMap::new(n, elems));
            let (s, y) = total.keyed.key(m, sub);
            let g = tower.gerbe(s)?;
            Ok(top_value(&g.complex, m, g.p2.apply(0, *y)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RelKey { chain, tau })
}

pub fn canonical_iso(x: &Diagram, budget: &Budget) -> Result<IsoCheck> {
    let (total, tower) = grothendieck_total_with(x, budget)?;
    let relative = relative_nerve(x)?;
    let dim = x.dim();
    let mut report = Report::new();
    let mut components = Vec::with_capacity(dim + 1);
    for n in 0..=dim {
        let mut level = Vec::with_capacity(total.sset().count(n));
        for id in total.sset().simplices(n) {
            let key = relative_key(&total, &tower, n, id)?;
            match relative.keyed.id(n, &key) {
                Some(r) => level.push(r),
                None => {
                    report.push(
                        ViolationKind::MapFace,
                        format!("{} has no relative-nerve image", total.sset().label(n, id)),
                    );
                    level.push(0);
                }
            }
        }
        components.push(level);
    }
    let map = SimplicialMap::new(components);
    if report.is_ok() {
        report.extend(map.check(total.sset(), relative.sset()));
        if relative.projection.compose(&map) != total.projection {
            report.push(ViolationKind::MapFace, "the comparison does not commute with the projections");
        }
    }
    let bijective = (0..=dim)
        .map(|n| {
            let mut seen = vec![false; relative.sset().count(n)];
            let mut ok = map.components[n].len() == seen.len();
            for &r in &map.components[n] {
                if seen[r] {
                    ok = false;
                }
                seen[r] = true;
            }
            ok && seen.iter().all(|&s| s)
        })
        .collect();
    Ok(IsoCheck {
        total,
        relative,
        map,
        bijective,
        report,
    })
}
