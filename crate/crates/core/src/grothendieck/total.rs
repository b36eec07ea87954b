//! The Grothendieck simplicial space and its total simplicial set `∫X`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Budget, Error, Result};
use crate::grothendieck::diagram::Diagram;
use crate::grothendieck::gerbe::GerbeTower;
use crate::scat::bisimplicial::{BisimplicialSet, CellTables};
use crate::scat::function_complex::FunctionComplex;
use crate::scat::map::SimplicialMap;
use crate::scat::monotone::MonotoneMap;
use crate::scat::nerve::{nerve_keyed, Chain};
use crate::scat::report::{Report, ViolationKind};
use crate::scat::sset::{Keyed, SimplicialSet};
use crate::scat::standard;

/// Row `m` is `⊔_σ {σ} × 𝒢ˣ_m(σ)`; column `k` is the gerbe degree.
#[derive(Debug, Clone)]
pub struct GrothendieckSpace {
    pub space: BisimplicialSet,
    /// `cells[m][k]`: `(σ, gerbe cell)` in cell order.
    pub cells: Vec<Vec<Vec<(Chain, usize)>>>,
    /// Chain ids in the nerve (at the diagram's bound) of each cell.
    pub projection: Vec<Vec<Vec<usize>>>,
}

fn check_bounds(x: &Diagram, rows: usize, cols: usize) -> Result<()> {
    if rows + cols > x.dim() {
        return Err(Error::InsufficientTruncation {
            needed: rows + cols,
            available: x.dim(),
            context: "Grothendieck space".into(),
        });
    }
    Ok(())
}

pub fn grothendieck_space(x: &Diagram, rows: usize, cols: usize, budget: &Budget) -> Result<GrothendieckSpace> {
    check_bounds(x, rows, cols)?;
    let c = &x.base;
    let tower = GerbeTower::new(x, cols, budget)?;
    let nk = nerve_keyed(c, x.dim());
    let mut cells: Vec<Vec<Vec<(Chain, usize)>>> = Vec::new();
    let mut index: Vec<Vec<HashMap<(Chain, usize), usize>>> = Vec::new();
    for m in 0..=rows {
        let mut row = Vec::new();
        let mut row_index = Vec::new();
        for k in 0..=cols {
            let mut list = Vec::new();
            for sigma in nk.keys(m) {
                let g = tower.gerbe(sigma)?;
                list.extend(g.sset().simplices(k).map(|y| (sigma.clone(), y)));
            }
            row_index.push(list.iter().cloned().enumerate().map(|(i, key)| (key, i)).collect());
            row.push(list);
        }
        cells.push(row);
        index.push(row_index);
    }
    let mut tables = Vec::new();
    for m in 0..=rows {
        let mut row = Vec::new();
        for k in 0..=cols {
            let list = &cells[m][k];
            let mut t = CellTables {
                count: list.len(),
                ..Default::default()
            };
            if m >= 1 {
                for i in 0..=m {
                    t.h_face.push(
                        list.iter()
                            .map(|(s, y)| {
                                let g = tower.gerbe(s)?;
                                let key = (s.face(c, i), g.cell(k, *y).faces[i]);
                                Ok(index[m - 1][k][&key])
                            })
                            .collect::<Result<_>>()?,
                    );
                }
            }
            if m < rows {
                for j in 0..=m {
                    t.h_degen.push(
                        list.iter()
                            .map(|(s, y)| {
                                let key = (s.degen(c, j), tower.iota(s, j, k, *y)?);
                                Ok(index[m + 1][k][&key])
                            })
                            .collect::<Result<_>>()?,
                    );
                }
            }
            if k >= 1 {
                for i in 0..=k {
                    t.v_face.push(
                        list.iter()
                            .map(|(s, y)| {
                                let g = tower.gerbe(s)?;
                                Ok(index[m][k - 1][&(s.clone(), g.sset().face(k, i, *y))])
                            })
                            .collect::<Result<_>>()?,
                    );
                }
            }
            if k < cols {
                for j in 0..=k {
                    t.v_degen.push(
                        list.iter()
                            .map(|(s, y)| {
                                let g = tower.gerbe(s)?;
                                Ok(index[m][k + 1][&(s.clone(), g.sset().degen(k, j, *y))])
                            })
                            .collect::<Result<_>>()?,
                    );
                }
            }
            row.push(t);
        }
        tables.push(row);
    }
    let projection = cells
        .iter()
        .enumerate()
        .map(|(m, row)| {
            row.iter()
                .map(|list| list.iter().map(|(s, _)| nk.id(m, s).unwrap()).collect())
                .collect()
        })
        .collect();
    Ok(GrothendieckSpace {
        space: BisimplicialSet::from_cells(rows, cols, tables),
        cells,
        projection,
    })
}

/// `∫X`: degree `n` is `⊔_σ {σ} × 𝒢ˣ_n(σ)_0`, with `p` to the nerve.
#[derive(Debug, Clone)]
pub struct Total {
    pub keyed: Keyed<(Chain, usize)>,
    pub nerve: Keyed<Chain>,
    pub projection: SimplicialMap,
}

impl Total {
    pub fn sset(&self) -> &SimplicialSet {
        &self.keyed.sset
    }
}

/// The total space, together with the gerbe tower (at degree 0) it was
/// read from.
pub fn grothendieck_total_with<'a>(x: &'a Diagram, budget: &'a Budget) -> Result<(Total, GerbeTower<'a>)> {
    let c = &x.base;
    let dim = x.dim();
    let tower = GerbeTower::new(x, 0, budget)?;
    let nk = nerve_keyed(c, dim);
    let mut levels = Vec::new();
    for n in 0..=dim {
        let mut level = Vec::new();
        for sigma in nk.keys(n) {
            let g = tower.gerbe(sigma)?;
            level.extend(g.sset().simplices(0).map(|y| (sigma.clone(), y)));
        }
        levels.push(level);
    }
    let mut degens: HashMap<(usize, usize, Chain, usize), usize> = HashMap::new();
    for (n, level) in levels.iter().enumerate().take(dim) {
        for (s, y) in level {
            for j in 0..=n {
                degens.insert((n, j, s.clone(), *y), tower.iota(s, j, 0, *y)?);
            }
        }
    }
    let gerbes: HashMap<Chain, _> = levels
        .iter()
        .flatten()
        .map(|(s, _)| (s.clone(), tower.gerbe(s)))
        .map(|(s, g)| g.map(|g| (s, g)))
        .collect::<Result<_>>()?;
    let keyed = Keyed::build(
        dim,
        levels,
        |_, i, (s, y)| (s.face(c, i), gerbes[s].cell(0, *y).faces[i]),
        |n, j, (s, y)| (s.degen(c, j), degens[&(n, j, s.clone(), *y)]),
        |_, (s, y)| format!("{}|{}", s.label(c), gerbes[s].sset().label(0, *y)),
    )?;
    let projection = SimplicialMap::new(
        (0..=dim)
            .map(|n| keyed.keys(n).iter().map(|(s, _)| nk.id(n, s).unwrap()).collect())
            .collect(),
    );
    Ok((
        Total {
            keyed,
            nerve: nk,
            projection,
        },
        tower,
    ))
}

pub fn grothendieck_total(x: &Diagram, budget: &Budget) -> Result<Total> {
    Ok(grothendieck_total_with(x, budget)?.0)
}

/// Id of the top simplex `ι_m` in `Δ[m]` built at bound `dim`.
fn top_simplex(m: usize, dim: usize) -> usize {
    static CACHE: Mutex<Option<HashMap<(usize, usize), usize>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    *cache
        .entry((m, dim))
        .or_insert_with(|| standard::delta_keyed(m, dim).id(m, &MonotoneMap::identity(m)).unwrap())
}

/// The `m`-simplex `f(ι_m)` of a vertex `f ∈ [Δ[m], X]_0`.
pub fn top_value(fc: &FunctionComplex, m: usize, f: usize) -> usize {
    let a = top_simplex(m, fc.products[0].keyed.dim());
    fc.evaluate(0, f, m, a, &MonotoneMap::constant(m, 0, 0))
}

/// Checks on stored total-space simplices: the last-face transport
/// condition, and closure under faces with a well-defined initial vertex.
pub fn check_total_remarks(total: &Total, tower: &GerbeTower<'_>) -> Result<Report> {
    let mut report = Report::new();
    let x = tower.diagram;
    let c = &x.base;
    for n in 1..=total.keyed.dim() {
        for (id, (s, y)) in total.keyed.keys(n).iter().enumerate() {
            let label = total.sset().label(n, id);
            let g = tower.gerbe(s)?;
            let cell = g.cell(0, *y);
            let top = top_value(&g.complex, n, cell.beta);
            let xl = x.at(s.last_object(c));
            // X(f_n)(p₂(β̲)) = d_n β
            let under = &g.parts[n];
            let under_top = top_value(&under.complex, n - 1, under.p2.apply(0, cell.faces[n]));
            let f_n = *s.arrows.last().unwrap();
            if x.map(f_n).apply(n - 1, under_top) != xl.face(n, n, top) {
                report.push(ViolationKind::Functoriality, format!("{label}: X(f_n)(p₂(β̲)) ≠ d_n β"));
            }
            // faces d_i with i ≤ n − 2 are (d_i β̲, d_i β)
            for i in 0..n.saturating_sub(1) {
                let part = &g.parts[i];
                let gi = cell.faces[i];
                if top_value(&part.complex, n - 1, part.p2.apply(0, gi)) != xl.face(n, i, top) {
                    report.push(ViolationKind::FaceFace, format!("{label}: p₂ of face {i} is not d_{i} β"));
                }
                if n >= 2 && part.cell(0, gi).faces[n - 1] != under.cell(0, cell.faces[n]).faces[i] {
                    report.push(
                        ViolationKind::FaceFace,
                        format!("{label}: d_{i} β̲ is not the last component of face {i}"),
                    );
                }
            }
            // β₀ does not depend on the order in which faces are taken
            let mut a = id;
            let mut b = id;
            for m in (1..=n).rev() {
                a = total.sset().face(m, m, a);
                b = total.sset().face(m, 1, b);
            }
            if a != b {
                report.push(
                    ViolationKind::FaceFace,
                    format!("{label}: initial vertex depends on the face path"),
                );
            }
        }
    }
    Ok(report)
}
