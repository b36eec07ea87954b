//! A seeded corpus of small diagrams: base categories with at most three
//! objects and six morphisms, values with at most six nondegenerate
//! simplices, maps drawn uniformly from all simplicial maps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Budget, Result};
use crate::grothendieck::Diagram;
use crate::scat::category::FiniteCategory;
use crate::scat::enumerate::MapSearch;
use crate::scat::limits::coproduct;
use crate::scat::map::SimplicialMap;
use crate::scat::report::Validate;
use crate::scat::sset::SimplicialSet;
use crate::scat::standard;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_DIM: usize = 3;

pub fn categories() -> Vec<(&'static str, FiniteCategory)> {
    vec![
        ("terminal", FiniteCategory::terminal()),
        ("chain 1", FiniteCategory::chain(1)),
        ("chain 2", FiniteCategory::chain(2)),
        ("discrete 2", FiniteCategory::discrete(2)),
        ("span", FiniteCategory::span()),
        ("cospan", FiniteCategory::cospan()),
        ("parallel_pair", FiniteCategory::parallel_pair()),
        ("walking_iso", FiniteCategory::walking_iso()),
        ("cyclic 2", FiniteCategory::cyclic(2)),
    ]
}

pub fn values(dim: usize) -> Vec<(&'static str, SimplicialSet)> {
    let p = standard::point(dim);
    let d1 = standard::delta(1, dim);
    vec![
        ("point", p.clone()),
        ("point+point", coproduct(&p, &p).expect("same bound").sset().clone()),
        ("delta 1", d1.clone()),
        ("delta 1+point", coproduct(&d1, &p).expect("same bound").sset().clone()),
        ("horn 2 1", standard::horn(2, 1, dim).expect("valid horn")),
        ("horn 2 0", standard::horn(2, 0, dim).expect("valid horn")),
        ("boundary 2", standard::boundary(2, dim)),
    ]
}

/// Non-identity morphisms that are not composites of two non-identities.
pub fn generators(c: &FiniteCategory) -> Vec<usize> {
    let non_id = c.non_identities();
    non_id
        .iter()
        .copied()
        .filter(|&h| !non_id.iter().any(|&g| non_id.iter().any(|&f| c.try_compose(g, f) == Some(h))))
        .collect()
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub diagram: Diagram,
}

const ATTEMPTS: usize = 40;

/// A random functor over `c`; falls back to a constant diagram when no
/// sampled assignment is functorial.
pub fn random_diagram(
    rng: &mut ChaCha8Rng,
    c: &FiniteCategory,
    dim: usize,
    budget: &Budget,
) -> Result<(Vec<&'static str>, Diagram)> {
    let pool = values(dim);
    let gens = generators(c);
    for _ in 0..ATTEMPTS {
        let picks: Vec<usize> = (0..c.object_count()).map(|_| rng.gen_range(0..pool.len())).collect();
        let objects: Vec<SimplicialSet> = picks.iter().map(|&i| pool[i].1.clone()).collect();
        let mut given: Vec<Option<SimplicialMap>> = vec![None; c.morphism_count()];
        let mut possible = true;
        for &g in &gens {
            let maps = MapSearch::new(&objects[c.source(g)], &objects[c.target(g)])
                .budget(budget)
                .all()?;
            match maps.choose(rng) {
                Some(m) => given[g] = Some(m.clone()),
                None => {
                    possible = false;
                    break;
                }
            }
        }
        if !possible {
            continue;
        }
        if let Ok(d) = Diagram::from_generators(c.clone(), objects, given) {
            if d.validate().is_ok() {
                return Ok((picks.iter().map(|&i| pool[i].0).collect(), d));
            }
        }
    }
    let i = rng.gen_range(0..pool.len());
    Ok((
        vec![pool[i].0; c.object_count()],
        Diagram::constant(c.clone(), pool[i].1.clone()),
    ))
}

/// `count` diagrams, cycling through the base categories.
pub fn corpus(seed: u64, count: usize, dim: usize, budget: &Budget) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cats = categories();
    (0..count)
        .map(|i| {
            let (cname, c) = &cats[i % cats.len()];
            let (vals, diagram) = random_diagram(&mut rng, c, dim, budget)?;
            Ok(CorpusEntry {
                name: format!("#{i} {cname} [{}]", vals.join(", ")),
                diagram,
            })
        })
        .collect()
}

/// A random marking of `s` containing every degenerate edge.
pub fn random_marking(rng: &mut ChaCha8Rng, s: &SimplicialSet) -> Vec<bool> {
    if s.dim() == 0 {
        return Vec::new();
    }
    s.simplices(1).map(|e| s.is_degenerate(1, e) || rng.gen_bool(0.5)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
