//! The acceptance properties, run over the seeded corpus. Each criterion
//! yields one line; errors inside a criterion count as failures.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{self, CorpusEntry};
use crate::error::{Budget, Result};
use crate::fibrations::{cocartesian_edges, is_cocartesian_edge, is_cocartesian_fibration, is_inner_fibration};
use crate::grothendieck::{
    canonical_iso, grothendieck_total, marked_relative_nerve, relative_fiber_check, relative_nerve, total_fiber_check, Diagram,
    GerbeTower,
};
use crate::hocolim::{bar_construction, bar_size_formula, cocone_check, iota_comparison, tensor_compat_check};
use crate::marked::adjunction::{left_triangle, right_triangle};
use crate::marked::{is_equivalence_edge, localization_universal, localize, mark_equivalences, MarkedSimplicialSet};
use crate::scat::category::FiniteCategory;
use crate::scat::enumerate::MapSearch;
use crate::scat::function_complex::function_complex;
use crate::scat::limits::{product, pullback, pushout};
use crate::scat::map::SimplicialMap;
use crate::scat::nerve::{chains, nerve, Chain};
use crate::scat::report::Validate;
use crate::scat::sset::SimplicialSet;
use crate::scat::standard;

pub const CRITERIA: usize = 12;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub corpus_size: usize,
    pub dim: usize,
    pub n_max: usize,
    pub budget_limit: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: corpus::DEFAULT_SEED,
            corpus_size: 54,
            dim: corpus::DEFAULT_DIM,
            n_max: 3,
            budget_limit: Budget::DEFAULT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub number: usize,
    pub title: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({} checked): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.number,
            self.title,
            self.checked,
            self.detail
        )
    }
}

pub fn title(number: usize) -> &'static str {
    match number {
        1 => "simplicial identities",
        2 => "Grothendieck comparison",
        3 => "fiber laws",
        4 => "gerbe identities",
        5 => "terminal collapse",
        6 => "bar size formula",
        7 => "bar comparison",
        8 => "localization",
        9 => "L ⊣ E triangle identities",
        10 => "coCartesian checks",
        11 => "tensor compatibility",
        12 => "colimit universal property",
        _ => "unknown",
    }
}

/// Tallies checks and keeps the first failure.
struct Tally {
    checked: usize,
    failed: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failed: 0,
            first: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn finish(self, number: usize) -> CriterionResult {
        let detail = match &self.first {
            None => "all hold".to_string(),
            Some(w) => format!("{} of {} fail; first: {w}", self.failed, self.checked),
        };
        CriterionResult {
            number,
            title: title(number),
            passed: self.failed == 0 && self.checked > 0,
            checked: self.checked,
            detail,
        }
    }
}

pub struct Suite {
    pub config: SuiteConfig,
    pub corpus: Vec<CorpusEntry>,
    budget: Budget,
}

impl Suite {
    pub fn new(config: SuiteConfig) -> Result<Self> {
        let budget = Budget::new(config.budget_limit);
        let corpus = corpus::corpus(config.seed, config.corpus_size, config.dim, &budget)?;
        Ok(Suite { config, corpus, budget })
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        corpus::rng(self.config.seed.wrapping_mul(31).wrapping_add(salt))
    }

    pub fn run(&self, number: usize) -> CriterionResult {
        let outcome = match number {
            1 => self.simplicial_identities(),
            2 => self.comparison(),
            3 => self.fiber_laws(),
            4 => self.gerbe_identities(),
            5 => self.terminal_collapse(),
            6 => self.bar_sizes(),
            7 => self.bar_comparison(),
            8 => self.localization(),
            9 => self.triangles(),
            10 => self.cocartesian(),
            11 => self.tensor(),
            12 => self.colimits(),
            _ => Ok(Tally::new()),
        };
        match outcome {
            Ok(t) => t.finish(number),
            Err(e) => CriterionResult {
                number,
                title: title(number),
                passed: false,
                checked: 0,
                detail: format!("error: {e}"),
            },
        }
    }

    pub fn run_all(&self) -> Vec<CriterionResult> {
        (1..=CRITERIA).map(|n| self.run(n)).collect()
    }

    fn random_value(&self, rng: &mut ChaCha8Rng) -> SimplicialSet {
        corpus::values(self.config.dim).choose(rng).expect("nonempty pool").1.clone()
    }

    fn random_map(&self, rng: &mut ChaCha8Rng, a: &SimplicialSet, b: &SimplicialSet) -> Result<Option<SimplicialMap>> {
        let maps = MapSearch::new(a, b).budget(&self.budget).all()?;
        Ok(maps.choose(rng).cloned())
    }

    fn simplicial_identities(&self) -> Result<Tally> {
        let mut rng = self.rng(1);
        let mut t = Tally::new();
        let cats = corpus::categories();
        for i in 0..100 {
            let (what, s) = match i % 8 {
                0 => {
                    let (name, c) = cats.choose(&mut rng).expect("nonempty");
                    (format!("nerve of {name}"), nerve(c, self.config.dim))
                }
                1 => {
                    let (a, b) = (self.random_value(&mut rng), self.random_value(&mut rng));
                    ("product".to_string(), product(&a, &b)?.sset().clone())
                }
                2 => {
                    let (a, b, c) = (
                        self.random_value(&mut rng),
                        self.random_value(&mut rng),
                        self.random_value(&mut rng),
                    );
                    match (self.random_map(&mut rng, &a, &c)?, self.random_map(&mut rng, &b, &c)?) {
                        (Some(f), Some(g)) => ("pullback".to_string(), pullback(&a, &f, &b, &g)?.sset().clone()),
                        _ => ("product".to_string(), product(&a, &b)?.sset().clone()),
                    }
                }
                3 => {
                    let (c, a, b) = (
                        self.random_value(&mut rng),
                        self.random_value(&mut rng),
                        self.random_value(&mut rng),
                    );
                    match (self.random_map(&mut rng, &c, &a)?, self.random_map(&mut rng, &c, &b)?) {
                        (Some(f), Some(g)) => ("pushout".to_string(), pushout(&c, &f, &a, &g, &b)?.sset),
                        _ => ("product".to_string(), product(&a, &b)?.sset().clone()),
                    }
                }
                4 => {
                    let e = self.corpus.choose(&mut rng).expect("nonempty corpus");
                    let tower = GerbeTower::new(&e.diagram, 1, &self.budget)?;
                    let n = rng.gen_range(0..=2);
                    let all = chains(&e.diagram.base, n);
                    let chain = all.choose(&mut rng).expect("chains exist").clone();
                    (
                        format!("gerbe over {} in {}", chain.label(&e.diagram.base), e.name),
                        tower.gerbe(&chain)?.sset().clone(),
                    )
                }
                5 => {
                    let e = self.corpus.choose(&mut rng).expect("nonempty corpus");
                    (
                        format!("total space of {}", e.name),
                        grothendieck_total(&e.diagram, &self.budget)?.sset().clone(),
                    )
                }
                6 => {
                    let e = self.corpus.choose(&mut rng).expect("nonempty corpus");
                    (format!("bar of {}", e.name), bar_construction(&e.diagram)?.sset().clone())
                }
                _ => {
                    let s = self.random_value(&mut rng);
                    let marks = corpus::random_marking(&mut rng, &s);
                    let x = MarkedSimplicialSet::new(s, marks);
                    ("localization".to_string(), localize(&x)?.sset().clone())
                }
            };
            let r = s.validate();
            t.check(r.is_ok(), || format!("{what}: {r}"));
        }
        Ok(t)
    }

    fn comparison(&self) -> Result<Tally> {
        let mut t = Tally::new();
        for e in &self.corpus {
            let iso = canonical_iso(&e.diagram, &self.budget)?;
            t.check(iso.is_iso(), || format!("{}: {iso}", e.name));
        }
        Ok(t)
    }

    fn fiber_laws(&self) -> Result<Tally> {
        let mut t = Tally::new();
        for e in &self.corpus {
            let x = &e.diagram;
            let rn = relative_nerve(x)?;
            let iso = canonical_iso(x, &self.budget)?;
            for d in 0..x.base.object_count() {
                let rf = relative_fiber_check(x, &rn, d)?;
                t.check(rf.is_iso(), || {
                    format!("{}: relative nerve fiber at {}: {}", e.name, x.base.object_name(d), rf.report)
                });
                let tf = total_fiber_check(x, &iso, d)?;
                t.check(tf.is_iso(), || {
                    format!("{}: total fiber at {}: {}", e.name, x.base.object_name(d), tf.report)
                });
            }
        }
        Ok(t)
    }

    fn gerbe_identities(&self) -> Result<Tally> {
        let mut t = Tally::new();
        for e in &self.corpus {
            let x = &e.diagram;
            let tower = GerbeTower::new(x, 1, &self.budget)?;
            for d in 0..x.base.object_count() {
                for n in 1..=2 {
                    let chain = Chain {
                        start: d,
                        arrows: vec![x.base.identity(d); n],
                    };
                    let g = tower.gerbe(&chain)?;
                    let fc = function_complex(&standard::delta(n, x.dim()), x.at(d), 1, &self.budget)?;
                    let ok = g.sset().counts() == fc.sset().counts() && g.p2.is_bijective_onto(g.complex.sset());
                    t.check(ok, || format!("{}: n = {n} at {}", e.name, x.base.object_name(d)));
                }
            }
        }
        Ok(t)
    }

    fn terminal_collapse(&self) -> Result<Tally> {
        let mut t = Tally::new();
        for (name, c) in corpus::categories() {
            let point = standard::point(self.config.dim);
            let nd = nerve(&c, self.config.dim);
            let total = grothendieck_total(&Diagram::constant(c.clone(), point.clone()), &self.budget)?;
            t.check(total.projection.is_bijective_onto(&nd), || format!("total space over {name}"));
            let bar = bar_construction(&Diagram::constant(c.clone(), point).flat())?;
            let ok = bar.projection.is_bijective_onto(&nd) && bar.marked.marked.iter().all(|&m| m);
            t.check(ok, || format!("bar over {name}"));
        }
        Ok(t)
    }

    fn bar_sizes(&self) -> Result<Tally> {
        let mut t = Tally::new();
        for e in &self.corpus {
            let bar = bar_construction(&e.diagram)?;
            t.check(bar_size_formula(&e.diagram, &bar), || e.name.clone());
        }
        Ok(t)
    }

    fn bar_comparison(&self) -> Result<Tally> {
        let mut t = Tally::new();
        for e in &self.corpus {
            let io = iota_comparison(&e.diagram.clone().flat(), &self.budget)?;
            t.check(io.report.is_ok(), || {
                format!("{}: not a marked map over the nerve: {}", e.name, io.report)
            });
            t.check(io.fiber_bijective.iter().all(|&b| b), || {
                format!("{}: a vertex fiber is not bijective", e.name)
            });
            let bad: Vec<usize> = (0..io.injective.len()).filter(|&n| !io.injective[n]).collect();
            t.check(bad.is_empty(), || {
                format!(
                    "{}: not injective in degrees {bad:?} ({:?} bar simplices vs {:?} in the total space)",
                    e.name,
                    io.bar.sset().counts(),
                    io.iso.total.sset().counts()
                )
            });
        }
        Ok(t)
    }

    fn localization(&self) -> Result<Tally> {
        let mut rng = self.rng(8);
        let mut t = Tally::new();
        let mut inputs: Vec<(String, MarkedSimplicialSet)> = Vec::new();
        for (name, s) in corpus::values(self.config.dim) {
            inputs.push((format!("flat {name}"), MarkedSimplicialSet::flat(s.clone())));
            inputs.push((format!("sharp {name}"), MarkedSimplicialSet::sharp(s.clone())));
            let m = corpus::random_marking(&mut rng, &s);
            inputs.push((format!("random {name}"), MarkedSimplicialSet::new(s, m)));
        }
        for (name, x) in &inputs {
            let loc = localize(x)?;
            let s = &x.sset;
            let e = loc.edges.len();
            let formula = (0..=s.dim()).all(|n| loc.sset().count(n) == s.count(n) + e * ((1usize << (n + 1)) - (n + 2)));
            t.check(formula, || format!("{name}: cardinality formula"));
            t.check(loc.p.is_injective(), || format!("{name}: p is not injective"));
            let mut witnessed = true;
            for &edge in &loc.edges {
                witnessed &= is_equivalence_edge(loc.sset(), loc.p.apply(1, edge))?.is_some();
            }
            t.check(witnessed, || format!("{name}: an image edge has no witness"));
            let u = localization_universal(x, &loc, &loc.p, loc.sset(), &self.budget)?;
            t.check(u.compose(&loc.p) == loc.p, || format!("{name}: U ∘ p ≠ G"));
            t.check(u == SimplicialMap::identity(loc.sset()), || {
                format!("{name}: canonical extension is not the glued copy")
            });
        }
        Ok(t)
    }

    fn triangles(&self) -> Result<Tally> {
        let mut rng = self.rng(9);
        let mut t = Tally::new();
        let dim = 2;
        let mut values = corpus::values(dim);
        values.push(("J", standard::j(dim)));
        for (name, s) in values.into_iter().filter(|(_, s)| s.nondegenerate_count() <= 10) {
            let marks = corpus::random_marking(&mut rng, &s);
            for (how, x) in [
                ("flat", MarkedSimplicialSet::flat(s.clone())),
                ("sharp", MarkedSimplicialSet::sharp(s.clone())),
                ("random", MarkedSimplicialSet::new(s.clone(), marks)),
                ("equivalences", mark_equivalences(&s)?),
            ] {
                t.check(left_triangle(&x, &self.budget)?, || format!("left triangle on {how} {name}"));
            }
            t.check(right_triangle(&s, &self.budget)?, || format!("right triangle on {name}"));
        }
        Ok(t)
    }

    fn cocartesian(&self) -> Result<Tally> {
        let mut t = Tally::new();
        let n_max = self.config.n_max;
        let dim = self.config.dim.max(n_max);
        for (name, x) in category_nerve_diagrams(dim)? {
            let (rn, m) = marked_relative_nerve(&x)?;
            let (xs, s, p) = (rn.sset(), &rn.nerve.sset, &rn.projection);
            let inner = is_inner_fibration(xs, s, p, n_max, &self.budget)?;
            t.check(inner.holds, || format!("{name}: {inner}"));
            let fib = is_cocartesian_fibration(xs, s, p, n_max, &self.budget)?;
            t.check(fib.holds, || format!("{name}: {fib}"));
            let coc = cocartesian_edges(xs, s, p, n_max, &self.budget)?;
            let ok = xs.simplices(1).all(|e| !m.marked[e] || coc[e]);
            t.check(ok, || format!("{name}: a marked edge is not coCartesian"));
        }
        let d1 = standard::delta(1, dim);
        let pt = standard::point(dim);
        let e = d1.nondegenerate(1)[0];
        let v = is_cocartesian_edge(&d1, &pt, &SimplicialMap::to_point(&d1), e, n_max, &self.budget)?;
        let fails_at_two = !v.holds && v.counterexample.as_ref().map(|c| c.n) == Some(2);
        t.check(fails_at_two, || format!("Δ[1] over a point: {v}"));
        Ok(t)
    }

    fn tensor(&self) -> Result<Tally> {
        let mut t = Tally::new();
        let dim = self.config.dim;
        let ks = [
            ("point", standard::point(dim)),
            ("delta 1", standard::delta(1, dim)),
            ("horn 2 1", standard::horn(2, 1, dim)?),
        ];
        for (i, e) in self.corpus.iter().take(12).enumerate() {
            let (kname, k) = &ks[i % ks.len()];
            let r = tensor_compat_check(&e.diagram.clone().flat(), k)?;
            t.check(r.is_ok(), || format!("{} ⊗ {kname}: {r}", e.name));
        }
        Ok(t)
    }

    fn colimits(&self) -> Result<Tally> {
        let mut t = Tally::new();
        let dim = 2;
        let targets = [
            ("point", standard::point(dim)),
            ("delta 1", standard::delta(1, dim)),
            ("horn 2 1", standard::horn(2, 1, dim)?),
        ];
        for e in &self.corpus {
            let x = e.diagram.truncate(dim)?;
            let size: usize = x.objects.iter().map(|o| o.nondegenerate_count()).sum();
            for (yname, y) in &targets {
                if size + y.nondegenerate_count() > 20 {
                    continue;
                }
                let c = cocone_check(&x, y, &self.budget)?;
                t.check(c.bijective, || {
                    format!("{} into {yname}: {} cocones, {} maps", e.name, c.cocones, c.maps)
                });
            }
        }
        Ok(t)
    }
}

/// Diagrams over `[1]` whose values are nerves of small categories and
/// whose maps are nerves of functors, marked at equivalences.
pub fn category_nerve_diagrams(dim: usize) -> Result<Vec<(String, Diagram)>> {
    let arrow = FiniteCategory::chain(1);
    let n1 = nerve(&FiniteCategory::chain(1), dim);
    let iso = nerve(&FiniteCategory::walking_iso(), dim);
    let pt = nerve(&FiniteCategory::terminal(), dim);
    let n2 = nerve(&FiniteCategory::chain(2), dim);
    let budget = Budget::default();
    let along = |a: &SimplicialSet, b: &SimplicialSet, fix: &[(usize, usize)]| -> Result<SimplicialMap> {
        let mut search = MapSearch::new(a, b).budget(&budget);
        for &(x, y) in fix {
            search = search.fix(0, x, y);
        }
        Ok(search.first()?.expect("a functor with the given object map exists"))
    };
    let cases = vec![
        ("[1] → iso", n1.clone(), iso.clone(), along(&n1, &iso, &[(0, 0), (1, 1)])?),
        ("[1] → [0]", n1.clone(), pt.clone(), SimplicialMap::to_point(&n1)),
        ("iso → [0]", iso.clone(), pt.clone(), SimplicialMap::to_point(&iso)),
        (
            "[0] → [2] at 1",
            pt.clone(),
            n2.clone(),
            SimplicialMap::constant_at(&pt, &n2, 1),
        ),
        (
            "[1] → [2] onto 0 < 2",
            n1.clone(),
            n2.clone(),
            along(&n1, &n2, &[(0, 0), (1, 2)])?,
        ),
        ("iso → iso", iso.clone(), iso.clone(), SimplicialMap::identity(&iso)),
    ];
    cases
        .into_iter()
        .map(|(name, a, b, f)| {
            let mut given = vec![None; arrow.morphism_count()];
            given[arrow.hom(0, 1)[0]] = Some(f);
            let ma = mark_equivalences(&a)?.marked;
            let mb = mark_equivalences(&b)?.marked;
            let x = Diagram::from_generators(arrow.clone(), vec![a, b], given)?.with_markings(vec![ma, mb]);
            Ok((name.to_string(), x))
        })
        .collect()
}
