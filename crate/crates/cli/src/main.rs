//! `hgc`: batch front end over JSON workspaces.
//!
//! Every command reads a workspace, runs one construction or check, prints
//! a summary report and, with `--out DIR`, writes `DIR/workspace.json` (the
//! input plus the results, in canonical form) and `DIR/report.txt`.
//!
//! Exit status: 0 on success, 1 when a check finds a defect, 2 on parse,
//! reference or truncation errors, 3 when the step budget runs out.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hgc::fibrations::{is_cocartesian_fibration, is_inner_fibration, natural_marking};
use hgc::grothendieck::{canonical_iso, grothendieck_total, marked_relative_nerve, relative_nerve, Diagram, GerbeTower};
use hgc::hocolim::{bar_construction, bar_size_formula, colim_diagram, colim_marked, hocolim, iota_comparison};
use hgc::io::Workspace;
use hgc::marked::equivalence::is_invertible_up_to;
use hgc::marked::{localize, mark_equivalences, MarkedSimplicialSet};
use hgc::scat::{nerve, Chain, SimplicialSet, Validate};
use hgc::suite::{Suite, SuiteConfig, CRITERIA};
use hgc::{Budget, Error};

#[derive(Parser, Debug)]
#[command(
    name = "hgc",
    version,
    about = "Constructions on finite diagrams of truncated simplicial sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation bound for generated simplicial sets.
    #[arg(long, global = true)]
    dim_bound: Option<usize>,

    /// Step budget for exhaustive searches.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Largest horn dimension examined by fibration checks.
    #[arg(long, global = true)]
    nmax: Option<usize>,

    /// Mark edges invertible up to this path length instead of using
    /// 2-simplex witnesses.
    #[arg(long, global = true)]
    witness_depth: Option<usize>,

    /// Directory for `workspace.json` and `report.txt`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every entry of the workspace.
    Validate { workspace: PathBuf },
    /// Nerve of a category.
    Nerve { workspace: PathBuf, category: String },
    /// Gerbe of a diagram over a chain of composable morphisms.
    Gerbe {
        workspace: PathBuf,
        diagram: String,
        /// Comma-separated morphism names, first arrow first.
        #[arg(long, conflicts_with = "object")]
        chain: Option<String>,
        /// A single object, for the gerbe over a vertex.
        #[arg(long)]
        object: Option<String>,
    },
    /// Total space of a diagram with its projection to the nerve.
    Grothendieck { workspace: PathBuf, diagram: String },
    /// Relative nerve of a diagram.
    Relnerve { workspace: PathBuf, diagram: String },
    /// Compare the total space with the relative nerve.
    CheckIso { workspace: PathBuf, diagram: String },
    /// Mark the equivalence edges of a simplicial set.
    Mark { workspace: PathBuf, sset: String },
    /// Invert the marked edges of a marked simplicial set.
    Localize { workspace: PathBuf, marked: String },
    /// Inner and coCartesian fibration verdicts for a map.
    CheckFibration { workspace: PathBuf, map: String },
    /// Mark the source of a map by its coCartesian edges.
    CocartesianEdges { workspace: PathBuf, map: String },
    /// Bar construction of a diagram.
    Bar { workspace: PathBuf, diagram: String },
    /// Comparison map from the bar construction to the total space.
    Iota { workspace: PathBuf, diagram: String },
    /// Colimit of a diagram; marked when the diagram is.
    Colim { workspace: PathBuf, diagram: String },
    /// Homotopy colimit: the localized bar construction.
    Hocolim { workspace: PathBuf, diagram: String },
    /// Run the acceptance properties on the seeded corpus.
    Suite {
        /// Only its `budget` is read.
        workspace: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        corpus_size: Option<usize>,
        /// Run one criterion only.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::BudgetExceeded { .. } | Error::Cancelled) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

/// What a command produced.
struct Outcome {
    report: String,
    workspace: Option<Workspace>,
    defect: bool,
}

impl Outcome {
    fn new(workspace: Option<Workspace>) -> Self {
        Outcome {
            report: String::new(),
            workspace,
            defect: false,
        }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.report.push_str(text.as_ref());
        self.report.push('\n');
    }
}

fn load(path: &Path, dim_bound: Option<usize>) -> Result<Workspace, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(Workspace::parse(&text, dim_bound)?)
}

fn counts(s: &SimplicialSet) -> String {
    format!("{:?}", s.counts())
}

fn nondegenerate(s: &SimplicialSet) -> String {
    let v: Vec<usize> = (0..=s.dim()).map(|n| s.nondegenerate(n).len()).collect();
    format!("{v:?}")
}

fn describe(out: &mut Outcome, label: &str, s: &SimplicialSet) {
    out.line(format!("{label}: simplices {} nondegenerate {}", counts(s), nondegenerate(s)));
}

/// Degrees where `flags` is false, or `None` when all hold.
fn failing(flags: &[bool]) -> Option<Vec<usize>> {
    let bad: Vec<usize> = flags.iter().enumerate().filter(|(_, &b)| !b).map(|(n, _)| n).collect();
    (!bad.is_empty()).then_some(bad)
}

/// Name of the simplicial set underlying a workspace entry.
fn underlying_name(ws: &Workspace, name: &str) -> String {
    ws.marked.get(name).map(|m| m.of.clone()).unwrap_or_else(|| name.to_string())
}

fn nerve_name(ws: &Workspace, diagram: &str) -> String {
    format!("nerve({})", ws.diagrams[diagram].spec.category)
}

fn insert_diagram_nerve(ws: &mut Workspace, diagram: &str, s: SimplicialSet) -> String {
    let name = nerve_name(ws, diagram);
    ws.insert_sset(&name, s);
    name
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let dim = cli.dim_bound;
    let budget_for = |ws: &Workspace| Budget::new(cli.budget.or(ws.budget).unwrap_or(Budget::DEFAULT_LIMIT));
    let n_max_for = |d: usize| cli.nmax.unwrap_or(d.min(3));
    match &cli.command {
        Command::Validate { workspace } => {
            let ws = load(workspace, dim)?;
            let mut out = Outcome::new(None);
            let mut entries: Vec<(String, hgc::scat::Report)> = Vec::new();
            for (k, s) in &ws.ssets {
                entries.push((format!("simplicial set {k}"), s.validate()));
            }
            for (k, m) in &ws.marked {
                entries.push((format!("marked {k}"), m.value.validate()));
            }
            for (k, m) in &ws.maps {
                entries.push((format!("map {k}"), m.map.check(ws.sset(&m.source)?, ws.sset(&m.target)?)));
            }
            for (k, d) in &ws.diagrams {
                entries.push((format!("diagram {k}"), d.diagram.validate()));
            }
            for (label, r) in entries {
                if r.is_ok() {
                    out.line(format!("{label}: ok"));
                } else {
                    out.defect = true;
                    out.line(format!("{label}: {} violation(s)", r.violations.len()));
                    for v in &r.violations {
                        out.line(format!("  {:?}: {}", v.kind, v.detail));
                    }
                }
            }
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Nerve { workspace, category } => {
            let mut ws = load(workspace, dim)?;
            let s = nerve(ws.category(category)?, ws.dim_bound);
            let mut out = Outcome::new(None);
            let name = format!("nerve({category})");
            describe(&mut out, &name, &s);
            ws.insert_sset(&name, s);
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Gerbe {
            workspace,
            diagram,
            chain,
            object,
        } => {
            let mut ws = load(workspace, dim)?;
            let budget = budget_for(&ws);
            let d = ws.diagram(diagram)?.clone();
            let c = &d.base;
            let sigma = match (chain, object) {
                (Some(names), None) => {
                    let arrows = names
                        .split(',')
                        .map(|m| {
                            c.morphism_id(m.trim())
                                .map_err(|_| Error::UnknownObject(format!("morphism {m}")))
                        })
                        .collect::<hgc::Result<Vec<usize>>>()?;
                    if arrows.windows(2).any(|w| c.target(w[0]) != c.source(w[1])) {
                        return Err(Error::Parse(format!("chain {names} is not composable")).into());
                    }
                    Chain {
                        start: c.source(arrows[0]),
                        arrows,
                    }
                }
                (None, Some(o)) => Chain::vertex(c.object_id(o).map_err(|_| Error::UnknownObject(format!("object {o}")))?),
                _ => return Err(Error::Parse("gerbe: give one of --chain, --object".into()).into()),
            };
            let k_max = d
                .dim()
                .checked_sub(sigma.len())
                .ok_or_else(|| Error::InsufficientTruncation {
                    needed: sigma.len(),
                    available: d.dim(),
                    context: "gerbe over a chain".into(),
                })?;
            let tower = GerbeTower::new(&d, k_max, &budget)?;
            let g = tower.gerbe(&sigma)?;
            let label = chain.clone().or_else(|| object.clone()).unwrap_or_default();
            let name = format!("gerbe({diagram};{label})");
            let mut out = Outcome::new(None);
            out.line(format!("chain length {}, degrees 0..{k_max}", sigma.len()));
            describe(&mut out, &name, g.sset());
            let complex = format!("complex({diagram};{label})");
            ws.insert_sset(&name, g.sset().clone());
            ws.insert_sset(&complex, g.complex.sset().clone());
            ws.insert_map(&format!("{name}.p2"), &name, &complex, g.p2.clone());
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Grothendieck { workspace, diagram } => {
            let mut ws = load(workspace, dim)?;
            let budget = budget_for(&ws);
            let total = grothendieck_total(ws.diagram(diagram)?, &budget)?;
            let mut out = Outcome::new(None);
            let name = format!("total({diagram})");
            describe(&mut out, &name, total.sset());
            ws.insert_sset(&name, total.sset().clone());
            let base = insert_diagram_nerve(&mut ws, diagram, total.nerve.sset.clone());
            ws.insert_map(&format!("{name}.projection"), &name, &base, total.projection);
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Relnerve { workspace, diagram } => {
            let mut ws = load(workspace, dim)?;
            let d = ws.diagram(diagram)?.clone();
            let name = format!("relnerve({diagram})");
            let mut out = Outcome::new(None);
            let rn = if d.markings.is_some() {
                let (rn, m) = marked_relative_nerve(&d)?;
                out.line(format!("marked edges: {}", m.marked_count()));
                ws.insert_marked(&format!("{name}+"), &name, m);
                rn
            } else {
                let rn = relative_nerve(&d)?;
                ws.insert_sset(&name, rn.sset().clone());
                rn
            };
            describe(&mut out, &name, rn.sset());
            let base = insert_diagram_nerve(&mut ws, diagram, rn.nerve.sset.clone());
            ws.insert_map(&format!("{name}.projection"), &name, &base, rn.projection);
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::CheckIso { workspace, diagram } => {
            let mut ws = load(workspace, dim)?;
            let budget = budget_for(&ws);
            let iso = canonical_iso(ws.diagram(diagram)?, &budget)?;
            let mut out = Outcome::new(None);
            let top = iso.bijective.len().saturating_sub(1);
            match failing(&iso.bijective) {
                None if iso.report.is_ok() => out.line(format!("bijective, degrees 0..{top}")),
                None => {
                    out.defect = true;
                    out.line(format!("bijective, degrees 0..{top}, but not simplicial: {}", iso.report));
                }
                Some(bad) => {
                    out.defect = true;
                    out.line(format!("not bijective in degrees {bad:?}"));
                    if !iso.report.is_ok() {
                        out.line(iso.report.to_string());
                    }
                }
            }
            let total = format!("total({diagram})");
            let rel = format!("relnerve({diagram})");
            describe(&mut out, &total, iso.total.sset());
            describe(&mut out, &rel, iso.relative.sset());
            ws.insert_sset(&total, iso.total.sset().clone());
            ws.insert_sset(&rel, iso.relative.sset().clone());
            ws.insert_map(&format!("iso({diagram})"), &total, &rel, iso.map);
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Mark { workspace, sset } => {
            let mut ws = load(workspace, dim)?;
            let s = ws.sset(sset)?.clone();
            let m = match cli.witness_depth {
                None => mark_equivalences(&s)?,
                Some(depth) => {
                    let budget = budget_for(&ws);
                    let marks = s
                        .simplices(1)
                        .map(|e| is_invertible_up_to(&s, e, depth, &budget))
                        .collect::<hgc::Result<Vec<bool>>>()?;
                    MarkedSimplicialSet::new(s, marks)
                }
            };
            let mut out = Outcome::new(None);
            let nondeg: Vec<usize> = m.sset.nondegenerate(1).into_iter().filter(|&e| m.marked[e]).collect();
            out.line(format!(
                "marked edges: {} ({} nondegenerate: {nondeg:?})",
                m.marked_count(),
                nondeg.len()
            ));
            let underlying = underlying_name(&ws, sset);
            ws.insert_marked(&format!("mark({sset})"), &underlying, m);
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Localize { workspace, marked } => {
            let mut ws = load(workspace, dim)?;
            let x = ws.marked_set(marked)?;
            let loc = localize(&x)?;
            let mut out = Outcome::new(None);
            let name = format!("loc({marked})");
            describe(&mut out, &name, loc.sset());
            out.line(format!("inverted edges: {}", loc.edges.len()));
            if loc.sset().dim() >= 1 {
                out.line(format!("edges at degree 1: {}", loc.sset().count(1)));
            }
            let source = underlying_name(&ws, marked);
            ws.insert_marked(&format!("{name}+"), &name, loc.as_marked());
            ws.insert_map(&format!("{name}.p"), &source, &name, loc.p);
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::CheckFibration { workspace, map } => {
            let ws = load(workspace, dim)?;
            let budget = budget_for(&ws);
            let m = ws.map(map)?;
            let (x, s) = (ws.sset(&m.source)?, ws.sset(&m.target)?);
            let n_max = n_max_for(x.dim());
            let inner = is_inner_fibration(x, s, &m.map, n_max, &budget)?;
            let cocart = is_cocartesian_fibration(x, s, &m.map, n_max, &budget)?;
            let mut out = Outcome::new(None);
            out.line(format!("inner fibration: {inner}"));
            out.line(format!("coCartesian fibration: {cocart}"));
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::CocartesianEdges { workspace, map } => {
            let mut ws = load(workspace, dim)?;
            let budget = budget_for(&ws);
            let m = ws.map(map)?.clone();
            let (x, s) = (ws.sset(&m.source)?, ws.sset(&m.target)?);
            let n_max = n_max_for(x.dim());
            let marked = natural_marking(x, s, &m.map, n_max, &budget)?;
            let mut out = Outcome::new(None);
            let nondeg: Vec<usize> = marked
                .sset
                .nondegenerate(1)
                .into_iter()
                .filter(|&e| marked.marked[e])
                .collect();
            out.line(format!(
                "coCartesian edges up to n_max = {n_max}: {} ({} nondegenerate: {nondeg:?})",
                marked.marked_count(),
                nondeg.len()
            ));
            let underlying = underlying_name(&ws, &m.source);
            ws.insert_marked(&format!("cocartesian({map})"), &underlying, marked);
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Bar { workspace, diagram } => {
            let mut ws = load(workspace, dim)?;
            let d = ws.diagram(diagram)?.clone();
            let bar = bar_construction(&d)?;
            let mut out = Outcome::new(None);
            let name = format!("bar({diagram})");
            describe(&mut out, &name, bar.sset());
            out.line(format!("marked edges: {}", bar.marked.marked_count()));
            if bar_size_formula(&d, &bar) {
                out.line("sizes match the sum over chains");
            } else {
                out.defect = true;
                out.line("sizes differ from the sum over chains");
            }
            let base = insert_diagram_nerve(&mut ws, diagram, bar.nerve.sset.clone());
            ws.insert_marked(&format!("{name}+"), &name, bar.marked);
            ws.insert_map(&format!("{name}.projection"), &name, &base, bar.projection);
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Iota { workspace, diagram } => {
            let mut ws = load(workspace, dim)?;
            let budget = budget_for(&ws);
            let iota = iota_comparison(ws.diagram(diagram)?, &budget)?;
            let mut out = Outcome::new(None);
            out.line(format!("marked map over the nerve: {}", iota.report));
            match failing(&iota.injective) {
                None => out.line("injective in every degree"),
                Some(bad) => out.line(format!("not injective in degrees {bad:?}")),
            }
            match failing(&iota.fiber_bijective) {
                None => out.line("bijective on every vertex fiber"),
                Some(bad) => out.line(format!("not bijective on the fibers over vertices {bad:?}")),
            }
            out.defect = !iota.holds();
            let bar = format!("bar({diagram})");
            let total = format!("total({diagram})");
            describe(&mut out, &bar, iota.bar.sset());
            describe(&mut out, &total, iota.iso.total.sset());
            ws.insert_marked(&format!("{bar}+"), &bar, iota.bar.marked);
            ws.insert_marked(&format!("{total}+"), &total, iota.total_marked);
            ws.insert_map(&format!("iota({diagram})"), &bar, &total, iota.map);
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Colim { workspace, diagram } => {
            let mut ws = load(workspace, dim)?;
            let d: Diagram = ws.diagram(diagram)?.clone();
            let name = format!("colim({diagram})");
            let mut out = Outcome::new(None);
            let col = if d.markings.is_some() {
                let (col, m) = colim_marked(&d)?;
                out.line(format!("marked edges: {}", m.marked_count()));
                ws.insert_marked(&format!("{name}+"), &name, m);
                col
            } else {
                let col = colim_diagram(&d)?;
                ws.insert_sset(&name, col.sset.clone());
                col
            };
            describe(&mut out, &name, &col.sset);
            let spec = ws.diagrams[diagram].spec.clone();
            for (i, inj) in col.injections.into_iter().enumerate() {
                let obj = d.base.object_name(i).to_string();
                let source = underlying_name(&ws, &spec.objects[&obj]);
                ws.insert_map(&format!("{name}.in.{obj}"), &source, &name, inj);
            }
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Hocolim { workspace, diagram } => {
            let mut ws = load(workspace, dim)?;
            let h = hocolim(ws.diagram(diagram)?)?;
            let mut out = Outcome::new(None);
            let (bar_sizes, sizes) = h.sizes();
            let name = format!("hocolim({diagram})");
            out.line(format!("bar: simplices {bar_sizes:?}"));
            describe(&mut out, &name, h.sset());
            out.line(format!("inverted edges: {}", h.localization.edges.len()));
            debug_assert_eq!(sizes, h.sset().counts());
            ws.insert_marked(&format!("{name}+"), &name, h.localization.as_marked());
            out.workspace = Some(ws);
            Ok(out)
        }
        Command::Suite {
            workspace,
            seed,
            corpus_size,
            only,
        } => {
            let ws = workspace.as_deref().map(|p| load(p, dim)).transpose()?;
            let mut config = SuiteConfig::default();
            if let Some(s) = seed {
                config.seed = *s;
            }
            if let Some(c) = corpus_size {
                config.corpus_size = *c;
            }
            if let Some(d) = dim {
                config.dim = d;
            }
            if let Some(n) = cli.nmax {
                config.n_max = n;
            }
            if let Some(b) = cli.budget.or(ws.as_ref().and_then(|w| w.budget)) {
                config.budget_limit = b;
            }
            let suite = Suite::new(config)?;
            let results = match only {
                Some(n) if (1..=CRITERIA).contains(n) => vec![suite.run(*n)],
                Some(n) => return Err(Error::Parse(format!("no criterion {n} (1..={CRITERIA})")).into()),
                None => suite.run_all(),
            };
            let mut out = Outcome::new(None);
            for r in &results {
                out.line(r.to_string());
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            out.line(format!("{} passed, {failed} failed", results.len() - failed));
            out.defect = failed > 0;
            Ok(out)
        }
    }
}

fn write_outputs(dir: &Path, out: &Outcome) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    if let Some(ws) = &out.workspace {
        fs::write(dir.join("workspace.json"), ws.to_json()).map_err(io)?;
    }
    fs::write(dir.join("report.txt"), &out.report).map_err(io)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|mut out| {
        if out.defect {
            out.line("defects found");
        }
        if let Some(dir) = &cli.out {
            write_outputs(dir, &out)?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            print!("{}", out.report);
            ExitCode::from(if out.defect { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("hgc: {e}");
            ExitCode::from(e.code())
        }
    }
}
