//! The JSON workspace format (`"schema": 1`).
//!
//! A workspace holds named categories, simplicial sets, marked simplicial
//! sets, maps and diagrams; later entries refer to earlier ones by name.
//! Simplicial sets are given by tables or by a generator string (`delta n`,
//! `horn n i`, `boundary n`, `point`, `empty`, `J`, `nerve <category>`);
//! categories by explicit tables or a preset (`terminal`, `chain n`,
//! `discrete k`, `parallel_pair`, `span`, `cospan`, `walking_iso`,
//! `cyclic k`). Emission always writes tables, which is the canonical form:
//! `emit(parse(emit(parse(x)))) == emit(parse(x))`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grothendieck::Diagram;
use crate::marked::{mark_equivalences, MarkedSimplicialSet};
use crate::scat::category::{FiniteCategory, Morphism};
use crate::scat::map::SimplicialMap;
use crate::scat::sset::SimplicialSet;
use crate::scat::{nerve, standard};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, CategorySpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub simplicial_sets: BTreeMap<String, SSetSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub marked: BTreeMap<String, MarkedSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagrams: BTreeMap<String, DiagramSpec>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Either `preset`, or `objects` + `morphisms` + `identities` + `compose`.
/// `compose` lists `[g, f, g∘f]` for composable non-identity pairs;
/// composites with identities are implied.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<[String; 3]>,
}

/// Either `generator`, or `counts` + `faces` + `degeneracies`, where
/// `faces[n][i][x] = d_i x` and `degeneracies[n][j][x] = s_j x`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracies: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
    /// Declared vertex lists, checked by `validate`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<Vec<usize>>>>,
}

/// `of` names a simplicial set; either the explicit `marked` edge list or a
/// `marking` of `flat`, `sharp` or `equivalences`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedSpec {
    pub of: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marking: Option<String>,
}

/// `components[n][x]`, or `constant` (a vertex of the target).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<usize>,
}

/// Values name simplicial sets or marked simplicial sets; maps are given on
/// generating morphisms and the rest are composed. Maps into a point may be
/// omitted. `marking` overrides the
/// markings of the values.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    pub category: String,
    pub objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marking: Option<String>,
}

#[derive(Debug, Clone)]
pub struct NamedMarked {
    pub of: String,
    pub value: MarkedSimplicialSet,
}

#[derive(Debug, Clone)]
pub struct NamedMap {
    pub source: String,
    pub target: String,
    pub map: SimplicialMap,
}

#[derive(Debug, Clone)]
pub struct NamedDiagram {
    pub spec: DiagramSpec,
    pub diagram: Diagram,
}

/// A resolved workspace.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub dim_bound: usize,
    pub budget: Option<u64>,
    pub categories: BTreeMap<String, FiniteCategory>,
    pub ssets: BTreeMap<String, SimplicialSet>,
    pub marked: BTreeMap<String, NamedMarked>,
    pub maps: BTreeMap<String, NamedMap>,
    pub diagrams: BTreeMap<String, NamedDiagram>,
}

fn parse_usize(word: Option<&str>, what: &str) -> Result<usize> {
    word.ok_or_else(|| Error::Parse(format!("{what}: missing argument")))?
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: expected a number")))
}

pub fn preset_category(preset: &str) -> Result<FiniteCategory> {
    let mut words = preset.split_whitespace();
    let head = words.next().unwrap_or("");
    let c = match head {
        "terminal" => FiniteCategory::terminal(),
        "chain" => FiniteCategory::chain(parse_usize(words.next(), preset)?),
        "discrete" => FiniteCategory::discrete(parse_usize(words.next(), preset)?),
        "parallel_pair" => FiniteCategory::parallel_pair(),
        "span" => FiniteCategory::span(),
        "cospan" => FiniteCategory::cospan(),
        "walking_iso" => FiniteCategory::walking_iso(),
        "cyclic" => {
            let k = parse_usize(words.next(), preset)?;
            if k == 0 {
                return Err(Error::Parse("cyclic: order must be positive".into()));
            }
            FiniteCategory::cyclic(k)
        }
        _ => return Err(Error::Parse(format!("unknown category preset `{preset}`"))),
    };
    if words.next().is_some() {
        return Err(Error::Parse(format!("trailing words in preset `{preset}`")));
    }
    Ok(c)
}

fn resolve_category(name: &str, spec: &CategorySpec) -> Result<FiniteCategory> {
    if let Some(p) = &spec.preset {
        if !spec.objects.is_empty() || !spec.morphisms.is_empty() {
            return Err(Error::Parse(format!("category {name}: preset and tables both given")));
        }
        return preset_category(p);
    }
    let obj = |o: &str| {
        spec.objects
            .iter()
            .position(|x| x == o)
            .ok_or_else(|| Error::UnknownObject(format!("{o} in category {name}")))
    };
    let morphisms = spec
        .morphisms
        .iter()
        .map(|m| {
            Ok(Morphism {
                name: m.name.clone(),
                source: obj(&m.source)?,
                target: obj(&m.target)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mor = |m: &str| {
        morphisms
            .iter()
            .position(|x| x.name == m)
            .ok_or_else(|| Error::UnknownObject(format!("{m} in category {name}")))
    };
    if spec.identities.len() != spec.objects.len() {
        return Err(Error::Parse(format!("category {name}: one identity per object expected")));
    }
    let identities = spec.identities.iter().map(|i| mor(i)).collect::<Result<Vec<_>>>()?;
    let nm = morphisms.len();
    let mut compose = vec![vec![None; nm]; nm];
    for f in 0..nm {
        compose[identities[morphisms[f].target]][f] = Some(f);
        compose[f][identities[morphisms[f].source]] = Some(f);
    }
    for [g, f, h] in &spec.compose {
        compose[mor(g)?][mor(f)?] = Some(mor(h)?);
    }
    FiniteCategory::from_parts(spec.objects.clone(), morphisms, identities, compose)
}

fn emit_category(c: &FiniteCategory) -> CategorySpec {
    let name = |m: usize| c.morphism(m).name.clone();
    let mut compose = Vec::new();
    for g in 0..c.morphism_count() {
        for f in 0..c.morphism_count() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            if let Some(h) = c.try_compose(g, f) {
                compose.push([name(g), name(f), name(h)]);
            }
        }
    }
    CategorySpec {
        preset: None,
        objects: c.objects().to_vec(),
        morphisms: c
            .morphisms()
            .iter()
            .map(|m| MorphismSpec {
                name: m.name.clone(),
                source: c.object_name(m.source).to_string(),
                target: c.object_name(m.target).to_string(),
            })
            .collect(),
        identities: c.identities().iter().map(|&i| name(i)).collect(),
        compose,
    }
}

fn generate_sset(text: &str, dim: usize, categories: &BTreeMap<String, FiniteCategory>) -> Result<SimplicialSet> {
    let mut words = text.split_whitespace();
    let head = words.next().unwrap_or("");
    let s = match head {
        "delta" => standard::delta(parse_usize(words.next(), text)?, dim),
        "horn" => {
            let n = parse_usize(words.next(), text)?;
            let i = parse_usize(words.next(), text)?;
            standard::horn(n, i, dim).map_err(|e| Error::Parse(format!("{text}: {e}")))?
        }
        "boundary" => standard::boundary(parse_usize(words.next(), text)?, dim),
        "point" => standard::point(dim),
        "empty" => standard::empty(dim),
        "J" => standard::j(dim),
        "nerve" => {
            let c = words
                .next()
                .ok_or_else(|| Error::Parse(format!("{text}: missing category")))?;
            let cat = categories
                .get(c)
                .ok_or_else(|| Error::UnknownObject(format!("category {c}")))?;
            nerve(cat, dim)
        }
        _ => return Err(Error::Parse(format!("unknown generator `{text}`"))),
    };
    if words.next().is_some() {
        return Err(Error::Parse(format!("trailing words in generator `{text}`")));
    }
    Ok(s)
}

fn resolve_sset(name: &str, spec: &SSetSpec, dim: usize, categories: &BTreeMap<String, FiniteCategory>) -> Result<SimplicialSet> {
    if let Some(g) = &spec.generator {
        if spec.counts.is_some() || spec.faces.is_some() || spec.degeneracies.is_some() {
            return Err(Error::Parse(format!(
                "simplicial set {name}: generator and tables both given"
            )));
        }
        return generate_sset(g, dim, categories);
    }
    let (Some(counts), Some(faces), Some(degens)) = (&spec.counts, &spec.faces, &spec.degeneracies) else {
        return Err(Error::Parse(format!(
            "simplicial set {name}: needs a generator or counts, faces and degeneracies"
        )));
    };
    if counts.is_empty() {
        return Err(Error::Parse(format!("simplicial set {name}: empty counts")));
    }
    let s = SimplicialSet::from_tables(
        counts.len() - 1,
        counts.clone(),
        faces.clone(),
        degens.clone(),
        spec.labels.clone(),
    )
    .map_err(|e| Error::Parse(format!("simplicial set {name}: {e}")))?;
    Ok(match &spec.vertices {
        Some(v) => s.with_declared_vertices(v.clone()),
        None => s,
    })
}

/// The table form of a simplicial set.
pub fn emit_sset(s: &SimplicialSet) -> SSetSpec {
    let dim = s.dim();
    SSetSpec {
        generator: None,
        counts: Some(s.counts().to_vec()),
        faces: Some(
            (0..=dim)
                .map(|n| {
                    if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n).map(|i| s.face_table(n, i).to_vec()).collect()
                    }
                })
                .collect(),
        ),
        degeneracies: Some(
            (0..=dim)
                .map(|n| {
                    if n == dim {
                        Vec::new()
                    } else {
                        (0..=n).map(|j| s.degen_table(n, j).to_vec()).collect()
                    }
                })
                .collect(),
        ),
        labels: Some(s.labels().to_vec()),
        vertices: s.declared_vertices().cloned(),
    }
}

fn apply_marking(s: &SimplicialSet, marking: &str) -> Result<MarkedSimplicialSet> {
    match marking {
        "flat" => Ok(MarkedSimplicialSet::flat(s.clone())),
        "sharp" => Ok(MarkedSimplicialSet::sharp(s.clone())),
        "equivalences" => mark_equivalences(s),
        _ => Err(Error::Parse(format!("unknown marking `{marking}`"))),
    }
}

fn resolve_marked(name: &str, spec: &MarkedSpec, ssets: &BTreeMap<String, SimplicialSet>) -> Result<MarkedSimplicialSet> {
    let s = ssets
        .get(&spec.of)
        .ok_or_else(|| Error::UnknownObject(format!("simplicial set {} (for {name})", spec.of)))?;
    match (&spec.marked, &spec.marking) {
        (Some(edges), None) => {
            let count = if s.dim() >= 1 { s.count(1) } else { 0 };
            let mut marked = vec![false; count];
            for &e in edges {
                if e >= count {
                    return Err(Error::Parse(format!("marked set {name}: edge {e} out of range")));
                }
                marked[e] = true;
            }
            // missing degenerate edges are left for `validate` to report
            Ok(MarkedSimplicialSet::new(s.clone(), marked))
        }
        (None, Some(m)) => apply_marking(s, m),
        _ => Err(Error::Parse(format!(
            "marked set {name}: give exactly one of `marked`, `marking`"
        ))),
    }
}

fn emit_marked(m: &NamedMarked) -> MarkedSpec {
    MarkedSpec {
        of: m.of.clone(),
        marked: Some(m.value.marked_edges()),
        marking: None,
    }
}

impl Workspace {
    pub fn new(dim_bound: usize) -> Self {
        Workspace {
            dim_bound,
            ..Default::default()
        }
    }

    /// Resolve a parsed file. `dim_override` replaces the file's bound for
    /// generated simplicial sets.
    pub fn resolve(file: &WorkspaceFile, dim_override: Option<usize>) -> Result<Workspace> {
        if file.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                file.schema
            )));
        }
        let dim = dim_override.or(file.dim_bound).unwrap_or(crate::DEFAULT_DIM_BOUND);
        let mut ws = Workspace::new(dim);
        ws.budget = file.budget;
        for (name, spec) in &file.categories {
            ws.categories.insert(name.clone(), resolve_category(name, spec)?);
        }
        for (name, spec) in &file.simplicial_sets {
            let s = resolve_sset(name, spec, dim, &ws.categories)?;
            ws.ssets.insert(name.clone(), s);
        }
        for (name, spec) in &file.marked {
            let value = resolve_marked(name, spec, &ws.ssets)?;
            ws.marked.insert(
                name.clone(),
                NamedMarked {
                    of: spec.of.clone(),
                    value,
                },
            );
        }
        for (name, spec) in &file.maps {
            let map = ws.resolve_map(name, spec)?;
            ws.maps.insert(
                name.clone(),
                NamedMap {
                    source: spec.source.clone(),
                    target: spec.target.clone(),
                    map,
                },
            );
        }
        for (name, spec) in &file.diagrams {
            let diagram = ws.resolve_diagram(name, spec)?;
            ws.diagrams.insert(
                name.clone(),
                NamedDiagram {
                    spec: spec.clone(),
                    diagram,
                },
            );
        }
        Ok(ws)
    }

    pub fn parse(text: &str, dim_override: Option<usize>) -> Result<Workspace> {
        let file: WorkspaceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Workspace::resolve(&file, dim_override)
    }

    pub fn sset(&self, name: &str) -> Result<&SimplicialSet> {
        self.ssets
            .get(name)
            .or_else(|| self.marked.get(name).map(|m| &m.value.sset))
            .ok_or_else(|| Error::UnknownObject(format!("simplicial set {name}")))
    }

    pub fn category(&self, name: &str) -> Result<&FiniteCategory> {
        self.categories
            .get(name)
            .ok_or_else(|| Error::UnknownObject(format!("category {name}")))
    }

    pub fn map(&self, name: &str) -> Result<&NamedMap> {
        self.maps.get(name).ok_or_else(|| Error::UnknownObject(format!("map {name}")))
    }

    pub fn diagram(&self, name: &str) -> Result<&Diagram> {
        self.diagrams
            .get(name)
            .map(|d| &d.diagram)
            .ok_or_else(|| Error::UnknownObject(format!("diagram {name}")))
    }

    /// A marked simplicial set by name; a plain simplicial set is read flat.
    pub fn marked_set(&self, name: &str) -> Result<MarkedSimplicialSet> {
        if let Some(m) = self.marked.get(name) {
            return Ok(m.value.clone());
        }
        Ok(MarkedSimplicialSet::flat(self.sset(name)?.clone()))
    }

    fn resolve_map(&self, name: &str, spec: &MapSpec) -> Result<SimplicialMap> {
        let source = self.sset(&spec.source)?;
        let target = self.sset(&spec.target)?;
        let map = match (&spec.components, spec.constant) {
            (Some(c), None) => SimplicialMap::new(c.clone()),
            (None, Some(v)) => {
                if v >= target.count(0) {
                    return Err(Error::Parse(format!("map {name}: vertex {v} out of range")));
                }
                SimplicialMap::constant_at(source, target, v)
            }
            _ => {
                return Err(Error::Parse(format!(
                    "map {name}: give exactly one of `components`, `constant`"
                )))
            }
        };
        if map.components.len() != source.dim() + 1
            || (0..=source.dim()).any(|n| {
                map.components[n].len() != source.count(n)
                    || n > target.dim()
                    || map.components[n].iter().any(|&y| y >= target.count(n))
            })
        {
            return Err(Error::Parse(format!("map {name}: component tables malformed")));
        }
        Ok(map)
    }

    fn resolve_diagram(&self, name: &str, spec: &DiagramSpec) -> Result<Diagram> {
        let base = self.category(&spec.category)?.clone();
        let mut values = Vec::new();
        let mut markings = Vec::new();
        for d in 0..base.object_count() {
            let o = base.object_name(d);
            let v = spec
                .objects
                .get(o)
                .ok_or_else(|| Error::Parse(format!("diagram {name}: no value at {o}")))?;
            values.push(self.sset(v)?.clone());
            markings.push(self.marked.get(v).map(|m| m.value.marked.clone()));
        }
        for o in spec.objects.keys() {
            base.object_id(o)
                .map_err(|_| Error::UnknownObject(format!("object {o} in diagram {name}")))?;
        }
        let mut given = vec![None; base.morphism_count()];
        for (m, map_name) in &spec.morphisms {
            let f = base
                .morphism_id(m)
                .map_err(|_| Error::UnknownObject(format!("morphism {m} in diagram {name}")))?;
            given[f] = Some(self.map(map_name)?.map.clone());
        }
        // maps into a point are forced
        for f in base.non_identities() {
            let target = &values[base.target(f)];
            if given[f].is_none() && (0..=target.dim()).all(|n| target.count(n) == 1) {
                given[f] = Some(SimplicialMap::to_point(&values[base.source(f)]));
            }
        }
        let diagram = Diagram::from_generators(base, values, given)?;
        Ok(
            match (
                &spec.marking,
                markings.iter().all(|m| m.is_some()),
                markings.iter().any(|m| m.is_some()),
            ) {
                (Some(m), _, _) => {
                    let marks = diagram
                        .objects
                        .iter()
                        .map(|o| apply_marking(o, m).map(|x| x.marked))
                        .collect::<Result<Vec<_>>>()?;
                    diagram.with_markings(marks)
                }
                (None, true, _) => diagram.with_markings(markings.into_iter().map(|m| m.unwrap()).collect()),
                (None, false, true) => {
                    return Err(Error::Parse(format!("diagram {name}: mixes marked and plain values")));
                }
                (None, false, false) => diagram,
            },
        )
    }

    /// The canonical file form.
    pub fn emit(&self) -> WorkspaceFile {
        WorkspaceFile {
            schema: SCHEMA_VERSION,
            dim_bound: Some(self.dim_bound),
            budget: self.budget,
            categories: self.categories.iter().map(|(k, c)| (k.clone(), emit_category(c))).collect(),
            simplicial_sets: self.ssets.iter().map(|(k, s)| (k.clone(), emit_sset(s))).collect(),
            marked: self.marked.iter().map(|(k, m)| (k.clone(), emit_marked(m))).collect(),
            maps: self
                .maps
                .iter()
                .map(|(k, m)| {
                    (
                        k.clone(),
                        MapSpec {
                            source: m.source.clone(),
                            target: m.target.clone(),
                            components: Some(m.map.components.clone()),
                            constant: None,
                        },
                    )
                })
                .collect(),
            diagrams: self.diagrams.iter().map(|(k, d)| (k.clone(), d.spec.clone())).collect(),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.emit()).expect("workspace serializes");
        s.push('\n');
        s
    }

    pub fn insert_sset(&mut self, name: &str, s: SimplicialSet) {
        self.ssets.insert(name.to_string(), s);
    }

    /// Insert a marked set together with its underlying simplicial set.
    pub fn insert_marked(&mut self, name: &str, underlying: &str, m: MarkedSimplicialSet) {
        self.ssets.insert(underlying.to_string(), m.sset.clone());
        self.marked.insert(
            name.to_string(),
            NamedMarked {
                of: underlying.to_string(),
                value: m,
            },
        );
    }

    pub fn insert_map(&mut self, name: &str, source: &str, target: &str, map: SimplicialMap) {
        self.maps.insert(
            name.to_string(),
            NamedMap {
                source: source.to_string(),
                target: target.to_string(),
                map,
            },
        );
    }
}
