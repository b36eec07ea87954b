use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::scat::monotone::MonotoneMap;
use crate::scat::report::{Report, Validate, ViolationKind};

/// A simplicial set truncated at `dim`: simplices of every degree `0..=dim`
/// are stored explicitly (degenerate ones included) together with complete
/// face and degeneracy tables.
///
/// Simplices of degree `n` are the integers `0..count(n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    dim: usize,
    counts: Vec<usize>,
    /// `faces[n][i][x] = d_i x` for `1 ≤ n ≤ dim`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][j][x] = s_j x` for `n < dim`; `degens[dim]` is empty.
    degens: Vec<Vec<Vec<usize>>>,
    labels: Vec<Vec<String>>,
    declared_vertices: Option<Vec<Vec<Vec<usize>>>>,
}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialSet")
            .field("dim", &self.dim)
            .field("counts", &self.counts)
            .finish()
    }
}

impl SimplicialSet {
    /// Assemble a simplicial set from raw tables without checking identities.
    /// Shape errors (wrong lengths, ids out of range) are rejected.
    pub fn from_tables(
        dim: usize,
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
        labels: Option<Vec<Vec<String>>>,
    ) -> Result<Self> {
        if counts.len() != dim + 1 || faces.len() != dim + 1 || degens.len() != dim + 1 {
            return Err(Error::Invalid(format!("tables must have {} degrees", dim + 1)));
        }
        for n in 0..=dim {
            let expected_faces = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != expected_faces {
                return Err(Error::Invalid(format!("degree {n}: expected {expected_faces} face maps")));
            }
            for (i, table) in faces[n].iter().enumerate() {
                if table.len() != counts[n] || table.iter().any(|&y| y >= counts[n - 1]) {
                    return Err(Error::Invalid(format!("degree {n}: face d_{i} table malformed")));
                }
            }
            let expected_degens = if n < dim { n + 1 } else { 0 };
            if degens[n].len() != expected_degens {
                return Err(Error::Invalid(format!(
                    "degree {n}: expected {expected_degens} degeneracy maps"
                )));
            }
            for (j, table) in degens[n].iter().enumerate() {
                if table.len() != counts[n] || table.iter().any(|&y| y >= counts[n + 1]) {
                    return Err(Error::Invalid(format!("degree {n}: degeneracy s_{j} table malformed")));
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != dim + 1 || (0..=dim).any(|n| l[n].len() != counts[n]) {
                    return Err(Error::Invalid("label table malformed".into()));
                }
                l
            }
            None => default_labels(&counts),
        };
        Ok(SimplicialSet {
            dim,
            counts,
            faces,
            degens,
            labels,
            declared_vertices: None,
        })
    }

    pub fn with_declared_vertices(mut self, vertices: Vec<Vec<Vec<usize>>>) -> Self {
        self.declared_vertices = Some(vertices);
        self
    }

    pub fn declared_vertices(&self) -> Option<&Vec<Vec<Vec<usize>>>> {
        self.declared_vertices.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_simplices(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn simplices(&self, n: usize) -> std::ops::Range<usize> {
        0..self.counts[n]
    }

    #[inline]
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    #[inline]
    pub fn degen(&self, n: usize, j: usize, x: usize) -> usize {
        self.degens[n][j][x]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degen_table(&self, n: usize, j: usize) -> &[usize] {
        &self.degens[n][j]
    }

    pub fn label(&self, n: usize, x: usize) -> &str {
        &self.labels[n][x]
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn find_label(&self, n: usize, label: &str) -> Option<usize> {
        self.labels.get(n)?.iter().position(|l| l == label)
    }

    /// All faces `(d_0 x, …, d_n x)` of an `n`-simplex, `n ≥ 1`.
    pub fn faces_of(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|i| self.faces[n][i][x]).collect()
    }

    /// `x · α` for `x ∈ X_n` and `α : [m] → [n]`.
    pub fn act(&self, n: usize, x: usize, alpha: &MonotoneMap) -> usize {
        assert_eq!(alpha.codomain_dim(), n, "operator codomain mismatch");
        assert!(alpha.domain_dim() <= self.dim, "operator leaves the truncation");
        let (epi, mono) = alpha.factor();
        // faces for the values missed by the mono, highest first
        let image = mono.values();
        let mut y = x;
        let mut deg = n;
        for j in (0..=n).rev() {
            if image.binary_search(&j).is_err() {
                y = self.faces[deg][j][y];
                deg -= 1;
            }
        }
        // degeneracies for repeated positions of the epi, lowest first
        let ev = epi.values();
        for p in 0..ev.len().saturating_sub(1) {
            if ev[p] == ev[p + 1] {
                y = self.degens[deg][p][y];
                deg += 1;
            }
        }
        debug_assert_eq!(deg, alpha.domain_dim());
        y
    }

    /// The `i`-th vertex of an `n`-simplex.
    pub fn vertex(&self, n: usize, x: usize, i: usize) -> usize {
        self.act(n, x, &MonotoneMap::constant(0, n, i))
    }

    pub fn vertices_of(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|i| self.vertex(n, x, i)).collect()
    }

    /// For each simplex, `Some((j, y))` with `x = s_j y` if `x` is degenerate.
    pub fn degeneracy_sources(&self) -> Vec<Vec<Option<(usize, usize)>>> {
        let mut out: Vec<Vec<Option<(usize, usize)>>> = self.counts.iter().map(|&c| vec![None; c]).collect();
        for n in 0..self.dim {
            for j in 0..=n {
                for y in 0..self.counts[n] {
                    let x = self.degens[n][j][y];
                    if out[n + 1][x].is_none() {
                        out[n + 1][x] = Some((j, y));
                    }
                }
            }
        }
        out
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && (0..n).any(|j| (0..self.counts[n - 1]).any(|y| self.degens[n - 1][j][y] == x))
    }

    pub fn degenerate_flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; self.counts[n]];
        if n > 0 {
            for table in &self.degens[n - 1] {
                for &x in table {
                    flags[x] = true;
                }
            }
        }
        flags
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        let flags = self.degenerate_flags(n);
        (0..self.counts[n]).filter(|&x| !flags[x]).collect()
    }

    pub fn nondegenerate_count(&self) -> usize {
        (0..=self.dim).map(|n| self.nondegenerate(n).len()).sum()
    }

    /// Highest degree holding a nondegenerate simplex (0 for the empty set).
    pub fn top_nondegenerate_dim(&self) -> usize {
        (0..=self.dim).rev().find(|&n| !self.nondegenerate(n).is_empty()).unwrap_or(0)
    }

    /// Restriction to degrees `0..=m`, `m ≤ dim`.
    pub fn truncate(&self, m: usize) -> Result<SimplicialSet> {
        if m > self.dim {
            return Err(Error::InsufficientTruncation {
                needed: m,
                available: self.dim,
                context: "truncate".into(),
            });
        }
        let mut faces = self.faces[..=m].to_vec();
        let mut degens = self.degens[..=m].to_vec();
        degens[m].clear();
        faces.truncate(m + 1);
        Ok(SimplicialSet {
            dim: m,
            counts: self.counts[..=m].to_vec(),
            faces,
            degens,
            labels: self.labels[..=m].to_vec(),
            declared_vertices: self.declared_vertices.as_ref().map(|d| d[..=m].to_vec()),
        })
    }

    /// Sub-simplicial set on the simplices flagged in `keep`, with the
    /// inclusion components. Fails if `keep` is not closed under faces
    /// and degeneracies.
    pub fn subcomplex(&self, keep: &[Vec<bool>]) -> Result<(SimplicialSet, Vec<Vec<usize>>)> {
        let mut new_id: Vec<Vec<Option<usize>>> = Vec::with_capacity(self.dim + 1);
        let mut inclusion = Vec::with_capacity(self.dim + 1);
        for n in 0..=self.dim {
            let mut ids = vec![None; self.counts[n]];
            let mut inc = Vec::new();
            for x in 0..self.counts[n] {
                if keep[n][x] {
                    ids[x] = Some(inc.len());
                    inc.push(x);
                }
            }
            new_id.push(ids);
            inclusion.push(inc);
        }
        let mut faces = vec![Vec::new(); self.dim + 1];
        let mut degens = vec![Vec::new(); self.dim + 1];
        for n in 0..=self.dim {
            if n >= 1 {
                for i in 0..=n {
                    let mut table = Vec::with_capacity(inclusion[n].len());
                    for &x in &inclusion[n] {
                        let y = self.faces[n][i][x];
                        table.push(
                            new_id[n - 1][y]
                                .ok_or_else(|| Error::Invalid(format!("subcomplex not closed under d_{i} in degree {n}")))?,
                        );
                    }
                    faces[n].push(table);
                }
            }
            if n < self.dim {
                for j in 0..=n {
                    let mut table = Vec::with_capacity(inclusion[n].len());
                    for &x in &inclusion[n] {
                        let y = self.degens[n][j][x];
                        table.push(
                            new_id[n + 1][y]
                                .ok_or_else(|| Error::Invalid(format!("subcomplex not closed under s_{j} in degree {n}")))?,
                        );
                    }
                    degens[n].push(table);
                }
            }
        }
        let labels = (0..=self.dim)
            .map(|n| inclusion[n].iter().map(|&x| self.labels[n][x].clone()).collect())
            .collect();
        let counts = inclusion.iter().map(|v| v.len()).collect();
        Ok((
            SimplicialSet {
                dim: self.dim,
                counts,
                faces,
                degens,
                labels,
                declared_vertices: None,
            },
            inclusion,
        ))
    }

    /// Closure of a set of simplices under faces and degeneracies.
    pub fn generated_by(&self, seeds: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut keep: Vec<Vec<bool>> = self.counts.iter().map(|&c| vec![false; c]).collect();
        let mut stack: Vec<(usize, usize)> = seeds.to_vec();
        while let Some((n, x)) = stack.pop() {
            if keep[n][x] {
                continue;
            }
            keep[n][x] = true;
            if n >= 1 {
                for i in 0..=n {
                    stack.push((n - 1, self.faces[n][i][x]));
                }
            }
        }
        // degeneracies of kept simplices, degree by degree
        for n in 0..self.dim {
            for x in 0..self.counts[n] {
                if keep[n][x] {
                    for j in 0..=n {
                        let y = self.degens[n][j][x];
                        keep[n + 1][y] = true;
                    }
                }
            }
        }
        keep
    }

    pub fn relabel(mut self, labels: Vec<Vec<String>>) -> Self {
        assert_eq!(labels.len(), self.dim + 1);
        self.labels = labels;
        self
    }

    /// Check every family of simplicial identities wherever both sides are
    /// defined, plus injectivity of degeneracies and declared vertex lists.
    pub fn check_identities(&self) -> Report {
        const CAP: usize = 32;
        let mut report = Report::new();
        let push = |report: &mut Report, kind, detail: String| {
            if report.violations.iter().filter(|v| v.kind == kind).count() < CAP {
                report.push(kind, detail);
            }
        };
        let d = &self.faces;
        let s = &self.degens;
        for n in 0..=self.dim {
            for x in 0..self.counts[n] {
                // d_i d_j = d_{j-1} d_i, i < j
                if n >= 2 {
                    for j in 0..=n {
                        for i in 0..j {
                            let lhs = d[n - 1][i][d[n][j][x]];
                            let rhs = d[n - 1][j - 1][d[n][i][x]];
                            if lhs != rhs {
                                push(
                                    &mut report,
                                    ViolationKind::FaceFace,
                                    format!("d_{i} d_{j} ≠ d_{} d_{i} on {} in degree {n}", j - 1, self.labels[n][x]),
                                );
                            }
                        }
                    }
                }
                if n < self.dim {
                    for j in 0..=n {
                        let sx = s[n][j][x];
                        for i in 0..=n + 1 {
                            let lhs = d[n + 1][i][sx];
                            let rhs = if i == j || i == j + 1 {
                                Some(x)
                            } else if n == 0 {
                                None
                            } else if i < j {
                                Some(s[n - 1][j - 1][d[n][i][x]])
                            } else {
                                Some(s[n - 1][j][d[n][i - 1][x]])
                            };
                            if let Some(rhs) = rhs {
                                if lhs != rhs {
                                    push(
                                        &mut report,
                                        ViolationKind::FaceDegeneracy,
                                        format!("d_{i} s_{j} identity fails on {} in degree {n}", self.labels[n][x]),
                                    );
                                }
                            }
                        }
                    }
                }
                if n + 2 <= self.dim {
                    for j in 0..=n {
                        for i in 0..=j {
                            let lhs = s[n + 1][i][s[n][j][x]];
                            let rhs = s[n + 1][j + 1][s[n][i][x]];
                            if lhs != rhs {
                                push(
                                    &mut report,
                                    ViolationKind::DegeneracyDegeneracy,
                                    format!("s_{i} s_{j} ≠ s_{} s_{i} on {} in degree {n}", j + 1, self.labels[n][x]),
                                );
                            }
                        }
                    }
                }
            }
            if n < self.dim {
                for j in 0..=n {
                    let mut seen = vec![false; self.counts[n + 1]];
                    for x in 0..self.counts[n] {
                        let y = s[n][j][x];
                        if seen[y] {
                            push(
                                &mut report,
                                ViolationKind::DegeneracyInjectivity,
                                format!(
                                    "s-injectivity: s_{j} in degree {n} is not injective (hits {} twice)",
                                    self.labels[n + 1][y]
                                ),
                            );
                        }
                        seen[y] = true;
                    }
                }
            }
        }
        if let Some(declared) = &self.declared_vertices {
            for (n, level) in declared.iter().enumerate().take(self.dim + 1) {
                for (x, verts) in level.iter().enumerate().take(self.counts[n]) {
                    if verts.is_empty() {
                        continue;
                    }
                    let actual = self.vertices_of(n, x);
                    if &actual != verts {
                        push(
                            &mut report,
                            ViolationKind::DeclaredVertices,
                            format!(
                                "simplex {} declares vertices {:?} but faces give {:?}",
                                self.labels[n][x], verts, actual
                            ),
                        );
                    }
                }
            }
        }
        report
    }
}

impl Validate for SimplicialSet {
    fn validate(&self) -> Report {
        self.check_identities()
    }
}

fn default_labels(counts: &[usize]) -> Vec<Vec<String>> {
    counts
        .iter()
        .enumerate()
        .map(|(n, &c)| (0..c).map(|x| format!("x{n}_{x}")).collect())
        .collect()
}

/// Keys that name simplices during a construction. Their order fixes the
/// simplex ids of the result.
pub trait SimplexKey: Clone + Ord + Hash + fmt::Debug {}
impl<T: Clone + Ord + Hash + fmt::Debug> SimplexKey for T {}

/// A simplicial set built from explicit keys, with the key ↔ id maps kept
/// around so callers can address simplices structurally.
#[derive(Clone)]
pub struct Keyed<K> {
    pub sset: SimplicialSet,
    keys: Vec<Vec<K>>,
    index: Vec<HashMap<K, usize>>,
}

impl<K: SimplexKey> fmt::Debug for Keyed<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sset.fmt(f)
    }
}

impl<K: SimplexKey> Keyed<K> {
    /// Build from per-degree key lists. Keys are sorted and deduplicated;
    /// `face(n, i, k)` and `degen(n, j, k)` must land inside the lists.
    pub fn build(
        dim: usize,
        mut levels: Vec<Vec<K>>,
        face: impl Fn(usize, usize, &K) -> K,
        degen: impl Fn(usize, usize, &K) -> K,
        label: impl Fn(usize, &K) -> String,
    ) -> Result<Self> {
        assert_eq!(levels.len(), dim + 1, "one key list per degree");
        for level in &mut levels {
            level.sort();
            level.dedup();
        }
        let index: Vec<HashMap<K, usize>> = levels
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let lookup = |n: usize, k: &K, what: &str| -> Result<usize> {
            index[n]
                .get(k)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("{what} lands outside degree {n}: {k:?}")))
        };
        let mut faces = vec![Vec::new(); dim + 1];
        let mut degens = vec![Vec::new(); dim + 1];
        for n in 0..=dim {
            if n >= 1 {
                for i in 0..=n {
                    let table = levels[n]
                        .iter()
                        .map(|k| lookup(n - 1, &face(n, i, k), "face"))
                        .collect::<Result<Vec<_>>>()?;
                    faces[n].push(table);
                }
            }
            if n < dim {
                for j in 0..=n {
                    let table = levels[n]
                        .iter()
                        .map(|k| lookup(n + 1, &degen(n, j, k), "degeneracy"))
                        .collect::<Result<Vec<_>>>()?;
                    degens[n].push(table);
                }
            }
        }
        let labels = levels
            .iter()
            .enumerate()
            .map(|(n, l)| l.iter().map(|k| label(n, k)).collect())
            .collect();
        let counts = levels.iter().map(|l| l.len()).collect();
        Ok(Keyed {
            sset: SimplicialSet {
                dim,
                counts,
                faces,
                degens,
                labels,
                declared_vertices: None,
            },
            keys: levels,
            index,
        })
    }

    pub fn id(&self, n: usize, key: &K) -> Option<usize> {
        self.index.get(n)?.get(key).copied()
    }

    pub fn key(&self, n: usize, id: usize) -> &K {
        &self.keys[n][id]
    }

    pub fn keys(&self, n: usize) -> &[K] {
        &self.keys[n]
    }

    pub fn dim(&self) -> usize {
        self.sset.dim()
    }

    pub fn into_sset(self) -> SimplicialSet {
        self.sset
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::standard;

    #[test]
    fn act_matches_face_and_degeneracy_tables() {
        let d2 = standard::delta(2, 3);
        for x in d2.simplices(2) {
            for i in 0..=2 {
                assert_eq!(d2.act(2, x, &MonotoneMap::coface(2, i)), d2.face(2, i, x));
            }
            for j in 0..=2 {
                assert_eq!(d2.act(2, x, &MonotoneMap::codegeneracy(2, j)), d2.degen(2, j, x));
            }
        }
    }

    #[test]
    fn act_is_functorial() {
        let s = standard::delta(2, 3);
        for m in 0..=3 {
            for k in 0..=3 {
                for a in MonotoneMap::all(m, 2) {
                    for b in MonotoneMap::all(k, m) {
                        for x in s.simplices(2) {
                            let lhs = s.act(2, x, &a.compose(&b));
                            let rhs = s.act(m, s.act(2, x, &a), &b);
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn swapped_faces_pass_identities_but_fail_declared_vertices() {
        let d1 = standard::delta(1, 1);
        let edge = d1.find_label(1, "01").unwrap();
        let mut faces = vec![Vec::new(), vec![d1.face_table(1, 0).to_vec(), d1.face_table(1, 1).to_vec()]];
        let v0 = d1.face(1, 1, edge);
        let v1 = d1.face(1, 0, edge);
        faces[1][0][edge] = v0;
        faces[1][1][edge] = v1;
        let degens = vec![vec![d1.degen_table(0, 0).to_vec()], Vec::new()];
        let swapped = SimplicialSet::from_tables(1, d1.counts().to_vec(), faces, degens, Some(d1.labels().to_vec())).unwrap();
        assert!(swapped.validate().is_ok());

        let declared = (0..=1)
            .map(|n| (0..d1.count(n)).map(|x| d1.vertices_of(n, x)).collect::<Vec<_>>())
            .collect();
        let swapped = swapped.with_declared_vertices(declared);
        let report = swapped.validate();
        assert!(report.has(ViolationKind::DeclaredVertices));
    }

    #[test]
    fn non_injective_degeneracy_is_named() {
        // two vertices, one edge, both vertices degenerate onto it
        let faces = vec![Vec::new(), vec![vec![0], vec![0]]];
        let degens = vec![vec![vec![0, 0]], Vec::new()];
        let s = SimplicialSet::from_tables(1, vec![2, 1], faces, degens, None).unwrap();
        let report = s.validate();
        assert!(report.has(ViolationKind::DegeneracyInjectivity));
        assert!(report.violations.iter().any(|v| v.detail.contains("s-injectivity")));
    }

    #[test]
    fn subcomplex_rejects_unclosed_sets() {
        let d1 = standard::delta(1, 1);
        let mut keep: Vec<Vec<bool>> = d1.counts().iter().map(|&c| vec![true; c]).collect();
        keep[0][0] = false;
        assert!(d1.subcomplex(&keep).is_err());
    }
}
