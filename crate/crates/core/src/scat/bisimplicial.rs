use crate::error::Result;
use crate::scat::report::{Report, Validate, ViolationKind};
use crate::scat::sset::SimplicialSet;

/// A bisimplicial set truncated at `(rows, cols)`. Cell `(m, n)` has
/// horizontal degree `m` and vertical degree `n`; `tables[m][n]` holds the
/// structure maps out of `cells[m][n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimplicialSet {
    rows: usize,
    cols: usize,
    counts: Vec<Vec<usize>>,
    h_face: Vec<Vec<Vec<Vec<usize>>>>,
    h_degen: Vec<Vec<Vec<Vec<usize>>>>,
    v_face: Vec<Vec<Vec<Vec<usize>>>>,
    v_degen: Vec<Vec<Vec<Vec<usize>>>>,
}

/// Structure maps out of one cell set.
#[derive(Debug, Clone, Default)]
pub struct CellTables {
    pub count: usize,
    /// `d^h_i`, present when `m ≥ 1`.
    pub h_face: Vec<Vec<usize>>,
    /// `s^h_j`, present when `m < rows`.
    pub h_degen: Vec<Vec<usize>>,
    /// `d^v_i`, present when `n ≥ 1`.
    pub v_face: Vec<Vec<usize>>,
    /// `s^v_j`, present when `n < cols`.
    pub v_degen: Vec<Vec<usize>>,
}

impl BisimplicialSet {
    /// `cells[m][n]` for `m ≤ rows`, `n ≤ cols`.
    pub fn from_cells(rows: usize, cols: usize, cells: Vec<Vec<CellTables>>) -> Self {
        assert_eq!(cells.len(), rows + 1);
        let mut b = BisimplicialSet {
            rows,
            cols,
            counts: Vec::new(),
            h_face: Vec::new(),
            h_degen: Vec::new(),
            v_face: Vec::new(),
            v_degen: Vec::new(),
        };
        for row in cells {
            assert_eq!(row.len(), cols + 1);
            let mut counts = Vec::new();
            let (mut hf, mut hd, mut vf, mut vd) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for c in row {
                counts.push(c.count);
                hf.push(c.h_face);
                hd.push(c.h_degen);
                vf.push(c.v_face);
                vd.push(c.v_degen);
            }
            b.counts.push(counts);
            b.h_face.push(hf);
            b.h_degen.push(hd);
            b.v_face.push(vf);
            b.v_degen.push(vd);
        }
        b
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn count(&self, m: usize, n: usize) -> usize {
        self.counts[m][n]
    }

    pub fn h_face(&self, m: usize, n: usize, i: usize, x: usize) -> usize {
        self.h_face[m][n][i][x]
    }

    pub fn v_face(&self, m: usize, n: usize, i: usize, x: usize) -> usize {
        self.v_face[m][n][i][x]
    }

    pub fn h_degen(&self, m: usize, n: usize, j: usize, x: usize) -> usize {
        self.h_degen[m][n][j][x]
    }

    pub fn v_degen(&self, m: usize, n: usize, j: usize, x: usize) -> usize {
        self.v_degen[m][n][j][x]
    }

    /// The simplicial set in the vertical direction at horizontal degree `m`.
    pub fn row(&self, m: usize) -> Result<SimplicialSet> {
        SimplicialSet::from_tables(
            self.cols,
            self.counts[m].clone(),
            self.v_face[m].clone(),
            self.v_degen[m].clone(),
            None,
        )
    }

    /// The simplicial set in the horizontal direction at vertical degree `n`.
    pub fn column(&self, n: usize) -> Result<SimplicialSet> {
        SimplicialSet::from_tables(
            self.rows,
            (0..=self.rows).map(|m| self.counts[m][n]).collect(),
            (0..=self.rows).map(|m| self.h_face[m][n].clone()).collect(),
            (0..=self.rows).map(|m| self.h_degen[m][n].clone()).collect(),
            None,
        )
    }

    /// The diagonal simplicial set, truncated at `min(rows, cols)`.
    pub fn diagonal(&self) -> Result<SimplicialSet> {
        let d = self.rows.min(self.cols);
        let counts = (0..=d).map(|n| self.counts[n][n]).collect();
        let faces = (0..=d)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| {
                        (0..self.counts[n][n])
                            .map(|x| self.h_face[n][n - 1][i][self.v_face[n][n][i][x]])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degens = (0..=d)
            .map(|n| {
                if n == d {
                    return Vec::new();
                }
                (0..=n)
                    .map(|j| {
                        (0..self.counts[n][n])
                            .map(|x| self.h_degen[n][n + 1][j][self.v_degen[n][n][j][x]])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SimplicialSet::from_tables(d, counts, faces, degens, None)
    }
}

impl Validate for BisimplicialSet {
    fn validate(&self) -> Report {
        let mut report = Report::new();
        for m in 0..=self.rows {
            match self.row(m) {
                Ok(r) => report.extend(r.validate().with_prefix(&format!("row {m}"))),
                Err(e) => report.push(ViolationKind::Shape, format!("row {m}: {e}")),
            }
        }
        for n in 0..=self.cols {
            match self.column(n) {
                Ok(c) => report.extend(c.validate().with_prefix(&format!("column {n}"))),
                Err(e) => report.push(ViolationKind::Shape, format!("column {n}: {e}")),
            }
        }
        if !report.is_ok() {
            return report;
        }
        let mut bad = |what: String| {
            if report.violations.len() < 32 {
                report.push(ViolationKind::Bisimplicial, what);
            }
        };
        for m in 0..=self.rows {
            for n in 0..=self.cols {
                for x in 0..self.counts[m][n] {
                    if m >= 1 && n >= 1 {
                        for i in 0..=m {
                            for k in 0..=n {
                                let a = self.v_face[m - 1][n][k][self.h_face[m][n][i][x]];
                                let b = self.h_face[m][n - 1][i][self.v_face[m][n][k][x]];
                                if a != b {
                                    bad(format!("d^h_{i} d^v_{k} at ({m},{n})"));
                                }
                            }
                        }
                    }
                    if m >= 1 && n < self.cols {
                        for i in 0..=m {
                            for k in 0..=n {
                                let a = self.v_degen[m - 1][n][k][self.h_face[m][n][i][x]];
                                let b = self.h_face[m][n + 1][i][self.v_degen[m][n][k][x]];
                                if a != b {
                                    bad(format!("d^h_{i} s^v_{k} at ({m},{n})"));
                                }
                            }
                        }
                    }
                    if m < self.rows && n >= 1 {
                        for j in 0..=m {
                            for k in 0..=n {
                                let a = self.v_face[m + 1][n][k][self.h_degen[m][n][j][x]];
                                let b = self.h_degen[m][n - 1][j][self.v_face[m][n][k][x]];
                                if a != b {
                                    bad(format!("s^h_{j} d^v_{k} at ({m},{n})"));
                                }
                            }
                        }
                    }
                    if m < self.rows && n < self.cols {
                        for j in 0..=m {
                            for k in 0..=n {
                                let a = self.v_degen[m + 1][n][k][self.h_degen[m][n][j][x]];
                                let b = self.h_degen[m][n + 1][j][self.v_degen[m][n][k][x]];
                                if a != b {
                                    bad(format!("s^h_{j} s^v_{k} at ({m},{n})"));
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }
}

/// `K □ L`, with cells `K_m × L_n`.
pub fn box_product(k: &SimplicialSet, l: &SimplicialSet) -> BisimplicialSet {
    let (rows, cols) = (k.dim(), l.dim());
    let cells = (0..=rows)
        .map(|m| {
            (0..=cols)
                .map(|n| {
                    let (km, ln) = (k.count(m), l.count(n));
                    let idx = |a: usize, b: usize, lcount: usize| a * lcount + b;
                    let mut t = CellTables {
                        count: km * ln,
                        ..Default::default()
                    };
                    if m >= 1 {
                        t.h_face = (0..=m)
                            .map(|i| (0..km * ln).map(|x| idx(k.face(m, i, x / ln), x % ln, ln)).collect())
                            .collect();
                    }
                    if m < rows {
                        t.h_degen = (0..=m)
                            .map(|j| (0..km * ln).map(|x| idx(k.degen(m, j, x / ln), x % ln, ln)).collect())
                            .collect();
                    }
                    if n >= 1 {
                        let l1 = l.count(n - 1);
                        t.v_face = (0..=n)
                            .map(|i| (0..km * ln).map(|x| idx(x / ln, l.face(n, i, x % ln), l1)).collect())
                            .collect();
                    }
                    if n < cols {
                        let l1 = l.count(n + 1);
                        t.v_degen = (0..=n)
                            .map(|j| (0..km * ln).map(|x| idx(x / ln, l.degen(n, j, x % ln), l1)).collect())
                            .collect();
                    }
                    t
                })
                .collect()
        })
        .collect();
    BisimplicialSet::from_cells(rows, cols, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::limits::product;
    use crate::scat::standard;

    #[test]
    fn box_product_is_bisimplicial_with_product_diagonal() {
        let a = standard::delta(1, 3);
        let b = standard::horn(2, 0, 3).unwrap();
        let bx = box_product(&a, &b);
        assert!(bx.validate().is_ok());
        let diag = bx.diagonal().unwrap();
        assert!(diag.validate().is_ok());
        assert_eq!(diag.counts(), product(&a, &b).unwrap().sset().counts());
    }
}
