//! Column-major sparse integer matrices.

/// Sparse integer matrix stored as sorted `(row, value)` lists per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    /// Build from column lists; zero entries are dropped, rows sorted.
    pub fn from_cols(nrows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.retain(|e| e.1 != 0);
                c.sort_unstable();
                debug_assert!(c.iter().all(|e| e.0 < nrows));
                c
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i, rows[i][j]))
                    .collect()
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.cols.len())
    }

    pub fn col(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j]
            .binary_search_by_key(&i, |e| e.0)
            .map_or(0, |p| self.cols[j][p].1)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                out[i][j] = v;
            }
        }
        out
    }

    /// Row-major copy: for each row, `(col, value)` pairs.
    pub fn rows(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                out[i].push((j, v));
            }
        }
        out
    }

    /// Exact product `self * rhs`.
    ///
    /// # Panics
    /// On mismatched inner dimensions or `i64` overflow.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.nrows, "inner dimensions differ");
        let cols = rhs
            .cols
            .iter()
            .map(|rc| {
                let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
                for &(k, b) in rc {
                    for &(i, a) in &self.cols[k] {
                        let e = acc.entry(i).or_insert(0);
                        *e = e
                            .checked_add(a.checked_mul(b).expect("overflow"))
                            .expect("overflow");
                    }
                }
                acc.into_iter().filter(|e| e.1 != 0).collect()
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            cols,
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for e in &mut self.cols[j] {
            e.1 = -e.1;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in &mut self.cols {
            if let Ok(p) = c.binary_search_by_key(&i, |e| e.0) {
                c[p].1 = -c[p].1;
            }
        }
    }
}
