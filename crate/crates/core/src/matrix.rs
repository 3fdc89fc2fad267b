//! Sparse row reduction over an exact field.
//!
//! Rows are sorted `(column, coefficient)` lists with no explicit zeros.
//! Reduction is plain Gauss–Jordan; over `Q` and `Fp` it is exact, so ranks,
//! pivots and kernels are certificates rather than estimates.

use crate::scalar::{FieldSpec, Scalar, ScalarError};

/// A sparse vector: strictly increasing column indices, nonzero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Adds `scale * src` into `dst`, keeping the sparse form canonical.
pub(crate) fn axpy(dst: &SparseVec, scale: &Scalar, src: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some((ci, a)), Some((cj, _))) if ci < cj => {
                out.push((*ci, a.clone()));
                i += 1;
            }
            (Some((ci, _)), Some((cj, b))) if cj < ci => {
                let v = scale.mul(b).expect("same field");
                if !v.is_zero() {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (Some((c, a)), Some((_, b))) => {
                let v = a.add(&scale.mul(b).expect("same field")).expect("same field");
                if !v.is_zero() {
                    out.push((*c, v));
                }
                i += 1;
                j += 1;
            }
            (Some((c, a)), None) => {
                out.push((*c, a.clone()));
                i += 1;
            }
            (None, Some((c, b))) => {
                let v = scale.mul(b).expect("same field");
                if !v.is_zero() {
                    out.push((*c, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub(crate) fn scale_row(row: &SparseVec, scale: &Scalar) -> SparseVec {
    row.iter()
        .map(|(c, a)| (*c, scale.mul(a).expect("same field")))
        .filter(|(_, a)| !a.is_zero())
        .collect()
}

/// Row-echelon accumulator. Inserted rows are reduced against the pivots
/// seen so far; rows that survive are normalized (pivot coefficient 1) and
/// kept. Used incrementally by the cup-length span iteration.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    // rows sorted by pivot column
    rows: Vec<SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current basis; returns the residual
    /// (empty exactly when `row` was already in the span). Elimination is
    /// driven by the leading column: each step strictly advances it, and a
    /// leading column with no pivot certifies independence.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        while let Some((lead, coeff)) = row.first().cloned() {
            let pos = self.rows.partition_point(|r| r[0].0 < lead);
            match self.rows.get(pos) {
                Some(basis_row) if basis_row[0].0 == lead => {
                    row = axpy(&row, &coeff.neg(), basis_row);
                }
                _ => break,
            }
        }
        row
    }

    /// Inserts `row` if it enlarges the span. Returns true when rank grew.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let residual = self.reduce(row);
        if residual.is_empty() {
            return false;
        }
        let inv = residual[0].1.inv().expect("pivot is nonzero");
        let normalized = scale_row(&residual, &inv);
        let pos = self.rows.partition_point(|r| r[0].0 < normalized[0].0);
        self.rows.insert(pos, normalized);
        true
    }
}

/// Result of full reduced row-echelon form: the rank, the reduced nonzero
/// rows (pivot coefficient 1, pivot columns cleared elsewhere), and the
/// pivot columns in increasing order.
#[derive(Debug, Clone)]
pub struct RowReduction {
    pub rank: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

/// A sparse matrix over one exact field.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    field: FieldSpec,
    cols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    /// Builds a matrix from sparse rows; all coefficients must share `field`
    /// and the column indices must be strictly increasing and within bounds.
    pub fn new(field: FieldSpec, cols: usize, rows: Vec<SparseVec>) -> Result<Self, ScalarError> {
        for row in &rows {
            for window in row.windows(2) {
                assert!(window[0].0 < window[1].0, "row indices must be strictly increasing");
            }
            for (c, a) in row {
                assert!(*c < cols, "column index out of bounds");
                if a.field() != field {
                    return Err(ScalarError::FieldMismatch(field, a.field()));
                }
            }
        }
        Ok(SparseMatrix { field, cols, rows })
    }

    /// Convenience constructor from dense integer rows.
    pub fn from_dense_integers(field: FieldSpec, rows: &[&[i64]]) -> Result<Self, ScalarError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let sparse = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, v)| (c, field.integer(*v)))
                    .filter(|(_, a)| !a.is_zero())
                    .collect()
            })
            .collect();
        Self::new(field, cols, sparse)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduced row-echelon form with rank and pivot columns.
    pub fn row_reduce(&self) -> RowReduction {
        let mut echelon = Echelon::new();
        for row in &self.rows {
            echelon.insert(row.clone());
        }
        // back-substitute so pivot columns are cleared above the pivot
        let rows = echelon.rows;
        let mut reduced: Vec<SparseVec> = Vec::with_capacity(rows.len());
        for row in rows.iter().rev() {
            let mut r = row.clone();
            for done in &reduced {
                let pivot = done[0].0;
                if let Ok(pos) = r.binary_search_by_key(&pivot, |(c, _)| *c) {
                    let coeff = r[pos].1.neg();
                    r = axpy(&r, &coeff, done);
                }
            }
            reduced.push(r);
        }
        reduced.reverse();
        let pivots: Vec<usize> = reduced.iter().map(|r| r[0].0).collect();
        RowReduction { rank: reduced.len(), rows: reduced, pivots }
    }

    /// A basis of the right null space `{ x : M x = 0 }`, one vector per
    /// free column, in increasing free-column order. Satisfies
    /// `rank + kernel.len() == cols`.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let reduction = self.row_reduce();
        let pivot_of_col: std::collections::BTreeMap<usize, usize> =
            reduction.pivots.iter().enumerate().map(|(r, c)| (*c, r)).collect();
        let mut kernel = Vec::with_capacity(self.cols - reduction.rank);
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            // x[free] = 1, x[pivot_r] = -rref[r][free]
            let mut vec: SparseVec = Vec::new();
            for (r, row) in reduction.rows.iter().enumerate() {
                if let Ok(pos) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    vec.push((reduction.pivots[r], row[pos].1.neg()));
                }
            }
            vec.push((free, self.field.one()));
            vec.sort_by_key(|(c, _)| *c);
            kernel.push(vec);
        }
        kernel
    }
}
