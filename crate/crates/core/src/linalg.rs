//! Exact rational linear algebra on sparse rows keyed by an ordered column
//! type, plus a small dense nullspace routine. Pivots follow the column
//! order, rows are kept in reduced echelon form, so a row space has a unique
//! canonical presentation.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseRow<K> = BTreeMap<K, BigRational>;

/// A row space in reduced row echelon form over `Q`.
///
/// Every stored row has leading (smallest-column) coefficient 1 and is fully
/// reduced against the others; rows are ordered by pivot column. Two spans
/// are equal as subspaces iff their stored rows are equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RowSpace<K: Ord + Clone> {
    rows: Vec<SparseRow<K>>,
}

impl<K: Ord + Clone> RowSpace<K> {
    pub fn new() -> Self {
        RowSpace { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<K>] {
        &self.rows
    }

    fn pivot(row: &SparseRow<K>) -> Option<&K> {
        row.keys().next()
    }

    /// Reduces `row` against the span. Returns the residual together with the
    /// combination used: `row = sum coeff_i * rows[i] + residual`.
    pub fn reduce(&self, mut row: SparseRow<K>) -> (SparseRow<K>, Vec<(usize, BigRational)>) {
        let mut combo = Vec::new();
        for (idx, basis_row) in self.rows.iter().enumerate() {
            let pivot = Self::pivot(basis_row).expect("basis rows are nonzero");
            if let Some(c) = row.get(pivot).cloned() {
                // basis pivot coefficient is 1
                for (k, v) in basis_row {
                    let entry = row.entry(k.clone()).or_insert_with(BigRational::zero);
                    *entry -= &c * v;
                    if entry.is_zero() {
                        row.remove(k);
                    }
                }
                combo.push((idx, c));
            }
        }
        (row, combo)
    }

    /// Inserts a row if it enlarges the span. Returns `true` when the
    /// dimension grew.
    pub fn insert(&mut self, row: SparseRow<K>) -> bool {
        let (mut residual, _) = self.reduce(row);
        if residual.is_empty() {
            return false;
        }
        // normalize the pivot to 1
        let lead = Self::pivot(&residual).unwrap().clone();
        let lead_coeff = residual[&lead].clone();
        if !lead_coeff.is_one() {
            for v in residual.values_mut() {
                *v /= &lead_coeff;
            }
        }
        // back-eliminate the new pivot from existing rows
        for basis_row in &mut self.rows {
            if let Some(c) = basis_row.get(&lead).cloned() {
                for (k, v) in &residual {
                    let entry = basis_row.entry(k.clone()).or_insert_with(BigRational::zero);
                    *entry -= &c * v;
                    if entry.is_zero() {
                        basis_row.remove(k);
                    }
                }
            }
        }
        let pos = self
            .rows
            .partition_point(|r| Self::pivot(r).unwrap() < &lead);
        self.rows.insert(pos, residual);
        true
    }

    /// True when `row` already lies in the span.
    pub fn contains(&self, row: SparseRow<K>) -> bool {
        self.reduce(row).0.is_empty()
    }
}

/// Basis of `{x : rows * x = 0}` for a dense rational matrix given by rows.
/// Columns are the unknowns. Deterministic: pivots in column order, each
/// basis vector has a 1 in its free column.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .cloned()
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(r, sel);
        let inv = mat[r][col].clone();
        for v in &mut mat[r] {
            *v /= &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][col].is_zero() {
                let c = mat[i][col].clone();
                for j in 0..ncols {
                    let sub = &c * &mat[r][j];
                    mat[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row_idx, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -mat[row_idx][free].clone();
        }
        basis.push(v);
    }
    basis
}
