use num_bigint::BigInt;

use crate::combinatorics::next_permutation;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub const DEFAULT_CANONICAL_ROW_BOUND: usize = 9;

/// Canonical representative of `M` under independent row and column
/// permutations.
///
/// For every row permutation the columns are sorted into descending
/// lexicographic order (top entry most significant); the result is the least
/// of these matrices in row-major order. Rows are tried exhaustively, so the
/// cost is `rows!`.
pub fn canonical_rowcol_form(m: &IntMatrix) -> Result<IntMatrix> {
    canonical_rowcol_form_with_bound(m, DEFAULT_CANONICAL_ROW_BOUND)
}

pub fn canonical_rowcol_form_with_bound(m: &IntMatrix, max_rows: usize) -> Result<IntMatrix> {
    if m.rows() > max_rows {
        return Err(Error::TooLarge {
            size: m.rows(),
            limit: max_rows,
        });
    }
    let entries: Vec<BigInt> = match m.to_i64_entries() {
        Some(small) => canonical_entries(&small, m.rows(), m.cols())
            .into_iter()
            .map(BigInt::from)
            .collect(),
        None => canonical_entries(m.entries(), m.rows(), m.cols()),
    };
    IntMatrix::from_vec(m.rows(), m.cols(), entries)
}

/// Row-major canonical entries of a row-major `rows × cols` matrix.
pub(crate) fn canonical_entries<T: Ord + Clone>(data: &[T], rows: usize, cols: usize) -> Vec<T> {
    let mut perm: Vec<usize> = (0..rows).collect();
    let mut best: Option<Vec<T>> = None;
    let mut columns: Vec<Vec<T>> = vec![Vec::with_capacity(rows); cols];
    loop {
        for (j, col) in columns.iter_mut().enumerate() {
            col.clear();
            col.extend(perm.iter().map(|&i| data[i * cols + j].clone()));
        }
        columns.sort_unstable_by(|a, b| b.cmp(a));
        let candidate: Vec<T> = (0..rows)
            .flat_map(|i| columns.iter().map(move |c| c[i].clone()))
            .collect();
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}
