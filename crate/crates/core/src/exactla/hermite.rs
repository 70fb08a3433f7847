use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Column Hermite normal form: a lower echelon basis of the column lattice.
///
/// Column `k` of the basis has its first nonzero entry (the pivot, positive)
/// in row `pivot_rows[k]`, with `pivot_rows` strictly increasing; in every
/// pivot row the entries left of the pivot lie in `[0, pivot)`. Two matrices
/// with the same row count span the same lattice iff their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    basis: IntMatrix,
    pivot_rows: Vec<usize>,
}

impl HermiteForm {
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    /// Solves `basis * c = v` over the integers.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.basis.rows() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against a lattice in Z^{}",
                v.len(),
                self.basis.rows()
            )));
        }
        let mut residual = v.to_vec();
        let mut row = 0;
        for (k, &p) in self.pivot_rows.iter().enumerate() {
            if residual[row..p].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
            let pivot = self.basis.get(p, k);
            let (q, r) = residual[p].div_rem(pivot);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (i, res) in residual.iter_mut().enumerate().skip(p) {
                    let b = self.basis.get(i, k);
                    if !b.is_zero() {
                        *res -= &q * b;
                    }
                }
            }
            row = p + 1;
        }
        Ok(residual[row..].iter().all(Zero::is_zero))
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivot_rows = Vec::new();
    let mut k = 0;

    for i in 0..rows {
        if k == cols {
            break;
        }
        // gcd-reduce row i over columns k.. into column k
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for j in k..cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                    best = Some((j, ax));
                }
            }
            let Some((j, _)) = best else { break };
            a.swap_cols(k, j);
            let mut done = true;
            for j in k + 1..cols {
                if a.get(i, j).is_zero() {
                    continue;
                }
                let q = -a.get(i, j).div_floor(a.get(i, k));
                a.add_col_multiple(j, k, &q);
                done &= a.get(i, j).is_zero();
            }
            if done {
                break;
            }
        }
        if a.get(i, k).is_zero() {
            continue;
        }
        if a.get(i, k).is_negative() {
            a.negate_col(k);
        }
        for j in 0..k {
            let q = -a.get(i, j).div_floor(a.get(i, k));
            a.add_col_multiple(j, k, &q);
        }
        pivot_rows.push(i);
        k += 1;
    }

    let basis = a.select(&(0..rows).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>());
    HermiteForm { basis, pivot_rows }
}
