//! Exact integer linear algebra: Smith and Hermite normal forms, rank,
//! determinants, gcds of minors, lattice comparison, total unimodularity and
//! canonical forms under row/column permutation.

mod canonical;
mod hermite;
mod smith;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub(crate) use canonical::canonical_entries;
pub use canonical::{
    canonical_rowcol_form, canonical_rowcol_form_with_bound, DEFAULT_CANONICAL_ROW_BOUND,
};
pub use hermite::{hermite_normal_form, HermiteForm};
pub use smith::{smith_normal_form, SmithForm};

pub const DEFAULT_TU_BOUND: usize = 8;

/// Rank over the rationals, by fraction-free (Bareiss) elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let pivot = a.get(r, c).clone();
        for i in r + 1..rows {
            let lead = a.get(i, c).clone();
            for j in c + 1..cols {
                let x = &pivot * a.get(i, j) - &lead * a.get(r, j);
                let (q, rem) = x.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a.set(i, j, q);
            }
            a.set(i, c, BigInt::zero());
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Determinant of a square matrix (Bareiss elimination).
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            a.swap_rows(k, p);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let lead = a.get(i, k).clone();
            for j in k + 1..n {
                let x = &pivot * a.get(i, j) - &lead * a.get(k, j);
                *a.get_mut(i, j) = x / &prev;
            }
        }
        prev = pivot;
    }
    let det = if n == 0 {
        BigInt::one()
    } else {
        a.get(n - 1, n - 1).clone()
    };
    Ok(if negate { -det } else { det })
}

/// Determinant of a small row-major `n × n` matrix in checked `i128`
/// arithmetic; `None` if any intermediate value overflows.
pub(crate) fn small_determinant(entries: &[i64], n: usize) -> Option<i128> {
    let mut a: Vec<i128> = entries.iter().map(|&x| x as i128).collect();
    let mut prev: i128 = 1;
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i * n + k] != 0) else {
            return Some(0);
        };
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let x = pivot
                    .checked_mul(a[i * n + j])?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = x / prev;
            }
        }
        prev = pivot;
    }
    let det = if n == 0 { 1 } else { a[n * n - 1] };
    Some(if negate { -det } else { det })
}

/// Determinant that tries machine arithmetic first and falls back to `BigInt`.
pub(crate) fn fast_determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.is_square() {
        if let Some(small) = m.to_i64_entries() {
            if let Some(det) = small_determinant(&small, m.rows()) {
                return Ok(BigInt::from(det));
            }
        }
    }
    determinant(m)
}

/// `Δ_r(M)`: gcd of all `r × r` minors, 0 if they all vanish.
pub fn minor_gcd(m: &IntMatrix, r: usize) -> Result<BigInt> {
    if r > m.rows().min(m.cols()) {
        return Err(Error::BadMinorSize {
            size: r,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(smith_normal_form(m).minor_gcd(r))
}

/// Whether the column lattices of `a` and `b` coincide.
pub fn lattice_equal(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "lattices in Z^{} and Z^{}",
            a.rows(),
            b.rows()
        )));
    }
    Ok(hermite_normal_form(a) == hermite_normal_form(b))
}

/// Whether `v` is an integer combination of the columns of `m`.
pub fn lattice_contains(m: &IntMatrix, v: &[BigInt]) -> Result<bool> {
    hermite_normal_form(m).contains(v)
}

pub fn is_totally_unimodular(m: &IntMatrix) -> Result<bool> {
    is_totally_unimodular_with_bound(m, DEFAULT_TU_BOUND)
}

/// Every square minor in `{-1, 0, 1}`, checked exhaustively.
pub fn is_totally_unimodular_with_bound(m: &IntMatrix, bound: usize) -> Result<bool> {
    let size = m.rows().min(m.cols());
    if size > bound {
        return Err(Error::TooLarge { size, limit: bound });
    }
    if m.entries().iter().any(|x| x.abs() > BigInt::one()) {
        return Ok(false);
    }
    let small = m.to_i64_entries().expect("entries are in {-1, 0, 1}");
    let cols = m.cols();
    for k in 2..=size {
        let row_sets = combinations(m.rows(), k);
        let col_sets = combinations(cols, k);
        let mut sub = vec![0i64; k * k];
        for rs in &row_sets {
            for cs in &col_sets {
                for (a, &i) in rs.iter().enumerate() {
                    for (b, &j) in cs.iter().enumerate() {
                        sub[a * k + b] = small[i * cols + j];
                    }
                }
                // minors of a {-1,0,1} matrix with k <= 8 stay far inside i128
                let det = small_determinant(&sub, k).expect("no overflow at this size");
                if det.abs() > 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
