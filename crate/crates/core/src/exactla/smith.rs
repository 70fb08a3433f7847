use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// Smith normal form `U * M * V = diag(d_1, .., d_r, 0, ..)` with
/// `d_1 | d_2 | .. | d_r`, all `d_i > 0`, and `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    invariant_factors: Vec<BigInt>,
    left: IntMatrix,
    right: IntMatrix,
    rows: usize,
    cols: usize,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// `U`, acting on rows.
    pub fn left(&self) -> &IntMatrix {
        &self.left
    }

    /// `V`, acting on columns.
    pub fn right(&self) -> &IntMatrix {
        &self.right
    }

    /// The diagonal matrix `U * M * V`.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }

    /// `d_1 * .. * d_r`, the gcd of the `r × r` minors; zero beyond the rank.
    pub fn minor_gcd(&self, r: usize) -> BigInt {
        if r > self.rank() {
            return BigInt::zero();
        }
        self.invariant_factors[..r]
            .iter()
            .fold(BigInt::one(), |acc, f| acc * f)
    }

    /// Whether every invariant factor is 1, i.e. the cokernel is torsion-free.
    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.iter().all(One::is_one)
    }
}

/// Smallest nonzero |entry| over `cells`, ties broken by (row, col).
fn smallest<I>(m: &IntMatrix, cells: I) -> Option<(usize, usize)>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let x = m.get(i, j);
        if x.is_zero() {
            continue;
        }
        let a = x.abs();
        let better = match &best {
            None => true,
            Some((pos, b)) => a < *b || (a == *b && (i, j) < *pos),
        };
        if better {
            best = Some(((i, j), a));
        }
    }
    best.map(|(pos, _)| pos)
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;

    while t < rows.min(cols) {
        let cells = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = smallest(&a, cells) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                let cells = std::iter::once((t, t))
                    .chain((t + 1..rows).map(|i| (i, t)))
                    .chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = smallest(&a, cells).expect("pivot row/column is nonzero");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let pivot = a.get(t, t).clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SmithForm {
        invariant_factors: (0..t).map(|i| a.get(i, i).clone()).collect(),
        left: u,
        right: v,
        rows,
        cols,
    }
}
