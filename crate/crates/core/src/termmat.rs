//! Matrices whose entries are single signed monomial terms: the formal
//! Jacobian, the linear syzygy matrix and the Taylor syzygy matrix of a
//! monomial set, together with their integer specializations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{is_even, next_permutation};
use crate::error::{Error, Result};
use crate::exactla;
use crate::matrix::IntMatrix;
use crate::monomial::{Monomial, MonomialSet};
use crate::union_find::UnionFind;

pub const MAX_SYMBOLIC_MINOR: usize = 6;

/// `coeff * x^exponents`. The zero term has all exponents zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    coeff: BigInt,
    exponents: Vec<u32>,
}

impl Term {
    pub fn new(coeff: BigInt, exponents: Vec<u32>) -> Self {
        if coeff.is_zero() {
            Term::zero(exponents.len())
        } else {
            Term { coeff, exponents }
        }
    }

    pub fn zero(n: usize) -> Self {
        Term {
            coeff: BigInt::zero(),
            exponents: vec![0; n],
        }
    }

    pub fn monomial(coeff: i64, m: &Monomial) -> Self {
        Term::new(BigInt::from(coeff), m.exponents().to_vec())
    }

    pub fn coeff(&self) -> &BigInt {
        &self.coeff
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Term) -> Term {
        if self.is_zero() || other.is_zero() {
            return Term::zero(self.exponents.len());
        }
        Term {
            coeff: &self.coeff * &other.coeff,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn negated(&self) -> Term {
        Term {
            coeff: -self.coeff.clone(),
            exponents: self.exponents.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mono = Monomial::new(self.exponents.clone()).to_string();
        if mono == "1" {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one() {
            write!(f, "{}", mono)
        } else if self.coeff == -BigInt::one() {
            write!(f, "-{}", mono)
        } else {
            write!(f, "{}*{}", self.coeff, mono)
        }
    }
}

/// Which construction a term matrix (or a submatrix of it) came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermFamily {
    FormalJacobian,
    LinearSyzygy,
    Taylor,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermMatrix {
    rows: usize,
    cols: usize,
    n: usize,
    entries: Vec<Term>,
    family: TermFamily,
}

impl TermMatrix {
    pub fn new(rows: usize, cols: usize, n: usize, entries: Vec<Term>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} terms for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        if entries.iter().any(|t| t.exponents.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "term with the wrong number of variables (expected {})",
                n
            )));
        }
        Ok(TermMatrix {
            rows,
            cols,
            n,
            entries,
            family: TermFamily::Other,
        })
    }

    fn zeros(rows: usize, cols: usize, n: usize, family: TermFamily) -> Self {
        TermMatrix {
            rows,
            cols,
            n,
            entries: vec![Term::zero(n); rows * cols],
            family,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> TermFamily {
        self.family
    }

    pub fn get(&self, i: usize, j: usize) -> &Term {
        &self.entries[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, t: Term) {
        self.entries[i * self.cols + j] = t;
    }

    /// Submatrix on the given indices; keeps the family tag.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> TermMatrix {
        let mut entries = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &i in row_idx {
            for &j in col_idx {
                entries.push(self.get(i, j).clone());
            }
        }
        TermMatrix {
            rows: row_idx.len(),
            cols: col_idx.len(),
            n: self.n,
            entries,
            family: self.family,
        }
    }

    pub fn transpose(&self) -> TermMatrix {
        let mut t = TermMatrix::zeros(self.cols, self.rows, self.n, self.family);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

/// `q × n` matrix with entry `(j, i) = a_i x^(v_j - e_i)`, coefficients kept in `Z`.
pub fn formal_jacobian(f: &MonomialSet) -> TermMatrix {
    let n = f.n();
    let mut t = TermMatrix::zeros(f.q(), n, n, TermFamily::FormalJacobian);
    for (j, m) in f.members().iter().enumerate() {
        for i in 0..n {
            let a = m.exponents()[i];
            if a > 0 {
                let mut e = m.exponents().to_vec();
                e[i] -= 1;
                t.set(j, i, Term::new(BigInt::from(a), e));
            }
        }
    }
    t
}

/// One linear syzygy `x_i e'_j - x_k e'_l`, i.e. `x_i x^(v_j) = x_k x^(v_l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearSyzygy {
    pub j: usize,
    pub l: usize,
    /// Variable multiplying member `j`.
    pub i: usize,
    /// Variable multiplying member `l`.
    pub k: usize,
}

/// Pairs `j < l` with `v_j - v_l = e_k - e_i`, in lexicographic order.
pub fn linear_syzygies(f: &MonomialSet) -> Vec<LinearSyzygy> {
    let members = f.members();
    let mut out = Vec::new();
    for j in 0..members.len() {
        for l in j + 1..members.len() {
            let (a, b) = (members[j].exponents(), members[l].exponents());
            let mut plus = None;
            let mut minus = None;
            let mut ok = true;
            for t in 0..a.len() {
                match a[t] as i64 - b[t] as i64 {
                    0 => {}
                    1 if plus.is_none() => plus = Some(t),
                    -1 if minus.is_none() => minus = Some(t),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if let (true, Some(k), Some(i)) = (ok, plus, minus) {
                out.push(LinearSyzygy { j, l, i, k });
            }
        }
    }
    out
}

/// The `q × r` linear syzygy matrix; column `(j, l)` holds `x_i` in row `j`
/// and `-x_k` in row `l`.
pub fn linear_syzygy_matrix(f: &MonomialSet) -> TermMatrix {
    let n = f.n();
    let syz = linear_syzygies(f);
    let mut t = TermMatrix::zeros(f.q(), syz.len(), n, TermFamily::LinearSyzygy);
    for (c, s) in syz.iter().enumerate() {
        t.set(s.j, c, Term::monomial(1, &Monomial::variable(n, s.i)));
        t.set(s.l, c, Term::monomial(-1, &Monomial::variable(n, s.k)));
    }
    t
}

/// The first Taylor syzygy matrix: one column per pair `j < l`, holding
/// `lcm / u_j` in row `j` and `-lcm / u_l` in row `l`.
pub fn taylor_matrix(f: &MonomialSet) -> TermMatrix {
    let q = f.q();
    let members = f.members();
    let mut t = TermMatrix::zeros(q, q * q.saturating_sub(1) / 2, f.n(), TermFamily::Taylor);
    let mut c = 0;
    for j in 0..q {
        for l in j + 1..q {
            let lcm = members[j].lcm(&members[l]);
            let top = lcm.checked_div(&members[j]).expect("lcm is a multiple");
            let bottom = lcm.checked_div(&members[l]).expect("lcm is a multiple");
            t.set(j, c, Term::monomial(1, &top));
            t.set(l, c, Term::monomial(-1, &bottom));
            c += 1;
        }
    }
    t
}

/// Sends every `x_i` to 1.
pub fn specialize_ones(t: &TermMatrix) -> IntMatrix {
    let data = t.entries.iter().map(|e| e.coeff.clone()).collect();
    IntMatrix::from_vec(t.rows, t.cols, data).expect("shape preserved")
}

/// Rank over the field of rational functions.
///
/// Only for submatrices of the formal Jacobian, linear syzygy or Taylor
/// matrices, whose rank equals that of their specialization at `x = 1`.
pub fn term_rank(t: &TermMatrix) -> Result<usize> {
    match t.family {
        TermFamily::Other => Err(Error::UnsupportedFamily),
        _ => Ok(exactla::rank(&specialize_ones(t))),
    }
}

/// Exact symbolic determinant of a square submatrix by permutation
/// expansion. Like terms are merged; zero terms are dropped; the result is
/// sorted by exponent vector.
pub fn term_minor(t: &TermMatrix, row_idx: &[usize], col_idx: &[usize]) -> Result<Vec<Term>> {
    if row_idx.len() != col_idx.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows and {} columns do not form a square minor",
            row_idx.len(),
            col_idx.len()
        )));
    }
    let s = row_idx.len();
    if s > MAX_SYMBOLIC_MINOR {
        return Err(Error::TooLarge {
            size: s,
            limit: MAX_SYMBOLIC_MINOR,
        });
    }
    if row_idx.iter().any(|&i| i >= t.rows) || col_idx.iter().any(|&j| j >= t.cols) {
        return Err(Error::DimensionMismatch("minor index out of range".into()));
    }
    let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    let mut perm: Vec<usize> = (0..s).collect();
    loop {
        let mut product = Term::new(BigInt::one(), vec![0; t.n]);
        for (a, &p) in perm.iter().enumerate() {
            product = product.mul(t.get(row_idx[a], col_idx[p]));
            if product.is_zero() {
                break;
            }
        }
        if !product.is_zero() {
            let signed = if is_even(&perm) {
                product
            } else {
                product.negated()
            };
            *acc.entry(signed.exponents).or_insert_with(BigInt::zero) += signed.coeff;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| Term::new(c, e))
        .collect())
}

/// Summary of every square minor up to a given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MinorAudit {
    pub max_size: usize,
    pub minors_checked: usize,
    /// Nonzero minors that are not a single term with coefficient ±1.
    pub violations: usize,
}

/// Checks that every minor of size `<= max_size` is zero or a single
/// `±x^a` term.
pub fn audit_unit_minors(t: &TermMatrix, max_size: usize) -> Result<MinorAudit> {
    use crate::combinatorics::combinations;
    let mut audit = MinorAudit {
        max_size,
        minors_checked: 0,
        violations: 0,
    };
    for s in 1..=max_size.min(t.rows).min(t.cols) {
        for rs in combinations(t.rows, s) {
            for cs in combinations(t.cols, s) {
                let minor = term_minor(t, &rs, &cs)?;
                audit.minors_checked += 1;
                let unit = match minor.as_slice() {
                    [] => true,
                    [single] => single.coeff.abs().is_one(),
                    _ => false,
                };
                if !unit {
                    audit.violations += 1;
                }
            }
        }
    }
    Ok(audit)
}

/// The `n × r` matrix `M` of difference vectors `v_j - v_l = e_k - e_i`, one
/// per linear syzygy in the same column order (so `M = A S`), and the number
/// of weakly connected components of the digraph on the variables with one
/// arc per column.
pub fn difference_matrix_and_digraph(f: &MonomialSet) -> (IntMatrix, usize) {
    let n = f.n();
    let syz = linear_syzygies(f);
    let mut m = IntMatrix::zeros(n, syz.len());
    let mut uf = UnionFind::new(n);
    for (c, s) in syz.iter().enumerate() {
        m.set(s.k, c, BigInt::one());
        m.set(s.i, c, -BigInt::one());
        uf.union(s.i, s.k);
    }
    (m, uf.components())
}
