//! Monomials, validated same-degree monomial sets, and their log-matrices.
//!
//! Variables are indexed from 0 in the API and printed as `x1..xn`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::union_find::UnionFind;

/// A monomial `x^a`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The variable `x_i` in `n` variables.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial { exponents: e }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    /// Sum of exponents, or `None` on overflow.
    pub fn checked_degree(&self) -> Option<u32> {
        self.exponents
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
    }

    pub fn degree(&self) -> u32 {
        self.checked_degree()
            .expect("monomial degree overflows u32")
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial::new)
    }

    pub fn to_bigint_vec(&self) -> Vec<BigInt> {
        self.exponents.iter().map(|&e| BigInt::from(e)).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Distinct monomials of a common degree `d >= 1` in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialSet {
    n: usize,
    d: u32,
    members: Vec<Monomial>,
}

/// What [`MonomialSet::normalize_with_record`] removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationRecord {
    pub original_n: usize,
    pub original_degree: u32,
    /// Common factor divided out, in the original variables.
    pub common_factor: String,
    /// Original (0-based) indices of the surviving variables, in order.
    pub kept_variables: Vec<usize>,
}

impl NormalizationRecord {
    pub fn is_trivial(&self) -> bool {
        self.common_factor == "1" && self.kept_variables.len() == self.original_n
    }
}

impl MonomialSet {
    /// Validates a list of exponent vectors. The degree is taken from the first
    /// vector; conic or non-coprime sets are accepted (see [`Self::is_normalized`]).
    pub fn new(n: usize, vectors: Vec<Vec<u32>>) -> Result<Self> {
        Self::from_monomials(n, vectors.into_iter().map(Monomial::new).collect())
    }

    pub fn from_monomials(n: usize, members: Vec<Monomial>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        for (index, m) in members.iter().enumerate() {
            if m.nvars() != n {
                return Err(Error::LengthMismatch {
                    index,
                    expected: n,
                    found: m.nvars(),
                });
            }
        }
        let d = members[0].checked_degree().ok_or(Error::ExponentOverflow)?;
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        for (index, m) in members.iter().enumerate().skip(1) {
            let found = m.checked_degree().ok_or(Error::ExponentOverflow)?;
            if found != d {
                return Err(Error::MixedDegrees {
                    index,
                    expected: d,
                    found,
                });
            }
        }
        let mut seen: HashMap<&Monomial, usize> = HashMap::with_capacity(members.len());
        for (index, m) in members.iter().enumerate() {
            if let Some(&first) = seen.get(m) {
                return Err(Error::DuplicateMonomial {
                    first,
                    second: index,
                });
            }
            seen.insert(m, index);
        }
        Ok(MonomialSet { n, d, members })
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Common degree.
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of monomials.
    pub fn q(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.contains(m)
    }

    /// Some variable divides no member.
    pub fn is_conic(&self) -> bool {
        (0..self.n).any(|i| self.members.iter().all(|m| m.exponents[i] == 0))
    }

    /// The members share a non-trivial monomial factor.
    pub fn has_common_factor(&self) -> bool {
        (0..self.n).any(|i| self.members.iter().all(|m| m.exponents[i] > 0))
    }

    pub fn is_normalized(&self) -> bool {
        !self.is_conic() && !self.has_common_factor()
    }

    pub fn is_squarefree(&self) -> bool {
        self.members.iter().all(Monomial::is_squarefree)
    }

    /// Same members regardless of order.
    pub fn same_members(&self, other: &MonomialSet) -> bool {
        if self.n != other.n || self.q() != other.q() {
            return false;
        }
        let mut a = self.members.clone();
        let mut b = other.members.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// The `n × q` matrix whose columns are the exponent vectors.
    pub fn log_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<u32>> = self.members.iter().map(|m| m.exponents.clone()).collect();
        IntMatrix::from_columns(self.n, &cols)
    }

    /// The log-matrix with an extra row of ones.
    pub fn extended_log_matrix(&self) -> IntMatrix {
        self.log_matrix().with_ones_row()
    }

    /// Row sums of the log-matrix (how often each variable occurs).
    pub fn variable_degrees(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| self.members.iter().map(|m| m.exponents[i] as u64).sum())
            .collect()
    }

    pub fn normalize(&self) -> Result<MonomialSet> {
        self.normalize_with_record().map(|(set, _)| set)
    }

    /// Divides out the common factor and drops unused variables, keeping the
    /// surviving variables in their original order.
    pub fn normalize_with_record(&self) -> Result<(MonomialSet, NormalizationRecord)> {
        let gcd: Vec<u32> = (0..self.n)
            .map(|i| {
                self.members
                    .iter()
                    .map(|m| m.exponents[i])
                    .min()
                    .unwrap_or(0)
            })
            .collect();
        let gcd_degree: u32 = gcd.iter().sum();
        if gcd_degree == self.d {
            return Err(Error::DegenerateResult);
        }
        let reduced: Vec<Vec<u32>> = self
            .members
            .iter()
            .map(|m| m.exponents.iter().zip(&gcd).map(|(a, g)| a - g).collect())
            .collect();
        let kept: Vec<usize> = (0..self.n)
            .filter(|&i| reduced.iter().any(|v| v[i] > 0))
            .collect();
        let members = reduced
            .into_iter()
            .map(|v| Monomial::new(kept.iter().map(|&i| v[i]).collect()))
            .collect();
        let set = MonomialSet {
            n: kept.len(),
            d: self.d - gcd_degree,
            members,
        };
        let record = NormalizationRecord {
            original_n: self.n,
            original_degree: self.d,
            common_factor: Monomial::new(gcd).to_string(),
            kept_variables: kept,
        };
        Ok((set, record))
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized)
        }
    }

    /// The squarefree set with log-matrix `1 - A`, of degree `n - d`.
    pub fn dual_complement(&self) -> Result<MonomialSet> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let members = self
            .members
            .iter()
            .map(|m| Monomial::new(m.exponents.iter().map(|&a| 1 - a).collect()))
            .collect();
        MonomialSet::from_monomials(self.n, members)
    }

    /// Whether the variable co-occurrence graph is connected.
    ///
    /// For a normalized set, `false` means the set splits into two parts on
    /// disjoint variables, which rules out birationality.
    pub fn is_cohesive(&self) -> bool {
        self.cooccurrence_components() <= 1
    }

    pub(crate) fn cooccurrence_components(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for m in &self.members {
            let mut support = m.support();
            if let Some(first) = support.next() {
                for i in support {
                    uf.union(first, i);
                }
            }
        }
        uf.components()
    }

    /// The `n` products of `n - 1` distinct variables; member `t` omits
    /// variable `n - 1 - t`.
    pub fn steiner(n: usize) -> Result<MonomialSet> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "Steiner set needs n >= 2, got {}",
                n
            )));
        }
        let members = (0..n)
            .map(|t| {
                let mut e = vec![1; n];
                e[n - 1 - t] = 0;
                Monomial::new(e)
            })
            .collect();
        MonomialSet::from_monomials(n, members)
    }

    /// All monomials of degree `d` in `n` variables, lexicographically descending.
    pub fn full_veronese(n: usize, d: u32) -> Result<MonomialSet> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidParameter(
                "Veronese set needs n >= 1 and d >= 1".into(),
            ));
        }
        let members = bounded_compositions(d, &vec![d; n])
            .into_iter()
            .map(Monomial::new)
            .collect();
        MonomialSet::from_monomials(n, members)
    }
}

/// `{"n", "degree", "monomials"}` with monomials printed as text.
impl Serialize for MonomialSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("MonomialSet", 3)?;
        st.serialize_field("degree", &self.d)?;
        let texts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        st.serialize_field("monomials", &texts)?;
        st.serialize_field("n", &self.n)?;
        st.end()
    }
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", m)?;
        }
        Ok(())
    }
}

/// All vectors `a` with `sum(a) = total` and `0 <= a_i <= bounds[i]`,
/// in lexicographically descending order.
pub(crate) fn bounded_compositions(total: u32, bounds: &[u32]) -> Vec<Vec<u32>> {
    fn rec(
        i: usize,
        remaining: u32,
        bounds: &[u32],
        suffix_cap: &[u64],
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == bounds.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let hi = bounds[i].min(remaining);
        for a in (0..=hi).rev() {
            if suffix_cap[i + 1] < (remaining - a) as u64 {
                break;
            }
            current.push(a);
            rec(i + 1, remaining - a, bounds, suffix_cap, current, out);
            current.pop();
        }
    }
    let mut suffix_cap = vec![0u64; bounds.len() + 1];
    for i in (0..bounds.len()).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + bounds[i] as u64;
    }
    let mut out = Vec::new();
    rec(0, total, bounds, &suffix_cap, &mut Vec::new(), &mut out);
    out
}
