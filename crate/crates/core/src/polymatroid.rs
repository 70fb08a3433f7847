//! Polymatroidal sets, linear quotients, and Veronese-type sets.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monomial::{bounded_compositions, Monomial, MonomialSet};

/// Exchange property: if `u_i > v_i` there is `j` with `u_j < v_j` and
/// `x_j u / x_i` in the set.
pub fn is_polymatroidal(f: &MonomialSet) -> bool {
    let members: HashSet<&[u32]> = f.members().iter().map(Monomial::exponents).collect();
    let mut w = vec![0u32; f.n()];
    for u in f.members().iter().map(Monomial::exponents) {
        for v in f.members().iter().map(Monomial::exponents) {
            for i in 0..f.n() {
                if u[i] <= v[i] {
                    continue;
                }
                let exchanged = (0..f.n()).any(|j| {
                    if u[j] >= v[j] {
                        return false;
                    }
                    w.copy_from_slice(u);
                    w[i] -= 1;
                    w[j] += 1;
                    members.contains(w.as_slice())
                });
                if !exchanged {
                    return false;
                }
            }
        }
    }
    true
}

/// Members in reverse lexicographic order: exponent vectors compared from the
/// last variable backwards, a larger last entry sorting later.
pub fn revlex_order(f: &MonomialSet) -> Vec<Monomial> {
    let mut members = f.members().to_vec();
    members.sort_by(|a, b| a.exponents().iter().rev().cmp(b.exponents().iter().rev()));
    members
}

/// Whether every colon ideal `(u_1, ..., u_{i-1}) : u_i` along
/// [`revlex_order`] is generated by variables.
pub fn has_linear_quotients_revlex(f: &MonomialSet) -> bool {
    let ordered = revlex_order(f);
    for (i, u) in ordered.iter().enumerate() {
        let generators: Vec<Monomial> = ordered[..i]
            .iter()
            .map(|v| v.lcm(u).checked_div(u).expect("u divides lcm"))
            .collect();
        let minimal = generators
            .iter()
            .filter(|g| !generators.iter().any(|h| h != *g && h.divides(g)));
        for g in minimal {
            if g.degree() != 1 {
                return false;
            }
        }
    }
    true
}

/// All monomials of degree `d` with `a_i <= s_i`, lexicographically descending.
pub fn veronese_type_set(n: usize, d: u32, s: &[u32]) -> Result<MonomialSet> {
    if s.len() != n {
        return Err(Error::LengthMismatch {
            index: 0,
            expected: n,
            found: s.len(),
        });
    }
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if s.iter().map(|&x| x as u64).sum::<u64>() < d as u64 {
        return Err(Error::EmptyResult);
    }
    let members = bounded_compositions(d, s)
        .into_iter()
        .map(Monomial::new)
        .collect();
    MonomialSet::from_monomials(n, members)
}
