//! Cremona sets: `n` gcd-free monomials in `n` variables defining a
//! birational self-map, i.e. square log-matrices with `|det A| = d`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::next_combination;
use crate::decide::{degree2_graph, dpb};
use crate::error::{Error, Result};
use crate::exactla::{
    canonical_entries, canonical_rowcol_form, fast_determinant, small_determinant,
};
use crate::matrix::IntMatrix;
use crate::monomial::{bounded_compositions, Monomial, MonomialSet};

/// Largest `n` accepted by the classifiers.
pub const MAX_CLASSIFY_N: usize = 7;

pub fn is_cremona_set(f: &MonomialSet) -> Result<bool> {
    f.require_normalized()?;
    if f.q() != f.n() {
        return Ok(false);
    }
    Ok(dpb(f)?.is_birational())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Degree2Shape {
    OddUniqueCycle,
    TreeWithLoop,
    NotCremona,
}

/// Shape of the graph with loops of a square, cohesive, normalized
/// degree-2 set. It is Cremona iff the graph is a unicyclic graph with an odd
/// cycle or a tree with exactly one loop.
pub fn degree2_cremona_shape(f: &MonomialSet) -> Result<Degree2Shape> {
    if f.d() != 2 {
        return Err(Error::Precondition(format!("degree is {}, not 2", f.d())));
    }
    if f.q() != f.n() {
        return Err(Error::Precondition(format!(
            "{} monomials in {} variables",
            f.q(),
            f.n()
        )));
    }
    if !f.is_normalized() {
        return Err(Error::Precondition("set is not normalized".into()));
    }
    if !f.is_cohesive() {
        return Err(Error::Precondition("set is not cohesive".into()));
    }
    let g = degree2_graph(f)?;
    // connected with n vertices and n edges (loops included): one cycle or one loop
    Ok(match g.loops {
        0 if !g.bipartite => Degree2Shape::OddUniqueCycle,
        1 => Degree2Shape::TreeWithLoop,
        _ => Degree2Shape::NotCremona,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub det_a: String,
    pub det_a_hat: String,
    pub identity_holds: bool,
}

/// Evaluates `(n - d) det(A) = (-1)^(n-1) d det(1 - A)`.
pub fn duality_check(f: &MonomialSet) -> Result<DualityCheck> {
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let (n, q, d) = (f.n(), f.q(), f.d() as usize);
    if q != n {
        return Err(Error::NotSquare { n, q });
    }
    if d >= n {
        return Err(Error::InvalidParameter(format!(
            "duality needs 1 <= d <= n - 1, got d = {} and n = {}",
            d, n
        )));
    }
    let a = f.log_matrix();
    let hat_entries = a.entries().iter().map(|x| BigInt::from(1) - x).collect();
    let a_hat = IntMatrix::from_vec(n, n, hat_entries)?;
    let det_a = fast_determinant(&a)?;
    let det_a_hat = fast_determinant(&a_hat)?;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let identity_holds = BigInt::from(n - d) * &det_a == BigInt::from(sign * d as i64) * &det_a_hat;
    Ok(DualityCheck {
        det_a: det_a.to_string(),
        det_a_hat: det_a_hat.to_string(),
        identity_holds,
    })
}

/// Every row of the square log-matrix sums to `d`.
pub fn is_doubly_stochastic(f: &MonomialSet) -> Result<bool> {
    if f.q() != f.n() {
        return Err(Error::NotSquare { n: f.n(), q: f.q() });
    }
    Ok(f.variable_degrees().iter().all(|&s| s == f.d() as u64))
}

/// `false` certifies that no DB Cremona set exists for `(n, d)`.
pub fn db_obstruction(n: usize, d: usize) -> bool {
    n.gcd(&d) == 1
}

/// Divides member `t` by `x_{assignment[t]}` (0-based variables). Absent
/// when some division fails or two quotients coincide, or when `d = 1`.
pub fn inductive_step(f: &MonomialSet, assignment: &[usize]) -> Result<Option<MonomialSet>> {
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if !is_doubly_stochastic(f)? {
        return Err(Error::NotDoublyStochastic);
    }
    let n = f.n();
    let mut seen = vec![false; n];
    if assignment.len() != n {
        return Err(Error::NotPermutation);
    }
    for &i in assignment {
        if i >= n || seen[i] {
            return Err(Error::NotPermutation);
        }
        seen[i] = true;
    }
    if f.d() == 1 {
        return Ok(None);
    }
    let mut quotients = Vec::with_capacity(n);
    for (m, &i) in f.members().iter().zip(assignment) {
        match m.checked_div(&Monomial::variable(n, i)) {
            Some(u) => quotients.push(u),
            None => return Ok(None),
        }
    }
    match MonomialSet::from_monomials(n, quotients) {
        Ok(g) => Ok(Some(g)),
        Err(Error::DuplicateMonomial { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ClassTag {
    #[serde(rename = "DB")]
    Db,
    /// The dual complement is again a normalized set.
    SquarefreeComplementValid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CremonaClass {
    pub canonical_matrix: IntMatrix,
    pub representative: MonomialSet,
    pub n: usize,
    pub d: u32,
    pub tags: BTreeSet<ClassTag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Skip degrees with `gcd(n, d) > 1` in the DB classification.
    pub prune_db_obstruction: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            jobs: None,
            prune_db_obstruction: true,
        }
    }
}

/// Squarefree Cremona sets of degree `d` in `n` variables up to permuting
/// variables and monomials, sorted by canonical matrix.
pub fn classify_squarefree_cremona(n: usize, d: usize) -> Result<Vec<CremonaClass>> {
    classify_squarefree_cremona_with(n, d, &ClassifyOptions::default())
}

pub fn classify_squarefree_cremona_with(
    n: usize,
    d: usize,
    options: &ClassifyOptions,
) -> Result<Vec<CremonaClass>> {
    check_n(n)?;
    if d < 2 || d >= n {
        return Err(Error::InvalidParameter(format!(
            "classification needs 2 <= d <= n - 1, got d = {} and n = {}",
            d, n
        )));
    }
    run_in_pool(options.jobs, || enumerate(n, d, false))
}

/// DB squarefree Cremona sets for every degree `2 <= d <= n - 1`.
pub fn classify_db_squarefree_cremona(n: usize) -> Result<Vec<CremonaClass>> {
    classify_db_squarefree_cremona_with(n, &ClassifyOptions::default())
}

pub fn classify_db_squarefree_cremona_with(
    n: usize,
    options: &ClassifyOptions,
) -> Result<Vec<CremonaClass>> {
    check_n(n)?;
    run_in_pool(options.jobs, || {
        let mut out = Vec::new();
        for d in 2..n {
            if options.prune_db_obstruction && !db_obstruction(n, d) {
                continue;
            }
            out.extend(enumerate(n, d, true)?);
        }
        Ok(out)
    })
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_CLASSIFY_N {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_CLASSIFY_N,
        });
    }
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "classification needs n >= 3, got {}",
            n
        )));
    }
    Ok(())
}

fn run_in_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => work(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(work),
    }
}

/// Canonical entries mapped to the lexicographically least subset reaching them.
type Found = BTreeMap<Vec<i64>, Vec<usize>>;

fn enumerate(n: usize, d: usize, db_only: bool) -> Result<Vec<CremonaClass>> {
    let pool: Vec<Vec<u32>> = bounded_compositions(d as u32, &vec![1; n]);
    let m = pool.len();
    if m < n {
        return Ok(Vec::new());
    }
    // row-major n × m matrix of all candidate columns
    let found: Found = (0..=m - n)
        .into_par_iter()
        .map(|first| search_from(first, n, d, db_only, &pool))
        .reduce(Found::new, merge);

    let mut classes = Vec::with_capacity(found.len());
    for (canonical, subset) in found {
        let representative =
            MonomialSet::new(n, subset.iter().map(|&j| pool[j].clone()).collect())?;
        let canonical_matrix = canonical_rowcol_form(&representative.log_matrix())?;
        debug_assert_eq!(
            canonical_matrix.to_i64_entries().as_deref(),
            Some(&canonical[..])
        );
        let mut tags = BTreeSet::new();
        if is_doubly_stochastic(&representative)? {
            tags.insert(ClassTag::Db);
        }
        if representative
            .dual_complement()
            .is_ok_and(|g| g.is_normalized())
        {
            tags.insert(ClassTag::SquarefreeComplementValid);
        }
        classes.push(CremonaClass {
            canonical_matrix,
            representative,
            n,
            d: d as u32,
            tags,
        });
    }
    Ok(classes)
}

fn merge(mut a: Found, b: Found) -> Found {
    for (k, v) in b {
        match a.get(&k) {
            Some(existing) if *existing <= v => {}
            _ => {
                a.insert(k, v);
            }
        }
    }
    a
}

/// All `n`-subsets of `pool` whose smallest index is `first`.
fn search_from(first: usize, n: usize, d: usize, db_only: bool, pool: &[Vec<u32>]) -> Found {
    let m = pool.len();
    let mut found = Found::new();
    let mut rest: Vec<usize> = (first + 1..first + n).collect();
    if rest.last().is_some_and(|&x| x >= m) {
        return found;
    }
    let mut subset = vec![0; n];
    let mut data = vec![0i64; n * n];
    loop {
        subset[0] = first;
        subset[1..].copy_from_slice(&rest);
        if accept(&subset, n, d, db_only, pool, &mut data) {
            let canonical = canonical_entries(&data, n, n);
            found.entry(canonical).or_insert_with(|| subset.clone());
        }
        if !advance(&mut rest, first + 1, m) {
            break;
        }
    }
    found
}

/// Next combination of values in `offset..m`.
fn advance(rest: &mut [usize], offset: usize, m: usize) -> bool {
    for x in rest.iter_mut() {
        *x -= offset;
    }
    let more = next_combination(rest, m - offset);
    for x in rest.iter_mut() {
        *x += offset;
    }
    more
}

/// Fills `data` with the log-matrix and applies the cheap filters before the
/// determinant.
fn accept(
    subset: &[usize],
    n: usize,
    d: usize,
    db_only: bool,
    pool: &[Vec<u32>],
    data: &mut [i64],
) -> bool {
    for (j, &s) in subset.iter().enumerate() {
        for i in 0..n {
            data[i * n + j] = pool[s][i] as i64;
        }
    }
    for i in 0..n {
        let row_sum: i64 = data[i * n..(i + 1) * n].iter().sum();
        // conic, common factor, or not doubly stochastic
        if row_sum == 0 || row_sum == n as i64 || (db_only && row_sum != d as i64) {
            return false;
        }
    }
    let det = small_determinant(data, n).expect("0/1 matrices of size <= 7 fit in i128");
    det.abs() == d as i128
}

/// `|det(A)|` of a square log-matrix as a `BigInt`, for reporting.
pub fn abs_determinant(f: &MonomialSet) -> Result<BigInt> {
    Ok(fast_determinant(&f.log_matrix())?.abs())
}
