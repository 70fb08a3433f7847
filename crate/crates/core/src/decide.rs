//! Birationality criteria for `k[F] ⊂ k[x_d]` and the orchestrating decision
//! procedure.
//!
//! [`dpb`] (gcd of maximal minors of the log-matrix equals `d`) is the
//! reference; every other routine is a certificate or a cross-check and must
//! agree with it wherever it is conclusive.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{lattice_equal, rank, smith_normal_form};
use crate::matrix::IntMatrix;
use crate::monomial::{Monomial, MonomialSet, NormalizationRecord};
use crate::termmat::{difference_matrix_and_digraph, linear_syzygy_matrix, term_rank};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Birational,
    NotBirational,
}

impl Verdict {
    pub fn from_bool(birational: bool) -> Self {
        if birational {
            Verdict::Birational
        } else {
            Verdict::NotBirational
        }
    }

    pub fn is_birational(self) -> bool {
        self == Verdict::Birational
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Criterion {
    #[serde(rename = "DPB")]
    Dpb,
    Torsion,
    RankM,
    SyzygyRank,
    Degree2Graph,
    Cohesion,
}

/// Graph facts for a degree-2 set, read as a graph with loops on the variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphFacts {
    pub vertices: usize,
    /// Non-loop edges.
    pub edges: usize,
    pub loops: usize,
    pub connected: bool,
    /// Bipartiteness of the simple graph obtained by dropping loops.
    pub bipartite: bool,
}

/// Whatever a criterion computed; enough to replay its decision.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Certificates {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    /// `Δ_n(A)`, as a decimal string.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_a: Option<usize>,
    /// Invariant factors of the matrix of differences `v_1 - v_j`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_invariant_factors: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_rank: Option<usize>,
    /// Whether the difference lattice equals the lattice spanned by `e_1 - e_k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_lattice_is_root_lattice: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_ls: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_m: Option<usize>,
    /// Weak components of the linear-syzygy digraph.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cooccurrence_components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphFacts>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BirationalityReport {
    pub verdict: Verdict,
    pub criterion: Criterion,
    pub certificates: Certificates,
    /// Present when [`decide`] had to normalize its input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization: Option<NormalizationRecord>,
    /// Criteria re-run and found to agree in verification mode.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cross_checked: Vec<Criterion>,
}

impl BirationalityReport {
    fn new(verdict: Verdict, criterion: Criterion, certificates: Certificates) -> Self {
        BirationalityReport {
            verdict,
            criterion,
            certificates,
            normalization: None,
            cross_checked: Vec::new(),
        }
    }

    pub fn is_birational(&self) -> bool {
        self.verdict.is_birational()
    }
}

fn base_certificates(f: &MonomialSet) -> Certificates {
    Certificates {
        n: Some(f.n()),
        q: Some(f.q()),
        degree: Some(f.d()),
        ..Default::default()
    }
}

/// Birational iff `rank(A) = n` and `Δ_n(A) = d`.
pub fn dpb(f: &MonomialSet) -> Result<BirationalityReport> {
    f.require_normalized()?;
    let a = f.log_matrix();
    let snf = smith_normal_form(&a);
    let delta = snf.minor_gcd(f.n());
    let birational = snf.rank() == f.n() && delta == BigInt::from(f.d());
    let certificates = Certificates {
        delta_n: Some(delta.to_string()),
        rank_a: Some(snf.rank()),
        ..base_certificates(f)
    };
    Ok(BirationalityReport::new(
        Verdict::from_bool(birational),
        Criterion::Dpb,
        certificates,
    ))
}

/// For `F ⊂ G`: `k[F] ⊂ k[G]` is birational iff the log-matrices span the
/// same lattice.
pub fn apb(f: &MonomialSet, g: &MonomialSet) -> Result<bool> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "sets in {} and {} variables",
            f.n(),
            g.n()
        )));
    }
    if !f.members().iter().all(|m| g.contains(m)) {
        return Err(Error::NotSubset);
    }
    lattice_equal(&f.log_matrix(), &g.log_matrix())
}

/// The `n × (q-1)` matrix with columns `v_1 - v_j`, `j = 2..q`.
pub fn difference_vectors_matrix(f: &MonomialSet) -> IntMatrix {
    let members = f.members();
    let first = members[0].exponents();
    let cols: Vec<Vec<i64>> = members[1..]
        .iter()
        .map(|m| {
            first
                .iter()
                .zip(m.exponents())
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect()
        })
        .collect();
    IntMatrix::from_columns(f.n(), &cols)
}

/// The `n × (n-1)` matrix with columns `e_1 - e_k`, `k = 2..n`.
fn root_lattice_matrix(n: usize) -> IntMatrix {
    let cols: Vec<Vec<i64>> = (1..n)
        .map(|k| {
            let mut c = vec![0; n];
            c[0] = 1;
            c[k] = -1;
            c
        })
        .collect();
    IntMatrix::from_columns(n, &cols)
}

/// Birational iff `Z^n / Z{v_1 - v_j}` is free of rank 1, read off the Smith
/// form of the difference matrix.
pub fn birational_via_torsion(f: &MonomialSet) -> Result<BirationalityReport> {
    f.require_normalized()?;
    if f.q() < 2 {
        return Err(Error::TooFewMonomials);
    }
    let n = f.n();
    let diff = difference_vectors_matrix(f);
    let snf = smith_normal_form(&diff);
    let birational = snf.rank() + 1 == n && snf.is_torsion_free();
    let same_lattice = lattice_equal(&diff, &root_lattice_matrix(n))?;
    let certificates = Certificates {
        difference_invariant_factors: Some(
            snf.invariant_factors()
                .iter()
                .map(|x| x.to_string())
                .collect(),
        ),
        difference_rank: Some(snf.rank()),
        difference_lattice_is_root_lattice: Some(same_lattice),
        ..base_certificates(f)
    };
    Ok(BirationalityReport::new(
        Verdict::from_bool(birational),
        Criterion::Torsion,
        certificates,
    ))
}

/// Birational when the difference matrix `M` has rank `n - 1`; `None` is
/// inconclusive.
pub fn sufficient_rank_m(f: &MonomialSet) -> Option<BirationalityReport> {
    let (m, components) = difference_matrix_and_digraph(f);
    let rank_m = rank(&m);
    if f.n() >= 1 && rank_m + 1 == f.n() {
        let certificates = Certificates {
            rank_m: Some(rank_m),
            components: Some(components),
            ..base_certificates(f)
        };
        Some(BirationalityReport::new(
            Verdict::Birational,
            Criterion::RankM,
            certificates,
        ))
    } else {
        None
    }
}

/// Birational when `rank(A) = n` and the linear syzygy matrix has rank
/// `q - 1`; `None` is inconclusive.
pub fn sufficient_syzygy(f: &MonomialSet) -> Option<BirationalityReport> {
    let rank_a = rank(&f.log_matrix());
    if rank_a != f.n() {
        return None;
    }
    let rank_ls = term_rank(&linear_syzygy_matrix(f)).expect("linear syzygy family");
    if rank_ls + 1 != f.q() {
        return None;
    }
    let certificates = Certificates {
        rank_a: Some(rank_a),
        rank_ls: Some(rank_ls),
        ..base_certificates(f)
    };
    Some(BirationalityReport::new(
        Verdict::Birational,
        Criterion::SyzygyRank,
        certificates,
    ))
}

fn require_degree(f: &MonomialSet, d: u32) -> Result<()> {
    if f.d() != d {
        return Err(Error::WrongDegree {
            expected: d,
            found: f.d(),
        });
    }
    Ok(())
}

/// Graph with loops of a degree-2 set: an edge per `x_i x_k`, a loop per `x_i^2`.
pub fn degree2_graph(f: &MonomialSet) -> Result<GraphFacts> {
    require_degree(f, 2)?;
    let n = f.n();
    let mut adjacency = vec![Vec::new(); n];
    let mut uf = UnionFind::new(n);
    let mut loops = 0;
    let mut edges = 0;
    for m in f.members() {
        let support: Vec<usize> = m.support().collect();
        match support.as_slice() {
            [_] => loops += 1,
            [a, b] => {
                edges += 1;
                adjacency[*a].push(*b);
                adjacency[*b].push(*a);
                uf.union(*a, *b);
            }
            _ => unreachable!("degree-2 monomials have one or two variables"),
        }
    }
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut bipartite = true;
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].expect("colored on push");
            for &w in &adjacency[v] {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => bipartite = false,
                    Some(_) => {}
                }
            }
        }
    }
    Ok(GraphFacts {
        vertices: n,
        edges,
        loops,
        connected: uf.components() <= 1,
        bipartite,
    })
}

/// Degree 2: birational iff the graph is connected and either non-bipartite
/// or carries a loop.
pub fn degree2_decide(f: &MonomialSet) -> Result<BirationalityReport> {
    require_degree(f, 2)?;
    f.require_normalized()?;
    let facts = degree2_graph(f)?;
    let birational = facts.connected && (!facts.bipartite || facts.loops > 0);
    let certificates = Certificates {
        graph: Some(facts),
        ..base_certificates(f)
    };
    Ok(BirationalityReport::new(
        Verdict::from_bool(birational),
        Criterion::Degree2Graph,
        certificates,
    ))
}

/// Contracts the edge `x_a x_b` of a degree-2 set to a loop: the
/// larger-indexed variable is replaced by the smaller one and then dropped.
pub fn contract_to_loop(f: &MonomialSet, edge: (usize, usize)) -> Result<MonomialSet> {
    require_degree(f, 2)?;
    let (a, b) = edge;
    let (keep, gone) = (a.min(b), a.max(b));
    if a == b || gone >= f.n() {
        return Err(Error::NotAnEdge(a + 1, b + 1));
    }
    let mut e = vec![0; f.n()];
    e[keep] = 1;
    e[gone] = 1;
    if !f.contains(&Monomial::new(e)) {
        return Err(Error::NotAnEdge(a + 1, b + 1));
    }
    let members: Vec<Monomial> = f
        .members()
        .iter()
        .map(|m| {
            let mut v = m.exponents().to_vec();
            v[keep] += v[gone];
            v.remove(gone);
            Monomial::new(v)
        })
        .collect();
    MonomialSet::from_monomials(f.n() - 1, members).map_err(|e| match e {
        Error::DuplicateMonomial { first, second } => Error::CollapseCollision { first, second },
        other => other,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecideOptions {
    /// Re-run the torsion and DPB criteria and fail on any disagreement.
    pub verify: bool,
}

pub fn decide(f: &MonomialSet) -> Result<BirationalityReport> {
    decide_with(f, &DecideOptions::default())
}

/// Normalizes, rejects non-cohesive sets of degree at least 2 outright, uses
/// the graph criterion in degree 2 and DPB otherwise.
pub fn decide_with(f: &MonomialSet, options: &DecideOptions) -> Result<BirationalityReport> {
    if f.q() == 1 {
        return Ok(single_monomial(f));
    }
    let (g, record) = f.normalize_with_record()?;
    let normalization = (!record.is_trivial()).then_some(record);

    let components = g.cooccurrence_components();
    // in degree 1 every monomial is a single variable, so co-occurrence says nothing
    let mut report = if g.d() >= 2 && components > 1 {
        let certificates = Certificates {
            cooccurrence_components: Some(components),
            ..base_certificates(&g)
        };
        BirationalityReport::new(Verdict::NotBirational, Criterion::Cohesion, certificates)
    } else if g.d() == 2 {
        degree2_decide(&g)?
    } else {
        dpb(&g)?
    };

    if options.verify {
        let mut others = vec![dpb(&g)?];
        if g.q() >= 2 {
            others.push(birational_via_torsion(&g)?);
        }
        for other in &others {
            if other.verdict != report.verdict {
                return Err(Error::CriterionDisagreement(format!(
                    "{:?} says {:?} but {:?} says {:?} for {}",
                    report.criterion, report.verdict, other.criterion, other.verdict, g
                )));
            }
        }
        if let Some(torsion) = others.get(1) {
            let root = torsion.certificates.difference_lattice_is_root_lattice;
            if root != Some(torsion.is_birational()) {
                return Err(Error::CriterionDisagreement(format!(
                    "difference lattice test disagrees with the torsion test for {}",
                    g
                )));
            }
        }
        report.cross_checked = others.iter().map(|r| r.criterion).collect();
    }
    report.normalization = normalization;
    Ok(report)
}

/// A single monomial normalizes to degree 0, so it is decided on the raw
/// `n × 1` log-matrix: birational iff `n = 1`.
fn single_monomial(f: &MonomialSet) -> BirationalityReport {
    let delta = if f.n() == 1 {
        BigInt::from(f.d())
    } else {
        BigInt::zero()
    };
    let certificates = Certificates {
        delta_n: Some(delta.to_string()),
        rank_a: Some(1),
        ..base_certificates(f)
    };
    BirationalityReport::new(Verdict::from_bool(f.n() == 1), Criterion::Dpb, certificates)
}

/// `Δ_n` as a `BigInt`, for callers that want the number itself.
pub fn maximal_minor_gcd(f: &MonomialSet) -> BigInt {
    let snf = smith_normal_form(&f.log_matrix());
    if snf.rank() < f.n() {
        BigInt::zero()
    } else {
        snf.minor_gcd(f.n())
    }
}
