mod common;

use std::collections::BTreeSet;

use monocrem::cli::parse_monomials;
use monocrem::cremona::{
    classify_squarefree_cremona, duality_check, inductive_step, is_cremona_set,
    is_doubly_stochastic,
};
use monocrem::decide::{
    apb, birational_via_torsion, decide_with, dpb, sufficient_rank_m, sufficient_syzygy,
    DecideOptions,
};
use monocrem::exactla::{canonical_rowcol_form, is_totally_unimodular, rank};
use monocrem::polymatroid::{has_linear_quotients_revlex, is_polymatroidal, veronese_type_set};
use monocrem::termmat::{
    audit_unit_minors, difference_matrix_and_digraph, formal_jacobian, linear_syzygy_matrix,
    specialize_ones, taylor_matrix, term_minor, term_rank,
};
use monocrem::{decide, MonomialSet};
use num_integer::Integer;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;

/// Sets built from per-monomial lists of `d` variable picks; repeats are dropped.
fn arb_set(max_n: usize, max_d: u32, max_q: usize) -> impl Strategy<Value = MonomialSet> {
    (1..=max_n, 1..=max_d).prop_flat_map(move |(n, d)| {
        prop::collection::vec(prop::collection::vec(0..n, d as usize), 1..=max_q).prop_map(
            move |picks| {
                let mut seen = BTreeSet::new();
                let members: Vec<Vec<u32>> = picks
                    .into_iter()
                    .map(|p| {
                        let mut e = vec![0u32; n];
                        for i in p {
                            e[i] += 1;
                        }
                        e
                    })
                    .filter(|e| seen.insert(e.clone()))
                    .collect();
                MonomialSet::new(n, members).unwrap()
            },
        )
    })
}

fn arb_normalized(max_n: usize, max_d: u32, max_q: usize) -> impl Strategy<Value = MonomialSet> {
    arb_set(max_n, max_d, max_q).prop_filter("normalized", |f| f.is_normalized() && f.q() >= 2)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for t in i + 1..k {
                    cur[t] = cur[t - 1] + 1;
                }
                break;
            }
        }
    }
}

proptest! {
    #[test]
    fn log_matrix_columns_sum_to_degree(f in arb_set(6, 5, 8)) {
        let a = f.log_matrix();
        for j in 0..a.cols() {
            let s: i64 = (0..a.rows()).map(|i| i64::try_from(a.get(i, j)).unwrap()).sum();
            prop_assert_eq!(s, f.d() as i64);
        }
    }

    #[test]
    fn normalize_is_idempotent(f in arb_set(6, 5, 8)) {
        if let Ok(g) = f.normalize() {
            prop_assert!(g.is_normalized());
            prop_assert_eq!(g.normalize().unwrap(), g);
        }
    }

    #[test]
    fn dual_complement_is_an_involution(f in arb_set(6, 3, 8)) {
        if f.is_squarefree() && (f.d() as usize) < f.n() {
            let dual = f.dual_complement().unwrap();
            prop_assert_eq!(dual.d() as usize, f.n() - f.d() as usize);
            prop_assert_eq!(dual.dual_complement().unwrap(), f);
        }
    }

    #[test]
    fn disconnected_sets_are_not_birational(f in arb_normalized(6, 4, 8)) {
        if f.d() >= 2 && !f.is_cohesive() {
            prop_assert!(!dpb(&f).unwrap().is_birational());
            prop_assert!(term_rank(&linear_syzygy_matrix(&f)).unwrap() + 2 <= f.q());
        }
    }

    #[test]
    fn m_equals_a_times_s(f in arb_set(6, 4, 8)) {
        let (m, c) = difference_matrix_and_digraph(&f);
        let s = specialize_ones(&linear_syzygy_matrix(&f));
        prop_assert_eq!(f.log_matrix().mul(&s).unwrap(), m.clone());
        prop_assert_eq!(rank(&m) + c, f.n());
    }

    #[test]
    fn linear_syzygies_are_taylor_columns(f in arb_set(5, 4, 6)) {
        let ls = linear_syzygy_matrix(&f).transpose().to_string_rows();
        let taylor: BTreeSet<Vec<String>> =
            taylor_matrix(&f).transpose().to_string_rows().into_iter().collect();
        for col in ls {
            prop_assert!(taylor.contains(&col));
        }
    }

    #[test]
    fn jacobian_minors_follow_log_minors(f in arb_set(5, 3, 5)) {
        let theta = formal_jacobian(&f);
        let a = log_rows(&f);
        for s in 1..=4.min(f.q()).min(f.n()) {
            for rows in subsets(f.q(), s) {
                for cols in subsets(f.n(), s) {
                    let minor = term_minor(&theta, &rows, &cols).unwrap();
                    let sub: Vec<Vec<i64>> =
                        cols.iter().map(|&i| rows.iter().map(|&j| a[i][j]).collect()).collect();
                    let det = cofactor_det(&sub);
                    prop_assert_eq!(minor.is_empty(), det == 0);
                    prop_assert!(minor.len() <= 1);
                    if let Some(t) = minor.first() {
                        prop_assert_eq!(t.coeff().clone(), det.into());
                    }
                }
            }
        }
    }

    #[test]
    fn taylor_minors_are_unit_terms(f in arb_set(5, 3, 5)) {
        let audit = audit_unit_minors(&taylor_matrix(&f), 4).unwrap();
        prop_assert_eq!(audit.violations, 0);
    }

    #[test]
    fn unimodularity_matches_jacobian_coefficients(f in arb_set(3, 3, 6)) {
        let theta = formal_jacobian(&f);
        let mut unit = true;
        for s in 1..=f.q().min(f.n()) {
            for rows in subsets(f.q(), s) {
                for cols in subsets(f.n(), s) {
                    if let Some(t) = term_minor(&theta, &rows, &cols).unwrap().first() {
                        unit &= t.coeff().magnitude() == &1u32.into();
                    }
                }
            }
        }
        prop_assert_eq!(is_totally_unimodular(&f.log_matrix()).unwrap(), unit);
    }

    #[test]
    fn criteria_agree(f in arb_normalized(6, 4, 8)) {
        let reference = dpb(&f).unwrap().is_birational();
        prop_assert_eq!(birational_via_torsion(&f).unwrap().is_birational(), reference);
        let full = MonomialSet::full_veronese(f.n(), f.d()).unwrap();
        prop_assert_eq!(apb(&f, &full).unwrap(), reference);
        if sufficient_rank_m(&f).is_some() || sufficient_syzygy(&f).is_some() {
            prop_assert!(reference);
        }
        let verified = decide_with(&f, &DecideOptions { verify: true }).unwrap();
        prop_assert_eq!(verified.is_birational(), reference);
    }

    #[test]
    fn full_syzygy_rank_gives_rank_m(f in arb_set(6, 4, 8)) {
        let s = specialize_ones(&linear_syzygy_matrix(&f));
        if rank(&s) + 1 == f.q() && rank(&f.log_matrix()) == f.n() {
            let (m, _) = difference_matrix_and_digraph(&f);
            prop_assert_eq!(rank(&m) + 1, f.n());
        }
    }

    #[test]
    fn quadrics_cohesive_iff_full_syzygy_rank(f in arb_normalized(7, 2, 10)) {
        if f.d() == 2 {
            let full = term_rank(&linear_syzygy_matrix(&f)).unwrap() + 1 == f.q();
            prop_assert_eq!(full, f.is_cohesive());
        }
    }

    #[test]
    fn polymatroidal_sets_have_linear_quotients(f in arb_set(4, 3, 8)) {
        if is_polymatroidal(&f) {
            prop_assert!(has_linear_quotients_revlex(&f));
            if rank(&f.log_matrix()) == f.n() {
                prop_assert!(decide(&f).unwrap().is_birational());
            }
        }
    }

    #[test]
    fn veronese_type_sets_are_polymatroidal(seed in any::<u64>()) {
        let (n, d, s) = random_veronese_type_params(&mut rng(seed));
        let f = veronese_type_set(n, d, &s).unwrap();
        prop_assert!(is_polymatroidal(&f));
        prop_assert!(has_linear_quotients_revlex(&f));
    }

    #[test]
    fn printed_sets_parse_back(f in arb_set(6, 5, 8)) {
        prop_assert_eq!(parse_monomials(&f.to_string(), Some(f.n())).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn duality_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=7);
        let d = r.gen_range(1..n);
        let f = random_squarefree_square(&mut r, n, d);
        let check = duality_check(&f).unwrap();
        prop_assert!(check.identity_holds);
        prop_assert_eq!(check.det_a, cofactor_det(&log_rows(&f)).to_string());
        let dual = f.dual_complement().unwrap();
        if f.is_normalized() && dual.is_normalized() {
            prop_assert_eq!(is_cremona_set(&f).unwrap(), is_cremona_set(&dual).unwrap());
        }
    }

    #[test]
    fn inductive_step_output_is_db(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=7);
        let d = r.gen_range(2..n);
        let Some(f) = random_db(&mut r, n, d) else { return Ok(()) };
        let mut assignment: Vec<usize> = (0..n).collect();
        for _ in 0..20 {
            assignment.shuffle(&mut r);
            if let Some(g) = inductive_step(&f, &assignment).unwrap() {
                prop_assert!(g.is_squarefree());
                prop_assert_eq!(g.d() as usize, d - 1);
                prop_assert!(is_doubly_stochastic(&g).unwrap());
            }
        }
    }
}

/// Circulant pattern with shifts `S` under random row and column permutations.
fn random_db(r: &mut impl Rng, n: usize, d: usize) -> Option<MonomialSet> {
    let shifts: Vec<usize> = (0..n)
        .collect::<Vec<_>>()
        .choose_multiple(r, d)
        .copied()
        .collect();
    let mut rows: Vec<usize> = (0..n).collect();
    rows.shuffle(r);
    let members = (0..n)
        .map(|j| {
            let mut e = vec![0u32; n];
            for &s in &shifts {
                e[rows[(j + s) % n]] = 1;
            }
            e
        })
        .collect();
    MonomialSet::new(n, members).ok()
}

/// Every DB squarefree Cremona set with `n <= 6` has `gcd(n, d) = 1`.
#[test]
fn db_cremona_obstruction_exhaustive() {
    for n in 2..=6usize {
        for d in 1..n {
            let pool: Vec<Vec<u32>> = subsets(n, d)
                .into_iter()
                .map(|s| {
                    let mut e = vec![0u32; n];
                    for i in s {
                        e[i] = 1;
                    }
                    e
                })
                .collect();
            for pick in subsets(pool.len(), n) {
                let f =
                    MonomialSet::new(n, pick.iter().map(|&j| pool[j].clone()).collect()).unwrap();
                if !is_doubly_stochastic(&f).unwrap() || !f.is_normalized() {
                    continue;
                }
                if is_cremona_set(&f).unwrap() {
                    assert_eq!(n.gcd(&d), 1, "{}", f);
                }
            }
        }
    }
}

#[test]
fn classification_commutes_with_duality() {
    let threes: BTreeSet<_> = classify_squarefree_cremona(5, 3)
        .unwrap()
        .into_iter()
        .map(|c| c.canonical_matrix)
        .collect();
    let twos = classify_squarefree_cremona(5, 2).unwrap();
    assert_eq!(twos.len(), threes.len());
    for c in twos {
        let dual = c.representative.dual_complement().unwrap();
        assert!(threes.contains(&canonical_rowcol_form(&dual.log_matrix()).unwrap()));
    }
}

#[test]
fn census_sets_are_cremona() {
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("data/census_5_3.json")).unwrap();
    for c in golden["classes"].as_array().unwrap() {
        let f = parse_monomials(c["set"].as_str().unwrap(), Some(5)).unwrap();
        assert!(is_cremona_set(&f).unwrap());
        assert_eq!(
            is_doubly_stochastic(&f).unwrap(),
            c["doubly_stochastic"] == true
        );
        let dual = f.dual_complement().unwrap();
        assert!(is_cremona_set(&dual).unwrap());
    }
}
