#![allow(dead_code)]

use std::collections::BTreeSet;

use monocrem::MonomialSet;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `q` distinct random monomials of degree `d`, or `None` if the draw keeps
/// colliding.
pub fn random_set(rng: &mut impl Rng, n: usize, d: u32, q: usize) -> Option<MonomialSet> {
    let mut seen = BTreeSet::new();
    let mut tries = 0;
    while seen.len() < q {
        tries += 1;
        if tries > 50 * q {
            return None;
        }
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        seen.insert(e);
    }
    let mut members: Vec<Vec<u32>> = seen.into_iter().collect();
    members.shuffle(rng);
    MonomialSet::new(n, members).ok()
}

/// Normalized sets with `2 <= n <= 6`, `1 <= d <= 4`, `2 <= q <= 8`.
pub fn normalized_corpus(seed: u64, count: usize) -> Vec<MonomialSet> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = r.gen_range(2..=6);
        let d = r.gen_range(1..=4);
        let q = r.gen_range(2..=8);
        if let Some(f) = random_set(&mut r, n, d, q) {
            if f.is_normalized() {
                out.push(f);
            }
        }
    }
    out
}

/// Any valid sets with `1 <= n <= 6`, `1 <= d <= 4`, `1 <= q <= 8`.
pub fn general_corpus(seed: u64, count: usize) -> Vec<MonomialSet> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = r.gen_range(1..=6);
        let d = r.gen_range(1..=4);
        let q = r.gen_range(1..=8);
        if let Some(f) = random_set(&mut r, n, d, q) {
            out.push(f);
        }
    }
    out
}

/// `n` distinct random squarefree monomials of degree `d` in `n` variables.
pub fn random_squarefree_square(rng: &mut impl Rng, n: usize, d: usize) -> MonomialSet {
    let mut seen = BTreeSet::new();
    let vars: Vec<usize> = (0..n).collect();
    while seen.len() < n {
        let mut e = vec![0u32; n];
        for &i in vars.choose_multiple(rng, d) {
            e[i] = 1;
        }
        seen.insert(e);
    }
    let mut members: Vec<Vec<u32>> = seen.into_iter().collect();
    members.shuffle(rng);
    MonomialSet::new(n, members).expect("distinct squarefree monomials")
}

/// Parameters `(n, d, s)` with `1 <= s_i <= d` and `sum s >= d`.
pub fn random_veronese_type_params(rng: &mut impl Rng) -> (usize, u32, Vec<u32>) {
    loop {
        let n = rng.gen_range(1..=5);
        let d = rng.gen_range(1..=5);
        let s: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
        if s.iter().sum::<u32>() >= d {
            return (n, d, s);
        }
    }
}

pub fn edge(n: usize, a: usize, b: usize) -> Vec<u32> {
    let mut e = vec![0u32; n];
    e[a] += 1;
    e[b] += 1;
    e
}

/// A connected bipartite simple graph with at least one cycle, as a degree-2
/// set, together with an edge lying on a cycle (all cycles are even).
pub fn random_bipartite_with_cycle(rng: &mut impl Rng) -> (MonomialSet, (usize, usize)) {
    loop {
        let left = rng.gen_range(2..=4);
        let right = rng.gen_range(2..=4);
        let n = left + right;
        let mut edges = BTreeSet::new();
        for a in 0..left {
            for b in left..n {
                if rng.gen_bool(0.55) {
                    edges.insert((a, b));
                }
            }
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        if edges.len() < n || !connected(n, &edges, None) {
            continue;
        }
        let on_cycle: Vec<(usize, usize)> = (0..edges.len())
            .filter(|&skip| connected(n, &edges, Some(skip)))
            .map(|i| edges[i])
            .collect();
        let Some(&chosen) = on_cycle.choose(rng) else {
            continue;
        };
        let members = edges.iter().map(|&(a, b)| edge(n, a, b)).collect();
        return (MonomialSet::new(n, members).unwrap(), chosen);
    }
}

fn connected(n: usize, edges: &[(usize, usize)], skip: Option<usize>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Determinant by cofactor expansion, independent of the library.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for (j, &a) in m[0].iter().enumerate() {
        if a == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * a as i128 * cofactor_det(&minor);
    }
    total
}

/// Log-matrix rows (variables) as plain integers.
pub fn log_rows(f: &MonomialSet) -> Vec<Vec<i64>> {
    (0..f.n())
        .map(|i| {
            f.members()
                .iter()
                .map(|m| m.exponents()[i] as i64)
                .collect()
        })
        .collect()
}
