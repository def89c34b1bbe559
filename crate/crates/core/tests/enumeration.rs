//! Checks the enumeration against a brute-force search over labeled order
//! relations.

use std::collections::BTreeSet;

use heyting_core::enumerate::{enumerate_heyting, enumerate_posets, EnumerationBudget};

type Matrix = Vec<Vec<bool>>;

/// All partial orders on `0..n` with `0` least, `n − 1` greatest, and
/// every relation `i ≤ j` also holding between the integers.
fn bounded_natural_orders(n: usize) -> Vec<Matrix> {
    let inner: Vec<(usize, usize)> = (1..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for bits in 0u64..(1 << inner.len()) {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][n - 1] = true;
        }
        for (k, &(i, j)) in inner.iter().enumerate() {
            leq[i][j] = bits >> k & 1 == 1;
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !leq[a][b] || (0..n).all(|c| !leq[b][c] || leq[a][c])));
        if transitive {
            out.push(leq);
        }
    }
    out
}

fn join_table(leq: &Matrix) -> Option<Vec<Vec<usize>>> {
    let n = leq.len();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let ubs: Vec<usize> = (0..n).filter(|&u| leq[a][u] && leq[b][u]).collect();
            table[a][b] = *ubs.iter().find(|&&u| ubs.iter().all(|&v| leq[u][v]))?;
        }
    }
    Some(table)
}

fn meet_table(leq: &Matrix) -> Option<Vec<Vec<usize>>> {
    let n = leq.len();
    let dual: Matrix = (0..n).map(|i| (0..n).map(|j| leq[j][i]).collect()).collect();
    join_table(&dual)
}

fn is_distributive_lattice(leq: &Matrix) -> bool {
    let (Some(j), Some(m)) = (join_table(leq), meet_table(leq)) else {
        return false;
    };
    let n = leq.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m[a][j[b][c]] == j[m[a][b]][m[a][c]])))
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let x = rest.remove(i);
        for mut p in permutations(rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Lexicographically least relabeling fixing the bounds.
fn canonical(leq: &Matrix, perms: &[Vec<usize>]) -> Vec<bool> {
    let n = leq.len();
    perms
        .iter()
        .map(|p| {
            let mut sigma = vec![0; n];
            sigma[n - 1] = n - 1;
            for (k, &v) in p.iter().enumerate() {
                sigma[k + 1] = v;
            }
            let mut flat = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    flat[sigma[i] * n + sigma[j]] = leq[i][j];
                }
            }
            flat
        })
        .min()
        .unwrap()
}

fn oracle_classes(n: usize) -> BTreeSet<Vec<bool>> {
    let perms = permutations((1..n - 1).collect());
    bounded_natural_orders(n)
        .into_iter()
        .filter(is_distributive_lattice)
        .map(|leq| canonical(&leq, &perms))
        .collect()
}

#[test]
fn distributive_lattices_match_brute_force() {
    let max = 8;
    let found = enumerate_heyting(EnumerationBudget::complete(max)).unwrap();
    for n in 2..=max {
        let perms = permutations((1..n - 1).collect());
        let ours: Vec<Vec<bool>> = found
            .iter()
            .filter(|e| e.algebra.size() == n)
            .map(|e| canonical(&e.algebra.to_leq_matrix(), &perms))
            .collect();
        let unique: BTreeSet<_> = ours.iter().cloned().collect();
        assert_eq!(unique.len(), ours.len(), "duplicate isomorphism class at size {n}");
        assert_eq!(unique, oracle_classes(n), "size {n}");
    }
}

#[test]
fn known_counts() {
    let found = enumerate_heyting(EnumerationBudget::complete(10)).unwrap();
    let counts: Vec<usize> = (2..=10).map(|n| found.iter().filter(|e| e.algebra.size() == n).count()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 8, 15, 26, 47]);
    // sorted by size
    assert!(found.windows(2).all(|w| w[0].algebra.size() <= w[1].algebra.size()));
}

#[test]
fn poset_counts() {
    let posets = enumerate_posets(6, usize::MAX);
    let counts: Vec<usize> = (0..=6).map(|n| posets.iter().filter(|p| p.size() == n).count()).collect();
    assert_eq!(counts, [1, 1, 2, 5, 16, 63, 318]);
}

#[test]
fn every_algebra_validates() {
    for e in enumerate_heyting(EnumerationBudget::default()).unwrap() {
        e.algebra.validate().unwrap();
        assert_eq!(e.algebra.join_irreducibles().len(), e.ji_poset.size());
    }
}
