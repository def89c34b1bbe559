//! Named families of finite Heyting algebras.
//!
//! Every constructor writes the operation tables directly from a closed form,
//! in canonical element order; the generic derivation in
//! [`HeytingAlgebra::from_leq`] is used only to cross-check them in tests.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{ElementId, ElementSet, HeytingAlgebra, Poset};
use crate::error::{Error, Result};
use crate::MAX_ALGEBRA_SIZE;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ALGEBRA_SIZE {
        Err(Error::BudgetExceeded(format!(
            "algebra of size {n} exceeds {MAX_ALGEBRA_SIZE}"
        )))
    } else if n < 2 {
        Err(Error::Degenerate)
    } else {
        Ok(())
    }
}

fn id(i: usize) -> ElementId {
    ElementId(i as u16)
}

fn build(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
    meet: impl Fn(usize, usize) -> usize,
    join: impl Fn(usize, usize) -> usize,
    imp: impl Fn(usize, usize) -> usize,
) -> HeytingAlgebra {
    let up = (0..n)
        .map(|a| {
            let mut row = ElementSet::with_capacity(n);
            for b in a..n {
                if leq(a, b) {
                    row.insert(b);
                }
            }
            row
        })
        .collect();
    let table = |op: &dyn Fn(usize, usize) -> usize| {
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(id(op(a, b)));
            }
        }
        t
    };
    HeytingAlgebra::from_tables(up, table(&meet), table(&join), table(&imp))
}

/// The `n`-element chain; `a -> b` is top when `a <= b` and `b` otherwise.
pub fn chain(n: usize) -> Result<HeytingAlgebra> {
    check_size(n)?;
    let top = n - 1;
    Ok(build(
        n,
        |a, b| a <= b,
        |a, b| a.min(b),
        |a, b| a.max(b),
        |a, b| if a <= b { top } else { b },
    ))
}

/// The powerset algebra on `n_atoms` atoms, elements encoded as bitmasks.
pub fn boolean_algebra(n_atoms: u32) -> Result<HeytingAlgebra> {
    if n_atoms >= usize::BITS - 1 || (1usize << n_atoms) > MAX_ALGEBRA_SIZE {
        return Err(Error::BudgetExceeded(format!(
            "Boolean algebra with {n_atoms} atoms exceeds {MAX_ALGEBRA_SIZE} elements"
        )));
    }
    let n = 1usize << n_atoms;
    check_size(n)?;
    let full = n - 1;
    Ok(build(
        n,
        |a, b| a & b == a,
        |a, b| a & b,
        |a, b| a | b,
        |a, b| (!a | b) & full,
    ))
}

/// Componentwise product; `(h, j)` is stored at index `h * |J| + j`.
pub fn product(h: &HeytingAlgebra, j: &HeytingAlgebra) -> Result<HeytingAlgebra> {
    let m = j.size();
    let n = h
        .size()
        .checked_mul(m)
        .filter(|&n| n <= MAX_ALGEBRA_SIZE)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!(
                "product of sizes {} and {m} exceeds {MAX_ALGEBRA_SIZE}",
                h.size()
            ))
        })?;
    let split = |x: usize| (id(x / m), id(x % m));
    let pair = |a: ElementId, b: ElementId| a.index() * m + b.index();
    let lift = |op_h: fn(&HeytingAlgebra, ElementId, ElementId) -> ElementId,
                op_j: fn(&HeytingAlgebra, ElementId, ElementId) -> ElementId| {
        move |x: usize, y: usize| {
            let ((xh, xj), (yh, yj)) = (split(x), split(y));
            pair(op_h(h, xh, yh), op_j(j, xj, yj))
        }
    };
    Ok(build(
        n,
        |x, y| {
            let ((xh, xj), (yh, yj)) = (split(x), split(y));
            h.leq(xh, yh) && j.leq(xj, yj)
        },
        lift(HeytingAlgebra::meet, HeytingAlgebra::meet),
        lift(HeytingAlgebra::join, HeytingAlgebra::join),
        lift(HeytingAlgebra::imp, HeytingAlgebra::imp),
    ))
}

/// Stacks a `k`-element chain above the top of `h`.
///
/// The old elements keep their ids; the new ones follow. For `x, y` in `h`
/// with `x` not below `y` the implication is unchanged, every other
/// implication with `x` not below `y` yields `y`.
pub fn adjoin_chain(h: &HeytingAlgebra, k: usize) -> Result<HeytingAlgebra> {
    if k == 0 {
        return Ok(h.clone());
    }
    let old = h.size();
    let n = old + k;
    check_size(n)?;
    let top = n - 1;
    let inner = |x: usize| x < old;
    let leq = |x: usize, y: usize| {
        if inner(x) && inner(y) {
            h.leq(id(x), id(y))
        } else {
            x <= y
        }
    };
    Ok(build(
        n,
        leq,
        |x, y| {
            if inner(x) && inner(y) {
                h.meet(id(x), id(y)).index()
            } else {
                x.min(y)
            }
        },
        |x, y| {
            if inner(x) && inner(y) {
                h.join(id(x), id(y)).index()
            } else {
                x.max(y)
            }
        },
        |x, y| {
            if leq(x, y) {
                top
            } else if inner(x) && inner(y) {
                h.imp(id(x), id(y)).index()
            } else {
                y
            }
        },
    ))
}

/// Down-closed subsets of a poset with at most 64 elements, as bitmasks,
/// sorted by (cardinality, mask). Fails once more than `limit` are found.
pub(crate) fn downsets(strict_down: &[u64], limit: usize) -> Result<Vec<u64>> {
    let n = strict_down.len();
    let mut level: BTreeSet<u64> = BTreeSet::new();
    level.insert(0);
    let mut all: Vec<u64> = Vec::new();
    while !level.is_empty() {
        all.extend(level.iter().copied());
        if all.len() > limit {
            return Err(Error::BudgetExceeded(format!(
                "poset has more than {limit} downsets"
            )));
        }
        let mut next = BTreeSet::new();
        for &d in &level {
            for x in 0..n {
                let bit = 1u64 << x;
                if d & bit == 0 && strict_down[x] & !d == 0 {
                    next.insert(d | bit);
                }
            }
        }
        level = next;
    }
    // levels are generated by cardinality, each level in mask order
    Ok(all)
}

pub(crate) fn strict_down_masks(p: &Poset) -> Result<Vec<u64>> {
    if p.size() > 64 {
        return Err(Error::BudgetExceeded(format!(
            "poset of size {} has more than 64 elements",
            p.size()
        )));
    }
    Ok((0..p.size())
        .map(|x| {
            (0..p.size())
                .filter(|&y| y != x && p.leq(y, x))
                .fold(0u64, |m, y| m | (1 << y))
        })
        .collect())
}

/// Lattice of downsets of a poset ordered by inclusion.
pub fn downset_lattice(p: &Poset) -> Result<HeytingAlgebra> {
    let strict_down = strict_down_masks(p)?;
    downset_lattice_of_masks(&strict_down)
}

pub(crate) fn downset_lattice_of_masks(strict_down: &[u64]) -> Result<HeytingAlgebra> {
    Ok(downset_lattice_with_sets(strict_down)?.0)
}

/// The downset lattice together with the downset (as a bitmask) that each
/// element stands for.
pub(crate) fn downset_lattice_with_sets(strict_down: &[u64]) -> Result<(HeytingAlgebra, Vec<u64>)> {
    let sets = downsets(strict_down, MAX_ALGEBRA_SIZE)?;
    check_size(sets.len())?;
    let h = mask_lattice(&sets, |allowed| {
        // largest downset inside `allowed`
        (0..strict_down.len())
            .filter(|&x| allowed & (1 << x) != 0 && strict_down[x] & !allowed == 0)
            .fold(0u64, |m, x| m | (1 << x))
    });
    Ok((h, sets))
}

/// Heyting algebra on a family of sets closed under union and intersection,
/// sorted by (cardinality, mask). `interior(s)` must return the largest member
/// of the family contained in `s`.
pub(crate) fn mask_lattice(sets: &[u64], interior: impl Fn(u64) -> u64) -> HeytingAlgebra {
    let n = sets.len();
    let universe = sets[n - 1];
    let index = |mask: u64| {
        sets.binary_search_by_key(&(mask.count_ones(), mask), |&s| (s.count_ones(), s))
            .expect("family is closed under the lattice operations")
    };
    build(
        n,
        |a, b| sets[a] & !sets[b] == 0,
        |a, b| index(sets[a] & sets[b]),
        |a, b| index(sets[a] | sets[b]),
        |a, b| index(interior((universe & !sets[a]) | sets[b])),
    )
}
