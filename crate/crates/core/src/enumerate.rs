//! Isomorphism-free enumeration of finite Heyting algebras.
//!
//! Finite Heyting algebras are exactly the finite distributive lattices, and
//! each of those is the downset lattice of its poset of join-irreducibles.
//! So the enumeration generates posets up to isomorphism (adding one maximal
//! element at a time, deduplicating by canonical form) and takes their
//! downset lattices. Posets whose downset count already exceeds the size
//! budget are pruned: adding an element never removes a downset.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::{ElementId, HeytingAlgebra};
use crate::construct::{downset_lattice_of_masks, downsets};
use crate::error::{Error, Result};

/// Largest algebra size the enumerator accepts.
pub const MAX_ENUMERATION_SIZE: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_algebra_size: usize,
    /// Bound on the size of the join-irreducible poset. The enumeration is
    /// complete up to `max_algebra_size` when this is at least
    /// `max_algebra_size - 1`.
    pub max_ji_poset_size: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_algebra_size: 8,
            max_ji_poset_size: 7,
        }
    }
}

impl EnumerationBudget {
    /// Smallest budget that is complete for algebras up to `max_algebra_size`.
    pub fn complete(max_algebra_size: usize) -> Self {
        EnumerationBudget {
            max_algebra_size,
            max_ji_poset_size: max_algebra_size.saturating_sub(1),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.max_ji_poset_size + 1 >= self.max_algebra_size
    }

    fn check(&self) -> Result<()> {
        if self.max_algebra_size > MAX_ENUMERATION_SIZE {
            return Err(Error::BudgetExceeded(format!(
                "enumeration size {} exceeds {MAX_ENUMERATION_SIZE}",
                self.max_algebra_size
            )));
        }
        if self.max_ji_poset_size > 63 {
            return Err(Error::BudgetExceeded(format!(
                "join-irreducible posets of size {} exceed 63",
                self.max_ji_poset_size
            )));
        }
        Ok(())
    }
}

/// A finite poset under its canonical labelling: entry `i` is the bitmask of
/// elements strictly below element `i`. Two posets are isomorphic exactly
/// when their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalPoset {
    strict_down: Vec<u64>,
}

impl CanonicalPoset {
    pub fn of(strict_down: &[u64]) -> Self {
        canonical_form(strict_down)
    }

    pub fn size(&self) -> usize {
        self.strict_down.len()
    }

    pub fn strict_down(&self) -> &[u64] {
        &self.strict_down
    }

    /// Compact textual key, e.g. `3:0.1.1` for the poset `0 < 1, 0 < 2`.
    pub fn key(&self) -> String {
        let mut s = format!("{}:", self.size());
        for (i, m) in self.strict_down.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            let _ = write!(s, "{m:x}");
        }
        s
    }
}

fn heights(strict_down: &[u64]) -> Vec<usize> {
    let n = strict_down.len();
    let mut height = vec![usize::MAX; n];
    fn visit(x: usize, strict_down: &[u64], height: &mut [usize]) -> usize {
        if height[x] != usize::MAX {
            return height[x];
        }
        let mut h = 0;
        let mut below = strict_down[x];
        while below != 0 {
            let y = below.trailing_zeros() as usize;
            below &= below - 1;
            h = h.max(visit(y, strict_down, height) + 1);
        }
        height[x] = h;
        h
    }
    for x in 0..n {
        visit(x, strict_down, &mut height);
    }
    height
}

/// Colour refinement with height as the leading component, so every element
/// strictly below `x` receives a smaller colour than `x`.
fn refined_colours(strict_down: &[u64]) -> Vec<usize> {
    let n = strict_down.len();
    let height = heights(strict_down);
    let strict_up: Vec<u64> = (0..n)
        .map(|x| (0..n).filter(|&y| strict_down[y] & (1 << x) != 0).fold(0, |m, y| m | (1 << y)))
        .collect();
    let members = |mask: u64| (0..n).filter(move |&y| mask & (1 << y) != 0);

    let mut colour: Vec<usize> = {
        let sig: Vec<(usize, u32, u32)> = (0..n)
            .map(|x| (height[x], strict_down[x].count_ones(), strict_up[x].count_ones()))
            .collect();
        rank(&sig)
    };
    loop {
        let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut below: Vec<usize> = members(strict_down[x]).map(|y| colour[y]).collect();
                let mut above: Vec<usize> = members(strict_up[x]).map(|y| colour[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colour[x], below, above)
            })
            .collect();
        let next = rank(&sig);
        let classes = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn rank<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let sorted: BTreeSet<T> = sig.iter().cloned().collect();
    let sorted: Vec<T> = sorted.into_iter().collect();
    sig.iter()
        .map(|s| sorted.binary_search(s).expect("present"))
        .collect()
}

/// Lexicographically least strict-down code over all labellings that list
/// elements by refined colour.
pub fn canonical_form(strict_down: &[u64]) -> CanonicalPoset {
    let n = strict_down.len();
    let colour = refined_colours(strict_down);
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&x| colour[x]);
    // slot i may hold any element whose colour equals colour[slots[i]]
    let slot_colour: Vec<usize> = slots.iter().map(|&x| colour[x]).collect();

    struct Search<'a> {
        strict_down: &'a [u64],
        colour: &'a [usize],
        slot_colour: &'a [usize],
        position: Vec<usize>,
        code: Vec<u64>,
        best: Option<Vec<u64>>,
    }

    impl Search<'_> {
        fn run(&mut self, i: usize) {
            let n = self.strict_down.len();
            if i == n {
                if self.best.as_ref().is_none_or(|b| self.code < *b) {
                    self.best = Some(self.code.clone());
                }
                return;
            }
            for x in 0..n {
                if self.position[x] != usize::MAX || self.colour[x] != self.slot_colour[i] {
                    continue;
                }
                // everything below x has a smaller colour, hence is placed
                let mut mask = 0u64;
                let mut below = self.strict_down[x];
                while below != 0 {
                    let y = below.trailing_zeros() as usize;
                    below &= below - 1;
                    mask |= 1 << self.position[y];
                }
                self.code.push(mask);
                let worse = self
                    .best
                    .as_ref()
                    .is_some_and(|b| self.code[..] > b[..=i]);
                if !worse {
                    self.position[x] = i;
                    self.run(i + 1);
                    self.position[x] = usize::MAX;
                }
                self.code.pop();
            }
        }
    }

    let mut search = Search {
        strict_down,
        colour: &colour,
        slot_colour: &slot_colour,
        position: vec![usize::MAX; n],
        code: Vec::with_capacity(n),
        best: None,
    };
    search.run(0);
    CanonicalPoset {
        strict_down: search.best.unwrap_or_default(),
    }
}

/// Every poset with at most `max_size` elements and at most `max_downsets`
/// downsets, up to isomorphism, sorted by canonical form. Includes the empty
/// poset.
pub fn enumerate_posets(max_size: usize, max_downsets: usize) -> Vec<CanonicalPoset> {
    let mut all: Vec<CanonicalPoset> = vec![CanonicalPoset {
        strict_down: Vec::new(),
    }];
    let mut level: BTreeSet<CanonicalPoset> = BTreeSet::new();
    level.insert(all[0].clone());
    for _ in 0..max_size.min(63) {
        let mut next = BTreeSet::new();
        for p in &level {
            let Ok(ideals) = downsets(&p.strict_down, usize::MAX) else {
                continue;
            };
            for ideal in ideals {
                let mut q = p.strict_down.clone();
                q.push(ideal);
                if downsets(&q, max_downsets).is_ok() {
                    next.insert(canonical_form(&q));
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.sort();
    all
}

/// An enumerated algebra together with its join-irreducible poset.
#[derive(Clone, Debug)]
pub struct EnumeratedAlgebra {
    pub algebra: HeytingAlgebra,
    pub ji_poset: CanonicalPoset,
}

impl EnumeratedAlgebra {
    /// Stable identifier: algebra size and canonical join-irreducible poset.
    pub fn fingerprint(&self) -> String {
        format!("n{}/{}", self.algebra.size(), self.ji_poset.key())
    }
}

/// One representative per isomorphism class of Heyting algebras of size
/// `2..=max_algebra_size` whose join-irreducible poset has at most
/// `max_ji_poset_size` elements, in (size, canonical form) order.
pub fn enumerate_heyting(budget: EnumerationBudget) -> Result<Vec<EnumeratedAlgebra>> {
    budget.check()?;
    let mut out = Vec::new();
    for poset in enumerate_posets(budget.max_ji_poset_size, budget.max_algebra_size) {
        if poset.size() == 0 {
            continue;
        }
        let algebra = downset_lattice_of_masks(&poset.strict_down)?;
        if algebra.size() <= budget.max_algebra_size {
            out.push(EnumeratedAlgebra {
                algebra,
                ji_poset: poset,
            });
        }
    }
    out.sort_by(|a, b| {
        (a.algebra.size(), &a.ji_poset).cmp(&(b.algebra.size(), &b.ji_poset))
    });
    Ok(out)
}

/// Canonical join-irreducible poset of any finite Heyting algebra; two
/// algebras are isomorphic exactly when these agree. Fails for algebras with
/// more than 64 join-irreducibles.
pub fn canonical_ji_poset(h: &HeytingAlgebra) -> Result<CanonicalPoset> {
    let ji: Vec<ElementId> = h.join_irreducibles();
    if ji.len() > 64 {
        return Err(Error::BudgetExceeded(format!(
            "{} join-irreducibles exceed 64",
            ji.len()
        )));
    }
    let strict_down: Vec<u64> = ji
        .iter()
        .map(|&x| {
            ji.iter()
                .enumerate()
                .filter(|&(_, &y)| y != x && h.leq(y, x))
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    Ok(canonical_form(&strict_down))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{boolean_algebra, chain, product};

    #[test]
    fn canonical_form_is_labelling_invariant() {
        // 0 < 2, 1 < 2, 1 < 3 under two labellings
        let a = [0b0000, 0b0000, 0b0011, 0b0010];
        let b = [0b0100, 0b1100, 0b0000, 0b0000];
        assert_eq!(canonical_form(&a), canonical_form(&b));
        // N-shaped vs a different poset of the same size
        let c = [0b0000, 0b0000, 0b0011, 0b0011];
        assert_ne!(canonical_form(&a), canonical_form(&c));
    }

    #[test]
    fn poset_counts_up_to_five() {
        // unlabelled posets: 1, 1, 2, 5, 16, 63
        let all = enumerate_posets(5, usize::MAX);
        let mut counts = [0usize; 6];
        for p in &all {
            counts[p.size()] += 1;
        }
        assert_eq!(counts, [1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn distributive_lattice_counts() {
        let all = enumerate_heyting(EnumerationBudget::complete(10)).unwrap();
        let mut counts = [0usize; 11];
        for e in &all {
            counts[e.algebra.size()] += 1;
        }
        assert_eq!(&counts[2..], &[1, 1, 2, 3, 5, 8, 15, 26, 47]);
    }

    #[test]
    fn size_three_is_the_three_chain() {
        let all = enumerate_heyting(EnumerationBudget::complete(3)).unwrap();
        let threes: Vec<_> = all.iter().filter(|e| e.algebra.size() == 3).collect();
        assert_eq!(threes.len(), 1);
        assert_eq!(threes[0].algebra, chain(3).unwrap());
    }

    #[test]
    fn stream_order_is_size_then_form() {
        let all = enumerate_heyting(EnumerationBudget::default()).unwrap();
        for w in all.windows(2) {
            assert!((w[0].algebra.size(), &w[0].ji_poset) < (w[1].algebra.size(), &w[1].ji_poset));
        }
    }

    #[test]
    fn canonical_ji_poset_identifies_algebras() {
        let c2 = chain(2).unwrap();
        let sq = product(&c2, &c2).unwrap();
        let b2 = boolean_algebra(2).unwrap();
        assert_eq!(canonical_ji_poset(&sq).unwrap(), canonical_ji_poset(&b2).unwrap());
        assert_ne!(
            canonical_ji_poset(&chain(4).unwrap()).unwrap(),
            canonical_ji_poset(&b2).unwrap()
        );
        for e in enumerate_heyting(EnumerationBudget::default()).unwrap() {
            assert_eq!(canonical_ji_poset(&e.algebra).unwrap(), e.ji_poset);
        }
    }

    #[test]
    fn budget_limits() {
        let over = EnumerationBudget {
            max_algebra_size: 40,
            max_ji_poset_size: 39,
        };
        assert!(matches!(enumerate_heyting(over), Err(Error::BudgetExceeded(_))));
        assert!(EnumerationBudget::default().is_complete());
        let partial = EnumerationBudget {
            max_algebra_size: 8,
            max_ji_poset_size: 2,
        };
        assert!(!partial.is_complete());
        // with at most two join-irreducibles only 2-, 3-chains and B2 remain
        let got = enumerate_heyting(partial).unwrap();
        assert_eq!(got.len(), 3);
    }
}
