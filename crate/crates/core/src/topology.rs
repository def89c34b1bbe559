//! Finite topological spaces and their algebras of open sets.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::HeytingAlgebra;
use crate::construct::mask_lattice;
use crate::error::{Error, Result};
use crate::MAX_ALGEBRA_SIZE;

/// Largest ground set accepted.
pub const MAX_POINTS: usize = 32;

/// Open sets of a topology on `{0, …, points − 1}`, as bitmasks sorted by
/// (cardinality, mask).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    points: usize,
    opens: Vec<u32>,
}

impl FiniteTopology {
    pub fn new(points: usize, opens: impl IntoIterator<Item = u32>) -> Result<Self> {
        if points > MAX_POINTS {
            return Err(Error::NotATopology(format!("{points} points exceed {MAX_POINTS}")));
        }
        let full = full_mask(points);
        let mut opens: Vec<u32> = opens.into_iter().collect();
        if let Some(&bad) = opens.iter().find(|&&o| o & !full != 0) {
            return Err(Error::NotATopology(format!("{bad:#x} is not a subset of the ground set")));
        }
        opens.sort_by_key(|&o| (o.count_ones(), o));
        opens.dedup();
        if opens.len() > MAX_ALGEBRA_SIZE {
            return Err(Error::BudgetExceeded(format!("{} open sets", opens.len())));
        }
        let t = FiniteTopology { points, opens };
        if !t.is_open(0) {
            return Err(Error::NotATopology("the empty set is not open".into()));
        }
        if !t.is_open(full) {
            return Err(Error::NotATopology("the ground set is not open".into()));
        }
        for &a in &t.opens {
            for &b in &t.opens {
                if !t.is_open(a | b) {
                    return Err(Error::NotATopology(format!("union of {a:#x} and {b:#x} is not open")));
                }
                if !t.is_open(a & b) {
                    return Err(Error::NotATopology(format!("intersection of {a:#x} and {b:#x} is not open")));
                }
            }
        }
        Ok(t)
    }

    pub fn discrete(points: usize) -> Result<Self> {
        if points > 16 {
            return Err(Error::BudgetExceeded(format!("discrete topology on {points} points")));
        }
        Self::new(points, 0..=full_mask(points))
    }

    pub fn indiscrete(points: usize) -> Result<Self> {
        Self::new(points, [0, full_mask(points)])
    }

    /// Two points, `{0}` open.
    pub fn sierpinski() -> Self {
        Self::new(2, [0b00, 0b01, 0b11]).expect("valid topology")
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    pub fn full(&self) -> u32 {
        full_mask(self.points)
    }

    pub fn is_open(&self, s: u32) -> bool {
        self.opens
            .binary_search_by_key(&(s.count_ones(), s), |&o| (o.count_ones(), o))
            .is_ok()
    }

    pub fn is_clopen(&self, s: u32) -> bool {
        self.is_open(s) && self.is_open(self.full() & !s)
    }

    /// Largest open subset of `s`.
    pub fn interior(&self, s: u32) -> u32 {
        self.opens.iter().filter(|&&o| o & !s == 0).fold(0, |acc, &o| acc | o)
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.points).all(|p| self.is_open(1 << p))
    }

    /// Distinct points are separated by some open set.
    pub fn is_t0(&self) -> bool {
        (0..self.points).all(|p| {
            (p + 1..self.points).all(|q| self.opens.iter().any(|&o| (o >> p & 1) != (o >> q & 1)))
        })
    }
}

fn full_mask(points: usize) -> u32 {
    if points >= 32 {
        u32::MAX
    } else {
        (1u32 << points) - 1
    }
}

/// Open sets ordered by inclusion, with `x → y` the interior of
/// `(X ∖ x) ∪ y`.
pub fn open_set_algebra(t: &FiniteTopology) -> Result<HeytingAlgebra> {
    if t.opens.len() < 2 {
        return Err(Error::Degenerate);
    }
    let sets: Vec<u64> = t.opens.iter().map(|&o| u64::from(o)).collect();
    Ok(mask_lattice(&sets, |s| u64::from(t.interior(s as u32))))
}

/// `(clopen, open but not closed)` counts.
pub fn clopen_census(t: &FiniteTopology) -> (usize, usize) {
    let clopen = t.opens.iter().filter(|&&o| t.is_clopen(o)).count();
    (clopen, t.opens.len() - clopen)
}

/// Every topology on `points ≤ 4` points, by brute force over families of
/// subsets, in increasing order of the family bitmask.
pub fn all_topologies(points: usize) -> Result<Vec<FiniteTopology>> {
    if points > 4 {
        return Err(Error::BudgetExceeded(format!("topologies on {points} points")));
    }
    let full = full_mask(points);
    let subsets = 1usize << points;
    // the empty set and the ground set are always present
    let free: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for family in 0u32..(1 << free.len()) {
        let mut opens = Vec::with_capacity(subsets);
        opens.push(0);
        opens.extend(free.iter().enumerate().filter(|&(i, _)| family >> i & 1 == 1).map(|(_, &s)| s));
        opens.push(full);
        let closed = opens.iter().all(|&a| {
            opens.iter().all(|&b| {
                let u = a | b;
                let m = a & b;
                (u == 0 || u == full || free_member(family, u)) && (m == 0 || m == full || free_member(family, m))
            })
        });
        if closed {
            out.push(FiniteTopology::new(points, opens)?);
        }
    }
    Ok(out)
}

// `free` lists 1..full in order, so subset s sits at bit s − 1
fn free_member(family: u32, s: u32) -> bool {
    family >> (s - 1) & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{boolean_algebra, chain};

    #[test]
    fn validation() {
        assert!(FiniteTopology::new(2, [0b00, 0b01, 0b10]).is_err());
        assert!(FiniteTopology::new(2, [0b01, 0b11]).is_err());
        assert!(FiniteTopology::new(3, [0b000, 0b001, 0b010, 0b111]).is_err());
        assert!(FiniteTopology::new(2, [0b000, 0b100, 0b11]).is_err());
    }

    #[test]
    fn named_spaces() {
        let d2 = open_set_algebra(&FiniteTopology::discrete(2).unwrap()).unwrap();
        assert_eq!(d2, boolean_algebra(2).unwrap());
        let s = open_set_algebra(&FiniteTopology::sierpinski()).unwrap();
        assert_eq!(s, chain(3).unwrap());
        for n in 1..4 {
            let i = open_set_algebra(&FiniteTopology::indiscrete(n).unwrap()).unwrap();
            assert_eq!(i, chain(2).unwrap());
        }
    }

    #[test]
    fn census() {
        assert_eq!(clopen_census(&FiniteTopology::discrete(3).unwrap()), (8, 0));
        assert_eq!(clopen_census(&FiniteTopology::sierpinski()), (2, 1));
    }

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| all_topologies(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 4, 29, 355]);
        let t0: Vec<usize> = (1..=4)
            .map(|n| all_topologies(n).unwrap().iter().filter(|t| t.is_t0()).count())
            .collect();
        assert_eq!(t0, [1, 3, 19, 219]);
    }

    #[test]
    fn clopens_are_the_center() {
        for n in 1..=3 {
            for t in all_topologies(n).unwrap() {
                let h = open_set_algebra(&t).unwrap();
                h.validate().unwrap();
                assert_eq!(clopen_census(&t).0, h.center().count_ones(..));
            }
        }
    }
}
