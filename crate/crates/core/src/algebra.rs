//! Finite posets and finite Heyting algebras.
//!
//! A [`HeytingAlgebra`] stores its carrier in a linear extension of the order,
//! with bottom at index 0 and top at index `size - 1`. Meet, join and
//! implication are precomputed into full tables when the algebra is built, so
//! evaluating a term is a sequence of table lookups.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::MAX_ALGEBRA_SIZE;

/// Subset of a carrier, one bit per element.
pub type ElementSet = FixedBitSet;

/// Index of an element in the canonical carrier order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u16);

impl ElementId {
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) const fn from_index(i: usize) -> Self {
        ElementId(i as u16)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite partial order given by its up-sets (`up[a]` holds every `b >= a`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    up: Vec<ElementSet>,
}

impl Poset {
    /// Builds a poset from an arbitrary relation and checks reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_relation(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut up = Vec::with_capacity(size);
        for a in 0..size {
            let mut row = ElementSet::with_capacity(size);
            for b in 0..size {
                if leq(a, b) {
                    row.insert(b);
                }
            }
            up.push(row);
        }
        let poset = Poset { up };
        poset.check()?;
        Ok(poset)
    }

    pub fn from_matrix(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        if let Some(row) = leq.iter().position(|r| r.len() != n) {
            return Err(Error::NotAPoset(format!(
                "row {row} has length {} in a {n}x{n} matrix",
                leq[row].len()
            )));
        }
        Self::from_relation(n, |a, b| leq[a][b])
    }

    pub fn empty() -> Self {
        Poset { up: Vec::new() }
    }

    pub fn chain(n: usize) -> Self {
        Self::from_relation(n, |a, b| a <= b).expect("chains are posets")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relation(n, |a, b| a == b).expect("antichains are posets")
    }

    fn check(&self) -> Result<()> {
        let n = self.size();
        for a in 0..n {
            if !self.up[a].contains(a) {
                return Err(Error::NotAPoset(format!("not reflexive at {a}")));
            }
            for b in self.up[a].ones() {
                if b != a && self.up[b].contains(a) {
                    return Err(Error::NotAPoset(format!("not antisymmetric at ({a}, {b})")));
                }
                // a <= b implies up(b) is contained in up(a)
                if !self.up[b].is_subset(&self.up[a]) {
                    return Err(Error::NotAPoset(format!("not transitive through ({a}, {b})")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.up.len()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn upset(&self, a: usize) -> &ElementSet {
        &self.up[a]
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n).map(|a| (0..n).map(|b| self.leq(a, b)).collect()).collect()
    }
}

/// Elements satisfying excluded middle (`center`) and double-negation
/// elimination (`dneg`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loci {
    pub center: ElementSet,
    pub dneg: ElementSet,
}

/// A finite, non-degenerate Heyting algebra with precomputed operation tables.
///
/// Immutable once built; safe to share between threads.
#[derive(Clone, PartialEq, Eq)]
pub struct HeytingAlgebra {
    size: usize,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    imp: Vec<ElementId>,
    neg: Vec<ElementId>,
}

impl fmt::Debug for HeytingAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeytingAlgebra")
            .field("size", &self.size)
            .field("leq", &self.to_leq_matrix())
            .finish()
    }
}

impl HeytingAlgebra {
    /// Validates an order and derives the full Heyting structure from it.
    ///
    /// The elements are relabelled into a linear extension (ordered by
    /// down-set size, ties broken by input index); use
    /// [`HeytingAlgebra::from_leq_labeled`] to keep track of the relabelling.
    pub fn from_leq(leq: &[Vec<bool>]) -> Result<Self> {
        Self::from_leq_labeled(leq).map(|(h, _)| h)
    }

    /// Like [`HeytingAlgebra::from_leq`], also returning the id assigned to
    /// each input row.
    pub fn from_leq_labeled(leq: &[Vec<bool>]) -> Result<(Self, Vec<ElementId>)> {
        let poset = Poset::from_matrix(leq)?;
        Self::from_poset_labeled(&poset)
    }

    pub fn from_poset(poset: &Poset) -> Result<Self> {
        Self::from_poset_labeled(poset).map(|(h, _)| h)
    }

    pub fn from_poset_labeled(poset: &Poset) -> Result<(Self, Vec<ElementId>)> {
        let n = poset.size();
        if n < 2 {
            return Err(Error::Degenerate);
        }
        if n > MAX_ALGEBRA_SIZE {
            return Err(Error::BudgetExceeded(format!(
                "algebra of size {n} exceeds {MAX_ALGEBRA_SIZE}"
            )));
        }
        let down_count: Vec<usize> = (0..n)
            .map(|b| (0..n).filter(|&a| poset.leq(a, b)).count())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (down_count[i], i));
        let mut label = alloc::vec![ElementId(0); n];
        for (new, &old) in order.iter().enumerate() {
            label[old] = ElementId::from_index(new);
        }
        let up: Vec<ElementSet> = order
            .iter()
            .map(|&old| {
                let mut row = ElementSet::with_capacity(n);
                for b in poset.upset(old).ones() {
                    row.insert(label[b].index());
                }
                row
            })
            .collect();
        let down = transpose(&up);

        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                // In a linear extension an infimum is the largest common lower
                // bound and a supremum the smallest common upper bound.
                let mut lower = down[a].clone();
                lower.intersect_with(&down[b]);
                let m = lower
                    .maximum()
                    .filter(|&m| lower.is_subset(&down[m]))
                    .ok_or(Error::NotALattice(order[a], order[b], "meet"))?;
                meet.push(ElementId::from_index(m));

                let mut upper = up[a].clone();
                upper.intersect_with(&up[b]);
                let j = upper
                    .minimum()
                    .filter(|&j| upper.is_subset(&up[j]))
                    .ok_or(Error::NotALattice(order[a], order[b], "join"))?;
                join.push(ElementId::from_index(j));
            }
        }

        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = meet[x * n + join[y * n + z].index()];
                    let rhs = join[meet[x * n + y].index() * n + meet[x * n + z].index()];
                    if lhs != rhs {
                        return Err(Error::NotDistributive(order[x], order[y], order[z]));
                    }
                }
            }
        }

        let mut imp = Vec::with_capacity(n * n);
        let mut candidates = ElementSet::with_capacity(n);
        for a in 0..n {
            for b in 0..n {
                candidates.clear();
                for c in 0..n {
                    if down[b].contains(meet[a * n + c].index()) {
                        candidates.insert(c);
                    }
                }
                let c = candidates
                    .maximum()
                    .filter(|&c| candidates.is_subset(&down[c]))
                    .ok_or(Error::NoImplication(order[a], order[b]))?;
                imp.push(ElementId::from_index(c));
            }
        }

        let h = Self::from_parts(up, down, meet, join, imp);
        Ok((h, label))
    }

    /// Assembles an algebra from tables already known to be correct and in
    /// canonical order. Constructors use this to avoid the cubic derivation.
    pub(crate) fn from_tables(
        up: Vec<ElementSet>,
        meet: Vec<ElementId>,
        join: Vec<ElementId>,
        imp: Vec<ElementId>,
    ) -> Self {
        let down = transpose(&up);
        let h = Self::from_parts(up, down, meet, join, imp);
        #[cfg(debug_assertions)]
        if h.size <= 24 {
            h.validate().expect("constructor produced an invalid algebra");
        }
        h
    }

    fn from_parts(
        up: Vec<ElementSet>,
        down: Vec<ElementSet>,
        meet: Vec<ElementId>,
        join: Vec<ElementId>,
        imp: Vec<ElementId>,
    ) -> Self {
        let size = up.len();
        let neg = (0..size).map(|x| imp[x * size]).collect();
        HeytingAlgebra {
            size,
            up,
            down,
            meet,
            join,
            imp,
            neg,
        }
    }

    /// Re-checks every structural invariant. Cubic in the size.
    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        if n < 2 || self.bot() == self.top() {
            return Err(Error::Degenerate);
        }
        let poset = Poset {
            up: self.up.clone(),
        };
        poset.check()?;
        for a in 0..n {
            if !self.up[0].contains(a) || !self.down[n - 1].contains(a) {
                return Err(Error::NotAPoset(format!("{a} lies outside [bot, top]")));
            }
            for b in self.up[a].ones() {
                if b < a {
                    return Err(Error::NotAPoset(format!("order ({a}, {b}) is not a linear extension")));
                }
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                let m = self.meet(a, b);
                let j = self.join(a, b);
                if !(self.leq(m, a) && self.leq(m, b) && self.leq(a, j) && self.leq(b, j)) {
                    return Err(Error::NotALattice(a.index(), b.index(), "bound"));
                }
                for c in self.elements() {
                    if self.leq(c, a) && self.leq(c, b) && !self.leq(c, m) {
                        return Err(Error::NotALattice(a.index(), b.index(), "meet"));
                    }
                    if self.leq(a, c) && self.leq(b, c) && !self.leq(j, c) {
                        return Err(Error::NotALattice(a.index(), b.index(), "join"));
                    }
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Err(Error::NotDistributive(a.index(), b.index(), c.index()));
                    }
                    // adjunction: a & c <= b  <=>  c <= a -> b
                    if self.leq(self.meet(a, c), b) != self.leq(c, self.imp(a, b)) {
                        return Err(Error::NoImplication(a.index(), b.index()));
                    }
                }
            }
            if self.neg(a) != self.imp(a, self.bot()) {
                return Err(Error::NoImplication(a.index(), 0));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn bot(&self) -> ElementId {
        ElementId(0)
    }

    #[inline]
    pub fn top(&self) -> ElementId {
        ElementId::from_index(self.size - 1)
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator + Clone {
        (0..self.size as u16).map(ElementId)
    }

    /// Checked conversion from a raw index.
    pub fn element(&self, index: usize) -> Result<ElementId> {
        if index < self.size {
            Ok(ElementId::from_index(index))
        } else {
            Err(Error::ElementOutOfRange(index, self.size))
        }
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.index()].contains(b.index())
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn imp(&self, a: ElementId, b: ElementId) -> ElementId {
        self.imp[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        self.neg[a.index()]
    }

    /// `{y : y >= x}`
    pub fn upset(&self, x: ElementId) -> &ElementSet {
        &self.up[x.index()]
    }

    /// `{y : y <= x}`
    pub fn downset(&self, x: ElementId) -> &ElementSet {
        &self.down[x.index()]
    }

    pub fn to_leq_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.up[a].contains(b)).collect())
            .collect()
    }

    pub fn poset(&self) -> Poset {
        Poset { up: self.up.clone() }
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<ElementId> {
        self.elements()
            .filter(|&x| self.lower_covers(x).count() == 1)
            .collect()
    }

    pub fn lower_covers(&self, x: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.down[x.index()]
            .ones()
            .filter(move |&y| y != x.index())
            .filter(move |&y| {
                // nothing strictly between y and x
                self.up[y]
                    .intersection(&self.down[x.index()])
                    .all(|z| z == y || z == x.index())
            })
            .map(ElementId::from_index)
    }

    pub fn upper_covers(&self, x: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.up[x.index()]
            .ones()
            .filter(move |&y| y != x.index())
            .filter(move |&y| {
                self.down[y]
                    .intersection(&self.up[x.index()])
                    .all(|z| z == y || z == x.index())
            })
            .map(ElementId::from_index)
    }

    fn collect_set(&self, pred: impl Fn(ElementId) -> bool) -> ElementSet {
        let mut set = ElementSet::with_capacity(self.size);
        for x in self.elements().filter(|&x| pred(x)) {
            set.insert(x.index());
        }
        set
    }

    /// `{x : x | ~x = top}`
    pub fn center(&self) -> ElementSet {
        self.collect_set(|x| self.join(x, self.neg(x)) == self.top())
    }

    /// `{x : ~~x = x}`
    pub fn dneg(&self) -> ElementSet {
        self.collect_set(|x| self.neg(self.neg(x)) == x)
    }

    pub fn loci(&self) -> Loci {
        Loci {
            center: self.center(),
            dneg: self.dneg(),
        }
    }

    /// `{y : x -> y = ~x | y}`
    pub fn materializer(&self, x: ElementId) -> ElementSet {
        let nx = self.neg(x);
        self.collect_set(|y| self.imp(x, y) == self.join(nx, y))
    }

    /// Whether `x -> y = ~x | y` for every pair.
    pub fn is_boolean(&self) -> bool {
        self.elements().all(|x| {
            let nx = self.neg(x);
            self.elements().all(|y| self.imp(x, y) == self.join(nx, y))
        })
    }

    /// An order isomorphism onto `other` (which, between lattices, preserves
    /// every Heyting operation), or `None`.
    pub fn is_isomorphic(&self, other: &HeytingAlgebra) -> Option<Vec<ElementId>> {
        crate::iso::find_isomorphism(self, other)
    }
}

pub(crate) fn transpose(up: &[ElementSet]) -> Vec<ElementSet> {
    let n = up.len();
    let mut down: Vec<ElementSet> = (0..n).map(|_| ElementSet::with_capacity(n)).collect();
    for (a, row) in up.iter().enumerate() {
        for b in row.ones() {
            down[b].insert(a);
        }
    }
    down
}
