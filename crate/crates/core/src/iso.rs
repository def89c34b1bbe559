//! Isomorphism search between finite Heyting algebras.
//!
//! Elements are first split by an order invariant (down-set size, up-set size
//! and cover degrees); the backtracking search only maps elements onto
//! elements with the same invariant.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{ElementId, HeytingAlgebra};

type Fingerprint = (usize, usize, usize, usize);

fn fingerprints(h: &HeytingAlgebra) -> Vec<Fingerprint> {
    h.elements()
        .map(|x| {
            (
                h.downset(x).count_ones(..),
                h.upset(x).count_ones(..),
                h.lower_covers(x).count(),
                h.upper_covers(x).count(),
            )
        })
        .collect()
}

pub(crate) fn find_isomorphism(a: &HeytingAlgebra, b: &HeytingAlgebra) -> Option<Vec<ElementId>> {
    if a.size() != b.size() {
        return None;
    }
    let fa = fingerprints(a);
    let fb = fingerprints(b);
    let mut sa = fa.clone();
    let mut sb = fb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    let n = a.size();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !extend(a, b, &fa, &fb, 0, &mut map, &mut used) {
        return None;
    }
    let map: Vec<ElementId> = map.into_iter().map(ElementId::from_index).collect();
    debug_assert!(preserves_operations(a, b, &map));
    Some(map)
}

fn extend(
    a: &HeytingAlgebra,
    b: &HeytingAlgebra,
    fa: &[Fingerprint],
    fb: &[Fingerprint],
    x: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.size();
    if x == n {
        return true;
    }
    let ex = ElementId::from_index(x);
    for y in 0..n {
        if used[y] || fa[x] != fb[y] {
            continue;
        }
        let ey = ElementId::from_index(y);
        let consistent = (0..x).all(|u| {
            let eu = ElementId::from_index(u);
            let fu = ElementId::from_index(map[u]);
            a.leq(eu, ex) == b.leq(fu, ey) && a.leq(ex, eu) == b.leq(ey, fu)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, fa, fb, x + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[x] = usize::MAX;
    false
}

/// Checks that `map` is a bijection commuting with every Heyting operation.
pub(crate) fn preserves_operations(a: &HeytingAlgebra, b: &HeytingAlgebra, map: &[ElementId]) -> bool {
    if a.size() != b.size() || map.len() != a.size() {
        return false;
    }
    let mut seen = vec![false; b.size()];
    for &y in map {
        if y.index() >= b.size() || core::mem::replace(&mut seen[y.index()], true) {
            return false;
        }
    }
    let f = |x: ElementId| map[x.index()];
    if f(a.bot()) != b.bot() || f(a.top()) != b.top() {
        return false;
    }
    a.elements().all(|x| {
        a.elements().all(|y| {
            f(a.meet(x, y)) == b.meet(f(x), f(y))
                && f(a.join(x, y)) == b.join(f(x), f(y))
                && f(a.imp(x, y)) == b.imp(f(x), f(y))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{boolean_algebra, chain, product};

    #[test]
    fn identity_is_found() {
        let h = chain(4).unwrap();
        let map = h.is_isomorphic(&h).unwrap();
        assert!(preserves_operations(&h, &h, &map));
    }

    #[test]
    fn sizes_must_agree() {
        assert!(chain(3).unwrap().is_isomorphic(&boolean_algebra(2).unwrap()).is_none());
    }

    #[test]
    fn square_of_two_chain_is_four_element_boolean() {
        let c2 = chain(2).unwrap();
        let sq = product(&c2, &c2).unwrap();
        let b2 = boolean_algebra(2).unwrap();
        let map = sq.is_isomorphic(&b2).unwrap();
        assert!(preserves_operations(&sq, &b2, &map));
        // the 4-chain has the same size but is not Boolean
        assert!(sq.is_isomorphic(&chain(4).unwrap()).is_none());
    }

    #[test]
    fn rejects_non_bijections() {
        let h = chain(3).unwrap();
        let constant = vec![ElementId(0); 3];
        assert!(!preserves_operations(&h, &h, &constant));
    }
}
