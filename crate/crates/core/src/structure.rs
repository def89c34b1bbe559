//! Central decompositions, maximal non-central elements and the structural
//! facts about the center and the double-negation locus.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{ElementId, ElementSet, HeytingAlgebra, Poset};
use crate::construct::product;
use crate::error::{Error, Result};
use crate::iso::preserves_operations;

/// The subposet on `elems` as a Heyting algebra, with the id each listed
/// element receives.
fn interval_algebra(h: &HeytingAlgebra, elems: &[ElementId]) -> Result<(HeytingAlgebra, Vec<ElementId>)> {
    let poset = Poset::from_relation(elems.len(), |a, b| h.leq(elems[a], elems[b]))?;
    HeytingAlgebra::from_poset_labeled(&poset)
}

/// `H ≅ ↑c × ↓c` for a nontrivial central element `c`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub c: ElementId,
    /// `↑c` with operations of its own.
    pub upper: HeytingAlgebra,
    /// `↓c` with operations of its own.
    pub lower: HeytingAlgebra,
    /// Element of `H` standing for each element of `upper`.
    pub upper_carrier: Vec<ElementId>,
    pub lower_carrier: Vec<ElementId>,
    /// `x ↦ (x ∨ c, x ∧ c)` as ids of `upper` and `lower`.
    pub forward: Vec<(ElementId, ElementId)>,
}

impl Decomposition {
    /// `(a, b) ↦ a ∧ (b ∨ ¬c)`, computed in `h`.
    pub fn inverse(&self, h: &HeytingAlgebra, a: ElementId, b: ElementId) -> ElementId {
        let a = self.upper_carrier[a.index()];
        let b = self.lower_carrier[b.index()];
        h.meet(a, h.join(b, h.neg(self.c)))
    }

    /// The product `upper × lower`, whose element `(a, b)` has id
    /// `a · |lower| + b`.
    pub fn product(&self) -> Result<HeytingAlgebra> {
        product(&self.upper, &self.lower)
    }

    /// Checks that `forward` is an isomorphism onto the product and that
    /// `inverse` undoes it.
    pub fn verify(&self, h: &HeytingAlgebra) -> Result<bool> {
        let prod = self.product()?;
        let l = self.lower.size();
        let map: Vec<ElementId> = self
            .forward
            .iter()
            .map(|&(a, b)| ElementId::from_index(a.index() * l + b.index()))
            .collect();
        let round_trip = h
            .elements()
            .all(|x| self.inverse(h, self.forward[x.index()].0, self.forward[x.index()].1) == x);
        Ok(round_trip && preserves_operations(h, &prod, &map))
    }
}

pub fn central_decompose(h: &HeytingAlgebra, c: ElementId) -> Result<Decomposition> {
    h.element(c.index())?;
    if c == h.bot() || c == h.top() {
        return Err(Error::TrivialCenterElement(c.index()));
    }
    if h.join(c, h.neg(c)) != h.top() {
        return Err(Error::NotCentral(c.index()));
    }
    let upper_carrier: Vec<ElementId> = h.upset(c).ones().map(ElementId::from_index).collect();
    let lower_carrier: Vec<ElementId> = h.downset(c).ones().map(ElementId::from_index).collect();
    let (upper, up_label) = interval_algebra(h, &upper_carrier)?;
    let (lower, low_label) = interval_algebra(h, &lower_carrier)?;
    // re-index the carriers by the factor ids
    let mut up_by_id = vec![h.bot(); upper.size()];
    for (i, &x) in upper_carrier.iter().enumerate() {
        up_by_id[up_label[i].index()] = x;
    }
    let mut low_by_id = vec![h.bot(); lower.size()];
    for (i, &x) in lower_carrier.iter().enumerate() {
        low_by_id[low_label[i].index()] = x;
    }
    let id_of = |carrier: &[ElementId], x: ElementId| {
        ElementId::from_index(carrier.iter().position(|&y| y == x).expect("image lies in the interval"))
    };
    let forward = h
        .elements()
        .map(|x| (id_of(&up_by_id, h.join(x, c)), id_of(&low_by_id, h.meet(x, c))))
        .collect();
    let d = Decomposition {
        c,
        upper,
        lower,
        upper_carrier: up_by_id,
        lower_carrier: low_by_id,
        forward,
    };
    if !d.verify(h)? {
        return Err(Error::InvariantViolated(format!(
            "decomposition at central element {} is not an isomorphism",
            c.index()
        )));
    }
    Ok(d)
}

fn noncentral(h: &HeytingAlgebra) -> ElementSet {
    let mut s = h.center();
    s.toggle_range(..);
    s
}

/// Whether `s` is a maximal element of the set of non-central elements.
pub fn is_maximal_noncentral(h: &HeytingAlgebra, s: ElementId) -> bool {
    let nc = noncentral(h);
    nc.contains(s.index()) && h.upset(s).ones().all(|y| y == s.index() || !nc.contains(y))
}

/// The least (in element order) maximal non-central element, or `None` for a
/// Boolean algebra.
pub fn maximal_noncentral(h: &HeytingAlgebra) -> Option<ElementId> {
    h.elements().find(|&x| is_maximal_noncentral(h, x))
}

/// All maximal non-central elements.
pub fn maximal_noncentrals(h: &HeytingAlgebra) -> Vec<ElementId> {
    h.elements().filter(|&x| is_maximal_noncentral(h, x)).collect()
}

fn require_maximal(h: &HeytingAlgebra, sigma: ElementId) -> Result<()> {
    h.element(sigma.index())?;
    if is_maximal_noncentral(h, sigma) {
        Ok(())
    } else {
        Err(Error::NotMaximalNonCentral(sigma.index()))
    }
}

/// The map `f(x) = σ ∧ x` if `σ ∨ x = ⊤`, else `σ ∧ ¬x`, on the center.
#[derive(Clone, Debug)]
pub struct TwoToOne {
    pub sigma: ElementId,
    /// `(x, f(x))` for each central `x`.
    pub map: Vec<(ElementId, ElementId)>,
    pub images_noncentral: bool,
    pub max_fiber: usize,
}

impl TwoToOne {
    pub fn holds(&self) -> bool {
        self.images_noncentral && self.max_fiber <= 2
    }
}

pub fn lem_two_to_one(h: &HeytingAlgebra, sigma: ElementId) -> Result<TwoToOne> {
    require_maximal(h, sigma)?;
    let nc = noncentral(h);
    let map: Vec<(ElementId, ElementId)> = h
        .center()
        .ones()
        .map(ElementId::from_index)
        .map(|x| {
            let fx = if h.join(sigma, x) == h.top() {
                h.meet(sigma, x)
            } else {
                h.meet(sigma, h.neg(x))
            };
            (x, fx)
        })
        .collect();
    let mut fiber = vec![0usize; h.size()];
    for &(_, fx) in &map {
        fiber[fx.index()] += 1;
    }
    Ok(TwoToOne {
        sigma,
        images_noncentral: map.iter().all(|&(_, fx)| nc.contains(fx.index())),
        max_fiber: fiber.into_iter().max().unwrap_or(0),
        map,
    })
}

/// Every `x` satisfies `x ≤ σ` or `x ∨ σ = ⊤`.
pub fn belt_check(h: &HeytingAlgebra, sigma: ElementId) -> Result<bool> {
    require_maximal(h, sigma)?;
    Ok(h.elements().all(|x| h.leq(x, sigma) || h.join(x, sigma) == h.top()))
}

/// For central `x`, exactly one of `x ∨ σ`, `¬x ∨ σ` is `⊤`.
pub fn central_pair_check(h: &HeytingAlgebra, sigma: ElementId) -> Result<bool> {
    require_maximal(h, sigma)?;
    Ok(h.center().ones().map(ElementId::from_index).all(|x| {
        let a = h.join(x, sigma) == h.top();
        let b = h.join(h.neg(x), sigma) == h.top();
        a != b
    }))
}

/// The double-negation locus is closed under `∧`, its induced order is a
/// Boolean lattice whose join is `¬¬(x ∨ y)`, it is the image of `¬`, and
/// `¬¬¬x = ¬x` everywhere.
pub fn glivenko_holds(h: &HeytingAlgebra) -> Result<bool> {
    let d = h.dneg();
    let elems: Vec<ElementId> = d.ones().map(ElementId::from_index).collect();
    let meet_closed = elems.iter().all(|&x| elems.iter().all(|&y| d.contains(h.meet(x, y).index())));
    let image_of_neg = h.elements().all(|x| d.contains(h.neg(x).index()))
        && elems.iter().all(|&x| h.neg(h.neg(x)) == x);
    let triple = h.elements().all(|x| h.neg(h.neg(h.neg(x))) == h.neg(x));
    let (sub, label) = interval_algebra(h, &elems)?;
    let joins = elems.iter().enumerate().all(|(i, &x)| {
        elems.iter().enumerate().all(|(j, &y)| {
            let induced = sub.join(label[i], label[j]);
            let k = label.iter().position(|&l| l == induced).expect("label is a bijection");
            elems[k] == h.neg(h.neg(h.join(x, y)))
        })
    });
    Ok(meet_closed && image_of_neg && triple && joins && sub.is_boolean())
}

/// The center contains `⊥, ⊤`, is closed under `∧, ∨, →` and is Boolean
/// under the inherited operations; and, for algebras of at most
/// `exhaustive_limit` elements, every Boolean subalgebra lies inside it.
pub fn center_is_largest_boolean(h: &HeytingAlgebra, exhaustive_limit: usize) -> bool {
    let c = h.center();
    let elems: Vec<ElementId> = c.ones().map(ElementId::from_index).collect();
    let closed = elems.iter().all(|&x| {
        elems.iter().all(|&y| {
            c.contains(h.meet(x, y).index()) && c.contains(h.join(x, y).index()) && c.contains(h.imp(x, y).index())
        })
    });
    let boolean = elems.iter().all(|&x| elems.iter().all(|&y| h.imp(x, y) == h.join(h.neg(x), y)));
    if !(closed && boolean && c.contains(h.bot().index()) && c.contains(h.top().index())) {
        return false;
    }
    if h.size() > exhaustive_limit || h.size() > 20 {
        return true;
    }
    // subsets containing ⊥ and ⊤, indexed over the inner elements
    let inner = h.size() - 2;
    (0u32..1 << inner).all(|mask| {
        let member = |x: ElementId| x == h.bot() || x == h.top() || mask & (1 << (x.index() - 1)) != 0;
        let members: Vec<ElementId> = h.elements().filter(|&x| member(x)).collect();
        let subalgebra = members.iter().all(|&x| {
            members
                .iter()
                .all(|&y| member(h.meet(x, y)) && member(h.join(x, y)) && member(h.imp(x, y)))
        });
        let is_boolean = members.iter().all(|&x| h.join(x, h.neg(x)) == h.top());
        !(subalgebra && is_boolean) || members.iter().all(|x| c.contains(x.index()))
    })
}

/// If at least half the elements are central, the center equals the
/// double-negation locus. The center is always contained in it.
pub fn big_center_is_dneg(h: &HeytingAlgebra) -> bool {
    let c = h.center();
    let d = h.dneg();
    c.is_subset(&d) && (2 * c.count_ones(..) < h.size() || c == d)
}

/// If `a ∨ b` and `a ∧ b` are central then so are `a` and `b`.
pub fn vee_wedge_center_holds(h: &HeytingAlgebra) -> bool {
    let c = h.center();
    h.elements().all(|a| {
        h.elements().all(|b| {
            !(c.contains(h.join(a, b).index()) && c.contains(h.meet(a, b).index()))
                || (c.contains(a.index()) && c.contains(b.index()))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{adjoin_chain, boolean_algebra, chain};

    #[test]
    fn boolean_square_splits_into_chains() {
        let b2 = boolean_algebra(2).unwrap();
        let d = central_decompose(&b2, ElementId(1)).unwrap();
        assert_eq!(d.upper, chain(2).unwrap());
        assert_eq!(d.lower, chain(2).unwrap());
    }

    #[test]
    fn three_chain_has_no_admissible_element() {
        let c3 = chain(3).unwrap();
        assert_eq!(central_decompose(&c3, ElementId(0)).unwrap_err(), Error::TrivialCenterElement(0));
        assert_eq!(central_decompose(&c3, ElementId(2)).unwrap_err(), Error::TrivialCenterElement(2));
        assert_eq!(central_decompose(&c3, ElementId(1)).unwrap_err(), Error::NotCentral(1));
    }

    #[test]
    fn product_factors_are_recovered() {
        let c3 = chain(3).unwrap();
        let c2 = chain(2).unwrap();
        let h = product(&c3, &c2).unwrap();
        // (⊥, ⊤) has id 0·2 + 1
        let d = central_decompose(&h, ElementId(1)).unwrap();
        let sizes = [d.upper.size(), d.lower.size()];
        assert!(sizes == [3, 2] || sizes == [2, 3]);
        assert!(d.upper.is_isomorphic(&c3).is_some() || d.upper.is_isomorphic(&c2).is_some());
    }

    #[test]
    fn maximal_noncentral_examples() {
        assert_eq!(maximal_noncentral(&boolean_algebra(3).unwrap()), None);
        let c3 = chain(3).unwrap();
        let m = maximal_noncentral(&c3).unwrap();
        assert_eq!(m, ElementId(1));
        assert_eq!(c3.neg(m), c3.bot());
        let h = adjoin_chain(&boolean_algebra(2).unwrap(), 1).unwrap();
        // the old top of B2 has id 3
        assert_eq!(maximal_noncentral(&h), Some(ElementId(3)));
        assert_eq!(h.neg(ElementId(3)), h.bot());
    }

    #[test]
    fn two_to_one_on_three_chain() {
        let c3 = chain(3).unwrap();
        let r = lem_two_to_one(&c3, ElementId(1)).unwrap();
        assert_eq!(r.map, vec![(ElementId(0), ElementId(1)), (ElementId(2), ElementId(1))]);
        assert_eq!(r.max_fiber, 2);
        assert!(r.holds());
        assert!(belt_check(&c3, ElementId(1)).unwrap());
        assert!(central_pair_check(&c3, ElementId(1)).unwrap());
        assert_eq!(lem_two_to_one(&c3, ElementId(2)).unwrap_err(), Error::NotMaximalNonCentral(2));
    }

    #[test]
    fn locus_facts_on_small_algebras() {
        let c2 = chain(2).unwrap();
        let samples = [
            chain(3).unwrap(),
            chain(5).unwrap(),
            boolean_algebra(3).unwrap(),
            adjoin_chain(&boolean_algebra(2).unwrap(), 2).unwrap(),
            product(&chain(3).unwrap(), &c2).unwrap(),
        ];
        for h in &samples {
            assert!(glivenko_holds(h).unwrap());
            assert!(center_is_largest_boolean(h, 8));
            assert!(big_center_is_dneg(h));
            assert!(vee_wedge_center_holds(h));
        }
    }
}
