//! Countermodels, no-gap witness families and the one-variable
//! classification.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::HeytingAlgebra;
use crate::construct::{adjoin_chain, boolean_algebra};
use crate::ds::{ds_equation, DsResult};
use crate::enumerate::{enumerate_heyting, EnumerationBudget};
use crate::error::{Error, Result};
use crate::parse::parse_equation;
use crate::rn::{rn_classify, rn_formula, RnClass, RnKind, RnName};
use crate::term::{Equation, Term};
use crate::{BigUint, Rational};

/// Largest algebra [`find_countermodel`] looks at by default.
pub const DEFAULT_COUNTERMODEL_SIZE: usize = 12;

fn ratio(a: u64, b: u64) -> Rational {
    Rational::new(BigUint::from(a), BigUint::from(b))
}

/// The first algebra in enumeration order (smallest first) in which
/// `t = ⊤` fails for some assignment.
pub fn find_countermodel(t: &Term) -> Result<HeytingAlgebra> {
    find_countermodel_within(t, EnumerationBudget::complete(DEFAULT_COUNTERMODEL_SIZE))
}

pub fn find_countermodel_within(t: &Term, budget: EnumerationBudget) -> Result<HeytingAlgebra> {
    let eq = Equation::is_top(t.clone());
    for e in enumerate_heyting(budget)? {
        if !ds_equation(&e.algebra, &eq)?.is_one() {
            return Ok(e.algebra);
        }
    }
    Err(Error::NotFoundWithinBudget(budget.max_algebra_size))
}

/// How the members of a witness family are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyConstruction {
    /// `H ⊕_k ⊤` with `H = H' ⊕_{|H'|} ⊤` for the smallest countermodel `H'`.
    PaddedCountermodel,
    /// `B_n ⊕ ⊤` with `n = max(1, ⌈log₂(k + 1)⌉)` for member `k`. Used for
    /// the class of `¬¬p → p`, which fails on every element adjoined above a
    /// top and so cannot be padded.
    BooleanPlusTop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub construction: FamilyConstruction,
    /// `|H'|`, the size of the smallest countermodel.
    pub countermodel_size: usize,
}

impl FamilyDescriptor {
    pub fn describe(&self) -> String {
        let h = self.countermodel_size;
        match self.construction {
            FamilyConstruction::PaddedCountermodel => format!("H' with {h} + k new tops stacked above it, |H'| = {h}"),
            FamilyConstruction::BooleanPlusTop => format!("B_n (+) top, n = max(1, ceil(log2(k+1))), |H'| = {h}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessMember {
    pub k: usize,
    pub algebra: HeytingAlgebra,
    pub ds: DsResult,
    /// `k / (2|H'| + k)`
    pub lower_bound: Rational,
}

impl WitnessMember {
    pub fn holds(&self) -> bool {
        !self.ds.is_one() && self.ds.value() >= self.lower_bound
    }
}

#[derive(Clone, Debug)]
pub struct WitnessFamily {
    pub rn: RnName,
    pub descriptor: FamilyDescriptor,
    pub countermodel: HeytingAlgebra,
    pub members: Vec<WitnessMember>,
}

impl WitnessFamily {
    /// Every member has degree below one and at least its lower bound.
    pub fn holds(&self) -> bool {
        self.members.iter().all(WitnessMember::holds)
    }
}

fn is_gap_class(name: RnName) -> bool {
    matches!(
        (name.kind, name.index),
        (RnKind::Implicative, 0 | 1) | (RnKind::Disjunctive, 1 | 2)
    )
}

fn construction_for(name: RnName) -> FamilyConstruction {
    if name == RnName::i(3) {
        FamilyConstruction::BooleanPlusTop
    } else {
        FamilyConstruction::PaddedCountermodel
    }
}

/// Builds members `k = 0..=k_max` of the no-gap family for a one-variable
/// term on the no-gap side of the classification.
pub fn witness_family(t: &Term, k_max: usize) -> Result<WitnessFamily> {
    let rn = match rn_classify(t)? {
        RnClass::Element(name) if !is_gap_class(name) => name,
        _ => return Err(Error::GapEquation(format!("{t}"))),
    };
    witness_family_with(t, rn, construction_for(rn), k_max)
}

/// Like [`witness_family`] with an explicit construction, so that either
/// recipe can be evaluated on any term.
pub fn witness_family_with(
    t: &Term,
    rn: RnName,
    construction: FamilyConstruction,
    k_max: usize,
) -> Result<WitnessFamily> {
    let countermodel = find_countermodel(t)?;
    let hp = countermodel.size();
    let eq = Equation::is_top(t.clone());
    let padded = match construction {
        FamilyConstruction::PaddedCountermodel => Some(adjoin_chain(&countermodel, hp)?),
        FamilyConstruction::BooleanPlusTop => None,
    };
    let mut members = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let algebra = match &padded {
            Some(base) => adjoin_chain(base, k)?,
            None => {
                let n = usize::BITS - k.leading_zeros();
                adjoin_chain(&boolean_algebra(n.max(1))?, 1)?
            }
        };
        let ds = ds_equation(&algebra, &eq)?;
        members.push(WitnessMember {
            k,
            algebra,
            ds,
            lower_bound: ratio(k as u64, (2 * hp + k) as u64),
        });
    }
    Ok(WitnessFamily {
        rn,
        descriptor: FamilyDescriptor {
            construction,
            countermodel_size: hp,
        },
        countermodel,
        members,
    })
}

/// Outcome of the one-variable classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassificationOutcome {
    /// Equivalent to `⊤`: holds everywhere.
    AlwaysTrue,
    /// Equivalent to `⊥`: holds nowhere.
    NeverSatisfiable,
    /// Degree is either one or at most `1 − epsilon`.
    Gap { rn: RnName, epsilon: Rational },
    NoGap { rn: RnName, family: FamilyDescriptor },
}

impl ClassificationOutcome {
    pub fn rn(&self) -> Option<RnName> {
        match self {
            ClassificationOutcome::AlwaysTrue => None,
            ClassificationOutcome::NeverSatisfiable => Some(RnName::i(0)),
            ClassificationOutcome::Gap { rn, .. } | ClassificationOutcome::NoGap { rn, .. } => Some(*rn),
        }
    }

    pub fn has_gap(&self) -> bool {
        !matches!(self, ClassificationOutcome::NoGap { .. })
    }
}

/// Classifies `t = ⊤` for a term in one variable.
pub fn classify_one_var(t: &Term) -> Result<ClassificationOutcome> {
    let rn = match rn_classify(t)? {
        RnClass::Top => return Ok(ClassificationOutcome::AlwaysTrue),
        RnClass::Element(name) => name,
    };
    Ok(match (rn.kind, rn.index) {
        (RnKind::Implicative, 0) => ClassificationOutcome::NeverSatisfiable,
        (RnKind::Implicative, 1) | (RnKind::Disjunctive, 1) => ClassificationOutcome::Gap {
            rn,
            epsilon: ratio(1, 2),
        },
        (RnKind::Disjunctive, 2) => ClassificationOutcome::Gap {
            rn,
            epsilon: ratio(1, 3),
        },
        _ => {
            let countermodel = find_countermodel(&rn_formula(rn).term)?;
            ClassificationOutcome::NoGap {
                rn,
                family: FamilyDescriptor {
                    construction: construction_for(rn),
                    countermodel_size: countermodel.size(),
                },
            }
        }
    })
}

/// Classifies an equation in one variable via its normal form `φ = ⊤`.
pub fn classify_equation(eq: &Equation) -> Result<ClassificationOutcome> {
    classify_one_var(&eq.to_top_form())
}

/// Degree of `a → b = ¬a ∨ b` on `B_n ⊕ ⊤` together with the claimed lower
/// bound and the materializer count.
#[derive(Clone, Debug)]
pub struct MaterialImplicationProfile {
    pub n: u32,
    pub algebra: HeytingAlgebra,
    pub ds: DsResult,
    /// `1 − (3/4)^(n+1)`
    pub bound: Rational,
    /// `Σ_x |M_H(x)|`
    pub materializer_sum: BigUint,
    /// `|H|² − (1 + 2ⁿ + 3ⁿ)`, clamped at zero.
    pub materializer_floor: BigUint,
}

impl MaterialImplicationProfile {
    pub fn below_one(&self) -> bool {
        !self.ds.is_one()
    }

    pub fn meets_bound(&self) -> bool {
        self.ds.value() >= self.bound
    }

    pub fn materializers_meet_floor(&self) -> bool {
        self.materializer_sum >= self.materializer_floor
    }

    /// Degree implied by the materializer floor alone:
    /// `1 − (1 + 2ⁿ + 3ⁿ)/|H|²`.
    pub fn floor_degree(&self) -> Rational {
        let sq = BigUint::from(self.algebra.size()).pow(2);
        Rational::new(self.materializer_floor.clone(), sq)
    }
}

pub fn material_implication_profile(n: u32) -> Result<MaterialImplicationProfile> {
    let algebra = adjoin_chain(&boolean_algebra(n)?, 1)?;
    let eq = parse_equation("a -> b = ~a | b").expect("fixed equation parses");
    let ds = ds_equation(&algebra, &eq)?;
    let three = BigUint::from(3u32);
    let four = BigUint::from(4u32);
    let bound = Rational::one() - Rational::new(three.pow(n + 1), four.pow(n + 1));
    let materializer_sum = algebra
        .elements()
        .map(|x| BigUint::from(algebra.materializer(x).count_ones(..)))
        .fold(BigUint::zero(), |a, b| a + b);
    let sq = BigUint::from(algebra.size()).pow(2);
    let excluded = BigUint::one() + BigUint::from(2u32).pow(n) + three.pow(n);
    let materializer_floor = if sq > excluded { sq - excluded } else { BigUint::zero() };
    Ok(MaterialImplicationProfile {
        n,
        algebra,
        ds,
        bound,
        materializer_sum,
        materializer_floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::chain;
    use crate::parse::parse_term;

    #[test]
    fn countermodels() {
        let c3 = chain(3).unwrap();
        for s in ["p | ~p", "~~p -> p"] {
            assert_eq!(find_countermodel(&parse_term(s).unwrap()).unwrap(), c3, "{s}");
        }
        // ~p -> p fails at bottom of the two-element algebra already
        assert_eq!(find_countermodel(&parse_term("~p -> p").unwrap()).unwrap(), chain(2).unwrap());
        assert_eq!(
            find_countermodel(&parse_term("p -> p").unwrap()),
            Err(Error::NotFoundWithinBudget(DEFAULT_COUNTERMODEL_SIZE))
        );
    }

    #[test]
    fn classification_examples() {
        let classify = |s: &str| classify_one_var(&parse_term(s).unwrap()).unwrap();
        assert_eq!(
            classify("p | ~p"),
            ClassificationOutcome::Gap {
                rn: RnName::d(2),
                epsilon: ratio(1, 3)
            }
        );
        assert_eq!(
            classify("~p"),
            ClassificationOutcome::Gap {
                rn: RnName::i(1),
                epsilon: ratio(1, 2)
            }
        );
        assert_eq!(classify("p -> p"), ClassificationOutcome::AlwaysTrue);
        assert_eq!(classify("p & ~p"), ClassificationOutcome::NeverSatisfiable);
        assert!(!classify("~~p -> p").has_gap());
        let eq = parse_equation("~~p = p").unwrap();
        assert_eq!(classify_equation(&eq).unwrap().rn(), Some(RnName::i(3)));
    }

    #[test]
    fn small_families() {
        for name in [RnName::i(3), RnName::d(3), RnName::i(2)] {
            let t = rn_formula(name).term;
            let fam = witness_family(&t, 6).unwrap();
            assert!(fam.holds(), "{name}");
        }
        assert!(matches!(
            witness_family(&parse_term("p | ~p").unwrap(), 3),
            Err(Error::GapEquation(_))
        ));
    }

    #[test]
    fn padding_cannot_serve_i3() {
        let t = rn_formula(RnName::i(3)).term;
        let fam = witness_family_with(&t, RnName::i(3), FamilyConstruction::PaddedCountermodel, 4).unwrap();
        assert!(fam.members.iter().all(|m| !m.ds.is_one()));
        assert!(!fam.holds());
    }

    #[test]
    fn material_implication_small() {
        let p = material_implication_profile(2).unwrap();
        assert_eq!(p.algebra.size(), 5);
        assert_eq!(p.materializer_floor, BigUint::from(11u32));
        assert!(p.materializers_meet_floor());
        assert!(p.below_one() && p.meets_bound());
        // failing pairs are a ⊆ b with a nonempty: 3² − 2² of them
        assert_eq!(p.ds.value(), ratio(25 - 5, 25));
    }

    #[test]
    fn material_implication_closed_form() {
        for n in 1..=8u32 {
            let p = material_implication_profile(n).unwrap();
            let (two, three) = (2u64.pow(n), 3u64.pow(n));
            let sq = (two + 1) * (two + 1);
            assert_eq!(p.ds.value(), ratio(sq - (three - two), sq), "n = {n}");
            // exponent n, not n + 1: (2ⁿ + 1)² exceeds 4ⁿ but not 4ⁿ⁺¹
            assert!(p.ds.value() > Rational::one() - ratio(three, 4u64.pow(n)), "n = {n}");
            assert_eq!(p.meets_bound(), n <= 4, "n = {n}");
        }
    }
}
