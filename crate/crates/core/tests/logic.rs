use std::sync::OnceLock;

use heyting_core::classical::valid_in;
use heyting_core::construct::chain;
use heyting_core::ds::ds_equation;
use heyting_core::enumerate::{enumerate_heyting, EnumerationBudget};
use heyting_core::ipc::{ipc_entails, ipc_proves};
use heyting_core::parse::parse_term;
use heyting_core::rn::{hasse_edges, rn_classify, rn_formula, RnClass, RnName};
use heyting_core::term::{Equation, Term};
use heyting_core::witness::{classify_one_var, witness_family};
use heyting_core::HeytingAlgebra;
use proptest::prelude::*;

fn algebras() -> &'static [HeytingAlgebra] {
    static ALL: OnceLock<Vec<HeytingAlgebra>> = OnceLock::new();
    ALL.get_or_init(|| {
        enumerate_heyting(EnumerationBudget::complete(6))
            .unwrap()
            .into_iter()
            .map(|e| e.algebra)
            .collect()
    })
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        3 => Just(Term::var("p")),
        2 => Just(Term::var("q")),
        1 => Just(Term::Bot),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::imp(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn proofs_are_sound(t in term()) {
        let refuted = algebras().iter().any(|h| !valid_in(h, &t));
        if ipc_proves(&t) {
            prop_assert!(!refuted, "{} proved but refuted", t);
        }
    }
}

#[test]
fn known_theorems_and_non_theorems() {
    let proves = |s: &str| ipc_proves(&parse_term(s).unwrap());
    for s in [
        "p -> p",
        "p -> q -> p",
        "(p -> q -> r) -> (p -> q) -> p -> r",
        "~~(p | ~p)",
        "~~~p -> ~p",
        "(p | q) -> (q | p)",
        "((p -> q) -> p) -> ~~p",
        "~(p | q) -> ~p & ~q",
    ] {
        assert!(proves(s), "{s}");
    }
    for s in ["p | ~p", "~~p -> p", "((p -> q) -> p) -> p", "(p -> q) | (q -> p)", "~(p & q) -> ~p | ~q"] {
        assert!(!proves(s), "{s}");
    }
    let p = parse_term("p").unwrap();
    assert!(ipc_entails(&[parse_term("p & q").unwrap()], &p));
    assert!(!ipc_entails(&[parse_term("p | q").unwrap()], &p));
}

#[test]
fn hasse_edges_are_strict_implications() {
    for (lo, hi) in hasse_edges(6) {
        let (a, b) = (rn_formula(lo).term, rn_formula(hi).term);
        assert!(ipc_proves(&Term::imp(a.clone(), b.clone())), "{lo} -> {hi}");
        assert!(!ipc_proves(&Term::imp(b, a)), "{hi} -> {lo}");
    }
}

#[test]
fn classification_is_stable_under_equivalence() {
    for s in ["~~p -> p", "(~~p -> p) & ~~(p | ~p)", "~p | ~~p", "p | (p -> bot)"] {
        let t = parse_term(s).unwrap();
        let class = rn_classify(&t).unwrap();
        if let RnClass::Element(name) = class {
            assert!(heyting_core::ipc::ipc_equivalent(&t, &rn_formula(name).term), "{s}");
        }
    }
    assert_eq!(rn_classify(&parse_term("~p | ~~p").unwrap()).unwrap(), RnClass::Element(RnName::d(3)));
}

#[test]
fn chains_have_no_gap_for_double_negation() {
    let eq = Equation::is_top(parse_term("~~p").unwrap());
    for n in 2..=12usize {
        let ds = ds_equation(&chain(n).unwrap(), &eq).unwrap();
        assert_eq!(ds.satisfying_count, (n as u32 - 1).into());
        assert_eq!(ds.total_count, (n as u32).into());
    }
}

#[test]
fn small_witness_families() {
    for name in [RnName::i(3), RnName::d(3), RnName::i(4)] {
        let t = rn_formula(name).term;
        assert!(!classify_one_var(&t).unwrap().has_gap());
        let fam = witness_family(&t, 6).unwrap();
        assert!(fam.holds(), "{name}");
    }
    assert!(witness_family(&parse_term("p | ~p").unwrap(), 3).is_err());
}
