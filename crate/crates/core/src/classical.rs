//! Classical principles: a catalog, equation normalization, Yankov
//! substitutions and a small search over term fragments.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::HeytingAlgebra;
use crate::error::{Error, Result};
use crate::ipc::ipc_entails;
use crate::parse::parse_equation;
use crate::rn::{rn_formula_in, RnName};
use crate::term::{CompiledTerm, Equation, Term};

/// A named classical principle.
#[derive(Clone, Debug)]
pub struct ClassicalPrinciple {
    pub name: &'static str,
    pub equation: Equation,
    /// The same principle in the form `φ = ⊤`.
    pub normalized: Equation,
}

const CATALOG: &[(&str, &str)] = &[
    ("lem", "x | ~x = top"),
    ("dne", "~~x = x"),
    ("peirce", "(x -> y) -> x = x"),
    ("contrapositive", "~y -> ~x = x -> y"),
    ("lem_eliminator", "(~x -> y) -> (x -> y) -> y = top"),
    ("material_implication", "x -> y = ~x | y"),
];

/// The six standard principles, in a fixed order.
pub fn classical_principles() -> Vec<ClassicalPrinciple> {
    CATALOG
        .iter()
        .map(|&(name, src)| {
            let equation = parse_equation(src).expect("catalog entries parse");
            let normalized = normalize_system(core::slice::from_ref(&equation));
            ClassicalPrinciple {
                name,
                equation,
                normalized,
            }
        })
        .collect()
}

pub fn classical_principle(name: &str) -> Option<ClassicalPrinciple> {
    classical_principles().into_iter().find(|p| p.name == name)
}

/// A single equation `φ = ⊤` with the same solutions as the whole system:
/// `a = b` becomes `(a → b) ∧ (b → a)`, `t = ⊤` stays `t`, and the
/// resulting terms are joined by `∧`. The empty system gives `⊤ = ⊤`.
pub fn normalize_system(eqs: &[Equation]) -> Equation {
    let mut terms = eqs.iter().map(Equation::to_top_form);
    let first = terms.next().unwrap_or(Term::Top);
    Equation::is_top(terms.fold(first, Term::meet))
}

/// A variable name not occurring in `taken`: `p`, then `p'`, `p''`, …
pub fn fresh_variable(taken: &[Arc<str>]) -> Arc<str> {
    let mut name = String::from("p");
    while taken.iter().any(|v| **v == *name) {
        name.push('\'');
    }
    Arc::from(name.as_str())
}

/// A substitution of `⊤`, `p` or `⊥` for each variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YankovSubstitution {
    pub fresh: Arc<str>,
    pub assignment: BTreeMap<Arc<str>, Term>,
    /// `f` with the substitution applied.
    pub instance: Term,
}

/// Searches the `3^n` substitutions of `{⊤, p, ⊥}` into `vars` for one whose
/// instance of `f` intuitionistically implies `¬¬p → p`, with `p` fresh.
pub fn yankov_reduce(f: &Term, vars: &[Arc<str>]) -> Result<YankovSubstitution> {
    let mut taken: Vec<Arc<str>> = vars.to_vec();
    taken.extend(f.vars());
    let p = fresh_variable(&taken);
    let target = rn_formula_in(RnName::i(3), &p).term;
    let choices = [Term::Top, Term::Var(p.clone()), Term::Bot];
    let n = vars.len();
    let total = 3usize
        .checked_pow(n as u32)
        .ok_or_else(|| Error::BudgetExceeded(format!("3^{n} substitutions")))?;
    for code in 0..total {
        let mut rest = code;
        let assignment: BTreeMap<Arc<str>, Term> = vars
            .iter()
            .map(|v| {
                let c = choices[rest % 3].clone();
                rest /= 3;
                (v.clone(), c)
            })
            .collect();
        let instance = f.substitute(&assignment);
        if ipc_entails(core::slice::from_ref(&instance), &target) {
            return Ok(YankovSubstitution {
                fresh: p,
                assignment,
                instance,
            });
        }
    }
    Err(Error::NoSubstitutionFound)
}

/// Whether `φ = ⊤` holds under every assignment in `h`.
pub fn valid_in(h: &HeytingAlgebra, t: &Term) -> bool {
    let c = CompiledTerm::new(t);
    let n = c.arity();
    let mut args = vec![h.bot(); n];
    let mut regs = Vec::new();
    loop {
        if c.eval(h, &args, &mut regs) != h.top() {
            return false;
        }
        // odometer, last variable fastest
        let mut i = n;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            let next = args[i].index() + 1;
            if next < h.size() {
                args[i] = h.element(next).expect("in range");
                break;
            }
            args[i] = h.bot();
        }
    }
}

/// Whether `φ = ⊤` behaves like a classical principle on the given algebras:
/// valid in each Boolean one and invalid in each non-Boolean one.
pub fn is_classical_on(t: &Term, algebras: &[HeytingAlgebra]) -> bool {
    algebras.iter().all(|h| valid_in(h, t) == h.is_boolean())
}

/// Connectives allowed when generating terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub meet: bool,
    pub join: bool,
    pub imp: bool,
    pub bot: bool,
    pub top: bool,
}

impl Fragment {
    pub const FULL: Fragment = Fragment {
        meet: true,
        join: true,
        imp: true,
        bot: true,
        top: true,
    };

    /// Parses a connective list such as `"and,imp,bot,top"`.
    pub fn parse(s: &str) -> Option<Fragment> {
        let mut f = Fragment {
            meet: false,
            join: false,
            imp: false,
            bot: false,
            top: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "and" | "meet" | "&" | "∧" => f.meet = true,
                "or" | "join" | "|" | "∨" => f.join = true,
                "imp" | "->" | "→" => f.imp = true,
                "bot" | "⊥" => f.bot = true,
                "top" | "⊤" => f.top = true,
                _ => return None,
            }
        }
        Some(f)
    }
}

/// All terms over `vars` with at most `max_size` nodes using the fragment's
/// connectives, deduplicated structurally, smallest first.
pub fn generate_terms(vars: &[Arc<str>], fragment: Fragment, max_size: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Arc<Term>>> = vec![Vec::new(); max_size + 1];
    if max_size == 0 {
        return Vec::new();
    }
    let mut leaves: Vec<Arc<Term>> = vars.iter().map(|v| Arc::new(Term::Var(v.clone()))).collect();
    if fragment.bot {
        leaves.push(Arc::new(Term::Bot));
    }
    if fragment.top {
        leaves.push(Arc::new(Term::Top));
    }
    by_size[1] = leaves;
    for size in 3..=max_size {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for left in 1..size - 1 {
            let right = size - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    let mut push = |t: Term| {
                        if seen.insert(t.clone()) {
                            out.push(Arc::new(t));
                        }
                    };
                    if fragment.meet {
                        push(Term::Meet(a.clone(), b.clone()));
                    }
                    if fragment.join {
                        push(Term::Join(a.clone(), b.clone()));
                    }
                    if fragment.imp {
                        push(Term::Imp(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size[size] = out;
    }
    by_size.into_iter().flatten().map(|t| (*t).clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::chain;
    use crate::ipc::ipc_proves;
    use crate::parse::parse_term;
    use alloc::string::ToString;

    #[test]
    fn catalog() {
        let all = classical_principles();
        assert_eq!(all.len(), 6);
        let peirce = classical_principle("peirce").unwrap();
        assert_eq!(peirce.equation.to_string(), "(x -> y) -> x = x");
        let mi = classical_principle("material_implication").unwrap();
        assert_eq!(mi.equation.to_string(), "x -> y = ~x | y");
        assert_eq!(classical_principle("dne").unwrap().equation.to_string(), "~~x = x");
        assert_eq!(classical_principle("lem").unwrap().normalized.lhs.to_string(), "x | ~x");
        for p in &all {
            assert!(!ipc_proves(&p.normalized.lhs), "{}", p.name);
        }
    }

    #[test]
    fn normalization() {
        let eq = parse_equation("x = y").unwrap();
        assert_eq!(normalize_system(&[eq]).lhs.to_string(), "(x -> y) & (y -> x)");
        let a = parse_equation("a = top").unwrap();
        let b = parse_equation("b = top").unwrap();
        let n = normalize_system(&[a, b]);
        assert_eq!(n.to_string(), "a & b = top");
        assert_eq!(normalize_system(&[]), Equation::is_top(Term::Top));
    }

    #[test]
    fn yankov_examples() {
        let peirce = parse_term("((x -> y) -> x) -> x").unwrap();
        let vars = peirce.vars();
        let s = yankov_reduce(&peirce, &vars).unwrap();
        assert_eq!(&*s.fresh, "p");
        let target = parse_term("~~p -> p").unwrap();
        assert!(ipc_entails(core::slice::from_ref(&s.instance), &target));

        let lem = parse_term("x | ~x").unwrap();
        let s = yankov_reduce(&lem, &lem.vars()).unwrap();
        assert_eq!(s.assignment[&Arc::from("x")], Term::var("p"));

        // a clash with an existing `p` picks a primed name
        let t = parse_term("p | ~p").unwrap();
        assert_eq!(&*yankov_reduce(&t, &t.vars()).unwrap().fresh, "p'");

        // an intuitionistic theorem is not a classical principle
        let t = parse_term("x -> x").unwrap();
        assert_eq!(yankov_reduce(&t, &t.vars()), Err(Error::NoSubstitutionFound));
    }

    #[test]
    fn validity() {
        let c3 = chain(3).unwrap();
        assert!(!valid_in(&c3, &parse_term("x | ~x").unwrap()));
        assert!(valid_in(&c3, &parse_term("~~(x | ~x)").unwrap()));
        assert!(valid_in(&c3, &parse_term("(x -> y) | (y -> x)").unwrap()));
    }

    #[test]
    fn term_generation() {
        let vars = [Arc::from("x")];
        let terms = generate_terms(&vars, Fragment::parse("imp,bot").unwrap(), 3);
        let shown: Vec<_> = terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, ["x", "bot", "x -> x", "~x", "bot -> x", "~bot"]);
        assert_eq!(Fragment::parse("and,or,imp,bot,top"), Some(Fragment::FULL));
        assert_eq!(Fragment::parse("xor"), None);
    }
}
