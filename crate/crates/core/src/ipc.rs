//! Decision procedure for intuitionistic propositional logic.
//!
//! Contraction-free sequent calculus: invertible rules are applied eagerly
//! (left conjunction and disjunction, atomic modus ponens, the rewrites of
//! implications whose antecedent is ⊥, ⊤, a conjunction or a disjunction,
//! right conjunction and implication), then the search branches over
//! right disjunction and the nested-implication rule
//!
//! ```text
//!   Γ, D → B ⊢ C → D      Γ, B ⊢ G
//!   ------------------------------
//!        Γ, (C → D) → B ⊢ G
//! ```
//!
//! Every rule decreases a well-founded formula weight, so the search
//! terminates without loop checks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::term::Term;

type Sequent = (Vec<Arc<Term>>, Arc<Term>);

#[derive(Default)]
struct Prover {
    memo: BTreeMap<Sequent, bool>,
}

/// Whether `t` is a theorem of intuitionistic propositional logic.
pub fn ipc_proves(t: &Term) -> bool {
    ipc_entails(&[], t)
}

/// Whether the hypotheses intuitionistically entail `goal`.
pub fn ipc_entails(hypotheses: &[Term], goal: &Term) -> bool {
    let ctx = hypotheses.iter().cloned().map(Arc::new).collect();
    Prover::default().prove(ctx, Arc::new(goal.clone()))
}

/// Whether `a` and `b` are intuitionistically equivalent.
pub fn ipc_equivalent(a: &Term, b: &Term) -> bool {
    ipc_entails(core::slice::from_ref(a), b) && ipc_entails(core::slice::from_ref(b), a)
}

/// Saturated context: either inconsistent or a sorted, duplicate-free list of
/// atoms, atomic implications with absent antecedent, disjunctions and
/// implications with an implication as antecedent.
fn saturate(ctx: Vec<Arc<Term>>) -> Option<Vec<Arc<Term>>> {
    let mut work = ctx;
    let mut atoms: BTreeSet<Arc<str>> = BTreeSet::new();
    let mut waiting: Vec<(Arc<str>, Arc<Term>)> = Vec::new();
    let mut rest: Vec<Arc<Term>> = Vec::new();
    while let Some(f) = work.pop() {
        match &*f {
            Term::Bot => return None,
            Term::Top => {}
            Term::Var(p) => {
                if atoms.insert(p.clone()) {
                    waiting.retain(|(q, imp)| {
                        if q == p {
                            if let Term::Imp(_, b) = &**imp {
                                work.push(b.clone());
                            }
                            false
                        } else {
                            true
                        }
                    });
                }
            }
            Term::Meet(a, b) => {
                work.push(a.clone());
                work.push(b.clone());
            }
            Term::Join(..) => rest.push(f),
            Term::Imp(a, b) => match &**a {
                Term::Var(p) => {
                    if atoms.contains(p) {
                        work.push(b.clone());
                    } else {
                        waiting.push((p.clone(), f.clone()));
                    }
                }
                Term::Bot => {}
                Term::Top => work.push(b.clone()),
                Term::Meet(c, d) => work.push(Arc::new(Term::Imp(c.clone(), Arc::new(Term::Imp(d.clone(), b.clone()))))),
                Term::Join(c, d) => {
                    work.push(Arc::new(Term::Imp(c.clone(), b.clone())));
                    work.push(Arc::new(Term::Imp(d.clone(), b.clone())));
                }
                Term::Imp(..) => rest.push(f.clone()),
            },
        }
    }
    rest.extend(atoms.into_iter().map(|p| Arc::new(Term::Var(p))));
    rest.extend(waiting.into_iter().map(|(_, imp)| imp));
    rest.sort();
    rest.dedup();
    Some(rest)
}

fn without(ctx: &[Arc<Term>], i: usize, extra: Arc<Term>) -> Vec<Arc<Term>> {
    let mut out = Vec::with_capacity(ctx.len());
    out.extend(ctx[..i].iter().cloned());
    out.extend(ctx[i + 1..].iter().cloned());
    out.push(extra);
    out
}

impl Prover {
    fn prove(&mut self, mut ctx: Vec<Arc<Term>>, goal: Arc<Term>) -> bool {
        match &*goal {
            Term::Top => return true,
            Term::Meet(c, d) => return self.prove(ctx.clone(), c.clone()) && self.prove(ctx, d.clone()),
            Term::Imp(c, d) => {
                ctx.push(c.clone());
                return self.prove(ctx, d.clone());
            }
            _ => {}
        }
        let Some(ctx) = saturate(ctx) else {
            return true;
        };
        if ctx.binary_search(&goal).is_ok() {
            return true;
        }
        let key = (ctx, goal);
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let result = self.search(&key.0, &key.1);
        self.memo.insert(key, result);
        result
    }

    fn search(&mut self, ctx: &[Arc<Term>], goal: &Arc<Term>) -> bool {
        if let Some(i) = ctx.iter().position(|f| matches!(**f, Term::Join(..))) {
            let Term::Join(c, d) = &*ctx[i] else { unreachable!() };
            return self.prove(without(ctx, i, c.clone()), goal.clone())
                && self.prove(without(ctx, i, d.clone()), goal.clone());
        }
        if let Term::Join(c, d) = &**goal {
            if self.prove(ctx.to_vec(), c.clone()) || self.prove(ctx.to_vec(), d.clone()) {
                return true;
            }
        }
        for (i, f) in ctx.iter().enumerate() {
            let Term::Imp(a, b) = &**f else { continue };
            let Term::Imp(_, d) = &**a else { continue };
            let d_to_b = Arc::new(Term::Imp(d.clone(), b.clone()));
            if self.prove(without(ctx, i, d_to_b), a.clone()) && self.prove(without(ctx, i, b.clone()), goal.clone())
            {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn proves(s: &str) -> bool {
        ipc_proves(&parse_term(s).unwrap())
    }

    #[test]
    fn theorems() {
        for s in [
            "p -> p",
            "~~(p | ~p)",
            "p -> ~~p",
            "~~~p -> ~p",
            "(p -> q) -> (~q -> ~p)",
            "(p & q) -> (q & p)",
            "(p | q) -> (q | p)",
            "((p | q) -> r) -> ((p -> r) & (q -> r))",
            "(~p -> p) -> ~~p",
            "~~p -> ~p -> p",
            "~~(~~p -> p)",
            "top",
            "bot -> p",
            "(p -> q -> r) -> (p & q) -> r",
            "~(p | q) -> ~p & ~q",
        ] {
            assert!(proves(s), "{s}");
        }
    }

    #[test]
    fn non_theorems() {
        for s in [
            "p | ~p",
            "~~p -> p",
            "((p -> q) -> p) -> p",
            "(~p -> ~q) -> q -> p",
            "~(p & q) -> ~p | ~q",
            "(p -> q) | (q -> p)",
            "~p | ~~p",
            "bot",
            "p",
            "(p -> q) -> ~p | q",
        ] {
            assert!(!proves(s), "{s}");
        }
    }

    #[test]
    fn entailment_and_equivalence() {
        let p = parse_term("p").unwrap();
        let nnp = parse_term("~~p").unwrap();
        assert!(ipc_entails(core::slice::from_ref(&p), &nnp));
        assert!(!ipc_entails(core::slice::from_ref(&nnp), &p));
        assert!(ipc_equivalent(&parse_term("~p -> p").unwrap(), &nnp));
        assert!(!ipc_equivalent(&p, &nnp));
    }
}
