//! First-order formulas over equations between terms, evaluated classically
//! over the carrier of a finite algebra.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{ElementId, HeytingAlgebra};
use crate::error::{Error, Result};
use crate::term::{CompiledTerm, Term};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Arc<str>, Box<Formula>),
    Exists(Arc<str>, Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(Arc::from(v), Box::new(f))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(Arc::from(v), Box::new(f))
    }

    /// Free variables in sorted order. A formula without any is a sentence.
    pub fn free_vars(&self) -> Vec<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out.into_iter().collect()
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free(&self, bound: &mut Vec<Arc<str>>, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Eq(a, b) => {
                for v in a.vars().into_iter().chain(b.vars()) {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Tarskian satisfaction with quantifiers ranging over all elements.
    pub fn eval(&self, h: &HeytingAlgebra, env: &BTreeMap<Arc<str>, ElementId>) -> Result<bool> {
        let free = self.free_vars();
        let args = free
            .iter()
            .map(|v| env.get(v).copied().ok_or_else(|| Error::UnboundVariable(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        for &a in &args {
            h.element(a.index())?;
        }
        Ok(CompiledFormula::with_vars(self, &free)?.eval(h, &args))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0)
    }
}

// binding strength: quantifiers 0, implies 1, or 2, and 3, not and atoms 4
fn strength(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(_) | Formula::Eq(..) => 4,
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, g: &Formula, min: u8) -> fmt::Result {
    let parens = strength(g) < min;
    if parens {
        f.write_str("(")?;
    }
    match g {
        Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
        Formula::Not(a) => {
            f.write_str("not ")?;
            write_formula(f, a, 4)?;
        }
        Formula::And(a, b) => {
            write_formula(f, a, 3)?;
            f.write_str(" and ")?;
            write_formula(f, b, 4)?;
        }
        Formula::Or(a, b) => {
            write_formula(f, a, 2)?;
            f.write_str(" or ")?;
            write_formula(f, b, 3)?;
        }
        Formula::Implies(a, b) => {
            write_formula(f, a, 2)?;
            f.write_str(" implies ")?;
            write_formula(f, b, 0)?;
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            let (word, _) = quantifier(g).expect("quantifier");
            let mut vars = Vec::new();
            let mut body = g;
            while let Some((w, v)) = quantifier(body) {
                if w != word {
                    break;
                }
                vars.push(v.0.clone());
                body = v.1;
            }
            write!(f, "{word} ")?;
            for (i, v) in vars.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(v)?;
            }
            f.write_str(". ")?;
            write_formula(f, body, 0)?;
        }
    }
    if parens {
        f.write_str(")")?;
    }
    Ok(())
}

type Quantified<'a> = (&'a Arc<str>, &'a Formula);

fn quantifier(f: &Formula) -> Option<(&'static str, Quantified<'_>)> {
    match f {
        Formula::Forall(v, b) => Some(("forall", (v, b))),
        Formula::Exists(v, b) => Some(("exists", (v, b))),
        _ => None,
    }
}

#[derive(Clone, Debug)]
enum Node {
    Eq(CompiledTerm, CompiledTerm),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

/// A formula with variables resolved to slots: the free variables first, in
/// the given order, then one slot per level of quantifier nesting.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    free: Vec<Arc<str>>,
    slots: usize,
    root: Node,
}

impl CompiledFormula {
    pub fn new(f: &Formula) -> Self {
        Self::with_vars(f, &f.free_vars()).expect("own free variables cover the formula")
    }

    pub fn with_vars(f: &Formula, free: &[Arc<str>]) -> Result<Self> {
        let mut scope: Vec<Arc<str>> = free.to_vec();
        let mut slots = scope.len();
        let root = compile(f, &mut scope, &mut slots)?;
        Ok(CompiledFormula {
            free: free.to_vec(),
            slots,
            root,
        })
    }

    pub fn free_vars(&self) -> &[Arc<str>] {
        &self.free
    }

    pub fn eval(&self, h: &HeytingAlgebra, args: &[ElementId]) -> bool {
        let mut frame = Frame {
            values: Vec::with_capacity(self.slots),
            slot_of: Vec::new(),
            regs: Vec::new(),
        };
        frame.values.extend_from_slice(args);
        frame.values.resize(self.slots, h.bot());
        eval_node(&self.root, h, &mut frame)
    }
}

struct Frame {
    values: Vec<ElementId>,
    slot_of: Vec<ElementId>,
    regs: Vec<ElementId>,
}

fn compile(f: &Formula, scope: &mut Vec<Arc<str>>, slots: &mut usize) -> Result<Node> {
    Ok(match f {
        Formula::Eq(a, b) => {
            // parameters of the atom are all scope names, innermost binding wins
            let names: Vec<Arc<str>> = scope_names(scope);
            let a = CompiledTerm::with_vars(a, &names)?;
            let b = CompiledTerm::with_vars(b, &names)?;
            Node::Eq(a, b)
        }
        Formula::Not(a) => Node::Not(Box::new(compile(a, scope, slots)?)),
        Formula::And(a, b) => Node::And(Box::new(compile(a, scope, slots)?), Box::new(compile(b, scope, slots)?)),
        Formula::Or(a, b) => Node::Or(Box::new(compile(a, scope, slots)?), Box::new(compile(b, scope, slots)?)),
        Formula::Implies(a, b) => {
            Node::Implies(Box::new(compile(a, scope, slots)?), Box::new(compile(b, scope, slots)?))
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            // slots follow binding depth, so a term's parameters are exactly
            // the first `scope.len()` slots
            let slot = scope.len();
            scope.push(v.clone());
            *slots = (*slots).max(scope.len());
            let body = compile(body, scope, slots);
            scope.pop();
            let body = Box::new(body?);
            match f {
                Formula::Forall(..) => Node::Forall(slot, body),
                _ => Node::Exists(slot, body),
            }
        }
    })
}

// Scope entries are slots in order of binding; a shadowed name keeps its slot
// but becomes unreachable by renaming it to an impossible identifier.
fn scope_names(scope: &[Arc<str>]) -> Vec<Arc<str>> {
    let mut names: Vec<Arc<str>> = Vec::with_capacity(scope.len());
    for (i, v) in scope.iter().enumerate() {
        if scope[i + 1..].contains(v) {
            names.push(Arc::from(alloc::format!(" shadowed {i}").as_str()));
        } else {
            names.push(v.clone());
        }
    }
    names
}

fn eval_node(n: &Node, h: &HeytingAlgebra, frame: &mut Frame) -> bool {
    match n {
        Node::Eq(a, b) => {
            // terms take the first `arity` slots as arguments
            let k = a.arity();
            frame.slot_of.clear();
            frame.slot_of.extend_from_slice(&frame.values[..k]);
            let x = a.eval(h, &frame.slot_of, &mut frame.regs);
            let y = b.eval(h, &frame.slot_of, &mut frame.regs);
            x == y
        }
        Node::Not(a) => !eval_node(a, h, frame),
        Node::And(a, b) => eval_node(a, h, frame) && eval_node(b, h, frame),
        Node::Or(a, b) => eval_node(a, h, frame) || eval_node(b, h, frame),
        Node::Implies(a, b) => !eval_node(a, h, frame) || eval_node(b, h, frame),
        Node::Forall(slot, body) => h.elements().all(|x| {
            frame.values[*slot] = x;
            eval_node(body, h, frame)
        }),
        Node::Exists(slot, body) => h.elements().any(|x| {
            frame.values[*slot] = x;
            eval_node(body, h, frame)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{boolean_algebra, chain};

    fn count(h: &HeytingAlgebra, f: &Formula) -> usize {
        let c = CompiledFormula::new(f);
        assert_eq!(c.free_vars().len(), 1);
        h.elements().filter(|&x| c.eval(h, &[x])).count()
    }

    fn join_irreducible() -> Formula {
        let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
        Formula::forall(
            "y",
            Formula::forall(
                "z",
                Formula::implies(
                    Formula::eq(x.clone(), Term::join(y.clone(), z.clone())),
                    Formula::or(Formula::eq(x.clone(), y), Formula::eq(x, z)),
                ),
            ),
        )
    }

    #[test]
    fn universal_reduct_on_four_chain() {
        let (x, y) = (Term::var("x"), Term::var("y"));
        let f = Formula::forall("y", Formula::eq(Term::join(y.clone(), Term::imp(y, x)), Term::Top));
        let h = chain(4).unwrap();
        let c = CompiledFormula::new(&f);
        let sat: Vec<ElementId> = h.elements().filter(|&a| c.eval(&h, &[a])).collect();
        assert_eq!(sat.len(), 2);
        assert!(!sat.contains(&h.bot()));
    }

    #[test]
    fn join_irreducibility_counts() {
        // ⊥ is the empty join, but the formula only sees binary joins, so
        // atoms and ⊥ satisfy it
        for (n, expected) in [(1, 2), (2, 3), (3, 4)] {
            let h = boolean_algebra(n).unwrap();
            assert_eq!(count(&h, &join_irreducible()), expected);
        }
    }

    #[test]
    fn exists_equal_is_everything() {
        let x = Term::var("x");
        let f = Formula::exists("y", Formula::eq(Term::var("y"), x));
        let h = chain(5).unwrap();
        assert_eq!(count(&h, &f), 5);
    }

    #[test]
    fn shadowing_and_free_variables() {
        // forall x. (x = x and exists x. x = top): the inner x is a new binding
        let x = Term::var("x");
        let f = Formula::forall(
            "x",
            Formula::and(
                Formula::eq(x.clone(), x.clone()),
                Formula::exists("x", Formula::eq(x.clone(), Term::Top)),
            ),
        );
        assert!(f.is_sentence());
        let h = chain(3).unwrap();
        assert!(f.eval(&h, &BTreeMap::new()).unwrap());
        let g = Formula::and(Formula::eq(x.clone(), Term::Top), Formula::forall("x", Formula::eq(x.clone(), x)));
        assert_eq!(g.free_vars().len(), 1);
        let env: BTreeMap<Arc<str>, ElementId> = [(Arc::from("x"), h.top())].into();
        assert!(g.eval(&h, &env).unwrap());
        assert!(matches!(g.eval(&h, &BTreeMap::new()), Err(Error::UnboundVariable(_))));
    }

    #[test]
    fn display() {
        let f = join_irreducible();
        assert_eq!(f.to_string(), "forall y, z. x = y | z implies x = y or x = z");
    }
}
