//! Terms in the language ⟨∧, ∨, →, ⊥, ⊤⟩ and their evaluation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{ElementId, HeytingAlgebra};
use crate::error::{Error, Result};

/// A propositional term. Negation is not a node of its own: `¬t` is
/// `Imp(t, Bot)`. Subterms are reference counted so that recursively built
/// families can share structure.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(Arc<str>),
    Bot,
    Top,
    Meet(Arc<Term>, Arc<Term>),
    Join(Arc<Term>, Arc<Term>),
    Imp(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn meet(a: impl Into<Arc<Term>>, b: impl Into<Arc<Term>>) -> Term {
        Term::Meet(a.into(), b.into())
    }

    pub fn join(a: impl Into<Arc<Term>>, b: impl Into<Arc<Term>>) -> Term {
        Term::Join(a.into(), b.into())
    }

    pub fn imp(a: impl Into<Arc<Term>>, b: impl Into<Arc<Term>>) -> Term {
        Term::Imp(a.into(), b.into())
    }

    pub fn neg(a: impl Into<Arc<Term>>) -> Term {
        Term::Imp(a.into(), Arc::new(Term::Bot))
    }

    /// `(a → b) ∧ (b → a)`
    pub fn iff(a: impl Into<Arc<Term>>, b: impl Into<Arc<Term>>) -> Term {
        let a = a.into();
        let b = b.into();
        Term::meet(Term::Imp(a.clone(), b.clone()), Term::Imp(b, a))
    }

    /// The operand of a negation `t → ⊥`.
    pub fn as_neg(&self) -> Option<&Arc<Term>> {
        match self {
            Term::Imp(a, b) if **b == Term::Bot => Some(a),
            _ => None,
        }
    }

    /// Free variables in sorted order.
    pub fn vars(&self) -> Vec<Arc<str>> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        collect_vars(self, &mut out, &mut seen);
        out.into_iter().collect()
    }

    /// Number of nodes in the tree, counting shared subterms once per use.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Bot | Term::Top => 1,
            Term::Meet(a, b) | Term::Join(a, b) | Term::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Bot | Term::Top => 0,
            Term::Meet(a, b) | Term::Join(a, b) | Term::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Simultaneous substitution of variables; unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<Arc<str>, Term>) -> Term {
        let mut memo = BTreeMap::new();
        substitute(self, map, &mut memo)
    }

    pub fn eval(&self, h: &HeytingAlgebra, env: &BTreeMap<Arc<str>, ElementId>) -> Result<ElementId> {
        let compiled = CompiledTerm::new(self);
        let args = compiled
            .vars()
            .iter()
            .map(|v| env.get(v).copied().ok_or_else(|| Error::UnboundVariable(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        for &a in &args {
            h.element(a.index())?;
        }
        Ok(compiled.eval_once(h, &args))
    }

    /// Rendering with the Unicode connectives `¬ ∧ ∨ → ⊥ ⊤`.
    pub fn to_unicode(&self) -> String {
        let mut s = String::new();
        write_term(&mut s, self, &UNICODE).expect("writing to a String");
        s
    }
}

impl From<&str> for Term {
    fn from(name: &str) -> Term {
        Term::var(name)
    }
}

fn collect_vars(t: &Term, out: &mut BTreeSet<Arc<str>>, seen: &mut BTreeSet<*const Term>) {
    match t {
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::Bot | Term::Top => {}
        Term::Meet(a, b) | Term::Join(a, b) | Term::Imp(a, b) => {
            for c in [a, b] {
                if seen.insert(Arc::as_ptr(c)) {
                    collect_vars(c, out, seen);
                }
            }
        }
    }
}

fn substitute(t: &Term, map: &BTreeMap<Arc<str>, Term>, memo: &mut BTreeMap<*const Term, Arc<Term>>) -> Term {
    let child = |c: &Arc<Term>, memo: &mut BTreeMap<*const Term, Arc<Term>>| -> Arc<Term> {
        if let Some(done) = memo.get(&Arc::as_ptr(c)) {
            return done.clone();
        }
        let done = Arc::new(substitute(c, map, memo));
        memo.insert(Arc::as_ptr(c), done.clone());
        done
    };
    match t {
        Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Bot | Term::Top => t.clone(),
        Term::Meet(a, b) => Term::Meet(child(a, memo), child(b, memo)),
        Term::Join(a, b) => Term::Join(child(a, memo), child(b, memo)),
        Term::Imp(a, b) => Term::Imp(child(a, memo), child(b, memo)),
    }
}

struct Symbols {
    bot: &'static str,
    top: &'static str,
    not: &'static str,
    and: &'static str,
    or: &'static str,
    imp: &'static str,
}

const ASCII: Symbols = Symbols {
    bot: "bot",
    top: "top",
    not: "~",
    and: " & ",
    or: " | ",
    imp: " -> ",
};

const UNICODE: Symbols = Symbols {
    bot: "⊥",
    top: "⊤",
    not: "¬",
    and: " ∧ ",
    or: " ∨ ",
    imp: " → ",
};

// binding strength: → 1, ∨ 2, ∧ 3, ¬ and atoms 4
fn precedence(t: &Term) -> u8 {
    match t {
        Term::Var(_) | Term::Bot | Term::Top => 4,
        Term::Imp(_, b) if **b == Term::Bot => 4,
        Term::Imp(..) => 1,
        Term::Join(..) => 2,
        Term::Meet(..) => 3,
    }
}

fn write_term(f: &mut dyn fmt::Write, t: &Term, sym: &Symbols) -> fmt::Result {
    let wrapped = |f: &mut dyn fmt::Write, t: &Term, parens: bool| -> fmt::Result {
        if parens {
            f.write_char('(')?;
            write_term(f, t, sym)?;
            f.write_char(')')
        } else {
            write_term(f, t, sym)
        }
    };
    match t {
        Term::Var(v) => f.write_str(v),
        Term::Bot => f.write_str(sym.bot),
        Term::Top => f.write_str(sym.top),
        Term::Imp(a, b) if **b == Term::Bot => {
            f.write_str(sym.not)?;
            wrapped(f, a, precedence(a) < 4)
        }
        Term::Imp(a, b) => {
            wrapped(f, a, precedence(a) <= 1)?;
            f.write_str(sym.imp)?;
            wrapped(f, b, precedence(b) < 1)
        }
        Term::Join(a, b) => {
            wrapped(f, a, precedence(a) < 2)?;
            f.write_str(sym.or)?;
            wrapped(f, b, precedence(b) <= 2)
        }
        Term::Meet(a, b) => {
            wrapped(f, a, precedence(a) < 3)?;
            f.write_str(sym.and)?;
            wrapped(f, b, precedence(b) <= 3)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, &ASCII)
    }
}

/// An equation `lhs = rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    /// `t = ⊤`
    pub fn is_top(t: Term) -> Self {
        Equation { lhs: t, rhs: Term::Top }
    }

    /// Free variables of both sides, sorted.
    pub fn vars(&self) -> Vec<Arc<str>> {
        let mut v: BTreeSet<Arc<str>> = self.lhs.vars().into_iter().collect();
        v.extend(self.rhs.vars());
        v.into_iter().collect()
    }

    /// The single term `φ` with `lhs = rhs ⟺ φ = ⊤`: `φ` itself when the
    /// right-hand side is already `⊤`, otherwise `(lhs → rhs) ∧ (rhs → lhs)`.
    pub fn to_top_form(&self) -> Term {
        match (&self.lhs, &self.rhs) {
            (t, Term::Top) | (Term::Top, t) => t.clone(),
            (a, b) => Term::iff(a.clone(), b.clone()),
        }
    }

    pub fn holds(&self, h: &HeytingAlgebra, env: &BTreeMap<Arc<str>, ElementId>) -> Result<bool> {
        Ok(self.lhs.eval(h, env)? == self.rhs.eval(h, env)?)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Arg(usize),
    Bot,
    Top,
    Meet(usize, usize),
    Join(usize, usize),
    Imp(usize, usize),
}

/// A term flattened into straight-line code over registers, with shared
/// subterms computed once. Arguments are passed positionally in the order of
/// [`CompiledTerm::vars`].
#[derive(Clone, Debug)]
pub struct CompiledTerm {
    vars: Vec<Arc<str>>,
    ops: Vec<Op>,
}

impl CompiledTerm {
    /// Compiles with the term's own free variables (sorted) as parameters.
    pub fn new(t: &Term) -> Self {
        Self::with_vars(t, &t.vars()).expect("own variables cover the term")
    }

    /// Compiles with an explicit parameter list, which may contain variables
    /// not occurring in `t`.
    pub fn with_vars(t: &Term, vars: &[Arc<str>]) -> Result<Self> {
        let mut c = CompiledTerm {
            vars: vars.to_vec(),
            ops: Vec::new(),
        };
        let mut memo = BTreeMap::new();
        c.emit(t, &mut memo)?;
        Ok(c)
    }

    fn emit(&mut self, t: &Term, memo: &mut BTreeMap<*const Term, usize>) -> Result<usize> {
        let mut child = |c: &Arc<Term>, this: &mut Self| -> Result<usize> {
            if let Some(&r) = memo.get(&Arc::as_ptr(c)) {
                return Ok(r);
            }
            let r = this.emit(c, memo)?;
            memo.insert(Arc::as_ptr(c), r);
            Ok(r)
        };
        let op = match t {
            Term::Var(v) => Op::Arg(
                self.vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnboundVariable(v.to_string()))?,
            ),
            Term::Bot => Op::Bot,
            Term::Top => Op::Top,
            Term::Meet(a, b) => Op::Meet(child(a, self)?, child(b, self)?),
            Term::Join(a, b) => Op::Join(child(a, self)?, child(b, self)?),
            Term::Imp(a, b) => Op::Imp(child(a, self)?, child(b, self)?),
        };
        self.ops.push(op);
        Ok(self.ops.len() - 1)
    }

    pub fn vars(&self) -> &[Arc<str>] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Evaluates using `regs` as scratch space. `args` must be valid
    /// elements of `h`, one per parameter.
    pub fn eval(&self, h: &HeytingAlgebra, args: &[ElementId], regs: &mut Vec<ElementId>) -> ElementId {
        debug_assert_eq!(args.len(), self.vars.len());
        regs.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Arg(i) => args[i],
                Op::Bot => h.bot(),
                Op::Top => h.top(),
                Op::Meet(a, b) => h.meet(regs[a], regs[b]),
                Op::Join(a, b) => h.join(regs[a], regs[b]),
                Op::Imp(a, b) => h.imp(regs[a], regs[b]),
            };
            regs.push(v);
        }
        *regs.last().expect("a compiled term has at least one op")
    }

    pub fn eval_once(&self, h: &HeytingAlgebra, args: &[ElementId]) -> ElementId {
        let mut regs = Vec::with_capacity(self.ops.len());
        self.eval(h, args, &mut regs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::chain;

    fn env(pairs: &[(&str, usize)]) -> BTreeMap<Arc<str>, ElementId> {
        pairs.iter().map(|&(v, i)| (Arc::from(v), ElementId(i as u16))).collect()
    }

    #[test]
    fn constants_and_unbound() {
        let h = chain(3).unwrap();
        assert_eq!(Term::Top.eval(&h, &env(&[])).unwrap(), h.top());
        assert_eq!(
            Term::var("q").eval(&h, &env(&[("p", 1)])),
            Err(Error::UnboundVariable("q".into()))
        );
    }

    #[test]
    fn three_chain_middle() {
        let h = chain(3).unwrap();
        let p = Term::var("p");
        let lem = Term::join(p.clone(), Term::neg(p.clone()));
        let nn = Term::neg(Term::neg(p));
        assert_eq!(lem.eval(&h, &env(&[("p", 1)])).unwrap(), ElementId(1));
        assert_eq!(nn.eval(&h, &env(&[("p", 1)])).unwrap(), h.top());
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        let (a, b, c) = (Term::var("a"), Term::var("b"), Term::var("c"));
        let t = Term::imp(a.clone(), Term::imp(b.clone(), c.clone()));
        assert_eq!(t.to_string(), "a -> b -> c");
        let t = Term::imp(Term::imp(a.clone(), b.clone()), c.clone());
        assert_eq!(t.to_string(), "(a -> b) -> c");
        let t = Term::meet(Term::join(a.clone(), b.clone()), Term::neg(c.clone()));
        assert_eq!(t.to_string(), "(a | b) & ~c");
        let t = Term::join(a.clone(), Term::join(b.clone(), c.clone()));
        assert_eq!(t.to_string(), "a | (b | c)");
        let t = Term::neg(Term::neg(Term::meet(a, Term::Bot)));
        assert_eq!(t.to_string(), "~~(a & bot)");
        assert_eq!(t.to_unicode(), "¬¬(a ∧ ⊥)");
    }

    #[test]
    fn shared_subterms_compile_once() {
        let mut t = Term::var("p");
        for _ in 0..40 {
            let s = Arc::new(t);
            t = Term::Join(s.clone(), s);
        }
        let c = CompiledTerm::new(&t);
        assert_eq!(c.ops.len(), 41);
        let h = chain(4).unwrap();
        assert_eq!(c.eval_once(&h, &[ElementId(2)]), ElementId(2));
    }

    #[test]
    fn substitution() {
        let t = Term::imp(Term::var("x"), Term::var("y"));
        let map: BTreeMap<Arc<str>, Term> =
            [(Arc::from("x"), Term::neg(Term::var("p"))), (Arc::from("y"), Term::Bot)].into();
        assert_eq!(t.substitute(&map).to_string(), "~~p");
        assert_eq!(t.substitute(&map), Term::neg(Term::neg(Term::var("p"))));
    }

    #[test]
    fn top_form() {
        let (x, y) = (Term::var("x"), Term::var("y"));
        let eq = Equation::new(x.clone(), y.clone());
        assert_eq!(eq.to_top_form().to_string(), "(x -> y) & (y -> x)");
        assert_eq!(Equation::is_top(x.clone()).to_top_form(), x);
        assert_eq!(eq.vars().len(), 2);
    }
}
