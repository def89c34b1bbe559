//! The Rieger–Nishimura formulas and classification of one-variable terms.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{ElementId, HeytingAlgebra};
use crate::construct::downset_lattice_with_sets;
use crate::error::{Error, Result};
use crate::ipc::ipc_equivalent;
use crate::ipc::ipc_proves;
use crate::term::{CompiledTerm, Term};

/// Default bound on the index searched by [`rn_classify`].
pub const DEFAULT_RN_CAP: u32 = 32;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RnKind {
    Disjunctive,
    Implicative,
}

/// Name of a Rieger–Nishimura formula, `d<n>` or `i<n>`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RnName {
    pub kind: RnKind,
    pub index: u32,
}

impl RnName {
    pub fn d(index: u32) -> Self {
        RnName {
            kind: RnKind::Disjunctive,
            index,
        }
    }

    pub fn i(index: u32) -> Self {
        RnName {
            kind: RnKind::Implicative,
            index,
        }
    }

    /// Parses `d3`, `i12` and so on.
    pub fn parse(s: &str) -> Option<Self> {
        let (kind, digits) = match s.split_at_checked(1)? {
            ("d", rest) => (RnKind::Disjunctive, rest),
            ("i", rest) => (RnKind::Implicative, rest),
            _ => return None,
        };
        Some(RnName {
            kind,
            index: digits.parse().ok()?,
        })
    }
}

impl fmt::Display for RnName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            RnKind::Disjunctive => 'd',
            RnKind::Implicative => 'i',
        };
        write!(f, "{k}{}", self.index)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RnFormula {
    pub name: RnName,
    pub term: Term,
}

/// `(i_n, d_n)` in the variable `var`, sharing subterms.
pub fn rn_pair(n: u32, var: &str) -> (Term, Term) {
    let mut i = Arc::new(Term::Bot);
    let mut d = i.clone();
    for k in 0..n {
        let (ni, nd) = if k == 0 {
            let p = Arc::new(Term::var(var));
            (Arc::new(Term::neg(p.clone())), p)
        } else {
            (Arc::new(Term::Imp(i.clone(), d.clone())), Arc::new(Term::Join(i.clone(), d.clone())))
        };
        i = ni;
        d = nd;
    }
    ((*i).clone(), (*d).clone())
}

/// The Rieger–Nishimura formula `name` in the variable `p`.
pub fn rn_formula(name: RnName) -> RnFormula {
    rn_formula_in(name, "p")
}

pub fn rn_formula_in(name: RnName, var: &str) -> RnFormula {
    let (i, d) = rn_pair(name.index, var);
    let term = match name.kind {
        RnKind::Disjunctive => d,
        RnKind::Implicative => i,
    };
    RnFormula { name, term }
}

/// Covering pairs `(lower, upper)` of the lattice restricted to indices up to
/// `max_index`: `⊥ < i1`, `⊥ < d1`, and for `n ≥ 1`
/// `d_n < d_{n+1}`, `i_n < d_{n+1}`, `d_n < i_{n+1}`.
pub fn hasse_edges(max_index: u32) -> Vec<(RnName, RnName)> {
    let mut out = Vec::new();
    if max_index >= 1 {
        out.push((RnName::i(0), RnName::i(1)));
        out.push((RnName::i(0), RnName::d(1)));
    }
    for n in 1..max_index {
        out.push((RnName::d(n), RnName::d(n + 1)));
        out.push((RnName::i(n), RnName::d(n + 1)));
        out.push((RnName::d(n), RnName::i(n + 1)));
    }
    out
}

/// Result of classifying a one-variable term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RnClass {
    Top,
    /// `⊥` is reported as `i0`.
    Element(RnName),
}

impl fmt::Display for RnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RnClass::Top => f.write_str("top"),
            RnClass::Element(n) => n.fmt(f),
        }
    }
}

/// Finite Kripke model separating the Rieger–Nishimura formulas: points
/// `w_0, w_1, …` where `w_j` lies above `w_i` exactly when `j ≤ i − 2`, and
/// `p` holds at `w_0` only. Returns the algebra of up-sets and the value of
/// `p`. Formulas up to index `points − 2` get pairwise distinct values.
pub(crate) fn ladder(points: usize) -> (HeytingAlgebra, ElementId) {
    // up-sets of the ladder are the downsets of its dual
    let strict_down: Vec<u64> = (0..points as u64)
        .map(|i| if i >= 2 { (1u64 << (i - 1)) - 1 } else { 0 })
        .collect();
    let (h, sets) = downset_lattice_with_sets(&strict_down).expect("ladder lattice is small");
    let p = sets.iter().position(|&s| s == 1).expect("{w_0} is an up-set");
    (h, ElementId::from_index(p))
}

/// Classifies a term in at most one variable up to intuitionistic
/// equivalence, searching indices up to [`DEFAULT_RN_CAP`].
pub fn rn_classify(t: &Term) -> Result<RnClass> {
    rn_classify_with_cap(t, DEFAULT_RN_CAP)
}

pub fn rn_classify_with_cap(t: &Term, cap: u32) -> Result<RnClass> {
    let vars = t.vars();
    if vars.len() > 1 {
        return Err(Error::MultiVariable(vars.len()));
    }
    let var: String = vars.first().map_or_else(|| String::from("p"), |v| String::from(&**v));
    if ipc_proves(t) {
        return Ok(RnClass::Top);
    }
    // Candidates are screened on the ladder model; only a semantic match is
    // confirmed by proof search.
    let (h, p) = ladder(cap as usize + 3);
    let value = |u: &Term| CompiledTerm::with_vars(u, &[Arc::from(var.as_str())]).map(|c| c.eval_once(&h, &[p]));
    let target = value(t)?;
    let (mut i, mut d) = (Arc::new(Term::Bot), Arc::new(Term::Bot));
    for n in 0..=cap {
        if n == 1 {
            let pv = Arc::new(Term::var(&var));
            i = Arc::new(Term::neg(pv.clone()));
            d = pv;
        } else if n > 1 {
            let ni = Arc::new(Term::Imp(i.clone(), d.clone()));
            d = Arc::new(Term::Join(i.clone(), d.clone()));
            i = ni;
        }
        let mut candidates = Vec::with_capacity(2);
        candidates.push((RnName::i(n), &i));
        if n > 0 {
            candidates.push((RnName::d(n), &d));
        }
        for (name, c) in candidates {
            if value(c)? == target && ipc_equivalent(t, c) {
                return Ok(RnClass::Element(name));
            }
        }
    }
    Err(Error::ClassificationBudgetExceeded(cap))
}

/// Human-readable rendering of the formula, for reports.
pub fn describe(name: RnName) -> String {
    format!("{name} = {}", rn_formula(name).term)
}
