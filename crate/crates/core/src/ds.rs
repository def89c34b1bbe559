//! Exact degrees of satisfiability and gap scans.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{ElementId, HeytingAlgebra};
use crate::enumerate::{enumerate_heyting, EnumerationBudget};
use crate::error::{Error, Result};
use crate::formula::{CompiledFormula, Formula};
use crate::term::{CompiledTerm, Equation};
use crate::{BigUint, Rational};

/// Number of failing assignments kept in a [`DsResult`].
pub const FAILING_SAMPLE_CAP: usize = 16;

/// Default cap on the number of assignments (times quantifier work for
/// formulas) a single count may visit.
pub const DEFAULT_ASSIGNMENT_BUDGET: u128 = 1 << 32;

/// Exact count of satisfying assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsResult {
    pub vars: Vec<Arc<str>>,
    pub satisfying_count: BigUint,
    pub total_count: BigUint,
    /// The first failing assignments in row-major order, at most
    /// [`FAILING_SAMPLE_CAP`] of them.
    pub failing_sample: Vec<Vec<ElementId>>,
}

impl DsResult {
    fn empty(vars: Vec<Arc<str>>) -> Self {
        DsResult {
            vars,
            satisfying_count: BigUint::zero(),
            total_count: BigUint::zero(),
            failing_sample: Vec::new(),
        }
    }

    /// The degree in lowest terms.
    pub fn value(&self) -> Rational {
        Rational::new(self.satisfying_count.clone(), self.total_count.clone())
    }

    pub fn is_one(&self) -> bool {
        self.satisfying_count == self.total_count
    }

    /// Combines counts over disjoint parts of the assignment space. Merging
    /// the parts in row-major order reproduces the sequential result.
    pub fn merge(mut self, other: DsResult) -> DsResult {
        self.satisfying_count += other.satisfying_count;
        self.total_count += other.total_count;
        let room = FAILING_SAMPLE_CAP - self.failing_sample.len();
        self.failing_sample.extend(other.failing_sample.into_iter().take(room));
        self
    }
}

fn check_budget(size: usize, arity: usize, budget: u128) -> Result<()> {
    let total = (size as u128).checked_pow(arity as u32);
    match total {
        Some(t) if t <= budget => Ok(()),
        _ => Err(Error::BudgetExceeded(format!(
            "{size}^{arity} assignments exceed the budget of {budget}"
        ))),
    }
}

/// Counts assignments extending `prefix` (row-major, last variable fastest)
/// that satisfy `pred`.
fn count(
    h: &HeytingAlgebra,
    vars: Vec<Arc<str>>,
    prefix: &[ElementId],
    mut pred: impl FnMut(&[ElementId]) -> bool,
) -> DsResult {
    let n = vars.len();
    let mut out = DsResult::empty(vars);
    let mut args = vec![h.bot(); n];
    args[..prefix.len()].copy_from_slice(prefix);
    let free = prefix.len();
    let mut sat: u64 = 0;
    let mut total: u64 = 0;
    loop {
        total += 1;
        if pred(&args) {
            sat += 1;
        } else if out.failing_sample.len() < FAILING_SAMPLE_CAP {
            out.failing_sample.push(args.clone());
        }
        let mut i = n;
        loop {
            if i == free {
                out.satisfying_count = BigUint::from(sat);
                out.total_count = BigUint::from(total);
                return out;
            }
            i -= 1;
            let next = args[i].index() + 1;
            if next < h.size() {
                args[i] = ElementId(next as u16);
                break;
            }
            args[i] = h.bot();
        }
    }
}

/// Degree of satisfiability of an equation, by full enumeration.
pub fn ds_equation(h: &HeytingAlgebra, eq: &Equation) -> Result<DsResult> {
    ds_equation_with_prefix(h, eq, &[], DEFAULT_ASSIGNMENT_BUDGET)
}

/// Counts only the assignments whose leading variables (in sorted order)
/// take the values in `prefix`. Used to split work across threads.
pub fn ds_equation_with_prefix(
    h: &HeytingAlgebra,
    eq: &Equation,
    prefix: &[ElementId],
    budget: u128,
) -> Result<DsResult> {
    let vars = eq.vars();
    check_prefix(h, &vars, prefix)?;
    check_budget(h.size(), vars.len() - prefix.len(), budget)?;
    let lhs = CompiledTerm::with_vars(&eq.lhs, &vars)?;
    let rhs = CompiledTerm::with_vars(&eq.rhs, &vars)?;
    let mut regs = Vec::new();
    Ok(count(h, vars, prefix, |args| {
        lhs.eval(h, args, &mut regs) == rhs.eval(h, args, &mut regs)
    }))
}

fn check_prefix(h: &HeytingAlgebra, vars: &[Arc<str>], prefix: &[ElementId]) -> Result<()> {
    if prefix.len() > vars.len() {
        return Err(Error::BudgetExceeded(format!(
            "prefix of length {} for {} variables",
            prefix.len(),
            vars.len()
        )));
    }
    for &x in prefix {
        h.element(x.index())?;
    }
    Ok(())
}

/// Degree of satisfiability of a first-order formula over its free
/// variables, with quantifiers evaluated over the whole carrier.
pub fn ds_formula(h: &HeytingAlgebra, f: &Formula) -> Result<DsResult> {
    ds_formula_with_prefix(h, f, &[], DEFAULT_ASSIGNMENT_BUDGET)
}

pub fn ds_formula_with_prefix(h: &HeytingAlgebra, f: &Formula, prefix: &[ElementId], budget: u128) -> Result<DsResult> {
    let vars = f.free_vars();
    check_prefix(h, &vars, prefix)?;
    check_budget(h.size(), vars.len() - prefix.len() + quantifier_count(f), budget)?;
    let c = CompiledFormula::with_vars(f, &vars)?;
    Ok(count(h, vars, prefix, |args| c.eval(h, args)))
}

fn quantifier_count(f: &Formula) -> usize {
    match f {
        Formula::Eq(..) => 0,
        Formula::Not(a) => quantifier_count(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => quantifier_count(a) + quantifier_count(b),
        Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + quantifier_count(a),
    }
}

/// All algebras of a scan with degree below one, and their supremum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub equation: Equation,
    pub scanned_sizes: (usize, usize),
    pub algebras_scanned: usize,
    /// `(fingerprint, result)` in scan order.
    pub below_one: Vec<(String, DsResult)>,
    pub sup_below_one: Option<Rational>,
}

impl GapReport {
    pub fn new(equation: Equation, scanned_sizes: (usize, usize)) -> Self {
        GapReport {
            equation,
            scanned_sizes,
            algebras_scanned: 0,
            below_one: Vec::new(),
            sup_below_one: None,
        }
    }

    pub fn record(&mut self, fingerprint: String, ds: DsResult) {
        self.algebras_scanned += 1;
        if ds.is_one() {
            return;
        }
        let v = ds.value();
        if self.sup_below_one.as_ref().is_none_or(|s| v > *s) {
            self.sup_below_one = Some(v);
        }
        self.below_one.push((fingerprint, ds));
    }

    /// Concatenates two reports over the same equation; associative.
    pub fn merge(mut self, other: GapReport) -> GapReport {
        self.algebras_scanned += other.algebras_scanned;
        self.scanned_sizes = (
            self.scanned_sizes.0.min(other.scanned_sizes.0),
            self.scanned_sizes.1.max(other.scanned_sizes.1),
        );
        self.sup_below_one = match (self.sup_below_one, other.sup_below_one) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.below_one.extend(other.below_one);
        self
    }

    /// Empirical gap `1 − sup`, or `None` if every scanned algebra satisfies
    /// the equation everywhere.
    pub fn gap(&self) -> Option<Rational> {
        self.sup_below_one.as_ref().map(|s| Rational::one() - s.clone())
    }
}

/// Runs [`ds_equation`] over the enumeration.
pub fn gap_scan(eq: &Equation, budget: EnumerationBudget) -> Result<GapReport> {
    let mut report = GapReport::new(eq.clone(), (2, budget.max_algebra_size));
    for e in enumerate_heyting(budget)? {
        let ds = ds_equation(&e.algebra, eq)?;
        report.record(e.fingerprint(), ds);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{adjoin_chain, boolean_algebra, chain};
    use crate::parse::{parse_equation, parse_formula};

    fn ratio(a: u64, b: u64) -> Rational {
        Rational::new(BigUint::from(a), BigUint::from(b))
    }

    #[test]
    fn lem_on_three_chain() {
        let eq = parse_equation("x | ~x = top").unwrap();
        let ds = ds_equation(&chain(3).unwrap(), &eq).unwrap();
        assert_eq!(ds.value(), ratio(2, 3));
        assert_eq!(ds.failing_sample, vec![vec![ElementId(1)]]);
    }

    #[test]
    fn double_negation_on_boolean_plus_top() {
        let eq = parse_equation("~~x = x").unwrap();
        for n in 1..=4u32 {
            let h = adjoin_chain(&boolean_algebra(n).unwrap(), 1).unwrap();
            let m = 1u64 << n;
            assert_eq!(ds_equation(&h, &eq).unwrap().value(), ratio(m, m + 1));
        }
    }

    #[test]
    fn formulas() {
        let f = parse_formula("forall y. y | (y -> x) = top").unwrap();
        assert_eq!(ds_formula(&chain(4).unwrap(), &f).unwrap().value(), ratio(1, 2));
        let s = parse_formula("forall y. y = y").unwrap();
        let r = ds_formula(&chain(3).unwrap(), &s).unwrap();
        assert_eq!(r.value(), ratio(1, 1));
        assert_eq!(r.total_count, BigUint::from(1u32));
    }

    #[test]
    fn prefixes_merge_to_the_whole() {
        let eq = parse_equation("(x -> y) -> x = x").unwrap();
        let h = chain(4).unwrap();
        let whole = ds_equation(&h, &eq).unwrap();
        let parts = h
            .elements()
            .map(|x| ds_equation_with_prefix(&h, &eq, &[x], DEFAULT_ASSIGNMENT_BUDGET).unwrap())
            .reduce(DsResult::merge)
            .unwrap();
        assert_eq!(parts, whole);
    }

    #[test]
    fn budget() {
        let eq = parse_equation("a & b & c & d & e = top").unwrap();
        let h = chain(5).unwrap();
        assert!(ds_equation_with_prefix(&h, &eq, &[], 100).is_err());
        assert!(ds_equation_with_prefix(&h, &eq, &[], 3125).is_ok());
    }

    #[test]
    fn small_lem_scan() {
        let eq = parse_equation("x | ~x = top").unwrap();
        let report = gap_scan(&eq, EnumerationBudget::complete(6)).unwrap();
        assert_eq!(report.sup_below_one, Some(ratio(2, 3)));
        assert_eq!(report.gap(), Some(ratio(1, 3)));
        assert_eq!(report.algebras_scanned, 1 + 1 + 2 + 3 + 5);
    }
}
