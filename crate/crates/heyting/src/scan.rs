//! Parallel versions of the counting and scanning routines. Work runs on the
//! current rayon pool and results are merged in sequential order, so output
//! does not depend on the number of threads.

use heyting_core::ds::{
    ds_equation_with_prefix, ds_formula_with_prefix, DsResult, GapReport, DEFAULT_ASSIGNMENT_BUDGET,
};
use heyting_core::enumerate::{enumerate_heyting, EnumeratedAlgebra, EnumerationBudget};
use heyting_core::formula::Formula;
use heyting_core::term::Equation;
use heyting_core::HeytingAlgebra;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// A pool with `jobs` workers, or rayon's default when `None`.
pub fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j.max(1));
    }
    b.build().map_err(|e| Error::Usage(e.to_string()))
}

fn split<F>(h: &HeytingAlgebra, arity: usize, f: F) -> Result<DsResult>
where
    F: Fn(&[heyting_core::ElementId], u128) -> heyting_core::Result<DsResult> + Sync,
{
    if arity == 0 {
        return Ok(f(&[], DEFAULT_ASSIGNMENT_BUDGET)?);
    }
    let share = DEFAULT_ASSIGNMENT_BUDGET / h.size() as u128;
    let parts: Vec<DsResult> = h
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x| f(&[x], share))
        .collect::<heyting_core::Result<_>>()?;
    Ok(parts.into_iter().reduce(DsResult::merge).expect("algebras are non-empty"))
}

/// [`heyting_core::ds::ds_equation`], split on the value of the first
/// variable.
pub fn ds_equation(h: &HeytingAlgebra, eq: &Equation) -> Result<DsResult> {
    split(h, eq.vars().len(), |prefix, budget| ds_equation_with_prefix(h, eq, prefix, budget))
}

pub fn ds_formula(h: &HeytingAlgebra, f: &Formula) -> Result<DsResult> {
    split(h, f.free_vars().len(), |prefix, budget| ds_formula_with_prefix(h, f, prefix, budget))
}

/// Applies `f` to every enumerated algebra, in enumeration order.
pub fn map_enumeration<T, F>(algebras: &[EnumeratedAlgebra], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&EnumeratedAlgebra) -> T + Sync,
{
    algebras.par_iter().map(&f).collect()
}

/// [`heyting_core::ds::gap_scan`] with one task per algebra.
pub fn gap_scan(eq: &Equation, budget: EnumerationBudget) -> Result<GapReport> {
    let algebras = enumerate_heyting(budget)?;
    let results = map_enumeration(&algebras, |e| heyting_core::ds::ds_equation(&e.algebra, eq));
    let mut report = GapReport::new(eq.clone(), (2, budget.max_algebra_size));
    for (e, ds) in algebras.iter().zip(results) {
        report.record(e.fingerprint(), ds?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use heyting_core::construct::chain;
    use heyting_core::parse::{parse_equation, parse_formula};

    #[test]
    fn thread_count_does_not_matter() {
        let eq = parse_equation("(x -> y) | (y -> x) = top").unwrap();
        let h = chain(5).unwrap();
        let one = pool(Some(1)).unwrap().install(|| ds_equation(&h, &eq).unwrap());
        let four = pool(Some(4)).unwrap().install(|| ds_equation(&h, &eq).unwrap());
        assert_eq!(one, four);
        assert_eq!(one, heyting_core::ds::ds_equation(&h, &eq).unwrap());

        let f = parse_formula("exists y. x = ~y").unwrap();
        assert_eq!(ds_formula(&h, &f).unwrap(), heyting_core::ds::ds_formula(&h, &f).unwrap());
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let eq = parse_equation("~x | ~~x = top").unwrap();
        let budget = EnumerationBudget::complete(7);
        let par = pool(Some(3)).unwrap().install(|| gap_scan(&eq, budget).unwrap());
        assert_eq!(par, heyting_core::ds::gap_scan(&eq, budget).unwrap());
    }
}
