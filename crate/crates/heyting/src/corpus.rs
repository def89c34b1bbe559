//! Seeded random terms.

use heyting_core::term::Term;
use rand::Rng;

/// A random term of depth at most `depth` over `vars`. Leaves are variables
/// three times in four, otherwise `⊥` or `⊤`; inner nodes pick `∧`, `∨`, `→`
/// or `¬` uniformly.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, vars: &[&str], depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..8) {
            0 => Term::Bot,
            1 => Term::Top,
            _ => Term::var(vars[rng.gen_range(0..vars.len())]),
        };
    }
    let a = random_term(rng, vars, depth - 1);
    match rng.gen_range(0..4) {
        0 => Term::meet(a, random_term(rng, vars, depth - 1)),
        1 => Term::join(a, random_term(rng, vars, depth - 1)),
        2 => Term::imp(a, random_term(rng, vars, depth - 1)),
        _ => Term::neg(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded() {
        let a: Vec<Term> = {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            (0..10).map(|_| random_term(&mut rng, &["p", "q"], 4)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b: Vec<Term> = (0..10).map(|_| random_term(&mut rng, &["p", "q"], 4)).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|t| t.depth() <= 4));
    }
}
