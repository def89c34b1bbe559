//! Black-box Heyting algebras: a hidden finite algebra reachable only through
//! sampling, operation and equality oracles on opaque bitstrings.
//!
//! Each element `e` has `redundancy` encodings, the images of
//! `e · redundancy + nonce` under a keyed Feistel permutation of `ℓ`-bit
//! strings. Sampling is uniform over the algebra, not over the bitstrings.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ElementId, HeytingAlgebra};
use crate::error::{Error, Result};

/// Encodings per element.
pub const DEFAULT_REDUNDANCY: u64 = 16;
/// Samples drawn by [`monte_carlo_boolean_test`] unless asked otherwise.
pub const DEFAULT_ROUNDS: u32 = 2;
pub const MAX_ELL: u32 = 62;

const FEISTEL_ROUNDS: usize = 8;

/// An opaque `ℓ`-bit string. Only oracles create these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cryptoelement(u64);

impl Cryptoelement {
    pub fn bits(self) -> u64 {
        self.0
    }
}

/// The oracle interface of a black-box Heyting algebra.
pub trait HeytingOracle {
    /// Bit length of cryptoelements.
    fn ell(&self) -> u32;
    /// Draws an encoding of a uniformly random element. Equal counters give
    /// equal draws.
    fn sample(&self, counter: u64) -> Cryptoelement;
    fn meet(&self, x: Cryptoelement, y: Cryptoelement) -> Cryptoelement;
    fn join(&self, x: Cryptoelement, y: Cryptoelement) -> Cryptoelement;
    fn imp(&self, x: Cryptoelement, y: Cryptoelement) -> Cryptoelement;
    /// Some encoding of the bottom element.
    fn bot(&self) -> Cryptoelement;
    /// Whether the two strings encode the same element.
    fn eq(&self, x: Cryptoelement, y: Cryptoelement) -> bool;
}

/// A finite algebra behind [`HeytingOracle`].
#[derive(Clone, Debug)]
pub struct BlackBoxHandle {
    algebra: HeytingAlgebra,
    ell: u32,
    redundancy: u64,
    keys: [u64; FEISTEL_ROUNDS],
    nonce_key: u64,
    sampler: ChaCha8Rng,
}

impl BlackBoxHandle {
    pub fn wrap(algebra: HeytingAlgebra, ell: u32, seed: u64) -> Result<Self> {
        Self::with_redundancy(algebra, ell, seed, DEFAULT_REDUNDANCY)
    }

    pub fn with_redundancy(algebra: HeytingAlgebra, ell: u32, seed: u64, redundancy: u64) -> Result<Self> {
        if ell > MAX_ELL {
            return Err(Error::EllTooLarge(ell));
        }
        let needed = (algebra.size() as u64) * redundancy.max(1);
        if ell == 0 || (1u64 << ell) < needed {
            return Err(Error::EllTooSmall { ell, needed });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let keys = core::array::from_fn(|_| rng.gen());
        let nonce_key = rng.gen();
        let sampler = ChaCha8Rng::seed_from_u64(rng.gen());
        Ok(BlackBoxHandle {
            algebra,
            ell,
            redundancy: redundancy.max(1),
            keys,
            nonce_key,
            sampler,
        })
    }

    /// Smallest `ℓ` accepted for an algebra of this size at the default
    /// redundancy.
    pub fn min_ell(size: usize) -> u32 {
        let needed = (size as u64) * DEFAULT_REDUNDANCY;
        (64 - (needed - 1).leading_zeros()).max(1)
    }

    pub fn redundancy(&self) -> u64 {
        self.redundancy
    }

    fn half_bits(&self) -> u32 {
        self.ell.div_ceil(2)
    }

    fn round(&self, key: u64, half: u64) -> u64 {
        mix(key ^ half) & mask(self.half_bits())
    }

    fn feistel(&self, v: u64) -> u64 {
        let h = self.half_bits();
        let (mut l, mut r) = (v >> h, v & mask(h));
        for &k in &self.keys {
            (l, r) = (r, l ^ self.round(k, r));
        }
        (l << h) | r
    }

    fn feistel_inverse(&self, c: u64) -> u64 {
        let h = self.half_bits();
        let (mut l, mut r) = (c >> h, c & mask(h));
        for &k in self.keys.iter().rev() {
            (l, r) = (r ^ self.round(k, l), l);
        }
        (l << h) | r
    }

    // cycle-walk the permutation of 2·⌈ℓ/2⌉ bits down to ℓ bits
    fn permute(&self, v: u64) -> u64 {
        let mut c = self.feistel(v);
        while c >> self.ell != 0 {
            c = self.feistel(c);
        }
        c
    }

    fn unpermute(&self, c: u64) -> u64 {
        let mut v = self.feistel_inverse(c);
        while v >> self.ell != 0 {
            v = self.feistel_inverse(v);
        }
        v
    }

    fn encrypt(&self, e: ElementId, nonce: u64) -> Cryptoelement {
        Cryptoelement(self.permute(e.index() as u64 * self.redundancy + nonce % self.redundancy))
    }

    fn decrypt(&self, x: Cryptoelement) -> ElementId {
        let index = self.unpermute(x.0) / self.redundancy;
        ElementId(index as u16)
    }

    fn nonce(&self, tag: u64, x: Cryptoelement, y: Cryptoelement) -> u64 {
        mix(mix(self.nonce_key ^ tag) ^ x.0).wrapping_add(mix(y.0))
    }

    /// Decryption, for tests.
    #[cfg(feature = "trapdoor")]
    pub fn trapdoor_decrypt(&self, x: Cryptoelement) -> ElementId {
        self.decrypt(x)
    }

    /// Encryption with an explicit nonce, for tests.
    #[cfg(feature = "trapdoor")]
    pub fn trapdoor_encrypt(&self, e: ElementId, nonce: u64) -> Cryptoelement {
        self.encrypt(e, nonce)
    }

    #[cfg(feature = "trapdoor")]
    pub fn trapdoor_algebra(&self) -> &HeytingAlgebra {
        &self.algebra
    }
}

impl HeytingOracle for BlackBoxHandle {
    fn ell(&self) -> u32 {
        self.ell
    }

    fn sample(&self, counter: u64) -> Cryptoelement {
        let mut rng = self.sampler.clone();
        rng.set_stream(counter);
        let e = rng.gen_range(0..self.algebra.size());
        let nonce = rng.gen_range(0..self.redundancy);
        self.encrypt(ElementId(e as u16), nonce)
    }

    fn meet(&self, x: Cryptoelement, y: Cryptoelement) -> Cryptoelement {
        let v = self.algebra.meet(self.decrypt(x), self.decrypt(y));
        self.encrypt(v, self.nonce(1, x, y))
    }

    fn join(&self, x: Cryptoelement, y: Cryptoelement) -> Cryptoelement {
        let v = self.algebra.join(self.decrypt(x), self.decrypt(y));
        self.encrypt(v, self.nonce(2, x, y))
    }

    fn imp(&self, x: Cryptoelement, y: Cryptoelement) -> Cryptoelement {
        let v = self.algebra.imp(self.decrypt(x), self.decrypt(y));
        self.encrypt(v, self.nonce(3, x, y))
    }

    fn bot(&self) -> Cryptoelement {
        self.encrypt(self.algebra.bot(), self.nonce_key)
    }

    fn eq(&self, x: Cryptoelement, y: Cryptoelement) -> bool {
        self.decrypt(x) == self.decrypt(y)
    }
}

fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

// splitmix64 finalizer
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One-sided Boolean test: draws `rounds` elements with counters
/// `counter_base, counter_base + 1, …` and accepts iff each satisfies
/// `x ∨ (x → ⊥) = ⊥ → ⊥`. Boolean algebras are always accepted.
pub fn monte_carlo_boolean_test<O: HeytingOracle + ?Sized>(oracle: &O, rounds: u32, counter_base: u64) -> bool {
    let bot = oracle.bot();
    let top = oracle.imp(bot, bot);
    (0..u64::from(rounds)).all(|i| {
        let x = oracle.sample(counter_base.wrapping_add(i));
        let lem = oracle.join(x, oracle.imp(x, bot));
        oracle.eq(lem, top)
    })
}

/// Number of accepting runs among `trials` runs of
/// [`monte_carlo_boolean_test`], run `t` using counters starting at
/// `counter_base + t · rounds`.
pub fn count_accepting<O: HeytingOracle + ?Sized>(oracle: &O, rounds: u32, trials: u64, counter_base: u64) -> u64 {
    (0..trials)
        .filter(|&t| monte_carlo_boolean_test(oracle, rounds, counter_base.wrapping_add(t * u64::from(rounds))))
        .count() as u64
}

/// Exact acceptance probability of the test on a finite algebra:
/// `(|{x : x ∨ ¬x = ⊤}| / |H|)^rounds`, as `(numerator, denominator)` of the
/// base.
pub fn acceptance_base(h: &HeytingAlgebra) -> (usize, usize) {
    let good: Vec<_> = h.elements().filter(|&x| h.join(x, h.neg(x)) == h.top()).collect();
    (good.len(), h.size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{boolean_algebra, chain};

    #[test]
    fn ell_bounds() {
        let c = chain(3).unwrap();
        assert_eq!(
            BlackBoxHandle::wrap(c.clone(), 5, 0).unwrap_err(),
            Error::EllTooSmall { ell: 5, needed: 48 }
        );
        assert!(BlackBoxHandle::wrap(c.clone(), 6, 0).is_ok());
        assert_eq!(BlackBoxHandle::wrap(c, 63, 0).unwrap_err(), Error::EllTooLarge(63));
        assert_eq!(BlackBoxHandle::min_ell(3), 6);
        assert_eq!(BlackBoxHandle::min_ell(4), 6);
    }

    #[test]
    fn permutation_round_trips() {
        for ell in [6, 7, 13, 62] {
            let b = BlackBoxHandle::wrap(chain(4).unwrap(), ell, 7).unwrap();
            for v in 0..64u64 {
                let c = b.permute(v);
                assert!(c >> ell == 0);
                assert_eq!(b.unpermute(c), v);
            }
        }
    }

    #[test]
    fn multiple_encodings() {
        let b = BlackBoxHandle::wrap(chain(2).unwrap(), 8, 3).unwrap();
        let x = b.encrypt(ElementId(0), 0);
        let y = b.encrypt(ElementId(0), 1);
        assert_ne!(x, y);
        assert!(b.eq(x, y));
        assert!(b.eq(x, b.bot()));
    }

    #[test]
    fn deterministic_under_seed() {
        let a = BlackBoxHandle::wrap(chain(5).unwrap(), 16, 11).unwrap();
        let b = BlackBoxHandle::wrap(chain(5).unwrap(), 16, 11).unwrap();
        let xs: Vec<_> = (0..20).map(|i| a.sample(i)).collect();
        let ys: Vec<_> = (0..20).map(|i| b.sample(i)).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn boolean_always_accepted() {
        let b = BlackBoxHandle::wrap(boolean_algebra(3).unwrap(), 12, 5).unwrap();
        assert_eq!(count_accepting(&b, 2, 2000, 0), 2000);
    }

    #[test]
    fn acceptance_bases() {
        assert_eq!(acceptance_base(&chain(3).unwrap()), (2, 3));
        assert_eq!(acceptance_base(&boolean_algebra(2).unwrap()), (4, 4));
    }
}
