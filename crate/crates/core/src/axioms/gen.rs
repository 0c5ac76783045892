//! Seeded generators for states, words and homomorphisms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraSignature, Element, Homomorphism, Monomial};
use crate::moments::MomentFunctional;
use crate::rational::Rational;
use crate::word::{Block, FreeProduct, Word};

/// Generator for trial `stream` of a run seeded by `seed`. Streams are
/// independent, so trials can be evaluated in any order.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Numerator uniform in `[-3, 3]`, denominator uniform in `1..=8`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let n: i64 = rng.random_range(-3..=3);
    let d: i64 = rng.random_range(1..=8);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random moment table up to degree `max_degree`. Odd monomials of a graded
/// algebra get 0, and the unit gets 1.
pub fn random_state<R: Rng>(
    rng: &mut R,
    algebra: Arc<AlgebraSignature>,
    max_degree: usize,
) -> MomentFunctional {
    let sig = algebra.clone();
    MomentFunctional::from_fn(algebra, max_degree, |m| {
        let v = random_rational(rng);
        if sig.degree(m) == 1 {
            Rational::zero()
        } else {
            v
        }
    })
}

pub fn gen_random_state(
    algebra: Arc<AlgebraSignature>,
    max_degree: usize,
    seed: u64,
) -> MomentFunctional {
    random_state(&mut trial_rng(seed, 0), algebra, max_degree)
}

/// Word with `len` letters, each drawn uniformly from all generators of all
/// factors.
pub fn random_word<R: Rng>(rng: &mut R, space: &FreeProduct, len: usize) -> Word {
    let letters: Vec<(usize, usize)> = space
        .factors()
        .iter()
        .enumerate()
        .flat_map(|(f, sig)| (0..sig.generator_count()).map(move |g| (f, g)))
        .collect();
    Word::merged((0..len).map(|_| {
        let (f, g) = letters[rng.random_range(0..letters.len())];
        Block::new(f, Monomial::letter(g))
    }))
}

/// Monomial of one algebra with `len` letters.
pub fn random_monomial<R: Rng>(rng: &mut R, sig: &AlgebraSignature, len: usize) -> Monomial {
    let g = sig.generator_count();
    Monomial::from_indices((0..len).map(|_| rng.random_range(0..g)).collect())
}

/// One or two terms with nonzero coefficients and monomials of length at
/// most 2; the unit may appear only in the unital regime.
pub fn random_element<R: Rng>(rng: &mut R, target: &AlgebraSignature) -> Element {
    let min = if target.is_unital() { 0 } else { 1 };
    loop {
        let terms = rng.random_range(1..=2);
        let e = Element::from_terms((0..terms).map(|_| {
            let len = rng.random_range(min..=2);
            (random_monomial(rng, target, len), nonzero_rational(rng))
        }));
        if !e.is_zero() {
            return e;
        }
    }
}

/// Substitution homomorphism sending each generator to a random element of
/// image degree at most 2. Only for ungraded algebras.
pub fn random_homomorphism<R: Rng>(
    rng: &mut R,
    source: Arc<AlgebraSignature>,
    target: Arc<AlgebraSignature>,
) -> Homomorphism {
    let images = (0..source.generator_count())
        .map(|_| random_element(rng, &target))
        .collect();
    Homomorphism::new(source, target, images).expect("ungraded images are valid")
}

/// Every normal-form word with `min_len..=max_len` letters, shortest first.
/// Distinct letter sequences give distinct words, so nothing repeats.
pub fn enumerate_words(space: &FreeProduct, min_len: usize, max_len: usize) -> Vec<Word> {
    let letters: Vec<Block> = space
        .factors()
        .iter()
        .enumerate()
        .flat_map(|(f, sig)| (0..sig.generator_count()).map(move |g| Block::new(f, Monomial::letter(g))))
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Block>> = vec![Vec::new()];
    for len in 0..=max_len {
        if len >= min_len {
            out.extend(layer.iter().map(|raw| Word::merged(raw.iter().cloned())));
        }
        if len == max_len || letters.is_empty() {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|raw| {
                letters.iter().map(move |b| {
                    let mut next = raw.clone();
                    next.push(b.clone());
                    next
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(unital: bool) -> Arc<AlgebraSignature> {
        Arc::new(AlgebraSignature::ungraded("A", unital, &["x", "y"]).unwrap())
    }

    #[test]
    fn states_are_reproducible() {
        let a = gen_random_state(sig(true), 4, 7);
        let b = gen_random_state(sig(true), 4, 7);
        assert_eq!(a, b);
        assert_ne!(a, gen_random_state(sig(true), 4, 8));
        assert_eq!(a.moment(&Monomial::unit()).unwrap(), &Rational::from_integer(1.into()));
    }

    #[test]
    fn entries_in_range() {
        let s = gen_random_state(sig(false), 5, 3);
        for (m, v) in s.entries() {
            if m.is_unit() {
                continue;
            }
            assert!(v.numer().magnitude() <= &3u32.into());
            assert!(*v.denom() <= BigInt::from(8));
        }
    }

    #[test]
    fn graded_states_are_even() {
        let g = Arc::new(
            AlgebraSignature::new("G", true, [("a".to_string(), 1u8), ("c".to_string(), 0u8)]).unwrap(),
        );
        let s = gen_random_state(g.clone(), 5, 11);
        assert!(s.is_even());
        for (m, v) in s.entries() {
            if g.degree(&m) == 1 {
                assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn word_enumeration_counts() {
        let space = FreeProduct::new(vec![sig(false), sig(false)]).unwrap();
        let words = enumerate_words(&space, 1, 3);
        assert_eq!(words.len(), 4 + 16 + 64);
        let mut unique = words.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), words.len());
        assert!(words.iter().all(|w| (1..=3).contains(&w.letter_count())));
    }

    #[test]
    fn streams_differ() {
        let mut a = trial_rng(1, 0);
        let mut b = trial_rng(1, 1);
        let xa: Vec<u32> = (0..4).map(|_| a.random()).collect();
        let xb: Vec<u32> = (0..4).map(|_| b.random()).collect();
        assert_ne!(xa, xb);
    }
}
