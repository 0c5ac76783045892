//! Moments of sums `x_1 + … + x_N` of independent variables.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{JointFunctional, ProductKind};
use crate::algebra::{AlgebraSignature, Monomial};
use crate::error::{Error, Result};
use crate::moments::MomentFunctional;
use crate::rational::Rational;
use crate::word::{Block, Word};

/// A functional on the algebra generated by a single variable `x` with
/// `φ(x^k) = moments[k-1]`.
pub fn single_variable_state(name: &str, unital: bool, moments: &[Rational]) -> MomentFunctional {
    let sig = AlgebraSignature::ungraded(name, unital, &["x"]).expect("one generator");
    MomentFunctional::from_fn(Arc::new(sig), moments.len(), |m| moments[m.len() - 1].clone())
}

fn empty_sum(unital: bool) -> Result<Rational> {
    if unital {
        Ok(Rational::one())
    } else {
        Err(Error::EmptyMonomial)
    }
}

/// `φ((x_1 + … + x_N)^k)` where `x_i` is the designated generator of the
/// `i`-th functional, under the left-nested `N`-fold product. Expands all
/// `N^k` words.
pub fn sum_moment(
    kind: &ProductKind,
    phis: &[(MomentFunctional, usize)],
    k: usize,
) -> Result<Rational> {
    if phis.is_empty() {
        return Err(Error::SignatureMismatch("no summands".into()));
    }
    for (phi, g) in phis {
        if *g >= phi.algebra().generator_count() {
            return Err(Error::UnknownGenerator {
                algebra: phi.algebra().name().to_string(),
                generator: format!("#{g}"),
            });
        }
    }
    let joint = JointFunctional::new(phis.iter().map(|(f, _)| f.clone()).collect(), kind.clone())?;
    if k == 0 {
        return empty_sum(joint.space().is_unital());
    }
    let n = phis.len();
    let mut seq = vec![0usize; k];
    let mut total = Rational::zero();
    loop {
        let word = Word::merged(
            seq.iter()
                .map(|&i| Block::new(i, Monomial::letter(phis[i].1))),
        );
        total += joint.eval(&word)?;
        // odometer increment
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(total);
            }
            pos -= 1;
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
        }
    }
}

/// `m_k(S_N)` for `N` independent copies of one variable with the given
/// moments.
///
/// The value of a word only depends on which positions share a copy and, for
/// the non-symmetric products, on the relative order of the copies used; each
/// such pattern with `r` copies occurs `C(N, r)` times.
pub fn clt_moment(kind: &ProductKind, moments: &[Rational], n: usize, order: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::SignatureMismatch("no summands".into()));
    }
    let unital = !kind.requires_non_unital();
    if order == 0 {
        return empty_sum(unital);
    }
    if order > moments.len() {
        return Err(Error::DegreeExceeded {
            monomial: format!("x^{order}"),
            length: order,
            max_degree: moments.len(),
        });
    }
    let phi = single_variable_state("X", unital, moments);
    let mut joints: HashMap<usize, JointFunctional> = HashMap::new();
    let mut total = Rational::zero();
    let mut labels = vec![0usize; order];
    let mut patterns = Vec::new();
    set_partitions(&mut labels, 1, 1, &mut patterns);
    for (pattern, blocks) in patterns {
        if blocks > n {
            continue;
        }
        if let std::collections::hash_map::Entry::Vacant(e) = joints.entry(blocks) {
            e.insert(JointFunctional::new(vec![phi.clone(); blocks], kind.clone())?);
        }
        let joint = &joints[&blocks];
        let choose = Rational::from_integer(binomial(n, blocks));
        let word_for = |perm: &[usize]| {
            Word::merged(
                pattern
                    .iter()
                    .map(|&l| Block::new(perm[l], Monomial::letter(0))),
            )
        };
        if kind.is_symmetric() {
            let identity: Vec<usize> = (0..blocks).collect();
            let orderings = Rational::from_integer(factorial(blocks));
            total += joint.eval(&word_for(&identity))? * orderings * choose;
        } else {
            for perm in permutations(blocks) {
                total += joint.eval(&word_for(&perm))? * &choose;
            }
        }
    }
    Ok(total)
}

// restricted growth strings: labels[0] = 0, labels[i] <= max(labels[..i]) + 1
fn set_partitions(labels: &mut [usize], pos: usize, used: usize, out: &mut Vec<(Vec<usize>, usize)>) {
    if pos == labels.len() {
        out.push((labels.to_vec(), used));
        return;
    }
    for l in 0..=used {
        labels[pos] = l;
        set_partitions(labels, pos + 1, used.max(l + 1), out);
    }
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, r - 1);
            out.push(q);
        }
    }
    out
}

fn factorial(r: usize) -> BigInt {
    (1..=r).fold(BigInt::one(), |acc, i| acc * i)
}

fn binomial(n: usize, r: usize) -> BigInt {
    (0..r).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
