//! Free-product moments from the freeness rule alone.
//!
//! Each block `a` is split as `å + φ(a)·1` with `å` centered. Expanding the
//! product multilinearly, every term whose blocks are all centered and
//! alternating vanishes; the remaining terms have fewer blocks once the scalar
//! parts are pulled out and neighbouring same-factor blocks are multiplied.
//! This never touches the subset recursion used by [`JointFunctional`].
//!
//! [`JointFunctional`]: super::JointFunctional

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::moments::MomentFunctional;
use crate::rational::{self, Rational};
use crate::word::{FreeProduct, Word};

type Blocks = Vec<(usize, Element)>;

pub struct CenteringOracle<'a> {
    factors: &'a [MomentFunctional],
    space: FreeProduct,
    memo: HashMap<Blocks, Rational>,
    raw_memo: HashMap<Blocks, Rational>,
}

impl<'a> CenteringOracle<'a> {
    pub fn new(factors: &'a [MomentFunctional]) -> Result<Self> {
        let space = FreeProduct::new(factors.iter().map(|f| f.algebra().clone()).collect())?;
        if !space.is_unital() {
            return Err(Error::RegimeMismatch(
                "the centering oracle needs unital functionals".into(),
            ));
        }
        Ok(Self {
            factors,
            space,
            memo: HashMap::new(),
            raw_memo: HashMap::new(),
        })
    }

    pub fn eval(&mut self, w: &Word) -> Result<Rational> {
        self.space.check_word(w)?;
        let blocks = w
            .blocks()
            .iter()
            .map(|b| (b.factor, Element::monomial(b.monomial.clone())))
            .collect();
        self.value(blocks)
    }

    fn value(&mut self, raw: Blocks) -> Result<Rational> {
        if let Some(v) = self.raw_memo.get(&raw) {
            return Ok(v.clone());
        }
        let v = self.merged_value(raw.clone())?;
        self.raw_memo.insert(raw, v.clone());
        Ok(v)
    }

    fn merged_value(&mut self, raw: Blocks) -> Result<Rational> {
        let mut coefficient = Rational::one();
        let mut blocks: Blocks = Vec::with_capacity(raw.len());
        for (factor, e) in raw {
            if e.is_zero() {
                return Ok(Rational::zero());
            }
            if let Some(c) = as_scalar(&e) {
                coefficient *= c;
                continue;
            }
            match blocks.last_mut() {
                Some((f, last)) if *f == factor => *last = last.times(&e),
                _ => blocks.push((factor, e)),
            }
        }
        match blocks.len() {
            0 => return Ok(coefficient),
            1 => return Ok(coefficient * self.factors[blocks[0].0].eval(&blocks[0].1)?),
            _ => {}
        }
        if let Some(v) = self.memo.get(&blocks) {
            return Ok(coefficient * v);
        }

        let means = blocks
            .iter()
            .map(|(f, e)| self.factors[*f].eval(e))
            .collect::<Result<Vec<_>>>()?;
        let centered: Blocks = blocks
            .iter()
            .zip(&means)
            .map(|((f, e), c)| (*f, e.plus(&Element::scalar(-c.clone()))))
            .collect();
        let scalar_positions: Vec<usize> = (0..blocks.len()).filter(|&k| !means[k].is_zero()).collect();

        // weights[s] = product of the means picked by s
        let n = scalar_positions.len();
        let mut weights: Vec<Rational> = Vec::with_capacity(1 << n);
        weights.push(Rational::one());
        for s in 1usize..(1 << n) {
            let low = s.trailing_zeros() as usize;
            let w = rational::mul(&weights[s & (s - 1)], &means[scalar_positions[low]]);
            weights.push(w);
        }

        // the subset with no scalar parts is an alternating centered word
        let mut total = Rational::zero();
        for (subset, weight) in weights.iter().enumerate().skip(1) {
            let rest: Blocks = centered
                .iter()
                .enumerate()
                .filter(|(k, _)| {
                    scalar_positions
                        .iter()
                        .position(|p| p == k)
                        .is_none_or(|bit| subset & (1 << bit) == 0)
                })
                .map(|(_, b)| b.clone())
                .collect();
            let v = self.value(rest)?;
            if !v.is_zero() {
                total = rational::add(&total, &rational::mul(&v, weight));
            }
        }
        self.memo.insert(blocks, total.clone());
        Ok(coefficient * total)
    }
}

fn as_scalar(e: &Element) -> Option<Rational> {
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if m.is_unit() => Some(c.clone()),
        _ => None,
    }
}

/// Free-product moment of `w` computed through centering.
pub fn free_centering_oracle(factors: &[MomentFunctional], w: &Word) -> Result<Rational> {
    CenteringOracle::new(factors)?.eval(w)
}
