use num_traits::One;

use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::moments::MomentFunctional;
use crate::rational::Rational;
use crate::word::{FreeProduct, Word};

/// Joint moment under the Z2-graded tensor product.
///
/// Letters are moved, by adjacent transpositions, into factor order; each
/// exchange of blocks from different factors contributes `(-1)^(deg·deg)`.
/// The reordered word factorizes over the factors.
pub fn eval_graded_tensor(factors: &[MomentFunctional], w: &Word) -> Result<Rational> {
    let space = FreeProduct::new(factors.iter().map(|f| f.algebra().clone()).collect())?;
    if !space.is_unital() {
        return Err(Error::RegimeMismatch(
            "the graded tensor product needs unital functionals".into(),
        ));
    }
    if let Some(odd) = factors.iter().find(|f| !f.is_even()) {
        return Err(Error::NotEven(odd.algebra().name().to_string()));
    }
    space.check_word(w)?;

    let blocks = w.blocks();
    let degrees: Vec<u8> = blocks
        .iter()
        .map(|b| space.factors()[b.factor].degree(&b.monomial))
        .collect();
    let mut sign = 0u8;
    for j in 0..blocks.len() {
        for i in 0..j {
            if blocks[i].factor > blocks[j].factor {
                sign ^= degrees[i] & degrees[j];
            }
        }
    }

    let mut gathered = vec![Monomial::unit(); factors.len()];
    for b in blocks {
        gathered[b.factor].extend(&b.monomial);
    }
    let mut value = Rational::one();
    for (phi, m) in factors.iter().zip(&gathered) {
        value *= phi.moment(m)?;
    }
    Ok(if sign == 1 { -value } else { value })
}
