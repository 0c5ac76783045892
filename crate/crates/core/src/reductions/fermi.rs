//! Bosonization: graded tensor independence realised inside the ordinary
//! tensor product of the algebras `A ⊗_{Z2} CZ2`.

use num_traits::One;

use crate::algebra::{AlgebraSignature, Monomial};
use crate::error::{Error, Result};
use crate::moments::MomentFunctional;
use crate::rational::Rational;
use crate::word::{FreeProduct, Word};

/// Homogeneous basis element `m ⊗ g^twist` of `A ⊗_{Z2} CZ2`; `g` is odd and
/// squares to the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSlot {
    pub monomial: Monomial,
    pub twist: bool,
}

impl GradedSlot {
    pub fn unit() -> Self {
        Self {
            monomial: Monomial::unit(),
            twist: false,
        }
    }

    /// `1 ⊗ g`
    pub fn g() -> Self {
        Self {
            monomial: Monomial::unit(),
            twist: true,
        }
    }

    /// `a ⊗ 1`
    pub fn letter(monomial: Monomial) -> Self {
        Self {
            monomial,
            twist: false,
        }
    }

    /// Graded product `(a1 ⊗ u1)(a2 ⊗ u2) = (-1)^(deg u1 · deg a2) a1 a2 ⊗ u1 u2`.
    /// Returns the product and whether it picked up a sign.
    pub fn times(&self, other: &GradedSlot, sig: &AlgebraSignature) -> (GradedSlot, bool) {
        let sign = self.twist && sig.degree(&other.monomial) == 1;
        (
            GradedSlot {
                monomial: self.monomial.times(&other.monomial),
                twist: self.twist ^ other.twist,
            },
            sign,
        )
    }
}

/// A signed elementary tensor `±(s_1 ⊗ … ⊗ s_n)` of graded slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTensor {
    pub negative: bool,
    pub slots: Vec<GradedSlot>,
}

impl GradedTensor {
    pub fn unit(n: usize) -> Self {
        Self {
            negative: false,
            slots: vec![GradedSlot::unit(); n],
        }
    }

    /// Slot-wise graded multiplication; distinct slots commute.
    pub fn times(&self, other: &GradedTensor, sigs: &[std::sync::Arc<AlgebraSignature>]) -> Self {
        let mut negative = self.negative ^ other.negative;
        let slots = self
            .slots
            .iter()
            .zip(&other.slots)
            .zip(sigs)
            .map(|((a, b), sig)| {
                let (s, flip) = a.times(b, sig);
                negative ^= flip;
                s
            })
            .collect();
        Self { negative, slots }
    }
}

/// `F(φ) = φ ⊗ ε` on `A ⊗_{Z2} CZ2`, with `ε(1) = ε(g) = 1`.
#[derive(Debug, Clone)]
pub struct BosonizedState {
    phi: MomentFunctional,
}

impl BosonizedState {
    pub fn new(phi: MomentFunctional) -> Result<Self> {
        if !phi.is_unital() {
            return Err(Error::RegimeMismatch(
                "bosonization needs a unital functional".into(),
            ));
        }
        if !phi.is_even() {
            return Err(Error::NotEven(phi.algebra().name().to_string()));
        }
        Ok(Self { phi })
    }

    pub fn functional(&self) -> &MomentFunctional {
        &self.phi
    }

    pub fn eval(&self, slot: &GradedSlot) -> Result<Rational> {
        // ε is 1 on both group elements
        self.phi.moment(&slot.monomial).cloned()
    }
}

/// `J_n` applied to one homogeneous letter `a` of factor `k`:
/// `(g^deg a)^{⊗(k-1)} ⊗ (a ⊗ 1) ⊗ 1^{⊗(n-k)}`.
pub fn embed_letter(space: &FreeProduct, factor: usize, monomial: &Monomial) -> Result<GradedTensor> {
    let n = space.len();
    let sig = space.factor(factor)?;
    let odd = sig.degree(monomial) == 1;
    let mut t = GradedTensor::unit(n);
    for slot in t.slots.iter_mut().take(factor) {
        if odd {
            *slot = GradedSlot::g();
        }
    }
    t.slots[factor] = GradedSlot::letter(monomial.clone());
    Ok(t)
}

pub fn embed_word(space: &FreeProduct, w: &Word) -> Result<GradedTensor> {
    let mut acc = GradedTensor::unit(space.len());
    for b in w.blocks() {
        let image = embed_letter(space, b.factor, &b.monomial)?;
        acc = acc.times(&image, space.factors());
    }
    Ok(acc)
}

/// Ordinary tensor functional `⊗ F(φ_i)` on a signed elementary tensor.
pub fn tensor_value(states: &[BosonizedState], t: &GradedTensor) -> Result<Rational> {
    let mut v = Rational::one();
    for (s, slot) in states.iter().zip(&t.slots) {
        v *= s.eval(slot)?;
    }
    Ok(if t.negative { -v } else { v })
}

/// The structure map `F_2(A, B)` on a basis element `a ⊗ b ⊗ u` of
/// `(A ⊗_{Z2} B) ⊗_{Z2} CZ2`, for homogeneous `b`:
/// `a ⊗ b ⊗ u ↦ (a ⊗ g^deg b · u) ⊗ (b ⊗ u)`.
pub fn split_pair(
    a: &Monomial,
    b: &Monomial,
    b_sig: &AlgebraSignature,
    twist: bool,
) -> (GradedSlot, GradedSlot) {
    let b_odd = b_sig.degree(b) == 1;
    (
        GradedSlot {
            monomial: a.clone(),
            twist: b_odd ^ twist,
        },
        GradedSlot {
            monomial: b.clone(),
            twist,
        },
    )
}
