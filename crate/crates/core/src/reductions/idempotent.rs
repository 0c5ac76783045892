//! Boolean, monotone and anti-monotone independence inside the ordinary
//! tensor product of the algebras `Ã ∐ CM`, where `M = {1, p}` with `p² = p`.

use num_traits::One;

use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::moments::MomentFunctional;
use crate::rational::Rational;
use crate::word::{FreeProduct, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Piece {
    Letters(Monomial),
    P,
}

/// Element `p^α a_1 p a_2 ⋯ p a_m p^ω` of `Ã ∐ CM` in normal form: letter
/// runs and `p` alternate, adjacent runs are merged and `pp` collapses to `p`.
/// The empty slot is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IdempotentSlot {
    pieces: Vec<Piece>,
}

impl IdempotentSlot {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn p() -> Self {
        Self {
            pieces: vec![Piece::P],
        }
    }

    pub fn letters(m: Monomial) -> Self {
        let mut s = Self::unit();
        s.push(Piece::Letters(m));
        s
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn push(&mut self, piece: Piece) {
        match (self.pieces.last_mut(), piece) {
            (_, Piece::Letters(m)) if m.is_unit() => {}
            (Some(Piece::P), Piece::P) => {}
            (Some(Piece::Letters(last)), Piece::Letters(m)) => last.extend(&m),
            (_, piece) => self.pieces.push(piece),
        }
    }

    pub fn times(&self, other: &IdempotentSlot) -> IdempotentSlot {
        let mut out = self.clone();
        for piece in &other.pieces {
            out.push(piece.clone());
        }
        out
    }
}

/// Elementary tensor of idempotent slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentTensor {
    pub slots: Vec<IdempotentSlot>,
}

impl IdempotentTensor {
    pub fn unit(n: usize) -> Self {
        Self {
            slots: vec![IdempotentSlot::unit(); n],
        }
    }

    pub fn times(&self, other: &IdempotentTensor) -> Self {
        Self {
            slots: self
                .slots
                .iter()
                .zip(&other.slots)
                .map(|(a, b)| a.times(b))
                .collect(),
        }
    }
}

/// Which of the three reductions through `M = {1, p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Boolean,
    Monotone,
    AntiMonotone,
}

impl Shape {
    fn before(self) -> IdempotentSlot {
        match self {
            Shape::Monotone => IdempotentSlot::unit(),
            Shape::Boolean | Shape::AntiMonotone => IdempotentSlot::p(),
        }
    }

    fn after(self) -> IdempotentSlot {
        match self {
            Shape::AntiMonotone => IdempotentSlot::unit(),
            Shape::Boolean | Shape::Monotone => IdempotentSlot::p(),
        }
    }
}

/// `F(φ) = φ̃ ⋄ ε`, acting as `p^α a_1 p ⋯ p a_m p^ω ↦ ∏ φ(a_k)`.
#[derive(Debug, Clone)]
pub struct IdempotentState {
    extended: MomentFunctional,
}

impl IdempotentState {
    pub fn new(phi: &MomentFunctional) -> Result<Self> {
        if phi.is_unital() {
            return Err(Error::RegimeMismatch(
                "this reduction starts from a non-unital functional".into(),
            ));
        }
        Ok(Self {
            extended: phi.unitize()?,
        })
    }

    /// The unital extension `φ̃` on the unitization.
    pub fn extension(&self) -> &MomentFunctional {
        &self.extended
    }

    pub fn eval(&self, slot: &IdempotentSlot) -> Result<Rational> {
        let mut v = Rational::one();
        for piece in slot.pieces() {
            if let Piece::Letters(m) = piece {
                v *= self.extended.moment(m)?;
            }
        }
        Ok(v)
    }
}

/// `J_n` on one letter of factor `k`: `before^{⊗(k-1)} ⊗ a ⊗ after^{⊗(n-k)}`.
pub fn embed_letter(
    shape: Shape,
    space: &FreeProduct,
    factor: usize,
    monomial: &Monomial,
) -> Result<IdempotentTensor> {
    let n = space.len();
    space.factor(factor)?;
    let slots = (0..n)
        .map(|i| match i.cmp(&factor) {
            std::cmp::Ordering::Less => shape.before(),
            std::cmp::Ordering::Equal => IdempotentSlot::letters(monomial.clone()),
            std::cmp::Ordering::Greater => shape.after(),
        })
        .collect();
    Ok(IdempotentTensor { slots })
}

pub fn embed_word(shape: Shape, space: &FreeProduct, w: &Word) -> Result<IdempotentTensor> {
    let mut acc = IdempotentTensor::unit(space.len());
    for b in w.blocks() {
        acc = acc.times(&embed_letter(shape, space, b.factor, &b.monomial)?);
    }
    Ok(acc)
}

pub fn tensor_value(states: &[IdempotentState], t: &IdempotentTensor) -> Result<Rational> {
    let mut v = Rational::one();
    for (s, slot) in states.iter().zip(&t.slots) {
        v *= s.eval(slot)?;
    }
    Ok(v)
}
