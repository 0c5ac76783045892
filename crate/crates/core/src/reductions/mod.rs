//! Reductions of graded, boolean, monotone and anti-monotone independence to
//! ordinary tensor independence.
//!
//! Each reduction replaces every factor `(A, φ)` by a larger algebra with a
//! unital functional `F(φ)` and embeds words of the free product as
//! elementary tensors. A word's moment under the original product must equal
//! the ordinary tensor functional `⊗ F(φ_i)` on its image.

pub mod fermi;
pub mod idempotent;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::moments::MomentFunctional;
use crate::products::{eval_graded_tensor, JointFunctional, ProductKind};
use crate::rational::Rational;
use crate::word::{FreeProduct, Word};

use fermi::{BosonizedState, GradedTensor};
use idempotent::{IdempotentState, IdempotentTensor, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Fermi,
    Boolean,
    Monotone,
    AntiMonotone,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 4] = [
        ReductionKind::Fermi,
        ReductionKind::Boolean,
        ReductionKind::Monotone,
        ReductionKind::AntiMonotone,
    ];

    fn shape(self) -> Option<Shape> {
        match self {
            ReductionKind::Fermi => None,
            ReductionKind::Boolean => Some(Shape::Boolean),
            ReductionKind::Monotone => Some(Shape::Monotone),
            ReductionKind::AntiMonotone => Some(Shape::AntiMonotone),
        }
    }

    /// The product being reduced, for the ungraded cases.
    pub fn product(self) -> Option<ProductKind> {
        match self {
            ReductionKind::Fermi => None,
            ReductionKind::Boolean => Some(ProductKind::Boolean),
            ReductionKind::Monotone => Some(ProductKind::Monotone),
            ReductionKind::AntiMonotone => Some(ProductKind::AntiMonotone),
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionKind::Fermi => "fermi",
            ReductionKind::Boolean => "boolean",
            ReductionKind::Monotone => "monotone",
            ReductionKind::AntiMonotone => "antimonotone",
        })
    }
}

impl FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fermi" => Ok(ReductionKind::Fermi),
            "boolean" => Ok(ReductionKind::Boolean),
            "monotone" => Ok(ReductionKind::Monotone),
            "antimonotone" | "anti-monotone" => Ok(ReductionKind::AntiMonotone),
            _ => Err(Error::Parse {
                offset: 0,
                message: format!("unknown reduction `{s}`"),
            }),
        }
    }
}

/// `F(φ)` for one factor.
#[derive(Debug, Clone)]
pub enum ReducedState {
    Fermi(BosonizedState),
    Idempotent(IdempotentState),
}

/// Image of a word under `J_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddedWord {
    Fermi(GradedTensor),
    Idempotent(IdempotentTensor),
}

pub fn reduce_state(kind: ReductionKind, phi: &MomentFunctional) -> Result<ReducedState> {
    Ok(match kind {
        ReductionKind::Fermi => ReducedState::Fermi(BosonizedState::new(phi.clone())?),
        _ => ReducedState::Idempotent(IdempotentState::new(phi)?),
    })
}

pub fn embed_word(kind: ReductionKind, space: &FreeProduct, w: &Word) -> Result<EmbeddedWord> {
    space.check_word(w)?;
    Ok(match kind.shape() {
        None => EmbeddedWord::Fermi(fermi::embed_word(space, w)?),
        Some(shape) => EmbeddedWord::Idempotent(idempotent::embed_word(shape, space, w)?),
    })
}

/// Both sides of a reduction identity on one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    /// Moment under the original product.
    pub lhs: Rational,
    /// Ordinary tensor moment of the embedded word under the reduced states.
    pub rhs: Rational,
    pub equal: bool,
}

/// A reduction instantiated on a fixed list of factors, reusable across words.
pub struct Reduction {
    kind: ReductionKind,
    space: FreeProduct,
    factors: Vec<MomentFunctional>,
    joint: Option<JointFunctional>,
    fermi: Vec<BosonizedState>,
    idempotent: Vec<IdempotentState>,
}

impl Reduction {
    pub fn new(kind: ReductionKind, factors: Vec<MomentFunctional>) -> Result<Self> {
        let space = FreeProduct::new(factors.iter().map(|f| f.algebra().clone()).collect())?;
        let mut fermi = Vec::new();
        let mut idempotent = Vec::new();
        for phi in &factors {
            match reduce_state(kind, phi)? {
                ReducedState::Fermi(s) => fermi.push(s),
                ReducedState::Idempotent(s) => idempotent.push(s),
            }
        }
        let joint = match kind.product() {
            Some(p) => Some(JointFunctional::new(factors.clone(), p)?),
            None => None,
        };
        Ok(Self {
            kind,
            space,
            factors,
            joint,
            fermi,
            idempotent,
        })
    }

    pub fn space(&self) -> &FreeProduct {
        &self.space
    }

    pub fn embed(&self, w: &Word) -> Result<EmbeddedWord> {
        embed_word(self.kind, &self.space, w)
    }

    pub fn verify(&self, w: &Word) -> Result<Verification> {
        let lhs = match &self.joint {
            Some(j) => j.eval(w)?,
            None => eval_graded_tensor(&self.factors, w)?,
        };
        let rhs = match self.embed(w)? {
            EmbeddedWord::Fermi(t) => fermi::tensor_value(&self.fermi, &t)?,
            EmbeddedWord::Idempotent(t) => idempotent::tensor_value(&self.idempotent, &t)?,
        };
        let equal = lhs == rhs;
        Ok(Verification { lhs, rhs, equal })
    }
}

pub fn verify_reduction(
    kind: ReductionKind,
    factors: &[MomentFunctional],
    w: &Word,
) -> Result<Verification> {
    Reduction::new(kind, factors.to_vec())?.verify(w)
}

#[cfg(test)]
mod tests;
