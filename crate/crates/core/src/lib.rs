//! Exact evaluation of mixed moments of noncommutative random variables under
//! the universal independences (tensor, free, boolean, monotone,
//! anti-monotone), their degenerate and q-deformed relatives, and graded
//! (Fermi) independence; together with the reductions of Fermi, boolean,
//! monotone and anti-monotone independence to tensor independence.
//!
//! All arithmetic is over exact rationals.

pub mod algebra;
pub mod axioms;
pub mod classical;
pub mod cli;
pub mod error;
pub mod expr;
pub mod moments;
pub mod products;
pub mod reductions;
pub mod rational;
pub mod word;

pub use algebra::{AlgebraSignature, Element, Generator, Homomorphism, Monomial};
pub use axioms::{expected_outcome, run_axiom_suite, run_reduction_suite, Axiom, AxiomReport, Expectation};
pub use classical::{
    independence_equivalence, product_space, pushforward, FiniteProbSpace, RandomVariable,
};
pub use error::{Error, Result};
pub use expr::parse_expression;
pub use moments::{MomentFunctional, StateDocument};
pub use products::{eval_graded_tensor, Bracket, JointFunctional, ProductKind, SymmetricBase};
pub use rational::Rational;
pub use reductions::{reduce_state, verify_reduction, Reduction, ReductionKind, Verification};
pub use word::{apply_homomorphism, Block, FreeProduct, Polynomial, Word};
