//! Joint moments of free-product words under the universal products.
//!
//! A [`JointFunctional`] evaluates words over `n` factors. Products of more
//! than two factors are bracketed explicitly by a [`Bracket`]; every inner node
//! applies the binary product formula to the maximal runs of letters coming
//! from its left and right subtrees.

mod graded;
mod oracle;
mod sum;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::moments::MomentFunctional;
use crate::rational::{self, format_rational, parse_rational, Rational};
use crate::word::{Block, FreeProduct, Polynomial, Word};

pub use graded::eval_graded_tensor;
pub use oracle::{free_centering_oracle, CenteringOracle};
pub use sum::{clt_moment, single_variable_state, sum_moment};

/// The symmetric products that admit a q-deformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetricBase {
    Tensor,
    Free,
    Boolean,
}

impl SymmetricBase {
    pub fn kind(self) -> ProductKind {
        match self {
            SymmetricBase::Tensor => ProductKind::Tensor,
            SymmetricBase::Free => ProductKind::Free,
            SymmetricBase::Boolean => ProductKind::Boolean,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Tensor,
    Free,
    Boolean,
    Monotone,
    AntiMonotone,
    Degenerate,
    QDeformed { base: SymmetricBase, q: Rational },
}

impl ProductKind {
    /// The five products satisfying the factorization condition.
    pub const UNIVERSAL: [ProductKind; 5] = [
        ProductKind::Tensor,
        ProductKind::Free,
        ProductKind::Boolean,
        ProductKind::Monotone,
        ProductKind::AntiMonotone,
    ];

    /// Boolean, monotone, anti-monotone, degenerate and q-deformed products
    /// only exist between non-unital algebras.
    pub fn requires_non_unital(&self) -> bool {
        !matches!(self, ProductKind::Tensor | ProductKind::Free)
    }

    pub fn is_symmetric(&self) -> bool {
        !matches!(self, ProductKind::Monotone | ProductKind::AntiMonotone)
    }

    /// The product obtained by exchanging the two factors.
    pub fn mirror(&self) -> ProductKind {
        match self {
            ProductKind::Monotone => ProductKind::AntiMonotone,
            ProductKind::AntiMonotone => ProductKind::Monotone,
            other => other.clone(),
        }
    }

    fn base(&self) -> ProductKind {
        match self {
            ProductKind::QDeformed { base, .. } => base.kind(),
            other => other.clone(),
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductKind::Tensor => f.write_str("tensor"),
            ProductKind::Free => f.write_str("free"),
            ProductKind::Boolean => f.write_str("boolean"),
            ProductKind::Monotone => f.write_str("monotone"),
            ProductKind::AntiMonotone => f.write_str("antimonotone"),
            ProductKind::Degenerate => f.write_str("degenerate"),
            ProductKind::QDeformed { base, q } => {
                write!(f, "q:{}:{}", base.kind(), format_rational(q))
            }
        }
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    /// Accepts the names printed by `Display`, e.g. `monotone` or `q:boolean:2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            offset: 0,
            message: format!("unknown product `{s}`"),
        };
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "tensor" => ProductKind::Tensor,
            "free" => ProductKind::Free,
            "boolean" => ProductKind::Boolean,
            "monotone" => ProductKind::Monotone,
            "antimonotone" | "anti-monotone" => ProductKind::AntiMonotone,
            "degenerate" => ProductKind::Degenerate,
            other => {
                let rest = other.strip_prefix("q:").ok_or_else(bad)?;
                let (base, q) = rest.split_once(':').ok_or_else(bad)?;
                let base = match base {
                    "tensor" => SymmetricBase::Tensor,
                    "free" => SymmetricBase::Free,
                    "boolean" => SymmetricBase::Boolean,
                    _ => return Err(bad()),
                };
                let q = parse_rational(q)?;
                if q.is_zero() {
                    return Err(Error::ZeroScale);
                }
                ProductKind::QDeformed { base, q }
            }
        })
    }
}

/// A bracketing of an n-fold product; leaves are factor indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bracket {
    Leaf(usize),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn pair(left: Bracket, right: Bracket) -> Bracket {
        Bracket::Pair(Box::new(left), Box::new(right))
    }

    /// `((0·1)·2)·…`
    pub fn left_nested(n: usize) -> Bracket {
        (1..n).fold(Bracket::Leaf(0), |acc, i| Bracket::pair(acc, Bracket::Leaf(i)))
    }

    /// `0·(1·(2·…))`
    pub fn right_nested(n: usize) -> Bracket {
        (0..n.saturating_sub(1))
            .rev()
            .fold(Bracket::Leaf(n - 1), |acc, i| Bracket::pair(Bracket::Leaf(i), acc))
    }

    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            Bracket::Leaf(i) => out.push(*i),
            Bracket::Pair(l, r) => {
                l.leaves(out);
                r.leaves(out);
            }
        }
    }
}

#[derive(Debug)]
enum Node {
    Leaf(usize),
    Pair {
        left: usize,
        right: usize,
        // left_side[f] is true when factor f sits under the left child
        left_side: Vec<bool>,
    },
}

/// The joint functional of several moment functionals under one product kind.
///
/// Evaluation results are cached per node; the cache never changes a value.
#[derive(Debug)]
pub struct JointFunctional {
    space: FreeProduct,
    factors: Vec<MomentFunctional>,
    leaves: Vec<MomentFunctional>,
    kind: ProductKind,
    nodes: Vec<Node>,
    root: usize,
    memo: Vec<Mutex<HashMap<Word, Rational>>>,
}

impl JointFunctional {
    /// Left-nested product of the given factors.
    pub fn new(factors: Vec<MomentFunctional>, kind: ProductKind) -> Result<Self> {
        let n = factors.len();
        Self::with_bracket(factors, kind, &Bracket::left_nested(n.max(1)))
    }

    pub fn with_bracket(
        factors: Vec<MomentFunctional>,
        kind: ProductKind,
        bracket: &Bracket,
    ) -> Result<Self> {
        let space = FreeProduct::new(factors.iter().map(|f| f.algebra().clone()).collect())?;
        if kind.requires_non_unital() && space.is_unital() {
            return Err(Error::RegimeMismatch(format!(
                "the {kind} product needs non-unital functionals"
            )));
        }
        let mut order = Vec::new();
        bracket.leaves(&mut order);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..factors.len()).collect::<Vec<_>>() {
            return Err(Error::SignatureMismatch(format!(
                "bracketing uses factors {order:?} but {} were given",
                factors.len()
            )));
        }
        let leaves = match &kind {
            ProductKind::QDeformed { q, .. } => {
                let inv = q.recip();
                factors
                    .iter()
                    .map(|f| f.scale(&inv))
                    .collect::<Result<Vec<_>>>()?
            }
            _ => factors.clone(),
        };
        let mut nodes = Vec::new();
        let root = Self::compile(bracket, factors.len(), &mut nodes);
        let memo = nodes.iter().map(|_| Mutex::new(HashMap::new())).collect();
        Ok(Self {
            space,
            factors,
            leaves,
            kind,
            nodes,
            root,
            memo,
        })
    }

    fn compile(b: &Bracket, n: usize, nodes: &mut Vec<Node>) -> usize {
        let node = match b {
            Bracket::Leaf(i) => Node::Leaf(*i),
            Bracket::Pair(l, r) => {
                let mut under_left = Vec::new();
                l.leaves(&mut under_left);
                let mut left_side = vec![false; n];
                for f in under_left {
                    left_side[f] = true;
                }
                let left = Self::compile(l, n, nodes);
                let right = Self::compile(r, n, nodes);
                Node::Pair {
                    left,
                    right,
                    left_side,
                }
            }
        };
        nodes.push(node);
        nodes.len() - 1
    }

    pub fn kind(&self) -> &ProductKind {
        &self.kind
    }

    pub fn factors(&self) -> &[MomentFunctional] {
        &self.factors
    }

    pub fn space(&self) -> &FreeProduct {
        &self.space
    }

    /// Joint moment of a normal-form word.
    pub fn eval(&self, w: &Word) -> Result<Rational> {
        self.space.check_word(w)?;
        let v = self.eval_node(self.root, w)?;
        Ok(match &self.kind {
            ProductKind::QDeformed { q, .. } => v * q,
            _ => v,
        })
    }

    /// Linear extension of [`eval`](Self::eval).
    pub fn eval_polynomial(&self, p: &Polynomial) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (w, c) in p.terms() {
            acc = rational::add(&acc, &rational::mul(&self.eval(w)?, c));
        }
        Ok(acc)
    }

    fn eval_node(&self, node: usize, w: &Word) -> Result<Rational> {
        if w.is_empty() {
            return Ok(Rational::one());
        }
        let (left, right, left_side) = match &self.nodes[node] {
            Node::Leaf(i) => return self.eval_leaf(*i, w),
            Node::Pair {
                left,
                right,
                left_side,
            } => (*left, *right, left_side),
        };
        if let Some(v) = self.memo[node].lock().unwrap().get(w) {
            return Ok(v.clone());
        }

        // maximal runs of blocks belonging to one side
        let mut runs: Vec<(bool, Vec<Block>)> = Vec::new();
        for b in w.blocks() {
            let side = left_side[b.factor];
            match runs.last_mut() {
                Some((s, blocks)) if *s == side => blocks.push(b.clone()),
                _ => runs.push((side, vec![b.clone()])),
            }
        }
        let child = |is_left: bool| if is_left { left } else { right };
        let side_value = |is_left: bool, blocks: &[Block]| -> Result<Rational> {
            self.eval_node(child(is_left), &Word::merged(blocks.iter().cloned()))
        };
        let joined = |is_left: bool| -> Word {
            Word::merged(
                runs.iter()
                    .filter(|(s, _)| *s == is_left)
                    .flat_map(|(_, b)| b.iter().cloned()),
            )
        };

        let value = if runs.len() == 1 {
            side_value(runs[0].0, &runs[0].1)?
        } else {
            match self.kind.base() {
                ProductKind::Tensor => {
                    self.eval_node(left, &joined(true))? * self.eval_node(right, &joined(false))?
                }
                ProductKind::Boolean => {
                    let mut acc = Rational::one();
                    for (s, b) in &runs {
                        acc = rational::mul(&acc, &side_value(*s, b)?);
                    }
                    acc
                }
                ProductKind::Monotone => {
                    let mut acc = self.eval_node(left, &joined(true))?;
                    for (_, b) in runs.iter().filter(|(s, _)| !*s) {
                        acc = rational::mul(&acc, &side_value(false, b)?);
                    }
                    acc
                }
                ProductKind::AntiMonotone => {
                    let mut acc = self.eval_node(right, &joined(false))?;
                    for (_, b) in runs.iter().filter(|(s, _)| *s) {
                        acc = rational::mul(&acc, &side_value(true, b)?);
                    }
                    acc
                }
                ProductKind::Degenerate => Rational::zero(),
                ProductKind::Free => {
                    let singles = runs
                        .iter()
                        .map(|(s, b)| side_value(*s, b))
                        .collect::<Result<Vec<_>>>()?;
                    self.free_recursion(node, &runs, &singles)?
                }
                ProductKind::QDeformed { .. } => unreachable!("base() strips the deformation"),
            }
        };

        self.memo[node]
            .lock()
            .unwrap()
            .insert(w.clone(), value.clone());
        Ok(value)
    }

    /// Sum over proper subsets `I` of the runs of
    /// `(-1)^(m - |I| + 1) · value(∏_{k∈I} a_k) · ∏_{k∉I} φ(a_k)`.
    fn free_recursion(
        &self,
        node: usize,
        runs: &[(bool, Vec<Block>)],
        singles: &[Rational],
    ) -> Result<Rational> {
        let m = runs.len();
        let full = (1usize << m) - 1;
        // outside[s] = product of the singles indexed by s
        let mut outside: Vec<Rational> = Vec::with_capacity(full + 1);
        outside.push(Rational::one());
        for s in 1..=full {
            let low = s.trailing_zeros() as usize;
            let rest = &outside[s & (s - 1)];
            outside.push(rational::mul(rest, &singles[low]));
        }
        let mut total = Rational::zero();
        for subset in 0..full {
            let weight = &outside[full ^ subset];
            if weight.is_zero() {
                continue;
            }
            let kept = subset.count_ones() as usize;
            let inner = Word::merged(
                runs.iter()
                    .enumerate()
                    .filter(|(k, _)| subset & (1 << k) != 0)
                    .flat_map(|(_, (_, b))| b.iter().cloned()),
            );
            let value = self.eval_node(node, &inner)?;
            if value.is_zero() {
                continue;
            }
            let term = rational::mul(&value, weight);
            total = if (m - kept + 1).is_multiple_of(2) {
                rational::add(&total, &term)
            } else {
                rational::add(&total, &-term)
            };
        }
        Ok(total)
    }

    fn eval_leaf(&self, factor: usize, w: &Word) -> Result<Rational> {
        match w.blocks() {
            [b] if b.factor == factor => self.leaves[factor].value(&b.monomial).cloned(),
            _ => Err(Error::SignatureMismatch(format!(
                "word does not live in factor {factor}"
            ))),
        }
    }
}
