//! Words in free products of free algebras, kept in alternating normal form,
//! and polynomials over them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraSignature, Homomorphism, Monomial};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// A maximal run of letters from one factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub factor: usize,
    pub monomial: Monomial,
}

impl Block {
    pub fn new(factor: usize, monomial: Monomial) -> Self {
        Self { factor, monomial }
    }
}

/// Normal form of a free-product monomial: adjacent blocks come from distinct
/// factors and no block is the unit. The empty word is the identified unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    blocks: Vec<Block>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Merges adjacent same-factor blocks and drops unit blocks, without
    /// validating letters against any signature.
    pub fn merged<I: IntoIterator<Item = Block>>(raw: I) -> Self {
        let mut blocks: Vec<Block> = Vec::new();
        for b in raw {
            if b.monomial.is_unit() {
                continue;
            }
            match blocks.last_mut() {
                Some(last) if last.factor == b.factor => last.monomial.extend(&b.monomial),
                _ => blocks.push(b),
            }
        }
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Total number of generator letters.
    pub fn letter_count(&self) -> usize {
        self.blocks.iter().map(|b| b.monomial.len()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::merged(self.blocks.iter().chain(other.blocks.iter()).cloned())
    }

    /// Renames factor indices; merges blocks that become adjacent.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Word {
        Word::merged(
            self.blocks
                .iter()
                .map(|b| Block::new(map(b.factor), b.monomial.clone())),
        )
    }

    /// Swaps the labels of factors 0 and 1.
    pub fn swap_factors(&self) -> Word {
        self.relabel(|f| match f {
            0 => 1,
            1 => 0,
            other => other,
        })
    }
}

/// An ordered list of factor algebras sharing one regime: either all unital
/// (free product with identified units) or all non-unital.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeProduct {
    factors: Vec<Arc<AlgebraSignature>>,
    unital: bool,
}

impl FreeProduct {
    pub fn new(factors: Vec<Arc<AlgebraSignature>>) -> Result<Self> {
        let unital = match factors.first() {
            Some(f) => f.is_unital(),
            None => return Err(Error::SignatureMismatch("no factors".into())),
        };
        if factors.iter().any(|f| f.is_unital() != unital) {
            return Err(Error::RegimeMismatch(
                "factors mix unital and non-unital algebras".into(),
            ));
        }
        Ok(Self { factors, unital })
    }

    pub fn factors(&self) -> &[Arc<AlgebraSignature>] {
        &self.factors
    }

    pub fn factor(&self, index: usize) -> Result<&Arc<AlgebraSignature>> {
        self.factors.get(index).ok_or(Error::FactorOutOfRange {
            index,
            count: self.factors.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn factor_index(&self, name: &str) -> Result<usize> {
        self.factors
            .iter()
            .position(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))
    }

    /// Validates a raw block sequence and brings it to normal form.
    pub fn normalize<I>(&self, raw: I) -> Result<Word>
    where
        I: IntoIterator<Item = (usize, Monomial)>,
    {
        let mut blocks = Vec::new();
        for (factor, monomial) in raw {
            self.factor(factor)?.check_monomial(&monomial)?;
            blocks.push(Block::new(factor, monomial));
        }
        if blocks.is_empty() && !self.unital {
            return Err(Error::EmptyMonomial);
        }
        Ok(Word::merged(blocks))
    }

    /// Checks that an already-built word is valid over these factors.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        if w.is_empty() && !self.unital {
            return Err(Error::EmptyMonomial);
        }
        for b in w.blocks() {
            self.factor(b.factor)?.check_monomial(&b.monomial)?;
        }
        Ok(())
    }

    /// Sum of all letter degrees mod 2.
    pub fn word_degree(&self, w: &Word) -> u8 {
        w.blocks()
            .iter()
            .map(|b| self.factors[b.factor].degree(&b.monomial))
            .fold(0, |acc, d| acc ^ d)
    }

    /// Renders a word as `Alg.gen` letters with runs written as powers.
    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for b in w.blocks() {
            let sig = &self.factors[b.factor];
            let letters = b.monomial.letters();
            let mut i = 0;
            while i < letters.len() {
                let mut j = i;
                while j < letters.len() && letters[j] == letters[i] {
                    j += 1;
                }
                let name = &sig.generators()[letters[i]].name;
                let mut s = format!("{}.{}", sig.name(), name);
                if j - i > 1 {
                    let _ = write!(s, "^{}", j - i);
                }
                parts.push(s);
                i = j;
            }
        }
        parts.join(" ")
    }

    pub fn render_polynomial(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in p.terms().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            if w.is_empty() {
                s.push_str(&format_rational(c));
            } else if c.is_one() {
                s.push_str(&self.render_word(w));
            } else {
                let _ = write!(s, "{} * {}", format_rational(c), self.render_word(w));
            }
        }
        s
    }
}

/// A finite linear combination of normal-form words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Word, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn times(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

/// Applies `homs[i]` to the letters of factor `i` and expands by
/// distributivity: the image of `w` under the free product of the maps.
pub fn apply_homomorphism(
    source: &FreeProduct,
    homs: &[Homomorphism],
    w: &Word,
) -> Result<Polynomial> {
    if homs.len() != source.len() {
        return Err(Error::SignatureMismatch(format!(
            "{} homomorphisms for {} factors",
            homs.len(),
            source.len()
        )));
    }
    for (h, f) in homs.iter().zip(source.factors()) {
        if h.source().as_ref() != f.as_ref() {
            return Err(Error::SignatureMismatch(format!(
                "homomorphism source `{}` does not match factor `{}`",
                h.source().name(),
                f.name()
            )));
        }
    }
    source.check_word(w)?;
    let mut acc = Polynomial::word(Word::empty());
    for b in w.blocks() {
        let image = homs[b.factor].apply_monomial(&b.monomial);
        let mut next = Polynomial::zero();
        for (pw, pc) in acc.terms() {
            for (m, c) in image.terms() {
                let raw = pw
                    .blocks()
                    .iter()
                    .cloned()
                    .chain(std::iter::once(Block::new(b.factor, m.clone())));
                next.add_term(Word::merged(raw), pc * c);
            }
        }
        acc = next;
    }
    Ok(acc)
}
