//! Free algebras on named generators: signatures, monomials, elements and
//! substitution homomorphisms.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    /// Z2-degree, 0 or 1.
    pub degree: u8,
}

/// A free algebra over named generators, optionally unital, with a Z2-degree
/// per generator. Ungraded algebras have every degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSignature {
    name: String,
    unital: bool,
    generators: Vec<Generator>,
}

impl AlgebraSignature {
    pub fn new<S, G>(name: S, unital: bool, generators: G) -> Result<Self>
    where
        S: Into<String>,
        G: IntoIterator,
        G::Item: Into<(String, u8)>,
    {
        let name = name.into();
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for g in generators {
            let (gname, degree) = g.into();
            if degree > 1 {
                return Err(Error::InvalidDegree(degree));
            }
            if !seen.insert(gname.clone()) {
                return Err(Error::DuplicateGenerator {
                    algebra: name,
                    generator: gname,
                });
            }
            gens.push(Generator {
                name: gname,
                degree,
            });
        }
        Ok(Self {
            name,
            unital,
            generators: gens,
        })
    }

    /// Ungraded signature from a list of generator names.
    pub fn ungraded(name: &str, unital: bool, generators: &[&str]) -> Result<Self> {
        Self::new(
            name,
            unital,
            generators.iter().map(|g| (g.to_string(), 0u8)),
        )
    }

    /// The one-dimensional unital algebra spanned by the unit.
    pub fn scalars(name: &str) -> Self {
        Self {
            name: name.to_string(),
            unital: true,
            generators: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// True when some generator is odd.
    pub fn is_graded(&self) -> bool {
        self.generators.iter().any(|g| g.degree == 1)
    }

    /// Same generators with the unital flag replaced.
    pub fn with_unital(&self, unital: bool) -> Self {
        Self {
            unital,
            ..self.clone()
        }
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator {
                algebra: self.name.clone(),
                generator: name.to_string(),
            })
    }

    pub fn monomial(&self, letters: &[&str]) -> Result<Monomial> {
        let m = letters
            .iter()
            .map(|l| self.generator_index(l))
            .collect::<Result<Vec<_>>>()?;
        let m = Monomial(m);
        self.check_monomial(&m)?;
        Ok(m)
    }

    /// Parses space-separated generator names; the empty string is the unit.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let letters: Vec<&str> = text.split_whitespace().collect();
        self.monomial(&letters)
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if let Some(&bad) = m.0.iter().find(|&&l| l >= self.generators.len()) {
            return Err(Error::UnknownGenerator {
                algebra: self.name.clone(),
                generator: format!("#{bad}"),
            });
        }
        if m.is_unit() && !self.unital {
            return Err(Error::EmptyMonomial);
        }
        Ok(())
    }

    pub fn degree(&self, m: &Monomial) -> u8 {
        m.0.iter()
            .map(|&l| self.generators[l].degree)
            .fold(0, |acc, d| acc ^ d)
    }

    /// Space-separated generator names, the form used as moment-table keys.
    pub fn render(&self, m: &Monomial) -> String {
        let names: Vec<&str> = m
            .0
            .iter()
            .map(|&l| self.generators[l].name.as_str())
            .collect();
        names.join(" ")
    }

    /// Every monomial of length `min_len..=max_len`, shortest first, then
    /// lexicographic in generator order.
    pub fn monomials(&self, min_len: usize, max_len: usize) -> Vec<Monomial> {
        let g = self.generators.len();
        let mut out = Vec::new();
        let mut layer = vec![Monomial::unit()];
        for len in 0..=max_len {
            if len >= min_len {
                out.extend(layer.iter().cloned());
            }
            if len == max_len || g == 0 {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|m| (0..g).map(move |l| m.times(&Monomial::letter(l))))
                .collect();
        }
        out
    }
}

/// A word in the generators of one algebra, stored as generator indices.
/// The empty monomial is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn letter(index: usize) -> Self {
        Self(vec![index])
    }

    pub fn from_indices(indices: Vec<usize>) -> Self {
        Self(indices)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn extend(&mut self, other: &Monomial) {
        self.0.extend_from_slice(&other.0);
    }
}

/// A finite linear combination of monomials of a single algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::term(Monomial::unit(), c)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = crate::rational::add(o.get(), &c);
                *o.get_mut() = sum;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
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

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), crate::rational::mul(v, c)))
                .collect(),
        }
    }

    pub fn times(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.times(m2), crate::rational::mul(c1, c2));
            }
        }
        out
    }

    /// Degree shared by every term, or `None` for a mixed-degree element.
    /// The zero element counts as homogeneous of any degree.
    pub fn homogeneous_degree(&self, sig: &AlgebraSignature) -> Option<Option<u8>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = sig.degree(m);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        Some(deg)
    }

    pub fn render(&self, sig: &AlgebraSignature) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let body = if m.is_unit() {
                "1".to_string()
            } else {
                sig.render(m)
            };
            if c.is_one() {
                s.push_str(&body);
            } else {
                let _ = write!(s, "{}*{}", format_rational(c), body);
            }
        }
        s
    }
}

/// A unit-preserving (in the unital regime) algebra homomorphism between free
/// algebras, given by the images of the source generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Arc<AlgebraSignature>,
    target: Arc<AlgebraSignature>,
    images: Vec<Element>,
}

impl Homomorphism {
    pub fn new(
        source: Arc<AlgebraSignature>,
        target: Arc<AlgebraSignature>,
        images: Vec<Element>,
    ) -> Result<Self> {
        if images.len() != source.generator_count() {
            return Err(Error::SignatureMismatch(format!(
                "{} images for {} generators of `{}`",
                images.len(),
                source.generator_count(),
                source.name()
            )));
        }
        if source.is_unital() != target.is_unital() {
            return Err(Error::RegimeMismatch(
                "homomorphism must map unital to unital and non-unital to non-unital".into(),
            ));
        }
        let graded = source.is_graded() || target.is_graded();
        for (gen, image) in source.generators().iter().zip(&images) {
            for (m, _) in image.terms() {
                target.check_monomial(m)?;
            }
            if graded {
                match image.homogeneous_degree(&target) {
                    Some(None) => {}
                    Some(Some(d)) if d == gen.degree => {}
                    _ => {
                        return Err(Error::RegimeMismatch(format!(
                            "image of `{}` does not have degree {}",
                            gen.name, gen.degree
                        )))
                    }
                }
            }
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    pub fn identity(sig: Arc<AlgebraSignature>) -> Self {
        let images = (0..sig.generator_count())
            .map(|l| Element::monomial(Monomial::letter(l)))
            .collect();
        Self {
            source: sig.clone(),
            target: sig,
            images,
        }
    }

    pub fn source(&self) -> &Arc<AlgebraSignature> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraSignature> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Longest monomial among the generator images.
    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Element::max_len).max().unwrap_or(0)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        m.0.iter()
            .fold(Element::one(), |acc, &l| acc.times(&self.images[l]))
    }

    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out = out.plus(&self.apply_monomial(m).scaled(c));
        }
        out
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        if inner.target != self.source {
            return Err(Error::SignatureMismatch(format!(
                "cannot compose: `{}` is not `{}`",
                inner.target.name(),
                self.source.name()
            )));
        }
        let images = inner.images.iter().map(|e| self.apply(e)).collect();
        Homomorphism::new(inner.source.clone(), self.target.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sig() -> AlgebraSignature {
        AlgebraSignature::ungraded("A", true, &["x", "y"]).unwrap()
    }

    #[test]
    fn rejects_duplicate_and_bad_degree() {
        let dup = AlgebraSignature::ungraded("A", true, &["x", "x"]);
        assert!(matches!(dup, Err(Error::DuplicateGenerator { .. })));
        let deg = AlgebraSignature::new("A", true, [("x".to_string(), 2u8)]);
        assert_eq!(deg, Err(Error::InvalidDegree(2)));
    }

    #[test]
    fn monomial_parsing_and_degree() {
        let s = AlgebraSignature::new(
            "B",
            true,
            [("a".to_string(), 1u8), ("c".to_string(), 0u8)],
        )
        .unwrap();
        let m = s.parse_monomial("a c a").unwrap();
        assert_eq!(s.degree(&m), 0);
        assert_eq!(s.degree(&s.parse_monomial("a c").unwrap()), 1);
        assert_eq!(s.degree(&Monomial::unit()), 0);
        assert_eq!(s.render(&m), "a c a");
        assert!(s.parse_monomial("z").is_err());
    }

    #[test]
    fn empty_monomial_needs_unit() {
        let nu = sig().with_unital(false);
        assert_eq!(nu.parse_monomial(""), Err(Error::EmptyMonomial));
        assert!(sig().parse_monomial("").unwrap().is_unit());
    }

    #[test]
    fn monomial_enumeration_counts() {
        let s = sig();
        assert_eq!(s.monomials(0, 3).len(), 1 + 2 + 4 + 8);
        assert_eq!(s.monomials(1, 2).len(), 6);
        assert_eq!(AlgebraSignature::scalars("C").monomials(0, 4).len(), 1);
    }

    #[test]
    fn element_arithmetic_cancels() {
        let x = Element::monomial(Monomial::letter(0));
        let minus_x = x.scaled(&int(-1));
        assert!(x.plus(&minus_x).is_zero());
        let xy = x.times(&Element::monomial(Monomial::letter(1)));
        assert_eq!(xy.terms().next().unwrap().0, &Monomial(vec![0, 1]));
    }

    #[test]
    fn graded_homomorphism_must_preserve_degree() {
        let s = Arc::new(
            AlgebraSignature::new(
                "B",
                true,
                [("a".to_string(), 1u8), ("c".to_string(), 0u8)],
            )
            .unwrap(),
        );
        let a = Element::monomial(Monomial::letter(0));
        let c = Element::monomial(Monomial::letter(1));
        // a -> a c is odd, c -> a a is even
        let ok = Homomorphism::new(
            s.clone(),
            s.clone(),
            vec![a.times(&c), a.times(&a)],
        );
        assert!(ok.is_ok());
        let bad = Homomorphism::new(s.clone(), s.clone(), vec![c.clone(), c]);
        assert!(matches!(bad, Err(Error::RegimeMismatch(_))));
    }

    #[test]
    fn composition_substitutes() {
        let s = Arc::new(sig());
        let x = Element::monomial(Monomial::letter(0));
        let y = Element::monomial(Monomial::letter(1));
        let square = Homomorphism::new(s.clone(), s.clone(), vec![x.times(&x), y.clone()]).unwrap();
        let sum = Homomorphism::new(s.clone(), s.clone(), vec![x.plus(&y), y.clone()]).unwrap();
        // square ∘ sum : x -> x^2 + y
        let comp = square.compose(&sum).unwrap();
        assert_eq!(comp.images()[0], x.times(&x).plus(&y));
    }
}
