//! Linear functionals on free algebras, specified by their moments on every
//! monomial up to a degree bound.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSignature, Element, Homomorphism, Monomial};
use crate::error::{Error, Result};
use crate::rational::{self, format_rational, parse_rational, Rational};

/// Moment table of a linear functional, total on monomials of length at most
/// `max_degree`. In the unital regime the unit has moment 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentFunctional {
    algebra: Arc<AlgebraSignature>,
    max_degree: usize,
    // dense, indexed by `slot`; entry 0 is the unit and holds 1 in both regimes
    table: Vec<Rational>,
}

fn slot(generators: usize, m: &Monomial) -> usize {
    let len = m.len();
    let offset: usize = (0..len).map(|l| generators.pow(l as u32)).sum();
    offset + m.letters().iter().fold(0, |acc, &l| acc * generators + l)
}

fn table_size(generators: usize, max_degree: usize) -> usize {
    if generators == 0 {
        1
    } else {
        (0..=max_degree).map(|l| generators.pow(l as u32)).sum()
    }
}

impl MomentFunctional {
    /// Builds a functional whose moment on `m` is `moment(m)`; the unit is
    /// always assigned 1.
    pub fn from_fn<F>(algebra: Arc<AlgebraSignature>, max_degree: usize, mut moment: F) -> Self
    where
        F: FnMut(&Monomial) -> Rational,
    {
        let g = algebra.generator_count();
        let mut table = vec![Rational::zero(); table_size(g, max_degree)];
        for m in algebra.monomials(0, max_degree) {
            let v = if m.is_unit() { Rational::one() } else { moment(&m) };
            table[slot(g, &m)] = v;
        }
        Self {
            algebra,
            max_degree,
            table,
        }
    }

    /// Builds a functional from an explicit table, which must cover every
    /// monomial up to `max_degree` (the unit only in the unital regime, with
    /// value 1).
    pub fn from_table(
        algebra: Arc<AlgebraSignature>,
        max_degree: usize,
        entries: &HashMap<Monomial, Rational>,
    ) -> Result<Self> {
        for m in entries.keys() {
            algebra.check_monomial(m)?;
            if m.len() > max_degree {
                return Err(Error::InvalidState(format!(
                    "entry `{}` exceeds max_degree {max_degree}",
                    algebra.render(m)
                )));
            }
        }
        if algebra.is_unital() {
            match entries.get(&Monomial::unit()) {
                Some(v) if v.is_one() => {}
                Some(v) => {
                    return Err(Error::InvalidState(format!(
                        "unital functional must have moment 1 on the unit, got {}",
                        format_rational(v)
                    )))
                }
                None => return Err(Error::InvalidState("missing moment of the unit".into())),
            }
        }
        for m in algebra.monomials(1, max_degree) {
            if !entries.contains_key(&m) {
                return Err(Error::InvalidState(format!(
                    "missing moment for `{}`",
                    algebra.render(&m)
                )));
            }
        }
        Ok(Self::from_fn(algebra, max_degree, |m| entries[m].clone()))
    }

    /// The unique unital functional on the scalars.
    pub fn delta(name: &str) -> Self {
        Self::from_fn(Arc::new(AlgebraSignature::scalars(name)), 0, |_| Rational::one())
    }

    pub fn algebra(&self) -> &Arc<AlgebraSignature> {
        &self.algebra
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_unital(&self) -> bool {
        self.algebra.is_unital()
    }

    /// Vanishes on every odd monomial. Trivially true for ungraded algebras.
    pub fn is_even(&self) -> bool {
        !self.algebra.is_graded()
            || self
                .entries()
                .all(|(m, v)| v.is_zero() || self.algebra.degree(&m) == 0)
    }

    /// Moment of a monomial of this algebra.
    pub fn moment(&self, m: &Monomial) -> Result<&Rational> {
        if m.is_unit() && !self.is_unital() {
            return Err(Error::EmptyMonomial);
        }
        self.value(m)
    }

    /// Moment lookup in which the unit evaluates to 1 in either regime. Used by
    /// product formulas, where an empty product of letters stands for the
    /// unit of the unitization.
    pub(crate) fn value(&self, m: &Monomial) -> Result<&Rational> {
        if m.len() > self.max_degree {
            return Err(Error::DegreeExceeded {
                monomial: self.algebra.render(m),
                length: m.len(),
                max_degree: self.max_degree,
            });
        }
        Ok(&self.table[slot(self.algebra.generator_count(), m)])
    }

    /// All (monomial, moment) pairs, unit excluded in the non-unital regime.
    pub fn entries(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        let min = if self.is_unital() { 0 } else { 1 };
        self.algebra
            .monomials(min, self.max_degree)
            .into_iter()
            .map(move |m| {
                let v = &self.table[slot(self.algebra.generator_count(), &m)];
                (m, v)
            })
    }

    /// Linear extension of the moment table.
    pub fn eval(&self, e: &Element) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in e.terms() {
            acc = rational::add(&acc, &rational::mul(self.moment(m)?, c));
        }
        Ok(acc)
    }

    /// `self ∘ j`, specified to the largest degree the table supports.
    pub fn pullback(&self, j: &Homomorphism) -> Result<MomentFunctional> {
        let stretch = j.max_image_len();
        let degree = self.max_degree.checked_div(stretch).unwrap_or(self.max_degree);
        self.pullback_to(j, degree)
    }

    /// `self ∘ j` with an explicit degree bound for the result.
    pub fn pullback_to(&self, j: &Homomorphism, max_degree: usize) -> Result<MomentFunctional> {
        if j.target().as_ref() != self.algebra.as_ref() {
            return Err(Error::SignatureMismatch(format!(
                "homomorphism lands in `{}`, functional lives on `{}`",
                j.target().name(),
                self.algebra.name()
            )));
        }
        let source = j.source().clone();
        let mut table = HashMap::new();
        let min = if source.is_unital() { 0 } else { 1 };
        for m in source.monomials(min, max_degree) {
            let v = if m.is_unit() {
                Rational::one()
            } else {
                self.eval(&j.apply_monomial(&m))?
            };
            table.insert(m, v);
        }
        MomentFunctional::from_table(source, max_degree, &table)
    }

    /// Unital extension of a non-unital functional to the unitization.
    pub fn unitize(&self) -> Result<MomentFunctional> {
        if self.is_unital() {
            return Err(Error::AlreadyUnital);
        }
        Ok(Self {
            algebra: Arc::new(self.algebra.with_unital(true)),
            max_degree: self.max_degree,
            table: self.table.clone(),
        })
    }

    /// Multiplies every moment by `c`; only meaningful without a unit.
    pub fn scale(&self, c: &Rational) -> Result<MomentFunctional> {
        if self.is_unital() {
            return Err(Error::RegimeMismatch(
                "scaling a unital functional breaks unitality".into(),
            ));
        }
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut table: Vec<Rational> = self.table.iter().map(|v| v * c).collect();
        table[0] = Rational::one();
        Ok(Self {
            algebra: self.algebra.clone(),
            max_degree: self.max_degree,
            table,
        })
    }

    pub fn to_document(&self) -> StateDocument {
        let moments = self
            .entries()
            .map(|(m, v)| (self.algebra.render(&m), format_rational(v)))
            .collect();
        StateDocument {
            algebra: AlgebraDocument::from_signature(&self.algebra),
            max_degree: self.max_degree,
            moments,
        }
    }

    pub fn from_document(doc: &StateDocument) -> Result<Self> {
        let algebra = Arc::new(doc.algebra.to_signature()?);
        let mut table = HashMap::new();
        for (key, value) in &doc.moments {
            let m = algebra.parse_monomial(key)?;
            let v = parse_rational(value)?;
            if table.insert(m, v).is_some() {
                return Err(Error::InvalidState(format!("duplicate moment key `{key}`")));
            }
        }
        Self::from_table(algebra, doc.max_degree, &table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StateDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("state documents serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDocument {
    pub name: String,
    #[serde(default)]
    pub degree: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    pub unital: bool,
    pub generators: Vec<GeneratorDocument>,
}

impl AlgebraDocument {
    pub fn from_signature(sig: &AlgebraSignature) -> Self {
        Self {
            name: sig.name().to_string(),
            unital: sig.is_unital(),
            generators: sig
                .generators()
                .iter()
                .map(|g| GeneratorDocument {
                    name: g.name.clone(),
                    degree: g.degree,
                })
                .collect(),
        }
    }

    pub fn to_signature(&self) -> Result<AlgebraSignature> {
        AlgebraSignature::new(
            self.name.clone(),
            self.unital,
            self.generators.iter().map(|g| (g.name.clone(), g.degree)),
        )
    }
}

/// JSON form of a moment functional. Keys are space-separated generator
/// names (`""` is the unit), values are exact rationals written `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateDocument {
    pub algebra: AlgebraDocument,
    pub max_degree: usize,
    #[serde(deserialize_with = "rational_map")]
    pub moments: BTreeMap<String, String>,
}

// accepts both "p/q" strings and bare JSON integers
fn rational_map<'de, D>(de: D) -> std::result::Result<BTreeMap<String, String>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let raw: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(de)?;
    raw.into_iter()
        .map(|(k, v)| match v {
            serde_json::Value::String(s) => Ok((k, s)),
            serde_json::Value::Number(n) if n.is_i64() => Ok((k, n.to_string())),
            other => Err(serde::de::Error::custom(format!(
                "moment for `{k}` must be a rational string, got {other}"
            ))),
        })
        .collect()
}
