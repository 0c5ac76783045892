//! Finite classical probability spaces.
//!
//! Every σ-algebra here is the full power set of a finite outcome set, so a
//! pair of random variables is independent exactly when the joint law
//! factorizes on atoms; all other events follow by additivity.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// Finite outcome set with exact weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteProbSpace {
    outcomes: Vec<String>,
    weights: Vec<Rational>,
}

impl FiniteProbSpace {
    pub fn new(outcomes: Vec<String>, weights: Vec<Rational>) -> Result<Self> {
        if outcomes.len() != weights.len() {
            return Err(Error::InvalidSpace(format!(
                "{} outcomes but {} weights",
                outcomes.len(),
                weights.len()
            )));
        }
        if outcomes.is_empty() {
            return Err(Error::InvalidSpace("no outcomes".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for o in &outcomes {
            if !seen.insert(o.as_str()) {
                return Err(Error::InvalidSpace(format!("duplicate outcome `{o}`")));
            }
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidSpace(format!(
                "negative weight for `{}`",
                outcomes[i]
            )));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidSpace(format!(
                "weights sum to {}",
                format_rational(&total)
            )));
        }
        Ok(Self { outcomes, weights })
    }

    /// Equal weights on the given labels.
    pub fn uniform<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let outcomes: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = outcomes.len() as i64;
        let w = if n == 0 {
            Rational::zero()
        } else {
            crate::rational::ratio(1, n)
        };
        Self::new(outcomes.clone(), vec![w; outcomes.len()])
    }

    pub fn point_mass(label: &str) -> Self {
        Self {
            outcomes: vec![label.to_string()],
            weights: vec![Rational::one()],
        }
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == label)
    }

    /// Weight of an outcome; zero for labels outside the space.
    pub fn weight(&self, label: &str) -> Rational {
        self.index_of(label)
            .map(|i| self.weights[i].clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Label-to-weight map, ignoring outcome order. Two spaces with the same
    /// law compare equal here.
    pub fn law(&self) -> BTreeMap<String, Rational> {
        self.outcomes
            .iter()
            .cloned()
            .zip(self.weights.iter().cloned())
            .collect()
    }

    pub fn to_document(&self) -> SpaceDocument {
        SpaceDocument {
            outcomes: self.outcomes.clone(),
            weights: self
                .outcomes
                .iter()
                .zip(&self.weights)
                .map(|(o, w)| (o.clone(), format_rational(w)))
                .collect(),
        }
    }

    pub fn from_document(doc: &SpaceDocument) -> Result<Self> {
        let weights = doc
            .outcomes
            .iter()
            .map(|o| {
                let w = doc
                    .weights
                    .get(o)
                    .ok_or_else(|| Error::InvalidSpace(format!("no weight for `{o}`")))?;
                parse_rational(w)
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(extra) = doc.weights.keys().find(|k| !doc.outcomes.contains(k)) {
            return Err(Error::InvalidSpace(format!("weight for unknown outcome `{extra}`")));
        }
        Self::new(doc.outcomes.clone(), weights)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpaceDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("space documents serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDocument {
    pub outcomes: Vec<String>,
    pub weights: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableDocument {
    pub map: BTreeMap<String, String>,
}

/// Total map from the outcomes of a space into a finite label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomVariable {
    domain: FiniteProbSpace,
    codomain: Vec<String>,
    /// `map[i]` indexes `codomain` for outcome `i`
    map: Vec<usize>,
}

impl RandomVariable {
    /// Builds a variable from an outcome-to-label function. The codomain is
    /// the set of labels hit, in order of first appearance.
    pub fn from_fn(domain: &FiniteProbSpace, f: impl Fn(&str) -> String) -> Self {
        let mut codomain: Vec<String> = Vec::new();
        let map = domain
            .outcomes
            .iter()
            .map(|o| {
                let label = f(o);
                match codomain.iter().position(|c| *c == label) {
                    Some(i) => i,
                    None => {
                        codomain.push(label);
                        codomain.len() - 1
                    }
                }
            })
            .collect();
        Self {
            domain: domain.clone(),
            codomain,
            map,
        }
    }

    /// Explicit codomain, which may contain labels that are never hit.
    pub fn new(domain: &FiniteProbSpace, codomain: Vec<String>, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.len() {
            return Err(Error::InvalidSpace(format!(
                "variable defined on {} of {} outcomes",
                map.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&i| i >= codomain.len()) {
            return Err(Error::InvalidSpace(format!("codomain index {bad} out of range")));
        }
        Ok(Self {
            domain: domain.clone(),
            codomain,
            map,
        })
    }

    pub fn identity(domain: &FiniteProbSpace) -> Self {
        Self::from_fn(domain, str::to_string)
    }

    pub fn domain(&self) -> &FiniteProbSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn value(&self, outcome: usize) -> &str {
        &self.codomain[self.map[outcome]]
    }

    pub fn from_document(domain: &FiniteProbSpace, doc: &VariableDocument) -> Result<Self> {
        for key in doc.map.keys() {
            if domain.index_of(key).is_none() {
                return Err(Error::InvalidSpace(format!("map mentions unknown outcome `{key}`")));
            }
        }
        if let Some(missing) = domain.outcomes.iter().find(|o| !doc.map.contains_key(*o)) {
            return Err(Error::InvalidSpace(format!("map is not defined on `{missing}`")));
        }
        Ok(Self::from_fn(domain, |o| doc.map[o].clone()))
    }

    pub fn from_json(domain: &FiniteProbSpace, text: &str) -> Result<Self> {
        let doc: VariableDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        Self::from_document(domain, &doc)
    }

    pub fn to_document(&self) -> VariableDocument {
        VariableDocument {
            map: (0..self.domain.len())
                .map(|i| (self.domain.outcomes[i].clone(), self.value(i).to_string()))
                .collect(),
        }
    }
}

/// The law `P ∘ X⁻¹` on the codomain of `X`.
pub fn pushforward(x: &RandomVariable) -> FiniteProbSpace {
    let mut weights = vec![Rational::zero(); x.codomain.len()];
    for (i, w) in x.domain.weights.iter().enumerate() {
        weights[x.map[i]] += w;
    }
    FiniteProbSpace {
        outcomes: x.codomain.clone(),
        weights,
    }
}

pub fn pair_label(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Product measure on pairs, labelled `"(a,b)"` in row-major order.
pub fn product_space(p1: &FiniteProbSpace, p2: &FiniteProbSpace) -> FiniteProbSpace {
    let mut outcomes = Vec::with_capacity(p1.len() * p2.len());
    let mut weights = Vec::with_capacity(p1.len() * p2.len());
    for (a, wa) in p1.outcomes.iter().zip(&p1.weights) {
        for (b, wb) in p2.outcomes.iter().zip(&p2.weights) {
            outcomes.push(pair_label(a, b));
            weights.push(wa * wb);
        }
    }
    FiniteProbSpace { outcomes, weights }
}

/// Coordinate projections of `product_space(p1, p2)`.
pub fn projections(
    p1: &FiniteProbSpace,
    p2: &FiniteProbSpace,
) -> (RandomVariable, RandomVariable) {
    let prod = product_space(p1, p2);
    let n2 = p2.len();
    let first = RandomVariable::new(&prod, p1.outcomes.clone(), (0..prod.len()).map(|i| i / n2).collect())
        .expect("projection is total");
    let second = RandomVariable::new(&prod, p2.outcomes.clone(), (0..prod.len()).map(|i| i % n2).collect())
        .expect("projection is total");
    (first, second)
}

/// Both characterizations of independence for two variables on one space:
/// factorization of the joint law on atoms, and equality of the law of
/// `ω ↦ (X₁(ω), X₂(ω))` with the product of the marginals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Independence {
    pub atomwise: bool,
    pub jointfactor: bool,
}

pub fn independence_equivalence(x1: &RandomVariable, x2: &RandomVariable) -> Result<Independence> {
    if x1.domain != x2.domain {
        return Err(Error::DomainMismatch);
    }
    let m1 = pushforward(x1);
    let m2 = pushforward(x2);

    let mut joint: HashMap<(usize, usize), Rational> = HashMap::new();
    for (i, w) in x1.domain.weights.iter().enumerate() {
        *joint.entry((x1.map[i], x2.map[i])).or_insert_with(Rational::zero) += w;
    }
    let atomwise = (0..x1.codomain.len()).all(|e1| {
        (0..x2.codomain.len()).all(|e2| {
            let p = joint.get(&(e1, e2)).cloned().unwrap_or_else(Rational::zero);
            p == &m1.weights[e1] * &m2.weights[e2]
        })
    });

    let h = RandomVariable::from_fn(&x1.domain, |o| {
        let i = x1.domain.index_of(o).expect("outcome of the domain");
        pair_label(x1.value(i), x2.value(i))
    });
    let law_h = pushforward(&h).law();
    let product = product_space(&m1, &m2).law();
    // atoms missing from one side carry weight zero
    let jointfactor = product
        .iter()
        .all(|(k, w)| law_h.get(k).cloned().unwrap_or_else(Rational::zero) == *w)
        && law_h.iter().all(|(k, w)| product.contains_key(k) || w.is_zero());

    Ok(Independence {
        atomwise,
        jointfactor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn coin() -> FiniteProbSpace {
        FiniteProbSpace::uniform(["0", "1"]).unwrap()
    }

    #[test]
    fn rejects_bad_weights() {
        let o = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(FiniteProbSpace::new(o(&["a", "b"]), vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(FiniteProbSpace::new(o(&["a", "b"]), vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert!(FiniteProbSpace::new(o(&["a", "a"]), vec![ratio(1, 2), ratio(1, 2)]).is_err());
        assert!(FiniteProbSpace::new(o(&["a"]), vec![]).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let four = FiniteProbSpace::uniform(["0", "1", "2", "3"]).unwrap();
        assert_eq!(pushforward(&RandomVariable::identity(&four)).law(), four.law());
        let constant = pushforward(&RandomVariable::from_fn(&four, |_| "c".into()));
        assert_eq!(constant.weights(), &[ratio(1, 1)]);
        let parity = RandomVariable::from_fn(&four, |o| {
            if o.parse::<u8>().unwrap() % 2 == 0 { "even" } else { "odd" }.to_string()
        });
        assert_eq!(pushforward(&parity).weights(), &[ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn product_examples() {
        let two = product_space(&coin(), &coin());
        assert_eq!(two.len(), 4);
        assert!(two.weights().iter().all(|w| *w == ratio(1, 4)));
        assert_eq!(two.outcomes()[1], "(0,1)");

        let p1 = FiniteProbSpace::new(vec!["a".into(), "b".into()], vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let p = product_space(&p1, &coin());
        assert_eq!(p.weights(), &[ratio(1, 6), ratio(1, 6), ratio(1, 3), ratio(1, 3)]);

        let unit = product_space(&p1, &FiniteProbSpace::point_mass("*"));
        assert_eq!(unit.weights(), p1.weights());

        let (x, y) = projections(&p1, &coin());
        assert_eq!(pushforward(&x).law(), p1.law());
        assert_eq!(pushforward(&y).law(), coin().law());
    }

    #[test]
    fn independence_examples() {
        let (x, y) = projections(&coin(), &coin());
        let r = independence_equivalence(&x, &y).unwrap();
        assert!(r.atomwise && r.jointfactor);

        let id = RandomVariable::identity(&coin());
        let r = independence_equivalence(&id, &id).unwrap();
        assert!(!r.atomwise && !r.jointfactor);

        let c = RandomVariable::from_fn(&coin(), |_| "k".into());
        let r = independence_equivalence(&id, &c).unwrap();
        assert!(r.atomwise && r.jointfactor);

        let other = RandomVariable::identity(&FiniteProbSpace::uniform(["x", "y"]).unwrap());
        assert_eq!(independence_equivalence(&id, &other), Err(Error::DomainMismatch));
    }

    #[test]
    fn unused_codomain_labels() {
        let x = RandomVariable::new(&coin(), vec!["u".into(), "v".into(), "w".into()], vec![0, 1]).unwrap();
        let y = RandomVariable::from_fn(&coin(), |_| "k".into());
        let r = independence_equivalence(&x, &y).unwrap();
        assert!(r.atomwise && r.jointfactor);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"outcomes":["h","t"],"weights":{"h":"1/3","t":"2/3"}}"#;
        let space = FiniteProbSpace::from_json(text).unwrap();
        assert_eq!(space.weight("t"), ratio(2, 3));
        assert_eq!(FiniteProbSpace::from_json(&space.to_json()).unwrap(), space);

        let x = RandomVariable::from_json(&space, r#"{"map":{"h":"1","t":"0"}}"#).unwrap();
        assert_eq!(x.value(0), "1");
        assert!(RandomVariable::from_json(&space, r#"{"map":{"h":"1"}}"#).is_err());
        assert!(FiniteProbSpace::from_json(r#"{"outcomes":["h"],"weights":{"h":"1","t":"0"}}"#).is_err());
    }
}
