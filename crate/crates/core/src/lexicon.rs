//! JSON lexicon files.
//!
//! ```json
//! {
//!   "universe": ["c1", "c2"],
//!   "quantale": "godel",
//!   "nouns": {"cats": {"c1": 0.2, "c2": 0.8}},
//!   "vps": {"sleep": {"c1": 0.5}},
//!   "verbs": {"eat": [["c1", "c2", 0.5]]},
//!   "quantifiers": {
//!     "some": {"kind": "some"},
//!     "several": {"kind": "fuzzy", "breakpoints": [[0, 0], [0.4, 1], [1, 0]]}
//!   }
//! }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzyset::{Counting, FuzzyRelation, FuzzySet};
use crate::model::Model;
use crate::powbialg::GradeLattice;
use crate::quantale::{Grade, Quantale};
use crate::quantifier::{CrispQuantifier, FuzzyQuantifier, QuantifierDenotation};
use crate::vrel::IndexSet;

type SetSpec = BTreeMap<String, f64>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QuantifierSpec {
    Every,
    Some,
    No,
    Exactly { n: usize },
    Fuzzy { breakpoints: Vec<(f64, f64)> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lexicon {
    pub universe: Vec<String>,
    pub quantale: Quantale,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grades: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nouns: BTreeMap<String, SetSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nps: BTreeMap<String, SetSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vps: BTreeMap<String, SetSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub verbs: BTreeMap<String, Vec<(String, String, f64)>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quantifiers: BTreeMap<String, QuantifierSpec>,
}

fn set_of(u: &IndexSet, spec: &SetSpec) -> Result<FuzzySet> {
    FuzzySet::from_pairs(u, spec.iter().map(|(k, v)| (k.as_str(), *v)))
}

fn spec_of(s: &FuzzySet) -> SetSpec {
    let u = s.universe();
    s.membership()
        .iter()
        .enumerate()
        .filter(|(_, g)| **g != Grade::ZERO)
        .map(|(i, g)| (u.label(i), g.value()))
        .collect()
}

impl QuantifierSpec {
    fn denotation(&self, name: &str) -> Result<QuantifierDenotation> {
        Ok(match self {
            QuantifierSpec::Every => QuantifierDenotation::Crisp(CrispQuantifier::Every),
            QuantifierSpec::Some => QuantifierDenotation::Crisp(CrispQuantifier::Some),
            QuantifierSpec::No => QuantifierDenotation::Crisp(CrispQuantifier::No),
            QuantifierSpec::Exactly { n } => {
                QuantifierDenotation::Crisp(CrispQuantifier::Exactly(*n))
            }
            QuantifierSpec::Fuzzy { breakpoints } => {
                QuantifierDenotation::Fuzzy(FuzzyQuantifier::piecewise(name, breakpoints)?)
            }
        })
    }

    fn of(d: &QuantifierDenotation) -> Self {
        match d {
            QuantifierDenotation::Crisp(CrispQuantifier::Every) => QuantifierSpec::Every,
            QuantifierDenotation::Crisp(CrispQuantifier::Some) => QuantifierSpec::Some,
            QuantifierDenotation::Crisp(CrispQuantifier::No) => QuantifierSpec::No,
            QuantifierDenotation::Crisp(CrispQuantifier::Exactly(n)) => {
                QuantifierSpec::Exactly { n: *n }
            }
            QuantifierDenotation::Fuzzy(f) => match (f.as_crisp(), f.breakpoints()) {
                (Some(CrispQuantifier::Every), _) => QuantifierSpec::Every,
                (Some(_), _) => QuantifierSpec::Some,
                (None, pts) => QuantifierSpec::Fuzzy {
                    breakpoints: pts
                        .unwrap_or_default()
                        .iter()
                        .map(|(p, g)| (*p, g.value()))
                        .collect(),
                },
            },
        }
    }
}

impl Lexicon {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Lexicon(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lexicons always serialize")
    }

    /// Builds and validates the model.
    pub fn to_model(&self) -> Result<Model> {
        let u = IndexSet::new(self.universe.iter().cloned())?;
        let mut m = Model::new(u.clone(), self.quantale);
        for (name, spec) in &self.nouns {
            m = m.with_noun(name, set_of(&u, spec)?)?;
        }
        for (name, spec) in &self.nps {
            m = m.with_np(name, set_of(&u, spec)?)?;
        }
        for (name, spec) in &self.vps {
            m = m.with_vp(name, set_of(&u, spec)?)?;
        }
        for (name, triples) in &self.verbs {
            let rel = FuzzyRelation::from_triples(
                &u,
                triples.iter().map(|(a, b, g)| (a.as_str(), b.as_str(), *g)),
            )?;
            m = m.with_verb(name, rel)?;
        }
        for (name, spec) in &self.quantifiers {
            m = m.with_quantifier(name, spec.denotation(name)?);
        }
        if let Some(gs) = &self.grades {
            let mut values = gs.clone();
            values.extend([0.0, 1.0]);
            m = m.with_lattice(GradeLattice::from_values(&values)?);
        }
        if let Some(t) = self.threshold {
            Grade::new(t)?;
            m = m.with_counting(Counting {
                threshold: t,
                round: false,
            });
        }
        m.validate()?;
        Ok(m)
    }

    pub fn from_model(m: &Model) -> Self {
        let u = m.universe();
        let sets = |map: &BTreeMap<String, FuzzySet>| -> BTreeMap<String, SetSpec> {
            map.iter().map(|(k, s)| (k.clone(), spec_of(s))).collect()
        };
        let n = u.len();
        Lexicon {
            universe: (0..n).map(|i| u.label(i)).collect(),
            quantale: m.quantale(),
            grades: m
                .explicit_lattice()
                .map(|l| l.grades().iter().map(|g| g.value()).collect()),
            threshold: (m.counting().threshold != 0.0).then_some(m.counting().threshold),
            nouns: sets(m.nouns()),
            nps: sets(m.nps()),
            vps: sets(m.vps()),
            verbs: m
                .verbs()
                .iter()
                .map(|(k, r)| {
                    let triples = (0..n)
                        .flat_map(|a| (0..n).map(move |b| (a, b)))
                        .filter(|&(a, b)| r.grade(a, b) != Grade::ZERO)
                        .map(|(a, b)| (u.label(a), u.label(b), r.grade(a, b).value()))
                        .collect();
                    (k.clone(), triples)
                })
                .collect(),
            quantifiers: m
                .quantifiers()
                .iter()
                .map(|(k, d)| (k.clone(), QuantifierSpec::of(d)))
                .collect(),
        }
    }
}

/// Reads and validates a lexicon file.
pub fn load(path: impl AsRef<Path>) -> std::io::Result<Result<Model>> {
    let text = std::fs::read_to_string(path)?;
    Ok(Lexicon::from_json(&text).and_then(|l| l.to_model()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "universe": ["c1", "c2", "c3"],
        "quantale": "godel",
        "nouns": {"Cats": {"c1": 0.2, "c2": 0.3, "c3": 0.8}},
        "vps": {"sleep": {"c1": 0.5, "c2": 0.4, "c3": 0.4}},
        "verbs": {"eat": [["c1", "c3", 0.8]]},
        "quantifiers": {
            "several": {"kind": "fuzzy", "breakpoints": [[0, 0], [0.4, 1], [1, 0]]},
            "one": {"kind": "exactly", "n": 1}
        }
    }"#;

    #[test]
    fn loads_sample() {
        let m = Lexicon::from_json(SAMPLE).unwrap().to_model().unwrap();
        assert_eq!(m.noun("cats").unwrap().grade_of("c3").unwrap().value(), 0.8);
        assert_eq!(m.verb("eat").unwrap().grade(0, 2).value(), 0.8);
        assert_eq!(
            m.quantifier("one").unwrap(),
            &QuantifierDenotation::Crisp(CrispQuantifier::Exactly(1))
        );
        assert_eq!(m.lattice().len(), 7);
    }

    #[test]
    fn round_trip() {
        let lex = Lexicon::from_json(SAMPLE).unwrap();
        let m = lex.to_model().unwrap();
        let again = Lexicon::from_model(&m);
        let m2 = Lexicon::from_json(&again.to_json())
            .unwrap()
            .to_model()
            .unwrap();
        assert_eq!(m, m2);
        assert_eq!(Lexicon::from_model(&m2), again);
    }

    #[test]
    fn rejects_bad_input() {
        let bad_grade = SAMPLE.replace("0.8}", "1.8}");
        assert!(matches!(
            Lexicon::from_json(&bad_grade).unwrap().to_model(),
            Err(Error::GradeOutOfRange(_))
        ));
        let bad_elem = SAMPLE.replace("\"c3\", 0.8", "\"c9\", 0.8");
        assert!(matches!(
            Lexicon::from_json(&bad_elem).unwrap().to_model(),
            Err(Error::UnknownElement(_))
        ));
        let bad_dist = SAMPLE.replace("[0.4, 1], ", "");
        assert!(Lexicon::from_json(&bad_dist).unwrap().to_model().is_ok());
        let bad_dist = SAMPLE.replace("[1, 0]]", "[0.9, 0]]");
        assert!(matches!(
            Lexicon::from_json(&bad_dist).unwrap().to_model(),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            Lexicon::from_json(r#"{"universe": [], "quantale": "fancy"}"#),
            Err(Error::Lexicon(_))
        ));
        let bad_lattice = SAMPLE.replace(
            "\"quantale\": \"godel\",",
            "\"quantale\": \"godel\", \"grades\": [0.5],",
        );
        assert!(matches!(
            Lexicon::from_json(&bad_lattice).unwrap().to_model(),
            Err(Error::InvalidModel(_))
        ));
    }
}
