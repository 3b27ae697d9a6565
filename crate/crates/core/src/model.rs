use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::fuzzyset::{Counting, FuzzyRelation, FuzzySet};
use crate::grammar::{Category, Vocabulary};
use crate::powbialg::GradeLattice;
use crate::quantale::{Grade, Quantale};
use crate::quantifier::QuantifierDenotation;
use crate::vrel::IndexSet;

/// A universe together with the denotation of every lexicon word.
#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    universe: IndexSet,
    quantale: Quantale,
    lattice: Option<GradeLattice>,
    counting: Counting,
    nouns: BTreeMap<String, FuzzySet>,
    nps: BTreeMap<String, FuzzySet>,
    vps: BTreeMap<String, FuzzySet>,
    verbs: BTreeMap<String, FuzzyRelation>,
    quantifiers: BTreeMap<String, QuantifierDenotation>,
}

fn key(name: &str) -> String {
    name.to_lowercase()
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, what: &str) -> Result<&'a T> {
    map.get(&key(name))
        .ok_or_else(|| Error::Lexicon(format!("no {what} named `{name}`")))
}

impl Model {
    pub fn new(universe: IndexSet, quantale: Quantale) -> Self {
        Model {
            universe,
            quantale,
            lattice: None,
            counting: Counting::default(),
            nouns: BTreeMap::new(),
            nps: BTreeMap::new(),
            vps: BTreeMap::new(),
            verbs: BTreeMap::new(),
            quantifiers: BTreeMap::new(),
        }
    }

    fn check(&self, set: &FuzzySet) -> Result<()> {
        if set.universe() == &self.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn with_noun(mut self, name: &str, set: FuzzySet) -> Result<Self> {
        self.check(&set)?;
        self.nouns.insert(key(name), set);
        Ok(self)
    }

    pub fn with_np(mut self, name: &str, set: FuzzySet) -> Result<Self> {
        self.check(&set)?;
        self.nps.insert(key(name), set);
        Ok(self)
    }

    pub fn with_vp(mut self, name: &str, set: FuzzySet) -> Result<Self> {
        self.check(&set)?;
        self.vps.insert(key(name), set);
        Ok(self)
    }

    pub fn with_verb(mut self, name: &str, rel: FuzzyRelation) -> Result<Self> {
        if rel.universe() != &self.universe {
            return Err(Error::UniverseMismatch);
        }
        self.verbs.insert(key(name), rel);
        Ok(self)
    }

    pub fn with_quantifier(mut self, name: &str, q: QuantifierDenotation) -> Self {
        self.quantifiers.insert(key(name), q);
        self
    }

    pub fn with_lattice(mut self, lattice: GradeLattice) -> Self {
        self.lattice = Some(lattice);
        self
    }

    pub fn with_counting(mut self, counting: Counting) -> Self {
        self.counting = counting;
        self
    }

    pub fn with_quantale(mut self, quantale: Quantale) -> Self {
        self.quantale = quantale;
        self
    }

    pub fn universe(&self) -> &IndexSet {
        &self.universe
    }

    pub fn quantale(&self) -> Quantale {
        self.quantale
    }

    pub fn counting(&self) -> &Counting {
        &self.counting
    }

    pub fn explicit_lattice(&self) -> Option<&GradeLattice> {
        self.lattice.as_ref()
    }

    pub fn noun(&self, name: &str) -> Result<&FuzzySet> {
        lookup(&self.nouns, name, "noun")
    }

    pub fn np(&self, name: &str) -> Result<&FuzzySet> {
        lookup(&self.nps, name, "noun phrase")
    }

    pub fn vp(&self, name: &str) -> Result<&FuzzySet> {
        lookup(&self.vps, name, "verb phrase")
    }

    pub fn verb(&self, name: &str) -> Result<&FuzzyRelation> {
        lookup(&self.verbs, name, "verb")
    }

    pub fn quantifier(&self, name: &str) -> Result<&QuantifierDenotation> {
        lookup(&self.quantifiers, name, "quantifier")
    }

    pub fn nouns(&self) -> &BTreeMap<String, FuzzySet> {
        &self.nouns
    }

    pub fn nps(&self) -> &BTreeMap<String, FuzzySet> {
        &self.nps
    }

    pub fn vps(&self) -> &BTreeMap<String, FuzzySet> {
        &self.vps
    }

    pub fn verbs(&self) -> &BTreeMap<String, FuzzyRelation> {
        &self.verbs
    }

    pub fn quantifiers(&self) -> &BTreeMap<String, QuantifierDenotation> {
        &self.quantifiers
    }

    /// Every grade occurring in a set or relation denotation.
    pub fn denotation_grades(&self) -> Vec<Grade> {
        let mut seen = BTreeSet::new();
        let sets = self
            .nouns
            .values()
            .chain(self.nps.values())
            .chain(self.vps.values())
            .flat_map(|s| s.membership().iter());
        let rels = self.verbs.values().flat_map(|r| r.membership().iter());
        for g in sets.chain(rels) {
            seen.insert(g.bits());
        }
        seen.into_iter()
            .map(|b| Grade::clamped(f64::from_bits(b)))
            .collect()
    }

    /// The explicit lattice, or the denotation grades together with 0 and 1.
    pub fn lattice(&self) -> GradeLattice {
        match &self.lattice {
            Some(l) => l.clone(),
            None => {
                let mut gs = self.denotation_grades();
                gs.extend([Grade::ZERO, Grade::ONE]);
                GradeLattice::new(gs).expect("contains 0 and 1")
            }
        }
    }

    /// Whether every set and relation denotation is crisp.
    pub fn is_crisp(&self) -> bool {
        self.nouns
            .values()
            .chain(self.nps.values())
            .chain(self.vps.values())
            .all(FuzzySet::is_crisp)
            && self.verbs.values().all(FuzzyRelation::is_crisp)
    }

    /// Checks that the lattice fits the quantale and holds every grade used.
    pub fn validate(&self) -> Result<()> {
        let lattice = self.lattice();
        if !lattice.fits(self.quantale) {
            return Err(Error::InvalidModel(format!(
                "grade lattice {lattice} is not inside the {} carrier",
                self.quantale
            )));
        }
        if let Some(g) = self
            .denotation_grades()
            .into_iter()
            .find(|g| !lattice.contains(*g))
        {
            return Err(Error::InvalidModel(format!(
                "grade {g} is not in the lattice {lattice}"
            )));
        }
        Ok(())
    }
}

impl Vocabulary for Model {
    fn categories(&self, word: &str) -> BTreeSet<Category> {
        let w = key(word);
        let mut out = BTreeSet::new();
        if self.quantifiers.contains_key(&w) {
            out.insert(Category::Det);
        }
        if self.nouns.contains_key(&w) {
            out.insert(Category::N);
        }
        if self.nps.contains_key(&w) {
            out.insert(Category::NP);
        }
        if self.verbs.contains_key(&w) {
            out.insert(Category::V);
        }
        if self.vps.contains_key(&w) {
            out.insert(Category::VP);
        }
        out
    }
}
