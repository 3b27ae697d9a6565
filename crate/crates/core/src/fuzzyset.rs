//! Fuzzy subsets of a finite universe and the counting calculus on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::quantale::Grade;
use crate::vrel::{CrispRel, IndexSet};

/// A total map from universe elements to membership grades. Elements that a
/// description leaves out have membership 0.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzySet {
    universe: IndexSet,
    membership: Vec<Grade>,
}

impl FuzzySet {
    pub fn new(universe: IndexSet, membership: Vec<Grade>) -> Result<Self> {
        if membership.len() != universe.len() {
            return Err(Error::UniverseMismatch);
        }
        Ok(FuzzySet {
            universe,
            membership,
        })
    }

    pub fn from_values(universe: &IndexSet, values: &[f64]) -> Result<Self> {
        let membership = values
            .iter()
            .map(|&v| Grade::new(v))
            .collect::<Result<_>>()?;
        FuzzySet::new(universe.clone(), membership)
    }

    /// Builds a set from `(element, grade)` pairs; unlisted elements get 0.
    pub fn from_pairs<'a>(
        universe: &IndexSet,
        pairs: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Result<Self> {
        let mut membership = vec![Grade::ZERO; universe.len()];
        for (label, v) in pairs {
            let i = universe
                .position(label)
                .ok_or_else(|| Error::UnknownElement(label.to_string()))?;
            membership[i] = Grade::new(v)?;
        }
        FuzzySet::new(universe.clone(), membership)
    }

    /// Crisp set with the given member positions.
    pub fn crisp(universe: &IndexSet, members: impl IntoIterator<Item = usize>) -> Self {
        let mut membership = vec![Grade::ZERO; universe.len()];
        for i in members {
            membership[i] = Grade::ONE;
        }
        FuzzySet {
            universe: universe.clone(),
            membership,
        }
    }

    pub fn empty(universe: &IndexSet) -> Self {
        FuzzySet::crisp(universe, [])
    }

    pub fn full(universe: &IndexSet) -> Self {
        FuzzySet::crisp(universe, 0..universe.len())
    }

    pub fn universe(&self) -> &IndexSet {
        &self.universe
    }

    pub fn membership(&self) -> &[Grade] {
        &self.membership
    }

    pub fn grade(&self, i: usize) -> Grade {
        self.membership[i]
    }

    pub fn grade_of(&self, label: &str) -> Option<Grade> {
        self.universe.position(label).map(|i| self.membership[i])
    }

    pub fn is_crisp(&self) -> bool {
        self.membership
            .iter()
            .all(|g| *g == Grade::ZERO || *g == Grade::ONE)
    }

    /// No element has positive membership.
    pub fn is_empty(&self) -> bool {
        self.membership.iter().all(|g| *g == Grade::ZERO)
    }

    /// Pointwise `≤`.
    pub fn is_subset(&self, other: &FuzzySet) -> bool {
        self.membership
            .iter()
            .zip(&other.membership)
            .all(|(a, b)| a <= b)
    }

    /// Largest membership grade, 0 for the empty universe.
    pub fn height(&self) -> Grade {
        self.membership
            .iter()
            .fold(Grade::ZERO, |acc, g| acc.max(*g))
    }

    /// Bitwise key for exact deduplication.
    pub(crate) fn key(&self) -> Vec<u64> {
        self.membership.iter().map(|g| g.bits()).collect()
    }

    /// Sum of the memberships that reach `threshold`; no rounding.
    pub fn sigma_count(&self, threshold: f64) -> f64 {
        self.membership
            .iter()
            .map(|g| g.value())
            .filter(|&v| v >= threshold)
            .sum()
    }

    /// Pointwise minimum.
    pub fn intersect(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.check_universe(other)?;
        Ok(FuzzySet {
            universe: self.universe.clone(),
            membership: self
                .membership
                .iter()
                .zip(&other.membership)
                .map(|(a, b)| a.min(*b))
                .collect(),
        })
    }

    /// Multiplies every membership by `k ∈ [0, 1]`.
    pub fn scale(&self, k: f64) -> Result<FuzzySet> {
        let k = Grade::new(k)?.value();
        Ok(FuzzySet {
            universe: self.universe.clone(),
            membership: self
                .membership
                .iter()
                .map(|g| Grade::clamped(g.value() * k))
                .collect(),
        })
    }

    fn check_universe(&self, other: &FuzzySet) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .membership
            .iter()
            .enumerate()
            .filter(|(_, g)| **g != Grade::ZERO)
            .map(|(i, g)| format!("{}{}", g, self.universe.label(i)))
            .collect();
        if terms.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Counting conventions shared by all proportion computations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Counting {
    /// Memberships below this value are left out of sigma-counts.
    pub threshold: f64,
    /// Round sigma-counts to the nearest integer. Off by default; none of the
    /// worked examples round.
    pub round: bool,
}

impl Default for Counting {
    fn default() -> Self {
        Counting {
            threshold: 0.0,
            round: false,
        }
    }
}

impl Counting {
    pub fn count(&self, a: &FuzzySet) -> f64 {
        let c = a.sigma_count(self.threshold);
        if self.round {
            c.round()
        } else {
            c
        }
    }

    /// `ΣCount(A ∩ B) / ΣCount(A)`.
    pub fn proportion(&self, b: &FuzzySet, a: &FuzzySet) -> Result<f64> {
        let denom = self.count(a);
        if denom == 0.0 {
            return Err(Error::ZeroDenominator(a.to_string()));
        }
        let num = self.count(&a.intersect(b)?);
        Ok((num / denom).clamp(0.0, 1.0))
    }
}

/// Relative sigma-count of `b` in `a` with the given threshold.
pub fn proportion(b: &FuzzySet, a: &FuzzySet, threshold: f64) -> Result<f64> {
    Counting {
        threshold,
        round: false,
    }
    .proportion(b, a)
}

/// A fuzzy binary relation on one universe, e.g. a verb denotation.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyRelation {
    universe: IndexSet,
    membership: Vec<Grade>,
}

impl FuzzyRelation {
    pub fn new(universe: IndexSet, membership: Vec<Grade>) -> Result<Self> {
        if membership.len() != universe.len() * universe.len() {
            return Err(Error::UniverseMismatch);
        }
        Ok(FuzzyRelation {
            universe,
            membership,
        })
    }

    pub fn empty(universe: &IndexSet) -> Self {
        let n = universe.len();
        FuzzyRelation {
            universe: universe.clone(),
            membership: vec![Grade::ZERO; n * n],
        }
    }

    /// From `(subject, object, grade)` triples; unlisted pairs get 0.
    pub fn from_triples<'a>(
        universe: &IndexSet,
        triples: impl IntoIterator<Item = (&'a str, &'a str, f64)>,
    ) -> Result<Self> {
        let n = universe.len();
        let mut membership = vec![Grade::ZERO; n * n];
        for (a, b, v) in triples {
            let i = universe
                .position(a)
                .ok_or_else(|| Error::UnknownElement(a.to_string()))?;
            let j = universe
                .position(b)
                .ok_or_else(|| Error::UnknownElement(b.to_string()))?;
            membership[i * n + j] = Grade::new(v)?;
        }
        FuzzyRelation::new(universe.clone(), membership)
    }

    pub fn from_crisp(r: &CrispRel) -> Result<Self> {
        if !r.source().compatible(r.target()) {
            return Err(Error::UniverseMismatch);
        }
        let n = r.source().len();
        let mut membership = vec![Grade::ZERO; n * n];
        for &(a, b) in r.pairs() {
            membership[a * n + b] = Grade::ONE;
        }
        FuzzyRelation::new(r.source().clone(), membership)
    }

    pub fn universe(&self) -> &IndexSet {
        &self.universe
    }

    pub fn grade(&self, a: usize, b: usize) -> Grade {
        self.membership[a * self.universe.len() + b]
    }

    pub fn membership(&self) -> &[Grade] {
        &self.membership
    }

    pub fn is_crisp(&self) -> bool {
        self.membership
            .iter()
            .all(|g| *g == Grade::ZERO || *g == Grade::ONE)
    }

    /// The transposed relation.
    pub fn converse(&self) -> FuzzyRelation {
        let n = self.universe.len();
        let mut membership = vec![Grade::ZERO; n * n];
        for a in 0..n {
            for b in 0..n {
                membership[b * n + a] = self.grade(a, b);
            }
        }
        FuzzyRelation {
            universe: self.universe.clone(),
            membership,
        }
    }

    /// Max-min image: `μ(b) = max_a min(μ_A(a), μ_R(a, b))`.
    pub fn image(&self, a: &FuzzySet) -> Result<FuzzySet> {
        if a.universe() != &self.universe {
            return Err(Error::UniverseMismatch);
        }
        let n = self.universe.len();
        let membership = (0..n)
            .map(|b| {
                (0..n).fold(Grade::ZERO, |acc, x| {
                    acc.max(a.grade(x).min(self.grade(x, b)))
                })
            })
            .collect();
        FuzzySet::new(self.universe.clone(), membership)
    }

    /// Max-min height of the relation between two sets:
    /// `max_{a,b} min(μ_A(a), μ_R(a, b), μ_B(b))`.
    pub fn height_between(&self, a: &FuzzySet, b: &FuzzySet) -> Result<Grade> {
        let img = self.image(a)?;
        Ok(img.intersect(b)?.height())
    }
}

/// Verb application in the fuzzy model: the max-min image of `a` under `v`.
pub fn verb_image(v: &FuzzyRelation, a: &FuzzySet) -> Result<FuzzySet> {
    v.image(a)
}

/// `{y | (x, y) ∈ R, x ∈ A}` for crisp `R` and `A`.
pub fn crisp_forward_image(r: &CrispRel, a: &FuzzySet) -> Result<FuzzySet> {
    if !a.is_crisp() {
        return Err(Error::WrongEvaluator(
            "forward image needs a crisp argument".into(),
        ));
    }
    if !r.source().compatible(a.universe()) || !r.target().compatible(a.universe()) {
        return Err(Error::UniverseMismatch);
    }
    let members: Vec<usize> = r
        .pairs()
        .iter()
        .filter(|(x, _)| a.grade(*x) == Grade::ONE)
        .map(|&(_, y)| y)
        .collect();
    Ok(FuzzySet::crisp(a.universe(), members))
}
