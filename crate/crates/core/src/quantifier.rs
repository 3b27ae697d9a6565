//! Generalized quantifiers: crisp determiners as families of sets and fuzzy
//! quantifiers as possibility distributions over proportions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::fuzzyset::{Counting, FuzzySet};
use crate::powbialg::PowersetObject;
use crate::quantale::{Grade, Quantale};
use crate::vrel::{IndexSet, VRel};

/// Largest universe accepted by [`gq_interpret`].
pub const INTERPRET_GUARD: usize = 14;
/// Largest universe accepted by the conservativity checks.
pub const CONSERVATIVITY_GUARD: usize = 12;
/// Largest `|S|²` for a quantifier relation.
pub const QUANTIFIER_RELATION_GUARD: usize = 1 << 24;

const COUNT_TOL: f64 = 1e-9;

/// A logical determiner interpreted as a map from sets to families of sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrispQuantifier {
    Some,
    Every,
    No,
    Exactly(usize),
}

impl CrispQuantifier {
    pub fn name(&self) -> String {
        match self {
            CrispQuantifier::Some => "some".into(),
            CrispQuantifier::Every => "every".into(),
            CrispQuantifier::No => "no".into(),
            CrispQuantifier::Exactly(n) => format!("exactly-{n}"),
        }
    }

    /// Whether `x` has the determiner's amount of elements of `a`, with sets
    /// given as bitmasks.
    pub fn holds_mask(&self, a: u64, x: u64) -> bool {
        match self {
            CrispQuantifier::Some => a & x != 0,
            CrispQuantifier::Every => a & !x == 0,
            CrispQuantifier::No => a & x == 0,
            CrispQuantifier::Exactly(n) => (a & x).count_ones() as usize == *n,
        }
    }

    /// The same condition read pointwise on (possibly fuzzy) sets: inclusion
    /// is pointwise `≤` and cardinalities are sigma-counts.
    pub fn holds(&self, a: &FuzzySet, x: &FuzzySet) -> Result<bool> {
        let meet = a.intersect(x)?;
        Ok(match self {
            CrispQuantifier::Some => !meet.is_empty(),
            CrispQuantifier::Every => a.is_subset(x),
            CrispQuantifier::No => meet.is_empty(),
            CrispQuantifier::Exactly(n) => (meet.sigma_count(0.0) - *n as f64).abs() <= COUNT_TOL,
        })
    }
}

impl fmt::Display for CrispQuantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn mask_guard(u: &IndexSet, limit: usize, what: &'static str) -> Result<()> {
    if u.len() > limit {
        return Err(Error::SizeGuard {
            what,
            size: u.len(),
            limit,
        });
    }
    Ok(())
}

fn mask_of(set: &BTreeSet<usize>, u: &IndexSet) -> Result<u64> {
    set.iter().try_fold(0u64, |m, &i| {
        if i < u.len() {
            Ok(m | 1 << i)
        } else {
            Err(Error::UnknownElement(i.to_string()))
        }
    })
}

fn set_of(mask: u64, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// `⟦d⟧(A)`: every `X ⊆ U` satisfying the determiner's condition.
pub fn gq_interpret(
    d: CrispQuantifier,
    a: &BTreeSet<usize>,
    u: &IndexSet,
) -> Result<BTreeSet<BTreeSet<usize>>> {
    mask_guard(u, INTERPRET_GUARD, "quantifier interpretation universe")?;
    let am = mask_of(a, u)?;
    let n = u.len();
    Ok((0..1u64 << n)
        .filter(|&x| d.holds_mask(am, x))
        .map(|x| set_of(x, n))
        .collect())
}

/// Exhaustive check that `X ∈ d(A) ⇔ X ∩ A ∈ d(A)` for an arbitrary
/// determiner given by its membership predicate on bitmasks `(A, X)`.
pub fn is_conservative_by(u: &IndexSet, holds: impl Fn(u64, u64) -> bool) -> Result<bool> {
    mask_guard(u, CONSERVATIVITY_GUARD, "conservativity universe")?;
    let size = 1u64 << u.len();
    for a in 0..size {
        for x in 0..size {
            if holds(a, x) != holds(a, x & a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_conservative(d: CrispQuantifier, u: &IndexSet) -> Result<bool> {
    is_conservative_by(u, |a, x| d.holds_mask(a, x))
}

#[derive(Clone, Debug, PartialEq)]
enum Shape {
    Every,
    Some,
    Linear(Vec<(f64, Grade)>),
}

/// A fuzzy quantifier: a possibility distribution over proportions, or one
/// of the crisp quantifiers `every` / `some` lifted to fuzzy sets.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyQuantifier {
    name: String,
    shape: Shape,
}

impl FuzzyQuantifier {
    /// Piecewise-linear distribution through `breakpoints`, which must start
    /// at proportion 0, end at 1 and increase strictly.
    pub fn piecewise(name: impl Into<String>, breakpoints: &[(f64, f64)]) -> Result<Self> {
        let bad = |m: &str| Error::InvalidDistribution(m.to_string());
        if breakpoints.len() < 2 {
            return Err(bad("needs at least two breakpoints"));
        }
        if breakpoints[0].0 != 0.0 || breakpoints[breakpoints.len() - 1].0 != 1.0 {
            return Err(bad("breakpoints must start at 0 and end at 1"));
        }
        if breakpoints
            .windows(2)
            .any(|w| w[0].0.partial_cmp(&w[1].0) != Some(std::cmp::Ordering::Less))
        {
            return Err(bad("breakpoints must increase strictly"));
        }
        let pts = breakpoints
            .iter()
            .map(|&(p, v)| Grade::new(v).map(|g| (p, g)))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| bad("possibilities must lie in [0, 1]"))?;
        Ok(FuzzyQuantifier {
            name: name.into(),
            shape: Shape::Linear(pts),
        })
    }

    pub fn every() -> Self {
        FuzzyQuantifier {
            name: "every".into(),
            shape: Shape::Every,
        }
    }

    pub fn some() -> Self {
        FuzzyQuantifier {
            name: "some".into(),
            shape: Shape::Some,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn breakpoints(&self) -> Option<&[(f64, Grade)]> {
        match &self.shape {
            Shape::Linear(pts) => Some(pts),
            _ => None,
        }
    }

    pub fn is_lifted(&self) -> bool {
        !matches!(self.shape, Shape::Linear(_))
    }

    /// The crisp determiner a lifted quantifier comes from.
    pub fn as_crisp(&self) -> Option<CrispQuantifier> {
        match self.shape {
            Shape::Every => Some(CrispQuantifier::Every),
            Shape::Some => Some(CrispQuantifier::Some),
            Shape::Linear(_) => None,
        }
    }

    /// Compatibility of proportion `p` with the quantifier.
    pub fn apply(&self, p: f64) -> Grade {
        let p = p.clamp(0.0, 1.0);
        match &self.shape {
            Shape::Every => Grade::from_bool(p == 1.0),
            Shape::Some => Grade::from_bool(p > 0.0),
            Shape::Linear(pts) => {
                let k = pts.partition_point(|(x, _)| *x < p);
                if pts[k].0 == p {
                    return pts[k].1;
                }
                let ((x0, y0), (x1, y1)) = (pts[k - 1], pts[k]);
                let t = (p - x0) / (x1 - x0);
                Grade::clamped(y0.value() + t * (y1.value() - y0.value()))
            }
        }
    }

    /// Degree to which `d A are B`. Lifted kinds read their set clauses
    /// (`A ⊆ B`, `A ∩ B ≠ ∅`); distributions need `ΣCount(A) > 0`.
    pub fn degree(&self, a: &FuzzySet, b: &FuzzySet, counting: &Counting) -> Result<Grade> {
        match &self.shape {
            Shape::Every => Ok(Grade::from_bool(a.is_subset(b))),
            Shape::Some => Ok(Grade::from_bool(!a.intersect(b)?.is_empty())),
            Shape::Linear(_) => Ok(self.apply(counting.proportion(b, a)?)),
        }
    }
}

impl fmt::Display for FuzzyQuantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A determiner's denotation in a model.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantifierDenotation {
    Crisp(CrispQuantifier),
    Fuzzy(FuzzyQuantifier),
}

impl QuantifierDenotation {
    pub fn name(&self) -> String {
        match self {
            QuantifierDenotation::Crisp(c) => c.name(),
            QuantifierDenotation::Fuzzy(f) => f.name().to_string(),
        }
    }

    pub fn is_crisp(&self) -> bool {
        matches!(self, QuantifierDenotation::Crisp(_))
    }

    /// The crisp reading, available for crisp and lifted quantifiers.
    pub fn as_crisp(&self) -> Option<CrispQuantifier> {
        match self {
            QuantifierDenotation::Crisp(c) => Some(*c),
            QuantifierDenotation::Fuzzy(f) => f.as_crisp(),
        }
    }

    /// The fuzzy reading; `every` and `some` lift, other crisp kinds have none.
    pub fn as_fuzzy(&self) -> Option<FuzzyQuantifier> {
        match self {
            QuantifierDenotation::Crisp(CrispQuantifier::Every) => Some(FuzzyQuantifier::every()),
            QuantifierDenotation::Crisp(CrispQuantifier::Some) => Some(FuzzyQuantifier::some()),
            QuantifierDenotation::Crisp(_) => None,
            QuantifierDenotation::Fuzzy(f) => Some(f.clone()),
        }
    }

    /// Degree of `d A are B`; crisp determiners give `0` or `1`.
    pub fn degree(&self, a: &FuzzySet, b: &FuzzySet, counting: &Counting) -> Result<Grade> {
        match self {
            QuantifierDenotation::Crisp(c) => Ok(Grade::from_bool(c.holds(a, b)?)),
            QuantifierDenotation::Fuzzy(f) => f.degree(a, b, counting),
        }
    }

    /// Entry `(A, B)` of the quantifier relation: the degree mapped into the
    /// carrier, ⊥ where a distribution's proportion is undefined.
    pub fn entry(
        &self,
        a: &FuzzySet,
        b: &FuzzySet,
        quantale: Quantale,
        counting: &Counting,
    ) -> Result<Grade> {
        match self.degree(a, b, counting) {
            Ok(g) => Ok(quantale.from_real(g)),
            Err(Error::ZeroDenominator(_)) => Ok(quantale.bottom()),
            Err(e) => Err(e),
        }
    }

    /// Relation `S ↛ S` whose entry `(A, B)` is [`Self::entry`].
    pub fn relation(
        &self,
        p: &PowersetObject,
        quantale: Quantale,
        counting: &Counting,
    ) -> Result<VRel> {
        let n = p.len();
        if n.saturating_mul(n) > QUANTIFIER_RELATION_GUARD {
            return Err(Error::SizeGuard {
                what: "quantifier relation",
                size: n.saturating_mul(n),
                limit: QUANTIFIER_RELATION_GUARD,
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for a in p.members() {
            for b in p.members() {
                entries.push(self.entry(a, b, quantale, counting)?);
            }
        }
        VRel::new(
            p.index_set().clone(),
            p.index_set().clone(),
            quantale,
            entries,
        )
    }
}

/// The V-Rel encoding of a fuzzy quantifier on a powerset object.
pub fn quantifier_vrel(
    q: &FuzzyQuantifier,
    p: &PowersetObject,
    quantale: Quantale,
    counting: &Counting,
) -> Result<VRel> {
    QuantifierDenotation::Fuzzy(q.clone()).relation(p, quantale, counting)
}

/// Default grid step for [`argmax_scale`].
pub const DEFAULT_GRID_STEP: f64 = 0.01;

/// The factor `k` on the grid `{0, step, …, 1}` maximizing `q(k)`; ties go to
/// the largest `k`.
pub fn argmax_scale(q: &FuzzyQuantifier, grid_step: f64) -> Result<f64> {
    if !(grid_step > 0.0 && grid_step <= 1.0) {
        return Err(Error::InvalidDistribution(format!(
            "grid step {grid_step} is outside (0, 1]"
        )));
    }
    let n = (1.0 / grid_step).round().max(1.0) as usize;
    let mut best = (Grade::ZERO, 0.0);
    for i in 0..=n {
        let k = i as f64 / n as f64;
        let v = q.apply(k);
        if v >= best.0 {
            best = (v, k);
        }
    }
    Ok(best.1)
}

/// `k* · np`, the scaled copy of `np` best matching the quantifier.
pub fn apply_quantifier_argmax(
    q: &FuzzyQuantifier,
    np: &FuzzySet,
    grid_step: f64,
) -> Result<FuzzySet> {
    np.scale(argmax_scale(q, grid_step)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powbialg::GradeLattice;
    use crate::vrel::{include, CrispRel};

    fn ab() -> IndexSet {
        IndexSet::new(["a", "b"]).unwrap()
    }

    fn family(sets: &[&[usize]]) -> BTreeSet<BTreeSet<usize>> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    fn several() -> FuzzyQuantifier {
        FuzzyQuantifier::piecewise("several", &[(0.0, 0.0), (0.4, 1.0), (1.0, 0.0)]).unwrap()
    }

    fn most() -> FuzzyQuantifier {
        FuzzyQuantifier::piecewise("most", &[(0.0, 0.0), (0.5, 0.0), (1.0, 1.0)]).unwrap()
    }

    #[test]
    fn interpret_examples() {
        let u = ab();
        let a: BTreeSet<usize> = [0].into();
        assert_eq!(
            gq_interpret(CrispQuantifier::Some, &a, &u).unwrap(),
            family(&[&[0], &[0, 1]])
        );
        assert_eq!(
            gq_interpret(CrispQuantifier::Every, &BTreeSet::new(), &u)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            gq_interpret(CrispQuantifier::Exactly(1), &[0, 1].into(), &u).unwrap(),
            family(&[&[0], &[1]])
        );
        assert!(gq_interpret(CrispQuantifier::Some, &a, &IndexSet::numbered("x", 15)).is_err());
    }

    #[test]
    fn conservativity() {
        let u3 = IndexSet::numbered("x", 3);
        for d in [
            CrispQuantifier::Some,
            CrispQuantifier::Every,
            CrispQuantifier::No,
            CrispQuantifier::Exactly(1),
        ] {
            assert!(is_conservative(d, &u3).unwrap(), "{d}");
        }
        let outside = |a: u64, x: u64| x & !a != 0;
        assert!(!is_conservative_by(&ab(), outside).unwrap());
        assert!(is_conservative(CrispQuantifier::Some, &IndexSet::numbered("x", 13)).is_err());
    }

    #[test]
    fn distributions() {
        let every = FuzzyQuantifier::every();
        assert_eq!(every.apply(1.0), Grade::ONE);
        assert_eq!(every.apply(1.5 / 3.1), Grade::ZERO);
        assert_eq!(FuzzyQuantifier::some().apply(0.01), Grade::ONE);
        assert_eq!(FuzzyQuantifier::some().apply(0.0), Grade::ZERO);
        let s = several();
        assert_eq!(s.apply(0.4).value(), 1.0);
        assert!((s.apply(0.2).value() - 0.5).abs() < 1e-12);
        assert!((s.apply(0.7).value() - 0.5).abs() < 1e-12);
        assert_eq!(s.apply(0.0), Grade::ZERO);
        assert_eq!(s.apply(1.0), Grade::ZERO);
        assert_eq!(most().apply(0.3), Grade::ZERO);
        assert!((most().apply(0.75).value() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn invalid_distributions() {
        for pts in [
            vec![(0.0, 0.0)],
            vec![(0.1, 0.0), (1.0, 1.0)],
            vec![(0.0, 0.0), (0.9, 1.0)],
            vec![(0.0, 0.0), (0.5, 1.0), (0.5, 0.0), (1.0, 1.0)],
            vec![(0.0, 0.0), (1.0, 1.5)],
        ] {
            assert!(matches!(
                FuzzyQuantifier::piecewise("bad", &pts),
                Err(Error::InvalidDistribution(_))
            ));
        }
    }

    #[test]
    fn argmax_examples() {
        let u = IndexSet::new(["c1", "c2", "c3"]).unwrap();
        let mice = FuzzySet::from_values(&u, &[0.7, 0.6, 0.2]).unwrap();
        let got = apply_quantifier_argmax(&several(), &mice, 0.01).unwrap();
        for (g, want) in got.membership().iter().zip([0.28, 0.24, 0.08]) {
            assert!((g.value() - want).abs() < 1e-12);
        }
        let plants = FuzzySet::from_values(&u, &[0.1, 0.5, 0.9]).unwrap();
        assert_eq!(
            apply_quantifier_argmax(&most(), &plants, 0.01).unwrap(),
            plants
        );
        let flat = FuzzyQuantifier::piecewise("flat", &[(0.0, 0.5), (1.0, 0.5)]).unwrap();
        assert_eq!(
            apply_quantifier_argmax(&flat, &plants, 0.25).unwrap(),
            plants
        );
        assert!(argmax_scale(&flat, 0.0).is_err());
        assert!(argmax_scale(&flat, 1.5).is_err());
    }

    #[test]
    fn quantifier_relation_entries() {
        let u = ab();
        let q = Quantale::Godel;
        let c = Counting::default();
        let p = PowersetObject::full(&u, &GradeLattice::boolean()).unwrap();
        let every = quantifier_vrel(&FuzzyQuantifier::every(), &p, q, &c).unwrap();
        let some = quantifier_vrel(&FuzzyQuantifier::some(), &p, q, &c).unwrap();
        let empty = p.position(&FuzzySet::empty(&u)).unwrap();
        for i in 0..p.len() {
            assert_eq!(every.get(i, i), q.unit());
            assert_eq!(some.get(empty, i), q.bottom());
        }
        let s = quantifier_vrel(&several(), &p, q, &c).unwrap();
        let a = p.position(&FuzzySet::full(&u)).unwrap();
        let b = p.position(&FuzzySet::crisp(&u, [0])).unwrap();
        assert_eq!(s.get(a, b), several().apply(0.5));
        assert_eq!(s.get(empty, b), q.bottom());
    }

    #[test]
    fn relation_is_conservative() {
        let u = IndexSet::numbered("x", 3);
        let lattice = GradeLattice::uniform(3).unwrap();
        let p = PowersetObject::full(&u, &lattice).unwrap();
        let c = Counting::default();
        for d in [
            several(),
            most(),
            FuzzyQuantifier::every(),
            FuzzyQuantifier::some(),
        ] {
            let r = quantifier_vrel(&d, &p, Quantale::Godel, &c).unwrap();
            for (i, a) in p.members().iter().enumerate() {
                for (j, b) in p.members().iter().enumerate() {
                    let k = p.position(&a.intersect(b).unwrap()).unwrap();
                    assert_eq!(r.get(i, j), r.get(i, k), "{d} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn lifted_kinds_on_boolean_lattice_are_included_relations() {
        let u = IndexSet::numbered("x", 2);
        let p = PowersetObject::full(&u, &GradeLattice::boolean()).unwrap();
        let s = p.index_set();
        let sets = p.members();
        let n = p.len();
        let pairs = |f: &dyn Fn(&FuzzySet, &FuzzySet) -> bool| {
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| f(&sets[i], &sets[j]))
                .collect::<Vec<_>>()
        };
        let every = CrispRel::new(s.clone(), s.clone(), pairs(&|a, b| a.is_subset(b))).unwrap();
        let some = CrispRel::new(
            s.clone(),
            s.clone(),
            pairs(&|a, b| !a.intersect(b).unwrap().is_empty()),
        )
        .unwrap();
        let c = Counting::default();
        for q in [Quantale::Boolean, Quantale::Godel] {
            let ev = quantifier_vrel(&FuzzyQuantifier::every(), &p, q, &c).unwrap();
            let so = quantifier_vrel(&FuzzyQuantifier::some(), &p, q, &c).unwrap();
            assert!(ev.same_as(&include(&every, q)));
            assert!(so.same_as(&include(&some, q)));
        }
    }
}
