//! The copy/intersect bialgebra on (fuzzy) powerset objects.
//!
//! The object `S` is either the full space `G^U` of fuzzy subsets of a finite
//! universe `U` with grades in a finite lattice `G`, or an explicit list of
//! fuzzy subsets. With `G = {0, 1}` the full space is the crisp powerset.
//!
//! * `δ : S ↛ S × S` copies: `e` iff `A = B = C`.
//! * `ι : S ↛ I` discards: `e` everywhere.
//! * `μ : S × S ↛ S` intersects: `e` iff `min(A, B) = C` pointwise.
//! * `ζ : I ↛ S` is the unit of intersection: `e` only at the set with grade
//!   `e` at every element.

use std::collections::HashMap;
use std::fmt;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::fuzzyset::FuzzySet;
use crate::quantale::{Grade, Quantale};
use crate::vrel::{self, IndexSet, VRel};

/// Largest enumeration accepted by [`PowersetObject::full`].
pub const ENUMERATION_GUARD: usize = 20_000;

/// Largest object for which the generators are materialised as dense
/// matrices and the (co)monoid laws are checked; `|S|³` entries.
pub const GENERATOR_GUARD: usize = 256;

/// A finite, sorted set of grades containing ⊥ and `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradeLattice {
    grades: Vec<Grade>,
}

impl GradeLattice {
    pub fn new(grades: impl IntoIterator<Item = Grade>) -> Result<Self> {
        let mut grades: Vec<Grade> = grades.into_iter().collect();
        grades.sort_by(|a, b| a.value().total_cmp(&b.value()));
        grades.dedup();
        if grades.first() != Some(&Grade::ZERO) || grades.last() != Some(&Grade::ONE) {
            return Err(Error::InvalidLattice("must contain 0 and 1".into()));
        }
        Ok(GradeLattice { grades })
    }

    pub fn from_values(values: &[f64]) -> Result<Self> {
        GradeLattice::new(
            values
                .iter()
                .map(|&v| Grade::new(v))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn boolean() -> Self {
        GradeLattice {
            grades: vec![Grade::ZERO, Grade::ONE],
        }
    }

    /// `{0, 1/(n-1), …, 1}` with `n ≥ 2` points.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidLattice("needs at least two grades".into()));
        }
        GradeLattice::new((0..n).map(|i| Grade::clamped(i as f64 / (n - 1) as f64)))
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn contains(&self, g: Grade) -> bool {
        self.grades.contains(&g)
    }

    /// Whether this lattice is a valid grade set for `q`.
    pub fn fits(&self, q: Quantale) -> bool {
        self.grades.iter().all(|g| q.contains(*g))
    }
}

impl fmt::Display for GradeLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.grades.iter().map(Grade::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// An enumerated set of fuzzy subsets of one universe, used as an object of
/// V-Rel.
#[derive(Clone, Debug)]
pub struct PowersetObject {
    universe: IndexSet,
    lattice: Option<GradeLattice>,
    members: Vec<FuzzySet>,
    index: IndexSet,
    lookup: HashMap<Vec<u64>, usize>,
}

impl PowersetObject {
    /// All of `G^U`, lexicographic with the first universe element most
    /// significant and grades ascending.
    pub fn full(universe: &IndexSet, lattice: &GradeLattice) -> Result<Self> {
        let n = universe.len();
        let g = lattice.len();
        let size = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(g));
        let size = match size {
            Some(s) if s <= ENUMERATION_GUARD => s,
            other => {
                return Err(Error::SizeGuard {
                    what: "powerset enumeration",
                    size: other.unwrap_or(usize::MAX),
                    limit: ENUMERATION_GUARD,
                })
            }
        };
        let mut members = Vec::with_capacity(size);
        for mut code in 0..size {
            let mut m = vec![Grade::ZERO; n];
            for slot in m.iter_mut().rev() {
                *slot = lattice.grades[code % g];
                code /= g;
            }
            members.push(FuzzySet::new(universe.clone(), m)?);
        }
        let mut obj = PowersetObject::from_members(universe, members)?;
        obj.lattice = Some(lattice.clone());
        Ok(obj)
    }

    /// An explicit list of subsets; duplicates are dropped, order is kept.
    pub fn from_members(universe: &IndexSet, members: Vec<FuzzySet>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(members.len());
        let mut kept = Vec::with_capacity(members.len());
        for m in members {
            if m.universe() != universe {
                return Err(Error::UniverseMismatch);
            }
            let key = m.key();
            if let std::collections::hash_map::Entry::Vacant(e) = lookup.entry(key) {
                e.insert(kept.len());
                kept.push(m);
            }
        }
        let index = IndexSet::new(kept.iter().map(|m| m.to_string()))?;
        Ok(PowersetObject {
            universe: universe.clone(),
            lattice: None,
            members: kept,
            index,
            lookup,
        })
    }

    pub fn universe(&self) -> &IndexSet {
        &self.universe
    }

    pub fn lattice(&self) -> Option<&GradeLattice> {
        self.lattice.as_ref()
    }

    pub fn members(&self) -> &[FuzzySet] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &FuzzySet {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The object as an index set; labels are the sets in sum notation.
    pub fn index_set(&self) -> &IndexSet {
        &self.index
    }

    pub fn position(&self, a: &FuzzySet) -> Option<usize> {
        self.lookup.get(&a.key()).copied()
    }

    fn guard(&self) -> Result<()> {
        if self.len() > GENERATOR_GUARD {
            return Err(Error::SizeGuard {
                what: "bialgebra object",
                size: self.len(),
                limit: GENERATOR_GUARD,
            });
        }
        Ok(())
    }
}

/// `δ(A, (B, C)) = e` iff `A = B = C`.
pub fn delta(p: &PowersetObject, q: Quantale) -> Result<VRel> {
    p.guard()?;
    let s = p.index_set();
    let n = p.len();
    let mut r = VRel::bottom(s.clone(), IndexSet::product(s, s), q);
    for a in 0..n {
        r.set(a, a * n + a, q.unit());
    }
    Ok(r)
}

/// `μ((A, B), C) = e` iff `min(A, B) = C`.
pub fn mu(p: &PowersetObject, q: Quantale) -> Result<VRel> {
    p.guard()?;
    let s = p.index_set();
    let n = p.len();
    let mut r = VRel::bottom(IndexSet::product(s, s), s.clone(), q);
    for a in 0..n {
        for b in 0..n {
            let c = p.members[a].intersect(&p.members[b])?;
            if let Some(c) = p.position(&c) {
                r.set(a * n + b, c, q.unit());
            }
        }
    }
    Ok(r)
}

/// `ι(A, ⋆) = e` for every `A`.
pub fn iota(p: &PowersetObject, q: Quantale) -> Result<VRel> {
    p.guard()?;
    VRel::from_fn(p.index_set().clone(), IndexSet::unit(), q, |_, _| q.unit())
}

/// `ζ(⋆, A) = e` iff `A` has grade `e` everywhere.
pub fn zeta(p: &PowersetObject, q: Quantale) -> Result<VRel> {
    p.guard()?;
    let mut r = VRel::bottom(IndexSet::unit(), p.index_set().clone(), q);
    if let Some(u) = p.position(&FuzzySet::full(&p.universe)) {
        r.set(0, u, q.unit());
    }
    Ok(r)
}

/// The four bialgebra interaction laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BialgebraReport {
    /// `ι ∘ μ = ι ⊗ ι`
    pub counit_of_product: bool,
    /// `δ ∘ ζ = ζ ⊗ ζ`
    pub coproduct_of_unit: bool,
    /// `δ ∘ μ = (μ ⊗ μ) ∘ (id ⊗ σ ⊗ id) ∘ (δ ⊗ δ)`
    pub bimonoid: bool,
    /// `ι ∘ ζ = id_I`
    pub counit_of_unit: bool,
}

impl BialgebraReport {
    pub fn all_pass(&self) -> bool {
        self.counit_of_product && self.coproduct_of_unit && self.bimonoid && self.counit_of_unit
    }

    pub fn laws(&self) -> [(&'static str, bool); 4] {
        [
            ("iota . mu = iota (x) iota", self.counit_of_product),
            ("delta . zeta = zeta (x) zeta", self.coproduct_of_unit),
            (
                "delta . mu = (mu (x) mu) . (id (x) swap (x) id) . (delta (x) delta)",
                self.bimonoid,
            ),
            ("iota . zeta = id_I", self.counit_of_unit),
        ]
    }
}

/// Comonoid `(δ, ι)` and monoid `(μ, ζ)` laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoidReport {
    pub coassociative: bool,
    pub counital: bool,
    pub associative: bool,
    pub unital: bool,
}

impl MonoidReport {
    pub fn all_pass(&self) -> bool {
        self.coassociative && self.counital && self.associative && self.unital
    }

    pub fn laws(&self) -> [(&'static str, bool); 4] {
        [
            ("comonoid coassociativity", self.coassociative),
            ("comonoid counitality", self.counital),
            ("monoid associativity", self.associative),
            ("monoid unitality", self.unital),
        ]
    }
}

struct Gens {
    delta: Diagram,
    mu: Diagram,
    iota: Diagram,
    zeta: Diagram,
    id: Diagram,
    s: IndexSet,
}

fn gens(p: &PowersetObject, q: Quantale) -> Result<Gens> {
    Ok(Gens {
        delta: Diagram::generator("delta", delta(p, q)?),
        mu: Diagram::generator("mu", mu(p, q)?),
        iota: Diagram::generator("iota", iota(p, q)?),
        zeta: Diagram::generator("zeta", zeta(p, q)?),
        id: Diagram::id(p.index_set()),
        s: p.index_set().clone(),
    })
}

fn equal(lhs: &Diagram, rhs: &Diagram, q: Quantale) -> Result<bool> {
    Ok(lhs.to_vrel(q)?.same_as(&rhs.to_vrel(q)?))
}

/// Evaluates the four bialgebra laws as exact matrix identities.
pub fn check_bialgebra(p: &PowersetObject, q: Quantale) -> Result<BialgebraReport> {
    let g = gens(p, q)?;
    let t = Diagram::tensor;
    let counit_of_product = equal(
        &Diagram::compose(g.iota.clone(), g.mu.clone())?,
        &t(g.iota.clone(), g.iota.clone()),
        q,
    )?;
    let coproduct_of_unit = equal(
        &Diagram::compose(g.delta.clone(), g.zeta.clone())?,
        &t(g.zeta.clone(), g.zeta.clone()),
        q,
    )?;
    let middle = Diagram::tensor_all(vec![g.id.clone(), Diagram::swap(&g.s, &g.s), g.id.clone()])?;
    let bimonoid = equal(
        &Diagram::compose(g.delta.clone(), g.mu.clone())?,
        &Diagram::chain(vec![
            t(g.mu.clone(), g.mu.clone()),
            middle,
            t(g.delta.clone(), g.delta.clone()),
        ])?,
        q,
    )?;
    let counit_of_unit = equal(
        &Diagram::compose(g.iota.clone(), g.zeta.clone())?,
        &unit_scalar(q),
        q,
    )?;
    Ok(BialgebraReport {
        counit_of_product,
        coproduct_of_unit,
        bimonoid,
        counit_of_unit,
    })
}

fn unit_scalar(q: Quantale) -> Diagram {
    Diagram::generator("id_I", vrel::identity(&IndexSet::unit(), q))
}

/// Coassociativity/counitality of `(δ, ι)` and associativity/unitality of
/// `(μ, ζ)`, on both sides.
pub fn check_monoid_laws(p: &PowersetObject, q: Quantale) -> Result<MonoidReport> {
    let g = gens(p, q)?;
    let t = Diagram::tensor;
    let coassociative = equal(
        &Diagram::compose(t(g.delta.clone(), g.id.clone()), g.delta.clone())?,
        &Diagram::compose(t(g.id.clone(), g.delta.clone()), g.delta.clone())?,
        q,
    )?;
    let counital = equal(
        &Diagram::compose(t(g.iota.clone(), g.id.clone()), g.delta.clone())?,
        &g.id,
        q,
    )? && equal(
        &Diagram::compose(t(g.id.clone(), g.iota.clone()), g.delta.clone())?,
        &g.id,
        q,
    )?;
    let associative = equal(
        &Diagram::compose(g.mu.clone(), t(g.mu.clone(), g.id.clone()))?,
        &Diagram::compose(g.mu.clone(), t(g.id.clone(), g.mu.clone()))?,
        q,
    )?;
    let unital = equal(
        &Diagram::compose(g.mu.clone(), t(g.zeta.clone(), g.id.clone()))?,
        &g.id,
        q,
    )? && equal(
        &Diagram::compose(g.mu.clone(), t(g.id.clone(), g.zeta.clone()))?,
        &g.id,
        q,
    )?;
    Ok(MonoidReport {
        coassociative,
        counital,
        associative,
        unital,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vrel::{compose, identity, include, tensor_rel, CrispRel};

    fn universe(n: usize) -> IndexSet {
        IndexSet::numbered("u", n)
    }

    #[test]
    fn enumeration_order_and_size() {
        let u = universe(2);
        let p = PowersetObject::full(&u, &GradeLattice::boolean()).unwrap();
        assert_eq!(p.len(), 4);
        let labels: Vec<String> = (0..4).map(|i| p.index_set().label(i)).collect();
        assert_eq!(labels, ["∅", "1u1", "1u0", "1u0 + 1u1"]);
        let g3 = GradeLattice::from_values(&[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(PowersetObject::full(&u, &g3).unwrap().len(), 9);
        assert!(matches!(
            PowersetObject::full(&universe(30), &GradeLattice::boolean()),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn lattice_validation() {
        assert!(GradeLattice::from_values(&[0.5, 1.0]).is_err());
        assert!(GradeLattice::from_values(&[0.0, 0.5]).is_err());
        let g = GradeLattice::from_values(&[1.0, 0.0, 0.5, 0.5]).unwrap();
        assert_eq!(g.len(), 3);
        assert!(!g.fits(Quantale::Boolean));
        assert!(g.fits(Quantale::Godel));
    }

    #[test]
    fn generator_examples() {
        let u = universe(1);
        let q = Quantale::Godel;
        let p = PowersetObject::full(&u, &GradeLattice::boolean()).unwrap();
        let full = p.position(&FuzzySet::full(&u)).unwrap();
        let empty = p.position(&FuzzySet::empty(&u)).unwrap();
        let n = p.len();
        let d = delta(&p, q).unwrap();
        assert_eq!(d.get(full, full * n + full), q.unit());
        assert_eq!(d.get(full, full * n + empty), q.bottom());
        let m = mu(&p, q).unwrap();
        assert_eq!(m.get(full * n + full, full), q.unit());

        let u2 = universe(2);
        let p2 = PowersetObject::full(&u2, &GradeLattice::boolean()).unwrap();
        let a = p2.position(&FuzzySet::crisp(&u2, [0])).unwrap();
        let b = p2.position(&FuzzySet::crisp(&u2, [1])).unwrap();
        let e = p2.position(&FuzzySet::empty(&u2)).unwrap();
        assert_eq!(mu(&p2, q).unwrap().get(a * 4 + b, e), q.unit());

        let g3 = GradeLattice::from_values(&[0.0, 0.5, 1.0]).unwrap();
        let p3 = PowersetObject::full(&u, &g3).unwrap();
        let half = p3
            .position(&FuzzySet::from_values(&u, &[0.5]).unwrap())
            .unwrap();
        let one = p3.position(&FuzzySet::full(&u)).unwrap();
        assert_eq!(mu(&p3, q).unwrap().get(half * 3 + one, half), q.unit());

        let p9 = PowersetObject::full(&u2, &g3).unwrap();
        assert_eq!(p9.len(), 9);
        assert!(iota(&p9, q)
            .unwrap()
            .entries()
            .iter()
            .all(|g| *g == q.unit()));
        let z = zeta(&p9, q).unwrap();
        assert_eq!(
            z.get(0, p9.position(&FuzzySet::full(&u2)).unwrap()),
            q.unit()
        );
        assert_eq!(z.entries().iter().filter(|g| **g == q.unit()).count(), 1);
    }

    #[test]
    fn counit_and_unit_laws_by_dense_matrices() {
        let u = universe(2);
        let q = Quantale::Godel;
        for lattice in [GradeLattice::boolean(), GradeLattice::uniform(3).unwrap()] {
            let p = PowersetObject::full(&u, &lattice).unwrap();
            let id = identity(p.index_set(), q);
            let counit = compose(
                &delta(&p, q).unwrap(),
                &tensor_rel(&iota(&p, q).unwrap(), &id).unwrap(),
            )
            .unwrap();
            assert!(counit.same_as(&id));
            let unit = compose(
                &tensor_rel(&zeta(&p, q).unwrap(), &id).unwrap(),
                &mu(&p, q).unwrap(),
            )
            .unwrap();
            assert!(unit.same_as(&id));
        }
    }

    #[test]
    fn dense_route_agrees_on_bimonoid_law() {
        let u = universe(2);
        let q = Quantale::Godel;
        let p = PowersetObject::full(&u, &GradeLattice::boolean()).unwrap();
        let s = p.index_set();
        let (d, m) = (delta(&p, q).unwrap(), mu(&p, q).unwrap());
        let lhs = compose(&m, &d).unwrap();
        let mid = tensor_rel(
            &tensor_rel(&identity(s, q), &vrel::swap(s, s, q)).unwrap(),
            &identity(s, q),
        )
        .unwrap();
        let rhs = compose(
            &compose(&tensor_rel(&d, &d).unwrap(), &mid).unwrap(),
            &tensor_rel(&m, &m).unwrap(),
        )
        .unwrap();
        assert!(lhs.same_as(&rhs));
    }

    #[test]
    fn bialgebra_examples() {
        let g3 = GradeLattice::from_values(&[0.0, 0.5, 1.0]).unwrap();
        let cases = [
            (Quantale::Boolean, GradeLattice::boolean(), 2),
            (Quantale::Godel, g3, 2),
            (Quantale::Lukasiewicz, GradeLattice::boolean(), 1),
        ];
        for (q, lattice, n) in cases {
            let p = PowersetObject::full(&universe(n), &lattice).unwrap();
            assert!(check_bialgebra(&p, q).unwrap().all_pass(), "{q} {lattice}");
            assert!(
                check_monoid_laws(&p, q).unwrap().all_pass(),
                "{q} {lattice}"
            );
        }
    }

    #[test]
    fn boolean_generators_are_included_crisp_relations() {
        let u = universe(2);
        let p = PowersetObject::full(&u, &GradeLattice::boolean()).unwrap();
        let s = p.index_set();
        let n = p.len();
        let ss = IndexSet::product(s, s);
        let sets = p.members();
        let crisp_delta =
            CrispRel::new(s.clone(), ss.clone(), (0..n).map(|a| (a, a * n + a))).unwrap();
        let crisp_mu = CrispRel::new(
            ss,
            s.clone(),
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| {
                    let c = sets[a]
                        .membership()
                        .iter()
                        .zip(sets[b].membership())
                        .map(|(x, y)| x.min(*y))
                        .collect::<Vec<_>>();
                    let c = sets
                        .iter()
                        .position(|m| m.membership() == c.as_slice())
                        .unwrap();
                    (a * n + b, c)
                }),
        )
        .unwrap();
        for q in Quantale::ALL {
            assert!(delta(&p, q).unwrap().same_as(&include(&crisp_delta, q)));
            assert!(mu(&p, q).unwrap().same_as(&include(&crisp_mu, q)));
        }
    }
}
