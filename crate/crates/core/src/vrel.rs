//! Many-valued relations between finite sets, stored as dense matrices.
//!
//! A [`VRel`] `A ↛ B` assigns a grade of its [`Quantale`] to every pair
//! `(a, b)`. Composition joins tensors over the middle index, the monoidal
//! product is the cartesian product of index sets, and every set is its own
//! dual through [`epsilon`] and [`eta`].
//!
//! Product index sets keep their factor structure for display, but
//! composition only requires the *flattened* factor lists to agree. Row-major
//! enumeration makes the associators and unitors identity matrices, so
//! `(A × B) × C`, `A × (B × C)` and `I × A × B × C` all share one layout.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quantale::{Grade, Quantale};

/// Largest object accepted by [`check_snake`].
pub const SNAKE_GUARD: usize = 64;

#[derive(Debug)]
pub struct Atoms {
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl PartialEq for Atoms {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

/// A finite, ordered set of labelled elements, or a cartesian product of such
/// sets. The empty product is the monoidal unit `I = {⋆}`.
#[derive(Clone, Debug)]
pub enum IndexSet {
    Atoms(Arc<Atoms>),
    Product(Arc<[IndexSet]>),
}

impl PartialEq for IndexSet {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (IndexSet::Atoms(a), IndexSet::Atoms(b)) => Arc::ptr_eq(a, b) || a == b,
            (IndexSet::Product(a), IndexSet::Product(b)) => a == b,
            _ => false,
        }
    }
}

impl IndexSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(IndexSet::Atoms(Arc::new(Atoms { labels, lookup })))
    }

    /// `{x0, x1, …}` with `n` elements.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        IndexSet::new((0..n).map(|i| format!("{prefix}{i}"))).expect("labels are distinct")
    }

    /// The monoidal unit `I = {⋆}`.
    pub fn unit() -> Self {
        IndexSet::Product(Arc::from(Vec::new()))
    }

    pub fn product(a: &IndexSet, b: &IndexSet) -> Self {
        IndexSet::Product(Arc::from(vec![a.clone(), b.clone()]))
    }

    pub fn product_of(factors: &[IndexSet]) -> Self {
        IndexSet::Product(Arc::from(factors.to_vec()))
    }

    pub fn len(&self) -> usize {
        match self {
            IndexSet::Atoms(a) => a.labels.len(),
            IndexSet::Product(fs) => fs.iter().map(IndexSet::len).product(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_unit(&self) -> bool {
        self.flat_atoms().is_empty()
    }

    /// Human-readable label of the `i`-th element.
    pub fn label(&self, i: usize) -> String {
        match self {
            IndexSet::Atoms(a) => a.labels[i].clone(),
            IndexSet::Product(fs) if fs.is_empty() => "⋆".to_string(),
            IndexSet::Product(fs) => {
                let coords = self.coords(i);
                let parts: Vec<String> = fs.iter().zip(coords).map(|(f, c)| f.label(c)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    /// Position of an atom label. Products are looked up by their rendered
    /// label.
    pub fn position(&self, label: &str) -> Option<usize> {
        match self {
            IndexSet::Atoms(a) => a.lookup.get(label).copied(),
            IndexSet::Product(_) => (0..self.len()).find(|&i| self.label(i) == label),
        }
    }

    /// Row-major coordinates of element `i` in the top-level factors.
    pub fn coords(&self, mut i: usize) -> Vec<usize> {
        match self {
            IndexSet::Atoms(_) => vec![i],
            IndexSet::Product(fs) => {
                let mut out = vec![0; fs.len()];
                for (k, f) in fs.iter().enumerate().rev() {
                    let n = f.len();
                    out[k] = i % n;
                    i /= n;
                }
                out
            }
        }
    }

    /// The atomic factors in order, with units and nesting removed.
    pub fn flat_atoms(&self) -> Vec<&Arc<Atoms>> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Arc<Atoms>>) {
        match self {
            IndexSet::Atoms(a) => out.push(a),
            IndexSet::Product(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
        }
    }

    /// Equal up to associativity and unit isomorphisms.
    pub fn compatible(&self, other: &IndexSet) -> bool {
        let (a, b) = (self.flat_atoms(), other.flat_atoms());
        a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| Arc::ptr_eq(x, y) || x == y)
    }

    fn describe(&self) -> String {
        match self {
            IndexSet::Atoms(a) => format!("{{{}}}", a.labels.join(",")),
            IndexSet::Product(fs) if fs.is_empty() => "I".to_string(),
            IndexSet::Product(fs) => fs
                .iter()
                .map(IndexSet::describe)
                .collect::<Vec<_>>()
                .join("×"),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A morphism `source ↛ target` of V-Rel.
#[derive(Clone, Debug, PartialEq)]
pub struct VRel {
    source: IndexSet,
    target: IndexSet,
    quantale: Quantale,
    entries: Vec<Grade>,
}

impl VRel {
    pub fn new(
        source: IndexSet,
        target: IndexSet,
        quantale: Quantale,
        entries: Vec<Grade>,
    ) -> Result<Self> {
        if entries.len() != source.len() * target.len() {
            return Err(Error::CompositionShape(format!(
                "{} entries for a {}×{} matrix",
                entries.len(),
                source.len(),
                target.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|g| !quantale.contains(**g)) {
            return Err(Error::GradeOutOfRange(bad.value()));
        }
        Ok(VRel {
            source,
            target,
            quantale,
            entries,
        })
    }

    pub fn from_fn(
        source: IndexSet,
        target: IndexSet,
        quantale: Quantale,
        mut f: impl FnMut(usize, usize) -> Grade,
    ) -> Result<Self> {
        let (n, m) = (source.len(), target.len());
        let mut entries = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                entries.push(f(i, j));
            }
        }
        VRel::new(source, target, quantale, entries)
    }

    /// All-⊥ relation.
    pub fn bottom(source: IndexSet, target: IndexSet, quantale: Quantale) -> Self {
        let n = source.len() * target.len();
        VRel {
            source,
            target,
            quantale,
            entries: vec![quantale.bottom(); n],
        }
    }

    pub fn source(&self) -> &IndexSet {
        &self.source
    }

    pub fn target(&self) -> &IndexSet {
        &self.target
    }

    pub fn quantale(&self) -> Quantale {
        self.quantale
    }

    pub fn entries(&self) -> &[Grade] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Grade {
        self.entries[i * self.target.len() + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, g: Grade) {
        let m = self.target.len();
        self.entries[i * m + j] = g;
    }

    pub fn row(&self, i: usize) -> &[Grade] {
        let m = self.target.len();
        &self.entries[i * m..(i + 1) * m]
    }

    pub fn get_by_label(&self, a: &str, b: &str) -> Option<Grade> {
        Some(self.get(self.source.position(a)?, self.target.position(b)?))
    }

    /// Sequential composition: `self : A ↛ B` followed by `next : B ↛ C`.
    pub fn then(&self, next: &VRel) -> Result<VRel> {
        compose(self, next)
    }

    /// Same shape (up to unit isomorphism) and every entry within `tol`.
    pub fn approx_eq(&self, other: &VRel, tol: f64) -> bool {
        self.source.compatible(&other.source)
            && self.target.compatible(&other.target)
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a.value() - b.value()).abs() <= tol)
    }

    /// Exact entrywise equality up to unit isomorphism.
    pub fn same_as(&self, other: &VRel) -> bool {
        self.approx_eq(other, 0.0)
    }

    /// The scalar of an `I ↛ I` relation.
    pub fn scalar(&self) -> Result<Grade> {
        if self.source.len() == 1 && self.target.len() == 1 {
            Ok(self.entries[0])
        } else {
            Err(Error::CompositionShape(format!(
                "expected I ↛ I, found {} ↛ {}",
                self.source, self.target
            )))
        }
    }

    /// Non-⊥ entries of each row, for sparse contraction.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, Grade)>> {
        let bottom = self.quantale.bottom();
        (0..self.source.len())
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| **g != bottom)
                    .map(|(j, g)| (j, *g))
                    .collect()
            })
            .collect()
    }
}

fn same_quantale(r: &VRel, s: &VRel) -> Result<Quantale> {
    if r.quantale != s.quantale {
        return Err(Error::QuantaleMismatch(
            r.quantale.to_string(),
            s.quantale.to_string(),
        ));
    }
    Ok(r.quantale)
}

/// `(r ; s)(a, c) = ⋁_b r(a, b) • s(b, c)`.
pub fn compose(r: &VRel, s: &VRel) -> Result<VRel> {
    let q = same_quantale(r, s)?;
    if !r.target.compatible(&s.source) {
        return Err(Error::CompositionShape(format!(
            "target {} does not match source {}",
            r.target, s.source
        )));
    }
    let (n, k, m) = (r.source.len(), r.target.len(), s.target.len());
    let bottom = q.bottom();
    let mut out = vec![bottom; n * m];
    for a in 0..n {
        let acc = &mut out[a * m..(a + 1) * m];
        for b in 0..k {
            let x = r.entries[a * k + b];
            if x == bottom {
                continue;
            }
            let srow = &s.entries[b * m..(b + 1) * m];
            for (slot, &y) in acc.iter_mut().zip(srow) {
                *slot = q.join2(*slot, q.tensor(x, y));
            }
        }
    }
    Ok(VRel {
        source: r.source.clone(),
        target: s.target.clone(),
        quantale: q,
        entries: out,
    })
}

/// Diagonal `e`, off-diagonal ⊥.
pub fn identity(a: &IndexSet, q: Quantale) -> VRel {
    let mut r = VRel::bottom(a.clone(), a.clone(), q);
    for i in 0..a.len() {
        r.set(i, i, q.unit());
    }
    r
}

/// `(r ⊗ s)((a, c), (b, d)) = r(a, b) • s(c, d)`.
pub fn tensor_rel(r: &VRel, s: &VRel) -> Result<VRel> {
    let q = same_quantale(r, s)?;
    let source = IndexSet::product(&r.source, &s.source);
    let target = IndexSet::product(&r.target, &s.target);
    let (rb, sc, sd) = (r.target.len(), s.source.len(), s.target.len());
    VRel::from_fn(source, target, q, |i, j| {
        let (a, c) = (i / sc, i % sc);
        let (b, d) = (j / sd, j % sd);
        q.tensor(r.entries[a * rb + b], s.entries[c * sd + d])
    })
}

/// Symmetry `σ : A × B ↛ B × A`.
pub fn swap(a: &IndexSet, b: &IndexSet, q: Quantale) -> VRel {
    let source = IndexSet::product(a, b);
    let target = IndexSet::product(b, a);
    let (na, nb) = (a.len(), b.len());
    let mut r = VRel::bottom(source, target, q);
    for x in 0..na {
        for y in 0..nb {
            r.set(x * nb + y, y * na + x, q.unit());
        }
    }
    r
}

/// Cap `ε_S : S × S ↛ I`, `e` exactly on the diagonal.
pub fn epsilon(s: &IndexSet, q: Quantale) -> VRel {
    let n = s.len();
    let mut r = VRel::bottom(IndexSet::product(s, s), IndexSet::unit(), q);
    for x in 0..n {
        r.set(x * n + x, 0, q.unit());
    }
    r
}

/// Cup `η_S : I ↛ S × S`, `e` exactly on the diagonal.
pub fn eta(s: &IndexSet, q: Quantale) -> VRel {
    let n = s.len();
    let mut r = VRel::bottom(IndexSet::unit(), IndexSet::product(s, s), q);
    for x in 0..n {
        r.set(0, x * n + x, q.unit());
    }
    r
}

/// Outcome of the two yanking identities of a self-dual object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnakeReport {
    /// `(1 ⊗ ε) ∘ (η ⊗ 1) = 1`
    pub left: bool,
    /// `(ε ⊗ 1) ∘ (1 ⊗ η) = 1`
    pub right: bool,
}

impl SnakeReport {
    pub fn all_pass(&self) -> bool {
        self.left && self.right
    }
}

/// Evaluates both snake equations as matrix identities.
pub fn snake_report(s: &IndexSet, q: Quantale) -> Result<SnakeReport> {
    if s.len() > SNAKE_GUARD {
        return Err(Error::SizeGuard {
            what: "snake object",
            size: s.len(),
            limit: SNAKE_GUARD,
        });
    }
    let id = identity(s, q);
    let (cap, cup) = (epsilon(s, q), eta(s, q));
    let left = compose(&tensor_rel(&cup, &id)?, &tensor_rel(&id, &cap)?)?;
    let right = compose(&tensor_rel(&id, &cup)?, &tensor_rel(&cap, &id)?)?;
    Ok(SnakeReport {
        left: left.same_as(&id),
        right: right.same_as(&id),
    })
}

pub fn check_snake(s: &IndexSet, q: Quantale) -> Result<bool> {
    Ok(snake_report(s, q)?.all_pass())
}

/// An ordinary relation, a morphism of Rel.
#[derive(Clone, Debug, PartialEq)]
pub struct CrispRel {
    source: IndexSet,
    target: IndexSet,
    pairs: BTreeSet<(usize, usize)>,
}

impl CrispRel {
    pub fn new(
        source: IndexSet,
        target: IndexSet,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs
            .iter()
            .find(|(a, b)| *a >= source.len() || *b >= target.len())
        {
            return Err(Error::UnknownElement(format!("({a},{b})")));
        }
        Ok(CrispRel {
            source,
            target,
            pairs,
        })
    }

    pub fn identity(a: &IndexSet) -> Self {
        CrispRel {
            source: a.clone(),
            target: a.clone(),
            pairs: (0..a.len()).map(|i| (i, i)).collect(),
        }
    }

    pub fn source(&self) -> &IndexSet {
        &self.source
    }

    pub fn target(&self) -> &IndexSet {
        &self.target
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    /// Relational composite `self ; next`.
    pub fn then(&self, next: &CrispRel) -> Result<CrispRel> {
        if !self.target.compatible(&next.source) {
            return Err(Error::CompositionShape(format!(
                "target {} does not match source {}",
                self.target, next.source
            )));
        }
        let pairs = self
            .pairs
            .iter()
            .flat_map(|&(a, b)| {
                next.pairs
                    .range((b, 0)..(b + 1, 0))
                    .map(move |&(_, c)| (a, c))
            })
            .collect();
        Ok(CrispRel {
            source: self.source.clone(),
            target: next.target.clone(),
            pairs,
        })
    }

    /// Cartesian product relation on `(A × C) ↛ (B × D)`.
    pub fn product(&self, other: &CrispRel) -> CrispRel {
        let (sc, sd) = (other.source.len(), other.target.len());
        let pairs = self
            .pairs
            .iter()
            .flat_map(|&(a, b)| {
                other
                    .pairs
                    .iter()
                    .map(move |&(c, d)| (a * sc + c, b * sd + d))
            })
            .collect();
        CrispRel {
            source: IndexSet::product(&self.source, &other.source),
            target: IndexSet::product(&self.target, &other.target),
            pairs,
        }
    }
}

/// The inclusion functor Rel → V-Rel: related pairs get `e`, others ⊥.
pub fn include(r: &CrispRel, q: Quantale) -> VRel {
    let mut out = VRel::bottom(r.source.clone(), r.target.clone(), q);
    for &(a, b) in &r.pairs {
        out.set(a, b, q.unit());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: f64) -> Grade {
        Grade::new(v).unwrap()
    }

    fn xy() -> IndexSet {
        IndexSet::new(["x", "y"]).unwrap()
    }

    fn matrix(a: &IndexSet, b: &IndexSet, q: Quantale, rows: &[&[f64]]) -> VRel {
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| g(v))).collect();
        VRel::new(a.clone(), b.clone(), q, entries).unwrap()
    }

    #[test]
    fn index_set_basics() {
        assert!(IndexSet::new(["a", "a"]).is_err());
        let unit = IndexSet::unit();
        assert_eq!(unit.len(), 1);
        assert_eq!(unit.label(0), "⋆");
        let p = IndexSet::product(&xy(), &IndexSet::new(["p", "q", "r"]).unwrap());
        assert_eq!(p.len(), 6);
        assert_eq!(p.label(0), "(x,p)");
        assert_eq!(p.label(4), "(y,q)");
        assert_eq!(p.position("(y,r)"), Some(5));
    }

    #[test]
    fn products_are_strictly_associative() {
        let a = xy();
        let left = IndexSet::product(&IndexSet::product(&a, &a), &a);
        let right = IndexSet::product(&a, &IndexSet::product(&a, &a));
        assert!(left.compatible(&right));
        assert!(IndexSet::product(&IndexSet::unit(), &a).compatible(&a));
        assert!(!left.compatible(&a));
    }

    #[test]
    fn godel_composition_example() {
        let a = xy();
        let q = Quantale::Godel;
        let r = matrix(&a, &a, q, &[&[0.2, 0.8], &[0.5, 0.1]]);
        let s = matrix(&a, &a, q, &[&[0.9, 0.3], &[0.4, 0.6]]);
        let rs = compose(&r, &s).unwrap();
        // brute force: max_b min(r(a,b), s(b,c))
        let expected = [[0.4, 0.6], [0.5, 0.3]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                assert_eq!(rs.get(i, j), g(want));
            }
        }
        assert_eq!(rs.get_by_label("x", "x"), Some(g(0.4)));
    }

    #[test]
    fn identity_examples() {
        let one = IndexSet::new(["x"]).unwrap();
        assert_eq!(identity(&one, Quantale::Godel).entries(), &[Grade::ONE]);
        let id = identity(&xy(), Quantale::Godel);
        assert_eq!(id.entries(), &[g(1.0), g(0.0), g(0.0), g(1.0)]);
        assert!(compose(&id, &id).unwrap().same_as(&id));
    }

    #[test]
    fn tensor_examples() {
        let one = IndexSet::new(["x"]).unwrap();
        let q = Quantale::Godel;
        let r = matrix(&one, &one, q, &[&[0.3]]);
        let s = matrix(&one, &one, q, &[&[0.7]]);
        assert_eq!(tensor_rel(&r, &s).unwrap().entries(), &[g(0.3)]);
        let c = IndexSet::new(["p", "q", "r"]).unwrap();
        let ii = tensor_rel(&identity(&xy(), q), &identity(&c, q)).unwrap();
        assert!(ii.same_as(&identity(&IndexSet::product(&xy(), &c), q)));
    }

    #[test]
    fn epsilon_eta_examples() {
        let one = IndexSet::new(["x"]).unwrap();
        assert_eq!(epsilon(&one, Quantale::Godel).entries(), &[Grade::ONE]);
        let e = epsilon(&xy(), Quantale::Godel);
        assert_eq!(e.get_by_label("(x,y)", "⋆"), Some(Grade::ZERO));
        assert_eq!(e.get_by_label("(y,y)", "⋆"), Some(Grade::ONE));
        let h = eta(&xy(), Quantale::Godel);
        assert_eq!(h.get_by_label("⋆", "(y,x)"), Some(Grade::ZERO));
    }

    #[test]
    fn snake_small_and_guard() {
        for q in Quantale::ALL {
            assert!(check_snake(&IndexSet::numbered("s", 1), q).unwrap());
            assert!(check_snake(&IndexSet::numbered("s", 4), q).unwrap());
        }
        assert!(matches!(
            check_snake(&IndexSet::numbered("s", 65), Quantale::Godel),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn mismatched_composition_is_an_error() {
        let a = xy();
        let b = IndexSet::new(["p", "q", "r"]).unwrap();
        let r = identity(&a, Quantale::Godel);
        let s = identity(&b, Quantale::Godel);
        assert!(matches!(compose(&r, &s), Err(Error::CompositionShape(_))));
        let t = identity(&a, Quantale::Product);
        assert!(matches!(compose(&r, &t), Err(Error::QuantaleMismatch(..))));
    }

    #[test]
    fn include_examples() {
        let a = xy();
        for q in Quantale::ALL {
            assert!(include(&CrispRel::identity(&a), q).same_as(&identity(&a, q)));
            let empty = CrispRel::new(a.clone(), a.clone(), []).unwrap();
            assert!(include(&empty, q)
                .entries()
                .iter()
                .all(|g| *g == q.bottom()));
        }
    }

    #[test]
    fn crisp_composition() {
        let a = IndexSet::numbered("a", 3);
        let r = CrispRel::new(a.clone(), a.clone(), [(0, 1), (1, 2)]).unwrap();
        let s = CrispRel::new(a.clone(), a.clone(), [(1, 0), (2, 2)]).unwrap();
        let rs = r.then(&s).unwrap();
        assert_eq!(
            rs.pairs().iter().copied().collect::<Vec<_>>(),
            vec![(0, 0), (1, 2)]
        );
    }
}
