//! Typed morphism expressions over V-Rel.
//!
//! A [`Diagram`] is built from named generator relations, identities and
//! symmetries by sequential composition and monoidal product. Its type is a
//! pair of wire lists; the empty list is the unit `I`.
//!
//! Two evaluation routes are provided. [`Diagram::to_vrel_dense`] multiplies
//! the full matrices with [`vrel::compose`] and [`vrel::tensor_rel`]; it is
//! the reference semantics but its intermediate matrices grow with the
//! product of all wire sizes. [`Diagram::apply`] instead pushes a sparse
//! state through the diagram one generator at a time, contracting only the
//! wires each generator touches. Both produce the same relation.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quantale::{Grade, Quantale};
use crate::vrel::{self, IndexSet, VRel};

/// Upper bound on the number of non-⊥ entries carried by a [`State`].
pub const STATE_GUARD: usize = 1 << 24;

/// A named relation used as a box in a diagram.
#[derive(Clone, Debug)]
pub struct Generator {
    label: String,
    rel: Arc<VRel>,
    dom: Vec<IndexSet>,
    cod: Vec<IndexSet>,
    sparse: Arc<Vec<Vec<(usize, Grade)>>>,
}

impl Generator {
    pub fn new(label: impl Into<String>, rel: VRel) -> Self {
        let dom = wires(rel.source());
        let cod = wires(rel.target());
        let sparse = Arc::new(rel.sparse_rows());
        Generator {
            label: label.into(),
            rel: Arc::new(rel),
            dom,
            cod,
            sparse,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relation(&self) -> &VRel {
        &self.rel
    }
}

fn wires(s: &IndexSet) -> Vec<IndexSet> {
    s.flat_atoms()
        .into_iter()
        .map(|a| IndexSet::Atoms(a.clone()))
        .collect()
}

fn same_wires(a: &[IndexSet], b: &[IndexSet]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

fn describe(ws: &[IndexSet]) -> String {
    if ws.is_empty() {
        "I".into()
    } else {
        ws.iter()
            .map(|w| format!("|{}|", w.len()))
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

#[derive(Clone, Debug)]
pub enum Diagram {
    Box(Generator),
    Id(IndexSet),
    Swap(IndexSet, IndexSet),
    /// `outer ∘ inner`: `inner` runs first.
    Compose(Arc<Diagram>, Arc<Diagram>),
    Tensor(Arc<Diagram>, Arc<Diagram>),
}

impl Diagram {
    pub fn generator(label: impl Into<String>, rel: VRel) -> Self {
        Diagram::Box(Generator::new(label, rel))
    }

    pub fn id(wire: &IndexSet) -> Self {
        Diagram::Id(wire.clone())
    }

    pub fn swap(a: &IndexSet, b: &IndexSet) -> Self {
        Diagram::Swap(a.clone(), b.clone())
    }

    /// `outer ∘ inner`, checking that the interface wires agree.
    pub fn compose(outer: Diagram, inner: Diagram) -> Result<Self> {
        let (c, d) = (inner.cod(), outer.dom());
        if !same_wires(&c, &d) {
            return Err(Error::CompositionShape(format!(
                "`{outer}` expects {} but `{inner}` produces {}",
                describe(&d),
                describe(&c)
            )));
        }
        Ok(Diagram::Compose(Arc::new(outer), Arc::new(inner)))
    }

    /// Right-to-left composition of a chain, as written `f ∘ g ∘ h`.
    pub fn chain(parts: Vec<Diagram>) -> Result<Self> {
        let mut it = parts.into_iter().rev();
        let first = it
            .next()
            .ok_or_else(|| Error::Internal("empty composition chain".into()))?;
        it.try_fold(first, |inner, outer| Diagram::compose(outer, inner))
    }

    pub fn tensor(left: Diagram, right: Diagram) -> Self {
        Diagram::Tensor(Arc::new(left), Arc::new(right))
    }

    pub fn tensor_all(parts: Vec<Diagram>) -> Result<Self> {
        let mut it = parts.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Internal("empty tensor".into()))?;
        Ok(it.fold(first, Diagram::tensor))
    }

    pub fn dom(&self) -> Vec<IndexSet> {
        match self {
            Diagram::Box(g) => g.dom.clone(),
            Diagram::Id(w) => vec![w.clone()],
            Diagram::Swap(a, b) => vec![a.clone(), b.clone()],
            Diagram::Compose(_, inner) => inner.dom(),
            Diagram::Tensor(l, r) => {
                let mut d = l.dom();
                d.extend(r.dom());
                d
            }
        }
    }

    pub fn cod(&self) -> Vec<IndexSet> {
        match self {
            Diagram::Box(g) => g.cod.clone(),
            Diagram::Id(w) => vec![w.clone()],
            Diagram::Swap(a, b) => vec![b.clone(), a.clone()],
            Diagram::Compose(outer, _) => outer.cod(),
            Diagram::Tensor(l, r) => {
                let mut c = l.cod();
                c.extend(r.cod());
                c
            }
        }
    }

    /// `I ↛ I`.
    pub fn is_scalar(&self) -> bool {
        self.dom().is_empty() && self.cod().is_empty()
    }

    /// Quantale of the generators; `None` if the diagram has no boxes.
    pub fn quantale(&self) -> Option<Quantale> {
        match self {
            Diagram::Box(g) => Some(g.rel.quantale()),
            Diagram::Id(_) | Diagram::Swap(..) => None,
            Diagram::Compose(a, b) | Diagram::Tensor(a, b) => a.quantale().or_else(|| b.quantale()),
        }
    }

    /// Generators in left-to-right, outer-to-inner order.
    pub fn generators(&self) -> Vec<&Generator> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators<'a>(&'a self, out: &mut Vec<&'a Generator>) {
        match self {
            Diagram::Box(g) => out.push(g),
            Diagram::Id(_) | Diagram::Swap(..) => {}
            Diagram::Compose(a, b) | Diagram::Tensor(a, b) => {
                a.collect_generators(out);
                b.collect_generators(out);
            }
        }
    }

    /// Reference evaluation by full matrix algebra.
    pub fn to_vrel_dense(&self, q: Quantale) -> Result<VRel> {
        match self {
            Diagram::Box(g) => {
                if g.rel.quantale() != q {
                    return Err(Error::QuantaleMismatch(
                        g.rel.quantale().to_string(),
                        q.to_string(),
                    ));
                }
                Ok((*g.rel).clone())
            }
            Diagram::Id(w) => Ok(vrel::identity(w, q)),
            Diagram::Swap(a, b) => Ok(vrel::swap(a, b, q)),
            Diagram::Compose(outer, inner) => {
                vrel::compose(&inner.to_vrel_dense(q)?, &outer.to_vrel_dense(q)?)
            }
            Diagram::Tensor(l, r) => vrel::tensor_rel(&l.to_vrel_dense(q)?, &r.to_vrel_dense(q)?),
        }
    }

    /// Full relation computed row by row with the sparse evaluator.
    pub fn to_vrel(&self, q: Quantale) -> Result<VRel> {
        let dom = self.dom();
        let cod = self.cod();
        let source = IndexSet::product_of(&dom);
        let target = IndexSet::product_of(&cod);
        let mut out = VRel::bottom(source.clone(), target.clone(), q);
        for i in 0..source.len() {
            let state = self.apply(q, State::basis(q, &dom, i))?;
            for (j, g) in state.entries {
                out.set(i, j, g);
            }
        }
        Ok(out)
    }

    /// Scalar value of an `I ↛ I` diagram.
    pub fn evaluate_scalar(&self, q: Quantale) -> Result<Grade> {
        if !self.is_scalar() {
            return Err(Error::CompositionShape(format!(
                "expected I ↛ I, found {} ↛ {}",
                describe(&self.dom()),
                describe(&self.cod())
            )));
        }
        let out = self.apply(q, State::unit(q))?;
        Ok(out.get(0))
    }

    /// Pushes `state` (over this diagram's domain wires) through the diagram.
    pub fn apply(&self, q: Quantale, state: State) -> Result<State> {
        if !same_wires(&state.wires, &self.dom()) {
            return Err(Error::CompositionShape(format!(
                "state over {} fed to a diagram expecting {}",
                describe(&state.wires),
                describe(&self.dom())
            )));
        }
        self.apply_at(q, state, 0)
    }

    fn apply_at(&self, q: Quantale, state: State, offset: usize) -> Result<State> {
        match self {
            Diagram::Box(g) => {
                if g.rel.quantale() != q {
                    return Err(Error::QuantaleMismatch(
                        g.rel.quantale().to_string(),
                        q.to_string(),
                    ));
                }
                state.contract(q, offset, g)
            }
            Diagram::Id(_) => Ok(state),
            Diagram::Swap(..) => Ok(state.swap_adjacent(offset)),
            Diagram::Compose(outer, inner) => {
                let mid = inner.apply_at(q, state, offset)?;
                outer.apply_at(q, mid, offset)
            }
            Diagram::Tensor(l, r) => {
                // the right block sits after the left block's input wires
                let shifted = r.apply_at(q, state, offset + l.dom().len())?;
                l.apply_at(q, shifted, offset)
            }
        }
    }

    fn is_compose(&self) -> bool {
        matches!(self, Diagram::Compose(..))
    }

    fn is_tensor(&self) -> bool {
        matches!(self, Diagram::Tensor(..))
    }

    fn compose_chain<'a>(&'a self, out: &mut Vec<&'a Diagram>) {
        match self {
            Diagram::Compose(outer, inner) => {
                outer.compose_chain(out);
                inner.compose_chain(out);
            }
            d => out.push(d),
        }
    }

    fn tensor_items<'a>(&'a self, out: &mut Vec<&'a Diagram>) {
        match self {
            Diagram::Tensor(l, r) => {
                l.tensor_items(out);
                r.tensor_items(out);
            }
            d => out.push(d),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::Box(g) => f.write_str(&g.label),
            Diagram::Id(_) => f.write_str("id"),
            Diagram::Swap(..) => f.write_str("swap"),
            Diagram::Compose(..) => {
                let mut items = Vec::new();
                self.compose_chain(&mut items);
                let parts: Vec<String> = items
                    .iter()
                    .map(|d| {
                        if d.is_tensor() {
                            format!("({d})")
                        } else {
                            d.to_string()
                        }
                    })
                    .collect();
                f.write_str(&parts.join(" ∘ "))
            }
            Diagram::Tensor(..) => {
                let mut items = Vec::new();
                self.tensor_items(&mut items);
                let parts: Vec<String> = items
                    .iter()
                    .map(|d| {
                        if d.is_compose() {
                            format!("({d})")
                        } else {
                            d.to_string()
                        }
                    })
                    .collect();
                f.write_str(&parts.join(" ⊗ "))
            }
        }
    }
}

/// A sparse relation `I ↛ w₁ ⊗ … ⊗ wₙ`; absent entries are ⊥.
#[derive(Clone, Debug)]
pub struct State {
    wires: Vec<IndexSet>,
    sizes: Vec<usize>,
    entries: HashMap<usize, Grade>,
}

impl State {
    pub fn unit(q: Quantale) -> Self {
        State {
            wires: Vec::new(),
            sizes: Vec::new(),
            entries: HashMap::from([(0, q.unit())]),
        }
    }

    /// The point state `e` at flat index `i`.
    pub fn basis(q: Quantale, wires: &[IndexSet], i: usize) -> Self {
        State {
            wires: wires.to_vec(),
            sizes: wires.iter().map(IndexSet::len).collect(),
            entries: HashMap::from([(i, q.unit())]),
        }
    }

    pub fn wires(&self) -> &[IndexSet] {
        &self.wires
    }

    pub fn get(&self, i: usize) -> Grade {
        self.entries.get(&i).copied().unwrap_or(Grade::ZERO)
    }

    pub fn nonzero(&self) -> usize {
        self.entries.len()
    }

    fn contract(self, q: Quantale, offset: usize, g: &Generator) -> Result<State> {
        let k = g.dom.len();
        if offset + k > self.wires.len() || !same_wires(&self.wires[offset..offset + k], &g.dom) {
            return Err(Error::CompositionShape(format!(
                "generator `{}` does not fit wires at offset {offset}",
                g.label
            )));
        }
        let mid: usize = self.sizes[offset..offset + k].iter().product();
        let post: usize = self.sizes[offset + k..].iter().product();
        let mid_out: usize = g.cod.iter().map(IndexSet::len).product();

        let mut wires = self.wires[..offset].to_vec();
        wires.extend(g.cod.iter().cloned());
        wires.extend(self.wires[offset + k..].iter().cloned());
        let sizes = wires.iter().map(IndexSet::len).collect();

        let bottom = q.bottom();
        let mut entries: HashMap<usize, Grade> = HashMap::new();
        for (&idx, &val) in &self.entries {
            if val == bottom {
                continue;
            }
            let rest = idx % post;
            let i = (idx / post) % mid;
            let pre = idx / (post * mid);
            for &(j, w) in &g.sparse[i] {
                let t = q.tensor(val, w);
                if t == bottom {
                    continue;
                }
                let out = (pre * mid_out + j) * post + rest;
                let slot = entries.entry(out).or_insert(bottom);
                *slot = q.join2(*slot, t);
            }
            if entries.len() > STATE_GUARD {
                return Err(Error::SizeGuard {
                    what: "diagram state",
                    size: entries.len(),
                    limit: STATE_GUARD,
                });
            }
        }
        Ok(State {
            wires,
            sizes,
            entries,
        })
    }

    fn swap_adjacent(self, offset: usize) -> State {
        let (a, b) = (self.sizes[offset], self.sizes[offset + 1]);
        let post: usize = self.sizes[offset + 2..].iter().product();
        let mut wires = self.wires;
        wires.swap(offset, offset + 1);
        let mut sizes = self.sizes;
        sizes.swap(offset, offset + 1);
        let entries = self
            .entries
            .into_iter()
            .map(|(idx, g)| {
                let rest = idx % post;
                let y = (idx / post) % b;
                let x = (idx / (post * b)) % a;
                let pre = idx / (post * a * b);
                (((pre * b + y) * a + x) * post + rest, g)
            })
            .collect();
        State {
            wires,
            sizes,
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: f64) -> Grade {
        Grade::new(v).unwrap()
    }

    fn rel(a: &IndexSet, b: &IndexSet, q: Quantale, vals: &[f64]) -> VRel {
        VRel::new(
            a.clone(),
            b.clone(),
            q,
            vals.iter().map(|&v| g(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn display_flattens_chains() {
        let s = IndexSet::numbered("s", 2);
        let q = Quantale::Godel;
        let np = Diagram::generator("np", rel(&IndexSet::unit(), &s, q, &[0.3, 0.9]));
        let vp = Diagram::generator("vp", rel(&IndexSet::unit(), &s, q, &[0.5, 0.2]));
        let eps = Diagram::generator("eps", vrel::epsilon(&s, q));
        let d = Diagram::chain(vec![eps, Diagram::tensor(np, vp)]).unwrap();
        assert_eq!(d.to_string(), "eps ∘ (np ⊗ vp)");
        assert!(d.is_scalar());
        // max_a min(np(a), vp(a)) = max(0.3, 0.2)
        assert_eq!(d.evaluate_scalar(q).unwrap(), g(0.3));
    }

    #[test]
    fn ill_typed_composition_is_rejected() {
        let s = IndexSet::numbered("s", 2);
        let t = IndexSet::numbered("t", 3);
        let q = Quantale::Godel;
        let a = Diagram::generator("a", vrel::identity(&s, q));
        let b = Diagram::generator("b", vrel::identity(&t, q));
        assert!(matches!(
            Diagram::compose(a, b),
            Err(Error::CompositionShape(_))
        ));
    }

    #[test]
    fn sparse_and_dense_routes_agree() {
        let s = IndexSet::numbered("s", 3);
        let t = IndexSet::numbered("t", 2);
        for q in [Quantale::Godel, Quantale::Lukasiewicz, Quantale::Product] {
            let f = rel(&s, &t, q, &[0.1, 0.7, 0.4, 0.0, 0.9, 0.6]);
            let h = rel(&t, &s, q, &[0.5, 0.2, 1.0, 0.3, 0.8, 0.0]);
            let d = Diagram::chain(vec![
                Diagram::tensor(Diagram::generator("h", h), Diagram::id(&s)),
                Diagram::swap(&s, &t),
                Diagram::tensor(Diagram::id(&s), Diagram::generator("f", f)),
            ])
            .unwrap();
            let sparse = d.to_vrel(q).unwrap();
            let dense = d.to_vrel_dense(q).unwrap();
            assert!(sparse.approx_eq(&dense, 0.0), "{q}");
        }
    }
}
