//! Truth and degree of truth of parsed sentences.
//!
//! Three evaluators share one sentence resolution step:
//!
//! * [`eval_crisp_truth`]: set-theoretic truth over crisp models.
//! * [`eval_zadeh_direct`]: relative sigma-counts fed to the quantifier's
//!   possibility distribution.
//! * [`eval_categorical`]: the sentence compiled to an `I ↛ I` morphism of
//!   V-Rel built from lexical states, quantifier relations and the
//!   copy/intersect bialgebra, evaluated to its single entry.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::fuzzyset::{FuzzyRelation, FuzzySet};
use crate::grammar::{self, NounPhrase, ParseTree, SentenceForm, VerbPhrase};
use crate::model::Model;
use crate::powbialg::{self, PowersetObject, GENERATOR_GUARD};
use crate::quantale::{Grade, Quantale};
use crate::quantifier::{argmax_scale, CrispQuantifier, QuantifierDenotation, DEFAULT_GRID_STEP};
use crate::vrel::{self, IndexSet, VRel};

/// Most subsets kept when closing a sentence's denotations.
pub const CANDIDATE_CAP: usize = 256;

/// Which subsets the categorical evaluator ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// The closure of the sentence's denotations, with each lexical state of
    /// a quantified sentence supported only on its denotation.
    #[default]
    Restricted,
    /// All of `G^U`, every lexical state unrestricted.
    Exhaustive,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Restricted => "restricted",
            Mode::Exhaustive => "exhaustive",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "restricted" => Ok(Mode::Restricted),
            "exhaustive" => Ok(Mode::Exhaustive),
            _ => Err(Error::Unsupported(format!("mode `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Crisp,
    Direct,
    Categorical,
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Crisp => "crisp",
            Method::Direct => "direct",
            Method::Categorical => "categorical",
            Method::Both => "both",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "crisp" => Ok(Method::Crisp),
            "direct" => Ok(Method::Direct),
            "categorical" => Ok(Method::Categorical),
            "both" => Ok(Method::Both),
            _ => Err(Error::Unsupported(format!("method `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOptions {
    pub mode: Mode,
    /// Grid step for quantifier argmax scaling.
    pub grid_step: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            mode: Mode::Restricted,
            grid_step: DEFAULT_GRID_STEP,
        }
    }
}

/// A sentence with every word replaced by its denotation.
#[derive(Clone, Debug)]
enum Resolved {
    BareIntransitive {
        np: FuzzySet,
        vp: FuzzySet,
    },
    /// Also covers `d n v np`, whose scope is the converse image of `np`.
    QuantSubject {
        d: QuantifierDenotation,
        n: FuzzySet,
        vp: FuzzySet,
        via: Option<(FuzzyRelation, FuzzySet)>,
    },
    QuantObject {
        np: FuzzySet,
        v: FuzzyRelation,
        d: QuantifierDenotation,
        n: FuzzySet,
    },
    DoubleQuant {
        d: QuantifierDenotation,
        n: FuzzySet,
        v: FuzzyRelation,
        d2: QuantifierDenotation,
        n2: FuzzySet,
    },
    BareTransitive {
        np: FuzzySet,
        v: FuzzyRelation,
        np2: FuzzySet,
    },
}

fn resolve(tree: &ParseTree, m: &Model) -> Result<Resolved> {
    use NounPhrase::{Name, Quantified};
    use VerbPhrase::{Intransitive, Transitive};
    Ok(match (&tree.subject, &tree.predicate) {
        (Name(np), Intransitive(vp)) => Resolved::BareIntransitive {
            np: m.np(np)?.clone(),
            vp: m.vp(vp)?.clone(),
        },
        (Quantified { det, noun }, Intransitive(vp)) => Resolved::QuantSubject {
            d: m.quantifier(det)?.clone(),
            n: m.noun(noun)?.clone(),
            vp: m.vp(vp)?.clone(),
            via: None,
        },
        (
            Quantified { det, noun },
            Transitive {
                verb,
                object: Name(np),
            },
        ) => {
            let v = m.verb(verb)?.clone();
            let np = m.np(np)?.clone();
            Resolved::QuantSubject {
                d: m.quantifier(det)?.clone(),
                n: m.noun(noun)?.clone(),
                vp: v.converse().image(&np)?,
                via: Some((v, np)),
            }
        }
        (
            Name(np),
            Transitive {
                verb,
                object: Quantified { det, noun },
            },
        ) => Resolved::QuantObject {
            np: m.np(np)?.clone(),
            v: m.verb(verb)?.clone(),
            d: m.quantifier(det)?.clone(),
            n: m.noun(noun)?.clone(),
        },
        (
            Quantified { det, noun },
            Transitive {
                verb,
                object:
                    Quantified {
                        det: det2,
                        noun: noun2,
                    },
            },
        ) => Resolved::DoubleQuant {
            d: m.quantifier(det)?.clone(),
            n: m.noun(noun)?.clone(),
            v: m.verb(verb)?.clone(),
            d2: m.quantifier(det2)?.clone(),
            n2: m.noun(noun2)?.clone(),
        },
        (
            Name(np),
            Transitive {
                verb,
                object: Name(np2),
            },
        ) => Resolved::BareTransitive {
            np: m.np(np)?.clone(),
            v: m.verb(verb)?.clone(),
            np2: m.np(np2)?.clone(),
        },
    })
}

fn crisp_set(s: &FuzzySet) -> Result<()> {
    if s.is_crisp() {
        Ok(())
    } else {
        Err(Error::WrongEvaluator(format!(
            "crisp truth needs crisp denotations, found {s}"
        )))
    }
}

fn crisp_rel(r: &FuzzyRelation) -> Result<()> {
    if r.is_crisp() {
        Ok(())
    } else {
        Err(Error::WrongEvaluator(
            "crisp truth needs crisp verb denotations".into(),
        ))
    }
}

fn crisp_quantifier(d: &QuantifierDenotation) -> Result<CrispQuantifier> {
    d.as_crisp().ok_or_else(|| {
        Error::WrongEvaluator(format!(
            "crisp truth needs a crisp quantifier, `{}` is fuzzy",
            d.name()
        ))
    })
}

/// Set-theoretic truth. Every denotation the sentence uses must be crisp.
pub fn eval_crisp_truth(tree: &ParseTree, model: &Model) -> Result<bool> {
    match resolve(tree, model)? {
        Resolved::BareIntransitive { np, vp } => {
            crisp_set(&np)?;
            crisp_set(&vp)?;
            Ok(!np.intersect(&vp)?.is_empty())
        }
        Resolved::QuantSubject { d, n, vp, via } => {
            let d = crisp_quantifier(&d)?;
            crisp_set(&n)?;
            if let Some((v, np)) = &via {
                crisp_rel(v)?;
                crisp_set(np)?;
            }
            crisp_set(&vp)?;
            d.holds(&n, &n.intersect(&vp)?)
        }
        Resolved::QuantObject { np, v, d, n } => {
            let d = crisp_quantifier(&d)?;
            crisp_set(&np)?;
            crisp_set(&n)?;
            crisp_rel(&v)?;
            d.holds(&n, &n.intersect(&v.image(&np)?)?)
        }
        Resolved::DoubleQuant { d, n, v, d2, n2 } => {
            let (d, d2) = (crisp_quantifier(&d)?, crisp_quantifier(&d2)?);
            crisp_set(&n)?;
            crisp_set(&n2)?;
            crisp_rel(&v)?;
            let u = model.universe();
            let mut scope = Vec::new();
            for a in 0..u.len() {
                let img = v.image(&FuzzySet::crisp(u, [a]))?;
                if d2.holds(&n2, &n2.intersect(&img)?)? {
                    scope.push(a);
                }
            }
            let scope = FuzzySet::crisp(u, scope);
            d.holds(&n, &n.intersect(&scope)?)
        }
        Resolved::BareTransitive { np, v, np2 } => {
            crisp_set(&np)?;
            crisp_set(&np2)?;
            crisp_rel(&v)?;
            Ok(!v.image(&np)?.intersect(&np2)?.is_empty())
        }
    }
}

/// One max-min term of the verb evaluation between two scaled sets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerbTerm {
    pub subject: usize,
    pub object: usize,
    pub value: Grade,
}

/// Intermediate values of the `d n v d' n'` procedure.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleQuantTrace {
    pub subject: FuzzySet,
    pub object: FuzzySet,
    /// `min(μ_B(a), μ_v(a, b), μ_D(b))` for every pair with `μ_v(a, b) > 0`,
    /// row-major.
    pub terms: Vec<VerbTerm>,
    pub value: Grade,
}

fn scaled(d: &QuantifierDenotation, n: &FuzzySet, grid_step: f64) -> Result<FuzzySet> {
    let f = d.as_fuzzy().ok_or_else(|| {
        Error::Unsupported(format!(
            "`{}` has no possibility distribution to maximise",
            d.name()
        ))
    })?;
    n.scale(argmax_scale(&f, grid_step)?)
}

fn double_trace(
    d: &QuantifierDenotation,
    n: &FuzzySet,
    v: &FuzzyRelation,
    d2: &QuantifierDenotation,
    n2: &FuzzySet,
    grid_step: f64,
) -> Result<DoubleQuantTrace> {
    let subject = scaled(d, n, grid_step)?;
    let object = scaled(d2, n2, grid_step)?;
    let size = n.universe().len();
    let mut terms = Vec::new();
    for a in 0..size {
        for b in 0..size {
            let g = v.grade(a, b);
            if g > Grade::ZERO {
                terms.push(VerbTerm {
                    subject: a,
                    object: b,
                    value: subject.grade(a).min(g).min(object.grade(b)),
                });
            }
        }
    }
    let value = terms.iter().fold(Grade::ZERO, |acc, t| acc.max(t.value));
    Ok(DoubleQuantTrace {
        subject,
        object,
        terms,
        value,
    })
}

/// The scaled sets and min-terms behind a `d n v d' n'` sentence.
pub fn double_quant_trace(
    tree: &ParseTree,
    model: &Model,
    grid_step: f64,
) -> Result<DoubleQuantTrace> {
    match resolve(tree, model)? {
        Resolved::DoubleQuant { d, n, v, d2, n2 } => double_trace(&d, &n, &v, &d2, &n2, grid_step),
        _ => Err(Error::Unsupported(format!(
            "{} sentence has no double-quantifier trace",
            tree.form()
        ))),
    }
}

/// Degree of truth by relative sigma-counts.
pub fn eval_zadeh_direct(tree: &ParseTree, model: &Model, grid_step: f64) -> Result<Grade> {
    let c = model.counting();
    match resolve(tree, model)? {
        Resolved::BareIntransitive { np, vp } => Ok(Grade::clamped(c.proportion(&vp, &np)?)),
        Resolved::QuantSubject { d, n, vp, .. } => d.degree(&n, &vp, c),
        Resolved::QuantObject { np, v, d, n } => d.degree(&n, &v.image(&np)?, c),
        Resolved::DoubleQuant { d, n, v, d2, n2 } => {
            Ok(double_trace(&d, &n, &v, &d2, &n2, grid_step)?.value)
        }
        Resolved::BareTransitive { np, v, np2 } => {
            Ok(Grade::clamped(c.proportion(&v.image(&np)?, &np2)?))
        }
    }
}

/// Closes `seeds` under pairwise intersection and the images of `relations`,
/// breadth first, keeping at most [`CANDIDATE_CAP`] sets.
pub fn candidate_object(
    universe: &IndexSet,
    seeds: &[FuzzySet],
    relations: &[FuzzyRelation],
) -> Result<PowersetObject> {
    let mut seen = HashSet::new();
    let mut all: Vec<FuzzySet> = Vec::new();
    let mut frontier = Vec::new();
    for s in seeds {
        if all.len() < CANDIDATE_CAP && seen.insert(s.key()) {
            all.push(s.clone());
            frontier.push(s.clone());
        }
    }
    while !frontier.is_empty() && all.len() < CANDIDATE_CAP {
        let mut fresh = Vec::new();
        for x in &frontier {
            for y in &all {
                fresh.push(x.intersect(y)?);
            }
            for r in relations {
                fresh.push(r.image(x)?);
            }
        }
        frontier.clear();
        for c in fresh {
            if all.len() >= CANDIDATE_CAP {
                break;
            }
            if seen.insert(c.key()) {
                all.push(c.clone());
                frontier.push(c);
            }
        }
    }
    PowersetObject::from_members(universe, all)
}

struct Builder<'a> {
    obj: &'a PowersetObject,
    model: &'a Model,
    q: Quantale,
    masked: bool,
}

impl Builder<'_> {
    fn s(&self) -> &IndexSet {
        self.obj.index_set()
    }

    fn pos(&self, a: &FuzzySet) -> Result<usize> {
        self.obj
            .position(a)
            .ok_or_else(|| Error::Internal(format!("{a} is missing from the candidate object")))
    }

    /// `Proportion(a | x)`, or the Boolean test `a = x`.
    fn set_entry(&self, a: &FuzzySet, x: &FuzzySet) -> Result<Grade> {
        if self.q == Quantale::Boolean {
            return Ok(Grade::from_bool(a == x));
        }
        match self.model.counting().proportion(a, x) {
            Ok(p) => Ok(Grade::clamped(p)),
            Err(Error::ZeroDenominator(_)) => Ok(self.q.unit()),
            Err(e) => Err(e),
        }
    }

    fn state(&self, target: IndexSet, entries: Vec<(usize, Grade)>) -> VRel {
        let mut r = VRel::bottom(IndexSet::unit(), target, self.q);
        for (j, g) in entries {
            r.set(0, j, g);
        }
        r
    }

    /// `I ↛ S` with entry `A` given by [`Self::set_entry`].
    fn set_state(&self, label: &str, x: &FuzzySet, mask: bool) -> Result<Diagram> {
        let entries = if mask && self.masked {
            vec![(self.pos(x)?, self.set_entry(x, x)?)]
        } else {
            self.obj
                .members()
                .iter()
                .enumerate()
                .map(|(i, a)| Ok((i, self.set_entry(a, x)?)))
                .collect::<Result<_>>()?
        };
        Ok(Diagram::generator(
            label,
            self.state(self.s().clone(), entries),
        ))
    }

    /// `I ↛ S × S` with entry `(A, B)` measuring `B` against `v(A)`.
    fn verb_state(
        &self,
        label: &str,
        v: &FuzzyRelation,
        np: &FuzzySet,
        mask: bool,
    ) -> Result<Diagram> {
        let n = self.obj.len();
        let mut entries = Vec::new();
        if mask && self.masked {
            let img = v.image(np)?;
            entries.push((
                self.pos(np)? * n + self.pos(&img)?,
                self.set_entry(&img, &img)?,
            ));
        } else {
            for (i, a) in self.obj.members().iter().enumerate() {
                let img = v.image(a)?;
                for (j, b) in self.obj.members().iter().enumerate() {
                    entries.push((i * n + j, self.set_entry(b, &img)?));
                }
            }
        }
        let target = IndexSet::product(self.s(), self.s());
        Ok(Diagram::generator(label, self.state(target, entries)))
    }

    /// `I ↛ S × S` with entry `(B, D)` the max-min height of `v` from `B` to
    /// `D`.
    fn pair_state(
        &self,
        label: &str,
        v: &FuzzyRelation,
        b: &FuzzySet,
        d: &FuzzySet,
    ) -> Result<Diagram> {
        let n = self.obj.len();
        let entry = |x: &FuzzySet, y: &FuzzySet| -> Result<Grade> {
            Ok(self.q.from_real(v.height_between(x, y)?))
        };
        let mut entries = Vec::new();
        if self.masked {
            entries.push((self.pos(b)? * n + self.pos(d)?, entry(b, d)?));
        } else {
            for (i, x) in self.obj.members().iter().enumerate() {
                for (j, y) in self.obj.members().iter().enumerate() {
                    entries.push((i * n + j, entry(x, y)?));
                }
            }
        }
        let target = IndexSet::product(self.s(), self.s());
        Ok(Diagram::generator(label, self.state(target, entries)))
    }

    /// `ε ∘ (d ⊗ μ) ∘ (δ ⊗ id) : S × S ↛ I`, scoring `d(A, A ∩ B)`.
    fn qblock(&self, label: &str, d: &QuantifierDenotation) -> Result<Diagram> {
        let s = self.s();
        let dq = Diagram::generator(label, d.relation(self.obj, self.q, self.model.counting())?);
        let mu = Diagram::generator("mu", powbialg::mu(self.obj, self.q)?);
        let delta = Diagram::generator("delta", powbialg::delta(self.obj, self.q)?);
        Diagram::chain(vec![
            self.eps(),
            Diagram::tensor(dq, mu),
            Diagram::tensor(delta, Diagram::id(s)),
        ])
    }

    fn eps(&self) -> Diagram {
        Diagram::generator("eps", vrel::epsilon(self.s(), self.q))
    }

    fn id(&self) -> Diagram {
        Diagram::id(self.s())
    }
}

/// A compiled sentence: its `I ↛ I` diagram and the object it ranges over.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub form: SentenceForm,
    pub diagram: Diagram,
    pub object: PowersetObject,
}

impl Compiled {
    pub fn evaluate(&self, q: Quantale) -> Result<Grade> {
        self.diagram.evaluate_scalar(q)
    }
}

fn object_for(r: &Resolved, model: &Model, opts: &EvalOptions) -> Result<PowersetObject> {
    let u = model.universe();
    let obj = match opts.mode {
        Mode::Exhaustive => PowersetObject::full(u, &model.lattice())?,
        Mode::Restricted => {
            let (seeds, rels): (Vec<FuzzySet>, Vec<FuzzyRelation>) = match r {
                Resolved::BareIntransitive { np, vp } => (vec![np.clone(), vp.clone()], vec![]),
                Resolved::QuantSubject { n, vp, via, .. } => match via {
                    None => (vec![n.clone(), vp.clone()], vec![]),
                    Some((v, np)) => (
                        vec![n.clone(), vp.clone(), np.clone()],
                        vec![v.clone(), v.converse()],
                    ),
                },
                Resolved::QuantObject { np, v, n, .. } => {
                    (vec![np.clone(), n.clone()], vec![v.clone()])
                }
                Resolved::DoubleQuant { d, n, v, d2, n2 } => (
                    vec![
                        n.clone(),
                        n2.clone(),
                        scaled(d, n, opts.grid_step)?,
                        scaled(d2, n2, opts.grid_step)?,
                    ],
                    vec![v.clone()],
                ),
                Resolved::BareTransitive { np, v, np2 } => {
                    (vec![np.clone(), np2.clone()], vec![v.clone()])
                }
            };
            candidate_object(u, &seeds, &rels)?
        }
    };
    if obj.len() > GENERATOR_GUARD {
        return Err(Error::SizeGuard {
            what: "sentence object",
            size: obj.len(),
            limit: GENERATOR_GUARD,
        });
    }
    Ok(obj)
}

/// Builds the sentence's `I ↛ I` diagram.
pub fn compile_pipeline(tree: &ParseTree, model: &Model, opts: &EvalOptions) -> Result<Compiled> {
    model.validate()?;
    let r = resolve(tree, model)?;
    let object = object_for(&r, model, opts)?;
    let b = Builder {
        obj: &object,
        model,
        q: model.quantale(),
        masked: opts.mode == Mode::Restricted,
    };
    let s = b.s().clone();
    let diagram = match &r {
        Resolved::BareIntransitive { np, vp } => Diagram::compose(
            b.eps(),
            Diagram::tensor(b.set_state("np", np, false)?, b.set_state("vp", vp, false)?),
        ),
        Resolved::QuantSubject { d, n, vp, .. } => Diagram::compose(
            b.qblock("d", d)?,
            Diagram::tensor(b.set_state("np", n, true)?, b.set_state("vp", vp, true)?),
        ),
        Resolved::QuantObject { np, v, d, n } => Diagram::chain(vec![
            b.qblock("d", d)?,
            Diagram::swap(&s, &s),
            Diagram::tensor_all(vec![b.eps(), b.id(), b.id()])?,
            Diagram::tensor_all(vec![
                b.set_state("np", np, true)?,
                b.verb_state("v", v, np, true)?,
                b.set_state("np'", n, true)?,
            ])?,
        ]),
        Resolved::DoubleQuant { d, n, v, d2, n2 } => {
            let (sb, sd) = if b.masked {
                (
                    scaled(d, n, opts.grid_step)?,
                    scaled(d2, n2, opts.grid_step)?,
                )
            } else {
                (n.clone(), n2.clone())
            };
            Diagram::chain(vec![
                Diagram::tensor(b.qblock("d", d)?, b.qblock("d'", d2)?),
                Diagram::tensor_all(vec![b.id(), b.id(), Diagram::swap(&s, &s)])?,
                Diagram::tensor_all(vec![
                    b.set_state("np", n, true)?,
                    b.pair_state("v", v, &sb, &sd)?,
                    b.set_state("np'", n2, true)?,
                ])?,
            ])
        }
        Resolved::BareTransitive { np, v, np2 } => Diagram::chain(vec![
            b.eps(),
            Diagram::tensor_all(vec![b.eps(), b.id(), b.id()])?,
            Diagram::tensor_all(vec![
                b.set_state("np", np, false)?,
                b.verb_state("v", v, np, false)?,
                b.set_state("np'", np2, false)?,
            ])?,
        ]),
    }
    .map_err(|e| Error::Internal(format!("pipeline assembly: {e}")))?;
    if !diagram.is_scalar() {
        return Err(Error::Internal("pipeline is not of type I ↛ I".into()));
    }
    Ok(Compiled {
        form: tree.form(),
        diagram,
        object,
    })
}

/// Degree of truth as the single entry of the compiled morphism.
pub fn eval_categorical(tree: &ParseTree, model: &Model, opts: &EvalOptions) -> Result<Grade> {
    compile_pipeline(tree, model, opts)?.evaluate(model.quantale())
}

/// Everything [`degree_of_truth`] computed for one sentence.
#[derive(Clone, Debug)]
pub struct Report {
    pub sentence: String,
    pub tree: ParseTree,
    pub form: SentenceForm,
    pub method: Method,
    pub mode: Mode,
    pub crisp: Option<bool>,
    pub direct: Option<Grade>,
    pub categorical: Option<Grade>,
    pub pipeline: Option<String>,
    pub object_size: Option<usize>,
}

impl Report {
    /// `|direct - categorical|` when both were computed.
    pub fn difference(&self) -> Option<f64> {
        match (self.direct, self.categorical) {
            (Some(d), Some(c)) => Some((d.value() - c.value()).abs()),
            _ => None,
        }
    }
}

/// Parses, classifies and evaluates a sentence by the requested method.
pub fn degree_of_truth(
    sentence: &str,
    model: &Model,
    method: Method,
    opts: &EvalOptions,
) -> Result<Report> {
    let tree = grammar::parse_sentence(sentence, model)?;
    let mut report = Report {
        sentence: sentence.trim().to_string(),
        form: tree.form(),
        tree,
        method,
        mode: opts.mode,
        crisp: None,
        direct: None,
        categorical: None,
        pipeline: None,
        object_size: None,
    };
    if method == Method::Crisp {
        report.crisp = Some(eval_crisp_truth(&report.tree, model)?);
    }
    if matches!(method, Method::Direct | Method::Both) {
        report.direct = Some(eval_zadeh_direct(&report.tree, model, opts.grid_step)?);
    }
    if matches!(method, Method::Categorical | Method::Both) {
        let compiled = compile_pipeline(&report.tree, model, opts)?;
        report.categorical = Some(compiled.evaluate(model.quantale())?);
        report.pipeline = Some(compiled.diagram.to_string());
        report.object_size = Some(compiled.object.len());
    }
    Ok(report)
}
