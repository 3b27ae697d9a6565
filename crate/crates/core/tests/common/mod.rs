#![allow(dead_code)]

use fuzzyquant::powbialg::GradeLattice;
use fuzzyquant::{
    FuzzyQuantifier, FuzzyRelation, FuzzySet, IndexSet, Model, Quantale, QuantifierDenotation,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL
}

pub fn several() -> FuzzyQuantifier {
    FuzzyQuantifier::piecewise("several", &[(0.0, 0.0), (0.4, 1.0), (1.0, 0.0)]).unwrap()
}

pub fn most() -> FuzzyQuantifier {
    FuzzyQuantifier::piecewise("most", &[(0.0, 0.0), (0.5, 0.0), (1.0, 1.0)]).unwrap()
}

pub fn c3() -> IndexSet {
    IndexSet::new(["c1", "c2", "c3"]).unwrap()
}

pub fn eat() -> FuzzyRelation {
    FuzzyRelation::from_triples(
        &c3(),
        [
            ("c1", "c1", 0.5),
            ("c1", "c3", 0.8),
            ("c2", "c1", 0.2),
            ("c2", "c3", 0.3),
            ("c3", "c3", 0.9),
        ],
    )
    .unwrap()
}

/// cats / sleep / mice / eat / plants over c1..c3, mice and plants also
/// usable as bare noun phrases.
pub fn fixtures() -> Model {
    let u = c3();
    let set = |v: &[f64]| FuzzySet::from_values(&u, v).unwrap();
    let mice = set(&[0.7, 0.6, 0.2]);
    let plants = set(&[0.2, 0.3, 0.6]);
    Model::new(u.clone(), Quantale::Godel)
        .with_noun("cats", set(&[0.2, 0.3, 0.8]))
        .unwrap()
        .with_noun("mice", mice.clone())
        .unwrap()
        .with_noun("plants", plants.clone())
        .unwrap()
        .with_np("mice", mice)
        .unwrap()
        .with_np("plants", plants)
        .unwrap()
        .with_vp("sleep", set(&[0.5, 0.4, 0.4]))
        .unwrap()
        .with_verb("eat", eat())
        .unwrap()
        .with_quantifier("several", QuantifierDenotation::Fuzzy(several()))
        .with_quantifier("most", QuantifierDenotation::Fuzzy(most()))
}

pub const QUARTERS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

pub fn random_set(rng: &mut ChaCha8Rng, u: &IndexSet, grades: &[f64]) -> FuzzySet {
    let v: Vec<f64> = (0..u.len())
        .map(|_| grades[rng.random_range(0..grades.len())])
        .collect();
    FuzzySet::from_values(u, &v).unwrap()
}

pub fn random_relation(rng: &mut ChaCha8Rng, u: &IndexSet, grades: &[f64]) -> FuzzyRelation {
    let n = u.len();
    let mut triples = Vec::new();
    for a in 0..n {
        for b in 0..n {
            triples.push((
                u.label(a),
                u.label(b),
                grades[rng.random_range(0..grades.len())],
            ));
        }
    }
    FuzzyRelation::from_triples(
        u,
        triples.iter().map(|(a, b, g)| (a.as_str(), b.as_str(), *g)),
    )
    .unwrap()
}

/// A distribution through random grid points, peaking at 1 somewhere.
pub fn random_distribution(rng: &mut ChaCha8Rng, name: &str) -> FuzzyQuantifier {
    let inner: Vec<f64> = [0.2, 0.4, 0.6, 0.8]
        .into_iter()
        .filter(|_| rng.random_bool(0.5))
        .collect();
    let mut pts = vec![(0.0, QUARTERS[rng.random_range(0..5)])];
    pts.extend(inner.iter().map(|&p| (p, QUARTERS[rng.random_range(0..5)])));
    pts.push((1.0, QUARTERS[rng.random_range(0..5)]));
    let peak = rng.random_range(0..pts.len());
    pts[peak].1 = 1.0;
    FuzzyQuantifier::piecewise(name, &pts).unwrap()
}

/// Words: `n` (noun and noun phrase), `p` (noun phrase), `vp`, `v`, and
/// determiners `several`, `most`, `q` (random), `every`, `some`.
pub fn random_model(rng: &mut ChaCha8Rng, quantale: Quantale) -> Model {
    let size = rng.random_range(1..=4);
    let u = IndexSet::numbered("u", size);
    let n = random_set(rng, &u, &QUARTERS);
    Model::new(u.clone(), quantale)
        .with_lattice(GradeLattice::from_values(&QUARTERS).unwrap())
        .with_noun("n", n.clone())
        .unwrap()
        .with_np("n", n)
        .unwrap()
        .with_np("p", random_set(rng, &u, &QUARTERS))
        .unwrap()
        .with_vp("vp", random_set(rng, &u, &QUARTERS))
        .unwrap()
        .with_verb("v", random_relation(rng, &u, &QUARTERS))
        .unwrap()
        .with_quantifier("several", QuantifierDenotation::Fuzzy(several()))
        .with_quantifier("most", QuantifierDenotation::Fuzzy(most()))
        .with_quantifier(
            "q",
            QuantifierDenotation::Fuzzy(random_distribution(rng, "q")),
        )
        .with_quantifier(
            "every",
            QuantifierDenotation::Fuzzy(FuzzyQuantifier::every()),
        )
        .with_quantifier("some", QuantifierDenotation::Fuzzy(FuzzyQuantifier::some()))
}

pub const DETERMINERS: [&str; 5] = ["several", "most", "q", "every", "some"];

/// Quantified-subject and quantified-object sentences over [`random_model`].
pub fn equivalence_sentences() -> Vec<String> {
    let mut out = Vec::new();
    for d in DETERMINERS {
        out.push(format!("{d} n vp"));
        out.push(format!("p v {d} n"));
        out.push(format!("n v {d} n"));
    }
    out
}
