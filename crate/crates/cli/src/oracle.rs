use std::collections::BTreeMap;
use std::process::ExitCode;

use fuzzyquant::fuzzyset::FuzzyRelation;
use fuzzyquant::grammar;
use fuzzyquant::lexicon::Lexicon;
use fuzzyquant::semantics::{eval_categorical, eval_crisp_truth, eval_zadeh_direct};
use fuzzyquant::{Error, EvalOptions, FuzzySet, Grade, Mode, Model, Quantale};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{CmdResult, EXIT_EVAL};

const TOLERANCE: f64 = 1e-9;

fn pick(rng: &mut ChaCha8Rng, grades: &[Grade]) -> f64 {
    grades[rng.random_range(0..grades.len())].value()
}

/// Same words, quantifiers, lattice and counting as the template; fresh
/// grades for every set and relation.
fn random_model(template: &Model, rng: &mut ChaCha8Rng) -> Model {
    let u = template.universe().clone();
    let lattice = template.lattice();
    let grades = lattice.grades();
    let set = |rng: &mut ChaCha8Rng| {
        let v: Vec<f64> = (0..u.len()).map(|_| pick(rng, grades)).collect();
        FuzzySet::from_values(&u, &v).expect("lattice grades are valid")
    };
    let mut m = Model::new(u.clone(), template.quantale())
        .with_lattice(lattice.clone())
        .with_counting(*template.counting());
    for name in template.nouns().keys() {
        m = m.with_noun(name, set(rng)).expect("same universe");
    }
    for name in template.nps().keys() {
        m = m.with_np(name, set(rng)).expect("same universe");
    }
    for name in template.vps().keys() {
        m = m.with_vp(name, set(rng)).expect("same universe");
    }
    for name in template.verbs().keys() {
        let n = u.len();
        let entries: Vec<Grade> = (0..n * n)
            .map(|_| Grade::new(pick(rng, grades)).expect("lattice grades are valid"))
            .collect();
        let rel = FuzzyRelation::new(u.clone(), entries).expect("square relation");
        m = m.with_verb(name, rel).expect("same universe");
    }
    for (name, q) in template.quantifiers() {
        m = m.with_quantifier(name, q.clone());
    }
    m
}

/// `d n vp` and `np v d n` for every combination of words in the template.
fn sentences(m: &Model) -> Vec<String> {
    let mut out = Vec::new();
    for d in m.quantifiers().keys() {
        for n in m.nouns().keys() {
            for vp in m.vps().keys() {
                out.push(format!("{d} {n} {vp}"));
            }
            for np in m.nps().keys() {
                for v in m.verbs().keys() {
                    out.push(format!("{np} {v} {d} {n}"));
                }
            }
        }
    }
    out
}

struct Worst {
    deviation: f64,
    sentence: String,
    reference: String,
    categorical: Grade,
    model: Model,
}

fn skip_reason(e: &Error) -> Option<&'static str> {
    match e {
        Error::ZeroDenominator(_) => Some("zero restrictor"),
        Error::WrongEvaluator(_) => Some("no crisp reading"),
        Error::SizeGuard { .. } => Some("size guard"),
        Error::AmbiguousParse(_) | Error::NoParse { .. } => Some("no unique parse"),
        _ => None,
    }
}

pub fn run(template: &Model, trials: usize, seed: u64, mode: Mode) -> CmdResult {
    let boolean = template.quantale() == Quantale::Boolean;
    let opts = EvalOptions {
        mode,
        ..Default::default()
    };
    let sentences = sentences(template);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut compared = 0usize;
    let mut skipped: BTreeMap<&str, usize> = BTreeMap::new();
    let mut worst: Option<Worst> = None;

    for _ in 0..trials {
        let m = random_model(template, &mut rng);
        for s in &sentences {
            let outcome = grammar::parse_sentence(s, &m).and_then(|t| {
                let reference = if boolean {
                    Grade::from_bool(eval_crisp_truth(&t, &m)?)
                } else {
                    eval_zadeh_direct(&t, &m, opts.grid_step)?
                };
                Ok((reference, eval_categorical(&t, &m, &opts)?))
            });
            let (reference, categorical) = match outcome {
                Ok(pair) => pair,
                Err(e) => match skip_reason(&e) {
                    Some(why) => {
                        *skipped.entry(why).or_default() += 1;
                        continue;
                    }
                    None => return Err((EXIT_EVAL, format!("`{s}`: {e}"))),
                },
            };
            compared += 1;
            let deviation = (reference.value() - categorical.value()).abs();
            if worst.as_ref().is_none_or(|w| deviation > w.deviation) {
                worst = Some(Worst {
                    deviation,
                    sentence: s.clone(),
                    reference: if boolean {
                        (reference == Grade::ONE).to_string()
                    } else {
                        format!("{:.9}", reference.value())
                    },
                    categorical,
                    model: m.clone(),
                });
            }
        }
    }

    let against = if boolean { "crisp" } else { "direct" };
    println!("trials: {trials}");
    println!("seed: {seed}");
    println!("mode: {mode}");
    println!("comparison: {against} vs categorical");
    println!("sentences per model: {}", sentences.len());
    println!("compared: {compared}");
    for (why, n) in &skipped {
        println!("skipped ({why}): {n}");
    }
    let max = worst.as_ref().map_or(0.0, |w| w.deviation);
    println!("max deviation: {max:.9}");
    if let Some(w) = worst.as_ref().filter(|w| w.deviation > TOLERANCE) {
        println!("counterexample: {}", w.sentence);
        println!("  {against}: {}", w.reference);
        println!("  categorical: {:.9}", w.categorical.value());
        println!("{}", Lexicon::from_model(&w.model).to_json());
    }
    if mode == Mode::Exhaustive {
        println!("exhaustive mode is diagnostic; exit status is not gated");
        return Ok(ExitCode::SUCCESS);
    }
    if max <= TOLERANCE {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_EVAL))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fuzzyquant::quantifier::{CrispQuantifier, QuantifierDenotation};
    use fuzzyquant::IndexSet;

    fn template() -> Model {
        let u = IndexSet::numbered("u", 2);
        Model::new(u.clone(), Quantale::Boolean)
            .with_noun("dogs", FuzzySet::full(&u))
            .unwrap()
            .with_np("rex", FuzzySet::crisp(&u, [0]))
            .unwrap()
            .with_vp("bark", FuzzySet::empty(&u))
            .unwrap()
            .with_verb("chase", FuzzyRelation::empty(&u))
            .unwrap()
            .with_quantifier("some", QuantifierDenotation::Crisp(CrispQuantifier::Some))
    }

    #[test]
    fn random_models_keep_the_shape() {
        let t = template();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_model(&t, &mut rng);
        assert_eq!(m.universe(), t.universe());
        assert!(m.is_crisp());
        assert!(m.validate().is_ok());
        assert_eq!(m.quantifiers(), t.quantifiers());
    }

    #[test]
    fn sentence_shapes() {
        assert_eq!(
            sentences(&template()),
            ["some dogs bark", "rex chase some dogs"]
        );
    }
}
