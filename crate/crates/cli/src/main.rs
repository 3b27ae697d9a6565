mod oracle;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fuzzyquant::powbialg::{check_bialgebra, check_monoid_laws, GradeLattice, PowersetObject};
use fuzzyquant::vrel::{include, snake_report, tensor_rel, CrispRel};
use fuzzyquant::{degree_of_truth, Error, EvalOptions, IndexSet, Method, Mode, Model, Quantale};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXIT_EVAL: u8 = 1;
const EXIT_FILE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "fuzzyquant",
    version,
    about = "Degrees of truth for fuzzy quantified sentences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a sentence and compute its degree of truth.
    Eval {
        lexicon: PathBuf,
        sentence: String,
        #[arg(long, default_value = "both")]
        method: Method,
        #[arg(long, default_value = "restricted")]
        mode: Mode,
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
    },
    /// Check the snake, bialgebra and (co)monoid laws on a powerset object.
    Laws {
        #[arg(long, default_value = "godel")]
        quantale: Quantale,
        #[arg(long, default_value_t = 2)]
        universe_size: usize,
        /// Grade lattice, e.g. `0,0.5,1`. Defaults to {0,1} for boolean and
        /// {0,0.5,1} otherwise.
        #[arg(long, value_delimiter = ',')]
        grades: Option<Vec<f64>>,
        /// Seed for the random crisp relations used in the inclusion checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare evaluators on random models shaped like a lexicon file.
    Oracle {
        lexicon: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "restricted")]
        mode: Mode,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval {
            lexicon,
            sentence,
            method,
            mode,
            grid_step,
        } => cmd_eval(&lexicon, &sentence, method, EvalOptions { mode, grid_step }),
        Command::Laws {
            quantale,
            universe_size,
            grades,
            seed,
        } => cmd_laws(quantale, universe_size, grades, seed),
        Command::Oracle {
            lexicon,
            trials,
            seed,
            mode,
        } => load(&lexicon).and_then(|m| oracle::run(&m, trials, seed, mode)),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<ExitCode, (u8, String)>;

fn load(path: &Path) -> Result<Model, (u8, String)> {
    match fuzzyquant::lexicon::load(path) {
        Ok(Ok(m)) => Ok(m),
        Ok(Err(e)) => Err((EXIT_FILE, format!("{}: {e}", path.display()))),
        Err(e) => Err((EXIT_FILE, format!("{}: {e}", path.display()))),
    }
}

fn grade(g: fuzzyquant::Grade) -> String {
    format!("{:.9}", g.value())
}

fn cmd_eval(path: &Path, sentence: &str, method: Method, opts: EvalOptions) -> CmdResult {
    let model = load(path)?;
    let report =
        degree_of_truth(sentence, &model, method, &opts).map_err(|e| (EXIT_EVAL, e.to_string()))?;
    println!("sentence: {}", report.sentence);
    println!("tree: {}", report.tree);
    println!("form: {}", report.form);
    println!("quantale: {}", model.quantale());
    if let Some(t) = report.crisp {
        println!("crisp: {t}");
    }
    if let Some(d) = report.direct {
        println!("direct: {}", grade(d));
    }
    if let Some(c) = report.categorical {
        println!("mode: {}", report.mode);
        println!("categorical: {}", grade(c));
    }
    if let Some(diff) = report.difference() {
        println!("diff: {diff:.9}");
    }
    if let Some(p) = &report.pipeline {
        println!("pipeline: {p}");
    }
    if let Some(n) = report.object_size {
        println!("object size: {n}");
    }
    Ok(ExitCode::SUCCESS)
}

fn guard_or_eval(e: Error) -> (u8, String) {
    match e {
        Error::SizeGuard { .. } => (EXIT_FILE, e.to_string()),
        _ => (EXIT_EVAL, e.to_string()),
    }
}

fn random_crisp(rng: &mut ChaCha8Rng, a: &IndexSet, b: &IndexSet) -> CrispRel {
    let pairs: Vec<(usize, usize)> = (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .filter(|_| rng.random_bool(0.5))
        .collect();
    CrispRel::new(a.clone(), b.clone(), pairs).expect("pairs are in range")
}

fn cmd_laws(q: Quantale, size: usize, grades: Option<Vec<f64>>, seed: u64) -> CmdResult {
    let lattice = match grades {
        Some(gs) => GradeLattice::from_values(&gs),
        None if q == Quantale::Boolean => Ok(GradeLattice::boolean()),
        None => GradeLattice::uniform(3),
    }
    .map_err(|e| (EXIT_EVAL, e.to_string()))?;
    if !lattice.fits(q) {
        return Err((
            EXIT_EVAL,
            format!("grade lattice {lattice} is not inside the {q} carrier"),
        ));
    }
    let u = IndexSet::numbered("u", size);
    let p = PowersetObject::full(&u, &lattice).map_err(guard_or_eval)?;
    println!("quantale: {q}");
    println!("universe size: {size}");
    println!("grades: {lattice}");
    println!("object size: {}", p.len());

    let snake = snake_report(p.index_set(), q).map_err(guard_or_eval)?;
    let bialgebra = check_bialgebra(&p, q).map_err(guard_or_eval)?;
    let monoid = check_monoid_laws(&p, q).map_err(guard_or_eval)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut compose_ok, mut tensor_ok) = (true, true);
    for _ in 0..20 {
        let r = random_crisp(&mut rng, &u, &u);
        let s = random_crisp(&mut rng, &u, &u);
        let composite = r.then(&s).map_err(guard_or_eval)?;
        let lhs = include(&composite, q);
        let rhs = include(&r, q)
            .then(&include(&s, q))
            .map_err(guard_or_eval)?;
        compose_ok &= lhs.same_as(&rhs);
        let prod = include(&r.product(&s), q);
        let tens = tensor_rel(&include(&r, q), &include(&s, q)).map_err(guard_or_eval)?;
        tensor_ok &= prod.same_as(&tens);
    }

    let mut laws = vec![
        ("snake (1 (x) eps) . (eta (x) 1) = 1", snake.left),
        ("snake (eps (x) 1) . (1 (x) eta) = 1", snake.right),
    ];
    laws.extend(bialgebra.laws());
    laws.extend(monoid.laws());
    laws.push(("inclusion preserves composition", compose_ok));
    laws.push(("inclusion preserves products", tensor_ok));
    let mut failed = 0;
    for (name, ok) in &laws {
        println!("{} {name}", if *ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed == 0 {
        println!("all {} laws pass", laws.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{failed} of {} laws fail", laws.len());
        Ok(ExitCode::from(EXIT_EVAL))
    }
}
