//! Fuzzy generalized quantifiers evaluated two ways: by relative sigma-counts
//! over fuzzy sets, and as morphisms of many-valued relations built from a
//! copy/intersect bialgebra on powerset objects.

pub mod diagram;
pub mod error;
pub mod fuzzyset;
pub mod grammar;
pub mod lexicon;
pub mod model;
pub mod powbialg;
pub mod quantale;
pub mod quantifier;
pub mod semantics;
pub mod vrel;

pub use error::{Error, Result};
pub use fuzzyset::{Counting, FuzzyRelation, FuzzySet};
pub use grammar::{parse_sentence, ParseTree, SentenceForm};
pub use lexicon::Lexicon;
pub use model::Model;
pub use quantale::{Grade, Quantale};
pub use quantifier::{CrispQuantifier, FuzzyQuantifier, QuantifierDenotation};
pub use semantics::{degree_of_truth, EvalOptions, Method, Mode, Report};
pub use vrel::{IndexSet, VRel};
