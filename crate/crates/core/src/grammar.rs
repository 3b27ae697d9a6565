//! Tokenizer and parser for the quantified fragment
//!
//! ```text
//! S  → NP VP
//! VP → V NP | vp
//! NP → Det N | np
//! ```
//!
//! where `vp` and `np` are lexical intransitive verbs and names.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Det,
    N,
    NP,
    V,
    VP,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Det,
        Category::N,
        Category::NP,
        Category::V,
        Category::VP,
    ];
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Det => "Det",
            Category::N => "N",
            Category::NP => "NP",
            Category::V => "V",
            Category::VP => "VP",
        })
    }
}

/// Anything that can assign grammatical categories to (lowercase) words.
pub trait Vocabulary {
    fn categories(&self, word: &str) -> BTreeSet<Category>;
}

/// Plain word lists per category.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordLists {
    words: BTreeMap<String, BTreeSet<Category>>,
}

impl WordLists {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, word: &str, cat: Category) -> &mut Self {
        self.words
            .entry(word.to_lowercase())
            .or_default()
            .insert(cat);
        self
    }

    pub fn with(mut self, cat: Category, words: &[&str]) -> Self {
        for w in words {
            self.add(w, cat);
        }
        self
    }

    pub fn words(&self) -> impl Iterator<Item = (&str, &BTreeSet<Category>)> {
        self.words.iter().map(|(w, c)| (w.as_str(), c))
    }
}

impl Vocabulary for WordLists {
    fn categories(&self, word: &str) -> BTreeSet<Category> {
        self.words.get(word).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub categories: BTreeSet<Category>,
}

impl Token {
    pub fn new(surface: impl Into<String>, categories: impl IntoIterator<Item = Category>) -> Self {
        Token {
            surface: surface.into(),
            categories: categories.into_iter().collect(),
        }
    }

    pub fn has(&self, c: Category) -> bool {
        self.categories.contains(&c)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cats: Vec<String> = self.categories.iter().map(Category::to_string).collect();
        write!(f, "{}:{}", self.surface, cats.join("/"))
    }
}

/// Whitespace split, lowercased, each word tagged with every category the
/// vocabulary gives it.
pub fn tokenize(input: &str, vocab: &impl Vocabulary) -> Result<Vec<Token>> {
    input
        .split_whitespace()
        .map(|w| {
            let w = w.to_lowercase();
            let cats = vocab.categories(&w);
            if cats.is_empty() {
                Err(Error::UnknownToken(w))
            } else {
                Ok(Token {
                    surface: w,
                    categories: cats,
                })
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NounPhrase {
    Name(String),
    Quantified { det: String, noun: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerbPhrase {
    Intransitive(String),
    Transitive { verb: String, object: NounPhrase },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseTree {
    pub subject: NounPhrase,
    pub predicate: VerbPhrase,
}

/// The shapes a parsed sentence can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SentenceForm {
    /// `np vp`
    BareIntransitive,
    /// `d n vp`
    QuantSubject,
    /// `np v d n`
    QuantObject,
    /// `d n v d' n'`
    DoubleQuant,
    /// `np v np'`
    BareTransitive,
    /// `d n v np`
    QuantSubjectBareObject,
}

impl SentenceForm {
    pub const ALL: [SentenceForm; 6] = [
        SentenceForm::BareIntransitive,
        SentenceForm::QuantSubject,
        SentenceForm::QuantObject,
        SentenceForm::DoubleQuant,
        SentenceForm::BareTransitive,
        SentenceForm::QuantSubjectBareObject,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SentenceForm::BareIntransitive => "BareIntransitive",
            SentenceForm::QuantSubject => "QuantSubject",
            SentenceForm::QuantObject => "QuantObject",
            SentenceForm::DoubleQuant => "DoubleQuant",
            SentenceForm::BareTransitive => "BareTransitive",
            SentenceForm::QuantSubjectBareObject => "QuantSubjectBareObject",
        }
    }
}

impl fmt::Display for SentenceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl NounPhrase {
    fn leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            NounPhrase::Name(n) => out.push(n),
            NounPhrase::Quantified { det, noun } => {
                out.push(det);
                out.push(noun);
            }
        }
    }

    pub fn is_quantified(&self) -> bool {
        matches!(self, NounPhrase::Quantified { .. })
    }
}

impl ParseTree {
    /// Leaves in sentence order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.subject.leaves(&mut out);
        match &self.predicate {
            VerbPhrase::Intransitive(v) => out.push(v),
            VerbPhrase::Transitive { verb, object } => {
                out.push(verb);
                object.leaves(&mut out);
            }
        }
        out
    }

    pub fn form(&self) -> SentenceForm {
        classify(self)
    }
}

pub fn classify(tree: &ParseTree) -> SentenceForm {
    let q = tree.subject.is_quantified();
    match &tree.predicate {
        VerbPhrase::Intransitive(_) if q => SentenceForm::QuantSubject,
        VerbPhrase::Intransitive(_) => SentenceForm::BareIntransitive,
        VerbPhrase::Transitive { object, .. } => match (q, object.is_quantified()) {
            (false, false) => SentenceForm::BareTransitive,
            (false, true) => SentenceForm::QuantObject,
            (true, false) => SentenceForm::QuantSubjectBareObject,
            (true, true) => SentenceForm::DoubleQuant,
        },
    }
}

impl fmt::Display for NounPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NounPhrase::Name(n) => write!(f, "NP({n})"),
            NounPhrase::Quantified { det, noun } => write!(f, "NP(Det({det}), N({noun}))"),
        }
    }
}

impl fmt::Display for VerbPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerbPhrase::Intransitive(v) => write!(f, "VP({v})"),
            VerbPhrase::Transitive { verb, object } => write!(f, "VP(V({verb}), {object})"),
        }
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({}, {})", self.subject, self.predicate)
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    furthest: usize,
}

impl Parser<'_> {
    fn is(&mut self, pos: usize, c: Category) -> bool {
        let ok = self.tokens.get(pos).is_some_and(|t| t.has(c));
        if !ok {
            self.furthest = self.furthest.max(pos);
        }
        ok
    }

    fn word(&self, pos: usize) -> String {
        self.tokens[pos].surface.clone()
    }

    fn np(&mut self, pos: usize) -> Vec<(NounPhrase, usize)> {
        let mut out = Vec::new();
        if self.is(pos, Category::NP) {
            out.push((NounPhrase::Name(self.word(pos)), pos + 1));
        }
        if self.is(pos, Category::Det) && self.is(pos + 1, Category::N) {
            out.push((
                NounPhrase::Quantified {
                    det: self.word(pos),
                    noun: self.word(pos + 1),
                },
                pos + 2,
            ));
        }
        out
    }

    fn vp(&mut self, pos: usize) -> Vec<(VerbPhrase, usize)> {
        let mut out = Vec::new();
        if self.is(pos, Category::VP) {
            out.push((VerbPhrase::Intransitive(self.word(pos)), pos + 1));
        }
        if self.is(pos, Category::V) {
            for (object, end) in self.np(pos + 1) {
                out.push((
                    VerbPhrase::Transitive {
                        verb: self.word(pos),
                        object,
                    },
                    end,
                ));
            }
        }
        out
    }

    fn sentences(&mut self) -> Vec<ParseTree> {
        let mut out = Vec::new();
        for (subject, mid) in self.np(0) {
            for (predicate, end) in self.vp(mid) {
                if end == self.tokens.len() {
                    out.push(ParseTree {
                        subject: subject.clone(),
                        predicate,
                    });
                } else {
                    self.furthest = self.furthest.max(end);
                }
            }
        }
        out
    }
}

/// Every derivation of `S` over the token sequence.
pub fn parse_all(tokens: &[Token]) -> Vec<ParseTree> {
    Parser {
        tokens,
        furthest: 0,
    }
    .sentences()
}

/// The unique derivation of `S`.
pub fn parse(tokens: &[Token]) -> Result<ParseTree> {
    let mut p = Parser {
        tokens,
        furthest: 0,
    };
    let mut trees = p.sentences();
    match trees.len() {
        0 => Err(Error::NoParse {
            position: p.furthest,
            found: tokens.get(p.furthest).map(|t| t.surface.clone()),
        }),
        1 => Ok(trees.remove(0)),
        n => Err(Error::AmbiguousParse(n)),
    }
}

/// Tokenizes and parses in one step.
pub fn parse_sentence(input: &str, vocab: &impl Vocabulary) -> Result<ParseTree> {
    parse(&tokenize(input, vocab)?)
}
