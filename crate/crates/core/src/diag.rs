//! Non-fatal diagnostics collected while processing.
//!
//! Operations that can degrade gracefully return their result together with
//! the warnings they produced instead of printing anything themselves. The
//! caller decides where the warnings go (the CLI sends them to stderr).

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Chapter numbers were duplicated or out of order; indices were reassigned 1..n.
    ChapterNumbering { found: Vec<u32> },
    /// An opening quote had no matching closer within its paragraph.
    UnbalancedQuote { chapter: u32, offset: usize },
    /// The lexicon listed the same term more than once; the last row won.
    DuplicateTerm { line: usize, term: String },
    /// A word-cloud entry could not be placed within the spiral bound.
    WordNotPlaced { token: String },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ChapterNumbering { found } => write!(
                f,
                "chapter numbers are duplicated or out of order ({found:?}); reassigned sequentially"
            ),
            Warning::UnbalancedQuote { chapter, offset } => write!(
                f,
                "chapter {chapter}: unbalanced opening quote at byte {offset} dropped"
            ),
            Warning::DuplicateTerm { line, term } => {
                write!(f, "lexicon line {line}: duplicate term {term:?}, keeping last")
            }
            Warning::WordNotPlaced { token } => {
                write!(f, "word cloud: no room for {token:?}, skipped")
            }
        }
    }
}

/// A value plus the warnings produced while computing it.
#[derive(Debug, Clone)]
pub struct Outcome<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

impl<T> Outcome<T> {
    pub fn new(value: T, warnings: Vec<Warning>) -> Self {
        Outcome { value, warnings }
    }

    pub fn into_parts(self) -> (T, Vec<Warning>) {
        (self.value, self.warnings)
    }
}
