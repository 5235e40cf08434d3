//! Dialogue sentiment trajectories for chaptered fiction.
//!
//! The pipeline splits a plain-text novel into chapters, pulls out the quoted
//! dialogue, cleans it into lowercase tokens with explicit negation, scores
//! each chapter against a Valence/Arousal/Dominance lexicon and renders the
//! results as SVG charts and word clouds.
//!
//! Every stage is a pure function over in-memory data, plus small helpers
//! that read and write the on-disk formats used by the `dvad` command-line
//! tool.

pub mod analytics;
pub mod corpus;
pub mod diag;
pub mod dialogue;
pub mod error;
pub mod lexicon;
pub mod preprocess;
pub mod viz;

pub use analytics::{find_extremes, frequency_table, ExtremeReport, FrequencyTable};
pub use corpus::{normalize_corpus, segment_chapters, write_chapter_files, Chapter, HeadingPattern, RawCorpus};
pub use diag::{Outcome, Warning};
pub use dialogue::{
    compile_full_dialogue, extract_utterances, write_utterances_csv, QuoteConfig, QuoteStyle, Utterance,
};
pub use error::{Error, Result};
pub use lexicon::{
    load_vad_lexicon, score_corpus, score_tokens, ChapterScore, CorpusScores, Dimension, LoadOptions, TokenScore,
    Vad, VadLexicon,
};
pub use preprocess::{load_stopwords, preprocess, StopwordSet, TokenList};
