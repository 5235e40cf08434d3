//! Text cleaning: normalization, tokenization, contraction handling,
//! punctuation removal and stopword filtering.
//!
//! The stages are exposed individually so callers can inspect intermediate
//! output; [`preprocess`] runs all five in order.

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// The negation marker emitted for `n't` forms. It survives stopword removal.
pub const NEGATION: &str = "not";

/// Where a token list came from: (chapter index, utterance seq).
pub type Origin = (u32, u32);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenList {
    pub tokens: Vec<String>,
    pub origin: Option<Origin>,
}

impl TokenList {
    pub fn new(tokens: Vec<String>) -> Self {
        TokenList { tokens, origin: None }
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn joined(&self) -> String {
        self.tokens.join(" ")
    }

    fn map_tokens(self, f: impl FnOnce(Vec<String>) -> Vec<String>) -> Self {
        TokenList {
            tokens: f(self.tokens),
            origin: self.origin,
        }
    }
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Lowercases and collapses whitespace runs to single spaces.
pub fn normalize_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

/// Splits into maximal runs of letters and digits. An apostrophe stays in a
/// token only when it has a letter or digit on both sides.
pub fn tokenize(text: &str) -> TokenList {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let keep = c.is_alphanumeric()
            || (is_apostrophe(c)
                && !current.is_empty()
                && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric()));
        if keep {
            current.push(c);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    TokenList::new(tokens)
}

const NEGATED_SUFFIXES: [&str; 2] = ["n't", "n\u{2019}t"];
const CLITIC_SUFFIXES: [&str; 6] = ["s", "re", "ve", "ll", "d", "m"];

/// Rewrites one token. Returns the replacement tokens.
fn expand_one(token: &str) -> Vec<String> {
    if token == "cannot" {
        return vec!["can".into(), NEGATION.into()];
    }
    if let Some(stem) = NEGATED_SUFFIXES.iter().find_map(|s| token.strip_suffix(s)) {
        let base = match stem {
            "wo" => "will",
            "ca" => "can",
            "sha" => "shall",
            "ai" | "" => return vec![NEGATION.into()],
            other => other,
        };
        return vec![base.into(), NEGATION.into()];
    }
    if let Some(pos) = token.rfind(is_apostrophe) {
        let suffix = &token[pos..].trim_start_matches(is_apostrophe);
        if CLITIC_SUFFIXES.contains(suffix) {
            return vec![token[..pos].to_string()];
        }
    }
    vec![token.to_string()]
}

/// Makes negation explicit (`don't` → `do not`, `won't` → `will not`,
/// `ain't` → `not`) and drops the `'s 're 've 'll 'd 'm` clitics.
pub fn expand_contractions(tokens: TokenList) -> TokenList {
    tokens.map_tokens(|toks| toks.iter().flat_map(|t| expand_one(t)).collect())
}

/// Removes every character that is not a letter or digit; empty tokens are dropped.
pub fn strip_punctuation(tokens: TokenList) -> TokenList {
    tokens.map_tokens(|toks| {
        toks.into_iter()
            .map(|t| t.chars().filter(|c| c.is_alphanumeric()).collect::<String>())
            .filter(|t| !t.is_empty())
            .collect()
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordSet {
    words: HashSet<String>,
    pub sources: Vec<String>,
}

impl StopwordSet {
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopwordSet {
            words: words.into_iter().map(|w| w.as_ref().trim().to_lowercase()).collect(),
            sources: Vec::new(),
        }
    }

    /// Adds the words of a stopword file's contents: one per line, `#` starts a comment line.
    pub fn extend_from_str(&mut self, contents: &str) {
        for line in contents.lines() {
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            self.words.insert(word.to_lowercase());
        }
    }

    pub fn add_source(&mut self, label: impl Into<String>, contents: &str) {
        self.extend_from_str(contents);
        self.sources.push(label.into());
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Sorted word list, for reports and tests.
    pub fn words(&self) -> BTreeSet<&str> {
        self.words.iter().map(String::as_str).collect()
    }
}

/// Loads and merges stopword files. Any missing file is fatal.
pub fn load_stopwords<P: AsRef<Path>>(paths: &[P]) -> Result<StopwordSet> {
    let mut set = StopwordSet::default();
    for path in paths {
        let path = path.as_ref();
        let contents = fs::read_to_string(path).map_err(|e| Error::io(PathBuf::from(path), e))?;
        set.add_source(path.display().to_string(), &contents);
    }
    Ok(set)
}

/// Drops stopwords, except the negation marker which is always kept.
pub fn remove_stopwords(tokens: TokenList, stops: &StopwordSet) -> TokenList {
    tokens.map_tokens(|toks| {
        toks.into_iter()
            .filter(|t| t == NEGATION || !stops.contains(t))
            .collect()
    })
}

/// Stage-by-stage output of [`preprocess`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub normalized: String,
    pub tokenized: TokenList,
    pub expanded: TokenList,
    pub stripped: TokenList,
    pub filtered: TokenList,
}

pub fn trace(text: &str, stops: &StopwordSet) -> Trace {
    let normalized = normalize_text(text);
    let tokenized = tokenize(&normalized);
    let expanded = expand_contractions(tokenized.clone());
    let stripped = strip_punctuation(expanded.clone());
    let filtered = remove_stopwords(stripped.clone(), stops);
    Trace {
        normalized,
        tokenized,
        expanded,
        stripped,
        filtered,
    }
}

/// normalize → tokenize → expand contractions → strip punctuation → remove stopwords.
pub fn preprocess(text: &str, stops: &StopwordSet) -> TokenList {
    let tokens = tokenize(&normalize_text(text));
    remove_stopwords(strip_punctuation(expand_contractions(tokens)), stops)
}
