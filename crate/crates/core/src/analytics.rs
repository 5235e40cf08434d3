//! Word frequencies and emotional peak/trough chapters.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lexicon::{ChapterScore, Dimension};

pub const DEFAULT_EXTREMES_K: usize = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: HashMap<String, u64>,
    total: u64,
}

impl FrequencyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add<S: AsRef<str>>(&mut self, tokens: &[S]) {
        for t in tokens {
            *self.counts.entry(t.as_ref().to_string()).or_insert(0) += 1;
            self.total += 1;
        }
    }

    pub fn add_count(&mut self, token: &str, count: u64) {
        if count > 0 {
            *self.counts.entry(token.to_string()).or_insert(0) += count;
            self.total += count;
        }
    }

    pub fn merge(&mut self, other: &FrequencyTable) {
        for (token, &n) in &other.counts {
            self.add_count(token, n);
        }
    }

    pub fn get(&self, token: &str) -> u64 {
        self.counts.get(token).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct tokens.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// All entries, most frequent first; equal counts in ascending token order.
    pub fn sorted(&self) -> Vec<(String, u64)> {
        let mut v: Vec<(String, u64)> = self.counts.iter().map(|(t, &n)| (t.clone(), n)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        v
    }

    pub fn top_n(&self, n: usize) -> Vec<(String, u64)> {
        let mut v = self.sorted();
        v.truncate(n);
        v
    }
}

pub fn frequency_table<S: AsRef<str>>(token_lists: &[Vec<S>]) -> FrequencyTable {
    let mut table = FrequencyTable::new();
    for list in token_lists {
        table.add(list);
    }
    table
}

/// Renders `freq.csv`: `token,count`, most frequent first.
pub fn freq_csv(table: &FrequencyTable) -> String {
    let mut out = String::from("token,count\n");
    for (token, n) in table.sorted() {
        let _ = writeln!(out, "{token},{n}");
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeReport {
    pub dimension: Dimension,
    /// Highest first.
    pub top: Vec<(u32, f64)>,
    /// Lowest first.
    pub bottom: Vec<(u32, f64)>,
}

/// Top-k and bottom-k chapters by mean score. Ties go to the lower chapter
/// index; chapters without a score are left out.
pub fn find_extremes(scores: &[ChapterScore], dimension: Dimension, k: usize) -> Result<ExtremeReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".to_string()));
    }
    let mut scored: Vec<(u32, f64)> = scores
        .iter()
        .filter_map(|s| s.value(dimension).map(|v| (s.chapter_index, v)))
        .collect();
    if scored.is_empty() {
        return Err(Error::NoScoredChapters);
    }

    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let top = scored.iter().take(k).copied().collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    let bottom = scored.iter().take(k).copied().collect();
    Ok(ExtremeReport { dimension, top, bottom })
}

/// Plain-text report for `extremes.txt`.
pub fn extremes_report(reports: &[ExtremeReport]) -> String {
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let name = r.dimension.name();
        let mut title = name.to_string();
        title[..1].make_ascii_uppercase();
        let _ = writeln!(out, "{title}");
        let _ = writeln!(out, "  high {name}:");
        for (ch, v) in &r.top {
            let _ = writeln!(out, "    chapter {ch}: {v:.6}");
        }
        let _ = writeln!(out, "  low {name}:");
        for (ch, v) in &r.bottom {
            let _ = writeln!(out, "    chapter {ch}: {v:.6}");
        }
    }
    out
}
