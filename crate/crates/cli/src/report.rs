//! Per-stage summaries and the run report written as `report.txt`.
//!
//! Only deterministic counts go into the report so that two identical runs
//! produce identical files. Wall times are printed to stderr instead.

use std::fmt::Write as _;
use std::time::Duration;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SplitSummary {
    pub chapters: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExtractSummary {
    pub utterances: usize,
    pub unbalanced_dropped: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CleanSummary {
    pub stopwords: usize,
    pub stopword_sources: Vec<String>,
    pub tokens_before: u64,
    pub tokens_after: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChapterMatch {
    pub chapter: u32,
    pub tokens_total: u64,
    pub tokens_matched: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreSummary {
    pub lexicon_entries: usize,
    pub skipped_phrases: usize,
    pub chapters: Vec<ChapterMatch>,
    pub overall: ChapterMatch,
}

impl ScoreSummary {
    pub fn chapters_scored(&self) -> usize {
        self.chapters.iter().filter(|c| c.tokens_matched > 0).count()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FreqSummary {
    pub distinct: usize,
    pub total: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChartSummary {
    /// Plotted points per series; `None` when nothing was scored and no chart was written.
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CloudSummary {
    pub clouds: usize,
    pub words_placed: usize,
    pub words_skipped: usize,
}

fn rate(matched: u64, total: u64) -> String {
    if total == 0 {
        "n/a".to_string()
    } else {
        format!("{:.6}", matched as f64 / total as f64)
    }
}

impl SplitSummary {
    pub fn lines(&self) -> Vec<String> {
        vec![format!("chapters: {}", self.chapters)]
    }
}

impl ExtractSummary {
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("utterances: {}", self.utterances),
            format!("unbalanced quotes dropped: {}", self.unbalanced_dropped),
        ]
    }
}

impl CleanSummary {
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("stopwords: {} ({})", self.stopwords, self.stopword_sources.join(", ")),
            format!("tokens before filtering: {}", self.tokens_before),
            format!("tokens after filtering: {}", self.tokens_after),
        ]
    }
}

impl ScoreSummary {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("lexicon entries: {}", self.lexicon_entries),
            format!("lexicon phrases skipped: {}", self.skipped_phrases),
            format!("chapters scored: {} of {}", self.chapters_scored(), self.chapters.len()),
        ];
        for c in &self.chapters {
            out.push(format!(
                "match rate chapter {}: {} ({}/{})",
                c.chapter,
                rate(c.tokens_matched, c.tokens_total),
                c.tokens_matched,
                c.tokens_total
            ));
        }
        let o = &self.overall;
        out.push(format!(
            "match rate overall: {} ({}/{})",
            rate(o.tokens_matched, o.tokens_total),
            o.tokens_matched,
            o.tokens_total
        ));
        out
    }
}

impl FreqSummary {
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("distinct tokens: {}", self.distinct),
            format!("token occurrences: {}", self.total),
        ]
    }
}

impl ChartSummary {
    pub fn lines(&self) -> Vec<String> {
        match self.points {
            Some(n) => vec![format!("trajectory points per series: {n}")],
            None => vec!["trajectory: skipped (no scored chapters)".to_string()],
        }
    }
}

impl CloudSummary {
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("word clouds: {}", self.clouds),
            format!("cloud words placed: {}", self.words_placed),
            format!("cloud words skipped: {}", self.words_skipped),
        ]
    }
}

/// Everything `all` learned about a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    pub input: String,
    pub seed: u64,
    pub split: SplitSummary,
    pub extract: ExtractSummary,
    pub clean: CleanSummary,
    pub score: ScoreSummary,
    pub freq: FreqSummary,
    pub chart: ChartSummary,
    pub cloud: CloudSummary,
    pub timings: Vec<(&'static str, Duration)>,
}

impl RunReport {
    /// The contents of `report.txt`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {}", self.input);
        let _ = writeln!(out, "seed: {}", self.seed);
        let sections: [(&str, Vec<String>); 7] = [
            ("split", self.split.lines()),
            ("extract", self.extract.lines()),
            ("clean", self.clean.lines()),
            ("score", self.score.lines()),
            ("freq", self.freq.lines()),
            ("chart", self.chart.lines()),
            ("cloud", self.cloud.lines()),
        ];
        for (name, lines) in sections {
            let _ = writeln!(out, "\n[{name}]");
            for l in lines {
                let _ = writeln!(out, "{l}");
            }
        }
        out
    }

    pub fn timing_lines(&self) -> Vec<String> {
        self.timings
            .iter()
            .map(|(stage, d)| format!("{stage}: {:.1} ms", d.as_secs_f64() * 1e3))
            .collect()
    }
}
