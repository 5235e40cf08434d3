//! NRC-VAD style lexicons and occurrence-weighted chapter scores.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::diag::{Outcome, Warning};
use crate::error::{Error, Result};

pub const SCORES_HEADER: &str = "chapter,valence,arousal,dominance,tokens_total,tokens_matched";

/// Valence, arousal and dominance, each in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vad {
    pub valence: f64,
    pub arousal: f64,
    pub dominance: f64,
}

impl Vad {
    pub const fn new(valence: f64, arousal: f64, dominance: f64) -> Self {
        Vad {
            valence,
            arousal,
            dominance,
        }
    }

    pub fn get(&self, dim: Dimension) -> f64 {
        match dim {
            Dimension::Valence => self.valence,
            Dimension::Arousal => self.arousal,
            Dimension::Dominance => self.dominance,
        }
    }

    fn from_array(a: [f64; 3]) -> Self {
        Vad::new(a[0], a[1], a[2])
    }

    fn to_array(self) -> [f64; 3] {
        [self.valence, self.arousal, self.dominance]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Valence,
    Arousal,
    Dominance,
}

impl Dimension {
    pub const ALL: [Dimension; 3] = [Dimension::Valence, Dimension::Arousal, Dimension::Dominance];

    pub fn name(self) -> &'static str {
        match self {
            Dimension::Valence => "valence",
            Dimension::Arousal => "arousal",
            Dimension::Dominance => "dominance",
        }
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Dimension::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown dimension {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Accept scores in [-1, 1] and map them to [0, 1] with (x + 1) / 2.
    pub rescale: bool,
}

/// Single-word entries of a VAD lexicon, keyed by lowercase term.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VadLexicon {
    entries: HashMap<String, Vad>,
    /// Multi-word entries that were not loaded.
    pub skipped_phrases: usize,
    pub source_name: String,
}

impl VadLexicon {
    pub fn from_entries<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, Vad)>,
        S: Into<String>,
    {
        VadLexicon {
            entries: entries.into_iter().map(|(t, v)| (t.into(), v)).collect(),
            skipped_phrases: 0,
            source_name: String::new(),
        }
    }

    /// Exact match; the token is expected to be lowercase already.
    pub fn lookup(&self, token: &str) -> Option<Vad> {
        self.entries.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn rescale_score(x: f64) -> f64 {
    (x + 1.0) / 2.0
}

/// Parses tab-separated `term, valence, arousal, dominance` rows.
///
/// The first row is treated as a header when its score columns are not
/// numbers. Extra columns are ignored.
pub fn parse_vad_lexicon(contents: &str, source_name: &str, opts: LoadOptions) -> Result<Outcome<VadLexicon>> {
    let mut lex = VadLexicon {
        source_name: source_name.to_string(),
        ..VadLexicon::default()
    };
    let mut first_line_of_term: HashMap<String, usize> = HashMap::new();
    let mut warnings = Vec::new();
    let mut first_row = true;

    for (i, line) in contents.lines().enumerate() {
        let line_no = i + 1;
        let line = line.strip_prefix('\u{FEFF}').unwrap_or(line);
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 4 {
            return Err(Error::LexiconParse {
                line: line_no,
                message: format!("expected 4 tab-separated columns, found {}", fields.len()),
            });
        }
        let parsed: Vec<Option<f64>> = fields[1..4].iter().map(|f| f.trim().parse::<f64>().ok()).collect();
        let is_header = first_row && parsed.iter().any(Option::is_none);
        first_row = false;
        if is_header {
            continue;
        }

        let term = fields[0].trim().to_lowercase();
        if term.is_empty() {
            return Err(Error::LexiconParse {
                line: line_no,
                message: "empty term".to_string(),
            });
        }
        let mut scores = [0.0; 3];
        for (k, p) in parsed.iter().enumerate() {
            let raw = p.ok_or_else(|| Error::LexiconParse {
                line: line_no,
                message: format!("score {:?} is not a number", fields[k + 1].trim()),
            })?;
            let (lo, value) = if opts.rescale { (-1.0, rescale_score(raw)) } else { (0.0, raw) };
            if !(lo..=1.0).contains(&raw) {
                return Err(Error::ScoreOutOfRange {
                    line: line_no,
                    term: term.clone(),
                    value: raw,
                });
            }
            scores[k] = value;
        }

        if term.chars().any(char::is_whitespace) {
            lex.skipped_phrases += 1;
            continue;
        }
        if first_line_of_term.insert(term.clone(), line_no).is_some() {
            warnings.push(Warning::DuplicateTerm {
                line: line_no,
                term: term.clone(),
            });
        }
        lex.entries.insert(term, Vad::from_array(scores));
    }
    Ok(Outcome::new(lex, warnings))
}

pub fn load_vad_lexicon(path: &Path, opts: LoadOptions) -> Result<Outcome<VadLexicon>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let contents = String::from_utf8(bytes).map_err(|e| Error::InvalidEncoding {
        offset: e.utf8_error().valid_up_to(),
    })?;
    parse_vad_lexicon(&contents, &path.display().to_string(), opts)
}

/// Mean VAD over the matched occurrences of a token collection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TokenScore {
    pub means: Option<Vad>,
    pub tokens_total: u64,
    pub tokens_matched: u64,
}

impl TokenScore {
    pub fn match_rate(&self) -> Option<f64> {
        (self.tokens_total > 0).then(|| self.tokens_matched as f64 / self.tokens_total as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChapterScore {
    pub chapter_index: u32,
    pub means: Option<Vad>,
    pub tokens_total: u64,
    pub tokens_matched: u64,
}

impl ChapterScore {
    pub fn new(chapter_index: u32, score: TokenScore) -> Self {
        ChapterScore {
            chapter_index,
            means: score.means,
            tokens_total: score.tokens_total,
            tokens_matched: score.tokens_matched,
        }
    }

    pub fn value(&self, dim: Dimension) -> Option<f64> {
        self.means.map(|m| m.get(dim))
    }
}

/// Occurrence counts of matched terms. Means are computed from the counts in
/// term order, so the result does not depend on token order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScoreTally {
    matched: BTreeMap<String, u64>,
    total: u64,
}

impl ScoreTally {
    pub fn add<S: AsRef<str>>(&mut self, tokens: &[S], lexicon: &VadLexicon) {
        for t in tokens {
            let t = t.as_ref();
            self.total += 1;
            if lexicon.lookup(t).is_some() {
                *self.matched.entry(t.to_string()).or_insert(0) += 1;
            }
        }
    }

    pub fn merge(&mut self, other: &ScoreTally) {
        self.total += other.total;
        for (term, n) in &other.matched {
            *self.matched.entry(term.clone()).or_insert(0) += n;
        }
    }

    pub fn finish(&self, lexicon: &VadLexicon) -> TokenScore {
        let mut sums = [0.0f64; 3];
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        let mut matched = 0u64;
        for (term, &n) in &self.matched {
            let v = lexicon
                .lookup(term)
                .expect("tally only holds terms found in this lexicon")
                .to_array();
            matched += n;
            for k in 0..3 {
                sums[k] += n as f64 * v[k];
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        let means = (matched > 0).then(|| {
            // rounding can push a mean a hair past its bounds
            Vad::from_array(std::array::from_fn(|k| (sums[k] / matched as f64).clamp(lo[k], hi[k])))
        });
        TokenScore {
            means,
            tokens_total: self.total,
            tokens_matched: matched,
        }
    }
}

pub fn score_tokens<S: AsRef<str>>(tokens: &[S], lexicon: &VadLexicon) -> TokenScore {
    let mut tally = ScoreTally::default();
    tally.add(tokens, lexicon);
    tally.finish(lexicon)
}

/// Per-chapter scores plus the pooled score over every token.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusScores {
    pub chapters: Vec<ChapterScore>,
    pub overall: TokenScore,
}

/// Scores each chapter's token lists. The overall row pools all tokens; it is
/// not a mean of chapter means.
pub fn score_corpus<S: AsRef<str>>(per_chapter: &[(u32, Vec<Vec<S>>)], lexicon: &VadLexicon) -> CorpusScores {
    let mut pooled = ScoreTally::default();
    let chapters = per_chapter
        .iter()
        .map(|(index, lists)| {
            let mut tally = ScoreTally::default();
            for list in lists {
                tally.add(list, lexicon);
            }
            pooled.merge(&tally);
            ChapterScore::new(*index, tally.finish(lexicon))
        })
        .collect();
    CorpusScores {
        chapters,
        overall: pooled.finish(lexicon),
    }
}

fn score_row(out: &mut String, label: &str, means: Option<Vad>, total: u64, matched: u64) {
    match means {
        Some(m) => {
            let _ = writeln!(
                out,
                "{label},{:.6},{:.6},{:.6},{total},{matched}",
                m.valence, m.arousal, m.dominance
            );
        }
        None => {
            let _ = writeln!(out, "{label},,,,{total},{matched}");
        }
    }
}

/// Renders `scores.csv`. Absent means are empty fields; the last row is `all`.
pub fn scores_csv(scores: &CorpusScores) -> String {
    let mut out = String::new();
    out.push_str(SCORES_HEADER);
    out.push('\n');
    for s in &scores.chapters {
        score_row(&mut out, &s.chapter_index.to_string(), s.means, s.tokens_total, s.tokens_matched);
    }
    let o = &scores.overall;
    score_row(&mut out, "all", o.means, o.tokens_total, o.tokens_matched);
    out
}

/// Parses the output of [`scores_csv`].
pub fn parse_scores_csv(contents: &str, path: &Path) -> Result<CorpusScores> {
    let malformed = |line: usize, message: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line: line as u64,
        message,
    };
    let mut lines = contents.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == SCORES_HEADER => {}
        _ => return Err(malformed(1, format!("expected header {SCORES_HEADER}"))),
    }

    let mut chapters = Vec::new();
    let mut overall = None;
    for (i, line) in lines {
        let line_no = i + 1;
        if overall.is_some() {
            return Err(malformed(line_no, "row after the `all` row".to_string()));
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(malformed(line_no, format!("expected 6 fields, found {}", f.len())));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| malformed(line_no, format!("bad count {s:?}")));
        let (total, matched) = (num(f[4])?, num(f[5])?);
        let means = if f[1..4].iter().all(|s| s.is_empty()) {
            None
        } else {
            let mut v = [0.0; 3];
            for k in 0..3 {
                v[k] = f[k + 1]
                    .parse()
                    .map_err(|_| malformed(line_no, format!("bad score {:?}", f[k + 1])))?;
            }
            Some(Vad::from_array(v))
        };
        let score = TokenScore {
            means,
            tokens_total: total,
            tokens_matched: matched,
        };
        if f[0] == "all" {
            overall = Some(score);
        } else {
            let index = f[0]
                .parse()
                .map_err(|_| malformed(line_no, format!("bad chapter {:?}", f[0])))?;
            chapters.push(ChapterScore::new(index, score));
        }
    }
    let overall = overall.ok_or_else(|| malformed(contents.lines().count(), "missing `all` row".to_string()))?;
    Ok(CorpusScores { chapters, overall })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = "term\tvalence\tarousal\tdominance\n\
        joy\t0.95\t0.60\t0.55\n\
        dark\t0.18\t0.47\t0.33\n\
        out of sorts\t0.20\t0.40\t0.30\n";

    fn lex() -> VadLexicon {
        parse_vad_lexicon(FIXTURE, "fixture", LoadOptions::default()).unwrap().value
    }

    #[test]
    fn loads_entries_and_skips_phrases() {
        let l = lex();
        assert_eq!(l.len(), 2);
        assert_eq!(l.skipped_phrases, 1);
        assert_eq!(l.lookup("joy"), Some(Vad::new(0.95, 0.60, 0.55)));
        assert_eq!(l.lookup("zzzq"), None);
        assert_eq!(l.lookup("Joy"), None);
    }

    #[test]
    fn header_is_optional() {
        let body = "joy\t0.95\t0.60\t0.55\n";
        assert_eq!(parse_vad_lexicon(body, "x", LoadOptions::default()).unwrap().value.len(), 1);
    }

    #[test]
    fn uppercase_terms_are_folded() {
        let l = parse_vad_lexicon("Joy\t1\t1\t1\n", "x", LoadOptions::default()).unwrap().value;
        assert!(l.lookup("joy").is_some());
    }

    #[test]
    fn duplicates_keep_last_with_warning() {
        let out = parse_vad_lexicon("a\t0.1\t0.1\t0.1\na\t0.2\t0.2\t0.2\n", "x", LoadOptions::default()).unwrap();
        assert_eq!(out.value.lookup("a"), Some(Vad::new(0.2, 0.2, 0.2)));
        assert_eq!(
            out.warnings,
            vec![Warning::DuplicateTerm {
                line: 2,
                term: "a".into()
            }]
        );
    }

    #[test]
    fn out_of_range_is_fatal_unless_rescaled() {
        let body = "neg\t-1\t0\t1\n";
        let err = parse_vad_lexicon(body, "x", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ScoreOutOfRange { line: 1, .. }));
        assert!(err.to_string().contains("score out of range"));

        let l = parse_vad_lexicon(body, "x", LoadOptions { rescale: true }).unwrap().value;
        assert_eq!(l.lookup("neg"), Some(Vad::new(0.0, 0.5, 1.0)));
        assert!(parse_vad_lexicon("x\t1.5\t0\t0\n", "x", LoadOptions { rescale: true }).is_err());
        assert!(parse_vad_lexicon("x\tNaN\t0\t0\n", "x", LoadOptions::default()).is_err());
    }

    #[test]
    fn short_rows_are_parse_errors() {
        let err = parse_vad_lexicon("a\t0.1\t0.1\t0.1\nb\t0.2\n", "x", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::LexiconParse { line: 2, .. }));
        let err = parse_vad_lexicon("a\t0.1\t0.1\t0.1\nb\t0.2\tzz\t0.1\n", "x", LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::LexiconParse { line: 2, .. }));
    }

    #[test]
    fn singleton_and_no_match() {
        let s = score_tokens(&["joy"], &lex());
        assert_eq!(s.means, Some(Vad::new(0.95, 0.60, 0.55)));
        assert_eq!((s.tokens_total, s.tokens_matched), (1, 1));

        let s = score_tokens(&["zzzq"], &lex());
        assert_eq!(s.means, None);
        assert_eq!((s.tokens_total, s.tokens_matched), (1, 0));
        assert_eq!(s.match_rate(), Some(0.0));
        assert_eq!(score_tokens::<&str>(&[], &lex()).match_rate(), None);
    }

    #[test]
    fn corpus_scores_and_csv_round_trip() {
        let l = lex();
        let chapters = vec![
            (1, vec![vec!["joy", "joy", "zzz"]]),
            (2, vec![]),
            (3, vec![vec!["dark"], vec!["joy"]]),
        ];
        let scores = score_corpus(&chapters, &l);
        assert_eq!(scores.chapters.len(), 3);
        assert_eq!(scores.chapters[1].means, None);
        assert_eq!(scores.chapters[1].tokens_total, 0);
        assert_eq!(scores.overall.tokens_total, 5);
        assert_eq!(scores.overall.tokens_matched, 4);

        let csv = scores_csv(&scores);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SCORES_HEADER);
        assert_eq!(lines[1], "1,0.950000,0.600000,0.550000,3,2");
        assert_eq!(lines[2], "2,,,,0,0");
        assert!(lines[4].starts_with("all,"));

        let back = parse_scores_csv(&csv, Path::new("scores.csv")).unwrap();
        assert_eq!(back.chapters.len(), 3);
        assert_eq!(back.chapters[1].means, None);
        assert_eq!(back.overall.tokens_matched, 4);
        assert!(parse_scores_csv("nope\n", Path::new("s")).is_err());
        assert!(parse_scores_csv(&format!("{SCORES_HEADER}\n1,,,,0,0\n"), Path::new("s")).is_err());
    }

    #[test]
    fn dimension_names() {
        assert_eq!("Arousal".parse::<Dimension>().unwrap(), Dimension::Arousal);
        assert!("x".parse::<Dimension>().is_err());
    }
}
