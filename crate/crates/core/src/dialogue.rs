//! Quoted dialogue extraction and the per-chapter CSV files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};

use crate::corpus::Chapter;
use crate::diag::{Outcome, Warning};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 3] = ["chapter", "seq", "utterance"];
pub const FULL_DIALOGUE_FILE: &str = "full_dialogue.txt";

/// One quoted span. Offsets index the chapter body and exclude the quote marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance {
    pub chapter_index: u32,
    pub seq: u32,
    pub text: String,
    pub start_offset: usize,
    pub end_offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuoteStyle {
    pub open: char,
    pub close: char,
}

impl QuoteStyle {
    pub const STRAIGHT: QuoteStyle = QuoteStyle { open: '"', close: '"' };
    pub const CURLY: QuoteStyle = QuoteStyle { open: '\u{201C}', close: '\u{201D}' };

    /// Parses a two-character spec such as `""`, `“”` or `«»`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut chars = spec.chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(open), Some(close), None) => Ok(QuoteStyle { open, close }),
            _ => Err(Error::InvalidQuoteStyle(spec.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuoteConfig {
    pub styles: Vec<QuoteStyle>,
}

impl Default for QuoteConfig {
    fn default() -> Self {
        QuoteConfig {
            styles: vec![QuoteStyle::STRAIGHT, QuoteStyle::CURLY],
        }
    }
}

impl QuoteConfig {
    pub fn is_quote_mark(&self, c: char) -> bool {
        self.styles.iter().any(|s| s.open == c || s.close == c)
    }

    fn opener(&self, c: char) -> Option<QuoteStyle> {
        self.styles.iter().copied().find(|s| s.open == c)
    }
}

/// Byte ranges of paragraphs: maximal runs of lines separated by blank lines.
fn paragraphs(text: &str) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut pos = 0;
    for line in text.split_inclusive('\n') {
        if line.trim().is_empty() {
            if let Some(s) = start.take() {
                out.push(s..pos);
            }
        } else if start.is_none() {
            start = Some(pos);
        }
        pos += line.len();
    }
    if let Some(s) = start {
        out.push(s..text.len());
    }
    out
}

/// Scans the chapter body left to right and pairs quote marks.
///
/// A span never crosses a blank line. An opener still open at the end of its
/// paragraph is dropped with a warning; so is a typographic opener followed by
/// another opener of the same style before its closer.
pub fn extract_utterances(chapter: &Chapter, config: &QuoteConfig) -> Outcome<Vec<Utterance>> {
    let body = chapter.body.as_str();
    let mut spans: Vec<Range<usize>> = Vec::new();
    let mut warnings = Vec::new();
    let unbalanced = |offset| Warning::UnbalancedQuote {
        chapter: chapter.index,
        offset,
    };

    for para in paragraphs(body) {
        // (style, byte offset of the opening mark)
        let mut open: Option<(QuoteStyle, usize)> = None;
        for (i, c) in body[para.clone()].char_indices() {
            let at = para.start + i;
            match open {
                None => {
                    if let Some(style) = config.opener(c) {
                        open = Some((style, at));
                    }
                }
                Some((style, start)) => {
                    if c == style.close {
                        spans.push(start + style.open.len_utf8()..at);
                        open = None;
                    } else if c == style.open {
                        warnings.push(unbalanced(start));
                        open = Some((style, at));
                    }
                }
            }
        }
        if let Some((_, start)) = open {
            warnings.push(unbalanced(start));
        }
    }

    let utterances = spans
        .into_iter()
        .filter(|r| !body[r.clone()].trim().is_empty())
        .enumerate()
        .map(|(i, r)| Utterance {
            chapter_index: chapter.index,
            seq: i as u32 + 1,
            text: body[r.clone()].to_string(),
            start_offset: r.start,
            end_offset: r.end,
        })
        .collect();
    Outcome::new(utterances, warnings)
}

pub fn dialogue_file_name(chapter_index: u32) -> String {
    format!("chapter_{chapter_index}_dialogues.csv")
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::MalformedRow {
            path: path.to_path_buf(),
            line: 0,
            message: format!("{other:?}"),
        },
    }
}

/// Writes `chapter,seq,utterance` rows with RFC-4180 quoting.
pub fn write_utterances_csv(utterances: &[Utterance], path: &Path) -> Result<PathBuf> {
    let mut w = csv_writer(path)?;
    w.write_record(CSV_HEADER).map_err(|e| csv_error(path, e))?;
    for u in utterances {
        w.write_record([u.chapter_index.to_string(), u.seq.to_string(), u.text.clone()])
            .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(path.to_path_buf())
}

/// A row of a dialogue CSV file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtteranceRecord {
    pub chapter: u32,
    pub seq: u32,
    pub text: String,
}

pub fn read_utterances_csv(path: &Path) -> Result<Vec<UtteranceRecord>> {
    let malformed = |line: u64, message: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line,
        message,
    };
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(file);

    let mut out = Vec::new();
    let mut saw_header = false;
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = row.position().map_or(i as u64 + 1, |p| p.line());
        if i == 0 {
            if row.iter().ne(CSV_HEADER) {
                return Err(malformed(line, format!("expected header {}", CSV_HEADER.join(","))));
            }
            saw_header = true;
            continue;
        }
        if row.len() != 3 {
            return Err(malformed(line, format!("expected 3 fields, found {}", row.len())));
        }
        let chapter = row[0]
            .parse()
            .map_err(|_| malformed(line, format!("bad chapter number {:?}", &row[0])))?;
        let seq = row[1]
            .parse()
            .map_err(|_| malformed(line, format!("bad sequence number {:?}", &row[1])))?;
        out.push(UtteranceRecord {
            chapter,
            seq,
            text: row[2].to_string(),
        });
    }
    if !saw_header {
        return Err(malformed(1, "missing header".to_string()));
    }
    Ok(out)
}

/// Joins the lines of a multi-line utterance with single spaces.
pub fn single_line(text: &str) -> String {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Concatenates the utterances of the given CSV files into `out_path`, one
/// utterance per line in (chapter, seq) order.
pub fn compile_full_dialogue(csv_paths: &[PathBuf], out_path: &Path) -> Result<PathBuf> {
    let mut records = Vec::new();
    for path in csv_paths {
        records.extend(read_utterances_csv(path)?);
    }
    records.sort_by_key(|r| (r.chapter, r.seq));

    let file = File::create(out_path).map_err(|e| Error::io(out_path, e))?;
    let mut w = BufWriter::new(file);
    for r in &records {
        writeln!(w, "{}", single_line(&r.text)).map_err(|e| Error::io(out_path, e))?;
    }
    w.flush().map_err(|e| Error::io(out_path, e))?;
    Ok(out_path.to_path_buf())
}
