//! Corpus loading and chapter segmentation.

use std::fs;
use std::path::{Path, PathBuf};

use regex::{Regex, RegexBuilder};

use crate::diag::{Outcome, Warning};
use crate::error::{Error, Result};

/// A whole document after encoding and line-ending normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCorpus {
    pub text: String,
    pub source_name: String,
}

/// One chapter: its heading line plus everything up to the next heading.
///
/// `heading` excludes the line terminator; `body` starts with it, so
/// `heading + body` is exactly the corpus slice `start_offset..end_offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chapter {
    pub index: u32,
    pub heading: String,
    pub body: String,
    pub start_offset: usize,
    pub end_offset: usize,
}

impl Chapter {
    /// Heading and body as they appeared in the source.
    pub fn text(&self) -> String {
        let mut s = String::with_capacity(self.heading.len() + self.body.len());
        s.push_str(&self.heading);
        s.push_str(&self.body);
        s
    }
}

/// Decodes UTF-8 (dropping a leading byte-order mark) and converts CRLF and
/// lone CR line endings to LF. Nothing else is touched.
pub fn normalize_corpus(raw: &[u8], source_name: impl Into<String>) -> Result<RawCorpus> {
    const BOM: &[u8] = b"\xEF\xBB\xBF";
    let (bytes, shift) = match raw.strip_prefix(BOM) {
        Some(rest) => (rest, BOM.len()),
        None => (raw, 0),
    };
    let decoded = std::str::from_utf8(bytes).map_err(|e| Error::InvalidEncoding {
        offset: e.valid_up_to() + shift,
    })?;

    let mut text = String::with_capacity(decoded.len());
    let mut chars = decoded.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '\r' {
            if chars.peek() == Some(&'\n') {
                chars.next();
            }
            text.push('\n');
        } else {
            text.push(c);
        }
    }
    Ok(RawCorpus {
        text,
        source_name: source_name.into(),
    })
}

pub fn read_corpus(path: &Path) -> Result<RawCorpus> {
    let raw = fs::read(path).map_err(|e| Error::io(path, e))?;
    normalize_corpus(&raw, path.display().to_string())
}

/// Recognizes chapter heading lines.
///
/// The chapter number is read from the capture group named `num` (or the
/// first capture group). Numbers may be decimal or roman numerals. Patterns
/// without a capture group number chapters by position.
#[derive(Debug, Clone)]
pub struct HeadingPattern {
    regex: Regex,
}

impl HeadingPattern {
    pub const DEFAULT: &'static str = r"^chapter[ \t]+(?P<num>[0-9]+|[ivxlcdm]+)\b.*$";

    /// Compiles a pattern in multi-line, case-insensitive mode.
    pub fn new(pattern: &str) -> Result<Self> {
        let regex = RegexBuilder::new(pattern)
            .multi_line(true)
            .case_insensitive(true)
            .build()
            .map_err(|e| Error::InvalidPattern(e.to_string()))?;
        Ok(HeadingPattern { regex })
    }

    pub fn as_str(&self) -> &str {
        self.regex.as_str()
    }

    /// Does this single line look like a heading?
    pub fn is_heading_line(&self, line: &str) -> bool {
        self.regex
            .captures_iter(line)
            .any(|caps| caps.get(0).is_some_and(|m| m.start() == 0) && heading_number(&caps).is_some())
    }
}

impl Default for HeadingPattern {
    fn default() -> Self {
        HeadingPattern::new(Self::DEFAULT).expect("default heading pattern compiles")
    }
}

/// `Some(None)` when the pattern carries no number, `None` when the captured
/// token is not a usable number (e.g. "chapter dim").
fn heading_number(caps: &regex::Captures<'_>) -> Option<Option<u32>> {
    let group = caps.name("num").or_else(|| caps.get(1));
    match group {
        None => Some(None),
        Some(m) => parse_chapter_number(m.as_str()).map(Some),
    }
}

fn parse_chapter_number(s: &str) -> Option<u32> {
    if s.bytes().all(|b| b.is_ascii_digit()) {
        s.parse().ok()
    } else {
        roman_to_int(s)
    }
}

/// Parses a canonical roman numeral (case-insensitive). Non-canonical forms
/// such as "IIII" or "IM" are rejected.
pub fn roman_to_int(s: &str) -> Option<u32> {
    if s.is_empty() {
        return None;
    }
    let upper = s.to_ascii_uppercase();
    let mut total = 0u32;
    let mut prev = 0u32;
    for c in upper.chars().rev() {
        let v = match c {
            'I' => 1,
            'V' => 5,
            'X' => 10,
            'L' => 50,
            'C' => 100,
            'D' => 500,
            'M' => 1000,
            _ => return None,
        };
        if v < prev {
            total = total.checked_sub(v)?;
        } else {
            total += v;
            prev = v;
        }
    }
    (total > 0 && int_to_roman(total) == upper).then_some(total)
}

pub fn int_to_roman(mut n: u32) -> String {
    const TABLE: [(u32, &str); 13] = [
        (1000, "M"),
        (900, "CM"),
        (500, "D"),
        (400, "CD"),
        (100, "C"),
        (90, "XC"),
        (50, "L"),
        (40, "XL"),
        (10, "X"),
        (9, "IX"),
        (5, "V"),
        (4, "IV"),
        (1, "I"),
    ];
    let mut out = String::new();
    for &(value, digits) in &TABLE {
        while n >= value {
            out.push_str(digits);
            n -= value;
        }
    }
    out
}

/// Splits the corpus at heading lines. Text before the first heading is
/// dropped.
pub fn segment_chapters(corpus: &RawCorpus, pattern: &HeadingPattern) -> Result<Outcome<Vec<Chapter>>> {
    let text = corpus.text.as_str();

    // (line start, line end, parsed number)
    let mut headings: Vec<(usize, usize, Option<u32>)> = Vec::new();
    for caps in pattern.regex.captures_iter(text) {
        let m = caps.get(0).expect("group 0 always present");
        let start = m.start();
        if start != 0 && text.as_bytes()[start - 1] != b'\n' {
            continue;
        }
        let Some(number) = heading_number(&caps) else {
            continue;
        };
        let line_end = text[start..].find('\n').map_or(text.len(), |i| start + i);
        headings.push((start, line_end, number));
    }

    if headings.is_empty() {
        return Err(Error::NoChapters);
    }

    let numbers: Vec<Option<u32>> = headings.iter().map(|h| h.2).collect();
    let mut warnings = Vec::new();
    let indices: Vec<u32> = if numbers.iter().all(Option::is_some) {
        let found: Vec<u32> = numbers.iter().flatten().copied().collect();
        if found.windows(2).all(|w| w[0] < w[1]) {
            found
        } else {
            warnings.push(Warning::ChapterNumbering { found });
            (1..=headings.len() as u32).collect()
        }
    } else {
        (1..=headings.len() as u32).collect()
    };

    let chapters = headings
        .iter()
        .enumerate()
        .map(|(i, &(start, line_end, _))| {
            let end = headings.get(i + 1).map_or(text.len(), |h| h.0);
            Chapter {
                index: indices[i],
                heading: text[start..line_end].to_string(),
                body: text[line_end..end].to_string(),
                start_offset: start,
                end_offset: end,
            }
        })
        .collect();
    Ok(Outcome::new(chapters, warnings))
}

pub fn chapter_file_name(index: u32) -> String {
    format!("chapter_{index}.txt")
}

/// Writes `chapter_<index>.txt` (heading followed by body) for each chapter
/// and returns the paths in input order.
pub fn write_chapter_files(chapters: &[Chapter], out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    chapters
        .iter()
        .map(|ch| {
            let path = out_dir.join(chapter_file_name(ch.index));
            fs::write(&path, ch.text()).map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}

/// Reads a file produced by [`write_chapter_files`] back into a chapter.
/// Offsets are relative to the file, not the original corpus.
pub fn read_chapter_file(path: &Path, index: u32) -> Result<Chapter> {
    let raw = fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = normalize_corpus(&raw, path.display().to_string())?.text;
    let split = text.find('\n').unwrap_or(text.len());
    Ok(Chapter {
        index,
        heading: text[..split].to_string(),
        body: text[split..].to_string(),
        start_offset: 0,
        end_offset: text.len(),
    })
}
