//! Run configuration: defaults, then an optional `key = value` file, then
//! command-line flags. Flags win.
//!
//! ```text
//! # dvad.conf
//! input = novel.txt
//! out = results
//! lexicon = NRC-VAD-Lexicon.txt
//! stopwords = stopwords/english.txt
//! stopwords = stopwords/extended.txt
//! quotes = ""
//! quotes = “”
//! seed = 0
//! ```
//!
//! Relative paths in a config file are resolved against the file's directory.

use std::fs;
use std::path::{Path, PathBuf};

use dialogue_vad::analytics::DEFAULT_EXTREMES_K;
use dialogue_vad::dialogue::{QuoteConfig, QuoteStyle};
use dialogue_vad::viz::CloudParams;
use dialogue_vad::HeadingPattern;

use crate::error::{io_error, CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub heading_pattern: Option<String>,
    /// Two-character opener/closer specs; empty means the defaults.
    pub quote_styles: Vec<String>,
    /// Empty means the bundled lists.
    pub stopwords: Vec<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub rescale: bool,
    pub max_words: usize,
    pub canvas_width: f64,
    pub canvas_height: f64,
    pub seed: u64,
    pub k: usize,
    pub columns: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let cloud = CloudParams::default();
        RunConfig {
            input: None,
            output_dir: PathBuf::from("out"),
            heading_pattern: None,
            quote_styles: Vec::new(),
            stopwords: Vec::new(),
            lexicon: None,
            rescale: false,
            max_words: cloud.max_words,
            canvas_width: cloud.width,
            canvas_height: cloud.height,
            seed: 0,
            k: DEFAULT_EXTREMES_K,
            columns: 4,
        }
    }
}

/// Values given on the command line; `None` / empty leaves the lower layer alone.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub input: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub heading_pattern: Option<String>,
    pub quote_styles: Vec<String>,
    pub stopwords: Vec<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub rescale: bool,
    pub max_words: Option<usize>,
    pub canvas_width: Option<f64>,
    pub canvas_height: Option<f64>,
    pub seed: Option<u64>,
    pub k: Option<usize>,
    pub columns: Option<usize>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("line {line}: invalid value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str, line: usize) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(CliError::Config(format!("line {line}: invalid boolean {value:?} for {key}"))),
    }
}

impl RunConfig {
    /// Applies a config file's contents. `base` resolves relative paths.
    pub fn apply_file_contents(&mut self, contents: &str, base: &Path) -> Result<()> {
        let mut stopwords = Vec::new();
        let mut quotes = Vec::new();
        for (i, raw) in contents.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {line}: expected `key = value`")))?;
            let (key, value) = (key.trim(), value.trim());
            let path = || base.join(value);
            match key {
                "input" => self.input = Some(path()),
                "out" | "output_dir" => self.output_dir = path(),
                "lexicon" => self.lexicon = Some(path()),
                "stopwords" => stopwords.push(path()),
                "heading_pattern" => self.heading_pattern = Some(value.to_string()),
                "quotes" => quotes.push(value.to_string()),
                "rescale" => self.rescale = parse_bool(key, value, line)?,
                "max_words" => self.max_words = parse_value(key, value, line)?,
                "canvas_width" => self.canvas_width = parse_value(key, value, line)?,
                "canvas_height" => self.canvas_height = parse_value(key, value, line)?,
                "seed" => self.seed = parse_value(key, value, line)?,
                "k" => self.k = parse_value(key, value, line)?,
                "columns" => self.columns = parse_value(key, value, line)?,
                other => return Err(CliError::Config(format!("line {line}: unknown key {other:?}"))),
            }
        }
        if !stopwords.is_empty() {
            self.stopwords = stopwords;
        }
        if !quotes.is_empty() {
            self.quote_styles = quotes;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let contents = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        self.apply_file_contents(&contents, base)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn apply_overrides(&mut self, o: Overrides) {
        if o.input.is_some() {
            self.input = o.input;
        }
        if let Some(v) = o.output_dir {
            self.output_dir = v;
        }
        if o.heading_pattern.is_some() {
            self.heading_pattern = o.heading_pattern;
        }
        if !o.quote_styles.is_empty() {
            self.quote_styles = o.quote_styles;
        }
        if !o.stopwords.is_empty() {
            self.stopwords = o.stopwords;
        }
        if o.lexicon.is_some() {
            self.lexicon = o.lexicon;
        }
        self.rescale |= o.rescale;
        if let Some(v) = o.max_words {
            self.max_words = v;
        }
        if let Some(v) = o.canvas_width {
            self.canvas_width = v;
        }
        if let Some(v) = o.canvas_height {
            self.canvas_height = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.k {
            self.k = v;
        }
        if let Some(v) = o.columns {
            self.columns = v;
        }
    }

    /// Makes every path absolute and checks numeric settings.
    pub fn resolve(mut self) -> Result<Self> {
        let abs = |p: &Path| {
            std::path::absolute(p).map_err(|e| CliError::Config(format!("cannot resolve {}: {e}", p.display())))
        };
        self.input = self.input.as_deref().map(abs).transpose()?;
        self.output_dir = abs(&self.output_dir)?;
        self.lexicon = self.lexicon.as_deref().map(abs).transpose()?;
        self.stopwords = self.stopwords.iter().map(|p| abs(p)).collect::<Result<_>>()?;

        if self.max_words == 0 {
            return Err(CliError::Config("max_words must be at least 1".into()));
        }
        if self.k == 0 {
            return Err(CliError::Config("k must be at least 1".into()));
        }
        if self.columns == 0 {
            return Err(CliError::Config("columns must be at least 1".into()));
        }
        if !(self.canvas_width > 0.0 && self.canvas_height > 0.0) {
            return Err(CliError::Config("canvas dimensions must be positive".into()));
        }
        self.quote_config()?;
        self.heading()?;
        Ok(self)
    }

    pub fn heading(&self) -> Result<HeadingPattern> {
        Ok(match &self.heading_pattern {
            Some(p) => HeadingPattern::new(p)?,
            None => HeadingPattern::default(),
        })
    }

    pub fn quote_config(&self) -> Result<QuoteConfig> {
        if self.quote_styles.is_empty() {
            return Ok(QuoteConfig::default());
        }
        let styles = self
            .quote_styles
            .iter()
            .map(|s| QuoteStyle::parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QuoteConfig { styles })
    }

    pub fn cloud_params(&self) -> CloudParams {
        CloudParams {
            max_words: self.max_words,
            width: self.canvas_width,
            height: self.canvas_height,
            seed: self.seed,
            ..CloudParams::default()
        }
    }

    pub fn require_input(&self) -> Result<&Path> {
        self.input
            .as_deref()
            .ok_or_else(|| CliError::Config("no input file given (use --input)".into()))
    }

    pub fn require_lexicon(&self) -> Result<&Path> {
        self.lexicon
            .as_deref()
            .ok_or_else(|| CliError::Config("scoring needs a VAD lexicon (use --lexicon)".into()))
    }
}
