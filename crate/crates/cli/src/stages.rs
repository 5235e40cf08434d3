//! The pipeline stages. Each one reads its inputs from the output directory,
//! so running the stages one by one gives the same files as `all`.
//!
//! ```text
//! out/
//!   chapters/chapter_<n>.txt                      split
//!   dialogues/chapter_<n>_dialogues.csv           extract
//!   full_dialogue.txt                             extract
//!   dialogues_filtered/chapter_<n>_filtered.txt   clean
//!   scores.csv, extremes.txt                      score
//!   freq.csv                                      freq
//!   trajectory.svg                                chart
//!   clouds/cloud_chapter_<n>.svg                  cloud
//!   clouds/cloud_grid.svg, clouds/cloud_full.svg  cloud
//!   report.txt                                    all
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use dialogue_vad::analytics::{extremes_report, find_extremes, freq_csv, FrequencyTable};
use dialogue_vad::corpus::{read_chapter_file, read_corpus, segment_chapters, write_chapter_files};
use dialogue_vad::dialogue::{
    compile_full_dialogue, dialogue_file_name, extract_utterances, read_utterances_csv, write_utterances_csv,
    FULL_DIALOGUE_FILE,
};
use dialogue_vad::lexicon::{load_vad_lexicon, parse_scores_csv, score_corpus, scores_csv, Dimension, LoadOptions};
use dialogue_vad::preprocess::{
    expand_contractions, normalize_text, remove_stopwords, strip_punctuation, tokenize, StopwordSet,
};
use dialogue_vad::viz::{layout_word_cloud, render_cloud_grid, render_trajectory_chart, render_word_cloud, ChartSpec};
use dialogue_vad::{load_stopwords, Error, Warning};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{io_error, CliError, Result};
use crate::report::{
    ChapterMatch, ChartSummary, CleanSummary, CloudSummary, ExtractSummary, FreqSummary, RunReport, ScoreSummary,
    SplitSummary,
};

pub const CHAPTERS_DIR: &str = "chapters";
pub const DIALOGUES_DIR: &str = "dialogues";
pub const FILTERED_DIR: &str = "dialogues_filtered";
pub const SCORES_FILE: &str = "scores.csv";
pub const EXTREMES_FILE: &str = "extremes.txt";
pub const FREQ_FILE: &str = "freq.csv";
pub const TRAJECTORY_FILE: &str = "trajectory.svg";
pub const CLOUDS_DIR: &str = "clouds";
pub const CLOUD_GRID_FILE: &str = "cloud_grid.svg";
pub const CLOUD_FULL_FILE: &str = "cloud_full.svg";
pub const REPORT_FILE: &str = "report.txt";

const BUNDLED_ENGLISH: &str = include_str!("../../../data/stopwords/english.txt");
const BUNDLED_EXTENDED: &str = include_str!("../../../data/stopwords/extended.txt");

pub fn filtered_file_name(chapter: u32) -> String {
    format!("chapter_{chapter}_filtered.txt")
}

pub fn cloud_file_name(chapter: u32) -> String {
    format!("cloud_chapter_{chapter}.svg")
}

fn warn(w: impl std::fmt::Display) {
    eprintln!("warning: {w}");
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| io_error(path, e))
}

fn remove_file(path: &Path) -> Result<()> {
    match fs::remove_file(path) {
        Err(e) if e.kind() != std::io::ErrorKind::NotFound => Err(io_error(path, e)),
        _ => Ok(()),
    }
}

/// Removes whatever a previous run left in `dir` and recreates it empty.
fn fresh_dir(dir: &Path) -> Result<()> {
    if dir.exists() {
        fs::remove_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))
}

/// Files named `<prefix><n><suffix>` in `dir`, sorted by `n`. A missing or
/// empty directory means the `upstream` command has not been run.
fn indexed_files(dir: &Path, prefix: &str, suffix: &str, upstream: &'static str) -> Result<Vec<(u32, PathBuf)>> {
    let missing = || CliError::MissingUpstream {
        artifact: dir.to_path_buf(),
        command: upstream,
    };
    if !dir.is_dir() {
        return Err(missing());
    }
    let mut found = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| io_error(dir, e))? {
        let entry = entry.map_err(|e| io_error(dir, e))?;
        let name = entry.file_name();
        let Some(name) = name.to_str() else { continue };
        let index = name
            .strip_prefix(prefix)
            .and_then(|rest| rest.strip_suffix(suffix))
            .filter(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|n| n.parse::<u32>().ok());
        if let Some(index) = index {
            found.push((index, entry.path()));
        }
    }
    if found.is_empty() {
        return Err(missing());
    }
    found.sort();
    Ok(found)
}

fn stopword_set(cfg: &RunConfig) -> Result<StopwordSet> {
    if !cfg.stopwords.is_empty() {
        return Ok(load_stopwords(&cfg.stopwords)?);
    }
    let mut set = StopwordSet::default();
    set.add_source("bundled:english", BUNDLED_ENGLISH);
    set.add_source("bundled:extended", BUNDLED_EXTENDED);
    Ok(set)
}

/// Filtered token lists per chapter, one list per utterance.
pub fn read_filtered(out: &Path) -> Result<Vec<(u32, Vec<Vec<String>>)>> {
    indexed_files(&out.join(FILTERED_DIR), "chapter_", "_filtered.txt", "clean")?
        .into_par_iter()
        .map(|(index, path)| {
            let text = fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
            let lists = text
                .lines()
                .map(|l| l.split_whitespace().map(str::to_string).collect())
                .collect();
            Ok((index, lists))
        })
        .collect()
}

pub fn cmd_split(cfg: &RunConfig) -> Result<SplitSummary> {
    let input = cfg.require_input()?;
    let corpus = read_corpus(input)?;
    let (chapters, warnings) = segment_chapters(&corpus, &cfg.heading()?)?.into_parts();
    warnings.iter().for_each(warn);

    let dir = cfg.output_dir.join(CHAPTERS_DIR);
    fresh_dir(&dir)?;
    write_chapter_files(&chapters, &dir)?;
    Ok(SplitSummary {
        chapters: chapters.len(),
    })
}

pub fn cmd_extract(cfg: &RunConfig) -> Result<ExtractSummary> {
    let out = &cfg.output_dir;
    let chapters = indexed_files(&out.join(CHAPTERS_DIR), "chapter_", ".txt", "split")?;
    let quotes = cfg.quote_config()?;
    let dir = out.join(DIALOGUES_DIR);
    fresh_dir(&dir)?;

    let per_chapter: Vec<(PathBuf, usize, Vec<Warning>)> = chapters
        .par_iter()
        .map(|(index, path)| {
            let chapter = read_chapter_file(path, *index)?;
            let (utterances, warnings) = extract_utterances(&chapter, &quotes).into_parts();
            let csv = write_utterances_csv(&utterances, &dir.join(dialogue_file_name(*index)))?;
            Ok((csv, utterances.len(), warnings))
        })
        .collect::<Result<_>>()?;

    let mut summary = ExtractSummary::default();
    let mut csvs = Vec::with_capacity(per_chapter.len());
    for (csv, n, warnings) in per_chapter {
        summary.utterances += n;
        summary.unbalanced_dropped += warnings
            .iter()
            .filter(|w| matches!(w, Warning::UnbalancedQuote { .. }))
            .count();
        warnings.iter().for_each(warn);
        csvs.push(csv);
    }
    compile_full_dialogue(&csvs, &out.join(FULL_DIALOGUE_FILE))?;
    Ok(summary)
}

pub fn cmd_clean(cfg: &RunConfig) -> Result<CleanSummary> {
    let out = &cfg.output_dir;
    let dialogues = indexed_files(&out.join(DIALOGUES_DIR), "chapter_", "_dialogues.csv", "extract")?;
    let stops = stopword_set(cfg)?;
    let dir = out.join(FILTERED_DIR);
    fresh_dir(&dir)?;

    let counts: Vec<(u64, u64)> = dialogues
        .par_iter()
        .map(|(index, path)| {
            let mut text = String::new();
            let (mut before, mut after) = (0u64, 0u64);
            for record in read_utterances_csv(path)? {
                let stripped = strip_punctuation(expand_contractions(tokenize(&normalize_text(&record.text))));
                before += stripped.len() as u64;
                let filtered = remove_stopwords(stripped, &stops);
                after += filtered.len() as u64;
                text.push_str(&filtered.joined());
                text.push('\n');
            }
            write_file(&dir.join(filtered_file_name(*index)), &text)?;
            Ok((before, after))
        })
        .collect::<Result<_>>()?;

    Ok(CleanSummary {
        stopwords: stops.len(),
        stopword_sources: stops
            .sources
            .iter()
            .map(|s| {
                Path::new(s)
                    .file_name()
                    .map_or_else(|| s.clone(), |n| n.to_string_lossy().into_owned())
            })
            .collect(),
        tokens_before: counts.iter().map(|c| c.0).sum(),
        tokens_after: counts.iter().map(|c| c.1).sum(),
    })
}

pub fn cmd_score(cfg: &RunConfig) -> Result<ScoreSummary> {
    let lexicon_path = cfg.require_lexicon()?;
    let out = &cfg.output_dir;
    let per_chapter = read_filtered(out)?;
    let (lexicon, warnings) = load_vad_lexicon(lexicon_path, LoadOptions { rescale: cfg.rescale })?.into_parts();
    warnings.iter().for_each(warn);

    let scores = score_corpus(&per_chapter, &lexicon);
    write_file(&out.join(SCORES_FILE), &scores_csv(&scores))?;

    let extremes = match Dimension::ALL
        .iter()
        .map(|&d| find_extremes(&scores.chapters, d, cfg.k))
        .collect::<std::result::Result<Vec<_>, _>>()
    {
        Ok(reports) => extremes_report(&reports),
        Err(Error::NoScoredChapters) => {
            warn("no chapter has a lexicon match; extremes are empty");
            "no scored chapters\n".to_string()
        }
        Err(e) => return Err(e.into()),
    };
    write_file(&out.join(EXTREMES_FILE), &extremes)?;

    Ok(ScoreSummary {
        lexicon_entries: lexicon.len(),
        skipped_phrases: lexicon.skipped_phrases,
        chapters: scores
            .chapters
            .iter()
            .map(|c| ChapterMatch {
                chapter: c.chapter_index,
                tokens_total: c.tokens_total,
                tokens_matched: c.tokens_matched,
            })
            .collect(),
        overall: ChapterMatch {
            chapter: 0,
            tokens_total: scores.overall.tokens_total,
            tokens_matched: scores.overall.tokens_matched,
        },
    })
}

pub fn cmd_freq(cfg: &RunConfig) -> Result<FreqSummary> {
    let out = &cfg.output_dir;
    let mut table = FrequencyTable::new();
    for (_, lists) in read_filtered(out)? {
        for list in &lists {
            table.add(list);
        }
    }
    write_file(&out.join(FREQ_FILE), &freq_csv(&table))?;
    Ok(FreqSummary {
        distinct: table.len(),
        total: table.total(),
    })
}

pub fn cmd_chart(cfg: &RunConfig) -> Result<ChartSummary> {
    let out = &cfg.output_dir;
    let scores_path = out.join(SCORES_FILE);
    if !scores_path.is_file() {
        return Err(CliError::MissingUpstream {
            artifact: scores_path,
            command: "score",
        });
    }
    let contents = fs::read_to_string(&scores_path).map_err(|e| io_error(&scores_path, e))?;
    let scores = parse_scores_csv(&contents, &scores_path)?;
    let svg_path = out.join(TRAJECTORY_FILE);
    remove_file(&svg_path)?;
    match render_trajectory_chart(&scores.chapters, &ChartSpec::default()) {
        Ok(svg) => {
            write_file(&svg_path, &svg)?;
            Ok(ChartSummary {
                points: Some(scores.chapters.iter().filter(|c| c.means.is_some()).count()),
            })
        }
        Err(Error::NoScoredChapters) => {
            warn("no scored chapters; trajectory chart not written");
            Ok(ChartSummary { points: None })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_cloud(cfg: &RunConfig) -> Result<CloudSummary> {
    let out = &cfg.output_dir;
    let per_chapter = read_filtered(out)?;
    let params = cfg.cloud_params();
    let dir = out.join(CLOUDS_DIR);
    fresh_dir(&dir)?;

    let tables: Vec<(u32, FrequencyTable)> = per_chapter
        .iter()
        .map(|(index, lists)| {
            let mut t = FrequencyTable::new();
            lists.iter().for_each(|l| t.add(l));
            (*index, t)
        })
        .collect();
    let mut full = FrequencyTable::new();
    tables.iter().for_each(|(_, t)| full.merge(t));

    let layouts = tables
        .par_iter()
        .map(|(index, table)| {
            let (layout, warnings) = layout_word_cloud(table, &params)?.into_parts();
            write_file(&dir.join(cloud_file_name(*index)), &render_word_cloud(&layout))?;
            Ok((*index, layout, warnings.len()))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut summary = CloudSummary::default();
    let mut cells = Vec::with_capacity(layouts.len());
    for (index, layout, skipped) in layouts {
        if skipped > 0 {
            warn(format!("chapter {index} word cloud: {skipped} words did not fit"));
        }
        summary.clouds += 1;
        summary.words_placed += layout.placed.len();
        summary.words_skipped += skipped;
        cells.push((format!("Chapter {index}"), layout));
    }
    write_file(&dir.join(CLOUD_GRID_FILE), &render_cloud_grid(&cells, cfg.columns)?)?;

    let (layout, warnings) = layout_word_cloud(&full, &params)?.into_parts();
    if !warnings.is_empty() {
        warn(format!("full word cloud: {} words did not fit", warnings.len()));
    }
    summary.clouds += 1;
    summary.words_placed += layout.placed.len();
    summary.words_skipped += warnings.len();
    write_file(&dir.join(CLOUD_FULL_FILE), &render_word_cloud(&layout))?;
    Ok(summary)
}

fn timed<T>(report: &mut RunReport, stage: &'static str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let value = f()?;
    report.timings.push((stage, start.elapsed()));
    Ok(value)
}

/// Runs every stage in order and writes `report.txt`. The first fatal error
/// stops the run; files from earlier stages stay on disk.
pub fn cmd_all(cfg: &RunConfig) -> Result<RunReport> {
    cfg.require_lexicon()?;
    let mut report = RunReport {
        input: cfg
            .require_input()?
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default(),
        seed: cfg.seed,
        ..RunReport::default()
    };
    fs::create_dir_all(&cfg.output_dir).map_err(|e| io_error(&cfg.output_dir, e))?;
    remove_file(&cfg.output_dir.join(REPORT_FILE))?;

    report.split = timed(&mut report, "split", || cmd_split(cfg))?;
    report.extract = timed(&mut report, "extract", || cmd_extract(cfg))?;
    report.clean = timed(&mut report, "clean", || cmd_clean(cfg))?;
    report.score = timed(&mut report, "score", || cmd_score(cfg))?;
    report.freq = timed(&mut report, "freq", || cmd_freq(cfg))?;
    report.chart = timed(&mut report, "chart", || cmd_chart(cfg))?;
    report.cloud = timed(&mut report, "cloud", || cmd_cloud(cfg))?;

    check_counts(&report)?;
    write_file(&cfg.output_dir.join(REPORT_FILE), &report.render())?;
    Ok(report)
}

/// Cross-stage consistency: every filtered token is counted once by freq and score.
fn check_counts(report: &RunReport) -> Result<()> {
    let after = report.clean.tokens_after;
    if report.freq.total != after {
        return Err(CliError::Invariant(format!(
            "freq.csv counts {} tokens but cleaning kept {after}",
            report.freq.total
        )));
    }
    if report.score.overall.tokens_total != after {
        return Err(CliError::Invariant(format!(
            "scoring saw {} tokens but cleaning kept {after}",
            report.score.overall.tokens_total
        )));
    }
    if report.score.chapters.len() != report.split.chapters {
        return Err(CliError::Invariant(format!(
            "{} chapters split but {} scored",
            report.split.chapters,
            report.score.chapters.len()
        )));
    }
    Ok(())
}
