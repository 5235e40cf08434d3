mod common;

use std::fs;

use common::*;
use dialogue_vad_cli::stages::*;
use dialogue_vad_cli::CliError;

#[test]
fn split_two_chapters() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let input = fixture("two_chapters.txt");
    let o = dvad(&["split", "--input", path_str(&input), "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "chapters: 2\n");
    let files = tree(&out.join(CHAPTERS_DIR));
    assert_eq!(files.keys().collect::<Vec<_>>(), ["chapter_1.txt", "chapter_2.txt"]);
    let ch1 = String::from_utf8(files["chapter_1.txt"].clone()).unwrap();
    assert!(ch1.starts_with("CHAPTER 1. The Lamp\n"));
    assert!(!ch1.contains("CHAPTER 2"));
}

#[test]
fn score_without_lexicon_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = config(&fixture("two_chapters.txt"), tmp.path());
    cfg.lexicon = None;
    cmd_split(&cfg).unwrap();
    cmd_extract(&cfg).unwrap();
    cmd_clean(&cfg).unwrap();
    assert!(matches!(cmd_score(&cfg), Err(CliError::Config(_))));

    let o = dvad(&["score", "--out", path_str(tmp.path())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lexicon"));
    assert!(o.stdout.is_empty());
}

#[test]
fn chart_after_scoring_parses() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(&fixture("two_chapters.txt"), tmp.path());
    cmd_split(&cfg).unwrap();
    cmd_extract(&cfg).unwrap();
    cmd_clean(&cfg).unwrap();
    cmd_score(&cfg).unwrap();
    let summary = cmd_chart(&cfg).unwrap();
    assert_eq!(summary.points, Some(2));
    let svg = fs::read_to_string(tmp.path().join(TRAJECTORY_FILE)).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
}

#[test]
fn empty_input_reports_no_chapters() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("empty.txt");
    fs::write(&input, "").unwrap();
    let out = tmp.path().join("out");
    let o = dvad(&["all", "--input", path_str(&input), "--out", path_str(&out), "--lexicon", path_str(&synthetic_lexicon())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no chapters found"));
}

#[test]
fn no_quotes_gives_absent_scores() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(&fixture("no_quotes.txt"), tmp.path());
    let report = cmd_all(&cfg).unwrap();
    assert_eq!(report.split.chapters, 3);
    assert_eq!(report.extract.utterances, 0);
    assert_eq!(report.chart.points, None);

    let scores = fs::read_to_string(tmp.path().join(SCORES_FILE)).unwrap();
    let rows: Vec<&str> = scores.lines().skip(1).collect();
    assert_eq!(rows, ["1,,,,0,0", "2,,,,0,0", "3,,,,0,0", "all,,,,0,0"]);
    assert!(!tmp.path().join(TRAJECTORY_FILE).exists());
    assert_eq!(fs::read_to_string(tmp.path().join(EXTREMES_FILE)).unwrap(), "no scored chapters\n");
    assert_eq!(fs::read_to_string(tmp.path().join(FREQ_FILE)).unwrap(), "token,count\n");
}

#[test]
fn runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    let input = fixture("golden_novel.txt");
    cmd_all(&config(&input, &a)).unwrap();
    cmd_all(&config(&input, &b)).unwrap();
    let (ta, tb) = (tree(&a), tree(&b));
    assert!(ta.contains_key(REPORT_FILE));
    assert_eq!(ta, tb);
}

#[test]
fn stage_commands_match_all() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    let input = fixture("golden_novel.txt");
    cmd_all(&config(&input, &a)).unwrap();

    let lex = synthetic_lexicon();
    for stage in ["split", "extract", "clean", "score", "freq", "chart", "cloud"] {
        let o = dvad(&[stage, "--input", path_str(&input), "--out", path_str(&b), "--lexicon", path_str(&lex)]);
        assert_eq!(o.status.code(), Some(0), "{stage}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let mut ta = tree(&a);
    ta.remove(REPORT_FILE);
    assert_eq!(ta, tree(&b));
}

#[test]
fn missing_upstream_names_the_command() {
    let tmp = tempfile::tempdir().unwrap();
    let out = path_str(tmp.path());
    for (stage, upstream) in [("extract", "split"), ("clean", "extract"), ("freq", "clean"), ("cloud", "clean"), ("chart", "score")] {
        let o = dvad(&[stage, "--out", out]);
        assert_eq!(o.status.code(), Some(1), "{stage}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(&format!("run `dvad {upstream}` first")), "{stage}: {err}");
    }
}

#[test]
fn rerunning_split_clears_stale_chapters() {
    let tmp = tempfile::tempdir().unwrap();
    cmd_split(&config(&fixture("no_quotes.txt"), tmp.path())).unwrap();
    cmd_split(&config(&fixture("two_chapters.txt"), tmp.path())).unwrap();
    assert_eq!(tree(&tmp.path().join(CHAPTERS_DIR)).len(), 2);
}

#[test]
fn config_file_with_flag_override() {
    let tmp = tempfile::tempdir().unwrap();
    fs::copy(fixture("two_chapters.txt"), tmp.path().join("novel.txt")).unwrap();
    fs::write(tmp.path().join("stops.txt"), "# tiny list\nthe\na\n").unwrap();
    let conf = tmp.path().join("run.conf");
    fs::write(
        &conf,
        format!(
            "input = novel.txt\nout = results\nstopwords = stops.txt\nlexicon = {}\nseed = 9\n",
            path_str(&synthetic_lexicon())
        ),
    )
    .unwrap();

    let o = dvad(&["all", "--config", path_str(&conf), "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = fs::read_to_string(tmp.path().join("results").join(REPORT_FILE)).unwrap();
    assert!(report.contains("seed: 4\n"), "{report}");
    assert!(report.contains("stopwords: 2 (stops.txt)\n"), "{report}");
}

#[test]
fn exit_codes_for_usage() {
    assert_eq!(dvad(&["--help"]).status.code(), Some(0));
    assert_eq!(dvad(&["--version"]).status.code(), Some(0));
    assert_eq!(dvad(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(dvad(&["split", "--seed", "x"]).status.code(), Some(1));
    let o = dvad(&["split", "--quotes", "abc", "--input", "x"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn counts_match_files() {
    let tmp = tempfile::tempdir().unwrap();
    let report = cmd_all(&config(&fixture("golden_novel.txt"), tmp.path())).unwrap();

    let mut csv_rows = 0;
    for entry in fs::read_dir(tmp.path().join(DIALOGUES_DIR)).unwrap() {
        csv_rows += dialogue_vad::dialogue::read_utterances_csv(&entry.unwrap().path()).unwrap().len();
    }
    assert_eq!(report.extract.utterances, csv_rows);
    let full = fs::read_to_string(tmp.path().join(dialogue_vad::dialogue::FULL_DIALOGUE_FILE)).unwrap();
    assert_eq!(full.lines().count(), report.extract.utterances);

    let filtered: u64 = tree(&tmp.path().join(FILTERED_DIR))
        .values()
        .map(|b| String::from_utf8_lossy(b).split_whitespace().count() as u64)
        .sum();
    assert_eq!(report.clean.tokens_after, filtered);
    assert_eq!(report.freq.total, filtered);
}
