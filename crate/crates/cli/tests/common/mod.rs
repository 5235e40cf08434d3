#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dialogue_vad_cli::RunConfig;

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn synthetic_lexicon() -> PathBuf {
    workspace_root().join("data/lexicon/synthetic_vad.tsv")
}

pub fn config(input: &Path, out: &Path) -> RunConfig {
    RunConfig {
        input: Some(input.to_path_buf()),
        output_dir: out.to_path_buf(),
        lexicon: Some(synthetic_lexicon()),
        ..RunConfig::default()
    }
    .resolve()
    .unwrap()
}

/// Every file under `dir`, keyed by its path relative to `dir`.
pub fn tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        for entry in fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().replace('\\', "/");
                out.insert(rel, fs::read(&path).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(dir, dir, &mut out);
    out
}

pub fn dvad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dvad")).args(args).output().unwrap()
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}
