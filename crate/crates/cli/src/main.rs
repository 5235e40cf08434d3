use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dialogue_vad_cli::{stages, CliError, Overrides, RunConfig};

#[derive(Parser)]
#[command(name = "dvad", version, about = "Dialogue VAD analysis for chaptered novels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split the input text into chapter files
    Split(Flags),
    /// Extract quoted dialogue from each chapter
    Extract(Flags),
    /// Normalize, tokenize and filter the dialogue
    Clean(Flags),
    /// Score each chapter against a VAD lexicon
    Score(Flags),
    /// Count token frequencies over all filtered dialogue
    Freq(Flags),
    /// Draw the VAD trajectory chart
    Chart(Flags),
    /// Draw per-chapter and full word clouds
    Cloud(Flags),
    /// Run every stage and write report.txt
    All(Flags),
}

#[derive(Args)]
struct Flags {
    /// Key-value config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Plain-text novel
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output directory [default: out]
    #[arg(long = "out")]
    output_dir: Option<PathBuf>,
    /// NRC-VAD style lexicon: term, valence, arousal, dominance
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Stopword files, merged; the bundled lists are used when none are given
    #[arg(long, num_args = 1..)]
    stopwords: Vec<PathBuf>,
    /// Lexicon scores are in [-1, 1]; map them to [0, 1]
    #[arg(long)]
    rescale: bool,
    /// Word-cloud seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Words per cloud [default: 100]
    #[arg(long)]
    max_words: Option<usize>,
    /// Chapters listed per extreme [default: 3]
    #[arg(long)]
    k: Option<usize>,
    /// Chapter heading regex; a `num` group gives the chapter number
    #[arg(long)]
    heading_pattern: Option<String>,
    /// Quote pair as two characters, e.g. '""'; repeatable
    #[arg(long = "quotes")]
    quotes: Vec<String>,
    #[arg(long)]
    canvas_width: Option<f64>,
    #[arg(long)]
    canvas_height: Option<f64>,
    /// Columns in the cloud grid [default: 4]
    #[arg(long)]
    columns: Option<usize>,
}

impl Flags {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        cfg.apply_overrides(Overrides {
            input: self.input,
            output_dir: self.output_dir,
            heading_pattern: self.heading_pattern,
            quote_styles: self.quotes,
            stopwords: self.stopwords,
            lexicon: self.lexicon,
            rescale: self.rescale,
            max_words: self.max_words,
            canvas_width: self.canvas_width,
            canvas_height: self.canvas_height,
            seed: self.seed,
            k: self.k,
            columns: self.columns,
        });
        cfg.resolve()
    }
}

fn print_lines(lines: Vec<String>) {
    for l in lines {
        println!("{l}");
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Split(f) => print_lines(stages::cmd_split(&f.into_config()?)?.lines()),
        Command::Extract(f) => print_lines(stages::cmd_extract(&f.into_config()?)?.lines()),
        Command::Clean(f) => print_lines(stages::cmd_clean(&f.into_config()?)?.lines()),
        Command::Score(f) => print_lines(stages::cmd_score(&f.into_config()?)?.lines()),
        Command::Freq(f) => print_lines(stages::cmd_freq(&f.into_config()?)?.lines()),
        Command::Chart(f) => print_lines(stages::cmd_chart(&f.into_config()?)?.lines()),
        Command::Cloud(f) => print_lines(stages::cmd_cloud(&f.into_config()?)?.lines()),
        Command::All(f) => {
            let report = stages::cmd_all(&f.into_config()?)?;
            print!("{}", report.render());
            for l in report.timing_lines() {
                eprintln!("time {l}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
