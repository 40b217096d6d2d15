use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parteval::{DetectorKind, NullModelKind, TwoFqMode};

mod commands;

/// Score, compare and select graph partitions.
#[derive(Debug, Parser)]
#[command(name = "parteval", version)]
pub struct Cli {
    /// Null model for expected internal edges.
    #[arg(long, global = true, default_value_t = NullModelKind::Configuration)]
    pub null: NullModelKind,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One row of quality metrics per partition file.
    Metrics {
        #[arg(long)]
        graph: PathBuf,
        /// Partition files (TSV `node<TAB>community` or JSON list of lists).
        #[arg(required = true)]
        partitions: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score partitions on a pair of criteria and mark the Pareto frontier.
    Compare {
        #[arg(long)]
        graph: PathBuf,
        #[arg(num_args = 2.., required = true)]
        partitions: Vec<PathBuf>,
        #[arg(long, default_value = "modularity/mdensity")]
        criteria: CriteriaPair,
        #[arg(long)]
        out: PathBuf,
        /// α intervals file; defaults to `<out stem>.intervals.<ext>`.
        /// Only written for modularity/mdensity.
        #[arg(long)]
        intervals: Option<PathBuf>,
        /// Also tabulate 2FQ at `N + 1` evenly spaced α values.
        #[arg(long, value_name = "N")]
        alpha_grid: Option<usize>,
        /// Grid file; defaults to `<out stem>.2fq.<ext>`.
        #[arg(long)]
        grid_out: Option<PathBuf>,
        #[arg(long, default_value = "convex")]
        two_fq: TwoFqMode,
    },
    /// Keep the non-dominated rows of a scores table.
    Pareto {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// α intervals on which each row maximizes convex 2FQ.
    Envelope {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long, default_value = "modularity")]
        x: String,
        #[arg(long, default_value = "mdensity")]
        y: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Precision and recall of a detector on held-out edges.
    EvalPr {
        #[arg(long)]
        graph: PathBuf,
        /// `file:PATH`, `labelprop`, `greedy` or `louvain`.
        #[arg(long)]
        detector: DetectorSpec,
        /// Fraction of edges removed per trial.
        #[arg(long, default_value_t = parteval::pr_eval::DEFAULT_REMOVAL_FRACTION)]
        p: f64,
        /// Trials use seeds `seed, seed + 1, ...`.
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a benchmark graph with its planted partition.
    Gen {
        #[command(subcommand)]
        generator: Generator,
    },
    /// Run a built-in community detector.
    Detect {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        method: DetectorKind,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write every level of the detector's hierarchy into this directory.
        #[arg(long, value_name = "DIR")]
        all_levels: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// Stochastic block model.
    Sbm {
        /// Block sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        p_in: f64,
        #[arg(long)]
        p_out: f64,
        #[command(flatten)]
        output: GenOutput,
    },
    /// Two-level nested block model; the truth file holds the fine blocks.
    Hsbm {
        #[arg(long)]
        groups: usize,
        #[arg(long)]
        blocks_per_group: usize,
        #[arg(long)]
        block_size: usize,
        #[arg(long)]
        p_in: f64,
        #[arg(long)]
        p_mid: f64,
        #[arg(long)]
        p_out: f64,
        /// Where to write the group-level partition.
        #[arg(long)]
        coarse_truth: Option<PathBuf>,
        #[command(flatten)]
        output: GenOutput,
    },
    /// Equal cliques wired together by external stubs at mixing `mu`.
    FixedClique {
        #[arg(long)]
        cliques: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        mu: f64,
        #[command(flatten)]
        output: GenOutput,
    },
    /// Cliques joined in a ring by single edges.
    Ring {
        #[arg(long)]
        cliques: usize,
        #[arg(long)]
        size: usize,
        /// Truth merges adjacent cliques pairwise instead of one per clique.
        #[arg(long)]
        paired: bool,
        #[command(flatten)]
        output: GenOutput,
    },
    /// Components of two cliques joined by a path.
    Chain {
        #[arg(long)]
        components: usize,
        #[arg(long)]
        chain_len: usize,
        #[arg(long)]
        clique_size: usize,
        #[command(flatten)]
        output: GenOutput,
    },
}

#[derive(Debug, Args)]
pub struct GenOutput {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Generator parameters as JSON.
    #[arg(long)]
    pub params: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriteriaPair {
    pub x: &'static str,
    pub y: &'static str,
}

impl CriteriaPair {
    const ALLOWED: [(&'static str, &'static str); 4] = [
        ("precision", "recall"),
        ("recall", "c_size"),
        ("modularity", "ccs"),
        ("modularity", "mdensity"),
    ];

    pub fn is_modularity_mdensity(self) -> bool {
        (self.x, self.y) == ("modularity", "mdensity")
    }
}

impl FromStr for CriteriaPair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (x, y) = s
            .split_once('/')
            .ok_or_else(|| format!("expected X/Y, got {s:?}"))?;
        Self::ALLOWED
            .iter()
            .find(|&&(a, b)| a == x && b == y)
            .map(|&(x, y)| CriteriaPair { x, y })
            .ok_or_else(|| {
                let names: Vec<String> = Self::ALLOWED.iter().map(|(a, b)| format!("{a}/{b}")).collect();
                format!(
                    "unknown criteria pair {s:?}; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetectorSpec {
    File(PathBuf),
    Builtin(DetectorKind),
}

impl FromStr for DetectorSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.strip_prefix("file:") {
            Some("") => Err("file: needs a path".into()),
            Some(path) => Ok(DetectorSpec::File(path.into())),
            None => s
                .parse()
                .map(DetectorSpec::Builtin)
                .map_err(|e: parteval::Error| e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            // --help and --version
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            commands::usage_record(&err.to_string());
            return ExitCode::from(1);
        }
    };
    let name = cli.command.name();
    match commands::run(&cli) {
        Ok(report) if report.failures == 0 => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(2),
        Err(err) => {
            commands::error_record(name, None, &err);
            ExitCode::from(1)
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Metrics { .. } => "metrics",
            Command::Compare { .. } => "compare",
            Command::Pareto { .. } => "pareto",
            Command::Envelope { .. } => "envelope",
            Command::EvalPr { .. } => "eval-pr",
            Command::Gen { .. } => "gen",
            Command::Detect { .. } => "detect",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn criteria_pairs() {
        let pair: CriteriaPair = "recall/c_size".parse().unwrap();
        assert_eq!((pair.x, pair.y), ("recall", "c_size"));
        assert!(!pair.is_modularity_mdensity());
        assert!("modularity/mdensity"
            .parse::<CriteriaPair>()
            .unwrap()
            .is_modularity_mdensity());
        assert!("mdensity/modularity".parse::<CriteriaPair>().is_err());
        assert!("modularity".parse::<CriteriaPair>().is_err());
    }

    #[test]
    fn detector_specs() {
        assert_eq!("file:a/b.tsv".parse(), Ok(DetectorSpec::File("a/b.tsv".into())));
        assert_eq!(
            "greedy".parse(),
            Ok(DetectorSpec::Builtin(DetectorKind::GreedyAgglomerative))
        );
        assert!("file:".parse::<DetectorSpec>().is_err());
        assert!("infomap".parse::<DetectorSpec>().is_err());
    }
}
