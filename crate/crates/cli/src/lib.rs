//! The `orl` command line: constructions, embeddings, exact ordered Ramsey
//! numbers, samplers, experiments and certificate checks, each run recorded
//! in a replayable manifest.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

mod commands;
pub mod manifest;

use manifest::{default_manifest_path, sha256_hex, RunManifest, Session};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
/// Capped search, extraction failure or a certificate that does not verify.
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invariant(String),
}

impl CliError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Usage(format!("{}: {e}", path.display()))
    }

    pub(crate) fn in_file(path: &Path, e: orl_core::Error) -> Self {
        match e {
            orl_core::Error::Parse { line, message } => {
                CliError::Usage(format!("{}:{line}: {message}", path.display()))
            }
            other => CliError::from(other),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<orl_core::Error> for CliError {
    fn from(e: orl_core::Error) -> Self {
        match e {
            orl_core::Error::Invariant(m) => CliError::Invariant(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Invariant(m) => write!(f, "internal error: {m}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "orl", version, about = "Ordered Ramsey numbers: constructions, searches, samplers and certificates")]
pub struct Cli {
    /// Worker threads for searches and experiments (default: all cores).
    #[arg(long, global = true, env = "ORL_THREADS")]
    pub threads: Option<usize>,
    /// Where to write the run manifest (default: beside the first output, else stderr).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one of the named ordered graphs.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Extract a pattern from a host graph.
    Embed(EmbedArgs),
    /// Exact ordered Ramsey numbers and related counts.
    Ramsey {
        #[command(subcommand)]
        action: RamseyAction,
    },
    /// Draw from the random models.
    Sample {
        #[command(subcommand)]
        model: SampleModel,
    },
    /// Finite-size checks of the probabilistic lemmas.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
    /// 0/1 matrix pattern containment.
    Matrix {
        #[command(subcommand)]
        action: MatrixAction,
    },
    /// Check a certificate against a pattern.
    Verify(VerifyArgs),
    /// Re-run the command recorded in a manifest and compare its outputs.
    Replay {
        manifest_file: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file (default: stdout).
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Alternating path on n vertices.
    Altpath {
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Nested matching with the given number of edges.
    Nestmatch {
        pairs: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Complete bipartite graph with the r-side first.
    Kbip {
        r: usize,
        s: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Alternating cycle of length m.
    Altcycle {
        m: usize,
        #[command(flatten)]
        out: Output,
    },
    /// k-blow-up of the alternating path on n vertices.
    Blowup {
        n: usize,
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Nested matching joined to n blocks of size k.
    Tee {
        n: usize,
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// The tee gadget together with the blow-up path on the same blocks.
    Eff {
        n: usize,
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Ordering of a disjoint union of cycles with the given lengths.
    Tworeg {
        #[arg(required = true)]
        lengths: Vec<usize>,
        #[arg(long)]
        bipartite: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Ordering of an arbitrary graph of maximum degree two.
    Maxdeg2 {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        bipartite: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Quadratic lower-bound instance and its avoiding colouring.
    Quadlb {
        n: usize,
        #[command(flatten)]
        out: Output,
        /// Where to write the colouring (default: `<output>.col`, or stdout after the graph).
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EmbedAlgo {
    /// Alternating path by the removal process.
    Altpath,
    /// Nested matching read off an alternating path.
    Nested,
    /// Blow-up path respecting `--parts`.
    Blowup,
    /// Tee gadget respecting `--parts`.
    Tee,
    /// Exact ordered-subgraph search for `--pattern`.
    Contains,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    pub algo: EmbedAlgo,
    #[arg(long)]
    pub host: PathBuf,
    /// Interval sizes, e.g. `2,2,2`.
    #[arg(long)]
    pub parts: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value = "1/4")]
    pub eps: Ratio<u64>,
    #[arg(long)]
    pub pattern: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum RamseyAction {
    /// Least N with no avoiding colouring of K_N.
    Exact {
        #[arg(long)]
        pattern: PathBuf,
        /// Largest N to try (default 2^(2n)).
        #[arg(long)]
        nmax: Option<usize>,
        /// Directory for `lower.col` and `upper.cert`.
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
    /// Ordered Ramsey numbers of every ordering of a small graph.
    Minmax {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        nmax: usize,
    },
    /// Check a certificate.
    Verify(VerifyArgs),
    /// Exact number of ρ-regular graphs on [n].
    CountRegular {
        #[arg(long)]
        rho: Ratio<u64>,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A `col` colouring (lower bound) or an `orcert upper` file.
    #[arg(long)]
    pub cert: PathBuf,
    #[arg(long)]
    pub pattern: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Configuration,
}

#[derive(Debug, Subcommand)]
pub enum SampleModel {
    /// Random ordered matching M(π) on 2n vertices.
    Matching {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Random ρ-regular graph on [n].
    Regular {
        #[arg(long)]
        rho: Ratio<u64>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[command(flatten)]
        out: Output,
    },
    /// Blown-up random colouring of K_{ts} with t intervals of size s.
    Coloring {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExperimentKind {
    /// Exact probability that listed set pairs stay edge-free in M(π).
    Pairprob {
        #[arg(long)]
        n: Option<usize>,
        /// A left set, e.g. `1,2`; repeat for each set.
        #[arg(long = "x")]
        x_sets: Vec<String>,
        /// A right set, e.g. `5,6`; repeat for each set.
        #[arg(long = "y")]
        y_sets: Vec<String>,
        /// Index pairs, e.g. `1:1,2:1`.
        #[arg(long)]
        pairs: Option<String>,
        /// Run the built-in query corpus up to this n instead.
        #[arg(long)]
        corpus: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Fewest part pairs joined by an edge over partitions into at most t sets of size at most s.
    Coverage {
        /// Graph to partition; otherwise a ρ-regular graph is sampled.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        rho: Option<Ratio<u64>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        threshold: usize,
        /// Random partitions instead of all of them.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Random blown-up colourings against a pattern; avoiding ones become certificates.
    Montecarlo {
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Use M(π) on 2 * config-n vertices drawn from the seed, with t and s from the configuration.
        #[arg(long)]
        config_n: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Colouring to use as trial 0.
        #[arg(long)]
        inject: Option<PathBuf>,
        /// Directory for the certificate of the first avoiding colouring.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the parameter set derived from n.
    Config {
        #[arg(long)]
        config_n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum MatrixAction {
    /// Whether pattern B is contained in A.
    Contains {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// The complement of A.
    Complement {
        #[arg(long)]
        a: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Whether every N x N matrix or its complement contains every n x n permutation matrix.
    Unavoid {
        #[arg(long)]
        n: usize,
        #[arg(long = "big-n")]
        big_n: usize,
        /// Random matrices instead of all of them.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Runs `args` (program name first), writing standard output to `out` and
/// the manifest to its destination. Returns the exit code.
pub fn dispatch(args: &[String], out: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                eprint!("{text}");
            }
            return code;
        }
    };
    let start = Instant::now();
    let mut session = Session::default();
    let mut stdout = String::new();
    let result = match build_pool(cli.threads) {
        Ok(pool) => pool.install(|| commands::run(&cli.command, &mut session, &mut stdout)),
        Err(e) => Err(e),
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    let _ = out.write_all(stdout.as_bytes());
    let record = RunManifest {
        argv: args.iter().skip(1).cloned().collect(),
        seed: session.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        threads: cli.threads,
        inputs: session.inputs.clone(),
        outputs: session.outputs.clone(),
        stdout_sha256: sha256_hex(stdout.as_bytes()),
        exit_code: code,
        wall_time_ms: start.elapsed().as_millis(),
    };
    let json = serde_json::to_string_pretty(&record).expect("manifest serialises");
    let target = cli.manifest.clone().or_else(|| session.first_output().map(|p| default_manifest_path(&p)));
    match target {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, json + "\n") {
                eprintln!("error: could not write manifest {}: {e}", path.display());
            }
        }
        None => eprintln!("{json}"),
    }
    code
}

fn build_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    builder
        .build()
        .map_err(|e| CliError::Invariant(format!("thread pool: {e}")))
}
