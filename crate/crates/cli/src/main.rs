mod commands;
mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "uacyc", version, about = "Exact checks of uniform acyclicity, W witnesses, orbit indexing and binate identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for random corpora.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest subposet size for the W search.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_q: usize,
    /// Prefix window for sequences and embeddings.
    #[arg(long, global = true, default_value_t = 16)]
    pub window: usize,
    /// Longest generator word in binate checks.
    #[arg(long, global = true, default_value_t = 4)]
    pub word_cap: usize,
    /// Largest cycle-space dimension for exact vertex enumeration.
    #[arg(long, global = true, default_value_t = uacyc::filling::DEFAULT_DIMENSION_CAP)]
    pub dim_cap: usize,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Also print k-digit decimals (non-authoritative).
    #[arg(long, global = true)]
    pub decimal: Option<usize>,
    /// Print the JSON report instead of the table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ComplexSource {
    /// Complex file.
    #[arg(long, conflicts_with = "poset")]
    pub complex: Option<PathBuf>,
    /// Use the nerve of this poset.
    #[arg(long)]
    pub poset: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Reduced integral homology, checked against rational rank-nullity.
    Homology {
        #[command(flatten)]
        source: ComplexSource,
        #[arg(long)]
        max_p: Option<usize>,
        /// Also assert that every computed group vanishes.
        #[arg(long)]
        expect_vanishing: bool,
    },
    /// Reduced rational cohomology, checked against homology.
    Cohomology {
        #[command(flatten)]
        source: ComplexSource,
        #[arg(long)]
        max_p: Option<usize>,
        #[arg(long)]
        expect_vanishing: bool,
    },
    /// Minimal ℓ¹ filling of a cycle, with its dual certificate.
    Fill {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Uniform filling constant at one level.
    Constant {
        #[command(flatten)]
        source: ComplexSource,
        #[arg(long)]
        level: usize,
        /// Bound to assert, as "num/den".
        #[arg(long)]
        claim: Option<String>,
        /// Sample this many vertex cycles instead of enumerating all of them.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// W witness search over all subposets up to --max-q elements.
    Wcheck {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Greedy interweaving of integer sequences.
    Interweave {
        /// {"sequences": [[...], ...]}; random families when absent.
        #[arg(long)]
        sequences: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Terms of y to build (defaults to --window).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Order homotopy between comparable maps of a poset into itself.
    OrderHomotopy {
        #[arg(long)]
        poset: PathBuf,
        /// {"f": [labels], "g": [labels]}; random pairs when absent.
        #[arg(long)]
        maps: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_p: usize,
    },
    /// Constructive fillings from W witnesses, for every vertex cycle of every subposet.
    WPipeline {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_p: usize,
    },
    /// Face maps of random subsequence chains versus their index tuples.
    OrbitCheck {
        /// {"members": [{"missing": [...]}, ...]}, smallest first; random chains when absent.
        #[arg(long)]
        chain: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_p: usize,
    },
    /// Simplicial identities on bar tuples of co-finite embeddings.
    MonoidCheck {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_p: usize,
    },
    /// Binate identities in the lamplighter model.
    BinateCheck {
        /// {"base": m, "generators": [[...], ...]}; random groups when absent.
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// First level carrying ψ(h).
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        psi_from: i64,
    },
    /// Commuting ℤ-conjugates for finitely supported lamp groups.
    ConjugatesCheck {
        /// {"base": m, "shift": s, "generators": [{"level": [perm]}, ...]}; random level-0 groups when absent.
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_power: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.global.jobs;
    let outcome = uacyc::par::with_jobs(jobs, || commands::run(&cli));
    match outcome {
        Ok(mut report) => {
            if let Some(k) = cli.global.decimal {
                report.add_decimals(k);
            }
            let json = serde_json::to_string_pretty(&report).expect("reports serialize");
            if let Some(path) = &cli.global.report {
                if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if cli.global.json {
                println!("{json}");
            } else {
                print!("{}", report.render());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
