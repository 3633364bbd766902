use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nodal_cli::{
    analyze, generated, green2, to_structured, validate_sheaf, AnalyzeOptions, Failure, Format, Outcome,
};
use nodal_core::clifford::DEFAULT_PARTITION_GUARD;
use nodal_core::connectivity::DEFAULT_CUT_GUARD;
use nodal_core::generators::{gen_chain, gen_random, gen_threecon, gen_two_component};

#[derive(Parser)]
#[command(name = "nodal", version, about = "Analyze reduced nodal curves through their dual graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Structured => Format::Structured,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Connectivity, canonical geometry and Clifford bounds of a curve file
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Also predict the Koszul table shape
        #[arg(long)]
        betti: bool,
        /// Largest component count for exhaustive set-partition search
        #[arg(long, default_value_t = DEFAULT_PARTITION_GUARD)]
        max_enum: usize,
        /// Largest component count for listing every minimum cut
        #[arg(long, default_value_t = DEFAULT_CUT_GUARD)]
        max_cut_enum: usize,
        /// Beyond --max-enum, use the greedy split search (labelled as such)
        #[arg(long)]
        heuristic: bool,
    },
    /// Write an example or random curve in the canonical file format
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file; standard output when absent
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Green's conjecture certificate for two general components
    Green2 {
        #[arg(long)]
        g1: i64,
        #[arg(long)]
        g2: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Check a sheaf profile file against a curve file
    ValidateSheaf {
        curve: PathBuf,
        profile: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Chain C_0 - C_1 - ... with one node between neighbours
    Chain {
        #[arg(long, value_delimiter = ',', required = true)]
        genera: Vec<u32>,
    },
    /// The 3-regular curve on six components
    Threecon {
        #[arg(long, value_delimiter = ',', default_value = "2,2,2,2,2,2")]
        genera: Vec<u32>,
    },
    /// Two components meeting in m points
    TwoComponent(TwoComponentArgs),
    /// Seeded random connected curve
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        /// Total number of nodes
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        genus_min: u32,
        #[arg(long, default_value_t = 3)]
        genus_max: u32,
    },
}

#[derive(Args)]
struct TwoComponentArgs {
    #[arg(long)]
    g1: u32,
    #[arg(long)]
    g2: u32,
    #[arg(long)]
    m: u32,
    /// Mark the first component Brill–Noether general
    #[arg(long)]
    general: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn run_gen(kind: GenKind, out: Option<PathBuf>) -> Outcome {
    let mut warnings = Vec::new();
    let curve = match kind {
        GenKind::Chain { genera } => {
            let g = gen_chain(&genera)?;
            warnings = g.warnings;
            g.curve
        }
        GenKind::Threecon { genera } => gen_threecon(&genera)?,
        GenKind::TwoComponent(a) => gen_two_component(a.g1, a.g2, a.m, a.general)?,
        GenKind::Random {
            seed,
            n,
            budget,
            genus_min,
            genus_max,
        } => gen_random(seed, n, budget, (genus_min, genus_max))?,
    };
    for w in warnings {
        eprintln!("warning: {w}");
    }
    let (text, summary) = generated(&curve)?;
    match out {
        Some(path) => {
            fs::write(&path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            Ok(format!("{summary}\nwrote {}\n", path.display()))
        }
        None => {
            eprintln!("{summary}");
            Ok(text)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze {
            path,
            format,
            betti,
            max_enum,
            max_cut_enum,
            heuristic,
        } => {
            let options = AnalyzeOptions {
                betti,
                partition_guard: max_enum,
                cut_guard: max_cut_enum,
                heuristic,
            };
            let report = analyze(&read(&path)?, options)?;
            Ok(match Format::from(format) {
                Format::Text => report.render_text(),
                Format::Structured => to_structured(&report),
            })
        }
        Command::Gen { kind, out } => run_gen(kind, out),
        Command::Green2 { g1, g2, m, format } => green2(g1, g2, m, format.into()),
        Command::ValidateSheaf {
            curve,
            profile,
            format,
        } => validate_sheaf(&read(&curve)?, &read(&profile)?, format.into()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
