mod commands;
mod render;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "endohecke", version, about = "Endoscopic blocks, monodromic Hecke algebras and Soergel bimodules")]
pub struct Cli {
    /// Root datum: a JSON file or a shipped fixture name (sl2, sp4, a1a1).
    #[arg(long, global = true)]
    pub datum: Option<String>,
    /// Torus character as comma-separated rationals in [0,1).
    #[arg(long = "char", global = true)]
    pub character: Option<String>,
    #[arg(long, global = true, default_value_t = 3)]
    pub bound: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Endoscopic root datum and its affine simple reflections.
    Endoscope,
    /// Blocks with minimal elements and member counts per length.
    Blocks,
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Randomized gauge-recovery trials on the cover graph of W̃°_L.
    Gauge {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Bott-Samelson bimodule of a word in S_H and its checks.
    Soergel {
        /// Comma-separated generator names, e.g. s3,s1.
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = SoergelCheck::All)]
        check: SoergelCheck,
    },
    /// Runs the acceptance suite; pinned fixtures unless a datum is given.
    VerifyAll,
    /// JSON dump of a library object.
    Dump {
        #[arg(value_enum)]
        object: DumpObject,
        /// Truncation length for theta vectors.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Comma-separated generator names for Hecke elements and bimodules.
        #[arg(long)]
        word: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum HeckeCmd {
    /// Compares the neutral block against the Hecke algebra of W̃_H.
    Verify,
    /// Kazhdan-Lusztig data up to the bound.
    Kl {
        #[arg(long, value_enum, default_value_t = Side::H)]
        side: Side,
    },
    /// Theta vectors of every block.
    Theta {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    #[value(name = "H", alias = "h")]
    H,
    Mono,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SoergelCheck {
    All,
    Ranks,
    Split,
    Adjunction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DumpObject {
    Blocks,
    Theta,
    Hecke,
    Bimodule,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", render::render(&out.value, cli.format)) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::from(out.code),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
