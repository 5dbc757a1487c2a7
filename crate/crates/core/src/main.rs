use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rank_spectra::harness::{self, ExperimentConfig};
use rank_spectra::lsd::{BaseLaw, LawModel};
use rank_spectra::moments::estimate_conditions;
use rank_spectra::spectra::{ks_distance, SpectralSample};
use rank_spectra::{Error, Result};

const DEFAULT_REPS: usize = 2000;

#[derive(Parser)]
#[command(
    name = "rank-spectra",
    version,
    about = "Spectra of rank-based dependency matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LawKind {
    Mp,
    Semicircle,
}

#[derive(clap::Args)]
struct LawArgs {
    #[arg(long, value_enum)]
    law: LawKind,
    /// Aspect ratio of the Marčenko–Pastur law.
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    scale: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    shift: f64,
}

impl LawArgs {
    fn model(&self) -> Result<LawModel> {
        let base = match self.law {
            LawKind::Semicircle => BaseLaw::Semicircle,
            LawKind::Mp => BaseLaw::MarcenkoPastur {
                gamma: self
                    .gamma
                    .ok_or_else(|| Error::Config("--gamma is required for --law mp".into()))?,
            },
        };
        LawModel::new(base, self.scale, self.shift).map_err(|e| Error::Config(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write result.json, eigs.csv, hist.csv, law.csv.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate the density of a limiting law as CSV.
    Density {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        lo: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        hi: Option<f64>,
        #[arg(long, default_value_t = 401)]
        points: usize,
    },
    /// Print the Kolmogorov–Smirnov distance between eigenvalues and a law.
    Distance {
        #[arg(long)]
        eigs: PathBuf,
        #[command(flatten)]
        law: LawArgs,
    },
    /// Monte Carlo moment conditions of the rows in a config, as JSON.
    CheckMoments {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        reps: Option<usize>,
    },
    /// Column-wise fractional ranks of a CSV table.
    Ranks {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn open(path: &PathBuf) -> Result<File> {
    File::open(path).map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let result = harness::run(&cfg)?;
            harness::emit(&result, &out)?;
            println!(
                "ks={} law={} out={}",
                result.ks,
                result.reference_law.label,
                out.display()
            );
        }
        Command::Density {
            law,
            out,
            lo,
            hi,
            points,
        } => {
            let model = law.model()?;
            let (slo, shi) = model.support();
            let pad = 0.05 * (shi - slo);
            let csv = harness::law_csv(
                &model,
                lo.unwrap_or(slo - pad),
                hi.unwrap_or(shi + pad),
                points,
            )?;
            harness::write_atomic(&out, csv.as_bytes())?;
        }
        Command::Distance { eigs, law } => {
            let model = law.model()?;
            let values = harness::read_eigs_csv(open(&eigs)?)?;
            let n = values.len();
            println!("{}", ks_distance(&SpectralSample::new(values, n)?, &model));
        }
        Command::CheckMoments { config, reps } => {
            let cfg = ExperimentConfig::load(&config)?;
            let builder = cfg.matrix_kind.row_builder().ok_or_else(|| {
                Error::Config("check-moments needs a unit-sphere matrix kind".into())
            })?;
            let reps = reps.or(cfg.reps).unwrap_or(DEFAULT_REPS);
            let report =
                estimate_conditions(builder, &cfg.row_pattern()?, cfg.p, cfg.n, reps, cfg.seed)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Ranks { input } => {
            print!("{}", harness::rank_columns_csv(open(&input)?)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
