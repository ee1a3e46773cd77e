mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncalg::exactnum::factor::DEFAULT_SEED;
use ncalg::exactnum::Field;

use commands::{AnalyzeOptions, AzumayaOptions, CenterOptions, DerivationOptions};
use report::{assemble, Failure, Input, Outcome};

/// Exact computations with finite-dimensional algebras, path algebras and orders.
#[derive(Parser)]
#[command(name = "ncalg", version)]
struct Cli {
    /// Seed for randomized subroutines.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the structured JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Center of a quiver path algebra or of an algebra file.
    Center {
        input: PathBuf,
        /// Brute-force basis in every degree up to D.
        #[arg(long, value_name = "D")]
        degree: Option<usize>,
        #[arg(long)]
        closed_form: bool,
        #[arg(long, default_value = "QQ")]
        field: String,
    },
    /// Radical, central idempotents and units of an algebra file.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        radical: bool,
        #[arg(long)]
        idempotents: bool,
        /// Test which `1 + t*b` are units of A[t].
        #[arg(long)]
        units_probe: bool,
        #[arg(long, default_value_t = ncalg::algebra::idempotents::DEFAULT_IDEMPOTENT_CAP)]
        idempotent_cap: usize,
    },
    /// Discriminant, non-Azumaya polynomial and fiber checks of an order file.
    Azumaya {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        sample_points: Vec<String>,
        #[arg(long, value_name = "N")]
        extension_check: Option<usize>,
        /// Random non-roots checked alongside the roots.
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Verify a homomorphism witness and its retraction and detectability properties.
    Witness {
        input: PathBuf,
        #[arg(long, default_value_t = 4, value_name = "L")]
        detect_bound: usize,
    },
    /// Check a derivation family; exponentiate it or compute ML relative to it.
    Derivation {
        input: PathBuf,
        #[arg(long)]
        exp: bool,
        #[arg(long)]
        ml_family: bool,
        /// Variable adjoined by exp and Hasse-Schmidt automorphisms.
        #[arg(long, default_value = "t")]
        var: String,
        /// Directory receiving one witness file per exponentiated derivation.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Growth class and path counts of a quiver.
    Growth {
        input: PathBuf,
        #[arg(long, default_value_t = 10, value_name = "D")]
        degree: usize,
        #[arg(long, default_value_t = 24)]
        probe_depth: usize,
    },
}

fn run(cli: &Cli, argv: &[String]) -> Result<i32, Failure> {
    let (input, outcome): (Input, Outcome) = match &cli.command {
        Command::Center {
            input,
            degree,
            closed_form,
            field,
        } => {
            let i = Input::read(input)?;
            let opts = CenterOptions {
                degree: *degree,
                closed_form: *closed_form,
                field: Field::parse_tag(field)?,
            };
            let o = commands::center(&i, &opts)?;
            (i, o)
        }
        Command::Analyze {
            input,
            radical,
            idempotents,
            units_probe,
            idempotent_cap,
        } => {
            let i = Input::read(input)?;
            let opts = AnalyzeOptions {
                radical: *radical,
                idempotents: *idempotents,
                units_probe: *units_probe,
                cap: *idempotent_cap,
                seed: cli.seed,
            };
            let o = commands::analyze(&i, &opts)?;
            (i, o)
        }
        Command::Azumaya {
            input,
            sample_points,
            extension_check,
            samples,
        } => {
            let i = Input::read(input)?;
            let opts = AzumayaOptions {
                sample_points: sample_points.clone(),
                extension_check: *extension_check,
                samples: *samples,
                seed: cli.seed,
            };
            let o = commands::azumaya(&i, &opts)?;
            (i, o)
        }
        Command::Witness { input, detect_bound } => {
            let i = Input::read(input)?;
            let o = commands::witness(&i, *detect_bound)?;
            (i, o)
        }
        Command::Derivation {
            input,
            exp,
            ml_family,
            var,
            witness_out,
        } => {
            let i = Input::read(input)?;
            let opts = DerivationOptions {
                exp: *exp,
                ml_family: *ml_family,
                var: var.clone(),
                witness_out: witness_out.as_deref(),
            };
            let o = commands::derivation(&i, &opts)?;
            (i, o)
        }
        Command::Growth {
            input,
            degree,
            probe_depth,
        } => {
            let i = Input::read(input)?;
            let o = commands::growth(&i, *degree, *probe_depth)?;
            (i, o)
        }
    };
    for line in &outcome.summary {
        println!("{line}");
    }
    if let Some(path) = &cli.out {
        let report = assemble(argv, &[&input], &outcome);
        let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
        std::fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let status = match run(&cli, &argv) {
        Ok(s) => s,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.status
        }
    };
    ExitCode::from(status as u8)
}
