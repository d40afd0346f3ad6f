use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod job;
mod table;

use job::{Command, Flags, JobSpec};

/// Combinatorial tropicalization: Kato fans, tropical fans, compactifications
/// and link cohomology.
#[derive(Parser)]
#[command(name = "logtrop", version)]
struct Cli {
    /// Write `<command>.json` and `<command>.txt` into this directory instead
    /// of printing JSON to stdout.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Spectrum of a toric monoid given by cone generators, as a Kato fan.
    Spec { input: PathBuf },
    /// Cone complex of a Kato fan (or of the spectrum of a monoid).
    ConeComplex { input: PathBuf },
    /// Tropical hypersurfaces, prevarieties and restrictions to fans.
    #[command(subcommand)]
    Trop(TropSub),
    /// Properness of the closure in the toric variety of a subfan.
    CheckProper {
        #[arg(long)]
        trop: PathBuf,
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        complete: PathBuf,
        #[command(flatten)]
        opts: TropArgs,
    },
    /// Expected dimensions of intersections with strata.
    CheckDims {
        #[arg(long)]
        trop: PathBuf,
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        dim_y: usize,
        #[command(flatten)]
        opts: TropArgs,
    },
    /// Builds a tropical compactification fan.
    Compactify {
        #[arg(long)]
        trop: PathBuf,
        /// Complete fan to refine; defaults to the fan of (P^1)^n.
        #[arg(long)]
        complete: Option<PathBuf>,
        #[command(flatten)]
        opts: TropArgs,
    },
    /// Link of a fan or of the cone complex of a Kato fan.
    Link {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Reduced rational cohomology of a simplicial complex.
    Cohomology {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Supports → tropical fan → compactification → link → cohomology.
    Pipeline {
        #[arg(long)]
        trop: PathBuf,
        #[arg(long)]
        complete: Option<PathBuf>,
        #[arg(long)]
        dim_y: Option<usize>,
        #[command(flatten)]
        opts: TropArgs,
    },
}

#[derive(Subcommand)]
enum TropSub {
    Hypersurface {
        input: PathBuf,
        #[arg(long)]
        dim_y: Option<usize>,
        #[command(flatten)]
        opts: TropArgs,
    },
    Prevariety {
        input: PathBuf,
        #[arg(long)]
        dim_y: Option<usize>,
        #[command(flatten)]
        opts: TropArgs,
    },
    Restrict {
        #[arg(long)]
        trop: PathBuf,
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        dim_y: Option<usize>,
        #[command(flatten)]
        opts: TropArgs,
    },
}

#[derive(Args, Clone, Copy, Default)]
struct TropArgs {
    /// Assert that the supports form a tropical basis.
    #[arg(long)]
    tropical_basis: bool,
    /// Quotient by the lineality space of the tie locus instead of failing.
    #[arg(long)]
    quotient_lineality: bool,
}

impl From<TropArgs> for Flags {
    fn from(a: TropArgs) -> Flags {
        Flags {
            tropical_basis: a.tropical_basis,
            quotient_lineality: a.quotient_lineality,
            dim_y: None,
        }
    }
}

fn with_dim(opts: TropArgs, dim_y: Option<usize>) -> Flags {
    Flags {
        dim_y,
        ..opts.into()
    }
}

fn job(cli: Cli) -> JobSpec {
    let (command, inputs, flags): (Command, Vec<(&str, PathBuf)>, Flags) = match cli.command {
        Sub::Spec { input } => (Command::Spec, vec![("monoid", input)], Flags::default()),
        Sub::ConeComplex { input } => (
            Command::ConeComplex,
            vec![("kato_fan", input)],
            Flags::default(),
        ),
        Sub::Trop(TropSub::Hypersurface { input, dim_y, opts }) => (
            Command::TropHypersurface,
            vec![("supports", input)],
            with_dim(opts, dim_y),
        ),
        Sub::Trop(TropSub::Prevariety { input, dim_y, opts }) => (
            Command::TropPrevariety,
            vec![("supports", input)],
            with_dim(opts, dim_y),
        ),
        Sub::Trop(TropSub::Restrict {
            trop,
            fan,
            dim_y,
            opts,
        }) => (
            Command::TropRestrict,
            vec![("trop", trop), ("fan", fan)],
            with_dim(opts, dim_y),
        ),
        Sub::CheckProper {
            trop,
            fan,
            complete,
            opts,
        } => (
            Command::CheckProper,
            vec![("trop", trop), ("fan", fan), ("complete", complete)],
            opts.into(),
        ),
        Sub::CheckDims {
            trop,
            fan,
            dim_y,
            opts,
        } => (
            Command::CheckDims,
            vec![("trop", trop), ("fan", fan)],
            with_dim(opts, Some(dim_y)),
        ),
        Sub::Compactify {
            trop,
            complete,
            opts,
        } => {
            let mut inputs = vec![("trop", trop)];
            inputs.extend(complete.map(|c| ("complete", c)));
            (Command::Compactify, inputs, opts.into())
        }
        Sub::Link { fan } => (Command::Link, vec![("fan", fan)], Flags::default()),
        Sub::Cohomology { complex } => (
            Command::Cohomology,
            vec![("complex", complex)],
            Flags::default(),
        ),
        Sub::Pipeline {
            trop,
            complete,
            dim_y,
            opts,
        } => {
            let mut inputs = vec![("trop", trop)];
            inputs.extend(complete.map(|c| ("complete", c)));
            (Command::Pipeline, inputs, with_dim(opts, dim_y))
        }
    };
    JobSpec {
        command,
        inputs: inputs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        flags,
        out: cli.out,
    }
}

fn main() -> ExitCode {
    let spec = job(Cli::parse());
    match job::run(&spec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("logtrop: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
