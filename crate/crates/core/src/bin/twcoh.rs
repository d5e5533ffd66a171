use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twisted_cohomology::commands::{
    execute, exit_code, parse_covector, parse_lambda_grid, render, AlgebraSource, Command, Format, Request,
};
use twisted_cohomology::{Covector, Rational};

/// Exact twisted cohomology of Lie algebras.
#[derive(Parser)]
#[command(name = "twcoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Source {
    /// Algebra specification (JSON).
    #[arg(long, conflicts_with = "zoo", required_unless_present = "zoo")]
    algebra: Option<PathBuf>,
    /// Built-in example: torus, heisenberg, v_family, g0, diag_example.
    #[arg(long)]
    zoo: Option<String>,
    /// Size parameter for parametric examples.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Jacobi identity, classification and unimodularity.
    Check(Source),
    /// Betti numbers of the twisted complex.
    Betti {
        #[command(flatten)]
        source: Source,
        /// Closed 1-form, comma-separated dual coordinates.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
    },
    /// Spectra of adX* on the cohomology of ker omega.
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    /// Weights of a triangular basis.
    Weights(Source),
    /// Sums of weights and the certified nonvanishing part.
    OmegaSet(Source),
    /// All rational lambda with nonzero cohomology on the omega-line.
    NontrivialSet {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    /// Compare Betti numbers with the kernel dimensions of adX* + lambda.
    LesVerify {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// Integer range `a..b` or a comma list.
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        lambda_grid: String,
    },
    /// Generic-lambda Betti numbers and the exceptional lambdas.
    Novikov {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
}

fn form(text: &str) -> twisted_cohomology::Result<Covector> {
    parse_covector(text)
}

fn scalar(text: &str) -> twisted_cohomology::Result<Rational> {
    text.parse()
        .map_err(|e| twisted_cohomology::Error::InvalidForm(format!("lambda `{text}`: {e}")))
}

fn request(cmd: Cmd) -> twisted_cohomology::Result<(Request, Format)> {
    let (source, command) = match cmd {
        Cmd::Check(s) => (s, Command::Check),
        Cmd::Betti { source, omega, lambda } => {
            let omega = omega.as_deref().map(form).transpose()?;
            (source, Command::Betti { omega, lambda: scalar(&lambda)? })
        }
        Cmd::Spectrum { source, omega } => (source, Command::Spectrum { omega: form(&omega)? }),
        Cmd::Weights(s) => (s, Command::Weights),
        Cmd::OmegaSet(s) => (s, Command::OmegaSet),
        Cmd::NontrivialSet { source, omega } => (source, Command::NontrivialSet { omega: form(&omega)? }),
        Cmd::LesVerify { source, omega, lambda_grid } => (
            source,
            Command::LesVerify {
                omega: form(&omega)?,
                lambdas: parse_lambda_grid(&lambda_grid)?,
            },
        ),
        Cmd::Novikov { source, omega } => (source, Command::Novikov { omega: form(&omega)? }),
    };
    let format = match source.format {
        OutputFormat::Table => Format::Table,
        OutputFormat::Json => Format::Json,
    };
    let source = match (source.algebra, source.zoo) {
        (Some(path), _) => AlgebraSource::File(path),
        (None, Some(name)) => AlgebraSource::Zoo { name, n: source.n },
        (None, None) => unreachable!("clap requires one source"),
    };
    Ok((Request { source, command }, format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = request(cli.command).and_then(|(req, format)| Ok((execute(&req)?, format)));
    match outcome {
        Ok((doc, format)) => {
            print!("{}", render(&doc, format));
            if format == Format::Json {
                println!();
            }
            ExitCode::from(doc.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
