//! Command-line front end for `fibprod-core`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code: 0 success, 1 a checked mismatch, 2 usage or configuration error,
//! 3 environment error (missing b-file, network, uncertifiable sum).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod bfile;
pub mod commands;
pub mod config;
pub mod error;
pub mod oeis;
pub mod output;

pub use error::CliError;
pub use output::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OnOff {
    On,
    Off,
}

#[derive(Debug, Parser)]
#[command(
    name = "fibprod",
    version,
    about = "Exact generalized Fibonacci/Lucas products, identities and generating functions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Named (a, b) pair: fibonacci, pell, jacobsthal, or one from the config.
    #[arg(long, global = true)]
    pub profile: Option<String>,
    /// Recurrence coefficient a (integer or p/q); overrides the profile.
    #[arg(long = "a", global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Recurrence coefficient b (integer or p/q); overrides the profile.
    #[arg(long = "b", global = true, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Series order N (coefficients 0..=N).
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Decimal digits for numerical output.
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Allow downloading b-files from oeis.org.
    #[arg(long, global = true, value_enum)]
    pub fetch: Option<OnOff>,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Terms of a sequence: fib, lucas, harmonic, catalan, convolution,
    /// msec-fib:M:J, msec-lucas:M:J, hf:K, cf:K, hl:K, cl:K.
    Seq(SeqArgs),
    /// Coefficients of a closed-form generating function.
    Coeffs(CoeffsArgs),
    /// Check an identity family, the master convolution, a triangle
    /// identity, the Catalan functional equation or a generating function.
    Verify(VerifyArgs),
    /// Certified evaluation of sum w(n)S(n)x^n against its closed form.
    Sum(SumArgs),
    /// Compare computed sequences with OEIS b-files.
    Oeis(OeisArgs),
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    pub kind: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    pub to: i64,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// F, L, U1..U6, V1..V4, QF, QL, HF, CF, HL, CL.
    pub name: String,
    /// Shift (U6, V4) or offset (multisections).
    #[arg(long, default_value_t = 0)]
    pub j: u64,
    /// Stride for the multisections.
    #[arg(long, default_value_t = 1)]
    pub m: u64,
    /// Also build the series term by term and compare.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rational,
    Symbolic,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// addition, two-fold, doubling, johnson, multiple-angle, shift, master,
    /// convolution, triangle, functional-equation, or a generating function
    /// name as accepted by `coeffs`.
    pub name: String,
    /// Largest instance argument for the identity families.
    #[arg(long, default_value_t = 12)]
    pub max: i64,
    #[arg(long, value_enum, default_value_t = Mode::Rational)]
    pub mode: Mode,
    /// Master weight: one, fib, catalan, reciprocal. All four when absent.
    #[arg(long)]
    pub weight: Option<String>,
    /// Triangle: pascal, central-binomial-squared, eulerian.
    #[arg(long, default_value = "pascal")]
    pub triangle: String,
    #[arg(long, default_value_t = 3)]
    pub k_max: i64,
    #[arg(long, default_value_t = 3)]
    pub m_max: i64,
    #[arg(long, default_value_t = 24)]
    pub n_max: i64,
    /// Shift or offset, for generating functions.
    #[arg(long, default_value_t = 0)]
    pub j: u64,
    /// Stride, for generating functions.
    #[arg(long, default_value_t = 1)]
    pub m: u64,
    /// Add 1 to the right side of the first instance (tests the failure path).
    #[arg(long, hide = true)]
    pub perturb: bool,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    /// HF, CF, HL or CL.
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
}

#[derive(Debug, Args)]
pub struct OeisArgs {
    /// A-number, e.g. A000045.
    pub id: Option<String>,
    /// Check every known binding.
    #[arg(long, conflicts_with = "id")]
    pub all: bool,
    /// Number of leading b-file terms to compare.
    #[arg(long, default_value_t = 20)]
    pub prefix: usize,
    /// Read the b-file from this path instead of the bundled copy or cache.
    #[arg(long, requires = "id")]
    pub bfile: Option<PathBuf>,
    /// Test a custom binding (fib or lucas at the selected a, b) instead of
    /// the known ones.
    #[arg(long, requires = "id")]
    pub kind: Option<String>,
    /// With --kind: a(n) = S(n + shift).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub shift: i64,
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
