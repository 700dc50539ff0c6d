//! Bindings from OEIS A-numbers to computed sequences, b-file lookup and
//! comparison.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use fibprod_core::numerics::rat;
use fibprod_core::sequences::{catalan, harmonic};
use fibprod_core::{FibTable, Rational, SequenceParams};
use num_bigint::BigInt;

use crate::bfile::{self, BFile, Source};
use crate::error::CliError;

/// What an OEIS entry is hypothesized to contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Fib,
    Lucas,
    /// Numerators of `H(n)·F(n)` in lowest terms.
    HarmonicFibNumerator,
    /// `C(n)·F(n)`.
    CatalanFib,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Fib => "F",
            Target::Lucas => "L",
            Target::HarmonicFibNumerator => "numerator(H*F)",
            Target::CatalanFib => "C*F",
        })
    }
}

/// `a(n) = target(n + shift)` at parameters `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub id: String,
    pub target: Target,
    pub a: Rational,
    pub b: Rational,
    pub shift: i64,
}

impl Binding {
    fn table(id: &str, target: Target, a: i64, b: i64, shift: i64) -> Self {
        Self { id: id.into(), target, a: rat(a), b: rat(b), shift }
    }

    pub fn params(&self) -> Result<SequenceParams, CliError> {
        SequenceParams::new(self.a.clone(), self.b.clone()).map_err(CliError::from)
    }

    /// The integers the b-file should contain, for OEIS indices in `indices`.
    pub fn expected(&self, indices: &[i64]) -> Result<Vec<Option<BigInt>>, CliError> {
        let t = FibTable::new(self.params()?);
        Ok(indices
            .iter()
            .map(|&n| {
                let k = n + self.shift;
                let v = match self.target {
                    Target::Fib => t.fib(k),
                    Target::Lucas => t.lucas(k),
                    Target::HarmonicFibNumerator | Target::CatalanFib if k < 0 => return None,
                    Target::HarmonicFibNumerator => {
                        let v = harmonic(k as u64) * t.fib(k);
                        Rational::from_integer(v.numer().clone())
                    }
                    Target::CatalanFib => Rational::from_integer(catalan(k as u64)) * t.fib(k),
                };
                v.is_integer().then(|| v.to_integer())
            })
            .collect())
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}(a={}, b={})", self.id, self.target, self.a, self.b)?;
        if self.shift != 0 {
            write!(f, " shifted by {}", self.shift)?;
        }
        Ok(())
    }
}

/// Every generalized Fibonacci/Lucas entry with its `(a, b)` and index
/// shift, in table order. A086902 appears twice: it is listed for both
/// `(7, 1)` and `(8, 1)`.
pub fn table_bindings() -> Vec<Binding> {
    use Target::{Fib, Lucas};
    let rows: [(i64, i64, &str, i64, &str); 15] = [
        (1, 1, "A000045", 0, "A000032"),
        (2, 1, "A000129", 0, "A002203"),
        (3, 1, "A006190", 0, "A006497"),
        (4, 1, "A001076", 0, "A014448"),
        (5, 1, "A052918", 1, "A087130"),
        (6, 1, "A005668", 0, "A085447"),
        (7, 1, "A054413", 1, "A086902"),
        (8, 1, "A041025", 1, "A086902"),
        (9, 1, "A099371", 0, "A087798"),
        (1, 2, "A001045", 0, "A014551"),
        (1, 3, "A006130", 0, "A075118"),
        (2, 2, "A002605", 0, "A080040"),
        (2, 3, "A015518", 0, "A102345"),
        (3, 2, "A007482", 1, "A206776"),
        (3, 3, "A030195", 0, "A172012"),
    ];
    let mut out = Vec::new();
    for (a, b, f, shift, l) in rows {
        out.push(Binding::table(f, Fib, a, b, shift));
        out.push(Binding::table(l, Lucas, a, b, 0));
    }
    // sequences behind the multisection examples
    out.push(Binding::table("A010892", Fib, 1, -1, 1));
    out.push(Binding::table("A002249", Lucas, 1, -2, 0));
    out
}

/// Entries for the harmonic and Catalan products whose OEIS encoding is not
/// known here; each binding is a hypothesis to be confirmed against real data.
pub fn product_bindings() -> Vec<Binding> {
    vec![
        Binding::table("A372199", Target::HarmonicFibNumerator, 1, 1, 0),
        Binding::table("A372210", Target::HarmonicFibNumerator, 2, 1, 0),
        Binding::table("A119694", Target::CatalanFib, 1, 1, 0),
        Binding::table("A372216", Target::CatalanFib, 2, 1, 0),
    ]
}

pub fn bindings_for(id: &str) -> Vec<Binding> {
    table_bindings().into_iter().chain(product_bindings()).filter(|b| b.id == id).collect()
}

macro_rules! bundled_files {
    ($($id:literal),* $(,)?) => {
        &[$(($id, include_str!(concat!("../fixtures/bfiles/b", $id, ".txt")))),*]
    };
}

static BUNDLED: &[(&str, &str)] = bundled_files![
    "000045", "000032", "000129", "002203", "006190", "006497", "001076", "014448", "052918", "087130", "005668",
    "085447", "054413", "086902", "041025", "099371", "087798", "001045", "014551", "006130", "075118", "002605",
    "080040", "015518", "102345", "007482", "206776", "030195", "172012", "010892", "002249",
];

pub fn bundled(id: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(k, _)| id.get(1..) == Some(*k)).map(|(_, t)| *t)
}

/// How to find b-files.
#[derive(Clone, Debug)]
pub struct Resolver {
    pub fetch: bool,
    pub cache_dir: PathBuf,
    pub local: Option<PathBuf>,
}

fn parse_err(id: &str, src: &Source, e: bfile::ParseError) -> CliError {
    CliError::Usage(format!("malformed b-file for {id} ({src}): {e}"))
}

impl Resolver {
    /// Lookup order: an explicit local file; then, with fetch off, the
    /// bundled copy and the cache; with fetch on, the cache and then the
    /// network, so real data replaces the bundled copies.
    pub fn resolve(&self, id: &str) -> Result<BFile, CliError> {
        if !bfile::is_sequence_id(id) {
            return Err(CliError::Usage(format!("`{id}` is not an A-number (A followed by six digits)")));
        }
        if let Some(path) = &self.local {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Environment(format!("cannot read {}: {e}", path.display())))?;
            let src = Source::Local(path.clone());
            return bfile::parse(id, &text, src.clone()).map_err(|e| parse_err(id, &src, e));
        }
        let cached = self.cache_dir.join(bfile::file_name(id));
        if !self.fetch {
            if let Some(text) = bundled(id) {
                return bfile::parse(id, text, Source::Bundled).map_err(|e| parse_err(id, &Source::Bundled, e));
            }
        }
        if cached.is_file() {
            let text = std::fs::read_to_string(&cached)
                .map_err(|e| CliError::Environment(format!("cannot read {}: {e}", cached.display())))?;
            let src = Source::Cached(cached.clone());
            return bfile::parse(id, &text, src.clone()).map_err(|e| parse_err(id, &src, e));
        }
        if !self.fetch {
            return Err(CliError::Environment(format!(
                "no b-file for {id}: not bundled and not in {}; rerun with --fetch on, or pass --bfile PATH",
                self.cache_dir.display()
            )));
        }
        let text = fetch(id)?;
        // parse before caching so a bad download never lands in the cache
        let src = Source::Fetched(cached.clone());
        let parsed = bfile::parse(id, &text, src.clone()).map_err(|e| parse_err(id, &src, e))?;
        store_atomically(&self.cache_dir, &cached, &text)?;
        Ok(parsed)
    }
}

fn fetch(id: &str) -> Result<String, CliError> {
    let url = format!("https://oeis.org/{id}/{}", bfile::file_name(id));
    let agent: ureq::Agent = ureq::Agent::config_builder().timeout_global(Some(Duration::from_secs(30))).build().into();
    let env = |e: ureq::Error| CliError::Environment(format!("fetching {url}: {e}"));
    agent.get(&url).call().map_err(env)?.body_mut().read_to_string().map_err(env)
}

/// Writes `target` through a temporary file in the same directory and a
/// rename, so readers never see a partial file.
pub fn store_atomically(dir: &Path, target: &Path, text: &str) -> Result<(), CliError> {
    let env = |e: std::io::Error| CliError::Environment(format!("writing {}: {e}", target.display()));
    std::fs::create_dir_all(dir).map_err(env)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(env)?;
    tmp.write_all(text.as_bytes()).map_err(env)?;
    tmp.as_file().sync_all().map_err(env)?;
    tmp.persist(target).map_err(|e| env(e.error))?;
    Ok(())
}

/// Result of comparing one binding against a b-file prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Match,
    Mismatch { index: i64, expected: Option<BigInt>, found: BigInt },
    TooShort { available: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    pub binding: Binding,
    pub source: Source,
    pub compared: usize,
    pub outcome: Outcome,
}

impl MatchReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Match
    }
}

impl fmt::Display for MatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: ", self.binding, self.source)?;
        match &self.outcome {
            Outcome::Match => write!(f, "match ({} terms)", self.compared),
            Outcome::Mismatch { index, expected, found } => {
                let exp = expected.as_ref().map_or("non-integer".to_string(), |e| e.to_string());
                write!(f, "MISMATCH at index {index}: b-file has {found}, computed {exp}")
            }
            Outcome::TooShort { available } => {
                write!(f, "TOO SHORT: b-file has {available} terms, need {}", self.compared)
            }
        }
    }
}

/// Compares the first `prefix` b-file entries with the binding.
pub fn compare(b: &BFile, binding: &Binding, prefix: usize) -> Result<MatchReport, CliError> {
    let entries = &b.entries[..prefix.min(b.entries.len())];
    let report =
        |compared, outcome| MatchReport { binding: binding.clone(), source: b.source.clone(), compared, outcome };
    if entries.len() < prefix {
        return Ok(report(prefix, Outcome::TooShort { available: entries.len() }));
    }
    let indices: Vec<i64> = entries.iter().map(|(n, _)| *n).collect();
    let expected = binding.expected(&indices)?;
    for ((n, found), exp) in entries.iter().zip(expected) {
        if exp.as_ref() != Some(found) {
            return Ok(report(prefix, Outcome::Mismatch { index: *n, expected: exp, found: found.clone() }));
        }
    }
    Ok(report(prefix, Outcome::Match))
}
