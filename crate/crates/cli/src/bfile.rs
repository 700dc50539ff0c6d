//! OEIS b-files: lines of `<index> <value>`, `#` comments, blank lines.

use std::fmt;
use std::path::PathBuf;

use num_bigint::BigInt;

/// Where a b-file came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Bundled,
    Cached(PathBuf),
    Fetched(PathBuf),
    Local(PathBuf),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Bundled => f.write_str("bundled"),
            Source::Cached(p) => write!(f, "cache:{}", p.display()),
            Source::Fetched(p) => write!(f, "fetched:{}", p.display()),
            Source::Local(p) => write!(f, "local:{}", p.display()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub id: String,
    pub entries: Vec<(i64, BigInt)>,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// `A` followed by exactly six digits.
pub fn is_sequence_id(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|c| c.is_ascii_digit())
}

/// File name OEIS uses for the b-file of `id`, e.g. `b000045.txt`.
pub fn file_name(id: &str) -> String {
    format!("b{}.txt", &id[1..])
}

pub fn parse(id: &str, text: &str, source: Source) -> Result<BFile, ParseError> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw).trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| ParseError { line: line_no, message };
        let mut fields = line.split_whitespace();
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected `<index> <value>`, found `{line}`")));
        };
        let idx: i64 = idx.parse().map_err(|_| err(format!("bad index `{idx}`")))?;
        let val: BigInt = val.parse().map_err(|_| err(format!("bad value `{val}`")))?;
        if let Some(&(prev, _)) = entries.last() {
            if idx <= prev {
                return Err(err(format!("index {idx} does not increase (previous {prev})")));
            }
        }
        entries.push((idx, val));
    }
    Ok(BFile { id: id.to_string(), entries, source })
}
