//! Rendering of exact values.
//!
//! Plain output writes a rational as `p/q`, or `p` when `q = 1`. Structured
//! output is one JSON document per command, with every rational as
//! `{"num": "...", "den": "..."}` (strings, so no precision is lost).

use fibprod_core::Rational;
use num_traits::One;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Structured,
}

pub fn plain(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn structured(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

/// Rows of `n value` as written by plain `seq` and `coeffs`.
pub fn plain_rows(rows: &[(i64, Rational)]) -> String {
    rows.iter().map(|(n, v)| format!("{n} {}\n", plain(v))).collect()
}

pub fn structured_rows(rows: &[(i64, Rational)]) -> Value {
    Value::Array(rows.iter().map(|(n, v)| json!({ "n": n, "value": structured(v) })).collect())
}

/// Reads back [`plain_rows`] output.
pub fn parse_plain_rows(text: &str) -> Result<Vec<(i64, Rational)>, String> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            let mut it = l.split_whitespace();
            match (it.next(), it.next(), it.next()) {
                (Some(n), Some(v), None) => {
                    let n = n.parse().map_err(|_| format!("row {}: bad index `{n}`", i + 1))?;
                    let v = v.parse().map_err(|_| format!("row {}: bad value `{v}`", i + 1))?;
                    Ok((n, v))
                }
                _ => Err(format!("row {}: expected `n value`", i + 1)),
            }
        })
        .collect()
}

/// Reads back one [`structured`] value.
pub fn parse_structured(v: &Value) -> Option<Rational> {
    let num = v.get("num")?.as_str()?.parse().ok()?;
    let den = v.get("den")?.as_str()?.parse().ok()?;
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fibprod_core::numerics::{frac, rat};

    #[test]
    fn integers_and_fractions() {
        assert_eq!(plain(&rat(-7)), "-7");
        assert_eq!(plain(&frac(11, 6)), "11/6");
        assert_eq!(plain(&frac(-4, 6)), "-2/3");
        let v = structured(&frac(-2, 3));
        assert_eq!(v, json!({"num": "-2", "den": "3"}));
        assert_eq!(parse_structured(&v), Some(frac(-2, 3)));
    }

    #[test]
    fn rows_round_trip() {
        let rows = vec![(0, rat(0)), (1, rat(1)), (2, frac(3, 2)), (3, frac(-11, 6))];
        assert_eq!(parse_plain_rows(&plain_rows(&rows)).unwrap(), rows);
    }
}
