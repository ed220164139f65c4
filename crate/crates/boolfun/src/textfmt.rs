//! Line-oriented text formats for functions and restrictions.
//!
//! Functions: `truthtable n=<n> values=<v0,v1,...>` with 2^n comma-separated
//! reals, or `fourier n=<n> terms=<mask:coeff,...>` with hexadecimal masks.
//! Restrictions: `restriction alive=<hexmask> y=<hexmask>`.

use crate::error::{Error, Result};
use crate::fourier::FourierExpansion;
use crate::mask::{CoordSet, Point};
use crate::num::{fl, Scalar};
use crate::restriction::Restriction;
use crate::table::TruthTable;
use std::fmt::Write as _;

pub fn format_truth_table<F: Scalar>(t: &TruthTable<F>) -> String {
    let mut out = format!("truthtable n={} values=", t.n());
    for (i, v) in t.values().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v}");
    }
    out
}

pub fn format_fourier<F: Scalar>(f: &FourierExpansion<F>) -> String {
    let mut out = format!("fourier n={} terms=", f.n());
    for (i, (s, c)) in f.terms().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{s}:{c}");
    }
    out
}

/// Parses either function format into an expansion.
pub fn parse_function<F: Scalar>(line: &str) -> Result<FourierExpansion<F>> {
    let mut fields = line.split_whitespace();
    let kind = fields.next().unwrap_or("");
    let params = parse_fields(fields)?;
    let n: usize = require(&params, kind, "n")?
        .parse()
        .map_err(|_| Error::Parse("n must be an integer".into()))?;
    match kind {
        "truthtable" => {
            let raw = require(&params, kind, "values")?;
            let values = split_list(raw)
                .map(|v| parse_real::<F>(v))
                .collect::<Result<Vec<F>>>()?;
            Ok(FourierExpansion::from_truth_table(&TruthTable::new(n, values)?))
        }
        "fourier" => {
            let raw = require(&params, kind, "terms")?;
            let terms = split_list(raw)
                .map(|term| -> Result<(CoordSet, F)> {
                    let (mask, coeff) = term
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("expected mask:coeff, got {term:?}")))?;
                    Ok((mask.parse()?, parse_real::<F>(coeff)?))
                })
                .collect::<Result<Vec<_>>>()?;
            FourierExpansion::from_coeffs(n, terms)
        }
        other => Err(Error::Parse(format!(
            "unknown function format {other:?}, expected truthtable or fourier"
        ))),
    }
}

pub fn format_restriction(r: &Restriction) -> String {
    format!("restriction alive={} y={:x}", r.alive(), r.assignment().bits())
}

pub fn parse_restriction(line: &str) -> Result<Restriction> {
    let mut fields = line.split_whitespace();
    let kind = fields.next().unwrap_or("");
    if kind != "restriction" {
        return Err(Error::Parse(format!(
            "expected a restriction line, got {kind:?}"
        )));
    }
    let params = parse_fields(fields)?;
    let alive: CoordSet = require(&params, kind, "alive")?.parse()?;
    let y: CoordSet = require(&params, kind, "y")?.parse()?;
    Restriction::new(alive, Point::new(y.bits()))
}

fn parse_fields<'a>(
    fields: impl Iterator<Item = &'a str>,
) -> Result<Vec<(&'a str, &'a str)>> {
    fields
        .map(|field| {
            field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {field:?}")))
        })
        .collect()
}

fn require<'a>(params: &[(&'a str, &'a str)], kind: &str, key: &str) -> Result<&'a str> {
    params
        .iter()
        .find(|(k, _)| *k == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| Error::Parse(format!("{kind} line is missing {key}=")))
}

/// Empty payload means an empty list (the zero expansion has no terms).
fn split_list(raw: &str) -> impl Iterator<Item = &str> {
    raw.split(',').filter(|s| !s.is_empty())
}

fn parse_real<F: Scalar>(s: &str) -> Result<F> {
    s.trim()
        .parse::<f64>()
        .map(fl)
        .map_err(|_| Error::Parse(format!("bad real value {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_table_round_trip() {
        let t = TruthTable::new(2, vec![0.0, 1.0, 0.25, 0.5]).unwrap();
        let line = format_truth_table(&t);
        assert_eq!(line, "truthtable n=2 values=0,1,0.25,0.5");
        let f = parse_function::<f64>(&line).unwrap();
        assert_eq!(f, FourierExpansion::from_truth_table(&t));
    }

    #[test]
    fn fourier_round_trip() {
        let f = FourierExpansion::from_coeffs(
            3,
            [
                (CoordSet::EMPTY, 0.5),
                (CoordSet::single(2), 0.25),
                (CoordSet::from_coords([0, 1]), -0.125),
            ],
        )
        .unwrap();
        let line = format_fourier(&f);
        assert_eq!(line, "fourier n=3 terms=0:0.5,3:-0.125,4:0.25");
        assert_eq!(parse_function::<f64>(&line).unwrap(), f);
    }

    #[test]
    fn zero_expansion_has_empty_terms() {
        let z = FourierExpansion::<f64>::zero(2);
        let line = format_fourier(&z);
        assert_eq!(line, "fourier n=2 terms=");
        assert_eq!(parse_function::<f64>(&line).unwrap(), z);
    }

    #[test]
    fn restriction_round_trip() {
        let r = Restriction::new(CoordSet::from_coords([0, 3]), Point::new(0b0110)).unwrap();
        let line = format_restriction(&r);
        assert_eq!(line, "restriction alive=9 y=6");
        let back = parse_restriction(&line).unwrap();
        assert_eq!(back.alive(), r.alive());
        assert_eq!(back.assignment(), r.assignment());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_function::<f64>("").is_err());
        assert!(parse_function::<f64>("polynomial n=2 terms=0:1").is_err());
        assert!(parse_function::<f64>("truthtable n=2 values=0,1").is_err());
        assert!(parse_function::<f64>("truthtable values=0,1").is_err());
        assert!(parse_function::<f64>("fourier n=2 terms=0-1").is_err());
        assert!(parse_function::<f64>("fourier n=1 terms=7:0.5").is_err());
        assert!(parse_restriction("restriction alive=3").is_err());
        // Overlapping alive and assigned bits.
        assert!(parse_restriction("restriction alive=3 y=1").is_err());
    }

    #[test]
    fn accepts_0x_masks() {
        let f = parse_function::<f64>("fourier n=5 terms=0x10:1").unwrap();
        assert_eq!(f.coefficient(CoordSet::single(4)), 1.0);
    }
}
