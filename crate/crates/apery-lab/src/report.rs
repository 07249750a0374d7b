//! Machine-readable verification rows.
//!
//! Every check anywhere in the crate flattens to the same record: claim id,
//! evaluation point, canonical parameter strings, modulus, both sides, and a
//! pass flag. Rows serialize to JSONL and CSV; both encodings round-trip to
//! the identical record, and rows sort by (claim, point, params) so report
//! files are byte-stable across runs and worker counts.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, BigRational, Residue};
use crate::error::{Error, Result};

/// One verified instance of a claim: both sides rendered exactly.
///
/// `lhs`/`rhs` are decimal residue strings (canonical in `0..p^e`) or
/// `num/den` rationals when `modulus` is `"exact"`; equality of the strings
/// is equality in the stated structure. `us` is elapsed microseconds and is
/// 0 unless timing capture was requested, keeping default output
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub point: u64,
    pub params: BTreeMap<String, String>,
    pub modulus: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub us: u64,
}

impl ClaimReport {
    /// Row from two residues of the same modulus.
    pub fn from_residues(
        claim: &str,
        point: u64,
        params: BTreeMap<String, String>,
        lhs: &Residue,
        rhs: &Residue,
    ) -> ClaimReport {
        assert_eq!(
            lhs.modulus(),
            rhs.modulus(),
            "claim {claim} compared residues of different moduli"
        );
        ClaimReport {
            claim: claim.to_string(),
            point,
            params,
            modulus: lhs.modulus().to_string(),
            lhs: lhs.value().to_string(),
            rhs: rhs.value().to_string(),
            pass: lhs.value() == rhs.value(),
            us: 0,
        }
    }

    /// Row comparing two exact rationals.
    pub fn from_exact(
        claim: &str,
        point: u64,
        params: BTreeMap<String, String>,
        lhs: &BigRational,
        rhs: &BigRational,
    ) -> ClaimReport {
        ClaimReport {
            claim: claim.to_string(),
            point,
            params,
            modulus: "exact".to_string(),
            lhs: format_rational(lhs),
            rhs: format_rational(rhs),
            pass: lhs == rhs,
            us: 0,
        }
    }

    /// Row from pre-rendered strings (structural checks, search results).
    pub fn from_strings(
        claim: &str,
        point: u64,
        params: BTreeMap<String, String>,
        modulus: &str,
        lhs: String,
        rhs: String,
    ) -> ClaimReport {
        let pass = lhs == rhs;
        ClaimReport {
            claim: claim.to_string(),
            point,
            params,
            modulus: modulus.to_string(),
            lhs,
            rhs,
            pass,
            us: 0,
        }
    }

    /// `k=v;k=v` rendering of the parameter map (keys already sorted).
    pub fn params_canonical(&self) -> String {
        params_to_string(&self.params)
    }

    /// Total order used for deterministic emission.
    pub fn sort_key(&self) -> (String, u64, String) {
        (self.claim.clone(), self.point, self.params_canonical())
    }

    pub fn to_jsonl_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

fn params_to_string(params: &BTreeMap<String, String>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn params_from_string(s: &str) -> Result<BTreeMap<String, String>> {
    let mut params = BTreeMap::new();
    if s.is_empty() {
        return Ok(params);
    }
    for piece in s.split(';') {
        let (k, v) = piece
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("malformed params field {s:?}")))?;
        params.insert(k.to_string(), v.to_string());
    }
    Ok(params)
}

/// Sort rows into the canonical (claim, point, params) order.
pub fn sort_reports(reports: &mut [ClaimReport]) {
    reports.sort_by_key(|a| a.sort_key());
}

pub fn parse_jsonl_line(line: &str) -> Result<ClaimReport> {
    serde_json::from_str(line).map_err(|e| Error::Parse(format!("bad report row: {e}")))
}

pub fn write_jsonl<W: Write>(reports: &[ClaimReport], mut out: W) -> Result<()> {
    for r in reports {
        writeln!(out, "{}", r.to_jsonl_line())?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<ClaimReport>> {
    let mut reports = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        reports.push(parse_jsonl_line(&line)?);
    }
    Ok(reports)
}

const CSV_HEADER: [&str; 8] = [
    "claim", "point", "params", "modulus", "lhs", "rhs", "pass", "us",
];

pub fn write_csv<W: Write>(reports: &[ClaimReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)
        .map_err(|e| Error::Io(e.to_string()))?;
    for r in reports {
        w.write_record([
            r.claim.as_str(),
            &r.point.to_string(),
            &r.params_canonical(),
            &r.modulus,
            &r.lhs,
            &r.rhs,
            if r.pass { "true" } else { "false" },
            &r.us.to_string(),
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Parse one headerless CSV record back into a report.
pub fn parse_csv_record(record: &csv::StringRecord) -> Result<ClaimReport> {
    if record.len() != CSV_HEADER.len() {
        return Err(Error::Parse(format!(
            "csv record has {} fields, expected {}",
            record.len(),
            CSV_HEADER.len()
        )));
    }
    let field = |i: usize| record.get(i).unwrap_or_default();
    let parse_u64 = |i: usize, name: &str| -> Result<u64> {
        field(i)
            .parse()
            .map_err(|_| Error::Parse(format!("bad {name} field {:?}", field(i))))
    };
    let pass = match field(6) {
        "true" => true,
        "false" => false,
        other => return Err(Error::Parse(format!("bad pass field {other:?}"))),
    };
    Ok(ClaimReport {
        claim: field(0).to_string(),
        point: parse_u64(1, "point")?,
        params: params_from_string(field(2))?,
        modulus: field(3).to_string(),
        lhs: field(4).to_string(),
        rhs: field(5).to_string(),
        pass,
        us: parse_u64(7, "us")?,
    })
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<ClaimReport>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let mut reports = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse(format!("bad csv row: {e}")))?;
        reports.push(parse_csv_record(&record)?);
    }
    Ok(reports)
}
