//! CSV and JSON report files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Family, NormTotals, Normalizer, Report, ReportRow};
use crate::error::{Error, Result};
use crate::estimate::{EstimateKind, NormEstimate};

/// Fixed CSV column order. Empty cells encode absent values; `params` is
/// `key=value` pairs joined by `;` in key order.
pub const CSV_COLUMNS: [&str; 19] = [
    "family",
    "params",
    "p",
    "N",
    "h",
    "estimate",
    "estimate_kind",
    "amplification_level",
    "trials",
    "seed",
    "hms",
    "hms_delta",
    "hms_sobolev",
    "normalizer",
    "normalizer_value",
    "ratio",
    "error",
    "config_hash",
    "version",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Csv,
    Json,
}

fn kind_name(k: EstimateKind) -> &'static str {
    match k {
        EstimateKind::Exact => "exact",
        EstimateKind::LowerBound => "lower_bound",
        EstimateKind::SdpCertified => "sdp_certified",
    }
}

fn parse_kind(s: &str) -> Result<EstimateKind> {
    match s {
        "exact" => Ok(EstimateKind::Exact),
        "lower_bound" => Ok(EstimateKind::LowerBound),
        "sdp_certified" => Ok(EstimateKind::SdpCertified),
        _ => Err(Error::Format(format!("unknown estimate kind {s:?}"))),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn row_record(r: &ReportRow) -> Vec<String> {
    let e = r.norm_estimate.as_ref();
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    vec![
        r.family.name().to_string(),
        params.join(";"),
        r.p.to_string(),
        r.n.to_string(),
        r.h.to_string(),
        opt(e.map(|e| e.value)),
        opt(e.map(|e| kind_name(e.kind))),
        opt(e.map(|e| e.amplification_level)),
        opt(e.map(|e| e.trials)),
        opt(e.map(|e| e.seed)),
        opt(r.hms.hms),
        opt(r.hms.hms_delta),
        opt(r.hms.hms_sobolev),
        r.normalizer.name().to_string(),
        opt(r.normalizer_value),
        opt(r.ratio),
        r.error.clone().unwrap_or_default(),
        r.config_hash.clone(),
        r.version.clone(),
    ]
}

struct Cells<'a> {
    record: &'a csv::StringRecord,
    line: u64,
}

impl Cells<'_> {
    fn get(&self, col: usize) -> &str {
        self.record.get(col).unwrap_or("")
    }

    fn parse<T: std::str::FromStr>(&self, col: usize) -> Result<T> {
        let s = self.get(col);
        s.parse().map_err(|_| {
            Error::Format(format!(
                "line {}: column {} has bad value {s:?}",
                self.line, CSV_COLUMNS[col]
            ))
        })
    }

    fn parse_opt<T: std::str::FromStr>(&self, col: usize) -> Result<Option<T>> {
        if self.get(col).is_empty() {
            Ok(None)
        } else {
            self.parse(col).map(Some)
        }
    }
}

fn parse_row(cells: &Cells<'_>) -> Result<ReportRow> {
    let at = |e: Error| Error::Format(format!("line {}: {e}", cells.line));
    let params = if cells.get(1).is_empty() {
        BTreeMap::new()
    } else {
        cells
            .get(1)
            .split(';')
            .map(|kv| {
                kv.split_once('=')
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .ok_or_else(|| {
                        Error::Format(format!("line {}: bad params entry {kv:?}", cells.line))
                    })
            })
            .collect::<Result<_>>()?
    };
    let p = cells.get(2).parse().map_err(at)?;
    let norm_estimate = match cells.parse_opt::<f64>(5)? {
        None => None,
        Some(value) => Some(NormEstimate {
            value,
            kind: parse_kind(cells.get(6)).map_err(at)?,
            p,
            amplification_level: cells.parse(7)?,
            trials: cells.parse(8)?,
            seed: cells.parse(9)?,
        }),
    };
    let error = Some(cells.get(16).to_string()).filter(|s| !s.is_empty());
    Ok(ReportRow {
        family: Family::parse(cells.get(0)).map_err(at)?,
        params,
        p,
        n: cells.parse(3)?,
        h: cells.parse(4)?,
        norm_estimate,
        hms: NormTotals {
            hms: cells.parse_opt(10)?,
            hms_delta: cells.parse_opt(11)?,
            hms_sobolev: cells.parse_opt(12)?,
        },
        normalizer: Normalizer::parse(cells.get(13)).map_err(at)?,
        normalizer_value: cells.parse_opt(14)?,
        ratio: cells.parse_opt(15)?,
        error,
        config_hash: cells.get(17).to_string(),
        version: cells.get(18).to_string(),
    })
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).expect("in-memory CSV");
        for r in &self.rows {
            w.write_record(row_record(r)).expect("in-memory CSV");
        }
        String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("CSV is UTF-8")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r
            .headers()
            .map_err(|e| Error::Format(format!("CSV header: {e}")))?;
        if header.iter().ne(CSV_COLUMNS) {
            return Err(Error::Format(format!(
                "CSV header {header:?} does not match the report columns"
            )));
        }
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| Error::Format(format!("CSV: {e}")))?;
            let line = rec.position().map_or(0, |p| p.line());
            rows.push(parse_row(&Cells { record: &rec, line })?);
        }
        Ok(Report { rows })
    }
}

/// Write `report` to `path` as CSV or pretty JSON.
pub fn emit_report(report: &Report, format: ReportFormat, path: &Path) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => report.to_csv(),
        ReportFormat::Json => report.to_json(),
    };
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schatten::SchattenExponent;

    fn row(i: usize) -> ReportRow {
        let p = [
            SchattenExponent::Finite(1.5),
            SchattenExponent::Finite(2.0),
            SchattenExponent::Infinity,
        ][i % 3];
        let mut params = BTreeMap::new();
        params.insert("f".to_string(), "abs".to_string());
        if i.is_multiple_of(2) {
            params.insert("alpha".to_string(), "0.5".to_string());
        }
        let failed = i % 7 == 3;
        ReportRow {
            family: if i.is_multiple_of(2) {
                Family::AlphaDivided
            } else {
                Family::DividedDifference
            },
            params,
            p,
            n: 8 + i,
            h: 1.0 / (3.0 + i as f64),
            norm_estimate: (!failed).then(|| NormEstimate {
                value: 1.0 + (i as f64).sqrt() / 7.0,
                kind: [
                    EstimateKind::Exact,
                    EstimateKind::LowerBound,
                    EstimateKind::SdpCertified,
                ][i % 3],
                p,
                amplification_level: 1 + i % 2,
                trials: i,
                seed: u64::MAX - i as u64,
            }),
            hms: NormTotals {
                hms: Some(0.1 + i as f64 * std::f64::consts::PI),
                hms_delta: None,
                hms_sobolev: i.is_multiple_of(4).then_some(1e-300 * i as f64),
            },
            normalizer: Normalizer::Hms,
            normalizer_value: Some(2.0 / 3.0),
            ratio: (!failed && i % 3 != 2).then_some(0.1 / (i as f64 + 1.0)),
            error: failed.then(|| format!("numerical failure in \"x\", row {i}")),
            config_hash: "ab".repeat(32),
            version: "0.1.0".into(),
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        let csv = Report::default().to_csv();
        assert_eq!(csv, format!("{}\n", CSV_COLUMNS.join(",")));
        assert_eq!(Report::from_csv(&csv).unwrap(), Report::default());
    }

    #[test]
    fn one_row_json_round_trip() {
        let r = Report { rows: vec![row(0)] };
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn hundred_rows_round_trip() {
        let r = Report {
            rows: (0..100).map(row).collect(),
        };
        assert_eq!(Report::from_csv(&r.to_csv()).unwrap(), r);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn bad_csv_reports_location() {
        let r = Report { rows: vec![row(1)] };
        let csv = r.to_csv();
        let (header, body) = csv.split_once('\n').unwrap();
        let text = format!("{header}\n{}", body.replace(",hms,", ",nope,"));
        let err = Report::from_csv(&text).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        assert!(Report::from_csv("a,b\n1,2\n").is_err());
    }

    #[test]
    fn files() {
        let dir = tempfile::tempdir().unwrap();
        let r = Report {
            rows: (0..5).map(row).collect(),
        };
        for (fmt, name) in [(ReportFormat::Csv, "r.csv"), (ReportFormat::Json, "r.json")] {
            let path = dir.path().join(name);
            emit_report(&r, fmt, &path).unwrap();
            let text = std::fs::read_to_string(&path).unwrap();
            let back = match fmt {
                ReportFormat::Csv => Report::from_csv(&text).unwrap(),
                ReportFormat::Json => Report::from_json(&text).unwrap(),
            };
            assert_eq!(back, r);
        }
        let missing = dir.path().join("no/such/dir/r.csv");
        assert!(matches!(
            emit_report(&r, ReportFormat::Csv, &missing),
            Err(Error::Io { .. })
        ));
    }
}
