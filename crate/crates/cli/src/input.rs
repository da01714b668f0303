//! Coupling files.
//!
//! JSON: `{"n": 2, "variant": "A", "entries": [[re, im], ...]}` with `N²`
//! row-major pairs. CSV: a `n,variant` header, one record with those values,
//! then `N` records of `2N` numbers (`re,im` per entry).

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use qferm::spectra::{Coupling, Variant};
use serde::Deserialize;

use crate::{config_err, lift, ConfigError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCoupling {
    n: usize,
    variant: String,
    entries: Vec<[f64; 2]>,
}

pub fn read_coupling(path: &Path) -> anyhow::Result<Coupling> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let is_json =
        path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) || text.trim_start().starts_with('{');
    if is_json {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}

pub fn parse_json(text: &str) -> anyhow::Result<Coupling> {
    let raw: JsonCoupling = serde_json::from_str(text).map_err(|e| ConfigError(format!("coupling JSON: {e}")))?;
    let entries = raw.entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    lift(Coupling::new(raw.n, lift(Variant::parse(&raw.variant))?, entries))
}

pub fn parse_csv(text: &str) -> anyhow::Result<Coupling> {
    let mut rdr =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let records: Vec<csv::StringRecord> =
        rdr.records().collect::<Result<_, _>>().map_err(|e| ConfigError(format!("coupling CSV: {e}")))?;
    let header: Vec<&str> = records.first().map(|r| r.iter().collect()).unwrap_or_default();
    if header != ["n", "variant"] {
        return config_err("coupling CSV must start with the header `n,variant`");
    }
    let Some(meta) = records.get(1).filter(|r| r.len() == 2) else {
        return config_err("coupling CSV needs a `N,variant` record after the header");
    };
    let n: usize = meta[0].parse().map_err(|_| ConfigError(format!("bad N `{}`", &meta[0])))?;
    let variant = lift(Variant::parse(&meta[1]))?;
    let rows = &records[2..];
    if rows.len() != n {
        return config_err(format!("expected {n} matrix rows, found {}", rows.len()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (r, rec) in rows.iter().enumerate() {
        if rec.len() != 2 * n {
            return config_err(format!("row {} has {} numbers, expected {}", r + 1, rec.len(), 2 * n));
        }
        let nums: Vec<f64> = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| ConfigError(format!("row {}: bad number `{s}`", r + 1))))
            .collect::<Result<_, _>>()?;
        entries.extend(nums.chunks(2).map(|p| Complex64::new(p[0], p[1])));
    }
    lift(Coupling::new(n, variant, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let c = parse_csv("n,variant\n2,A\n0,0,1,0\n1,0,0,0\n").unwrap();
        assert_eq!(c.modes(), 2);
        assert_eq!(c.get(0, 1), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn csv_rejects_short_rows() {
        assert!(parse_csv("n,variant\n2,A\n0,0,1\n1,0,0,0\n").is_err());
    }

    #[test]
    fn json_checks_symmetry() {
        assert!(parse_json(r#"{"n":2,"variant":"A","entries":[[0,0],[1,0],[2,0],[0,0]]}"#).is_err());
        assert!(parse_json(r#"{"n":1,"variant":"B","entries":[[0,1]]}"#).is_ok());
    }
}
