//! The scan file format.
//!
//! CSV columns, in order: `x, V, main_term, error, normalized_error, density`.
//! `x` and `V` are full decimal integers; the other columns are fixed-point
//! decimals with a fixed number of places (the rounded midpoint of the
//! enclosure). `normalized_error` is empty where the normalizer vanishes.
//! The JSON form carries the same fields, every number as a string.

use std::io::{Read, Write};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::Decimal;
use crate::error::{invalid, Error, Result};
use crate::lattice::CountRecord;

pub const CSV_HEADER: [&str; 6] = [
    "x",
    "V",
    "main_term",
    "error",
    "normalized_error",
    "density",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub x: u64,
    pub v: BigInt,
    pub main_term: Decimal,
    pub error: Decimal,
    pub normalized_error: Option<Decimal>,
    pub density: Decimal,
}

impl ScanRow {
    pub fn from_record(rec: &CountRecord, places: u32) -> Self {
        Self {
            x: rec.params.x(),
            v: rec.v.clone(),
            main_term: rec.main_term.to_decimal(places),
            error: rec.error.to_decimal(places),
            normalized_error: rec.normalized_error.as_ref().map(|n| n.to_decimal(places)),
            density: Decimal::round_rational(&rec.density(), places),
        }
    }
}

/// Serialized shape shared by CSV and JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireRow {
    pub x: String,
    #[serde(rename = "V")]
    pub v: String,
    pub main_term: String,
    pub error: String,
    pub normalized_error: String,
    pub density: String,
}

impl From<&ScanRow> for WireRow {
    fn from(row: &ScanRow) -> Self {
        Self {
            x: row.x.to_string(),
            v: row.v.to_string(),
            main_term: row.main_term.to_string(),
            error: row.error.to_string(),
            normalized_error: row
                .normalized_error
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default(),
            density: row.density.to_string(),
        }
    }
}

impl TryFrom<WireRow> for ScanRow {
    type Error = Error;

    fn try_from(w: WireRow) -> Result<Self> {
        let normalized_error = if w.normalized_error.is_empty() {
            None
        } else {
            Some(w.normalized_error.parse()?)
        };
        Ok(Self {
            x: w.x.parse().map_err(|_| invalid!("bad x {:?}", w.x))?,
            v: w.v.parse().map_err(|_| invalid!("bad V {:?}", w.v))?,
            main_term: w.main_term.parse()?,
            error: w.error.parse()?,
            normalized_error,
            density: w.density.parse()?,
        })
    }
}

fn csv_err(e: csv::Error) -> Error {
    invalid!("csv: {e}")
}

/// Write the header (always) and one line per row.
pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for row in rows {
        w.serialize(WireRow::from(row)).map_err(csv_err)?;
    }
    w.flush().map_err(|e| invalid!("csv: {e}"))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ScanRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(invalid!("unexpected scan header: {header:?}"));
    }
    r.deserialize::<WireRow>()
        .map(|w| w.map_err(csv_err).and_then(ScanRow::try_from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_tolerance;
    use crate::omega::error_scan;

    #[test]
    fn header_is_always_written() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "x,V,main_term,error,normalized_error,density\n"
        );
    }

    #[test]
    fn csv_round_trip_of_a_scan() {
        let tol = parse_tolerance("1e-30").unwrap();
        let recs = error_scan(1, 2, 2, 300, 1, &tol).unwrap();
        let rows: Vec<ScanRow> = recs.iter().map(|r| ScanRow::from_record(r, 30)).collect();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, rows);
        let text = String::from_utf8(buf).unwrap();
        let second = text.lines().nth(1).unwrap();
        assert!(second.starts_with("2,"));
        // 30 places in every decimal column
        let fields: Vec<&str> = second.split(',').collect();
        assert_eq!(fields[2].split('.').nth(1).unwrap().len(), 30);
        assert!(text.lines().skip(1).all(|l| !l.contains(['e', 'E'])));
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn empty_normalized_error_survives() {
        let tol = parse_tolerance("1e-10").unwrap();
        let rec =
            crate::lattice::count_record(crate::lattice::CountParams::new(1, 2, 1).unwrap(), &tol)
                .unwrap();
        let rows = vec![ScanRow::from_record(&rec, 10)];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }
}
