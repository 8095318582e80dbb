//! CSV and JSON serialization of sweep tables.

use serde::Serialize;

use crate::analysis::BarrierClass;
use crate::error::{Error, Result};
use crate::format::c_exp;
use crate::sweep::SweepRow;

/// Column names, in output order.
pub const COLUMNS: [&str; 13] =
    ["m", "ell", "n", "closed_kR", "open_kR_re", "open_kR_im", "L", "gamma", "q", "k_T", "k_B", "class", "error"];

/// Digits after the decimal point in numeric columns.
pub const PRECISION: usize = 12;

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn numbers(row: &SweepRow) -> [f64; 9] {
    [row.n, row.closed_kr, row.open_kr_re, row.open_kr_im, row.lamb, row.gamma, row.q, row.k_t, row.k_b]
}

/// Header line plus one line per row; floats as `%.12e`, failed values as `nan`.
pub fn emit_csv(rows: &[SweepRow]) -> Vec<u8> {
    let mut w = writer();
    w.write_record(COLUMNS).expect("in-memory write");
    for row in rows {
        let mut record = vec![row.m.to_string(), row.ell.to_string()];
        record.extend(numbers(row).iter().map(|v| c_exp(*v, PRECISION)));
        record.push(row.class.map(|c| c.as_str().to_string()).unwrap_or_default());
        record.push(row.error.clone().unwrap_or_default());
        w.write_record(&record).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Parses output of [`emit_csv`].
pub fn parse_csv(bytes: &[u8]) -> Result<Vec<SweepRow>> {
    let bad = |what: String| Error::InvalidSweep(format!("malformed table: {what}"));
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes);
    let header = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().ne(COLUMNS) {
        return Err(bad(format!("header {header:?}")));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let int = |i: usize| record[i].parse::<u32>().map_err(|e| bad(format!("{}: {e}", COLUMNS[i])));
        let float = |i: usize| record[i].parse::<f64>().map_err(|e| bad(format!("{}: {e}", COLUMNS[i])));
        let class = match &record[11] {
            "" => None,
            s => Some(s.parse::<BarrierClass>()?),
        };
        let error = (!record[12].is_empty()).then(|| record[12].to_string());
        rows.push(SweepRow {
            m: int(0)?,
            ell: int(1)?,
            n: float(2)?,
            closed_kr: float(3)?,
            open_kr_re: float(4)?,
            open_kr_im: float(5)?,
            lamb: float(6)?,
            gamma: float(7)?,
            q: float(8)?,
            k_t: float(9)?,
            k_b: float(10)?,
            class,
            error,
        });
    }
    Ok(rows)
}

#[derive(Serialize)]
struct JsonRow<'a> {
    m: u32,
    ell: u32,
    n: f64,
    #[serde(rename = "closed_kR")]
    closed_kr: f64,
    #[serde(rename = "open_kR_re")]
    open_kr_re: f64,
    #[serde(rename = "open_kR_im")]
    open_kr_im: f64,
    #[serde(rename = "L")]
    lamb: f64,
    gamma: f64,
    q: f64,
    #[serde(rename = "k_T")]
    k_t: f64,
    #[serde(rename = "k_B")]
    k_b: f64,
    class: Option<BarrierClass>,
    error: Option<&'a str>,
}

/// Array of flat objects with the CSV column names; NaN becomes `null`.
pub fn emit_json(rows: &[SweepRow]) -> Vec<u8> {
    let rows: Vec<JsonRow> = rows
        .iter()
        .map(|r| JsonRow {
            m: r.m,
            ell: r.ell,
            n: r.n,
            closed_kr: r.closed_kr,
            open_kr_re: r.open_kr_re,
            open_kr_im: r.open_kr_im,
            lamb: r.lamb,
            gamma: r.gamma,
            q: r.q,
            k_t: r.k_t,
            k_b: r.k_b,
            class: r.class,
            error: r.error.as_deref(),
        })
        .collect();
    let mut out = serde_json::to_vec_pretty(&rows).expect("plain data serializes");
    out.push(b'\n');
    out
}
