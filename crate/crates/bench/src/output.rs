use std::collections::BTreeMap;
use std::io::{Read, Write};

use recon_core::Engine;

use crate::error::{BenchError, Result};
use crate::harness::BenchRecord;

pub const CSV_HEADER: [&str; 11] = [
    "n",
    "m",
    "k",
    "trial",
    "seed",
    "engine",
    "runtime_ms",
    "extra_strings",
    "greedy_checks",
    "normalized_runtime",
    "noinfo_flag",
];

/// Columns that carry wall-clock measurements.
pub const TIMING_COLUMNS: [&str; 2] = ["runtime_ms", "normalized_runtime"];

const NA: &str = "-";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| NA.to_string(), |v| v.to_string())
}

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

/// Streams records as CSV with a header row; LF line endings, `-` for
/// missing values.
pub struct CsvSink<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut inner = writer(out);
        inner.write_record(CSV_HEADER)?;
        Ok(CsvSink { inner })
    }

    pub fn write(&mut self, r: &BenchRecord) -> Result<()> {
        self.inner.write_record([
            r.n.to_string(),
            r.m.to_string(),
            r.k.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            r.engine.to_string(),
            opt(r.runtime_ms.map(|v| format!("{v:.4}"))),
            opt(r.extra_strings),
            opt(r.greedy_checks),
            opt(r.normalized_runtime.map(|v| format!("{v:.6e}"))),
            r.noinfo_flag.to_string(),
        ])?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<W> {
        self.inner.flush()?;
        self.inner.into_inner().map_err(|e| BenchError::Io(e.into_error()))
    }
}

fn field<T: std::str::FromStr>(row: &csv::StringRecord, i: usize) -> Result<Option<T>> {
    let raw = row.get(i).ok_or_else(|| BenchError::Config(format!("row has no column {}", CSV_HEADER[i])))?;
    if raw == NA {
        return Ok(None);
    }
    raw.parse()
        .map(Some)
        .map_err(|_| BenchError::Config(format!("bad {} value {raw:?}", CSV_HEADER[i])))
}

fn required<T: std::str::FromStr>(row: &csv::StringRecord, i: usize) -> Result<T> {
    field(row, i)?.ok_or_else(|| BenchError::Config(format!("{} may not be missing", CSV_HEADER[i])))
}

/// Parses CSV written by [`CsvSink`]. The header must match exactly.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    if rdr.headers()?.iter().ne(CSV_HEADER) {
        return Err(BenchError::Config("unexpected CSV header".into()));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let engine: String = required(&row, 5)?;
        out.push(BenchRecord {
            n: required(&row, 0)?,
            m: required(&row, 1)?,
            k: required(&row, 2)?,
            trial: required(&row, 3)?,
            seed: required(&row, 4)?,
            engine: engine.parse()?,
            runtime_ms: field(&row, 6)?,
            extra_strings: field(&row, 7)?,
            greedy_checks: field(&row, 8)?,
            normalized_runtime: field(&row, 9)?,
            noinfo_flag: required(&row, 10)?,
            error: None,
        });
    }
    Ok(out)
}

/// Rewrites CSV text without the timing columns, leaving everything that
/// must be reproducible from the seed.
pub fn strip_timing(csv_text: &str) -> Result<String> {
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = rdr.headers()?.clone();
    let keep: Vec<usize> = (0..headers.len()).filter(|&i| !TIMING_COLUMNS.contains(&&headers[i])).collect();
    let mut w = writer(Vec::new());
    w.write_record(keep.iter().map(|&i| &headers[i]))?;
    for row in rdr.records() {
        let row = row?;
        w.write_record(keep.iter().map(|&i| &row[i]))?;
    }
    let bytes = w.into_inner().map_err(|e| BenchError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 input is utf-8"))
}

/// Medians over the trials of one `(n, m, k, engine)` cell.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub engine: Engine,
    pub trials: usize,
    pub failures: usize,
    pub median_runtime_ms: Option<f64>,
    pub median_extra_strings: Option<f64>,
    pub median_normalized_runtime: Option<f64>,
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[mid] } else { (v[mid - 1] + v[mid]) / 2.0 })
}

pub fn summarize(records: &[BenchRecord]) -> Vec<Summary> {
    let mut groups: BTreeMap<(usize, usize, usize, Engine), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.n, r.m, r.k, r.engine)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((n, m, k, engine), rs)| {
            let ok: Vec<_> = rs.iter().filter(|r| r.extra_strings.is_some()).collect();
            Summary {
                n,
                m,
                k,
                engine,
                trials: rs.len(),
                failures: rs.len() - ok.len(),
                median_runtime_ms: median(ok.iter().filter_map(|r| r.runtime_ms).collect()),
                median_extra_strings: median(ok.iter().filter_map(|r| r.extra_strings.map(|e| e as f64)).collect()),
                median_normalized_runtime: median(ok.iter().filter_map(|r| r.normalized_runtime).collect()),
            }
        })
        .collect()
}

pub fn write_summary<W: Write>(out: W, rows: &[Summary]) -> Result<()> {
    let mut w = writer(out);
    w.write_record([
        "n",
        "m",
        "k",
        "engine",
        "trials",
        "failures",
        "median_runtime_ms",
        "median_extra_strings",
        "median_normalized_runtime",
    ])?;
    for s in rows {
        w.write_record([
            s.n.to_string(),
            s.m.to_string(),
            s.k.to_string(),
            s.engine.to_string(),
            s.trials.to_string(),
            s.failures.to_string(),
            opt(s.median_runtime_ms.map(|v| format!("{v:.4}"))),
            opt(s.median_extra_strings),
            opt(s.median_normalized_runtime.map(|v| format!("{v:.6e}"))),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `(n, m, k, trial)` groups where successful engines report different
/// extra-string counts.
pub fn cross_engine_mismatches(records: &[BenchRecord]) -> Vec<(usize, usize, usize, usize)> {
    let mut groups: BTreeMap<(usize, usize, usize, usize), Vec<usize>> = BTreeMap::new();
    for r in records {
        if let Some(e) = r.extra_strings {
            groups.entry((r.n, r.m, r.k, r.trial)).or_default().push(e);
        }
    }
    groups.into_iter().filter(|(_, v)| v.windows(2).any(|w| w[0] != w[1])).map(|(key, _)| key).collect()
}
