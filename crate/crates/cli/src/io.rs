//! Curve files: JSON (the full [`SampledCurve`] schema) and CSV
//! (`tau,x1,…,x_{n+2},residual`).

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use nullflat::{Grid, Sample, SampledCurve, Signature, Space};
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// From a file extension, defaulting to JSON.
    pub fn of_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// Compact JSON with every float written to 17 significant digits.
struct Float17;

impl Formatter for Float17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        CompactFormatter.write_f32(writer, value)
    }
}

pub fn float17(value: f64) -> String {
    format!("{value:.16e}")
}

/// Serializes to a single JSON line terminated by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, Float17);
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

pub fn curve_to_csv(curve: &SampledCurve<f64>) -> String {
    let dim = curve.signature.dim();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["tau".to_string()];
    header.extend((1..=dim).map(|i| format!("x{i}")));
    header.push("residual".into());
    w.write_record(&header).expect("in-memory csv");
    for s in &curve.samples {
        let mut row = vec![float17(s.tau)];
        row.extend(s.x.iter().map(|&v| float17(v)));
        row.push(float17(s.residual));
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv writes UTF-8")
}

pub fn render_curve(curve: &SampledCurve<f64>, format: Format) -> String {
    match format {
        Format::Json => to_json(curve),
        Format::Csv => curve_to_csv(curve),
    }
}

pub fn write_output(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

pub fn save_curve(curve: &SampledCurve<f64>, path: &Path, format: Format) -> CliResult<()> {
    write_output(&render_curve(curve, format), Some(path), &mut io::sink())
}

/// Loads a curve, choosing the parser from the extension. `space`
/// overrides the space of a CSV file, which otherwise is `r21` for three
/// columns of coordinates and `r2n` beyond.
pub fn load_curve(path: &Path, space: Option<Space>) -> CliResult<SampledCurve<f64>> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let curve = match Format::of_path(path) {
        Format::Json => parse_json_curve(&text).map_err(|message| CliError::Schema {
            path: path.to_path_buf(),
            message,
        })?,
        Format::Csv => parse_csv_curve(&text, space).map_err(|message| CliError::Schema {
            path: path.to_path_buf(),
            message,
        })?,
    };
    curve.validate().map_err(|e| CliError::Schema {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    Ok(curve)
}

pub fn parse_json_curve(text: &str) -> Result<SampledCurve<f64>, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            e.inner().to_string()
        } else {
            format!("{path}: {}", e.inner())
        }
    })
}

pub fn parse_csv_curve(text: &str, space: Option<Space>) -> Result<SampledCurve<f64>, String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| format!("header: {e}"))?.clone();
    let cols: Vec<&str> = header.iter().collect();
    let dim = cols
        .len()
        .checked_sub(2)
        .filter(|&d| d >= 3)
        .ok_or("header: expected tau,x1,..,x_{n+2},residual")?;
    let mut expected = vec!["tau".to_string()];
    expected.extend((1..=dim).map(|i| format!("x{i}")));
    expected.push("residual".into());
    if cols != expected {
        return Err(format!(
            "header: expected {}, got {}",
            expected.join(","),
            cols.join(",")
        ));
    }
    let mut samples = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format!("row {}: {e}", i + 1))?;
        let values = record
            .iter()
            .zip(&expected)
            .map(|(v, name)| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("row {} column {name}: {e}", i + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != expected.len() {
            return Err(format!("row {}: expected {} fields", i + 1, expected.len()));
        }
        samples.push(Sample {
            tau: values[0],
            x: values[1..=dim].to_vec(),
            xdot: Vec::new(),
            residual: values[dim + 1],
        });
    }
    let n = dim - 2;
    let space = space.unwrap_or(if n == 1 { Space::R21 } else { Space::R2n });
    let (t0, t1) = match (samples.first(), samples.last()) {
        (Some(a), Some(b)) => (a.tau, b.tau),
        _ => return Err("samples: file has no rows".into()),
    };
    Ok(SampledCurve {
        space,
        n,
        signature: Signature::r2n(n),
        grid: Grid {
            t0,
            t1,
            count: samples.len(),
        },
        samples,
    })
}
