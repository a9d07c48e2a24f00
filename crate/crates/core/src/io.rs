//! Matrix and label file formats.
//!
//! - CSV: UTF-8 decimal reals, comma separated, no header, one row per line.
//! - f64bin: 16-byte header of two little-endian `u64` (rows, cols), then
//!   `rows·cols` little-endian IEEE-754 `f64` values in row-major order.
//! - Labels: one nonnegative integer per line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixFormat {
    Csv,
    F64bin,
}

impl MatrixFormat {
    /// `.csv` → CSV, anything else → f64bin.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => MatrixFormat::Csv,
            _ => MatrixFormat::F64bin,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            MatrixFormat::Csv => "csv",
            MatrixFormat::F64bin => "bin",
        }
    }
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(MatrixFormat::Csv),
            "f64bin" | "bin" => Ok(MatrixFormat::F64bin),
            other => Err(Error::InvalidArgument(format!("unknown matrix format `{other}`"))),
        }
    }
}

pub fn load_matrix<T: Scalar>(path: &Path, format: MatrixFormat) -> Result<DataMatrix<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    match format {
        MatrixFormat::Csv => read_csv(reader),
        MatrixFormat::F64bin => read_f64bin(reader).map_err(|e| match e {
            Error::Io { source, .. } => Error::io(path, source),
            other => other,
        }),
    }
}

pub fn save_matrix<T: Scalar>(path: &Path, data: &DataMatrix<T>, format: MatrixFormat) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    match format {
        MatrixFormat::Csv => write_csv(&mut w, data),
        MatrixFormat::F64bin => write_f64bin(&mut w, data),
    }
    .and_then(|_| w.flush())
    .map_err(|e| Error::io(path, e))
}

pub fn read_csv<T: Scalar, R: BufRead>(reader: R) -> Result<DataMatrix<T>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut values = Vec::new();
    let mut n_cols = 0usize;
    let mut n_rows = 0usize;
    for record in csv.records() {
        let record = record.map_err(csv_error)?;
        let row = n_rows + 1;
        let line = record.position().map_or(row as u64, |p| p.line());
        for (c, field) in record.iter().enumerate() {
            let v: f64 = field.parse().map_err(|e| Error::Parse {
                row,
                col: c + 1,
                msg: format!("line {line}: `{field}`: {e}"),
            })?;
            if !v.is_finite() {
                return Err(Error::NonFinite { row, col: c + 1 });
            }
            values.push(T::lit(v));
        }
        if n_rows == 0 {
            n_cols = record.len();
        } else if record.len() != n_cols {
            return Err(Error::RaggedRow {
                row,
                expected: n_cols,
                found: record.len(),
            });
        }
        n_rows += 1;
    }
    DataMatrix::from_vec(n_rows, n_cols, values)
}

fn csv_error(e: csv::Error) -> Error {
    let row = e.position().map_or(0, |p| p.record() as usize + 1);
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::io("<csv>", source),
        other => Error::Parse {
            row,
            col: 0,
            msg: format!("{other:?}"),
        },
    }
}

pub fn write_csv<T: Scalar, W: Write>(w: &mut W, data: &DataMatrix<T>) -> std::io::Result<()> {
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    for row in data.rows() {
        // `{:?}` on f64 prints the shortest string that round-trips
        csv.write_record(row.iter().map(|v| format!("{:?}", v.as_f64())))?;
    }
    csv.flush()
}

pub fn read_f64bin<T: Scalar, R: Read>(mut reader: R) -> Result<DataMatrix<T>> {
    let mut header = [0u8; 16];
    reader
        .read_exact(&mut header)
        .map_err(|e| Error::io("<f64bin header>", e))?;
    let n_rows = u64::from_le_bytes(header[..8].try_into().unwrap());
    let n_cols = u64::from_le_bytes(header[8..].try_into().unwrap());
    let expected = n_rows
        .checked_mul(n_cols)
        .ok_or_else(|| Error::InvalidArgument(format!("header shape {n_rows}x{n_cols} overflows")))?;
    let mut body = Vec::new();
    reader
        .read_to_end(&mut body)
        .map_err(|e| Error::io("<f64bin body>", e))?;
    if body.len() as u64 != expected * 8 {
        return Err(Error::SizeMismatch {
            expected,
            found: body.len() as u64 / 8,
        });
    }
    let n_cols = n_cols as usize;
    let mut values = Vec::with_capacity(expected as usize);
    for (k, chunk) in body.chunks_exact(8).enumerate() {
        let v = f64::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(Error::NonFinite {
                row: k / n_cols + 1,
                col: k % n_cols + 1,
            });
        }
        values.push(T::lit(v));
    }
    DataMatrix::from_vec(n_rows as usize, n_cols, values)
}

pub fn write_f64bin<T: Scalar, W: Write>(w: &mut W, data: &DataMatrix<T>) -> std::io::Result<()> {
    w.write_all(&(data.n_rows() as u64).to_le_bytes())?;
    w.write_all(&(data.n_cols() as u64).to_le_bytes())?;
    for v in data.values() {
        w.write_all(&v.as_f64().to_le_bytes())?;
    }
    Ok(())
}

pub fn load_labels(path: &Path) -> Result<Vec<usize>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_labels(BufReader::new(file))
}

pub fn read_labels<R: BufRead>(reader: R) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<labels>", e))?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        out.push(t.parse().map_err(|e| Error::Parse {
            row: i + 1,
            col: 1,
            msg: format!("`{t}`: {e}"),
        })?);
    }
    Ok(out)
}

pub fn save_labels(path: &Path, labels: &[usize]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    labels
        .iter()
        .try_for_each(|l| writeln!(w, "{l}"))
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_parses_two_by_two() {
        let m: DataMatrix<f64> = read_csv("1,2\n3,4".as_bytes()).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (2, 2));
        assert_eq!(m.values(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn csv_ragged_row_reports_row_two() {
        let err = read_csv::<f64, _>("1,2\n3,4,5\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::RaggedRow { row: 2, expected: 2, found: 3 }), "{err}");
    }

    #[test]
    fn csv_reports_bad_field_location() {
        let err = read_csv::<f64, _>("1,2\n3,x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { row: 2, col: 2, .. }), "{err}");
        let err = read_csv::<f64, _>("1,inf\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::NonFinite { row: 1, col: 2 }), "{err}");
    }

    #[test]
    fn f64bin_parses_header_and_body() {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&3u64.to_le_bytes());
        bytes.extend_from_slice(&2u64.to_le_bytes());
        for v in [1.0f64, 2.0, 3.0, 4.0, 5.0, 6.0] {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        let m: DataMatrix<f64> = read_f64bin(bytes.as_slice()).unwrap();
        assert_eq!((m.n_rows(), m.n_cols()), (3, 2));
        assert_eq!(m.row(2), &[5.0, 6.0]);
    }

    #[test]
    fn f64bin_size_mismatch() {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&3u64.to_le_bytes());
        bytes.extend_from_slice(&2u64.to_le_bytes());
        bytes.extend_from_slice(&1.0f64.to_le_bytes());
        let err = read_f64bin::<f64, _>(bytes.as_slice()).unwrap_err();
        assert!(matches!(err, Error::SizeMismatch { expected: 6, found: 1 }));
    }

    #[test]
    fn labels_round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("labels.txt");
        save_labels(&p, &[0, 3, 1]).unwrap();
        assert_eq!(load_labels(&p).unwrap(), vec![0, 3, 1]);
    }

    #[test]
    fn format_from_path() {
        assert_eq!(MatrixFormat::from_path(Path::new("a/b.CSV")), MatrixFormat::Csv);
        assert_eq!(MatrixFormat::from_path(Path::new("a/b.bin")), MatrixFormat::F64bin);
    }

    proptest! {
        #[test]
        fn f64bin_round_trip_is_bit_exact(
            rows in 1usize..8,
            cols in 1usize..6,
            raw in proptest::collection::vec(any::<u64>(), 48),
        ) {
            let vals: Vec<f64> = raw.iter().take(rows * cols)
                .map(|&b| f64::from_bits(b))
                .map(|v| if v.is_finite() { v } else { 0.5 })
                .collect();
            let m = DataMatrix::from_vec(rows, cols, vals).unwrap();
            let mut buf = Vec::new();
            write_f64bin(&mut buf, &m).unwrap();
            let back: DataMatrix<f64> = read_f64bin(buf.as_slice()).unwrap();
            prop_assert_eq!((back.n_rows(), back.n_cols()), (rows, cols));
            for (a, b) in m.values().iter().zip(back.values()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }

        #[test]
        fn csv_round_trip_is_exact(vals in proptest::collection::vec(-1e6f64..1e6, 1..30)) {
            let m = DataMatrix::from_vec(vals.len(), 1, vals).unwrap();
            let mut buf = Vec::new();
            write_csv(&mut buf, &m).unwrap();
            let back: DataMatrix<f64> = read_csv(buf.as_slice()).unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
