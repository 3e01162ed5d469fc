//! `x,y` CSV datasets.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::model::{Dataset, Observation};

/// Reads observations from CSV with header `x,y`.
///
/// Returns an empty vector for a header-only file; any malformed row aborts
/// with its 1-based line number.
pub fn read_observations<R: Read>(reader: R) -> Result<Vec<Observation>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();

    match records.next() {
        None => {
            return Err(Error::Csv {
                line: 1,
                message: "missing header `x,y`".into(),
            })
        }
        Some(header) => {
            let header = header.map_err(|e| csv_error(&e, 1))?;
            if header.len() != 2 || &header[0] != "x" || &header[1] != "y" {
                return Err(Error::Csv {
                    line: 1,
                    message: format!(
                        "expected header `x,y`, found `{}`",
                        header.iter().collect::<Vec<_>>().join(",")
                    ),
                });
            }
        }
    }

    let mut out = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| csv_error(&e, 0))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 2 {
            return Err(Error::Csv {
                line,
                message: format!("expected 2 fields, found {}", rec.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|_| Error::Csv {
                line,
                message: format!("`{s}` is not a number"),
            })
        };
        let x = parse(&rec[0])?;
        let y = parse(&rec[1])?;
        let obs = Observation::new(x, y).map_err(|e| Error::Csv {
            line,
            message: e.to_string(),
        })?;
        out.push(obs);
    }
    Ok(out)
}

fn csv_error(e: &csv::Error, fallback_line: u64) -> Error {
    let line = e.position().map_or(fallback_line, |p| p.line());
    Error::Csv {
        line,
        message: e.to_string(),
    }
}

/// Writes the header and one row per observation, using the shortest
/// round-trip representation of each float.
pub fn write_dataset<W: Write>(data: &Dataset, writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let to_err = |e: csv::Error| Error::Io(e.to_string());
    wtr.write_record(["x", "y"]).map_err(to_err)?;
    for o in data.observations() {
        wtr.write_record([o.x().to_string(), o.y().to_string()])
            .map_err(to_err)?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_rows() {
        let obs = read_observations("x,y\n0.5,1\n 2.25 , 0\n".as_bytes()).unwrap();
        assert_eq!(obs.len(), 2);
        assert_eq!(obs[1].x(), 2.25);
    }

    #[test]
    fn header_only_is_empty() {
        assert!(read_observations("x,y\n".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn bad_rows_report_line() {
        let err = read_observations("x,y\n1,2\n3,-1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 3, .. }), "{err:?}");
        let err = read_observations("x,y\n1,abc\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 2, .. }), "{err:?}");
        let err = read_observations("a,b\n1,2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 1, .. }), "{err:?}");
        assert!(read_observations("".as_bytes()).is_err());
    }

    #[test]
    fn write_then_read() {
        let d = crate::model::sample(20, crate::model::Theta::new(0.3).unwrap(), 4).unwrap();
        let mut buf = Vec::new();
        write_dataset(&d, &mut buf).unwrap();
        let back = Dataset::new(read_observations(buf.as_slice()).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
