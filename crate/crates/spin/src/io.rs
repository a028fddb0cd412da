//! File formats used by the experiment harness: CSV with reproducible float
//! formatting, one-value-per-line signal files, and 16-bit binary PGM images.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Formats a float with 17 significant digits so CSV output is bit-exact
/// across reruns.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a signal as CSV, one value per line.
pub fn write_signal_csv(path: &Path, signal: &[f64]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for v in signal {
        writeln!(w, "{}", fmt_f64(*v))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a one-value-per-line signal file. Blank lines and `#` comments are
/// skipped.
pub fn read_signal_csv(path: &Path) -> Result<Vec<f64>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("bad float in signal file: {line:?}")))?;
        out.push(v);
    }
    Ok(out)
}

/// Writes a 2D image as binary PGM (P5), 16-bit big-endian, values mapped
/// linearly from [min, max] onto [0, 65535]. A constant image maps to zeros.
pub fn write_pgm(path: &Path, data: &[f64], height: usize, width: usize) -> Result<()> {
    if data.len() != height * width {
        return Err(Error::DimensionMismatch {
            expected: height * width,
            got: data.len(),
        });
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in data {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let span = hi - lo;
    let mut w = BufWriter::new(File::create(path)?);
    write!(w, "P5\n{width} {height}\n65535\n")?;
    for &v in data {
        let scaled = if span > 0.0 {
            ((v - lo) / span * 65535.0).round().clamp(0.0, 65535.0) as u16
        } else {
            0
        };
        w.write_all(&scaled.to_be_bytes())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_stable() {
        assert_eq!(fmt_f64(0.125), "1.2500000000000000e-1");
        assert_eq!(fmt_f64(-3.0), "-3.0000000000000000e0");
        let v = 0.1 + 0.2;
        assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn signal_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sig.csv");
        let sig = vec![1.0, -0.5, 3.25e-7];
        write_signal_csv(&path, &sig).unwrap();
        assert_eq!(read_signal_csv(&path).unwrap(), sig);
    }

    #[test]
    fn pgm_header_and_payload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.pgm");
        write_pgm(&path, &[0.0, 1.0, 0.5, 0.25], 2, 2).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert!(bytes.starts_with(b"P5\n2 2\n65535\n"));
        let payload = &bytes[b"P5\n2 2\n65535\n".len()..];
        assert_eq!(payload.len(), 8);
        assert_eq!(&payload[0..2], &[0, 0]);
        assert_eq!(&payload[2..4], &[0xFF, 0xFF]);
    }
}
