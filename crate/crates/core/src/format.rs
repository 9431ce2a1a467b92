//! Output helpers shared by the report writers and the CLI.

use std::io::Write;
use std::path::Path;

use crate::{Error, Result};

/// Formats `x` with six significant digits, in fixed notation for
/// magnitudes in `[1e-4, 1e6)` and scientific notation otherwise.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    // exponent after rounding to six digits, so 999999.7 goes scientific
    let sci = format!("{x:.5e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// Runs `write` against a temporary file next to `path` and renames it into
/// place only on success. A failed write never leaves a partial file.
pub fn write_atomic(path: &Path, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    {
        let mut buf = std::io::BufWriter::new(tmp.as_file_mut());
        write(&mut buf)?;
        buf.flush().map_err(io_err)?;
    }
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(46.66449751), "46.6645");
        assert_eq!(sig6(-97.2142819), "-97.2143");
        assert_eq!(sig6(1.0), "1.00000");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(999999.7), "1.00000e6");
        assert_eq!(sig6(2.4e9), "2.40000e9");
        assert_eq!(sig6(0.00012345678), "0.000123457");
        assert_eq!(sig6(3.2e-9), "3.20000e-9");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn failed_write_leaves_no_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let err = write_atomic(&path, |w| {
            w.write_all(b"partial").unwrap();
            Err(Error::InvalidConfig("boom".into()))
        });
        assert!(err.is_err());
        assert!(!path.exists());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);

        write_atomic(&path, |w| {
            w.write_all(b"ok").map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })
        })
        .unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "ok");
    }
}
