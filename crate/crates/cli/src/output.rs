//! Plain-text writers. Floats are printed with 17 significant digits so
//! every value reads back bit-exactly.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;

use jcgrav_core::observables::QGrid;

use crate::error::CliError;

pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// File-name fragment for a `q·g` value, e.g. `qg1.5e7`.
pub fn qg_tag(qg: f64) -> String {
    format!("qg{qg:e}")
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

fn finish(path: &Path, w: BufWriter<File>) -> Result<(), CliError> {
    w.into_inner().map_err(|e| CliError::io(path, e.into_error()))?.sync_all().map_err(|e| CliError::io(path, e))
}

/// Two-column CSV `lambda_t,value`.
pub fn write_series(path: &Path, lambda_t: &[f64], values: &[f64]) -> Result<(), CliError> {
    let mut w = create(path)?;
    let mut body = String::from("lambda_t,value\n");
    for (t, v) in lambda_t.iter().zip(values) {
        body.push_str(&fmt17(*t));
        body.push(',');
        body.push_str(&fmt17(*v));
        body.push('\n');
    }
    w.write_all(body.as_bytes()).map_err(|e| CliError::io(path, e))?;
    finish(path, w)
}

/// Long-form `x,y,q`, x-major.
pub fn write_qgrid_long(path: &Path, q: &QGrid) -> Result<(), CliError> {
    let mut w = create(path)?;
    let mut body = String::from("x,y,q\n");
    for (i, x) in q.x.iter().enumerate() {
        for (j, y) in q.y.iter().enumerate() {
            body.push_str(&format!("{},{},{}\n", fmt17(*x), fmt17(*y), fmt17(q.values[[i, j]])));
        }
    }
    w.write_all(body.as_bytes()).map_err(|e| CliError::io(path, e))?;
    finish(path, w)
}

/// Matrix form: two header lines with the axes, then one line per `x`
/// holding `Q` along `y`, space separated.
pub fn write_qgrid_matrix(path: &Path, q: &QGrid) -> Result<(), CliError> {
    let mut w = create(path)?;
    let axis = |a: &[f64]| a.iter().map(|v| fmt17(*v)).collect::<Vec<_>>().join(" ");
    let mut body = format!("# x {}\n# y {}\n", axis(&q.x), axis(&q.y));
    for row in q.values.rows() {
        body.push_str(&row.iter().map(|v| fmt17(*v)).collect::<Vec<_>>().join(" "));
        body.push('\n');
    }
    w.write_all(body.as_bytes()).map_err(|e| CliError::io(path, e))?;
    finish(path, w)
}

pub fn write_key_values(path: &Path, entries: &[(String, String)]) -> Result<(), CliError> {
    let mut w = create(path)?;
    let body: String = entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
    w.write_all(body.as_bytes()).map_err(|e| CliError::io(path, e))?;
    finish(path, w)
}

pub fn append_line(path: &Path, line: &str) -> Result<(), CliError> {
    let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(|e| CliError::io(path, e))?;
    writeln!(f, "{line}").map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 8.5e7, f64::MIN_POSITIVE, 0.0] {
            let s = fmt17(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(fmt17(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn tags() {
        assert_eq!(qg_tag(0.0), "qg0e0");
        assert_eq!(qg_tag(1.5e7), "qg1.5e7");
        assert_eq!(qg_tag(0.5e7), "qg5e6");
    }
}
