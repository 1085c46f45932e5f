//! Matrix files and complex scalars on the command line.
//!
//! A matrix file is JSON: `{"rows": r, "cols": c, "data": [[[re, im], ...], ...]}`
//! with `data` row-major.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rankrange::ComplexMatrix;
use serde_json::Value;

fn finite(x: f64, what: &str) -> Result<f64, String> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{what} is not finite"))
    }
}

fn number(text: &str, whole: &str) -> Result<f64, String> {
    let bad = || format!("malformed complex number '{whole}' at token '{text}'");
    // f64::from_str also accepts "inf" and "nan"; only decimals are allowed here
    if !text
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'))
    {
        return Err(bad());
    }
    text.parse::<f64>().map_err(|_| bad()).and_then(|x| finite(x, whole))
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (`i` alone means `1i`).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty complex number".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(number(s, s)?, 0.0));
    };
    // split at the last sign that does not belong to an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        t => number(t, s),
    };
    match split {
        Some(p) => Ok(Complex64::new(number(&body[..p], s)?, imag(&body[p..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

fn count(v: &Value, key: &str) -> Result<usize, String> {
    let x = v.get(key).ok_or_else(|| format!("missing field '{key}'"))?;
    x.as_u64()
        .filter(|&n| n > 0)
        .map(|n| n as usize)
        .ok_or_else(|| format!("field '{key}' must be a positive integer, got {x}"))
}

/// Parses the JSON text of a matrix file.
pub fn parse_matrix_text(text: &str) -> Result<ComplexMatrix, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let rows = count(&v, "rows")?;
    let cols = count(&v, "cols")?;
    let data = v
        .get("data")
        .ok_or("missing field 'data'")?
        .as_array()
        .ok_or("field 'data' must be an array of rows")?;
    if data.len() != rows {
        return Err(format!("'data' has {} rows, expected {rows}", data.len()));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| format!("data row {i} is not an array"))?;
        if row.len() != cols {
            return Err(format!("data row {i} has {} entries, expected {cols}", row.len()));
        }
        for (j, z) in row.iter().enumerate() {
            let pair = z
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| format!("entry ({i}, {j}) must be a [re, im] pair, got {z}"))?;
            let part = |x: &Value| {
                x.as_f64()
                    .ok_or_else(|| format!("entry ({i}, {j}) has a non-numeric part {x}"))
                    .and_then(|x| finite(x, &format!("entry ({i}, {j})")))
            };
            entries.push(Complex64::new(part(&pair[0])?, part(&pair[1])?));
        }
    }
    ComplexMatrix::new(rows, cols, entries).map_err(|e| e.to_string())
}

/// Reads a matrix file.
pub fn parse_matrix(path: &Path) -> Result<ComplexMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_matrix_text(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn json_number(x: f64) -> String {
    serde_json::Number::from_f64(x).map_or_else(|| "null".to_string(), |n| n.to_string())
}

/// Matrix file text, one row per line. Numbers use the shortest decimal
/// that reads back to the same `f64`.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut s = format!("{{\n  \"rows\": {},\n  \"cols\": {},\n  \"data\": [\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| {
                let z = m[(i, j)];
                format!("[{}, {}]", json_number(z.re), json_number(z.im))
            })
            .collect();
        let sep = if i + 1 < m.rows() { "," } else { "" };
        s.push_str(&format!("    [{}]{sep}\n", row.join(", ")));
    }
    s.push_str("  ]\n}\n");
    s
}
