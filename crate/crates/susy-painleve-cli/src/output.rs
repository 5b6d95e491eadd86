//! Serialization and atomic file output.

use std::io::Write;
use std::path::Path;
use susy_painleve::{C64, Error, Result};

/// CSV with header `<var>,re,im` and 17-significant-digit rows.
pub fn render_csv(var: &str, rows: &[[f64; 3]]) -> String {
    let mut s = format!("{var},re,im\n");
    for r in rows {
        s.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", r[0], r[1], r[2]));
    }
    s
}

pub fn complex_json(z: C64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

pub fn rows_json(rows: &[[f64; 3]]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|r| serde_json::json!([r[0], r[1], r[2]]))
            .collect(),
    )
}

fn io_error(op: &str, e: std::io::Error) -> Error {
    Error::Invalid(format!("{op}: {e}"))
}

/// Write to stdout, or atomically (temp file + rename) to `path`.
pub fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp =
                tempfile::NamedTempFile::new_in(dir).map_err(|e| io_error("create temp file", e))?;
            tmp.write_all(content.as_bytes())
                .map_err(|e| io_error("write temp file", e))?;
            tmp.persist(p)
                .map_err(|e| io_error("rename into place", e.error))?;
            Ok(())
        }
    }
}
