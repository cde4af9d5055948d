//! Output plumbing: path-annotated I/O errors, atomic writes, and the
//! formatting helpers that keep reruns byte-identical.

use std::fs;
use std::path::Path;

use facies_core::{Error, Result};
use serde::Serialize;

pub fn io_with_path(path: &Path, err: std::io::Error) -> Error {
    Error::Io(std::io::Error::new(
        err.kind(),
        format!("{}: {err}", path.display()),
    ))
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_with_path(path, e))
}

pub fn ensure_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| io_with_path(path, e))
}

/// Write through a temp file in the same directory and rename into place, so
/// a failure never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    fs::write(tmp, contents).map_err(|e| io_with_path(tmp, e))?;
    fs::rename(tmp, path).map_err(|e| io_with_path(path, e))?;
    Ok(())
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("serializing report: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Shortest round-trip decimal form; `NaN` for undefined entries.
pub fn fmt_f64(value: f64) -> String {
    if value.is_nan() {
        "NaN".to_string()
    } else {
        value.to_string()
    }
}

/// Quote a CSV field only when it needs it.
pub fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.json");
        write_atomic(&path, "one").unwrap();
        write_atomic(&path, "two").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "two");
        let names: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert_eq!(names, vec![std::ffi::OsString::from("x.json")]);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("CROSS H CATTLE"), "CROSS H CATTLE");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn float_formatting_round_trips() {
        for v in [0.3400000000000001, -0.523, 1.0, 0.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(f64::NAN), "NaN");
    }

    #[test]
    fn missing_file_error_names_the_path() {
        let err = read_to_string(Path::new("/no/such/file.json")).unwrap_err();
        assert!(err.to_string().contains("/no/such/file.json"));
        assert_eq!(err.exit_code(), 2);
    }
}
