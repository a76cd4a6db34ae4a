//! Report persistence: CSV and JSON writers with deterministic bytes,
//! `--force` overwrite semantics, and removal of partial outputs when a
//! command fails midway.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::{validation, CliError, CliResult};

/// Tracks every file a command intends to write.  Files land on disk only
/// via `commit`; on failure `abandon` removes anything already written.
pub struct OutputSet {
    dir: PathBuf,
    force: bool,
    written: Vec<PathBuf>,
}

impl OutputSet {
    pub fn new(dir: &Path, force: bool) -> CliResult<OutputSet> {
        std::fs::create_dir_all(dir)
            .map_err(|e| validation(format!("cannot create output dir {}: {e}", dir.display())))?;
        Ok(OutputSet {
            dir: dir.to_path_buf(),
            force,
            written: Vec::new(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    /// Refuse to touch an existing file unless `--force` was given.
    pub fn claim(&mut self, name: &str) -> CliResult<PathBuf> {
        let p = self.path(name);
        if p.exists() && !self.force {
            return Err(validation(format!(
                "output {} exists; pass --force to overwrite",
                p.display()
            )));
        }
        Ok(p)
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> CliResult<PathBuf> {
        let p = self.claim(name)?;
        std::fs::write(&p, bytes)
            .map_err(|e| CliError::Computation(format!("cannot write {}: {e}", p.display())))?;
        self.written.push(p.clone());
        Ok(p)
    }

    /// Remove everything written so far (cleanup after a failure).
    pub fn abandon(&mut self) {
        for p in self.written.drain(..) {
            let _ = std::fs::remove_file(&p);
        }
    }

    pub fn written_paths(&self) -> &[PathBuf] {
        &self.written
    }
}

/// Shared JSON report envelope: tool version, command name, resolved
/// parameter echo, seed where meaningful, certification mode where the
/// numbers carry one, and a claim label tying the table to the statement
/// it checks.
#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub claim: String,
    pub config: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<String>,
    pub result: T,
}

pub fn envelope<T: Serialize>(
    command: &str,
    claim: &str,
    config: BTreeMap<String, String>,
    seed: Option<u64>,
    certification: Option<String>,
    result: T,
) -> Envelope<T> {
    Envelope {
        tool: "hurwitz",
        version: env!("CARGO_PKG_VERSION"),
        command: command.to_string(),
        claim: claim.to_string(),
        config,
        seed,
        certification,
        result,
    }
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Computation(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s.into_bytes())
}

/// CSV per the house dialect: comma-separated, header row, UTF-8, LF,
/// no quoting.  Panics in debug if a field would need quoting.
pub struct Csv {
    buf: String,
    width: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Csv {
        let mut c = Csv {
            buf: String::new(),
            width: header.len(),
        };
        c.row(header);
        c
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) {
        assert_eq!(fields.len(), self.width, "csv row width mismatch");
        for (i, f) in fields.iter().enumerate() {
            let f = f.as_ref();
            debug_assert!(
                !f.contains(',') && !f.contains('"') && !f.contains('\n'),
                "csv field {f:?} would need quoting"
            );
            if i > 0 {
                self.buf.push(',');
            }
            self.buf.push_str(f);
        }
        self.buf.push('\n');
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf.into_bytes()
    }
}

/// Fixed-precision float rendering so identical runs give identical bytes.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.12}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_dialect() {
        let mut c = Csv::new(&["a", "b"]);
        c.row(&["1", "x|y"]);
        assert_eq!(String::from_utf8(c.into_bytes()).unwrap(), "a,b\n1,x|y\n");
    }

    #[test]
    fn force_gate() {
        let dir = std::env::temp_dir().join(format!("hurwitz-out-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let mut out = OutputSet::new(&dir, false).unwrap();
        out.write("r.csv", b"a\n").unwrap();
        let mut again = OutputSet::new(&dir, false).unwrap();
        assert!(again.write("r.csv", b"b\n").is_err());
        let mut forced = OutputSet::new(&dir, true).unwrap();
        forced.write("r.csv", b"b\n").unwrap();
        assert_eq!(std::fs::read(dir.join("r.csv")).unwrap(), b"b\n");
        forced.abandon();
        assert!(!dir.join("r.csv").exists());
        let _ = std::fs::remove_dir_all(&dir);
    }
}
