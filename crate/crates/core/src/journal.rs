//! Append-only JSON-lines journal: one record per invocation.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const JOURNAL_ENV: &str = "PHC_JOURNAL";
pub const DEFAULT_JOURNAL: &str = "phc-journal.jsonl";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JournalRecord {
    pub command: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub outcome: String,
    pub nodes: Option<u64>,
    pub wall_ms: u64,
}

/// `$PHC_JOURNAL`, else `./phc-journal.jsonl`.
pub fn default_path() -> PathBuf {
    std::env::var_os(JOURNAL_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_JOURNAL))
}

pub fn append(path: &Path, record: &JournalRecord) -> Result<()> {
    let line = serde_json::to_string(record).expect("records serialize");
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    writeln!(f, "{line}").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read(path: &Path) -> Result<Vec<JournalRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse { line: i + 1, message: e.to_string() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_and_read_back() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("j.jsonl");
        let r = JournalRecord {
            command: "schedule".into(),
            params: serde_json::json!({"k": 3}),
            seed: None,
            outcome: "ok".into(),
            nodes: Some(4),
            wall_ms: 1,
        };
        append(&p, &r).unwrap();
        append(&p, &r).unwrap();
        assert_eq!(read(&p).unwrap(), vec![r.clone(), r]);
    }
}
