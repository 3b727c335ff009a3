//! JSON-lines verification reports.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::config::Config;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub level: u32,
    pub coeff_bits: u32,
    pub s_precision: u32,
    pub seed: u64,
    pub check_seed: u64,
    pub trials: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub schema_version: u32,
    pub check: String,
    pub suite: String,
    pub params: Params,
    pub status: Status,
    pub details: Value,
    pub elapsed_ms: Option<u64>,
    pub version: String,
    pub config_hash: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema_version: u32,
    pub summary: Counts,
    pub suite: String,
    pub version: String,
    pub config_hash: String,
}

/// Result of one check body.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub details: Value,
}

impl Outcome {
    pub fn new(status: Status, details: Value) -> Outcome {
        Outcome { status, details }
    }

    pub fn from_bool(ok: bool, details: Value) -> Outcome {
        Outcome::new(if ok { Status::Pass } else { Status::Fail }, details)
    }

    pub fn skipped(reason: impl Into<String>) -> Outcome {
        Outcome::new(Status::Skipped, json!({ "reason": reason.into() }))
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Outcome {
        Outcome::new(Status::Fail, json!({ "error": e.to_string() }))
    }
}

/// First 8 bytes of sha256(master seed, check name), little endian.
pub fn check_seed(master: u64, check: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update(check.as_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

pub fn config_hash(cfg: &Config) -> String {
    let canonical = serde_json::to_string(cfg).expect("config serializes");
    let d = Sha256::digest(canonical.as_bytes());
    d.iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects check records for one run.
pub struct Report {
    cfg: Config,
    hash: String,
    records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(cfg: &Config) -> Report {
        Report { cfg: cfg.clone(), hash: config_hash(cfg), records: Vec::new() }
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    /// Run `body` with its per-check seed and record the outcome.
    pub fn check(&mut self, suite: &str, name: &str, body: impl FnOnce(u64) -> Outcome) {
        let check = format!("{suite}.{name}");
        let seed = check_seed(self.cfg.seed, &check);
        let start = Instant::now();
        let outcome = body(seed);
        let elapsed = start.elapsed().as_millis() as u64;
        self.records.push(CheckRecord {
            schema_version: SCHEMA_VERSION,
            check,
            suite: suite.to_string(),
            params: Params {
                level: self.cfg.level,
                coeff_bits: self.cfg.coeff_bits,
                s_precision: self.cfg.s_precision,
                seed: self.cfg.seed,
                check_seed: seed,
                trials: self.cfg.trials,
            },
            status: outcome.status,
            details: outcome.details,
            elapsed_ms: self.cfg.timings.then_some(elapsed),
            version: TOOL_VERSION.to_string(),
            config_hash: self.hash.clone(),
        });
    }

    /// Records sorted by check name.
    pub fn records(&self) -> Vec<CheckRecord> {
        let mut r = self.records.clone();
        r.sort_by(|a, b| a.check.cmp(&b.check));
        r
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts { total: self.records.len(), ..Counts::default() };
        for r in &self.records {
            match r.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Inconclusive => c.inconclusive += 1,
                Status::Skipped => c.skipped += 1,
            }
        }
        c
    }

    pub fn failed(&self) -> bool {
        self.counts().fail > 0
    }

    pub fn summary(&self, suite: &str) -> Summary {
        Summary {
            schema_version: SCHEMA_VERSION,
            summary: self.counts(),
            suite: suite.to_string(),
            version: TOOL_VERSION.to_string(),
            config_hash: self.hash.clone(),
        }
    }

    /// JSON lines: one per check, then the summary.
    pub fn write_jsonl<W: Write>(&self, suite: &str, mut w: W) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(e.to_string());
        for r in self.records() {
            writeln!(w, "{}", serde_json::to_string(&r).expect("record serializes")).map_err(io)?;
        }
        writeln!(w, "{}", serde_json::to_string(&self.summary(suite)).expect("summary serializes")).map_err(io)?;
        Ok(())
    }

    pub fn to_jsonl(&self, suite: &str) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(suite, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_depend_on_name_and_master() {
        assert_eq!(check_seed(1, "a.b"), check_seed(1, "a.b"));
        assert_ne!(check_seed(1, "a.b"), check_seed(1, "a.c"));
        assert_ne!(check_seed(1, "a.b"), check_seed(2, "a.b"));
    }

    #[test]
    fn records_are_sorted_and_counted() {
        let cfg = Config::default();
        let mut r = Report::new(&cfg);
        r.check("s", "z", |_| Outcome::from_bool(true, json!({})));
        r.check("s", "a", |_| Outcome::from_bool(false, json!({"witness": 1})));
        r.check("s", "m", |_| Outcome::skipped("x"));
        let names: Vec<_> = r.records().into_iter().map(|c| c.check).collect();
        assert_eq!(names, ["s.a", "s.m", "s.z"]);
        assert_eq!(r.counts(), Counts { total: 3, pass: 1, fail: 1, inconclusive: 0, skipped: 1 });
        assert!(r.failed());
        let text = r.to_jsonl("s");
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("\"elapsed_ms\":null"));
    }
}
