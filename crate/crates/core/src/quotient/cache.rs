//! On-disk JSON cache of enumerated quotients.
//!
//! Digit strings use 0, 1, 2, 3 for 0, 1, w, w^2. Tables hold left-multiplication
//! permutations by named generators that lie in the group.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{project_named, QuotientElement, QuotientGroup};
use crate::error::{Error, Result};
use crate::stabilizer::{Group, Named};
use crate::witt::F4;

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "MORAVA_S2_CACHE_DIR";

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct CacheFile {
    format_version: u32,
    group: Group,
    level: u32,
    digits: Vec<String>,
    tables: BTreeMap<String, Vec<u32>>,
}

fn file_name(group: Group, level: u32) -> String {
    format!("quotient-{}-{level}.json", group.name())
}

fn parse_digits(s: &str) -> Result<Vec<F4>> {
    s.bytes()
        .map(|b| match b {
            b'0'..=b'3' => Ok(F4::from_bits(b - b'0')),
            _ => Err(Error::Cache(format!("bad digit {:?}", b as char))),
        })
        .collect()
}

fn tables_for(q: &QuotientGroup) -> BTreeMap<String, Vec<u32>> {
    let mut out = BTreeMap::new();
    for name in [Named::Omega, Named::I, Named::Alpha] {
        if let Ok(g) = project_named(name, q.group(), q.level()) {
            let t = q.elements().iter().map(|x| q.index_of(&g.mul(x)).expect("closed") as u32).collect();
            out.insert(format!("left_mul_{}", name.symbol()), t);
        }
    }
    out
}

impl QuotientGroup {
    pub fn save_cache(&self, dir: &Path) -> Result<PathBuf> {
        let file = CacheFile {
            format_version: CACHE_FORMAT_VERSION,
            group: self.group(),
            level: self.level(),
            digits: self.elements().iter().map(|q| q.digit_string()).collect(),
            tables: tables_for(self),
        };
        fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
        let path = dir.join(file_name(self.group(), self.level()));
        let text = serde_json::to_string(&file).map_err(|e| Error::Io(e.to_string()))?;
        fs::write(&path, text).map_err(|e| Error::Io(e.to_string()))?;
        Ok(path)
    }

    pub fn load_cache(dir: &Path, group: Group, level: u32) -> Result<QuotientGroup> {
        let path = dir.join(file_name(group, level));
        let text = fs::read_to_string(&path).map_err(|e| Error::Io(e.to_string()))?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| Error::Cache(e.to_string()))?;
        if file.format_version != CACHE_FORMAT_VERSION {
            return Err(Error::Cache(format!("format version {}", file.format_version)));
        }
        if file.group != group || file.level != level {
            return Err(Error::Cache("descriptor mismatch".into()));
        }
        let mut els = Vec::with_capacity(file.digits.len());
        for s in &file.digits {
            let d = parse_digits(s)?;
            if d.len() as u32 != level {
                return Err(Error::Cache("digit string of wrong length".into()));
            }
            els.push(QuotientElement::from_digits(group, &d).map_err(|e| Error::Cache(e.to_string()))?);
        }
        let q = QuotientGroup::from_elements(group, level, els);
        if q.len() != file.digits.len() {
            return Err(Error::Cache("duplicate elements".into()));
        }
        Ok(q)
    }

    /// Enumerate, reading from and writing to `dir` when given. A cache file that
    /// fails validation is ignored and rewritten.
    pub fn enumerate_cached(group: Group, level: u32, cap: u64, dir: Option<&Path>) -> Result<QuotientGroup> {
        if let Some(dir) = dir {
            if let Ok(q) = QuotientGroup::load_cache(dir, group, level) {
                if q.len() as u64 <= cap {
                    return Ok(q);
                }
            }
        }
        let q = QuotientGroup::enumerate(group, level, cap)?;
        if let Some(dir) = dir {
            q.save_cache(dir)?;
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::DEFAULT_SIZE_CAP;

    #[test]
    fn cached_enumeration_is_identical() {
        let dir = tempfile::tempdir().unwrap();
        let fresh = QuotientGroup::enumerate(Group::S21, 5, DEFAULT_SIZE_CAP).unwrap();
        let first = QuotientGroup::enumerate_cached(Group::S21, 5, DEFAULT_SIZE_CAP, Some(dir.path())).unwrap();
        let second = QuotientGroup::enumerate_cached(Group::S21, 5, DEFAULT_SIZE_CAP, Some(dir.path())).unwrap();
        assert_eq!(fresh.elements(), first.elements());
        assert_eq!(fresh.elements(), second.elements());
        let path = dir.path().join(file_name(Group::S21, 5));
        let raw: CacheFile = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(raw.tables["left_mul_alpha"].len(), fresh.len());
    }

    #[test]
    fn stale_version_is_rejected_and_rewritten() {
        let dir = tempfile::tempdir().unwrap();
        let q = QuotientGroup::enumerate(Group::S21, 4, DEFAULT_SIZE_CAP).unwrap();
        let path = q.save_cache(dir.path()).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("\"format_version\":1", "\"format_version\":0");
        fs::write(&path, text).unwrap();
        assert!(matches!(QuotientGroup::load_cache(dir.path(), Group::S21, 4), Err(Error::Cache(_))));
        let again = QuotientGroup::enumerate_cached(Group::S21, 4, DEFAULT_SIZE_CAP, Some(dir.path())).unwrap();
        assert_eq!(again.elements(), q.elements());
        assert!(QuotientGroup::load_cache(dir.path(), Group::S21, 4).is_ok());
    }
}
