//! Run parameters, from defaults, a TOML/JSON file and command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::witt::MAX_PRECISION;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub level: u32,
    pub coeff_bits: u32,
    pub s_precision: u32,
    pub seed: u64,
    pub trials: u64,
    pub theta_level: u32,
    /// Neither of these is part of the config hash: they do not change results.
    #[serde(skip_serializing)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip_serializing)]
    pub timings: bool,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            level: 6,
            coeff_bits: 3,
            s_precision: 16,
            seed: 0,
            trials: 100,
            theta_level: 8,
            cache_dir: None,
            timings: false,
        }
    }
}

/// Values given on the command line; `None` keeps the file or default value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub level: Option<u32>,
    pub coeff_bits: Option<u32>,
    pub s_precision: Option<u32>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub theta_level: Option<u32>,
    pub timings: bool,
}

impl Config {
    pub fn from_file(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|x| x == "json");
        if is_json {
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
        }
    }

    pub fn apply(mut self, o: &Overrides) -> Config {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = o.$f { self.$f = v; } )* };
        }
        set!(level, coeff_bits, s_precision, seed, trials, theta_level);
        self.timings |= o.timings;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(1..=crate::quotient::MAX_LEVEL).contains(&self.level) {
            return bad(format!("level {} outside 1..={}", self.level, crate::quotient::MAX_LEVEL));
        }
        if !(1..=crate::quotient::MAX_LEVEL).contains(&self.theta_level) {
            return bad(format!("theta_level {} outside 1..={}", self.theta_level, crate::quotient::MAX_LEVEL));
        }
        if !(1..=32).contains(&self.coeff_bits) {
            return bad(format!("coeff_bits {} outside 1..=32", self.coeff_bits));
        }
        if !(1..=2 * MAX_PRECISION).contains(&self.s_precision) {
            return bad(format!("s_precision {} outside 1..={}", self.s_precision, 2 * MAX_PRECISION));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.toml");
        std::fs::write(&p, "level = 5\nseed = 9\n").unwrap();
        let c = Config::from_file(&p).unwrap().apply(&Overrides { seed: Some(3), ..Overrides::default() });
        assert_eq!((c.level, c.seed, c.coeff_bits), (5, 3, 3));
        let j = dir.path().join("c.json");
        std::fs::write(&j, r#"{"trials": 7}"#).unwrap();
        assert_eq!(Config::from_file(&j).unwrap().trials, 7);
        std::fs::write(&p, "levle = 5\n").unwrap();
        assert!(matches!(Config::from_file(&p), Err(Error::Config(_))));
    }

    #[test]
    fn validation() {
        assert!(Config::default().validate().is_ok());
        assert!(Config { coeff_bits: 0, ..Config::default() }.validate().is_err());
        assert!(Config { s_precision: 500, ..Config::default() }.validate().is_err());
    }
}
