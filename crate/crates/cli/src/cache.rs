//! On-disk cache of supersingular data, one JSON file per prime.
//!
//! The directory comes from `--cache-dir`, else `PADIC_PERIODS_CACHE`;
//! without either nothing is cached. Files written by another version are
//! ignored and overwritten.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use padic_periods::arith::Fp2Context;
use padic_periods::supersingular::{supersingular_lambdas, SupersingularSet, ORDER_KEY};

use crate::report::VERSION;
use crate::CliError;

pub const CACHE_ENV: &str = "PADIC_PERIODS_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedSupersingular {
    pub version: String,
    pub p: u64,
    pub nonresidue: u64,
    pub order_key: String,
    pub lambdas: Vec<[u64; 2]>,
}

impl CachedSupersingular {
    pub fn from_set(set: &SupersingularSet) -> Self {
        CachedSupersingular {
            version: VERSION.to_string(),
            p: set.p(),
            nonresidue: set.ctx().nonresidue(),
            order_key: set.order_key().to_string(),
            lambdas: set.lambdas().iter().map(|l| l.coords()).collect(),
        }
    }

    /// Rebuilds the set, re-validating every invariant.
    pub fn to_set(&self) -> Result<SupersingularSet, CliError> {
        let ctx = Fp2Context::new(self.p).map_err(|e| CliError::Cache(e.to_string()))?;
        if ctx.nonresidue() != self.nonresidue || self.order_key != ORDER_KEY {
            return Err(CliError::Cache(format!(
                "incompatible field data for p = {}",
                self.p
            )));
        }
        let lambdas = self
            .lambdas
            .iter()
            .map(|&[a, b]| ctx.elem(a as i64, b as i64))
            .collect();
        SupersingularSet::from_lambdas(ctx, lambdas).map_err(|e| CliError::Cache(e.to_string()))
    }
}

/// `flag` if given, else the environment variable.
pub fn cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

pub fn path_for(dir: &Path, p: u64) -> PathBuf {
    dir.join(format!("supersingular-{p}.json"))
}

pub fn store(dir: &Path, set: &SupersingularSet) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let text = serde_json::to_string_pretty(&CachedSupersingular::from_set(set))?;
    fs::write(path_for(dir, set.p()), text + "\n")
}

/// `None` when the file is missing, unreadable as a cache entry, or stamped
/// with another version.
pub fn load(dir: &Path, p: u64) -> Result<Option<SupersingularSet>, CliError> {
    let text = match fs::read_to_string(path_for(dir, p)) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(CliError::Cache(e.to_string())),
    };
    let entry: CachedSupersingular = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    if entry.version != VERSION || entry.p != p {
        return Ok(None);
    }
    entry.to_set().map(Some)
}

pub fn load_or_compute(dir: Option<&Path>, p: u64) -> Result<SupersingularSet, CliError> {
    if let Some(dir) = dir {
        if let Some(set) = load(dir, p)? {
            return Ok(set);
        }
    }
    let set = supersingular_lambdas(p).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(dir) = dir {
        store(dir, &set).map_err(|e| CliError::Cache(e.to_string()))?;
    }
    Ok(set)
}
