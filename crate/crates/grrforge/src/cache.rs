//! On-disk element tables, one file per group.
//!
//! Files live in the directory named by `GRRFORGE_CACHE` (or an explicit
//! override). A file that fails verification is reported and rebuilt.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use grrforge_core::table::ElementTable;
use grrforge_core::{Error, GroupSpec};

use crate::error::CliResult;

pub const CACHE_ENV: &str = "GRRFORGE_CACHE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Built,
    /// The old file was rejected for the given reason and overwritten.
    Rebuilt(String),
}

impl CacheStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CacheStatus::Disabled => "disabled",
            CacheStatus::Hit => "hit",
            CacheStatus::Built => "built",
            CacheStatus::Rebuilt(_) => "rebuilt",
        }
    }
}

/// The explicit directory if given, else `$GRRFORGE_CACHE`.
pub fn cache_dir(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn file_name(spec: &GroupSpec) -> String {
    format!("{}.grrf", spec.descriptor().replace(':', "_"))
}

/// Load the table from the cache, or enumerate it and store it.
pub fn load_or_build(spec: &GroupSpec, cap: usize, dir: Option<&Path>) -> CliResult<(ElementTable, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((ElementTable::enumerate(spec, cap)?, CacheStatus::Disabled));
    };
    let path = dir.join(file_name(spec));
    let mut status = CacheStatus::Built;
    match fs::read(&path) {
        Ok(bytes) => match ElementTable::from_cache_bytes(spec, &bytes) {
            Ok(t) if t.len() <= cap => return Ok((t, CacheStatus::Hit)),
            Ok(t) => {
                return Err(Error::CapExceeded {
                    order: t.len().to_string(),
                    cap: cap as u64,
                }
                .into())
            }
            Err(Error::CorruptCache(why)) => status = CacheStatus::Rebuilt(why),
            Err(e) => return Err(e.into()),
        },
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => return Err(e.into()),
    }
    let table = ElementTable::enumerate(spec, cap)?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, table.to_cache_bytes())?;
    fs::rename(&tmp, &path)?;
    Ok((table, status))
}
