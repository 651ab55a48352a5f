//! Access to the group, graph and correlator-table data files.
//!
//! The files under `data/` are compiled into the library. A directory can be
//! supplied instead, in which case every file is read from disk and a
//! missing file is an error rather than a silent fallback.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Environment variable naming an on-disk data directory.
pub const DATA_DIR_ENV: &str = "CREPANT_DATA_DIR";

const EMBEDDED: &[(&str, &str)] = &[
    ("groups/E6.txt", include_str!("../data/groups/E6.txt")),
    ("groups/E7.txt", include_str!("../data/groups/E7.txt")),
    ("groups/E8.txt", include_str!("../data/groups/E8.txt")),
    ("graphs/E6.txt", include_str!("../data/graphs/E6.txt")),
    ("graphs/E7.txt", include_str!("../data/graphs/E7.txt")),
    ("graphs/E8.txt", include_str!("../data/graphs/E8.txt")),
    ("tables/E7.txt", include_str!("../data/tables/E7.txt")),
    ("tables/E8.txt", include_str!("../data/tables/E8.txt")),
];

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DataSource {
    dir: Option<PathBuf>,
}

impl DataSource {
    /// The compiled-in copies.
    pub fn embedded() -> Self {
        DataSource { dir: None }
    }

    pub fn directory(dir: impl Into<PathBuf>) -> Self {
        DataSource {
            dir: Some(dir.into()),
        }
    }

    /// Picks the flag value if given, then the environment, then the embedded copies.
    pub fn resolve(flag: Option<&Path>) -> Self {
        match flag {
            Some(p) => Self::directory(p),
            None => match std::env::var_os(DATA_DIR_ENV) {
                Some(p) if !p.is_empty() => Self::directory(PathBuf::from(p)),
                _ => Self::embedded(),
            },
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Reads a file such as `groups/E7.txt`.
    pub fn read(&self, rel: &str) -> Result<String> {
        match &self.dir {
            Some(d) => {
                let path = d.join(rel);
                std::fs::read_to_string(&path)
                    .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
            }
            None => EMBEDDED
                .iter()
                .find(|(name, _)| *name == rel)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| Error::Io(format!("no embedded data file {rel}"))),
        }
    }
}

/// Names of all embedded files, for tooling that copies them out.
pub fn embedded_files() -> impl Iterator<Item = (&'static str, &'static str)> {
    EMBEDDED.iter().copied()
}
