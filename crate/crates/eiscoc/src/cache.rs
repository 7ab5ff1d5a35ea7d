//! On-disk cache of relation-lattice HNF bases, keyed by level.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use eiscoc_core::gm_cocycle::relation_lattice;
use eiscoc_core::int_lattice::{ColumnLattice, IntMat};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const ENV_VAR: &str = "EISCOC_CACHE";
pub const DEFAULT_DIR: &str = ".eiscoc";

#[derive(Serialize, Deserialize)]
struct Stored {
    level: u64,
    cols: usize,
    basis: Vec<Vec<String>>,
}

pub struct Cache {
    dir: Option<PathBuf>,
    mem: RwLock<BTreeMap<u64, ColumnLattice>>,
}

impl Cache {
    /// Directory from `EISCOC_CACHE`, or `./.eiscoc`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(ENV_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Self::at(dir)
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()), mem: RwLock::new(BTreeMap::new()) }
    }

    /// In-memory only.
    pub fn memory() -> Self {
        Cache { dir: None, mem: RwLock::new(BTreeMap::new()) }
    }

    fn path(&self, n: u64) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("relation_lattice_{n}.json")))
    }

    pub fn relation_lattice(&self, n: u64) -> eiscoc_core::Result<ColumnLattice> {
        if let Some(l) = self.mem.read().unwrap().get(&n) {
            return Ok(l.clone());
        }
        let expected_cols = ((n - 1) * (n - 1)) as usize;
        let loaded = self.path(n).and_then(|p| load(&p, n, expected_cols));
        let lattice = match loaded {
            Some(l) => l,
            None => {
                let l = ColumnLattice::new(&relation_lattice(n)?);
                if let Some(p) = self.path(n) {
                    // best effort; a failed write only costs a recomputation
                    let _ = store(&p, n, &l);
                }
                l
            }
        };
        self.mem.write().unwrap().entry(n).or_insert_with(|| lattice.clone());
        Ok(lattice)
    }
}

fn load(path: &Path, n: u64, cols: usize) -> Option<ColumnLattice> {
    let s: Stored = serde_json::from_str(&fs::read_to_string(path).ok()?).ok()?;
    if s.level != n || s.cols != cols || s.basis.iter().any(|r| r.len() != cols) {
        return None;
    }
    let mut m = IntMat::zeros(s.basis.len(), cols);
    for (i, row) in s.basis.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[(i, j)] = x.parse::<BigInt>().ok()?;
        }
    }
    if !eiscoc_core::int_lattice::is_hnf(&m) {
        return None;
    }
    Some(ColumnLattice::from_basis(m))
}

fn store(path: &Path, n: u64, l: &ColumnLattice) -> std::io::Result<()> {
    if path.exists() {
        return Ok(());
    }
    let b = l.basis();
    let s = Stored {
        level: n,
        cols: b.cols(),
        basis: (0..b.rows()).map(|i| b.row(i).iter().map(|x| x.to_string()).collect()).collect(),
    };
    let dir = path.parent().expect("cache file has a parent");
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".tmp-{}-{}", std::process::id(), n));
    fs::write(&tmp, serde_json::to_vec(&s).expect("serializes"))?;
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::at(dir.path());
        let a = c.relation_lattice(5).unwrap();
        assert!(dir.path().join("relation_lattice_5.json").exists());
        let b = Cache::at(dir.path()).relation_lattice(5).unwrap();
        assert_eq!(a, b);
        assert_eq!(Cache::memory().relation_lattice(5).unwrap(), a);
    }

    #[test]
    fn corrupt_file_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("relation_lattice_5.json"), "{not json").unwrap();
        let l = Cache::at(dir.path()).relation_lattice(5).unwrap();
        assert_eq!(l, Cache::memory().relation_lattice(5).unwrap());
    }
}
