//! Content-addressed disk cache for operator matrices.

use std::fs;
use std::path::PathBuf;

use hopfcyc_core::linalg::SparseMatrix;
use hopfcyc_core::omega::MatrixStore;
use hopfcyc_core::Scalar;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::format::AlgebraFile;

/// Environment variable naming the cache directory; caching is off when unset.
pub const CACHE_ENV: &str = "HOPFCYC_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct StoredMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

/// Files are named by `sha256(algebra digest, key)`, so different algebras
/// never share entries. I/O errors only disable the cache.
pub struct DiskStore {
    dir: PathBuf,
    algebra: String,
}

impl DiskStore {
    pub fn new(dir: PathBuf, algebra: &AlgebraFile) -> DiskStore {
        let digest = Sha256::digest(algebra.to_json().as_bytes());
        DiskStore {
            dir,
            algebra: hex::encode(digest),
        }
    }

    pub fn from_env(algebra: &AlgebraFile) -> Option<DiskStore> {
        let dir = std::env::var_os(CACHE_ENV)?;
        Some(DiskStore::new(PathBuf::from(dir), algebra))
    }

    fn path(&self, key: &str) -> PathBuf {
        let mut h = Sha256::new();
        h.update(self.algebra.as_bytes());
        h.update([0u8]);
        h.update(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(h.finalize())))
    }
}

impl MatrixStore for DiskStore {
    fn load(&self, key: &str) -> Option<SparseMatrix> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let m: StoredMatrix = serde_json::from_str(&text).ok()?;
        let mut entries = Vec::with_capacity(m.entries.len());
        for (r, c, v) in m.entries {
            if r >= m.rows || c >= m.cols {
                return None;
            }
            entries.push((r, c, v.parse::<Scalar>().ok()?));
        }
        Some(SparseMatrix::from_triplets(m.rows, m.cols, entries))
    }

    fn save(&self, key: &str, matrix: &SparseMatrix) {
        let stored = StoredMatrix {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
            entries: matrix
                .triplets()
                .into_iter()
                .map(|(r, c, v)| (r, c, v.to_string()))
                .collect(),
        };
        let Ok(text) = serde_json::to_string(&stored) else { return };
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        // write then rename so a concurrent reader never sees a partial file
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}
