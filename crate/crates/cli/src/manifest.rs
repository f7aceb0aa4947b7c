//! Output directory handling: exclusive lock, file hashing, run manifest.

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const LOCK_NAME: &str = ".relhartree.lock";
pub const MANIFEST_NAME: &str = "manifest.toml";

/// Description of the cutoff family, recorded so runs with a different `phi`
/// are never compared by accident.
pub const CUTOFF_CHOICE: &str =
    "phi = normalized tail integral of exp(-1/((s-5/4)(8/5-s))); 1 on [0,5/4], 0 beyond 8/5";

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error("output directory {0} is locked by another run (remove {1} if stale)")]
    Locked(PathBuf, PathBuf),
    #[error("cannot prepare output directory {path}: {source}")]
    Create {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Exclusive claim on an output directory, released on drop.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    lock: PathBuf,
    files: Vec<PathBuf>,
}

impl OutputDir {
    pub fn claim(root: &Path) -> Result<Self, OutputError> {
        fs::create_dir_all(root).map_err(|source| OutputError::Create {
            path: root.to_path_buf(),
            source,
        })?;
        let lock = root.join(LOCK_NAME);
        match OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                return Err(OutputError::Locked(root.to_path_buf(), lock));
            }
            Err(source) => {
                return Err(OutputError::Create {
                    path: root.to_path_buf(),
                    source,
                })
            }
        }
        Ok(Self {
            root: root.to_path_buf(),
            lock,
            files: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Create `name` inside the directory and remember it for the manifest.
    pub fn create(&mut self, name: &str) -> std::io::Result<File> {
        let path = self.root.join(name);
        let file = File::create(&path)?;
        if !self.files.iter().any(|p| p == Path::new(name)) {
            self.files.push(PathBuf::from(name));
        }
        Ok(file)
    }

    /// Relative paths written so far, in creation order.
    pub fn files(&self) -> &[PathBuf] {
        &self.files
    }
}

impl Drop for OutputDir {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.lock);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FileEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub config_sha256: String,
    pub cutoff: String,
    pub wall_time_seconds: f64,
    pub files: Vec<FileEntry>,
}

impl Manifest {
    /// Hash every file the run produced and write `manifest.toml`.
    pub fn write(
        out: &OutputDir,
        command: &str,
        seed: u64,
        config_text: &str,
        wall_time_seconds: f64,
    ) -> anyhow::Result<Self> {
        let mut files = Vec::with_capacity(out.files().len());
        for rel in out.files() {
            let bytes = fs::read(out.root().join(rel))?;
            files.push(FileEntry {
                path: rel.to_string_lossy().into_owned(),
                sha256: sha256_hex(&bytes),
                bytes: bytes.len() as u64,
            });
        }
        let manifest = Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed,
            config_sha256: sha256_hex(config_text.as_bytes()),
            cutoff: CUTOFF_CHOICE.to_string(),
            wall_time_seconds,
            files,
        };
        fs::write(out.root().join(MANIFEST_NAME), toml::to_string(&manifest)?)?;
        Ok(manifest)
    }
}
