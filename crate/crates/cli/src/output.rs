//! Output plumbing: atomic file writes and the metadata header every
//! output file carries (tool version, seed, config digest).

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub const TOOL: &str = "pda";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Run provenance embedded in every output file.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub config_digest: String,
}

impl Meta {
    /// Digest is over the resolved subcommand configuration, so reruns
    /// with identical arguments produce identical files.
    pub fn new(seed: Option<u64>, config: &impl std::fmt::Debug) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(format!("{config:?}").as_bytes());
        let digest = hasher
            .finalize()
            .iter()
            .fold(String::new(), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            });
        Self {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            seed,
            config_digest: digest[..16].to_string(),
        }
    }

    /// `# key=value` comment lines for CSV outputs.
    pub fn csv_header(&self) -> String {
        let mut s = format!("# tool={} version={}", self.tool, self.version);
        if let Some(seed) = self.seed {
            let _ = write!(s, " seed={seed}");
        }
        let _ = write!(s, " config_digest={}", self.config_digest);
        s.push('\n');
        s
    }
}

/// Ensures the output location is usable before any compute starts.
pub fn check_output_path(path: &Path) -> io::Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    if !parent.is_dir() {
        return Err(io::Error::new(
            io::ErrorKind::NotFound,
            format!("output directory {} does not exist", parent.display()),
        ));
    }
    Ok(())
}

/// Writes via a temp file in the same directory, then renames into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let tmp = parent.join(format!(
        ".{}.tmp-{}",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    fs::write(&tmp, bytes)?;
    match fs::rename(&tmp, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            Err(e)
        }
    }
}
