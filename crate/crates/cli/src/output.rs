use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::CliError;
use crate::config::{Format, RunConfig};

/// A rendered command result.
#[derive(Debug)]
pub struct Artifact {
    /// File stem used under `$LRLAB_OUT_DIR`.
    pub name: String,
    pub json: String,
    /// `None` when the result has no tabular form.
    pub csv: Option<String>,
    pub passed: bool,
}

fn target(artifact: &Artifact, cfg: &RunConfig, format: Format) -> Option<PathBuf> {
    if let Some(p) = &cfg.out {
        return Some(p.clone());
    }
    std::env::var_os("LRLAB_OUT_DIR")
        .filter(|d| !d.is_empty())
        .map(|d| PathBuf::from(d).join(format!("{}.{}", artifact.name, format.extension())))
}

fn write_atomic(path: &Path, body: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(parent).map_err(io)?;
    tmp.write_all(body.as_bytes()).map_err(io)?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn emit(artifact: &Artifact, cfg: &RunConfig) -> Result<(), CliError> {
    let format = cfg.format.unwrap_or(Format::Json);
    let body = match format {
        Format::Json => artifact.json.clone(),
        Format::Csv => artifact
            .csv
            .clone()
            .ok_or_else(|| CliError::Usage(format!("{} has no CSV form", artifact.name)))?,
    };
    match target(artifact, cfg, format) {
        Some(path) => write_atomic(&path, &body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
