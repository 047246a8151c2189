//! Loading official shift/rotation files and writing generated ones.
//!
//! A data directory holds one text file per asset plus a manifest that
//! maps asset names to relative paths, one `name = path` line each.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use mtbench_core::problems::data::{generate_asset, parse_asset, render_asset};
use mtbench_core::problems::{
    AssetId, AssetPayload, AssetSource, BenchmarkProblem, ProblemId, ProblemError, Provenance,
};

pub const MANIFEST_NAME: &str = "manifest.txt";

/// Assets loaded from an official data directory.
pub struct FileAssets {
    payloads: BTreeMap<&'static str, AssetPayload>,
}

impl FileAssets {
    /// Reads the manifest and every asset it names.
    pub fn load(dir: &Path) -> Result<Self, AssetError> {
        let manifest = dir.join(MANIFEST_NAME);
        let text = std::fs::read_to_string(&manifest).map_err(|e| AssetError::Io {
            path: manifest.clone(),
            message: e.to_string(),
        })?;
        let mut payloads = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((name, rel)) = line.split_once('=') else {
                return Err(AssetError::Manifest {
                    path: manifest.clone(),
                    line: no + 1,
                    message: format!("expected name = path, got {line:?}"),
                });
            };
            let name = name.trim();
            let Some(asset) = AssetId::from_name(name) else {
                return Err(AssetError::Manifest {
                    path: manifest.clone(),
                    line: no + 1,
                    message: format!("unknown asset name {name:?}"),
                });
            };
            let path = dir.join(rel.trim());
            let content = std::fs::read_to_string(&path).map_err(|e| AssetError::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            let payload = parse_asset(asset, &content).map_err(|e| AssetError::Data {
                path: path.clone(),
                message: e.to_string(),
            })?;
            payloads.insert(asset.name(), payload);
        }
        Ok(Self { payloads })
    }
}

impl AssetSource for FileAssets {
    fn fetch(&self, asset: AssetId) -> Result<AssetPayload, ProblemError> {
        self.payloads
            .get(asset.name())
            .cloned()
            .ok_or(ProblemError::MissingAsset { asset })
    }

    fn provenance(&self) -> Provenance {
        Provenance::OfficialFile
    }
}

/// Builds a problem from the configured data source.
pub fn assemble_problem(
    id: ProblemId,
    data_dir: Option<&Path>,
    data_seed: u64,
) -> Result<BenchmarkProblem, AssetError> {
    match data_dir {
        Some(dir) => {
            let assets = FileAssets::load(dir)?;
            BenchmarkProblem::assemble(id, &assets).map_err(|e| AssetError::Problem {
                problem: id,
                message: e.to_string(),
            })
        }
        None => Ok(BenchmarkProblem::generated(id, data_seed)),
    }
}

/// Writes generated assets for `problems` into `dir`, with a manifest.
pub fn write_generated(
    dir: &Path,
    problems: &[ProblemId],
    data_seed: u64,
) -> Result<Vec<PathBuf>, AssetError> {
    std::fs::create_dir_all(dir).map_err(|e| AssetError::Io {
        path: dir.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut needed: Vec<AssetId> = Vec::new();
    for &p in problems {
        for k in 0..2 {
            for &a in p.required_assets(k) {
                if !needed.contains(&a) {
                    needed.push(a);
                }
            }
        }
    }
    needed.sort_by_key(|a| a.name());
    let mut manifest = String::new();
    let mut written = Vec::new();
    for asset in needed {
        let file = format!("{}.txt", asset.name());
        let path = dir.join(&file);
        let payload = generate_asset(asset, data_seed);
        std::fs::write(&path, render_asset(&payload)).map_err(|e| AssetError::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
        manifest.push_str(&format!("{} = {}\n", asset.name(), file));
        written.push(path);
    }
    let manifest_path = dir.join(MANIFEST_NAME);
    std::fs::write(&manifest_path, manifest).map_err(|e| AssetError::Io {
        path: manifest_path.clone(),
        message: e.to_string(),
    })?;
    written.push(manifest_path);
    Ok(written)
}

#[derive(Debug)]
pub enum AssetError {
    Io { path: PathBuf, message: String },
    Manifest {
        path: PathBuf,
        line: usize,
        message: String,
    },
    Data { path: PathBuf, message: String },
    Problem { problem: ProblemId, message: String },
}

impl fmt::Display for AssetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssetError::Io { path, message } => write!(f, "{}: {message}", path.display()),
            AssetError::Manifest {
                path,
                line,
                message,
            } => write!(f, "{} line {line}: {message}", path.display()),
            AssetError::Data { path, message } => write!(f, "{}: {message}", path.display()),
            AssetError::Problem { problem, message } => write!(f, "{problem}: {message}"),
        }
    }
}

impl std::error::Error for AssetError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_files_round_trip_through_the_loader() {
        let dir = std::env::temp_dir().join("mtbench-assets-test");
        let _ = std::fs::remove_dir_all(&dir);
        write_generated(&dir, &ProblemId::ALL, 11).unwrap();
        for id in ProblemId::ALL {
            let from_files = assemble_problem(id, Some(&dir), 0).unwrap();
            let generated = BenchmarkProblem::generated(id, 11);
            for k in 0..2 {
                assert_eq!(
                    from_files.task(k).data().shift,
                    generated.task(k).data().shift,
                    "{id} task {k} shift"
                );
            }
        }
        let p = assemble_problem(ProblemId::Cims, Some(&dir), 0).unwrap();
        assert_eq!(p.task(1).data().provenance, Provenance::OfficialFile);
    }

    #[test]
    fn missing_manifest_is_an_io_error() {
        let dir = std::env::temp_dir().join("mtbench-assets-missing");
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        assert!(matches!(
            FileAssets::load(&dir),
            Err(AssetError::Io { .. })
        ));
    }

    #[test]
    fn truncated_asset_fails_with_position() {
        let dir = std::env::temp_dir().join("mtbench-assets-bad");
        let _ = std::fs::remove_dir_all(&dir);
        write_generated(&dir, &[ProblemId::Cims], 11).unwrap();
        // Chop the 9x9 rotation to 8 rows.
        let path = dir.join("M_cm2.txt");
        let text = std::fs::read_to_string(&path).unwrap();
        let chopped: Vec<&str> = text.lines().take(8).collect();
        std::fs::write(&path, chopped.join("\n")).unwrap();
        let err = assemble_problem(ProblemId::Cims, Some(&dir), 0).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("expected 9"), "{msg}");
    }
}
