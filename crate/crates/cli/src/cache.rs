//! Results cache: one JSON file per (command, germ spec, configuration).

use std::fs;
use std::path::{Path, PathBuf};

use mapgerm_core::{AnalysisConfig, GermSpec};
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Failure;

pub fn key(kind: &str, spec: &GermSpec, cfg: &AnalysisConfig) -> String {
    let mut h = Sha256::new();
    h.update(kind.as_bytes());
    h.update(b"\n");
    h.update(spec.to_canonical_json().as_bytes());
    h.update(b"\n");
    h.update(serde_json::to_string(cfg).expect("serializable").as_bytes());
    format!("{:x}", h.finalize())
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Returns the cached value for `key`, computing and storing it on a miss.
/// Unreadable entries count as misses.
pub fn cached<T, F>(dir: Option<&Path>, key: &str, compute: F) -> Result<T, Failure>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T, Failure>,
{
    let Some(dir) = dir else {
        return compute();
    };
    let path = entry_path(dir, key);
    if let Some(v) = fs::read_to_string(&path).ok().and_then(|s| serde_json::from_str(&s).ok()) {
        return Ok(v);
    }
    let value = compute()?;
    store(dir, &path, &value)?;
    Ok(value)
}

fn store<T: Serialize>(dir: &Path, path: &Path, value: &T) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::usage(format!("cache directory {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_string(value).expect("serializable")).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    #[test]
    fn key_depends_on_spec_and_config() {
        let spec = GermSpec::new(["x", "y^2", "x*y"]);
        let cfg = AnalysisConfig::default();
        let k = key("invariants", &spec, &cfg);
        assert_eq!(k.len(), 64);
        assert_eq!(k, key("invariants", &spec, &cfg));
        assert_ne!(k, key("family", &spec, &cfg));
        assert_ne!(k, key("invariants", &GermSpec::new(["x", "y^2", "x*y + y^3"]), &cfg));
        let other = AnalysisConfig {
            seed: 2,
            ..AnalysisConfig::default()
        };
        assert_ne!(k, key("invariants", &spec, &other));
    }

    #[test]
    fn second_lookup_hits() {
        let dir = tempfile::tempdir().unwrap();
        let calls = Cell::new(0);
        let compute = || {
            calls.set(calls.get() + 1);
            Ok(vec![1u64, 2, 3])
        };
        let a: Vec<u64> = cached(Some(dir.path()), "k", compute).unwrap();
        let b: Vec<u64> = cached(Some(dir.path()), "k", compute).unwrap();
        assert_eq!(a, b);
        assert_eq!(calls.get(), 1);
    }

    #[test]
    fn corrupt_entry_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("k.json"), "{not json").unwrap();
        let v: u64 = cached(Some(dir.path()), "k", || Ok(7)).unwrap();
        assert_eq!(v, 7);
        assert_eq!(fs::read_to_string(dir.path().join("k.json")).unwrap(), "7");
    }
}
