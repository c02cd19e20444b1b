use std::path::{Path, PathBuf};

use clap::Args;
use mapgerm_core::config::parse_samples;
use mapgerm_core::AnalysisConfig;
use serde::Deserialize;

use crate::error::Failure;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest truncation degree for local colengths.
    #[arg(long, global = true, value_name = "N")]
    pub truncation_ceiling: Option<u32>,
    /// Seed for the random projections.
    #[arg(long, global = true, value_name = "S")]
    pub seed: Option<u64>,
    /// Parameter values sampled in families, e.g. "1,-1/2,1/3".
    #[arg(long, global = true, value_name = "LIST", allow_hyphen_values = true)]
    pub samples: Option<String>,
    /// Number of random projections for the multiplicity.
    #[arg(long, global = true, value_name = "K")]
    pub m0_samples: Option<usize>,
    /// Skip the Lê–Greuel cross-check.
    #[arg(long, global = true)]
    pub no_crosscheck: bool,
    /// Directory of cached results.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache_dir: Option<PathBuf>,
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub truncation_ceiling: Option<u32>,
    pub seed: Option<u64>,
    pub samples: Option<String>,
    pub m0_samples: Option<usize>,
    pub crosscheck: Option<bool>,
    pub cache_dir: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::usage(format!("invalid config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub analysis: AnalysisConfig,
    pub cache_dir: Option<PathBuf>,
    pub json: bool,
}

fn samples(s: &str) -> Result<Vec<mapgerm_core::Rational>, Failure> {
    let v = parse_samples(s).map_err(|e| Failure::usage(format!("invalid samples '{s}': {e}")))?;
    if v.is_empty() {
        return Err(Failure::usage("at least one sample value is required"));
    }
    Ok(v)
}

impl Settings {
    /// Flag, then config file, then default.
    pub fn resolve(flags: &Flags) -> Result<Self, Failure> {
        let file = match &flags.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let mut a = AnalysisConfig::default();
        if let Some(n) = flags.truncation_ceiling.or(file.truncation_ceiling) {
            if n == 0 {
                return Err(Failure::usage("truncation ceiling must be positive"));
            }
            a.truncation_ceiling = n;
        }
        if let Some(s) = flags.seed.or(file.seed) {
            a.seed = s;
        }
        if let Some(s) = flags.samples.as_deref().or(file.samples.as_deref()) {
            a.t_samples = samples(s)?;
        }
        if let Some(k) = flags.m0_samples.or(file.m0_samples) {
            a.m0_samples = k;
        }
        if flags.no_crosscheck {
            a.crosscheck = false;
        } else if let Some(c) = file.crosscheck {
            a.crosscheck = c;
        }
        Ok(Settings {
            analysis: a,
            cache_dir: flags.cache_dir.clone().or(file.cache_dir),
            json: flags.json,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mapgerm_core::Rational;

    fn config(text: &str) -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(f.path(), text).unwrap();
        f
    }

    #[test]
    fn defaults() {
        let s = Settings::resolve(&Flags::default()).unwrap();
        assert_eq!(s.analysis, AnalysisConfig::default());
        assert!(s.cache_dir.is_none());
    }

    #[test]
    fn flag_beats_config_beats_default() {
        let f = config("seed = 5\ntruncation_ceiling = 32\nsamples = \"2\"\ncrosscheck = false\n");
        let flags = Flags {
            seed: Some(9),
            config: Some(f.path().to_path_buf()),
            ..Flags::default()
        };
        let s = Settings::resolve(&flags).unwrap();
        assert_eq!(s.analysis.seed, 9);
        assert_eq!(s.analysis.truncation_ceiling, 32);
        assert_eq!(s.analysis.t_samples, vec![Rational::integer(2)]);
        assert!(!s.analysis.crosscheck);
        assert_eq!(s.analysis.m0_samples, AnalysisConfig::default().m0_samples);
    }

    #[test]
    fn bad_inputs_are_usage_errors() {
        let f = config("colour = 1\n");
        let flags = Flags {
            config: Some(f.path().to_path_buf()),
            ..Flags::default()
        };
        assert_eq!(Settings::resolve(&flags).unwrap_err().code(), 1);
        let flags = Flags {
            samples: Some("1,z".into()),
            ..Flags::default()
        };
        assert_eq!(Settings::resolve(&flags).unwrap_err().code(), 1);
    }
}
