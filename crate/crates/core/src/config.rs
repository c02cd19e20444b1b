use serde::{Deserialize, Serialize};

use crate::field::Rational;
use crate::gb::DEFAULT_CEILING;

/// Tunables shared by the invariant and family computations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    /// Largest truncation degree tried by the local colength.
    pub truncation_ceiling: u32,
    /// Seed for the random linear forms of the multiplicity.
    pub seed: u64,
    /// Number of random projections whose minimum gives `m0`.
    pub m0_samples: usize,
    /// Parameter values at which families are specialized.
    pub t_samples: Vec<Rational>,
    /// Run the Lê–Greuel cross-check of `μ(D̃²)`.
    pub crosscheck: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            truncation_ceiling: DEFAULT_CEILING,
            seed: 1,
            m0_samples: 3,
            t_samples: vec![Rational::integer(1), Rational::new(-1, 2), Rational::new(1, 3)],
            crosscheck: true,
        }
    }
}

/// Parses `"1,-1/2,1/3"`.
pub fn parse_samples(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.parse())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_parse() {
        assert_eq!(parse_samples("1,-1/2, 1/3").unwrap(), AnalysisConfig::default().t_samples);
        assert!(parse_samples("1,x").is_err());
    }

    #[test]
    fn partial_documents_fill_defaults() {
        let c: AnalysisConfig = serde_json::from_str(r#"{"seed": 9, "t_samples": ["2"]}"#).unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.t_samples, vec![Rational::integer(2)]);
        assert_eq!(c.truncation_ceiling, DEFAULT_CEILING);
    }
}
