//! Classical germs and families with their known invariants.

use serde::{Deserialize, Serialize};

use crate::config::AnalysisConfig;
use crate::family::{family_verdict, FamilyVerdict};
use crate::germ::{validate_map_germ, ValidatedGerm};
use crate::invariants::{invariant_report, InvariantReport};
use crate::parser::GermSpec;

/// Known values. `invariants` is `(C, T, μ(D²), μ(D̃²), μ(D̃²/S₂), μ_Δ, χ, m₀)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Expected {
    Germ { invariants: [i64; 8] },
    Family { mu_constant: bool, generic_mu_d2: u64, special_mu_d2: u64, m0_constant: bool },
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: GermSpec,
    pub expected: Expected,
}

fn germ(name: &'static str, c: [&str; 3], invariants: [i64; 8]) -> CatalogEntry {
    CatalogEntry {
        name,
        spec: GermSpec::new(c),
        expected: Expected::Germ { invariants },
    }
}

fn family(name: &'static str, c: [&str; 3], mu: (u64, u64), mu_constant: bool) -> CatalogEntry {
    CatalogEntry {
        name,
        spec: GermSpec::new(c).with_parameter(),
        expected: Expected::Family {
            mu_constant,
            generic_mu_d2: mu.0,
            special_mu_d2: mu.1,
            m0_constant: true,
        },
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        germ("immersion", ["x", "y", "0"], [0, 0, 0, 0, 0, 0, 1, 1]),
        germ("crosscap", ["x", "y^2", "x*y"], [1, 0, 0, 0, 0, 0, 1, 2]),
        germ("S1", ["x", "y^2", "y^3 + x^2*y"], [2, 0, 1, 1, 0, 1, 2, 2]),
        germ("S2", ["x", "y^2", "y^3 + x^3*y"], [3, 0, 2, 2, 0, 2, 3, 2]),
        germ("B2", ["x", "y^2", "x^2*y + y^5"], [2, 0, 3, 3, 1, 2, 3, 2]),
        germ("H2", ["x", "y^3", "x*y + y^5"], [2, 1, 7, 1, 0, 2, 3, 3]),
        germ("H3", ["x", "y^3", "x*y + y^8"], [2, 2, 13, 1, 0, 3, 4, 3]),
        family("family-trivial", ["x", "y^2", "x*y + t*y^3"], (0, 0), true),
        family("family-S2-smoothing", ["x", "y^2", "y^3 + x^3*y + t*x*y"], (0, 2), false),
        family("family-mu-constant", ["x", "y^2", "y^3 + x^2*y + t*x^4*y"], (1, 1), true),
    ]
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfTestOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CatalogEntry {
    fn outcome(&self, pass: bool, detail: String) -> SelfTestOutcome {
        SelfTestOutcome {
            name: self.name.to_string(),
            pass,
            detail,
        }
    }

    /// Compares a germ report with the expected values.
    pub fn check_report(&self, r: &InvariantReport) -> SelfTestOutcome {
        let Expected::Germ { invariants } = &self.expected else {
            return self.outcome(false, "entry is a family".to_string());
        };
        let got = r.tuple();
        let pass = got.as_ref() == Some(invariants) && r.identities_hold() && r.consistent;
        self.outcome(pass, format!("expected {invariants:?}, got {got:?}"))
    }

    /// Compares a family verdict with the expected values.
    pub fn check_verdict(&self, v: &FamilyVerdict) -> SelfTestOutcome {
        let Expected::Family {
            mu_constant,
            generic_mu_d2,
            special_mu_d2,
            m0_constant,
        } = &self.expected
        else {
            return self.outcome(false, "entry is a single germ".to_string());
        };
        let got = (
            v.mu_constant,
            v.report_generic.mu_D2.finite(),
            v.report_special.mu_D2.finite(),
            v.m0_constant,
        );
        let want = (*mu_constant, Some(*generic_mu_d2), Some(*special_mu_d2), *m0_constant);
        let pass = got == want && v.report_generic.identities_hold() && v.report_special.identities_hold();
        self.outcome(pass, format!("expected {want:?}, got {got:?}"))
    }
}

/// Recomputes one entry and compares with its expected values.
pub fn selftest_entry(entry: &CatalogEntry, cfg: &AnalysisConfig) -> SelfTestOutcome {
    match validate_map_germ(&entry.spec) {
        Ok(ValidatedGerm::Germ(g)) => match invariant_report(&g, cfg) {
            Ok(r) => entry.check_report(&r),
            Err(e) => entry.outcome(false, e.to_string()),
        },
        Ok(ValidatedGerm::Unfolding(u)) => match family_verdict(&u, cfg) {
            Ok(v) => entry.check_verdict(&v),
            Err(e) => entry.outcome(false, e.to_string()),
        },
        Err(e) => entry.outcome(false, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_required_present() {
        let names: Vec<&str> = catalog().iter().map(|e| e.name).collect();
        for n in [
            "immersion",
            "crosscap",
            "S1",
            "S2",
            "H2",
            "family-trivial",
            "family-S2-smoothing",
            "family-mu-constant",
        ] {
            assert!(names.contains(&n), "{n}");
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn show_form() {
        assert_eq!(
            lookup("crosscap").unwrap().spec.to_canonical_json(),
            r#"{"components":["x","y^2","x*y"]}"#
        );
    }

    #[test]
    fn expected_germ_values_satisfy_identities() {
        for e in catalog() {
            if let Expected::Germ { invariants: [c, t, mu, mut_, q, md, chi, _] } = e.expected {
                assert_eq!(mu, mut_ + 6 * t, "{}", e.name);
                assert_eq!(chi, md + 1, "{}", e.name);
                if c > 0 {
                    assert_eq!(mu, 2 * q + c + 6 * t - 1, "{}", e.name);
                    assert_eq!(md, c - 1 + t + q, "{}", e.name);
                }
            }
        }
    }

    #[test]
    fn selftest_passes() {
        let cfg = AnalysisConfig::default();
        for e in catalog() {
            let o = selftest_entry(&e, &cfg);
            assert!(o.pass, "{}: {}", o.name, o.detail);
        }
    }
}
