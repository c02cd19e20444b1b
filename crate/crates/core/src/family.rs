//! One-parameter unfoldings: generic and special reports, sampled
//! specializations, and the equisingularity verdicts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::AnalysisConfig;
use crate::field::{Field, Rational};
use crate::germ::{GermError, Unfolding};
use crate::invariants::{invariant_report, InvariantError, InvariantReport};

/// Retries per sample when the sampled fiber is non-generic.
pub const RETRY_BUDGET: usize = 8;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error("family not finitely determined at/near 0 ({fiber} fiber fails the proxy)")]
    NotFinitelyDetermined { fiber: &'static str },
    #[error("equivalent conditions disagree: {0:?}")]
    ConditionDisagreement(Vec<ConditionCheck>),
    #[error("semicontinuity violated for {0:?}")]
    Semicontinuity(Vec<SemicontinuityCheck>),
    #[error("mu-constant family with non-constant multiplicity: special {special}, others {others:?}")]
    MultiplicityJump { special: u64, others: Vec<u64> },
    #[error("no generic sample found near t = {t0} within {RETRY_BUDGET} retries")]
    RetriesExhausted { t0: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemicontinuityCheck {
    pub invariant: String,
    pub generic: i64,
    pub special: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleReport {
    pub t: Rational,
    /// Sample values rejected as non-generic before `t` was accepted.
    pub non_generic: Vec<Rational>,
    pub report: InvariantReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyVerdict {
    pub family: String,
    pub report_generic: InvariantReport,
    pub report_special: InvariantReport,
    pub sample_reports: Vec<SampleReport>,
    pub mu_constant: bool,
    pub topologically_trivial: bool,
    pub whitney_equisingular: bool,
    pub bilipschitz_trivial: bool,
    pub excellent: bool,
    /// How excellence was decided.
    pub excellent_basis: String,
    pub equivalent_conditions: Vec<ConditionCheck>,
    pub m0_constant: bool,
    pub semicontinuity: Vec<SemicontinuityCheck>,
    pub diagnostics: Vec<String>,
}

impl FamilyVerdict {
    pub fn summary_line(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        format!(
            "mu-constant: {} ⇒ topologically trivial ⇔ Whitney equisingular ⇔ bilipschitz trivial: {}",
            yn(self.mu_constant),
            yn(self.topologically_trivial)
        )
    }
}

fn fields(r: &InvariantReport) -> [(&'static str, Option<i64>); 7] {
    [
        ("C", r.C.finite().map(|v| v as i64)),
        ("T", r.T.finite().map(|v| v as i64)),
        ("mu_D2", r.mu_D2.finite().map(|v| v as i64)),
        ("mu_D2tilde", r.mu_D2tilde.map(|v| v as i64)),
        ("mu_D2tilde_mod_S2", r.mu_D2tilde_mod_S2.map(|v| v as i64)),
        ("mu_image", r.mu_image.map(|v| v as i64)),
        ("m0", r.m0.map(|v| v as i64)),
    ]
}

fn same(a: &InvariantReport, b: &InvariantReport, keys: &[&str]) -> bool {
    let fa = fields(a);
    let fb = fields(b);
    keys.iter().all(|k| {
        let x = fa.iter().find(|(n, _)| n == k).expect("known key").1;
        let y = fb.iter().find(|(n, _)| n == k).expect("known key").1;
        x.is_some() && x == y
    })
}

/// The four equivalent conditions on the pair (generic, special).
pub fn equivalent_conditions(generic: &InvariantReport, special: &InvariantReport) -> Vec<ConditionCheck> {
    [
        ("mu(D2) constant", &["mu_D2"][..]),
        ("mu(D2tilde) and T constant", &["mu_D2tilde", "T"][..]),
        ("mu(D2tilde/S2), C and T constant", &["mu_D2tilde_mod_S2", "C", "T"][..]),
        ("mu_image constant", &["mu_image"][..]),
    ]
    .into_iter()
    .map(|(name, keys)| ConditionCheck {
        name: name.to_string(),
        holds: same(generic, special, keys),
    })
    .collect()
}

fn sample(
    u: &Unfolding,
    t0: &Rational,
    generic: &InvariantReport,
    cfg: &AnalysisConfig,
    index: usize,
) -> Result<SampleReport, FamilyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index as u64 + 1)));
    let mut non_generic = Vec::new();
    let mut t = t0.clone();
    for _ in 0..=RETRY_BUDGET {
        let report = match u.specialize(&t) {
            Ok(g) => Some(invariant_report(&g, cfg)?),
            Err(GermError::Pole { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        match report {
            Some(r) if r.tuple().is_some() && r.tuple() == generic.tuple() => {
                return Ok(SampleReport {
                    t,
                    non_generic,
                    report: r,
                });
            }
            _ => {
                non_generic.push(t.clone());
                let step = Rational::new(rng.gen_range(1..=9), rng.gen_range(2..=11));
                t = t.add(&step);
            }
        }
    }
    Err(FamilyError::RetriesExhausted { t0: t0.clone() })
}

pub fn generic_report(u: &Unfolding, cfg: &AnalysisConfig) -> Result<InvariantReport, FamilyError> {
    Ok(invariant_report(u.germ(), cfg)?)
}

pub fn family_verdict(u: &Unfolding, cfg: &AnalysisConfig) -> Result<FamilyVerdict, FamilyError> {
    let special = invariant_report(&u.specialize(&Rational::zero())?, cfg)?;
    if !special.finitely_determined_proxy {
        return Err(FamilyError::NotFinitelyDetermined { fiber: "special" });
    }
    let generic = generic_report(u, cfg)?;
    if !generic.finitely_determined_proxy {
        return Err(FamilyError::NotFinitelyDetermined { fiber: "generic" });
    }

    let mut diagnostics = Vec::new();
    if u.parameter_unused() {
        diagnostics.push("parameter t does not occur".to_string());
    }

    let sample_reports: Vec<SampleReport> = cfg
        .t_samples
        .par_iter()
        .enumerate()
        .map(|(i, t0)| sample(u, t0, &generic, cfg, i))
        .collect::<Result<_, _>>()?;
    for s in &sample_reports {
        for t in &s.non_generic {
            diagnostics.push(format!("non-generic sample t = {t}"));
        }
    }

    let semicontinuity: Vec<SemicontinuityCheck> = fields(&generic)
        .into_iter()
        .zip(fields(&special))
        .filter_map(|((name, g), (_, s))| {
            Some(SemicontinuityCheck {
                invariant: name.to_string(),
                generic: g?,
                special: s?,
                holds: g? <= s?,
            })
        })
        .collect();
    for c in &semicontinuity {
        diagnostics.push(format!(
            "semicontinuity {}: {} <= {}{}",
            c.invariant,
            c.generic,
            c.special,
            if c.holds { "" } else { " VIOLATED" }
        ));
    }
    if semicontinuity.iter().any(|c| !c.holds) {
        return Err(FamilyError::Semicontinuity(semicontinuity));
    }

    let conditions = equivalent_conditions(&generic, &special);
    if conditions.iter().any(|c| c.holds != conditions[0].holds) {
        return Err(FamilyError::ConditionDisagreement(conditions));
    }
    let mu_constant = generic.mu_D2 == special.mu_D2;
    debug_assert_eq!(mu_constant, conditions[0].holds);

    let special_m0 = special.m0.expect("proxy holds");
    let others: Vec<u64> = std::iter::once(&generic)
        .chain(sample_reports.iter().map(|s| &s.report))
        .filter_map(|r| r.m0)
        .collect();
    let m0_constant = others.iter().all(|&m| m == special_m0);
    if mu_constant && !m0_constant {
        return Err(FamilyError::MultiplicityJump {
            special: special_m0,
            others,
        });
    }

    Ok(FamilyVerdict {
        family: u.name.clone().unwrap_or_else(|| u.germ().to_string()),
        report_generic: generic,
        report_special: special,
        sample_reports,
        mu_constant,
        topologically_trivial: mu_constant,
        whitney_equisingular: mu_constant,
        bilipschitz_trivial: mu_constant,
        excellent: mu_constant,
        excellent_basis: if mu_constant {
            "implied by mu-constancy"
        } else {
            "equated with mu-constancy"
        }
        .to_string(),
        equivalent_conditions: conditions,
        m0_constant,
        semicontinuity,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::unfolding_from_spec;
    use crate::parser::GermSpec;

    fn verdict(c: [&str; 3]) -> FamilyVerdict {
        let u = unfolding_from_spec(&GermSpec::new(c).with_parameter()).unwrap();
        family_verdict(&u, &AnalysisConfig::default()).unwrap()
    }

    #[test]
    fn trivial_family() {
        let v = verdict(["x", "y^2", "x*y + t*y^3"]);
        assert!(v.mu_constant && v.topologically_trivial && v.whitney_equisingular);
        assert!(v.bilipschitz_trivial && v.excellent && v.m0_constant);
        assert_eq!(v.report_generic.d2_curve.as_deref(), Some("t*y^2 + x"));
    }

    #[test]
    fn smoothing_family() {
        let v = verdict(["x", "y^2", "y^3 + x^3*y + t*x*y"]);
        assert!(!v.mu_constant && !v.topologically_trivial && !v.excellent);
        assert_eq!(v.report_special.mu_D2.finite(), Some(2));
        assert_eq!(v.report_generic.mu_D2.finite(), Some(0));
        assert!(v.diagnostics.iter().any(|d| d == "semicontinuity mu_D2: 0 <= 2"));
        assert!(v.summary_line().starts_with("mu-constant: no"));
    }

    #[test]
    fn mu_constant_family() {
        let v = verdict(["x", "y^2", "y^3 + x^2*y + t*x^4*y"]);
        assert!(v.mu_constant && v.m0_constant);
        assert_eq!(v.report_generic.mu_D2.finite(), Some(1));
        assert_eq!(v.report_special.m0, Some(2));
        assert!(v.equivalent_conditions.iter().all(|c| c.holds));
    }

    #[test]
    fn non_generic_sample_is_retried() {
        // the smoothing term t(t - 1)xy vanishes again at t = 1
        let spec = GermSpec::new(["x", "y^2", "y^3 + x^3*y + t^2*x*y - t*x*y"]).with_parameter();
        let u = unfolding_from_spec(&spec).unwrap();
        let cfg = AnalysisConfig {
            t_samples: vec![Rational::one()],
            ..AnalysisConfig::default()
        };
        let v = family_verdict(&u, &cfg).unwrap();
        assert!(!v.mu_constant);
        assert_eq!(v.sample_reports[0].non_generic, vec![Rational::one()]);
        assert!(v.diagnostics.contains(&"non-generic sample t = 1".to_string()));
    }
}
