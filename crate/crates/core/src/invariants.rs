//! Cross-cap and triple point counts, Milnor numbers of the double point
//! curves, the image Milnor number, the multiplicity, and the identities
//! tying them together.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::AnalysisConfig;
use crate::field::{Field, Rational};
use crate::gb::{local_colength_with, Colength, GbError};
use crate::germ::{GermError, MapGerm};
use crate::multipt::{corank1_d2_ideal, corank1_d3_ideal, d2_plane_curve, MultiptError, PlaneCurve};
use crate::poly::{two_by_two_minors, Ideal, Polynomial};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error("triple scheme multiplicity anomaly: colength {colength} is not divisible by 6")]
    TripleAnomaly { colength: u64 },
    #[error("mu(D2tilde) disagreement: derived {derived}, Le-Greuel {le_greuel}")]
    CrossCheck { derived: i64, le_greuel: u64 },
    #[error("degenerate projections: every sampled plane projection has infinite colength")]
    DegenerateProjections,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Direct,
    Derived,
    CrossChecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub left: i64,
    pub right: i64,
}

impl IdentityCheck {
    fn new(name: &str, left: i64, right: i64) -> Self {
        IdentityCheck {
            name: name.to_string(),
            pass: left == right,
            left,
            right,
        }
    }
}

/// All invariants of one germ. Derived fields are `None` when their
/// inputs are infinite or inconsistent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct InvariantReport {
    pub C: Colength,
    pub T: Colength,
    pub mu_D2: Colength,
    pub mu_D2tilde: Option<u64>,
    pub mu_D2tilde_mod_S2: Option<u64>,
    pub mu_image: Option<u64>,
    pub euler: Option<i64>,
    pub m0: Option<u64>,
    pub finitely_determined_proxy: bool,
    pub identity_checks: Vec<IdentityCheck>,
    pub verdicts: BTreeMap<String, bool>,
    pub germ: String,
    pub d2_curve: Option<String>,
    pub mu_D2tilde_le_greuel: Option<u64>,
    pub consistent: bool,
    pub provenance: BTreeMap<String, Provenance>,
    pub diagnostics: Vec<String>,
}

impl InvariantReport {
    pub fn identities_hold(&self) -> bool {
        self.identity_checks.iter().all(|c| c.pass)
    }

    /// `(C, T, μ(D²), μ(D̃²), μ(D̃²/S₂), μ_Δ, χ, m₀)` when all are finite.
    pub fn tuple(&self) -> Option<[i64; 8]> {
        Some([
            self.C.finite()? as i64,
            self.T.finite()? as i64,
            self.mu_D2.finite()? as i64,
            self.mu_D2tilde? as i64,
            self.mu_D2tilde_mod_S2? as i64,
            self.mu_image? as i64,
            self.euler?,
            self.m0? as i64,
        ])
    }
}

fn ideal_of<F: Field>(gens: Vec<Polynomial<F>>) -> Ideal<F> {
    let vars = gens[0].vars().clone();
    Ideal::new(&vars, gens)
}

/// `C(f)`: colength of the 2×2 minors of the Jacobian.
pub fn crosscap_count<F: Field>(g: &MapGerm<F>, cfg: &AnalysisConfig) -> Result<Colength, GbError> {
    local_colength_with(&ideal_of(two_by_two_minors(&g.jacobian())), cfg.truncation_ceiling)
}

/// `T(f)`: colength of the corank-1 triple point scheme over 6.
pub fn triple_point_count<F: Field>(g: &MapGerm<F>, cfg: &AnalysisConfig) -> Result<Colength, InvariantError> {
    let d3 = corank1_d3_ideal(g)?;
    match local_colength_with(&d3.ideal(), cfg.truncation_ceiling)? {
        Colength::Infinite => Ok(Colength::Infinite),
        Colength::Finite(n) if n % 6 == 0 => Ok(Colength::Finite(n / 6)),
        Colength::Finite(n) => Err(InvariantError::TripleAnomaly { colength: n }),
    }
}

/// Milnor number of a reduced plane curve; 0 for the empty curve.
pub fn milnor_plane_curve<F: Field>(c: &PlaneCurve<F>, cfg: &AnalysisConfig) -> Result<Colength, GbError> {
    if c.is_empty() {
        return Ok(Colength::Finite(0));
    }
    let g = &c.equation;
    local_colength_with(&ideal_of(vec![g.derivative(0), g.derivative(1)]), cfg.truncation_ceiling)
}

fn has_linear_part<F: Field>(p: &Polynomial<F>) -> bool {
    (0..p.nvars()).any(|i| !p.linear_coeff(i).is_zero())
}

/// Lê–Greuel value of `μ(D̃²)` from the corank-1 generators: with `g_s`
/// smooth, `μ = dim O/((g_s) + 2×2 minors of ∂(g_s, g_o))`. `None` when
/// neither generator is smooth.
pub fn milnor_d2tilde_le_greuel<F: Field>(
    g: &MapGerm<F>,
    cfg: &AnalysisConfig,
) -> Result<Option<Colength>, InvariantError> {
    let d2 = corank1_d2_ideal(g)?;
    let (gs, go) = if has_linear_part(&d2.p) {
        (d2.p, d2.q)
    } else if has_linear_part(&d2.q) {
        (d2.q, d2.p)
    } else {
        return Ok(None);
    };
    let n = gs.nvars();
    let rows: Vec<[Polynomial<F>; 2]> = (0..n).map(|i| [gs.derivative(i), go.derivative(i)]).collect();
    let mut gens = vec![gs];
    gens.extend(two_by_two_minors(&rows));
    Ok(Some(local_colength_with(&ideal_of(gens), cfg.truncation_ceiling)?))
}

/// Colength of the singular locus of `D̃² = V(P, Q)`: `(P, Q)` plus the
/// 2×2 minors of `∂(P, Q)`. Finite exactly when `D̃²` is a reduced curve
/// with an isolated singularity (or empty).
pub fn d2tilde_singular_colength<F: Field>(g: &MapGerm<F>, cfg: &AnalysisConfig) -> Result<Colength, InvariantError> {
    let d2 = corank1_d2_ideal(g)?;
    let n = d2.p.nvars();
    let rows: Vec<[Polynomial<F>; 2]> = (0..n).map(|i| [d2.p.derivative(i), d2.q.derivative(i)]).collect();
    let mut gens = vec![d2.p, d2.q];
    gens.extend(two_by_two_minors(&rows));
    Ok(local_colength_with(&ideal_of(gens), cfg.truncation_ceiling)?)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-7..=7), rng.gen_range(1..=3))
}

/// Random linear forms `ℓ₁, ℓ₂` on the target, as coefficient triples.
pub fn random_projection(rng: &mut ChaCha8Rng) -> [[Rational; 3]; 2] {
    loop {
        let l: [[Rational; 3]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| small_rational(rng)));
        // reject dependent pairs
        let independent = (0..3).any(|i| {
            (i + 1..3).any(|j| !(l[0][i].mul(&l[1][j]).sub(&l[0][j].mul(&l[1][i]))).is_zero())
        });
        if independent {
            return l;
        }
    }
}

/// Multiplicity `m₀(f)`: minimum over `samples` random plane projections of
/// the colength of `(ℓ₁∘f, ℓ₂∘f)`.
pub fn multiplicity_m0<F: Field>(
    g: &MapGerm<F>,
    rng: &mut ChaCha8Rng,
    samples: usize,
    cfg: &AnalysisConfig,
) -> Result<u64, InvariantError> {
    let mut best: Option<u64> = None;
    for _ in 0..samples.max(1) {
        let l = random_projection(rng);
        let gens: Vec<Polynomial<F>> = l
            .iter()
            .map(|row| {
                row.iter().zip(g.components()).fold(Polynomial::zero(g.vars()), |acc, (c, f)| {
                    &acc + &f.scale(&F::from_rational(c.as_big()))
                })
            })
            .collect();
        if let Colength::Finite(n) = local_colength_with(&ideal_of(gens), cfg.truncation_ceiling)? {
            best = Some(best.map_or(n, |b| b.min(n)));
        }
    }
    best.ok_or(InvariantError::DegenerateProjections)
}

pub fn invariant_report<F: Field>(g: &MapGerm<F>, cfg: &AnalysisConfig) -> Result<InvariantReport, InvariantError> {
    let mut r = compute_report(g, cfg)?;
    r.verdicts = BTreeMap::from([
        ("finitely_determined_proxy".to_string(), r.finitely_determined_proxy),
        ("consistent".to_string(), r.consistent),
        ("identities_hold".to_string(), r.identities_hold()),
    ]);
    Ok(r)
}

fn compute_report<F: Field>(g: &MapGerm<F>, cfg: &AnalysisConfig) -> Result<InvariantReport, InvariantError> {
    if g.corank() == 2 {
        return Err(GermError::Corank2.into());
    }
    g.normalized()?;

    let ((c, t, sing), (curve, lg)) = rayon::join(
        || {
            let ((c, t), sing) = rayon::join(
                || rayon::join(|| crosscap_count(g, cfg), || triple_point_count(g, cfg)),
                || d2tilde_singular_colength(g, cfg),
            );
            (c, t, sing)
        },
        || {
            rayon::join(
                || d2_plane_curve(g),
                || {
                    if cfg.crosscheck {
                        milnor_d2tilde_le_greuel(g, cfg)
                    } else {
                        Ok(None)
                    }
                },
            )
        },
    );
    let c = c?;
    let t = t?;
    let sing = sing?;
    let lg = lg?;
    let (curve, mu_d2) = match curve {
        Ok(curve) => {
            let mu = milnor_plane_curve(&curve, cfg)?;
            (Some(curve), mu)
        }
        Err(MultiptError::NotACurve) => (None, Colength::Infinite),
        Err(MultiptError::Germ(e)) => return Err(e.into()),
    };

    let proxy = c.is_finite() && t.is_finite() && mu_d2.is_finite() && sing.is_finite();
    let mut provenance = BTreeMap::new();
    for k in ["C", "T", "mu_D2", "m0"] {
        provenance.insert(k.to_string(), Provenance::Direct);
    }
    for k in ["mu_D2tilde", "mu_D2tilde_mod_S2", "mu_image", "euler"] {
        provenance.insert(k.to_string(), Provenance::Derived);
    }
    let mut report = InvariantReport {
        germ: g.to_string(),
        C: c,
        T: t,
        mu_D2: mu_d2,
        mu_D2tilde: None,
        mu_D2tilde_le_greuel: lg.and_then(Colength::finite),
        mu_D2tilde_mod_S2: None,
        mu_image: None,
        euler: None,
        m0: None,
        d2_curve: curve.as_ref().map(|c| c.equation.to_string()),
        finitely_determined_proxy: proxy,
        consistent: true,
        identity_checks: Vec::new(),
        verdicts: BTreeMap::new(),
        provenance,
        diagnostics: Vec::new(),
    };
    if !proxy {
        let infinite: Vec<&str> = [("C", c), ("T", t), ("mu_D2", mu_d2), ("D2tilde singular locus", sing)]
            .into_iter()
            .filter(|(_, v)| !v.is_finite())
            .map(|(k, _)| k)
            .collect();
        report.diagnostics.push(format!("infinite colength: {}", infinite.join(", ")));
        report
            .diagnostics
            .push("non-finite colength: finite determinacy proxy fails".to_string());
        return Ok(report);
    }
    let (c, t, mu) = (
        c.finite().unwrap() as i64,
        t.finite().unwrap() as i64,
        mu_d2.finite().unwrap() as i64,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    report.m0 = Some(multiplicity_m0(g, &mut rng, cfg.m0_samples, cfg)?);

    let derived = mu - 6 * t;
    if let Some(lgv) = report.mu_D2tilde_le_greuel {
        if lgv as i64 != derived {
            return Err(InvariantError::CrossCheck {
                derived,
                le_greuel: lgv,
            });
        }
        report
            .provenance
            .insert("mu_D2tilde".to_string(), Provenance::CrossChecked);
    }
    if derived < 0 {
        report.consistent = false;
        report
            .diagnostics
            .push(format!("derived mu(D2tilde) = {derived} is negative"));
        return Ok(report);
    }
    report.mu_D2tilde = Some(derived as u64);
    let tilde = report.mu_D2tilde_le_greuel.map_or(derived, |v| v as i64);
    let checks = &mut report.identity_checks;
    checks.push(IdentityCheck::new("mu_D2 = mu_D2tilde + 6T", mu, tilde + 6 * t));

    // immersion: no double points and no cross-caps, smooth image
    if c == 0 && curve.as_ref().is_some_and(PlaneCurve::is_empty) {
        report.mu_D2tilde_mod_S2 = Some(0);
        report.mu_image = Some(0);
        report.euler = Some(1);
        report
            .diagnostics
            .push("immersion: image identities do not apply".to_string());
        return Ok(report);
    }

    let twice = tilde - c + 1;
    checks.push(IdentityCheck::new("parity of mu_D2tilde - C + 1", twice.rem_euclid(2), 0));
    if twice < 0 || twice % 2 != 0 {
        report.consistent = false;
        report
            .diagnostics
            .push(format!("mu_D2tilde - C + 1 = {twice} is not an even nonnegative integer"));
        return Ok(report);
    }
    let q = twice / 2;
    let mu_image = c - 1 + t + q;
    let euler = c + t + q;
    checks.push(IdentityCheck::new(
        "mu_D2 = 2 mu_D2tilde_mod_S2 + C + 6T - 1",
        mu,
        2 * q + c + 6 * t - 1,
    ));
    checks.push(IdentityCheck::new("mu_image = C - 1 + T + mu_D2tilde_mod_S2", mu_image, c - 1 + t + q));
    checks.push(IdentityCheck::new("euler = C + T + mu_D2tilde_mod_S2", euler, c + t + q));
    checks.push(IdentityCheck::new("euler = mu_image + 1", euler, mu_image + 1));
    report.mu_D2tilde_mod_S2 = Some(q as u64);
    report.consistent = mu_image >= 0 && report.identities_hold();
    if mu_image < 0 {
        report.diagnostics.push(format!("mu_image = {mu_image} is negative"));
    } else {
        report.mu_image = Some(mu_image as u64);
    }
    report.euler = Some(euler);
    Ok(report)
}
