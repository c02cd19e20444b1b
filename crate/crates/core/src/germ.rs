//! Map germs `(C²,0) → (C³,0)`, one-parameter unfoldings, corank and the
//! linear normalization to the shape `(x, p, q)`.

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::field::{Field, RatFunc, Rational, UniPoly};
use crate::linalg::{self, Matrix};
use crate::parser::{GermSpec, SpecError};
use crate::poly::{Monomial, Polynomial, Vars};

#[derive(Debug, Error)]
pub enum GermError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("a map germ needs components in the two variables x, y")]
    WrongRing,
    #[error("component {index} does not vanish at the origin")]
    NonzeroConstant { index: usize },
    #[error("corank-1 path unavailable: germ has corank 2")]
    Corank2,
    #[error("no linear combination of the components is a nonzero linear form; normalization to (x, p, q) unavailable")]
    NormalizationUnavailable,
    #[error("pole at sample t = {t0}")]
    Pole { t0: Rational },
    #[error("not an unfolding: no parameter declared")]
    NotAnUnfolding,
    #[error("expected a germ without parameter")]
    IsUnfolding,
}

pub fn source_vars() -> Vars {
    Vars::new(&["x", "y"])
}

/// `f = (f₁, f₂, f₃)` with polynomial components in `(x, y)`, vanishing at
/// the origin.
#[derive(Clone, PartialEq, Eq)]
pub struct MapGerm<F> {
    components: [Polynomial<F>; 3],
}

impl<F: Field> fmt::Debug for MapGerm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MapGerm{self}")
    }
}

impl<F: Field> fmt::Display for MapGerm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.components;
        write!(f, "({a}, {b}, {c})")
    }
}

impl<F: Field> MapGerm<F> {
    pub fn new(components: [Polynomial<F>; 3]) -> Result<Self, GermError> {
        let target = source_vars();
        let mut out = Vec::with_capacity(3);
        for (index, c) in components.into_iter().enumerate() {
            let c = if c.vars().names() == target.names() {
                c
            } else {
                c.to_ring(&target).map_err(|_| GermError::WrongRing)?
            };
            if !c.value_at_origin().is_zero() {
                return Err(GermError::NonzeroConstant { index });
            }
            out.push(c);
        }
        Ok(MapGerm {
            components: out.try_into().expect("three"),
        })
    }

    pub fn vars(&self) -> &Vars {
        self.components[0].vars()
    }

    pub fn components(&self) -> &[Polynomial<F>; 3] {
        &self.components
    }

    /// 3×2 Jacobian matrix `(∂f_i/∂x, ∂f_i/∂y)`.
    pub fn jacobian(&self) -> [[Polynomial<F>; 2]; 3] {
        self.components
            .clone()
            .map(|c| [c.derivative(0), c.derivative(1)])
    }

    /// Differential at the origin.
    pub fn linear_part(&self) -> Matrix<F> {
        self.components
            .iter()
            .map(|c| vec![c.linear_coeff(0), c.linear_coeff(1)])
            .collect()
    }

    pub fn map_coeffs<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> MapGerm<G> {
        MapGerm {
            components: self.components.clone().map(|c| c.map_coeffs(&mut f)),
        }
    }

    /// `f ∘ A` for the linear source change `(x, y) ↦ A·(x, y)`.
    pub fn compose_source(&self, a: &Matrix<F>) -> Self {
        let vars = self.vars().clone();
        let images: Vec<Polynomial<F>> = a
            .iter()
            .map(|row| {
                let mut p = Polynomial::zero(&vars);
                for (j, c) in row.iter().enumerate() {
                    p = &p + &Polynomial::var(&vars, j).scale(c);
                }
                p
            })
            .collect();
        MapGerm {
            components: self.components.clone().map(|c| c.compose(&images, &vars)),
        }
    }

    /// `B·f` for a 3×3 target matrix.
    pub fn apply_target(&self, b: &Matrix<F>) -> Self {
        let vars = self.vars().clone();
        let comps: Vec<Polynomial<F>> = b
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.components)
                    .fold(Polynomial::zero(&vars), |acc, (c, f)| &acc + &f.scale(c))
            })
            .collect();
        MapGerm {
            components: comps.try_into().expect("three rows"),
        }
    }

    /// `B·(f∘A)`.
    pub fn transform(&self, change: &LinearChange<F>) -> Self {
        self.compose_source(&change.source).apply_target(&change.target)
    }

    pub fn corank(&self) -> u8 {
        2 - linalg::rank(&self.linear_part()) as u8
    }

    pub fn corank_data(&self) -> CorankData<F> {
        corank(self)
    }

    /// The normalized shape `(x, p, q)` for corank ≤ 1.
    pub fn normalized(&self) -> Result<MapGerm<F>, GermError> {
        match corank(self) {
            CorankData {
                corank: 2, ..
            } => Err(GermError::Corank2),
            CorankData {
                normalized: Some(g),
                ..
            } => Ok(g),
            _ => Err(GermError::NormalizationUnavailable),
        }
    }
}

/// Linear change of coordinates `f ↦ B·(f∘A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChange<F> {
    pub source: Matrix<F>,
    pub target: Matrix<F>,
}

impl<F: Field> LinearChange<F> {
    pub fn inverse(&self) -> Option<Self> {
        Some(LinearChange {
            source: linalg::inverse(&self.source)?,
            target: linalg::inverse(&self.target)?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CorankData<F: Field> {
    pub corank: u8,
    pub normalizing_change: Option<LinearChange<F>>,
    pub normalized: Option<MapGerm<F>>,
}

/// Corank and, for corank ≤ 1, a verified linear change to `(x, p, q)`
/// where `q` has no linear terms and `p` has none in corank 1 (in corank 0
/// its linear part is `y`).
pub fn corank<F: Field>(g: &MapGerm<F>) -> CorankData<F> {
    let c = g.corank();
    if c == 2 {
        return CorankData {
            corank: 2,
            normalizing_change: None,
            normalized: None,
        };
    }
    let change = normalizing_change(g);
    let normalized = change.as_ref().map(|ch| g.transform(ch));
    if let (Some(ch), Some(n)) = (&change, &normalized) {
        assert!(in_shape(n, c), "normalization produced {n}");
        let inv = ch.inverse().expect("invertible change");
        assert_eq!(&n.transform(&inv), g, "normalization does not invert");
    }
    CorankData {
        corank: c,
        normalizing_change: change,
        normalized,
    }
}

fn in_shape<F: Field>(g: &MapGerm<F>, corank: u8) -> bool {
    let [a, p, q] = g.components();
    let x = Polynomial::var(a.vars(), 0);
    let linear_free = |h: &Polynomial<F>| h.linear_coeff(0).is_zero() && h.linear_coeff(1).is_zero();
    *a == x
        && linear_free(q)
        && p.linear_coeff(0).is_zero()
        && if corank == 0 { p.linear_coeff(1).is_one() } else { linear_free(p) }
}

fn normalizing_change<F: Field>(g: &MapGerm<F>) -> Option<LinearChange<F>> {
    let comps = g.components();
    // columns: nonlinear monomials; rows: components
    let mut nonlinear: Vec<Monomial> = comps
        .iter()
        .flat_map(|c| c.terms().map(|(m, _)| *m))
        .filter(|m| m.degree() >= 2)
        .collect();
    nonlinear.sort();
    nonlinear.dedup();
    let system: Matrix<F> = nonlinear
        .iter()
        .map(|m| comps.iter().map(|c| c.coeff(m)).collect())
        .collect();
    let kernel = if system.is_empty() {
        linalg::identity(3)
    } else {
        linalg::kernel(&system, 3)
    };
    let lin = g.linear_part();
    let comb = |c: &[F], j: usize| {
        (0..3).fold(F::zero(), |acc, i| acc.add(&c[i].mul(&lin[i][j])))
    };
    let c = kernel
        .into_iter()
        .find(|c| !comb(c, 0).is_zero() || !comb(c, 1).is_zero())?;
    let (a, b) = (comb(&c, 0), comb(&c, 1));

    // source: make a·x + b·y the new x
    let source: Matrix<F> = if !a.is_zero() {
        vec![vec![a.inv(), b.div(&a).neg()], vec![F::zero(), F::one()]]
    } else {
        vec![vec![F::zero(), F::one()], vec![b.inv(), F::zero()]]
    };
    let pivot = (0..3).find(|&i| !c[i].is_zero()).expect("nonzero");
    let mut target: Matrix<F> = vec![c.clone()];
    for j in (0..3).filter(|&j| j != pivot) {
        let mut e = vec![F::zero(); 3];
        e[j] = F::one();
        target.push(e);
    }
    let step = g.compose_source(&source).apply_target(&target);
    let lp = step.linear_part();
    // clear x-linear terms of rows 1, 2
    let mut clear = linalg::identity::<F>(3);
    for r in 1..3 {
        clear[r][0] = lp[r][0].neg();
    }
    let target = linalg::mul(&clear, &target);
    let step = g.compose_source(&source).apply_target(&target);
    let lp = step.linear_part();
    // corank 0: put the y-linear part into row 1 and clear it from row 2
    let mut fix = linalg::identity::<F>(3);
    if !lp[1][1].is_zero() || !lp[2][1].is_zero() {
        if lp[1][1].is_zero() {
            fix.swap(1, 2);
        }
        let (l1, l2) = if lp[1][1].is_zero() {
            (lp[2][1].clone(), lp[1][1].clone())
        } else {
            (lp[1][1].clone(), lp[2][1].clone())
        };
        let mut scale = linalg::identity::<F>(3);
        scale[1][1] = l1.inv();
        scale[2][1] = l2.div(&l1).neg();
        fix = linalg::mul(&scale, &fix);
    }
    let target = linalg::mul(&fix, &target);
    Some(LinearChange { source, target })
}

/// A one-parameter unfolding `f_t` with coefficients in `Q(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unfolding {
    pub name: Option<String>,
    germ: MapGerm<RatFunc>,
    parameter_unused: bool,
}

impl Unfolding {
    pub fn new(name: Option<String>, germ: MapGerm<RatFunc>) -> Self {
        let parameter_unused = germ
            .components()
            .iter()
            .all(|c| c.terms().all(|(_, a)| a.is_constant()));
        Unfolding {
            name,
            germ,
            parameter_unused,
        }
    }

    pub fn germ(&self) -> &MapGerm<RatFunc> {
        &self.germ
    }

    /// True when `t` occurs nowhere (accepted, flagged).
    pub fn parameter_unused(&self) -> bool {
        self.parameter_unused
    }

    /// `f_{t0}`.
    pub fn specialize(&self, t0: &Rational) -> Result<MapGerm<Rational>, GermError> {
        let mut pole = false;
        let g = self.germ.map_coeffs(|c| match c.eval(t0.as_big()) {
            Some(v) => Rational(v),
            None => {
                pole = true;
                Rational::zero()
            }
        });
        if pole {
            return Err(GermError::Pole { t0: t0.clone() });
        }
        Ok(g)
    }
}

/// A validated specification.
#[derive(Debug, Clone)]
pub enum ValidatedGerm {
    Germ(MapGerm<Rational>),
    Unfolding(Unfolding),
}

pub fn validate_map_germ(spec: &GermSpec) -> Result<ValidatedGerm, GermError> {
    let comps = spec.parse_components()?;
    if !spec.is_unfolding() {
        return Ok(ValidatedGerm::Germ(MapGerm::new(comps)?));
    }
    let target = source_vars();
    let lifted = comps.map(|p| {
        let mut out = Polynomial::<RatFunc>::zero(&target);
        for (m, c) in p.terms() {
            let k = m.exp(2) as usize;
            let mut coeffs = vec![BigRational::from_integer(0.into()); k + 1];
            coeffs[k] = c.as_big().clone();
            let coeff = RatFunc::from_poly(UniPoly::from_coeffs(coeffs));
            let mono = Monomial::from_exps(&[m.exp(0), m.exp(1)]);
            out = &out + &Polynomial::monomial(&target, mono, coeff);
        }
        out
    });
    Ok(ValidatedGerm::Unfolding(Unfolding::new(
        spec.name.clone(),
        MapGerm::new(lifted)?,
    )))
}

pub fn germ_from_spec(spec: &GermSpec) -> Result<MapGerm<Rational>, GermError> {
    match validate_map_germ(spec)? {
        ValidatedGerm::Germ(g) => Ok(g),
        ValidatedGerm::Unfolding(_) => Err(GermError::IsUnfolding),
    }
}

pub fn unfolding_from_spec(spec: &GermSpec) -> Result<Unfolding, GermError> {
    match validate_map_germ(spec)? {
        ValidatedGerm::Unfolding(u) => Ok(u),
        ValidatedGerm::Germ(_) => Err(GermError::NotAnUnfolding),
    }
}

/// Parses `(f₁, f₂, f₃)` over `(x, y)`.
pub fn germ<S: AsRef<str>>(components: [S; 3]) -> Result<MapGerm<Rational>, GermError> {
    germ_from_spec(&GermSpec::new(components.map(|s| s.as_ref().to_string())))
}
