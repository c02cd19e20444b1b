//! Exact multivariate polynomials over a [`Field`].
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors, so iteration
//! order is canonical and independent of how a polynomial was built. At most
//! [`MAX_VARS`] variables are supported; the germ computations never need
//! more than six.

mod gcd;
mod resultant;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::field::Field;

pub use gcd::{squarefree_part, strip_unit_factors};
pub use resultant::resultant;

pub const MAX_VARS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("resultant undefined: both inputs are zero")]
    ResultantUndefined,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("variable '{0}' does not exist in the target ring")]
    MissingInTarget(String),
}

/// Ordered list of variable names shared by all polynomials of one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in v.iter().enumerate() {
            assert!(!v[..i].contains(a), "duplicate variable '{a}'");
        }
        Vars(v.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn index(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

/// Exponent vector. The derived order is lexicographic with the first
/// variable most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(e)
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut e = o.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(e)
    }

    #[inline]
    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(e)
    }

    #[inline]
    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn with_exp(mut self, i: usize, e: u16) -> Self {
        self.0[i] = e;
        self
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

/// Multivariate polynomial with exact coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F> {
    vars: Vars,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn constant(vars: &Vars, c: F) -> Self {
        Self::monomial(vars, Monomial::one(), c)
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len());
        Self::monomial(vars, Monomial::var(i), F::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self, PolyError> {
        Ok(Self::var(vars, vars.index(name)?))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(vars: &Vars, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in canonical (lexicographic, ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one())
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Order at the origin (lowest total degree of a term); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) > 0)
    }

    /// Indices of variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.involves(i)).collect()
    }

    /// Lexicographically largest term.
    pub fn lex_leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so that the lexicographically leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.lex_leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv();
                self.scale(&inv)
            }
        }
    }

    pub fn map_coeffs<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> Polynomial<G> {
        let mut out = Polynomial::<G>::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Same polynomial, homogeneous component of degree `d` only.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the linear monomial in variable `i`.
    pub fn linear_coeff(&self, i: usize) -> F {
        self.coeff(&Monomial::var(i))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            out.add_term(m.with_exp(i, e - 1), c.mul(&F::from_i64(e as i64)));
        }
        out
    }

    /// Substitutes polynomial `q` (same ring) for variable `i`.
    pub fn substitute(&self, i: usize, q: &Self) -> Self {
        assert_eq!(self.vars, q.vars, "substitution across rings");
        let mut powers: Vec<Self> = vec![Self::one(&self.vars)];
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * q;
                powers.push(next);
            }
            let rest = m.with_exp(i, 0);
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    /// Simultaneous substitution of all variables by polynomials in another
    /// ring `target` (one image per variable of `self`).
    pub fn compose(&self, images: &[Polynomial<F>], target: &Vars) -> Polynomial<F> {
        assert_eq!(images.len(), self.nvars());
        let mut cache: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(target)]; self.nvars()];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i) as usize;
                while cache[i].len() <= e {
                    let next = &cache[i][cache[i].len() - 1] * img;
                    cache[i].push(next);
                }
                if e > 0 {
                    t = &t * &cache[i][e];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Sets variable `i` to the constant `c`.
    pub fn eval_var(&self, i: usize, c: &F) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, a) in &self.terms {
            let mut v = a.clone();
            for _ in 0..m.exp(i) {
                v = v.mul(c);
            }
            out.add_term(m.with_exp(i, 0), v);
        }
        out
    }

    /// Value with every variable set to zero.
    pub fn value_at_origin(&self) -> F {
        self.constant_term()
    }

    /// Moves the polynomial to ring `target`, matching variables by name.
    /// Every variable that occurs must exist in the target.
    pub fn to_ring(&self, target: &Vars) -> Result<Polynomial<F>, PolyError> {
        let mut map = vec![None; self.nvars()];
        for (i, name) in self.vars.names().iter().enumerate() {
            map[i] = target.index_of(name);
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = [0u16; MAX_VARS];
            for (i, slot) in map.iter().enumerate() {
                let ex = m.exp(i);
                if ex == 0 {
                    continue;
                }
                match slot {
                    Some(j) => e[*j] += ex,
                    None => return Err(PolyError::MissingInTarget(self.vars.names()[i].clone())),
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Renames variable `from` to `to` (both indices in this ring); `to`
    /// must not occur.
    pub fn rename_var(&self, from: usize, to: usize) -> Self {
        assert!(!self.involves(to) || from == to);
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(from);
            let mm = m.with_exp(from, 0).with_exp(to, e);
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0;
            e.swap(a, b);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// View as a univariate polynomial in variable `i`: entry `k` is the
    /// coefficient of `x_i^k` (a polynomial free of `x_i`).
    pub fn coeffs_in(&self, i: usize) -> Vec<Self> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(&self.vars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            out[e].add_term(m.with_exp(i, 0), c.clone());
        }
        out
    }

    /// Leading coefficient with respect to variable `i`.
    pub fn leading_coeff_in(&self, i: usize) -> Self {
        self.coeffs_in(i).pop().unwrap_or_else(|| Self::zero(&self.vars))
    }

    /// Exact first divided difference
    /// `(p(.., v, ..) - p(.., v_new, ..)) / (v - v_new)`.
    ///
    /// `v_new` must not occur in `self`.
    pub fn divided_difference(&self, v: usize, v_new: usize) -> Self {
        assert_ne!(v, v_new);
        assert!(!self.involves(v_new), "target variable of a divided difference must be fresh");
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let k = m.exp(v);
            if k == 0 {
                continue;
            }
            let base = m.with_exp(v, 0);
            // complete homogeneous polynomial of degree k-1 in (v, v_new)
            for i in 0..k {
                let mm = base.with_exp(v, i).with_exp(v_new, k - 1 - i);
                out.add_term(mm, c.clone());
            }
        }
        out
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (lm, lc) = d.lex_leading().map(|(m, c)| (*m, c.clone()))?;
        let lc_inv = lc.inv();
        let mut r = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((m, c)) = r.lex_leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = c.mul(&lc_inv);
            r = &r - &d.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        gcd::gcd(self, other)
    }

    /// Terms sorted for display: descending total degree, then descending
    /// lexicographic order.
    fn display_order(&self) -> Vec<(&Monomial, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        v
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.display_order().into_iter().enumerate() {
            let (neg, abs) = if c.is_negative_literal() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                if abs.is_compound() {
                    factors.push(format!("({abs})"));
                } else {
                    factors.push(abs.to_string());
                }
            }
            for (i, name) in self.vars.names().iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.vars, rhs.vars, "ring mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.vars, rhs.vars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.neg());
        }
        out
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.vars, rhs.vars, "ring mismatch");
        let mut out = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Finitely generated ideal. Structural equality is not ideal equality;
/// compare reduced Gröbner bases for that.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal<F> {
    vars: Vars,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self.generators)
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(vars: &Vars, generators: Vec<Polynomial<F>>) -> Self {
        for g in &generators {
            assert_eq!(g.vars(), vars, "generator outside the ambient ring");
        }
        Ideal {
            vars: vars.clone(),
            generators,
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn push(&mut self, g: Polynomial<F>) {
        assert_eq!(g.vars(), &self.vars);
        self.generators.push(g);
    }

    pub fn with(mut self, g: Polynomial<F>) -> Self {
        self.push(g);
        self
    }

    /// True when every generator is zero.
    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }
}

/// 2x2 minors of a matrix given by rows, in the order (0,1), (0,2), (1,2)
/// of row pairs; columns must be exactly two.
pub fn two_by_two_minors<F: Field>(rows: &[[Polynomial<F>; 2]]) -> Vec<Polynomial<F>> {
    let mut out = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            out.push(&(&rows[i][0] * &rows[j][1]) - &(&rows[i][1] * &rows[j][0]));
        }
    }
    out
}
