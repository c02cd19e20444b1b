//! Colength of an ideal in the local ring at the origin.
//!
//! For a truncation degree `N` we compute a standard basis of
//! `I + m^N` under a degree-ascending order inside the finite algebra
//! `k[x]/m^N`. The standard monomials of degree `k < N` count the
//! Hilbert–Samuel function `HS(k) = dim (m^k + I)/(m^{k+1} + I)`. Once
//! `HS(k0) = 0` Nakayama gives `m^{k0} ⊂ I` locally and the colength is
//! `Σ_{k<k0} HS(k)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::engine::{Engine, OrderKind, Ordering, Poly};
use super::GbError;
use crate::field::Field;
use crate::poly::{Ideal, Monomial, Polynomial, Vars};

pub const DEFAULT_CEILING: u32 = 64;

/// Extended natural number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Colength {
    Finite(u64),
    #[serde(with = "infinite_str")]
    Infinite,
}

mod infinite_str {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("infinite")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "infinite" {
            Ok(())
        } else {
            Err(D::Error::custom(format!("expected \"infinite\", got {s:?}")))
        }
    }
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

/// Standard basis of `I + m^n` in `k[x]/m^n`, lowest degree leading.
pub fn local_standard_basis<F: Field>(ideal: &Ideal<F>, n: u32) -> Vec<Polynomial<F>> {
    let vars = ideal.vars();
    let ord = Ordering::new(OrderKind::LocalDegRevLex, vars.len());
    let engine = Engine {
        ord: &ord,
        trunc: Some(n),
    };
    truncated(ideal, &engine)
        .iter()
        .map(|p| engine.to_external(p, vars))
        .collect()
}

fn truncated<F: Field>(ideal: &Ideal<F>, engine: &Engine<'_>) -> Vec<Poly<F>> {
    let gens: Vec<Poly<F>> = ideal
        .generators()
        .iter()
        .map(|g| engine.to_internal(g))
        .collect();
    engine.groebner(&gens)
}

fn leads<F: Field>(ideal: &Ideal<F>, n: u32) -> Vec<Monomial> {
    let ord = Ordering::new(OrderKind::LocalDegRevLex, ideal.vars().len());
    let engine = Engine {
        ord: &ord,
        trunc: Some(n),
    };
    truncated(ideal, &engine).iter().map(|p| p[0].mono).collect()
}

/// `HS(k)` for `k < n`: standard monomials of each degree.
pub fn hilbert_samuel<F: Field>(ideal: &Ideal<F>, n: u32) -> Vec<u64> {
    let nvars = ideal.vars().len();
    let l = leads(ideal, n);
    staircase_by_degree(&l, nvars, n)
}

/// Counts monomials of degree `< n` divisible by no element of `leads`,
/// grouped by degree. Walks the order ideal of standard monomials only.
fn staircase_by_degree(leads: &[Monomial], nvars: usize, n: u32) -> Vec<u64> {
    let mut counts = vec![0u64; n as usize];
    let standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
    fn walk(
        m: &mut Monomial,
        i: usize,
        deg: u32,
        nvars: usize,
        n: u32,
        standard: &dyn Fn(&Monomial) -> bool,
        counts: &mut [u64],
    ) {
        if i == nvars {
            counts[deg as usize] += 1;
            return;
        }
        let mut e = 0u32;
        loop {
            if deg + e >= n {
                break;
            }
            m.0[i] = e as u16;
            if !standard(m) {
                break;
            }
            walk(m, i + 1, deg + e, nvars, n, standard, counts);
            e += 1;
        }
        m.0[i] = 0;
    }
    if n == 0 {
        return counts;
    }
    let mut m = Monomial::one();
    walk(&mut m, 0, 0, nvars, n, &standard, &mut counts);
    counts
}

fn has_free_axis(leads: &[Monomial], nvars: usize) -> bool {
    (0..nvars).any(|i| {
        !leads
            .iter()
            .any(|l| l.exp(i) > 0 && l.degree() == l.exp(i) as u32)
    })
}

pub fn local_colength<F: Field>(ideal: &Ideal<F>) -> Result<Colength, GbError> {
    local_colength_with(ideal, DEFAULT_CEILING)
}

/// Removes variables solved by a generator `c·x_i + h` with `c` a nonzero
/// constant and `h` free of `x_i`. Such a substitution is a ring
/// isomorphism fixing the origin, so local colengths are unchanged.
pub fn eliminate_linear<F: Field>(ideal: &Ideal<F>) -> Ideal<F> {
    let mut vars = ideal.vars().clone();
    let mut gens: Vec<Polynomial<F>> = ideal.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    'outer: loop {
        for (k, g) in gens.iter().enumerate() {
            for i in g.support_vars() {
                if g.degree_in(i) != 1 {
                    continue;
                }
                let cs = g.coeffs_in(i);
                if !cs[1].is_constant() {
                    continue;
                }
                let c = cs[1].constant_term();
                let solved = cs[0].scale(&c.inv().neg());
                let names: Vec<&str> = (0..vars.len())
                    .filter(|&j| j != i)
                    .map(|j| vars.names()[j].as_str())
                    .collect();
                let target = Vars::new(&names);
                let next: Vec<Polynomial<F>> = gens
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, h)| h.substitute(i, &solved).to_ring(&target).expect("free of x_i"))
                    .filter(|h| !h.is_zero())
                    .collect();
                vars = target;
                gens = next;
                continue 'outer;
            }
        }
        return Ideal::new(&vars, gens);
    }
}

/// Colength of `I` in the local ring at the origin, trying truncation
/// degrees 8, 16, 32, … up to `ceiling`. At the ceiling, a variable without
/// a pure power among the leading monomials means positive local dimension.
pub fn local_colength_with<F: Field>(ideal: &Ideal<F>, ceiling: u32) -> Result<Colength, GbError> {
    let nvars = ideal.vars().len();
    let ceiling = ceiling.max(1);
    if ideal.generators().iter().any(|g| !g.value_at_origin().is_zero()) {
        return Ok(Colength::Finite(0));
    }
    if nvars == 0 {
        return Ok(Colength::Finite(1));
    }
    if ideal.is_zero() {
        return Ok(Colength::Infinite);
    }
    let reduced = eliminate_linear(ideal);
    if reduced.vars().len() < nvars {
        return local_colength_with(&reduced, ceiling);
    }
    let mut n = ceiling.min(8);
    loop {
        let l = leads(ideal, n);
        if l.iter().any(|m| m.is_one()) {
            return Ok(Colength::Finite(0));
        }
        let free_axis = has_free_axis(&l, nvars);
        if !free_axis {
            let hs = staircase_by_degree(&l, nvars, n);
            if let Some(k0) = hs.iter().position(|&h| h == 0) {
                return Ok(Colength::Finite(hs[..k0].iter().sum()));
            }
        }
        if n == ceiling {
            return if free_axis {
                Ok(Colength::Infinite)
            } else {
                Err(GbError::Undecided { ceiling })
            };
        }
        n = (n * 2).min(ceiling);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::parser::parse_polynomial;
    use crate::poly::Vars;

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal<Rational> {
        let vars = Vars::new(names);
        Ideal::new(
            &vars,
            gens.iter()
                .map(|s| parse_polynomial(s, &vars).unwrap())
                .collect(),
        )
    }

    fn col(gens: &[&str]) -> Result<Colength, GbError> {
        local_colength(&ideal(&["x", "y"], gens))
    }

    #[test]
    fn examples() {
        assert_eq!(col(&["x", "y^2"]), Ok(Colength::Finite(2)));
        assert_eq!(col(&["x*(1+x)", "y"]), Ok(Colength::Finite(1)));
        assert_eq!(col(&["y^2"]), Ok(Colength::Infinite));
        assert_eq!(col(&["x + 1", "y"]), Ok(Colength::Finite(0)));
        assert_eq!(col(&["x", "y"]), Ok(Colength::Finite(1)));
    }

    #[test]
    fn milnor_numbers() {
        // A_k: y^2 + x^(k+1), Jacobian (x^k, y)
        assert_eq!(col(&["3*x^2", "2*y"]), Ok(Colength::Finite(2)));
        // D_4: x^2 y - y^3 -> μ = 4
        assert_eq!(col(&["2*x*y", "x^2 - 3*y^2"]), Ok(Colength::Finite(4)));
        // E_6: x^3 + y^4 -> μ = 6
        assert_eq!(col(&["x^2", "y^3"]), Ok(Colength::Finite(6)));
    }

    #[test]
    fn global_vs_local() {
        // away-from-origin zeros are invisible locally
        assert_eq!(col(&["x*(x-1)", "y*(y-2)"]), Ok(Colength::Finite(1)));
        assert_eq!(col(&["x^2*(1+y)", "y^3 + x^3"]), Ok(Colength::Finite(6)));
    }

    #[test]
    fn ceiling_behaviour() {
        let i = ideal(&["x", "y"], &["x", "y^100"]);
        assert_eq!(local_colength_with(&i, 128), Ok(Colength::Finite(100)));
        // finite, but the pure power lies past the ceiling
        assert_eq!(local_colength_with(&i, 64), Ok(Colength::Infinite));
        let i = ideal(&["x", "y"], &["x^40", "y^40"]);
        assert_eq!(
            local_colength_with(&i, 64),
            Err(GbError::Undecided { ceiling: 64 })
        );
    }

    #[test]
    fn linear_elimination() {
        let i = ideal(&["x", "y", "z"], &["z + x*y + x^2", "z^2 - y^3", "x - 2*y + y^2"]);
        let r = eliminate_linear(&i);
        assert_eq!(r.vars().len(), 1);
        // z = -(x^2 + xy), x = 2y - y^2: (x^2 + xy)^2 - y^3 has order 3 in y
        assert_eq!(local_colength(&r), Ok(Colength::Finite(3)));
        assert_eq!(local_colength(&i), Ok(Colength::Finite(3)));
        let j = ideal(&["x", "y"], &["x - y^2", "x"]);
        assert_eq!(local_colength(&j), Ok(Colength::Finite(2)));
    }

    #[test]
    fn curve_of_high_contact() {
        let i = ideal(&["x", "y", "z"], &["x - y^20", "x - z^21"]);
        assert_eq!(local_colength_with(&i, 64), Ok(Colength::Infinite));
    }

    #[test]
    fn hilbert_samuel_function() {
        let i = ideal(&["x", "y"], &["x^2", "y^3"]);
        assert_eq!(hilbert_samuel(&i, 6), vec![1, 2, 2, 1, 0, 0]);
        let i = ideal(&["x", "y", "z"], &["x*y"]);
        assert_eq!(hilbert_samuel(&i, 4), vec![1, 3, 5, 7]);
    }

    #[test]
    fn serde_form() {
        assert_eq!(serde_json::to_string(&Colength::Finite(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Colength::Infinite).unwrap(), "\"infinite\"");
        let c: Colength = serde_json::from_str("\"infinite\"").unwrap();
        assert_eq!(c, Colength::Infinite);
        let c: Colength = serde_json::from_str("7").unwrap();
        assert_eq!(c, Colength::Finite(7));
    }
}
