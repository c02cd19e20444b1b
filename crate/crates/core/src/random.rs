//! Seeded generators of test inputs: corank-1 germs, monomial ideals and
//! linear coordinate changes.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::{Field, Rational};
use crate::germ::{source_vars, LinearChange, MapGerm};
use crate::linalg;
use crate::poly::{Ideal, Monomial, Polynomial, Vars};

fn small_nonzero<R: Rng>(rng: &mut R) -> Rational {
    let n = *[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
    Rational::new(n, rng.gen_range(1..=2))
}

/// `(x, p, q)` with `p = y^a + Σ c x^i y^j` (`i ≥ 1`, `j < a`,
/// `2 ≤ i + j ≤ 6`), `a ∈ {2, 3}`, and `q` a random sum of monomials of
/// order ≥ 2 and degree ≤ 6.
pub fn random_corank1_germ<R: Rng>(rng: &mut R) -> MapGerm<Rational> {
    let vars = source_vars();
    let a: u16 = rng.gen_range(2..=3);
    let mut p = Polynomial::monomial(&vars, Monomial::from_exps(&[0, a]), Rational::one());
    for _ in 0..rng.gen_range(0..=2) {
        let j = rng.gen_range(0..a);
        let i = rng.gen_range(1u16.max(2u16.saturating_sub(j))..=6 - j);
        p = &p + &Polynomial::monomial(&vars, Monomial::from_exps(&[i, j]), small_nonzero(rng));
    }
    let mut q = Polynomial::zero(&vars);
    for _ in 0..rng.gen_range(1..=4) {
        let d = rng.gen_range(2..=6u16);
        let i = rng.gen_range(0..=d);
        q = &q + &Polynomial::monomial(&vars, Monomial::from_exps(&[i, d - i]), small_nonzero(rng));
    }
    MapGerm::new([Polynomial::var(&vars, 0), p, q]).expect("vanishes at 0")
}

/// A monomial ideal containing a pure power of every variable.
pub fn random_zero_dim_monomial_ideal<R: Rng>(rng: &mut R, vars: &Vars) -> Ideal<Rational> {
    let n = vars.len();
    let mut gens = Vec::new();
    for i in 0..n {
        let mut e = vec![0u16; n];
        e[i] = rng.gen_range(1..=7);
        gens.push(e);
    }
    for _ in 0..rng.gen_range(0..=4) {
        gens.push((0..n).map(|_| rng.gen_range(0..=4)).collect());
    }
    gens.shuffle(rng);
    Ideal::new(
        vars,
        gens.into_iter()
            .filter(|e| e.iter().any(|&v| v > 0))
            .map(|e| Polynomial::monomial(vars, Monomial::from_exps(&e), Rational::one()))
            .collect(),
    )
}

fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> linalg::Matrix<Rational> {
    loop {
        let m: linalg::Matrix<Rational> = (0..n)
            .map(|_| (0..n).map(|_| Rational::integer(rng.gen_range(-3..=3))).collect())
            .collect();
        if linalg::rank(&m) == n {
            return m;
        }
    }
}

/// Random invertible integer change of source and target coordinates.
pub fn random_linear_change<R: Rng>(rng: &mut R) -> LinearChange<Rational> {
    LinearChange {
        source: random_invertible(rng, 2),
        target: random_invertible(rng, 3),
    }
}

/// A random polynomial in `vars` with terms of total degree `≤ max_deg`.
pub fn random_polynomial<R: Rng>(rng: &mut R, vars: &Vars, terms: usize, max_deg: u16) -> Polynomial<Rational> {
    let n = vars.len();
    let mut p = Polynomial::zero(vars);
    for _ in 0..terms {
        let mut e = vec![0u16; n];
        let mut budget = rng.gen_range(0..=max_deg);
        for slot in e.iter_mut() {
            let k = rng.gen_range(0..=budget);
            *slot = k;
            budget -= k;
        }
        e.shuffle(rng);
        p = &p + &Polynomial::monomial(vars, Monomial::from_exps(&e), small_nonzero(rng));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn germs_are_normalized_corank1() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = random_corank1_germ(&mut rng);
            assert_eq!(g.corank(), 1, "{g}");
            assert_eq!(g.normalized().unwrap(), g);
        }
    }
}
