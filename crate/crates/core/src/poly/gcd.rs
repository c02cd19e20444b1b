//! Multivariate gcd by recursive content / primitive-part reduction, and the
//! square-free and unit-stripping utilities built on it.

use super::{PolyError, Polynomial};
use crate::field::Field;

/// Monic gcd. `gcd(0, 0) = 0`.
pub(super) fn gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    gcd_rec(a, b).monic()
}

fn main_var<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Option<usize> {
    (0..a.nvars()).rev().find(|&i| a.involves(i) || b.involves(i))
}

fn gcd_rec<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let Some(v) = main_var(a, b) else {
        return Polynomial::one(a.vars());
    };
    if !a.involves(v) {
        return gcd_rec(a, &content_in(b, v));
    }
    if !b.involves(v) {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_zero() {
            break;
        }
        if !r.involves(v) {
            r1 = Polynomial::one(a.vars());
            break;
        }
        r0 = r1;
        r1 = primitive_part_in(&r, v);
    }
    let g = primitive_part_in(&r1, v);
    (&c * &g).monic()
}

/// gcd of the coefficients of `p` viewed as a polynomial in variable `v`.
fn content_in<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let mut acc = Polynomial::zero(p.vars());
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one(p.vars());
        }
    }
    acc.monic()
}

fn primitive_part_in<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// Lazy pseudo-remainder of `a` by `b` in variable `v`; the result lies in
/// the ideal `(a, b)` and differs from the true remainder by a `v`-free
/// factor.
fn pseudo_rem<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let db = b.degree_in(v);
    let lcb = b.leading_coeff_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.involves(v) && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.leading_coeff_in(v);
        let mut shift = super::Monomial::one();
        shift.0[v] = dr - db;
        let t = (&lcr * b).mul_monomial(&shift, &F::one());
        r = &(&r * &lcb) - &t;
    }
    r
}

/// Certifies that `p` has no repeated factor: the content in the main
/// variable is certified recursively, and the primitive part is
/// specialized at points where its leading coefficient survives. `false`
/// only means the certificate was not found.
fn certify_squarefree<F: Field>(p: &Polynomial<F>) -> bool {
    let support = p.support_vars();
    let Some((&v, rest)) = support.split_last() else {
        return true;
    };
    if rest.is_empty() {
        return gcd_rec(p, &p.derivative(v)).is_constant();
    }
    let c = content_in(p, v);
    if !c.is_constant() && !certify_squarefree(&c) {
        return false;
    }
    let pp = p.div_exact(&c).expect("content divides");
    let lc = pp.leading_coeff_in(v);
    (1..=4i64).any(|attempt| {
        let mut q = pp.clone();
        let mut l = lc.clone();
        for (k, &i) in rest.iter().enumerate() {
            let a = F::from_i64((attempt + 3 * k as i64) * if k % 2 == 0 { 1 } else { -1 });
            q = q.eval_var(i, &a);
            l = l.eval_var(i, &a);
        }
        !l.is_zero() && gcd_rec(&q, &q.derivative(v)).is_constant()
    })
}

/// Product of the distinct irreducible factors of `g`, made monic. The
/// content in the main variable and the primitive part are treated
/// separately; `g / gcd(g, ∂g/∂x_1, ..., ∂g/∂x_n)` is used only when the
/// primitive part is not certified square-free.
pub fn squarefree_part<F: Field>(g: &Polynomial<F>) -> Result<Polynomial<F>, PolyError> {
    if g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let support = g.support_vars();
    let Some(&v) = support.last() else {
        return Ok(Polynomial::one(g.vars()));
    };
    let c = content_in(g, v);
    let pp = g.div_exact(&c).expect("content divides");
    let head = if c.is_constant() {
        Polynomial::one(g.vars())
    } else {
        squarefree_part(&c)?
    };
    let tail = if certify_squarefree(&pp) {
        pp
    } else {
        let mut d = pp.clone();
        for i in pp.support_vars() {
            d = gcd_rec(&d, &pp.derivative(i));
            if d.is_constant() {
                break;
            }
        }
        pp.div_exact(&d).expect("gcd divides")
    };
    Ok((&head * &tail).monic())
}

/// Removes the factors of `g` that do not vanish at the origin of the
/// variables in `origin_vars` (local units), returning a monic polynomial;
/// returns 1 when every factor is a unit.
///
/// Factors are separated by repeated content extraction in each variable
/// and by square-free decomposition. A univariate piece in `v` splits
/// exactly as `v^k` times a unit. Multivariate pieces that these
/// decompositions cannot split are kept whole when they vanish at the
/// origin.
pub fn strip_unit_factors<F: Field>(
    g: &Polynomial<F>,
    origin_vars: &[usize],
) -> Result<Polynomial<F>, PolyError> {
    if g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut pieces = vec![g.clone()];
    // content splitting, iterated to a fixpoint
    loop {
        let mut changed = false;
        let mut next = Vec::new();
        for p in pieces {
            let mut split = None;
            for v in p.support_vars() {
                let c = content_in(&p, v);
                if !c.is_constant() {
                    split = Some((c.clone(), p.div_exact(&c).expect("content divides")));
                    break;
                }
            }
            match split {
                Some((a, b)) => {
                    next.push(a);
                    next.push(b);
                    changed = true;
                }
                None => next.push(p),
            }
        }
        pieces = next;
        if !changed {
            break;
        }
    }
    let mut kept = Polynomial::one(g.vars());
    for p in pieces {
        for (mult, factor) in squarefree_decomposition(&p) {
            let local = local_piece(&factor, origin_vars);
            kept = &kept * &local.pow(mult);
        }
    }
    Ok(kept.monic())
}

fn vanishes_at_origin<F: Field>(p: &Polynomial<F>, origin_vars: &[usize]) -> bool {
    let mut q = p.clone();
    for &i in origin_vars {
        q = q.eval_var(i, &F::zero());
    }
    q.is_zero()
}

/// Local part of a square-free piece.
fn local_piece<F: Field>(p: &Polynomial<F>, origin_vars: &[usize]) -> Polynomial<F> {
    let support = p.support_vars();
    if support.len() == 1 && origin_vars.contains(&support[0]) {
        // univariate: p = v^k * u with u(0) != 0
        let v = support[0];
        let k = p.terms().map(|(m, _)| m.exp(v)).min().unwrap_or(0);
        let mut m = super::Monomial::one();
        m.0[v] = k;
        return Polynomial::monomial(p.vars(), m, F::one());
    }
    if vanishes_at_origin(p, origin_vars) {
        p.clone()
    } else {
        Polynomial::one(p.vars())
    }
}

/// Yun's square-free decomposition: pairs `(k, a_k)` with `p = c * ∏ a_k^k`,
/// the `a_k` square-free and pairwise coprime. Characteristic zero.
fn squarefree_decomposition<F: Field>(p: &Polynomial<F>) -> Vec<(u32, Polynomial<F>)> {
    if p.is_constant() {
        return Vec::new();
    }
    if certify_squarefree(p) {
        return vec![(1, p.monic())];
    }
    // gcd with all partials collects the repeated factors
    let mut g = p.clone();
    for i in p.support_vars() {
        g = gcd_rec(&g, &p.derivative(i));
    }
    let g = g.monic();
    if g.is_constant() {
        return vec![(1, p.monic())];
    }
    // p = a_1 * a_2^2 * ... ; rad = p / g is the product of all a_k.
    let mut out = Vec::new();
    let mut rad = p.div_exact(&g).expect("gcd divides").monic();
    let mut rest = g;
    let mut k = 1;
    while !rad.is_constant() {
        let common = gcd_rec(&rad, &rest).monic();
        let a_k = rad.div_exact(&common).expect("gcd divides").monic();
        if !a_k.is_constant() {
            out.push((k, a_k));
        }
        rest = rest.div_exact(&common).expect("gcd divides");
        rad = common;
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::Vars;

    fn xy() -> (Vars, Polynomial<Rational>, Polynomial<Rational>) {
        let r = Vars::new(&["x", "y"]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        (r, x, y)
    }

    #[test]
    fn gcd_basics() {
        let (r, x, y) = xy();
        let a = &(&x + &y) * &(&x - &y);
        let b = &(&x + &y) * &(&(&x * &y) + &Polynomial::one(&r));
        assert_eq!(gcd(&a, &b), &x + &y);
        assert_eq!(gcd(&x, &y), Polynomial::one(&r));
        assert_eq!(gcd(&Polynomial::zero(&r), &y.scale(&Rational::integer(3))), y);
    }

    #[test]
    fn certificate() {
        let (r, x, y) = xy();
        let cusp = &(&y * &y) - &x.pow(3);
        assert!(certify_squarefree(&cusp));
        assert!(certify_squarefree(&(&cusp * &x)));
        assert!(!certify_squarefree(&(&cusp * &cusp)));
        assert!(!certify_squarefree(&(&(&x * &x) * &y)));
        assert!(certify_squarefree(&Polynomial::<Rational>::one(&r)));
    }

    #[test]
    fn squarefree_examples() {
        let (r, x, y) = xy();
        let s = &x + &y;
        assert_eq!(squarefree_part(&(&s * &s)).unwrap(), s);
        assert_eq!(squarefree_part(&(&(&x * &x) * &y)).unwrap(), &x * &y);
        let c = &(&x * &x) + &(&y * &y);
        assert_eq!(squarefree_part(&c).unwrap(), c);
        assert!(squarefree_part(&Polynomial::<Rational>::zero(&r)).is_err());
    }

    #[test]
    fn strip_examples() {
        let (r, x, y) = xy();
        let one = Polynomial::one(&r);
        assert_eq!(strip_unit_factors(&(&x * &(&one + &x)), &[0, 1]).unwrap(), x);
        assert_eq!(strip_unit_factors(&(&one + &y), &[0, 1]).unwrap(), one);
        let c = &(&x * &x) + &(&y * &y);
        assert_eq!(strip_unit_factors(&c, &[0, 1]).unwrap(), c);
        // multiplicities of local factors survive
        let g = &(&(&x * &x) * &(&one + &y)) * &(&y - &(&x * &x));
        assert_eq!(
            strip_unit_factors(&g, &[0, 1]).unwrap(),
            (&(&x * &x) * &(&y - &(&x * &x))).monic()
        );
    }

    #[test]
    fn yun_multiplicities() {
        let (_, x, y) = xy();
        let p = &(&x * &x) * &(&(&y + &x) * &(&y + &x)).pow(2).clone();
        let dec = squarefree_decomposition(&p);
        assert_eq!(dec, vec![(2, x.clone()), (4, (&y + &x).monic())]);
    }
}
