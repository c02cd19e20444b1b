use super::{PolyError, Polynomial};
use crate::field::Field;

/// Resultant of `p` and `q` with respect to variable `v`: the determinant of
/// the Sylvester matrix, computed fraction-free (Bareiss). The result lives
/// in the same ring and does not involve `v`.
///
/// A polynomial that is constant in `v` counts as degree 0, so
/// `res(p, c) = c^deg(p)`. A zero argument gives 0 unless both are zero.
pub fn resultant<F: Field>(
    p: &Polynomial<F>,
    q: &Polynomial<F>,
    v: usize,
) -> Result<Polynomial<F>, PolyError> {
    let vars = p.vars().clone();
    if p.is_zero() && q.is_zero() {
        return Err(PolyError::ResultantUndefined);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Polynomial::zero(&vars));
    }
    let a = p.coeffs_in(v);
    let b = q.coeffs_in(v);
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 && n == 0 {
        return Ok(Polynomial::one(&vars));
    }
    if m == 0 {
        return Ok(a[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(b[0].pow(m as u32));
    }
    let size = m + n;
    let zero = Polynomial::zero(&vars);
    let mut mat = vec![vec![zero.clone(); size]; size];
    // n rows of p's coefficients, m rows of q's, highest degree first
    for r in 0..n {
        for (k, c) in a.iter().enumerate() {
            mat[r][r + m - k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().enumerate() {
            mat[n + r][r + n - k] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

fn bareiss_det<F: Field>(mut mat: Vec<Vec<Polynomial<F>>>) -> Polynomial<F> {
    let size = mat.len();
    let vars = mat[0][0].vars().clone();
    let mut negate = false;
    let mut prev = Polynomial::one(&vars);
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return Polynomial::zero(&vars),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::Vars;

    fn ring() -> (Vars, [Polynomial<Rational>; 3]) {
        let r = Vars::new(&["x", "y", "y'"]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let yp = Polynomial::var(&r, 2);
        (r, [x, y, yp])
    }

    /// Equality up to a nonzero constant factor.
    fn assoc(a: &Polynomial<Rational>, b: &Polynomial<Rational>) -> bool {
        a.monic() == b.monic()
    }

    #[test]
    fn constant_in_variable() {
        let (_, [x, y, yp]) = ring();
        let r = resultant(&(&y + &yp), &x, 2).unwrap();
        assert_eq!(r, x);
    }

    #[test]
    fn quadratic_against_linear() {
        let (_, [x, y, yp]) = ring();
        let p = &(&(&y * &y) + &(&y * &yp)) + &(&yp * &yp);
        let q = &(&x + &y) + &yp;
        let r = resultant(&p, &q, 2).unwrap();
        let want = &(&(&x * &x) + &(&x * &y)) + &(&y * &y);
        assert!(assoc(&r, &want), "{r}");
    }

    #[test]
    fn two_linear_forms() {
        let (_, [_, y, yp]) = ring();
        let r = resultant(&(&y - &yp), &(&y + &yp), 2).unwrap();
        assert!(assoc(&r, &y), "{r}");
        assert_eq!(r.monic(), y);
    }

    #[test]
    fn both_zero_is_an_error() {
        let (r, _) = ring();
        let z = Polynomial::<Rational>::zero(&r);
        assert_eq!(resultant(&z, &z, 2), Err(PolyError::ResultantUndefined));
    }

    #[test]
    fn vanishes_on_common_root() {
        // res_y'((y'-x)(y'-2), y'-x) == 0 since they share a factor
        let (r, [x, _, yp]) = ring();
        let two = Polynomial::constant(&r, Rational::integer(2));
        let p = &(&yp - &x) * &(&yp - &two);
        assert!(resultant(&p, &(&yp - &x), 2).unwrap().is_zero());
    }
}
