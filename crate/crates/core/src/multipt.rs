//! Double and triple point schemes: the α-matrix, the double point ideal
//! `I²(f)`, the corank-1 divided-difference ideals and the plane curve
//! `D²(f)`.

use thiserror::Error;

use crate::field::Field;
use crate::gb::elimination_ideal;
use crate::germ::{corank, GermError, MapGerm};
use crate::linalg;
use crate::poly::{resultant, squarefree_part, strip_unit_factors, two_by_two_minors, Ideal, Polynomial, Vars};

#[derive(Debug, Error)]
pub enum MultiptError {
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error("double point locus is not a curve")]
    NotACurve,
}

pub fn pair_vars() -> Vars {
    Vars::new(&["x", "y", "x'", "y'"])
}

pub fn d2_vars() -> Vars {
    Vars::new(&["x", "y", "y'"])
}

pub fn d3_vars() -> Vars {
    Vars::new(&["x", "y1", "y2", "y3"])
}

fn lift<F: Field>(p: &Polynomial<F>, target: &Vars) -> Polynomial<F> {
    p.to_ring(target).expect("source variables present in target")
}

/// `α` over `(x, y, x', y')` with
/// `f_i(x,y) − f_i(x',y') = α_{i1}(x − x') + α_{i2}(y − y')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaMatrix<F: Field> {
    pub entries: [[Polynomial<F>; 2]; 3],
}

impl<F: Field> AlphaMatrix<F> {
    pub fn vars(&self) -> &Vars {
        self.entries[0][0].vars()
    }

    /// Checks the factorization identity against `g`.
    pub fn factorizes(&self, g: &MapGerm<F>) -> bool {
        let vars = self.vars().clone();
        let v = |i| Polynomial::<F>::var(&vars, i);
        let dx = &v(0) - &v(2);
        let dy = &v(1) - &v(3);
        g.components().iter().zip(&self.entries).all(|(f, [a1, a2])| {
            let lf = lift(f, &vars);
            let diff = &lf - &lf.rename_var(0, 2).rename_var(1, 3);
            diff == &(a1 * &dx) + &(a2 * &dy)
        })
    }
}

pub fn alpha_matrix<F: Field>(g: &MapGerm<F>) -> AlphaMatrix<F> {
    let vars = pair_vars();
    let entries = g.components().clone().map(|f| {
        let lf = lift(&f, &vars);
        let a1 = lf.divided_difference(0, 2);
        let a2 = lf.rename_var(0, 2).divided_difference(1, 3);
        [a1, a2]
    });
    AlphaMatrix { entries }
}

/// `I²(f)`: the three differences `f_i(x,y) − f_i(x',y')` and the three
/// 2×2 minors of `α`.
pub fn double_point_ideal<F: Field>(g: &MapGerm<F>) -> Ideal<F> {
    let vars = pair_vars();
    let alpha = alpha_matrix(g);
    let mut gens: Vec<Polynomial<F>> = g
        .components()
        .iter()
        .map(|f| {
            let lf = lift(f, &vars);
            &lf - &lf.rename_var(0, 2).rename_var(1, 3)
        })
        .collect();
    gens.extend(two_by_two_minors(&alpha.entries));
    Ideal::new(&vars, gens)
}

/// `(P, Q) = (p[y,y'], q[y,y'])` over `(x, y, y')` for the normalized
/// shape `(x, p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corank1D2<F: Field> {
    pub p: Polynomial<F>,
    pub q: Polynomial<F>,
}

impl<F: Field> Corank1D2<F> {
    pub fn ideal(&self) -> Ideal<F> {
        Ideal::new(self.p.vars(), vec![self.p.clone(), self.q.clone()])
    }
}

/// Triple point generators over `(x, y1, y2, y3)`:
/// `p[y1,y2], p[y1,y2,y3], q[y1,y2], q[y1,y2,y3]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corank1D3<F: Field> {
    pub generators: [Polynomial<F>; 4],
}

impl<F: Field> Corank1D3<F> {
    pub fn ideal(&self) -> Ideal<F> {
        Ideal::new(self.generators[0].vars(), self.generators.to_vec())
    }
}

fn shape<F: Field>(g: &MapGerm<F>) -> Result<MapGerm<F>, GermError> {
    g.normalized()
}

pub fn corank1_d2_ideal<F: Field>(g: &MapGerm<F>) -> Result<Corank1D2<F>, GermError> {
    let n = shape(g)?;
    Ok(corank1_d2_of_shape(&n))
}

fn corank1_d2_of_shape<F: Field>(n: &MapGerm<F>) -> Corank1D2<F> {
    let vars = d2_vars();
    let [_, p, q] = n.components();
    Corank1D2 {
        p: lift(p, &vars).divided_difference(1, 2),
        q: lift(q, &vars).divided_difference(1, 2),
    }
}

pub fn corank1_d3_ideal<F: Field>(g: &MapGerm<F>) -> Result<Corank1D3<F>, GermError> {
    let n = shape(g)?;
    let vars = d3_vars();
    let [_, p, q] = n.components();
    // x and y keep their indices as x and y1
    let dd = |f: &Polynomial<F>| {
        let f1 = Polynomial::from_terms(&vars, f.terms().map(|(m, c)| (*m, c.clone())));
        let f12 = f1.divided_difference(1, 2);
        let f123 = f12.divided_difference(2, 3);
        (f12, f123)
    };
    let (p12, p123) = dd(p);
    let (q12, q123) = dd(q);
    Ok(Corank1D3 {
        generators: [p12, p123, q12, q123],
    })
}

/// Reduced equation `g(x, y)` of `D²(f)`: square-free, no local-unit
/// factors, `g(0) = 0` unless `g = 1` (no double points through 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve<F: Field> {
    pub equation: Polynomial<F>,
}

impl<F: Field> PlaneCurve<F> {
    pub fn is_empty(&self) -> bool {
        self.equation.is_constant()
    }
}

fn clean<F: Field>(candidate: &Polynomial<F>) -> Result<PlaneCurve<F>, MultiptError> {
    if candidate.is_zero() {
        return Err(MultiptError::NotACurve);
    }
    let stripped = strip_unit_factors(candidate, &[0, 1]).expect("nonzero");
    let equation = if stripped.is_constant() {
        Polynomial::one(stripped.vars())
    } else {
        squarefree_part(&stripped).expect("nonzero")
    };
    Ok(PlaneCurve { equation })
}

/// `D²(f)`: resultant in `y'` of the corank-1 generators when a normal
/// shape exists, elimination of `(x', y')` from `I²(f)` otherwise.
pub fn d2_plane_curve<F: Field>(g: &MapGerm<F>) -> Result<PlaneCurve<F>, MultiptError> {
    let data = corank(g);
    match (data.normalized, data.normalizing_change) {
        (Some(n), Some(change)) => {
            let curve = d2_from_shape(&n)?;
            // D²(f) = A(D²(n)): pull back along A⁻¹
            let inv = linalg::inverse(&change.source).expect("invertible");
            let vars = curve.equation.vars().clone();
            let images: Vec<Polynomial<F>> = inv
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .fold(Polynomial::zero(&vars), |acc, (j, c)| &acc + &Polynomial::var(&vars, j).scale(c))
                })
                .collect();
            clean(&curve.equation.compose(&images, &vars))
        }
        _ => d2_by_elimination(g),
    }
}

fn d2_from_shape<F: Field>(n: &MapGerm<F>) -> Result<PlaneCurve<F>, MultiptError> {
    let d2 = corank1_d2_of_shape(n);
    let plane = crate::germ::source_vars();
    if [&d2.p, &d2.q].iter().any(|h| h.is_constant() && !h.is_zero()) {
        return Ok(PlaneCurve {
            equation: Polynomial::one(&plane),
        });
    }
    let r = resultant(&d2.p, &d2.q, 2).map_err(|_| MultiptError::NotACurve)?;
    clean(&r.to_ring(&plane).expect("free of y'"))
}

/// Codimension-one part of the projection of `I²(f)`.
pub fn d2_by_elimination<F: Field>(g: &MapGerm<F>) -> Result<PlaneCurve<F>, MultiptError> {
    let e = elimination_ideal(&double_point_ideal(g), &[2, 3]);
    let gcd = e
        .generators()
        .iter()
        .fold(Polynomial::zero(e.vars()), |acc, h| acc.gcd(h));
    clean(&gcd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::gb::{groebner_basis, MonomialOrder};
    use crate::germ::germ;
    use crate::parser::parse_polynomial;

    fn poly(src: &str, vars: &Vars) -> Polynomial<Rational> {
        parse_polynomial(src, vars).unwrap()
    }

    fn alpha_strings(g: &MapGerm<Rational>) -> Vec<[String; 2]> {
        alpha_matrix(g)
            .entries
            .iter()
            .map(|[a, b]| [a.to_string(), b.to_string()])
            .collect()
    }

    #[test]
    fn alpha_examples() {
        let cc = germ(["x", "y^2", "x*y"]).unwrap();
        assert_eq!(
            alpha_strings(&cc),
            [["1", "0"], ["0", "y + y'"], ["y", "x'"]].map(|r| r.map(String::from))
        );
        let imm = germ(["x", "y", "0"]).unwrap();
        assert_eq!(
            alpha_strings(&imm),
            [["1", "0"], ["0", "1"], ["0", "0"]].map(|r| r.map(String::from))
        );
        let cusp = germ(["x", "y^2", "y^3"]).unwrap();
        let a = alpha_matrix(&cusp);
        let vars = pair_vars();
        assert_eq!(a.entries[2][1], poly("y^2 + y*y' + y'^2", &vars));
        for g in [cc, imm, cusp, germ(["x^2 + y", "x*y^3 - y", "x^3 + x*y"]).unwrap()] {
            assert!(alpha_matrix(&g).factorizes(&g));
        }
    }

    #[test]
    fn double_point_ideal_of_crosscap() {
        let cc = germ(["x", "y^2", "x*y"]).unwrap();
        let i = double_point_ideal(&cc);
        let gb = groebner_basis(&i, &MonomialOrder::DegRevLex);
        let vars = pair_vars();
        for h in ["x", "x'", "y + y'"] {
            assert!(gb.contains(&poly(h, &vars)), "{h}");
        }
        let imm = germ(["x", "y", "0"]).unwrap();
        let gb = groebner_basis(&double_point_ideal(&imm), &MonomialOrder::DegRevLex);
        assert!(gb.is_unit_ideal());
    }

    #[test]
    fn swap_symmetry() {
        let vars = pair_vars();
        for g in [
            germ(["x", "y^2", "y^3 + x^2*y"]).unwrap(),
            germ(["x", "y^3", "x*y + y^5"]).unwrap(),
        ] {
            let i = double_point_ideal(&g);
            let swapped = Ideal::new(
                &vars,
                i.generators().iter().map(|h| h.swap_vars(0, 2).swap_vars(1, 3)).collect(),
            );
            let o = MonomialOrder::DegRevLex;
            assert_eq!(groebner_basis(&i, &o), groebner_basis(&swapped, &o));
        }
    }

    #[test]
    fn diagonal_restriction_is_ramification_ideal() {
        let g = germ(["x", "y^2", "y^3 + x^2*y"]).unwrap();
        let i = double_point_ideal(&g);
        let plane = crate::germ::source_vars();
        let diag: Vec<Polynomial<Rational>> = i
            .generators()
            .iter()
            .map(|h| h.substitute(2, &Polynomial::var(&pair_vars(), 0)).substitute(3, &Polynomial::var(&pair_vars(), 1)))
            .map(|h| h.to_ring(&plane).unwrap())
            .filter(|h| !h.is_zero())
            .collect();
        let minors = two_by_two_minors(&g.jacobian());
        let o = MonomialOrder::DegRevLex;
        assert_eq!(
            groebner_basis(&Ideal::new(&plane, diag), &o),
            groebner_basis(&Ideal::new(&plane, minors), &o)
        );
    }

    #[test]
    fn corank1_consistency() {
        let o = MonomialOrder::DegRevLex;
        for g in [
            germ(["x", "y^2", "y^3 + x^2*y"]).unwrap(),
            germ(["x", "y^3", "x*y + y^5"]).unwrap(),
        ] {
            let vars = pair_vars();
            let i = double_point_ideal(&g).with(poly("x - x'", &vars));
            let e = elimination_ideal(&i, &[2]);
            let d2 = corank1_d2_ideal(&g).unwrap();
            assert_eq!(groebner_basis(&e, &o), groebner_basis(&d2.ideal(), &o));
        }
    }

    #[test]
    fn d2_generators() {
        let vars = d2_vars();
        let d = corank1_d2_ideal(&germ(["x", "y^2", "x*y"]).unwrap()).unwrap();
        assert_eq!((d.p.to_string(), d.q.to_string()), ("y + y'".into(), "x".into()));
        let d = corank1_d2_ideal(&germ(["x", "y^2", "y^3 + x^2*y"]).unwrap()).unwrap();
        assert_eq!(d.q, poly("y^2 + y*y' + y'^2 + x^2", &vars));
        let d = corank1_d2_ideal(&germ(["x", "y^3", "x*y + y^5"]).unwrap()).unwrap();
        assert_eq!(d.p, poly("y^2 + y*y' + y'^2", &vars));
        assert_eq!(d.q, poly("x + y^4 + y^3*y' + y^2*y'^2 + y*y'^3 + y'^4", &vars));
        assert!(matches!(
            corank1_d2_ideal(&germ(["x^2", "y^2", "x*y"]).unwrap()),
            Err(GermError::Corank2)
        ));
    }

    #[test]
    fn d3_generators() {
        let vars = d3_vars();
        let d = corank1_d3_ideal(&germ(["x", "y^2", "x*y"]).unwrap()).unwrap();
        assert!(d.generators[1].is_one_poly());
        let d = corank1_d3_ideal(&germ(["x", "y^3", "x*y + y^5"]).unwrap()).unwrap();
        assert_eq!(d.generators[0], poly("y1^2 + y1*y2 + y2^2", &vars));
        assert_eq!(d.generators[1], poly("y1 + y2 + y3", &vars));
        assert_eq!(
            d.generators[2],
            poly("x + y1^4 + y1^3*y2 + y1^2*y2^2 + y1*y2^3 + y2^4", &vars)
        );
    }

    trait IsOne {
        fn is_one_poly(&self) -> bool;
    }
    impl IsOne for Polynomial<Rational> {
        fn is_one_poly(&self) -> bool {
            *self == Polynomial::one(self.vars())
        }
    }

    #[test]
    fn plane_curves() {
        let plane = crate::germ::source_vars();
        let c = |s: [&str; 3]| d2_plane_curve(&germ(s).unwrap()).unwrap().equation;
        assert_eq!(c(["x", "y^2", "x*y"]), poly("x", &plane));
        assert_eq!(c(["x", "y^2", "y^3 + x^2*y"]), poly("x^2 + y^2", &plane));
        assert_eq!(c(["x", "y^3", "x*y + y^5"]), poly("x^2 + x*y^4 + y^8", &plane));
        assert_eq!(c(["x", "y", "0"]), Polynomial::one(&plane));
        // after a linear change the curve moves with the source
        assert_eq!(c(["y", "x^2", "x*y"]), poly("y", &plane));
    }

    #[test]
    fn elimination_path_agrees() {
        for s in [
            ["x", "y^2", "x*y"],
            ["x", "y^2", "y^3 + x^2*y"],
            ["x", "y^2", "y^3 + x^3*y"],
        ] {
            let g = germ(s).unwrap();
            assert_eq!(
                d2_by_elimination(&g).unwrap(),
                d2_plane_curve(&g).unwrap(),
                "{s:?}"
            );
        }
    }
}
