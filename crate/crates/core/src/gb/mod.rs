//! Gröbner bases over an exact field: reduced bases, normal forms,
//! elimination, and local colength at the origin.

mod engine;
mod local;

pub use local::{
    eliminate_linear, hilbert_samuel, local_colength, local_colength_with, local_standard_basis, Colength,
    DEFAULT_CEILING,
};

use engine::{Engine, OrderKind, Ordering, Poly};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::poly::{Ideal, Monomial, Polynomial, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("colength undecided at ceiling {ceiling}")]
    Undecided { ceiling: u32 },
}

/// Global monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Any monomial involving the `front` variables beats every monomial
    /// free of them; degrevlex inside each block.
    BlockElimination { front: Vec<usize> },
}

/// Reduced Gröbner basis: monic elements, sorted by decreasing leading
/// monomial.
#[derive(Clone)]
pub struct GroebnerBasis<F> {
    order: MonomialOrder,
    vars: Vars,
    elements: Vec<Polynomial<F>>,
    ordering: Ordering,
    internal: Vec<Poly<F>>,
}

impl<F: Field> std::fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order)
            .field("elements", &self.elements)
            .finish()
    }
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.elements == other.elements
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal.iter().map(|p| p[0].mono).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.internal.iter().any(|p| p[0].mono.is_one())
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let engine = Engine {
            ord: &self.ordering,
            trunc: None,
        };
        let reducers: Vec<&Poly<F>> = self.internal.iter().collect();
        let r = engine.reduce(&engine.to_internal(p), &reducers, true);
        engine.to_external(&r, &self.vars)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }
}

/// Leading monomial of `p` under a global order.
pub fn leading_monomial<F: Field>(p: &Polynomial<F>, order: &MonomialOrder) -> Option<Monomial> {
    let ord = Ordering::new(OrderKind::Global(order.clone()), p.nvars());
    p.terms().map(|(m, _)| *m).max_by_key(|m| ord.key(m))
}

pub fn groebner_basis<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder) -> GroebnerBasis<F> {
    let vars = ideal.vars().clone();
    let ordering = Ordering::new(OrderKind::Global(order.clone()), vars.len());
    let engine = Engine {
        ord: &ordering,
        trunc: None,
    };
    let gens: Vec<Poly<F>> = ideal
        .generators()
        .iter()
        .map(|g| engine.to_internal(g))
        .collect();
    let internal = engine.groebner(&gens);
    let elements = internal
        .iter()
        .map(|p| engine.to_external(p, &vars))
        .collect();
    GroebnerBasis {
        order: order.clone(),
        vars,
        elements,
        ordering,
        internal,
    }
}

pub fn normal_form<F: Field>(p: &Polynomial<F>, g: &GroebnerBasis<F>) -> Polynomial<F> {
    g.normal_form(p)
}

/// `I ∩ k[remaining variables]`, returned in the ring of the remaining
/// variables (original relative order). The zero ideal has no generators.
pub fn elimination_ideal<F: Field>(ideal: &Ideal<F>, drop: &[usize]) -> Ideal<F> {
    let vars = ideal.vars();
    let keep: Vec<&str> = (0..vars.len())
        .filter(|i| !drop.contains(i))
        .map(|i| vars.names()[i].as_str())
        .collect();
    let target = Vars::new(&keep);
    let order = MonomialOrder::BlockElimination {
        front: drop.to_vec(),
    };
    let gb = groebner_basis(ideal, &order);
    let gens = gb
        .elements()
        .iter()
        .filter(|g| drop.iter().all(|&d| !g.involves(d)))
        .map(|g| g.to_ring(&target).expect("free of dropped variables"))
        .collect();
    Ideal::new(&target, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::parser::parse_polynomial;

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal<Rational> {
        let vars = Vars::new(names);
        Ideal::new(
            &vars,
            gens.iter()
                .map(|s| parse_polynomial(s, &vars).unwrap())
                .collect(),
        )
    }

    fn strings(g: &GroebnerBasis<Rational>) -> Vec<String> {
        g.elements().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn linear_bases() {
        let g = groebner_basis(&ideal(&["x", "y"], &["x", "y"]), &MonomialOrder::DegRevLex);
        assert_eq!(strings(&g), ["x", "y"]);
        let g = groebner_basis(
            &ideal(&["x", "y"], &["x + y", "x - y"]),
            &MonomialOrder::DegRevLex,
        );
        assert_eq!(strings(&g), ["x", "y"]);
    }

    #[test]
    fn one_s_polynomial() {
        let i = ideal(&["x", "y"], &["x^2", "x*y + y^2"]);
        let g = groebner_basis(&i, &MonomialOrder::DegRevLex);
        assert_eq!(strings(&g), ["y^3", "x^2", "x*y + y^2"]);
        let vars = i.vars().clone();
        let p = parse_polynomial("y^3 + 1", &vars).unwrap();
        assert_eq!(normal_form(&p, &g), Polynomial::one(&vars));
    }

    #[test]
    fn normal_forms() {
        let i = ideal(&["x", "y"], &["x", "y"]);
        let g = groebner_basis(&i, &MonomialOrder::DegRevLex);
        let vars = i.vars().clone();
        assert!(g.contains(&parse_polynomial("x + y", &vars).unwrap()));
        let g = groebner_basis(&ideal(&["x", "y"], &["y"]), &MonomialOrder::DegRevLex);
        let x = Polynomial::var(&vars, 0);
        assert_eq!(normal_form(&x, &g), x);
    }

    #[test]
    fn unit_ideal() {
        let g = groebner_basis(
            &ideal(&["x", "y"], &["x*y - 1", "x"]),
            &MonomialOrder::DegRevLex,
        );
        assert!(g.is_unit_ideal());
        assert_eq!(strings(&g), ["1"]);
    }

    #[test]
    fn permutation_invariance() {
        let a = ideal(&["x", "y", "z"], &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]);
        let b = ideal(&["x", "y", "z"], &["z^2 - x*y", "x^2 - y*z", "y^2 - x*z", "x^2 - y*z"]);
        for o in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            assert_eq!(groebner_basis(&a, &o), groebner_basis(&b, &o));
        }
    }

    #[test]
    fn lex_triangular() {
        let i = ideal(&["x", "y"], &["x^2 + y^2 - 1", "x - y"]);
        let g = groebner_basis(&i, &MonomialOrder::Lex);
        assert_eq!(strings(&g), ["x - y", "y^2 - 1/2"]);
    }

    #[test]
    fn eliminations() {
        let e = elimination_ideal(&ideal(&["x", "y", "y'"], &["y + y'", "x"]), &[2]);
        assert_eq!(e.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["x"]);
        assert_eq!(e.vars().names(), ["x", "y"]);
        let e = elimination_ideal(&ideal(&["x", "y", "y'"], &["y' - y^2", "x - y^3"]), &[2]);
        assert_eq!(
            e.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            ["y^3 - x"]
        );
        let e = elimination_ideal(
            &ideal(&["x", "y", "x'", "y'"], &["x - x'", "y - y'"]),
            &[2, 3],
        );
        assert!(e.is_zero());
    }

    #[test]
    fn leading_monomials_by_order() {
        let vars = Vars::new(&["x", "y"]);
        let p = parse_polynomial("x + y^2", &vars).unwrap();
        assert_eq!(
            leading_monomial(&p, &MonomialOrder::DegRevLex),
            Some(Monomial::from_exps(&[0, 2]))
        );
        assert_eq!(
            leading_monomial(&p, &MonomialOrder::Lex),
            Some(Monomial::from_exps(&[1, 0]))
        );
    }
}
