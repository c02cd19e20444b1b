//! Benchmark inputs shared by the criterion targets.

use mapgerm_core::parser::parse_polynomial;
use mapgerm_core::{lookup, validate_map_germ, Ideal, MapGerm, Rational, Unfolding, ValidatedGerm, Vars};

pub fn ideal(names: &[&str], gens: &[&str]) -> Ideal<Rational> {
    let vars = Vars::new(names);
    let gens = gens.iter().map(|s| parse_polynomial(s, &vars).unwrap()).collect();
    Ideal::new(&vars, gens)
}

pub fn catalog_germ(name: &str) -> MapGerm<Rational> {
    match validate_map_germ(&lookup(name).unwrap().spec).unwrap() {
        ValidatedGerm::Germ(g) => g,
        ValidatedGerm::Unfolding(_) => panic!("{name} is a family"),
    }
}

pub fn catalog_family(name: &str) -> Unfolding {
    match validate_map_germ(&lookup(name).unwrap().spec).unwrap() {
        ValidatedGerm::Unfolding(u) => u,
        ValidatedGerm::Germ(_) => panic!("{name} is a single germ"),
    }
}
