//! Invariants of finitely determined map germs `(C², 0) → (C³, 0)` and
//! equisingularity of their one-parameter unfoldings, computed exactly over
//! the rationals.
//!
//! ```
//! use mapgerm_core::{germ, invariant_report, AnalysisConfig};
//!
//! let crosscap = germ(["x", "y^2", "x*y"]).unwrap();
//! let r = invariant_report(&crosscap, &AnalysisConfig::default()).unwrap();
//! assert_eq!(r.tuple(), Some([1, 0, 0, 0, 0, 0, 1, 2]));
//! ```

pub mod catalog;
pub mod config;
pub mod family;
pub mod field;
pub mod gb;
pub mod germ;
pub mod invariants;
pub mod linalg;
pub mod multipt;
pub mod parser;
pub mod poly;
pub mod random;

pub use catalog::{catalog, lookup, CatalogEntry, Expected, SelfTestOutcome};
pub use config::AnalysisConfig;
pub use family::{family_verdict, FamilyError, FamilyVerdict};
pub use field::{Field, RatFunc, Rational};
pub use gb::{groebner_basis, local_colength, Colength, GbError, GroebnerBasis, MonomialOrder};
pub use germ::{germ, validate_map_germ, GermError, MapGerm, Unfolding, ValidatedGerm};
pub use invariants::{invariant_report, InvariantError, InvariantReport};
pub use multipt::{alpha_matrix, AlphaMatrix, MultiptError};
pub use parser::{load_germ_spec, GermSpec, SpecError};
pub use poly::{Ideal, Monomial, Polynomial, Vars};
