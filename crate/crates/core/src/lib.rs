//! Exact valuative interpolation on plane curve germs, together with the
//! monomial-weight calculus (jumping numbers, relative types, Tian
//! functions) that makes the interpolation criterion checkable in any
//! number of variables.
//!
//! Everything is computed over the rationals with arbitrary precision; no
//! floating point is used anywhere.

pub mod error;
pub mod gcd;
pub mod interp;
pub mod intersect;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod polyhedron;
pub mod rat;
pub mod valtree;

pub use error::Error;
pub use interp::{
    check_sequence_prefix, decide_finite, validate_instance, Decision, InterpInstance,
    InterpResult, SequenceReport,
};
pub use intersect::{
    imult, imult_oracle, irreducible_sufficient, newton_polygon, CurveGerm, Irreducibility,
    OracleConfig,
};
pub use lp::{feasibility_lp, LpOutcome};
pub use monomial::{
    ideal_member, jumping_number, kiselman_sigma, monomial_interp_decide, relative_type_frac,
    tian_monomial, FracMonomialWeight, MonomialWeight, TianValue,
};
pub use parse::parse_poly;
pub use poly::{poly_add, poly_mul, poly_pow, poly_subst_linear, MPoly};
pub use polyhedron::{newton_facets, NewtonPolyhedron};
pub use rat::{ExtRat, Rat};
pub use valtree::{inf_skewness, qm_equal, qm_eval_irreducible, qm_eval_product, skewness_pair, QMValuation};
