pub mod abramov;
pub mod additive;
pub mod batch;
pub mod error;
pub mod factor;
pub mod fpoly;
mod fsum;
pub mod gcd;
pub mod intlinear;
mod modgcd;
pub mod orbital;
pub mod parse;
pub mod poly;
pub mod polygamma;
pub mod random;
pub mod rational;
pub mod shift;
mod upoly;

pub use abramov::{
    abramov_reduce, is_summable, shift_equivalent, solve_step_difference, ReductionResult, RemainderTerm,
};
pub use additive::{decompose, generate, is_exact, signed_range_sum, AdditiveRepresentation, UniformPart};
pub use error::{Error, Result};
pub use fpoly::{partial_fraction, poly_antidifference, PartialFractionTerm, PartialFractions};
pub use intlinear::{
    complete_unimodular, integer_linear_decompose, integer_linear_type_rf, IntegerLinearDecomposition,
    IntegerLinearType, UnimodularCompletion,
};
pub use orbital::{orbital_residue, OrbitClass};
pub use parse::{parse_expression, parse_polynomial};
pub use poly::{Monomial, Poly, Q};
pub use polygamma::{conjugate_polygamma, PolygammaExpression, PolygammaShift, PolygammaTerm};
pub use random::{random_additive_rep, RandomParams};
pub use rational::{poly_gcd, rf_reduce, RationalFunction};
pub use shift::{apply_shift, cyclic_apply, delta, is_wz_form, WZForm};
