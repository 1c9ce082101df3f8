//! Representations of a positive rational `m/n` as a sum of unit fractions.
//!
//! The three-term enumerator [`enumerate3`] walks solution patterns
//! `n_i = gcd(a_i, n)` and four bounded parameter searches over the relative
//! gcds of `a_i / n_i`; [`oracle3`] is the direct scan it is checked against.
//! [`enumerate_k`] reduces `k > 3` terms to the three-term case. The
//! [`generators`] module builds large explicit solution families.
//!
//! All algorithms are generic over [`Natural`]; the aliases below fix the
//! integer type.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod fraction;
pub mod generators;
pub mod many;
pub mod pattern;
pub mod scalar;
pub mod three;

pub use bounds::{evaluate_bounds, lower_bound_profiles, theta_sequence, theta_sequence_from, BoundReport};
pub use error::{Error, Result};
pub use fraction::{Fraction, Solution};
pub use generators::{gen_composite, gen_prime_family, gen_shifted_divisor, CompositeFamilySpec, PrimeFamilySpec};
pub use many::{alpha_bounds, enumerate_k, enumerate_k_capped, AlphaBounds, DEFAULT_MAX_K};
pub use pattern::{candidate_patterns, derive_constants, enumerate_patterns, Pattern3};
pub use scalar::Natural;
pub use three::{
    count3, enumerate3, enumerate3_from, enumerate_branch, first_solution3, oracle3, solve_two, solve_two_from,
    solve_two_scan, validate_quad, Branch, ParamQuad,
};

pub use num_bigint::BigUint;

pub type Fraction64 = Fraction<u64>;
pub type Fraction128 = Fraction<u128>;
pub type FractionBig = Fraction<BigUint>;
pub type Solution64 = Solution<u64>;
pub type Solution128 = Solution<u128>;
pub type SolutionBig = Solution<BigUint>;
pub type Pattern64 = Pattern3<u64>;
pub type Factorization64 = arith::Factorization<u64>;
pub type FactorizationBig = arith::Factorization<BigUint>;
