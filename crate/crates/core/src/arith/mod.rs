//! Exact integer arithmetic: factorization, divisors, multiplicative
//! statistics, relative gcds and two standalone identities.

pub mod factor;
pub mod identities;
pub mod rgcd;
pub mod stats;

pub use factor::{divisors, factorize, is_prime, Factorization};
pub use identities::{
    binomial, lcm_fold, lcm_lebesgue, offset_binomial_sum, spaced_binomial_sum, spaced_binomial_sum_via_roots,
};
pub use rgcd::{rgcd_decompose, subset_label, subset_mask, RgcdDecomposition};
pub use stats::{multiplicative_stats, order_mod, tau_coprime, MultiplicativeStats, ResidueClass};
