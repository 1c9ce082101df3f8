//! Choice of the integer type a command runs on.

use clap::ValueEnum;
use unitfrac_core::{alpha_bounds, BigUint, Natural};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntChoice {
    /// narrowest native type whose width covers the search
    Auto,
    U64,
    U128,
    Big,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Width {
    U64,
    U128,
    Big,
}

impl Width {
    pub fn name(self) -> &'static str {
        match self {
            Width::U64 => "u64",
            Width::U128 => "u128",
            Width::Big => "big",
        }
    }

    fn bits(self) -> Option<f64> {
        match self {
            Width::U64 => Some(64.0),
            Width::U128 => Some(128.0),
            Width::Big => None,
        }
    }
}

const SLACK_BITS: f64 = 16.0;

/// Estimated peak bit length of intermediates when splitting `m/n` into `k`
/// terms: the two-term step squares a residual denominator of at most
/// `n·a_1⋯a_{k−2}`, each `a_i` below `α_i·n^(2^(i−1))`, and the pattern search
/// scales by `m`.
pub fn bits_needed(m: &BigUint, n: &BigUint, k: usize) -> f64 {
    let log_n = n.bits() as f64;
    let log_m = m.bits() as f64;
    let alphas = alpha_bounds(k.max(2)).expect("k >= 1").alphas;
    let log_alpha: f64 = alphas.iter().take(k.saturating_sub(2)).map(|a| a.bits() as f64).sum();
    let residual = log_n * f64::from(1u32 << k.saturating_sub(2).min(31)) + log_alpha;
    2.0 * residual + log_m + SLACK_BITS
}

/// Resolves `choice` for the largest inputs a command will see. An explicit
/// native choice that cannot even hold the inputs is rejected; one that is
/// merely too narrow for the estimate is honored (overflow then panics).
pub fn resolve(choice: IntChoice, m: &BigUint, n: &BigUint, k: usize) -> Result<Width, CliError> {
    let need = bits_needed(m, n, k);
    let width = match choice {
        IntChoice::Auto => [Width::U64, Width::U128]
            .into_iter()
            .find(|w| w.bits().is_some_and(|b| need <= b))
            .unwrap_or(Width::Big),
        IntChoice::U64 => Width::U64,
        IntChoice::U128 => Width::U128,
        IntChoice::Big => Width::Big,
    };
    if let Some(bits) = width.bits() {
        if m.bits().max(n.bits()) as f64 > bits {
            return Err(CliError::Usage(format!("inputs do not fit in {}", width.name())));
        }
    }
    Ok(width)
}

pub fn narrow<T: Natural>(v: &BigUint) -> Result<T, CliError> {
    T::from_big(v).ok_or_else(|| CliError::Usage(format!("{v} does not fit the chosen integer type")))
}

/// Runs `$body` with `$t` bound to the integer type for `$width`.
#[macro_export]
macro_rules! with_width {
    ($width:expr, $t:ident => $body:expr) => {
        match $width {
            $crate::width::Width::U64 => {
                type $t = u64;
                $body
            }
            $crate::width::Width::U128 => {
                type $t = u128;
                $body
            }
            $crate::width::Width::Big => {
                type $t = unitfrac_core::BigUint;
                $body
            }
        }
    };
}
