//! Exact rationals, Bernoulli numbers and the summation engines shared by
//! every other module.

mod bernoulli;
mod bigreal;
mod series;

pub use bernoulli::bernoulli;
pub use bigreal::{
    bound_string, format_sig, parse_decimal, rounding, tolerance, working_bits, BigReal, GUARD_DIGITS,
};
pub use series::{
    accel_alt_sum, accel_alt_sum_terms, cvz_terms, em_plan, em_sum, em_sum_auto, SeriesShape, SeriesSpec,
    TailModel, TermFn,
};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = rug::Rational;
