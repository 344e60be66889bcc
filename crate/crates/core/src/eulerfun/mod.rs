//! Single-variable Euler functions: ζ(s), φ(s), Li_n(z), γ, Γ(s), and
//! residual checks for the classical identities they satisfy.

mod gamma;
mod identities;
mod polylog;
mod primes;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numkernel::{accel_alt_sum, bernoulli, em_sum_auto, BigReal, SeriesSpec, TailModel};

pub use gamma::{gamma_const, gamma_fn, GammaMethod};
pub use identities::{identity_residual, IdentityKind, IdentityParams, IdentityResidual};
pub use polylog::{dilog_bernoulli_series, polylog};
pub use primes::primes_up_to;

/// `k^-s`, using an integer power when `s` is integral.
pub(crate) fn inv_pow(k: u64, s: f64, bits: u32) -> Float {
    let base = Float::with_val(bits, k);
    if s.fract() == 0.0 && s.abs() < 1e9 {
        base.pow(-(s as i32))
    } else {
        base.pow(Float::with_val(bits, -s))
    }
}

pub(crate) fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

/// Riemann zeta at real `s > 1`, summed by Euler–Maclaurin.
pub fn zeta(s: f64, prec: u32) -> Result<BigReal> {
    if !s.is_finite() || s <= 1.0 {
        return Err(Error::Domain(format!(
            "zeta({s}) is outside s > 1 (the harmonic series ζ(1) diverges)"
        )));
    }
    let spec = SeriesSpec::monotone(
        move |k, bits| inv_pow(k, s, bits),
        TailModel::InversePower { exponent: s },
    );
    em_sum_auto(&spec, prec)
}

/// The rational `r` with `ζ(2n) = r π^(2n)`:
/// `r = (-1)^(n+1) B_2n 2^(2n-1) / (2n)!`.
pub fn zeta_even_closed(n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("zeta_even_closed needs n >= 1".into()));
    }
    let b = bernoulli(2 * n);
    let pow2 = Integer::from(Integer::u_pow_u(2, 2 * n - 1));
    let fact = Integer::from(Integer::factorial(2 * n));
    let mut r = b * pow2 / fact;
    if n % 2 == 0 {
        r = -r;
    }
    Ok(r)
}

/// Alternating zeta `φ(s) = Σ (-1)^(k-1) k^-s` for real `s > 0`.
pub fn phi(s: f64, prec: u32) -> Result<BigReal> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::Domain(format!("phi({s}) is outside s > 0")));
    }
    let spec = SeriesSpec::alternating(move |k, bits| {
        let t = inv_pow(k, s, bits);
        if k % 2 == 1 {
            t
        } else {
            -t
        }
    });
    accel_alt_sum(&spec, prec)
}
