use rug::ops::Pow;
use rug::{Float, Integer};

use super::{pi, zeta};
use crate::error::{Error, Result};
use crate::numkernel::{
    accel_alt_sum_terms, bernoulli, cvz_terms, em_plan, em_sum, rounding, tolerance, working_bits, BigReal,
    SeriesSpec, TailModel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaMethod {
    /// `H_n - ln n - 1/(2n) + Σ B_2k / (2k n^2k)`.
    EulerMaclaurin,
    /// `Σ_{n≥2} (-1)^n ζ(n)/n`, accelerated.
    ZetaSeries,
}

/// The Euler–Mascheroni constant.
pub fn gamma_const(prec: u32, method: GammaMethod) -> Result<BigReal> {
    match method {
        GammaMethod::EulerMaclaurin => {
            let spec = SeriesSpec::monotone(
                |k, bits| Float::with_val(bits, 1) / Float::with_val(bits, k),
                TailModel::RegularizedHarmonic,
            );
            let (n, p) = em_plan(1.0, prec + 3);
            em_sum(&spec, n, p, prec)
        }
        GammaMethod::ZetaSeries => {
            let inner = prec + 4;
            let spec = SeriesSpec::alternating(move |k, bits| {
                // zeta is only called with k >= 2 here
                let z = zeta(k as f64, inner).expect("zeta at integer k >= 2");
                let t = Float::with_val(bits, z.value()) / Float::with_val(bits, k);
                if k % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .starting_at(2);
            let bits = working_bits(prec);
            let n = cvz_terms(prec + 3, 0.83);
            let (sum, bound) = accel_alt_sum_terms(&spec, n, bits);
            // Each CVZ weight is at most 1 in magnitude.
            let err = bound + n as f64 * tolerance(inner) + (n as f64 + 4.0) * rounding(&sum);
            BigReal::new(sum, err, prec).certify()
        }
    }
}

/// log10 of the first omitted Stirling term at `z` after `p` corrections.
fn stirling_log_bound(z: f64, p: u32) -> f64 {
    // |B_2j| <= 4 (2j)! / (2π)^(2j), term = |B_2j| / (2j (2j-1) z^(2j-1)).
    let j = (p + 1) as f64;
    let mut log = 4f64.log10() - 2.0 * j * (2.0 * std::f64::consts::PI).log10();
    for i in 1..=(2 * (p + 1)) {
        log += (i as f64).log10();
    }
    log - (2.0 * j * (2.0 * j - 1.0)).log10() - (2.0 * j - 1.0) * z.log10()
}

/// Γ(s) for real `s > 0`: shift upward by `N`, Stirling series for
/// ln Γ(s + N), then divide by the rising factorial. The bound is the first
/// omitted Stirling term (heuristic), converted to relative error.
pub fn gamma_fn(s: f64, prec: u32) -> Result<BigReal> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::Domain(format!("gamma_fn({s}) needs s > 0")));
    }
    let digits = (prec + 6) as f64;
    let mut plan = None;
    'outer: for shift in [4u32, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256] {
        let z = s + shift as f64;
        for p in 1..=300u32 {
            if stirling_log_bound(z, p) <= -digits {
                plan = Some((shift, p));
                break 'outer;
            }
        }
    }
    let (shift, p) = plan.ok_or(Error::PrecisionNotMet {
        requested: prec,
        bound: f64::INFINITY,
    })?;
    let bits = working_bits(prec);
    let sf = Float::with_val(bits, s);
    let z = Float::with_val(bits, &sf + shift);
    let half = Float::with_val(bits, 0.5);
    let mut lg = Float::with_val(bits, &z - &half) * Float::with_val(bits, z.clone().ln());
    lg -= &z;
    lg += Float::with_val(bits, 2 * pi(bits)).ln() / 2u32;
    for j in 1..=p {
        let b = bernoulli(2 * j);
        let den = Integer::from(2 * j) * (2 * j - 1);
        let zp = Float::with_val(bits, z.clone().pow(2 * j - 1));
        lg += Float::with_val(bits, &b) / Float::with_val(bits, &den) / zp;
    }
    let mut rising = Float::with_val(bits, 1);
    for i in 0..shift {
        rising *= Float::with_val(bits, &sf + i);
    }
    let v = lg.exp() / rising;
    let rel = 10f64.powf(stirling_log_bound(s + shift as f64, p));
    let err = v.to_f64().abs() * (rel * 1.01) + (shift as f64 + p as f64 + 4.0) * rounding(&v);
    BigReal::new(v, err, prec).certify()
}
