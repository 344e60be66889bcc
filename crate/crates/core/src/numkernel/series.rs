//! Summation engines: alternating-series acceleration and Euler–Maclaurin.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::bernoulli::bernoulli;
use super::bigreal::{rounding, working_bits, BigReal};
use crate::error::{Error, Result};

/// Evaluates the term of index `k` at the given binary precision.
pub type TermFn<'a> = dyn Fn(u64, u32) -> Float + Send + Sync + 'a;

/// Analytic description of `f(x)` beyond the split point, used by
/// [`em_sum`] for the integral and the derivative corrections.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailModel {
    /// `f(x) = x^-s` with `s > 1`; the integral is `∫_n^∞ f`.
    InversePower { exponent: f64 },
    /// `f(x) = 1/x`; the "integral" is `-∫_1^n dx/x = -ln n`, so the sum
    /// converges to the regularized constant (Euler's γ for `Σ 1/k`).
    RegularizedHarmonic,
}

impl TailModel {
    fn exponent(&self) -> f64 {
        match *self {
            TailModel::InversePower { exponent } => exponent,
            TailModel::RegularizedHarmonic => 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesShape {
    /// Signs alternate and magnitudes decrease.
    Alternating,
    /// Positive, smooth and monotone beyond the split point.
    Monotone(TailModel),
}

/// Input contract for the two engines: a pure term evaluator plus shape.
pub struct SeriesSpec<'a> {
    term: Box<TermFn<'a>>,
    shape: SeriesShape,
    first: u64,
}

impl<'a> SeriesSpec<'a> {
    pub fn alternating(term: impl Fn(u64, u32) -> Float + Send + Sync + 'a) -> Self {
        SeriesSpec {
            term: Box::new(term),
            shape: SeriesShape::Alternating,
            first: 1,
        }
    }

    pub fn monotone(term: impl Fn(u64, u32) -> Float + Send + Sync + 'a, tail: TailModel) -> Self {
        SeriesSpec {
            term: Box::new(term),
            shape: SeriesShape::Monotone(tail),
            first: 1,
        }
    }

    /// Index of the first term (default 1).
    pub fn starting_at(mut self, first: u64) -> Self {
        self.first = first;
        self
    }

    pub fn shape(&self) -> SeriesShape {
        self.shape
    }

    pub fn first(&self) -> u64 {
        self.first
    }

    pub fn term(&self, k: u64, bits: u32) -> Float {
        (self.term)(k, bits)
    }
}

const CVZ_RATE: f64 = 5.828_427_124_746_19; // 3 + sqrt(8)

/// Number of accelerated terms needed so that `2|a_0| / (3+√8)^n <= 10^-digits`.
pub fn cvz_terms(digits: u32, a0: f64) -> usize {
    let a0 = a0.abs().max(1e-300);
    let need = digits as f64 + (2.0 * a0).log10();
    (need / CVZ_RATE.log10()).ceil().max(1.0) as usize
}

/// Raw accelerated sum over `n` terms at `bits` precision; returns the value
/// and the acceleration bound `2|a_0|/(3+√8)^n` (rounding not included).
///
/// Scheme: Cohen–Rodriguez Villegas–Zagier, algorithm 1. The bound is exact
/// for totally monotone magnitudes (Hausdorff moment sequences), which covers
/// `k^-s`, `|z|^k/k^n` and products of these.
pub fn accel_alt_sum_terms(spec: &SeriesSpec<'_>, n: usize, bits: u32) -> (Float, f64) {
    let a: Vec<Float> = (0..n as u64)
        .map(|k| {
            let t = spec.term(spec.first + k, bits);
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .collect();
    let a0 = a[0].to_f64().abs();

    // A window whose tail is exactly zero is a finite sum.
    if let Some(last) = a.iter().rposition(|x| !x.is_zero()) {
        if n >= 4 && last < n / 2 {
            let mut s = Float::with_val(bits, 0);
            for (k, x) in a.iter().enumerate().take(last + 1) {
                if k % 2 == 0 {
                    s += x;
                } else {
                    s -= x;
                }
            }
            return (s, 0.0);
        }
    } else {
        return (Float::with_val(bits, 0), 0.0);
    }

    let sq8 = Float::with_val(bits, 8).sqrt();
    let base = Float::with_val(bits, 3 + sq8);
    let mut d = base.pow(n as u32);
    let inv = Float::with_val(bits, 1 / &d);
    d = (d + inv) / 2u32;
    let mut b = Float::with_val(bits, -1);
    let mut c = Float::with_val(bits, -&d);
    let mut s = Float::with_val(bits, 0);
    let nn = n as i64;
    for (k, ak) in a.iter().enumerate() {
        let k = k as i64;
        c = Float::with_val(bits, &b - &c);
        s += Float::with_val(bits, &c * ak);
        // b *= (k+n)(k-n) / ((k+1/2)(k+1))
        let num = Integer::from(2 * (k + nn) * (k - nn));
        let den = Integer::from((2 * k + 1) * (k + 1));
        b *= num;
        b /= den;
    }
    let sum = s / d;
    let bound = 2.0 * a0 / CVZ_RATE.powi(n as i32);
    (sum, bound)
}

/// Sum of an alternating series with certified (moment-sequence) bound
/// `err <= 10^-prec`.
pub fn accel_alt_sum(spec: &SeriesSpec<'_>, prec: u32) -> Result<BigReal> {
    if spec.shape != SeriesShape::Alternating {
        return Err(Error::Input("accel_alt_sum needs an alternating series".into()));
    }
    let bits = working_bits(prec);
    let a0 = spec.term(spec.first, 64).to_f64();
    if !a0.is_finite() {
        return Err(Error::Domain("first term is not finite".into()));
    }
    let n = cvz_terms(prec + 3, a0);
    let (sum, bound) = accel_alt_sum_terms(spec, n, bits);
    // Intermediate weights are bounded by d, so the relative rounding is ~n ulp.
    let round =
        (n as f64 + 4.0) * a0.abs().max(sum.to_f64().abs()) * 2f64.powi(-(bits as i32)) + rounding(&sum);
    BigReal::new(sum, bound + round, prec).certify()
}

/// `(s)_m = s (s+1) ... (s+m-1)` in floating point.
fn rising(s: &Float, m: u32) -> Float {
    let mut acc = Float::with_val(s.prec(), 1);
    for i in 0..m {
        acc *= Float::with_val(s.prec(), s + i);
    }
    acc
}

/// Euler–Maclaurin: partial sum through `n_split`, then
/// `- f(n)/2 + I(n) - Σ_{j≤p} B_2j/(2j)! f^(2j-1)(n)`.
///
/// `err` is the magnitude of the first omitted Bernoulli correction plus
/// rounding; this is the usual heuristic, not a proof.
pub fn em_sum(spec: &SeriesSpec<'_>, n_split: u64, bernoulli_terms: u32, prec: u32) -> Result<BigReal> {
    let SeriesShape::Monotone(tail) = spec.shape else {
        return Err(Error::Input(
            "em_sum needs a monotone series with a tail model".into(),
        ));
    };
    if n_split < spec.first {
        return Err(Error::Input("split point precedes the first term".into()));
    }
    let bits = working_bits(prec);
    let s_exp = tail.exponent();
    let s = Float::with_val(bits, s_exp);
    let n = Float::with_val(bits, n_split);

    let mut acc = Float::with_val(bits, 0);
    for k in spec.first..=n_split {
        acc += spec.term(k, bits);
    }

    // f(n) = n^-s and its odd derivatives come from the tail model.
    let f_n = Float::with_val(bits, n.clone().pow(&Float::with_val(bits, -&s)));
    acc -= Float::with_val(bits, &f_n / 2u32);
    match tail {
        TailModel::InversePower { exponent } => {
            if exponent <= 1.0 {
                return Err(Error::Domain("inverse-power tail needs exponent > 1".into()));
            }
            // ∫_n^∞ x^-s dx = n^(1-s)/(s-1)
            let one_minus = Float::with_val(bits, 1 - &s);
            let num = Float::with_val(bits, n.clone().pow(&one_minus));
            acc += num / Float::with_val(bits, &s - 1u32);
        }
        TailModel::RegularizedHarmonic => {
            acc -= Float::with_val(bits, n.clone().ln());
        }
    }

    // f^(m)(n) = (-1)^m (s)_m n^(-s-m); for odd m the sign is negative.
    let deriv = |m: u32| -> Float {
        let r = rising(&s, m);
        let p = Float::with_val(bits, -&s) - m;
        let v = Float::with_val(bits, n.clone().pow(&p)) * r;
        if m % 2 == 1 {
            -v
        } else {
            v
        }
    };
    let mut fact = Integer::from(1);
    for j in 1..=bernoulli_terms {
        fact *= (2 * j - 1) * (2 * j);
        let b = bernoulli(2 * j);
        let coeff = Float::with_val(bits, &b) / Float::with_val(bits, &fact);
        acc -= coeff * deriv(2 * j - 1);
    }
    let j = bernoulli_terms + 1;
    fact *= (2 * j - 1) * (2 * j);
    let next = Float::with_val(bits, &bernoulli(2 * j)) / Float::with_val(bits, &fact) * deriv(2 * j - 1);
    let err = next.to_f64().abs()
        + (n_split as f64 + bernoulli_terms as f64 + 4.0)
            * acc.to_f64().abs().max(1.0)
            * 2f64.powi(-(bits as i32));
    BigReal::new(acc, err, prec).certify()
}

/// log10 of the first omitted Euler–Maclaurin correction for `x^-s`
/// at split `n` after `p` Bernoulli terms.
fn em_log_bound(s: f64, n: f64, p: u32) -> f64 {
    // |B_2j|/(2j)! <= 4/(2π)^(2j), (s)_m / n^(s+m) accumulated in logs.
    let j = (p + 1) as f64;
    let m = 2 * p + 1;
    let mut log = 4f64.log10() - 2.0 * j * (2.0 * std::f64::consts::PI).log10();
    for i in 0..m {
        log += (s + i as f64).log10();
    }
    log - (s + m as f64) * n.log10()
}

/// Picks `(n_split, bernoulli_terms)` for `Σ k^-s` so that the heuristic
/// bound is below `10^-digits`; keeps the work `n + p` small.
pub fn em_plan(s: f64, digits: u32) -> (u64, u32) {
    let target = -(digits as f64);
    let mut best: Option<(u64, u32)> = None;
    for n in [4u64, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512] {
        for p in 1..=400u32 {
            let b = em_log_bound(s, n as f64, p);
            if b <= target {
                let cost = n + p as u64;
                if best.map_or(true, |(bn, bp)| cost < bn + bp as u64) {
                    best = Some((n, p));
                }
                break;
            }
            // Past the optimal truncation point the bound only grows.
            if p > 1 && b > em_log_bound(s, n as f64, p - 1) {
                break;
            }
        }
    }
    best.unwrap_or((1024, 400))
}

/// Convenience: `10^-prec` target reached by [`em_sum`] with an automatic plan.
pub fn em_sum_auto(spec: &SeriesSpec<'_>, prec: u32) -> Result<BigReal> {
    let s = match spec.shape() {
        SeriesShape::Monotone(t) => t.exponent(),
        SeriesShape::Alternating => {
            return Err(Error::Input("em_sum needs a monotone series".into()));
        }
    };
    let (n, p) = em_plan(s, prec + 3);
    em_sum(spec, n.max(spec.first()), p, prec)
}
