//! Multiple zeta values, alternating double sums, and their oracles.
//!
//! Index convention: `ζ(n_1, ..., n_d)` sums over `0 < k_1 < ... < k_d`, so
//! `ζ(2, 3) = Σ_{k<l} 1/(k² l³)`. Internally the convolution code works with
//! the reversed (decreasing) order; the public API never exposes it.

mod index;
mod multiphi;

use std::collections::HashMap;

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::eulerfun::zeta;
use crate::numkernel::{rounding, working_bits, BigReal};

pub use index::{AltIndex, MzvIndex};
pub use multiphi::{multiphi, multiphi_with_terms};

/// `ζ(n_1, ..., n_d)` for an admissible index, to `10^-prec`.
///
/// Depth 1 is ζ(n). Deeper indices use the Hölder convolution at 1/2: the
/// iterated integral over `[0, 1]` is split at 1/2, and both halves become
/// multiple polylogarithms at 1/2, whose nested series converge like `2^-n`.
pub fn mzv(idx: &MzvIndex, prec: u32) -> Result<BigReal> {
    if !idx.is_admissible() {
        return Err(Error::DivergentIndex(idx.to_string()));
    }
    if idx.depth() == 1 {
        return zeta(idx.parts()[0] as f64, prec);
    }
    let bits = working_bits(prec);
    let digits = prec + 3;

    // Word in the letters x0 = dt/t (true) and x1 = dt/(1-t) (false), read
    // from t = 1 down to t = 0: the largest summation variable comes first.
    let mut word = Vec::new();
    for &n in idx.parts().iter().rev() {
        word.extend(std::iter::repeat(true).take(n as usize - 1));
        word.push(false);
    }

    let mut cache: HashMap<Vec<u32>, (Float, f64)> = HashMap::new();
    let mut eval = |w: &[bool]| -> (Float, f64) {
        if w.is_empty() {
            return (Float::with_val(bits, 1), 0.0);
        }
        let key = word_to_indices(w);
        cache
            .entry(key.clone())
            .or_insert_with(|| multi_li_half(&key, bits, digits))
            .clone()
    };

    let mut total = Float::with_val(bits, 0);
    let mut err = 0.0;
    for j in 0..=word.len() {
        // ∫_{1/2}^{1}: t -> 1 - t swaps the letters and reverses the order.
        let upper: Vec<bool> = word[..j].iter().rev().map(|&a| !a).collect();
        let (hi, ehi) = eval(&upper);
        let (lo, elo) = eval(&word[j..]);
        let prod = Float::with_val(bits, &hi * &lo);
        err += ehi * lo.to_f64().abs() + elo * hi.to_f64().abs() + ehi * elo + rounding(&prod);
        total += prod;
    }
    err += (word.len() as f64 + 2.0) * rounding(&total);
    BigReal::new(total, err, prec).certify()
}

/// Converts a word ending in x1 into decreasing-convention indices.
fn word_to_indices(w: &[bool]) -> Vec<u32> {
    debug_assert_eq!(w.last(), Some(&false));
    let mut out = Vec::new();
    let mut run = 0u32;
    for &a in w {
        if a {
            run += 1;
        } else {
            out.push(run + 1);
            run = 0;
        }
    }
    out
}

/// `Σ_{n_1 > ... > n_k >= 1} 2^-n_1 / (n_1^r_1 ... n_k^r_k)` with a bound on
/// the truncated tail.
fn multi_li_half(r: &[u32], bits: u32, digits: u32) -> (Float, f64) {
    let k = r.len();
    // Inner sums are at most H_n^(k-1) <= (1 + ln n)^(k-1).
    let tail_bound = |m: u64| -> f64 {
        let lg = 1.0 + (2.0 * m as f64).ln();
        2f64.powi(1 - m as i32) * lg.powi(k as i32 - 1)
    };
    let target = 10f64.powi(-(digits as i32));
    let mut m = (digits as f64 * std::f64::consts::LOG2_10) as u64 + 8;
    while tail_bound(m) > target {
        m += 8;
    }

    // inner[j] = Σ_{N >= m_j > ... > m_{k-1}} Π m_i^-r_i, inner[k] = 1.
    let mut inner: Vec<Float> = (0..=k).map(|_| Float::with_val(bits, 0)).collect();
    inner[k] = Float::with_val(bits, 1);
    let mut acc = Float::with_val(bits, 0);
    let mut half_pow = Float::with_val(bits, 1);
    for n in 1..=m {
        half_pow /= 2u32;
        let nf = Float::with_val(bits, n);
        let lead = if k == 1 {
            Float::with_val(bits, 1)
        } else {
            inner[1].clone()
        };
        let t = Float::with_val(bits, &half_pow * &lead) / nf.clone().pow(r[0]);
        acc += t;
        for j in 1..k {
            let add = Float::with_val(bits, &inner[j + 1] / nf.clone().pow(r[j]));
            inner[j] += add;
        }
    }
    let err = tail_bound(m) + (m as f64) * rounding(&acc);
    (acc, err)
}

/// Truncated nested sum over `0 < k_1 < ... < k_d <= cutoff` with an explicit
/// bound on everything beyond the cutoff stored in `err`.
///
/// Independent of [`mzv`]: straight summation plus an integral tail bound.
pub fn mzv_bruteforce(idx: &MzvIndex, cutoff: u64) -> Result<BigReal> {
    if !idx.is_admissible() {
        return Err(Error::DivergentIndex(idx.to_string()));
    }
    let d = idx.depth();
    if cutoff < d as u64 {
        return Err(Error::Input(format!("cutoff {cutoff} is below the depth {d}")));
    }
    let bits = 192;
    let parts = idx.parts();
    // partial[j] = Σ over k_1 < ... < k_j <= l of the first j factors.
    let mut partial: Vec<Float> = (0..=d).map(|_| Float::with_val(bits, 0)).collect();
    partial[0] = Float::with_val(bits, 1);
    for l in 1..=cutoff {
        let lf = Float::with_val(bits, l);
        for j in (1..=d).rev() {
            let add = Float::with_val(bits, &partial[j - 1] / lf.clone().pow(parts[j - 1]));
            partial[j] += add;
        }
    }
    let value = partial[d].clone();

    // Terms with k_d = l > K: the inner sum is at most
    // Π_{i<d} H_{l-1}^(n_i) <= Π ζ-bound(n_i) * (1 + ln l)^(#ones).
    let mut c = 1.0;
    let mut ones = 0i32;
    for &n in &parts[..d - 1] {
        if n >= 2 {
            c *= 1.0 + 1.0 / (n as f64 - 1.0);
        } else {
            ones += 1;
        }
    }
    let p = parts[d - 1] as f64;
    let q = p - 1.0;
    let kf = cutoff as f64;
    let lk = 1.0 + kf.ln();
    // ∫_K^∞ (1 + ln x)^j x^-p dx = K^-q Σ_i j!/(j-i)! (1 + ln K)^(j-i) / q^(i+1)
    let mut integral = 0.0;
    let mut falling = 1.0;
    for i in 0..=ones {
        integral += falling * lk.powi(ones - i) / q.powi(i + 1);
        falling *= (ones - i) as f64;
    }
    integral *= kf.powf(-q);
    let tail = c * integral;
    let err = tail + (cutoff as f64 * d as f64) * rounding(&value);
    let prec = (-err.log10()).floor().clamp(0.0, 60.0) as u32;
    Ok(BigReal::new(value, err, prec))
}

/// `ζ(m)ζ(n) - ζ(m,n) - ζ(n,m) - ζ(m+n)`, which vanishes by the stuffle
/// product; the result carries the combined error of its four terms.
pub fn stuffle_residual(m: u32, n: u32, prec: u32) -> Result<BigReal> {
    if m < 2 || n < 2 {
        return Err(Error::Domain("stuffle check needs m, n >= 2".into()));
    }
    let p = prec + 2;
    let zm = zeta(m as f64, p)?;
    let zn = zeta(n as f64, p)?;
    let zmn = mzv(&MzvIndex::new(vec![m, n])?, p)?;
    let znm = mzv(&MzvIndex::new(vec![n, m])?, p)?;
    let zsum = zeta((m + n) as f64, p)?;
    Ok(zm.mul(&zn).sub(&zmn).sub(&znm).sub(&zsum).with_prec(prec))
}

/// `(2/5)(29 ζ(8) - 12 ζ(3,5)) - 9 ζ(5) ζ(3)`, the six-loop combination in
/// which the first double zeta value shows up.
pub fn p35_combination(prec: u32) -> Result<BigReal> {
    let p = prec + 3;
    let z8 = zeta(8.0, p)?;
    let z35 = mzv(&MzvIndex::new(vec![3, 5])?, p)?;
    let z5 = zeta(5.0, p)?;
    let z3 = zeta(3.0, p)?;
    let inner = z8.scale(&Rational::from(29)).sub(&z35.scale(&Rational::from(12)));
    let v = inner
        .scale(&Rational::from((2, 5)))
        .sub(&z5.mul(&z3).scale(&Rational::from(9)));
    v.with_prec(prec).certify()
}
