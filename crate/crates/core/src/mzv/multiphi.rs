//! Alternating double sums `φ(m,n) = Σ_{0<k<l} (-1)^(k+l) / (k^m l^n)`.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::index::AltIndex;
use crate::error::Result;
use crate::eulerfun::{phi, zeta};
use crate::numkernel::{accel_alt_sum_terms, cvz_terms, rounding, working_bits, BigReal, SeriesSpec};

/// `φ(m,n)` to `10^-prec`.
///
/// The full double sum `φ(m)φ(n)` splits into `k < l` and `k >= l`. Writing
/// `k = l + j`, the second part is `Σ_j (-1)^j c_j` with
/// `c_j = Σ_l l^-n (l+j)^-m`, a completely monotone sequence in `j`, so the
/// alternating accelerator applies with its certified bound. Each `c_j` is
/// closed form in zeta values and harmonic numbers by partial fractions.
pub fn multiphi(idx: &AltIndex, prec: u32) -> Result<BigReal> {
    let terms = cvz_terms(prec + 3, 2.0);
    multiphi_with_terms(idx, terms, prec)
}

/// Same as [`multiphi`] with an explicit number of accelerated outer terms;
/// `err` is the bound that goes with that cutoff.
pub fn multiphi_with_terms(idx: &AltIndex, terms: usize, prec: u32) -> Result<BigReal> {
    let (m, n) = (idx.m, idx.n);
    let zprec = prec + 6 + 2 * m.max(n);
    let bits = working_bits(zprec) + 32;
    let top = m.max(n).max(2);
    let mut zetas: Vec<Float> = vec![Float::with_val(bits, 0); top as usize + 1];
    let mut zerr = 0.0f64;
    for i in 2..=top {
        let z = zeta(i as f64, zprec)?;
        zerr = zerr.max(z.err());
        zetas[i as usize] = Float::with_val(bits, z.value());
    }
    let c0 = zeta((m + n) as f64, zprec)?;
    let c0v = Float::with_val(bits, c0.value());

    let coeffs = move |j: u64| -> Float { c_j(m, n, j, &zetas, &c0v, bits) };
    let spec = SeriesSpec::alternating(move |j, _| {
        let c = coeffs(j);
        if j % 2 == 0 {
            c
        } else {
            -c
        }
    })
    .starting_at(0);
    let (tail, bound) = accel_alt_sum_terms(&spec, terms.max(1), bits);

    let pm = phi(m as f64, zprec)?;
    let pn = phi(n as f64, zprec)?;
    let prod = pm.mul(&pn);
    let value = Float::with_val(bits, prod.value() - &tail);
    // Each c_j is a combination of zeta values with coefficients of total
    // size below 2^(m+n), and the CVZ weights sum to at most 1.
    let inherited = zerr * 2f64.powi((m + n) as i32) + c0.err();
    let round = (terms as f64 + 8.0) * 2f64.powi(-(bits as i32) + 4) + rounding(&value);
    let err = prod.err() + bound + inherited + round;
    Ok(BigReal::new(value, err, prec))
}

/// `c_j = Σ_{l>=1} l^-n (l+j)^-m`.
fn c_j(m: u32, n: u32, j: u64, zetas: &[Float], c0: &Float, bits: u32) -> Float {
    if j == 0 {
        return c0.clone();
    }
    let jf = Float::with_val(bits, j);
    let binom = |a: u32, b: u32| Integer::from(Integer::binomial_u(a, b));
    let mut acc = Float::with_val(bits, 0);
    // 1/(l^n (l+j)^m) = Σ_i a_i / l^i + Σ_i b_i / (l+j)^i
    for i in 1..=n {
        let mut a = Float::with_val(bits, binom(m + n - i - 1, m - 1));
        a /= jf.clone().pow(m + n - i);
        if (n - i) % 2 == 1 {
            a = -a;
        }
        let s = if i == 1 {
            harmonic(j, 1, bits)
        } else {
            zetas[i as usize].clone()
        };
        acc += a * s;
    }
    for i in 2..=m {
        let mut b = Float::with_val(bits, binom(n + m - i - 1, n - 1));
        b /= jf.clone().pow(n + m - i);
        if n % 2 == 1 {
            b = -b;
        }
        let s = Float::with_val(bits, &zetas[i as usize] - harmonic(j, i, bits));
        acc += b * s;
    }
    acc
}

/// `H_j^(s) = Σ_{k=1}^{j} k^-s`.
fn harmonic(j: u64, s: u32, bits: u32) -> Float {
    let mut h = Float::with_val(bits, 0);
    for k in (1..=j).rev() {
        h += Float::with_val(bits, k).pow(-(s as i32));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alt(m: u32, n: u32) -> AltIndex {
        AltIndex::new(m, n).unwrap()
    }

    /// Partial sums smoothed by repeated neighbour averaging (kills the
    /// alternating part) and then Richardson-extrapolated in 1/L.
    fn oracle(m: u32, n: u32) -> f64 {
        let bits = 128;
        let base = 2500u64;
        let averages = 8usize;
        let last = base * 8 + averages as u64 + 2;
        let mut partial = Vec::with_capacity(last as usize + 1);
        let mut inner = Float::with_val(bits, 0); // Σ_{k<l} (-1)^k / k^m
        let mut total = Float::with_val(bits, 0);
        partial.push(total.clone());
        for l in 1..=last {
            let lf = Float::with_val(bits, l);
            let sl = if l % 2 == 0 { 1 } else { -1 };
            let t = Float::with_val(bits, &inner / lf.clone().pow(n)) * sl;
            total += t;
            partial.push(total.clone());
            let sk = if l % 2 == 0 { 1 } else { -1 };
            inner += Float::with_val(bits, lf.pow(m)).recip() * sk;
        }
        let smooth = |l: u64| -> Float {
            let mut row: Vec<Float> = (0..=averages as u64)
                .map(|i| partial[(l + i) as usize].clone())
                .collect();
            for _ in 0..averages {
                row = row
                    .windows(2)
                    .map(|w| Float::with_val(bits, &w[0] + &w[1]) / 2u32)
                    .collect();
            }
            row.pop().unwrap()
        };
        // Neville in h = 1/L at nodes L = base·2^i
        let hs: Vec<f64> = (0..4).map(|i| 1.0 / (base << i) as f64).collect();
        let mut p: Vec<Float> = (0..4).map(|i| smooth(base << i)).collect();
        for level in 1..4 {
            for i in (level..4).rev() {
                let num =
                    Float::with_val(bits, &p[i] * hs[i - level]) - Float::with_val(bits, &p[i - 1] * hs[i]);
                p[i] = num / (hs[i - level] - hs[i]);
            }
        }
        p[3].to_f64()
    }

    #[test]
    fn one_one_closed_form() {
        let v = multiphi(&alt(1, 1), 25).unwrap();
        let ln2 = Float::with_val(300, 2).ln();
        let z2 = Float::with_val(300, rug::float::Constant::Pi).square() / 6u32;
        let exact = (ln2.square() - z2) / 2u32;
        assert!(v.abs_diff_f(&exact) <= v.err());
        assert!(v.err() <= 1e-25);
    }

    #[test]
    fn one_three_against_oracle() {
        let v = multiphi(&alt(1, 3), 10).unwrap();
        assert!(v.to_f64() < 0.0);
        let o = oracle(1, 3);
        assert!((v.to_f64() - o).abs() <= 1e-8, "{} vs {o}", v.to_f64());
    }

    #[test]
    fn small_indices_against_oracle() {
        for (m, n) in [(2, 1), (2, 2), (3, 1), (1, 2), (3, 2)] {
            let v = multiphi(&alt(m, n), 12).unwrap();
            let o = oracle(m, n);
            assert!((v.to_f64() - o).abs() <= 1e-9, "({m},{n}): {} vs {o}", v.to_f64());
        }
    }

    #[test]
    fn alternating_stuffle() {
        for (m, n) in [(1, 2), (2, 3), (1, 3), (3, 3), (2, 4)] {
            let a = multiphi(&alt(m, n), 20).unwrap();
            let b = multiphi(&alt(n, m), 20).unwrap();
            let lhs = phi(m as f64, 22).unwrap().mul(&phi(n as f64, 22).unwrap());
            let rhs = a.add(&b).add(&zeta((m + n) as f64, 22).unwrap());
            assert!(lhs.agrees_with(&rhs, 0.0), "({m},{n})");
        }
    }

    #[test]
    fn doubling_is_stable() {
        let a = multiphi_with_terms(&alt(1, 1), 20, 12).unwrap();
        let b = multiphi_with_terms(&alt(1, 1), 40, 12).unwrap();
        assert!(a.distance(&b) <= 1e-12);
        assert!(b.err() < a.err());
    }
}
