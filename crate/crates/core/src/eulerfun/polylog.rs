use rug::{Float, Integer, Rational};

use super::{phi, zeta};
use crate::error::{Error, Result};
use crate::numkernel::{accel_alt_sum, bernoulli, rounding, working_bits, BigReal, SeriesSpec};

/// Classical polylogarithm `Li_n(z) = Σ z^k / k^n` for rational `z ∈ [-1, 1]`.
///
/// Routes: `Li_1(z) = -ln(1-z)`; `z ∈ [0, 1/2]` by the power series;
/// `z < 0` by alternating acceleration; `z = 1` is ζ(n); for `n = 2` and
/// `z ∈ (1/2, 1)` the reflection `Li_2(z) = ζ(2) - ln z ln(1-z) - Li_2(1-z)`.
/// Other `n >= 3` arguments in `(1/2, 1)` are rejected.
pub fn polylog(n: u32, z: &Rational, prec: u32) -> Result<BigReal> {
    if n == 0 {
        return Err(Error::Domain("polylog order must be >= 1".into()));
    }
    let one = Rational::from(1);
    let half = Rational::from((1, 2));
    if *z > one || *z < -one.clone() {
        return Err(Error::Domain(format!("polylog argument {z} outside [-1, 1]")));
    }
    if *z == one {
        if n == 1 {
            return Err(Error::Domain("Li_1(1) diverges".into()));
        }
        return zeta(n as f64, prec);
    }
    let bits = working_bits(prec);
    if n == 1 {
        let w = Float::with_val(bits, one - z);
        let v = -w.ln();
        let err = rounding(&v) * 2.0;
        return BigReal::new(v, err, prec).certify();
    }
    if *z == 0 {
        return Ok(BigReal::exact(Float::with_val(bits, 0), prec));
    }
    if *z < 0 {
        return negative_series(n, z, prec);
    }
    if *z <= half {
        return power_series(n, z, prec);
    }
    if n == 2 {
        let w = Rational::from(&one - z);
        let li = power_series(2, &w, prec + 2)?;
        let z2 = zeta(2.0, prec + 2)?;
        let zf = Float::with_val(bits, z);
        let wf = Float::with_val(bits, &w);
        let logs = Float::with_val(bits, zf.ln() * wf.ln());
        let logs = BigReal::new(logs.clone(), 4.0 * rounding(&logs), prec);
        return z2.sub(&logs).sub(&li).with_prec(prec).certify();
    }
    Err(Error::Domain(format!(
        "Li_{n}({z}) for 1/2 < z < 1 is only supported at n = 2"
    )))
}

/// Direct power series for `0 < z <= 1/2`, tail bounded geometrically.
fn power_series(n: u32, z: &Rational, prec: u32) -> Result<BigReal> {
    let bits = working_bits(prec);
    let zf = z.to_f64();
    debug_assert!(zf > 0.0 && zf < 1.0);
    let digits = (prec + 3) as f64 * std::f64::consts::LN_10;
    let terms = (digits / -zf.ln()).ceil() as u64 + 1;
    let zb = Float::with_val(bits, z);
    let mut pw = Float::with_val(bits, 1);
    let mut acc = Float::with_val(bits, 0);
    for k in 1..=terms {
        pw *= &zb;
        let t = Float::with_val(bits, &pw / Float::with_val(bits, k).pow_u(n));
        acc += t;
    }
    let tail = zf.powf((terms + 1) as f64) / ((terms + 1) as f64).powi(n as i32) / (1.0 - zf);
    let err = tail + (terms as f64 + 2.0) * rounding(&acc);
    BigReal::new(acc, err, prec).certify()
}

trait PowU {
    fn pow_u(self, n: u32) -> Float;
}

impl PowU for Float {
    fn pow_u(self, n: u32) -> Float {
        use rug::ops::Pow;
        self.pow(n)
    }
}

/// `z ∈ [-1, 0)`: `|z|^k / k^n` is a moment sequence, so the alternating
/// accelerator applies with its certified bound.
fn negative_series(n: u32, z: &Rational, prec: u32) -> Result<BigReal> {
    if *z == -1 {
        return phi(n as f64, prec).map(|p| p.neg());
    }
    let a = Rational::from(-z);
    let spec = SeriesSpec::alternating(move |k, bits| {
        use rug::ops::Pow;
        let ab = Float::with_val(bits, &a);
        let t = ab.pow(k as u32) / Float::with_val(bits, k).pow(n);
        // z^k = (-1)^k |z|^k
        if k % 2 == 1 {
            -t
        } else {
            t
        }
    });
    accel_alt_sum(&spec, prec)
}

/// `Li_2(y) = Σ_{k≥0} B_k u^(k+1)/(k+1)!` with `u = -ln(1-y)`.
///
/// Converges for `|u| < 2π`; used as an evaluation route independent of the
/// reflection formula. Requires `0 < y < 1 - e^-π`.
pub fn dilog_bernoulli_series(y: &Rational, prec: u32) -> Result<BigReal> {
    let bits = working_bits(prec);
    let yf = y.to_f64();
    if !(yf > 0.0) || yf >= 1.0 {
        return Err(Error::Domain("dilog_bernoulli_series needs 0 < y < 1".into()));
    }
    let u = -Float::with_val(bits, Rational::from(1 - y)).ln();
    let uf = u.to_f64();
    let two_pi = 2.0 * std::f64::consts::PI;
    if uf > std::f64::consts::PI {
        return Err(Error::Domain("dilog_bernoulli_series needs -ln(1-y) <= π".into()));
    }
    let target = 10f64.powi(-(prec as i32 + 3));
    let ratio = (uf / two_pi).powi(2);
    let mut acc = Float::with_val(bits, 0);
    let mut upow = Float::with_val(bits, &u); // u^(k+1)
    let mut fact = Integer::from(1); // (k+1)!
    let mut k = 0u32;
    loop {
        let b = bernoulli(k);
        if b != 0 {
            let t = Float::with_val(bits, &b) * &upow / Float::with_val(bits, &fact);
            acc += t;
        }
        // Next nonzero even term magnitude ≈ 2 u^(k+1) / ((k+1) (2π)^k);
        // bound the rest by a geometric series in (u/2π)^2.
        if k >= 2 && k % 2 == 0 {
            let next = 2.0 * uf.powi(k as i32 + 3) / ((k + 3) as f64 * two_pi.powi(k as i32 + 2));
            let tail = 1.1 * next / (1.0 - ratio);
            if tail < target {
                let err = tail + (k as f64 + 2.0) * rounding(&acc);
                return BigReal::new(acc, err, prec).certify();
            }
        }
        k += 1;
        upow *= &u;
        fact *= k + 1;
        if k > 4000 {
            return Err(Error::PrecisionNotMet {
                requested: prec,
                bound: f64::INFINITY,
            });
        }
    }
}
