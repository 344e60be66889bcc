use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Decimal digits carried beyond the requested precision in every evaluation.
pub const GUARD_DIGITS: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Binary precision used internally for a request of `prec` decimal digits.
pub fn working_bits(prec: u32) -> u32 {
    ((prec + GUARD_DIGITS) as f64 * LOG2_10).ceil() as u32 + 16
}

/// `10^-prec` as an `f64` (underflows to 0 only for absurd requests).
pub fn tolerance(prec: u32) -> f64 {
    10f64.powi(-(prec as i32))
}

/// An arbitrary-precision real together with an absolute error bound.
///
/// `err` is an upper bound on `|value - truth|`. Bounds from asymptotic
/// series are heuristic (first omitted term); everything else is propagated
/// conservatively, including one unit of rounding per operation.
#[derive(Clone, Debug)]
pub struct BigReal {
    value: Float,
    err: f64,
    prec: u32,
}

impl BigReal {
    pub fn new(value: Float, err: f64, prec: u32) -> Self {
        debug_assert!(err >= 0.0 && !err.is_nan());
        BigReal { value, err, prec }
    }

    /// A value known exactly at its binary precision.
    pub fn exact(value: Float, prec: u32) -> Self {
        BigReal::new(value, 0.0, prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let v = Float::with_val(working_bits(prec), r);
        let err = rounding(&v);
        BigReal::new(v, err, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        BigReal::exact(Float::with_val(working_bits(prec), n), prec)
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_value(self) -> Float {
        self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn bits(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Same value, relabelled with a different requested precision.
    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }

    /// Widens the error bound by `extra`.
    pub fn widen(mut self, extra: f64) -> Self {
        self.err += extra.abs();
        self
    }

    /// Fails with `PrecisionNotMet` unless `err <= 10^-prec`.
    pub fn certify(self) -> Result<Self> {
        if self.err <= tolerance(self.prec) {
            Ok(self)
        } else {
            Err(Error::PrecisionNotMet {
                requested: self.prec,
                bound: self.err,
            })
        }
    }

    /// `|self - other| <= self.err + other.err`, plus `slack` to absorb
    /// conversion noise.
    pub fn agrees_with(&self, other: &BigReal, slack: f64) -> bool {
        self.distance(other) <= self.err + other.err + slack
    }

    pub fn distance(&self, other: &BigReal) -> f64 {
        let bits = self.bits().max(other.bits());
        let d = Float::with_val(bits, &self.value - &other.value);
        d.abs().to_f64()
    }

    pub fn abs_diff_f(&self, other: &Float) -> f64 {
        let d = Float::with_val(self.bits().max(other.prec()), &self.value - other);
        d.abs().to_f64()
    }

    fn bits_with(&self, other: &BigReal) -> u32 {
        self.bits().max(other.bits())
    }

    fn prec_with(&self, other: &BigReal) -> u32 {
        self.prec.min(other.prec)
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        let v = Float::with_val(self.bits_with(other), &self.value + &other.value);
        let err = self.err + other.err + rounding(&v);
        BigReal::new(v, err, self.prec_with(other))
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        let v = Float::with_val(self.bits_with(other), &self.value - &other.value);
        let err = self.err + other.err + rounding(&v);
        BigReal::new(v, err, self.prec_with(other))
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        let v = Float::with_val(self.bits_with(other), &self.value * &other.value);
        let a = self.value.to_f64().abs();
        let b = other.value.to_f64().abs();
        let err = a * other.err + b * self.err + self.err * other.err + rounding(&v);
        BigReal::new(v, err, self.prec_with(other))
    }

    /// Division; the divisor must be bounded away from zero by its error.
    pub fn div(&self, other: &BigReal) -> Result<BigReal> {
        let b = other.value.to_f64().abs();
        if b <= other.err || b == 0.0 {
            return Err(Error::Domain(
                "division by a value indistinguishable from zero".into(),
            ));
        }
        let v = Float::with_val(self.bits_with(other), &self.value / &other.value);
        let q = v.to_f64().abs();
        let err = (self.err + q * other.err) / (b - other.err) + rounding(&v);
        Ok(BigReal::new(v, err, self.prec_with(other)))
    }

    pub fn neg(&self) -> BigReal {
        BigReal::new(Float::with_val(self.bits(), -&self.value), self.err, self.prec)
    }

    pub fn scale(&self, r: &Rational) -> BigReal {
        let v = Float::with_val(self.bits(), &self.value * r);
        let err = self.err * r.to_f64().abs() + rounding(&v);
        BigReal::new(v, err, self.prec)
    }

    pub fn powi(&self, n: u32) -> BigReal {
        let mut acc = BigReal::exact(Float::with_val(self.bits(), 1), self.prec);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero_within_err(&self) -> bool {
        self.value.to_f64().abs() <= self.err
    }

    /// Decimal rendering with `digits` significant digits (round to nearest).
    pub fn to_sig_string(&self, digits: usize) -> String {
        format_sig(&self.value, digits)
    }

    /// Shortest rendering with at least `prec` significant digits whose
    /// rounding error, added to `err`, stays within `1e-prec`.
    pub fn to_bounded_string(&self, prec: u32) -> String {
        let bound = tolerance(prec);
        let bits = self.bits().max(64);
        let first = prec.max(1) as usize;
        if self.value.to_f64().abs() + self.err <= bound {
            return "0".to_string();
        }
        for digits in first..first + 40 {
            let text = format_sig(&self.value, digits);
            let Ok(parsed) = Float::parse(&text) else { break };
            let back = Float::with_val(bits, parsed);
            let shown = Float::with_val(bits, &back - &self.value).abs().to_f64();
            if shown + self.err <= bound {
                return text;
            }
        }
        format_sig(&self.value, first + 40)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.err == other.err && self.prec == other.prec
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {}",
            self.to_bounded_string(self.prec),
            bound_string(self.prec)
        )
    }
}

/// One unit in the last place of `v`, as an absolute error.
pub fn rounding(v: &Float) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let bits = v.prec() as i32;
    match v.get_exp() {
        Some(e) => 2f64.powi(e - bits),
        None => 0.0,
    }
}

/// `1e-N` rendering of the requested bound.
pub fn bound_string(prec: u32) -> String {
    format!("1e-{prec}")
}

/// Formats `v` with `digits` significant digits: plain notation when the
/// decimal exponent is in `-2..16`, scientific (`d.ddde-N`) otherwise.
pub fn format_sig(v: &Float, digits: usize) -> String {
    let digits = digits.max(1);
    if v.is_zero() {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let (neg, mant, exp) = v.to_sign_string_exp(10, Some(digits));
    let exp = exp.unwrap_or(0);
    // value = 0.mant * 10^exp
    let e10 = exp - 1;
    let sign = if neg { "-" } else { "" };
    let mant = mant.as_str();
    if (-2..16).contains(&e10) {
        if e10 >= 0 {
            let int_len = (e10 + 1) as usize;
            if mant.len() <= int_len {
                format!("{sign}{}{}", mant, "0".repeat(int_len - mant.len()))
            } else {
                format!("{sign}{}.{}", &mant[..int_len], &mant[int_len..])
            }
        } else {
            let zeros = (-e10 - 1) as usize;
            format!("{sign}0.{}{}", "0".repeat(zeros), mant)
        }
    } else if mant.len() == 1 {
        format!("{sign}{mant}e{e10}")
    } else {
        format!("{sign}{}.{}e{e10}", &mant[..1], &mant[1..])
    }
}

/// Parses a decimal literal (`-12`, `0.5`, `1.159e-3`) or a fraction
/// (`-691/2730`) into an exact rational.
pub fn parse_decimal(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Input(format!("not a decimal or rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: rug::Integer = num.trim().parse().map_err(|_| bad())?;
        let d: rug::Integer = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::from((n, d)));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut n: rug::Integer = if digits.is_empty() {
        rug::Integer::new()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    if neg {
        n = -n;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = rug::Integer::from(10);
    let r = if scale >= 0 {
        Rational::from(n * ten.pow(scale as u32))
    } else {
        Rational::from((n, ten.pow((-scale) as u32)))
    };
    Ok(r)
}
