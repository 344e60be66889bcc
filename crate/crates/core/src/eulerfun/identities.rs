use rug::ops::Pow;
use rug::{Float, Rational};

use super::{gamma_fn, phi, pi, polylog, polylog::dilog_bernoulli_series, primes_up_to, zeta};
use crate::error::{Error, Result};
use crate::numkernel::{rounding, working_bits, BigReal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    /// `Li_2(x) + Li_2(1-x) + ln x ln(1-x) = Li_2(1)`
    DilogReflection,
    /// `x cot x = 1 - 2 Σ ζ(2n) (x/π)^(2n)`
    Cotangent,
    /// `Π_p (1 - p^-s) ζ(s) = 1`
    EulerProduct,
    /// `φ(1-s)/φ(s) = -Γ(s)(2^s - 1) cos(πs/2) / ((2^(s-1) - 1) π^s)`
    PhiFuncEq,
}

impl IdentityKind {
    pub fn name(&self) -> &'static str {
        match self {
            IdentityKind::DilogReflection => "DILOG_REFLECTION",
            IdentityKind::Cotangent => "COTANGENT",
            IdentityKind::EulerProduct => "EULER_PRODUCT",
            IdentityKind::PhiFuncEq => "PHI_FUNCEQ",
        }
    }
}

/// Arguments of an identity check; each variant fixes its [`IdentityKind`].
#[derive(Clone, Debug, PartialEq)]
pub enum IdentityParams {
    DilogReflection { x: Rational },
    Cotangent { x: Rational, terms: u32 },
    EulerProduct { s: f64, prime_bound: u64 },
    PhiFuncEq { s: f64 },
}

impl IdentityParams {
    pub fn kind(&self) -> IdentityKind {
        match self {
            IdentityParams::DilogReflection { .. } => IdentityKind::DilogReflection,
            IdentityParams::Cotangent { .. } => IdentityKind::Cotangent,
            IdentityParams::EulerProduct { .. } => IdentityKind::EulerProduct,
            IdentityParams::PhiFuncEq { .. } => IdentityKind::PhiFuncEq,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityResidual {
    pub kind: IdentityKind,
    /// `LHS - RHS` (`LHS/RHS - 1` for the φ functional equation), with the
    /// numerical error of its evaluation.
    pub residual: BigReal,
    /// Analytic bound on the part of the residual caused by truncating an
    /// infinite sum or product; zero for exact identities.
    pub truncation_bound: f64,
}

impl IdentityResidual {
    /// `|residual| <= err + truncation_bound`.
    pub fn holds(&self) -> bool {
        self.residual.to_f64().abs() <= self.residual.err() + self.truncation_bound
    }

    pub fn magnitude(&self) -> f64 {
        self.residual.to_f64().abs()
    }
}

fn float_real(v: Float, ulps: f64, prec: u32) -> BigReal {
    let err = ulps * rounding(&v);
    BigReal::new(v, err, prec)
}

/// Evaluates the residual of one of the four classical identities.
pub fn identity_residual(params: &IdentityParams, prec: u32) -> Result<IdentityResidual> {
    let kind = params.kind();
    let (residual, truncation_bound) = match params {
        IdentityParams::DilogReflection { x } => (dilog_reflection(x, prec)?, 0.0),
        IdentityParams::Cotangent { x, terms } => cotangent(x, *terms, prec)?,
        IdentityParams::EulerProduct { s, prime_bound } => euler_product(*s, *prime_bound, prec)?,
        IdentityParams::PhiFuncEq { s } => (phi_funceq(*s, prec)?, 0.0),
    };
    Ok(IdentityResidual {
        kind,
        residual,
        truncation_bound,
    })
}

/// Li_2 evaluated without the reflection formula: power series up to 1/2,
/// Bernoulli-log series above.
fn dilog_independent(y: &Rational, prec: u32) -> Result<BigReal> {
    if *y <= Rational::from((1, 2)) {
        polylog(2, y, prec)
    } else {
        dilog_bernoulli_series(y, prec)
    }
}

fn dilog_reflection(x: &Rational, prec: u32) -> Result<BigReal> {
    if *x <= 0 || *x >= 1 {
        return Err(Error::Domain(format!(
            "DILOG_REFLECTION needs 0 < x < 1, got {x}"
        )));
    }
    let bits = working_bits(prec);
    let y = Rational::from(1 - x);
    let a = dilog_independent(x, prec + 2)?;
    let b = dilog_independent(&y, prec + 2)?;
    let logs = Float::with_val(
        bits,
        Float::with_val(bits, x).ln() * Float::with_val(bits, &y).ln(),
    );
    let logs = float_real(logs, 4.0, prec);
    let z2 = zeta(2.0, prec + 2)?;
    Ok(a.add(&b).add(&logs).sub(&z2).with_prec(prec))
}

fn cotangent(x: &Rational, terms: u32, prec: u32) -> Result<(BigReal, f64)> {
    if terms == 0 {
        return Err(Error::Domain("COTANGENT needs at least one term".into()));
    }
    let bits = working_bits(prec);
    let xf = Float::with_val(bits, x);
    let p = pi(bits);
    if xf <= 0 || xf >= p {
        return Err(Error::Domain(format!("COTANGENT needs 0 < x < π, got {x}")));
    }
    let lhs = float_real(Float::with_val(bits, &xf * xf.clone().cot()), 4.0, prec);
    let ratio = Float::with_val(bits, &xf / &p).square();
    let mut sum = BigReal::exact(Float::with_val(bits, 0), prec);
    let mut rp = Float::with_val(bits, 1);
    for n in 1..=terms {
        rp *= &ratio;
        let z = zeta(2.0 * n as f64, prec + 2)?;
        sum = sum.add(&z.mul(&float_real(rp.clone(), 2.0 * n as f64, prec)));
    }
    let two_sum = sum.scale(&Rational::from(2));
    let one = BigReal::from_int(1, prec);
    let residual = lhs.sub(&one).add(&two_sum);
    // 2 Σ_{n>N} ζ(2n) r^n <= 2 ζ(2N+2) r^(N+1) / (1 - r), ζ(2N+2) <= ζ(4)
    let r = ratio.to_f64();
    let trunc = 2.0 * 1.0824 * r.powi(terms as i32 + 1) / (1.0 - r);
    Ok((residual, trunc))
}

fn euler_product(s: f64, prime_bound: u64, prec: u32) -> Result<(BigReal, f64)> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("EULER_PRODUCT needs s > 1, got {s}")));
    }
    if !(2..=10_000_000).contains(&prime_bound) {
        return Err(Error::Domain(
            "EULER_PRODUCT prime bound must be in [2, 10^7]".into(),
        ));
    }
    let bits = working_bits(prec);
    let primes = primes_up_to(prime_bound);
    let mut prod = Float::with_val(bits, 1);
    for &p in &primes {
        let t = super::inv_pow(p, s, bits);
        prod *= Float::with_val(bits, 1 - t);
    }
    let prod = float_real(prod, 3.0 * primes.len() as f64 + 2.0, prec);
    let z = zeta(s, prec + 2)?;
    let residual = prod.mul(&z).sub(&BigReal::from_int(1, prec));
    // Only integers whose prime factors all exceed P survive:
    // Σ_{n>P} n^-s <= P^(1-s)/(s-1).
    let trunc = (prime_bound as f64).powf(1.0 - s) / (s - 1.0);
    Ok((residual, trunc))
}

fn phi_funceq(s: f64, prec: u32) -> Result<BigReal> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!(
            "PHI_FUNCEQ is checked on 0 < s < 1, got {s}"
        )));
    }
    let inner = prec + 3;
    let bits = working_bits(inner);
    let lhs = phi(1.0 - s, inner)?.div(&phi(s, inner)?)?;
    let sf = Float::with_val(bits, s);
    let two = Float::with_val(bits, 2);
    let p = pi(bits);
    let two_s = Float::with_val(bits, two.clone().pow(&sf));
    let num_factor = Float::with_val(bits, &two_s - 1u32);
    let den_factor = Float::with_val(bits, &two_s / 2u32) - 1u32;
    let cos = Float::with_val(bits, Float::with_val(bits, &p * &sf) / 2u32).cos();
    let pi_s = Float::with_val(bits, p.pow(&sf));
    let rest = -(num_factor * cos) / (den_factor * pi_s);
    let rest = float_real(rest, 16.0, inner);
    let rhs = gamma_fn(s, inner)?.mul(&rest);
    let ratio = lhs.div(&rhs)?;
    Ok(ratio.sub(&BigReal::from_int(1, inner)).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn dilog_reflection_at_half() {
        let r = identity_residual(&IdentityParams::DilogReflection { x: q(1, 2) }, 15).unwrap();
        assert!(r.magnitude() <= 1e-15);
        assert!(r.holds());
    }

    #[test]
    fn dilog_reflection_grid() {
        for i in 1..=9 {
            let r = identity_residual(&IdentityParams::DilogReflection { x: q(i, 10) }, 20).unwrap();
            assert!(r.holds() && r.magnitude() <= 1e-18, "x = {i}/10");
        }
    }

    #[test]
    fn phi_funceq_symmetric_point() {
        let r = identity_residual(&IdentityParams::PhiFuncEq { s: 0.5 }, 20).unwrap();
        assert!(r.holds());
        assert!(r.magnitude() <= 1e-20);
    }

    #[test]
    fn phi_funceq_grid() {
        for i in 1..=9 {
            let s = i as f64 / 10.0;
            let r = identity_residual(&IdentityParams::PhiFuncEq { s }, 15).unwrap();
            assert!(r.magnitude() <= 1e-15, "s = {s}: {}", r.magnitude());
        }
    }

    #[test]
    fn euler_product_truncated() {
        let r = identity_residual(
            &IdentityParams::EulerProduct {
                s: 2.0,
                prime_bound: 100_000,
            },
            15,
        )
        .unwrap();
        let v = r.residual.to_f64();
        assert!(v > 0.0 && v < 1e-4);
        assert!(r.holds());
    }

    #[test]
    fn cotangent_expansion() {
        let r = identity_residual(
            &IdentityParams::Cotangent {
                x: q(1, 2),
                terms: 20,
            },
            20,
        )
        .unwrap();
        assert!(r.magnitude() < 1e-12);
        assert!(r.holds());
        // few terms: the residual is the truncation, and it is bounded
        let r = identity_residual(&IdentityParams::Cotangent { x: q(1, 1), terms: 3 }, 20).unwrap();
        assert!(r.magnitude() > 1e-6);
        assert!(r.holds());
    }

    #[test]
    fn domains() {
        assert!(identity_residual(&IdentityParams::DilogReflection { x: q(0, 1) }, 10).is_err());
        assert!(identity_residual(&IdentityParams::PhiFuncEq { s: 1.0 }, 10).is_err());
        assert!(identity_residual(&IdentityParams::Cotangent { x: q(4, 1), terms: 3 }, 10).is_err());
        assert!(identity_residual(
            &IdentityParams::EulerProduct {
                s: 1.0,
                prime_bound: 10
            },
            10
        )
        .is_err());
    }
}
