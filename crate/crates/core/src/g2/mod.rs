//! The electron anomalous magnetic moment `a_e = Σ a_n (α/π)^n`: exact
//! coefficient brackets, assembly, inversion for α, and comparisons between
//! quoted values.

mod registry;

use std::fmt;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::eulerfun::{phi, pi};
use crate::mzv::{multiphi, AltIndex};
use crate::numkernel::{parse_decimal, rounding, working_bits, BigReal};

pub use registry::{registry_listing, Measurement, Registry, SHIPPED_REGISTRY};

/// Four-loop coefficient to 51 digits.
pub const A4_LAPORTA: &str = "-1.912245764926445574152647167439830054060873390658725";

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn pi_big(prec: u32) -> BigReal {
    let v = pi(working_bits(prec));
    let e = rounding(&v);
    BigReal::new(v, e, prec)
}

/// `φ(3) - 6φ(1)φ(2) + φ(2) + 197/144`.
pub fn coeff_a2(prec: u32) -> Result<BigReal> {
    let p = prec + 4;
    let (p1, p2, p3) = (phi(1.0, p)?, phi(2.0, p)?, phi(3.0, p)?);
    let v = p3
        .sub(&p1.mul(&p2).scale(&q(6, 1)))
        .add(&p2)
        .add(&BigReal::from_rational(&q(197, 144), p));
    v.with_prec(prec).certify()
}

/// The second-order bracket exactly as printed with the 1957 total, without
/// the `+φ(2)` term.
pub fn coeff_a2_without_phi2(prec: u32) -> Result<BigReal> {
    let p = prec + 2;
    coeff_a2(p)?.sub(&phi(2.0, p)?).with_prec(prec).certify()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum A3Mode {
    /// The printed three-loop bracket evaluated term by term.
    AsPrinted,
    /// Solved from the 2017 total with the rubidium α and the exact `a_4`.
    Consistent,
}

/// Literal evaluation of the printed third-order bracket.
pub fn coeff_a3_as_printed(prec: u32) -> Result<BigReal> {
    let p = prec + 4;
    let (p1, p2, p3, p5) = (phi(1.0, p)?, phi(2.0, p)?, phi(3.0, p)?, phi(5.0, p)?);
    let p13 = multiphi(&AltIndex::new(1, 3)?, p)?;
    let t1 = p2
        .mul(&p3)
        .scale(&q(83, 1))
        .sub(&p5.scale(&q(43, 1)))
        .scale(&q(2, 9));
    let t2 = p13.scale(&q(-50, 3));
    let t3 = p2.mul(&p2).scale(&q(13, 5));
    let t4 = p3
        .scale(&q(1, 9))
        .sub(&p1.mul(&p2).scale(&q(12, 1)))
        .scale(&q(278, 3));
    let t5 = p2.scale(&q(34202, 135));
    let t6 = BigReal::from_rational(&q(28259, 2592), p);
    t1.add(&t2)
        .add(&t3)
        .add(&t4)
        .add(&t5)
        .add(&t6)
        .with_prec(prec)
        .certify()
}

pub fn coeff_a3(mode: A3Mode, reg: &Registry, prec: u32) -> Result<BigReal> {
    match mode {
        A3Mode::AsPrinted => coeff_a3_as_printed(prec),
        A3Mode::Consistent => {
            // (α/π)^3 ~ 1.3e-8 amplifies input error, so work wider.
            let p = prec + 12;
            let target = reg.get("th:2017")?.value_big(p);
            let alpha_inv = reg.get("alpha:rb11")?.value_big(p);
            let x = alpha_over_pi(&alpha_inv, p)?;
            let a2 = coeff_a2(p)?;
            let a4 = BigReal::from_rational(&parse_decimal(A4_LAPORTA)?, p);
            let rest = x
                .scale(&q(1, 2))
                .add(&a2.mul(&x.powi(2)))
                .add(&a4.mul(&x.powi(4)));
            target.sub(&rest).div(&x.powi(3))?.with_prec(prec).certify()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum A4Source {
    /// The exact value, truncated to working precision.
    Laporta,
    /// The earlier numerical estimate from the registry.
    Numerical,
}

/// Coefficients `a_1..a_4`.
#[derive(Clone, Debug)]
pub struct CoefficientSet {
    pub a1: Rational,
    pub a2: BigReal,
    pub a3: BigReal,
    pub a4: BigReal,
    pub a3_mode: A3Mode,
    pub a4_source: A4Source,
}

impl CoefficientSet {
    pub fn build(reg: &Registry, a3_mode: A3Mode, a4_source: A4Source, prec: u32) -> Result<Self> {
        let p = prec + 4;
        let a4 = match a4_source {
            A4Source::Laporta => BigReal::from_rational(&parse_decimal(A4_LAPORTA)?, p),
            A4Source::Numerical => reg.get("a4:numerical")?.value_big(p),
        };
        Ok(CoefficientSet {
            a1: q(1, 2),
            a2: coeff_a2(p)?,
            a3: coeff_a3(a3_mode, reg, p)?,
            a4,
            a3_mode,
            a4_source,
        })
    }

    /// Canonical `a_2`, consistent `a_3`, exact `a_4`.
    pub fn standard(reg: &Registry, prec: u32) -> Result<Self> {
        CoefficientSet::build(reg, A3Mode::Consistent, A4Source::Laporta, prec)
    }

    fn coeff(&self, n: usize, prec: u32) -> BigReal {
        match n {
            1 => BigReal::from_rational(&self.a1, prec),
            2 => self.a2.clone(),
            3 => self.a3.clone(),
            _ => self.a4.clone(),
        }
    }
}

fn alpha_over_pi(alpha_inv: &BigReal, prec: u32) -> Result<BigReal> {
    let one = BigReal::from_int(1, prec);
    one.div(&alpha_inv.mul(&pi_big(prec)))
}

fn check_order(order: usize) -> Result<()> {
    if !(1..=4).contains(&order) {
        return Err(Error::Input(format!("order {order} is outside 1..=4")));
    }
    Ok(())
}

/// `Σ_{n <= order} a_n (α/π)^n` at the given `α^-1`.
pub fn assemble(alpha_inv: &BigReal, coeffs: &CoefficientSet, order: usize, prec: u32) -> Result<BigReal> {
    check_order(order)?;
    if alpha_inv.to_f64() <= 0.0 {
        return Err(Error::Domain("alpha^-1 must be positive".into()));
    }
    let p = prec + 6;
    let x = alpha_over_pi(alpha_inv, p)?;
    let mut total = BigReal::from_int(0, p);
    let mut xn = BigReal::from_int(1, p);
    for n in 1..=order {
        xn = xn.mul(&x);
        total = total.add(&coeffs.coeff(n, p).mul(&xn));
    }
    Ok(total.with_prec(prec))
}

/// Result of solving `assemble(α) = target` for `α^-1`.
#[derive(Clone, Debug)]
pub struct AlphaInversion {
    pub alpha_inv: BigReal,
    pub iterations: usize,
}

pub const NEWTON_MAX_ITER: usize = 50;

/// Damped Newton iteration in α from `α_0 = 2π·target`.
pub fn invert_alpha(
    target: &BigReal,
    coeffs: &CoefficientSet,
    order: usize,
    prec: u32,
) -> Result<AlphaInversion> {
    check_order(order)?;
    let t = target.to_f64();
    if !(t > 0.0 && t < 2e-3) {
        return Err(Error::Domain(format!("target a_e {t} is outside (0, 2e-3)")));
    }
    let p = prec + 10;
    let bits = working_bits(p);
    let pif = pi(bits);
    let a: Vec<Float> = (1..=order)
        .map(|n| Float::with_val(bits, coeffs.coeff(n, p).value()))
        .collect();
    let tv = Float::with_val(bits, target.value());
    // f(α) and f'(α)
    let eval = |alpha: &Float| -> (Float, Float) {
        let x = Float::with_val(bits, alpha / &pif);
        let mut f = Float::with_val(bits, -&tv);
        let mut df = Float::with_val(bits, 0);
        let mut xn1 = Float::with_val(bits, 1); // x^(n-1)
        for (i, an) in a.iter().enumerate() {
            let n = i as u32 + 1;
            df += Float::with_val(bits, an * &xn1) * n / &pif;
            xn1 *= &x;
            f += Float::with_val(bits, an * &xn1);
        }
        (f, df)
    };
    let mut alpha = Float::with_val(bits, &tv * Float::with_val(bits, &pif * 2u32));
    let tol = 10f64.powi(-(prec as i32 + 4));
    let mut iterations = 0;
    loop {
        let (f, df) = eval(&alpha);
        if f.is_zero() {
            break;
        }
        let step = Float::with_val(bits, &f / &df);
        let mut lambda = Float::with_val(bits, 1);
        let mut next = Float::with_val(bits, &alpha - &step);
        for _ in 0..30 {
            if eval(&next).0.abs() <= f.clone().abs() {
                break;
            }
            lambda /= 2u32;
            next = Float::with_val(bits, &alpha - Float::with_val(bits, &step * &lambda));
        }
        iterations += 1;
        let rel = Float::with_val(bits, &next - &alpha).abs().to_f64() / next.to_f64().abs();
        alpha = next;
        if rel <= tol {
            break;
        }
        if iterations >= NEWTON_MAX_ITER {
            return Err(Error::NoConvergence(iterations));
        }
    }
    let (_, df) = eval(&alpha);
    let dfv = df.to_f64();
    // Sensitivity of the root to the target and to each coefficient.
    let x = alpha.to_f64() / std::f64::consts::PI;
    let mut da = target.err();
    for n in 1..=order {
        da += coeffs.coeff(n, p).err() * x.powi(n as i32);
    }
    let dalpha = da / dfv.abs();
    let inv = Float::with_val(bits, 1 / &alpha);
    let a2 = alpha.to_f64() * alpha.to_f64();
    let err = dalpha / a2 + inv.to_f64() * tol * 10.0 + rounding(&inv);
    Ok(AlphaInversion {
        alpha_inv: BigReal::new(inv, err, prec),
        iterations,
    })
}

/// Square root of the sum of squares.
pub fn combine_uncertainties(components: &[f64]) -> f64 {
    components.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// `a - b` with quadrature-combined uncertainty.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub a: String,
    pub b: String,
    pub difference: Rational,
    pub uncertainty: f64,
    pub pull: f64,
}

pub fn compare(a: &Measurement, b: &Measurement) -> Comparison {
    let difference = Rational::from(&a.value - &b.value);
    let uncertainty = combine_uncertainties(&[a.uncertainty(), b.uncertainty()]);
    let d = difference.to_f64();
    let pull = if d == 0.0 { 0.0 } else { d / uncertainty };
    Comparison {
        a: a.label.clone(),
        b: b.label.clone(),
        difference,
        uncertainty,
        pull,
    }
}

impl Comparison {
    /// Both numbers scaled to the power of ten just above the uncertainty,
    /// two decimals each: `-1.05e-12 ± 0.82e-12`.
    pub fn display(&self) -> String {
        let d = self.difference.to_f64();
        let scale_of = |v: f64| v.abs().log10().floor() as i32 + 1;
        let e = if self.uncertainty > 0.0 {
            scale_of(self.uncertainty)
        } else if d != 0.0 {
            scale_of(d)
        } else {
            return "0 ± 0".into();
        };
        let s = 10f64.powi(e);
        format!("{:.2}e{e} ± {:.2}e{e}", d / s, self.uncertainty / s)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// `g = 2(1 + a_e)`.
pub fn g_factor(a_e: &BigReal) -> BigReal {
    a_e.add(&BigReal::from_int(1, a_e.prec())).scale(&q(2, 1))
}
