//! Weight-graded algebra of motivic periods, the coaction on them, Galois
//! conjugates and the period map back to numbers.
//!
//! Tensor convention: unipotent factors on the left, motivic on the right,
//! so `Δ ζ^m(3) = 1 ⊗ ζ^m(3) + ζ^u(3) ⊗ 1`.

mod gens;
mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::eulerfun::{pi, polylog, zeta};
use crate::numkernel::{working_bits, BigReal};

pub use gens::{MGen, Point, UGen};
pub use parse::parse_expr;
pub use poly::{rank, Generator, Monomial, Poly, Span};

pub type MotivicExpr = Poly<MGen>;
pub type UnipotentExpr = Poly<UGen>;
pub type MMon = Monomial<MGen>;
pub type UMon = Monomial<UGen>;

/// `ζ^m(n)` for `n >= 2`.
pub fn zm(n: u32) -> Result<MotivicExpr> {
    if n < 2 {
        return Err(Error::Domain(format!("zeta_m({n}) is divergent")));
    }
    Ok(MotivicExpr::gen(MGen::Zm(n)))
}

/// `Li_n^m(z)`; at `z = 1` this is `ζ^m(n)`.
pub fn lim(n: u32, z: Point) -> Result<MotivicExpr> {
    if n == 0 {
        return Err(Error::Domain("Li_m order must be >= 1".into()));
    }
    if z.is_one() {
        return zm(n);
    }
    if z.is_zero() {
        return Err(Error::Domain("Li_m at 0 has no logarithm".into()));
    }
    Ok(MotivicExpr::gen(MGen::Lim(n, z)))
}

pub fn tpim() -> MotivicExpr {
    MotivicExpr::gen(MGen::Tpi)
}

/// Element of `P^u ⊗ P^m` in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorSum(BTreeMap<(UMon, MMon), Rational>);

impl TensorSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(c: Rational, left: UMon, right: MMon) -> Self {
        let mut t = Self::zero();
        t.add_term(c, left, right);
        t
    }

    pub fn add_term(&mut self, c: Rational, left: UMon, right: MMon) {
        if c == 0 {
            return;
        }
        let key = (left, right);
        let slot = self.0.entry(key.clone()).or_default();
        *slot += c;
        if *slot == 0 {
            self.0.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UMon, &MMon, &Rational)> {
        self.0.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.clone();
        for ((l, r), c) in &other.0 {
            t.add_term(c.clone(), l.clone(), r.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut t = Self::zero();
        for ((la, ra), ca) in &self.0 {
            for ((lb, rb), cb) in &other.0 {
                t.add_term(Rational::from(ca * cb), la.mul(lb), ra.mul(rb));
            }
        }
        t
    }

    /// Right factor collected against the left monomial `u`.
    pub fn right_of(&self, u: &UMon) -> MotivicExpr {
        let mut p = MotivicExpr::zero();
        for ((l, r), c) in &self.0 {
            if l == u {
                p.add_term(c.clone(), r.clone());
            }
        }
        p
    }
}

impl fmt::Display for TensorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, ((l, r), c)) in self.0.iter().enumerate() {
            let neg = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if mag == 1 {
                write!(f, "{l} ⊗ {r}")?;
            } else {
                write!(f, "{mag}*({l} ⊗ {r})")?;
            }
        }
        Ok(())
    }
}

fn factorial(k: u32) -> Rational {
    Rational::from(Integer::from(Integer::factorial(k)))
}

/// `Σ_{k<n} ln^u(z)^k/k! ⊗ Li^m_{n-k}(z)` plus the end term, the shape
/// shared by the coaction on `Li^m` and the coproduct on `Li^u`.
fn polylog_rule<R: Generator>(
    n: u32,
    z: &Point,
    right: impl Fn(u32) -> Monomial<R>,
) -> Vec<(Rational, UMon, Monomial<R>)> {
    (0..n)
        .map(|k| {
            (
                Rational::from(1) / factorial(k),
                UMon::pow(UGen::Lnu(z.clone()), k),
                right(n - k),
            )
        })
        .collect()
}

fn coact_gen(g: &MGen) -> TensorSum {
    let one_r = MMon::one;
    match g {
        MGen::Tpi => TensorSum::pure(Rational::from(1), UMon::one(), MMon::gen(g.clone())),
        MGen::Zm(n) => {
            let mut t = TensorSum::pure(Rational::from(1), UMon::one(), MMon::gen(g.clone()));
            if n % 2 == 1 {
                t.add_term(Rational::from(1), UMon::gen(UGen::Zu(*n)), one_r());
            }
            t
        }
        MGen::Lim(n, z) => {
            let mut t = TensorSum::zero();
            for (c, l, r) in polylog_rule(*n, z, |m| MMon::gen(MGen::Lim(m, z.clone()))) {
                t.add_term(c, l, r);
            }
            t.add_term(Rational::from(1), UMon::gen(UGen::Liu(*n, z.clone())), one_r());
            t
        }
    }
}

fn coact_mon(m: &MMon) -> TensorSum {
    let mut acc = TensorSum::pure(Rational::from(1), UMon::one(), MMon::one());
    for (g, e) in m.factors() {
        let d = coact_gen(g);
        for _ in 0..e {
            acc = acc.mul(&d);
        }
    }
    acc
}

/// The coaction `Δ: P^m -> P^u ⊗ P^m`, multiplicative and linear.
pub fn coact(e: &MotivicExpr) -> TensorSum {
    let mut t = TensorSum::zero();
    for (m, c) in e.terms() {
        for (l, r, d) in coact_mon(m).terms() {
            t.add_term(Rational::from(c * d), l.clone(), r.clone());
        }
    }
    t
}

/// Element of `P^u ⊗ P^u ⊗ P^m`, used for the coassociativity check.
pub type TripleSum = BTreeMap<(UMon, UMon, MMon), Rational>;

fn triple_add(t: &mut TripleSum, c: Rational, a: UMon, b: UMon, r: MMon) {
    if c == 0 {
        return;
    }
    let key = (a, b, r);
    let slot = t.entry(key.clone()).or_default();
    *slot += c;
    if *slot == 0 {
        t.remove(&key);
    }
}

/// Pairs `(left, right)` with coefficients for `Δ_H` on one generator.
fn hopf_gen(g: &UGen) -> Vec<(Rational, UMon, UMon)> {
    let mut out = vec![(Rational::from(1), UMon::gen(g.clone()), UMon::one())];
    match g {
        UGen::Zu(_) | UGen::Lnu(_) => {
            out.push((Rational::from(1), UMon::one(), UMon::gen(g.clone())));
        }
        UGen::Liu(n, z) => {
            out.extend(polylog_rule(*n, z, |m| UMon::gen(UGen::Liu(m, z.clone()))));
        }
    }
    out
}

/// Hopf coproduct on a unipotent monomial: `ζ^u` and `ln^u` primitive,
/// `Li^u` following the same rule as `Li^m`.
pub fn hopf_coproduct(m: &UMon) -> Vec<(Rational, UMon, UMon)> {
    let mut acc: BTreeMap<(UMon, UMon), Rational> = BTreeMap::new();
    acc.insert((UMon::one(), UMon::one()), Rational::from(1));
    for (g, e) in m.factors() {
        let d = hopf_gen(g);
        for _ in 0..e {
            let mut next: BTreeMap<(UMon, UMon), Rational> = BTreeMap::new();
            for ((a, b), c) in &acc {
                for (dc, da, db) in &d {
                    let key = (a.mul(da), b.mul(db));
                    *next.entry(key).or_default() += Rational::from(c * dc);
                }
            }
            next.retain(|_, c| *c != 0);
            acc = next;
        }
    }
    acc.into_iter().map(|((a, b), c)| (c, a, b)).collect()
}

/// `(Δ_H ⊗ id)Δ(e)` and `(id ⊗ Δ)Δ(e)` as normal forms.
pub fn coassoc_sides(e: &MotivicExpr) -> (TripleSum, TripleSum) {
    let d = coact(e);
    let mut lhs = TripleSum::new();
    let mut rhs = TripleSum::new();
    for (l, r, c) in d.terms() {
        for (hc, a, b) in hopf_coproduct(l) {
            triple_add(&mut lhs, Rational::from(c * &hc), a, b, r.clone());
        }
        for (l2, r2, c2) in coact_mon(r).terms() {
            triple_add(
                &mut rhs,
                Rational::from(c * c2),
                l.clone(),
                l2.clone(),
                r2.clone(),
            );
        }
    }
    (lhs, rhs)
}

/// Whether the comodule axiom `(Δ_H ⊗ id)∘Δ = (id ⊗ Δ)∘Δ` holds on `e`.
pub fn coassoc_residual(e: &MotivicExpr) -> bool {
    let (a, b) = coassoc_sides(e);
    a == b
}

/// Right-hand entries of `Δ(e)`, one per distinct left monomial, with the
/// dimension of their rational span.
pub fn galois_conjugates(e: &MotivicExpr) -> (Vec<MotivicExpr>, usize) {
    let d = coact(e);
    let mut lefts: Vec<&UMon> = d.terms().map(|(l, _, _)| l).collect();
    lefts.dedup();
    let mut out: Vec<MotivicExpr> = Vec::new();
    for l in lefts {
        let r = d.right_of(l);
        if !r.is_zero() && !out.contains(&r) {
            out.push(r);
        }
    }
    let dim = rank(&out);
    (out, dim)
}

/// Conjugates of one family member that fall outside the family's span.
#[derive(Clone, Debug, PartialEq)]
pub struct MemberReport {
    pub member: MotivicExpr,
    pub conjugates: Vec<MotivicExpr>,
    pub missing: Vec<MotivicExpr>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub members: Vec<MemberReport>,
    pub stable: bool,
}

impl fmt::Display for StabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.members {
            let conj: Vec<String> = m.conjugates.iter().map(|c| c.to_string()).collect();
            write!(f, "{}: conjugates {{{}}}", m.member, conj.join(", "))?;
            if !m.missing.is_empty() {
                let miss: Vec<String> = m.missing.iter().map(|c| c.to_string()).collect();
                write!(f, "; missing {{{}}}", miss.join(", "))?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.stable { "stable" } else { "unstable" })
    }
}

/// Checks whether the rational span of `family` is closed under taking
/// Galois conjugates.
pub fn stability_report(family: &[MotivicExpr]) -> Result<StabilityReport> {
    if family.is_empty() {
        return Err(Error::Input("stability report needs a non-empty family".into()));
    }
    let mut span = Span::new();
    for e in family {
        span.insert(e);
    }
    let members: Vec<MemberReport> = family
        .iter()
        .map(|e| {
            let (conjugates, _) = galois_conjugates(e);
            let missing = conjugates.iter().filter(|c| !span.contains(c)).cloned().collect();
            MemberReport {
                member: e.clone(),
                conjugates,
                missing,
            }
        })
        .collect();
    let stable = members.iter().all(|m| m.missing.is_empty());
    Ok(StabilityReport { members, stable })
}

/// Numerical value: `ζ^m(n) -> ζ(n)`, `Li^m_n(z) -> Li_n(z)`, and
/// `(2πi)^m -> 2π` (real normalization).
pub fn period_map(e: &MotivicExpr, prec: u32) -> Result<BigReal> {
    let inner = prec + 4 + (e.len() as f64).log10().ceil() as u32;
    let mut cache: BTreeMap<MGen, BigReal> = BTreeMap::new();
    let mut total = BigReal::exact(rug::Float::with_val(working_bits(inner), 0), inner);
    for (m, c) in e.terms() {
        let mut term = BigReal::from_int(1, inner);
        for (g, k) in m.factors() {
            if !cache.contains_key(g) {
                cache.insert(g.clone(), period_gen(g, inner)?);
            }
            term = term.mul(&cache[g].powi(k));
        }
        total = total.add(&term.scale(c));
    }
    total.with_prec(prec).certify()
}

fn period_gen(g: &MGen, prec: u32) -> Result<BigReal> {
    // Powers of large generators amplify the error; ask for extra digits.
    let p = prec + 6;
    match g {
        MGen::Tpi => {
            let bits = working_bits(p);
            let v = pi(bits) * 2u32;
            let err = crate::numkernel::rounding(&v) * 2.0;
            Ok(BigReal::new(v, err, p))
        }
        MGen::Zm(n) => zeta(*n as f64, p),
        MGen::Lim(n, Point::Rat(z)) => polylog(*n, z, p),
        MGen::Lim(_, Point::Sym(s)) => Err(Error::Domain(format!(
            "symbolic point '{s}' has no numerical value"
        ))),
    }
}

#[cfg(test)]
mod tests;
