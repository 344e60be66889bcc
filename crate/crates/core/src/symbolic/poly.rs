//! Commutative polynomials with exact rational coefficients over an ordered
//! set of generators, plus the exact linear algebra used for spans.

use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

/// Anything that can appear as a polynomial variable.
pub trait Generator: Ord + Clone + fmt::Display {
    fn weight(&self) -> u32;
}

/// Commutative product of generators with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial<G: Ord>(BTreeMap<G, u32>);

impl<G: Generator> Monomial<G> {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn gen(g: G) -> Self {
        Monomial::pow(g, 1)
    }

    pub fn pow(g: G, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(g, e);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&G, u32)> {
        self.0.iter().map(|(g, &e)| (g, e))
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.weight() * e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (g, e) in &other.0 {
            *m.entry(g.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }
}

impl<G: Generator> fmt::Display for Monomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Rational linear combination of monomials, zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<G: Ord>(BTreeMap<Monomial<G>, Rational>);

impl<G: Generator> Default for Poly<G> {
    fn default() -> Self {
        Poly(BTreeMap::new())
    }
}

impl<G: Generator> Poly<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn gen(g: G) -> Self {
        Self::term(Rational::from(1), Monomial::gen(g))
    }

    pub fn term(c: Rational, m: Monomial<G>) -> Self {
        let mut p = Self::zero();
        p.add_term(c, m);
        p
    }

    pub fn add_term(&mut self, c: Rational, m: Monomial<G>) {
        if c == 0 {
            return;
        }
        let slot = self.0.entry(m.clone()).or_default();
        *slot += c;
        if *slot == 0 {
            self.0.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<G>, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, m: &Monomial<G>) -> Rational {
        self.0.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn leading(&self) -> Option<(&Monomial<G>, &Rational)> {
        self.0.iter().next_back()
    }

    /// Weights of the homogeneous components present.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.0.keys().map(Monomial::weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.0 {
            p.add_term(c.clone(), m.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut p = Self::zero();
        for (m, c) in &self.0 {
            p.add_term(Rational::from(c * r), m.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                p.add_term(Rational::from(ca * cb), ma.mul(mb));
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<G: Generator> fmt::Display for Poly<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        // Highest weight first, then generator order.
        let mut terms: Vec<_> = self.0.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.weight().cmp(&a.weight()).then(a.cmp(b)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Incrementally built row-echelon basis for a subspace of polynomials.
#[derive(Clone, Debug)]
pub struct Span<G: Ord> {
    rows: BTreeMap<Monomial<G>, Poly<G>>,
}

impl<G: Generator> Default for Span<G> {
    fn default() -> Self {
        Span {
            rows: BTreeMap::new(),
        }
    }
}

impl<G: Generator> Span<G> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the basis; zero iff
    /// `v` lies in the span.
    pub fn reduce(&self, v: &Poly<G>) -> Poly<G> {
        let mut v = v.clone();
        let mut done = Poly::zero();
        while let Some((lead, c)) = v.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match self.rows.get(&lead) {
                Some(row) => {
                    let factor = c / row.coeff(&lead);
                    v = v.sub(&row.scale(&factor));
                }
                None => {
                    done.add_term(c.clone(), lead.clone());
                    v.add_term(-c, lead);
                }
            }
        }
        done
    }

    pub fn contains(&self, v: &Poly<G>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &Poly<G>) -> bool {
        let r = self.reduce(v);
        match r.leading().map(|(m, _)| m.clone()) {
            Some(lead) => {
                self.rows.insert(lead, r);
                true
            }
            None => false,
        }
    }
}

/// Dimension of the rational span of `vs`.
pub fn rank<G: Generator>(vs: &[Poly<G>]) -> usize {
    let mut s = Span::new();
    for v in vs {
        s.insert(v);
    }
    s.dim()
}
