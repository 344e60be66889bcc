//! Generators of the motivic and unipotent algebras.

use std::fmt;

use rug::Rational;

use super::poly::Generator;

/// Argument of a polylogarithm symbol: a formal name or a rational number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Sym(String),
    Rat(Rational),
}

impl Point {
    pub fn is_one(&self) -> bool {
        matches!(self, Point::Rat(r) if *r == 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Point::Rat(r) if *r == 0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Sym(s) => write!(f, "{s}"),
            Point::Rat(r) => write!(f, "{r}"),
        }
    }
}

/// Motivic generators: `(2πi)^m`, `ζ^m(n)` with n >= 2, `Li_n^m(z)` with z != 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MGen {
    Tpi,
    Zm(u32),
    Lim(u32, Point),
}

impl Generator for MGen {
    fn weight(&self) -> u32 {
        match self {
            MGen::Tpi => 1,
            MGen::Zm(n) | MGen::Lim(n, _) => *n,
        }
    }
}

impl fmt::Display for MGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MGen::Tpi => write!(f, "twopi_i"),
            MGen::Zm(n) => write!(f, "zeta_m({n})"),
            MGen::Lim(n, z) => write!(f, "Li_m({n}; {z})"),
        }
    }
}

/// Unipotent de Rham generators: `ζ^u(2n+1)`, `ln^u(z)`, `Li_n^u(z)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UGen {
    Zu(u32),
    Lnu(Point),
    Liu(u32, Point),
}

impl Generator for UGen {
    fn weight(&self) -> u32 {
        match self {
            UGen::Lnu(_) => 1,
            UGen::Zu(n) | UGen::Liu(n, _) => *n,
        }
    }
}

impl fmt::Display for UGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UGen::Zu(n) => write!(f, "zeta_u({n})"),
            UGen::Lnu(z) => write!(f, "ln_u({z})"),
            UGen::Liu(n, z) => write!(f, "Li_u({n}; {z})"),
        }
    }
}
