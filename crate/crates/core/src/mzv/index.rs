use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Composition `(n_1, ..., n_d)` indexing
/// `ζ(n_1, ..., n_d) = Σ_{0 < k_1 < ... < k_d} 1/(k_1^n_1 ... k_d^n_d)`.
///
/// The summation variables increase left to right, so convergence needs
/// the *last* entry to be at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MzvIndex {
    parts: Vec<u32>,
}

impl MzvIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Input("an MZV index needs at least one entry".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Input("MZV index entries must be positive".into()));
        }
        Ok(MzvIndex { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    pub fn is_admissible(&self) -> bool {
        *self.parts.last().expect("non-empty") >= 2
    }

    /// All admissible indices of the given depth with weight <= `max_weight`.
    pub fn admissible(depth: usize, max_weight: u32) -> Vec<MzvIndex> {
        fn rec(prefix: &mut Vec<u32>, depth: usize, budget: u32, out: &mut Vec<MzvIndex>) {
            if prefix.len() == depth {
                if *prefix.last().unwrap() >= 2 {
                    out.push(MzvIndex {
                        parts: prefix.clone(),
                    });
                }
                return;
            }
            let remaining = (depth - prefix.len() - 1) as u32;
            for n in 1..=budget.saturating_sub(remaining) {
                prefix.push(n);
                rec(prefix, depth, budget - n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if depth > 0 {
            rec(&mut Vec::new(), depth, max_weight, &mut out);
        }
        out
    }
}

impl fmt::Display for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MzvIndex {
    type Err = Error;

    /// Accepts `3,5`, `(3,5)` or `3 5`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<u32>()
                    .map_err(|_| Error::Input(format!("bad index entry {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        MzvIndex::new(parts)
    }
}

/// Index `(m, n)` of the alternating double sum
/// `φ(m, n) = Σ_{0 < k < l} (-1)^(k+l) / (k^m l^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AltIndex {
    pub m: u32,
    pub n: u32,
}

impl AltIndex {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Input("alternating index entries must be positive".into()));
        }
        Ok(AltIndex { m, n })
    }

    pub fn weight(&self) -> u32 {
        self.m + self.n
    }
}

impl fmt::Display for AltIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}
