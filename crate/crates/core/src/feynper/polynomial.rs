use std::collections::BTreeMap;
use std::fmt;

use rug::Integer;

use super::graph::{MultiGraph, UnionFind};
use crate::error::{Error, Result};

pub const TREE_EDGE_LIMIT: usize = 24;
pub const SUBGRAPH_EDGE_LIMIT: usize = 16;

/// Integer polynomial in `α_1..α_n`, keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl GraphPolynomial {
    pub fn new(vars: usize) -> Self {
        GraphPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: i64) {
        assert_eq!(exps.len(), self.vars);
        let slot = self.terms.entry(exps.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree if every monomial has the same one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn eval(&self, alpha: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, &c)| {
                c as f64
                    * e.iter()
                        .zip(alpha)
                        .map(|(&k, &a)| a.powi(k as i32))
                        .product::<f64>()
            })
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, &c) in &other.terms {
            p.add_term(e.clone(), c);
        }
        p
    }

    /// Re-embeds into one more variable, inserted at position `at` with
    /// exponent `power` in every monomial.
    pub fn insert_var(&self, at: usize, power: u32) -> Self {
        let mut p = GraphPolynomial::new(self.vars + 1);
        for (e, &c) in &self.terms {
            let mut e = e.clone();
            e.insert(at, power);
            p.add_term(e, c);
        }
        p
    }
}

impl fmt::Display for GraphPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Lexicographic in α_1, α_2, ... with α_1 first.
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.cmp(a));
        for (i, e) in keys.into_iter().enumerate() {
            let c = self.terms[e];
            if i > 0 {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        format!("a{}", j + 1)
                    } else {
                        format!("a{}^{k}", j + 1)
                    }
                })
                .collect();
            let mag = c.abs();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// All spanning trees as sorted edge-index lists, by backtracking over the
/// edge order.
pub fn spanning_trees(g: &MultiGraph) -> Result<Vec<Vec<usize>>> {
    if g.edge_count() > TREE_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: g.edge_count(),
            limit: TREE_EDGE_LIMIT,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let need = g.vertex_count() - 1;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(need);
    let uf = UnionFind::new(g.vertex_count());
    grow(g, 0, need, &mut chosen, uf, &mut out);
    Ok(out)
}

fn grow(
    g: &MultiGraph,
    next: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    uf: UnionFind,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == need {
        out.push(chosen.clone());
        return;
    }
    let edges = g.edges();
    if next >= edges.len() || edges.len() - next < need - chosen.len() {
        return;
    }
    let (u, v) = edges[next];
    let mut with = uf.clone();
    if with.union(u, v) {
        chosen.push(next);
        grow(g, next + 1, need, chosen, with, out);
        chosen.pop();
    }
    grow(g, next + 1, need, chosen, uf, out);
}

/// Number of spanning trees from the reduced Laplacian determinant
/// (fraction-free Gaussian elimination).
pub fn matrix_tree_count(g: &MultiGraph) -> Integer {
    let n = g.vertex_count();
    if n <= 1 {
        return Integer::from(1);
    }
    let m = n - 1;
    let mut a = vec![vec![Integer::new(); m]; m];
    for &(u, v) in g.edges() {
        if u == v {
            continue;
        }
        for (x, y) in [(u, v), (v, u)] {
            if x < m {
                a[x][x] += 1;
                if y < m {
                    a[x][y] -= 1;
                }
            }
        }
    }
    bareiss_det(a)
}

fn bareiss_det(mut a: Vec<Vec<Integer>>) -> Integer {
    let m = a.len();
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for k in 0..m {
        if a[k][k] == 0 {
            match (k + 1..m).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::new(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let t = Integer::from(&a[i][j] * &a[k][k]) - Integer::from(&a[i][k] * &a[k][j]);
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[m - 1][m - 1].clone() * sign
}

/// `Ψ_G(α) = Σ_T Π_{e ∉ T} α_e`.
pub fn kirchhoff_polynomial(g: &MultiGraph) -> Result<GraphPolynomial> {
    let trees = spanning_trees(g)?;
    let n = g.edge_count();
    let mut p = GraphPolynomial::new(n);
    for t in trees {
        let mut e = vec![1u32; n];
        for i in t {
            e[i] = 0;
        }
        p.add_term(e, 1);
    }
    Ok(p)
}

/// Checks `Ψ_G = α_e Ψ_{G∖e} + Ψ_{G/e}` for an edge that is neither a bridge
/// nor a self-loop.
pub fn deletion_contraction_holds(g: &MultiGraph, e: usize) -> Result<bool> {
    let (u, v) = g.edges()[e];
    let deleted = g.delete(e);
    if u == v || !deleted.is_connected() {
        return Err(Error::Input(format!("edge {e} is a bridge or a self-loop")));
    }
    let lhs = kirchhoff_polynomial(g)?;
    let rhs = kirchhoff_polynomial(&deleted)?
        .insert_var(e, 1)
        .add(&kirchhoff_polynomial(&g.contract(e))?.insert_var(e, 0));
    Ok(lhs == rhs)
}

/// A connected proper subgraph (edge indices) with `n_γ <= 2 h_γ`, if any.
pub fn divergent_subgraph(g: &MultiGraph) -> Result<Option<Vec<usize>>> {
    let n = g.edge_count();
    if n > SUBGRAPH_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: n,
            limit: SUBGRAPH_EDGE_LIMIT,
        });
    }
    let full = (1u32 << n) - 1;
    for mask in 1..full {
        let mut uf = UnionFind::new(g.vertex_count());
        let mut touched = vec![false; g.vertex_count()];
        let mut parts = 0usize;
        let mut size = 0usize;
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            size += 1;
            for x in [a, b] {
                if !touched[x] {
                    touched[x] = true;
                    parts += 1;
                }
            }
            if uf.union(a, b) {
                parts -= 1;
            }
        }
        if parts != 1 {
            continue;
        }
        let verts = touched.iter().filter(|&&t| t).count();
        let h = size + 1 - verts;
        if h >= 1 && size <= 2 * h {
            return Ok(Some((0..n).filter(|i| mask & (1 << i) != 0).collect()));
        }
    }
    Ok(None)
}

/// `n = 2h` overall and `n_γ > 2 h_γ` for every proper connected subgraph
/// with loops.
pub fn is_primitive_log_divergent(g: &MultiGraph) -> Result<bool> {
    let h = g.loop_number()?;
    if h == 0 || g.edge_count() != 2 * h {
        return Ok(false);
    }
    Ok(divergent_subgraph(g)?.is_none())
}
