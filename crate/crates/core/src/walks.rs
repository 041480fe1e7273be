//! Counting and reconstructing shortest walks with adjacency-matrix powers.
//!
//! `(A^k)[i][j]` counts walks of length `k` from `i` to `j`. Raising `A` one
//! power at a time until the `(s, t)` entry turns non-zero gives the shortest
//! distance and the number of shortest paths in one go. The symbolic variant
//! labels every edge with its own indeterminate, so each monomial of the
//! `(s, t)` entry spells out one path.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{Digraph, PathList};

/// Sparse matrix of exact non-negative integers. Absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    rows: Vec<BTreeMap<usize, BigUint>>,
}

impl AdjacencyMatrix {
    pub fn from_digraph(g: &Digraph) -> Self {
        let rows = (0..g.vertex_count())
            .map(|u| {
                g.out_neighbors(u)
                    .iter()
                    .map(|&v| (v, BigUint::one()))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n)
                .map(|i| BTreeMap::from([(i, BigUint::one())]))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> BigUint {
        self.rows[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, BigUint> {
        &self.rows[i]
    }

    /// `row * self`, for a sparse row vector.
    pub fn left_multiply(&self, row: &BTreeMap<usize, BigUint>) -> BTreeMap<usize, BigUint> {
        let mut out: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (&l, weight) in row {
            for (&j, a) in &self.rows[l] {
                *out.entry(j).or_default() += weight * a;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size(), "matrix sizes differ");
        Self {
            rows: self
                .rows
                .iter()
                .map(|row| other.left_multiply(row))
                .collect(),
        }
    }

    /// `A^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.size()), |acc, _| acc.mul(self))
    }
}

/// Shortest walk length and how many shortest walks there are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCount {
    pub length: usize,
    pub count: BigUint,
}

/// First power `k` with `(A^k)[s][t] != 0`, together with that entry.
///
/// Only row `s` of each power is formed: row `s` of `A^k` is row `s` of
/// `A^(k-1)` times `A`. The search stops after `n - 1` powers, the longest a
/// simple path can be. `s == t` is answered by `A^0`.
pub fn count_shortest_walks(g: &Digraph, s: usize, t: usize) -> Option<WalkCount> {
    let n = g.vertex_count();
    assert!(s < n && t < n, "vertex out of range");
    if s == t {
        return Some(WalkCount {
            length: 0,
            count: BigUint::one(),
        });
    }
    let a = AdjacencyMatrix::from_digraph(g);
    let mut row = BTreeMap::from([(s, BigUint::one())]);
    for k in 1..n {
        row = a.left_multiply(&row);
        if let Some(count) = row.get(&t) {
            return Some(WalkCount {
                length: k,
                count: count.clone(),
            });
        }
        if row.is_empty() {
            break;
        }
    }
    None
}

/// An edge `(from, to)` standing for the indeterminate `a_{from,to}`.
pub type Edge = (usize, usize);

/// A product of edge indeterminates, stored as a sorted multiset.
pub type EdgeMonomial = Vec<Edge>;

/// Polynomial in the edge indeterminates with positive integer coefficients.
pub type EdgePolynomial = BTreeMap<EdgeMonomial, BigUint>;

fn monomial_product(a: &EdgeMonomial, b: &EdgeMonomial) -> EdgeMonomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out
}

fn accumulate(target: &mut EdgePolynomial, lhs: &EdgePolynomial, rhs: &EdgePolynomial) {
    for (ma, ca) in lhs {
        for (mb, cb) in rhs {
            *target.entry(monomial_product(ma, mb)).or_default() += ca * cb;
        }
    }
}

/// The matrix `S` with `S[i][j] = a_{ij}` on edges and zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    rows: Vec<BTreeMap<usize, EdgePolynomial>>,
}

impl SymbolicMatrix {
    pub fn from_digraph(g: &Digraph) -> Self {
        let rows = (0..g.vertex_count())
            .map(|u| {
                g.out_neighbors(u)
                    .iter()
                    .map(|&v| (v, BTreeMap::from([(vec![(u, v)], BigUint::one())])))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> EdgePolynomial {
        self.rows[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn left_multiply(
        &self,
        row: &BTreeMap<usize, EdgePolynomial>,
    ) -> BTreeMap<usize, EdgePolynomial> {
        let mut out: BTreeMap<usize, EdgePolynomial> = BTreeMap::new();
        for (&l, lhs) in row {
            for (&j, rhs) in &self.rows[l] {
                accumulate(out.entry(j).or_default(), lhs, rhs);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .map(|row| other.left_multiply(row))
                .collect(),
        }
    }

    /// `S^k` for `k >= 1`.
    pub fn pow(&self, k: u32) -> Self {
        assert!(k >= 1, "symbolic powers start at 1");
        (1..k).fold(self.clone(), |acc, _| acc.mul(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("monomial {monomial:?} does not form a single chain from {source_vertex} to {sink}")]
    MalformedMonomial {
        monomial: EdgeMonomial,
        source_vertex: usize,
        sink: usize,
    },
}

/// Turns a squarefree edge set into the vertex path it traces from `s`.
pub fn chain_edges(monomial: &EdgeMonomial, s: usize, t: usize) -> Result<Vec<usize>, WalkError> {
    let malformed = || WalkError::MalformedMonomial {
        monomial: monomial.clone(),
        source_vertex: s,
        sink: t,
    };
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in monomial {
        if next.insert(u, v).is_some() {
            return Err(malformed());
        }
    }
    let mut path = vec![s];
    let mut u = s;
    while let Some(v) = next.remove(&u) {
        path.push(v);
        u = v;
    }
    if u != t || !next.is_empty() || path.len() != monomial.len() + 1 {
        return Err(malformed());
    }
    Ok(path)
}

/// All shortest `s -> t` paths, recovered from the symbolic matrix power.
///
/// Far slower than the breadth-first enumeration in [`crate::graph`]; it is
/// kept as an independent cross-check.
pub fn symbolic_shortest_paths(
    g: &Digraph,
    s: usize,
    t: usize,
) -> Result<Option<PathList>, WalkError> {
    let Some(WalkCount { length, .. }) = count_shortest_walks(g, s, t) else {
        return Ok(None);
    };
    if length == 0 {
        return Ok(Some(PathList {
            length,
            paths: vec![vec![s]],
        }));
    }
    let sym = SymbolicMatrix::from_digraph(g);
    let mut row = BTreeMap::from([(s, BTreeMap::from([(EdgeMonomial::new(), BigUint::one())]))]);
    for _ in 0..length {
        row = sym.left_multiply(&row);
    }
    let entry = row.remove(&t).unwrap_or_default();
    let mut paths = Vec::with_capacity(entry.len());
    for (monomial, coefficient) in &entry {
        if !coefficient.is_one() {
            return Err(WalkError::MalformedMonomial {
                monomial: monomial.clone(),
                source_vertex: s,
                sink: t,
            });
        }
        paths.push(chain_edges(monomial, s, t)?);
    }
    paths.sort();
    Ok(Some(PathList { length, paths }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let g = Digraph::from_neighbor_lists([
            vec![1, 2, 3],
            vec![0, 2, 3],
            vec![0, 1, 3],
            vec![0, 1, 2],
        ])
        .unwrap();
        assert_eq!(
            count_shortest_walks(&g, 0, 3),
            Some(WalkCount {
                length: 1,
                count: BigUint::one()
            })
        );
        let a = AdjacencyMatrix::from_digraph(&g);
        // Walks of length 2 between distinct vertices of K4: through either of the other two.
        assert_eq!(a.pow(2).entry(0, 3), BigUint::from(2u32));
        assert_eq!(a.pow(2).entry(0, 0), BigUint::from(3u32));
        assert_eq!(a.pow(0), AdjacencyMatrix::identity(4));
    }

    #[test]
    fn unreachable_sink() {
        let g = Digraph::from_neighbor_lists([vec![1], vec![0], vec![]]).unwrap();
        assert_eq!(count_shortest_walks(&g, 0, 2), None);
        assert_eq!(symbolic_shortest_paths(&g, 0, 2), Ok(None));
    }

    #[test]
    fn single_edge_symbolic() {
        let g = Digraph::from_neighbor_lists([vec![1], vec![]]).unwrap();
        let s = SymbolicMatrix::from_digraph(&g);
        assert_eq!(
            s.entry(0, 1),
            BTreeMap::from([(vec![(0, 1)], BigUint::one())])
        );
        let paths = symbolic_shortest_paths(&g, 0, 1).unwrap().unwrap();
        assert_eq!(paths.paths, vec![vec![0, 1]]);
    }

    #[test]
    fn symbolic_power_degree() {
        let g = Digraph::from_neighbor_lists([vec![1, 2], vec![2, 0], vec![0]]).unwrap();
        let s3 = SymbolicMatrix::from_digraph(&g).pow(3);
        for i in 0..3 {
            for j in 0..3 {
                for monomial in s3.entry(i, j).keys() {
                    assert_eq!(monomial.len(), 3);
                }
            }
        }
    }

    #[test]
    fn chain_rejects_bad_monomials() {
        assert_eq!(chain_edges(&vec![(0, 1), (1, 2)], 0, 2), Ok(vec![0, 1, 2]));
        // Branching at 0.
        assert!(chain_edges(&vec![(0, 1), (0, 2)], 0, 2).is_err());
        // Disconnected extra edge.
        assert!(chain_edges(&vec![(0, 2), (3, 4)], 0, 2).is_err());
        // Ends elsewhere.
        assert!(chain_edges(&vec![(0, 1)], 0, 2).is_err());
    }
}
