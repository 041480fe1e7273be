//! Directed graphs stored as lists of out-neighbour sets, with breadth-first
//! distances and exhaustive enumeration of all shortest paths.
//!
//! Vertices are `0..n`. Puzzle graphs put the source at `0` and the sink at
//! `n - 1`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{mc_graph, McParams, SolutionPath};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("random graph needs n >= 2 and 0 <= p <= 1 (got n = {n}, p = {p})")]
    BadRandomParams { n: usize, p: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    out: Vec<BTreeSet<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Self {
            out: vec![BTreeSet::new(); n],
        }
    }

    /// Builds a graph from the sets `[N_0, ..., N_{n-1}]`.
    pub fn from_neighbor_lists<I, J>(lists: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let out: Vec<BTreeSet<usize>> =
            lists.into_iter().map(|l| l.into_iter().collect()).collect();
        let n = out.len();
        if let Some(&vertex) = out.iter().flatten().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { vertex, n });
        }
        Ok(Self { out })
    }

    pub fn add_edge(&mut self, from: usize, to: usize) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for vertex in [from, to] {
            if vertex >= n {
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
        }
        self.out[from].insert(to);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BTreeSet::len).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.out[v]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.out.get(from).is_some_and(|s| s.contains(&to))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, set)| set.iter().map(move |&v| (u, v)))
    }

    pub fn reversed(&self) -> Self {
        let mut rev = Self::new(self.vertex_count());
        for (u, v) in self.edges() {
            rev.out[v].insert(u);
        }
        rev
    }

    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        self.out
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }
}

/// Breadth-first distances (edge counts) from `source` to every vertex.
pub fn bfs_distances(g: &Digraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &v in g.out_neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Length of a shortest `s -> t` walk, `None` if `t` is unreachable.
pub fn shortest_distance(g: &Digraph, s: usize, t: usize) -> Result<Option<usize>, GraphError> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    Ok(bfs_distances(g, s)[t])
}

/// Every shortest path between two vertices, all of the same length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathList {
    /// Edge count shared by every path.
    pub length: usize,
    /// Vertex sequences, sorted lexicographically.
    pub paths: Vec<Vec<usize>>,
}

impl PathList {
    pub fn count(&self) -> usize {
        self.paths.len()
    }
}

/// Enumerates all shortest `s -> t` paths.
///
/// Distances to `t` are computed on the reversed graph first; the walk from
/// `s` then only follows edges that bring it exactly one step closer, so no
/// branch is ever abandoned. Neighbours are visited in increasing order, which
/// makes the output lexicographic.
pub fn all_shortest_paths(g: &Digraph, s: usize, t: usize) -> Result<Option<PathList>, GraphError> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    let to_sink = bfs_distances(&g.reversed(), t);
    let Some(length) = to_sink[s] else {
        return Ok(None);
    };
    let mut paths = Vec::new();
    let mut current = vec![s];
    descend(g, &to_sink, t, &mut current, &mut paths);
    Ok(Some(PathList { length, paths }))
}

fn descend(
    g: &Digraph,
    to_sink: &[Option<usize>],
    t: usize,
    current: &mut Vec<usize>,
    paths: &mut Vec<Vec<usize>>,
) {
    let u = *current.last().expect("path is never empty");
    if u == t {
        paths.push(current.clone());
        return;
    }
    let remaining = to_sink[u].expect("only vertices that reach the sink are entered");
    for &v in g.out_neighbors(u) {
        if to_sink[v] == Some(remaining - 1) {
            current.push(v);
            descend(g, to_sink, t, current, paths);
            current.pop();
        }
    }
}

/// Erdős–Rényi style random digraph: every ordered pair `(i, j)` with `i != j`
/// becomes an edge independently with probability `p`.
///
/// The generator is ChaCha8 (`rand_chacha`) seeded with `seed_from_u64(seed)`.
/// Pairs are visited row by row, `i` then `j` ascending, and each draws one
/// `u64` from which the top 53 bits form a uniform `x` in `[0, 1)`; the edge is
/// present when `x < p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph, GraphError> {
    if n < 2 || !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadRandomParams { n, p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Digraph::new(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let x = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if x < p {
                g.out[i].insert(j);
            }
        }
    }
    Ok(g)
}

/// Bijection between puzzle states and graph vertices.
///
/// The initial state is vertex `0`, the goal is the last vertex and all other
/// states sit in between in ascending order.
#[derive(Debug, Clone)]
pub struct StateIndex<S> {
    states: Vec<S>,
    lookup: BTreeMap<S, usize>,
}

impl<S: Ord + Clone> StateIndex<S> {
    /// `others` may contain the initial and goal states; duplicates are ignored.
    pub fn new(initial: S, goal: S, others: impl IntoIterator<Item = S>) -> Self {
        let middle: BTreeSet<S> = others
            .into_iter()
            .filter(|s| *s != initial && *s != goal)
            .collect();
        let mut states = Vec::with_capacity(middle.len() + 2);
        states.push(initial);
        states.extend(middle);
        if states[0] != goal {
            states.push(goal);
        }
        let lookup = states
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Self { states, lookup }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, v: usize) -> &S {
        &self.states[v]
    }

    pub fn vertex(&self, s: &S) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.states.len() - 1
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn decode(&self, path: &[usize]) -> Vec<S> {
        path.iter().map(|&v| self.states[v].clone()).collect()
    }

    /// Adds an edge to every successor that is itself an indexed state.
    pub fn build_graph(&self, successors: impl Fn(&S) -> Vec<S>) -> Digraph {
        let mut g = Digraph::new(self.len());
        for (u, s) in self.states.iter().enumerate() {
            for next in successors(s) {
                if let Some(v) = self.vertex(&next) {
                    g.out[u].insert(v);
                }
            }
        }
        g
    }
}

/// All shortest solutions of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McSolutions {
    pub crossings: usize,
    /// Sorted lexicographically by state sequence.
    pub solutions: Vec<SolutionPath>,
}

/// Finds every shortest solution, or `None` if the goal is unreachable.
pub fn solve_mc(p: &McParams) -> Option<McSolutions> {
    let (g, index) = mc_graph(p);
    let list = all_shortest_paths(&g, index.source(), index.sink())
        .expect("source and sink are vertices")?;
    let mut solutions: Vec<SolutionPath> = list
        .paths
        .iter()
        .map(|path| SolutionPath::new(index.decode(path)))
        .collect();
    solutions.sort();
    Some(McSolutions {
        crossings: list.length,
        solutions,
    })
}
