//! Brute-force reference implementations shared by the integration tests.
//!
//! Nothing here calls into the library's legality or search code, so
//! agreement with it is real evidence.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use rivercross::{BankState, Digraph, SolutionPath};

/// `[m, c, b]` with `b = 1` when the boat is at the starting bank.
pub type Triple = [u32; 3];

fn safe(m: u32, c: u32, d: u32) -> bool {
    m == 0 || c == 0 || m >= c + d
}

fn neighbours(s: Triple, mm: u32, cc: u32, b: u32, d: u32) -> Vec<Triple> {
    let mut out = Vec::new();
    for e1 in 0..=b {
        for e2 in 0..=(b - e1) {
            if e1 + e2 == 0 || !safe(e1, e2, d) {
                continue;
            }
            let next = if s[2] == 1 {
                if e1 > s[0] || e2 > s[1] {
                    continue;
                }
                [s[0] - e1, s[1] - e2, 0]
            } else {
                if s[0] + e1 > mm || s[1] + e2 > cc {
                    continue;
                }
                [s[0] + e1, s[1] + e2, 1]
            };
            if safe(next[0], next[1], d) && safe(mm - next[0], cc - next[1], d) {
                out.push(next);
            }
        }
    }
    out
}

/// Shortest crossing count and the number of shortest solutions, by BFS with
/// path counting over `(m, c, side)`.
pub fn mc_count(mm: u32, cc: u32, b: u32, d: u32) -> Option<(usize, u128)> {
    let start = [mm, cc, 1];
    let goal = [0, 0, 0];
    let mut dist: BTreeMap<Triple, usize> = BTreeMap::from([(start, 0)]);
    let mut ways: BTreeMap<Triple, u128> = BTreeMap::from([(start, 1)]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let (ds, ws) = (dist[&s], ways[&s]);
        for n in neighbours(s, mm, cc, b, d) {
            match dist.get(&n) {
                None => {
                    dist.insert(n, ds + 1);
                    ways.insert(n, ws);
                    queue.push_back(n);
                }
                Some(&dn) if dn == ds + 1 => *ways.get_mut(&n).unwrap() += ws,
                Some(_) => {}
            }
        }
    }
    dist.get(&goal).map(|&k| (k, ways[&goal]))
}

/// Every shortest solution as a list of triples, sorted.
pub fn mc_solutions(mm: u32, cc: u32, b: u32, d: u32) -> Vec<Vec<Triple>> {
    let Some((len, _)) = mc_count(mm, cc, b, d) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut path = vec![[mm, cc, 1]];
    fn go(path: &mut Vec<Triple>, len: usize, p: (u32, u32, u32, u32), out: &mut Vec<Vec<Triple>>) {
        let s = *path.last().unwrap();
        if path.len() == len + 1 {
            if s == [0, 0, 0] {
                out.push(path.clone());
            }
            return;
        }
        for n in neighbours(s, p.0, p.1, p.2, p.3) {
            if !path.contains(&n) {
                path.push(n);
                go(path, len, p, out);
                path.pop();
            }
        }
    }
    go(&mut path, len, (mm, cc, b, d), &mut out);
    out.sort();
    out
}

pub fn triples(sol: &SolutionPath) -> Vec<Triple> {
    sol.states.iter().map(|&s: &BankState| s.into()).collect()
}

/// Number of walks of exactly `k` edges from `s` to `t`, by recursion.
pub fn walks(g: &Digraph, s: usize, t: usize, k: usize) -> u64 {
    if k == 0 {
        return u64::from(s == t);
    }
    g.out_neighbors(s)
        .iter()
        .map(|&v| walks(g, v, t, k - 1))
        .sum()
}

/// Shortest length and number of shortest paths by trying every simple path.
pub fn simple_paths(g: &Digraph, s: usize, t: usize) -> Option<(usize, Vec<Vec<usize>>)> {
    fn go(g: &Digraph, t: usize, path: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if u == t {
            found.push(path.clone());
            return;
        }
        for &v in g.out_neighbors(u) {
            if !path.contains(&v) {
                path.push(v);
                go(g, t, path, found);
                path.pop();
            }
        }
    }
    let mut found = Vec::new();
    go(g, t, &mut vec![s], &mut found);
    let best = found.iter().map(Vec::len).min()? - 1;
    let mut shortest: Vec<Vec<usize>> = found.into_iter().filter(|p| p.len() == best + 1).collect();
    shortest.sort();
    Some((best, shortest))
}

/// Source, `layers` layers of `width` vertices with complete bipartite links
/// between neighbouring layers, then a sink. There are `width^layers`
/// shortest source-sink paths, all of length `layers + 1`.
pub fn layered_graph(width: usize, layers: usize) -> Digraph {
    let n = width * layers + 2;
    let sink = n - 1;
    let vertex = |layer: usize, k: usize| 1 + layer * width + k;
    let mut g = Digraph::new(n);
    for k in 0..width {
        g.add_edge(0, vertex(0, k)).unwrap();
        g.add_edge(vertex(layers - 1, k), sink).unwrap();
    }
    for layer in 0..layers - 1 {
        for a in 0..width {
            for b in 0..width {
                g.add_edge(vertex(layer, a), vertex(layer + 1, b)).unwrap();
            }
        }
    }
    g
}

pub fn layered_count(width: usize, layers: usize) -> BigUint {
    BigUint::from(width).pow(layers as u32)
}

/// Wolf-goat-cabbage by bitmask BFS: bit 0 farmer, 1 wolf, 2 goat, 3 cabbage;
/// a set bit means "still on the starting bank".
pub fn wolf_goat_cabbage() -> (usize, u64) {
    let unsafe_bank = |bank: u8, farmer_here: bool| {
        !farmer_here && ((bank & 0b0110 == 0b0110) || (bank & 0b1100 == 0b1100))
    };
    let legal = |s: u8| {
        let start = s & 0b1110;
        let far = !s & 0b1110;
        let farmer_start = s & 1 == 1;
        !unsafe_bank(start, farmer_start) && !unsafe_bank(far, !farmer_start)
    };
    let (start, goal) = (0b1111u8, 0u8);
    let mut dist: BTreeMap<u8, usize> = BTreeMap::from([(start, 0)]);
    let mut ways: BTreeMap<u8, u64> = BTreeMap::from([(start, 1)]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let farmer_side = s & 1;
        // The farmer crosses alone or with one item on his side.
        let mut nexts = vec![s ^ 1];
        for item in 1..4 {
            if (s >> item) & 1 == farmer_side {
                nexts.push(s ^ 1 ^ (1 << item));
            }
        }
        for n in nexts.into_iter().filter(|&n| legal(n)) {
            let (ds, ws) = (dist[&s], ways[&s]);
            match dist.get(&n) {
                None => {
                    dist.insert(n, ds + 1);
                    ways.insert(n, ws);
                    queue.push_back(n);
                }
                Some(&dn) if dn == ds + 1 => *ways.get_mut(&n).unwrap() += ws,
                Some(_) => {}
            }
        }
    }
    (dist[&goal], ways[&goal])
}
