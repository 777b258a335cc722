//! Shared test oracles, independent of the library's search and distance
//! paths: plain-matrix Floyd-Warshall distances, a no-pruning brute force
//! over every graph on n nodes, seeded random instance generators, and a
//! permutation-based isomorphism check.

#![allow(dead_code)]

use netform::graph::Graph;
use netform::rational::{rat, Rational};
use netform::schedule::BenefitSchedule;
use rand::rngs::StdRng;
use rand::Rng;

/// Floyd-Warshall over a plain matrix; `None` marks unreachable pairs.
pub fn naive_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
    }
    for (a, b) in g.edges() {
        d[a][b] = Some(1);
        d[b][a] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].map_or(true, |cur| cur > x + y) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Benefit over reference edges at naive distances, minus the edge bill.
pub fn naive_conditional_utility(g: &Graph, reference: &Graph, s: &BenefitSchedule) -> Rational {
    let d = naive_distances(g);
    let mut total = rat(0);
    for (a, b) in reference.edges() {
        if let Some(k) = d[a][b] {
            total += s.b(k).unwrap();
        }
    }
    total - s.cost() * rat(g.edge_count() as i64)
}

/// Benefit over all unordered pairs at naive distances, minus the edge bill.
pub fn naive_single_layer_utility(g: &Graph, s: &BenefitSchedule) -> Rational {
    let d = naive_distances(g);
    let mut total = rat(0);
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if let Some(k) = d[i][j] {
                total += s.b(k).unwrap();
            }
        }
    }
    total - s.cost() * rat(g.edge_count() as i64)
}

/// Every graph on `n` nodes, in mask order. Only sensible for small `n`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push((a, b));
        }
    }
    let mut out = Vec::with_capacity(1 << pairs.len());
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, e)| *e)
            .collect();
        out.push(Graph::from_edges(n, &edges).unwrap());
    }
    out
}

/// Unpruned brute force over every graph on n nodes with naive scoring:
/// returns the optimal utility and every optimum.
pub fn brute_force_optima(reference: &Graph, s: &BenefitSchedule) -> (Rational, Vec<Graph>) {
    let mut best: Option<Rational> = None;
    let mut optima: Vec<Graph> = Vec::new();
    for g in all_graphs(reference.n()) {
        let u = naive_conditional_utility(&g, reference, s);
        match &best {
            None => {
                best = Some(u);
                optima.push(g);
            }
            Some(b) if u > *b => {
                best = Some(u);
                optima.clear();
                optima.push(g);
            }
            Some(b) if u == *b => optima.push(g),
            _ => {}
        }
    }
    (best.unwrap(), optima)
}

/// Random graph: each pair present independently with probability `p`.
pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random tree: each node past the first attaches to an earlier node.
pub fn random_tree(rng: &mut StdRng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random connected graph: a random tree plus extra pairs with probability
/// `extra_p`.
pub fn random_connected_graph(rng: &mut StdRng, n: usize, extra_p: f64) -> Graph {
    let mut g = random_tree(rng, n);
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) && rng.random_bool(extra_p) {
                g = g.with_edge(a, b);
            }
        }
    }
    g
}

/// Random nonincreasing benefit table over sixteenths, with `len` entries
/// and a positive cost below `max_cost_sixteenths / 16`.
pub fn random_schedule(rng: &mut StdRng, len: usize, max_cost_sixteenths: i64) -> BenefitSchedule {
    let mut value = rng.random_range(8..=48);
    let mut values = Vec::with_capacity(len);
    for _ in 0..len {
        values.push(Rational::new(value as i128, 16));
        value -= rng.random_range(0..=6).min(value);
    }
    let cost = Rational::new(rng.random_range(1..=max_cost_sixteenths) as i128, 16);
    BenefitSchedule::new(values, cost).unwrap()
}

/// Random schedule with a strictly decreasing head (b(1) > b(2)).
pub fn random_strict_schedule(
    rng: &mut StdRng,
    len: usize,
    max_cost_sixteenths: i64,
) -> BenefitSchedule {
    loop {
        let s = random_schedule(rng, len, max_cost_sixteenths);
        if len >= 2 && s.b(1).unwrap() > s.b(2).unwrap() {
            return s;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Brute-force isomorphism check; fine up to n = 7.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    permutations(n)
        .into_iter()
        .any(|perm| a.edges().iter().all(|&(x, y)| b.has_edge(perm[x], perm[y])))
}

/// Star shape: one node adjacent to all others, the rest leaves.
pub fn is_full_star(g: &Graph) -> bool {
    let n = g.n();
    g.edge_count() == n - 1 && (0..n).any(|v| g.degree(v) == n - 1)
}

/// Two adjacent degree-3 hubs, four leaves (the 6-node double star).
pub fn is_double_star6(g: &Graph) -> bool {
    let mut degs: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    degs.sort_unstable();
    if degs != vec![1, 1, 1, 1, 3, 3] {
        return false;
    }
    let hubs: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 3).collect();
    g.has_edge(hubs[0], hubs[1])
}
