//! Immutable undirected-graph kernel on adjacency bitsets.
//!
//! Nodes are `0..n` with `n <= 64`, so a neighborhood is a single `u64` and
//! BFS advances a whole frontier per word operation. Exhaustive search
//! dominates this crate's runtime and bitset BFS is its bottleneck, hence the
//! representation. Everything here is a pure function over immutable values.

use crate::error::Error;
use crate::rational::Rational;

/// Hard limit of the bitset representation.
pub const MAX_NODES: usize = 64;

/// Node cap for the exact edge-density computation.
pub const DENSITY_MAX_NODES: usize = 20;

/// Default cap on enumerated spanning trees before giving up as undecided.
pub const SPANNING_TREE_CAP: u64 = 1_000_000;

const INF: u8 = u8::MAX;

/// A set of node ids packed into a bitmask.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct NodeSet(pub u64);

impl NodeSet {
    pub fn empty() -> Self {
        NodeSet(0)
    }

    pub fn all(n: usize) -> Self {
        debug_assert!(n <= MAX_NODES);
        if n == 64 {
            NodeSet(!0)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn from_nodes<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        let mut mask = 0u64;
        for v in nodes {
            mask |= 1 << v;
        }
        NodeSet(mask)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_NODES && self.0 & (1 << v) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Ascending node ids.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Hop distance between two nodes.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Distance {
    Hops(usize),
    Unreachable,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Hops(_))
    }

    pub fn at_most(self, t: usize) -> bool {
        match self {
            Distance::Hops(d) => d <= t,
            Distance::Unreachable => false,
        }
    }
}

/// Exact hop distances between every node pair, with a reserved sentinel for
/// disconnected pairs. Never encodes infinity as a large finite number.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    n: usize,
    rows: Vec<[u8; MAX_NODES]>,
}

impl DistanceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Distance {
        let raw = self.rows[i][j];
        if raw == INF {
            Distance::Unreachable
        } else {
            Distance::Hops(raw as usize)
        }
    }
}

/// Record of iteratively deleting degree-1 nodes down to the 2-core.
#[derive(Clone, Debug)]
pub struct PeelingRecord {
    /// What remains after peeling: every node has degree >= 2 or is isolated.
    pub core: Graph,
    /// `(leaf, neighbor)` pairs in removal order.
    pub removals: Vec<(usize, usize)>,
}

impl PeelingRecord {
    /// Re-attaches the peeled leaves in reverse order, reconstructing the
    /// original graph exactly.
    pub fn replay(&self) -> Graph {
        let mut g = self.core.clone();
        for &(leaf, nbr) in self.removals.iter().rev() {
            g.insert_edge(leaf, nbr);
        }
        g
    }
}

/// Immutable simple undirected graph on nodes `0..n`.
///
/// Equality and hashing are structural; the canonical order compares sorted
/// edge lists lexicographically, which is the tie-break used everywhere a
/// deterministic representative must be picked.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Graph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.edges().cmp(&other.edges()))
    }
}

impl Graph {
    fn check_n(n: usize) -> Result<(), Error> {
        if n > MAX_NODES {
            return Err(Error::TooManyNodes { n, max: MAX_NODES });
        }
        Ok(())
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Result<Self, Error> {
        Self::check_n(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Endpoints may come in either order;
    /// self-loops, duplicates, and out-of-range ids are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            if a == b {
                return Err(Error::SelfLoop { node: a });
            }
            for v in [a, b] {
                if v >= n {
                    return Err(Error::NodeOutOfRange { node: v, n });
                }
            }
            if g.has_edge(a, b) {
                return Err(Error::DuplicateEdge {
                    a: a.min(b),
                    b: a.max(b),
                });
            }
            g.insert_edge(a, b);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, Error> {
        Self::check_n(n)?;
        let all = NodeSet::all(n).0;
        let adj = (0..n).map(|i| all & !(1u64 << i)).collect();
        Ok(Graph { n, adj })
    }

    /// Star with the given center adjacent to every other node.
    pub fn star(n: usize, center: usize) -> Result<Self, Error> {
        let mut g = Self::empty(n)?;
        if center >= n {
            return Err(Error::NodeOutOfRange { node: center, n });
        }
        for v in 0..n {
            if v != center {
                g.insert_edge(center, v);
            }
        }
        Ok(g)
    }

    /// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, Error> {
        if n < 3 {
            return Err(Error::CycleTooSmall { n });
        }
        let mut g = Self::empty(n)?;
        for v in 0..n {
            g.insert_edge(v, (v + 1) % n);
        }
        Ok(g)
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Result<Self, Error> {
        let mut g = Self::empty(n)?;
        for v in 1..n {
            g.insert_edge(v - 1, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] & (1 << b) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> NodeSet {
        NodeSet(self.adj[v])
    }

    /// Nodes with at least one incident edge.
    pub fn non_isolated(&self) -> NodeSet {
        NodeSet::from_nodes((0..self.n).filter(|&v| self.adj[v] != 0))
    }

    /// Canonical edge list: pairs `(i, j)` with `i < j`, lexicographically
    /// sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            let mut higher = self.adj[i] & !low_bits_through(i);
            while higher != 0 {
                let j = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                out.push((i, j));
            }
        }
        out
    }

    pub(crate) fn insert_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && a < self.n && b < self.n);
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub(crate) fn delete_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1u64 << b);
        self.adj[b] &= !(1u64 << a);
    }

    /// Copy with one extra edge.
    pub fn with_edge(&self, a: usize, b: usize) -> Graph {
        let mut g = self.clone();
        g.insert_edge(a, b);
        g
    }

    /// Copy with one edge removed.
    pub fn without_edge(&self, a: usize, b: usize) -> Graph {
        let mut g = self.clone();
        g.delete_edge(a, b);
        g
    }

    /// Edge present exactly when absent here; no self-loops.
    pub fn complement(&self) -> Graph {
        let all = NodeSet::all(self.n).0;
        let adj = (0..self.n)
            .map(|i| (all & !(1u64 << i)) & !self.adj[i])
            .collect();
        Graph { n: self.n, adj }
    }

    /// Edgewise union with another graph on the same node set.
    pub fn union(&self, other: &Graph) -> Result<Graph, Error> {
        if self.n != other.n {
            return Err(Error::NodeCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let adj = (0..self.n).map(|i| self.adj[i] | other.adj[i]).collect();
        Ok(Graph { n: self.n, adj })
    }

    /// Union of a nonempty list of graphs sharing a node set.
    pub fn union_of(graphs: &[Graph]) -> Result<Graph, Error> {
        let first = graphs.first().ok_or(Error::EmptyUnion)?;
        let mut acc = first.clone();
        for g in &graphs[1..] {
            acc = acc.union(g)?;
        }
        Ok(acc)
    }

    /// Nodes reachable from `start` (which must be in `within`), staying
    /// inside `within`.
    fn reach(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        loop {
            let mut next = seen;
            let mut frontier = seen;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                next |= self.adj[v] & within;
            }
            if next == seen {
                return seen;
            }
            seen = next;
        }
    }

    /// Maximal connected node sets, sorted by smallest member.
    pub fn components(&self) -> Vec<NodeSet> {
        let mut remaining = NodeSet::all(self.n).0;
        let mut out = Vec::new();
        while remaining != 0 {
            let seed = remaining.trailing_zeros() as usize;
            let comp = self.reach(seed, remaining);
            out.push(NodeSet(comp));
            remaining &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Acyclic check: every component spans exactly `size - 1` edges.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    /// BFS distance row from one source; `INF` marks unreachable nodes.
    pub(crate) fn bfs_row(&self, src: usize) -> [u8; MAX_NODES] {
        let mut row = [INF; MAX_NODES];
        let mut seen = 1u64 << src;
        let mut frontier = seen;
        let mut d = 0u8;
        while frontier != 0 {
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                row[v] = d;
            }
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
            d += 1;
        }
        row
    }

    /// BFS-exact hop distances for all pairs.
    pub fn all_pairs_distances(&self) -> DistanceTable {
        let rows = (0..self.n).map(|v| self.bfs_row(v)).collect();
        DistanceTable { n: self.n, rows }
    }

    /// Subgraph induced by `nodes`, relabeled onto `0..nodes.len()`.
    pub fn induced_subgraph(&self, nodes: NodeSet) -> Result<InducedSubgraph, Error> {
        if nodes.0 & !NodeSet::all(self.n).0 != 0 {
            let bad = (nodes.0 & !NodeSet::all(self.n).0).trailing_zeros() as usize;
            return Err(Error::NodeOutOfRange {
                node: bad,
                n: self.n,
            });
        }
        let order = nodes.to_vec();
        let mut g = Graph::empty(order.len()).expect("induced subgraph within node cap");
        for (new_a, &old_a) in order.iter().enumerate() {
            for (new_b, &old_b) in order.iter().enumerate().skip(new_a + 1) {
                if self.has_edge(old_a, old_b) {
                    g.insert_edge(new_a, new_b);
                }
            }
        }
        Ok(InducedSubgraph {
            graph: g,
            nodes: order,
        })
    }

    /// Is `self` an edge-subgraph of `other` (same node set)?
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && (0..self.n).all(|v| self.adj[v] & !other.adj[v] == 0)
    }

    /// Does every `reference`-edge pair of endpoints sit within `t` hops of
    /// each other in `self`? `self` need not be a subgraph of `reference`.
    pub fn is_t_spanner_of(&self, reference: &Graph, t: usize) -> Result<bool, Error> {
        if self.n != reference.n {
            return Err(Error::NodeCountMismatch {
                left: self.n,
                right: reference.n,
            });
        }
        if t == 0 {
            return Err(Error::NonPositiveParameter { name: "stretch" });
        }
        for src in 0..self.n {
            let targets = reference.adj[src] & !low_bits_through(src);
            if targets == 0 {
                continue;
            }
            let row = self.bfs_row(src);
            let mut rest = targets;
            while rest != 0 {
                let dst = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if row[dst] == INF || row[dst] as usize > t {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Searches for a spanning forest that is also a 2-spanner: per component,
    /// BFS trees from every root first (enough for cliques and hubs of
    /// cliques), then capped exhaustive spanning-tree enumeration.
    ///
    /// `Ok(None)` means no such forest exists; hitting the enumeration cap is
    /// an explicit undecided error, never a silent "no".
    pub fn find_2spanner_forest(&self) -> Result<Option<Graph>, Error> {
        let mut forest = Graph::empty(self.n)?;
        for comp in self.components() {
            if comp.len() < 2 {
                continue;
            }
            match self.component_2spanner_tree(comp)? {
                Some(tree_edges) => {
                    for (a, b) in tree_edges {
                        forest.insert_edge(a, b);
                    }
                }
                None => return Ok(None),
            }
        }
        debug_assert!(forest.is_subgraph_of(self));
        Ok(Some(forest))
    }

    fn component_2spanner_tree(&self, comp: NodeSet) -> Result<Option<Vec<(usize, usize)>>, Error> {
        // BFS tree from each root, smallest root first.
        for root in comp.iter() {
            let mut tree = Graph::empty(self.n).expect("within cap");
            let mut seen = 1u64 << root;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    let mut fresh = self.adj[v] & comp.0 & !seen & !next;
                    while fresh != 0 {
                        let w = fresh.trailing_zeros() as usize;
                        fresh &= fresh - 1;
                        tree.insert_edge(v, w);
                        next |= 1 << w;
                    }
                }
                seen |= next;
                frontier = next;
            }
            if self.spans_component_within(&tree, comp, 2) {
                return Ok(Some(tree.edges()));
            }
        }
        // Fall back to exhaustive spanning-tree enumeration of the component.
        let induced = self.induced_subgraph(comp)?;
        let mut found: Option<Vec<(usize, usize)>> = None;
        for_each_spanning_tree(&induced.graph, SPANNING_TREE_CAP, |tree| {
            if tree
                .is_t_spanner_of(&induced.graph, 2)
                .expect("same node count")
            {
                found = Some(
                    tree.edges()
                        .iter()
                        .map(|&(a, b)| (induced.nodes[a], induced.nodes[b]))
                        .collect(),
                );
                true
            } else {
                false
            }
        })?;
        Ok(found)
    }

    /// 2-spanner check restricted to edges inside one component.
    fn spans_component_within(&self, tree: &Graph, comp: NodeSet, t: usize) -> bool {
        for src in comp.iter() {
            let targets = self.adj[src] & comp.0 & !low_bits_through(src);
            if targets == 0 {
                continue;
            }
            let row = tree.bfs_row(src);
            let mut rest = targets;
            while rest != 0 {
                let dst = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if row[dst] == INF || row[dst] as usize > t {
                    return false;
                }
            }
        }
        true
    }

    /// Repeatedly removes the lowest-id degree-1 node until none remain.
    pub fn two_core_peel(&self) -> PeelingRecord {
        let mut core = self.clone();
        let mut removals = Vec::new();
        loop {
            let leaf = (0..self.n).find(|&v| core.degree(v) == 1);
            match leaf {
                Some(v) => {
                    let nbr = core.adj[v].trailing_zeros() as usize;
                    core.delete_edge(v, nbr);
                    removals.push((v, nbr));
                }
                None => break,
            }
        }
        PeelingRecord { core, removals }
    }

    /// Smallest-id node adjacent to every other node, if any.
    pub fn star_center(&self) -> Option<usize> {
        let all = NodeSet::all(self.n).0;
        (0..self.n).find(|&v| self.adj[v] == all & !(1u64 << v))
    }

    /// The exact edge-density parameter: over all node subsets `S` with
    /// `|S| >= 2`, the maximum of `|E(S,S)| / (|S| - 1)`, minus one.
    ///
    /// Exhaustive over subsets (capped at [`DENSITY_MAX_NODES`] nodes), with
    /// sizes scanned largest-first so the clique upper bound `(s-2)/2` prunes
    /// whole sizes once they cannot improve the running maximum.
    pub fn edge_density_alpha(&self) -> Result<Rational, Error> {
        if self.n < 2 {
            return Err(Error::TooFewNodes {
                n: self.n,
                required: 2,
            });
        }
        if self.n > DENSITY_MAX_NODES {
            return Err(Error::DensityCapExceeded {
                n: self.n,
                max: DENSITY_MAX_NODES,
            });
        }
        let mut best: Option<Rational> = None;
        for size in (2..=self.n).rev() {
            let ceiling = Rational::new(size as i128 - 2, 2);
            if let Some(b) = best {
                if ceiling <= b {
                    break;
                }
            }
            let mut max_edges = 0u32;
            let mut subset = (1u64 << size) - 1;
            let limit = 1u64 << self.n;
            while subset < limit {
                let mut inner = 0u32;
                let mut rest = subset;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    inner += (self.adj[v] & rest).count_ones();
                }
                max_edges = max_edges.max(inner);
                subset = next_same_popcount(subset);
                if subset == 0 {
                    break;
                }
            }
            let candidate =
                Rational::new(max_edges as i128, size as i128 - 1) - Rational::from_integer(1);
            best = Some(match best {
                Some(b) if b >= candidate => b,
                _ => candidate,
            });
        }
        Ok(best.expect("at least size 2 evaluated"))
    }

    /// Decomposes one component into cliques that pairwise share exactly one
    /// hub node (a clique is the one-blade case). Returns the hub and the
    /// blade node sets (hub excluded), or `None` if the component does not
    /// have this shape.
    pub fn hub_clique_decomposition(&self, comp: NodeSet) -> Option<HubCliques> {
        let size = comp.len();
        if size == 0 {
            return None;
        }
        if size == 1 {
            return Some(HubCliques {
                hub: comp.iter().next().unwrap(),
                blades: Vec::new(),
            });
        }
        'hub: for hub in comp.iter() {
            if self.adj[hub] & comp.0 != comp.0 & !(1u64 << hub) {
                continue; // hub must be adjacent to all other component nodes
            }
            let rest = NodeSet(comp.0 & !(1u64 << hub));
            let mut blades = Vec::new();
            let mut remaining = rest.0;
            while remaining != 0 {
                let seed = remaining.trailing_zeros() as usize;
                let blade = self.reach(seed, remaining);
                let blade_size = blade.count_ones();
                let inner: u32 = NodeSet(blade)
                    .iter()
                    .map(|v| (self.adj[v] & blade).count_ones())
                    .sum::<u32>()
                    / 2;
                if inner != blade_size * (blade_size - 1) / 2 {
                    continue 'hub; // blade is not a clique
                }
                blades.push(NodeSet(blade));
                remaining &= !blade;
            }
            return Some(HubCliques { hub, blades });
        }
        None
    }
}

/// One component seen as cliques glued at a shared hub.
#[derive(Clone, Debug)]
pub struct HubCliques {
    pub hub: usize,
    /// Disjoint clique node sets, hub excluded; clique size is `len() + 1`.
    pub blades: Vec<NodeSet>,
}

/// Induced subgraph together with its relabeling: `nodes[new] = old`, ids
/// ascending.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub nodes: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_local(&self, old: usize) -> Option<usize> {
        self.nodes.binary_search(&old).ok()
    }

    pub fn to_global(&self, new: usize) -> usize {
        self.nodes[new]
    }
}

/// Bits `0..=i`.
fn low_bits_through(i: usize) -> u64 {
    let bit = 1u64 << i;
    bit | (bit - 1)
}

/// Gosper's hack: the next larger integer with the same popcount, or 0 when
/// the sequence is exhausted for the word size.
fn next_same_popcount(v: u64) -> u64 {
    let c = v & v.wrapping_neg();
    let r = v.wrapping_add(c);
    if r == 0 || c == 0 {
        return 0;
    }
    (((r ^ v) >> 2) / c) | r
}

/// Enumerates every spanning tree of a connected `g` exactly once via binary
/// edge include/exclude with a connectivity prune. The visitor returns `true`
/// to stop early; the function reports whether it was stopped. Exceeding
/// `cap` visited trees returns an explicit undecided error.
///
/// A graph on one node (or none) has the empty tree; a disconnected graph has
/// no spanning tree and the visitor is never called.
pub fn for_each_spanning_tree<F>(g: &Graph, cap: u64, mut visit: F) -> Result<bool, Error>
where
    F: FnMut(&Graph) -> bool,
{
    if g.n() <= 1 {
        if cap == 0 {
            return Err(Error::SpanningTreeCapExceeded { cap });
        }
        return Ok(visit(&Graph::empty(g.n()).expect("within cap")));
    }
    if !g.is_connected() {
        return Ok(false);
    }
    let edges = g.edges();
    let n = g.n();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
    let mut count = 0u64;

    struct Ctx<'a, F> {
        edges: &'a [(usize, usize)],
        n: usize,
        cap: u64,
        visit: &'a mut F,
    }

    fn connects_all(
        edges: &[(usize, usize)],
        from: usize,
        chosen: &[(usize, usize)],
        n: usize,
    ) -> bool {
        let mut dsu = Dsu::new(n);
        for &(a, b) in chosen {
            dsu.join(a, b);
        }
        for &(a, b) in &edges[from..] {
            dsu.join(a, b);
        }
        dsu.groups() == 1
    }

    fn rec<F: FnMut(&Graph) -> bool>(
        ctx: &mut Ctx<'_, F>,
        idx: usize,
        dsu: &Dsu,
        chosen: &mut Vec<(usize, usize)>,
        count: &mut u64,
    ) -> Result<bool, Error> {
        if chosen.len() == ctx.n - 1 {
            *count += 1;
            if *count > ctx.cap {
                return Err(Error::SpanningTreeCapExceeded { cap: ctx.cap });
            }
            let tree = Graph::from_edges(ctx.n, chosen).expect("tree edges are valid");
            return Ok((ctx.visit)(&tree));
        }
        if idx == ctx.edges.len() {
            return Ok(false);
        }
        let (a, b) = ctx.edges[idx];
        if dsu.find(a) != dsu.find(b) {
            let mut next = dsu.clone();
            next.join(a, b);
            chosen.push((a, b));
            let stopped = rec(ctx, idx + 1, &next, chosen, count)?;
            chosen.pop();
            if stopped {
                return Ok(true);
            }
        }
        // Excluding this edge is viable only if the rest still connects.
        if connects_all(ctx.edges, idx + 1, chosen, ctx.n) && rec(ctx, idx + 1, dsu, chosen, count)?
        {
            return Ok(true);
        }
        Ok(false)
    }

    let mut ctx = Ctx {
        edges: &edges,
        n,
        cap,
        visit: &mut visit,
    };
    rec(&mut ctx, 0, &Dsu::new(n), &mut chosen, &mut count)
}

/// Small union-find over at most 64 nodes.
#[derive(Clone)]
pub(crate) struct Dsu {
    parent: [u8; MAX_NODES],
    n: usize,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        let mut parent = [0u8; MAX_NODES];
        for (i, p) in parent.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        Dsu { parent, n }
    }

    pub(crate) fn find(&self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            v = self.parent[v] as usize;
        }
        v
    }

    pub(crate) fn join(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb) as u8;
        }
    }

    pub(crate) fn groups(&self) -> usize {
        (0..self.n).filter(|&v| self.find(v) == v).count()
    }
}
