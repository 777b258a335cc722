//! Best-response computation against a fixed reference layer.
//!
//! The exhaustive search is exact: it enumerates every graph that could be
//! optimal (edge budget capped by the reference's edge count, reference-
//! isolated nodes excluded, and, when each built edge beats a detour, only
//! candidates preserving the reference's connectivity), scores each with
//! integer-scaled exact arithmetic, and breaks ties toward the
//! lexicographically least edge set. Closed-form routes return certified
//! optima without search where the reference's shape admits one. The
//! component-split and leaf-peeling wrappers shrink instances before solving;
//! the greedy hill-climb is the deliberately uncertified baseline.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};

use crate::error::Error;
use crate::graph::{Dsu, Graph, DENSITY_MAX_NODES, MAX_NODES};
use crate::rational::{rat, Rational};
use crate::schedule::{BenefitSchedule, CostClass};

/// Caps and parallelism for the exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Most active (non-isolated reference) nodes the search will accept.
    pub max_n: usize,
    /// Most candidate graphs the search will enumerate.
    pub max_candidates: u64,
    /// Worker threads; results are identical for any worker count.
    pub workers: usize,
    /// Collect every optimum, not just the canonical one.
    pub want_all: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_n: 7,
            max_candidates: 1 << 24,
            workers: 1,
            want_all: false,
        }
    }
}

/// How a best-response value was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every admissible candidate was enumerated.
    Exhaustive,
    /// A recognized reference shape fixed the optimum; the string names the
    /// rule that fired.
    ClosedForm(String),
    /// Local search only; no optimality claim.
    Heuristic,
}

impl Certificate {
    pub fn is_optimal(&self) -> bool {
        !matches!(self, Certificate::Heuristic)
    }

    fn describe(&self) -> String {
        match self {
            Certificate::Exhaustive => "exhaustive".into(),
            Certificate::ClosedForm(rule) => rule.clone(),
            Certificate::Heuristic => "heuristic".into(),
        }
    }
}

/// A response graph with its exact utility and the claim attached to it.
#[derive(Clone, Debug)]
pub struct BrResult {
    pub graph: Graph,
    pub utility: Rational,
    pub certificate: Certificate,
    /// Every optimum, canonically sorted; present only when requested.
    pub all_optima: Option<Vec<Graph>>,
}

/// Decision-problem instance: does any graph reach utility `r` against the
/// reference?
#[derive(Clone, Debug)]
pub struct BrnInstance {
    pub reference: Graph,
    pub schedule: BenefitSchedule,
    pub threshold: Rational,
}

impl BrnInstance {
    pub fn new(
        reference: Graph,
        schedule: BenefitSchedule,
        threshold: Rational,
    ) -> Result<Self, Error> {
        if threshold <= rat(0) {
            return Err(Error::ThresholdNotPositive);
        }
        schedule.ensure_covers(reference.n())?;
        Ok(BrnInstance {
            reference,
            schedule,
            threshold,
        })
    }
}

/// Inner solver selection for the decomposition wrappers.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SolverChoice {
    Exhaustive,
    ClosedFormOnly,
    /// Closed form when a rule fires, exhaustive otherwise.
    Auto,
}

/// Dispatches on [`SolverChoice`].
pub fn solve_best_response(
    reference: &Graph,
    schedule: &BenefitSchedule,
    choice: SolverChoice,
    config: &SolverConfig,
) -> Result<BrResult, Error> {
    match choice {
        SolverChoice::Exhaustive => exhaustive_best_response(reference, schedule, config),
        SolverChoice::ClosedFormOnly => {
            closed_form_best_response(reference, schedule)?.ok_or(Error::NoClosedForm)
        }
        SolverChoice::Auto => match closed_form_best_response(reference, schedule)? {
            Some(result) => Ok(result),
            None => exhaustive_best_response(reference, schedule, config),
        },
    }
}

// ---------------------------------------------------------------------------
// exhaustive search
// ---------------------------------------------------------------------------

/// Benefit table and cost scaled to a common denominator so the search loop
/// runs on plain integers.
struct ScaledSchedule {
    /// `by_distance[d]` is `b(d)` scaled; index 0 unused.
    by_distance: Vec<i128>,
    cost: i128,
    denominator: i128,
}

impl ScaledSchedule {
    fn build(schedule: &BenefitSchedule, n: usize) -> Result<Self, Error> {
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let max_d = n.saturating_sub(1);
        let mut den: i128 = *schedule.cost().denom();
        for d in 1..=max_d {
            let v = schedule.b(d)?;
            den = (den / gcd(den, *v.denom()))
                .checked_mul(*v.denom())
                .ok_or(Error::ArithmeticOverflow)?;
        }
        let mut by_distance = vec![0i128; max_d + 1];
        for (d, slot) in by_distance.iter_mut().enumerate().skip(1) {
            let v = schedule.b(d)?;
            *slot = v
                .numer()
                .checked_mul(den / *v.denom())
                .ok_or(Error::ArithmeticOverflow)?;
        }
        let cost = schedule
            .cost()
            .numer()
            .checked_mul(den / *schedule.cost().denom())
            .ok_or(Error::ArithmeticOverflow)?;
        Ok(ScaledSchedule {
            by_distance,
            cost,
            denominator: den,
        })
    }
}

/// Lexicographic order on the edge lists two universe masks denote, where bit
/// `k` stands for the `k`-th smallest edge.
pub(crate) fn cmp_edge_masks(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let first_diff = (a ^ b).trailing_zeros();
    let bit = 1u64 << first_diff;
    let above = !(bit | (bit - 1));
    if a & bit != 0 {
        // `a` holds the earliest differing edge; it precedes `b` unless `b`
        // stops there (a strict prefix precedes its extension).
        if b & above != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if a & above != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

struct SearchSpace {
    /// Candidate edges: pairs of active nodes, canonical order.
    universe: Vec<(usize, usize)>,
    /// Largest admissible candidate edge count.
    budget: usize,
    /// Smallest admissible size (connectivity floor when pruning).
    min_size: usize,
    /// Reference components of two or more nodes, as bitmasks.
    prune_components: Option<Vec<u64>>,
    /// Per source node, reference neighbors above it (benefit targets).
    targets: Vec<(usize, u64)>,
}

struct WorkerOutcome {
    best: Option<(i128, u64)>,
    optima: Vec<u64>,
    hit_stop: bool,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn next_same_popcount(v: u64) -> u64 {
    let c = v & v.wrapping_neg();
    let r = v.wrapping_add(c);
    if r == 0 || c == 0 {
        return 0;
    }
    (((r ^ v) >> 2) / c) | r
}

/// Scores one candidate: benefit over reference edges at candidate distances,
/// minus the edge bill, all in scaled integers.
fn eval_candidate(
    adj: &[u64; MAX_NODES],
    targets: &[(usize, u64)],
    scaled: &ScaledSchedule,
    edge_count: u32,
) -> i128 {
    let mut total: i128 = 0;
    for &(src, want) in targets {
        let mut remaining = want;
        let mut seen = 1u64 << src;
        let mut frontier = seen;
        let mut depth = 0usize;
        while frontier != 0 && remaining != 0 {
            depth += 1;
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            frontier = next & !seen;
            seen |= frontier;
            let reached = frontier & remaining;
            if reached != 0 {
                total += reached.count_ones() as i128 * scaled.by_distance[depth];
                remaining &= !reached;
            }
        }
    }
    total - scaled.cost * edge_count as i128
}

fn candidate_preserves_connectivity(
    mask: u64,
    universe: &[(usize, usize)],
    components: &[u64],
    n: usize,
) -> bool {
    let mut dsu = Dsu::new(n);
    let mut rest = mask;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (a, b) = universe[k];
        dsu.join(a, b);
    }
    for &comp in components {
        let root = dsu.find(comp.trailing_zeros() as usize);
        let mut nodes = comp & (comp - 1);
        while nodes != 0 {
            let v = nodes.trailing_zeros() as usize;
            nodes &= nodes - 1;
            if dsu.find(v) != root {
                return false;
            }
        }
    }
    true
}

fn scan_worker(
    space: &SearchSpace,
    scaled: &ScaledSchedule,
    n: usize,
    worker: usize,
    workers: usize,
    want_all: bool,
    stop_at: Option<i128>,
    stop_flag: &AtomicBool,
) -> WorkerOutcome {
    let m = space.universe.len();
    let mut adj = [0u64; MAX_NODES];
    let mut best: Option<(i128, u64)> = None;
    let mut optima: Vec<u64> = Vec::new();
    let mut hit_stop = false;
    let mut ordinal: u64 = 0;

    'sizes: for size in space.min_size..=space.budget {
        let mut mask: u64 = if size == 0 { 0 } else { (1u64 << size) - 1 };
        let limit: u64 = if m == 64 { u64::MAX } else { 1u64 << m };
        loop {
            if size > 0 && (m < 64 && mask >= limit || mask == 0) {
                break;
            }
            let this = ordinal;
            ordinal += 1;
            if stop_at.is_some()
                && ordinal.is_multiple_of(4096)
                && stop_flag.load(AtomicOrdering::Relaxed)
            {
                hit_stop = true;
                break 'sizes;
            }
            if this % workers as u64 == worker as u64 {
                let admissible = match &space.prune_components {
                    Some(comps) => {
                        candidate_preserves_connectivity(mask, &space.universe, comps, n)
                    }
                    None => true,
                };
                if admissible {
                    adj[..n].fill(0);
                    let mut rest = mask;
                    while rest != 0 {
                        let k = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        let (a, b) = space.universe[k];
                        adj[a] |= 1 << b;
                        adj[b] |= 1 << a;
                    }
                    let value = eval_candidate(&adj, &space.targets, scaled, size as u32);
                    let better = match best {
                        None => true,
                        Some((bv, bm)) => {
                            value > bv
                                || (value == bv && cmp_edge_masks(mask, bm) == Ordering::Less)
                        }
                    };
                    if want_all {
                        match best {
                            Some((bv, _)) if value == bv => optima.push(mask),
                            Some((bv, _)) if value > bv => {
                                optima.clear();
                                optima.push(mask);
                            }
                            None => optima.push(mask),
                            _ => {}
                        }
                    }
                    if better {
                        best = Some((value, mask));
                    }
                    if let Some(thr) = stop_at {
                        if value >= thr {
                            stop_flag.store(true, AtomicOrdering::Relaxed);
                            hit_stop = true;
                            break 'sizes;
                        }
                    }
                }
            }
            if size == 0 {
                break;
            }
            mask = next_same_popcount(mask);
        }
    }
    WorkerOutcome {
        best,
        optima,
        hit_stop,
    }
}

fn prepare_search(
    reference: &Graph,
    schedule: &BenefitSchedule,
    config: &SolverConfig,
) -> Result<SearchSpace, Error> {
    let active = reference.non_isolated();
    if active.len() > config.max_n {
        return Err(Error::ExhaustiveCapExceeded {
            n: active.len(),
            max: config.max_n,
        });
    }
    let nodes = active.to_vec();
    let mut universe = Vec::new();
    for (i, &a) in nodes.iter().enumerate() {
        for &b in nodes.iter().skip(i + 1) {
            universe.push((a, b));
        }
    }
    if universe.len() > 64 {
        return Err(Error::UniverseTooLarge {
            edges: universe.len(),
        });
    }
    let budget = reference.edge_count().min(universe.len());

    // Pruning by reference connectivity is valid for every optimum when a
    // direct edge strictly beats any detour, and for some optimum at the
    // break-even cost; in the latter case it is applied only when a single
    // canonical optimum is wanted.
    let prune = if reference.edge_count() > 0 {
        let b1 = schedule.b(1)?;
        let c = schedule.cost();
        b1 > c || (b1 == c && !config.want_all)
    } else {
        false
    };
    let (prune_components, min_size) = if prune {
        let comps: Vec<u64> = reference
            .components()
            .into_iter()
            .filter(|c| c.len() >= 2)
            .map(|c| c.0)
            .collect();
        let floor: usize = comps.iter().map(|c| c.count_ones() as usize - 1).sum();
        (Some(comps), floor)
    } else {
        (None, 0)
    };

    let mut total: u128 = 0;
    for size in min_size..=budget {
        total += binomial(universe.len(), size);
    }
    if total > config.max_candidates as u128 {
        return Err(Error::CandidateCapExceeded {
            candidates: total,
            cap: config.max_candidates,
        });
    }

    let mut targets = Vec::new();
    for src in 0..reference.n() {
        let above: u64 = reference
            .neighbors(src)
            .iter()
            .filter(|&t| t > src)
            .fold(0u64, |m, t| m | (1 << t));
        if above != 0 {
            targets.push((src, above));
        }
    }

    Ok(SearchSpace {
        universe,
        budget,
        min_size,
        prune_components,
        targets,
    })
}

struct SearchRun {
    best: Option<(i128, u64)>,
    optima: Vec<u64>,
    stopped: bool,
    space: SearchSpace,
    scaled: ScaledSchedule,
}

fn run_search(
    reference: &Graph,
    schedule: &BenefitSchedule,
    config: &SolverConfig,
    stop_at: Option<Rational>,
) -> Result<SearchRun, Error> {
    schedule.ensure_covers(reference.n())?;
    let space = prepare_search(reference, schedule, config)?;
    let scaled = ScaledSchedule::build(schedule, reference.n())?;
    let stop_scaled = match stop_at {
        Some(r) => {
            // smallest scaled integer >= r * denominator
            let num = r
                .numer()
                .checked_mul(scaled.denominator)
                .ok_or(Error::ArithmeticOverflow)?;
            let den = *r.denom();
            Some(num.div_euclid(den) + if num.rem_euclid(den) > 0 { 1 } else { 0 })
        }
        None => None,
    };
    let workers = config.workers.max(1);
    let stop_flag = AtomicBool::new(false);
    let n = reference.n();

    let outcomes: Vec<WorkerOutcome> = if workers == 1 {
        vec![scan_worker(
            &space,
            &scaled,
            n,
            0,
            1,
            config.want_all,
            stop_scaled,
            &stop_flag,
        )]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let space = &space;
                    let scaled = &scaled;
                    let stop_flag = &stop_flag;
                    scope.spawn(move || {
                        scan_worker(
                            space,
                            scaled,
                            n,
                            w,
                            workers,
                            config.want_all,
                            stop_scaled,
                            stop_flag,
                        )
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };

    let mut best: Option<(i128, u64)> = None;
    for o in &outcomes {
        if let Some((v, m)) = o.best {
            best = Some(match best {
                None => (v, m),
                Some((bv, bm)) => {
                    if v > bv || (v == bv && cmp_edge_masks(m, bm) == Ordering::Less) {
                        (v, m)
                    } else {
                        (bv, bm)
                    }
                }
            });
        }
    }
    let mut optima = Vec::new();
    if config.want_all {
        if let Some((bv, _)) = best {
            for o in &outcomes {
                if let Some((v, _)) = o.best {
                    if v == bv {
                        optima.extend(o.optima.iter().copied());
                    }
                }
            }
            optima.sort_by(|a, b| cmp_edge_masks(*a, *b));
        }
    }
    let stopped = outcomes.iter().any(|o| o.hit_stop);
    Ok(SearchRun {
        best,
        optima,
        stopped,
        space,
        scaled,
    })
}

fn mask_to_graph(mask: u64, universe: &[(usize, usize)], n: usize) -> Graph {
    let mut g = Graph::empty(n).expect("within node cap");
    let mut rest = mask;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (a, b) = universe[k];
        g.insert_edge(a, b);
    }
    g
}

/// Provably optimal response by bounded enumeration.
///
/// Candidates range over all graphs on the reference's non-isolated nodes
/// with at most as many edges as the reference; the optimum over all graphs
/// lies in that set. The canonical optimum (max utility, then least edge set)
/// is returned; pass `want_all` in the config to also collect every optimum.
pub fn exhaustive_best_response(
    reference: &Graph,
    schedule: &BenefitSchedule,
    config: &SolverConfig,
) -> Result<BrResult, Error> {
    let run = run_search(reference, schedule, config, None)?;
    let (_, mask) = run
        .best
        .expect("at least one candidate is always enumerated");
    let graph = mask_to_graph(mask, &run.space.universe, reference.n());
    let utility = schedule.conditional_utility(&graph, reference)?;
    let all_optima = if config.want_all {
        Some(
            run.optima
                .into_iter()
                .map(|m| mask_to_graph(m, &run.space.universe, reference.n()))
                .collect(),
        )
    } else {
        None
    };
    Ok(BrResult {
        graph,
        utility,
        certificate: Certificate::Exhaustive,
        all_optima,
    })
}

/// Does any graph reach the threshold utility against the reference?
///
/// Tries a closed form, then the certified utility bounds, and only then the
/// enumeration (with early exit once a witness is found).
pub fn brn_decision(instance: &BrnInstance, config: &SolverConfig) -> Result<bool, Error> {
    let BrnInstance {
        reference,
        schedule,
        threshold,
    } = instance;
    if let Some(result) = closed_form_best_response(reference, schedule)? {
        return Ok(result.utility >= *threshold);
    }
    if let Ok((lower, upper)) = schedule.br_utility_bounds(reference) {
        if *threshold > upper {
            return Ok(false);
        }
        if *threshold <= lower {
            return Ok(true);
        }
    }
    let mut cfg = config.clone();
    cfg.want_all = false;
    let run = run_search(reference, schedule, &cfg, Some(*threshold))?;
    if run.stopped {
        return Ok(true);
    }
    let best_value = run.best.map(|(v, _)| v).unwrap_or(0);
    Ok(Rational::new(best_value, run.scaled.denominator) >= *threshold)
}

// ---------------------------------------------------------------------------
// closed forms
// ---------------------------------------------------------------------------

fn closed(
    graph: Graph,
    reference: &Graph,
    schedule: &BenefitSchedule,
    rule: &str,
) -> Result<Option<BrResult>, Error> {
    let utility = schedule.conditional_utility(&graph, reference)?;
    Ok(Some(BrResult {
        graph,
        utility,
        certificate: Certificate::ClosedForm(rule.to_string()),
        all_optima: None,
    }))
}

/// Certified best response without search, when the reference's shape admits
/// one. Rules are tried in a fixed order; `None` means no rule applies (the
/// caller should fall back to the exhaustive search).
pub fn closed_form_best_response(
    reference: &Graph,
    schedule: &BenefitSchedule,
) -> Result<Option<BrResult>, Error> {
    let n = reference.n();
    schedule.ensure_covers(n)?;

    // An edgeless reference earns nothing; building anything only costs.
    if reference.edge_count() == 0 {
        return closed(Graph::empty(n)?, reference, schedule, "empty-reference");
    }

    let b1 = schedule.b(1)?;
    let c = schedule.cost();

    // Below the low-cost boundary every reference edge is worth building
    // directly: the unique optimum is the reference itself.
    if schedule.values().len() >= 2 && schedule.classify()? == CostClass::Low {
        return closed(reference.clone(), reference, schedule, "low-cost-copy");
    }

    // Cost above b(1) + alpha * b(2) forces the empty response: no subset of
    // nodes is dense enough to pay for its own connectivity.
    if schedule.values().len() >= 2 && n <= DENSITY_MAX_NODES {
        let alpha = reference.edge_density_alpha()?;
        if c > b1 + alpha * schedule.b(2)? {
            return closed(Graph::empty(n)?, reference, schedule, "density-empty");
        }
    }

    // Forest references split cleanly on c versus b(1).
    if reference.is_forest() {
        return if c < b1 {
            closed(reference.clone(), reference, schedule, "forest-copy")
        } else if c > b1 {
            closed(Graph::empty(n)?, reference, schedule, "forest-empty")
        } else {
            // both the copy and the empty graph are optimal at zero utility;
            // the canonical (least) choice is the empty graph
            closed(Graph::empty(n)?, reference, schedule, "forest-tie-empty")
        };
    }

    let class = if schedule.values().len() >= 2 {
        Some(schedule.classify()?)
    } else {
        None
    };

    if class == Some(CostClass::Medium) {
        // A spanning forest that 2-spans the reference is optimal in the
        // medium regime. An undecided search (cap) just skips the rule.
        match reference.find_2spanner_forest() {
            Ok(Some(forest)) => {
                return closed(forest, reference, schedule, "spanner-forest");
            }
            Ok(None) => {}
            Err(Error::SpanningTreeCapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        if let Some(center) = reference.star_center() {
            return closed(Graph::star(n, center)?, reference, schedule, "star-hub");
        }
    }

    // Complete reference: hub-or-empty split at b(1) + (n-2)/2 * b(2).
    if n >= 2 && reference.edge_count() == n * (n - 1) / 2 && schedule.values().len() >= 2 {
        let threshold = b1 + Rational::new(n as i128 - 2, 2) * schedule.b(2)?;
        return if c < threshold {
            closed(Graph::star(n, 0)?, reference, schedule, "complete-star")
        } else if c > threshold {
            closed(Graph::empty(n)?, reference, schedule, "complete-empty")
        } else {
            closed(Graph::empty(n)?, reference, schedule, "complete-tie-empty")
        };
    }

    Ok(None)
}

// ---------------------------------------------------------------------------
// decompositions
// ---------------------------------------------------------------------------

/// Solves each reference component independently and unions the answers.
///
/// Sound only when no optimum routes a path through a foreign component:
/// requires `b(1) < c` and every component to be a clique or cliques sharing
/// a hub (shapes whose induced subgraphs all carry 2-spanner forests).
/// Anything else is refused rather than guessed.
pub fn decompose_and_solve(
    reference: &Graph,
    schedule: &BenefitSchedule,
    choice: SolverChoice,
    config: &SolverConfig,
) -> Result<BrResult, Error> {
    let n = reference.n();
    schedule.ensure_covers(n)?;
    if reference.edge_count() == 0 {
        let empty = Graph::empty(n)?;
        let utility = schedule.conditional_utility(&empty, reference)?;
        return Ok(BrResult {
            graph: empty,
            utility,
            certificate: Certificate::ClosedForm("component-split".into()),
            all_optima: None,
        });
    }
    if schedule.b(1)? >= schedule.cost() {
        return Err(Error::SplitRegime);
    }
    let components = reference.components();
    for comp in &components {
        if reference.hub_clique_decomposition(*comp).is_none() {
            return Err(Error::UnsupportedShape);
        }
    }
    let mut combined = Graph::empty(n)?;
    let mut heuristic = false;
    let mut parts: Vec<String> = Vec::new();
    for comp in &components {
        let induced = reference.induced_subgraph(*comp)?;
        if induced.graph.edge_count() == 0 {
            continue;
        }
        let sub = solve_best_response(&induced.graph, schedule, choice, config)?;
        heuristic |= !sub.certificate.is_optimal();
        let desc = sub.certificate.describe();
        if !parts.contains(&desc) {
            parts.push(desc);
        }
        for (a, b) in sub.graph.edges() {
            combined.insert_edge(induced.to_global(a), induced.to_global(b));
        }
    }
    let utility = schedule.conditional_utility(&combined, reference)?;
    let certificate = if heuristic {
        Certificate::Heuristic
    } else {
        Certificate::ClosedForm(format!("component-split[{}]", parts.join(",")))
    };
    Ok(BrResult {
        graph: combined,
        utility,
        certificate,
        all_optima: None,
    })
}

/// Peels degree-1 nodes, solves the 2-core with the inner solver, then
/// re-attaches each peeled leaf: with its edge when `b(1) > c`, as an isolated
/// node when `b(1) <= c` (at `b(1) = c` both are optimal; the isolated choice
/// is canonical and recorded in the certificate).
pub fn peel_and_solve(
    reference: &Graph,
    schedule: &BenefitSchedule,
    choice: SolverChoice,
    config: &SolverConfig,
) -> Result<BrResult, Error> {
    let n = reference.n();
    schedule.ensure_covers(n)?;
    let peeling = reference.two_core_peel();
    let mut layer = Graph::empty(n)?;
    let mut heuristic = false;
    let mut inner_desc = String::from("trivial-core");

    let active = peeling.core.non_isolated();
    if !active.is_empty() {
        let induced = peeling.core.induced_subgraph(active)?;
        let sub = solve_best_response(&induced.graph, schedule, choice, config)?;
        heuristic = !sub.certificate.is_optimal();
        inner_desc = sub.certificate.describe();
        for (a, b) in sub.graph.edges() {
            layer.insert_edge(induced.to_global(a), induced.to_global(b));
        }
    }

    let mut tie = false;
    if !peeling.removals.is_empty() {
        let b1 = schedule.b(1)?;
        let c = schedule.cost();
        tie = b1 == c;
        if b1 > c {
            for &(leaf, nbr) in peeling.removals.iter().rev() {
                layer.insert_edge(leaf, nbr);
            }
        }
    }

    let utility = schedule.conditional_utility(&layer, reference)?;
    let certificate = if heuristic {
        Certificate::Heuristic
    } else {
        let marker = if tie { "peel[ties-isolated]" } else { "peel" };
        Certificate::ClosedForm(format!("{marker}+{inner_desc}"))
    };
    Ok(BrResult {
        graph: layer,
        utility,
        certificate,
        all_optima: None,
    })
}

// ---------------------------------------------------------------------------
// greedy baseline
// ---------------------------------------------------------------------------

/// One applied hill-climbing step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyMove {
    pub added: bool,
    pub edge: (usize, usize),
    /// Exact utility after applying the move.
    pub utility: Rational,
}

/// Single-edge add/remove hill climbing until no move strictly improves.
/// Ties go to the canonically least edge. Terminates because the utility
/// strictly increases over a finite space. No optimality claim.
pub fn greedy_local_search(
    start: &Graph,
    reference: &Graph,
    schedule: &BenefitSchedule,
) -> Result<(Graph, Vec<GreedyMove>), Error> {
    if start.n() != reference.n() {
        return Err(Error::NodeCountMismatch {
            left: start.n(),
            right: reference.n(),
        });
    }
    let n = reference.n();
    schedule.ensure_covers(n)?;
    let mut current = start.clone();
    let mut current_value = schedule.conditional_utility(&current, reference)?;
    let mut trace = Vec::new();
    loop {
        let mut best: Option<(Rational, usize, usize, bool)> = None;
        for a in 0..n {
            for b in a + 1..n {
                let adding = !current.has_edge(a, b);
                let candidate = if adding {
                    current.with_edge(a, b)
                } else {
                    current.without_edge(a, b)
                };
                let value = schedule.conditional_utility(&candidate, reference)?;
                if value > current_value && best.as_ref().is_none_or(|(bv, ..)| value > *bv) {
                    best = Some((value, a, b, adding));
                }
            }
        }
        match best {
            Some((value, a, b, added)) => {
                if added {
                    current.insert_edge(a, b);
                } else {
                    current.delete_edge(a, b);
                }
                current_value = value;
                trace.push(GreedyMove {
                    added,
                    edge: (a, b),
                    utility: value,
                });
            }
            None => break,
        }
    }
    Ok((current, trace))
}
