//! The m-player network formation game where layers are strategic
//! substitutes: each player scores its own layer against the complement of
//! the union of everyone else's, so an edge built by anyone removes that pair
//! from the others' benefit sums.
//!
//! Provides the three deterministic equilibrium constructions (low-cost
//! present, all high-cost, medium+high mix), equilibrium verification both by
//! exhaustive per-player search and by structural certificates, and
//! sequential best-response dynamics. The structural verifier is sound but
//! incomplete: it refuses on shapes it cannot certify rather than guessing.

use crate::error::Error;
use crate::graph::{Graph, NodeSet};
use crate::rational::{rat, Rational};
use crate::schedule::{BenefitSchedule, CostClass};
use crate::solver::{exhaustive_best_response, SolverConfig};

/// One designer: an id, its schedule, and derived class data.
#[derive(Clone, Debug)]
pub struct Player {
    pub id: usize,
    pub schedule: BenefitSchedule,
    pub class: CostClass,
    /// For a high-cost player, the smallest clique size (up to the game's
    /// node count) at which a hub beats staying out; `None` when no size up
    /// to `n` does, in which case the empty layer answers everything.
    pub break_even: Option<usize>,
}

impl Player {
    pub fn new(id: usize, schedule: BenefitSchedule, n: usize) -> Result<Self, Error> {
        schedule.ensure_covers(n)?;
        let class = schedule.classify()?;
        let break_even = if class == CostClass::High {
            schedule.star_break_even_index(n)?
        } else {
            None
        };
        Ok(Player {
            id,
            schedule,
            class,
            break_even,
        })
    }
}

/// A strategy profile: one layer per player, all on the same node set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerProfile {
    pub n: usize,
    pub layers: Vec<Graph>,
}

impl LayerProfile {
    pub fn new(n: usize, layers: Vec<Graph>) -> Result<Self, Error> {
        for g in &layers {
            if g.n() != n {
                return Err(Error::NodeCountMismatch {
                    left: n,
                    right: g.n(),
                });
            }
        }
        Ok(LayerProfile { n, layers })
    }

    pub fn empty(n: usize, players: usize) -> Result<Self, Error> {
        Ok(LayerProfile {
            n,
            layers: vec![Graph::empty(n)?; players],
        })
    }
}

/// The complement of the union of every layer except `i`: the pairs player
/// `i` can still earn on. With a single player this is the complete graph.
pub fn reference_graph(profile: &LayerProfile, i: usize) -> Result<Graph, Error> {
    if i >= profile.layers.len() {
        return Err(Error::BadPlayerIndex {
            index: i,
            count: profile.layers.len(),
        });
    }
    let mut union = Graph::empty(profile.n)?;
    for (j, layer) in profile.layers.iter().enumerate() {
        if j != i {
            union = union.union(layer)?;
        }
    }
    Ok(union.complement())
}

/// Player `i`'s payoff in the profile.
pub fn player_utility(
    profile: &LayerProfile,
    players: &[Player],
    i: usize,
) -> Result<Rational, Error> {
    if i >= players.len() {
        return Err(Error::BadPlayerIndex {
            index: i,
            count: players.len(),
        });
    }
    let reference = reference_graph(profile, i)?;
    players[i]
        .schedule
        .conditional_utility(&profile.layers[i], &reference)
}

/// Indices of low-, medium-, and high-cost players, each ascending.
pub fn classify_players(players: &[Player]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut low = Vec::new();
    let mut medium = Vec::new();
    let mut high = Vec::new();
    for (i, p) in players.iter().enumerate() {
        match p.class {
            CostClass::Low => low.push(i),
            CostClass::Medium => medium.push(i),
            CostClass::High => high.push(i),
        }
    }
    (low, medium, high)
}

/// Partition of high-cost players and nodes into nested blocks.
///
/// Players are sorted ascending by break-even size (ties by id); anchor
/// positions are chosen greedily from the outside in: the first anchor is the
/// largest sorted position whose break-even fits the nodes from its own
/// onward, and each further anchor repeats that rule inside the previous
/// block. Players whose break-even exceeds the node budget sit in the
/// always-empty pool.
#[derive(Clone, Debug)]
pub struct HighCostPartition {
    pub n: usize,
    /// Player indices sorted ascending by (break-even, id); sorted position
    /// `p` (1-based) owns node `p - 1`.
    pub sorted: Vec<usize>,
    /// Break-even sizes aligned with `sorted`.
    pub break_evens: Vec<usize>,
    /// Players with no usable break-even (larger than `n` or undefined).
    pub always_empty: Vec<usize>,
    /// Anchor positions `i_1 > i_2 > ... > i_r`, 1-based into `sorted`.
    pub anchors: Vec<usize>,
    /// `player_blocks[l]` holds the player indices of block `l`, `l = 0..=r`
    /// (block 0 plays empty; block `l` hubs span blocks `0..l`'s nodes).
    pub player_blocks: Vec<Vec<usize>>,
    /// `node_blocks[l]` holds block `l`'s node ids.
    pub node_blocks: Vec<Vec<usize>>,
}

impl HighCostPartition {
    /// Block level of a 1-based sorted position: the number of anchors at or
    /// above it.
    pub fn level_of_position(&self, pos: usize) -> usize {
        self.anchors.iter().filter(|&&a| a >= pos).count()
    }
}

pub fn high_cost_partition(players: &[Player], n: usize) -> Result<HighCostPartition, Error> {
    for (i, p) in players.iter().enumerate() {
        if p.class != CostClass::High {
            return Err(Error::NotAllHighCost { index: i });
        }
    }
    let pairs: Vec<(usize, Option<usize>)> = players
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p.break_even))
        .collect();
    Ok(partition_from_break_evens(&pairs, n))
}

/// Core partition over `(player index, break-even)` pairs; break-evens above
/// `n` (or absent) go to the always-empty pool.
pub(crate) fn partition_from_break_evens(
    pairs: &[(usize, Option<usize>)],
    n: usize,
) -> HighCostPartition {
    let mut usable: Vec<(usize, usize)> = Vec::new(); // (break_even, player)
    let mut always_empty = Vec::new();
    for &(idx, k) in pairs {
        match k {
            Some(k) if k <= n => usable.push((k, idx)),
            _ => always_empty.push(idx),
        }
    }
    usable.sort();
    let sorted: Vec<usize> = usable.iter().map(|&(_, idx)| idx).collect();
    let break_evens: Vec<usize> = usable.iter().map(|&(k, _)| k).collect();
    let m = sorted.len();

    let mut anchors: Vec<usize> = Vec::new();
    if m > 0 {
        // first anchor against the full node budget, later ones inside the
        // previous anchor's prefix; k_i <= budget - i + 1 rearranged to
        // k_i + i <= budget + 1 to stay in unsigned arithmetic
        let first = (1..=m).filter(|&i| break_evens[i - 1] + i <= n + 1).max();
        if let Some(i1) = first {
            anchors.push(i1);
            loop {
                let prev = *anchors.last().unwrap();
                let next = (1..prev)
                    .filter(|&i| break_evens[i - 1] + i <= prev + 1)
                    .max();
                match next {
                    Some(i) => anchors.push(i),
                    None => break,
                }
            }
        }
    }

    let r = anchors.len();
    let mut player_blocks = vec![Vec::new(); r + 1];
    let mut node_blocks = vec![Vec::new(); r + 1];
    let i1 = anchors.first().copied().unwrap_or(0);
    // block 0: sorted positions past the first anchor, nodes past it too
    player_blocks[0] = sorted.get(i1..).map(|s| s.to_vec()).unwrap_or_default();
    node_blocks[0] = (i1..n).collect();
    for l in 1..=r {
        let upper = anchors[l - 1]; // i_l
        let lower = anchors.get(l).copied().unwrap_or(0); // i_{l+1}, 0 past the end
        player_blocks[l] = sorted[lower..upper].to_vec();
        node_blocks[l] = (lower..upper.min(n)).collect();
    }

    HighCostPartition {
        n,
        sorted,
        break_evens,
        always_empty,
        anchors,
        player_blocks,
        node_blocks,
    }
}

/// Equilibrium for an all-high-cost game: the player at sorted position `p`
/// in block `l >= 1` plays a hub at node `p - 1` spanning the nodes of blocks
/// `0..l`; block 0 and the always-empty pool play empty.
pub fn construct_high_cost_equilibrium(
    players: &[Player],
    n: usize,
) -> Result<LayerProfile, Error> {
    let partition = high_cost_partition(players, n)?;
    let mut layers = vec![Graph::empty(n)?; players.len()];
    place_high_cost_layers(&partition, 0, &mut layers)?;
    LayerProfile::new(n, layers)
}

/// Writes the hub layers of a (possibly node-shifted) high-cost partition
/// into `layers`; used directly by the mixed construction with `shift > 0`.
fn place_high_cost_layers(
    partition: &HighCostPartition,
    shift: usize,
    layers: &mut [Graph],
) -> Result<(), Error> {
    let total_n = layers.first().map(|g| g.n()).unwrap_or(partition.n + shift);
    for (pos0, &player) in partition.sorted.iter().enumerate() {
        let level = partition.level_of_position(pos0 + 1);
        if level == 0 {
            continue;
        }
        let center = shift + pos0;
        let mut star = Graph::empty(total_n)?;
        for block in &partition.node_blocks[..level] {
            for &node in block {
                star.insert_edge(center, shift + node);
            }
        }
        layers[player] = star;
    }
    Ok(())
}

/// Equilibrium when at least one low-cost player exists: high-cost players
/// play empty, the j-th medium-cost player hubs node `j-1` over the later
/// nodes (nested disjoint stars), and the remaining complement edges are
/// dealt round-robin, in canonical edge order, to the low-cost players.
/// Every layer is disjoint from every other and the union is complete.
pub fn construct_low_cost_equilibrium(players: &[Player], n: usize) -> Result<LayerProfile, Error> {
    let (low, medium, _high) = classify_players(players);
    if low.is_empty() {
        return Err(Error::NoLowCostPlayer);
    }
    let mut layers = vec![Graph::empty(n)?; players.len()];
    let mut medium_union = Graph::empty(n)?;
    for (rank, &player) in medium.iter().enumerate() {
        let center = rank; // nested stars stay disjoint; ranks past n-1 play empty
        let mut star = Graph::empty(n)?;
        if center + 1 < n {
            for node in center + 1..n {
                star.insert_edge(center, node);
            }
        }
        medium_union = medium_union.union(&star)?;
        layers[player] = star;
    }
    for (t, (a, b)) in medium_union.complement().edges().into_iter().enumerate() {
        layers[low[t % low.len()]].insert_edge(a, b);
    }
    LayerProfile::new(n, layers)
}

/// Equilibrium for a medium+high game: the j-th medium-cost player hubs node
/// `j-1` over all later nodes; the high-cost players play the all-high
/// construction on the remaining `n - mu` nodes, with the medium hubs'
/// nodes isolated in every high-cost layer.
pub fn construct_mixed_equilibrium(players: &[Player], n: usize) -> Result<LayerProfile, Error> {
    let (low, medium, high) = classify_players(players);
    if !low.is_empty() {
        return Err(Error::LowCostPlayerPresent);
    }
    let mu = medium.len();
    if mu > n {
        return Err(Error::TooManyMediumPlayers { mu, n });
    }
    let mut layers = vec![Graph::empty(n)?; players.len()];
    for (rank, &player) in medium.iter().enumerate() {
        let mut star = Graph::empty(n)?;
        for node in rank + 1..n {
            star.insert_edge(rank, node);
        }
        layers[player] = star;
    }
    let pairs: Vec<(usize, Option<usize>)> =
        high.iter().map(|&i| (i, players[i].break_even)).collect();
    let partition = partition_from_break_evens(&pairs, n - mu);
    place_high_cost_layers(&partition, mu, &mut layers)?;
    LayerProfile::new(n, layers)
}

/// Picks the matching construction: low-cost present, all high-cost, or the
/// medium+high mix. Returns the profile and the construction's name.
pub fn construct_equilibrium(
    players: &[Player],
    n: usize,
) -> Result<(LayerProfile, &'static str), Error> {
    let (low, medium, _high) = classify_players(players);
    if !low.is_empty() {
        Ok((construct_low_cost_equilibrium(players, n)?, "low-cost"))
    } else if !medium.is_empty() {
        Ok((construct_mixed_equilibrium(players, n)?, "mixed"))
    } else {
        Ok((construct_high_cost_equilibrium(players, n)?, "high-cost"))
    }
}

/// How a player's layer was checked.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Exact search over every admissible deviation.
    Exhaustive,
    /// Certified optimum from the reference's shape; refuses when the shape
    /// is not recognized.
    Structural,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VerifyStatus {
    Verified,
    Failed,
    /// Structural mode only: the reference's shape carries no certificate.
    /// Never reported as a pass.
    Unverifiable,
}

#[derive(Clone, Debug)]
pub struct PlayerVerdict {
    pub player: usize,
    pub status: VerifyStatus,
    pub method: VerifyMode,
    pub achieved: Rational,
    pub certified_optimal: Option<Rational>,
    /// A strictly better response, present exactly when the check failed.
    pub deviation: Option<(Graph, Rational)>,
}

#[derive(Clone, Debug)]
pub struct NashReport {
    pub verdicts: Vec<PlayerVerdict>,
    /// True only when every player verified.
    pub overall: bool,
}

/// Certified optimal utility (and a witness achieving it) for the shapes the
/// structural rules cover, else `None`:
///
/// - low cost: any reference; the unique optimum copies it;
/// - medium cost: any reference with a spanning forest that 2-spans it;
/// - high cost: component-wise (sound because `b(1) < c` and the shapes below
///   all keep 2-spanner forests under induced subgraphs), where each
///   component is cliques sharing a hub (hub pays per blade independently)
///   or a forest (empty is uniquely optimal).
fn structural_optimum(
    reference: &Graph,
    schedule: &BenefitSchedule,
) -> Result<Option<(Rational, Graph)>, Error> {
    match schedule.classify()? {
        CostClass::Low => {
            let value = schedule.conditional_utility(reference, reference)?;
            Ok(Some((value, reference.clone())))
        }
        CostClass::Medium => match reference.find_2spanner_forest() {
            Ok(Some(forest)) => {
                let value = schedule.conditional_utility(&forest, reference)?;
                Ok(Some((value, forest)))
            }
            Ok(None) => Ok(None),
            Err(Error::SpanningTreeCapExceeded { .. }) => Ok(None),
            Err(e) => Err(e),
        },
        CostClass::High => {
            let b1 = schedule.b(1)?;
            let b2 = schedule.b(2)?;
            let c = schedule.cost();
            let mut total = rat(0);
            let mut witness = Graph::empty(reference.n())?;
            for comp in reference.components() {
                if comp.len() <= 1 {
                    continue;
                }
                if let Some(hub) = reference.hub_clique_decomposition(comp) {
                    for blade in &hub.blades {
                        let q = blade.len() as i128;
                        let gain = Rational::from_integer(q) * (b1 - c)
                            + Rational::from_integer(q * (q - 1) / 2) * b2;
                        if gain > rat(0) {
                            total += gain;
                            for node in blade.iter() {
                                witness.insert_edge(hub.hub, node);
                            }
                        }
                    }
                } else if component_is_forest(reference, comp) {
                    // empty is uniquely optimal on a sparse component
                } else {
                    return Ok(None);
                }
            }
            Ok(Some((total, witness)))
        }
    }
}

fn component_is_forest(g: &Graph, comp: NodeSet) -> bool {
    let edges: u32 = comp
        .iter()
        .map(|v| (g.neighbors(v).0 & comp.0).count_ones())
        .sum::<u32>()
        / 2;
    edges as usize == comp.len() - 1
}

/// Checks whether the profile is an equilibrium: every player's layer must
/// match the optimal utility against its reference. Structural mode refuses
/// (per player) when no certificate applies; it never passes on faith.
pub fn verify_nash(
    profile: &LayerProfile,
    players: &[Player],
    mode: VerifyMode,
    config: &SolverConfig,
) -> Result<NashReport, Error> {
    if profile.layers.len() != players.len() {
        return Err(Error::LayerCountMismatch {
            layers: profile.layers.len(),
            players: players.len(),
        });
    }
    let mut verdicts = Vec::with_capacity(players.len());
    for i in 0..players.len() {
        let reference = reference_graph(profile, i)?;
        let achieved = players[i]
            .schedule
            .conditional_utility(&profile.layers[i], &reference)?;
        let verdict = match mode {
            VerifyMode::Exhaustive => {
                let best = exhaustive_best_response(&reference, &players[i].schedule, config)?;
                let ok = achieved == best.utility;
                PlayerVerdict {
                    player: i,
                    status: if ok {
                        VerifyStatus::Verified
                    } else {
                        VerifyStatus::Failed
                    },
                    method: mode,
                    achieved,
                    certified_optimal: Some(best.utility),
                    deviation: if ok {
                        None
                    } else {
                        Some((best.graph, best.utility))
                    },
                }
            }
            VerifyMode::Structural => match structural_optimum(&reference, &players[i].schedule)? {
                Some((optimal, witness)) => {
                    let ok = achieved == optimal;
                    PlayerVerdict {
                        player: i,
                        status: if ok {
                            VerifyStatus::Verified
                        } else {
                            VerifyStatus::Failed
                        },
                        method: mode,
                        achieved,
                        certified_optimal: Some(optimal),
                        deviation: if ok { None } else { Some((witness, optimal)) },
                    }
                }
                None => PlayerVerdict {
                    player: i,
                    status: VerifyStatus::Unverifiable,
                    method: mode,
                    achieved,
                    certified_optimal: None,
                    deviation: None,
                },
            },
        };
        verdicts.push(verdict);
    }
    let overall = verdicts.iter().all(|v| v.status == VerifyStatus::Verified);
    Ok(NashReport { verdicts, overall })
}

/// One player update in the sequential dynamics.
#[derive(Clone, Debug)]
pub struct DynamicsStep {
    pub round: usize,
    pub player: usize,
    pub layer: Graph,
    pub utility: Rational,
    pub changed: bool,
}

#[derive(Clone, Debug)]
pub struct DynamicsOutcome {
    pub steps: Vec<DynamicsStep>,
    pub profile: LayerProfile,
    /// True when a full round passed with no layer changing. Convergence is
    /// measured, never assumed.
    pub converged: bool,
    pub rounds: usize,
}

/// Sequential best-response dynamics: players update in ascending id order,
/// each replacing its layer with the canonical exhaustive best response to
/// the current reference. Stops after a full no-change round or after
/// `max_rounds`.
pub fn best_response_dynamics(
    initial: &LayerProfile,
    players: &[Player],
    max_rounds: usize,
    config: &SolverConfig,
) -> Result<DynamicsOutcome, Error> {
    if initial.layers.len() != players.len() {
        return Err(Error::LayerCountMismatch {
            layers: initial.layers.len(),
            players: players.len(),
        });
    }
    let mut profile = initial.clone();
    let mut steps = Vec::new();
    let mut converged = false;
    let mut rounds = 0;
    for round in 1..=max_rounds {
        rounds = round;
        let mut any_change = false;
        for i in 0..players.len() {
            let reference = reference_graph(&profile, i)?;
            let best = exhaustive_best_response(&reference, &players[i].schedule, config)?;
            let changed = best.graph != profile.layers[i];
            any_change |= changed;
            profile.layers[i] = best.graph.clone();
            steps.push(DynamicsStep {
                round,
                player: i,
                layer: best.graph,
                utility: best.utility,
                changed,
            });
        }
        if !any_change {
            converged = true;
            break;
        }
    }
    Ok(DynamicsOutcome {
        steps,
        profile,
        converged,
        rounds,
    })
}
