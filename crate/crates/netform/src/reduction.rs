//! Tree-spanner decision oracle and its mapping onto the response-threshold
//! decision problem.
//!
//! A connected graph has a *tree t-spanner* when some spanning tree keeps the
//! endpoints of every graph edge within `t` hops. For stretch 4 the question
//! maps onto a best-response threshold instance: fixed benefit steps
//! `b = (3, 2, 2, 2, 0, ...)`, cost `2`, and a threshold equal to the utility
//! a tree 4-spanner would earn. Both directions are decided here at desk
//! scale so the equivalence can be validated empirically.

use crate::error::Error;
use crate::graph::{for_each_spanning_tree, Graph, SPANNING_TREE_CAP};
use crate::rational::{rat, Rational};
use crate::schedule::BenefitSchedule;
use crate::solver::{brn_decision, exhaustive_best_response, BrnInstance, SolverConfig};

/// Tree t-spanner decision instance: a connected graph and a stretch bound.
#[derive(Clone, Debug)]
pub struct TtsInstance {
    graph: Graph,
    stretch: usize,
}

impl TtsInstance {
    pub fn new(graph: Graph, stretch: usize) -> Result<Self, Error> {
        if stretch == 0 {
            return Err(Error::NonPositiveParameter { name: "stretch" });
        }
        if !graph.is_connected() {
            return Err(Error::DisconnectedReference);
        }
        Ok(TtsInstance { graph, stretch })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn stretch(&self) -> usize {
        self.stretch
    }
}

/// Both oracle verdicts on one instance, plus the response-side witness.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub tts: bool,
    pub brn: bool,
    pub agree: bool,
    /// The optimal response graph when the threshold was met.
    pub witness: Option<Graph>,
}

/// Builds the threshold instance for a stretch-4 input on at least 6 nodes
/// (smaller inputs are trivially "yes"; decide them directly).
///
/// Schedule: `b(1) = 3`, `b(2) = b(3) = b(4) = 2`, zero beyond, cost `2`;
/// threshold `r = (n-1)(b(1)-c) + (|E|-n+1) b(2)`, all exact.
pub fn brn_instance_from_tts(instance: &TtsInstance) -> Result<BrnInstance, Error> {
    if instance.stretch != 4 {
        return Err(Error::ReductionStretch {
            t: instance.stretch,
        });
    }
    let n = instance.graph.n();
    if n < 6 {
        return Err(Error::ReductionTooSmall { n });
    }
    let mut values = vec![rat(3), rat(2), rat(2), rat(2)];
    values.resize(n - 1, rat(0));
    let schedule = BenefitSchedule::new(values, rat(2))?;
    let e1 = rat(instance.graph.edge_count() as i64);
    let nn = rat(n as i64);
    let threshold: Rational = (nn - rat(1)) * rat(1) + (e1 - nn + rat(1)) * rat(2);
    BrnInstance::new(instance.graph.clone(), schedule, threshold)
}

/// Exhaustive tree t-spanner decision: enumerate spanning trees, early-exit
/// on the first that keeps every graph edge within the stretch. Exceeding the
/// enumeration cap is an explicit undecided error, never a "no".
pub fn tts_decision(instance: &TtsInstance) -> Result<bool, Error> {
    tts_decision_capped(instance, SPANNING_TREE_CAP)
}

pub fn tts_decision_capped(instance: &TtsInstance, cap: u64) -> Result<bool, Error> {
    let g = &instance.graph;
    let t = instance.stretch;
    for_each_spanning_tree(g, cap, |tree| {
        tree.is_t_spanner_of(g, t).expect("same node count")
    })
}

/// Runs both oracles on one instance and reports whether they agree.
///
/// The response side solves the instance exactly, so on a "yes" the returned
/// witness is the canonical optimal graph; it is checked to be a spanning
/// subtree within stretch before being reported.
pub fn verify_reduction(
    instance: &TtsInstance,
    config: &SolverConfig,
) -> Result<ReductionReport, Error> {
    let tts = tts_decision(instance)?;
    let brn_inst = brn_instance_from_tts(instance)?;
    let best = exhaustive_best_response(&brn_inst.reference, &brn_inst.schedule, config)?;
    let brn = best.utility >= brn_inst.threshold;
    let witness = if brn {
        let w = best.graph;
        debug_assert!(w.is_subgraph_of(instance.graph()));
        debug_assert!(w.is_forest() && w.edge_count() == instance.graph().n() - 1);
        debug_assert!(w
            .is_t_spanner_of(instance.graph(), 4)
            .expect("same node count"));
        Some(w)
    } else {
        None
    };
    Ok(ReductionReport {
        tts,
        brn,
        agree: tts == brn,
        witness,
    })
}

/// Decision-only form of the response side, for callers that do not need the
/// witness.
pub fn brn_side_decision(instance: &TtsInstance, config: &SolverConfig) -> Result<bool, Error> {
    let brn_inst = brn_instance_from_tts(instance)?;
    brn_decision(&brn_inst, config)
}
