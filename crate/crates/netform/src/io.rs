//! JSON file formats and report plumbing for the batch CLI.
//!
//! Graphs travel as `{"n": int, "edges": [[i, j], ...]}` with `i < j`
//! required; schedules as `{"values": [...], "cost": ...}` where numbers may
//! be strings to keep them exact; scenarios bundle a node count, one schedule
//! per player, and optional initial layers. All emitted JSON has sorted keys
//! and canonical rational strings, so identical inputs produce byte-identical
//! reports.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::game::{DynamicsOutcome, LayerProfile, NashReport, Player, VerifyStatus};
use crate::graph::Graph;
use crate::rational::{parse_rational, rational_from_json, render_rational, Rational};
use crate::schedule::BenefitSchedule;
use crate::solver::{BrResult, Certificate, GreedyMove, SolverConfig};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_object<'v>(value: &'v Value, what: &str) -> Result<&'v Map<String, Value>, Error> {
    value
        .as_object()
        .ok_or_else(|| parse_err(format!("{what} must be a JSON object")))
}

fn get_usize(map: &Map<String, Value>, key: &str, what: &str) -> Result<usize, Error> {
    map.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| parse_err(format!("{what} needs an unsigned integer field {key:?}")))
}

// ---------------------------------------------------------------------------
// graphs
// ---------------------------------------------------------------------------

pub fn parse_graph_json(value: &Value) -> Result<Graph, Error> {
    let obj = as_object(value, "graph")?;
    let n = get_usize(obj, "n", "graph")?;
    let raw_edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("graph needs an \"edges\" array"))?;
    let mut edges = Vec::with_capacity(raw_edges.len());
    for e in raw_edges {
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| parse_err("each edge must be a two-element array"))?;
        let a = pair[0]
            .as_u64()
            .ok_or_else(|| parse_err("edge endpoints must be unsigned integers"))?
            as usize;
        let b = pair[1]
            .as_u64()
            .ok_or_else(|| parse_err("edge endpoints must be unsigned integers"))?
            as usize;
        if a >= b {
            return Err(parse_err(format!(
                "edge [{a}, {b}] must list the smaller endpoint first"
            )));
        }
        edges.push((a, b));
    }
    Graph::from_edges(n, &edges).map_err(|e| parse_err(format!("invalid graph: {e}")))
}

pub fn graph_to_json(g: &Graph) -> Value {
    json!({
        "n": g.n(),
        "edges": g.edges().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// schedules and scenarios
// ---------------------------------------------------------------------------

pub fn parse_schedule_json(value: &Value) -> Result<BenefitSchedule, Error> {
    let obj = as_object(value, "schedule")?;
    let raw_values = obj
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("schedule needs a \"values\" array"))?;
    let values = raw_values
        .iter()
        .map(rational_from_json)
        .collect::<Result<Vec<Rational>, Error>>()?;
    let cost = rational_from_json(
        obj.get("cost")
            .ok_or_else(|| parse_err("schedule needs a \"cost\" field"))?,
    )?;
    BenefitSchedule::new(values, cost).map_err(|e| parse_err(format!("invalid schedule: {e}")))
}

pub fn schedule_to_json(s: &BenefitSchedule) -> Value {
    json!({
        "values": s.values().iter().map(|v| Value::String(render_rational(v))).collect::<Vec<_>>(),
        "cost": render_rational(&s.cost()),
    })
}

/// A parsed game scenario: node count, players, optional starting profile.
pub struct Scenario {
    pub n: usize,
    pub players: Vec<Player>,
    pub initial_layers: Option<LayerProfile>,
}

pub fn parse_scenario_json(value: &Value) -> Result<Scenario, Error> {
    let obj = as_object(value, "scenario")?;
    let n = get_usize(obj, "n", "scenario")?;
    let raw_players = obj
        .get("players")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("scenario needs a \"players\" array"))?;
    let mut players = Vec::with_capacity(raw_players.len());
    for (i, p) in raw_players.iter().enumerate() {
        let schedule = parse_schedule_json(p)?;
        players
            .push(Player::new(i, schedule, n).map_err(|e| parse_err(format!("player {i}: {e}")))?);
    }
    let initial_layers = match obj.get("initial_layers") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => {
            let layers = items
                .iter()
                .map(parse_graph_json)
                .collect::<Result<Vec<Graph>, Error>>()?;
            Some(
                LayerProfile::new(n, layers)
                    .map_err(|e| parse_err(format!("invalid initial layers: {e}")))?,
            )
        }
        Some(other) => {
            return Err(parse_err(format!(
                "\"initial_layers\" must be an array of graphs, got {other}"
            )))
        }
    };
    if let Some(profile) = &initial_layers {
        if profile.layers.len() != players.len() {
            return Err(parse_err(format!(
                "{} initial layers for {} players",
                profile.layers.len(),
                players.len()
            )));
        }
    }
    Ok(Scenario {
        n,
        players,
        initial_layers,
    })
}

pub fn scenario_to_json(
    n: usize,
    schedules: &[BenefitSchedule],
    layers: Option<&LayerProfile>,
) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(n));
    obj.insert(
        "players".into(),
        Value::Array(schedules.iter().map(schedule_to_json).collect()),
    );
    if let Some(profile) = layers {
        obj.insert(
            "initial_layers".into(),
            Value::Array(profile.layers.iter().map(graph_to_json).collect()),
        );
    }
    Value::Object(obj)
}

// ---------------------------------------------------------------------------
// solver config
// ---------------------------------------------------------------------------

pub fn parse_solver_config_json(value: &Value) -> Result<SolverConfig, Error> {
    let obj = as_object(value, "solver config")?;
    let mut cfg = SolverConfig::default();
    for (key, v) in obj {
        match key.as_str() {
            "max_n" => {
                cfg.max_n = v
                    .as_u64()
                    .ok_or_else(|| parse_err("\"max_n\" must be an unsigned integer"))?
                    as usize
            }
            "max_candidates" => {
                cfg.max_candidates = v
                    .as_u64()
                    .ok_or_else(|| parse_err("\"max_candidates\" must be an unsigned integer"))?
            }
            "workers" => {
                cfg.workers = v
                    .as_u64()
                    .ok_or_else(|| parse_err("\"workers\" must be an unsigned integer"))?
                    as usize
            }
            "want_all" => {
                cfg.want_all = v
                    .as_bool()
                    .ok_or_else(|| parse_err("\"want_all\" must be a boolean"))?
            }
            other => return Err(parse_err(format!("unknown solver config key {other:?}"))),
        }
    }
    Ok(cfg)
}

pub fn solver_config_to_json(cfg: &SolverConfig) -> Value {
    json!({
        "max_n": cfg.max_n,
        "max_candidates": cfg.max_candidates,
        "workers": cfg.workers,
        "want_all": cfg.want_all,
    })
}

// ---------------------------------------------------------------------------
// report fragments
// ---------------------------------------------------------------------------

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(render_rational(r))
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    Value::String(match c {
        Certificate::Exhaustive => "EXHAUSTIVE".to_string(),
        Certificate::ClosedForm(rule) => format!("CLOSED_FORM:{rule}"),
        Certificate::Heuristic => "HEURISTIC".to_string(),
    })
}

pub fn br_result_to_json(result: &BrResult) -> Value {
    let mut obj = Map::new();
    obj.insert("graph".into(), graph_to_json(&result.graph));
    obj.insert("utility".into(), rational_to_json(&result.utility));
    obj.insert(
        "certificate".into(),
        certificate_to_json(&result.certificate),
    );
    if let Some(optima) = &result.all_optima {
        obj.insert(
            "all_optima".into(),
            Value::Array(optima.iter().map(graph_to_json).collect()),
        );
    }
    Value::Object(obj)
}

pub fn nash_report_to_json(report: &NashReport) -> Value {
    let players: Vec<Value> = report
        .verdicts
        .iter()
        .map(|v| {
            let mut obj = Map::new();
            obj.insert("player".into(), json!(v.player));
            obj.insert(
                "status".into(),
                json!(match v.status {
                    VerifyStatus::Verified => "verified",
                    VerifyStatus::Failed => "failed",
                    VerifyStatus::Unverifiable => "unverifiable",
                }),
            );
            obj.insert("achieved".into(), rational_to_json(&v.achieved));
            obj.insert(
                "optimal".into(),
                v.certified_optimal
                    .as_ref()
                    .map(rational_to_json)
                    .unwrap_or(Value::Null),
            );
            obj.insert(
                "deviation".into(),
                v.deviation
                    .as_ref()
                    .map(|(g, value)| {
                        json!({
                            "graph": graph_to_json(g),
                            "utility": rational_to_json(value),
                        })
                    })
                    .unwrap_or(Value::Null),
            );
            Value::Object(obj)
        })
        .collect();
    json!({
        "overall": report.overall,
        "players": players,
    })
}

pub fn dynamics_to_json(outcome: &DynamicsOutcome) -> Value {
    json!({
        "converged": outcome.converged,
        "rounds": outcome.rounds,
        "final_layers": outcome.profile.layers.iter().map(graph_to_json).collect::<Vec<_>>(),
        "trajectory": outcome.steps.iter().map(|s| json!({
            "round": s.round,
            "player": s.player,
            "changed": s.changed,
            "layer": graph_to_json(&s.layer),
            "utility": rational_to_json(&s.utility),
        })).collect::<Vec<_>>(),
    })
}

pub fn greedy_trace_to_json(moves: &[GreedyMove]) -> Value {
    Value::Array(
        moves
            .iter()
            .map(|m| {
                json!({
                    "op": if m.added { "add" } else { "remove" },
                    "edge": [m.edge.0, m.edge.1],
                    "utility": rational_to_json(&m.utility),
                })
            })
            .collect(),
    )
}

/// Canonical text rendering: pretty JSON plus a trailing newline. serde_json
/// objects are ordered maps, so identical values give identical bytes.
pub fn to_canonical_string(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// bundled example instances
// ---------------------------------------------------------------------------

/// Builds the two-hub graph family: nodes 0 and 1 joined to each other and to
/// every later node.
pub fn two_hub_graph(n: usize) -> Result<Graph, Error> {
    let mut edges = vec![(0, 1)];
    for v in 2..n {
        edges.push((0, v));
        edges.push((1, v));
    }
    Graph::from_edges(n, &edges)
}

/// Schedule for the greedy-gap family at size `n`: `b(1) = (n-1)/(n-2)`,
/// `b(2) = 1/2`, zero beyond, unit cost.
pub fn greedy_gap_schedule(n: usize) -> Result<BenefitSchedule, Error> {
    let mut values = vec![
        Rational::new(n as i128 - 1, n as i128 - 2),
        Rational::new(1, 2),
    ];
    values.resize(n - 1, Rational::from_integer(0));
    BenefitSchedule::new(values, Rational::from_integer(1))
}

/// Nine hub-seeking players over unit benefits: five can pay for a 3-clique,
/// one for a 4-clique, one for a 5-clique, two only for 6-cliques.
pub fn nine_high_cost_schedules(n: usize) -> Vec<BenefitSchedule> {
    [
        "1.2", "1.2", "1.2", "1.2", "1.2", "1.7", "2.2", "2.7", "2.7",
    ]
    .iter()
    .map(|c| {
        let mut values = vec![parse_rational("1").unwrap(), parse_rational("1").unwrap()];
        values.resize(n - 1, Rational::from_integer(0));
        BenefitSchedule::new(values, parse_rational(c).unwrap()).unwrap()
    })
    .collect()
}

/// Writes the bundled instances (ring reference, greedy-gap family member,
/// the 9-player hub game, and the 13-node medium+high game) plus a manifest
/// of expected headline values. Repeated calls are byte-identical. Returns
/// the file names written.
pub fn emit_example_suite(dir: &Path) -> Result<Vec<String>, Error> {
    use crate::game::{construct_high_cost_equilibrium, construct_mixed_equilibrium};

    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut write = |name: &str, value: &Value| -> Result<(), Error> {
        std::fs::write(dir.join(name), to_canonical_string(value))?;
        written.push(name.to_string());
        Ok(())
    };

    // ring reference with the benefit steps that reward a double hub
    let ring = Graph::cycle(6)?;
    let ring_schedule = BenefitSchedule::new(
        ["1.01", "0.85", "0.8", "0.2", "0.1"]
            .iter()
            .map(|s| parse_rational(s).unwrap())
            .collect(),
        parse_rational("1")?,
    )?;
    write("ring6.graph.json", &graph_to_json(&ring))?;
    write("ring6.schedule.json", &schedule_to_json(&ring_schedule))?;

    // greedy-gap family member at n = 10
    let hub_graph = two_hub_graph(10)?;
    let hub_schedule = greedy_gap_schedule(10)?;
    write("greedy_gap_n10.graph.json", &graph_to_json(&hub_graph))?;
    write(
        "greedy_gap_n10.schedule.json",
        &schedule_to_json(&hub_schedule),
    )?;

    // 9 high-cost players on 11 nodes, layers preloaded with the equilibrium
    let n_high = 11;
    let high_schedules = nine_high_cost_schedules(n_high);
    let high_players: Vec<Player> = high_schedules
        .iter()
        .enumerate()
        .map(|(i, s)| Player::new(i, s.clone(), n_high).expect("valid bundled player"))
        .collect();
    let high_profile = construct_high_cost_equilibrium(&high_players, n_high)
        .expect("bundled construction succeeds");
    write(
        "high_cost_9players.scenario.json",
        &scenario_to_json(n_high, &high_schedules, Some(&high_profile)),
    )?;

    // 2 medium + the same 9 high players on 13 nodes
    let n_mixed = 13;
    let mut mixed_schedules: Vec<BenefitSchedule> = (0..2)
        .map(|_| {
            let mut values = vec![parse_rational("1").unwrap(), parse_rational("0.5").unwrap()];
            values.resize(n_mixed - 1, Rational::from_integer(0));
            BenefitSchedule::new(values, parse_rational("0.75").unwrap()).unwrap()
        })
        .collect();
    mixed_schedules.extend(nine_high_cost_schedules(n_mixed));
    let mixed_players: Vec<Player> = mixed_schedules
        .iter()
        .enumerate()
        .map(|(i, s)| Player::new(i, s.clone(), n_mixed).expect("valid bundled player"))
        .collect();
    let mixed_profile = construct_mixed_equilibrium(&mixed_players, n_mixed)
        .expect("bundled construction succeeds");
    write(
        "mixed_11players.scenario.json",
        &scenario_to_json(n_mixed, &mixed_schedules, Some(&mixed_profile)),
    )?;

    let manifest = json!({
        "instances": [
            {
                "name": "ring6",
                "files": ["ring6.graph.json", "ring6.schedule.json"],
                "run": "netform solve-br --graph ring6.graph.json --schedule ring6.schedule.json",
                "expected": { "optimal_utility": "0.64" },
            },
            {
                "name": "greedy_gap_n10",
                "files": ["greedy_gap_n10.graph.json", "greedy_gap_n10.schedule.json"],
                "run": "netform greedy --graph greedy_gap_n10.graph.json --schedule greedy_gap_n10.schedule.json --start greedy_gap_n10.graph.json",
                "expected": { "greedy_utility": "2.5", "optimal_utility": "5.125" },
            },
            {
                "name": "high_cost_9players",
                "files": ["high_cost_9players.scenario.json"],
                "run": "netform verify-nash --scenario high_cost_9players.scenario.json --mode structural",
                "expected": { "overall": true, "anchors": [7, 5, 3, 1] },
            },
            {
                "name": "mixed_11players",
                "files": ["mixed_11players.scenario.json"],
                "run": "netform verify-nash --scenario mixed_11players.scenario.json --mode structural",
                "expected": { "overall": true, "isolated_in_high_layers": [0, 1] },
            },
        ],
    });
    write("manifest.json", &manifest)?;
    Ok(written)
}

/// Reads and parses a JSON file, folding i/o problems into parse errors (the
/// input either exists and parses, or the command cannot run).
pub fn load_json_file(path: &Path) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))
}
