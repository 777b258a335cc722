//! Batch CLI: parse JSON inputs, dispatch to the library, print one JSON
//! report on stdout.
//!
//! Exit status: 0 success, 1 domain error (bad input or violated
//! precondition), 2 resource-cap error (undecided, not "no"), 3 parse error.
//! Errors still print a JSON report with a structured "error" field.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use netform::error::{Error, ErrorKind};
use netform::game::{
    best_response_dynamics, classify_players, construct_equilibrium, high_cost_partition,
    verify_nash, LayerProfile, VerifyMode,
};
use netform::graph::Graph;
use netform::io::{
    br_result_to_json, certificate_to_json, dynamics_to_json, emit_example_suite, graph_to_json,
    greedy_trace_to_json, load_json_file, nash_report_to_json, parse_graph_json,
    parse_scenario_json, parse_schedule_json, parse_solver_config_json, rational_to_json,
    solver_config_to_json, to_canonical_string,
};
use netform::rational::parse_rational;
use netform::reduction::{verify_reduction, TtsInstance};
use netform::solver::{
    brn_decision, greedy_local_search, solve_best_response, BrnInstance, SolverChoice, SolverConfig,
};

#[derive(Parser)]
#[command(
    name = "netform",
    about = "Exact solvers and equilibrium constructions for multi-layer network formation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Structural,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a layer's utility: plain distance utility, or conditional on
    /// a reference layer when --reference is given.
    EvalUtility {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Compute a certified best response to the reference graph.
    SolveBr {
        /// The reference graph whose edges earn benefit.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Decide whether any response reaches the threshold utility.
    BrnDecide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
        /// Exact rational, e.g. "0.64" or "16/25".
        #[arg(long)]
        threshold: String,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Map a tree-spanner instance (stretch 4) onto a threshold instance,
    /// decide both sides, and report agreement plus any witness.
    ReduceTts {
        #[arg(long)]
        graph: PathBuf,
        /// Stretch bound; the mapping is defined for 4.
        #[arg(long, default_value_t = 4)]
        t: usize,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Build the matching equilibrium profile for a scenario's players.
    ConstructEq {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Verify that a scenario's initial layers form an equilibrium.
    VerifyNash {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run sequential best-response dynamics from the scenario's initial
    /// layers (empty layers when absent).
    RunDynamics {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = 20)]
        rounds: usize,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Single-edge hill climbing against a reference, from --start or empty.
    Greedy {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        start: Option<PathBuf>,
    },
    /// Write the bundled example instances and their manifest into a
    /// directory.
    EmitExamples {
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_config(path: &Option<PathBuf>) -> Result<SolverConfig, Error> {
    let mut cfg = match path {
        Some(p) => parse_solver_config_json(&load_json_file(p)?)?,
        None => SolverConfig::default(),
    };
    if let Ok(workers) = std::env::var("NETFORM_WORKERS") {
        cfg.workers = workers.parse().map_err(|_| {
            Error::Parse(format!(
                "NETFORM_WORKERS must be an integer, got {workers:?}"
            ))
        })?;
    }
    Ok(cfg)
}

fn run(command: Command) -> Result<Value, Error> {
    match command {
        Command::EvalUtility {
            graph,
            schedule,
            reference,
        } => {
            let g = parse_graph_json(&load_json_file(&graph)?)?;
            let s = parse_schedule_json(&load_json_file(&schedule)?)?;
            match reference {
                Some(path) => {
                    let reference = parse_graph_json(&load_json_file(&path)?)?;
                    let value = s.conditional_utility(&g, &reference)?;
                    Ok(json!({
                        "mode": "conditional",
                        "utility": rational_to_json(&value),
                    }))
                }
                None => {
                    let value = s.single_layer_utility(&g)?;
                    Ok(json!({
                        "mode": "single-layer",
                        "utility": rational_to_json(&value),
                    }))
                }
            }
        }
        Command::SolveBr {
            graph,
            schedule,
            config,
        } => {
            let reference = parse_graph_json(&load_json_file(&graph)?)?;
            let s = parse_schedule_json(&load_json_file(&schedule)?)?;
            let cfg = load_config(&config)?;
            let result = solve_best_response(&reference, &s, SolverChoice::Auto, &cfg)?;
            let mut report = br_result_to_json(&result);
            report
                .as_object_mut()
                .expect("report is an object")
                .insert("config".into(), solver_config_to_json(&cfg));
            Ok(report)
        }
        Command::BrnDecide {
            graph,
            schedule,
            threshold,
            config,
        } => {
            let reference = parse_graph_json(&load_json_file(&graph)?)?;
            let s = parse_schedule_json(&load_json_file(&schedule)?)?;
            let r = parse_rational(&threshold)?;
            let cfg = load_config(&config)?;
            let instance = BrnInstance::new(reference, s, r)?;
            let answer = brn_decision(&instance, &cfg)?;
            Ok(json!({
                "answer": answer,
                "threshold": rational_to_json(&instance.threshold),
                "config": solver_config_to_json(&cfg),
            }))
        }
        Command::ReduceTts { graph, t, config } => {
            let g = parse_graph_json(&load_json_file(&graph)?)?;
            let cfg = load_config(&config)?;
            let instance = TtsInstance::new(g, t)?;
            let report = verify_reduction(&instance, &cfg)?;
            Ok(json!({
                "tts": report.tts,
                "brn": report.brn,
                "agree": report.agree,
                "witness": report.witness.as_ref().map(graph_to_json).unwrap_or(Value::Null),
                "config": solver_config_to_json(&cfg),
            }))
        }
        Command::ConstructEq { scenario } => {
            let sc = parse_scenario_json(&load_json_file(&scenario)?)?;
            let (profile, kind) = construct_equilibrium(&sc.players, sc.n)?;
            let mut report = json!({
                "construction": kind,
                "n": sc.n,
                "layers": profile.layers.iter().map(graph_to_json).collect::<Vec<_>>(),
            });
            // expose the block structure when every player is high-cost
            let (low, medium, _high) = classify_players(&sc.players);
            if low.is_empty() && medium.is_empty() && !sc.players.is_empty() {
                let partition = high_cost_partition(&sc.players, sc.n)?;
                report.as_object_mut().expect("object").insert(
                    "anchors".into(),
                    Value::Array(partition.anchors.iter().map(|&a| json!(a)).collect()),
                );
            }
            Ok(report)
        }
        Command::VerifyNash {
            scenario,
            mode,
            config,
        } => {
            let sc = parse_scenario_json(&load_json_file(&scenario)?)?;
            let profile = sc.initial_layers.ok_or_else(|| {
                Error::Parse("scenario has no \"initial_layers\" to verify".into())
            })?;
            let cfg = load_config(&config)?;
            let mode = match mode {
                ModeArg::Exhaustive => VerifyMode::Exhaustive,
                ModeArg::Structural => VerifyMode::Structural,
            };
            let report = verify_nash(&profile, &sc.players, mode, &cfg)?;
            let mut value = nash_report_to_json(&report);
            value
                .as_object_mut()
                .expect("object")
                .insert("config".into(), solver_config_to_json(&cfg));
            Ok(value)
        }
        Command::RunDynamics {
            scenario,
            rounds,
            config,
        } => {
            let sc = parse_scenario_json(&load_json_file(&scenario)?)?;
            let cfg = load_config(&config)?;
            let start = match sc.initial_layers {
                Some(profile) => profile,
                None => LayerProfile::empty(sc.n, sc.players.len())?,
            };
            let outcome = best_response_dynamics(&start, &sc.players, rounds, &cfg)?;
            let mut value = dynamics_to_json(&outcome);
            value
                .as_object_mut()
                .expect("object")
                .insert("config".into(), solver_config_to_json(&cfg));
            Ok(value)
        }
        Command::Greedy {
            graph,
            schedule,
            start,
        } => {
            let reference = parse_graph_json(&load_json_file(&graph)?)?;
            let s = parse_schedule_json(&load_json_file(&schedule)?)?;
            let start_graph = match start {
                Some(path) => parse_graph_json(&load_json_file(&path)?)?,
                None => Graph::empty(reference.n())?,
            };
            let (end, trace) = greedy_local_search(&start_graph, &reference, &s)?;
            let utility = s.conditional_utility(&end, &reference)?;
            Ok(json!({
                "graph": graph_to_json(&end),
                "utility": rational_to_json(&utility),
                "certificate": certificate_to_json(&netform::solver::Certificate::Heuristic),
                "moves": greedy_trace_to_json(&trace),
            }))
        }
        Command::EmitExamples { out } => {
            let written = emit_example_suite(&out)?;
            Ok(json!({
                "directory": out.display().to_string(),
                "written": written,
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{}", to_canonical_string(&report));
            ExitCode::SUCCESS
        }
        Err(err) => {
            let kind = err.kind();
            let report = json!({
                "error": {
                    "kind": match kind {
                        ErrorKind::Domain => "domain",
                        ErrorKind::Resource => "resource-cap",
                        ErrorKind::Parse => "parse",
                    },
                    "message": err.to_string(),
                }
            });
            print!("{}", to_canonical_string(&report));
            ExitCode::from(match kind {
                ErrorKind::Domain => 1,
                ErrorKind::Resource => 2,
                ErrorKind::Parse => 3,
            })
        }
    }
}
