//! `wrg`: build, analyse, recognise, draw and stab witness rectangle graphs.
//!
//! Exit status: 0 on success, 2 on invalid input, 3 when the answer is
//! negative (the certificate is printed on stdout).

mod render;

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wrg_core::analyze::{feasibility_report, find_independent_triple, Verdict};
use wrg_core::build::{build_oracle, build_sweep, Mode};
use wrg_core::graph::{Graph, GraphJson};
use wrg_core::io::{normalize_scene, scene_from_json, RawScene};
use wrg_core::realize::{
    realize_pm, realize_tree, realize_two_components, recognize_cointerval,
    recognize_two_components, RealizationJson, RealizeError, TreeOutcome,
};
use wrg_core::separate::{
    linearly_separable, mutual_complete, search_counterexample, TwoClassInstance,
};
use wrg_core::stab::{
    construct_certificate, grid_certificate, stab_exact, StabError, StabbingCertificate,
};
use wrg_core::Scene;

#[derive(Parser)]
#[command(name = "wrg", version, about = "Witness rectangle graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Sweep,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph of a scene.
    Build {
        input: Option<PathBuf>,
        #[arg(long, default_value = "pos", value_parser = parse_mode)]
        mode: Mode,
        #[arg(long, value_enum, default_value = "sweep")]
        algo: Algo,
        /// Rank coordinates instead of rejecting shared ones.
        #[arg(long)]
        tie_break: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the necessary conditions for a positive witness graph.
    Analyze {
        input: Option<PathBuf>,
        #[arg(long, required = true)]
        report: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    #[command(group(ArgGroup::new("kind").required(true).args(["cointerval", "two_component", "tree"])))]
    Recognize {
        input: Option<PathBuf>,
        #[arg(long)]
        cointerval: bool,
        #[arg(long)]
        two_component: bool,
        #[arg(long)]
        tree: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    #[command(group(ArgGroup::new("kind").required(true).args(["tree", "two_component", "pm"])))]
    Realize {
        input: Option<PathBuf>,
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        two_component: bool,
        /// Use positive and negative witnesses; works for every graph.
        #[arg(long)]
        pm: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    #[command(group(ArgGroup::new("kind").required(true).args(["construct", "exact", "grid"])))]
    Stab {
        input: Option<PathBuf>,
        #[arg(long)]
        construct: bool,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        /// Certificate for the rotated k x k grid.
        #[arg(long, value_name = "K")]
        grid: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    #[command(group(ArgGroup::new("kind").required(true).args(["check", "find_counterexample"])))]
    Mng {
        input: Option<PathBuf>,
        #[arg(long)]
        check: bool,
        #[arg(long, requires_all = ["seed", "budget"])]
        find_counterexample: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    #[command(group(ArgGroup::new("source").required(true).args(["scene", "graph"])))]
    Render {
        #[arg(long, value_name = "FILE")]
        scene: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "realization")]
        graph: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        realization: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

enum Failure {
    Invalid(String),
    Negative(Value),
    Io(String),
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(invalid)?;
            Ok(s)
        }
    }
}

fn read_graph(path: &Option<PathBuf>) -> Result<Graph, Failure> {
    let j: GraphJson = serde_json::from_str(&read_input(path)?).map_err(invalid)?;
    Graph::from_json(&j).map_err(invalid)
}

fn read_scene(path: &Option<PathBuf>) -> Result<Scene, Failure> {
    scene_from_json(&read_input(path)?).map_err(invalid)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn graph_out(g: &Graph) -> String {
    pretty(&g.to_json())
}

fn stab_cert(c: &StabbingCertificate) -> String {
    let mut v = serde_json::to_value(c).unwrap();
    if c.upper == usize::MAX {
        v["upper"] = Value::Null;
    }
    pretty(&v)
}

fn run(cmd: Command) -> Result<(String, Option<PathBuf>), Failure> {
    match cmd {
        Command::Build {
            input,
            mode,
            algo,
            tie_break,
            output,
        } => {
            let raw: RawScene = serde_json::from_str(&read_input(&input)?).map_err(invalid)?;
            let scene = normalize_scene(&raw, tie_break).map_err(invalid)?.scene;
            let g = match algo {
                Algo::Sweep => build_sweep(&scene, mode),
                Algo::Oracle => build_oracle(&scene, mode),
            }
            .map_err(invalid)?;
            Ok((graph_out(&g), output))
        }
        Command::Analyze { input, output, .. } => {
            let r = feasibility_report(&read_graph(&input)?);
            let text = pretty(&r);
            if r.verdict == Verdict::Fail {
                return Err(Failure::Negative(serde_json::to_value(&r).unwrap()));
            }
            Ok((text, output))
        }
        Command::Recognize {
            input,
            cointerval,
            two_component,
            output,
            ..
        } => {
            let g = read_graph(&input)?;
            if cointerval {
                return match recognize_cointerval(&g) {
                    Some(m) => Ok((pretty(&m), output)),
                    None => Err(Failure::Negative(json!({"cointerval": false}))),
                };
            }
            if two_component {
                let models = recognize_two_components(&g).map_err(realize_failure)?;
                let comps: Vec<Value> = models
                    .iter()
                    .map(|(v, m)| json!({"vertices": v, "intervals": m.intervals}))
                    .collect();
                let isolated: Vec<&str> = (0..g.vertex_count())
                    .filter(|&v| g.degree(v) == 0)
                    .map(|v| g.name(v))
                    .collect();
                return Ok((
                    pretty(&json!({"components": comps, "isolated": isolated})),
                    output,
                ));
            }
            if !g.is_tree() {
                return Err(invalid(RealizeError::NotATree));
            }
            match find_independent_triple(&g) {
                Some(t) => {
                    let t = t.map(|(u, v)| [g.name(u).to_string(), g.name(v).to_string()]);
                    Err(Failure::Negative(
                        json!({"certificate": "IndependentTriple", "edges": t}),
                    ))
                }
                None => Ok((pretty(&json!({"tree": true, "realizable": true})), output)),
            }
        }
        Command::Realize {
            input,
            tree,
            two_component,
            output,
            ..
        } => {
            let g = read_graph(&input)?;
            let real = if tree {
                match realize_tree(&g).map_err(realize_failure)? {
                    TreeOutcome::Realized(r) => r,
                    TreeOutcome::Certificate(t) => {
                        return Err(Failure::Negative(
                            json!({"certificate": "IndependentTriple", "edges": t}),
                        ))
                    }
                }
            } else if two_component {
                realize_two_components(&g).map_err(realize_failure)?
            } else {
                realize_pm(&g)
            };
            Ok((pretty(&real.to_json()), output))
        }
        Command::Stab {
            input,
            construct,
            exact,
            cap,
            grid,
            output,
        } => {
            if let Some(k) = grid {
                if k < 2 {
                    return Err(invalid("grid size must be at least 2"));
                }
                return Ok((stab_cert(&grid_certificate(k).map_err(invalid)?), output));
            }
            let points = read_scene(&input)?.points;
            if construct {
                return Ok((
                    stab_cert(&construct_certificate(&points).map_err(invalid)?),
                    output,
                ));
            }
            debug_assert!(exact);
            match stab_exact(&points, cap) {
                Ok(k) => Ok((
                    pretty(&json!({"instance": points, "exact": k, "lower": k, "upper": k})),
                    output,
                )),
                Err(StabError::CapExceeded(c)) => {
                    Err(Failure::Negative(json!({"exact": format!(">{c}")})))
                }
                Err(e) => Err(invalid(e)),
            }
        }
        Command::Mng {
            input,
            check,
            seed,
            budget,
            output,
            ..
        } => {
            if check {
                let inst: TwoClassInstance =
                    serde_json::from_str(&read_input(&input)?).map_err(invalid)?;
                let complete = mutual_complete(&inst).map_err(invalid)?;
                let line = linearly_separable(&inst);
                return Ok((
                    pretty(&json!({"mutual_complete": complete, "separator": line})),
                    output,
                ));
            }
            match search_counterexample(seed.unwrap(), budget.unwrap()) {
                Ok(inst) => Ok((pretty(&inst), output)),
                Err(e) => Err(Failure::Negative(
                    json!({"found": false, "reason": e.to_string()}),
                )),
            }
        }
        Command::Render {
            scene,
            graph,
            realization,
            output,
        } => {
            let (s, edges) = match (scene, graph) {
                (Some(path), _) => {
                    let s = read_scene(&Some(path))?;
                    let mode = if s.neg_witnesses.is_empty() {
                        Mode::Positive
                    } else {
                        Mode::Mixed
                    };
                    let g = build_oracle(&s, mode).map_err(invalid)?;
                    (s, g.named_edges())
                }
                (None, graph) => {
                    let g = read_graph(&graph)?;
                    let r: RealizationJson =
                        serde_json::from_str(&read_input(&realization)?).map_err(invalid)?;
                    let s = normalize_scene(&r.scene, false).map_err(invalid)?.scene;
                    let mut edges = Vec::new();
                    for (a, b) in g.named_edges() {
                        match (r.vertex_map.get(&a), r.vertex_map.get(&b)) {
                            (Some(p), Some(q)) => edges.push((p.clone(), q.clone())),
                            _ => {
                                return Err(invalid(format!(
                                    "vertex map misses an endpoint of {a}-{b}"
                                )))
                            }
                        }
                    }
                    (s, edges)
                }
            };
            Ok((render::render_svg(&s, &edges), output))
        }
    }
}

fn realize_failure(e: RealizeError) -> Failure {
    match e {
        RealizeError::NotCointerval {
            component,
            vertices,
        } => Failure::Negative(json!({
            "certificate": "NotCointerval",
            "component": component,
            "vertices": vertices,
        })),
        other => invalid(other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, path)) => match path {
            Some(p) => match fs::write(&p, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => report(Failure::Io(format!("{}: {e}", p.display()))),
            },
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    match f {
        Failure::Invalid(msg) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(2)
        }
        Failure::Negative(cert) => {
            print!("{}", pretty(&cert));
            ExitCode::from(3)
        }
        Failure::Io(msg) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(1)
        }
    }
}
