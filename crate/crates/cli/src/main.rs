//! `zigzag`: analyze reflexive oriented graphs under the zigzag metric.
//!
//! Exit codes: 0 when the answer is positive, 1 when the property fails
//! (not an absolute retract, no embedding, no retraction, no hull), 2 on
//! input or precondition errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use zigzag_core::graph::distance_matrix;
use zigzag_core::retract::{
    default_embedding_bound, embed_zigzag_product, injective_hull_search, is_absolute_retract,
    minimum_factor_embedding, obstruction_check, retraction_search, theorem_consistency, ArReport,
    HullOutcome, ObstructionReport,
};
use zigzag_core::DiGraph;

#[derive(Parser)]
#[command(
    name = "zigzag",
    version,
    about = "Zigzag distances, absolute retracts and hulls of oriented graphs"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orientation, acyclicity, obstructions and all distances.
    Analyze { file: PathBuf },
    /// Distance from X to Y as its set of minimal words.
    Distance { file: PathBuf, x: String, y: String },
    /// Absolute-retract verdict with its Helly witness.
    CheckAr { file: PathBuf },
    /// Isometric embedding into a product of zigzags.
    Embed {
        file: PathBuf,
        /// Word-length bound for disconnected pairs [default: 2|V|].
        #[arg(long)]
        bound: Option<usize>,
        /// Use the fewest zigzag factors (connected graphs only).
        #[arg(long)]
        minimize: bool,
    },
    /// Smallest absolute-retract extension inside the product embedding.
    Hull {
        file: PathBuf,
        /// Largest number of vertices to add.
        #[arg(long, default_value_t = 2)]
        max_add: usize,
    },
    /// Retraction of HOST onto its isometric subgraph SUB (matched by name).
    Retract { host: PathBuf, sub: PathBuf },
    /// Exhaustive consistency checks on all oriented graphs up to MAX_N vertices.
    Selftest {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

/// A report plus the exit code it implies.
struct Output {
    text: String,
    json: Value,
    positive: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<DiGraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let (g, warnings) = DiGraph::parse_dg(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(g)
}

fn vertex(g: &DiGraph, name: &str) -> Result<usize, String> {
    g.vertex(name).map_err(|e| e.to_string())
}

fn run(cmd: &Command) -> Result<Output, String> {
    match cmd {
        Command::Analyze { file } => analyze(&load(file)?),
        Command::Distance { file, x, y } => {
            let g = load(file)?;
            let d = zigzag_core::graph::distance(&g, vertex(&g, x)?, vertex(&g, y)?);
            Ok(Output {
                text: format!("{d}\n"),
                json: serde_json::to_value(&d).expect("json"),
                positive: true,
            })
        }
        Command::CheckAr { file } => {
            let g = load(file)?;
            let r = is_absolute_retract(&g);
            Ok(Output {
                text: ar_text(&r),
                json: serde_json::to_value(&r).expect("json"),
                positive: r.verdict,
            })
        }
        Command::Embed {
            file,
            bound,
            minimize,
        } => {
            let g = load(file)?;
            let bound = bound.unwrap_or_else(|| default_embedding_bound(&g));
            let result = embed_zigzag_product(&g, bound).and_then(|cert| {
                if !*minimize {
                    return Ok(cert);
                }
                Ok(minimum_factor_embedding(&g, cert.factor_count()).unwrap_or(cert))
            });
            Ok(match result {
                Ok(cert) => {
                    let mut text = format!(
                        "isometric embedding into {} zigzag factors\n",
                        cert.factor_count()
                    );
                    for (i, u) in cert.factors.iter().enumerate() {
                        let _ = writeln!(text, "  factor {i}: Z_{u}");
                    }
                    if let Some(b) = cert.disconnected_bound {
                        let _ = writeln!(
                            text,
                            "disconnected pairs verified against words up to length {b}"
                        );
                    }
                    text.push_str("coordinates:\n");
                    for (name, c) in cert.vertices.iter().zip(&cert.coordinates) {
                        let c: Vec<String> = c.iter().map(usize::to_string).collect();
                        let _ = writeln!(text, "  {name}: ({})", c.join(","));
                    }
                    Output {
                        text,
                        json: serde_json::to_value(&cert).expect("json"),
                        positive: true,
                    }
                }
                Err(f) => Output {
                    text: format!(
                        "not isometric: d({}, {}) = {} but the product gives {} ({})\n",
                        f.x, f.y, f.expected, f.realized, f.reason
                    ),
                    json: json!({ "failure": f }),
                    positive: false,
                },
            })
        }
        Command::Hull { file, max_add } => {
            let g = load(file)?;
            let out = injective_hull_search(&g, *max_add);
            let text = match &out {
                HullOutcome::Found { hull, added } => format!(
                    "hull with {} added vertices: {}\n{}",
                    added.len(),
                    if added.is_empty() {
                        "-".to_string()
                    } else {
                        added.join(" ")
                    },
                    hull.to_dg()
                ),
                HullOutcome::Exhausted { universe, max_add } => format!(
                    "no hull with at most {max_add} added vertices among {universe} candidates\n"
                ),
                HullOutcome::NotEmbeddable(f) => format!(
                    "not embeddable: d({}, {}) = {} ({})\n",
                    f.x, f.y, f.expected, f.reason
                ),
                HullOutcome::UniverseTooLarge { size } => {
                    format!("product universe of {size} vertices is too large to search\n")
                }
            };
            Ok(Output {
                text,
                json: out.to_json(),
                positive: out.hull().is_some(),
            })
        }
        Command::Retract { host, sub } => {
            let (h, g) = (load(host)?, load(sub)?);
            match retraction_search(&h, &g) {
                Ok(Some(r)) => {
                    let mut text = String::from("retraction:\n");
                    for (x, y) in r.pairs() {
                        let _ = writeln!(text, "  {} -> {}", h.name(x), g.name(y));
                    }
                    Ok(Output {
                        text,
                        json: json!({ "retraction": r.to_json(&h, &g) }),
                        positive: true,
                    })
                }
                Ok(None) => Ok(Output {
                    text: "no retraction\n".into(),
                    json: json!({ "retraction": null }),
                    positive: false,
                }),
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Selftest { max_n } => {
            let r = theorem_consistency(*max_n);
            let mut text = format!(
                "{} graphs, {} connected, {} absolute retracts, {} extensions retracted\n",
                r.graphs, r.connected, r.absolute_retracts, r.extensions_checked
            );
            for f in &r.failures {
                let _ = writeln!(text, "FAIL {f}");
            }
            text.push_str(if r.ok() {
                "selftest passed\n"
            } else {
                "selftest failed\n"
            });
            Ok(Output {
                text,
                json: serde_json::to_value(&r).expect("json"),
                positive: r.ok(),
            })
        }
    }
}

fn analyze(g: &DiGraph) -> Result<Output, String> {
    let d = distance_matrix(g);
    let obstructions = obstruction_check(g);
    let mut text = String::new();
    let _ = writeln!(text, "vertices: {}", g.names().join(" "));
    let _ = writeln!(text, "arcs: {}", g.arc_count());
    let _ = writeln!(text, "oriented: {}", g.is_oriented());
    let _ = writeln!(text, "acyclic: {}", g.is_acyclic());
    text.push_str(&obstruction_text(&obstructions));
    text.push_str("distances:\n");
    let mut closure = Vec::new();
    for (x, y) in d.pairs() {
        let dxy = d.get(x, y);
        let c = dxy.macneille_closure();
        let status = if c == *dxy {
            "closed".to_string()
        } else {
            format!("not closed, closure {c}")
        };
        let _ = writeln!(
            text,
            "  d({}, {}) = {dxy}  [{status}]",
            g.name(x),
            g.name(y)
        );
        closure.push(json!({
            "x": g.name(x),
            "y": g.name(y),
            "closed": c == *dxy,
            "closure": c,
        }));
    }
    Ok(Output {
        text,
        json: json!({
            "graph": g.to_json_value(),
            "oriented": g.is_oriented(),
            "acyclic": g.is_acyclic(),
            "obstructions": obstructions,
            "distances": serde_json::to_value(&d).expect("json"),
            "closure": closure,
        }),
        positive: true,
    })
}

fn obstruction_text(r: &ObstructionReport) -> String {
    if r.clean() {
        return "obstructions: none\n".into();
    }
    let mut text = String::from("obstructions:\n");
    for (a, b) in &r.two_cycles {
        let _ = writeln!(text, "  2-cycle {a} <-> {b}");
    }
    if let Some(c) = &r.directed_cycle {
        let _ = writeln!(text, "  directed cycle {}", c.join(" -> "));
    }
    for v in &r.transitivity_violations {
        let missing: Vec<String> = v.missing.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        let _ = writeln!(
            text,
            "  arc {}->{} with path {} lacking {}",
            v.arc.0,
            v.arc.1,
            v.path.join("->"),
            missing.join(", ")
        );
    }
    text
}

fn ar_text(r: &ArReport) -> String {
    let mut text = String::new();
    let verdict = if r.verdict {
        "absolute retract"
    } else {
        "not an absolute retract"
    };
    let _ = writeln!(text, "verdict: {verdict}");
    let _ = writeln!(text, "oriented: {}", r.oriented);
    let _ = writeln!(
        text,
        "2-Helly: {} ({} balls)",
        r.helly.helly, r.helly.ball_count
    );
    if let Some(w) = &r.helly.witness {
        text.push_str("Helly witness:\n");
        for b in w {
            let centers: Vec<String> = b
                .realizations
                .iter()
                .map(|(c, rad)| format!("B({c}, {rad})"))
                .collect();
            let _ = writeln!(
                text,
                "  {{{}}} = {}",
                b.members.join(", "),
                centers.join(" = ")
            );
        }
    }
    let _ = writeln!(text, "acyclic: {}", r.acyclic);
    let _ = writeln!(text, "distances closed: {}", r.all_closed);
    for p in &r.non_closed_pairs {
        let _ = writeln!(
            text,
            "  d({}, {}) = {} has closure {}",
            p.x, p.y, p.distance, p.closure
        );
    }
    if !r.anomalies.is_empty() {
        let _ = writeln!(text, "anomalies: {}", r.anomalies.join("; "));
    }
    text
}
