//! Command-line surface: braid parsing, linking graphs, validation, twist
//! orders, surfaces, invariants, the Burau oracle, graph moves, example
//! generators, plane-isomorphism tests and the census engine.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use checker::braid::{brick_diagram, linking_graph_with_slopes, parse_braid};
use checker::census::{census, class_counts, CensusOptions};
use checker::coxeter::twist_order;
use checker::invariants::fingerprint;
use checker::moves;
use checker::openbook::surface_summary;
use checker::oracle;
use checker::plane::{CheckerboardGraph, CodeMode};
use checker::Error;

#[derive(Parser)]
#[command(name = "checker", version, about = "Open books and exact link invariants of positive braid words and checkerboard graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Path to a graph JSON file, or a braid word whose linking graph is used.
    input: Option<String>,
    /// Braid word given explicitly.
    #[arg(long, conflicts_with = "input")]
    braid: Option<String>,
}

impl GraphInput {
    fn load(&self) -> Result<CheckerboardGraph, Error> {
        if let Some(word) = &self.braid {
            let w = parse_braid(word)?;
            return Ok(checker::braid::linking_graph(&brick_diagram(&w)));
        }
        let Some(input) = &self.input else {
            return Err(Error::Parse("missing input".into()));
        };
        load_graph(input)
    }
}

fn load_graph(input: &str) -> Result<CheckerboardGraph, Error> {
    if Path::new(input).exists() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| Error::Json(format!("{input}: {e}")))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Json(format!("{input}: {e}")))?;
        CheckerboardGraph::from_json(&value)
    } else {
        let w = parse_braid(input)?;
        Ok(checker::braid::linking_graph(&brick_diagram(&w)))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a positive braid word and echo its normal form.
    Parse { word: String },
    /// Linking graph of a braid word, as JSON (default) or DOT.
    LinkingGraph {
        word: String,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check the two checkerboard conditions; exit 1 when invalid.
    Validate(GraphInput),
    /// Twist order (canonical vertex enumeration) of a connected graph.
    TwistOrder(GraphInput),
    /// Page surface summary: Euler characteristic, boundary, Betti, genus.
    Surface(GraphInput),
    /// Exact invariants: Alexander polynomial, signature, determinant,
    /// genus, components.
    Invariants(GraphInput),
    /// Independent Burau-based invariants of a braid closure.
    Oracle { word: String },
    /// Graph moves; output is the moved graph as JSON.
    #[command(subcommand)]
    Move(MoveCommand),
    /// Example generators.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Plane-isomorphism of two graphs.
    Isomorphic {
        a: String,
        b: String,
        #[arg(long, conflicts_with = "unoriented")]
        oriented: bool,
        #[arg(long)]
        unoriented: bool,
        #[arg(long)]
        mirror: bool,
    },
    /// Census of prime positive braid knots up to a genus bound.
    Census {
        #[arg(long)]
        genus: u32,
        /// Worker threads; defaults to CHECKER_JOBS or all cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// JSONL output file (stdout when omitted).
        #[arg(long)]
        out: Option<String>,
        /// Optional CSV summary (genus, records, fingerprint classes).
        #[arg(long)]
        csv: Option<String>,
    },
}

#[derive(Subcommand)]
enum MoveCommand {
    /// Flip a bridge; the closure becomes a positive mutant.
    ReverseBridge {
        input: String,
        #[arg(long)]
        edge: u32,
    },
    /// Reverse every edge; the closure becomes the inverse link.
    ReverseAll { input: String },
    /// Flip a bridge and mirror the component at its head.
    ReflectReverse {
        input: String,
        #[arg(long)]
        edge: u32,
    },
    /// All cyclic rearrangements of the branches at a cut vertex.
    Mutants {
        input: String,
        #[arg(long)]
        vertex: u32,
    },
    /// Reverse the rotations at one bipartition class of a tree.
    HalfReverse {
        input: String,
        /// Comma-separated vertex ids covering each edge exactly once.
        #[arg(long, value_delimiter = ',')]
        vertices: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Standard and alternative words for the torus link T(p,q).
    Torus { p: u32, q: u32 },
    /// Coherently directed plane cycle.
    Cycle { n: u32 },
    /// Directed path.
    Path { n: u32 },
    /// Star with k edges.
    Star { k: u32 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::ParameterRange(_) | Error::Json(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Parse { word } => {
            let w = parse_braid(&word)?;
            println!(
                "{}",
                serde_json::json!({"strands": w.strands(), "letters": w.letters()})
            );
        }
        Command::LinkingGraph { word, dot, json, out } => {
            let w = parse_braid(&word)?;
            let (g, slopes) = linking_graph_with_slopes(&brick_diagram(&w));
            let text = if dot && !json {
                g.to_dot(Some(&slopes))
            } else {
                format!("{}\n", g.to_json())
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Error::Json(format!("{path}: {e}")))?,
                None => print!("{text}"),
            }
        }
        Command::Validate(input) => {
            let g = input.load()?;
            let report = g.validate();
            println!("{}", report.to_json());
            if !report.valid() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::TwistOrder(input) => {
            let g = input.load()?;
            let order = twist_order(&g)?;
            println!("{}", serde_json::json!({"order": order.0}));
        }
        Command::Surface(input) => {
            let g = input.load()?;
            let s = surface_summary(&g)?;
            println!(
                "{}",
                serde_json::json!({
                    "euler": s.euler,
                    "boundary": s.boundary,
                    "betti1": s.betti1,
                    "genus": s.genus,
                    "components": s.components,
                })
            );
        }
        Command::Invariants(input) => {
            let g = input.load()?;
            println!("{}", fingerprint(&g)?.to_json());
        }
        Command::Oracle { word } => {
            let w = parse_braid(&word)?;
            let alexander = oracle::alexander_closure(&w);
            let components = oracle::component_count(&w);
            let genus = oracle::genus_from_word(&w).ok();
            println!(
                "{}",
                serde_json::json!({
                    "alexander": alexander.to_json(),
                    "components": components,
                    "betti1": genus.map(|(b, _)| b),
                    "genus": genus.map(|(_, g)| g),
                })
            );
        }
        Command::Move(cmd) => {
            let graphs: Vec<CheckerboardGraph> = match cmd {
                MoveCommand::ReverseBridge { input, edge } => {
                    vec![moves::reverse_bridge(&load_graph(&input)?, edge)?]
                }
                MoveCommand::ReverseAll { input } => {
                    vec![moves::reverse_all(&load_graph(&input)?)]
                }
                MoveCommand::ReflectReverse { input, edge } => {
                    vec![moves::reflect_component_and_reverse(&load_graph(&input)?, edge)?]
                }
                MoveCommand::Mutants { input, vertex } => {
                    moves::cut_vertex_mutants(&load_graph(&input)?, vertex)?
                }
                MoveCommand::HalfReverse { input, vertices } => {
                    let set: BTreeSet<u32> = vertices.into_iter().collect();
                    vec![moves::tree_half_reverse(&load_graph(&input)?, &set)?]
                }
            };
            for g in graphs {
                println!("{}", g.to_json());
            }
        }
        Command::Generate(cmd) => match cmd {
            GenerateCommand::Torus { p, q } => {
                let (standard, alternative) = moves::torus_words(p, q)?;
                println!(
                    "{}",
                    serde_json::json!({
                        "standard": standard.text(),
                        "standard_strands": standard.strands(),
                        "alternative": alternative.text(),
                        "alternative_strands": alternative.strands(),
                    })
                );
            }
            GenerateCommand::Cycle { n } => println!("{}", moves::cycle_graph(n)?.to_json()),
            GenerateCommand::Path { n } => println!("{}", moves::path_graph(n)?.to_json()),
            GenerateCommand::Star { k } => println!("{}", moves::star(k)?.to_json()),
        },
        Command::Isomorphic { a, b, oriented, unoriented, mirror } => {
            let ga = load_graph(&a)?;
            let gb = load_graph(&b)?;
            let mode = CodeMode { oriented: oriented || !unoriented, mirror };
            let equal = ga.canonical_code(mode)? == gb.canonical_code(mode)?;
            println!("{}", if equal { "isomorphic" } else { "not isomorphic" });
        }
        Command::Census { genus, jobs, out, csv } => {
            let jobs = jobs
                .or_else(|| std::env::var("CHECKER_JOBS").ok().and_then(|v| v.parse().ok()))
                .unwrap_or(0);
            let records = census(&CensusOptions { max_genus: genus, jobs })?;
            let mut jsonl = String::new();
            for r in &records {
                jsonl.push_str(&r.to_json().to_string());
                jsonl.push('\n');
            }
            match out {
                Some(path) => std::fs::write(&path, &jsonl)
                    .map_err(|e| Error::Json(format!("{path}: {e}")))?,
                None => {
                    std::io::stdout()
                        .write_all(jsonl.as_bytes())
                        .map_err(|e| Error::Internal(e.to_string()))?;
                }
            }
            let counts = class_counts(&records);
            let mut per_genus: BTreeMap<u32, usize> = BTreeMap::new();
            for r in &records {
                *per_genus.entry(r.genus).or_insert(0) += 1;
            }
            let mut csv_text = String::from("genus,records,classes\n");
            for (g, classes) in &counts {
                csv_text.push_str(&format!("{g},{},{classes}\n", per_genus[g]));
            }
            if let Some(path) = csv {
                std::fs::write(&path, &csv_text)
                    .map_err(|e| Error::Json(format!("{path}: {e}")))?;
            }
            for (g, classes) in &counts {
                eprintln!("genus {g}: {} records, {classes} fingerprint classes", per_genus[g]);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
