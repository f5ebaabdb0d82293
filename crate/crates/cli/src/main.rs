use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use aulayout::{
    aurfp_staircase, corpus, degree2_choices, degree2_extension, enumerate_area_universal, find_rels,
    outer4_completion, realize_iterative, realize_slicing, rectangular_dual, verify_theorems, AreaAssignment,
    Cardinal, ExtendedGraph, ExtendedJson, GraphJson, IterativeOptions, Layout, PlaneGraph, RealizeError,
    DEFAULT_PAIR_CAP,
};

mod error;
mod svg;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "aulayout", version, about = "Area-universal rectangular layouts of outerplanar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct Choice {
    /// Pivot vertex of degree > 2.
    #[arg(long, value_name = "V")]
    pivot: Option<u32>,
    /// Degree-2 vertex and one of its neighbors.
    #[arg(long, num_args = 2, value_names = ["D", "W"])]
    degree2: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Method {
    Rel,
    Staircase,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a graph and decide admissibility from its degree-2 census.
    Check {
        graph: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Build an extended graph.
    Extend {
        graph: PathBuf,
        #[command(flatten)]
        choice: Choice,
        #[command(flatten)]
        out: Output,
    },
    /// Build a layout from a graph or an extended graph.
    Layout {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "rel")]
        method: Method,
        #[command(flatten)]
        choice: Choice,
        #[command(flatten)]
        out: Output,
    },
    /// Resize a layout to prescribed areas.
    Realize {
        layout: PathBuf,
        #[arg(long)]
        areas: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long = "max-iters", default_value_t = 10_000)]
        max_iters: usize,
        #[command(flatten)]
        out: Output,
    },
    /// All area-universal layouts of a graph with a count summary.
    Enumerate {
        graph: PathBuf,
        #[arg(long = "modulo-reflection")]
        modulo_reflection: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive cross-check over all polygon triangulations.
    Oracle {
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        #[arg(long, default_value_t = 4)]
        nmin: u32,
        #[arg(long, default_value_t = DEFAULT_PAIR_CAP)]
        cap: usize,
        /// Write the report here (same as -o).
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Render a layout as SVG.
    Svg {
        layout: PathBuf,
        #[arg(long, default_value_t = 100)]
        scale: u32,
        #[command(flatten)]
        out: Output,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::new("BadJson", format!("{}: {e}", path.display())))
}

fn emit(out: &Output, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::new("Io", format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::new("Io", e.to_string())),
                _ => Ok(()),
            }
        }
    }
}

fn emit_json<T: Serialize>(out: &Output, value: &T) -> Result<(), CliError> {
    emit(out, &serde_json::to_string_pretty(value).expect("serializable"))
}

fn load_graph(path: &Path) -> Result<PlaneGraph, CliError> {
    Ok(PlaneGraph::from_json(&parse::<GraphJson>(path)?)?)
}

enum Input {
    Graph(PlaneGraph),
    Extended(ExtendedGraph),
}

fn load_input(path: &Path) -> Result<Input, CliError> {
    let value: Value = parse(path)?;
    let bad = |e: serde_json::Error| CliError::new("BadJson", format!("{}: {e}", path.display()));
    if value.get("attachments").is_some() {
        let json: ExtendedJson = serde_json::from_value(value).map_err(bad)?;
        Ok(Input::Extended(ExtendedGraph::from_json(&json)?))
    } else {
        let json: GraphJson = serde_json::from_value(value).map_err(bad)?;
        Ok(Input::Graph(PlaneGraph::from_json(&json)?))
    }
}

fn extend(g: &PlaneGraph, choice: &Choice) -> Result<ExtendedGraph, CliError> {
    match (choice.pivot, &choice.degree2) {
        (Some(v), _) => Ok(outer4_completion(g, v)?),
        (None, Some(dw)) => Ok(degree2_extension(g, dw[0], dw[1])?),
        (None, None) => Err(CliError::usage("either --pivot or --degree2 is required")),
    }
}

/// The `(d, w)` pair an extension was built from: `d` sits on three cardinals
/// with degree 2, `w` is its neighbor on two.
fn degree2_pair(e: &ExtendedGraph) -> Option<(u32, u32)> {
    let g = e.base();
    let d = *e.vertices_with_cardinals(3).iter().find(|&&d| g.degree(d) == 2)?;
    let w = g.neighbors(d).find(|&u| {
        let a = e.attachments(u);
        a.len() == 2 && a.contains(&Cardinal::S)
    })?;
    Some((d, w))
}

fn rel_layout(e: &ExtendedGraph) -> Result<Layout, CliError> {
    let r = find_rels(e, Some(1))?.remove(0);
    Ok(rectangular_dual(&r)?)
}

fn layout_command(input: Input, method: Method, choice: &Choice) -> Result<Value, CliError> {
    let ext = match input {
        Input::Extended(e) => e,
        Input::Graph(g) => {
            if choice.pivot.is_none() && choice.degree2.is_none() {
                let default = if method == Method::Rel {
                    g.vertices().find(|&v| g.degree(v) > 2).map(|v| Choice { pivot: Some(v), degree2: None })
                } else {
                    degree2_choices(&g).first().map(|&(d, w)| Choice { pivot: None, degree2: Some(vec![d, w]) })
                };
                let default = default.ok_or_else(|| CliError::new("NotAdmissible", json!(g.degree2_vertices())))?;
                extend(&g, &default)?
            } else {
                extend(&g, choice)?
            }
        }
    };
    let staircase = || -> Result<Layout, CliError> {
        let (d, w) = degree2_pair(&ext).ok_or_else(|| {
            CliError::new("NoStaircase", "the extension does not come from a degree-2 vertex and neighbor")
        })?;
        Ok(aurfp_staircase(ext.base(), d, w, ext.partition())?)
    };
    Ok(match method {
        Method::Rel => serde_json::to_value(rel_layout(&ext)?).expect("json"),
        Method::Staircase => serde_json::to_value(staircase()?).expect("json"),
        Method::Both => {
            let (r, s) = (rel_layout(&ext)?, staircase()?);
            json!({
                "same_structure": r.canonical_form() == s.canonical_form(),
                "rel": r,
                "staircase": s,
            })
        }
    })
}

fn realize_command(f: &Layout, a: &AreaAssignment, tol: f64, max_iters: usize) -> Result<Layout, CliError> {
    match realize_slicing(f, a, None) {
        Err(RealizeError::NotSlicing) => {}
        other => return Ok(other?),
    }
    Ok(realize_iterative(f, a, IterativeOptions { tol, max_iters, bbox: None })?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Check { graph, out } => {
            let g = load_graph(&graph)?;
            let validation = g.validate_proper();
            let census = g.degree2_vertices();
            let admissible = validation.is_ok() && census.len() == 2;
            let weak_dual = g.weak_dual().ok().map(|w| json!({"nodes": w.node_count(), "leaves": w.leaf_count}));
            emit_json(
                &out,
                &json!({
                    "validation": validation,
                    "degree2": census,
                    "weak_dual": weak_dual,
                    "admissible": admissible,
                }),
            )?;
            if !validation.is_ok() {
                return Err(CliError::new("NotProper", serde_json::to_value(validation).expect("json")));
            }
            if !admissible {
                return Err(CliError::new("NotAdmissible", json!(census)));
            }
            Ok(())
        }
        Command::Extend { graph, choice, out } => {
            let g = load_graph(&graph)?;
            emit_json(&out, &extend(&g, &choice)?.to_json())
        }
        Command::Layout { input, method, choice, out } => {
            let value = layout_command(load_input(&input)?, method, &choice)?;
            emit_json(&out, &value)
        }
        Command::Realize { layout, areas, tol, max_iters, out } => {
            let f: Layout = parse(&layout)?;
            let a: AreaAssignment = parse(&areas)?;
            emit_json(&out, &realize_command(&f, &a, tol, max_iters)?)
        }
        Command::Enumerate { graph, modulo_reflection, out } => {
            let g = load_graph(&graph)?;
            let en = enumerate_area_universal(&g)?;
            let mut seen = std::collections::BTreeSet::new();
            let layouts: Vec<&Layout> = en
                .layouts
                .iter()
                .filter(|l| !modulo_reflection || seen.insert(l.layout.canonical_form_mod_reflection()))
                .map(|l| &l.layout)
                .collect();
            let mut summary = json!({"count": en.count, "expected": en.expected, "match": en.matches()});
            if modulo_reflection {
                summary["count_modulo_reflection"] = json!(en.count_modulo_reflection);
            }
            emit_json(&out, &json!({"layouts": layouts, "summary": summary}))
        }
        Command::Oracle { nmax, nmin, cap, report, out } => {
            if nmax > 12 {
                return Err(CliError::usage("--nmax above 12 is out of range for exhaustive search"));
            }
            let report_doc = verify_theorems(&corpus(nmin, nmax), cap);
            let out = Output { output: report.or(out.output) };
            emit_json(&out, &report_doc)?;
            if !report_doc.is_clean() {
                return Err(CliError::new("Counterexample", json!(report_doc.counterexamples)));
            }
            Ok(())
        }
        Command::Svg { layout, scale, out } => {
            let f: Layout = parse(&layout)?;
            emit(&out, &svg::render(&f, scale))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
