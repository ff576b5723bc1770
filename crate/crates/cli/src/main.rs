use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use fpe_core::fpe::{fpe_color, FpeError, FpeTrace};
use fpe_core::generate::{generate, Family, GenSpec, MoveWeights};
use fpe_core::oddcolor::{exact_odd_chromatic_index, OddColoring, EXACT_ODD_EDGE_LIMIT};
use fpe_core::planemap::{EdgeId, FaceId, VertexId};
use fpe_core::qfo::{QfoColoring, QfoError};
use fpe_core::verify::{self, CheckReport, EXACT_FPE_EDGE_LIMIT};
use fpe_core::{Color, EdgeColoring, PlaneMap};

#[derive(Parser)]
#[command(
    name = "fpec",
    version,
    about = "Facial parity edge colorings of plane multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated map in PMAP format.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = MoveWeights::default().chord)]
        chord: f64,
        #[arg(long, default_value_t = MoveWeights::default().subdivide)]
        subdivide: f64,
        #[arg(long, default_value_t = MoveWeights::default().parallel)]
        parallel: f64,
        #[arg(long, default_value_t = MoveWeights::default().pendant_cycle)]
        pendant_cycle: f64,
    },
    /// Compute an FPE-coloring and write it as JSON.
    Color {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the QFO coloring, per-class dual colorings and palette map.
        #[arg(long)]
        trace: bool,
    },
    /// Check a coloring file against the map.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, value_enum)]
        mode: CheckMode,
    },
    /// Print an exact chromatic index.
    Chi {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ChiMode,
    },
    /// Print structural statistics as JSON.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print the graph in DOT, optionally with edge colors.
    ExportDot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Fpe,
    Qfo,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChiMode {
    Fpe,
    Odd,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

const CHECK_FAILED: u8 = 1;
const PARSE: u8 = 2;
const PRECONDITION: u8 = 3;
const BOUND: u8 = 4;

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

#[derive(Serialize)]
struct EdgeOut {
    id: EdgeId,
    endpoints: [VertexId; 2],
    color: Color,
}

#[derive(Serialize)]
struct FaceOut {
    id: FaceId,
    walk: Vec<EdgeId>,
}

#[derive(Serialize)]
struct ColorOut {
    palette_size: usize,
    edges: Vec<EdgeOut>,
    faces: Vec<FaceOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<FpeTrace>,
}

#[derive(Deserialize)]
struct EdgeIn {
    id: EdgeId,
    color: Color,
}

#[derive(Deserialize)]
struct ColoringIn {
    edges: Vec<EdgeIn>,
    #[serde(default)]
    c5_blocks: Option<Vec<Vec<EdgeId>>>,
}

#[derive(Serialize)]
struct StatsOut {
    vertices: usize,
    edges: usize,
    faces: usize,
    bridgeless: bool,
    blocks: usize,
    c5_blocks: Vec<Vec<EdgeId>>,
    cut_vertices: Vec<VertexId>,
    face_lengths: Vec<usize>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<PlaneMap, Failure> {
    PlaneMap::parse_pmap(&read(path)?).map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))
}

type Blocks = Vec<Vec<EdgeId>>;

fn load_coloring(path: &Path, g: &PlaneMap) -> Result<(EdgeColoring, Option<Blocks>), Failure> {
    let parsed: ColoringIn = serde_json::from_str(&read(path)?)
        .map_err(|e| fail(PARSE, format!("{}: {e}", path.display())))?;
    let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
    for EdgeIn { id, color } in parsed.edges {
        let slot = colors
            .get_mut(id)
            .ok_or_else(|| fail(PRECONDITION, format!("edge {id} is not in the map")))?;
        if slot.replace(color).is_some() {
            return Err(fail(PRECONDITION, format!("edge {id} is colored twice")));
        }
    }
    let colors = colors
        .iter()
        .enumerate()
        .map(|(e, c)| c.ok_or_else(|| fail(PRECONDITION, format!("edge {e} has no color"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((EdgeColoring::new(colors), parsed.c5_blocks))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| fail(PRECONDITION, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn fpe_failure(e: FpeError) -> Failure {
    let code = match &e {
        FpeError::NotTwoEdgeConnected(_) | FpeError::Qfo(QfoError::Bridge(_)) => PRECONDITION,
        FpeError::CheckFailed(_) => CHECK_FAILED,
        _ => BOUND,
    };
    if let FpeError::BoundViolation { trace, .. } = &e {
        eprintln!("{}", to_json(trace));
    }
    fail(code, e)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Gen {
            family,
            n,
            seed,
            out,
            chord,
            subdivide,
            parallel,
            pendant_cycle,
        } => {
            let spec = GenSpec {
                family,
                n,
                seed,
                weights: MoveWeights {
                    chord,
                    subdivide,
                    parallel,
                    pendant_cycle,
                },
            };
            let g = generate(&spec).map_err(|e| fail(PRECONDITION, e))?;
            write_out(out.as_deref(), &g.to_pmap())?;
        }
        Command::Color { input, out, trace } => {
            let g = load_map(&input)?;
            let result = fpe_color(&g).map_err(fpe_failure)?;
            let json = ColorOut {
                palette_size: result.palette_size,
                edges: (0..g.edge_count())
                    .map(|e| {
                        let (u, v) = g.endpoints(e);
                        EdgeOut {
                            id: e,
                            endpoints: [u, v],
                            color: result.coloring.color(e),
                        }
                    })
                    .collect(),
                faces: g
                    .facial_walks()
                    .iter()
                    .map(|w| FaceOut {
                        id: w.face,
                        walk: w.edges().collect(),
                    })
                    .collect(),
                trace: trace.then_some(result.trace),
            };
            write_out(out.as_deref(), &to_json(&json))?;
        }
        Command::Check {
            input,
            coloring,
            mode,
        } => {
            let g = load_map(&input)?;
            let (c, blocks) = load_coloring(&coloring, &g)?;
            let report: CheckReport = match mode {
                CheckMode::Fpe => verify::check_fpe(&g, &c),
                CheckMode::Qfo => {
                    let c5_blocks = blocks.unwrap_or_else(|| {
                        g.blocks().c5_blocks().map(|b| b.edges.clone()).collect()
                    });
                    verify::check_quasi_facially_odd(
                        &g,
                        &QfoColoring {
                            coloring: c,
                            c5_blocks,
                        },
                    )
                }
                CheckMode::Odd => {
                    verify::check_odd(&g.to_multigraph(), &OddColoring::new(c.as_slice().to_vec()))
                }
            }
            .map_err(|e| fail(PRECONDITION, e))?;
            print!("{}", to_json(&report));
            if !report.passed() {
                return Ok(ExitCode::from(CHECK_FAILED));
            }
        }
        Command::Chi { input, mode } => {
            let g = load_map(&input)?;
            let value = match mode {
                ChiMode::Fpe => {
                    if g.edge_count() > EXACT_FPE_EDGE_LIMIT {
                        return Err(fail(
                            PRECONDITION,
                            format!("fpe mode is limited to {EXACT_FPE_EDGE_LIMIT} edges"),
                        ));
                    }
                    if !g.is_bridgeless() {
                        return Err(fail(PRECONDITION, "map has a bridge"));
                    }
                    verify::exact_chi_fp(&g, g.edge_count())
                        .map_err(|e| fail(PRECONDITION, e))?
                        .expect("singleton classes are an FPE-coloring of a bridgeless map")
                }
                ChiMode::Odd => {
                    if g.edge_count() > EXACT_ODD_EDGE_LIMIT {
                        return Err(fail(
                            PRECONDITION,
                            format!("odd mode is limited to {EXACT_ODD_EDGE_LIMIT} edges"),
                        ));
                    }
                    exact_odd_chromatic_index(&g.to_multigraph())
                        .map_err(|e| fail(PRECONDITION, e))?
                }
            };
            println!("{value}");
        }
        Command::Stats { input } => {
            let g = load_map(&input)?;
            let blocks = g.blocks();
            let stats = StatsOut {
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                faces: g.face_count(),
                bridgeless: g.is_bridgeless(),
                blocks: blocks.blocks.len(),
                c5_blocks: blocks.c5_blocks().map(|b| b.edges.clone()).collect(),
                cut_vertices: blocks.cut_vertices.clone(),
                face_lengths: g.facial_walks().iter().map(|w| w.len()).collect(),
            };
            print!("{}", to_json(&stats));
        }
        Command::ExportDot { input, coloring } => {
            let g = load_map(&input)?;
            let colors = match coloring {
                Some(path) => Some(load_coloring(&path, &g)?.0),
                None => None,
            };
            print!("{}", to_dot(&g, colors.as_ref()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn to_dot(g: &PlaneMap, colors: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph G {\n");
    for w in g.facial_walks() {
        let walk: Vec<String> = w.edges().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "  // face {}: {}", w.face, walk.join(" "));
    }
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let (f, f2) = g.edge_faces(e);
        let _ = write!(out, "  {u} -- {v} [id=e{e}, faces=\"{f},{f2}\"");
        if let Some(c) = colors {
            let _ = write!(
                out,
                ", label=\"{}\", colorscheme=set312, color={}",
                c.color(e),
                c.color(e).saturating_sub(1) % 12 + 1
            );
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            eprintln!("fpec: {message}");
            ExitCode::from(code)
        }
    }
}
