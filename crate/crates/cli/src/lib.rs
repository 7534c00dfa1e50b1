//! The `latpoly` command line. [`run`] holds all the logic so tests can drive
//! it in-process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use latpoly::combinatorics::{count_read_once, count_selectors};
use latpoly::expr::{default_vars, parse, print_expr, to_antichain};
use latpoly::geometry::{enumerate_regions, region_graph, verify_isometric_embedding};
use latpoly::graph::{
    build_big_permutograph, build_permutohedron_graph, dump_graph, induced_graph, parse_graph_dump,
    verify_permutograph, WeightedGraph,
};
use latpoly::lattice::{
    check_dpl_on_graph, check_separation, order_statistic_polynomial, parse_fop, synthesize_polynomial,
    CanonicalAntichain,
};
use latpoly::pl::{dc_decompose, exhaustive_nonrepresentability, parse_plc, synthesize, verify_dc, verify_representation};
use latpoly::{Error, Permutation, PlcDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "latpoly", version, about = "Max-min representations of piecewise linear functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Permutation metrics.
    #[command(subcommand)]
    Perm(PermCmd),
    /// Permutographs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Integral functions in `.fop` files.
    #[command(subcommand)]
    Func(FuncCmd),
    /// Max-min expressions.
    #[command(subcommand)]
    Expr(ExprCmd),
    /// The order-statistic polynomial picking the k-th entry.
    Orderstat {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
    },
    /// Piecewise linear specs in `.plc` files.
    #[command(subcommand)]
    Pl(PlCmd),
    /// Counting results.
    #[command(subcommand)]
    Count(CountCmd),
}

#[derive(Subcommand, Debug)]
enum PermCmd {
    /// Inversion distance.
    Dist { a: String, b: String },
    /// Whether `g` lies on a geodesic from `a` to `b`.
    Between { a: String, g: String, b: String },
}

#[derive(Args, Debug)]
struct GraphOpts {
    #[arg(short)]
    n: usize,
    /// Vertex, edge and degree counts (the default).
    #[arg(long, conflicts_with = "dump")]
    stats: bool,
    /// Full vertex and edge listing.
    #[arg(long)]
    dump: bool,
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// The big permutograph on all block reversals.
    Big(GraphOpts),
    /// The permutohedron graph on adjacent transpositions.
    Permutohedron(GraphOpts),
    /// Checks that a dumped graph is isometric.
    Verify { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum FuncCmd {
    /// Separation and DPL checks on the induced graph (or `--graph`).
    Check {
        file: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// The canonical lattice polynomial of a function with the separation property.
    Synth { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ExprCmd {
    /// Canonical antichain and normal form of an expression.
    Parse {
        text: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct Sampling {
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum PlCmd {
    /// Regions of the arrangement and the region graph.
    Regions { file: PathBuf },
    /// The max-min representation.
    Synth { file: PathBuf },
    /// Checks the representation at witnesses and random points.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Difference-of-concave decomposition.
    Dc {
        file: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Searches all antichains for one matching the `point` lines.
    Exhaustive { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    /// Read-once max-min functions.
    ReadOnce {
        #[arg(short)]
        n: usize,
    },
    /// Nonempty antichains of nonempty subsets.
    Selectors {
        #[arg(short)]
        d: usize,
    },
}

/// A failed command: the kind tag for the first output line, then details.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub details: String,
    /// Partial results still written to the output stream.
    pub output: String,
}

impl Failure {
    fn negative(kind: &str, details: impl Into<String>) -> Self {
        Failure {
            code: EXIT_NEGATIVE,
            kind: kind.to_string(),
            details: details.into(),
            output: String::new(),
        }
    }

    fn usage(kind: &str, details: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            kind: kind.to_string(),
            details: details.into(),
            output: String::new(),
        }
    }

    fn in_file(path: &Path, e: Error) -> Self {
        let mut f = Failure::from(e.clone());
        f.details = match e {
            Error::Syntax { line, column, message } => format!("{}:{line}:{column}: {message}", path.display()),
            other => format!("{}: {other}", path.display()),
        };
        f
    }
}

const NEGATIVE_KINDS: [&str; 3] = ["not-dpl", "separation-violation", "isometry-violation"];

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if NEGATIVE_KINDS.contains(&e.kind()) {
            EXIT_NEGATIVE
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            kind: e.kind().to_string(),
            details: e.to_string(),
            output: String::new(),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
}

fn perm(text: &str) -> std::result::Result<Permutation, Failure> {
    text.parse::<Permutation>().map_err(Failure::from)
}

fn plc(path: &Path) -> std::result::Result<PlcDocument, Failure> {
    parse_plc(&read(path)?).map_err(|e| Failure::in_file(path, e))
}

fn antichain_text(a: &CanonicalAntichain, vars: &[String]) -> String {
    format!("{a}{}\n", print_expr(a, vars))
}

fn graph_text(g: &WeightedGraph, opts: &GraphOpts) -> String {
    if opts.dump {
        return dump_graph(g);
    }
    let mut degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let degrees: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    format!(
        "vertices {}\nedges {}\ndegree {}\n",
        g.vertex_count(),
        g.edge_count(),
        degrees.join(",")
    )
}

fn perm_cmd(cmd: PermCmd) -> Outcome {
    match cmd {
        PermCmd::Dist { a, b } => Ok(format!("{}\n", perm(&a)?.inversion_distance(&perm(&b)?)?)),
        PermCmd::Between { a, g, b } => Ok(format!("{}\n", perm(&g)?.is_between(&perm(&a)?, &perm(&b)?)?)),
    }
}

fn graph_cmd(cmd: GraphCmd) -> Outcome {
    match cmd {
        GraphCmd::Big(opts) => Ok(graph_text(build_big_permutograph(opts.n)?.graph(), &opts)),
        GraphCmd::Permutohedron(opts) => Ok(graph_text(build_permutohedron_graph(opts.n)?.graph(), &opts)),
        GraphCmd::Verify { file } => {
            let g = parse_graph_dump(&read(&file)?).map_err(|e| Failure::in_file(&file, e))?;
            match verify_permutograph(&g) {
                Ok(()) => Ok("ok\n".into()),
                Err(v) => Err(Failure::negative("isometry-violation", v.to_string())),
            }
        }
    }
}

fn func_cmd(cmd: FuncCmd) -> Outcome {
    match cmd {
        FuncCmd::Check { file, graph } => {
            let f = parse_fop(&read(&file)?).map_err(|e| Failure::in_file(&file, e))?;
            let g = match graph {
                Some(path) => parse_graph_dump(&read(&path)?).map_err(|e| Failure::in_file(&path, e))?,
                None => induced_graph(f.order(), f.vertices().to_vec())?,
            };
            let mut out = String::new();
            let mut first: Option<(&str, String)> = None;
            let mut report = |name: &str, kind: &'static str, result: Option<String>| {
                match result {
                    None => out.push_str(&format!("{name}: ok\n")),
                    Some(detail) => {
                        out.push_str(&format!("{name}: fail {detail}\n"));
                        if first.is_none() {
                            first = Some((kind, detail));
                        }
                    }
                }
            };
            report(
                "permutograph",
                "isometry-violation",
                verify_permutograph(&g).err().map(|v| v.to_string()),
            );
            report(
                "separation",
                "separation-violation",
                check_separation(&f).err().map(|v| v.to_string()),
            );
            report("dpl", "not-dpl", check_dpl_on_graph(&f, &g)?.err().map(|v| v.to_string()));
            match first {
                None => Ok(out),
                Some((kind, detail)) => Err(Failure {
                    output: out,
                    ..Failure::negative(kind, detail)
                }),
            }
        }
        FuncCmd::Synth { file } => {
            let f = parse_fop(&read(&file)?).map_err(|e| Failure::in_file(&file, e))?;
            if let Err(v) = check_separation(&f) {
                return Err(Failure::negative("separation-violation", v.to_string()));
            }
            Ok(antichain_text(&synthesize_polynomial(&f)?, &default_vars(f.order())))
        }
    }
}

fn pl_cmd(cmd: PlCmd) -> Outcome {
    match cmd {
        PlCmd::Regions { file } => {
            let doc = plc(&file)?;
            let arr = latpoly::Arrangement::new(doc.functionals(), doc.to_spec()?.domain().clone())?;
            let regions = enumerate_regions(&arr)?;
            let rg = region_graph(&arr, &regions)?;
            let mut out: String = regions.iter().map(|r| format!("{r}\n")).collect();
            out.push_str(&dump_graph(&rg.graph));
            if let Err(v) = verify_isometric_embedding(&rg) {
                return Err(Failure {
                    output: out,
                    ..Failure::negative("isometry-violation", v.to_string())
                });
            }
            Ok(out)
        }
        PlCmd::Synth { file } => {
            let spec = plc(&file)?.to_spec()?;
            let syn = synthesize(&spec)?;
            Ok(antichain_text(&syn.representation.antichain, spec.names()))
        }
        PlCmd::Verify { file, sampling } => {
            let spec = plc(&file)?.to_spec()?;
            let rep = synthesize(&spec)?.representation;
            match verify_representation(&spec, &rep, sampling.samples, sampling.seed)? {
                Ok(()) => Ok(format!("{}\nok\n", rep.expression())),
                Err(f) => Err(Failure::negative("verification-failed", f.to_string())),
            }
        }
        PlCmd::Dc { file, sampling } => {
            let spec = plc(&file)?.to_spec()?;
            let rep = synthesize(&spec)?.representation;
            let dc = dc_decompose(&rep);
            let mut out = dc.formula();
            if dc.degenerate {
                out.push_str("degenerate\n");
            }
            match verify_dc(&spec, &rep, &dc, sampling.samples, sampling.seed)? {
                Ok(()) => Ok(out),
                Err(f) => Err(Failure {
                    output: out,
                    ..Failure::negative("verification-failed", f.to_string())
                }),
            }
        }
        PlCmd::Exhaustive { file } => {
            let doc = plc(&file)?;
            let names: Vec<String> = doc.components.iter().map(|(n, _)| n.clone()).collect();
            match exhaustive_nonrepresentability(&doc.functionals(), &doc.points)? {
                Some(a) => Ok(antichain_text(&a, &names)),
                None => Err(Failure::negative(
                    "not-representable",
                    format!(
                        "no max-min formula over {} components matches the {} points",
                        names.len(),
                        doc.points.len()
                    ),
                )),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Perm(cmd) => perm_cmd(cmd),
        Command::Graph(cmd) => graph_cmd(cmd),
        Command::Func(cmd) => func_cmd(cmd),
        Command::Expr(ExprCmd::Parse { text, vars }) => {
            let e = parse(&text, &vars)?;
            Ok(antichain_text(&to_antichain(&e, &vars)?, &vars))
        }
        Command::Orderstat { n, k } => Ok(antichain_text(&order_statistic_polynomial(n, k)?, &default_vars(n))),
        Command::Pl(cmd) => pl_cmd(cmd),
        Command::Count(CountCmd::ReadOnce { n }) => Ok(format!("{}\n", count_read_once(n))),
        Command::Count(CountCmd::Selectors { d }) => Ok(format!("{}\n", count_selectors(d)?)),
    }
}

/// Runs one invocation (`args[0]` is the program name). Results go to `out`;
/// failures go to `err`, starting with an `error: <kind>` line.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let outcome = match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            Err(Failure::usage("usage", e.to_string().trim_end()))
        }
    };
    match outcome {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = out.write_all(f.output.as_bytes());
            let _ = writeln!(err, "error: {}", f.kind);
            if !f.details.is_empty() {
                let _ = writeln!(err, "{}", f.details.trim_end());
            }
            f.code
        }
    }
}

/// Convenience wrapper returning `(exit code, stdout, stderr)`.
pub fn run_capture<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 output"),
        String::from_utf8(err).expect("utf-8 output"),
    )
}
