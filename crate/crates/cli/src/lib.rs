//! The `zykov` command line.
//!
//! Every command takes a graph source, which is either the path of a graph
//! document or a constructor expression such as `"P2 + C5 + C4"`. Reports go
//! to stdout as one JSON document (`--format json`) or as plain text.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use zykov::coloring::{self, OptimalityCertificate};
use zykov::fisk::{self, FiskCriterionReport, FiskVariety};
use zykov::manifolds::{self, Recognizer};
use zykov::{builders, dot, expr, homology, io, Answer, Error, Graph};

#[derive(Parser, Debug)]
#[command(name = "zykov", version, about = "Discrete manifolds, their colorings and Fisk varieties")]
pub struct Cli {
    /// Node budget for each recognition or coloring search.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColorMode {
    Exact,
    Theorem1,
    Bounds,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph and write its document.
    Gen {
        source: String,
        /// Apply this many edge refinements at random edges (see --seed).
        #[arg(long, default_value_t = 0)]
        random_refinements: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Size, f-vector, Betti numbers and manifold verdicts.
    Analyze { source: String },
    Color {
        source: String,
        #[arg(long, value_enum, default_value_t = ColorMode::Exact)]
        mode: ColorMode,
    },
    /// Fisk variety, criterion verdicts and Eulerian flags of a manifold.
    Fisk { source: String },
    /// Refine the edge `(u, v)`.
    Refine {
        source: String,
        u: usize,
        v: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a DOT document.
    Export {
        source: String,
        /// Fill vertices by an optimal coloring.
        #[arg(long)]
        color: bool,
        /// Highlight the Fisk carrier.
        #[arg(long)]
        fisk: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failed command: exit code 2 for parse and I/O errors, 3 for domain
/// errors, 4 for an exhausted budget.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse { .. } => (2, "parse"),
            Error::Io(_) | Error::Document(_) => (2, "io"),
            Error::BudgetExhausted { .. } => (4, "budget"),
            _ => (3, "domain"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

impl Failure {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json!({"error": {"code": self.code, "kind": self.kind, "message": self.message}}).to_string(),
            Format::Text => format!("error ({}): {}", self.kind, self.message),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Reads a graph document if `source` names a file, else evaluates it as an
/// expression.
pub fn load(source: &str) -> zykov::Result<Graph> {
    if Path::new(source).is_file() {
        io::read_graph(source)
    } else {
        expr::build(source)
    }
}

struct Budgets {
    recognize: u64,
    color: u64,
}

impl Budgets {
    fn new(budget: Option<u64>) -> Self {
        Budgets {
            recognize: budget.unwrap_or(manifolds::DEFAULT_BUDGET),
            color: budget.unwrap_or(coloring::DEFAULT_COLOR_BUDGET),
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let budgets = Budgets::new(cli.budget);
    let f = cli.format;
    match &cli.command {
        Command::Gen { source, random_refinements, output } => {
            let g = builders::random_edge_refinements(&load(source)?, *random_refinements, cli.seed);
            emit_graph(&g, output.as_deref())
        }
        Command::Analyze { source } => Ok(analyze(&load(source)?, &budgets, f)),
        Command::Color { source, mode } => color(&load(source)?, *mode, &budgets, f),
        Command::Fisk { source } => fisk_report(&load(source)?, &budgets, f),
        Command::Refine { source, u, v, output } => {
            let g = builders::edge_refine(&load(source)?, *u, *v)?;
            emit_graph(&g, output.as_deref())
        }
        Command::Export { source, color, fisk, output } => {
            let g = load(source)?;
            let c = color.then(|| coloring::chromatic_number(&g, budgets.color).coloring);
            let o = if *fisk { Some(fisk::fisk_variety_with_budget(&g, budgets.recognize)?) } else { None };
            let text = dot::export_dot(&g, c.as_ref(), o.as_ref());
            write_or_return(text, output.as_deref())
        }
    }
}

fn write_or_return(text: String, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(Error::from)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn emit_graph(g: &Graph, output: Option<&Path>) -> Outcome {
    write_or_return(io::to_json(g), output)
}

fn render<T: Serialize>(doc: &T, format: Format, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

fn verdict<W: Serialize>(a: &Answer<W>) -> String {
    match a {
        Answer::Yes { witness } => format!("yes {}", serde_json::to_string(witness).unwrap_or_default()),
        Answer::No { refutation } => format!("no ({refutation:?})"),
        Answer::Unknown { budget } => format!("unknown (budget {budget} exhausted)"),
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    edges: usize,
    f_vector: Vec<usize>,
    euler_characteristic: i64,
    betti: Option<Vec<usize>>,
    manifold: Answer<i64>,
    sphere: Answer<manifolds::SphereWitness>,
    dimension: Option<i64>,
    notes: Vec<String>,
}

fn analyze(g: &Graph, budgets: &Budgets, f: Format) -> String {
    let mut notes = Vec::new();
    let fv = g.f_vector();
    let betti = match homology::betti(g) {
        Ok(b) => Some(b.b),
        Err(e) => {
            notes.push(format!("Betti numbers skipped: {e}"));
            None
        }
    };
    let mut rec = Recognizer::new(budgets.recognize);
    let manifold = rec.is_manifold(g);
    let sphere = if manifold.is_yes() {
        rec.reset_budget(budgets.recognize);
        rec.is_sphere(g)
    } else {
        match &manifold {
            Answer::No { refutation } => Answer::No { refutation: refutation.clone() },
            _ => Answer::Unknown { budget: budgets.recognize },
        }
    };
    for (name, unknown) in [("manifold", manifold.is_unknown()), ("sphere", sphere.is_unknown())] {
        if unknown {
            notes.push(format!("{name} recognition ran out of its budget of {} nodes", budgets.recognize));
        }
    }
    let report = AnalyzeReport {
        n: g.order(),
        edges: g.size(),
        euler_characteristic: fv.euler_characteristic(),
        f_vector: fv.counts,
        betti,
        dimension: manifold.witness().copied(),
        manifold,
        sphere,
        notes,
    };
    render(&report, f, || {
        let mut s = String::new();
        writeln!(s, "vertices: {}", report.n).unwrap();
        writeln!(s, "edges: {}", report.edges).unwrap();
        writeln!(s, "f-vector: {:?}", report.f_vector).unwrap();
        writeln!(s, "Euler characteristic: {}", report.euler_characteristic).unwrap();
        if let Some(b) = &report.betti {
            writeln!(s, "Betti: {b:?}").unwrap();
        }
        writeln!(s, "manifold: {}", verdict(&report.manifold)).unwrap();
        writeln!(s, "sphere: {}", verdict(&report.sphere)).unwrap();
        for n in &report.notes {
            writeln!(s, "note: {n}").unwrap();
        }
        s
    })
}

#[derive(Serialize)]
struct ColorReport {
    mode: &'static str,
    k: usize,
    colors: Vec<usize>,
    optimal: bool,
    /// `[lower, upper]` bounds on the chromatic number.
    interval: Option<[usize; 2]>,
    certificate: Option<OptimalityCertificate>,
    trace: Vec<String>,
}

fn color(g: &Graph, mode: ColorMode, budgets: &Budgets, f: Format) -> Outcome {
    let report = match mode {
        ColorMode::Bounds => {
            let b = coloring::bounds_report(g, budgets.color)?;
            return Ok(render(&b, f, || {
                let chromatic = b.chromatic.map_or(format!("in {:?}", b.interval), |x| x.to_string());
                format!(
                    "dimension: {}\nlower: {}\nupper: {}\nconjecture: {}\nchromatic number: {chromatic}\n",
                    b.dim, b.lower, b.upper, b.conjecture
                )
            }));
        }
        ColorMode::Exact => {
            let r = coloring::chromatic_number(g, budgets.color);
            let mut trace = vec![format!("bounds after search: [{}, {}]", r.lower, r.upper)];
            if !r.optimal {
                trace.push(format!("search budget of {} nodes exhausted", budgets.color));
            }
            ColorReport {
                mode: "exact",
                k: r.coloring.k,
                colors: r.coloring.colors.clone(),
                optimal: r.optimal,
                interval: Some([r.lower, r.upper]),
                certificate: r.certificate,
                trace,
            }
        }
        ColorMode::Theorem1 => {
            let r = coloring::theorem1_color(g, budgets.color)?;
            ColorReport {
                mode: "theorem1",
                k: r.coloring.k,
                colors: r.coloring.colors,
                optimal: false,
                interval: None,
                certificate: None,
                trace: r.trace,
            }
        }
    };
    Ok(render(&report, f, || {
        let mut s = String::new();
        writeln!(s, "colors used: {}", report.k).unwrap();
        if let Some([lo, hi]) = report.interval {
            if report.optimal {
                writeln!(s, "chromatic number: {hi}").unwrap();
            } else {
                writeln!(s, "chromatic number in [{lo}, {hi}]").unwrap();
            }
        }
        writeln!(s, "coloring: {:?}", report.colors).unwrap();
        for t in &report.trace {
            writeln!(s, "trace: {t}").unwrap();
        }
        s
    }))
}

fn variety_json(o: &FiskVariety) -> Value {
    json!({
        "dim": o.dim,
        "count": o.len(),
        "odd_simplices": o.odd_simplices,
        "circle_lengths": o.circle_lengths,
        "carrier_vertices": o.carrier_vertices,
        "carrier_edges": o.carrier_edges(),
        "components": o.components,
    })
}

fn criterion_json(r: &FiskCriterionReport) -> Value {
    json!({
        "criterion_holds": r.criterion_holds,
        "failing_vertices": r.failing_vertices(),
        "verdicts": r.verdicts,
        "carrier_manifold": r.manifold_check,
        "carrier_is_expected_manifold": r.carrier_is_expected_manifold,
    })
}

fn fisk_report(g: &Graph, budgets: &Budgets, f: Format) -> Outcome {
    let o = fisk::fisk_variety_with_budget(g, budgets.recognize)?;
    let criterion = if o.dim >= 3 { Some(fisk::fisk_criterion_with_budget(g, budgets.recognize)?) } else { None };
    let all_degrees_even = (0..g.order()).all(|v| g.degree(v) % 2 == 0);
    let doc = json!({
        "variety": variety_json(&o),
        "criterion": criterion.as_ref().map(criterion_json),
        "d_eulerian": o.is_empty(),
        "all_degrees_even": all_degrees_even,
    });
    Ok(render(&doc, f, || {
        let mut s = String::new();
        writeln!(s, "dimension: {}", o.dim).unwrap();
        writeln!(s, "odd simplices: {}", o.len()).unwrap();
        for c in &o.components {
            writeln!(s, "component: {:?} on {} vertices, f-vector {:?}", c.shape, c.vertices.len(), c.f_vector).unwrap();
        }
        if let Some(r) = &criterion {
            writeln!(s, "criterion holds: {}", r.criterion_holds).unwrap();
            writeln!(s, "carrier manifold: {}", verdict(&r.manifold_check)).unwrap();
        }
        writeln!(s, "d-Eulerian: {}", o.is_empty()).unwrap();
        writeln!(s, "all degrees even: {all_degrees_even}").unwrap();
        s
    }))
}
