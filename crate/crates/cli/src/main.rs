use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use stretch_core::bsurf::{
    flow_graph, flow_graph_with_routes, pairing, pairing_opposite, BranchEquations, BsurfError,
    FaceClass, FlowGraph,
};
use stretch_core::cones::{convexity_probe, ConeError, EntropyContext};
use stretch_core::dynamics::{growth_rate, stretch, DynamicsError, GrowthMode, WeightedDigraph};
use stretch_core::linalg::Q;
use stretch_core::suite::{run_criterion, SuiteConfig, DEFAULT_SEED};
use stretch_core::track::{gf_growth, intersection_growth, transition_graph, FoldingCycle};
use stretch_core::tri::VeeringTriangulation;

#[derive(Parser, Debug)]
#[command(
    name = "stretch",
    version,
    about = "Stretch factors from veering triangulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a triangulation and infer its edge colours.
    Validate { path: PathBuf },
    /// Build the flow graph of a triangulation.
    Flowgraph(FlowgraphArgs),
    /// Growth rate of a class on a triangulation or a flow graph file.
    Stretch(StretchArgs),
    /// Sample the entropy function along a segment of classes.
    Entropy(EntropyArgs),
    /// Transition graph, growth rate and intersection growth of a folding cycle.
    Track(TrackArgs),
    /// Run the acceptance criteria.
    Suite(SuiteArgs),
}

#[derive(Args, Debug)]
struct FlowgraphArgs {
    path: PathBuf,
    /// Also pair every closed walk with the branch-equation basis using the
    /// opposite crossing side, and fail if the two pairings differ.
    #[arg(long)]
    debug_opposite_side: bool,
    /// Longest closed walk used by the opposite-side check.
    #[arg(long, default_value_t = 6, value_parser = positive)]
    nmax: usize,
}

#[derive(Args, Debug)]
struct StretchArgs {
    /// A triangulation, or a flow graph JSON with `vertices`, `faces` and `edges`.
    path: PathBuf,
    /// Face weights of the class, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    xi: Vec<u64>,
    /// Face weights of the surface to cut along (triangulation input only).
    #[arg(long, value_delimiter = ',')]
    eta: Option<Vec<i64>>,
    #[arg(long, default_value_t = 0)]
    component: usize,
}

#[derive(Args, Debug)]
struct EntropyArgs {
    path: PathBuf,
    /// Start of the segment: rational face weights such as `1,1/2,0,2`.
    #[arg(long, value_delimiter = ',', value_parser = rational)]
    from: Vec<Q>,
    /// End of the segment; defaults to the start.
    #[arg(long, value_delimiter = ',', value_parser = rational)]
    to: Option<Vec<Q>>,
    #[arg(long, value_delimiter = ',')]
    eta: Option<Vec<i64>>,
    #[arg(long, default_value_t = 0)]
    component: usize,
    /// Number of interior sample points.
    #[arg(short, long, default_value_t = 9, value_parser = positive)]
    k: usize,
    /// Homogeneity mode: report `k·ent(kξ) − ent(ξ)` for the start point.
    #[arg(long, value_parser = positive)]
    scale: Option<usize>,
    /// Allowed convexity violation (homogeneity error in `--scale` mode).
    #[arg(long, value_parser = tolerance)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct TrackArgs {
    path: PathBuf,
    /// Branch weights of a carried curve.
    #[arg(long, value_delimiter = ',')]
    c: Option<Vec<u64>>,
    /// Branch weights of a transverse curve; defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    d: Option<Vec<u64>>,
    /// Number of iterates used for the intersection growth.
    #[arg(long, default_value_t = 40, value_parser = positive)]
    nmax: usize,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Horizon of the closed-walk and row-sum oracles.
    #[arg(long, value_parser = positive)]
    nmax: Option<usize>,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<u8>>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s
        .parse()
        .map_err(|e: std::num::ParseFloatError| e.to_string())?;
    if t > 0.0 && t <= 1e-2 {
        Ok(t)
    } else {
        Err("tolerance must lie in (0, 0.01]".into())
    }
}

fn rational(s: &str) -> Result<Q, String> {
    Q::from_str(s.trim()).map_err(|e| format!("{s:?}: {e}"))
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Io(String),
    Domain(String),
    NonConvergence(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Domain(_) => 2,
            Failure::NonConvergence(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Domain(m) | Failure::NonConvergence(m) => m,
        }
    }
}

impl From<DynamicsError> for Failure {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::NonConvergence { .. } => Failure::NonConvergence(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<ConeError> for Failure {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::Dynamics(d) => d.into(),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Domain(e.to_string())
            }
        }
    )*};
}

domain_from!(
    BsurfError,
    stretch_core::tri::TriError,
    stretch_core::track::TrackError,
    serde_json::Error
);

/// What a command produced: the text for the output file or stdout, and
/// whether its check passed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn json(value: &impl Serialize, ok: bool) -> Result<Output, Failure> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        Ok(Output { text, ok })
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_tri(path: &Path) -> Result<VeeringTriangulation, Failure> {
    Ok(VeeringTriangulation::from_json(&read(path)?)?)
}

fn face_class(tri: &VeeringTriangulation, eta: &Option<Vec<i64>>) -> FaceClass {
    match eta {
        Some(w) => FaceClass::new(w.clone()),
        None => FaceClass::zero(tri.num_faces()),
    }
}

fn cmd_validate(path: &Path) -> Result<Output, Failure> {
    let tri = load_tri(path)?;
    let report = tri.validate();
    let colours = if report.ok { tri.colors().ok() } else { None };
    let ok = report.ok && colours.is_some();
    Output::json(&json!({ "report": report, "colors": colours }), ok)
}

fn cmd_flowgraph(args: &FlowgraphArgs) -> Result<Output, Failure> {
    let tri = load_tri(&args.path)?;
    let phi = flow_graph(&tri)?;
    let mut text = phi.to_json();
    text.push('\n');
    if args.debug_opposite_side {
        let (routed, routes, sectors) = flow_graph_with_routes(&tri)?;
        let eqs = BranchEquations::new(&tri)?;
        let basis = eqs.solution_basis();
        let walks = routed.closed_walks(args.nmax);
        let mut mismatches = 0usize;
        for walk in &walks {
            for w in &basis {
                let a = pairing(&routed, walk, w, &eqs)?;
                let b = pairing_opposite(&routed, &routes, &sectors, walk, w, &eqs)?;
                if a != b {
                    mismatches += 1;
                    eprintln!("walk {walk:?}: pairing {a} on the canonical side, {b} opposite");
                }
            }
        }
        eprintln!(
            "opposite-side check: {} closed walks, {} classes, {} mismatches",
            walks.len(),
            basis.len(),
            mismatches
        );
        return Ok(Output {
            text,
            ok: mismatches == 0,
        });
    }
    Ok(Output { text, ok: true })
}

fn cmd_stretch(args: &StretchArgs) -> Result<Output, Failure> {
    let text = read(&args.path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let result = if value.get("tets").is_some() {
        let tri = VeeringTriangulation::from_json(&text)?;
        let eta = face_class(&tri, &args.eta);
        stretch(&tri, &eta, &args.xi, args.component)?
    } else {
        if args.eta.is_some() {
            return Err(Failure::Domain(
                "--eta needs a triangulation, not a flow graph".into(),
            ));
        }
        let phi = FlowGraph::from_json(&text)?;
        growth_rate(
            &WeightedDigraph::from_flow_graph(&phi, &args.xi)?,
            GrowthMode::Weighted,
        )?
    };
    let report = json!({
        "lambda": result.lambda,
        "log_lambda": result.log_lambda(),
        "t_star": result.t_star,
        "residual": result.residual,
        "iterations": result.iterations,
    });
    Output::json(&report, true)
}

fn cmd_entropy(args: &EntropyArgs) -> Result<Output, Failure> {
    let tri = load_tri(&args.path)?;
    let ctx = EntropyContext::new(&tri, &face_class(&tri, &args.eta), args.component)?;
    if let Some(k) = args.scale {
        let tol = args.tol.unwrap_or(1e-9);
        let base = ctx.sample(&args.from)?;
        let scaled: Vec<Q> = args
            .from
            .iter()
            .map(|x| x * Q::from_integer(k.into()))
            .collect();
        let scaled = ctx.sample(&scaled)?;
        let (Some(e), Some(ek)) = (base.ent, scaled.ent) else {
            return Err(Failure::Domain(format!(
                "entropy undefined: statuses {:?} and {:?}",
                base.status, scaled.status
            )));
        };
        let error = k as f64 * ek - e;
        let report = json!({ "k": k, "ent": e, "ent_scaled": ek, "error": error, "tol": tol });
        return Output::json(&report, error.abs() <= tol);
    }
    let tol = args.tol.unwrap_or(1e-6);
    let to = args.to.clone().unwrap_or_else(|| args.from.clone());
    let report = convexity_probe(|x| ctx.sample(x), &args.from, &to, args.k)?;
    let mut text = String::from("t,ent\n");
    let rows = std::iter::once((0.0, &report.start))
        .chain(report.points.iter().map(|p| (p.t, &p.sample)))
        .chain(std::iter::once((1.0, &report.end)));
    for (t, s) in rows {
        let ent = s.ent.map(|e| e.to_string()).unwrap_or_default();
        writeln!(text, "{t},{ent}").expect("writing to a string");
    }
    let passed = report.passes(tol);
    eprintln!(
        "convexity: {} points, max violation {:.3e} (tol {tol:e}) {}",
        report.points.len(),
        report.max_violation,
        if passed { "pass" } else { "FAIL" }
    );
    Ok(Output { text, ok: passed })
}

fn cmd_track(args: &TrackArgs) -> Result<Output, Failure> {
    let cycle = FoldingCycle::from_json(&read(&args.path)?)?;
    let g = transition_graph(&cycle)?;
    let growth = gf_growth(&g)?;
    let mut report = json!({
        "branches": g.branches,
        "edges": g.edge_count().to_string(),
        "non_simple": g.non_simple_branches(),
        "lambda": growth.lambda,
        "log_lambda": growth.lambda.ln(),
        "translation": growth.translation,
        "dominant_branches": growth.dominant_branches,
    });
    if let Some(c) = &args.c {
        let d = args.d.clone().unwrap_or_else(|| vec![1; g.branches.len()]);
        let ig = intersection_growth(&g, c, &d, args.nmax)?;
        report["intersection"] = serde_json::to_value(&ig)?;
    }
    Output::json(&report, true)
}

fn cmd_suite(args: &SuiteArgs) -> Result<Output, Failure> {
    let mut cfg = SuiteConfig {
        seed: args.seed,
        ..SuiteConfig::default()
    };
    if let Some(n) = args.nmax {
        cfg.n_max = n;
    }
    let ids = args.only.clone().unwrap_or_else(|| (1..=9).collect());
    let mut text = String::new();
    let mut ok = true;
    for id in ids {
        let r = run_criterion(id, &cfg)
            .ok_or_else(|| Failure::Domain(format!("unknown criterion {id}")))?;
        ok &= r.passed;
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        write!(
            text,
            "criterion {} [{verdict}] {}: {}",
            r.id, r.title, r.detail
        )
        .expect("writing to a string");
        if let Some(note) = &r.note {
            write!(text, " [{note}]").expect("writing to a string");
        }
        text.push('\n');
    }
    Ok(Output { text, ok })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Validate { path } => cmd_validate(path),
        Command::Flowgraph(a) => cmd_flowgraph(a),
        Command::Stretch(a) => cmd_stretch(a),
        Command::Entropy(a) => cmd_entropy(a),
        Command::Track(a) => cmd_track(a),
        Command::Suite(a) => cmd_suite(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match &cli.out {
            Some(path) => std::fs::write(path, &out.text)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
            None => print!("{}", out.text),
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
