use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hypershell_core::ehrhart::{
    count_points, foata_han_verify, h_by_counting, h_by_statistics, h_closed_formula, joint_table,
};
use hypershell_core::triangulation::{export, AvatarKind, TieBreak, Triangulation};
use hypershell_core::verify::{self, Fault, Status, VerifyConfig};
use hypershell_core::{HVector, HypersimplexId};

// A closed pipe (e.g. `| head`) is not an error worth a panic.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

fn out_raw(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(s.as_bytes());
}

const SCHEMA_VERSION: u32 = 1;
/// Largest `n` for statistics, counting and the closed formula.
const MAX_N_STATS: usize = 11;
/// Largest `n` for anything that builds the triangulation.
const MAX_N_TRIANGULATION: usize = 9;

#[derive(Parser)]
#[command(
    name = "hypershell",
    version,
    about = "h*-polynomials of half-open hypersimplices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// h*-vector of the half-open hypersimplex by one or all methods.
    Hvec {
        k: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Lattice points in the r-th dilate.
    Count {
        k: usize,
        n: usize,
        r: usize,
        /// Count the closed hypersimplex instead.
        #[arg(long)]
        closed: bool,
    },
    /// Export the triangulation, its dual graph and a shelling.
    Triangulate {
        k: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
        /// Avatar used to label nodes in DOT output.
        #[arg(long, value_enum, default_value_t = Graph::Q)]
        graph: Graph,
    },
    /// Run the cross-verification sweep.
    Verify {
        /// Bound on n for both the triangulation and the statistics sweeps.
        #[arg(long)]
        max_n: Option<usize>,
        /// Bound on n for face sweeps, path enumeration and Γ adjacency.
        #[arg(long)]
        exhaustive_max_n: Option<usize>,
        /// Seeded linear extensions checked per polytope.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        /// Dilation bound for the generating-function identity.
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Check the generating-function identity coefficient by coefficient.
    Identity {
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
    },
    /// Joint (exc, des) distribution on S_m as CSV.
    Joint { m: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Stats,
    Ehrhart,
    Formula,
    Shelling,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Graph {
    Q,
    P,
    R,
    Gamma,
    S,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    FlipOrientation,
}

impl From<Graph> for AvatarKind {
    fn from(g: Graph) -> Self {
        match g {
            Graph::Q => AvatarKind::Q,
            Graph::P => AvatarKind::P,
            Graph::R => AvatarKind::R,
            Graph::Gamma => AvatarKind::Gamma,
            Graph::S => AvatarKind::S,
        }
    }
}

fn usage_error(msg: String) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn check_bounds(k: usize, n: usize, max_n: usize) -> HypersimplexId {
    let id = HypersimplexId::half_open(k, n).unwrap_or_else(|e| usage_error(e.to_string()));
    if n > max_n {
        usage_error(format!(
            "n = {n} exceeds the supported bound {max_n} for this command"
        ));
    }
    id
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn coeffs_json(h: &HVector) -> Value {
    match h.to_u64s() {
        Some(v) => json!(v),
        None => json!(h.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    }
}

fn volume_json(h: &HVector) -> Value {
    let s = h.sum().to_string();
    s.parse::<u64>().map_or(json!(s), |v| json!(v))
}

type Named = Vec<(&'static str, HVector)>;

/// Half-open h-vectors by name, in a fixed order, plus whether they agree.
fn half_open_methods(
    id: HypersimplexId,
    want: &[Method],
    tri: Option<&Triangulation>,
) -> Result<(Named, bool), String> {
    let mut out = Vec::new();
    if want.contains(&Method::Stats) {
        out.push(("stats", h_by_statistics(id).map_err(|e| e.to_string())?));
    }
    if want.contains(&Method::Ehrhart) {
        out.push(("ehrhart", h_by_counting(id)));
    }
    if want.contains(&Method::Shelling) {
        let h = match tri {
            Some(t) => t.h_by_shelling(),
            None => Triangulation::build(id.k, id.n).and_then(|t| t.h_by_shelling()),
        };
        out.push(("shelling", h.map_err(|e| e.to_string())?));
    }
    let agree = out.windows(2).all(|w| w[0].1.same_coeffs(&w[1].1));
    Ok((out, agree))
}

fn header(
    id: HypersimplexId,
    methods: Map<String, Value>,
    volume: Value,
    agree: bool,
) -> Map<String, Value> {
    let mut top = Map::new();
    top.insert("schema_version".into(), json!(SCHEMA_VERSION));
    top.insert("k".into(), json!(id.k));
    top.insert("n".into(), json!(id.n));
    top.insert("half_open".into(), json!(id.half_open));
    top.insert("methods".into(), Value::Object(methods));
    top.insert("volume".into(), volume);
    top.insert("agreement".into(), json!(agree));
    top
}

fn hvec(k: usize, n: usize, method: Method, format: Format) -> ExitCode {
    let bound = if matches!(method, Method::Shelling | Method::All) {
        MAX_N_TRIANGULATION
    } else {
        MAX_N_STATS
    };
    let id = check_bounds(k, n, bound);
    let want: Vec<Method> = match method {
        Method::All => vec![Method::Stats, Method::Ehrhart, Method::Shelling],
        Method::Formula => vec![],
        m => vec![m],
    };
    let (half_open, agree) = match half_open_methods(id, &want, None) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let closed = if matches!(method, Method::Formula | Method::All) {
        match h_closed_formula(k, n) {
            Ok(h) => Some(h),
            Err(e) => return fail(e),
        }
    } else {
        None
    };

    match format {
        Format::Text => {
            for (name, h) in &half_open {
                out!("{name:<9} Δ'_{{{k},{n}}} {h}");
            }
            if let Some((_, h)) = half_open.first() {
                out!("volume    {}", h.sum());
            }
            if half_open.len() > 1 {
                out!("agreement {}", if agree { "yes" } else { "NO" });
            }
            if let Some(h) = &closed {
                out!("formula   Δ_{{{k},{n}}} (closed) {h}");
            }
        }
        Format::Json => {
            let mut methods = Map::new();
            for (name, h) in &half_open {
                methods.insert((*name).into(), coeffs_json(h));
            }
            if let Some(h) = &closed {
                methods.insert("formula_closed".into(), coeffs_json(h));
            }
            let volume = half_open
                .first()
                .map_or(Value::Null, |(_, h)| volume_json(h));
            let top = header(id, methods, volume, agree);
            out!(
                "{}",
                serde_json::to_string_pretty(&Value::Object(top)).unwrap()
            );
        }
    }
    if agree {
        ExitCode::SUCCESS
    } else {
        fail("methods disagree")
    }
}

fn triangulate(k: usize, n: usize, format: ExportFormat, graph: Graph) -> ExitCode {
    let id = check_bounds(k, n, MAX_N_TRIANGULATION);
    let t = match Triangulation::build(k, n) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    if format == ExportFormat::Dot {
        out_raw(&export::to_dot(&t, graph.into()));
        return ExitCode::SUCCESS;
    }
    let shelling = match t.shelling(TieBreak::Lexicographic) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let all = [Method::Stats, Method::Ehrhart, Method::Shelling];
    let (methods, agree) = match half_open_methods(id, &all, Some(&t)) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let names = methods
        .iter()
        .map(|(name, h)| ((*name).to_string(), coeffs_json(h)))
        .collect();
    let mut top = header(id, names, volume_json(&methods[0].1), agree);
    let body = serde_json::to_value(export::export(&t, &shelling)).unwrap();
    if let Value::Object(fields) = body {
        top.extend(fields);
    }
    out!(
        "{}",
        serde_json::to_string_pretty(&Value::Object(top)).unwrap()
    );
    if agree {
        ExitCode::SUCCESS
    } else {
        fail("methods disagree")
    }
}

fn run_verify(cfg: VerifyConfig, format: Format) -> ExitCode {
    let reports = verify::run(&cfg);
    match format {
        Format::Text => {
            for r in &reports {
                out!("{r}");
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let skipped = reports
                .iter()
                .filter(|r| matches!(r.status, Status::Skipped(_)))
                .count();
            out!(
                "{} checks: {} passed, {failed} failed, {skipped} skipped",
                reports.len(),
                reports.len() - failed - skipped
            );
        }
        Format::Json => out!("{}", serde_json::to_string_pretty(&reports).unwrap()),
    }
    match reports.iter().find(|r| !r.passed()) {
        None => ExitCode::SUCCESS,
        Some(r) => fail(format!("first failure: {r}")),
    }
}

fn identity(r: usize, max_n: usize, max_k: usize) -> ExitCode {
    let report = foata_han_verify(r, max_n, max_k);
    match &report.mismatch {
        None if report.passed() => {
            out!(
                "PASS r={r} max-n={max_n} max-k={max_k}: {} coefficients agree",
                report.checked
            );
            ExitCode::SUCCESS
        }
        None => fail(format!(
            "only {} coefficients were compared",
            report.checked
        )),
        Some(m) => {
            out!("FAIL r={r} max-n={max_n} max-k={max_k}");
            fail(format!(
                "[u^{} s^{}] is {} but the lattice count of Δ'_{{{},{}}} is {}",
                m.n,
                m.k,
                m.series_coeff,
                m.k + 1,
                m.n + 1,
                m.lattice_count
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Hvec {
            k,
            n,
            method,
            format,
        } => hvec(k, n, method, format),
        Command::Count { k, n, r, closed } => {
            let id =
                HypersimplexId::new(k, n, !closed).unwrap_or_else(|e| usage_error(e.to_string()));
            out!("{}", count_points(id, r));
            ExitCode::SUCCESS
        }
        Command::Triangulate {
            k,
            n,
            format,
            graph,
        } => triangulate(k, n, format, graph),
        Command::Verify {
            max_n,
            exhaustive_max_n,
            seeds,
            r,
            threads,
            format,
            inject_fault,
        } => {
            let mut cfg = VerifyConfig {
                seeds,
                r,
                fault: inject_fault.map(|FaultArg::FlipOrientation| Fault::FlipOrientation),
                ..VerifyConfig::default()
            };
            if let Some(n) = max_n {
                if n > MAX_N_TRIANGULATION {
                    usage_error(format!(
                        "--max-n {n} exceeds the supported bound {MAX_N_TRIANGULATION}"
                    ));
                }
                cfg = cfg.with_max_n(n);
            }
            if let Some(n) = exhaustive_max_n {
                cfg.exhaustive_max_n = n;
            }
            if let Some(t) = threads {
                cfg.threads = t;
            }
            run_verify(cfg, format)
        }
        Command::Identity { r, max_n, max_k } => identity(r, max_n, max_k),
        Command::Joint { m } => {
            if m > MAX_N_STATS - 1 {
                usage_error(format!(
                    "m = {m} exceeds the supported bound {}",
                    MAX_N_STATS - 1
                ));
            }
            out_raw(&joint_table(m).to_csv());
            ExitCode::SUCCESS
        }
    }
}
