use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use walkgauge::report::{fmt_short, profile_csv, to_json};
use walkgauge::{
    classify_with_grid, generate, is_connected, parse_edge_list, parse_graph6_lines,
    run_battery_with, search_regular_not_walk_regular, Analyzer, BetaGrid, Error, FamilySpec,
    Graph, Tolerances, WalkClass, DEFAULT_MAX_DENSE_N,
};

const MAX_N_ENV: &str = "WALKGAUGE_MAX_N";

#[derive(Parser, Debug)]
#[command(
    name = "walkgauge",
    version,
    about = "Walk entropy, subgraph centrality and exact walk-regularity of simple graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Place a graph in one of the three entropy classes.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// `min:max:count:log|linear`; defaults to 41 log-spaced points in [1e-3, 40].
        #[arg(long)]
        grid: Option<BetaGrid>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Entropy profile over a beta grid, with the beta = 0 and beta = inf limits.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        /// `min:max:count:log|linear`; defaults to 41 log-spaced points in [1e-3, 40].
        #[arg(long)]
        grid: Option<BetaGrid>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the invariant battery. Exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// `min:max:count:log|linear`; defaults to 41 log-spaced points in [1e-3, 40].
        #[arg(long)]
        grid: Option<BetaGrid>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Most negative inequality slack accepted.
        #[arg(long, default_value_t = walkgauge::verify::SLACK_TOLERANCE)]
        slack_tol: f64,
        /// Deficit at beta = 1 still counted as maximal entropy.
        #[arg(long, default_value_t = walkgauge::classify::MAX_ENTROPY_TOLERANCE)]
        entropy_tol: f64,
        /// sigma_d^2(e^A) still counted as zero.
        #[arg(long, default_value_t = walkgauge::verify::SIGMA_ZERO_TOLERANCE)]
        sigma_tol: f64,
    },
    /// Regular graphs that are not walk-regular, as graph6 lines.
    Search {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        degree: Option<usize>,
        /// graph6 file of candidates; without it all regular graphs on up to 8 vertices are enumerated.
        #[arg(long)]
        stream: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Edge-list or graph6 file, `-` for stdin.
    #[arg(long, required_unless_present = "family", conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Built-in family name.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Input file format; inferred from a `.g6` or `.graph6` extension otherwise.
    #[arg(long, value_enum, requires = "input")]
    input_format: Option<InputFormat>,
    /// Vertex count (complete, cycle, path, star, circulant, edgeless).
    #[arg(long)]
    n: Option<usize>,
    /// First side of a complete bipartite graph.
    #[arg(long)]
    m: Option<usize>,
    /// Second side of a complete bipartite graph.
    #[arg(long)]
    k: Option<usize>,
    /// Circulant connection set, comma-separated.
    #[arg(long, value_delimiter = ',')]
    connections: Vec<usize>,
    /// Hypercube dimension.
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum Family {
    Complete,
    Cycle,
    Path,
    Star,
    CompleteBipartite,
    Circulant,
    Hypercube,
    Petersen,
    TwinK4e,
    Edgeless,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InputFormat {
    Edgelist,
    Graph6,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Text,
}

/// Failure carrying its exit status.
enum Failure {
    Verification(String),
    Input(String),
    Diagnostic(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Diagnostic(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Input(m) | Failure::Diagnostic(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Diagnostic(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn need<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Input(format!("--family {family} requires {flag}")))
}

fn family_spec(family: Family, a: &InputArgs) -> Result<FamilySpec, Failure> {
    let name = family.to_possible_value().expect("no skipped variants");
    let name = name.get_name();
    Ok(match family {
        Family::Complete => FamilySpec::Complete(need(a.n, "--n", name)?),
        Family::Cycle => FamilySpec::Cycle(need(a.n, "--n", name)?),
        Family::Path => FamilySpec::Path(need(a.n, "--n", name)?),
        Family::Star => FamilySpec::Star(need(a.n, "--n", name)?),
        Family::CompleteBipartite => {
            FamilySpec::CompleteBipartite(need(a.m, "--m", name)?, need(a.k, "--k", name)?)
        }
        Family::Circulant => {
            if a.connections.is_empty() {
                return Err(Failure::Input(
                    "--family circulant requires --connections".into(),
                ));
            }
            FamilySpec::Circulant(need(a.n, "--n", name)?, a.connections.clone())
        }
        Family::Hypercube => FamilySpec::Hypercube(need(a.dim.or(a.n), "--dim", name)?),
        Family::Petersen => FamilySpec::Petersen,
        Family::TwinK4e => FamilySpec::TwinK4e,
        Family::Edgeless => FamilySpec::Edgeless(need(a.n, "--n", name)?),
    })
}

fn read_source(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn is_graph6_path(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("g6") | Some("graph6")
    )
}

fn max_dense_n() -> Result<usize, Failure> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                Failure::Input(format!("{MAX_N_ENV} must be a positive integer, got {v:?}"))
            }),
        Err(_) => Ok(DEFAULT_MAX_DENSE_N),
    }
}

/// Loads the graph and a short name for it.
fn load(a: &InputArgs) -> Result<(Graph, String), Failure> {
    let (g, id) = if let Some(family) = a.family {
        let spec = family_spec(family, a)?;
        (generate(&spec)?, spec.to_string())
    } else {
        let path = a.input.as_ref().expect("clap enforces one source");
        let text = read_source(path)?;
        let graph6 = match a.input_format {
            Some(f) => f == InputFormat::Graph6,
            None => is_graph6_path(path),
        };
        let g = if graph6 {
            let mut graphs = parse_graph6_lines(&text)?;
            if graphs.len() != 1 {
                return Err(Failure::Input(format!(
                    "{}: expected one graph6 line, found {}",
                    path.display(),
                    graphs.len()
                )));
            }
            graphs.remove(0)
        } else {
            parse_edge_list(&text)?
        };
        (g, path.display().to_string())
    };
    g.check_dense_size(max_dense_n()?)?;
    Ok((g, id))
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Diagnostic(format!("stdout: {e}")))
        }
    }
}

fn no_csv(format: Format, command: &str) -> Outcome {
    if format == Format::Csv {
        return Err(Failure::Input(format!(
            "{command} has no CSV output; use text or json"
        )));
    }
    Ok(())
}

fn json_text<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    Ok(to_json(value)? + "\n")
}

fn cmd_classify(
    input: &InputArgs,
    grid: Option<BetaGrid>,
    format: Format,
    output: Option<&Path>,
) -> Outcome {
    no_csv(format, "classify")?;
    let (g, id) = load(input)?;
    let c = classify_with_grid(&g, &grid.unwrap_or_default())?;
    let witness = c.witness.map(|w| {
        json!({
            "k": w.k,
            "vertices": [g.label(w.vertices.0), g.label(w.vertices.1)],
        })
    });
    let text = match format {
        Format::Json => json_text(&json!({
            "graph": id,
            "n": g.n(),
            "edges": g.edge_count(),
            "class": c.class.to_string(),
            "witness": witness,
            "connected": c.connected,
            "deficit_at_one": c.deficit_at_one,
            "sup_estimate": c.profile.sup_estimate,
            "gap_estimate": c.profile.gap_estimate,
            "limit_infinity": c.profile.limit_infinity,
            "notes": c.notes,
        }))?,
        _ => {
            let mut s = c.class.to_string();
            if let (Some(w), true) = (c.witness, c.class != WalkClass::WalkRegular) {
                let what = if w.k == 2 { "degrees" } else { "closed walks" };
                s += &format!(
                    ", witness k={} ({what} differ at vertices {} and {})",
                    w.k,
                    g.label(w.vertices.0),
                    g.label(w.vertices.1)
                );
            }
            s += "\n";
            s += &format!("graph: {id} (n = {}, m = {})\n", g.n(), g.edge_count());
            s += &format!("deficit at beta=1: {}\n", fmt_short(c.deficit_at_one));
            s += &format!("gap_estimate: {}\n", fmt_short(c.profile.gap_estimate));
            s += &format!(
                "entropy at beta->inf: {}\n",
                fmt_short(c.profile.limit_infinity.entropy)
            );
            if !c.connected {
                s += "warning: graph is disconnected; the entropy characterization is stated for connected graphs\n";
            }
            for note in &c.notes {
                s += &format!("note: {note}\n");
            }
            s
        }
    };
    emit(output, &text)
}

fn cmd_sweep(
    input: &InputArgs,
    grid: Option<BetaGrid>,
    format: Format,
    output: Option<&Path>,
) -> Outcome {
    let (g, id) = load(input)?;
    let grid = grid.unwrap_or_default();
    let mut profile = Analyzer::new(&g)?.profile(&grid, true)?;
    profile.graph_id = Some(id);
    let text = match format {
        Format::Csv => profile_csv(&profile)?,
        Format::Json => json_text(&profile)?,
        Format::Text => {
            let mut s = format!(
                "{:>12} {:>12} {:>12} {:>12}\n",
                "beta", "entropy", "deficit", "ln_Z"
            );
            s += &format!(
                "{:>12} {:>12} {:>12} {:>12}\n",
                "0",
                fmt_short(profile.limit_zero),
                "0",
                fmt_short(profile.limit_zero)
            );
            for p in &profile.points {
                s += &format!(
                    "{:>12} {:>12} {:>12} {:>12}\n",
                    fmt_short(p.beta),
                    fmt_short(p.entropy),
                    fmt_short(p.deficit),
                    fmt_short(p.ln_z)
                );
            }
            let lim = &profile.limit_infinity;
            s += &format!(
                "{:>12} {:>12} {:>12} {:>12}\n",
                "inf",
                fmt_short(lim.entropy),
                fmt_short(lim.deficit),
                ""
            );
            s
        }
    };
    emit(output, &text)
}

fn cmd_verify(
    input: &InputArgs,
    grid: Option<BetaGrid>,
    format: Format,
    output: Option<&Path>,
    tol: Tolerances,
) -> Outcome {
    no_csv(format, "verify")?;
    let (g, id) = load(input)?;
    let checks = run_battery_with(&g, &grid.unwrap_or_default(), &tol)?;
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    let text = match format {
        Format::Json => json_text(&json!({
            "graph": id,
            "connected": is_connected(&g),
            "tolerances": tol,
            "checks": checks,
            "passed": failed.is_empty(),
        }))?,
        _ => {
            let mut s = String::new();
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                s += &format!("{tag} {}: {}\n", c.name, c.detail);
            }
            s += &format!(
                "{}/{} checks passed for {id}\n",
                checks.len() - failed.len(),
                checks.len()
            );
            s
        }
    };
    emit(output, &text)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn cmd_search(
    max_n: usize,
    degree: Option<usize>,
    stream: Option<&Path>,
    format: Format,
    output: Option<&Path>,
) -> Outcome {
    no_csv(format, "search")?;
    let candidates = match stream {
        Some(path) => Some(parse_graph6_lines(&read_source(path)?)?),
        None => None,
    };
    let found = search_regular_not_walk_regular(candidates.as_deref(), max_n, degree)?;
    let source = match (&candidates, stream) {
        (Some(c), Some(p)) => format!("{} candidates from {}", c.len(), p.display()),
        _ => format!("built-in enumeration up to n = {max_n}"),
    };
    let text = match format {
        Format::Json => json_text(&json!({
            "source": source,
            "max_n": max_n,
            "degree": degree,
            "found": found.iter().map(|(s, g)| json!({"graph6": s, "n": g.n()})).collect::<Vec<_>>(),
        }))?,
        _ => {
            // The summary goes to stderr so stdout stays a plain graph6 stream.
            eprintln!(
                "{} regular graphs that are not walk-regular ({source})",
                found.len()
            );
            found.iter().map(|(line, _)| format!("{line}\n")).collect()
        }
    };
    emit(output, &text)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Classify {
            input,
            grid,
            format,
            output,
        } => cmd_classify(&input, grid, format, output.as_deref()),
        Command::Sweep {
            input,
            grid,
            format,
            output,
        } => cmd_sweep(&input, grid, format, output.as_deref()),
        Command::Verify {
            input,
            grid,
            format,
            output,
            slack_tol,
            entropy_tol,
            sigma_tol,
        } => {
            let tol = Tolerances {
                slack: slack_tol,
                max_entropy: entropy_tol,
                sigma_zero: sigma_tol,
            };
            if ![tol.slack, tol.max_entropy, tol.sigma_zero]
                .iter()
                .all(|t| t.is_finite() && *t >= 0.0)
            {
                return Err(Failure::Input(
                    "tolerances must be finite and non-negative".into(),
                ));
            }
            cmd_verify(&input, grid, format, output.as_deref(), tol)
        }
        Command::Search {
            max_n,
            degree,
            stream,
            format,
            output,
        } => cmd_search(max_n, degree, stream.as_deref(), format, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
