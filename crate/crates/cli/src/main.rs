use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cwd_core::encoder::{emit_dimacs, encode, Encoding, VarMap};
use cwd_core::experiments::{
    is_triangular_prism, named_csv, named_row, p_grid, survey, survey_csv, survey_graphs, sweep, sweep_csv,
};
use cwd_core::graph::{catalog, catalog_entry, generate_named, parse_edge_list, parse_graph6, Graph};
use cwd_core::search::{clique_width, verify_certificate, SearchOptions, Strategy};
use cwd_core::solver::{Backend, SolverConfig, SOLVER_ENV};

/// Exact clique-width through SAT.
#[derive(Parser)]
#[command(name = "cwd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the clique-width of one graph.
    Cwd(CwdArgs),
    /// Write the CNF formula F(G, k, t) in DIMACS format.
    Encode(EncodeArgs),
    /// Re-check a certificate written by `cwd cwd --certificate`.
    Verify(VerifyArgs),
    /// Count connected and prime graphs by clique-width.
    Survey(SurveyArgs),
    /// Mean clique-width of random graphs over a grid of edge probabilities.
    Sweep(SweepArgs),
    /// Clique-width of catalog graphs with instance sizes.
    Table(TableArgs),
    /// List or show the named-graph catalog.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    Edges,
    Graph6,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file (edge list or graph6); `-` reads standard input.
    #[arg(long, conflicts_with = "named")]
    graph: Option<PathBuf>,
    /// Catalog or generator name, e.g. petersen, paley, grid.
    #[arg(long)]
    named: Option<String>,
    /// Integer parameter for generator names; repeatable.
    #[arg(long = "param")]
    params: Vec<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    format: Format,
}

impl GraphArgs {
    fn load(&self) -> Result<Graph> {
        match (&self.graph, &self.named) {
            (Some(path), _) => read_graph(path, self.format),
            (None, Some(name)) => Ok(generate_named(name, &self.params)?),
            (None, None) => bail!("give --graph PATH or --named NAME"),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_graph(path: &Path, format: Format) -> Result<Graph> {
    let text = read_text(path)?;
    let as_graph6 = match format {
        Format::Graph6 => true,
        Format::Edges => false,
        // Edge-list lines hold two indices; a graph6 file is one token per line.
        Format::Auto => {
            let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
            path.extension().is_some_and(|e| e == "g6")
                || first.is_some_and(|l| l.starts_with(">>graph6<<") || !l.contains(char::is_whitespace))
        }
    };
    let g = if as_graph6 {
        let line = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        parse_graph6(line)?
    } else {
        parse_edge_list(&text)?
    };
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    Ok(match stem {
        Some(s) if s != "-" => g.with_name(s),
        _ => g,
    })
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, default_value = "rep")]
    encoding: Encoding,
    #[arg(long, default_value = "down")]
    strategy: Strategy,
    /// `cadical` (in-process), `embedded`, or an external command with an
    /// optional `{cnf}` placeholder. Defaults to $CWD_SAT_SOLVER, else cadical.
    #[arg(long)]
    solver: Option<String>,
    /// Seconds allowed for each SAT call.
    #[arg(long)]
    timeout: Option<f64>,
    /// Maximum number of concurrent SAT calls.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Skip twin and universal-vertex removal.
    #[arg(long)]
    no_reductions: bool,
}

impl SolveArgs {
    fn options(&self) -> Result<SearchOptions> {
        let timeout = match self.timeout {
            Some(s) if !(s > 0.0 && s.is_finite()) => bail!("--timeout must be a positive number of seconds"),
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        Ok(SearchOptions {
            encoding: self.encoding,
            strategy: self.strategy,
            timeout,
            parallel: self.parallel,
            reductions: !self.no_reductions,
            backend: backend(self.solver.as_deref()),
        })
    }
}

fn backend(spec: Option<&str>) -> Backend {
    match spec {
        None => Backend::from_env(),
        Some("cadical") => Backend::Cadical,
        Some("embedded") => Backend::embedded(),
        Some(cmd) => Backend::External(SolverConfig::new(cmd)),
    }
}

#[derive(Args)]
struct CwdArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    solve: SolveArgs,
    /// Write the certificate JSON here.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Re-read the written certificate and check it.
    #[arg(long, requires = "certificate")]
    verify: bool,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(short)]
    k: usize,
    /// Derivation length; defaults to n - k + 1.
    #[arg(short)]
    t: Option<usize>,
    #[arg(long, default_value = "rep")]
    encoding: Encoding,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    certificate: PathBuf,
    /// Check against this graph instead of the one recorded in the certificate.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    format: Format,
    /// Re-run the UNSAT evidence with a solver instead of trusting it.
    #[arg(long)]
    resolve: bool,
    #[arg(long)]
    solver: Option<String>,
}

#[derive(Args)]
struct SurveyArgs {
    /// Vertex counts to enumerate (at most 7); repeatable.
    #[arg(short, required_unless_present = "graph6_stream")]
    n: Vec<usize>,
    /// Read connected graphs, one graph6 string per line, instead of enumerating.
    #[arg(long)]
    graph6_stream: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(short)]
    n: usize,
    #[arg(long, default_value_t = 0.1)]
    p_grid: f64,
    #[arg(long, default_value_t = 25)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Catalog names; all entries when absent.
    names: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, conflicts_with = "show")]
    list: bool,
    #[arg(long)]
    show: Option<String>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Cwd(a) => cmd_cwd(a),
        Command::Encode(a) => cmd_encode(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Survey(a) => cmd_survey(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Table(a) => cmd_table(a),
        Command::Catalog(a) => cmd_catalog(a),
    }
}

fn cmd_cwd(a: CwdArgs) -> Result<ExitCode> {
    let g = a.graph.load()?;
    let opts = a.solve.options()?;
    let cert = clique_width(&g, &opts)?;
    let label = g.name().unwrap_or("graph");
    println!("{label}: n = {}, m = {}", g.n(), g.edge_count());
    match cert.cwd {
        Some(k) => println!("cwd = {k}"),
        None => println!("cwd in [{}, {}] (inconclusive: a solver call timed out)", cert.lower, cert.upper),
    }
    println!("witness: {}", cert.witness.expression);
    if let Some(path) = &a.certificate {
        fs::write(path, cert.to_json()).with_context(|| format!("writing {}", path.display()))?;
        if a.verify {
            let text = fs::read_to_string(path)?;
            let report = verify_certificate(&text, Some(&g), None)?;
            print_report(&report);
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(if cert.is_exact() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_encode(a: EncodeArgs) -> Result<ExitCode> {
    let g = a.graph.load()?;
    let n = g.n();
    if a.k == 0 || a.k > n {
        bail!("-k must lie in 1..={n}");
    }
    let t = a.t.unwrap_or(n - a.k + 1);
    let inst = encode(&g, a.k, t, a.encoding)?;
    let vars = VarMap::new(n, a.k, t, a.encoding).total();
    let comments = vec![
        format!("F(G,k,t) for {} with n={n} m={}", g.name().unwrap_or("graph"), g.edge_count()),
        format!("k={} t={t} encoding={}", a.k, a.encoding),
    ];
    let summary = format!("{} variables, {} clauses", vars, inst.num_clauses());
    write_output(a.out.as_deref(), &emit_dimacs(&inst, &comments))?;
    if a.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(report: &cwd_core::search::VerificationReport) {
    for c in &report.checks {
        let status = if c.passed { "ok  " } else { "FAIL" };
        match &c.detail {
            Some(d) => println!("{status} {}: {d}", c.name),
            None => println!("{status} {}", c.name),
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    let text = read_text(&a.certificate)?;
    let graph = a.graph.as_deref().map(|p| read_graph(p, a.format)).transpose()?;
    let solver = a.resolve.then(|| backend(a.solver.as_deref()));
    let report = verify_certificate(&text, graph.as_ref(), solver.as_ref())?;
    print_report(&report);
    if report.passed() {
        println!("certificate verified");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("certificate rejected");
        Ok(ExitCode::from(1))
    }
}

fn cmd_survey(a: SurveyArgs) -> Result<ExitCode> {
    let opts = a.solve.options()?;
    let mut reports = Vec::new();
    if let Some(path) = &a.graph6_stream {
        let text = read_text(path)?;
        let mut by_n: std::collections::BTreeMap<usize, Vec<Graph>> = Default::default();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let g = parse_graph6(line)?;
            if a.n.is_empty() || a.n.contains(&g.n()) {
                by_n.entry(g.n()).or_default().push(g);
            }
        }
        for (n, graphs) in by_n {
            reports.push(survey_graphs(n, graphs, &opts)?);
        }
    } else {
        for &n in &a.n {
            reports.push(survey(n, &opts)?);
        }
    }
    let mut inconclusive = false;
    for r in &reports {
        let row = &r.row;
        let widths: Vec<String> = row.widths.iter().map(|(k, c)| format!("cw{k}={c}")).collect();
        eprintln!("n={}: connected {}, prime {}, {}", row.n, row.connected, row.prime, widths.join(" "));
        if let Some((&top, &count)) = row.widths.iter().next_back() {
            let prism = if row.n == 6 && top == 4 && count == 1 {
                let g = parse_graph6(&r.widest[0])?;
                if is_triangular_prism(&g) {
                    " (the triangular prism)"
                } else {
                    ""
                }
            } else {
                ""
            };
            eprintln!("  widest prime graphs (cwd {top}): {}{prism}", r.widest.join(" "));
        }
        inconclusive |= row.inconclusive > 0;
    }
    let rows: Vec<_> = reports.into_iter().map(|r| r.row).collect();
    write_output(a.out.as_deref(), &survey_csv(&rows)?)?;
    Ok(if inconclusive { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_sweep(a: SweepArgs) -> Result<ExitCode> {
    let opts = a.solve.options()?;
    let ps = p_grid(a.p_grid)?;
    let points = sweep(a.n, &ps, a.samples, a.seed, &opts)?;
    write_output(a.out.as_deref(), &sweep_csv(&points)?)?;
    let inconclusive = points.iter().any(|p| p.inconclusive > 0);
    Ok(if inconclusive { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_table(a: TableArgs) -> Result<ExitCode> {
    let opts = a.solve.options()?;
    let entries = if a.names.is_empty() {
        catalog()
    } else {
        a.names
            .iter()
            .map(|n| catalog_entry(n).with_context(|| format!("no catalog entry `{n}`")))
            .collect::<Result<Vec<_>>>()?
    };
    let mut rows = Vec::new();
    for e in &entries {
        let row = named_row(e, &opts)?;
        eprintln!("{}: cwd in [{}, {}], reference {}", row.name, row.lower, row.upper, row.reference_cwd);
        rows.push(row);
    }
    write_output(a.out.as_deref(), &named_csv(&rows)?)?;
    let inconclusive = rows.iter().any(|r| r.lower != r.upper);
    Ok(if inconclusive { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_catalog(a: CatalogArgs) -> Result<ExitCode> {
    if let Some(name) = a.show {
        let e = catalog_entry(&name).with_context(|| format!("no catalog entry `{name}`"))?;
        let g = e.graph()?;
        println!("name: {}", e.name);
        println!("vertices: {}", e.n);
        println!("edges: {}", e.m);
        println!("reference cwd: {}", e.reference_cwd);
        println!("graph6: {}", cwd_core::graph::to_graph6(&g));
        match &e.source {
            cwd_core::graph::CatalogSource::Embedded { provenance, .. } => println!("source: {provenance}"),
            cwd_core::graph::CatalogSource::Generated { description } => println!("source: generated, {description}"),
        }
        return Ok(ExitCode::SUCCESS);
    }
    println!("{:<16} {:>4} {:>5} {:>8}", "name", "|V|", "|E|", "ref cwd");
    for e in catalog() {
        println!("{:<16} {:>4} {:>5} {:>8}", e.name, e.n, e.m, e.reference_cwd);
    }
    println!("(reference values are literature metadata; solver default: ${SOLVER_ENV} or in-process cadical)");
    Ok(ExitCode::SUCCESS)
}
