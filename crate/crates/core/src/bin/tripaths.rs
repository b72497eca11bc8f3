use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use tripaths::checks::ClaimId;
use tripaths::error::{Error, Result};
use tripaths::generate::generate_connected_graphs_with;
use tripaths::graph6::{parse_graph6, parse_graph6_lines, to_graph6};
use tripaths::scan::{sample_triples, DEFAULT_PAIR_CAP, DEFAULT_SAMPLE, DEFAULT_TRIPLE_CAP};
use tripaths::subdivision::{attach_pendants, subdivide, verify_proposition, VerifyBudget};
use tripaths::{
    analyze_one, emit_analysis, emit_report, enumerate_longest_paths, scan, AnalyzeOptions, CrossingConvention,
    Exec, Format, Graph, PathTriple, ScanConfig, Source, TripleMode, DEFAULT_PATH_CAP,
};

const EXIT_CONFIG: u8 = 4;

#[derive(Parser)]
#[command(name = "tripaths", version, about = "Longest-path triple analysis for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print all connected graphs on n vertices, one per line.
    Gen {
        #[arg(long)]
        n: usize,
        /// Print every order from 1 to n.
        #[arg(long)]
        up_to: bool,
        #[arg(long)]
        allow_n8: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check the enabled claims over a corpus.
    Scan(ScanArgs),
    /// Analyze every longest-path triple of one graph.
    Analyze {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
        cap: usize,
        /// Triples analyzed; larger sets are sampled evenly.
        #[arg(long, default_value_t = 1000)]
        max_triples: usize,
        /// Subdivision parameters, comma separated.
        #[arg(long, value_delimiter = ',')]
        t: Vec<usize>,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        strict_t_convention: bool,
    },
    /// Build G' (t omitted) or G^t for a triple of longest paths.
    Subdivide {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value_t = GraphFormat::EdgeList)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify by exhaustive search that subdivision scales f by t + 1.
    VerifyProp {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        t: Vec<usize>,
        /// Triples checked when no triple is given.
        #[arg(long, default_value_t = 64)]
        max_triples: usize,
        #[arg(long, default_value_t = 60)]
        max_vertices: usize,
        /// Seconds allowed per instance.
        #[arg(long, default_value_t = 120)]
        time_limit: u64,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ScanArgs {
    /// Scan every connected graph on at most n vertices.
    #[arg(long, conflicts_with = "input")]
    n: Option<usize>,
    /// graph6 file (one graph per line) or edge-list file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
    #[arg(long)]
    allow_n8: bool,
    /// Comma-separated claim ids, or "all".
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    cap: usize,
    /// "shortcut", "all", or a number k for the first k triples.
    #[arg(long, default_value = "shortcut")]
    triples: String,
    #[arg(long, default_value_t = DEFAULT_TRIPLE_CAP)]
    triple_cap: u64,
    #[arg(long, default_value_t = DEFAULT_PAIR_CAP)]
    pair_cap: u64,
    /// Triples re-checked per graph on the shortcut path.
    #[arg(long, default_value_t = DEFAULT_SAMPLE)]
    sample: usize,
    #[arg(long, value_delimiter = ',')]
    t: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    strict_t_convention: bool,
}

#[derive(Args)]
struct GraphInput {
    /// The graph as a graph6 string.
    #[arg(long, conflicts_with = "input")]
    graph6: Option<String>,
    /// File holding the graph (first record of a graph6 file).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
}

#[derive(Args)]
struct TripleArgs {
    /// Positions of the three paths in the sorted longest-path list, e.g. 0,1,2.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    triple: Option<Vec<usize>>,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Graph6,
    EdgeList,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    EdgeList,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    let start = Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    };
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen { n, up_to, allow_n8, format, out, jobs } => {
            if n == 8 && !allow_n8 {
                return Err(Error::Config("n = 8 needs --allow-n8".into()));
            }
            let exec = Exec::from_jobs(jobs);
            let orders = if up_to { 1..=n } else { n..=n };
            let mut text = String::new();
            for k in orders {
                for g in exec.install(jobs, || generate_connected_graphs_with(k, exec))? {
                    text.push_str(&render_graph(&g, format)?);
                }
            }
            write_out(out.as_deref(), text.as_bytes())?;
            Ok(0)
        }
        Command::Scan(a) => {
            let config = scan_config(&a)?;
            let format: Format = a.format.parse()?;
            let report = scan(&config)?;
            write_out(a.out.as_deref(), &emit_report(&report, format))?;
            eprintln!(
                "{} graphs, {} conjecture violations, {} proven-statement violations",
                report.summary.graphs, report.summary.conjecture_violations, report.summary.proven_violations
            );
            Ok(report.exit_code() as u8)
        }
        Command::Analyze { input, checks, cap, max_triples, t, format, out, strict_t_convention } => {
            let g = read_graph(&input)?;
            let format: Format = format.parse()?;
            if cap == 0 || max_triples == 0 {
                return Err(Error::Config("caps must be at least 1".into()));
            }
            let options = AnalyzeOptions {
                cap,
                checks: parse_checks(&checks)?,
                t_values: t,
                convention: convention(strict_t_convention),
                max_triples,
                ..AnalyzeOptions::default()
            };
            let a = analyze_one(&g, &options)?;
            write_out(out.as_deref(), &emit_analysis(&a, format))?;
            Ok(a.exit_code() as u8)
        }
        Command::Subdivide { input, triple, t, format, out } => {
            let g = read_graph(&input)?;
            let tr = pick_triples(&g, &triple, 1)?.remove(0);
            let ext = attach_pendants(&g, &tr)?;
            let h = match t {
                None => ext.graph,
                Some(t) => {
                    let size = ext.graph.n() + t * ext.graph.edge_count();
                    if size > tripaths::MAX_VERTICES {
                        return Err(Error::TooManyVertices(size));
                    }
                    subdivide(&ext, t).graph
                }
            };
            write_out(out.as_deref(), render_graph(&h, format)?.as_bytes())?;
            Ok(0)
        }
        Command::VerifyProp { input, triple, t, max_triples, max_vertices, time_limit, format, out } => {
            let g = read_graph(&input)?;
            let format: Format = format.parse()?;
            let budget = VerifyBudget {
                max_vertices,
                time_limit: Duration::from_secs(time_limit),
                path_cap: triple.cap.unwrap_or(DEFAULT_PATH_CAP),
            };
            let mut reports = Vec::new();
            for tr in pick_triples(&g, &triple, max_triples)? {
                for &t in &t {
                    reports.push((tr.clone(), verify_proposition(&g, &tr, t, budget)?));
                }
            }
            let bytes = match format {
                Format::Json => {
                    let list: Vec<_> = reports
                        .iter()
                        .map(|(tr, r)| serde_json::json!({ "paths": tr, "report": r }))
                        .collect();
                    let mut b = serde_json::to_vec_pretty(&list).expect("serializable");
                    b.push(b'\n');
                    b
                }
                _ => {
                    let mut s = String::new();
                    for (tr, r) in &reports {
                        let ps: Vec<_> = tr.paths().iter().map(|p| p.vertices().to_vec()).collect();
                        s.push_str(&format!(
                            "{:?} t={} {} l(G^t)={:?} expected {} f={:?} expected {} original witness {}\n",
                            ps,
                            r.t,
                            r.status.as_str(),
                            r.length,
                            r.lifted_length,
                            r.f,
                            r.expected_f,
                            r.original_witness
                        ));
                    }
                    s.into_bytes()
                }
            };
            write_out(out.as_deref(), &bytes)?;
            let violated = reports.iter().any(|(_, r)| r.status == tripaths::checks::Status::Violated);
            Ok(if violated { 3 } else { 0 })
        }
    }
}

fn convention(strict: bool) -> CrossingConvention {
    if strict {
        CrossingConvention::Strict
    } else {
        CrossingConvention::Inclusive
    }
}

fn parse_checks(s: &str) -> Result<BTreeSet<ClaimId>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(ClaimId::ALL.into_iter().collect());
    }
    s.split(',').map(|c| c.trim().parse()).collect()
}

fn scan_config(a: &ScanArgs) -> Result<ScanConfig> {
    let source = match (&a.n, &a.input) {
        (Some(n), None) => Source::Generate { n: *n },
        (None, Some(p)) => match input_kind(a.input_format, p)? {
            InputFormat::EdgeList => Source::EdgeListFile(p.clone()),
            _ => Source::Graph6File(p.clone()),
        },
        _ => return Err(Error::Config("exactly one of --n and --input is required".into())),
    };
    let triple_mode = match a.triples.as_str() {
        "shortcut" => TripleMode::ShortcutFirst,
        "all" => TripleMode::All,
        k => TripleMode::Capped(
            k.parse().map_err(|_| Error::Config(format!("--triples takes shortcut, all, or a count, got {k:?}")))?,
        ),
    };
    Ok(ScanConfig {
        source,
        triple_mode,
        checks: parse_checks(&a.checks)?,
        cap: a.cap,
        triple_cap: a.triple_cap,
        pair_cap: a.pair_cap,
        sample: a.sample,
        t_values: a.t.clone(),
        jobs: a.jobs,
        convention: convention(a.strict_t_convention),
        allow_large: a.allow_n8,
        ..ScanConfig::default()
    })
}

/// Resolves `Auto` by looking at the first record: edge lists start with
/// an "n m" header, graph6 records contain no spaces.
fn input_kind(format: InputFormat, path: &std::path::Path) -> Result<InputFormat> {
    if !matches!(format, InputFormat::Auto) {
        return Ok(format);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    Ok(match first {
        Some(l) if l.contains(char::is_whitespace) => InputFormat::EdgeList,
        _ => InputFormat::Graph6,
    })
}

fn read_graph(input: &GraphInput) -> Result<Graph> {
    match (&input.graph6, &input.input) {
        (Some(s), None) => parse_graph6(s.trim().as_bytes()),
        (None, Some(p)) => {
            let kind = input_kind(input.input_format, p)?;
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            match kind {
                InputFormat::EdgeList => Graph::parse_edge_list(&text),
                _ => parse_graph6_lines(&text)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Graph6("no graph in input".into())),
            }
        }
        _ => Err(Error::Config("exactly one of --graph6 and --input is required".into())),
    }
}

/// The requested triple, or an even sample of all longest-path triples.
fn pick_triples(g: &Graph, args: &TripleArgs, max: usize) -> Result<Vec<PathTriple>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let longest = enumerate_longest_paths(g, args.cap.unwrap_or(DEFAULT_PATH_CAP));
    if longest.is_truncated() {
        return Err(Error::Truncated(longest.len()));
    }
    let ps = longest.paths();
    let pick = |idx: &[usize]| -> Result<PathTriple> {
        let get = |i: usize| {
            ps.get(i)
                .cloned()
                .ok_or_else(|| Error::Config(format!("path index {i} out of range (|L(G)| = {})", ps.len())))
        };
        PathTriple::new(g, [get(idx[0])?, get(idx[1])?, get(idx[2])?])
    };
    match &args.triple {
        Some(idx) if idx.len() == 3 => Ok(vec![pick(idx)?]),
        Some(_) => Err(Error::Config("--triple takes exactly three indices".into())),
        None if ps.len() < 3 => Err(Error::Config(format!("only {} longest paths; no triple exists", ps.len()))),
        None => sample_triples(ps.len(), max).iter().map(|idx| pick(idx)).collect(),
    }
}

fn render_graph(g: &Graph, format: GraphFormat) -> Result<String> {
    Ok(match format {
        GraphFormat::Graph6 => to_graph6(g)? + "\n",
        GraphFormat::EdgeList => g.to_edge_list(),
    })
}

fn write_out(path: Option<&std::path::Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
