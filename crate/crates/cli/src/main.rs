use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use scaffoldkit::embedding::check_system;
use scaffoldkit::enumeration::DEFAULT_MAX_N;
use scaffoldkit::graph::is_three_connected;
use scaffoldkit::reconstruct::{
    detect_butterflies, find_forks, recognize_special, unresolved_forks, DEFAULT_MAX_DEPTH,
};
use scaffoldkit::verify::{verify_entries, verify_extended, Aggregate, VerifyOptions};
use scaffoldkit::{
    automorphisms, build_extended, enumerate_polyhedral_with, parse_graph6, read_corpus, reconstruct_with,
    validate_cubic, CensusOptions, CubicGraph, ExtendedGraph, FacialSystem, ReconstructOptions,
};

const MAX_N_ENV: &str = "SCAFFOLDKIT_MAX_N";

#[derive(Parser)]
#[command(name = "scaffoldkit", version, about = "Polyhedral embeddings of cubic graphs and their extended graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest graph order accepted for enumeration. SCAFFOLDKIT_MAX_N takes precedence.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check every graph6 line of a corpus file for cubicity and report 3-connectivity.
    Validate { corpus: PathBuf },
    /// List the polyhedral facial systems of one graph, up to automorphism.
    Enumerate { graph6: String },
    /// Build the extended graph of a facial system.
    Extend {
        graph6: String,
        /// Facial system JSON file ("-" for stdin).
        #[arg(long, conflicts_with = "index", required_unless_present = "index")]
        system: Option<PathBuf>,
        /// Use the census system with this index instead.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Recover the facial system from an extended graph JSON file ("-" for stdin).
    Reconstruct {
        extended: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Enumerate, extend and reconstruct every system of every corpus graph.
    VerifyBijection {
        corpus: PathBuf,
        /// Additional graph6 corpus verified after the main one.
        #[arg(long)]
        seed_corpus: Vec<PathBuf>,
        /// Treat the corpus as extended graph JSON-lines, each claimed valid.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Report forks, butterflies and special-graph recognition for an extended graph JSON file.
    Detect { extended: PathBuf },
}

/// Failure with a machine-readable tag, rendered as one JSON line.
struct Reported {
    code: u8,
    body: Value,
}

type Outcome = Result<u8, Reported>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out: Box<dyn Write> = match &cli.global.out {
        Some(p) => match fs::File::create(p) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if let Some(jobs) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global().ok();
    }
    let max_n = effective_max_n(cli.global.max_n);
    let result = run(&cli.command, max_n, &mut out);
    let code = match result {
        Ok(code) => code,
        Err(r) => {
            eprintln!("error: {}", r.body["detail"].as_str().unwrap_or("failed"));
            emit(&mut out, &r.body).ok();
            r.code
        }
    };
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

fn effective_max_n(flag: usize) -> usize {
    std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(flag)
}

fn run(cmd: &Command, max_n: usize, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Validate { corpus } => validate(corpus, out),
        Command::Enumerate { graph6 } => enumerate(graph6, max_n, out),
        Command::Extend { graph6, system, index } => extend(graph6, system.as_deref(), *index, max_n, out),
        Command::Reconstruct { extended, max_depth } => reconstruct(extended, *max_depth, out),
        Command::VerifyBijection { corpus, seed_corpus, extended, max_depth } => {
            let opts = VerifyOptions { max_n, max_depth: *max_depth, ..VerifyOptions::default() };
            if *extended {
                verify_extended_lines(corpus, &opts, out)
            } else {
                verify_bijection(corpus, seed_corpus, &opts, out)
            }
        }
        Command::Detect { extended } => detect(extended, out),
    }
}

fn input_error(e: anyhow::Error) -> Reported {
    Reported { code: 2, body: json!({ "error": "invalid-input", "detail": format!("{e:#}") }) }
}

fn io_error(e: io::Error) -> Reported {
    Reported { code: 2, body: json!({ "error": "io", "detail": e.to_string() }) }
}

fn emit(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")
}

fn emit_or_fail(out: &mut dyn Write, v: &Value) -> Result<(), Reported> {
    emit(out, v).map_err(io_error)
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn cubic_from_graph6(text: &str, max_n: usize) -> anyhow::Result<CubicGraph> {
    let g = parse_graph6(text.trim())?;
    if g.order() > max_n {
        bail!("graph has {} vertices, above the configured maximum {max_n}", g.order());
    }
    Ok(CubicGraph::new(&g)?)
}

fn read_extended(path: &Path) -> anyhow::Result<ExtendedGraph> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing extended graph {}", path.display()))
}

fn validate(corpus: &Path, out: &mut dyn Write) -> Outcome {
    let text = read_input(corpus).map_err(input_error)?;
    let mut all_ok = true;
    for e in read_corpus(&text) {
        let record = match &e.graph {
            Err(err) => {
                all_ok = false;
                json!({ "line": e.line, "graph6": e.text, "ok": false, "error": err.to_string() })
            }
            Ok(g) => {
                let report = validate_cubic(g);
                all_ok &= report.is_ok();
                let three_connected = CubicGraph::new(g).ok().map(|c| is_three_connected(&c));
                json!({
                    "line": e.line,
                    "graph6": e.text,
                    "order": g.order(),
                    "ok": report.is_ok(),
                    "violations": report.violations,
                    "three_connected": three_connected,
                })
            }
        };
        emit_or_fail(out, &record)?;
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn enumerate(graph6: &str, max_n: usize, out: &mut dyn Write) -> Outcome {
    let g = cubic_from_graph6(graph6, max_n).map_err(input_error)?;
    let opts = CensusOptions { max_n, ..CensusOptions::default() };
    let census = enumerate_polyhedral_with(&g, &automorphisms(&g), &opts).map_err(|e| input_error(e.into()))?;
    emit_or_fail(out, &serde_json::to_value(&census).expect("census serializes"))?;
    Ok(0)
}

fn extend(graph6: &str, system: Option<&Path>, index: Option<usize>, max_n: usize, out: &mut dyn Write) -> Outcome {
    let g = cubic_from_graph6(graph6, max_n).map_err(input_error)?;
    let fs: FacialSystem = match (system, index) {
        (Some(path), _) => {
            let text = read_input(path).map_err(input_error)?;
            serde_json::from_str(&text).context("parsing facial system").map_err(input_error)?
        }
        (None, Some(i)) => {
            let opts = CensusOptions { max_n, ..CensusOptions::default() };
            let census = enumerate_polyhedral_with(&g, &automorphisms(&g), &opts).map_err(|e| input_error(e.into()))?;
            let n = census.systems.len();
            census
                .systems
                .into_iter()
                .nth(i)
                .ok_or_else(|| input_error(anyhow!("census has {n} systems, index {i} is out of range")))?
        }
        (None, None) => return Err(input_error(anyhow!("either --system or --index is required"))),
    };
    check_system(&g, &fs).map_err(|e| input_error(e.into()))?;
    let ext = build_extended(&g, &fs).map_err(|e| input_error(e.into()))?;
    emit_or_fail(out, &serde_json::to_value(&ext).expect("extended graph serializes"))?;
    Ok(0)
}

fn reconstruct(path: &Path, max_depth: usize, out: &mut dyn Write) -> Outcome {
    let ext = read_extended(path).map_err(input_error)?;
    let auts = automorphisms(ext.graph());
    match reconstruct_with(&ext, &auts, &ReconstructOptions { max_depth }) {
        Ok(outcome) => {
            emit_or_fail(out, &serde_json::to_value(&outcome).expect("outcome serializes"))?;
            Ok(0)
        }
        Err(e) => Err(Reported { code: 1, body: json!({ "error": e.kind(), "detail": e.to_string() }) }),
    }
}

fn verify_bijection(corpus: &Path, seeds: &[PathBuf], opts: &VerifyOptions, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let mut aggregate = Aggregate::default();
    let mut write_err = None;
    let mut names = Vec::new();
    for path in std::iter::once(corpus).chain(seeds.iter().map(PathBuf::as_path)) {
        let text = read_input(path).map_err(input_error)?;
        let entries = read_corpus(&text);
        let corpus_id = path.display().to_string();
        verify_entries(&entries, opts, |rec| {
            aggregate.add(&rec);
            if write_err.is_none() {
                let mut v = serde_json::to_value(&rec).expect("record serializes");
                v["corpus"] = json!(corpus_id);
                write_err = emit(out, &v).err();
            }
        });
        names.push(corpus_id);
    }
    if let Some(e) = write_err {
        return Err(io_error(e));
    }
    let ok = aggregate.counters.violations() == 0;
    let summary = json!({
        "summary": true,
        "corpus": names,
        "ok": ok,
        "aggregate": aggregate,
        "wall_time_ms": start.elapsed().as_millis() as u64,
    });
    emit_or_fail(out, &summary)?;
    Ok(if ok { 0 } else { 1 })
}

fn verify_extended_lines(path: &Path, opts: &VerifyOptions, out: &mut dyn Write) -> Outcome {
    let text = read_input(path).map_err(input_error)?;
    let (mut total, mut failed) = (0usize, 0usize);
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        total += 1;
        let record = match serde_json::from_str::<ExtendedGraph>(trimmed) {
            Ok(ext) => serde_json::to_value(verify_extended(line_no, &ext, opts)).expect("record serializes"),
            Err(e) => json!({ "line": line_no, "ok": false, "error": "invalid-input", "detail": e.to_string() }),
        };
        if record["ok"] != json!(true) {
            failed += 1;
        }
        emit_or_fail(out, &record)?;
    }
    emit_or_fail(out, &json!({ "summary": true, "ok": failed == 0, "records": total, "failures": failed }))?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn detect(path: &Path, out: &mut dyn Write) -> Outcome {
    let ext = read_extended(path).map_err(input_error)?;
    let report = json!({
        "forks": find_forks(&ext),
        "butterflies": detect_butterflies(&ext),
        "unresolved_forks": unresolved_forks(&ext),
        "special": recognize_special(ext.graph()),
    });
    emit_or_fail(out, &report)?;
    Ok(0)
}
