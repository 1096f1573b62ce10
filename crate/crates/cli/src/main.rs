use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

use skein_core::decider::{
    decide, parse_certificate, verify_certificate_with, write_certificate, DecideError, VerificationMode, VerifyOptions,
};
use skein_core::graph::io::parse_graph;
use skein_core::graph::{EnumerationBounds, Multigraph, Pattern};
use skein_core::miner::{default_patterns, group_dotted, mine, parse_patterns, sanity, write_patterns};
use skein_core::selfcheck::{self, Config};

/// Decide whether bicircular matroids of multigraphs are signed-graphic.
#[derive(Parser)]
#[command(name = "skein", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one or more graph files and write a certificate for each.
    Decide {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        /// Pattern file; the bundled set is used when absent.
        #[arg(long)]
        patterns: Option<PathBuf>,
        /// Directory for certificates.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = 18)]
        exhaustive_limit: usize,
        /// Random subsets checked when a graph exceeds the exhaustive limit.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Mine minimal forbidden graphs and write a pattern file.
    Mine {
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = 8)]
        mmax: usize,
        #[arg(long, default_value_t = 5)]
        pcap: usize,
        #[arg(long, default_value_t = 2)]
        lcap: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the acceptance checks.
    Selfcheck {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 7)]
        mmax: usize,
        #[arg(long)]
        patterns: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify {
        graph: PathBuf,
        certificate: PathBuf,
        #[arg(long, default_value_t = 18)]
        exhaustive_limit: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Multigraph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_patterns(path: Option<&Path>) -> Result<Vec<Pattern>> {
    match path {
        Some(p) => parse_patterns(&read(p)?).with_context(|| format!("parsing {}", p.display())),
        None => Ok(default_patterns()),
    }
}

/// Write through a temporary file in the same directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))
}

struct Verdict {
    input: PathBuf,
    accepted: bool,
    certificate: PathBuf,
    elapsed: Duration,
    mode: VerificationMode,
}

fn decide_one(path: &Path, patterns: &[Pattern], out: &Path, opts: &VerifyOptions) -> Result<Verdict> {
    let start = Instant::now();
    let g = load_graph(path)?;
    let d = match decide(&g, patterns, opts) {
        Ok(d) => d,
        Err(e @ DecideError::InternalInconsistency { .. }) => {
            anyhow::bail!("{}: {e}", path.display());
        }
        Err(e) => return Err(e).with_context(|| format!("deciding {}", path.display())),
    };
    let stem = path.file_stem().map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned());
    let certificate = out.join(format!("{stem}.cert"));
    write_atomic(&certificate, &write_certificate(&d.certificate))?;
    Ok(Verdict { input: path.to_path_buf(), accepted: d.accepted, certificate, elapsed: start.elapsed(), mode: d.verification.mode })
}

fn cmd_decide(graphs: &[PathBuf], patterns: Option<&Path>, out: &Path, opts: VerifyOptions) -> Result<ExitCode> {
    let patterns = load_patterns(patterns)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let results: Vec<Result<Verdict>> = graphs.par_iter().map(|p| decide_one(p, &patterns, out, &opts)).collect();
    let mut code = 0u8;
    for r in results {
        match r {
            Ok(v) => {
                let verdict = if v.accepted { "signed-graphic" } else { "not-signed-graphic" };
                let mode = match v.mode {
                    VerificationMode::Exhaustive => "exhaustive".to_string(),
                    VerificationMode::Sampled(n) => format!("sampled({n})"),
                };
                println!("RESULT {} {verdict} {}", v.input.display(), v.certificate.display());
                eprintln!("  {} in {:.2?}, verification {mode}", v.input.display(), v.elapsed);
                if !v.accepted {
                    code = code.max(1);
                }
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                code = 2;
            }
        }
    }
    Ok(ExitCode::from(code))
}

fn cmd_mine(bounds: EnumerationBounds, out: &Path) -> Result<ExitCode> {
    let set = mine(&bounds);
    let patterns = group_dotted(&set);
    write_atomic(out, &write_patterns(&patterns, &bounds))?;
    let report = sanity(&set)?;
    let report_path = out.with_extension("sanity.txt");
    write_atomic(&report_path, &report.to_string())?;
    print!("{report}");
    println!("{} members, {} classes written to {}", set.members.len(), patterns.len(), out.display());
    if set.incomplete() {
        println!("incomplete bounds: members beyond n<={} m<={} may be missing", bounds.n_max, bounds.m_max);
    }
    if patterns.len() != 6 {
        println!("warning: {} dotted classes, six expected", patterns.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selfcheck(nmax: usize, mmax: usize, patterns: Option<&Path>) -> Result<ExitCode> {
    let mut cfg = Config::new(load_patterns(patterns)?);
    cfg.corpus = EnumerationBounds::new(nmax, mmax);
    let summary = selfcheck::run_all(&cfg);
    for r in &summary.results {
        println!("{r}");
    }
    let c = &summary.counts;
    println!(
        "graphs enumerated: {}, accepts: {}, rejects: {}, certificates verified: {}",
        c.graphs, c.accepts, c.rejects, c.verified
    );
    Ok(if summary.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_verify(graph: &Path, certificate: &Path, exhaustive_limit: usize) -> Result<ExitCode> {
    let g = load_graph(graph)?;
    let cert = parse_certificate(&read(certificate)?).with_context(|| format!("parsing {}", certificate.display()))?;
    let opts = VerifyOptions { exhaustive_limit, ..VerifyOptions::default() };
    let v = verify_certificate_with(&g, &cert, &opts);
    println!("{} {}", if v.passed { "VALID" } else { "INVALID" }, certificate.display());
    Ok(if v.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Ok(n) = std::env::var("SKEIN_THREADS") {
        let n: usize = n.parse().context("SKEIN_THREADS must be a positive integer")?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Decide { graphs, patterns, out, exhaustive_limit, samples } => {
            let opts = VerifyOptions { exhaustive_limit, samples, ..VerifyOptions::default() };
            cmd_decide(&graphs, patterns.as_deref(), &out, opts)
        }
        Command::Mine { nmax, mmax, pcap, lcap, out } => {
            cmd_mine(EnumerationBounds::new(nmax, mmax).with_caps(pcap, lcap), &out)
        }
        Command::Selfcheck { nmax, mmax, patterns } => cmd_selfcheck(nmax, mmax, patterns.as_deref()),
        Command::Verify { graph, certificate, exhaustive_limit } => cmd_verify(&graph, &certificate, exhaustive_limit),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
