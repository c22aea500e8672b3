use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use usmod::caps::Caps;
use usmod::certificate::{candidate_certificate, envelope_certificate, injectivity_report, Tier};
use usmod::dsl::{run_source, Env, Session, Status};
use usmod::error::{Error, Result};
use usmod::harness::corpus::{generate_corpus, Bounds};
use usmod::harness::laws::run_laws;
use usmod::harness::report::{Format, Report};
use usmod::harness::search::search_counterexample;

/// Exit statuses: success, a violated law / failed assertion / refutation, usage or input error.
const OK: u8 = 0;
const FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "usmod", version, about = "Uniformly S-essential submodules and u-S-injective envelopes over finite rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the `assert` lines of a DSL file.
    Check {
        file: PathBuf,
        /// Print results as JSON instead of one line per assertion.
        #[arg(long)]
        json: bool,
    },
    /// Search for a witness of a claim; law claims expect none.
    Search {
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = 64)]
        max_module: usize,
        #[arg(long, default_value_t = 12)]
        max_ring: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corpus size for law claims.
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Construct and certify a u-S-injective u-S-envelope; prints the certificate JSON.
    Envelope {
        file: PathBuf,
        /// Module (or submodule) to envelope; defaults to the last one defined.
        #[arg(long)]
        module: Option<String>,
        /// Multiplicative set; defaults to the last one defined.
        #[arg(long)]
        mset: Option<String>,
        /// Certify this map M → E instead of constructing a candidate.
        #[arg(long)]
        map: Option<String>,
    },
    /// Three-tier u-S-injectivity of a module; prints the report JSON.
    Injective {
        file: PathBuf,
        #[arg(long, default_value = "certify", value_parser = ["certify", "bounded", "refute"])]
        tier: String,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        mset: Option<String>,
    },
    /// Run the law suite over a seeded corpus.
    Laws {
        #[arg(long)]
        law: Option<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 36)]
        max_ring: usize,
        #[arg(long, default_value_t = 64)]
        max_module: usize,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = ["json", "junit-xml", "markdown"], requires = "report")]
        format: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("usmod: USMOD_CAPS: {e}");
            return ExitCode::from(BAD_INPUT);
        }
    };
    Caps::install_global(caps);
    match run(cli.cmd, caps) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("usmod: {e}");
            ExitCode::from(BAD_INPUT)
        }
    }
}

fn run(cmd: Cmd, caps: Caps) -> Result<u8> {
    match cmd {
        Cmd::Check { file, json } => check(&file, json),
        Cmd::Search {
            claim,
            max_module,
            max_ring,
            seed,
            count,
        } => {
            let bounds = Bounds {
                max_ring,
                max_module,
                count,
            };
            let start = Instant::now();
            let report = search_counterexample(&claim, &bounds, seed)?;
            out(&serde_json::to_string_pretty(&report).expect("serializable"));
            eprintln!(
                "{}: {} witness(es), {} examined, complete {}, {:.2}s",
                report.claim,
                report.witnesses.len(),
                report.examined,
                report.complete,
                start.elapsed().as_secs_f64()
            );
            let law_claim = claim.starts_with("paper-law-") || claim.starts_with("law-");
            Ok(if law_claim && !report.witnesses.is_empty() { FAILED } else { OK })
        }
        Cmd::Envelope { file, module, mset, map } => {
            let session = load(&file)?;
            let env = &session.env;
            let s = env.mset(&pick(env, mset, &["mset"])?)?;
            let cert = match map {
                Some(f) => candidate_certificate(&env.hom(&f)?, &s)?,
                None => envelope_certificate(&env.module(&pick(env, module, &["module", "sub"])?)?, &s)?,
            };
            out(&serde_json::to_string_pretty(&cert).expect("serializable"));
            Ok(if cert.is_envelope() { OK } else { FAILED })
        }
        Cmd::Injective { file, tier, module, mset } => {
            let session = load(&file)?;
            let env = &session.env;
            let s = env.mset(&pick(env, mset, &["mset"])?)?;
            let e = env.module(&pick(env, module, &["module", "sub"])?)?;
            let rep = injectivity_report(&e, &s, tier.parse::<Tier>()?)?;
            out(&serde_json::to_string_pretty(&rep).expect("serializable"));
            Ok(if rep.refuted() { FAILED } else { OK })
        }
        Cmd::Laws {
            law,
            seed,
            max_ring,
            max_module,
            count,
            report,
            format,
        } => {
            let bounds = Bounds {
                max_ring,
                max_module,
                count,
            };
            let start = Instant::now();
            let corpus = generate_corpus(seed, &bounds)?;
            let results = run_laws(&corpus, law.as_deref())?;
            let rep = Report::new(seed, caps, bounds, law, results);
            out(rep.render(Format::Markdown).trim_end());
            if let Some(path) = report {
                rep.write(&path, format.parse()?)?;
            }
            eprintln!(
                "{} instances, {} results, {} violated, {} errors, {:.1}s",
                rep.totals.instances,
                rep.totals.results,
                rep.totals.violated,
                rep.totals.errors,
                start.elapsed().as_secs_f64()
            );
            Ok(if rep.clean() { OK } else { FAILED })
        }
    }
}

/// stdout line that tolerates a closed pipe (`usmod ... | head`).
fn out(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn load(path: &Path) -> Result<Session> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    run_source(&src)
}

/// The named object, or the last one defined of the given kinds.
fn pick(env: &Env, name: Option<String>, kinds: &[&str]) -> Result<String> {
    if let Some(n) = name {
        return Ok(n);
    }
    env.names()
        .iter()
        .rev()
        .find(|n| env.get(n).is_some_and(|v| kinds.contains(&v.kind())))
        .cloned()
        .ok_or_else(|| Error::Config(format!("no {} defined", kinds.join(" or "))))
}

fn check(path: &Path, json: bool) -> Result<u8> {
    let session = load(path)?;
    if json {
        out(&serde_json::to_string_pretty(&session.results).expect("serializable"));
    } else {
        for r in &session.results {
            let tag = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::SkippedResource => "skip",
            };
            if r.status == Status::Pass {
                out(&format!("{tag} {:>4}: {}", r.line, r.text));
            } else {
                out(&format!("{tag} {:>4}: {}  (got {})", r.line, r.text, r.actual));
            }
        }
    }
    let failed = session.results.iter().filter(|r| r.status == Status::Fail).count();
    eprintln!("{} assertions, {failed} failed", session.results.len());
    Ok(if session.all_pass() { OK } else { FAILED })
}
