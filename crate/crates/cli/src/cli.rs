//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use gds_core::chartable::character_degrees;
use gds_core::families::{collect_sweep, family_invariants, sweep_row, valid_parameters, Family, FamilySpec, DEFAULT_SWEEP_Q_MAX};
use gds_core::isoclinism::{are_isoclinic_with_cap, multiplicity_proportion_check, DEFAULT_ISOCLINISM_CAP};
use gds_core::verifier::{ClaimId, VerifierConfig};
use rayon::prelude::*;
use serde_json::json;

use crate::cache::Cache;
use crate::corpus::{export_corpus, load_corpus, resolve_group_ref};
use crate::verify::{run_verification, summary_table, write_report, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gds", version, about = "Character degree sums and commuting probabilities of finite groups")]
struct Cli {
    /// Ignore and do not write the analysis cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory, overriding GDS_CACHE_DIR.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the analysis record of a group as JSON.
    Analyze {
        /// `builtin:<spec>` or a group file path.
        group: String,
    },
    /// Check claims over a corpus directory.
    Verify(VerifyArgs),
    /// Invariants of a simple group family member, or a bound sweep.
    Family(FamilyArgs),
    /// Isoclinism verdict and degree proportion check for two groups.
    Isoclinic {
        first: String,
        second: String,
        #[arg(long, default_value_t = DEFAULT_ISOCLINISM_CAP)]
        cap: usize,
    },
    /// Corpus maintenance.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma separated claim ids, or `all`.
    #[arg(long, default_value = "all")]
    claims: String,
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, default_value_t = 5616)]
    max_order: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report file (JSONL); summary only when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 31)]
    max_prime: u64,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct FamilyArgs {
    #[command(subcommand)]
    command: Option<FamilyCommand>,
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum FamilyCommand {
    /// Check d < 3/p² for every valid q up to the limit.
    Sweep {
        /// Family name, or `all`.
        #[arg(long, default_value = "all")]
        name: String,
        #[arg(long, default_value_t = DEFAULT_SWEEP_Q_MAX)]
        q_max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// Write the curated corpus as group files.
    Export { dir: PathBuf },
}

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let cache = match (cli.no_cache, cli.cache_dir) {
        (true, _) => Cache::disabled(),
        (false, Some(dir)) => Cache::at(dir),
        (false, None) => Cache::from_env(),
    };
    match dispatch(cli.command, &cache, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {:#}", e);
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, cache: &Cache, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze { group } => {
            let (file, g) = resolve_group_ref(&group)?;
            let record = cache.analyze(&file, &g)?;
            writeln!(out, "{}", serde_json::to_string(&record)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => verify(args, cache, out, err),
        Command::Family(args) => family(args, out, err),
        Command::Isoclinic { first, second, cap } => {
            let (_, g) = resolve_group_ref(&first)?;
            let (_, h) = resolve_group_ref(&second)?;
            let verdict = are_isoclinic_with_cap(&g, &h, cap)?;
            let check = multiplicity_proportion_check(&g, &h, &character_degrees(&g)?, &character_degrees(&h)?);
            let v = json!({ "first": g.name(), "second": h.name(), "isoclinic": verdict, "proportion": check });
            writeln!(out, "{}", serde_json::to_string(&v)?)?;
            Ok(EXIT_OK)
        }
        Command::Corpus { command: CorpusCommand::Export { dir } } => {
            let n = export_corpus(&dir)?;
            writeln!(out, "wrote {} group files to {}", n, dir.display())?;
            Ok(EXIT_OK)
        }
    }
}

fn verify(args: VerifyArgs, cache: &Cache, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let claims = ClaimId::parse_list(&args.claims)?;
    let corpus = load_corpus(&args.corpus)?;
    let opts = VerifyOptions {
        claims,
        max_order: args.max_order,
        jobs: args.jobs,
        config: VerifierConfig { max_prime: args.max_prime, ..VerifierConfig::default() },
    };
    let run = run_verification(&corpus, cache, &opts)?;
    if !run.excluded.is_empty() {
        writeln!(err, "note: {} groups above --max-order {} not checked", run.excluded.len(), args.max_order)?;
    }
    if let Some(path) = &args.out {
        let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut w = BufWriter::new(f);
        write_report(&mut w, &run)?;
        w.flush()?;
    }
    write!(out, "{}", summary_table(&run))?;
    Ok(if run.all_passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

fn family(args: FamilyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match args.command {
        Some(FamilyCommand::Sweep { name, q_max, out: path }) => {
            let families: Vec<Family> = if name.eq_ignore_ascii_case("all") {
                Family::ALL.to_vec()
            } else {
                vec![name.parse()?]
            };
            let specs: Vec<FamilySpec> = families
                .iter()
                .flat_map(|&f| valid_parameters(f, q_max).into_iter().map(move |q| FamilySpec { family: f, q }))
                .collect();
            let evaluated: Vec<_> = specs.par_iter().map(|s| (*s, sweep_row(s))).collect();
            let report = collect_sweep(evaluated);
            let mut sink: Box<dyn Write> = match &path {
                Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
                None => Box::new(io::sink()),
            };
            for row in &report.rows {
                let line = serde_json::to_string(row)?;
                if path.is_some() {
                    writeln!(sink, "{}", line)?;
                } else {
                    writeln!(out, "{}", line)?;
                }
            }
            sink.flush()?;
            for s in &report.skipped {
                writeln!(err, "skipped {}({}): {}", s.family, s.q, s.reason)?;
            }
            for v in &report.violations {
                writeln!(err, "violation: {}", v)?;
            }
            let exceptions = report.lemma31_exceptions().count();
            writeln!(
                err,
                "{} rows, {} skipped, {} violations, {} with p²/3 ≥ √|G|",
                report.rows.len(),
                report.skipped.len(),
                report.violations.len(),
                exceptions
            )?;
            Ok(if report.violations.is_empty() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        None => {
            let (Some(name), Some(q)) = (args.name, args.q) else {
                bail!("family needs --name and --q, or the sweep subcommand");
            };
            let spec = FamilySpec::new(name.parse()?, q)?;
            writeln!(out, "{}", serde_json::to_string(&family_invariants(&spec)?)?)?;
            Ok(EXIT_OK)
        }
    }
}
