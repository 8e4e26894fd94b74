mod output;
mod tables;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use primepair::cache::SCHEMA_VERSION;
use primepair::meanvalue::residual_with;
use primepair::{
    three_primes_below, ConstantCache, ConstantEngine, CubicKernel, EulerProductEstimate,
    OffsetPolynomial, PairCounter, PairFamily, Window,
};

use output::{real, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "primepair", version, about = "Prime-pair constants, counts and mean values")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct RunConfig {
    /// Truncation bound P for Euler products.
    #[arg(short = 'P', long = "truncation", global = true, default_value_t = 1_000_000)]
    truncation: u64,

    /// Largest x any counting command may sieve to.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    sieve_limit: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Directory holding the constants cache.
    #[arg(long, global = true, env = "PRIMEPAIR_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Do not read or write the constants cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Adjusted pair constant C^k_{2r}.
    Constant {
        #[arg(long)]
        k: u32,
        #[arg(long = "two-r", allow_hyphen_values = true)]
        two_r: i64,
    },
    /// Single-polynomial constant gamma^k_q.
    Gamma {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Count primes p <= x with p^k + 2r prime.
    Count {
        #[arg(long)]
        k: u32,
        #[arg(long = "two-r", allow_hyphen_values = true)]
        two_r: i64,
        #[arg(long)]
        x: u64,
    },
    /// Reproduce one of the published tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        name: u8,
    },
    /// Mean of C^k_{2r} over 0 < |2r| <= lambda; lambda may be a comma list.
    Mean {
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u64>,
        #[arg(long, default_value = "both")]
        window: Window,
    },
    /// Primes p < bound for which n^3 + q has three roots mod p.
    ThreePrimes {
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long)]
        bound: u64,
    },
    /// Kernel-weighted residual R_k(lambda); lambda may be a comma list.
    Residual {
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u64>,
    },
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.truncation < 3 {
            bail!(primepair::Error::Argument(format!(
                "truncation bound must be at least 3, got {}",
                self.truncation
            )));
        }
        if self.sieve_limit < 2 {
            bail!(primepair::Error::Argument(format!(
                "sieve limit must be at least 2, got {}",
                self.sieve_limit
            )));
        }
        if let Some(n) = self.threads {
            primepair::par::init_threads(n)?;
        }
        Ok(())
    }

    fn cache_dir(&self) -> Option<PathBuf> {
        if self.no_cache {
            return None;
        }
        self.cache_dir.clone().or_else(default_cache_dir)
    }

    fn engine(&self) -> Result<ConstantEngine> {
        let engine = ConstantEngine::new(self.truncation)?;
        Ok(match self.cache_dir() {
            Some(dir) => {
                let cache = ConstantCache::open(&dir)
                    .with_context(|| format!("opening cache in {}", dir.display()))?;
                engine.with_cache(Arc::new(cache))
            }
            None => engine,
        })
    }

    fn check_sieve(&self, x: u64) -> Result<()> {
        if x > self.sieve_limit {
            bail!(primepair::Error::Argument(format!(
                "x = {x} exceeds the sieve limit {}",
                self.sieve_limit
            )));
        }
        Ok(())
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .map(|d| d.join("primepair"))
}

fn estimate_table(kind: &str, k: u32, q: i64, est: &EulerProductEstimate) -> Table {
    let mut t = Table::new([
        "kind", "k", "q", "P", "value", "factors_used", "vanished", "reducible", "schema_version",
    ]);
    t.push(vec![
        kind.into(),
        k.to_string(),
        q.to_string(),
        est.truncation_bound.to_string(),
        real(est.value),
        est.factors_used.to_string(),
        est.vanished.to_string(),
        est.reducible.to_string(),
        SCHEMA_VERSION.to_string(),
    ]);
    t
}

fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    let cfg = &cli.config;
    cfg.validate()?;
    match cli.command {
        Command::Constant { k, two_r } => {
            let f = PairFamily::new(k, two_r)?;
            let est = cfg.engine()?.c_constant(f)?;
            estimate_table("C", k, two_r, &est).write(cfg.format, out)?;
        }
        Command::Gamma { k, q } => {
            let g = OffsetPolynomial::new(k, q)?;
            let est = cfg.engine()?.gamma(g)?;
            estimate_table("gamma", k, q, &est).write(cfg.format, out)?;
        }
        Command::Count { k, two_r, x } => {
            let f = PairFamily::new(k, two_r)?;
            cfg.check_sieve(x)?;
            let counter = PairCounter::new(f);
            counter.check_range(x)?;
            let bh = cfg.engine()?.bh_constant(f)?;
            let mut t = Table::new(["k", "2r", "x", "P", "pi", "theta", "li_2", "BH", "predicted", "rho"]);
            for r in counter.table(&[x], bh)? {
                t.push(vec![
                    k.to_string(),
                    two_r.to_string(),
                    r.x.to_string(),
                    cfg.truncation.to_string(),
                    r.pair_count.to_string(),
                    real(r.theta),
                    real(r.li2),
                    real(bh),
                    format!("{}", r.predicted),
                    r.ratio.map_or_else(String::new, |v| format!("{v:.3}")),
                ]);
            }
            t.write(cfg.format, out)?;
        }
        Command::Table { name } => {
            let t = match name {
                1 => {
                    let max_x = cfg.sieve_limit;
                    tables::table1(max_x)?
                }
                2 => tables::table2(&cfg.engine()?)?,
                3 => tables::table3()?,
                _ => tables::table4(&cfg.engine()?)?,
            };
            t.write(cfg.format, out)?;
        }
        Command::Mean { k, lambda, window } => {
            let engine = cfg.engine()?;
            let mut t = Table::new(["k", "lambda", "window", "P", "terms", "S", "S/lambda", "R"]);
            for l in lambda {
                let r = primepair::mean_value(&engine, k, l, window)?;
                t.push(vec![
                    k.to_string(),
                    l.to_string(),
                    window.to_string(),
                    r.truncation_bound.to_string(),
                    r.terms.to_string(),
                    real(r.sum),
                    real(r.mean),
                    real(r.residual),
                ]);
            }
            t.write(cfg.format, out)?;
        }
        Command::ThreePrimes { q, bound } => {
            let ps = three_primes_below(q, bound)?;
            match cfg.format {
                Format::Csv => writeln!(out, "{}", tables::join(&ps, ","))?,
                Format::Tsv => writeln!(out, "{}", tables::join(&ps, "\t"))?,
                Format::Markdown => {
                    let mut t = Table::new(["q", "3-primes"]);
                    t.push(vec![q.to_string(), tables::join(&ps, ", ")]);
                    t.write(cfg.format, out)?;
                }
            }
        }
        Command::Residual { k, lambda } => {
            let engine = cfg.engine()?;
            let mut t = Table::new(["k", "lambda", "P", "R", "R/lambda"]);
            for l in lambda {
                let r = residual_with(&engine, k, l, &CubicKernel)?;
                t.push(vec![
                    k.to_string(),
                    l.to_string(),
                    cfg.truncation.to_string(),
                    real(r),
                    real(r / l as f64),
                ]);
            }
            t.write(cfg.format, out)?;
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<primepair::Error>() {
        Some(primepair::Error::Argument(_)) | Some(primepair::Error::UndefinedRatio(_)) => 2,
        Some(primepair::Error::Overflow(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Into::into));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
