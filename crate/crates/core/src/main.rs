use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polygon_cohomology::polygon::ParamsJson;
use polygon_cohomology::report::{emit_report, run_suite, CheckKind, Format, SuiteConfig};
use polygon_cohomology::{Error, FieldKind, Result};

#[derive(Parser)]
#[command(
    name = "polycoh",
    version,
    about = "Exact checks of odd polygon relations and their quadratic cohomology"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the polygon relation exactly.
    VerifyRelation(Common),
    /// Ranks of the two coboundary maps.
    Ranks(Common),
    /// The quadratic (2n-2)-cocycle spans the kernel of the first coboundary.
    Cocycle4(Common),
    /// The heptagon 5-cocycle and its nontriviality.
    Cocycle5(Common),
    /// The determinant identity for the heptagon.
    Dethad(Common),
    /// Divisibility of the powered cocycle's coboundary by a prime.
    Bockstein(Common),
    /// Every check.
    Suite(Common),
}

#[derive(Args)]
struct Common {
    /// Polygon ranks (the polygon has 2n+1 sides), repeatable or comma separated.
    #[arg(long = "n", value_delimiter = ',', default_value = "3")]
    n: Vec<usize>,
    /// `Q` or `Fq:<q>`, repeatable or comma separated.
    #[arg(long, value_delimiter = ',', default_value = "Q")]
    field: Vec<FieldKind>,
    /// Explicit seeds, repeatable or comma separated.
    #[arg(long, value_delimiter = ',')]
    seed: Vec<u64>,
    /// Use seeds 0..count when no explicit seed is given.
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    /// Random pairs per Bockstein run.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Sampled parameter entries lie in [-bound, bound].
    #[arg(long, default_value_t = 10)]
    bound: u64,
    /// Primes for the Bockstein check.
    #[arg(long, value_delimiter = ',', default_value = "3,5")]
    prime: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, default_value_t = 1)]
    l: u32,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: Format,
    /// Explicit parameter matrix in JSON, replacing sampling.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Perturb a transition matrix before the relation check.
    #[arg(long, hide = true)]
    tamper: bool,
}

impl Common {
    fn config(&self, checks: Vec<CheckKind>) -> Result<SuiteConfig> {
        let params = match &self.params {
            Some(path) => Some(serde_json::from_str::<ParamsJson>(
                &std::fs::read_to_string(path)?,
            )?),
            None => None,
        };
        let seeds = if self.seed.is_empty() {
            (0..self.seeds).collect()
        } else {
            self.seed.clone()
        };
        Ok(SuiteConfig {
            ns: self.n.clone(),
            fields: self.field.clone(),
            seeds,
            trials: self.trials,
            bound: self.bound,
            checks,
            bockstein_primes: self.prime.clone(),
            bockstein_k: self.k,
            bockstein_l: self.l,
            params,
            tamper: self.tamper,
        })
    }
}

fn run(cli: Cli) -> Result<bool> {
    let (common, checks) = match &cli.verb {
        Verb::VerifyRelation(c) => (c, vec![CheckKind::Relation]),
        Verb::Ranks(c) => (c, vec![CheckKind::Ranks]),
        Verb::Cocycle4(c) => (c, vec![CheckKind::Cocycle4]),
        Verb::Cocycle5(c) => (c, vec![CheckKind::Cocycle5]),
        Verb::Dethad(c) => (c, vec![CheckKind::Dethad]),
        Verb::Bockstein(c) => (c, vec![CheckKind::Bockstein]),
        Verb::Suite(c) => (c, CheckKind::ALL.to_vec()),
    };
    let cfg = common.config(checks)?;
    let report = run_suite(&cfg)?;
    if report.checks.is_empty() {
        return Err(Error::Config(
            "no check applies to the requested ranks and fields".into(),
        ));
    }
    let text = emit_report(&report, common.format)?;
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(report.all_pass())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
