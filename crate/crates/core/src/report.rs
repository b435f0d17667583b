//! Seeded verification suites and their reports.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohomology::{
    bockstein_lift, cocycle4_coefficients, complex_ranks, dethad, eta_matrix, nontriviality_check,
    ComplexContext, FiveCocycle, RankTable,
};
use crate::colorings::all_simplex_vectors;
use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::linalg::Matrix;
use crate::polygon::{
    sample_generic_parameters, with_identity_prefix, ParameterMatrix, ParamsJson, PolygonRank,
    PolygonRelation, RelationVerdict, SlotScheme,
};
use crate::scalar::{FieldKind, Rational, Scalar};

/// Extra draws tried when a sampled matrix produces ranks below the
/// expected table.
pub const RANK_RESAMPLES: u64 = 3;

/// Expected `(rank_low, rank_high)` over the rationals.
pub fn expected_ranks(n: usize) -> Option<(usize, usize)> {
    match n {
        2 => Some((9, 6)),
        3 => Some((20, 21)),
        4 => Some((35, 55)),
        5 => Some((54, 111)),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Relation,
    Cocycle4,
    Ranks,
    Structure,
    Cocycle5,
    Dethad,
    Bockstein,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::Relation,
        CheckKind::Cocycle4,
        CheckKind::Ranks,
        CheckKind::Structure,
        CheckKind::Cocycle5,
        CheckKind::Dethad,
        CheckKind::Bockstein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Relation => "relation",
            CheckKind::Cocycle4 => "cocycle4",
            CheckKind::Ranks => "ranks",
            CheckKind::Structure => "structure",
            CheckKind::Cocycle5 => "cocycle5",
            CheckKind::Dethad => "dethad",
            CheckKind::Bockstein => "bockstein",
        }
    }

    fn heptagon_only(self) -> bool {
        matches!(self, CheckKind::Cocycle5 | CheckKind::Dethad)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub ns: Vec<usize>,
    pub fields: Vec<FieldKind>,
    pub seeds: Vec<u64>,
    pub trials: usize,
    pub bound: u64,
    pub checks: Vec<CheckKind>,
    pub bockstein_primes: Vec<u64>,
    pub bockstein_k: u32,
    pub bockstein_l: u32,
    /// Explicit parameter matrix used instead of sampling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsJson>,
    /// Debug switch: perturbs one transition matrix before the relation check.
    #[serde(default)]
    pub tamper: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            ns: vec![3],
            fields: vec![FieldKind::Rationals],
            seeds: (0..5).collect(),
            trials: 50,
            bound: 10,
            checks: CheckKind::ALL.to_vec(),
            bockstein_primes: vec![3, 5],
            bockstein_k: 1,
            bockstein_l: 1,
            params: None,
            tamper: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            return Err(Error::Config("no checks enabled".into()));
        }
        if self.ns.is_empty() || self.fields.is_empty() || self.seeds.is_empty() {
            return Err(Error::Config(
                "n, field and seed lists must be nonempty".into(),
            ));
        }
        for &n in &self.ns {
            PolygonRank::new(n)?;
        }
        for f in &self.fields {
            if let FieldKind::Prime(q) = f {
                FieldKind::prime(*q)?;
            }
        }
        for &q in &self.bockstein_primes {
            FieldKind::prime(q)?;
        }
        if self.bound == 0 {
            return Err(Error::Config("bound must be positive".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if self.bockstein_k == 0 || self.bockstein_l == 0 {
            return Err(Error::Config("bockstein exponents must be positive".into()));
        }
        if let Some(p) = &self.params {
            PolygonRank::new(p.n)?;
        }
        Ok(())
    }

    /// `(check, n, field, seed)` combinations in report order. An explicit
    /// parameter matrix fixes `n`, the field and a single seed.
    fn units(&self) -> Vec<(CheckKind, usize, FieldKind, u64)> {
        let (ns, fields, seeds) = match &self.params {
            Some(p) => (vec![p.n], vec![p.field], vec![self.seeds[0]]),
            None => (self.ns.clone(), self.fields.clone(), self.seeds.clone()),
        };
        let mut out = Vec::new();
        for &check in &self.checks {
            for &n in &ns {
                if check.heptagon_only() && n != 3 {
                    continue;
                }
                for &field in &fields {
                    if check == CheckKind::Bockstein && field != FieldKind::Rationals {
                        continue;
                    }
                    for &seed in &seeds {
                        out.push((check, n, field, seed));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    /// Computed but not a claim with a known answer.
    Exploratory,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub n: usize,
    pub field: FieldKind,
    pub seed: u64,
    pub verdict: Verdict,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRecord {
    pub seed: u64,
    /// Seed actually used after resampling, when different from `seed`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resampled_seed: Option<u64>,
    #[serde(flatten)]
    pub table: RankTable,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub name: String,
    pub n: usize,
    pub field: FieldKind,
    pub seed: u64,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub artifact: String,
    pub version: String,
    pub config: SuiteConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub checks: Vec<CheckRecord>,
    pub rank_tables: Vec<RankRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<Timing>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fails)
    }

    pub fn without_timings(&self) -> Report {
        Report {
            timings: Vec::new(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

struct Outcome {
    verdict: Verdict,
    details: Value,
    rank: Option<RankRecord>,
}

impl Outcome {
    fn new(ok: bool, details: Value) -> Self {
        Outcome {
            verdict: if ok { Verdict::Holds } else { Verdict::Fails },
            details,
            rank: None,
        }
    }

    fn error(e: Error) -> Self {
        Outcome::new(false, json!({ "error": e.to_string() }))
    }
}

fn load<S: Scalar>(
    cfg: &SuiteConfig,
    n: usize,
    field: FieldKind,
    seed: u64,
) -> Result<ParameterMatrix<S>> {
    match &cfg.params {
        Some(p) => ParameterMatrix::from_json(p),
        None => sample_generic_parameters(PolygonRank::new(n)?, field, seed, cfg.bound),
    }
}

fn run_unit<S: Scalar>(
    cfg: &SuiteConfig,
    check: CheckKind,
    n: usize,
    field: FieldKind,
    seed: u64,
) -> Outcome {
    let m = match load::<S>(cfg, n, field, seed) {
        Ok(m) => m,
        Err(e) => return Outcome::error(e),
    };
    let result = match check {
        CheckKind::Relation => relation_check(cfg, &m),
        CheckKind::Cocycle4 => cocycle4_check(&m),
        CheckKind::Ranks => ranks_check(cfg, &m, seed),
        CheckKind::Structure => structure_check(&m),
        CheckKind::Cocycle5 => cocycle5_check(&m),
        CheckKind::Dethad => dethad_check(&m),
        CheckKind::Bockstein => Err(Error::Domain(
            "bockstein runs over the rationals only".into(),
        )),
    };
    result.unwrap_or_else(Outcome::error)
}

fn relation_check<S: Scalar>(cfg: &SuiteConfig, m: &ParameterMatrix<S>) -> Result<Outcome> {
    let scheme = SlotScheme::new(m.rank());
    let mut rel = PolygonRelation::new(m, &scheme)?;
    if cfg.tamper {
        rel.perturb(2, 0, 0, S::one());
    }
    Ok(match rel.verify() {
        RelationVerdict::Holds => Outcome::new(true, json!({ "slots": scheme.slots().len() })),
        RelationVerdict::Fails { row, col, lhs, rhs } => Outcome::new(
            false,
            json!({
                "witness": { "row": row, "col": col, "lhs": lhs.to_exact_string(), "rhs": rhs.to_exact_string() },
                "tampered": cfg.tamper,
                "params": m.to_json(),
            }),
        ),
    })
}

fn cocycle4_check<S: Scalar>(m: &ParameterMatrix<S>) -> Result<Outcome> {
    let ctx = ComplexContext::new(m)?;
    let low = ctx.low();
    let c = cocycle4_coefficients(m)?.flatten();
    let image = low.mul_vec(&c)?;
    let bad = image.iter().position(|x| !x.is_zero());
    let kernel_dim = low.cols() - low.rank();
    let mut details = json!({ "in_kernel": bad.is_none(), "kernel_dim": kernel_dim });
    if let Some(row) = bad {
        details["witness"] =
            json!({ "row": row, "value": image[row].to_exact_string(), "params": m.to_json() });
    }
    let mut out = Outcome::new(bad.is_none() && kernel_dim == 1, details);
    if m.field() != FieldKind::Rationals && bad.is_none() {
        out.verdict = Verdict::Exploratory;
    }
    Ok(out)
}

fn ranks_check<S: Scalar>(cfg: &SuiteConfig, m: &ParameterMatrix<S>, seed: u64) -> Result<Outcome> {
    let n = m.rank().get();
    let mut table = complex_ranks(&ComplexContext::new(m)?);
    let mut used = seed;
    let mut tried = vec![seed];
    let expected = expected_ranks(n).expect("supported rank");
    let rational = m.field() == FieldKind::Rationals;
    let below = |t: &RankTable| t.rank_low < expected.0 || t.rank_high < expected.1;
    if rational && cfg.params.is_none() {
        let mut k = 1;
        while below(&table) && k <= RANK_RESAMPLES {
            let s = seed.wrapping_add(k << 32);
            let m2 = sample_generic_parameters::<S>(m.rank(), m.field(), s, cfg.bound)?;
            table = complex_ranks(&ComplexContext::new(&m2)?);
            used = s;
            tried.push(s);
            k += 1;
        }
    }
    let matches = (table.rank_low, table.rank_high) == expected;
    let mut details = json!({ "table": table, "display": table.to_string(), "expected": expected });
    if tried.len() > 1 {
        details["resampled"] = json!(tried);
    }
    if !matches {
        details["witness"] = json!({ "params": m.to_json() });
    }
    let verdict = if !rational {
        Verdict::Exploratory
    } else if matches {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    Ok(Outcome {
        verdict,
        details,
        rank: Some(RankRecord {
            seed,
            resampled_seed: (used != seed).then_some(used),
            display: table.to_string(),
            table,
        }),
    })
}

fn structure_check<S: Scalar>(m: &ParameterMatrix<S>) -> Result<Outcome> {
    let rank = m.rank();
    let ctx = ComplexContext::new(m)?;
    let dd_zero = ctx.high().mul(&ctx.low())?.is_zero();
    let vectors = all_simplex_vectors(m)?;
    let span = Matrix::from_rows(
        vectors
            .iter()
            .map(|v| v.coloring.values().to_vec())
            .collect(),
    )?
    .rank();
    let mut double = Vec::new();
    for p in 1..=rank.labels() {
        let sub = ctx.subspace(p);
        let restricted: Vec<Vec<S>> = vectors
            .iter()
            .map(|v| crate::colorings::restrict(&v.coloring, p))
            .collect();
        let r_vec = Matrix::from_rows(restricted.clone())?.rank();
        let mut both = restricted;
        both.extend(sub.basis.iter().cloned());
        let r_both = Matrix::from_rows(both)?.rank();
        if !(r_vec == rank.get() && sub.dim() == rank.get() && r_both == rank.get()) {
            double.push(p);
        }
    }
    let ok = dd_zero && span == rank.slot_count() && double.is_empty();
    Ok(Outcome::new(
        ok,
        json!({
            "dd_zero": dd_zero,
            "simplex_vector_span": span,
            "slot_count": rank.slot_count(),
            "double_inclusion_failures": double,
        }),
    ))
}

fn cocycle5_check<S: Scalar>(m: &ParameterMatrix<S>) -> Result<Outcome> {
    let ctx = ComplexContext::new(m)?;
    let five = FiveCocycle::new(&ctx)?;
    let sums = five.alternating_sum_check();
    let v = five.cochain()?.flatten();
    let (low, high) = (ctx.low(), ctx.high());
    let in_kernel = high.mul_vec(&v)?.iter().all(|x| x.is_zero());
    let nontriviality = nontriviality_check(&low, &v)?;
    let rank_low = low.rank();
    let rank_high = high.rank();
    let kernel_high = high.cols() - rank_high;
    let rank_with_cocycle = low.with_column(&v)?.rank();
    let decomposition = high.mul(&low)?.is_zero() && in_kernel && rank_with_cocycle == kernel_high;
    let wd = five.well_definedness()?;
    let witness = five.witness();
    let ok = sums.failure.is_none()
        && in_kernel
        && nontriviality.is_nontrivial()
        && decomposition
        && wd.holds();
    let details = json!({
        "alternating_sum": sums,
        "sign_convention": "sum_p (-1)^p; the coboundary matrix uses (-1)^(p-1)",
        "in_kernel_high": in_kernel,
        "nontrivial": nontriviality.is_nontrivial(),
        "kernel_high_dim": kernel_high,
        "rank_low": rank_low,
        "rank_low_with_cocycle": rank_with_cocycle,
        "kernel_decomposition": decomposition,
        "well_definedness": wd,
        "witness": witness,
    });
    let mut out = Outcome::new(ok, details);
    if m.field() != FieldKind::Rationals {
        out.verdict = Verdict::Exploratory;
    }
    Ok(out)
}

fn dethad_check<S: Scalar>(m: &ParameterMatrix<S>) -> Result<Outcome> {
    let rest: Vec<[S; 3]> = (4..=7).map(|c| m.column(c).clone()).collect();
    let integer = with_identity_prefix(m.rank(), m.field(), rest)?;
    let mut failures = Vec::new();
    for (label, mm) in [
        ("identity_prefix", integer),
        ("normalized", m.normalized()?),
    ] {
        let eta = eta_matrix(&mm, 7)?.det()?;
        let b = Matrix::from_fn(3, 3, |r, c| mm.column(c + 4)[r].clone());
        let dh = dethad(&b)?;
        if eta != -dh.clone() {
            failures.push(json!({
                "form": label,
                "det_eta7": eta.to_exact_string(),
                "dethad": dh.to_exact_string(),
                "params": mm.to_json(),
            }));
        }
    }
    Ok(Outcome::new(
        failures.is_empty(),
        json!({ "forms_checked": 2, "failures": failures }),
    ))
}

fn bockstein_unit(cfg: &SuiteConfig, n: usize, seed: u64) -> Vec<Outcome> {
    let m = match load::<Rational>(cfg, n, FieldKind::Rationals, seed) {
        Ok(m) => m,
        Err(e) => return vec![Outcome::error(e)],
    };
    cfg.bockstein_primes
        .iter()
        .map(|&prime| {
            match bockstein_lift(
                &m,
                prime,
                cfg.bockstein_k,
                cfg.bockstein_l,
                cfg.trials,
                seed,
                3,
            ) {
                Ok(o) => {
                    let ok = o.divisible && o.divided_is_cocycle;
                    let mut details = json!({
                        "prime": o.prime,
                        "k": o.k,
                        "l": o.l,
                        "trials": o.trials,
                        "divisible": o.divisible,
                        "divided_is_cocycle": o.divided_is_cocycle,
                        "nonzero_divided_cochain": o.nonzero,
                    });
                    if let Some(c) = o.counterexample {
                        details["witness"] = json!(c);
                    }
                    Outcome::new(ok, details)
                }
                Err(e) => Outcome::error(e),
            }
        })
        .collect()
}

/// Runs every enabled check over every `(n, field, seed)` combination.
/// Units run in parallel and are collected in a fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let units = cfg.units();
    let results: Vec<(Vec<CheckRecord>, Vec<RankRecord>, Timing)> = units
        .par_iter()
        .map(|&(check, n, field, seed)| {
            let start = Instant::now();
            let outcomes = match (check, field) {
                (CheckKind::Bockstein, _) => bockstein_unit(cfg, n, seed),
                (_, FieldKind::Rationals) => vec![run_unit::<Rational>(cfg, check, n, field, seed)],
                (_, FieldKind::Prime(_)) => vec![run_unit::<Fp>(cfg, check, n, field, seed)],
            };
            let micros = u64::try_from(start.elapsed().as_micros()).unwrap_or(u64::MAX);
            let mut records = Vec::new();
            let mut ranks = Vec::new();
            for o in outcomes {
                records.push(CheckRecord {
                    name: check.name().to_string(),
                    n,
                    field,
                    seed,
                    verdict: o.verdict,
                    details: o.details,
                });
                ranks.extend(o.rank);
            }
            let timing = Timing {
                name: check.name().to_string(),
                n,
                field,
                seed,
                micros,
            };
            (records, ranks, timing)
        })
        .collect();
    let mut report = Report {
        meta: Meta {
            artifact: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: cfg.clone(),
        },
        checks: Vec::new(),
        rank_tables: Vec::new(),
        timings: Vec::new(),
    };
    for (records, ranks, timing) in results {
        report.checks.extend(records);
        report.rank_tables.extend(ranks);
        report.timings.push(timing);
    }
    Ok(report)
}

pub fn emit_report(r: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(r)?),
        Format::Markdown => Ok(markdown(r)),
    }
}

fn markdown(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {} {}\n", r.meta.artifact, r.meta.version);
    let _ = writeln!(
        s,
        "Overall: **{}**\n",
        if r.all_pass() { "pass" } else { "FAIL" }
    );
    if !r.rank_tables.is_empty() {
        let _ = writeln!(s, "## Rank tables\n");
        let _ = writeln!(s, "| n | field | seed | complex |");
        let _ = writeln!(s, "|---|---|---|---|");
        for t in &r.rank_tables {
            let seed = match t.resampled_seed {
                Some(u) => format!("{} (resampled {u})", t.seed),
                None => t.seed.to_string(),
            };
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} |",
                t.table.n, t.table.field, seed, t.display
            );
        }
        let _ = writeln!(s);
    }
    let _ = writeln!(s, "## Checks\n");
    let _ = writeln!(s, "| check | n | field | seed | verdict |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for c in &r.checks {
        let v = match c.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "**fails**",
            Verdict::Exploratory => "exploratory",
        };
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            c.name, c.n, c.field, c.seed, v
        );
    }
    let failures: Vec<&CheckRecord> = r
        .checks
        .iter()
        .filter(|c| c.verdict == Verdict::Fails)
        .collect();
    if !failures.is_empty() {
        let _ = writeln!(s, "\n## Failure details\n");
        for c in failures {
            let _ = writeln!(
                s,
                "- `{}` n={} {} seed={}: `{}`",
                c.name, c.n, c.field, c.seed, c.details
            );
        }
    }
    s
}
