//! `micz`: run the exact verification suites and spectrum tables.
//!
//! Exit status: 0 when every assertion holds, 1 when one fails, 2 for an
//! invalid `D`/`μ` combination, 3 when a representation exceeds the size
//! budget.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use micz_core::clifford::{build_gammas, verify_gamma_set};
use micz_core::exactnum::Rat;
use micz_core::monopole::{check_lemma_part1, check_lemma_part2, check_lemma_part3, sample_points};
use micz_core::operators::{check_lrl_square, check_symmetry_algebra, ProblemSpec, Relation};
use micz_core::repcalc::{branching_sum_check, check_charge};
use micz_core::report::{CheckReport, IdentityReport};
use micz_core::spectrum::{level_table, spectrum_agreement, SpectrumAgreement};
use micz_core::spinrep::{
    cartan_basis, conjecture_probe, fiber_rep, so4_vector_rep, verify_claim, verify_identity_even,
    verify_identity_odd, verify_ladder_properties, verify_rep, RepSO,
};
use micz_core::Error;

#[derive(Parser, Debug)]
#[command(name = "micz", version, about = "Exact checks for generalized MICZ-Kepler problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Gamma matrices and so(d) generators (d = --dim, or 2..8)
    VerifyClifford,
    /// Monopole curvature identities at seeded points
    VerifyMonopole,
    /// Commutation relations of the symmetry algebra on seeded sections
    VerifyOperators,
    /// The fiber representation s^(2mu) of so(D-1)
    VerifyRep,
    /// Vanishing of the O operators and the quadratic spinor identity
    VerifyClaim,
    /// Ladder operators built from O_1
    VerifyLadder,
    /// Evaluate the quadratic identity in representations that are not Cartan powers
    ConjectureProbe,
    /// Energy levels checked three ways
    Spectrum,
    /// Bound-state table: energies, weights, degeneracies, modes
    LevelTable,
    /// Every suite over D = 3..7, |mu| <= 3/2, I <= 4
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args, Debug, Clone)]
struct Opts {
    /// Space dimension D (number of gammas for verify-clifford)
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Monopole charge, an exact fraction such as 1/2 or -3/2
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Sample points (default 20 for monopole checks, 5 for operators)
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Polynomial test sections per point
    #[arg(long, global = true, default_value_t = 3)]
    sections: usize,
    /// Highest jet order used by operator checks (relations needing more are skipped)
    #[arg(long, global = true, default_value_t = 4)]
    order: usize,
    /// Largest tensor-power dimension allowed when building representations
    #[arg(long, global = true, env = "MICZ_SIZE_BUDGET", default_value_t = micz_core::spinrep::DEFAULT_SIZE_BUDGET)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Highest level I for spectrum and level-table
    #[arg(long, global = true, default_value_t = 4)]
    levels: u32,
}

/// One checked identity.
#[derive(Debug, Clone, Serialize)]
struct Row {
    suite: String,
    identity: String,
    #[serde(rename = "D")]
    dim: usize,
    mu: String,
    points_checked: usize,
    max_residual_entries: Vec<String>,
    pass: bool,
}

impl Row {
    fn from_identity(suite: &str, r: IdentityReport) -> Self {
        Row {
            suite: suite.into(),
            identity: r.identity,
            dim: r.dim,
            mu: r.mu,
            points_checked: r.points_checked,
            max_residual_entries: r.max_residual_entries,
            pass: r.pass,
        }
    }

    fn from_check(suite: &str, dim: usize, mu: &str, c: &CheckReport) -> Self {
        Row {
            suite: suite.into(),
            identity: c.identity.clone(),
            dim,
            mu: mu.into(),
            points_checked: c.checked,
            max_residual_entries: c.max_residual_entries(),
            pass: c.pass(),
        }
    }
}

enum Output {
    Rows(Vec<Row>),
    Spectrum {
        table: micz_core::spectrum::LevelTable,
        checks: Vec<SpectrumAgreement>,
    },
    Table(micz_core::spectrum::LevelTable),
}

impl Output {
    fn pass(&self) -> bool {
        match self {
            Output::Rows(rows) => rows.iter().all(|r| r.pass),
            Output::Spectrum { table, checks } => {
                checks.iter().all(|c| c.pass) && table.levels.iter().all(|l| l.consistent())
            }
            Output::Table(t) => t.levels.iter().all(|l| l.consistent()),
        }
    }

    fn render(&self, format: Format) -> String {
        match (self, format) {
            (Output::Rows(rows), Format::Json) => serde_json::to_string_pretty(rows).expect("serializable"),
            (Output::Rows(rows), Format::Csv) => rows_csv(rows),
            (Output::Rows(rows), Format::Text) => rows
                .iter()
                .map(|r| {
                    let mut line = format!(
                        "{} [{}] D={} mu={} checked={} {}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.suite,
                        r.dim,
                        r.mu,
                        r.points_checked,
                        r.identity
                    );
                    if !r.pass {
                        line.push_str(&format!(" residual: {}", r.max_residual_entries.join(" ")));
                    }
                    line
                })
                .collect::<Vec<_>>()
                .join("\n"),
            (Output::Spectrum { table, checks }, Format::Json) => {
                #[derive(Serialize)]
                struct Both<'a> {
                    #[serde(flatten)]
                    table: &'a micz_core::spectrum::LevelTable,
                    checks: &'a [SpectrumAgreement],
                }
                serde_json::to_string_pretty(&Both { table, checks }).expect("serializable")
            }
            (Output::Spectrum { table, .. } | Output::Table(table), Format::Csv) => {
                table.to_csv().trim_end().to_string()
            }
            (Output::Spectrum { table, checks }, Format::Text) => {
                let mut out = table.to_text();
                for c in checks {
                    out.push_str(&format!(
                        "{} I={} formula={} recursion=[{}] casimir={} branching={}\n",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.level,
                        c.formula,
                        c.recursion.iter().map(Rat::to_string).collect::<Vec<_>>().join(", "),
                        c.casimir,
                        c.branching
                    ));
                }
                out.trim_end().to_string()
            }
            (Output::Table(t), Format::Json) => t.to_json(),
            (Output::Table(t), Format::Text) => t.to_text().trim_end().to_string(),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn rows_csv(rows: &[Row]) -> String {
    let mut out = vec!["suite,identity,D,mu,points_checked,max_residual_entries,pass".to_string()];
    for r in rows {
        out.push(
            [
                csv_field(&r.suite),
                csv_field(&r.identity),
                r.dim.to_string(),
                csv_field(&r.mu),
                r.points_checked.to_string(),
                csv_field(&r.max_residual_entries.join(";")),
                r.pass.to_string(),
            ]
            .join(","),
        );
    }
    out.join("\n")
}

/// Failure modes that map to exit codes 2 and 3.
enum Failure {
    Usage(String),
    Budget(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeBudget { .. } => Failure::Budget(e.to_string()),
            Error::InvalidDimension(_)
            | Error::NotHalfInteger(_)
            | Error::ChargeRestricted { .. }
            | Error::WrongSeries
            | Error::RankTooSmall => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

struct Ctx<'a> {
    opts: &'a Opts,
}

impl Ctx<'_> {
    fn dim(&self) -> Run<usize> {
        self.opts
            .dim
            .ok_or_else(|| Failure::Usage("--dim is required for this command".into()))
    }

    fn mu(&self) -> Run<Rat> {
        let text = self.opts.mu.as_deref().unwrap_or("1/2");
        Rat::from_str(text).map_err(|_| Failure::Usage(format!("mu must be an exact fraction like 1/2, got {text:?}")))
    }

    /// `D` and `μ`, validated together.
    fn charge(&self) -> Run<(usize, Rat)> {
        let d = self.dim()?;
        let mu = self.mu()?;
        check_charge(d, &mu)?;
        Ok((d, mu))
    }

    fn points(&self, default: usize) -> usize {
        self.opts.points.unwrap_or(default)
    }
}

fn clifford_rows(dims: impl IntoIterator<Item = usize>) -> Run<Vec<Row>> {
    let mut rows = Vec::new();
    for d in dims {
        let r = verify_gamma_set(&build_gammas(d)?);
        for c in [&r.clifford, &r.hermitian, &r.chirality, &r.commutators, &r.casimir] {
            rows.push(Row::from_check("clifford", d, "-", c));
        }
    }
    Ok(rows)
}

fn monopole_rows(ctx: &Ctx, d: usize, mu: &Rat) -> Run<Vec<Row>> {
    let budget = ctx.opts.budget;
    let pts = sample_points(d, ctx.points(20), ctx.opts.seed);
    let rep = fiber_rep(d, mu, budget)?;
    let mut rows: Vec<Row> = check_lemma_part1(&rep, &pts, &mu.to_string())?
        .into_iter()
        .map(|r| Row::from_identity("monopole", r))
        .collect();
    if d % 2 == 1 {
        rows.push(Row::from_identity("monopole", check_lemma_part2(d / 2, mu, &pts, budget)?));
    } else if !mu.is_zero() {
        rows.push(Row::from_identity("monopole", check_lemma_part3(d / 2, &pts)?));
    }
    Ok(rows)
}

fn operator_rows(ctx: &Ctx, d: usize, mu: &Rat) -> Run<Vec<Row>> {
    let spec = ProblemSpec::new(d, mu, ctx.opts.budget)?;
    let pts = sample_points(d, ctx.points(5), ctx.opts.seed);
    let relations: Vec<Relation> = Relation::ALL
        .into_iter()
        .filter(|r| r.order() <= ctx.opts.order)
        .collect();
    let mut rows: Vec<Row> =
        check_symmetry_algebra(&spec, &pts, ctx.opts.sections, ctx.opts.seed, &relations)?
            .into_iter()
            .map(|r| Row::from_identity("operators", r))
            .collect();
    if ctx.opts.order >= 4 {
        rows.push(Row::from_identity(
            "operators",
            check_lrl_square(&spec, &pts, ctx.opts.sections, ctx.opts.seed)?,
        ));
    }
    Ok(rows)
}

fn rep_rows(suite: &str, d: usize, mu: &Rat, rep: &RepSO) -> Run<Vec<Row>> {
    let r = verify_rep(rep)?;
    Ok(r.checks.iter().map(|c| Row::from_check(suite, d, &mu.to_string(), c)).collect())
}

fn claim_rows(d: usize, mu: &Rat, budget: usize) -> Run<Vec<Row>> {
    let m = mu.to_string();
    if d.is_multiple_of(2) {
        let c = verify_identity_even(d - 1)?;
        return Ok(vec![Row::from_check("claim", d, &m, &c)]);
    }
    let rep = fiber_rep(d, mu, budget)?;
    if rep.rank() < 2 {
        return Err(Error::RankTooSmall.into());
    }
    let mut rows: Vec<Row> = verify_claim(&rep)?
        .checks
        .iter()
        .map(|c| Row::from_check("claim", d, &m, c))
        .collect();
    rows.push(Row::from_check("claim", d, &m, &verify_identity_odd(&rep)));
    Ok(rows)
}

fn ladder_rows(d: usize, mu: &Rat, budget: usize) -> Run<Vec<Row>> {
    if d.is_multiple_of(2) {
        return Err(Error::WrongSeries.into());
    }
    let rep = fiber_rep(d, mu, budget)?;
    if rep.rank() < 2 {
        return Err(Error::RankTooSmall.into());
    }
    let cb = cartan_basis(&rep)?;
    let m = mu.to_string();
    Ok(verify_ladder_properties(&rep, &cb)?
        .checks
        .iter()
        .map(|c| Row::from_check("ladder", d, &m, c))
        .collect())
}

/// The identity must hold on Cartan powers; other irreps are only recorded.
fn probe_rows(ctx: &Ctx) -> Run<Vec<Row>> {
    let mut rows = Vec::new();
    if ctx.opts.dim.is_some() {
        let (d, mu) = ctx.charge()?;
        if d % 2 == 0 {
            return Err(Error::WrongSeries.into());
        }
        let rep = fiber_rep(d, &mu, ctx.opts.budget)?;
        let p = conjecture_probe(&rep);
        rows.push(Row {
            suite: "probe".into(),
            identity: format!("quadratic identity on Cartan power, weight {}", fmt_weight(&p.weight)),
            dim: d,
            mu: mu.to_string(),
            points_checked: 1,
            max_residual_entries: p.sample,
            pass: p.residual_vanishes,
        });
    }
    let v = conjecture_probe(&so4_vector_rep()?);
    rows.push(Row {
        suite: "probe".into(),
        identity: format!(
            "quadratic identity on so(4) irrep {} (recorded): residual {}, {} nonzero entries",
            fmt_weight(&v.weight),
            if v.residual_vanishes { "vanishes" } else { "nonzero" },
            v.nonzero_pairs
        ),
        dim: 5,
        mu: "-".into(),
        points_checked: 1,
        max_residual_entries: v.sample,
        pass: true,
    });
    Ok(rows)
}

fn fmt_weight(w: &Option<micz_core::repcalc::Weight>) -> String {
    w.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "?".into())
}

fn spectrum_output(d: usize, mu: &Rat, levels: u32) -> Run<Output> {
    let table = level_table(d, mu, levels)?;
    let checks = (0..=levels)
        .map(|i| spectrum_agreement(d, mu, i))
        .collect::<micz_core::Result<Vec<_>>>()?;
    Ok(Output::Spectrum { table, checks })
}

/// Every suite over the full matrix.
fn all_rows(ctx: &Ctx) -> Run<Vec<Row>> {
    let budget = ctx.opts.budget;
    let mut rows = clifford_rows(2..=8)?;
    for d in 3..=7 {
        for k in -3..=3 {
            let mu = Rat::new(k, 2);
            if check_charge(d, &mu).is_err() {
                continue;
            }
            let m = mu.to_string();
            rows.extend(monopole_rows(ctx, d, &mu)?);
            if d <= 5 {
                rows.extend(operator_rows(ctx, d, &mu)?);
            }
            rows.extend(rep_rows("rep", d, &mu, &fiber_rep(d, &mu, budget)?)?);
            if d >= 5 && (d % 2 == 0 || !mu.is_zero()) {
                rows.extend(claim_rows(d, &mu, budget)?);
            }
            if d >= 5 && d % 2 == 1 && !mu.is_zero() {
                rows.extend(ladder_rows(d, &mu, budget)?);
            }
            for i in 0..=ctx.opts.levels.min(4) {
                let a = spectrum_agreement(d, &mu, i)?;
                let b = branching_sum_check(d, &mu, i)?;
                rows.push(Row {
                    suite: "spectrum".into(),
                    identity: format!("E_{i} = {} three ways; degeneracy {}", a.formula, b.level_dim),
                    dim: d,
                    mu: m.clone(),
                    points_checked: a.recursion.len() + 1,
                    max_residual_entries: Vec::new(),
                    pass: a.pass && b.pass,
                });
            }
        }
    }
    rows.extend(probe_rows(&Ctx {
        opts: &Opts {
            dim: None,
            mu: None,
            ..ctx.opts.clone()
        },
    })?);
    Ok(rows)
}

fn run(cli: &Cli) -> Run<Output> {
    let ctx = Ctx { opts: &cli.opts };
    let budget = cli.opts.budget;
    Ok(match cli.command {
        Command::VerifyClifford => match cli.opts.dim {
            Some(d) => Output::Rows(clifford_rows([d])?),
            None => Output::Rows(clifford_rows(2..=8)?),
        },
        Command::VerifyMonopole => {
            let (d, mu) = ctx.charge()?;
            Output::Rows(monopole_rows(&ctx, d, &mu)?)
        }
        Command::VerifyOperators => {
            let (d, mu) = ctx.charge()?;
            Output::Rows(operator_rows(&ctx, d, &mu)?)
        }
        Command::VerifyRep => {
            let (d, mu) = ctx.charge()?;
            Output::Rows(rep_rows("rep", d, &mu, &fiber_rep(d, &mu, budget)?)?)
        }
        Command::VerifyClaim => {
            let (d, mu) = ctx.charge()?;
            Output::Rows(claim_rows(d, &mu, budget)?)
        }
        Command::VerifyLadder => {
            let (d, mu) = ctx.charge()?;
            Output::Rows(ladder_rows(d, &mu, budget)?)
        }
        Command::ConjectureProbe => Output::Rows(probe_rows(&ctx)?),
        Command::Spectrum => {
            let (d, mu) = ctx.charge()?;
            spectrum_output(d, &mu, cli.opts.levels)?
        }
        Command::LevelTable => {
            let (d, mu) = ctx.charge()?;
            Output::Table(level_table(d, &mu, cli.opts.levels)?)
        }
        Command::All => Output::Rows(all_rows(&ctx)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{}", out.render(cli.opts.format));
            if out.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("usage: micz <COMMAND> --dim <D> --mu <p/q> [options]; see `micz --help`");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg} (raise --budget or MICZ_SIZE_BUDGET)");
            ExitCode::from(3)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
