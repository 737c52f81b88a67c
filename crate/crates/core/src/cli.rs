//! Command-line front end. [`run`] parses arguments, writes the report and
//! returns the process exit code: 0 when every requested verification
//! passed, 1 on a verification failure, 2 on a guard refusal or bad input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{AlgebraExt, GradedAlgebra};
use crate::certificate::{
    estimated_terms, evaluate_in, evaluation_ring, CertificateReport, Limits, Ring,
};
use crate::error::Error;
use crate::field::{Gf2, Rational};
use crate::lemmas::{verify_lemma_identities, LemmaReport};
use crate::presented::{ExteriorAlgebra, TruncatedPolynomialAlgebra};
use crate::quotient::{a_g, rank_of, verify_subalgebra_chain, ChainReport};
use crate::surface::{basis_limit, SurfacePowerAlgebra};
use crate::tc::{tc_table, TcRecord};
use crate::zcl::{rp3_zcl_check, zcl_search, Rp3Check, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "E", alias = "e")]
    E,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::B => Ring::BG,
            RingArg::E => Ring::EInf,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Greedy,
    ExhaustiveTiny,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Greedy => Strategy::Greedy,
            StrategyArg::ExhaustiveTiny => Strategy::ExhaustiveTiny,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tcconf",
    version,
    about = "Certified higher topological complexity of surface configuration spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Disable the size guards (prints the estimated sizes first).
    #[arg(long, global = true)]
    pub allow_large: bool,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One record per (genus, n, s) with bounds and the certified value.
    Table {
        #[arg(long, value_delimiter = ',', required = true)]
        genus: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        stages: Vec<usize>,
    },
    /// Full transcript of the zero-divisor products.
    Certify {
        #[arg(long, value_delimiter = ',', required = true)]
        genus: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        stages: Vec<usize>,
        #[arg(long, value_enum, default_value = "B")]
        ring: RingArg,
    },
    /// Monomial bases of the cohomology of the product and of A_g.
    #[command(alias = "dump-basis")]
    Basis {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        points: usize,
    },
    /// Product identities in A_g and the ring maps between the B_g.
    Lemmas {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = 3)]
        points: usize,
    },
    /// Best-effort zero-divisor cup-length search on a small algebra.
    SearchZcl {
        /// torus, surface:G, rp3, truncated:HEIGHT:DEGREE or exterior:K
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        stages: usize,
        #[arg(long, value_enum, default_value = "exhaustive-tiny")]
        strategy: StrategyArg,
    },
    /// The mod-2 zero-divisor check for real projective 3-space.
    Rp3 {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        stages: Vec<usize>,
    },
}

/// What a subcommand produced.
struct Outcome {
    body: String,
    passed: bool,
    /// Errors met while computing; guard refusals take precedence.
    errors: Vec<Error>,
    nothing_computed: bool,
}

impl Outcome {
    fn code(&self) -> i32 {
        if !self.errors.is_empty() {
            2
        } else if self.passed {
            0
        } else {
            1
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_rows<S: AsRef<str>>(header: &[&str], rows: impl IntoIterator<Item = Vec<S>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row.iter().map(AsRef::as_ref))
            .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let limits = if cli.allow_large {
        Limits::unlimited()
    } else {
        Limits::default()
    };
    let outcome = dispatch(&cli, limits, stderr);
    for e in &outcome.errors {
        let _ = writeln!(stderr, "error: {e}");
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(outcome.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    outcome.code()
}

fn dispatch(cli: &Cli, limits: Limits, stderr: &mut dyn Write) -> Outcome {
    let mut outcome = compute(cli, limits, stderr);
    if outcome.nothing_computed {
        outcome.body.clear();
    }
    outcome
}

fn compute(cli: &Cli, limits: Limits, stderr: &mut dyn Write) -> Outcome {
    let fmt = cli.format;
    let result = match &cli.command {
        Command::Table {
            genus,
            points,
            stages,
        } => check_grid(genus, points, stages, true).map(|()| {
            warn_large(cli.allow_large, genus, points, stages, stderr);
            table(genus, points, stages, limits, fmt)
        }),
        Command::Certify {
            genus,
            points,
            stages,
            ring,
        } => check_grid(genus, points, stages, false).map(|()| {
            warn_large(cli.allow_large, genus, points, stages, stderr);
            certify(genus, points, stages, (*ring).into(), limits, fmt)
        }),
        Command::Basis { genus, points } => check_grid(&[*genus], &[*points], &[2], false)
            .and_then(|()| basis(*genus, *points, limits, fmt)),
        Command::Lemmas { genus, points } => lemmas(*genus, *points, fmt),
        Command::SearchZcl {
            algebra,
            stages,
            strategy,
        } => search(algebra, *stages, (*strategy).into(), fmt),
        Command::Rp3 { stages } => rp3(stages, fmt),
    };
    result.unwrap_or_else(|e| Outcome {
        body: String::new(),
        passed: false,
        errors: vec![e],
        nothing_computed: true,
    })
}

fn check_grid(
    genus: &[usize],
    points: &[usize],
    stages: &[usize],
    allow_genus_zero: bool,
) -> Result<(), Error> {
    if let Some(&s) = stages.iter().find(|&&s| s < 2) {
        return Err(Error::InvalidArgument(format!(
            "stages must be at least 2, got {s}"
        )));
    }
    if points.contains(&0) {
        return Err(Error::InvalidArgument("points must be at least 1".into()));
    }
    if !allow_genus_zero && genus.contains(&0) {
        return Err(Error::InvalidArgument(
            "genus 0 is only available in `table`".into(),
        ));
    }
    Ok(())
}

fn warn_large(
    allow: bool,
    genus: &[usize],
    points: &[usize],
    stages: &[usize],
    stderr: &mut dyn Write,
) {
    if !allow {
        return;
    }
    let basis = basis_limit();
    for &g in genus.iter().filter(|&&g| g > 0) {
        for &n in points {
            let size = ((2 * g + 2) as u128)
                .checked_pow(n as u32)
                .unwrap_or(u128::MAX);
            let terms = stages
                .iter()
                .map(|&s| estimated_terms(n, s))
                .max()
                .unwrap_or(0);
            let _ = writeln!(
                stderr,
                "warning: size guards disabled for g={g} n={n}: {size} basis monomials (guard {basis}), about {terms} certificate terms"
            );
        }
    }
}

fn table(
    genus: &[usize],
    points: &[usize],
    stages: &[usize],
    limits: Limits,
    fmt: Format,
) -> Outcome {
    let cells = tc_table(genus, points, stages, limits);
    let mut records: Vec<TcRecord> = Vec::new();
    let mut errors = Vec::new();
    for (_, r) in cells {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => errors.push(e),
        }
    }
    let passed = records
        .iter()
        .all(|r| r.consistent() && (r.genus == 0 || r.certified));
    let records_empty = records.is_empty();
    let body = match fmt {
        Format::Json => json(&records),
        Format::Csv => csv_rows(
            &["genus", "n", "s", "upper", "lower", "tc", "certified"],
            records.iter().map(|r| {
                vec![
                    r.genus.to_string(),
                    r.n.to_string(),
                    r.s.to_string(),
                    r.upper.to_string(),
                    r.lower.map_or(String::new(), |l| l.to_string()),
                    r.tc.to_string(),
                    r.certified.to_string(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = format!(
                "{:>5} {:>3} {:>3} {:>6} {:>6} {:>4}  certified\n",
                "genus", "n", "s", "upper", "lower", "tc"
            );
            for r in &records {
                let lower = r.lower.map_or("-".to_string(), |l| l.to_string());
                let _ = writeln!(
                    out,
                    "{:>5} {:>3} {:>3} {:>6} {:>6} {:>4}  {}",
                    r.genus, r.n, r.s, r.upper, lower, r.tc, r.certified
                );
            }
            out
        }
    };
    Outcome {
        body,
        passed,
        nothing_computed: records_empty,
        errors,
    }
}

fn certify(
    genus: &[usize],
    points: &[usize],
    stages: &[usize],
    ring: Ring,
    limits: Limits,
    fmt: Format,
) -> Outcome {
    let mut reports: Vec<CertificateReport> = Vec::new();
    let mut errors = Vec::new();
    let sorted = |v: &[usize]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (genus, points, stages) = (sorted(genus), sorted(points), sorted(stages));
    for &g in &genus {
        for &n in &points {
            let q = match evaluation_ring(g, n, ring, limits) {
                Ok(q) => q,
                Err(e) => {
                    errors.push(e);
                    continue;
                }
            };
            for &s in &stages {
                match evaluate_in(&q, ring, s, limits) {
                    Ok(c) => reports.push(c.report()),
                    Err(e) => errors.push(e),
                }
            }
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    let records_empty = reports.is_empty();
    let body = match fmt {
        Format::Json => json(&reports),
        Format::Csv => csv_rows(
            &[
                "genus",
                "n",
                "s",
                "ring",
                "factor_count",
                "expected_factor_count",
                "nonzero",
                "result_terms",
                "passed",
            ],
            reports.iter().map(|r| {
                vec![
                    r.genus.to_string(),
                    r.n.to_string(),
                    r.s.to_string(),
                    r.ring.to_string(),
                    r.factor_count.to_string(),
                    r.expected_factor_count.to_string(),
                    r.nonzero.to_string(),
                    r.result_terms.to_string(),
                    r.passed.to_string(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(
                    out,
                    "certificate g={} n={} s={} in {}",
                    r.genus, r.n, r.s, r.ring
                );
                for (k, f) in r.factors.iter().enumerate() {
                    let _ = writeln!(out, "  factor {:>2} {}: {}", k + 1, f.kind, f.tensor);
                }
                let _ = writeln!(
                    out,
                    "  factor count {} (expected {})",
                    r.factor_count, r.expected_factor_count
                );
                let _ = writeln!(out, "  product: {}", r.result);
                if let Some(sup) = &r.support {
                    let coeffs = sup
                        .coefficients
                        .as_ref()
                        .map_or("not in span".to_string(), |c| {
                            c.iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(", ")
                        });
                    let _ = writeln!(
                        out,
                        "  support on {}: {}",
                        sup.patterns.join(" and "),
                        coeffs
                    );
                }
                let _ = writeln!(out, "  nonzero {}, passed {}", r.nonzero, r.passed);
            }
            out
        }
    };
    Outcome {
        body,
        passed,
        nothing_computed: records_empty,
        errors,
    }
}

#[derive(Serialize)]
struct BasisEntry {
    word: String,
    degree: usize,
}

#[derive(Serialize)]
struct BasisSet {
    count: usize,
    monomials: Vec<BasisEntry>,
}

#[derive(Serialize)]
struct BasisReport {
    genus: usize,
    n: usize,
    dimension: usize,
    poincare: Vec<u64>,
    a_g_dimension: usize,
    beta2_rank: usize,
    beta2_prime_rank: usize,
    beta1: BasisSet,
    beta2: BasisSet,
    beta2_prime: BasisSet,
}

fn basis(genus: usize, points: usize, limits: Limits, fmt: Format) -> Result<Outcome, Error> {
    let h = Arc::new(SurfacePowerAlgebra::with_limit(
        genus,
        points,
        limits.basis,
    )?);
    let a = a_g(&h)?;
    let entries = |ms: &[crate::algebra::Monomial], xy: bool| BasisSet {
        count: ms.len(),
        monomials: ms
            .iter()
            .map(|&m| BasisEntry {
                word: if xy { h.xy_word(m) } else { h.monomial_name(m) },
                degree: h.degree(m),
            })
            .collect(),
    };
    let beta2 = h.basis_beta2();
    let beta2_rank = rank_of(
        &beta2
            .iter()
            .map(|&m| a.normal_form(&h.element(m)))
            .collect::<Result<Vec<_>, _>>()?,
    );
    let primes = h.basis_beta2_prime()?;
    let beta2_prime_rank = rank_of(
        &primes
            .iter()
            .map(|(_, e)| a.normal_form(e))
            .collect::<Result<Vec<_>, _>>()?,
    );
    let report = BasisReport {
        genus,
        n: points,
        dimension: h.dimension(),
        poincare: h.poincare_polynomial(),
        a_g_dimension: a.dimension(),
        beta2_rank,
        beta2_prime_rank,
        beta1: entries(h.basis(), false),
        beta2: entries(&beta2, false),
        beta2_prime: entries(&beta2, true),
    };
    let passed = report.a_g_dimension == report.beta2.count
        && report.beta2_rank == report.beta2.count
        && report.beta2_prime_rank == report.beta2.count;
    let sets = [
        ("beta1", &report.beta1),
        ("beta2", &report.beta2),
        ("beta2_prime", &report.beta2_prime),
    ];
    let body = match fmt {
        Format::Json => json(&report),
        Format::Csv => csv_rows(
            &["set", "word", "degree"],
            sets.iter().flat_map(|(name, set)| {
                set.monomials
                    .iter()
                    .map(move |e| vec![name.to_string(), e.word.clone(), e.degree.to_string()])
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "# g={genus} n={points} dimension {} A_g dimension {}",
                report.dimension, report.a_g_dimension
            );
            for (name, set) in sets {
                let _ = writeln!(out, "# {name} ({} monomials)", set.count);
                for e in &set.monomials {
                    let _ = writeln!(out, "{}\t{}", e.word, e.degree);
                }
            }
            out
        }
    };
    Ok(Outcome {
        body,
        passed,
        errors: Vec::new(),
        nothing_computed: false,
    })
}

#[derive(Serialize)]
struct LemmasOutput {
    identities: LemmaReport,
    chain: ChainReport,
}

fn lemmas(genus: usize, points: usize, fmt: Format) -> Result<Outcome, Error> {
    let out = LemmasOutput {
        identities: verify_lemma_identities(genus, points)?,
        chain: verify_subalgebra_chain(genus, points)?,
    };
    let passed = out.identities.passed() && out.chain.passed();
    let rows: Vec<(String, usize, usize)> = out
        .identities
        .checks
        .iter()
        .map(|c| (c.name.clone(), c.cases, c.failures.len()))
        .chain(
            out.chain
                .checks
                .iter()
                .map(|c| (c.name.clone(), c.checked, c.failures)),
        )
        .collect();
    let body = match fmt {
        Format::Json => json(&out),
        Format::Csv => csv_rows(
            &["check", "cases", "failures"],
            rows.iter()
                .map(|(n, c, f)| vec![n.clone(), c.to_string(), f.to_string()]),
        ),
        Format::Text => {
            let mut s = String::new();
            for (name, cases, failures) in &rows {
                let tag = if *failures == 0 { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{tag} {name} ({cases} cases, {failures} failures)");
            }
            s
        }
    };
    Ok(Outcome {
        body,
        passed,
        errors: Vec::new(),
        nothing_computed: false,
    })
}

#[derive(Serialize)]
struct SearchOutput {
    algebra: String,
    s: usize,
    strategy: Strategy,
    bound: usize,
    witness: Vec<String>,
    product: String,
}

fn search_in<A: GradedAlgebra>(
    alg: &A,
    name: &str,
    s: usize,
    strategy: Strategy,
) -> Result<SearchOutput, Error> {
    let w = zcl_search(alg, s, strategy)?;
    Ok(SearchOutput {
        algebra: name.to_string(),
        s,
        strategy,
        bound: w.bound(),
        witness: w.labels.clone(),
        product: alg.format_tensor(&w.product),
    })
}

fn search(algebra: &str, s: usize, strategy: Strategy, fmt: Format) -> Result<Outcome, Error> {
    let bad = || Error::InvalidArgument(format!("unknown algebra `{algebra}`"));
    let num =
        |t: Option<&str>| -> Result<usize, Error> { t.ok_or_else(bad)?.parse().map_err(|_| bad()) };
    let mut parts = algebra.split(':');
    let out = match parts.next() {
        Some("torus") => search_in(&SurfacePowerAlgebra::new(1, 1)?, algebra, s, strategy)?,
        Some("surface") => search_in(
            &SurfacePowerAlgebra::new(num(parts.next())?, 1)?,
            algebra,
            s,
            strategy,
        )?,
        Some("rp3") => search_in(
            &TruncatedPolynomialAlgebra::<Gf2>::new(4, 1)?,
            algebra,
            s,
            strategy,
        )?,
        Some("truncated") => {
            let (height, degree) = (num(parts.next())?, num(parts.next())?);
            search_in(
                &TruncatedPolynomialAlgebra::<Rational>::new(height, degree)?,
                algebra,
                s,
                strategy,
            )?
        }
        Some("exterior") => search_in(
            &ExteriorAlgebra::<Rational>::new("e", num(parts.next())?)?,
            algebra,
            s,
            strategy,
        )?,
        _ => return Err(bad()),
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    let body = match fmt {
        Format::Json => json(&out),
        Format::Csv => csv_rows(
            &["algebra", "s", "strategy", "bound", "witness"],
            [vec![
                out.algebra.clone(),
                s.to_string(),
                out.strategy.to_string(),
                out.bound.to_string(),
                out.witness.join(" "),
            ]],
        ),
        Format::Text => format!(
            "{} s={} {}: zcl >= {}\n  witness: {}\n  product: {}\n",
            out.algebra,
            s,
            out.strategy,
            out.bound,
            out.witness.join(" * "),
            out.product
        ),
    };
    Ok(Outcome {
        body,
        passed: true,
        errors: Vec::new(),
        nothing_computed: false,
    })
}

fn rp3(stages: &[usize], fmt: Format) -> Result<Outcome, Error> {
    let checks: Vec<Rp3Check> = stages
        .iter()
        .map(|&s| rp3_zcl_check(s))
        .collect::<Result<_, _>>()?;
    let passed = checks.iter().all(Rp3Check::passed);
    let body = match fmt {
        Format::Json => json(&checks),
        Format::Csv => csv_rows(
            &["s", "factors", "nonzero", "bound"],
            checks.iter().map(|c| {
                vec![
                    c.s.to_string(),
                    c.factors.to_string(),
                    c.nonzero.to_string(),
                    c.bound.to_string(),
                ]
            }),
        ),
        Format::Text => checks
            .iter()
            .map(|c| {
                format!(
                    "s={} factors={} nonzero={} zcl >= {}\n  product: {}\n",
                    c.s, c.factors, c.nonzero, c.bound, c.product
                )
            })
            .collect(),
    };
    Ok(Outcome {
        body,
        passed,
        errors: Vec::new(),
        nothing_computed: false,
    })
}
