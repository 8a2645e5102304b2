//! Command handlers for the `a4csl` binary. Each handler returns the text it
//! would print so that tests can compare outputs byte for byte.

use std::fmt::Write as _;

use a4csl::counting::{census, census_table, dirichlet_coeffs, enumerate_rotations, f_prime_power, CensusConfig};
use a4csl::csl::{
    csl_checked, equal_csl, equal_csl_by_hnf, rotation_of, sufficient_equal_lemma, symmetry_related,
    CslRecord,
};
use a4csl::icosian::{Coords, Icosian};
use a4csl::lattice::{gram_l, half_cartan_a4, SublatticeL};
use a4csl::quat::Quat;
use a4csl::ring::OInt;
use a4csl::CslError;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "a4csl", version, about = "Coincidence site lattices of the root lattice A4")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
    /// worker threads for enumeration
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,
    /// maximum search-tree nodes per short-vector enumeration
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// largest index the census will attempt
    #[arg(long, global = true)]
    pub nmax: Option<u64>,
    /// read icosians as four o-coordinates "c0,c1,c2,c3" instead of components
    #[arg(long, global = true)]
    pub coords: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect the coincidence rotation of an icosian
    Rot { q: String },
    /// Compute the CSL of an icosian
    Csl { q: String },
    /// Decide whether two icosians give the same CSL
    Equal { q1: String, q2: String },
    /// List one rotation per class with the given index
    Enumerate { n: u64 },
    /// Tabulate CSL counts for indices 1..=UPTO
    Census {
        upto: u64,
        /// report only index UPTO, with every CSL basis
        #[arg(long)]
        only: bool,
    },
    /// Print f(1), ..., f(N)
    Dirichlet { n: u64 },
    /// Recompute every reference value
    Selftest,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Domain(CslError),
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// output was produced, but the run stopped early
    #[error("{message}")]
    Partial { output: String, message: String },
    #[error("selftest failed")]
    SelftestFailed { output: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Budget(_) | CliError::Partial { .. } => 4,
            CliError::SelftestFailed { .. } => 1,
        }
    }
}

impl From<CslError> for CliError {
    fn from(e: CslError) -> Self {
        match e {
            CslError::Parse(m) => CliError::Parse(m),
            CslError::BudgetExceeded(m) => CliError::Budget(m),
            other => CliError::Domain(other),
        }
    }
}

type CliResult = std::result::Result<String, CliError>;

impl Cli {
    fn config(&self) -> CensusConfig {
        let d = CensusConfig::default();
        CensusConfig {
            threads: self.threads,
            max_nodes: self.budget.unwrap_or(d.max_nodes),
            max_n: self.nmax.unwrap_or(d.max_n),
            verify: false,
        }
    }

    fn icosian(&self, s: &str) -> std::result::Result<Icosian, CliError> {
        if self.coords {
            let parts: Vec<&str> = s.trim_matches(|c| c == '(' || c == ')').split(',').collect();
            if parts.len() != 4 {
                return Err(CliError::Parse(format!("expected four coordinates in {s:?}")));
            }
            let mut c: Coords = [OInt::ZERO; 4];
            for (slot, p) in c.iter_mut().zip(parts) {
                *slot = p.trim().parse::<OInt>()?;
            }
            return Ok(Icosian::from_coords(c));
        }
        let q: Quat = s.parse()?;
        Icosian::from_quat(&q).ok_or_else(|| CliError::Parse(format!("{q} is not an element of I")))
    }
}

fn with_schema(mut v: Value) -> String {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn key_values(rows: &[(&str, String)], output: Output) -> String {
    let mut s = String::new();
    match output {
        Output::Csv => {
            s.push_str("key,value\n");
            for (k, v) in rows {
                let _ = writeln!(s, "{k},\"{v}\"");
            }
        }
        _ => {
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in rows {
                let _ = writeln!(s, "{k:width$}  {v}");
            }
        }
    }
    s
}

pub fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Rot { q } => cmd_rot(cli, q),
        Command::Csl { q } => cmd_csl(cli, q),
        Command::Equal { q1, q2 } => cmd_equal(cli, q1, q2),
        Command::Enumerate { n } => cmd_enumerate(cli, *n),
        Command::Census { upto, only } => cmd_census(cli, *upto, *only),
        Command::Dirichlet { n } => cmd_dirichlet(cli, *n),
        Command::Selftest => cmd_selftest(cli),
    }
}

pub fn cmd_rot(cli: &Cli, input: &str) -> CliResult {
    let q = cli.icosian(input)?;
    if q.is_zero() {
        return Err(CslError::ZeroInput("rotation").into());
    }
    let primitive = q.is_primitive()?;
    let admissible = q.is_admissible()?;
    if !admissible {
        return Err(CslError::NotAdmissible(q.nr().abs_norm().to_string()).into());
    }
    let rot = rotation_of(&q)?;
    if cli.output == Output::Json {
        return Ok(with_schema(json!({
            "q": q,
            "primitive": primitive,
            "admissible": admissible,
            "primitive_part": rot.q,
            "den": rot.den,
            "sigma": rot.sigma,
            "alpha": rot.alpha,
            "q_alpha": rot.q_alpha,
            "matrix": rot.matrix.to_string(),
        })));
    }
    Ok(key_values(
        &[
            ("q", q.to_string()),
            ("primitive", primitive.to_string()),
            ("admissible", admissible.to_string()),
            ("primitive_part", rot.q.to_string()),
            ("den", rot.den.to_string()),
            ("sigma", rot.sigma.to_string()),
            ("alpha", rot.alpha.to_string()),
            ("q_alpha", rot.q_alpha.to_string()),
            ("matrix", rot.matrix.to_string()),
        ],
        cli.output,
    ))
}

pub fn cmd_csl(cli: &Cli, input: &str) -> CliResult {
    let q = cli.icosian(input)?;
    let rec = CslRecord::new(&q)?;
    csl_checked(&rec.rotation)?;
    if cli.output == Output::Json {
        return Ok(with_schema(rec.to_json()));
    }
    Ok(key_values(
        &[
            ("q", rec.rotation.q.to_string()),
            ("q_alpha", rec.rotation.q_alpha.to_string()),
            ("sigma", rec.rotation.sigma.to_string()),
            ("den", rec.rotation.den.to_string()),
            ("hnf", rec.csl.to_string()),
        ],
        cli.output,
    ))
}

/// The three verdicts: criterion, HNF comparison, symmetry-relatedness.
pub fn equal_verdict(p1: &Icosian, p2: &Icosian) -> a4csl::Result<(bool, bool, bool, bool)> {
    let p1 = p1.primitive_part()?.0;
    let p2 = p2.primitive_part()?.0;
    Ok((
        equal_csl(&p1, &p2)?,
        equal_csl_by_hnf(&p1, &p2)?,
        symmetry_related(&p1, &p2)?,
        sufficient_equal_lemma(&p1, &p2)?,
    ))
}

pub fn cmd_equal(cli: &Cli, a: &str, b: &str) -> CliResult {
    let p1 = cli.icosian(a)?;
    let p2 = cli.icosian(b)?;
    let (criterion, hnf, related, sufficient) = equal_verdict(&p1, &p2)?;
    if cli.output == Output::Json {
        return Ok(with_schema(json!({
            "q1": p1,
            "q2": p2,
            "equal_csl": criterion,
            "equal_csl_hnf": hnf,
            "symmetry_related": related,
            "sufficient_condition": sufficient,
        })));
    }
    Ok(key_values(
        &[
            ("equal_csl", criterion.to_string()),
            ("equal_csl_hnf", hnf.to_string()),
            ("symmetry_related", related.to_string()),
            ("sufficient_condition", sufficient.to_string()),
        ],
        cli.output,
    ))
}

fn run_in_pool<T: Send>(cli: &Cli, f: impl FnOnce() -> T + Send) -> std::result::Result<T, CliError> {
    let pool = rayon_pool(cli.threads)?;
    Ok(pool.install(f))
}

fn rayon_pool(threads: usize) -> std::result::Result<a4csl::counting::Pool, CliError> {
    a4csl::counting::pool(threads).map_err(CliError::from)
}

pub fn cmd_enumerate(cli: &Cli, n: u64) -> CliResult {
    let budget = cli.config().max_nodes;
    let reps = run_in_pool(cli, || enumerate_rotations(n, budget))??;
    let records = reps.iter().map(CslRecord::new).collect::<a4csl::Result<Vec<_>>>()?;
    match cli.output {
        Output::Json => Ok(with_schema(json!({
            "n": n,
            "rotations": records.iter().map(CslRecord::to_json).collect::<Vec<_>>(),
        }))),
        Output::Csv => {
            let mut s = String::from("q,q_alpha,sigma,den,hnf\n");
            for r in &records {
                let hnf: Vec<String> = r.csl.flat().iter().map(i64::to_string).collect();
                let _ = writeln!(
                    s,
                    "\"{}\",\"{}\",{},{},\"{}\"",
                    r.rotation.q,
                    r.rotation.q_alpha,
                    r.rotation.sigma,
                    r.rotation.den,
                    hnf.join(" ")
                );
            }
            Ok(s)
        }
        Output::Text => {
            let mut s = String::new();
            for r in &records {
                let _ = writeln!(s, "{}  den={}  {}", r.rotation.q, r.rotation.den, r.csl);
            }
            let _ = writeln!(s, "{} classes", records.len());
            Ok(s)
        }
    }
}

pub fn cmd_census(cli: &Cli, upto: u64, only: bool) -> CliResult {
    let config = cli.config();
    if only {
        let c = census(upto, &config)?;
        return Ok(match cli.output {
            Output::Json => with_schema(json!({
                "n": c.n,
                "rotation_classes": c.rotation_classes,
                "csl_count": c.csl_count,
                "f_formula": c.f_formula.to_string(),
                "match": c.matches(),
                "representatives": c.representatives,
                "csls": c.csls,
            })),
            Output::Csv => format!(
                "n,rotation_classes,csl_count,f_formula,match\n{},{},{},{},{}\n",
                c.n,
                c.rotation_classes,
                c.csl_count,
                c.f_formula,
                c.matches()
            ),
            Output::Text => {
                let mut s = format!(
                    "n = {}: {} rotation classes, {} CSLs, f(n) = {}\n",
                    c.n, c.rotation_classes, c.csl_count, c.f_formula
                );
                for l in &c.csls {
                    let _ = writeln!(s, "  {l}");
                }
                s
            }
        });
    }
    let table = census_table(upto, &config)?;
    let out = match cli.output {
        Output::Json => with_schema(json!({
            "rows": table.rows.iter().map(|r| json!({
                "n": r.n,
                "rotation_classes": r.rotation_classes,
                "csl_count": r.csl_count,
                "f_formula": r.f_formula.to_string(),
                "match": r.matches(),
            })).collect::<Vec<_>>(),
            "truncated": table.truncated,
        })),
        Output::Csv => table.to_csv(),
        Output::Text => {
            let mut s = format!("{:>4} {:>8} {:>8} {:>8}  match\n", "n", "classes", "csls", "f(n)");
            for r in &table.rows {
                let _ = writeln!(
                    s,
                    "{:>4} {:>8} {:>8} {:>8}  {}",
                    r.n,
                    r.rotation_classes,
                    r.csl_count,
                    r.f_formula,
                    r.matches()
                );
            }
            if let Some(m) = &table.truncated {
                let _ = writeln!(s, "# truncated: {m}");
            }
            s
        }
    };
    match table.truncated {
        Some(message) => Err(CliError::Partial { output: out, message }),
        None => Ok(out),
    }
}

pub fn cmd_dirichlet(cli: &Cli, n: u64) -> CliResult {
    if n == 0 {
        return Err(CslError::ZeroInput("dirichlet").into());
    }
    let coeffs = dirichlet_coeffs(n);
    Ok(match cli.output {
        Output::Json => with_schema(json!({
            "coefficients": coeffs.iter().map(|c| json!(*c as u64)).collect::<Vec<_>>(),
        })),
        Output::Csv => {
            let mut s = String::from("n,f\n");
            for (i, c) in coeffs.iter().enumerate() {
                let _ = writeln!(s, "{},{}", i + 1, c);
            }
            s
        }
        Output::Text => {
            let parts: Vec<String> = coeffs.iter().map(u128::to_string).collect();
            format!("{}\n", parts.join(", "))
        }
    })
}

/// The CSL spanned by `(1,2,0,0), (2,−1,0,0), (3/2,½,½,½), (−1,½,(τ−1)/2,−τ/2)`.
pub fn reference_csl() -> a4csl::Result<SublatticeL> {
    let basis = ["(1,2,0,0)", "(2,-1,0,0)", "(3/2,1/2,1/2,1/2)", "(-1,1/2,-1/2+1/2*t,-1/2*t)"]
        .iter()
        .map(|s| s.parse::<Quat>())
        .collect::<a4csl::Result<Vec<_>>>()?;
    SublatticeL::from_quats(&basis)
}

pub fn worked_pair() -> (Icosian, Icosian) {
    let r = Icosian::from_quat(&"(t,2*t,0,0)".parse().expect("valid")).expect("in I");
    let s = Icosian::from_quat(&"(1+t,t,t,1)".parse().expect("valid")).expect("in I");
    (r, s)
}

fn selftest_checks(config: &CensusConfig) -> Vec<(String, a4csl::Result<bool>)> {
    let mut checks: Vec<(String, a4csl::Result<bool>)> = Vec::new();
    checks.push((
        "dirichlet(11) = 1,5,10,20,6,50,50,80,90,30,144".into(),
        Ok(dirichlet_coeffs(11) == [1, 5, 10, 20, 6, 50, 50, 80, 90, 30, 144]),
    ));
    for (p, r, v) in [(5, 1, 6), (2, 2, 20), (11, 1, 144), (3, 2, 90)] {
        checks.push((format!("f({p}^{r}) = {v}"), f_prime_power(p, r).map(|x| x == v)));
    }
    checks.push(("Gram(L) = Cartan(A4)/2".into(), Ok(gram_l() == half_cartan_a4())));
    let (r, s) = worked_pair();
    let pair = || -> a4csl::Result<bool> {
        let cr = csl_checked(&rotation_of(&r)?)?;
        let cs = csl_checked(&rotation_of(&s)?)?;
        Ok(cr == cs && cr == reference_csl()? && cr.index() == 5)
    };
    checks.push(("r and s share the index-5 CSL with the reference basis".into(), pair()));
    checks.push(("r and s are not symmetry related".into(), symmetry_related(&r, &s).map(|b| !b)));
    checks.push(("equal_csl(r, s)".into(), equal_csl(&r, &s)));
    for (n, v) in [(2, 5), (3, 10), (4, 20), (5, 6), (6, 50), (11, 144)] {
        checks.push((
            format!("census({n}) = {v}"),
            census(n, config).map(|c| c.csl_count == v),
        ));
    }
    checks
}

pub fn cmd_selftest(cli: &Cli) -> CliResult {
    let config = CensusConfig {
        verify: true,
        ..cli.config()
    };
    let checks = selftest_checks(&config);
    let mut s = String::new();
    let mut ok = true;
    for (name, result) in &checks {
        let (tag, note) = match result {
            Ok(true) => ("PASS", String::new()),
            Ok(false) => ("FAIL", String::new()),
            Err(e) => ("FAIL", format!(" ({e})")),
        };
        ok &= tag == "PASS";
        let _ = writeln!(s, "{tag} {name}{note}");
    }
    if ok {
        Ok(s)
    } else {
        Err(CliError::SelftestFailed { output: s })
    }
}
