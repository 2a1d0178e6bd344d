//! The `fermat-weil` command line.
//!
//! Every subcommand delegates to one library operation and prints JSON on
//! stdout. Failures print `{"error": {"kind": ..., "message": ...}}` on stderr
//! and exit with 2 (precondition), 3 (budget) or 1 (internal).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, ErrorKind, Result};
use crate::field::{Elem, FieldTable};
use crate::spectrum::{bigint_json, brute_force_count, table_json, variety_spectrum, Factor};
use crate::tate;
use crate::weil::{exponent_tuples, jacobi_direct, weil_number, Coefficients, ExponentTuple, JacobiSums};

#[derive(Debug, Parser)]
#[command(name = "fermat-weil", version, about = "Frobenius spectra, zeta functions and Tate classes of diagonal hypersurfaces")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Output format; csv is only available for dimension tables.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads for data-parallel loops (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for cached discrete-log tables.
    #[arg(long, global = true, env = "FERMAT_WEIL_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the table cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Largest field size q.
    #[arg(long, global = true)]
    pub max_field: Option<u64>,
    /// Largest enumeration size.
    #[arg(long, global = true)]
    pub max_enumeration: Option<u64>,
    /// Largest number of factors for the hypothesis subset loops.
    #[arg(long, global = true)]
    pub max_subset: Option<usize>,
}

impl RunConfig {
    pub fn budget(&self) -> Result<Budget> {
        let mut b = Budget::default();
        if let Some(v) = self.max_field {
            b.max_field = v;
        }
        if let Some(v) = self.max_enumeration {
            b.max_enumeration = v;
        }
        if let Some(v) = self.max_subset {
            b.max_subset_factors = v;
        }
        if b.max_field == 0 || b.max_enumeration == 0 || b.max_subset_factors == 0 {
            return Err(Error::domain("budgets must be positive"));
        }
        Ok(b)
    }

    fn field(&self, p: u64, f: u32, budget: &Budget) -> Result<FieldTable> {
        let dir = if self.no_cache { None } else { self.cache_dir.as_deref() };
        FieldTable::new_cached(p, f, budget, dir)
    }
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(short)]
    pub p: u64,
    /// Extension degree: the field is GF(p^f).
    #[arg(short, default_value_t = 1)]
    pub f: u32,
}

#[derive(Debug, Clone, Args)]
pub struct VarietyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Factors `m:r[:a0,a1,...]`, comma separated or repeated.
    #[arg(short = 'X', long = "factors", required = true)]
    pub factors: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field parameters: modulus, generator, optionally the log table.
    Field {
        #[command(flatten)]
        field: FieldArgs,
        /// Include the discrete logs of 1..q-1.
        #[arg(long)]
        table: bool,
    },
    /// The exponent tuples D_{m,r} in lexicographic order.
    Tuples {
        #[arg(short)]
        m: u32,
        #[arg(short)]
        r: u32,
    },
    /// Jacobi sums and Weil numbers.
    Jacobi {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short)]
        m: u32,
        /// Dimension; all of D_{m,r} when no tuple is given.
        #[arg(short)]
        r: Option<u32>,
        /// One tuple, e.g. `1,1,1`.
        #[arg(long, short = 'g')]
        gamma: Option<String>,
        /// Coefficients a0,a1,... for the Weil numbers.
        #[arg(long)]
        coeffs: Option<String>,
        /// Use direct summation.
        #[arg(long)]
        direct: bool,
    },
    /// Frobenius spectrum of a product of diagonal hypersurfaces.
    Spectrum(VarietyArgs),
    /// Point count over GF(q^n) from the Lefschetz trace.
    Count {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(short, default_value_t = 1)]
        n: u32,
        /// Also count by exhaustive enumeration and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Zeta function as the list of P_i.
    Zeta(VarietyArgs),
    /// Tate-class dimensions per degree 2i.
    Tatedim {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(short)]
        i: Option<u32>,
        /// Count classes that become Tate over some extension.
        #[arg(long)]
        stable: bool,
    },
    /// Closed dimension formulas for products.
    Formula {
        /// 2: all r_j odd; 3: all r_j even.
        #[arg(long)]
        case: u32,
        /// Characteristic, used to compute middle dimensions for case 3.
        #[arg(short)]
        p: Option<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        ms: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        rs: Vec<u32>,
        #[arg(short)]
        i: Option<u32>,
        /// Middle Tate dimensions per factor for case 3.
        #[arg(long, value_delimiter = ',')]
        middle_dims: Vec<u64>,
        /// Evaluate the case 2 formula even when some r_j is even.
        #[arg(long)]
        allow_even: bool,
    },
    /// Tuples satisfying the stable Tate criterion.
    #[command(name = "stable-b", alias = "stableB")]
    StableB {
        #[arg(short)]
        m: u32,
        #[arg(short)]
        r: u32,
        #[arg(short)]
        p: u64,
    },
    /// Hypothesis checker for products over characteristic p.
    Check {
        #[arg(short)]
        p: u64,
        /// Factors `m:r`, comma separated or repeated.
        #[arg(short = 'X', long = "factors", required = true)]
        factors: Vec<String>,
    },
    /// Point count over GF(q^n) by exhaustive enumeration.
    Oracle {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(short, default_value_t = 1)]
        n: u32,
    },
}

/// A factor as written on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    pub m: u32,
    pub r: u32,
    pub coeffs: Option<Vec<u64>>,
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

/// Parses `m:r[:a0,a1,...]` lists. Tokens are split on commas; a token without
/// `:` continues the coefficient list of the previous factor.
pub fn parse_factors(specs: &[String]) -> Result<Vec<FactorSpec>> {
    let mut out: Vec<FactorSpec> = Vec::new();
    for spec in specs {
        for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let parts: Vec<&str> = token.split(':').collect();
            match parts.as_slice() {
                [c] => match out.last_mut() {
                    Some(FactorSpec { coeffs: Some(list), .. }) => list.push(parse_num(c, "coefficient")?),
                    _ => return Err(Error::Parse(format!("stray token {token:?} in factor list"))),
                },
                [m, r] => out.push(FactorSpec {
                    m: parse_num(m, "degree")?,
                    r: parse_num(r, "dimension")?,
                    coeffs: None,
                }),
                [m, r, a] => out.push(FactorSpec {
                    m: parse_num(m, "degree")?,
                    r: parse_num(r, "dimension")?,
                    coeffs: Some(vec![parse_num(a, "coefficient")?]),
                }),
                _ => return Err(Error::Parse(format!("bad factor {token:?}"))),
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty factor list".into()));
    }
    Ok(out)
}

fn build_factors(specs: &[FactorSpec], table: &FieldTable) -> Result<Vec<Factor>> {
    specs
        .iter()
        .map(|s| {
            let coeffs = match &s.coeffs {
                None => Coefficients::ones(s.r),
                Some(list) => {
                    if list.len() != s.r as usize + 2 {
                        return Err(Error::domain(format!(
                            "factor {}:{} needs {} coefficients, got {}",
                            s.m,
                            s.r,
                            s.r + 2,
                            list.len()
                        )));
                    }
                    let elems = list
                        .iter()
                        .map(|&a| {
                            Elem::try_from(a).map_err(|_| Error::domain(format!("coefficient {a} too large")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Coefficients::new(table, elems)?
                }
            };
            Factor::new(s.m, coeffs)
        })
        .collect()
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u64>> {
    s.split(',').map(|t| parse_num(t, what)).collect()
}

/// Result of one command in every output format it supports.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub text: Option<String>,
    pub csv: Option<String>,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, text: None, csv: None }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.json.to_string()),
            Format::Pretty => Ok(match &self.text {
                Some(t) => t.clone(),
                None => serde_json::to_string_pretty(&self.json).expect("JSON renders"),
            }),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| Error::domain("csv output is only available for dimension tables")),
        }
    }
}

fn dims_csv(rows: &BTreeMap<u32, Vec<u64>>, header: &str) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for (i, vals) in rows {
        let cells: Vec<String> = std::iter::once(i.to_string())
            .chain(vals.iter().map(u64::to_string))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out.pop();
    out
}

fn dims_output(rows: BTreeMap<u32, u64>) -> Output {
    let csv_rows = rows.iter().map(|(&i, &d)| (i, vec![d])).collect();
    Output {
        json: table_json(&rows),
        text: None,
        csv: Some(dims_csv(&csv_rows, "i,dim")),
    }
}

fn degree_range(i: Option<u32>, top: u32) -> Vec<u32> {
    match i {
        Some(i) => vec![i],
        None => (0..=top).collect(),
    }
}

/// Executes one command.
pub fn execute(command: &Command, config: &RunConfig) -> Result<Output> {
    let budget = config.budget()?;
    let b = &budget;
    match command {
        Command::Field { field, table } => {
            let t = config.field(field.p, field.f, b)?;
            let mut v = json!({
                "p": field.p,
                "f": field.f,
                "q": t.q(),
                "modulus": t.modulus(),
                "generator": t.generator(),
            });
            if *table {
                let logs = t.nonzero().map(|x| t.dlog(x)).collect::<Result<Vec<_>>>()?;
                v["dlog"] = json!(logs);
            }
            Ok(Output::json(v))
        }
        Command::Tuples { m, r } => {
            let tuples: Vec<ExponentTuple> = exponent_tuples(*m, *r, b)?.collect();
            Ok(Output::json(json!({
                "m": m,
                "r": r,
                "count": tuples.len(),
                "tuples": tuples,
            })))
        }
        Command::Jacobi { field, m, r, gamma, coeffs, direct } => {
            let t = config.field(field.p, field.f, b)?;
            let tuples: Vec<ExponentTuple> = match (gamma, r) {
                (Some(g), _) => {
                    let entries = parse_list(g, "exponent")?
                        .into_iter()
                        .map(|e| u32::try_from(e).map_err(|_| Error::domain("exponent too large")))
                        .collect::<Result<Vec<_>>>()?;
                    vec![ExponentTuple::new(*m, entries)?]
                }
                (None, Some(r)) => exponent_tuples(*m, *r, b)?.collect(),
                (None, None) => return Err(Error::domain("give either --gamma or -r")),
            };
            let engine = JacobiSums::new(&t, *m)?;
            let mut rows = Vec::with_capacity(tuples.len());
            for g in &tuples {
                let a = match coeffs {
                    Some(list) => {
                        let elems = parse_list(list, "coefficient")?
                            .into_iter()
                            .map(|a| Elem::try_from(a).map_err(|_| Error::domain("coefficient too large")))
                            .collect::<Result<Vec<_>>>()?;
                        Coefficients::new(&t, elems)?
                    }
                    None => Coefficients::ones(g.r()),
                };
                let j = if *direct {
                    jacobi_direct(&t, g, b)?
                } else {
                    engine.jacobi(g, b)?
                };
                let alpha = weil_number(&t, g, &a, b)?;
                rows.push(json!({ "gamma": g, "jacobi": j.render(), "weil": alpha.render() }));
            }
            Ok(Output::json(json!({ "q": t.q(), "m": m, "sums": rows })))
        }
        Command::Spectrum(v) => {
            let t = config.field(v.field.p, v.field.f, b)?;
            let factors = build_factors(&parse_factors(&v.factors)?, &t)?;
            let s = variety_spectrum(&factors, &t, b)?;
            Ok(Output::json(s.to_json()))
        }
        Command::Count { variety: v, n, verify } => {
            let t = config.field(v.field.p, v.field.f, b)?;
            let factors = build_factors(&parse_factors(&v.factors)?, &t)?;
            let count = variety_spectrum(&factors, &t, b)?.point_count(*n, b)?;
            let mut out = json!({ "n": n, "count": bigint_json(&count) });
            if *verify {
                let oracle = brute_force_count(&factors, &t, *n, b)?;
                if oracle != count {
                    return Err(Error::Internal(format!(
                        "trace formula gives {count}, enumeration gives {oracle}"
                    )));
                }
                out["oracle"] = bigint_json(&oracle);
            }
            Ok(Output {
                json: out,
                text: Some(count.to_string()),
                csv: None,
            })
        }
        Command::Zeta(v) => {
            let t = config.field(v.field.p, v.field.f, b)?;
            let factors = build_factors(&parse_factors(&v.factors)?, &t)?;
            let z = variety_spectrum(&factors, &t, b)?.zeta()?;
            Ok(Output {
                json: z.to_json(),
                text: Some(z.to_string()),
                csv: None,
            })
        }
        Command::Tatedim { variety: v, i, stable } => {
            let t = config.field(v.field.p, v.field.f, b)?;
            let factors = build_factors(&parse_factors(&v.factors)?, &t)?;
            let s = variety_spectrum(&factors, &t, b)?;
            let degrees = degree_range(*i, s.dim());
            if *stable {
                let mut dims = BTreeMap::new();
                let mut ns = BTreeMap::new();
                let mut rows = BTreeMap::new();
                for d in degrees {
                    let (dim, n) = tate::tate_dim_stable(&s, d)?;
                    dims.insert(d, dim as u64);
                    ns.insert(d, n);
                    rows.insert(d, vec![dim as u64, n]);
                }
                Ok(Output {
                    json: json!({ "dims": table_json(&dims), "N": table_json(&ns) }),
                    text: None,
                    csv: Some(dims_csv(&rows, "i,dim,N")),
                })
            } else {
                Ok(dims_output(
                    degrees
                        .into_iter()
                        .map(|d| (d, tate::tate_dim_exact(&s, d) as u64))
                        .collect(),
                ))
            }
        }
        Command::Formula { case, p, ms, rs, i, middle_dims, allow_even } => {
            let top: u32 = rs.iter().sum();
            let degrees = degree_range(*i, top);
            let rows = match case {
                2 => degrees
                    .into_iter()
                    .map(|d| Ok((d, tate::dim_case2(ms, rs, d, *allow_even, b)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?,
                3 => {
                    let middle = middle_dims_for(ms, rs, *p, middle_dims, b)?;
                    degrees
                        .into_iter()
                        .map(|d| Ok((d, tate::dim_case3(ms, rs, d, &middle, b)?)))
                        .collect::<Result<BTreeMap<_, _>>>()?
                }
                other => return Err(Error::domain(format!("no dimension formula for case {other}"))),
            };
            Ok(dims_output(rows))
        }
        Command::StableB { m, r, p } => {
            let s = tate::stable_b(*m, *r, *p, b)?;
            let mut v = serde_json::to_value(&s).expect("serializes");
            v["count"] = json!(s.tuples.len());
            Ok(Output::json(v))
        }
        Command::Check { p, factors } => {
            let specs = parse_factors(factors)?;
            if specs.iter().any(|s| s.coeffs.is_some()) {
                return Err(Error::domain("the checker takes factors as m:r only"));
            }
            let pairs: Vec<(u32, u32)> = specs.iter().map(|s| (s.m, s.r)).collect();
            Ok(Output::json(tate::hypothesis_check(*p, &pairs, b)?.to_json()))
        }
        Command::Oracle { variety: v, n } => {
            let t = config.field(v.field.p, v.field.f, b)?;
            let factors = build_factors(&parse_factors(&v.factors)?, &t)?;
            let count = brute_force_count(&factors, &t, *n, b)?;
            Ok(Output {
                json: json!({ "n": n, "count": bigint_json(&count) }),
                text: Some(count.to_string()),
                csv: None,
            })
        }
    }
}

fn middle_dims_for(
    ms: &[u32],
    rs: &[u32],
    p: Option<u64>,
    given: &[u64],
    budget: &Budget,
) -> Result<BTreeMap<usize, u64>> {
    if !given.is_empty() {
        if given.len() != ms.len() {
            return Err(Error::domain(format!(
                "{} middle dimensions for {} factors",
                given.len(),
                ms.len()
            )));
        }
        return Ok(given.iter().copied().enumerate().collect());
    }
    let p = p.ok_or_else(|| Error::domain("case 3 needs --middle-dims or -p"))?;
    ms.iter()
        .zip(rs)
        .enumerate()
        .map(|(j, (&m, &r))| {
            let t = tate::splitting_field(p, m, budget)?;
            Ok((j, tate::middle_tate_dim_exact(m, r, &Coefficients::ones(r), &t, budget)?))
        })
        .collect()
}

fn error_json(e: &Error) -> Value {
    let kind = match e.kind() {
        ErrorKind::Precondition => "precondition",
        ErrorKind::Budget => "budget",
        ErrorKind::Internal => "internal",
    };
    json!({ "error": { "kind": kind, "message": e.to_string() } })
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Precondition => 2,
        ErrorKind::Budget => 3,
        ErrorKind::Internal => 1,
    }
}

/// Runs a parsed command line, writing to the given streams; returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let go = || execute(&cli.command, &cli.config)?.render(cli.config.format);
    let result = match cli.config.threads {
        Some(0) => Err(Error::domain("--threads must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))
            .and_then(|pool| pool.install(go)),
        None => go(),
    };
    match result {
        Ok(text) => {
            let _ = writeln!(stdout, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(&e));
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let err = json!({ "error": { "kind": "precondition", "message": e.to_string().trim_end() } });
            eprintln!("{err}");
            return 2;
        }
    };
    run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
