//! Command-line front end.
//!
//! Every subcommand emits one flat table, as CSV (header row always present)
//! or as a JSON array of objects with the same keys. Exit codes: 0 success,
//! 1 domain or I/O error, 2 usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diffop::DifferenceOperator;
use crate::diophantine::{approx_init, EventKind, Rho};
use crate::error::{Error, Result};
use crate::lattice::{classify, lattice_points, Conic, Orientation};
use crate::moments::{build_measure, tau_closed, tau_series, DEFAULT_TERMS};
use crate::numeric::format_f64;
use crate::orthopoly::{explicit_pn, stieltjes_recurrence, verify_table};
use crate::polynomial::Polynomial;
use crate::semiclassical::pearson_masses;

#[derive(Parser, Debug)]
#[command(
    name = "snul",
    version,
    about = "Difference calculus and orthogonal polynomials on special non-uniform lattices"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Points of the lattice attached to a conic.
    Lattice(LatticeArgs),
    /// D or M applied to a polynomial.
    Diffop(DiffopArgs),
    /// Events of the one-sided best approximations of rho.
    Approx(ApproxArgs),
    /// Closed-form and series Chebyshev moments.
    Moments(MomentsArgs),
    /// Recurrence coefficients of the truncated measure.
    Recurrence(RecurrenceArgs),
    /// Recurrence coefficients next to the closed-form leading coefficients.
    VerifyTable(VerifyTableArgs),
    /// Closed-form orthonormal polynomial.
    Pn(PnArgs),
    /// Masses from a Pearson-type ratio table.
    Pearson(PearsonArgs),
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    /// A,B,C,D,E,F of A y^2 + 2B xy + C x^2 + 2D y + 2E x + F = 0.
    #[arg(long, allow_hyphen_values = true)]
    pub conic: String,
    #[arg(long, allow_hyphen_values = true)]
    pub s1: f64,
    #[arg(long)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = OrientationArg::Minus)]
    pub orientation: OrientationArg,
    /// Scale of a q-linear lattice.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub scale: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Minus,
    Plus,
}

#[derive(Args, Debug)]
pub struct DiffopArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub conic: String,
    /// c0,c1,...,cn in ascending powers.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    #[arg(long, value_enum)]
    pub op: OpArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Dd,
    Mean,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    /// golden, sqrt2 or a decimal literal.
    #[arg(long)]
    pub rho: String,
    #[arg(long)]
    pub upto: u64,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[arg(long)]
    pub rho: String,
    #[arg(long)]
    pub pmax: u64,
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    pub series_terms: usize,
}

#[derive(Args, Debug)]
pub struct RecurrenceArgs {
    #[arg(long)]
    pub rho: String,
    #[arg(long = "K")]
    pub k: usize,
    #[arg(long = "N")]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct VerifyTableArgs {
    #[arg(long)]
    pub rho: String,
    #[arg(long = "K")]
    pub k: usize,
    #[arg(long = "N")]
    pub n: usize,
    /// 17 significant digits instead of 4 decimals.
    #[arg(long)]
    pub full_precision: bool,
}

#[derive(Args, Debug)]
pub struct PnArgs {
    #[arg(long)]
    pub rho: String,
    #[arg(long)]
    pub n: usize,
    /// Evaluate at these abscissae instead of listing Chebyshev coefficients.
    #[arg(long, allow_hyphen_values = true)]
    pub eval: Option<String>,
}

#[derive(Args, Debug)]
pub struct PearsonArgs {
    /// CSV with columns k,ratio where ratio = mu(y_{k+1}) / mu(y_k).
    #[arg(long)]
    pub ratio_table: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub seed: f64,
    /// k0:k1
    #[arg(long, allow_hyphen_values = true)]
    pub range: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Cell {
    Int(i64),
    Num(String),
    Text(String),
    Empty,
}

impl Cell {
    fn num(x: f64, sig: usize) -> Self {
        Cell::Num(format_f64(x, sig))
    }

    fn opt(x: Option<f64>, render: impl Fn(f64) -> String) -> Self {
        x.map_or(Cell::Empty, |v| Cell::Num(render(v)))
    }

    fn as_text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(s) | Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(s) => serde_json::Number::from_str(s).map_or_else(|_| Value::String(s.clone()), Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(headers: &[&'static str]) -> Self {
        Self {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::InvalidInput(e.to_string());
                w.write_record(&self.headers).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::as_text)).map_err(io)?;
                }
                w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))
            }
            Format::Json => {
                let array: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: serde_json::Map<String, serde_json::Value> = self
                            .headers
                            .iter()
                            .zip(row)
                            .map(|(h, c)| (h.to_string(), c.to_json()))
                            .collect();
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                let mut bytes = serde_json::to_vec_pretty(&array).map_err(|e| Error::InvalidInput(e.to_string()))?;
                bytes.push(b'\n');
                Ok(bytes)
            }
        }
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("{what}: cannot parse {t:?}")))
        })
        .collect()
}

fn parse_conic(s: &str) -> Result<Conic> {
    let v = parse_list(s, "--conic")?;
    if v.len() != 6 {
        return Err(Error::InvalidInput(format!("--conic needs 6 values, got {}", v.len())));
    }
    Conic::from_slice(&v)
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidInput(format!("--range expects k0:k1, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn read_ratio_table(path: &Path) -> Result<BTreeMap<i64, f64>> {
    let mut reader =
        csv::Reader::from_path(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| Error::InvalidInput(e.to_string()))?
        .clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::InvalidInput(format!("ratio table lacks column {name:?}")))
    };
    let (ki, ri) = (col("k")?, col("ratio")?);
    let mut table = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::InvalidInput(e.to_string()))?;
        let k: i64 = record[ki]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad k {:?}", &record[ki])))?;
        let ratio: f64 = record[ri]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad ratio {:?}", &record[ri])))?;
        table.insert(k, ratio);
    }
    Ok(table)
}

fn lattice_table(args: &LatticeArgs) -> Result<Table> {
    let orientation = match args.orientation {
        OrientationArg::Minus => Orientation::Minus,
        OrientationArg::Plus => Orientation::Plus,
    };
    let spec = classify(&parse_conic(&args.conic)?)?
        .with_orientation(orientation)
        .with_scale(args.scale);
    let mut t = Table::new(&["s", "x", "y"]);
    for p in lattice_points(&spec, args.s1, args.count)? {
        t.push(vec![Cell::num(p.s, 17), Cell::num(p.x, 17), Cell::num(p.y, 17)]);
    }
    Ok(t)
}

fn diffop_table(args: &DiffopArgs) -> Result<Table> {
    let op = DifferenceOperator::new(&parse_conic(&args.conic)?)?;
    let f = Polynomial::new(parse_list(&args.poly, "--poly")?);
    let g = match args.op {
        OpArg::Dd => op.divided_difference(&f),
        OpArg::Mean => op.mean(&f),
    };
    let mut t = Table::new(&["k", "coeff"]);
    for (k, c) in g.coeffs().iter().enumerate() {
        t.push(vec![Cell::Int(k as i64), Cell::num(*c, 17)]);
    }
    Ok(t)
}

fn approx_table(args: &ApproxArgs) -> Result<Table> {
    let rho: Rho = args.rho.parse()?;
    let mut t = Table::new(&["j", "kind", "denominator", "eps", "iota"]);
    if args.upto == 0 {
        return Ok(t);
    }
    let mut state = approx_init(rho)?;
    let row = |s: &crate::diophantine::ApproxState, kind: EventKind| {
        let denominator = match kind {
            EventKind::Xi => s.xi,
            EventKind::Eta => s.eta,
        };
        vec![
            Cell::Int(s.j as i64),
            Cell::Text(kind.as_str().into()),
            Cell::Int(denominator as i64),
            Cell::Num(s.eps.format_significant(19)),
            Cell::Num(s.iota.format_significant(19)),
        ]
    };
    t.push(row(&state, EventKind::Xi));
    t.push(row(&state, EventKind::Eta));
    while state.j < args.upto {
        state = state.advance()?;
        if let Some(kind) = state.event() {
            t.push(row(&state, kind));
        }
    }
    Ok(t)
}

fn moments_table(args: &MomentsArgs) -> Result<Table> {
    let rho: Rho = args.rho.parse()?;
    let theta = rho.theta();
    let mut t = Table::new(&["p", "tau_closed", "tau_series", "rel_err"]);
    for p in 0..=args.pmax {
        let closed = tau_closed(rho, p);
        let series = tau_series(theta, p, args.series_terms);
        let rel = if closed == 0.0 {
            Cell::Empty
        } else {
            Cell::num((series - closed) / closed, 17)
        };
        t.push(vec![
            Cell::Int(p as i64),
            Cell::num(closed, 17),
            Cell::num(series, 17),
            rel,
        ]);
    }
    Ok(t)
}

fn recurrence_table(args: &RecurrenceArgs) -> Result<Table> {
    let rho: Rho = args.rho.parse()?;
    let measure = build_measure(rho.theta(), args.k);
    let coeffs = stieltjes_recurrence(&measure, args.n + 1)?;
    let mut t = Table::new(&["n", "a_n", "b_n", "gamma_ratio"]);
    for n in 0..=args.n {
        let a = (n > 0).then(|| coeffs.a_n(n));
        t.push(vec![
            Cell::Int(n as i64),
            Cell::opt(a, |v| format_f64(v, 17)),
            Cell::num(coeffs.b[n], 17),
            Cell::num(coeffs.gamma_ratio[n], 17),
        ]);
    }
    Ok(t)
}

fn verify_table_table(args: &VerifyTableArgs) -> Result<Table> {
    let rho: Rho = args.rho.parse()?;
    let report = verify_table(rho, args.k, args.n)?;
    let full = args.full_precision;
    let render = move |v: f64| {
        if full {
            format_f64(v, 17)
        } else {
            let s = format!("{v:.4}");
            // avoid "-0.0000"
            if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
                s.trim_start_matches('-').to_string()
            } else {
                s
            }
        }
    };
    let mut t = Table::new(&[
        "n",
        "a_n",
        "b_n",
        "eps_2n1",
        "iota_2n1",
        "eps_2n",
        "iota_2n",
        "computed",
        "predicted",
        "rel_err",
    ]);
    for r in &report.rows {
        t.push(vec![
            Cell::Int(r.n as i64),
            Cell::opt(r.a, render),
            Cell::Num(render(r.b)),
            Cell::opt(r.eps_odd, render),
            Cell::opt(r.iota_odd, render),
            Cell::opt(r.eps_even, render),
            Cell::opt(r.iota_even, render),
            Cell::opt(r.computed, render),
            Cell::opt(r.predicted, render),
            Cell::opt(r.rel_err, |v| format_f64(v, if full { 17 } else { 4 })),
        ]);
    }
    Ok(t)
}

fn pn_table(args: &PnArgs) -> Result<Table> {
    let rho: Rho = args.rho.parse()?;
    let p = explicit_pn(rho, args.n)?;
    match &args.eval {
        None => {
            let mut t = Table::new(&["degree", "coeff"]);
            for &(d, c) in &p.terms {
                t.push(vec![Cell::Int(d as i64), Cell::num(c, 17)]);
            }
            Ok(t)
        }
        Some(xs) => {
            let mut t = Table::new(&["x", "value"]);
            for x in parse_list(xs, "--eval")? {
                t.push(vec![Cell::num(x, 17), Cell::num(p.eval(x), 17)]);
            }
            Ok(t)
        }
    }
}

fn pearson_table(args: &PearsonArgs) -> Result<Table> {
    let table = read_ratio_table(&args.ratio_table)?;
    let (k0, k1) = parse_range(&args.range)?;
    if let Some(k) = (k0..k1).find(|k| !table.contains_key(k)) {
        return Err(Error::InvalidInput(format!("ratio table has no entry for k = {k}")));
    }
    let ratio = |k: i64| table.get(&k).copied().unwrap_or(f64::NAN);
    let masses = pearson_masses(ratio, k0, k1, args.seed)?;
    let mut t = Table::new(&["k", "mass"]);
    for (k, m) in masses.indexed() {
        t.push(vec![Cell::Int(k), Cell::num(m, 17)]);
    }
    Ok(t)
}

fn execute(cli: &Cli) -> Result<Table> {
    match &cli.command {
        Command::Lattice(a) => lattice_table(a),
        Command::Diffop(a) => diffop_table(a),
        Command::Approx(a) => approx_table(a),
        Command::Moments(a) => moments_table(a),
        Command::Recurrence(a) => recurrence_table(a),
        Command::VerifyTable(a) => verify_table_table(a),
        Command::Pn(a) => pn_table(a),
        Command::Pearson(a) => pearson_table(a),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let bytes = match execute(&cli).and_then(|t| t.render(cli.format)) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(&bytes).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => 0,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
