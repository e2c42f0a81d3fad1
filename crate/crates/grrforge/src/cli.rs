//! `grrforge` command line.
//!
//! Exit codes: 0 on success, 1 on a domain or usage error, 2 when a budget
//! ran out or the group exceeds the enumeration cap.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use grrforge_core::bounds::{evaluate, master_terms, min_q_positive, terms_match};
use grrforge_core::census::{i2_gl_exact, involution_classes, ledger, ledger_rows, BoundLedgerEntry};
use grrforge_core::graph::build_cayley;
use grrforge_core::grr::Shape;
use grrforge_core::matrix::{format_literal, parse_literal};
use grrforge_core::ppd::{find_ppd_element, ppd_set, PpdSearch};
use grrforge_core::table::{ElementTable, DEFAULT_CAP};
use grrforge_core::{Error, Family, Field, GroupElement, GroupSpec};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::acceptance;
use crate::budget::Limits;
use crate::cache::{cache_dir, load_or_build, CacheStatus};
use crate::error::{CliError, CliResult};
use crate::report::*;
use crate::search::{certify_timed, estimate, mixed_with_x, search_sets, search_shape};
use crate::stats::{wilson, Z_95};

#[derive(Debug, Parser)]
#[command(
    name = "grrforge",
    version,
    about = "Cubic GRRs of finite classical groups in characteristic 2"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Table cache directory; overrides GRRFORGE_CACHE.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Refuse groups with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Search-node limit per certification.
    #[arg(long, global = true)]
    pub aut_nodes: Option<u64>,
    /// Wall-clock limit per certification, in milliseconds.
    #[arg(long, global = true)]
    pub timeout_ms: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Omit timing fields so repeated runs give identical output.
    #[arg(long, global = true)]
    pub canonical: bool,
}

impl GlobalArgs {
    fn limits(&self) -> Limits {
        Limits {
            nodes: self.aut_nodes,
            wall: self.timeout_ms.map(Duration::from_millis),
        }
    }

    fn elapsed(&self, start: Instant) -> Option<u64> {
        (!self.canonical).then(|| start.elapsed().as_millis() as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Mixed,
    Three,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dimacs,
    Json,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Field GF(2^f).
    #[arg(long, conflicts_with = "p", required_unless_present = "p")]
    pub f: Option<u32>,
    /// Prime field GF(p).
    #[arg(long)]
    pub p: Option<u32>,
}

impl SpecArgs {
    pub fn build(&self) -> CliResult<GroupSpec> {
        if !self.family.is_matrix() {
            return Err(CliError::Usage(
                "permutation groups are not available from the command line".into(),
            ));
        }
        let field = match (self.f, self.p) {
            (Some(f), None) => Field::binary(f)?,
            (None, Some(p)) => Field::prime(p)?,
            _ => return Err(CliError::Usage("give exactly one of --f and --p".into())),
        };
        Ok(GroupSpec::matrix(self.family, self.n, field)?)
    }
}

#[derive(Debug, Args)]
pub struct XArgs {
    /// x as a matrix literal, rows joined by ';'.
    #[arg(long, conflicts_with = "x_order")]
    pub x: Option<String>,
    /// Use the first enumerated element of this order as x.
    #[arg(long)]
    pub x_order: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primitive prime divisors of a^m - 1.
    Ppd {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        m: u64,
    },
    /// Involution classes of GL_n(2^f).
    Census {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        f: u32,
    },
    /// Rows of the bound ledger.
    Ledger {
        #[arg(long, value_parser = parse_family, requires = "n")]
        family: Option<Family>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Exact master and displayed bounds for one row.
    Bounds {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: u32,
        /// A single q = 2^f; default f = 1..=10.
        #[arg(long)]
        f: Option<u32>,
    },
    /// Published against computed thresholds for every row.
    Thresholds,
    /// Enumerate a group and report its order and involution count.
    Enumerate(SpecArgs),
    /// Find an element whose order is a primitive prime divisor.
    FindX {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Certify one connection set.
    GrrCheck {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        x: XArgs,
        /// The involution y of S = {x, x^-1, y}.
        #[arg(long, requires = "x")]
        y: Option<String>,
        /// An arbitrary connection set, one literal per flag.
        #[arg(long = "s", conflicts_with_all = ["x", "x_order", "y"])]
        s: Vec<String>,
        /// Write the Cayley graph here.
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dimacs)]
        graph_format: GraphFormat,
    },
    /// Exhaustive search for cubic GRRs.
    GrrSearch {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = ShapeArg::Both)]
        shape: ShapeArg,
        /// Fix x and search over y (mixed shape only).
        #[command(flatten)]
        x: XArgs,
        /// Stop at the first witness.
        #[arg(long)]
        first: bool,
    },
    /// Empirical P(x): exhaustive, or sampled with a Wilson interval.
    Estimate {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        x: XArgs,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        slow: bool,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parse argv, run, write the report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let mut warnings = Vec::new();
    let outcome = match cli.global.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut warnings)),
            Err(e) => Err(CliError::Usage(format!("cannot start {t} threads: {e}"))),
        },
        None => execute(&cli, &mut warnings),
    };
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    match outcome {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> CliResult<String> {
    match format {
        Format::Json => Ok(json(value)),
        Format::Text => Ok(text()),
        Format::Csv => Err(CliError::Usage(
            "csv output is available for thresholds and bounds only".into(),
        )),
    }
}

fn element_literal(spec: &GroupSpec, g: &GroupElement) -> String {
    format_literal(spec.degree(), g.as_slice())
}

fn parse_element(spec: &GroupSpec, lit: &str) -> CliResult<GroupElement> {
    let field = spec.field().expect("command line groups are matrix groups");
    let (n, data) = parse_literal(field, lit)?;
    if n != spec.degree() {
        return Err(Error::Parse(format!("{n}x{n} matrix given for {}", spec.describe())).into());
    }
    let g = spec.canonicalize(GroupElement::from_vec(data));
    if !spec.in_group(&g)? {
        return Err(CliError::Usage(format!(
            "{lit} is not an element of {}",
            spec.describe()
        )));
    }
    Ok(g)
}

fn index_in(table: &ElementTable, g: &GroupElement) -> u32 {
    table.index_of(g).expect("members of the group are in its table")
}

fn pick_x(table: &ElementTable, x: &XArgs) -> CliResult<Option<u32>> {
    match (&x.x, x.x_order) {
        (Some(lit), _) => Ok(Some(index_in(table, &parse_element(table.spec(), lit)?))),
        (None, Some(k)) => (1..table.len() as u32)
            .find(|&i| table.order_of(i) == k)
            .map(Some)
            .ok_or_else(|| CliError::Usage(format!("{} has no element of order {k}", table.spec().describe()))),
        (None, None) => Ok(None),
    }
}

fn require_x(table: &ElementTable, x: &XArgs) -> CliResult<u32> {
    pick_x(table, x)?.ok_or_else(|| CliError::Usage("give --x or --x-order".into()))
}

fn load(cli: &Cli, spec: &GroupSpec, warnings: &mut Vec<String>) -> CliResult<(ElementTable, CacheStatus)> {
    let dir = cache_dir(cli.global.cache_dir.as_deref());
    let (table, status) = load_or_build(spec, cli.global.cap, dir.as_deref())?;
    if let CacheStatus::Rebuilt(why) = &status {
        warnings.push(format!("rejected cached table ({why}); rebuilt"));
    }
    Ok((table, status))
}

fn pow2(f: u32) -> BigUint {
    BigUint::one() << f as usize
}

fn ledger_row(row: &BoundLedgerEntry) -> LedgerRow {
    let strs = |v: &[grrforge_core::expr::Expr]| v.iter().map(|e| e.to_string()).collect();
    LedgerRow {
        name: row.name(),
        family: row.family.name().into(),
        n: row.n,
        e: row.e,
        condition: row.condition.describe(),
        normalizer: row.normalizer.to_string(),
        i_g: row.i_g.to_string(),
        u_g: row.u_g.to_string(),
        u_coarse: row.u_coarse.as_ref().map(|e| e.to_string()),
        u_table: row.u_table.to_string(),
        a: row.a.to_string(),
        b: row.b.to_string(),
        displayed: strs(&row.displayed),
        displayed_split: row.displayed_split.as_deref().map(strs),
        published_min_q: pow2(row.published_min_f).to_string(),
    }
}

fn shape_name(shape: Shape) -> &'static str {
    match shape {
        Shape::Mixed => "mixed",
        Shape::ThreeInvolutions => "three-involutions",
    }
}

fn execute(cli: &Cli, err: &mut Vec<String>) -> CliResult<(String, i32)> {
    let g = &cli.global;
    let format = g.format.unwrap_or(match cli.command {
        Command::Thresholds => Format::Csv,
        _ => Format::Json,
    });
    let start = Instant::now();
    let text = match &cli.command {
        Command::Ppd { a, m } => {
            let r = ppd_set(*a, *m)?;
            let rep = PpdReport {
                schema: SCHEMA,
                a: r.a,
                m: r.m,
                primes: r.primes.iter().map(|p| p.to_string()).collect(),
                orders: r.orders.clone(),
                exceptional: r.exceptional,
            };
            render(format, &rep, || format!("ppd({a}, {m}) = {:?}\n", rep.primes))?
        }
        Command::Census { family, n, f } => {
            if !matches!(family, Family::GL | Family::SL | Family::PSL) {
                return Err(Error::Unsupported(format!("census covers gl, sl and psl, not {family}")).into());
            }
            let q = pow2(*f);
            let classes = involution_classes(*n, &q)?;
            let rep = CensusReport {
                schema: SCHEMA,
                family: family.name().into(),
                n: *n,
                q: q.to_string(),
                classes: classes
                    .iter()
                    .map(|c| ClassRow {
                        l: c.l,
                        centralizer_order: c.centralizer_order.to_string(),
                        class_size: c.class_size.to_string(),
                    })
                    .collect(),
                total: i2_gl_exact(*n, &q)?.to_string(),
            };
            render(format, &rep, || format!("i2 = {}\n", rep.total))?
        }
        Command::Ledger { family, n } => {
            let rows = match (family, n) {
                (Some(fam), Some(n)) => vec![ledger(*fam, *n)?],
                (None, None) => ledger_rows(),
                _ => return Err(CliError::Usage("give both --family and --n, or neither".into())),
            };
            let rep = LedgerReport {
                schema: SCHEMA,
                rows: rows.iter().map(ledger_row).collect(),
            };
            render(format, &rep, || {
                rep.rows
                    .iter()
                    .map(|r| format!("{}: 1 - {}\n", r.name, r.displayed.join(" - ")))
                    .collect()
            })?
        }
        Command::Bounds { family, n, f } => {
            let row = ledger(*family, *n)?;
            let fs: Vec<u32> = match f {
                Some(f) => vec![*f],
                None => (1..=10).collect(),
            };
            let values = fs
                .iter()
                .map(|&f| {
                    let b = evaluate(*family, *n, f)?;
                    let (t1, t2) = master_terms(&row, f);
                    Ok(BoundValue {
                        f,
                        q: pow2(f).to_string(),
                        master: b.master.to_string(),
                        master_terms: [t1.to_string(), t2.to_string()],
                        displayed: b.displayed.to_string(),
                        positive: b.positive,
                        terms_match: terms_match(&row, f),
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let rep = BoundsReport {
                schema: SCHEMA,
                row: row.name(),
                values,
            };
            match format {
                Format::Csv => {
                    let mut s = String::from("row,f,q,master,displayed,positive,terms_match\n");
                    for v in &rep.values {
                        s.push_str(&format!(
                            "{},{},{},{},{},{},{}\n",
                            rep.row, v.f, v.q, v.master, v.displayed, v.positive, v.terms_match
                        ));
                    }
                    s
                }
                _ => render(format, &rep, || {
                    rep.values
                        .iter()
                        .map(|v| format!("{} q={}: displayed {} master {}\n", rep.row, v.q, v.displayed, v.master))
                        .collect()
                })?,
            }
        }
        Command::Thresholds => {
            if format != Format::Csv {
                return Err(CliError::Usage("thresholds is emitted as csv".into()));
            }
            let mut s = String::from("family,n,paper_minQ,computed_minQ,match\n");
            let mut all = true;
            for row in ledger_rows() {
                let t = min_q_positive(row.family, row.n)?;
                let ok = t.min_f == row.published_min_f && t.monotone;
                all &= ok;
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.family.name(),
                    row.n,
                    pow2(row.published_min_f),
                    pow2(t.min_f),
                    ok
                ));
            }
            return Ok((s, if all { 0 } else { 1 }));
        }
        Command::Enumerate(spec) => {
            let spec = spec.build()?;
            let (table, status) = load(cli, &spec, err)?;
            let rep = EnumerateReport {
                schema: SCHEMA,
                spec: spec.describe(),
                order: table.len().to_string(),
                involutions: table.involutions().len() as u64,
                generators: spec.generators().iter().map(|x| element_literal(&spec, x)).collect(),
                cache: status.label(),
                cache_note: match &status {
                    CacheStatus::Rebuilt(why) => Some(why.clone()),
                    _ => None,
                },
                elapsed_ms: g.elapsed(start),
            };
            render(format, &rep, || {
                format!("{}: order {}, {} involutions\n", rep.spec, rep.order, rep.involutions)
            })?
        }
        Command::FindX { spec, samples } => {
            let spec = spec.build()?;
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let rep = match find_ppd_element(&spec, *samples, &mut rng)? {
                PpdSearch::Found {
                    element,
                    order,
                    ef,
                    samples,
                } => FindXReport {
                    schema: SCHEMA,
                    spec: spec.describe(),
                    ef,
                    found: true,
                    order: Some(order.to_string()),
                    element: Some(element_literal(&spec, &element)),
                    samples: Some(samples),
                    seed: g.seed,
                },
                PpdSearch::Absent { ef } => FindXReport {
                    schema: SCHEMA,
                    spec: spec.describe(),
                    ef,
                    found: false,
                    order: None,
                    element: None,
                    samples: None,
                    seed: g.seed,
                },
            };
            render(format, &rep, || match &rep.element {
                Some(e) => format!(
                    "x of order {} in {}: {e}\n",
                    rep.order.as_deref().unwrap_or("?"),
                    rep.spec
                ),
                None => format!("ppd(2, {}) is empty; no such x in {}\n", rep.ef, rep.spec),
            })?
        }
        Command::GrrCheck {
            spec,
            x,
            y,
            s,
            export,
            graph_format,
        } => {
            let spec = spec.build()?;
            let (table, _) = load(cli, &spec, err)?;
            let (set, xs, ys) = if s.is_empty() {
                let xi = require_x(&table, x)?;
                let y_lit = y.as_deref().ok_or_else(|| CliError::Usage("give --y".into()))?;
                let yi = index_in(&table, &parse_element(&spec, y_lit)?);
                if table.order_of(yi) != 2 {
                    return Err(Error::InvalidConnectionSet("y is not an involution".into()).into());
                }
                let inv = table.inv(xi);
                if inv == xi {
                    return Err(Error::InvalidConnectionSet("x must have order greater than 2".into()).into());
                }
                let lit = |i| element_literal(&spec, &table.element(i));
                (vec![xi, inv, yi], Some(lit(xi)), Some(lit(yi)))
            } else {
                let set = s
                    .iter()
                    .map(|l| Ok(index_in(&table, &parse_element(&spec, l)?)))
                    .collect::<CliResult<Vec<u32>>>()?;
                (set, None, None)
            };
            if let Some(path) = export {
                let cay = build_cayley(&table, &set)?;
                let body = match graph_format {
                    GraphFormat::Dimacs => cay.graph.to_dimacs(),
                    GraphFormat::Json => json(&GraphJson {
                        schema: SCHEMA,
                        vertices: cay.graph.vertex_count(),
                        edges: cay.graph.edge_count(),
                        adjacency: (0..cay.graph.vertex_count() as u32)
                            .map(|v| cay.graph.neighbors(v).to_vec())
                            .collect(),
                    }),
                };
                fs::write(path, body)?;
            }
            let t = certify_timed(&table, &set, g.limits())?;
            let v = &t.verdict;
            let rep = VerdictReport {
                schema: SCHEMA,
                spec: spec.describe(),
                x: xs,
                y: ys,
                connection: v
                    .connection
                    .iter()
                    .map(|&i| element_literal(&spec, &table.element(i)))
                    .collect(),
                generates: v.generates,
                aut_order: v.aut_order.as_ref().map(|o| o.to_string()),
                is_grr: v.is_grr,
                nodes: v.nodes,
                elapsed_ms: (!g.canonical).then(|| t.elapsed.as_millis() as u64),
                budget_exceeded: v.budget_exceeded,
            };
            let code = if v.budget_exceeded { 2 } else { 0 };
            let text = render(format, &rep, || {
                let verdict = if rep.budget_exceeded {
                    "unknown (budget exceeded)".to_string()
                } else if !rep.generates {
                    "not a GRR: S does not generate".to_string()
                } else if rep.is_grr {
                    "GRR".to_string()
                } else {
                    format!("not a GRR: |Aut| = {}", rep.aut_order.as_deref().unwrap_or("?"))
                };
                format!("{}: {verdict}\n", rep.spec)
            })?;
            return Ok((text, code));
        }
        Command::GrrSearch { spec, shape, x, first } => {
            let spec = spec.build()?;
            let (table, _) = load(cli, &spec, err)?;
            let fixed = pick_x(&table, x)?;
            let lit = |i: u32| element_literal(&spec, &table.element(i));
            let mut reports = Vec::new();
            match fixed {
                Some(xi) => {
                    if *shape == ShapeArg::Three {
                        return Err(CliError::Usage("--x applies to the mixed shape".into()));
                    }
                    let sets = mixed_with_x(&table, xi)?;
                    reports.push(search_sets(&table, Shape::Mixed, &sets, *first, g.limits())?);
                }
                None => {
                    let shapes: &[Shape] = match shape {
                        ShapeArg::Mixed => &[Shape::Mixed],
                        ShapeArg::Three => &[Shape::ThreeInvolutions],
                        ShapeArg::Both => &[Shape::Mixed, Shape::ThreeInvolutions],
                    };
                    for &sh in shapes {
                        reports.push(search_shape(&table, sh, *first, g.limits())?);
                    }
                }
            }
            let found = reports.iter().any(|r| !r.witnesses.is_empty());
            let complete = reports.iter().all(|r| r.complete);
            let summary = match (found, complete) {
                (true, _) => "GRR found".to_string(),
                (false, true) => "no GRR found; search complete".to_string(),
                (false, false) => "no GRR found; search incomplete (budget exceeded)".to_string(),
            };
            let rep = SearchOutput {
                schema: SCHEMA,
                spec: spec.describe(),
                x: fixed.map(lit),
                shapes: reports
                    .iter()
                    .map(|r| ShapeReport {
                        shape: shape_name(r.shape),
                        candidates: r.candidates,
                        examined: r.examined,
                        generating: r.generating,
                        unknown: r.unknown,
                        complete: r.complete,
                        witnesses: r
                            .witnesses
                            .iter()
                            .map(|w| w.iter().map(|&i| lit(i)).collect())
                            .collect(),
                    })
                    .collect(),
                summary,
                elapsed_ms: g.elapsed(start),
            };
            let code = if !found && !complete { 2 } else { 0 };
            let text = render(format, &rep, || {
                let mut s = format!("{}\n", rep.summary);
                for r in &rep.shapes {
                    s.push_str(&format!(
                        "{}: {} candidates, {} examined, {} generating, {} witnesses\n",
                        r.shape,
                        r.candidates,
                        r.examined,
                        r.generating,
                        r.witnesses.len()
                    ));
                    for w in &r.witnesses {
                        s.push_str(&format!("  S = {{{}}}\n", w.join(" | ")));
                    }
                }
                s
            })?;
            return Ok((text, code));
        }
        Command::Estimate { spec, x, samples } => {
            let spec = spec.build()?;
            let (table, _) = load(cli, &spec, err)?;
            let xi = require_x(&table, x)?;
            let run = estimate(&table, xi, *samples, g.seed, g.limits())?;
            let fraction = if run.trials == 0 {
                BigRational::from_integer(0.into())
            } else {
                BigRational::new(run.successes.into(), run.trials.into())
            };
            let rep = EstimateReport {
                schema: SCHEMA,
                spec: spec.describe(),
                x: element_literal(&spec, &table.element(xi)),
                x_order: table.order_of(xi),
                mode: if run.exhaustive { "exhaustive" } else { "sample" },
                successes: run.successes,
                trials: run.trials,
                involutions: run.involutions,
                fraction: fraction.to_string(),
                wilson95: (!run.exhaustive)
                    .then(|| wilson(run.successes, run.trials, Z_95).map(|(lo, hi)| [lo, hi]))
                    .flatten(),
                seed: g.seed,
                elapsed_ms: g.elapsed(start),
            };
            render(format, &rep, || {
                format!(
                    "P(x) {} = {} ({} of {})\n",
                    rep.mode, rep.fraction, rep.successes, rep.trials
                )
            })?
        }
        Command::Selftest { slow } => {
            let results = acceptance::run_all(*slow);
            let mut s = String::new();
            for r in &results {
                s.push_str(&r.line());
                s.push('\n');
            }
            let ok = results.iter().all(|r| r.passed);
            return Ok((s, if ok { 0 } else { 1 }));
        }
    };
    Ok((text, 0))
}
