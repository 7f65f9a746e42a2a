use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use knotbeck::alexander::{alexander_polynomial, burau, extended_module, knot_determinant};
use knotbeck::beck::{check_module, constant_module, derivation_spectrum, derivations, QuandleModule};
use knotbeck::diagram::{braid_closure, parse_pd, BraidWord, Catalog, Diagram, DiagramError};
use knotbeck::quandle::{check_axioms, colorings, from_spec, FiniteQuandle};

#[derive(Parser)]
#[command(name = "knotbeck", version, about = "Alexander modules, quandle colorings and Beck-module derivations of knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation matrix, Alexander polynomial and extended-module invariants.
    Alexander(KnotInput),
    /// Colorings of a diagram by a finite quandle.
    Color {
        #[command(flatten)]
        knot: KnotInput,
        /// `dihedral:n`, `alexander:n:t`, `trivial:n` or a JSON table file.
        #[arg(long)]
        quandle: String,
    },
    /// Derivation groups of a diagram with coefficients in a Beck module.
    Derive {
        #[command(flatten)]
        knot: KnotInput,
        #[arg(long)]
        quandle: String,
        /// `constant:n:t`, `trivial:n` or a JSON module file.
        #[arg(long)]
        module: String,
        /// Only report the sorted list of groups.
        #[arg(long)]
        spectrum: bool,
    },
    /// Reduced Burau matrix of a braid word.
    Burau {
        #[arg(long)]
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// Check the axioms of a quandle table or a Beck module.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[arg(long)]
        file: PathBuf,
    },
    /// Built-in knot table.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct KnotInput {
    /// PD code such as `X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]`.
    #[arg(long)]
    pd: Option<String>,
    /// Braid word such as `s1 s2^-1 s1 s2^-1`.
    #[arg(long)]
    braid: Option<String>,
    /// Catalog entry name.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Quandle,
    Module,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

/// Exit 2: the input could not be read. Exit 1: the computation failed or a
/// check found a violation.
enum Failure {
    Usage(String),
    Compute(String),
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Failure::Usage(e.to_string())
    }

    fn compute(e: impl ToString) -> Self {
        Failure::Compute(e.to_string())
    }
}

struct Output {
    json: Value,
    summary: String,
    ok: bool,
}

impl Output {
    fn ok(json: Value, summary: String) -> Self {
        Output { json, summary, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON output"));
            eprintln!("{}", out.summary);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Alexander(input) => alexander(&input),
        Command::Color { knot, quandle } => color(&knot, &quandle),
        Command::Derive {
            knot,
            quandle,
            module,
            spectrum,
        } => derive(&knot, &quandle, &module, spectrum),
        Command::Burau { braid, strands } => burau_cmd(&braid, strands),
        Command::Check { kind, file } => check(kind, &file),
        Command::Catalog { action: CatalogAction::List } => catalog_list(),
    }
}

/// A well-formed link diagram is valid input that the knot pipeline cannot
/// handle.
fn resolve_failure(e: DiagramError) -> Failure {
    match e {
        DiagramError::MultiComponent { .. } => Failure::compute(e),
        _ => Failure::usage(e),
    }
}

fn diagram(input: &KnotInput) -> Result<(Diagram, String), Failure> {
    if let Some(pd) = &input.pd {
        let code = parse_pd(pd).map_err(Failure::usage)?;
        let d = code.resolve().map_err(resolve_failure)?;
        return Ok((d, format!("PD {code}")));
    }
    if let Some(b) = &input.braid {
        let w = BraidWord::parse(b, None).map_err(Failure::usage)?;
        let d = braid_closure(&w).map_err(resolve_failure)?;
        return Ok((d, format!("closure of {w}")));
    }
    let name = input.catalog.as_deref().expect("clap enforces one input");
    let catalog = Catalog::load().map_err(Failure::usage)?;
    let d = catalog.get(name).map_err(Failure::usage)?;
    Ok((d, name.to_string()))
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn quandle(spec: &str) -> Result<FiniteQuandle, Failure> {
    let path = PathBuf::from(spec);
    if path.is_file() {
        let q: FiniteQuandle = serde_json::from_str(&read_file(&path)?).map_err(Failure::usage)?;
        if !q.is_quandle() {
            return Err(Failure::Usage(format!("{spec} is a rack but not a quandle")));
        }
        return Ok(q);
    }
    from_spec(spec).map_err(Failure::usage)
}

fn module(spec: &str, q: &FiniteQuandle) -> Result<QuandleModule, Failure> {
    let path = PathBuf::from(spec);
    if path.is_file() {
        let m: QuandleModule = serde_json::from_str(&read_file(&path)?).map_err(Failure::usage)?;
        if m.base() != q {
            return Err(Failure::Usage(format!("module in {spec} is not over the given quandle")));
        }
        return Ok(m);
    }
    let bad = || Failure::Usage(format!("bad module spec {spec:?}: expected constant:n:t, trivial:n or a file"));
    let parts: Vec<&str> = spec.split(':').collect();
    let (n, t) = match parts.as_slice() {
        ["constant", n, t] => (n.parse::<u64>().map_err(|_| bad())?, t.parse::<i64>().map_err(|_| bad())?),
        ["trivial", n] => (n.parse::<u64>().map_err(|_| bad())?, 1),
        _ => return Err(bad()),
    };
    constant_module(q, n, t).map_err(Failure::usage)
}

fn alexander(input: &KnotInput) -> Result<Output, Failure> {
    let (d, label) = diagram(input)?;
    let delta = alexander_polynomial(&d).map_err(Failure::compute)?;
    let det = knot_determinant(&d).map_err(Failure::compute)?;
    let e = extended_module(&d);
    let json = json!({
        "input": label,
        "arcs": d.num_arcs(),
        "crossings": d.crossings().len(),
        "matrix": e.matrix,
        "alexander_polynomial": delta,
        "invariant_factors": e.invariant_factors,
        "torsion": e.torsion(),
        "free_rank": e.free_rank,
        "determinant": det,
        "e1": e.e1,
        "e2": e.e2,
    });
    let summary = format!(
        "{label}: {} arcs, {} crossings, Δ = {delta}, determinant {det}, free rank {}",
        d.num_arcs(),
        d.crossings().len(),
        e.free_rank
    );
    Ok(Output::ok(json, summary))
}

fn color(input: &KnotInput, qspec: &str) -> Result<Output, Failure> {
    let (d, label) = diagram(input)?;
    let q = quandle(qspec)?;
    let cs = colorings(&d, &q).map_err(Failure::compute)?;
    let summary = format!("{label}: {} colorings by {qspec} (order {})", cs.len(), q.order());
    let json = json!({
        "input": label,
        "quandle": qspec,
        "count": cs.len(),
        "colorings": cs,
    });
    Ok(Output::ok(json, summary))
}

fn derive(input: &KnotInput, qspec: &str, mspec: &str, spectrum: bool) -> Result<Output, Failure> {
    let (d, label) = diagram(input)?;
    let q = quandle(qspec)?;
    let m = module(mspec, &q)?;
    let report = check_module(&m);
    if !report.passes {
        return Err(Failure::Compute(format!(
            "module violates the axioms: {}",
            serde_json::to_string(&report.violations).expect("JSON")
        )));
    }
    if spectrum {
        let groups = derivation_spectrum(&d, &q, &m).map_err(Failure::compute)?;
        let shown: Vec<String> = groups.iter().map(|g| g.to_string()).collect();
        let summary = format!("{label}: derivation spectrum over {} colorings: {}", groups.len(), shown.join(", "));
        let json = json!({ "input": label, "quandle": qspec, "module": mspec, "spectrum": groups });
        return Ok(Output::ok(json, summary));
    }
    let mut entries = Vec::new();
    for c in colorings(&d, &q).map_err(Failure::compute)? {
        let g = derivations(&d, &c, &m).map_err(Failure::compute)?;
        entries.push(json!({ "coloring": c, "group": g.group, "generators": g.generators }));
    }
    let summary = format!("{label}: derivation groups for {} colorings", entries.len());
    let json = json!({ "input": label, "quandle": qspec, "module": mspec, "derivations": entries });
    Ok(Output::ok(json, summary))
}

fn burau_cmd(braid: &str, strands: Option<usize>) -> Result<Output, Failure> {
    let w = BraidWord::parse(braid, strands).map_err(Failure::usage)?;
    let m = burau(&w);
    let det = m.determinant().map_err(Failure::compute)?;
    let summary = format!("{w} on {} strands: {}x{} Burau matrix, determinant {det}", w.strands(), m.rows(), m.cols());
    let json = json!({ "braid": w.to_string(), "strands": w.strands(), "matrix": m, "determinant": det });
    Ok(Output::ok(json, summary))
}

#[derive(Deserialize)]
struct TableFile {
    n: usize,
    table: Vec<Vec<usize>>,
}

fn check(kind: CheckKind, path: &PathBuf) -> Result<Output, Failure> {
    let text = read_file(path)?;
    match kind {
        CheckKind::Quandle => {
            let f: TableFile = serde_json::from_str(&text).map_err(Failure::usage)?;
            if f.table.len() != f.n {
                return Err(Failure::Usage(format!("n = {} but the table has {} rows", f.n, f.table.len())));
            }
            let r = check_axioms(&f.table).map_err(Failure::usage)?;
            let summary = format!(
                "rack: {}, quandle: {}, kei: {}, {} violations shown",
                r.is_rack,
                r.is_quandle,
                r.is_kei,
                r.violations.len()
            );
            Ok(Output {
                ok: r.is_quandle,
                json: to_value(&r),
                summary,
            })
        }
        CheckKind::Module => {
            let m: QuandleModule = serde_json::from_str(&text).map_err(Failure::usage)?;
            let r = check_module(&m);
            let summary = if r.passes {
                "module satisfies all axioms".to_string()
            } else {
                format!("module fails: {} violations shown", r.violations.len())
            };
            Ok(Output {
                ok: r.passes,
                json: to_value(&r),
                summary,
            })
        }
    }
}

#[derive(Serialize)]
struct CatalogRow<'a> {
    name: &'a str,
    determinant: u64,
    pd: String,
}

fn catalog_list() -> Result<Output, Failure> {
    let catalog = Catalog::load().map_err(Failure::usage)?;
    let rows: Vec<CatalogRow> = catalog
        .entries()
        .iter()
        .map(|(name, e)| CatalogRow {
            name,
            determinant: e.determinant,
            pd: e.pd.to_string(),
        })
        .collect();
    let summary = format!("{} catalog entries", rows.len());
    Ok(Output::ok(to_value(&rows), summary))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}
