use std::fmt::Write as _;
use std::io::IsTerminal;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use superalg::algebra::{
    check_bimodule_axioms, check_leibniz_super, format_combination, right_annihilator, BimoduleSpec,
    SuperAlgebra, ViolationReport,
};
use superalg::catalog::{
    assemble, errata, resolve, CatalogEntry, ModuleId, ModuleKind, OddBracketTable, TableReading,
};
use superalg::classify::{
    annihilator_prefilter, classify_with, generate_constraints_with, Classification, GenerateOptions,
};

const MAX_REPORTED: usize = 10;

#[derive(Parser)]
#[command(
    name = "superalg",
    version,
    about = "Leibniz superalgebras with even part sl2"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Build M-family modules from the tables as printed, without repairs.
    #[arg(long, global = true)]
    verbatim_tables: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the multiplication table of a catalog entry or JSON file.
    Table { id: String },
    /// Check the superidentity (algebras) or the bimodule axioms (modules).
    Verify { id: String },
    /// Right annihilator of an algebra, or the odd vectors forced into it for a module.
    Annihilator { id: String },
    /// Solve for every odd·odd bracket compatible with a module.
    Classify(ClassifyArgs),
    /// List the repairs applied to printed module tables.
    Errata {
        /// Restrict to one family, e.g. m3.
        #[arg(long)]
        family: Option<ModuleKind>,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    /// Module id such as n1:1 or m3:6:2.
    #[arg(required_unless_present = "grid", conflicts_with = "grid")]
    id: Option<String>,
    /// Batch over ranges, e.g. n1:2..8 or m3:4..8:2..3.
    #[arg(long)]
    grid: Option<String>,
    /// Treat [x_i,x_j] and [x_j,x_i] as independent unknowns.
    #[arg(long)]
    strict_symmetry: bool,
    /// Skip pre-zeroing brackets of vectors forced into the right annihilator.
    #[arg(long)]
    no_prefilter: bool,
    /// Print the generated constraint system as JSON instead of solving.
    #[arg(long, conflicts_with = "grid")]
    emit_system: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Violation(String),
}

type Outcome = Result<(String, bool), Failure>;

enum Target {
    Algebra(String, SuperAlgebra),
    Module(ModuleId, BimoduleSpec),
}

fn load(id: &str, reading: TableReading) -> Result<Target, Failure> {
    let path = Path::new(id);
    if id.ends_with(".json") || path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {id}: {e}")))?;
        let a = SuperAlgebra::from_json_str(&text).map_err(|e| Failure::Usage(format!("{id}: {e}")))?;
        return Ok(Target::Algebra(id.to_owned(), a));
    }
    match resolve(id, reading) {
        Ok(CatalogEntry::Algebra(a)) => Ok(Target::Algebra(id.to_owned(), a)),
        Ok(CatalogEntry::Module(mid, m)) => Ok(Target::Module(mid, m)),
        Err(e) => Err(Failure::Usage(e.to_string())),
    }
}

fn zero_extension(module: &BimoduleSpec) -> SuperAlgebra {
    let even = module.even();
    assemble(even, module, &OddBracketTable::zero(module.dim(), even.dim()))
        .expect("module over its own even part")
}

struct Style {
    color: bool,
}

impl Style {
    fn detect() -> Style {
        let enabled = std::env::var("SUPERALG_COLOR").map_or(true, |v| v != "0");
        Style {
            color: enabled && std::io::stdout().is_terminal(),
        }
    }

    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_owned()
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run_table(cli: &Cli, id: &str) -> Outcome {
    let algebra = match load(id, reading(cli))? {
        Target::Algebra(_, a) => a,
        Target::Module(_, m) => zero_extension(&m),
    };
    if cli.json {
        return Ok((algebra.to_json_string(), true));
    }
    let mut out = String::new();
    for line in algebra.table_lines() {
        writeln!(out, "{line}").unwrap();
    }
    Ok((out, true))
}

#[derive(Serialize)]
struct VerifyJson {
    id: String,
    checks: &'static str,
    ok: bool,
    violation_count: usize,
    violations: Vec<ViolationJson>,
}

#[derive(Serialize)]
struct ViolationJson {
    identity: String,
    arguments: Vec<String>,
    residual: String,
}

fn run_verify(cli: &Cli, style: &Style, id: &str) -> Outcome {
    let (name, checks, report): (String, &'static str, ViolationReport) = match load(id, reading(cli))? {
        Target::Algebra(name, a) => (name, "superidentity", check_leibniz_super(&a)),
        Target::Module(mid, m) => {
            let report = check_bimodule_axioms(&m).map_err(|e| Failure::Violation(e.to_string()))?;
            (mid.to_string(), "bimodule axioms", report)
        }
    };
    let ok = report.is_empty();
    if cli.json {
        let json = VerifyJson {
            id: name,
            checks,
            ok,
            violation_count: report.len(),
            violations: report
                .violations
                .iter()
                .take(MAX_REPORTED)
                .map(|v| ViolationJson {
                    identity: v.identity.to_owned(),
                    arguments: v.arguments.clone(),
                    residual: format_combination(v.residual.terms(), &v.residual_labels),
                })
                .collect(),
        };
        return Ok((to_json(&json), ok));
    }
    if ok {
        return Ok((format!("{}\n", style.paint("OK", "32")), true));
    }
    let mut out = format!(
        "{}: {} {checks} violations\n",
        style.paint("FAIL", "31"),
        report.len()
    );
    for v in report.violations.iter().take(MAX_REPORTED) {
        writeln!(out, "  {v}").unwrap();
    }
    if report.len() > MAX_REPORTED {
        writeln!(out, "  ... {} more", report.len() - MAX_REPORTED).unwrap();
    }
    Ok((out, false))
}

#[derive(Serialize)]
struct AnnihilatorJson {
    id: String,
    /// `basis` spans R(L) for algebras; for modules it lists odd basis
    /// vectors forced into R(L) by every odd·odd bracket.
    kind: &'static str,
    basis: Vec<String>,
}

fn run_annihilator(cli: &Cli, id: &str) -> Outcome {
    let json = match load(id, reading(cli))? {
        Target::Algebra(name, a) => AnnihilatorJson {
            id: name,
            kind: "right annihilator",
            basis: right_annihilator(&a).iter().map(|z| a.format(z)).collect(),
        },
        Target::Module(mid, m) => {
            let flagged =
                annihilator_prefilter(m.even(), &m).map_err(|e| Failure::Violation(e.to_string()))?;
            AnnihilatorJson {
                id: mid.to_string(),
                kind: "forced into right annihilator",
                basis: flagged.into_iter().map(|i| m.labels()[i].clone()).collect(),
            }
        }
    };
    if cli.json {
        return Ok((to_json(&json), true));
    }
    let body = if json.basis.is_empty() {
        "0".to_owned()
    } else {
        json.basis.join(", ")
    };
    Ok((format!("{} of {}: {body}\n", json.kind, json.id), true))
}

#[derive(Serialize)]
struct ClassifyJson {
    id: String,
    unknowns: usize,
    rows: usize,
    rank: usize,
    prefiltered: Vec<String>,
    dimension: usize,
    representatives: Vec<RepresentativeJson>,
    verdict: String,
    caveat: Option<String>,
}

#[derive(Serialize)]
struct RepresentativeJson {
    name: String,
    odd_brackets: Vec<String>,
}

const SQUARE_CLASS_CAVEAT: &str =
    "representatives are up to rescaling by square roots; over Q the nonzero members fall into one class per square class of the parameter";

fn odd_bracket_lines(a: &SuperAlgebra) -> Vec<String> {
    let odd = a.odd_indices();
    a.table_lines()
        .into_iter()
        .zip(a.nonzero_products())
        .filter(|(_, (i, j, _))| odd.contains(i) && odd.contains(j))
        .map(|(line, _)| line)
        .collect()
}

fn summarize(id: String, c: &Classification) -> ClassifyJson {
    let labels = c.system.labels();
    let odd0 = c.system.even_dim();
    ClassifyJson {
        id,
        unknowns: c.system.unknowns().len(),
        rows: c.system.rows().len(),
        rank: c.system.row_space().rank(),
        prefiltered: c
            .system
            .prefiltered()
            .iter()
            .map(|&i| labels[odd0 + i].clone())
            .collect(),
        dimension: c.dimension(),
        representatives: c
            .representatives
            .iter()
            .enumerate()
            .map(|(pos, r)| RepresentativeJson {
                name: r.display_name(pos),
                odd_brackets: odd_bracket_lines(&r.algebra),
            })
            .collect(),
        verdict: c.verdict(),
        caveat: (c.dimension() > 0).then(|| SQUARE_CLASS_CAVEAT.to_owned()),
    }
}

fn options(args: &ClassifyArgs) -> GenerateOptions {
    GenerateOptions {
        strict_symmetry: args.strict_symmetry,
        prefilter: !args.no_prefilter,
    }
}

fn classify_one(cli: &Cli, args: &ClassifyArgs, mid: ModuleId) -> Result<ClassifyJson, Failure> {
    let module = mid
        .build(reading(cli))
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let c = classify_with(module.even(), &module, options(args))
        .map_err(|e| Failure::Violation(format!("{mid}: {e}")))?;
    Ok(summarize(mid.to_string(), &c))
}

fn render_classification(j: &ClassifyJson) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{}: {} unknowns, {} rows, rank {}",
        j.id, j.unknowns, j.rows, j.rank
    )
    .unwrap();
    if !j.prefiltered.is_empty() {
        writeln!(out, "forced into R(L): {}", j.prefiltered.join(", ")).unwrap();
    }
    if j.dimension == 0 {
        writeln!(out, "dimension 0; [L1,L1]=0").unwrap();
    } else {
        let names: Vec<&str> = j.representatives.iter().map(|r| r.name.as_str()).collect();
        writeln!(
            out,
            "dimension {}; representatives: {}",
            j.dimension,
            names.join(", ")
        )
        .unwrap();
        for r in &j.representatives {
            let body = if r.odd_brackets.is_empty() {
                "[L1,L1]=0".to_owned()
            } else {
                r.odd_brackets.join(", ")
            };
            writeln!(out, "  {}: {body}", r.name).unwrap();
        }
    }
    writeln!(out, "verdict: {}", j.verdict).unwrap();
    if let Some(c) = &j.caveat {
        writeln!(out, "note: {c}").unwrap();
    }
    out
}

fn parse_range(text: &str) -> Option<(usize, usize)> {
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.parse().ok()?, b.trim_start_matches('=').parse().ok()?);
            (a <= b).then_some((a, b))
        }
        None => text.parse().ok().map(|v| (v, v)),
    }
}

fn parse_grid(spec: &str) -> Result<Vec<ModuleId>, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "bad grid {spec:?}; expected e.g. n1:2..8 or m3:4..8:2..3"
        ))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let kind: ModuleKind = parts.first().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let (n_lo, n_hi) = parts.get(1).and_then(|t| parse_range(t)).ok_or_else(bad)?;
    let (k_lo, k_hi) = match (kind.has_summand_count(), parts.len()) {
        (true, 3) => parse_range(parts[2]).ok_or_else(bad)?,
        (false, 2) => (0, 0),
        _ => return Err(bad()),
    };
    let mut ids = Vec::new();
    for n in n_lo..=n_hi {
        for k in k_lo..=k_hi {
            // skip combinations outside the family's parameter range
            if let Ok(mid) = ModuleId::new(kind, n, k) {
                ids.push(mid);
            }
        }
    }
    if ids.is_empty() {
        return Err(Failure::Usage(format!("grid {spec:?} contains no valid module")));
    }
    Ok(ids)
}

fn run_classify(cli: &Cli, args: &ClassifyArgs) -> Outcome {
    if let Some(grid) = &args.grid {
        let results = parse_grid(grid)?
            .into_iter()
            .map(|mid| classify_one(cli, args, mid))
            .collect::<Result<Vec<_>, _>>()?;
        if cli.json {
            return Ok((to_json(&results), true));
        }
        let mut out = format!(
            "{:<10} {:>9} {:>6} {:>4}  verdict\n",
            "module", "unknowns", "rows", "dim"
        );
        for r in &results {
            writeln!(
                out,
                "{:<10} {:>9} {:>6} {:>4}  {}",
                r.id, r.unknowns, r.rows, r.dimension, r.verdict
            )
            .unwrap();
        }
        return Ok((out, true));
    }
    let id = args.id.as_deref().expect("clap requires an id without --grid");
    let mid = match load(id, reading(cli))? {
        Target::Module(mid, _) => mid,
        Target::Algebra(name, _) => {
            return Err(Failure::Usage(format!(
                "{name} is an algebra; classify takes a module id"
            )));
        }
    };
    if args.emit_system {
        let module = mid
            .build(reading(cli))
            .map_err(|e| Failure::Usage(e.to_string()))?;
        let cs = generate_constraints_with(module.even(), &module, options(args))
            .map_err(|e| Failure::Violation(format!("{mid}: {e}")))?;
        return Ok((to_json(&cs.to_json()), true));
    }
    let j = classify_one(cli, args, mid)?;
    if cli.json {
        return Ok((to_json(&j), true));
    }
    Ok((render_classification(&j), true))
}

#[derive(Serialize)]
struct ErratumJson {
    family: String,
    entry: &'static str,
    printed: &'static str,
    repaired: &'static str,
    justification: &'static str,
}

fn run_errata(cli: &Cli, family: Option<ModuleKind>) -> Outcome {
    let list: Vec<ErratumJson> = errata()
        .iter()
        .filter(|e| family.is_none_or(|f| f == e.family))
        .map(|e| ErratumJson {
            family: e.family.to_string(),
            entry: e.entry,
            printed: e.printed,
            repaired: e.repaired,
            justification: e.justification,
        })
        .collect();
    if cli.json {
        return Ok((to_json(&list), true));
    }
    let mut out = String::new();
    for e in &list {
        writeln!(
            out,
            "{}  {}: {} → {}  ({})",
            e.family, e.entry, e.printed, e.repaired, e.justification
        )
        .unwrap();
    }
    Ok((out, true))
}

fn reading(cli: &Cli) -> TableReading {
    if cli.verbatim_tables {
        TableReading::Verbatim
    } else {
        TableReading::Repaired
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style::detect();
    let outcome = match &cli.command {
        Command::Table { id } => run_table(&cli, id),
        Command::Verify { id } => run_verify(&cli, &style, id),
        Command::Annihilator { id } => run_annihilator(&cli, id),
        Command::Classify(args) => run_classify(&cli, args),
        Command::Errata { family } => run_errata(&cli, *family),
    };
    match outcome {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("superalg: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("superalg: {msg}");
            ExitCode::from(2)
        }
    }
}
