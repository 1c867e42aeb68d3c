//! `iskt` — batch surface over the toolkit.
//!
//! Exit codes: 0 when a command completes with a final verdict (every
//! hypothesis verified, nothing truncated), 2 when it completes but the
//! result is conditional or negative, 1 for input and budget errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use iskt_core::grading::parse_grading;
use iskt_core::graph::{gis_ktheory, parse_graph, GisOptions};
use iskt_core::hull::{hull_ktheory, HullOptions};
use iskt_core::ktheory::{assemble, AssembleOptions, KTable, KTheoryReport, Stamp};
use iskt_core::semigroup::{parse_table, validate, InverseSemigroupTable};
use iskt_core::spectrum::{is_regular_basis, Spectrum};
use iskt_core::tiling::{parse_tiling, tiling_ktheory, Tiling1D};
use iskt_core::REPORT_SCHEMA;

#[derive(Parser)]
#[command(name = "iskt", version, about = "inverse-semigroup K-theory toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a semigroup table for inverse-semigroup axiom violations
    Validate(ValidateArgs),
    /// Print characters, the D_e membership matrix, and basis verdicts
    Spectrum(SpectrumArgs),
    /// Verify the hypothesis ledger of a graded semigroup table
    Check(TableArgs),
    /// Assemble the full K-theory report of a graded semigroup table
    Ktheory(TableArgs),
    /// Graph inverse semigroups, truncated at a path-length depth
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Left inverse hulls of submonoids of the integers
    Hull {
        #[command(subcommand)]
        command: HullCommand,
    },
    /// Connected tiling semigroups of one-dimensional tilings
    Tiling {
        #[command(subcommand)]
        command: TilingCommand,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// K-theory of the graph inverse semigroup, from a `graph v1` file
    Ktheory(GraphArgs),
}

#[derive(Subcommand)]
enum HullCommand {
    /// K-theory of the left inverse hull of the submonoid of ℕ the
    /// generators span
    Ktheory(HullArgs),
}

#[derive(Subcommand)]
enum TilingCommand {
    /// K-theory of the connected tiling semigroup, from a `tiling v1` file
    Ktheory(TilingArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// `semigroup-table v1` file
    table: PathBuf,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    /// `semigroup-table v1` file
    table: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    /// `semigroup-table v1` file
    table: PathBuf,
    /// `grading v1` JSON file assigning a group word to each nonzero element
    #[arg(long)]
    grading: PathBuf,
    /// K-value table: JSON list of {descriptor, K0, K1, source}
    #[arg(long)]
    ktable: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GraphArgs {
    /// `graph v1` file
    graph: PathBuf,
    /// Truncate the semigroup at paths of this length
    #[arg(long)]
    depth: usize,
    /// Abort if the truncation window would exceed this many elements
    #[arg(long)]
    max_elements: Option<usize>,
    #[arg(long)]
    ktable: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HullArgs {
    /// Generators of the submonoid, e.g. `--gens 2,3`
    #[arg(long, value_delimiter = ',', required = true)]
    gens: Vec<u64>,
    /// Cap on enumerated hull elements
    #[arg(long)]
    cap: Option<usize>,
    /// Compression offsets scanned in `-range..=range` (gaps always added)
    #[arg(long)]
    range: Option<i64>,
    /// Longest generator word enumerated
    #[arg(long)]
    word_bound: Option<usize>,
    #[arg(long)]
    ktable: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TilingArgs {
    /// `tiling v1` file
    tiling: PathBuf,
    /// Enumerate congruence classes of patches up to this word length
    #[arg(long)]
    maxlen: usize,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    // Bad flags and arguments are input errors (exit 1, message on stderr);
    // --help and --version print on stdout and exit 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("iskt: {:#}", err);
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate(args) => run_validate(args),
        Command::Spectrum(args) => run_spectrum(args),
        Command::Check(args) => run_table(args, true),
        Command::Ktheory(args) => run_table(args, false),
        Command::Graph { command: GraphCommand::Ktheory(args) } => run_graph(args),
        Command::Hull { command: HullCommand::Ktheory(args) } => run_hull(args),
        Command::Tiling { command: TilingCommand::Ktheory(args) } => run_tiling(args),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("{}", path.display()))
}

fn load_table(path: &Path) -> Result<InverseSemigroupTable> {
    parse_table(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_ktable(path: &Option<PathBuf>) -> Result<KTable> {
    match path {
        None => Ok(KTable::empty()),
        Some(p) => KTable::from_json(&read(p)?).with_context(|| format!("{}", p.display())),
    }
}

fn emit_report(report: &KTheoryReport, json: bool) -> u8 {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    report.exit_code() as u8
}

fn run_validate(args: ValidateArgs) -> Result<u8> {
    let table = load_table(&args.table)?;
    let outcome = validate(&table);
    let rendered: Vec<String> = outcome.violations.iter().map(|v| v.render(&table)).collect();
    if args.json {
        let value = serde_json::json!({
            "schema": "iskt-validate/1",
            "input": args.table.display().to_string(),
            "elements": table.n(),
            "valid": outcome.is_valid(),
            "violations": rendered,
            "skipped_checks": outcome.skipped_checks,
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!(
            "table {}: {} elements, zero = {}",
            args.table.display(),
            table.n(),
            table.name(table.zero())
        );
        if outcome.is_valid() {
            println!("inverse-semigroup axioms hold");
        } else {
            println!("violations ({}):", rendered.len());
            for v in &rendered {
                println!("  {}", v);
            }
        }
    }
    Ok(if outcome.is_valid() { 0 } else { 2 })
}

fn run_spectrum(args: SpectrumArgs) -> Result<u8> {
    let table = load_table(&args.table)?;
    let spectrum = Spectrum::new(&table, &[]);
    let idempotents: Vec<_> = spectrum.characters().iter().map(|c| c.generator).collect();
    let mut membership: Vec<Vec<bool>> = Vec::new();
    for &e in &idempotents {
        let d = spectrum
            .d_set(e)
            .with_context(|| format!("{}", args.table.display()))?;
        membership.push((0..spectrum.len()).map(|phi| d.members.contains(phi)).collect());
    }
    let basis = is_regular_basis(&spectrum.d_basis())
        .with_context(|| format!("{}", args.table.display()))?;
    let independent = basis.independence_witness.is_none();
    let closed = basis.intersection_witness.is_none();
    let name = |e| table.name(e).to_string();

    if args.json {
        let value = serde_json::json!({
            "schema": "iskt-spectrum/1",
            "input": args.table.display().to_string(),
            "characters": idempotents.iter().map(|&e| format!("φ_{}", name(e))).collect::<Vec<_>>(),
            "membership": membership.iter().map(|row| {
                row.iter().map(|&b| u8::from(b)).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "independent": independent,
            "generating": basis.generating,
            "intersection_closed": closed,
            "regular_basis": basis.is_regular(),
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!(
            "spectrum of {}: {} characters (principal filters of the nonzero idempotents)",
            args.table.display(),
            spectrum.len()
        );
        println!(
            "characters: {}",
            idempotents.iter().map(|&e| format!("φ_{}", name(e))).collect::<Vec<_>>().join("  ")
        );
        println!("membership matrix (row D_e, column φ_f, 1 = φ_f ∈ D_e):");
        for (&e, row) in idempotents.iter().zip(&membership) {
            let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            println!("  D_{:<8} {}", name(e), cells.join(" "));
        }
        let yesno = |b: bool| if b { "yes" } else { "no" };
        println!("independent: {}", yesno(independent));
        if let Some(w) = &basis.independence_witness {
            println!(
                "  D_{} is the union of {}",
                name(idempotents[w.member]),
                w.cover
                    .iter()
                    .map(|&i| format!("D_{}", name(idempotents[i])))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
        println!("generating: {}", yesno(basis.generating));
        println!("intersection-closed (with ∅): {}", yesno(closed));
        println!("regular basis: {}", yesno(basis.is_regular()));
    }
    Ok(if basis.is_regular() { 0 } else { 2 })
}

fn run_table(args: TableArgs, ledger_only: bool) -> Result<u8> {
    let table = load_table(&args.table)?;
    let grading = parse_grading(&read(&args.grading)?, &table)
        .with_context(|| format!("{}", args.grading.display()))?;
    let mut opts = AssembleOptions::new(args.table.display().to_string());
    opts.ktable = load_ktable(&args.ktable)?;
    let report = assemble(&table, &grading, &opts);
    if !ledger_only {
        return Ok(emit_report(&report, args.json));
    }
    if args.json {
        let value = serde_json::json!({
            "schema": REPORT_SCHEMA,
            "input": report.input,
            "hypotheses": report.hypotheses,
            "flags": report.flags,
            "stamp": report.stamp,
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("hypothesis ledger: {}", report.input);
        for h in &report.hypotheses {
            let tag = match h.verdict {
                iskt_core::ktheory::Verdict::Pass => "pass",
                iskt_core::ktheory::Verdict::Fail => "FAIL",
                iskt_core::ktheory::Verdict::Skipped => "skip",
            };
            println!("  {:4} {}: {}", tag, h.name, h.detail);
        }
        for f in &report.flags {
            println!("flag: {}", f);
        }
        let stamp = match report.stamp {
            Stamp::Final => "final",
            Stamp::Conditional => "conditional",
            Stamp::Failed => "failed",
        };
        println!("stamp: {}", stamp);
    }
    Ok(report.exit_code() as u8)
}

fn run_graph(args: GraphArgs) -> Result<u8> {
    let graph =
        parse_graph(&read(&args.graph)?).with_context(|| format!("{}", args.graph.display()))?;
    let mut opts = GisOptions::new(args.graph.display().to_string(), args.depth);
    if let Some(cap) = args.max_elements {
        opts.max_elements = cap;
    }
    opts.ktable = load_ktable(&args.ktable)?;
    let report = gis_ktheory(&graph, &opts)?;
    Ok(emit_report(&report, args.json))
}

fn run_hull(args: HullArgs) -> Result<u8> {
    let mut opts = HullOptions::default();
    if let Some(cap) = args.cap {
        opts.element_cap = cap;
    }
    if let Some(bound) = args.word_bound {
        opts.word_bound = bound;
    }
    opts.range_bound = args.range;
    opts.ktable = load_ktable(&args.ktable)?;
    let report = hull_ktheory(&args.gens, &opts)?;
    Ok(emit_report(&report, args.json))
}

fn run_tiling(args: TilingArgs) -> Result<u8> {
    let source = parse_tiling(&read(&args.tiling)?)
        .with_context(|| format!("{}", args.tiling.display()))?;
    // products in the evidence scans merge two patches of length ≤ maxlen,
    // so the factor window must certify twice that
    let tiling = Tiling1D::build(source, 2 * args.maxlen)
        .with_context(|| format!("{}", args.tiling.display()))?;
    let report = tiling_ktheory(&tiling, args.maxlen)?;
    Ok(emit_report(&report, args.json))
}
