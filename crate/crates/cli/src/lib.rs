//! Command-line front end: class tables, graph export, verification suites
//! and corpus scans. Commands write to caller-supplied streams so they can be
//! driven in-process by tests.

pub mod scan;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use cdgraph::permgroup::is_prime;
use cdgraph::structure::DEFAULT_BUDGET;
use cdgraph::verifier::{run_suite, GroupContext};
use cdgraph::{
    build, builtin_corpus, conjugacy_classes, parse_spec, CheckId, GroupSpec, Mode, PrimeSet,
    Status, Verdict,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

/// Exit status when every verdict is clean.
pub const EXIT_CLEAN: i32 = 0;
/// Exit status when some verdict fails.
pub const EXIT_FAILS: i32 = 1;
/// Exit status for usage, parse, build and I/O errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cdgraph",
    version,
    about = "Common-divisor graphs on conjugacy classes of finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print order, centre order and the class table.
    Group(GroupArgs),
    /// Build the ordinary or p-regular class graph and export it.
    Graph(GraphArgs),
    /// Run verification checks and print verdicts as JSON.
    Verify(VerifyArgs),
    /// Scan a corpus into one JSONL record per (group, prime).
    Scan(scan::ScanArgs),
}

#[derive(Args, Debug)]
pub struct SpecArg {
    /// Builtin corpus name, path to a spec file, or an inline JSON spec.
    pub spec: String,
    /// Name used in reports. Defaults to the corpus name, the file stem or the spec kind.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[command(flatten)]
    pub spec: SpecArg,
    /// Print a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[command(flatten)]
    pub spec: SpecArg,
    /// Restrict to p-regular classes.
    #[arg(
        long,
        conflicts_with = "ordinary",
        required_unless_present = "ordinary"
    )]
    pub prime: Option<u64>,
    /// Use all classes.
    #[arg(long)]
    pub ordinary: bool,
    /// Write Graphviz output here.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Write the JSON graph here.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub spec: SpecArg,
    /// Prime to check; repeatable.
    #[arg(long, conflicts_with = "all_primes")]
    pub prime: Vec<u64>,
    /// Check every prime dividing the order (the default).
    #[arg(long)]
    pub all_primes: bool,
    /// Comma-separated checks: all, theorems, or ids such as thmA,cor-diam,CONJ-C.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Node budget for Hall subgroup searches.
    #[arg(long, env = "CDGRAPH_BUDGET")]
    pub budget: Option<u64>,
    /// Replace the stored size of one class before checking (CLASS:SIZE).
    #[arg(long, hide = true, value_parser = parse_injection)]
    pub inject_class_size: Option<(usize, u64)>,
}

fn parse_injection(s: &str) -> Result<(usize, u64), String> {
    let (c, n) = s.split_once(':').ok_or("expected CLASS:SIZE")?;
    Ok((
        c.parse().map_err(|e| format!("class index: {e}"))?,
        n.parse().map_err(|e| format!("size: {e}"))?,
    ))
}

/// Runs one parsed command line and returns its exit status.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Group(a) => cmd_group(&a, out),
        Command::Graph(a) => cmd_graph(&a, out),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Scan(a) => scan::cmd_scan(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => EXIT_CLEAN,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

/// Resolves a spec argument to a report name and a validated spec.
pub fn resolve_spec(arg: &SpecArg) -> Result<(String, GroupSpec)> {
    let (name, spec) =
        if let Some(entry) = builtin_corpus().into_iter().find(|(n, _)| *n == arg.spec) {
            entry
        } else if arg.spec.trim_start().starts_with('{') {
            let spec = parse_spec(&arg.spec)?;
            (spec.kind().to_string(), spec)
        } else {
            let path = Path::new(&arg.spec);
            let text = fs::read_to_string(path).with_context(|| {
                format!(
                    "{:?} is not a corpus name and cannot be read as a file",
                    arg.spec
                )
            })?;
            let spec = parse_spec(&text).with_context(|| format!("in {}", path.display()))?;
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
            (stem.unwrap_or_else(|| spec.kind().to_string()), spec)
        };
    Ok((arg.name.clone().unwrap_or(name), spec))
}

fn context(arg: &SpecArg) -> Result<(GroupSpec, GroupContext)> {
    let (name, spec) = resolve_spec(arg)?;
    let group = build(&spec)?;
    Ok((spec, GroupContext::new(&name, group)))
}

#[derive(Serialize)]
pub struct ClassRow {
    pub index: usize,
    pub size: u64,
    pub element_order: u64,
    pub primes: PrimeSet,
    pub rep: String,
}

#[derive(Serialize)]
pub struct GroupReport {
    pub name: String,
    pub spec: GroupSpec,
    pub order: u64,
    pub center_order: u64,
    pub classes: Vec<ClassRow>,
}

pub fn group_report(arg: &SpecArg) -> Result<GroupReport> {
    let (spec, ctx) = context(arg)?;
    let t = ctx.table();
    let classes = t
        .classes()
        .iter()
        .enumerate()
        .map(|(index, c)| ClassRow {
            index,
            size: c.size,
            element_order: c.element_order,
            primes: c.primes.clone(),
            rep: c.rep.to_string(),
        })
        .collect();
    Ok(GroupReport {
        name: ctx.name.clone(),
        spec,
        order: ctx.group().order(),
        center_order: t.classes().iter().filter(|c| c.is_central()).count() as u64,
        classes,
    })
}

fn cmd_group(a: &GroupArgs, out: &mut dyn Write) -> Result<i32> {
    let r = group_report(&a.spec)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
        return Ok(EXIT_CLEAN);
    }
    writeln!(out, "group {}", r.name)?;
    writeln!(out, "order {}", r.order)?;
    writeln!(out, "center order {}", r.center_order)?;
    writeln!(out, "{} classes", r.classes.len())?;
    writeln!(
        out,
        "{:>5} {:>8} {:>6}  {:<12} rep",
        "class", "size", "order", "primes"
    )?;
    for c in &r.classes {
        writeln!(
            out,
            "{:>5} {:>8} {:>6}  {:<12} {}",
            c.index,
            c.size,
            c.element_order,
            c.primes.to_string(),
            c.rep
        )?;
    }
    Ok(EXIT_CLEAN)
}

fn cmd_graph(a: &GraphArgs, out: &mut dyn Write) -> Result<i32> {
    let mode = match a.prime {
        Some(p) if !is_prime(p) => bail!("--prime {p} is not a prime"),
        Some(p) => Mode::PRegular(p),
        None => Mode::Ordinary,
    };
    let (_, ctx) = context(&a.spec)?;
    let g = ctx.graph(mode);
    writeln!(
        out,
        "group {} order {} graph {}",
        ctx.name,
        ctx.group().order(),
        mode
    )?;
    for (i, v) in g.vertices.iter().enumerate() {
        writeln!(
            out,
            "  v{i} class={} size={} primes={} rep={}",
            v.class, v.size, v.primes, v.rep
        )?;
    }
    for (i, c) in g.components.iter().enumerate() {
        writeln!(out, "  component {i}: {} vertices", c.len())?;
    }
    writeln!(
        out,
        "{} vertices, {} edges, {} components, diameter {}",
        g.len(),
        g.edges.len(),
        g.components.len(),
        g.diameter()
    )?;
    if let Some(path) = &a.dot {
        fs::write(path, g.to_dot(&ctx.name))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &a.json {
        let text = serde_json::to_string_pretty(&g.to_json())?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(EXIT_CLEAN)
}

/// Expands a `--suite` list.
pub fn parse_suite(list: &str) -> Result<Vec<CheckId>> {
    let mut checks = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let add: Vec<CheckId> = match token.to_ascii_lowercase().as_str() {
            "all" => CheckId::THEOREMS
                .into_iter()
                .chain([CheckId::Wielandt, CheckId::ConjC])
                .collect(),
            "theorems" => CheckId::THEOREMS.to_vec(),
            _ => vec![token.parse::<CheckId>().map_err(|e| anyhow!(e))?],
        };
        for id in add {
            if !checks.contains(&id) {
                checks.push(id);
            }
        }
    }
    if checks.is_empty() {
        bail!("empty --suite");
    }
    Ok(checks)
}

/// Verdicts of a `verify` run, theorem checks first.
pub fn verify(a: &VerifyArgs) -> Result<Vec<Verdict>> {
    let checks = parse_suite(&a.suite)?;
    if let Some(p) = a.prime.iter().find(|&&p| !is_prime(p)) {
        bail!("--prime {p} is not a prime");
    }
    let (name, spec) = resolve_spec(&a.spec)?;
    let group = build(&spec)?;
    let mut table = conjugacy_classes(group);
    if let Some((class, size)) = a.inject_class_size {
        if class >= table.len() {
            bail!("class {class} out of range ({} classes)", table.len());
        }
        table = table.with_overridden_size(class, size);
    }
    let ctx =
        GroupContext::from_table(&name, table).with_budget(a.budget.unwrap_or(DEFAULT_BUDGET));
    let report = run_suite(&ctx, &a.prime, &checks);
    Ok(report
        .theorems
        .into_iter()
        .chain(report.conjecture)
        .collect())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let verdicts = verify(a)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&verdicts)?)?;
    let count = |f: &dyn Fn(&Verdict) -> bool| verdicts.iter().filter(|v| f(v)).count();
    let fails = count(&|v| v.is_failure());
    let inconclusive = count(&|v| v.conclusion == Status::Inconclusive);
    writeln!(
        err,
        "{} verdicts: {} holds, {} fails, {} inconclusive, {} not applicable",
        verdicts.len(),
        count(&|v| v.conclusion == Status::Holds),
        fails,
        inconclusive,
        count(&|v| v.conclusion == Status::NotApplicable),
    )?;
    Ok(if fails > 0 { EXIT_FAILS } else { EXIT_CLEAN })
}
