use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coxquot::nsub::RelSet;
use coxquot::permgrp::element_order;
use coxquot::unitary::{
    check_relators, complete_diagram, matrix_group_order, projective_group_order, Assignment, AssignmentData,
    Convention, Image, Variant,
};
use coxquot::{catalog, enumerate, evaluate, CosetTable, Limits, PermGroup, Presentation, Strategy};
use coxquot_cli::{run, run_all, Options, Report, ScenarioError};

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 4;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "coxquot", version, about = "Coset enumeration and verification scenarios for Coxeter group quotients")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate cosets of a subgroup and dump the coset table.
    Enumerate {
        /// Presentation file (`generators:`, `relator:` lines).
        #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
        presentation: Option<PathBuf>,
        /// Named catalog entry instead of a file.
        #[arg(long)]
        catalog: Option<String>,
        /// Comma-separated subgroup generators; empty for the trivial subgroup.
        #[arg(long, default_value = "")]
        subgroup: String,
        #[arg(long, default_value_t = Limits::default().max_cosets)]
        max_cosets: usize,
        #[arg(long, default_value = "hlt")]
        strategy: Strategy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order of the permutation group a coset table defines.
    Order {
        #[arg(long)]
        table: PathBuf,
    },
    /// Order and centrality of a word in the permutation image of a coset table.
    CheckWord {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// The GF(4) transvection model.
    U6(U6Args),
    /// Checks on the table-defined 2-group.
    Nsub {
        #[command(subcommand)]
        cmd: NsubCmd,
    },
    /// Run a named scenario, or `all`.
    Verify {
        scenario: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Run independent scenarios concurrently.
        #[arg(long)]
        parallel: bool,
        /// Override every scenario's coset limit.
        #[arg(long)]
        max_cosets: Option<usize>,
        #[arg(long, default_value = "hlt")]
        strategy: Strategy,
        /// Include wall-clock per step.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct U6Args {
    /// Print the generator matrices and the image of every relator.
    #[arg(long)]
    check_assignment: bool,
    /// Search for isotropic vectors whose transvection joins NODE alone.
    #[arg(long, value_name = "NODE")]
    complete_diagram: Option<String>,
    /// Order of the generated group on vectors and on projective points.
    #[arg(long)]
    order: bool,
}

#[derive(Subcommand)]
enum NsubCmd {
    Verify {
        #[arg(long, default_value = "rel3")]
        variant: RelSet,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

enum Failure {
    Checks,
    Resource(String),
    Error(String),
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Error(e.to_string())
        }
    }
}

fn err(e: impl std::fmt::Display) -> Failure {
    Failure::Error(e.to_string())
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| err(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(p: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| err(format!("{}: {e}", p.display())))
}

fn load_table(p: &PathBuf) -> Result<(CosetTable, PermGroup), Failure> {
    let t = CosetTable::from_text(&read(p)?).map_err(err)?;
    let g = PermGroup::new(t.index(), t.perm_images()).map_err(err)?;
    Ok((t, g))
}

fn verify(
    scenario: &str,
    out: Option<&PathBuf>,
    parallel: bool,
    opts: &Options,
    timings: bool,
) -> Result<(), Failure> {
    let results = if scenario == "all" { run_all(opts, parallel) } else { vec![(scenario.to_string(), run(scenario, opts))] };
    let mut text = String::new();
    let mut summary = vec![];
    let mut failed = false;
    let mut resource = None;
    let mut error = None;
    for (name, r) in results {
        match r {
            Ok(rep) => {
                failed |= !rep.passed();
                summary.push(rep.summary());
                text.push_str(&rep.to_text(timings));
            }
            Err(e) => {
                summary.push(format!("{name} ERROR ({e})"));
                text.push_str(&format!("scenario: {name}\nerror: {e}\n"));
                if e.is_resource() {
                    resource.get_or_insert(e.to_string());
                } else {
                    error.get_or_insert(e.to_string());
                }
            }
        }
        text.push('\n');
    }
    emit(&text, out)?;
    if out.is_some() || summary.len() > 1 {
        for s in &summary {
            eprintln!("{s}");
        }
    }
    match (error, resource, failed) {
        (Some(m), _, _) => Err(Failure::Error(m)),
        (None, Some(m), _) => Err(Failure::Resource(m)),
        (None, None, true) => Err(Failure::Checks),
        (None, None, false) => Ok(()),
    }
}

fn finish(r: &Report, out: Option<&PathBuf>) -> Result<(), Failure> {
    emit(&r.to_text(false), out)?;
    if out.is_some() {
        eprintln!("{}", r.summary());
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn u6(args: U6Args) -> Result<(), Failure> {
    let data = AssignmentData::load().map_err(err)?;
    let space = data.space(Convention::default()).map_err(err)?;
    let entry = catalog("K").map_err(err)?;
    let a = Assignment::standard(&space, &data, entry.alphabet(), Variant::Corrected).map_err(err)?;
    if args.check_assignment {
        for (n, m) in a.names.iter().zip(&a.matrices) {
            println!("{n}:\n{}", m.to_text());
        }
        let p = &entry.presentation;
        let bad = check_relators(p, &a.matrices);
        for (i, img) in &bad {
            let what = match img {
                Image::Identity => "I".to_string(),
                Image::Scalar(s) => format!("{} I", s.symbol()),
                Image::Other => "not scalar".to_string(),
            };
            println!("relator {} -> {what}", p.alphabet.format(&p.relators[*i]));
        }
        println!("{} of {} relators map to the identity", p.relators.len() - bad.len(), p.relators.len());
        return if bad.is_empty() { Ok(()) } else { Err(Failure::Checks) };
    }
    if let Some(node) = args.complete_diagram {
        let idx = entry.alphabet().position(&node).ok_or_else(|| err(format!("unknown node `{node}`")))?;
        let constraints: Vec<(usize, u32)> =
            (0..a.matrices.len()).map(|i| (i, if i == idx { 3 } else { 2 })).collect();
        let found = complete_diagram(&space, &a.matrices, &constraints);
        for v in &found {
            let c: Vec<String> = v.coords().iter().map(|x| x.symbol().to_string()).collect();
            println!("{}", c.join(","));
        }
        println!("{} projective classes", found.len());
        return Ok(());
    }
    println!("order on 4095 vectors: {}", matrix_group_order(&a.matrices));
    println!("order on 1365 points: {}", projective_group_order(&a.matrices));
    Ok(())
}

fn main_inner(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Enumerate { presentation, catalog: name, subgroup, max_cosets, strategy, out } => {
            let p = match (presentation, name) {
                (Some(f), _) => Presentation::from_text(&read(&f)?).map_err(err)?,
                (None, Some(n)) => catalog(&n).map_err(err)?.presentation,
                (None, None) => unreachable!("clap requires one"),
            };
            let sub = p
                .parse_words(&subgroup.split(',').map(str::trim).filter(|s| !s.is_empty()).collect::<Vec<_>>())
                .map_err(err)?;
            let limits = Limits { strategy, ..Limits::with_max(max_cosets) };
            let t = enumerate(&p, &sub, &limits).map_err(|e| match e {
                coxquot::tc::TcError::LimitExceeded { .. } => Failure::Resource(e.to_string()),
                e => err(e),
            })?;
            eprintln!("index {}", t.index());
            match out {
                Some(f) => emit(&t.to_text(), Some(&f)),
                None => {
                    println!("{}", t.index());
                    Ok(())
                }
            }
        }
        Cmd::Order { table } => {
            let (_, g) = load_table(&table)?;
            println!("{}", g.order());
            Ok(())
        }
        Cmd::CheckWord { table, word } => {
            let (t, g) = load_table(&table)?;
            let w = t.alphabet().parse(&word).map_err(err)?;
            let p = evaluate(&w, g.generators()).map_err(err)?;
            println!("order: {}", element_order(&p));
            println!("central: {}", g.is_central(&p));
            Ok(())
        }
        Cmd::U6(args) => u6(args),
        Cmd::Nsub { cmd: NsubCmd::Verify { variant, report } } => {
            let r = run(&format!("nsub-verify-{}", variant.name()), &Options::default())?;
            finish(&r, report.as_ref())
        }
        Cmd::Verify { scenario, report, parallel, max_cosets, strategy, timings } => {
            let opts = Options { max_cosets, strategy, ..Options::default() };
            verify(&scenario, report.as_ref(), parallel, &opts, timings)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_RESOURCE)
        }
        Err(Failure::Error(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
