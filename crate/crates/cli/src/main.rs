use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pancyclic::catalog::{self, MultiplicityRange, SearchConfig};
use pancyclic::generate::{enumerate_schemas, excess_range, MAX_EXCESS};
use pancyclic::io::{decode_graph6, encode_graph6, format_edge_list, parse_edge_list, parse_graph};
use pancyclic::reproduce::reproduce;
use pancyclic::schema::{parse_schema_file, serialize_schemas};
use pancyclic::solver::SolveOptions;
use pancyclic::Family;

/// Exhaustive search for graphs with exactly r cycles of every required length.
#[derive(Parser)]
#[command(name = "pancyclic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write every schema of a family with the given edge excess.
    GenSchemas {
        #[arg(long)]
        family: Family,
        /// Edge excess (chords plus hub feet). Defaults to every supported value.
        #[arg(long, short)]
        m: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Solve schemas and write the deduplicated catalog as JSON Lines.
    Search(SearchArgs),
    /// Check one graph (edge list or graph6) against a target.
    Verify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        r: u32,
        /// Input file; `-` or omitted reads stdin.
        input: Option<PathBuf>,
    },
    /// Run all sweeps and compare the counts with the reference table.
    Reproduce {
        #[arg(long, alias = "max-excess", default_value_t = MAX_EXCESS)]
        max_chords: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Convert an edge list to graph6.
    Encode { input: Option<PathBuf> },
    /// Convert graph6 strings (one per line) to edge lists.
    Decode { input: Option<PathBuf> },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    family: Family,
    /// Multiplicity: `N`, `A-B`, `A-` or `all`. Falls back to a schema file's
    /// leading integer, then to `all`.
    #[arg(long)]
    r: Option<MultiplicityRange>,
    /// Largest edge excess (chords plus hub feet) to sweep.
    #[arg(long, alias = "max-excess", default_value_t = MAX_EXCESS)]
    max_chords: usize,
    #[arg(long, alias = "min-excess")]
    min_chords: Option<usize>,
    /// Solve the schemas in this file instead of generating them.
    #[arg(long)]
    schemas: Option<PathBuf>,
    /// Enumerate every arc assignment without the parity split.
    #[arg(long)]
    no_parity_prune: bool,
    /// Check complete assignments only, without partial-assignment bounds.
    #[arg(long)]
    no_incremental_prune: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Also write one graph6 string per catalog entry.
    #[arg(long)]
    graph6: Option<PathBuf>,
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("reading stdin")?;
            Ok(text)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes()).context("writing stdout")?;
            Ok(())
        }
    }
}

fn gen_schemas(family: Family, m: Option<usize>, output: Option<&Path>) -> Result<ExitCode> {
    let excesses: Vec<usize> = match m {
        Some(m) => vec![m],
        None => excess_range(family).collect(),
    };
    let mut schemas = Vec::new();
    for m in excesses {
        schemas.extend(enumerate_schemas(family, m)?);
    }
    let mut text = serialize_schemas(&schemas);
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    write_output(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn search(args: SearchArgs) -> Result<ExitCode> {
    let mut default_r = None;
    let schemas = match &args.schemas {
        Some(path) => {
            let file =
                parse_schema_file(&read_input(Some(path))?).with_context(|| format!("parsing {}", path.display()))?;
            default_r = file.default_r;
            Some(file.schemas)
        }
        None => None,
    };
    let r = match (args.r, default_r) {
        (Some(r), _) => r,
        (None, Some(r)) => MultiplicityRange::Exact(r),
        (None, None) => MultiplicityRange::AtLeast(1),
    };
    if args.max_chords > MAX_EXCESS {
        bail!("--max-chords must be at most {MAX_EXCESS}");
    }
    let mut cfg = SearchConfig::new(args.family, r, args.max_chords);
    if let Some(min) = args.min_chords {
        cfg.min_excess = min;
    }
    cfg.schemas = schemas;
    cfg.options = SolveOptions { parity_prune: !args.no_parity_prune, incremental_prune: !args.no_incremental_prune };
    cfg.jobs = args.jobs;
    let entries = catalog::search(&cfg)?;
    write_output(args.output.as_deref(), &catalog::to_jsonl(&entries))?;
    if let Some(path) = &args.graph6 {
        let list: String = entries.iter().map(|e| format!("{}\n", e.graph6)).collect();
        write_output(Some(path), &list)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(family: Family, r: u32, input: Option<&Path>) -> Result<ExitCode> {
    let graph = parse_graph(&read_input(input)?)?;
    let verdict = catalog::verify(&graph, family, r)?;
    println!("{verdict}");
    Ok(if verdict.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GenSchemas { family, m, output } => gen_schemas(family, m, output.as_deref()),
        Command::Search(args) => search(args),
        Command::Verify { family, r, input } => verify(family, r, input.as_deref()),
        Command::Reproduce { max_chords, jobs } => {
            let report = reproduce(max_chords, jobs)?;
            print!("{report}");
            Ok(if report.all_match() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Encode { input } => {
            let graph = parse_edge_list(&read_input(input.as_deref())?)?;
            println!("{}", encode_graph6(&graph));
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode { input } => {
            let text = read_input(input.as_deref())?;
            let mut out = String::new();
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
                out.push_str(&format_edge_list(&decode_graph6(line)?));
            }
            write_output(None, &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
