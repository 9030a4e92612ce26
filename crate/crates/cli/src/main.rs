use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use ribbon_core::catalog::{build_catalog, CATALOG};
use ribbon_core::enumerate::{
    enumerate_euler_spectrum_with, partial_petrial_polynomial_with, partial_star_polynomial_with,
    restricted_orientable_petrial_polynomial_with, DEFAULT_MAX_BITS,
};
use ribbon_core::recursions::{face_stats_with, min_n_not_even_interpolating_with, tm_bound, FaceStats};
use ribbon_core::reproduce::run_all;
use ribbon_core::verify::{verify_identity, IDENTITIES};
use ribbon_core::{parse_rg, render_rg, EnumOptions, ErrorClass, GenusPolynomial, RibbonGraph, TwualityWord};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;
const EXIT_CAP: u8 = 5;

#[derive(Parser)]
#[command(name = "ribbon", version, about = "Euler-genus polynomials of partial twualities of ribbon graphs")]
struct Cli {
    /// Worker threads for enumeration; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest number of enumerated bits (2^bits subsets).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BITS)]
    max_bits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a polynomial of a graph read from a `.rg` file (`-` for stdin).
    Compute {
        /// star, petrial, petrial-orientable or word:<w> with w in {1, *, x, *x, x*, *x*}.
        #[arg(long)]
        poly: PolyKind,
        file: PathBuf,
    },
    /// Build a catalog graph; without --name, list the keys.
    Catalog {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Write the graph to this file instead of standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check an identity on random graphs and print one record per comparison.
    Verify {
        /// Identity name, or `all`.
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
        /// Print only the summary line per identity.
        #[arg(long)]
        quiet: bool,
    },
    /// Face statistics and the parallel-edge threshold for one edge.
    Bound {
        #[arg(long)]
        file: PathBuf,
        /// Edge index or name.
        #[arg(long)]
        edge: String,
        /// Also search for the smallest failing number of parallel edges up to N.
        #[arg(long)]
        search: Option<usize>,
    },
    /// Run the acceptance suite and print a table.
    Reproduce {
        /// Run every criterion.
        #[arg(long, conflicts_with = "criterion")]
        all: bool,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<usize>,
        /// Print the checks behind each row.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Clone, Debug)]
enum PolyKind {
    Star,
    Petrial,
    PetrialOrientable,
    Word(TwualityWord),
}

impl std::str::FromStr for PolyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "star" => Ok(PolyKind::Star),
            "petrial" => Ok(PolyKind::Petrial),
            "petrial-orientable" => Ok(PolyKind::PetrialOrientable),
            _ => match s.strip_prefix("word:") {
                Some(w) => w.parse().map(PolyKind::Word).map_err(|e| format!("{e}")),
                None => Err(format!(
                    "expected star, petrial, petrial-orientable or word:<w>, got `{s}`"
                )),
            },
        }
    }
}

/// Failure that carries its own exit code.
#[derive(Debug)]
struct Exit(u8);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::error::Error for Exit {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = EnumOptions {
        threads: cli.threads,
        max_bits: cli.max_bits,
    };
    match run(cli.command, &opts) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let Some(Exit(code)) = err.downcast_ref::<Exit>() {
                return ExitCode::from(*code);
            }
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<ribbon_core::Error>().map(|e| e.class()) {
                Some(ErrorClass::Parse) => EXIT_PARSE,
                Some(ErrorClass::Cap) => EXIT_CAP,
                _ => EXIT_PRECONDITION,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command, opts: &EnumOptions) -> anyhow::Result<()> {
    match command {
        Command::Compute { poly, file } => compute(&poly, &file, opts),
        Command::Catalog { name, n, emit } => catalog(name, n, emit),
        Command::Verify {
            identity,
            trials,
            seed,
            max_edges,
            quiet,
        } => verify(&identity, trials, seed, max_edges, quiet),
        Command::Bound { file, edge, search } => bound(&file, &edge, search, opts),
        Command::Reproduce {
            all,
            criterion,
            verbose,
        } => reproduce(all, criterion, verbose, opts),
    }
}

fn read_graph(path: &Path) -> anyhow::Result<RibbonGraph> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_rg(&text).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))
}

fn compute(kind: &PolyKind, file: &Path, opts: &EnumOptions) -> anyhow::Result<()> {
    let g = read_graph(file)?;
    let poly = match kind {
        PolyKind::Star => partial_star_polynomial_with(&g, opts)?,
        PolyKind::Petrial => partial_petrial_polynomial_with(&g, opts)?,
        PolyKind::PetrialOrientable => restricted_orientable_petrial_polynomial_with(&g, opts)?,
        PolyKind::Word(w) => enumerate_euler_spectrum_with(&g, *w, opts)?,
    };
    println!("{poly}");
    print_analysis(&poly);
    Ok(())
}

fn print_analysis(poly: &GenusPolynomial) {
    let support: Vec<String> = poly.support().iter().map(usize::to_string).collect();
    println!("support: {{{}}}", support.join(", "));
    let yes_no = |r: ribbon_core::Result<bool>| match r {
        Ok(true) => "yes",
        Ok(false) => "no",
        Err(_) => "undefined",
    };
    println!("interpolating: {}", yes_no(poly.is_interpolating()));
    println!("even-interpolating: {}", yes_no(poly.is_even_interpolating()));
    let parity = if poly.is_zero() {
        "zero"
    } else if poly.is_even_polynomial() {
        "even"
    } else if poly.is_odd_polynomial() {
        "odd"
    } else {
        "mixed"
    };
    println!("parity: {parity}");
}

fn catalog(name: Option<String>, n: Option<usize>, emit: Option<PathBuf>) -> anyhow::Result<()> {
    let Some(name) = name else {
        for (key, sized, desc) in CATALOG {
            let arg = if *sized { " --n N" } else { "" };
            println!("{key}{arg}\t{desc}");
        }
        return Ok(());
    };
    let g = build_catalog(&name, n)?;
    let text = render_rg(&g);
    match emit {
        Some(path) => {
            std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!(
                "wrote {} (v = {}, e = {}, f = {}, euler genus {})",
                path.display(),
                g.vertex_count(),
                g.edge_count(),
                g.face_count(),
                g.euler_genus()
            );
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn verify(identity: &str, trials: usize, seed: u64, max_edges: usize, quiet: bool) -> anyhow::Result<()> {
    let names: Vec<&str> = if identity == "all" {
        IDENTITIES.iter().map(|(n, _)| *n).collect()
    } else {
        vec![identity]
    };
    let mut hard = 0;
    for name in names {
        let reports = verify_identity(name, trials, seed, max_edges)?;
        let (mut pass, mut flagged, mut failed) = (0, 0, 0);
        for r in &reports {
            if !quiet {
                println!("{}", r.record());
            }
            if r.pass {
                pass += 1;
            } else if r.flagged {
                flagged += 1;
            } else {
                failed += 1;
                eprintln!("hard failure in {name}, trial {}:\n{}", r.trial, r.graph);
            }
        }
        println!("# {name}: {pass} pass, {flagged} flagged, {failed} failed of {}", reports.len());
        hard += failed;
    }
    if hard > 0 {
        bail!(Exit(EXIT_VERIFICATION));
    }
    Ok(())
}

fn print_stats(label: &str, s: &FaceStats) {
    println!(
        "{label}: f0_max = {}, f1_min = {}, eu0_min = {}, eu1_max = {}",
        s.f0_max, s.f1_min, s.eu0_min, s.eu1_max
    );
}

fn bound(file: &Path, edge: &str, search: Option<usize>, opts: &EnumOptions) -> anyhow::Result<()> {
    let g = read_graph(file)?;
    let e = g.resolve_edge(edge)?;
    print_stats("face stats", &face_stats_with(&g, e, opts)?);
    let b = tm_bound(&g, e)?;
    println!("restricted polynomial: {}", b.restricted);
    print_stats("face stats with one parallel edge", &b.stats_plus_one);
    println!("case: {:?}", b.case);
    println!("threshold: {}", b.threshold);
    if let Some(n_max) = search {
        match min_n_not_even_interpolating_with(&g, e, n_max, opts)? {
            Some(n) => println!("smallest n not even-interpolating: {n}"),
            None => println!("smallest n not even-interpolating: none up to {n_max}"),
        }
    }
    Ok(())
}

fn reproduce(all: bool, criterion: Option<usize>, verbose: bool, opts: &EnumOptions) -> anyhow::Result<()> {
    let results = match (all, criterion) {
        (_, Some(id)) => vec![ribbon_core::reproduce::run_criterion(id, opts)],
        (true, None) => run_all(opts),
        (false, None) => bail!("pass --all or --criterion N"),
    };
    println!("{:>3}  {:<6} {:>10}  title", "id", "result", "time");
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!(
            "{:>3}  {:<6} {:>9.2}s  {}",
            r.id,
            status,
            r.elapsed.as_secs_f64(),
            r.title
        );
        if verbose || !r.pass {
            for line in &r.details {
                println!("       {line}");
            }
        }
    }
    let passed = results.iter().filter(|r| r.pass).count();
    println!("{passed} of {} criteria passed", results.len());
    if passed < results.len() {
        bail!(Exit(EXIT_VERIFICATION));
    }
    Ok(())
}
