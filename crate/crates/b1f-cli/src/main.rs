//! Command-line frontend for the `b1f` library.
//!
//! Exit codes: 0 on success, 1 on invalid input or a failed check, 2 on
//! argument errors (from clap). `enumerate` additionally uses 3 when a
//! complete search proves nonexistence and 4 when the search was cut by a
//! node budget or result limit before reaching a verdict.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use b1f::balance::{classify_balance, BalanceReport, BalanceVerdict};
use b1f::cubic::{construct_one_n, construct_two_n};
use b1f::doc::FactorisationDocument;
use b1f::graph::{connection_sets_isomorphic, CirculantGraph, CycleType, OneFactorisation};
use b1f::onethree::construct_13;
use b1f::onetwo::{construct_12_order8, construct_12_rotation};
use b1f::rotation::{construct_general, RotationParams, RotationVariant};
use b1f::search::{
    enumerate_factorisations, existence_table, exists_mb1f, ExistenceOutcome, SearchOptions,
};

const EXIT_NOT_FOUND: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;

/// Environment variable supplying a default node budget for `enumerate`
/// and `table` when `--budget` is not given.
const BUDGET_ENV: &str = "B1F_NODE_BUDGET";

#[derive(Parser)]
#[command(
    name = "b1f",
    version,
    about = "Construct, verify, classify and search balanced 1-factorisations of circulant graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Family {
    /// Circ(2n, {1, n}), even or odd n
    OneN,
    /// Circ(2n, {2, n}), odd n
    TwoN,
    /// 2-balanced factorisations of Circ(2n, {1, 2})
    C12,
    /// m-balanced factorisations of Circ(2n, {1, 3}), m in {2, 3, 6}
    C13,
    /// Rotation family on 3*ell*a vertices, connection set {1, ell} or {1, 2*ell}
    General,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Variant {
    /// Connection set {1, ell}
    Span,
    /// Connection set {1, 2*ell}
    DoubleSpan,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named factorisation and print it as a JSON document
    Construct {
        /// Construction family
        #[arg(long, value_enum)]
        family: Family,
        /// Balance parameter (c13 only)
        #[arg(long)]
        m: Option<usize>,
        /// Half the vertex count (one-n, two-n, c12, c13)
        #[arg(long)]
        n: Option<usize>,
        /// Rotation span (general only, even)
        #[arg(long)]
        ell: Option<usize>,
        /// Number of rotation windows (general only)
        #[arg(long)]
        a: Option<usize>,
        /// Connection-set variant (general only)
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        /// Write the document here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a document is a valid 1-factorisation of its graph
    Verify {
        /// JSON document produced by `construct` or `enumerate --find-m`
        file: PathBuf,
    },
    /// Compute the balance profile of a document
    Classify {
        /// JSON document produced by `construct` or `enumerate --find-m`
        file: PathBuf,
        /// Fail unless the factorisation is exactly m-balanced
        #[arg(long)]
        expect_m: Option<usize>,
        #[arg(
            long,
            help = "Fail unless the distinct pair types are exactly this semicolon-separated list, e.g. \"[12];[8,4]\""
        )]
        expect_types: Option<String>,
    },
    /// Exhaustively search the 1-factorisations of one circulant graph
    Enumerate {
        /// Vertex count (even)
        #[arg(long)]
        order: usize,
        /// Connection set as comma-separated distances, e.g. 1,3
        #[arg(long)]
        set: String,
        /// Stop at the first m-balanced factorisation and print it
        #[arg(long)]
        find_m: Option<usize>,
        /// Keep at most this many factorisations
        #[arg(long)]
        limit: Option<usize>,
        /// Cut the search after roughly this many assignments (default
        /// taken from B1F_NODE_BUDGET if set); small trees may complete
        /// regardless
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads; 1 searches in-thread, 0 lets the pool decide.
        /// Results are identical for every value.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Existence table over all two-distance circulants up to an order
    Table {
        /// Largest order to include
        #[arg(long)]
        max_order: usize,
        /// Approximate node budget per cell (default taken from
        /// B1F_NODE_BUDGET if set)
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads per cell search
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write CSV here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two connection sets give isomorphic circulants
    Iso {
        /// Vertex count (even)
        #[arg(long)]
        order: usize,
        /// First connection set, e.g. 1,2
        #[arg(long)]
        set1: String,
        /// Second connection set, e.g. 2,3
        #[arg(long)]
        set2: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Construct {
            family,
            m,
            n,
            ell,
            a,
            variant,
            output,
        } => construct(family, m, n, ell, a, variant, output.as_deref()),
        Command::Verify { file } => verify(&file),
        Command::Classify {
            file,
            expect_m,
            expect_types,
        } => classify(&file, expect_m, expect_types.as_deref()),
        Command::Enumerate {
            order,
            set,
            find_m,
            limit,
            budget,
            workers,
        } => enumerate(order, &set, find_m, limit, budget, workers),
        Command::Table {
            max_order,
            budget,
            workers,
            output,
        } => table(max_order, budget, workers, output.as_deref()),
        Command::Iso { order, set1, set2 } => iso(order, &set1, &set2),
    }
}

fn require(name: &str, value: Option<usize>, family: Family) -> Result<usize> {
    value.ok_or_else(|| anyhow!("--{name} is required for --family {family:?}"))
}

fn construct(
    family: Family,
    m: Option<usize>,
    n: Option<usize>,
    ell: Option<usize>,
    a: Option<usize>,
    variant: Option<Variant>,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let mut meta: Vec<(String, String)> = Vec::new();
    let (graph, of) = match family {
        Family::OneN => {
            let n = require("n", n, family)?;
            meta.push(("family".into(), "one-n".into()));
            meta.push(("n".into(), n.to_string()));
            construct_one_n(n)?
        }
        Family::TwoN => {
            let n = require("n", n, family)?;
            meta.push(("family".into(), "two-n".into()));
            meta.push(("n".into(), n.to_string()));
            construct_two_n(n)?
        }
        Family::C12 => {
            let n = require("n", n, family)?;
            meta.push(("family".into(), "c12".into()));
            meta.push(("n".into(), n.to_string()));
            if n == 4 {
                construct_12_order8()
            } else {
                construct_12_rotation(n)?
            }
        }
        Family::C13 => {
            let m = require("m", m, family)?;
            let n = require("n", n, family)?;
            meta.push(("family".into(), "c13".into()));
            meta.push(("m".into(), m.to_string()));
            meta.push(("n".into(), n.to_string()));
            construct_13(m, n)?
        }
        Family::General => {
            let ell = require("ell", ell, family)?;
            let a = require("a", a, family)?;
            let variant =
                variant.ok_or_else(|| anyhow!("--variant is required for --family general"))?;
            meta.push(("family".into(), "general".into()));
            meta.push(("ell".into(), ell.to_string()));
            meta.push(("a".into(), a.to_string()));
            meta.push((
                "variant".into(),
                match variant {
                    Variant::Span => "span".into(),
                    Variant::DoubleSpan => "double-span".into(),
                },
            ));
            let params = RotationParams {
                ell,
                a,
                variant: match variant {
                    Variant::Span => RotationVariant::Span,
                    Variant::DoubleSpan => RotationVariant::DoubleSpan,
                },
            };
            construct_general(params)?
        }
    };
    of.validate(&graph).context("construction is invalid")?;
    let mut doc = FactorisationDocument::new(&graph, &of);
    for (k, v) in meta {
        doc = doc.with_meta(&k, &v);
    }
    write_out(output, &doc.emit())?;
    Ok(ExitCode::SUCCESS)
}

fn load(file: &Path) -> Result<(CirculantGraph, OneFactorisation)> {
    let text =
        fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let doc = FactorisationDocument::parse(&text)
        .with_context(|| format!("{} is not a factorisation document", file.display()))?;
    doc.restore()
        .with_context(|| format!("{} does not describe a valid factorisation", file.display()))
}

fn set_line(graph: &CirculantGraph) -> String {
    let parts: Vec<String> = graph.distances().iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn print_report(report: &BalanceReport) {
    for ((i, j), t) in &report.pair_types {
        println!("pair ({i},{j}): {t}");
    }
    let profile: Vec<String> = report
        .profile
        .iter()
        .map(|(t, c)| format!("{t} x{c}"))
        .collect();
    println!("profile: {}", profile.join("; "));
    match report.verdict {
        BalanceVerdict::MBalanced(m) => {
            let mut line = format!("verdict: {m}-balanced");
            if report.is_perfect {
                line.push_str(" (perfect)");
            } else if report.is_uniform {
                line.push_str(" (uniform)");
            }
            println!("{line}");
        }
        BalanceVerdict::Unbalanced => println!("verdict: unbalanced"),
    }
}

fn verify(file: &Path) -> Result<ExitCode> {
    let (graph, of) = load(file)?;
    of.validate(&graph)?;
    println!("order: {}", graph.order());
    println!("connection set: {}", set_line(&graph));
    println!("factors: {}", of.len());
    let report = classify_balance(&of)?;
    print_report(&report);
    println!("valid");
    Ok(ExitCode::SUCCESS)
}

fn classify(file: &Path, expect_m: Option<usize>, expect_types: Option<&str>) -> Result<ExitCode> {
    let (graph, of) = load(file)?;
    of.validate(&graph)?;
    let report = classify_balance(&of)?;
    print_report(&report);
    if let Some(m) = expect_m {
        if report.balance() != Some(m) {
            bail!(
                "expected a {m}-balanced factorisation, got {}",
                match report.balance() {
                    Some(got) => format!("{got}-balanced"),
                    None => "unbalanced".into(),
                }
            );
        }
    }
    if let Some(spec) = expect_types {
        let expected = parse_types(spec)?;
        let got: BTreeSet<CycleType> = report.profile.iter().map(|(t, _)| t.clone()).collect();
        if got != expected {
            let got: Vec<String> = got.iter().map(|t| t.to_string()).collect();
            bail!("expected types {spec}, got {}", got.join(";"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_types(spec: &str) -> Result<BTreeSet<CycleType>> {
    spec.split(';')
        .map(|part| {
            part.trim()
                .parse::<CycleType>()
                .map_err(|e| anyhow!("bad cycle type {part:?}: {e}"))
        })
        .collect()
}

fn parse_set(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("bad distance {part:?} in connection set {spec:?}"))
        })
        .collect()
}

fn search_options(budget: Option<u64>, workers: usize) -> Result<SearchOptions> {
    let node_budget = match budget {
        Some(b) => Some(b),
        None => match std::env::var(BUDGET_ENV) {
            Ok(raw) => Some(
                raw.parse::<u64>()
                    .map_err(|_| anyhow!("{BUDGET_ENV}={raw:?} is not a node count"))?,
            ),
            Err(_) => None,
        },
    };
    Ok(SearchOptions {
        node_budget,
        parallelism: workers,
        ..SearchOptions::default()
    })
}

fn enumerate(
    order: usize,
    set: &str,
    find_m: Option<usize>,
    limit: Option<usize>,
    budget: Option<u64>,
    workers: usize,
) -> Result<ExitCode> {
    let set = parse_set(set)?;
    let graph = CirculantGraph::new(order, &set)?;
    let mut opts = search_options(budget, workers)?;
    opts.limit = limit;
    match find_m {
        Some(m) => {
            let outcome = exists_mb1f(&graph, m, &opts)?;
            match outcome {
                ExistenceOutcome::Found(of) => {
                    let doc =
                        FactorisationDocument::new(&graph, &of).with_meta("balance", m.to_string());
                    print!("{}", doc.emit());
                    Ok(ExitCode::SUCCESS)
                }
                ExistenceOutcome::NotFound { nodes } => {
                    eprintln!(
                        "no {m}-balanced 1-factorisation of Circ({order},{}) exists ({nodes} nodes, search complete)",
                        set_line(&graph)
                    );
                    Ok(ExitCode::from(EXIT_NOT_FOUND))
                }
                ExistenceOutcome::Unknown { nodes } => {
                    eprintln!("search cut after {nodes} nodes with no verdict");
                    Ok(ExitCode::from(EXIT_UNKNOWN))
                }
            }
        }
        None => {
            let result = enumerate_factorisations(&graph, &opts)?;
            println!("factorisations: {}", result.factorisations.len());
            println!("nodes: {}", result.nodes);
            println!("complete: {}", result.complete);
            if result.complete {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_UNKNOWN))
            }
        }
    }
}

fn table(
    max_order: usize,
    budget: Option<u64>,
    workers: usize,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let opts = search_options(budget, workers)?;
    let rows = existence_table(max_order, &opts)?;
    let mut csv = String::from("order,connection_set,m1,m2,m3,m6\n");
    for row in rows {
        let set: Vec<String> = row.connection_set.iter().map(|d| d.to_string()).collect();
        csv.push_str(&row.order.to_string());
        csv.push(',');
        csv.push_str(&set.join(";"));
        for (_, cell) in row.cells {
            csv.push(',');
            csv.push_str(cell.as_str());
        }
        csv.push('\n');
    }
    write_out(output, &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn iso(order: usize, set1: &str, set2: &str) -> Result<ExitCode> {
    let set1 = parse_set(set1)?;
    let set2 = parse_set(set2)?;
    let verdict = connection_sets_isomorphic(order, &set1, &set2)?;
    if verdict {
        println!("isomorphic");
    } else {
        println!("not isomorphic");
    }
    Ok(ExitCode::SUCCESS)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}
