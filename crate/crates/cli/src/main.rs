//! Batch front-end: construct, verify, scan, cross-check. JSON is the
//! canonical output format; identical invocations produce byte-identical
//! documents. Exit codes: 0 success, 2 parameter validation, 3 budget
//! exceeded, 4 internal invariant violation.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qgraph_core::constructions::{
    complete_qgraph, desarguesian_spread, empty_qgraph, field_reduce_qgraph, hexagon_qgraph,
    spread_complement_qgraph, spread_interior_qgraph, spread_partition_qgraph,
    symplectic_polar_qgraph,
};
use qgraph_core::field::{ExtensionEmbedding, Field};
use qgraph_core::qgraph::QGraph;
use qgraph_core::report::{
    classical_export, crosscheck_table, scan_table, to_pretty_json, verify_table,
    CrosscheckDocument, QGraphDocument, ScanDocument, VerifyDocument,
};
use qgraph_core::scan::{classification_crosscheck, default_catalog, g2_subgroup, single_orbit_scan};
use qgraph_core::semilinear::{
    gamma_l1_subgroup, reduced_gamma_l, sl_generators, sp_generators, GroupSpec,
    SymplecticStructure,
};
use qgraph_core::{Budget, Error};

#[derive(Parser)]
#[command(
    name = "qgraph",
    version,
    about = "q-analogues of graphs over finite fields: construct the classical families, verify their symmetry by orbit computation, and scan group orbits for candidate edge sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a q-graph family and export it
    Construct(ConstructArgs),
    /// Check regularity and the four transitivity predicates under a group
    Verify(VerifyArgs),
    /// Decompose all 2-subspaces into group orbits and classify each one
    Scan(ScanArgs),
    /// Run the classification cross-check over the shipped group catalog
    Crosscheck(CrosscheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Graph6,
    Edgelist,
}

#[derive(Args)]
struct ConstructArgs {
    /// Family: empty | complete | polar | hexagon | spread-partition |
    /// spread-interior | spread-complement | reduced-polar
    name: String,
    /// Field order (a prime power)
    #[arg(long)]
    q: Option<u64>,
    /// Ambient dimension
    #[arg(long)]
    n: Option<usize>,
    /// Spread element dimension
    #[arg(long)]
    t: Option<usize>,
    /// Extension degree: hexagon lives over GF(2^b); reduced-polar reduces
    /// from K = GF(q^b)
    #[arg(long)]
    b: Option<u32>,
    /// K-dimension of the graph being reduced (reduced-polar)
    #[arg(long)]
    a: Option<usize>,
    #[arg(long, visible_alias = "export", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Lift the default enumeration and orbit budgets
    #[arg(long)]
    heavy: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Construction name, as for `construct`
    #[arg(long)]
    construction: String,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    a: Option<usize>,
    /// Group: sp | sl | gammal1 | reduced-gammal | g2
    #[arg(long)]
    group: String,
    /// Foulser parameters for gammal1 (defaults give the full group)
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[arg(long, default_value_t = 0)]
    e: u64,
    #[arg(long, default_value_t = 1)]
    s: u64,
    /// Dimension over K for reduced-gammal
    #[arg(long)]
    ga: Option<usize>,
    /// Extension degree for reduced-gammal
    #[arg(long)]
    gb: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    heavy: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// Group: sp | sl | gammal1 | reduced-gammal | g2
    #[arg(long)]
    group: String,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[arg(long, default_value_t = 0)]
    e: u64,
    #[arg(long, default_value_t = 1)]
    s: u64,
    #[arg(long)]
    ga: Option<usize>,
    #[arg(long)]
    gb: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    heavy: bool,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    heavy: bool,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. }
        | Error::OrbitBudgetExceeded { .. }
        | Error::GroupCapExceeded { .. } => 3,
        Error::InvariantViolation(_) => 4,
        _ => 2,
    }
}

fn budget(heavy: bool) -> Budget {
    if heavy {
        Budget::heavy()
    } else {
        Budget::default()
    }
}

fn parse_prime_power(q: u64) -> Result<Field, Error> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "field order must be at least 2, got {q}"
        )));
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q; // q itself is prime
    }
    let mut t = 0u32;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        t += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidParameter(format!(
            "{q} is not a prime power"
        )));
    }
    Field::new(p as u32, t)
}

fn format_name(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Table => "table",
        Format::Graph6 => "graph6",
        Format::Edgelist => "edgelist",
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct BuiltGraph {
    graph: QGraph,
    config: String,
}

fn build_graph(
    name: &str,
    q: Option<u64>,
    n: Option<usize>,
    t: Option<usize>,
    b: Option<u32>,
    a: Option<usize>,
    budget: &Budget,
) -> Result<BuiltGraph, Error> {
    let need_q = || {
        q.ok_or_else(|| Error::InvalidParameter("--q is required for this construction".into()))
    };
    let need_n = || {
        n.ok_or_else(|| Error::InvalidParameter("--n is required for this construction".into()))
    };
    let need_t = || {
        t.ok_or_else(|| Error::InvalidParameter("--t is required for this construction".into()))
    };
    match name {
        "empty" => {
            let field = parse_prime_power(need_q()?)?;
            let n = need_n()?;
            Ok(BuiltGraph {
                graph: empty_qgraph(&field, n),
                config: format!("construct empty --q {} --n {n}", field.order()),
            })
        }
        "complete" => {
            let field = parse_prime_power(need_q()?)?;
            let n = need_n()?;
            Ok(BuiltGraph {
                graph: complete_qgraph(&field, n, budget)?,
                config: format!("construct complete --q {} --n {n}", field.order()),
            })
        }
        "polar" => {
            let field = parse_prime_power(need_q()?)?;
            let n = need_n()?;
            let j = SymplecticStructure::standard(&field, n)?;
            Ok(BuiltGraph {
                graph: symplectic_polar_qgraph(&field, &j, budget)?,
                config: format!("construct polar --q {} --n {n}", field.order()),
            })
        }
        "hexagon" => {
            let b = b.ok_or_else(|| {
                Error::InvalidParameter("--b is required for the hexagon".into())
            })?;
            let field = Field::new(2, b)?;
            Ok(BuiltGraph {
                graph: hexagon_qgraph(&field, budget)?,
                config: format!("construct hexagon --b {b}"),
            })
        }
        "spread-partition" => {
            let field = parse_prime_power(need_q()?)?;
            let n = need_n()?;
            let spread = desarguesian_spread(&field, n, 2, budget)?;
            Ok(BuiltGraph {
                graph: spread_partition_qgraph(&spread)?,
                config: format!("construct spread-partition --q {} --n {n}", field.order()),
            })
        }
        "spread-interior" => {
            let field = parse_prime_power(need_q()?)?;
            let (n, t) = (need_n()?, need_t()?);
            let spread = desarguesian_spread(&field, n, t, budget)?;
            Ok(BuiltGraph {
                graph: spread_interior_qgraph(&spread)?,
                config: format!(
                    "construct spread-interior --q {} --n {n} --t {t}",
                    field.order()
                ),
            })
        }
        "spread-complement" => {
            let field = parse_prime_power(need_q()?)?;
            let (n, t) = (need_n()?, need_t()?);
            let spread = desarguesian_spread(&field, n, t, budget)?;
            Ok(BuiltGraph {
                graph: spread_complement_qgraph(&spread, budget)?,
                config: format!(
                    "construct spread-complement --q {} --n {n} --t {t}",
                    field.order()
                ),
            })
        }
        "reduced-polar" => {
            let field = parse_prime_power(need_q()?)?;
            let a = a.ok_or_else(|| {
                Error::InvalidParameter("--a (K-dimension) is required for reduced-polar".into())
            })?;
            let b = b.ok_or_else(|| {
                Error::InvalidParameter("--b (extension degree) is required for reduced-polar".into())
            })?;
            let emb = ExtensionEmbedding::new(&field, b)?;
            let j = SymplecticStructure::standard(emb.ext(), a)?;
            let polar = symplectic_polar_qgraph(emb.ext(), &j, budget)?;
            Ok(BuiltGraph {
                graph: field_reduce_qgraph(&polar, &emb)?,
                config: format!(
                    "construct reduced-polar --q {} --a {a} --b {b}",
                    field.order()
                ),
            })
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown construction '{other}'"
        ))),
    }
}

struct BuiltGroup {
    group: GroupSpec,
    config: String,
}

#[allow(clippy::too_many_arguments)]
fn build_group(
    name: &str,
    field: &Field,
    n: usize,
    d: u64,
    e: u64,
    s: u64,
    ga: Option<usize>,
    gb: Option<u32>,
    budget: &Budget,
) -> Result<BuiltGroup, Error> {
    match name {
        "sp" => {
            let j = SymplecticStructure::standard(field, n)?;
            let group = sp_generators(field, n, &j)?;
            Ok(BuiltGroup {
                config: "--group sp".to_string(),
                group,
            })
        }
        "sl" => Ok(BuiltGroup {
            group: sl_generators(field, n)?,
            config: "--group sl".into(),
        }),
        "gammal1" => {
            let emb = ExtensionEmbedding::new(field, n as u32)?;
            let group = gamma_l1_subgroup(&emb, d, e, s)?;
            Ok(BuiltGroup {
                group,
                config: format!("--group gammal1 --d {d} --e {e} --s {s}"),
            })
        }
        "reduced-gammal" => {
            let a = ga.ok_or_else(|| {
                Error::InvalidParameter("--ga (K-dimension) is required for reduced-gammal".into())
            })?;
            let b = gb.ok_or_else(|| {
                Error::InvalidParameter(
                    "--gb (extension degree) is required for reduced-gammal".into(),
                )
            })?;
            if a * b as usize != n {
                return Err(Error::InvalidParameter(format!(
                    "reduced-gammal needs ga * gb = n, got {a} * {b} != {n}"
                )));
            }
            let emb = ExtensionEmbedding::new(field, b)?;
            Ok(BuiltGroup {
                group: reduced_gamma_l(&emb, a)?,
                config: format!("--group reduced-gammal --ga {a} --gb {b}"),
            })
        }
        "g2" => {
            if field.order() != 2 || n != 6 {
                return Err(Error::InvalidParameter(
                    "the hexagon stabiliser needs --q 2 and ambient dimension 6".into(),
                ));
            }
            Ok(BuiltGroup {
                group: g2_subgroup(field, budget)?,
                config: "--group g2".into(),
            })
        }
        other => Err(Error::InvalidParameter(format!("unknown group '{other}'"))),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Construct(args) => {
            let budget = budget(args.heavy);
            let built = build_graph(
                &args.name, args.q, args.n, args.t, args.b, args.a, &budget,
            )?;
            let config = format!("{} --format {}", built.config, format_name(args.format));
            let text = match args.format {
                Format::Json => to_pretty_json(&QGraphDocument::from_graph(&built.graph, config)),
                Format::Table => {
                    let doc = QGraphDocument::from_graph(&built.graph, config);
                    format!(
                        "{} on GF({}^{})^{}: {} edges, {} vertices\n",
                        args.name,
                        doc.field.p,
                        doc.field.t,
                        doc.n,
                        doc.edge_count,
                        built.graph.vertex_count()
                    )
                }
                Format::Graph6 => {
                    classical_export(&built.graph.classical_counterpart(&budget)?, true)
                }
                Format::Edgelist => {
                    classical_export(&built.graph.classical_counterpart(&budget)?, false)
                }
            };
            emit(args.output.as_ref(), &text)
        }
        Command::Verify(args) => {
            let budget = budget(args.heavy);
            let built = build_graph(
                &args.construction,
                args.q,
                args.n,
                args.t,
                args.b,
                args.a,
                &budget,
            )?;
            let graph = built.graph;
            let group = build_group(
                &args.group,
                graph.field(),
                graph.ambient(),
                args.d,
                args.e,
                args.s,
                args.ga,
                args.gb,
                &budget,
            )?;
            let outcome = graph.verify(&group.group, &budget)?;
            let config = format!(
                "verify --construction {} {} --format {}",
                args.construction,
                group.config,
                format_name(args.format)
            );
            let doc = VerifyDocument::new(&graph, &group.group, &outcome, config);
            let text = match args.format {
                Format::Json => to_pretty_json(&doc),
                Format::Table => verify_table(&doc),
                _ => {
                    return Err(Error::InvalidParameter(
                        "verify supports the json and table formats".into(),
                    ))
                }
            };
            emit(args.output.as_ref(), &text)
        }
        Command::Scan(args) => {
            let budget = budget(args.heavy);
            let field = parse_prime_power(args.q)?;
            let group = build_group(
                &args.group, &field, args.n, args.d, args.e, args.s, args.ga, args.gb, &budget,
            )?;
            let report = single_orbit_scan(&field, args.n, &group.group, &budget)?;
            let config = format!(
                "scan {} --q {} --n {} --format {}",
                group.config,
                field.order(),
                args.n,
                format_name(args.format)
            );
            let doc = ScanDocument::from_report(&report, config);
            let text = match args.format {
                Format::Json => to_pretty_json(&doc),
                Format::Table => scan_table(&doc),
                _ => {
                    return Err(Error::InvalidParameter(
                        "scan supports the json and table formats".into(),
                    ))
                }
            };
            emit(args.output.as_ref(), &text)
        }
        Command::Crosscheck(args) => {
            let budget = budget(args.heavy);
            let catalog = default_catalog(&budget)?;
            let report = classification_crosscheck(&catalog, &budget)?;
            let config = format!("crosscheck --format {}", format_name(args.format));
            let doc = CrosscheckDocument::from_report(&report, config);
            let text = match args.format {
                Format::Json => to_pretty_json(&doc),
                Format::Table => crosscheck_table(&doc),
                _ => {
                    return Err(Error::InvalidParameter(
                        "crosscheck supports the json and table formats".into(),
                    ))
                }
            };
            emit(args.output.as_ref(), &text)
        }
    }
}
