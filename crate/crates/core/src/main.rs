//! Command-line front end: generate families, run oracles and recoloring
//! procedures, execute verification corpora, emit JSON and DOT reports.
//!
//! Exit codes: 0 on success or verification pass, 1 when some verification
//! record fails, 2 on usage, I/O or search-budget errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use maxcolor::exact::{self, SearchBudget};
use maxcolor::structure::{self, CutCheckMode, StructureError};
use maxcolor::{dot, generators, ExactError, Multigraph, Outcome, VerificationReport};

#[derive(Parser)]
#[command(name = "maxcolor", version, about = "Maximum Δ-edge-colorable subgraph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BudgetArg {
    /// Search node budget for the exact oracles.
    #[arg(long, default_value_t = exact::DEFAULT_NODE_BUDGET)]
    node_budget: u64,
}

impl BudgetArg {
    fn budget(&self) -> SearchBudget {
        SearchBudget::nodes(self.node_budget)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named family instance.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Decide t-edge-colorability and write a witness coloring.
    Color {
        graph: PathBuf,
        #[arg(short = 't', long)]
        colors: usize,
        /// Witness coloring output path.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Compute the maximum Δ-edge-colorable subgraph and its report.
    MaxSubgraph {
        graph: PathBuf,
        /// JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Certificate coloring output path.
        #[arg(long)]
        coloring_out: Option<PathBuf>,
        /// DOT drawing of the certificate.
        #[arg(long)]
        dot_out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Assign pairwise edge-disjoint cycles to the uncolored edges.
    AssignCycles {
        graph: PathBuf,
        /// JSON output path.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Extend a vertex-disjoint cycle set into the colored subgraph.
    Extend {
        graph: PathBuf,
        /// File of edge ids (whitespace separated) forming the cycles.
        #[arg(long)]
        cycles: PathBuf,
        /// Additionally require the set to be a 2-factor.
        #[arg(long)]
        two_factor: bool,
        #[arg(long)]
        coloring_out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Recolor so the uncolored edges form a matching (simple graphs).
    Normalize {
        graph: PathBuf,
        #[arg(long)]
        coloring_out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Run theorem checks over a corpus directory of graph files.
    Verify {
        /// Directory of `.txt` graph files.
        #[arg(long)]
        corpus: PathBuf,
        /// Comma-separated list: cut,ratio,class1,matching,assignment,
        /// intersection,corollary,rerprime or `all`.
        #[arg(long, default_value = "all")]
        theorems: String,
        /// JSON Lines report path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for sampled cut checks on large instances.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Explore the excess-matching conjecture; mismatches are flagged, never
    /// fatal.
    Explore {
        /// Single graph file.
        graph: Option<PathBuf>,
        /// Or a corpus directory of `.txt` graph files.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// JSON Lines report path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for would-be counterexample witness files.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Args, Clone)]
struct GenOut {
    /// Graph output path.
    #[arg(short, long)]
    out: PathBuf,
    /// DOT drawing output path.
    #[arg(long)]
    dot_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// Odd cycle with uniformly thick parallel bundles.
    FatCycle {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        gen_out: GenOut,
    },
    /// Two chains of subdivided complete bipartite blocks joined by a bridge.
    HrChain {
        #[arg(short)]
        r: usize,
        #[command(flatten)]
        gen_out: GenOut,
    },
    /// Petals of parallel pairs glued at a shared center.
    Flower {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        gen_out: GenOut,
    },
    /// Doubled triangle with its reference maximum coloring.
    Figure1 {
        #[command(flatten)]
        gen_out: GenOut,
        /// Path for the reference coloring.
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
    /// The Petersen graph.
    Petersen {
        #[command(flatten)]
        gen_out: GenOut,
    },
    /// Seeded random connected class II multigraph.
    RandomClass2 {
        #[arg(long)]
        seed: u64,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        mu_max: usize,
        #[command(flatten)]
        gen_out: GenOut,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Budget(String),
    Failure(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Budget(m) | CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("io error: {e}"))
    }
}

impl From<maxcolor::GraphError> for CliError {
    fn from(e: maxcolor::GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<maxcolor::ColoringError> for CliError {
    fn from(e: maxcolor::ColoringError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CliError::Budget(e.to_string())
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Exact(inner) => CliError::Budget(inner.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<generators::GeneratorError> for CliError {
    fn from(e: generators::GeneratorError) -> Self {
        CliError::Budget(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Failure(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(path: &Path) -> Result<Multigraph, CliError> {
    Ok(Multigraph::parse(&fs::read_to_string(path)?)?)
}

fn write_out(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)?;
    Ok(())
}

fn emit(path: Option<&PathBuf>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_out(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen { family } => run_gen(family),
        Command::Color {
            graph,
            colors,
            out,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let witness = exact::is_t_edge_colorable(&g, colors, budget.budget())?;
            match witness {
                Some(coloring) => {
                    if let Some(path) = out {
                        write_out(&path, &coloring.to_text())?;
                    }
                    println!("{}", json!({ "colorable": true, "colors": colors }));
                }
                None => println!("{}", json!({ "colorable": false, "colors": colors })),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::MaxSubgraph {
            graph,
            report,
            coloring_out,
            dot_out,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let json = subgraph_report(&g, budget.budget())?;
            let (cert, report_json) = json;
            emit(report.as_ref(), &format!("{report_json}\n"))?;
            if let Some(path) = coloring_out {
                write_out(&path, &cert.coloring.to_text())?;
            }
            if let Some(path) = dot_out {
                write_out(&path, &dot::emit_dot(&g, Some(&cert.coloring)))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::AssignCycles { graph, out, budget } => {
            let g = load_graph(&graph)?;
            let cert = exact::max_delta_subgraph(&g, budget.budget())?;
            let assignment = structure::assign_disjoint_cycles(&g, &cert)?;
            let entries: Vec<serde_json::Value> = assignment
                .entries
                .iter()
                .map(|entry| {
                    json!({
                        "edge": entry.edge.index(),
                        "alpha": entry.alpha,
                        "beta": entry.beta,
                        "cycle": entry.cycle.edges.iter().map(|e| e.index()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({ "size": cert.size, "entries": entries });
            emit(out.as_ref(), &format!("{doc}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Extend {
            graph,
            cycles,
            two_factor,
            coloring_out,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let ids = parse_edge_ids(&fs::read_to_string(&cycles)?, g.edge_count())?;
            let cert = exact::max_delta_subgraph(&g, budget.budget())?;
            let extended = if two_factor {
                structure::extend_two_factor(&g, &ids, &cert)?
            } else {
                structure::extend_cycles(&g, &ids, &cert)?
            };
            if let Some(path) = coloring_out {
                write_out(&path, &extended.coloring.to_text())?;
            }
            println!(
                "{}",
                json!({ "size": extended.size, "contains_cycles": true })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Normalize {
            graph,
            coloring_out,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let cert = exact::max_delta_subgraph(&g, budget.budget())?;
            let normalized = structure::normalize_to_matching(&g, &cert)?;
            if let Some(path) = coloring_out {
                write_out(&path, &normalized.coloring.to_text())?;
            }
            println!(
                "{}",
                json!({
                    "size": normalized.size,
                    "uncolored": normalized.coloring.uncolored_edges().len(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            corpus,
            theorems,
            out,
            seed,
            budget,
        } => run_verify(&corpus, &theorems, out.as_ref(), seed, budget.budget()),
        Command::Explore {
            graph,
            corpus,
            out,
            witness_dir,
            budget,
        } => run_explore(graph, corpus, out.as_ref(), witness_dir, budget.budget()),
    }
}

fn run_gen(family: Family) -> Result<ExitCode, CliError> {
    let (g, coloring, gen_out, coloring_out, comment) = match family {
        Family::FatCycle { k, gen_out } => {
            if k < 1 {
                return Err(CliError::Usage("fat-cycle needs k >= 1".into()));
            }
            (generators::gen_fat_cycle(k), None, gen_out, None, format!("fat-cycle k={k}"))
        }
        Family::HrChain { r, gen_out } => {
            if r < 1 {
                return Err(CliError::Usage("hr-chain needs r >= 1".into()));
            }
            (generators::gen_hr_chain(r), None, gen_out, None, format!("hr-chain r={r}"))
        }
        Family::Flower { k, gen_out } => {
            if k < 2 {
                return Err(CliError::Usage("flower needs k >= 2".into()));
            }
            (generators::gen_flower(k), None, gen_out, None, format!("flower k={k}"))
        }
        Family::Figure1 {
            gen_out,
            coloring_out,
        } => {
            let (g, c) = generators::gen_figure1();
            (g, Some(c), gen_out, coloring_out, "figure1".to_string())
        }
        Family::Petersen { gen_out } => {
            (generators::petersen(), None, gen_out, None, "petersen".to_string())
        }
        Family::RandomClass2 {
            seed,
            n,
            mu_max,
            gen_out,
        } => {
            if n > 10 || !(1..=3).contains(&mu_max) {
                return Err(CliError::Usage(
                    "random-class2 supports n <= 10 and mu-max in 1..=3".into(),
                ));
            }
            let sample = generators::gen_random_class2(seed, n, mu_max, SearchBudget::default())?;
            eprintln!("rejections: {}", sample.rejections);
            (
                sample.graph,
                None,
                gen_out,
                None,
                format!("random-class2 seed={seed} n={n} mu-max={mu_max}"),
            )
        }
    };
    let text = format!("c {comment}\n{}", g.to_text());
    write_out(&gen_out.out, &text)?;
    if let Some(path) = &gen_out.dot_out {
        write_out(path, &dot::emit_dot(&g, coloring.as_ref()))?;
    }
    if let (Some(path), Some(c)) = (coloring_out, coloring) {
        write_out(&path, &c.to_text())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_edge_ids(text: &str, edge_count: usize) -> Result<Vec<maxcolor::EdgeId>, CliError> {
    let mut ids = Vec::new();
    for token in text.split_whitespace() {
        let idx: usize = token
            .parse()
            .map_err(|_| CliError::Usage(format!("bad edge id '{token}'")))?;
        if idx >= edge_count {
            return Err(CliError::Usage(format!("edge id {idx} out of range")));
        }
        ids.push(maxcolor::EdgeId(idx));
    }
    Ok(ids)
}

fn subgraph_report(
    g: &Multigraph,
    budget: SearchBudget,
) -> Result<(exact::MaxSubgraphCertificate, serde_json::Value), CliError> {
    let chi = exact::chromatic_index(g, budget)?;
    let cert = exact::max_delta_subgraph(g, budget)?;
    let (r_prime, r_prime_status) = match exact::r_prime(g, budget) {
        Ok(v) => (json!(v), "ok"),
        Err(ExactError::OutOfRange(_)) => (serde_json::Value::Null, "out_of_range"),
        Err(e) => return Err(e.into()),
    };
    let report = json!({
        "chi": chi.chi,
        "delta": chi.delta,
        "class": if chi.is_class_two() { 2 } else { 1 },
        "max_subgraph_size": cert.size,
        "r_e": cert.r_e(g),
        "r_prime": r_prime,
        "r_prime_status": r_prime_status,
        "optimal": cert.optimal,
    });
    Ok((cert, report))
}

const ALL_THEOREMS: [&str; 8] = [
    "cut",
    "ratio",
    "class1",
    "matching",
    "assignment",
    "intersection",
    "corollary",
    "rerprime",
];

fn corpus_files(dir: &Path) -> Result<Vec<(String, PathBuf)>, CliError> {
    let mut files: Vec<(String, PathBuf)> = fs::read_dir(dir)?
        .filter_map(|entry| entry.ok())
        .map(|entry| entry.path())
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .map(|p| {
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            (name, p)
        })
        .collect();
    files.sort();
    Ok(files)
}

/// Runs one theorem check; `NotSimple` becomes a vacuous record.
fn run_theorem(
    theorem: &str,
    g: &Multigraph,
    cert: &exact::MaxSubgraphCertificate,
    seed: u64,
    budget: SearchBudget,
) -> Result<VerificationReport, StructureError> {
    let vacuous_if_not_simple = |r: Result<VerificationReport, StructureError>| match r {
        Err(StructureError::NotSimple) => Ok(VerificationReport::vacuous(
            theorem,
            json!({ "reason": "multigraph" }),
        )),
        other => other,
    };
    match theorem {
        "cut" => {
            let mode = if g.vertex_count() <= 16 {
                CutCheckMode::Exhaustive
            } else {
                CutCheckMode::Sampled { count: 2000, seed }
            };
            structure::check_cut_condition(g, cert, mode)
        }
        "ratio" => Ok(structure::check_ratio_bound(g, cert)),
        "class1" => vacuous_if_not_simple(structure::check_class_one(g, cert, budget)),
        "matching" => vacuous_if_not_simple(structure::normalize_to_matching(g, cert).map(|n| {
            let uncolored = n.coloring.uncolored_edges();
            let mut matched = true;
            for (i, &a) in uncolored.iter().enumerate() {
                for &b in &uncolored[i + 1..] {
                    let (u1, v1) = g.endpoints(a);
                    let (u2, v2) = g.endpoints(b);
                    if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
                        matched = false;
                    }
                }
            }
            let witness = json!({ "size": n.size, "uncolored": uncolored.len() });
            if matched && n.size == cert.size {
                let mut rep = VerificationReport::pass(theorem);
                rep.witness = Some(witness);
                rep
            } else {
                VerificationReport::fail(theorem, witness)
            }
        })),
        "assignment" => {
            if cert.coloring.uncolored_edges().is_empty() {
                return Ok(VerificationReport::vacuous(
                    theorem,
                    json!({ "reason": "no uncolored edges" }),
                ));
            }
            structure::assign_disjoint_cycles(g, cert).map(|assignment| {
                let witness = json!({ "cycles": assignment.entries.len() });
                if assignment.is_pairwise_disjoint() {
                    let mut rep = VerificationReport::pass(theorem);
                    rep.witness = Some(witness);
                    rep
                } else {
                    VerificationReport::fail(theorem, witness)
                }
            })
        }
        "intersection" => structure::check_cycle_intersection_lemma(g, cert),
        "corollary" => structure::check_corollary_bounds(g, cert, budget),
        "rerprime" => Ok(exact::check_re_equals_rprime(g, budget)?),
        other => Err(StructureError::NotMaximum(format!(
            "unknown theorem '{other}'"
        ))),
    }
}

fn run_verify(
    corpus: &Path,
    theorems: &str,
    out: Option<&PathBuf>,
    seed: u64,
    budget: SearchBudget,
) -> Result<ExitCode, CliError> {
    let selected: Vec<String> = if theorems == "all" {
        ALL_THEOREMS.iter().map(|s| s.to_string()).collect()
    } else {
        let list: Vec<String> = theorems.split(',').map(|s| s.trim().to_string()).collect();
        for t in &list {
            if !ALL_THEOREMS.contains(&t.as_str()) {
                return Err(CliError::Usage(format!("unknown theorem '{t}'")));
            }
        }
        list
    };
    let files = corpus_files(corpus)?;
    if files.is_empty() {
        return Err(CliError::Usage(format!(
            "no .txt graph files in {}",
            corpus.display()
        )));
    }
    type InstanceResult = Result<Vec<VerificationReport>, String>;
    let results: Vec<(String, InstanceResult)> = files
        .par_iter()
        .map(|(name, path)| {
            let run_instance = || -> Result<Vec<VerificationReport>, CliError> {
                let g = load_graph(path)?;
                let cert = exact::max_delta_subgraph(&g, budget)?;
                let mut reports = Vec::new();
                for theorem in &selected {
                    let report = run_theorem(theorem, &g, &cert, seed, budget)
                        .map_err(CliError::from)?
                        .with_instance(name);
                    reports.push(report);
                }
                Ok(reports)
            };
            (name.clone(), run_instance().map_err(|e| e.to_string()))
        })
        .collect();
    let mut lines = String::new();
    let mut failed = false;
    let mut broken: Option<String> = None;
    for (name, result) in results {
        match result {
            Ok(reports) => {
                for report in reports {
                    failed |= report.outcome == Outcome::Fail;
                    lines.push_str(&report.to_json_line());
                    lines.push('\n');
                }
            }
            Err(msg) => {
                eprintln!("instance {name}: {msg}");
                broken = Some(msg);
            }
        }
    }
    emit(out, &lines)?;
    if let Some(msg) = broken {
        return Err(CliError::Budget(msg));
    }
    if failed {
        return Err(CliError::Failure("verification failed".into()));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_explore(
    graph: Option<PathBuf>,
    corpus: Option<PathBuf>,
    out: Option<&PathBuf>,
    witness_dir: Option<PathBuf>,
    budget: SearchBudget,
) -> Result<ExitCode, CliError> {
    let files: Vec<(String, PathBuf)> = match (graph, corpus) {
        (Some(path), None) => {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            vec![(name, path)]
        }
        (None, Some(dir)) => corpus_files(&dir)?,
        _ => {
            return Err(CliError::Usage(
                "explore takes either a graph file or --corpus".into(),
            ))
        }
    };
    let mut lines = String::new();
    for (name, path) in files {
        let g = load_graph(&path)?;
        let cert = exact::max_delta_subgraph(&g, budget)?;
        let record = structure::explore_conjecture(&g, &cert, budget)?;
        let doc = json!({
            "instance": name,
            "gap": record.gap,
            "achieved": record.achieved,
            "matches": record.matches,
            "removal": record.removal,
        });
        lines.push_str(&doc.to_string());
        lines.push('\n');
        if !record.matches {
            let dir = witness_dir.clone().unwrap_or_else(|| PathBuf::from("."));
            fs::create_dir_all(&dir)?;
            let witness_path = dir.join(format!("{name}.counterexample.json"));
            write_out(&witness_path, &format!("{doc}\n"))?;
            eprintln!(
                "flagged: instance {name} achieved {} != gap {} (witness at {})",
                record.achieved,
                record.gap,
                witness_path.display()
            );
        }
    }
    emit(out, &lines)?;
    Ok(ExitCode::SUCCESS)
}
