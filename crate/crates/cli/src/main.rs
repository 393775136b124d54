//! Command-line interface: kernelize instances, solve them exactly, generate
//! random instances and composition gadgets, and run the verification suite.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 precondition violation,
//! 3 resource ceiling exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use octkernel::generators::{
    compose_cluster, compose_cocluster, compose_outerplanar, compose_weighted_vc, is_cluster,
    is_cocluster, is_outerplanar, random_instance, render_bookkeeping, CompositionOutput,
    GeneratorError, ModulatorStrategy,
};
use octkernel::graph::{Graph, VertexSet};
use octkernel::instances::{AnnotatedInstance, OctInstance, RestrictedInstance};
use octkernel::io::{parse_instance, write_instance, Instance};
use octkernel::kernel::{kernelize, KernelConfig, KernelError, KernelOutcome};
use octkernel::separators::{
    enumerate_characteristics, enumerate_important_separators, is_important_separator, kappa_bound,
    min_vertex_cut, reachable_from_set, LabelSet, LabeledGraph,
};
use octkernel::solvers::{
    solve_annotated, solve_oct, solve_restricted, solve_weighted_oct, SolveOutcome, SolverError,
    SolverLimits,
};

#[derive(Parser)]
#[command(
    name = "octkernel",
    about = "Odd cycle transversal kernelization toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernelize an instance given with a modulator to bipartite
    /// treewidth-w graphs.
    Kernelize(KernelizeArgs),
    /// Solve an instance exactly; the variant is chosen from the directives
    /// present (z: restricted, m: annotated, w: weighted, otherwise plain).
    Solve(SolveArgs),
    /// Generate instances.
    #[command(subcommand)]
    Generate(GenerateCmd),
    /// Run the property verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct KernelizeArgs {
    /// Input instance file.
    input: PathBuf,
    /// Output instance file.
    #[arg(short, long)]
    output: PathBuf,
    /// Residual treewidth bound.
    #[arg(short = 'w', long = "width", default_value_t = 1)]
    width: usize,
    /// Write the stage trace to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Ceiling on characteristic enumeration size.
    #[arg(long, default_value_t = 10_000_000)]
    ceiling_enum: u128,
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    /// Largest instance (vertex count) the solver accepts.
    #[arg(long, default_value_t = 20)]
    ceiling_solver: usize,
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Seeded random instance with a planted or extracted modulator.
    Random(RandomArgs),
    /// Cross-composition from vertex cover instances; residual is
    /// outerplanar.
    Outerplanar(ComposeArgs),
    /// Cross-composition from transversal instances; residual is a cluster
    /// graph.
    Cluster(ComposeArgs),
    /// Cross-composition from transversal instances; residual is a
    /// co-cluster graph.
    Cocluster(ComposeArgs),
    /// Weighted cross-composition whose modulator is a vertex cover.
    WeightedVc(ComposeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Planted,
    Extracted,
}

#[derive(Args)]
struct RandomArgs {
    /// Seed; falls back to the OCTKERNEL_SEED environment variable.
    #[arg(long)]
    seed: Option<u64>,
    /// Total number of vertices.
    #[arg(short = 'n', long, default_value_t = 14)]
    vertices: u32,
    /// Modulator edge probability.
    #[arg(short = 'p', long, default_value_t = 0.3)]
    edge_prob: f64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Planted)]
    strategy: StrategyArg,
    /// Modulator size for the planted strategy.
    #[arg(long, default_value_t = 3)]
    modulator_size: u32,
    #[arg(short = 'w', long = "width", default_value_t = 1)]
    width: usize,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct ComposeArgs {
    /// Input instance files, all equivalent (same sizes and budget).
    inputs: Vec<PathBuf>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random kernelization instances.
    #[arg(long, default_value_t = 60)]
    count: usize,
    #[arg(short = 'w', long = "width", default_value_t = 1)]
    width: usize,
    #[arg(long, default_value_t = 1_000_000)]
    ceiling_solver: usize,
    #[arg(long, default_value_t = 10_000_000)]
    ceiling_enum: u128,
    /// Deliberately corrupt the kernelization output (test fixture).
    #[arg(long, hide = true)]
    inject_fault: bool,
}

enum CliError {
    Usage(String),
    Precondition(String),
    Ceiling(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Ceiling(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Precondition(m) | CliError::Ceiling(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn seed_or_env(seed: Option<u64>) -> u64 {
    seed.or_else(|| {
        std::env::var("OCTKERNEL_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Kernelize(args) => cmd_kernelize(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Generate(cmd) => cmd_generate(cmd),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn map_kernel_error(e: KernelError) -> CliError {
    match e {
        KernelError::Enumeration { .. } => CliError::Ceiling(e.to_string()),
        other => CliError::Precondition(other.to_string()),
    }
}

fn cmd_kernelize(args: KernelizeArgs) -> Result<(), CliError> {
    if args.width < 1 {
        return Err(CliError::Usage("width must be at least 1".into()));
    }
    let file = read_instance(&args.input)?;
    let inst = OctInstance::from_file(&file);
    let config = KernelConfig {
        enum_ceiling: args.ceiling_enum,
    };
    let out = kernelize(&inst, args.width, &config).map_err(map_kernel_error)?;
    write_file(&args.output, &write_instance(&out.instance.to_file()))?;
    if let Some(trace_path) = &args.trace {
        write_file(trace_path, &out.trace.render())?;
    }
    println!(
        "outcome {}",
        match out.outcome {
            KernelOutcome::Reduced => "reduced",
            KernelOutcome::CanonicalYes => "yes",
            KernelOutcome::CanonicalNo => "no",
        }
    );
    Ok(())
}

fn map_solver_error(e: SolverError) -> CliError {
    CliError::Ceiling(e.to_string())
}

fn print_outcome(outcome: &SolveOutcome) {
    match outcome {
        SolveOutcome::Feasible(sol) => {
            print!("YES {}", sol.cost);
            for v in &sol.deleted {
                print!(" {v}");
            }
            println!();
        }
        SolveOutcome::Infeasible => println!("NO"),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<(), CliError> {
    let file = read_instance(&args.input)?;
    let limits = SolverLimits {
        branch_ceiling: args.ceiling_solver,
        ..Default::default()
    };
    let outcome = if file.deletable.is_some() {
        let inst = RestrictedInstance::from_file(&file);
        inst.validate()
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        solve_restricted(&inst, &limits).map_err(map_solver_error)?
    } else if !file.mono.is_empty() {
        let inst = AnnotatedInstance::from_file(&file);
        inst.validate()
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        solve_annotated(&inst, &limits).map_err(map_solver_error)?
    } else if file.has_weights() {
        solve_weighted_oct(&file.graph, file.budget, &limits).map_err(map_solver_error)?
    } else {
        solve_oct(&file.graph, file.budget, &limits).map_err(map_solver_error)?
    };
    print_outcome(&outcome);
    Ok(())
}

fn cmd_generate(cmd: GenerateCmd) -> Result<(), CliError> {
    match cmd {
        GenerateCmd::Random(args) => {
            let strategy = match args.strategy {
                StrategyArg::Planted => ModulatorStrategy::Planted {
                    modulator_size: args.modulator_size,
                },
                StrategyArg::Extracted => ModulatorStrategy::Extracted,
            };
            let inst = random_instance(
                seed_or_env(args.seed),
                args.vertices,
                args.edge_prob,
                strategy,
                args.width,
            )
            .map_err(|e| CliError::Usage(e.to_string()))?;
            write_file(&args.output, &write_instance(&inst.to_file()))
        }
        GenerateCmd::Outerplanar(args) => compose_and_write(args, compose_outerplanar),
        GenerateCmd::Cluster(args) => compose_and_write(args, compose_cluster),
        GenerateCmd::Cocluster(args) => compose_and_write(args, compose_cocluster),
        GenerateCmd::WeightedVc(args) => compose_and_write(args, compose_weighted_vc),
    }
}

fn compose_and_write(
    args: ComposeArgs,
    compose: fn(&[(Graph, i64)]) -> Result<CompositionOutput, GeneratorError>,
) -> Result<(), CliError> {
    if args.inputs.is_empty() {
        return Err(CliError::Usage(
            "composition needs at least one input file".into(),
        ));
    }
    let mut inputs = Vec::new();
    for path in &args.inputs {
        let file = read_instance(path)?;
        inputs.push((file.graph, file.budget));
    }
    let out = compose(&inputs).map_err(|e| CliError::Usage(e.to_string()))?;
    write_file(&args.output, &write_instance(&out.instance))?;
    let sidecar = args.output.with_extension("roles");
    write_file(&sidecar, &render_bookkeeping(&out))
}

// ---------------------------------------------------------------------------
// Verification suite.

struct Report {
    lines: Vec<String>,
    failures: usize,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: Vec::new(),
            failures: 0,
        }
    }

    fn record(&mut self, check: &str, pass: bool, detail: String, witness: Option<String>) {
        self.lines.push(format!(
            "check {check} {} {detail}",
            if pass { "pass" } else { "fail" }
        ));
        if !pass {
            self.failures += 1;
            if let Some(w) = witness {
                for line in w.lines() {
                    self.lines.push(format!("  witness {line}"));
                }
            }
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    use rand::{Rng, SeedableRng};
    let seed = seed_or_env(args.seed);
    let mut report = Report::new();
    let limits = SolverLimits {
        branch_ceiling: args.ceiling_solver,
        ..Default::default()
    };

    // Menger duality on random triples.
    {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let mut checked = 0;
        let mut ok = true;
        let mut witness = None;
        'menger: for _ in 0..400 {
            let n: u32 = rng.random_range(4..=11);
            let mut g = Graph::with_vertices(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.3) {
                        g.add_edge(u, v);
                    }
                }
            }
            let s = rng.random_range(0..n);
            let t = rng.random_range(0..n);
            if s == t || g.has_edge(s, t) {
                continue;
            }
            checked += 1;
            let cut = min_vertex_cut(&g, s, t).expect("preconditions checked");
            let separated = !reachable_from_set(&g, &VertexSet::from([s]), &cut.cut).contains(&t);
            if cut.cut.len() != cut.paths.len() || !separated {
                ok = false;
                witness = Some(write_instance(&Instance::new(g, VertexSet::new(), 0)));
                break 'menger;
            }
        }
        report.record("menger_duality", ok, format!("triples={checked}"), witness);
    }

    // Important separators against the definition checker.
    {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
        let mut ok = true;
        let mut count = 0;
        let mut witness = None;
        'seps: for _ in 0..25 {
            let n: u32 = rng.random_range(5..=9);
            let mut g = Graph::with_vertices(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.3) {
                        g.add_edge(u, v);
                    }
                }
            }
            let x = VertexSet::from([0]);
            let y = VertexSet::from([n - 1]);
            for m in 0..=3usize {
                let seps = enumerate_important_separators(&g, &x, &y, m);
                count += seps.len();
                if seps.len() > 4usize.pow(m as u32)
                    || !seps.iter().all(|s| is_important_separator(&g, &x, &y, s))
                {
                    ok = false;
                    witness = Some(write_instance(&Instance::new(g, VertexSet::new(), 0)));
                    break 'seps;
                }
            }
        }
        report.record(
            "important_separators",
            ok,
            format!("separators={count}"),
            witness,
        );
    }

    // Characteristic class counts against the kappa bound.
    {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
        let mut ok = true;
        let mut classes_total = 0;
        for _ in 0..15 {
            let n: u32 = rng.random_range(5..=8);
            let mut g = Graph::with_vertices(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.35) {
                        g.add_edge(u, v);
                    }
                }
            }
            let r = 4u32;
            let mut lg = LabeledGraph::new(g.clone(), (0..r).collect());
            for v in g.vertices() {
                let ls: LabelSet = (0..r).filter(|_| rng.random_bool(0.4)).collect();
                lg.set_labels(v, ls);
            }
            let terminals: Vec<_> = g.vertices().take(3).collect();
            for m in 0..=2usize {
                let classes = enumerate_characteristics(
                    &lg,
                    &terminals,
                    m,
                    &g.vertex_set(),
                    args.ceiling_enum,
                )
                .expect("small enumerations stay below the ceiling");
                classes_total += classes.len();
                let bound = kappa_bound(terminals.len() as u64, m as u64, r as u64);
                if num_bigint::BigUint::from(classes.len()) > bound {
                    ok = false;
                }
            }
        }
        report.record(
            "characteristic_classes",
            ok,
            format!("classes={classes_total}"),
            None,
        );
    }

    // Kernelization equivalence plus the bound ledger.
    {
        let config = KernelConfig {
            enum_ceiling: args.ceiling_enum,
        };
        let mut equiv_ok = true;
        let mut ledger_ok = true;
        let mut solved = 0;
        let mut witness = None;
        for i in 0..args.count {
            let inst = random_instance(
                seed.wrapping_add(1000 + i as u64),
                12 + (i as u32 % 5),
                0.35,
                ModulatorStrategy::Planted {
                    modulator_size: 2 + (i as u32 % 3),
                },
                args.width,
            )
            .expect("planted generation cannot fail");
            let out = match kernelize(&inst, args.width, &config) {
                Ok(out) => out,
                Err(e) => {
                    equiv_ok = false;
                    witness = Some(format!("kernelize refused: {e}"));
                    break;
                }
            };
            if !out.trace.violations().is_empty() {
                ledger_ok = false;
            }
            let mut reduced = out.instance;
            if args.inject_fault {
                // Test fixture: corrupt the final stage by tightening the
                // budget, which flips verdicts on tight instances.
                reduced.budget -= 1;
            }
            let before = solve_oct(&inst.graph, inst.budget, &limits)
                .map_err(map_solver_error)?
                .is_feasible();
            let after = solve_oct(&reduced.graph, reduced.budget, &limits)
                .map_err(map_solver_error)?
                .is_feasible();
            solved += 1;
            if before != after {
                equiv_ok = false;
                witness = Some(write_instance(&inst.to_file()));
                break;
            }
        }
        report.record(
            "kernel_equivalence",
            equiv_ok,
            format!("instances={solved}"),
            witness,
        );
        report.record(
            "bound_ledger",
            ledger_ok,
            format!("instances={solved}"),
            None,
        );
    }

    // Composition OR-equivalence on tiny two-input tuples.
    {
        let mut ok = true;
        let mut detail: Vec<String> = Vec::new();

        let edge = {
            let mut g = Graph::with_vertices(2);
            g.add_edge(0, 1);
            g
        };
        // Vertex cover: single edge at budget 0 is a no, at budget 1 a yes.
        for (budget, expect) in [(0i64, false), (1, true)] {
            let out = compose_outerplanar(&[(edge.clone(), budget), (edge.clone(), budget)])
                .expect("equivalent inputs");
            let residual = out.instance.graph.removed(&out.instance.modulator);
            let class_ok = is_outerplanar(&residual);
            let got = solve_oct(&out.instance.graph, out.instance.budget, &limits)
                .map_err(map_solver_error)?
                .is_feasible();
            if got != expect || !class_ok {
                ok = false;
            }
            detail.push(format!("outerplanar(budget={budget})={got}"));
        }

        let c4 = {
            let mut g = Graph::with_vertices(4);
            for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
                g.add_edge(u, v);
            }
            g
        };
        let paw = {
            let mut g = Graph::with_vertices(4);
            for (u, v) in [(0, 1), (1, 2), (2, 0), (2, 3)] {
                g.add_edge(u, v);
            }
            g
        };
        for (name, compose, validate) in [
            (
                "cluster",
                compose_cluster as fn(&[(Graph, i64)]) -> Result<CompositionOutput, GeneratorError>,
                is_cluster as fn(&Graph) -> bool,
            ),
            ("cocluster", compose_cocluster, is_cocluster),
        ] {
            for (tuple, expect) in [
                (vec![(c4.clone(), 0), (paw.clone(), 0)], true),
                (vec![(paw.clone(), 0), (paw.clone(), 0)], false),
            ] {
                let out = compose(&tuple).expect("equivalent inputs");
                let residual = out.instance.graph.removed(&out.instance.modulator);
                let got = solve_oct(&out.instance.graph, out.instance.budget, &limits)
                    .map_err(map_solver_error)?
                    .is_feasible();
                if got != expect || !validate(&residual) {
                    ok = false;
                }
                detail.push(format!("{name}={got}"));
            }
        }
        for (tuple, expect) in [
            (vec![(c4.clone(), 0), (paw.clone(), 0)], true),
            (vec![(paw.clone(), 0), (paw.clone(), 0)], false),
        ] {
            let out = compose_weighted_vc(&tuple).expect("equivalent inputs");
            let residual = out.instance.graph.removed(&out.instance.modulator);
            let got = solve_weighted_oct(&out.instance.graph, out.instance.budget, &limits)
                .map_err(map_solver_error)?
                .is_feasible();
            if got != expect || residual.edge_count() != 0 {
                ok = false;
            }
            detail.push(format!("weighted_vc={got}"));
        }
        report.record("or_equivalence", ok, detail.join(" "), None);
    }

    for line in &report.lines {
        println!("{line}");
    }
    println!(
        "verdict {}",
        if report.failures == 0 { "pass" } else { "fail" }
    );
    Ok(())
}
