//! Command-line front end: solve objective files, generate benchmark
//! instances, print MEC decompositions, sweep solvers against the oracle,
//! and benchmark.
//!
//! Exit codes: 0 success ("no" answers included), 1 input/parse errors,
//! 2 unsupported objective/mode combinations, 3 internal invariant
//! failures.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use mdpwin::{
    objective, oracle, random, reductions, solve, Error, Mdp, ObjectiveSpec, SolveOptions,
    StreettAlgo,
};

#[derive(Parser)]
#[command(name = "mdpwin", about = "almost-sure winning sets in graphs and MDPs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Basic,
    Impr,
    Dense,
    Sparse,
    Auto,
}

impl From<AlgoArg> for StreettAlgo {
    fn from(a: AlgoArg) -> StreettAlgo {
        match a {
            AlgoArg::Basic => StreettAlgo::Basic,
            AlgoArg::Impr => StreettAlgo::Impr,
            AlgoArg::Dense => StreettAlgo::Dense,
            AlgoArg::Sparse => StreettAlgo::Sparse,
            AlgoArg::Auto => StreettAlgo::Auto,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorArg {
    TriangleReach,
    OvReach,
    TriangleSafety,
    TriangleSafetyTree,
    OvSafety,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    ReachK,
    StreettVariants,
    Reductions,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the winning set for an objective file on an MDP file.
    Solve {
        #[arg(long)]
        mdp: PathBuf,
        #[arg(long)]
        objective: PathBuf,
        /// Streett algorithm selection (ignored for other kinds).
        #[arg(long, value_enum, default_value = "auto")]
        algo: AlgoArg,
        /// Print `yes`/`no` instead of the winning set.
        #[arg(long)]
        nonempty: bool,
        /// Give vertices without outgoing edges a self-loop at parse time.
        #[arg(long)]
        normalize: bool,
        /// Linear fast path for disjunctive singleton coBüchi on graphs.
        #[arg(long)]
        singleton: bool,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Generate a benchmark instance from a seeded random source problem.
    Generate {
        #[arg(value_enum)]
        generator: GeneratorArg,
        #[arg(long)]
        seed: u64,
        /// Source size: graph vertices or vectors per OV side.
        #[arg(long)]
        n: usize,
        /// OV dimension (default: ceil(log2 n), at least 1).
        #[arg(long)]
        d: Option<usize>,
        /// Edge probability of random source graphs, in permille.
        #[arg(long, default_value_t = 200)]
        edge_permille: usize,
        /// Output prefix; writes PREFIX.mdp and PREFIX.obj.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the MEC decomposition of an MDP file.
    Mec {
        #[arg(long)]
        mdp: PathBuf,
        #[arg(long)]
        normalize: bool,
    },
    /// Sweep all solvers against the brute-force oracle on random MDPs.
    Check {
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Timing sweeps; CSV on standard output.
    Bench {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err.downcast_ref::<Error>() {
                Some(Error::Unsupported(_)) => 2,
                Some(Error::Precondition(_)) | Some(Error::SizeGuard { .. }) => 3,
                _ => 1,
            })
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run(cli: Cli) -> Result<(), AnyError> {
    match cli.command {
        Command::Solve {
            mdp,
            objective,
            algo,
            nonempty,
            normalize,
            singleton,
            json,
        } => cmd_solve(&mdp, &objective, algo.into(), nonempty, normalize, singleton, json),
        Command::Generate {
            generator,
            seed,
            n,
            d,
            edge_permille,
            out,
        } => cmd_generate(generator, seed, n, d, edge_permille, &out),
        Command::Mec { mdp, normalize } => cmd_mec(&mdp, normalize),
        Command::Check { count, seed, max_n } => cmd_check(count, seed, max_n),
        Command::Bench { suite, sizes, seed } => cmd_bench(suite, &sizes, seed),
    }
}

fn load(
    mdp_path: &PathBuf,
    objective_path: &PathBuf,
    normalize: bool,
) -> Result<(Mdp, ObjectiveSpec), AnyError> {
    let mdp_text = std::fs::read_to_string(mdp_path)?;
    let mdp = mdpwin::parse_mdp(&mdp_text, normalize)?;
    let obj_text = std::fs::read_to_string(objective_path)?;
    let spec = objective::parse_objective(&obj_text, &mdp)?;
    Ok((mdp, spec))
}

fn cmd_solve(
    mdp_path: &PathBuf,
    objective_path: &PathBuf,
    algo: StreettAlgo,
    nonempty: bool,
    normalize: bool,
    singleton: bool,
    json: bool,
) -> Result<(), AnyError> {
    let (mdp, spec) = load(mdp_path, objective_path, normalize)?;
    let opts = SolveOptions { algo, singleton };
    let started = Instant::now();
    let winning = solve(&mdp, &spec, opts)?;
    let solve_ns = started.elapsed().as_nanos();

    if json {
        let ids: Vec<String> = winning.iter().map(|v| v.to_string()).collect();
        println!(
            "{{\"winning\":[{}],\"algo\":\"{}\",\"timings\":{{\"solve_ns\":{}}}}}",
            ids.join(","),
            algo.as_str(),
            solve_ns
        );
    } else if nonempty {
        println!("{}", if winning.is_empty() { "no" } else { "yes" });
    } else {
        for v in winning.iter() {
            emit(format_args!("{v}"));
        }
    }
    Ok(())
}

fn cmd_generate(
    generator: GeneratorArg,
    seed: u64,
    n: usize,
    d: Option<usize>,
    edge_permille: usize,
    out: &PathBuf,
) -> Result<(), AnyError> {
    if n == 0 {
        return Err(Error::Invalid("source size must be at least 1".into()).into());
    }
    let instance = match generator {
        GeneratorArg::TriangleReach => {
            reductions::gen_triangle_reach(&random::random_source_graph(seed, n, edge_permille))
        }
        GeneratorArg::TriangleSafety => {
            reductions::gen_triangle_safety(&random::random_source_graph(seed, n, edge_permille))
        }
        GeneratorArg::TriangleSafetyTree => reductions::gen_triangle_safety_tree(
            &random::random_source_graph(seed, n, edge_permille),
        ),
        GeneratorArg::OvReach | GeneratorArg::OvSafety => {
            let dim = d.unwrap_or_else(|| ceil_log2(n).max(1));
            let ov = random::random_ov_sized(seed, n, dim);
            match generator {
                GeneratorArg::OvReach => reductions::gen_ov_reach(&ov),
                _ => reductions::gen_ov_safety(&ov),
            }
        }
    };

    let mut header = String::new();
    header.push_str(&format!(
        "# generator: {} seed={seed} n={n}\n",
        instance.meta.generator
    ));
    for note in &instance.meta.notes {
        header.push_str(&format!("# note: {note}\n"));
    }
    for norm in instance.mdp.normalizations() {
        header.push_str(&format!("# note: {norm}\n"));
    }
    for (v, name) in instance.meta.names.iter().enumerate() {
        header.push_str(&format!("# name {v} {name}\n"));
    }

    let mdp_path = out.with_extension("mdp");
    let obj_path = out.with_extension("obj");
    std::fs::write(
        &mdp_path,
        format!("{header}{}", mdpwin::serialize_mdp(&instance.mdp)),
    )?;
    std::fs::write(&obj_path, objective::serialize_objective(&instance.objective))?;
    eprintln!(
        "wrote {} and {}",
        mdp_path.display(),
        obj_path.display()
    );
    Ok(())
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

fn cmd_mec(mdp_path: &PathBuf, normalize: bool) -> Result<(), AnyError> {
    let text = std::fs::read_to_string(mdp_path)?;
    let mdp = mdpwin::parse_mdp(&text, normalize)?;
    let analysis = mdp.mec_analysis();
    for mec in analysis.decomposition.mecs() {
        let ids: Vec<String> = mec.iter().map(|v| v.to_string()).collect();
        emit(format_args!("mec: {}", ids.join(" ")));
    }
    let ids: Vec<String> = analysis
        .decomposition
        .residual()
        .iter()
        .map(|v| v.to_string())
        .collect();
    println!("residual: {}", ids.join(" "));
    Ok(())
}

/// Solver-vs-oracle sweep mirroring the acceptance equivalence criteria.
fn cmd_check(count: u64, seed: u64, max_n: usize) -> Result<(), AnyError> {
    use mdpwin::{Kind, Mode};
    let combos: Vec<(Kind, Mode)> = vec![
        (Kind::Reach, Mode::Single),
        (Kind::Reach, Mode::DisjObjective),
        (Kind::Reach, Mode::DisjQuery),
        (Kind::Safety, Mode::Single),
        (Kind::Safety, Mode::ConjObjective),
        (Kind::Safety, Mode::DisjQuery),
        (Kind::Buchi, Mode::DisjObjective),
        (Kind::Buchi, Mode::DisjQuery),
        (Kind::Buchi, Mode::ConjObjective),
        (Kind::CoBuchi, Mode::DisjObjective),
        (Kind::CoBuchi, Mode::DisjQuery),
        (Kind::CoBuchi, Mode::ConjObjective),
        (Kind::Streett, Mode::ConjObjective),
        (Kind::Streett, Mode::DisjObjective),
        (Kind::Rabin, Mode::DisjObjective),
    ];
    let mut failures = 0usize;
    for (kind, mode) in combos {
        let mut bad = None;
        for i in 0..count {
            let instance_seed = seed ^ (i.wrapping_mul(0x9e3779b97f4a7c15));
            let mdp = random::random_mdp(instance_seed, max_n, 20);
            let n = mdp.vertex_count();
            let k = if mode == Mode::Single {
                1
            } else {
                1 + (instance_seed % 3) as usize
            };
            let spec = if kind.uses_pairs() {
                let pairs = random::random_pairs(instance_seed ^ 1, n, k, 3)
                    .into_iter()
                    .map(|(l, u)| mdpwin::Pair { l, u })
                    .collect();
                ObjectiveSpec::with_pairs(kind, mode, pairs)?
            } else {
                ObjectiveSpec::with_sets(kind, mode, random::random_targets(instance_seed ^ 1, n, k, 3))?
            };
            let got = solve(&mdp, &spec, SolveOptions::default())?;
            let expect = oracle::oracle_winning_set(&mdp, &spec)?;
            if got != expect {
                bad = Some((mdp, spec, got, expect));
                break;
            }
        }
        match bad {
            None => println!("check {:>7} {:<10} pass ({count} instances)", kind.as_str(), mode.as_str()),
            Some((mdp, spec, got, expect)) => {
                failures += 1;
                println!("check {:>7} {:<10} FAIL", kind.as_str(), mode.as_str());
                println!("--- failing instance ---");
                print!("{}", mdpwin::serialize_mdp(&mdp));
                print!("{}", objective::serialize_objective(&spec));
                println!("solver: {:?}", got.to_vec());
                println!("oracle: {:?}", expect.to_vec());
            }
        }
    }
    if failures > 0 {
        return Err(Error::Precondition(format!("{failures} combinations disagree with the oracle")).into());
    }
    Ok(())
}

/// Println that treats a closed stdout (e.g. piping into `head`) as a
/// normal end of output.
fn emit(line: std::fmt::Arguments<'_>) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{line}").is_err() {
        std::process::exit(0);
    }
}

fn fnv1a(ids: impl Iterator<Item = usize>) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for v in ids {
        for b in (v as u64).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

fn csv_row(generator: &str, n: usize, m: usize, k: usize, algo: &str, ns: u128, hash: u64) {
    emit(format_args!("{generator},{n},{m},{k},{algo},{ns},{hash:016x}"));
}

fn cmd_bench(suite: SuiteArg, sizes: &[usize], seed: u64) -> Result<(), AnyError> {
    emit(format_args!("generator,n,m,k,algo,wall_time_ns,result_hash"));
    match suite {
        SuiteArg::ReachK => {
            let sizes = if sizes.is_empty() { &[20_000][..] } else { sizes };
            for &n in sizes {
                let mdp = random::random_mdp_sized(seed, n, 4 * n);
                let m = mdp.edge_count();
                mdp.mec_analysis(); // decomposition shared across k
                for k in [1usize, 2, 4, 8, 16, 32, 64] {
                    let targets = random::random_targets(seed ^ k as u64, n, k, 8);
                    let started = Instant::now();
                    let w = mdpwin::reach::as_reach_disj_query(&mdp, &targets);
                    let ns = started.elapsed().as_nanos();
                    csv_row("random-mdp", n, m, k, "reach-disj-query", ns, fnv1a(w.iter()));
                }
            }
        }
        SuiteArg::StreettVariants => {
            let sizes = if sizes.is_empty() { &[50, 100, 200][..] } else { sizes };
            for &n in sizes {
                let mdp = random::random_mdp_sized(seed, n, 4 * n);
                let m = mdp.edge_count();
                for k in [4usize, 16, 32] {
                    let pairs: Vec<mdpwin::Pair> = random::random_pairs(seed ^ k as u64, n, k, 4)
                        .into_iter()
                        .map(|(l, u)| mdpwin::Pair { l, u })
                        .collect();
                    let mut hashes = Vec::new();
                    for algo in [
                        StreettAlgo::Basic,
                        StreettAlgo::Impr,
                        StreettAlgo::Dense,
                        StreettAlgo::Sparse,
                    ] {
                        let spec = ObjectiveSpec::with_pairs(
                            mdpwin::Kind::Streett,
                            mdpwin::Mode::ConjObjective,
                            pairs.clone(),
                        )?;
                        let opts = SolveOptions { algo, singleton: false };
                        let started = Instant::now();
                        let w = solve(&mdp, &spec, opts)?;
                        let ns = started.elapsed().as_nanos();
                        let h = fnv1a(w.iter());
                        hashes.push(h);
                        csv_row("random-mdp", n, m, k, algo.as_str(), ns, h);
                    }
                    if hashes.iter().any(|&h| h != hashes[0]) {
                        return Err(Error::Precondition(
                            "streett algorithm variants disagree".into(),
                        )
                        .into());
                    }
                }
            }
        }
        SuiteArg::Reductions => {
            let sizes = if sizes.is_empty() { &[10, 20, 30][..] } else { sizes };
            for &n in sizes {
                for (name, instance) in [
                    (
                        "triangle-reach",
                        reductions::gen_triangle_reach(&random::random_source_graph(seed, n, 200)),
                    ),
                    (
                        "triangle-safety",
                        reductions::gen_triangle_safety(&random::random_source_graph(seed, n, 200)),
                    ),
                    (
                        "triangle-safety-tree",
                        reductions::gen_triangle_safety_tree(&random::random_source_graph(
                            seed, n, 200,
                        )),
                    ),
                    (
                        "ov-reach",
                        reductions::gen_ov_reach(&random::random_ov_sized(
                            seed,
                            n,
                            ceil_log2(n).max(1),
                        )),
                    ),
                    (
                        "ov-safety",
                        reductions::gen_ov_safety(&random::random_ov_sized(
                            seed,
                            n,
                            ceil_log2(n).max(1),
                        )),
                    ),
                ] {
                    let k = instance.objective.k();
                    let started = Instant::now();
                    let w = solve(&instance.mdp, &instance.objective, SolveOptions::default())?;
                    let ns = started.elapsed().as_nanos();
                    csv_row(
                        name,
                        instance.mdp.vertex_count(),
                        instance.mdp.edge_count(),
                        k,
                        "solve",
                        ns,
                        fnv1a(w.iter()),
                    );
                }
            }
        }
    }
    Ok(())
}
