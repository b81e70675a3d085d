use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gfg_muller::construction::{
    build_gfg_rabin, build_parity_automaton, certify_gfg, check_language, Counterexample, Disagreement,
};
use gfg_muller::games::{is_chromatic, solve_muller_game, verify_strategy, GameFile, MemoryFile, Player};
use gfg_muller::succinctness::{succinctness_report, ReportOptions};
use gfg_muller::{parse_hoa, Acceptance, Automaton, MullerCondition, NodeKind, ZielonkaTree};

/// Zielonka trees, good-for-games Rabin automata and Muller games.
#[derive(Parser)]
#[command(name = "gfg-muller", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Zielonka tree of a condition and its memtree value.
    Zielonka {
        condition: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build an automaton for a condition.
    Build {
        condition: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::GfgRabin)]
        kind: Kind,
        /// Merge parallel edges (good-for-games Rabin automaton only).
        #[arg(long)]
        simplify: bool,
        #[arg(long)]
        hoa: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compare an automaton with a condition on all short lassos.
    Check {
        condition: PathBuf,
        /// `self` for the good-for-games Rabin automaton, or a HOA file.
        #[arg(long, default_value = "self")]
        automaton: String,
        /// Longest lasso period; defaults to twice the alphabet size.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Solve a Muller game and extract a memory structure for Exist.
    Solve {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        condition: PathBuf,
        #[arg(long)]
        memory_out: Option<PathBuf>,
    },
    /// Compare automaton sizes for the conditions F_n.
    Succinctness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        exact_chi: bool,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Search nodes allowed for the exact chromatic number.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    GfgRabin,
    Parity,
}

/// Longest lasso prefix in `check`.
const CHECK_PREFIX: usize = 2;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_condition(path: &Path) -> Result<MullerCondition> {
    MullerCondition::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn zielonka(condition: &Path, dot: Option<&Path>) -> Result<bool> {
    let f = load_condition(condition)?;
    let tree = ZielonkaTree::new(&f)?;
    let eta = tree.eta_labelling();
    println!("node\tlabel\tkind\tdepth\tpriority\teta");
    for n in 0..tree.len() {
        let kind = match tree.kind(n) {
            NodeKind::Round => "round",
            NodeKind::Square => "square",
        };
        let eta = if tree.is_leaf(n) { eta.get(n)?.to_string() } else { "-".into() };
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            tree.node_name(n),
            f.alphabet().render(tree.label(n)),
            kind,
            tree.depth(n),
            tree.priority(n),
            eta
        );
    }
    println!("memtree = {}", tree.memtree());
    if let Some(path) = dot {
        write(path, &tree.to_dot())?;
    }
    Ok(true)
}

fn summary(a: &Automaton) -> String {
    match a.acceptance() {
        Acceptance::Rabin(r) => format!("{} states, {} Rabin pairs", a.num_states(), r.pairs().len()),
        Acceptance::Parity(p) => format!(
            "{} states, priorities {}",
            a.num_states(),
            a.colours()
                .symbols()
                .iter()
                .enumerate()
                .map(|(c, s)| format!("{s}:{}", p.priority(c)))
                .collect::<Vec<_>>()
                .join(" ")
        ),
        Acceptance::Muller(_) => format!("{} states, Muller acceptance", a.num_states()),
    }
}

fn build(condition: &Path, kind: Kind, simplify: bool, hoa: Option<&Path>, dot: Option<&Path>) -> Result<bool> {
    let f = load_condition(condition)?;
    let automaton = match kind {
        Kind::GfgRabin => {
            let a = build_gfg_rabin(&f)?.into_automaton();
            if simplify {
                a.simplify_rabin()?
            } else {
                a
            }
        }
        Kind::Parity if simplify => bail!("--simplify applies to --kind gfg-rabin only"),
        Kind::Parity => build_parity_automaton(&f)?,
    };
    println!("{}", summary(&automaton));
    println!("{} transitions", automaton.transitions().len());
    if simplify {
        if automaton.has_duplicated_edges() {
            println!("duplicated edges remain");
            return Ok(false);
        }
        println!("no duplicated edges");
    }
    if let Some(path) = hoa {
        write(path, &automaton.to_hoa()?)?;
    }
    if let Some(path) = dot {
        write(path, &automaton.to_dot())?;
    }
    Ok(true)
}

fn report_counterexample(f: &MullerCondition, c: &Counterexample) {
    let verdict = if c.condition_accepts { "accepting" } else { "rejecting" };
    let who = match c.kind {
        Disagreement::Automaton => "the automaton",
        Disagreement::Resolver => "the resolver's run",
    };
    println!(
        "counterexample: {} is {verdict} for the condition but {who} disagrees",
        c.word.display(f.alphabet())
    );
}

fn check(condition: &Path, automaton: &str, bound: Option<usize>) -> Result<bool> {
    let f = load_condition(condition)?;
    let bound = bound.unwrap_or(2 * f.alphabet().len());
    if bound == 0 {
        eprintln!("warning: --bound 0 checks no lassos, so the check passes vacuously");
    }
    let outcome = if automaton == "self" {
        let gfg = build_gfg_rabin(&f)?;
        certify_gfg(&gfg, CHECK_PREFIX, bound)?
    } else {
        let a = parse_hoa(&read(Path::new(automaton))?).with_context(|| format!("in {automaton}"))?;
        check_language(&a, &f, CHECK_PREFIX, bound)?
    };
    match outcome {
        Ok(r) => {
            println!("pass: {} lassos with |u| ≤ {CHECK_PREFIX} and |v| ≤ {bound}", r.lassos);
            Ok(true)
        }
        Err(c) => {
            report_counterexample(&f, &c);
            Ok(false)
        }
    }
}

fn solve(game: &Path, condition: &Path, memory_out: Option<&Path>) -> Result<bool> {
    let f = load_condition(condition)?;
    let g = GameFile::parse(&read(game)?)?
        .to_game(f.alphabet())
        .with_context(|| format!("in {}", game.display()))?;
    let solution = solve_muller_game(&g, &f)?;
    println!("winner: {}", solution.winner);
    let Some(memory) = solution.memory else {
        return Ok(solution.winner == Player::Univ);
    };
    let verified = verify_strategy(&g, &Acceptance::Muller(f.clone()), &memory)?;
    println!("memory size: {} (memtree = {})", memory.size, solution.memtree);
    println!("chromatic: {}", if is_chromatic(&memory, &g)? { "yes" } else { "no" });
    println!("strategy verified: {}", if verified { "yes" } else { "no" });
    if let Some(path) = memory_out {
        write(path, &MemoryFile::from_memory(&memory, &g).to_json())?;
    }
    Ok(verified)
}

fn succinctness(n: usize, exact_chi: bool, json: Option<&Path>, budget: u64) -> Result<bool> {
    let report = succinctness_report(n, ReportOptions { exact_chi, budget })?;
    print!("{}", report.table());
    if let Some(path) = json {
        write(path, &report.to_json())?;
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Zielonka { condition, dot } => zielonka(&condition, dot.as_deref()),
        Command::Build {
            condition,
            kind,
            simplify,
            hoa,
            dot,
        } => build(&condition, kind, simplify, hoa.as_deref(), dot.as_deref()),
        Command::Check {
            condition,
            automaton,
            bound,
        } => check(&condition, &automaton, bound),
        Command::Solve {
            game,
            condition,
            memory_out,
        } => solve(&game, &condition, memory_out.as_deref()),
        Command::Succinctness {
            n,
            exact_chi,
            json,
            budget,
        } => succinctness(n, exact_chi, json.as_deref(), budget),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
