//! Command-line surface: one subcommand per capability, JSON/DOT/text output.
//!
//! Exit codes: 0 success (including clean sweeps), 1 falsification or bad
//! input, 2 budget exhaustion.

use std::io::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::adjectives::{find_gn_cycles, g_naive_graph_dot, gn_graph_dot, the_64_list};
use crate::backtrack::backtrack_tree;
use crate::dynamics::{ancestry_tree, orbit, step};
use crate::multiset::{parse_notation, Multiset};
use crate::variations::{
    sigma_from_multiset, stig_nplus_seed, variation_orbit, Sigma, VariationConfig,
    VariationOutcome,
};
use crate::verify::{
    check_height_exceptions, check_pre_period, classify_loop, exhaustive_sweep, predict_period,
    theorem65_sequence,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "inventory", about = "Iterate, analyze, and verify the inventory game", disable_version_flag = true)]
struct Cli {
    /// Worker threads for sweeps (default: hardware parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Extra key=value flag file.
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply the inventory map a fixed number of times.
    Iterate {
        input: String,
        #[arg(long, default_value = "1")]
        max_iters: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run to the loop and report pre-period, period, and the trace.
    Orbit {
        input: String,
        #[arg(long, default_value = "10000")]
        max_iters: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Adjective-space cycles: the g_n graph for one n, or the idealized
    /// core graph over the 64 reachable cores.
    Loops {
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Expand the preimage tree beneath a state.
    Ancestry {
        input: String,
        #[arg(long, default_value = "3")]
        depth: usize,
        #[arg(long, default_value = "100000")]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Symbolic backtracking tree for a mature core edge.
    Backtrack {
        from: String,
        to: String,
        #[arg(long, default_value = "1000000")]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Theorem-verification harnesses.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Run a generalized variation.
    Variation {
        #[arg(long, default_value = "classic")]
        preset: String,
        /// Starting multiset in Integer Notation (presets with a natural
        /// seed, like stig, default to it when omitted).
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, default_value = "1000")]
        max_iters: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Exhaustive invariant sweep over a starting-value box.
    Sweep {
        #[arg(long, default_value = "6")]
        max_order: u64,
        #[arg(long, default_value = "7")]
        max_elem: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Pre-period bound check for one starting value.
    Bounds {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Height-exception table and sweep.
    Heights {
        #[command(flatten)]
        common: Common,
    },
    /// Classify the loop a starting value falls into.
    Classify {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Predict the period without running to the loop.
    Predict {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// The backward minimal growth sequence.
    Sequence {
        #[arg(long, default_value = "17")]
        length: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Parses Integer Notation, plus the `k{x,y}` family shorthand joined by `+`
/// (e.g. `4{4,17,18}` or `3{3}+2{5,6,7}`).
pub fn parse_input(text: &str) -> Result<Multiset> {
    if !text.contains('{') {
        return parse_notation(text);
    }
    let bad = |msg: &str| Error::Parse { offset: 0, msg: msg.to_string() };
    let mut out = Multiset::new();
    for part in text.split('+') {
        let (count, rest) = part
            .split_once('{')
            .ok_or_else(|| bad("expected k{x,y} in every + part"))?;
        let count: u64 = count.parse().map_err(|_| bad("bad repeat count"))?;
        let inner = rest.strip_suffix('}').ok_or_else(|| bad("missing closing brace"))?;
        for elem in inner.split(',') {
            let elem: u64 = elem.trim().parse().map_err(|_| bad("bad element"))?;
            out.insert(elem, count)?;
        }
    }
    Ok(out)
}

fn preset_config(name: &str) -> Result<(VariationConfig, Option<Sigma>)> {
    let bad = |msg: String| Error::Parse { offset: 0, msg };
    if let Some(r) = name.strip_prefix("oeig:") {
        let r: i64 = r.parse().map_err(|_| bad(format!("bad oeig mention count: {name}")))?;
        return Ok((VariationConfig::oeig(r), None));
    }
    if let Some(list) = name.strip_prefix("significance:") {
        let vals: std::result::Result<Vec<i64>, _> =
            list.split(',').map(|v| v.trim().parse()).collect();
        let vals = vals.map_err(|_| bad(format!("bad significance list: {name}")))?;
        return Ok((VariationConfig::significance(vals), None));
    }
    if let Some(min) = name.strip_prefix("floor:") {
        let min: i64 = min.parse().map_err(|_| bad(format!("bad floor: {name}")))?;
        return Ok((VariationConfig::floor(min), None));
    }
    match name {
        "classic" => Ok((VariationConfig::classic(), None)),
        "stig" => Ok((VariationConfig::stig(), Some(stig_nplus_seed()))),
        "nounless10" => Ok((VariationConfig::nounless10(), None)),
        _ => Err(bad(format!("unknown preset: {name}"))),
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn reject_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        return Err(Error::Parse { offset: 0, msg: "no DOT form for this subcommand".into() });
    }
    Ok(())
}

fn run_command(cmd: &Command, out: &mut impl std::io::Write) -> Result<()> {
    match cmd {
        Command::Iterate { input, max_iters, common } => {
            reject_dot(common.format)?;
            let mut s = parse_input(input)?;
            let mut states = vec![s.to_string()];
            for _ in 0..*max_iters {
                s = step(&s);
                states.push(s.to_string());
            }
            match common.format {
                Format::Json => writeln!(out, "{}", json(&states)).unwrap(),
                _ => {
                    for (i, st) in states.iter().enumerate() {
                        writeln!(out, "S_{i} = {st}").unwrap();
                    }
                }
            }
        }
        Command::Orbit { input, max_iters, common } => {
            reject_dot(common.format)?;
            let s0 = parse_input(input)?;
            let report = orbit(&s0, *max_iters)?;
            match common.format {
                Format::Json => writeln!(out, "{}", json(&report)).unwrap(),
                _ => {
                    let mut s = s0.clone();
                    for i in 0..report.trace.len() {
                        if i > 0 {
                            s = step(&s);
                        }
                        writeln!(out, "S_{i} = {s}").unwrap();
                    }
                    writeln!(
                        out,
                        "pre-period {} period {} loop [{}]",
                        report.preperiod,
                        report.period,
                        report
                            .loop_states
                            .iter()
                            .map(|s| s.to_string())
                            .collect::<Vec<_>>()
                            .join(" -> ")
                    )
                    .unwrap();
                }
            }
        }
        Command::Loops { n, common } => match (n, common.format) {
            (Some(n), Format::Dot) => write!(out, "{}", gn_graph_dot(*n)?).unwrap(),
            (None, Format::Dot) => write!(out, "{}", g_naive_graph_dot()).unwrap(),
            (Some(n), Format::Json) => {
                let cycles: Vec<Vec<String>> = find_gn_cycles(*n)?
                    .iter()
                    .map(|c| c.iter().map(|m| m.to_string()).collect())
                    .collect();
                writeln!(out, "{}", json(&cycles)).unwrap();
            }
            (Some(n), Format::Text) => {
                for cycle in find_gn_cycles(*n)? {
                    let line: Vec<String> = cycle.iter().map(|m| m.to_string()).collect();
                    writeln!(out, "cycle of length {}: {}", cycle.len(), line.join(" -> "))
                        .unwrap();
                }
            }
            (None, _) => {
                let cores: Vec<String> = the_64_list().iter().map(|m| m.to_string()).collect();
                match common.format {
                    Format::Json => writeln!(out, "{}", json(&cores)).unwrap(),
                    _ => writeln!(out, "{} reachable cores: {}", cores.len(), cores.join(", "))
                        .unwrap(),
                }
            }
        },
        Command::Ancestry { input, depth, budget, common } => {
            let root = parse_input(input)?;
            let tree = ancestry_tree(&root, *depth, *budget)?;
            match common.format {
                Format::Dot => write!(out, "{}", tree.to_dot()).unwrap(),
                Format::Json => writeln!(out, "{}", json(&tree)).unwrap(),
                Format::Text => {
                    for d in 0..=*depth {
                        let level = tree.level(d);
                        if level.is_empty() {
                            break;
                        }
                        let line: Vec<String> = level.iter().map(|m| m.to_string()).collect();
                        writeln!(out, "depth {d}: {}", line.join(", ")).unwrap();
                    }
                }
            }
        }
        Command::Backtrack { from, to, budget, common } => {
            let from = parse_input(from)?;
            let to = parse_input(to)?;
            let tree = backtrack_tree((&from, &to), *budget)?;
            match common.format {
                Format::Dot => write!(out, "{}", tree.to_dot()).unwrap(),
                Format::Json => writeln!(out, "{}", json(&tree)).unwrap(),
                Format::Text => writeln!(
                    out,
                    "edge {from} -> {to}: {} nodes, height {}, at most {} occurrence(s) per path, valid for n >= {}",
                    tree.nodes.len(),
                    tree.height,
                    tree.max_occurrences,
                    tree.valid_for_n_at_least
                )
                .unwrap(),
            }
        }
        Command::Verify { what } => run_verify(what, out)?,
        Command::Variation { preset, seed, max_iters, common } => {
            reject_dot(common.format)?;
            let (cfg, default_seed) = preset_config(preset)?;
            let s0 = match seed {
                Some(notation) => sigma_from_multiset(&parse_input(notation)?),
                None => default_seed.ok_or_else(|| Error::Parse {
                    offset: 0,
                    msg: format!("preset {preset} needs --seed"),
                })?,
            };
            let report = variation_orbit(&s0, &cfg, *max_iters)?;
            match common.format {
                Format::Json => writeln!(out, "{}", json(&report)).unwrap(),
                _ => {
                    for (i, s) in report.trace.iter().enumerate() {
                        writeln!(out, "sigma_{i}: {s}").unwrap();
                    }
                    match &report.outcome {
                        VariationOutcome::Looped { preperiod, period } => {
                            writeln!(out, "pre-period {preperiod} period {period}").unwrap()
                        }
                        VariationOutcome::NoCycleWithin { budget, monotone_growth } => writeln!(
                            out,
                            "no cycle within {budget} iterations (monotone growth: {monotone_growth})"
                        )
                        .unwrap(),
                    }
                }
            }
        }
    }
    Ok(())
}

fn run_verify(cmd: &VerifyCommand, out: &mut impl std::io::Write) -> Result<()> {
    match cmd {
        VerifyCommand::Sweep { max_order, max_elem, common } => {
            reject_dot(common.format)?;
            eprintln!("sweeping order <= {max_order}, elements <= {max_elem} ...");
            let summary = exhaustive_sweep(*max_order, *max_elem)?;
            match common.format {
                Format::Json => writeln!(out, "{}", json(&summary)).unwrap(),
                _ => writeln!(
                    out,
                    "{} starting values, 0 counterexamples; max pre-period {}, periods {:?}",
                    summary.seeds, summary.max_preperiod, summary.periods_seen
                )
                .unwrap(),
            }
        }
        VerifyCommand::Bounds { input, common } => {
            reject_dot(common.format)?;
            let report = check_pre_period(&parse_input(input)?)?;
            match common.format {
                Format::Json => writeln!(out, "{}", json(&report)).unwrap(),
                _ => writeln!(
                    out,
                    "pre-period {} <= bounds ({:.2}, {}): {}",
                    report.preperiod,
                    report.bound_refined,
                    report.bound_simple,
                    if report.pass { "pass" } else { "FAIL" }
                )
                .unwrap(),
            }
            if !report.pass {
                return Err(Error::Counterexample(format!("bound violated at {input}")));
            }
        }
        VerifyCommand::Heights { common } => {
            reject_dot(common.format)?;
            let report = check_height_exceptions()?;
            match common.format {
                Format::Json => writeln!(out, "{}", json(&report)).unwrap(),
                _ => writeln!(
                    out,
                    "{} table entries verified; {} swept, {} descendants skipped",
                    report.table_entries_checked,
                    report.sweep_seeds_checked,
                    report.sweep_descendants_skipped
                )
                .unwrap(),
            }
        }
        VerifyCommand::Classify { input, common } => {
            reject_dot(common.format)?;
            let s0 = parse_input(input)?;
            let report = orbit(&s0, 10_000)?;
            let class = classify_loop(&report.loop_states)?;
            match common.format {
                Format::Json => writeln!(out, "{}", json(&class)).unwrap(),
                _ => writeln!(
                    out,
                    "period {} family {:?} n {} params {:?}",
                    class.period, class.family, class.n, class.params
                )
                .unwrap(),
            }
        }
        VerifyCommand::Predict { input, common } => {
            reject_dot(common.format)?;
            let p = predict_period(&parse_input(input)?)?;
            match common.format {
                Format::Json => writeln!(out, "{}", json(&p)).unwrap(),
                _ => writeln!(out, "period {} ({}; {} steps)", p.period, p.certificate, p.steps_used)
                    .unwrap(),
            }
        }
        VerifyCommand::Sequence { length, common } => {
            reject_dot(common.format)?;
            let seq = theorem65_sequence(*length)?;
            match common.format {
                Format::Json => writeln!(out, "{}", json(&seq)).unwrap(),
                _ => writeln!(
                    out,
                    "{}",
                    seq.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
                )
                .unwrap(),
            }
        }
    }
    Ok(())
}

/// Reads `key=value` lines and injects them as `--key value` arguments.
fn apply_config_file(args: &mut Vec<String>) -> Result<()> {
    let pos = args.iter().position(|a| a == "--config");
    let Some(pos) = pos else { return Ok(()) };
    let path = args
        .get(pos + 1)
        .cloned()
        .ok_or_else(|| Error::Parse { offset: 0, msg: "--config needs a path".into() })?;
    args.drain(pos..=pos + 1);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Parse { offset: 0, msg: format!("cannot read {path}: {e}") })?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse { offset: 0, msg: format!("bad config line: {line}") })?;
        let flag = format!("--{}", key.trim());
        if !args.iter().any(|a| a == &flag) {
            args.push(flag);
            args.push(value.trim().to_string());
        }
    }
    Ok(())
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::OrbitBudget(_)
        | Error::NodeBudget { .. }
        | Error::NoCycleWithin(_)
        | Error::LimitExceeded(_) => 2,
        _ => 1,
    }
}

/// Parses argv (without the program name), runs the command, and returns the
/// process exit code.
pub fn run<I: IntoIterator<Item = String>>(argv: I, out: &mut impl std::io::Write) -> i32 {
    let mut args: Vec<String> = argv.into_iter().collect();
    if let Err(e) = apply_config_file(&mut args) {
        eprintln!("error: {e}");
        return 1;
    }
    let cli = match Cli::try_parse_from(std::iter::once("inventory".to_string()).chain(args)) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(std::io::stderr(), "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if let Some(workers) = cli.workers {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
    match run_command(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
