//! Iterate the inventory map from a few seeds and print each orbit's trace,
//! pre-period, and loop. Run with: cargo run --example orbit_basics

use inventory_game::dynamics::{height_profile, orbit};
use inventory_game::multiset::{format_notation, parse_notation, Multiset};

fn main() {
    // "one 1, one 3, one 8" in integer notation; step one generation at a time
    for seed in ["1381", "1", "22", "667788"] {
        let s0 = parse_notation(seed).unwrap();
        let report = orbit(&s0, 1_000).unwrap();
        println!("seed {seed}:");
        for t in &report.trace {
            println!(
                "  S_{:<2} order {:>2}  height {:>2}  {}",
                t.generation,
                t.order,
                t.height,
                format_notation(&report_state(&report, t.generation))
            );
        }
        println!(
            "  pre-period {}, period {}, loop: {}",
            report.preperiod,
            report.period,
            report.loop_states.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" -> ")
        );
        let (profile, first_max) = height_profile(&report);
        println!("  height profile {profile:?}, max first attained at S_{first_max}\n");
    }
}

// the trace stores summaries; recover the actual state by re-stepping
fn report_state(report: &inventory_game::dynamics::OrbitReport, gen: usize) -> Multiset {
    let mut s = report.start.clone();
    for _ in 0..gen {
        s = inventory_game::dynamics::step(&s);
    }
    s
}
