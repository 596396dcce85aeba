//! The verification harness: exhaustive sweep with the invariant battery,
//! pre-period bounds for a single seed, loop classification, period
//! prediction, and the worst-case order recurrence. Run with:
//! cargo run --release --example verification

use inventory_game::dynamics::orbit;
use inventory_game::multiset::parse_notation;
use inventory_game::verify::{
    check_pre_period, classify_loop, exhaustive_sweep, predict_period, sharp_family,
    theorem65_sequence, SharpFamily,
};

fn main() {
    // every orbit with order <= 6 and elements <= 7, with all invariants on
    let summary = exhaustive_sweep(6, 7).unwrap();
    println!(
        "sweep: {} seeds, max pre-period {}, periods {:?}, max order reached {}",
        summary.seeds, summary.max_preperiod, summary.periods_seen, summary.max_order_seen
    );

    let s0 = parse_notation("667788").unwrap();
    let bounds = check_pre_period(&s0).unwrap();
    println!(
        "\nseed {s0}: pre-period {} vs bounds {:.1} (refined) and {} (simple): pass = {}",
        bounds.preperiod, bounds.bound_refined, bounds.bound_simple, bounds.pass
    );

    let prediction = predict_period(&s0).unwrap();
    println!(
        "predicted period {} via {} in {} steps",
        prediction.period, prediction.certificate, prediction.steps_used
    );

    let report = orbit(&s0, 1_000).unwrap();
    let class = classify_loop(&report.loop_states).unwrap();
    println!("loop classified as {:?}", class);

    // one seed per sharpness family, stated vs measured loop entry
    println!();
    for kind in [
        SharpFamily::Family1,
        SharpFamily::Family2,
        SharpFamily::Family3,
        SharpFamily::Family4,
    ] {
        let (seed, stated) = sharp_family(kind, 9).unwrap();
        let measured = orbit(&seed, 1_000).unwrap().preperiod;
        println!("{kind:?} at k=9: seed {seed}, stated entry {stated}, measured {measured}");
    }

    // the recurrence bounding how fast orders can shrink backwards in time
    println!("\norder recurrence: {:?}", theorem65_sequence(17).unwrap());
}
