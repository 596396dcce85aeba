//! The generalized engine: states are count functions sigma with a default
//! value, and each preset changes the ground set, the significance filter,
//! the cardinality rule, or the self-mention count r. Run with:
//! cargo run --example variations_tour

use inventory_game::multiset::parse_notation;
use inventory_game::variations::{
    divergence_search, enumerate_seeds, sigma_from_multiset, stig_nplus_seed, variation_orbit,
    VariationConfig, VariationOutcome,
};

fn main() {
    // classic: counts over the naturals, reproduces the multiset dynamics
    let seed = sigma_from_multiset(&parse_notation("1381").unwrap());
    let r = variation_orbit(&seed, &VariationConfig::classic(), 1_000).unwrap();
    println!("classic from 1381: {:?}", r.outcome);

    // counting with infinity allowed: start from "every positive natural
    // appears once" and watch it settle into a 2-cycle
    let r = variation_orbit(&stig_nplus_seed(), &VariationConfig::stig(), 100).unwrap();
    println!("\nall-naturals seed: {:?}", r.outcome);
    for (i, s) in r.trace.iter().enumerate() {
        println!("  sigma_{i}: {s}");
    }

    // nounless decimal: digit d of a 10-digit numeral counts occurrences of d
    let r = variation_orbit(&seed, &VariationConfig::nounless10(), 1_000).unwrap();
    println!("\nnounless decimal from 1381: {:?}", r.outcome);
    for s in &r.loop_states {
        println!("  loop state {s}");
    }

    // every present key mentions itself three times
    let r = variation_orbit(&seed, &VariationConfig::oeig(3), 1_000).unwrap();
    println!("\ntriple self-mention from 1381: {:?}", r.outcome);

    // only the listed values count as significant
    let r = variation_orbit(&seed, &VariationConfig::significance([1, 2, 3]), 1_000).unwrap();
    println!("significance {{1,2,3}} from 1381: {:?}", r.outcome);

    // negative elements with a floor: some seeds never loop and just grow
    let seeds = enumerate_seeds(-1, 2, 4);
    let results = divergence_search(&VariationConfig::floor(-1), &seeds, 400).unwrap();
    let divergent: Vec<_> = results
        .iter()
        .filter(|(_, o)| {
            matches!(o, VariationOutcome::NoCycleWithin { monotone_growth: true, .. })
        })
        .collect();
    println!(
        "\nfloor -1 box ({} seeds): {} apparently divergent, e.g. {}",
        seeds.len(),
        divergent.len(),
        divergent[0].0
    );
}
