//! The induced dynamics on adjective (multiplicity) space: cycle census of
//! g_n for small n, the 64 possible core-adjective multisets, and the
//! idealized core map. Run with: cargo run --example adjective_cycles

use inventory_game::adjectives::{find_gn_cycles, g_naive, the_64_list};

fn main() {
    let mut total = 0;
    for n in 1..=7 {
        let cycles = find_gn_cycles(n).unwrap();
        total += cycles.len();
        for c in &cycles {
            println!(
                "g_{n} cycle of length {}: {}",
                c.len(),
                c.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" -> ")
            );
        }
    }
    println!("total cycles for n in 1..=7: {total}\n");

    let list = the_64_list();
    println!("the {} eventual core-adjective possibilities:", list.len());
    for r in &list {
        let label = if r.is_empty() { "{}".to_string() } else { r.to_string() };
        let image = g_naive(r).unwrap();
        let image_label = if image.is_empty() { "{}".to_string() } else { image.to_string() };
        println!("  {label:>7} -> {image_label}");
    }
}
