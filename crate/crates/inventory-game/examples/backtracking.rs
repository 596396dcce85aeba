//! Symbolic backtracking over core-adjective transitions: how many times can
//! a given core edge repeat along one orbit? Run with:
//! cargo run --example backtracking

use inventory_game::backtrack::{backtrack_tree, edge_occurrence_bound};
use inventory_game::multiset::parse_notation;

fn main() {
    for (from, to) in [("222", "4"), ("24", "22")] {
        let a = parse_notation(from).unwrap();
        let b = parse_notation(to).unwrap();
        let tree = backtrack_tree((&a, &b), 1_000_000).unwrap();
        println!(
            "edge {from} -> {to}: {} nodes, height {}, at most {} occurrence(s) per path, \
             valid for loop parameter n >= {}",
            tree.nodes.len(),
            tree.height,
            tree.max_occurrences,
            tree.valid_for_n_at_least
        );
        println!(
            "  published per-orbit bound: {}",
            edge_occurrence_bound(&a, &b).unwrap()
        );
    }

    // the 222 -> 4 tree is small enough to print whole
    let a = parse_notation("222").unwrap();
    let b = parse_notation("4").unwrap();
    let tree = backtrack_tree((&a, &b), 1_000_000).unwrap();
    println!("\n{}", tree.to_dot());
}
