//! Enumerate all parents (preimages) of a state and build the full ancestry
//! tree above it. Run with: cargo run --example ancestry

use inventory_game::dynamics::{ancestry_tree, preimages};
use inventory_game::multiset::parse_notation;

fn main() {
    let s = parse_notation("112233").unwrap();
    println!("parents of {s}:");
    for p in preimages(&s) {
        println!("  {p}");
    }

    // three levels up: grandparents and whether each has parents of its own
    let tree = ancestry_tree(&s, 3, 100_000).unwrap();
    let grandparents = tree.level(2);
    let parentless = grandparents.iter().filter(|g| tree.nodes[**g].parents.is_empty()).count();
    println!(
        "\n{} grandparents, {} of them parentless (orbit sources)",
        grandparents.len(),
        parentless
    );

    // DOT export for graphviz: cargo run --example ancestry | tail -n +N | dot -Tsvg
    println!("\n{}", tree.to_dot());
}
