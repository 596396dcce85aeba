//! Symbolic backtracking over mature core-adjective transitions.
//!
//! Past maturity (order >= 16, core among the eight small multisets) the pair
//! (core R_i, set of elements newly appearing) determines the next core and
//! the top adjective m_i = n - 2k + 1 - Sum_{x in R_i}(x-1), written in terms
//! of the anchored n = |mu(S_i)|. Backtracking expands all symbolic
//! predecessor chains of a target edge; every chain dies either at the
//! maturity boundary or in the contradiction "this element is present before
//! its recorded first appearance", which yields per-path occurrence bounds
//! for the edge.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::multiset::{parse_notation, Multiset};
use crate::{Error, Result};

/// The eight mature cores.
pub fn mature_cores() -> Vec<Multiset> {
    ["", "2", "3", "4", "22", "23", "24", "222"]
        .iter()
        .map(|s| parse_notation(s).unwrap())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SymElem {
    /// A small literal value.
    Const(u64),
    /// The expression n - c (c may be negative).
    NMinus(i64),
}

impl fmt::Display for SymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymElem::Const(v) => write!(f, "{v}"),
            SymElem::NMinus(0) => write!(f, "n"),
            SymElem::NMinus(c) if *c > 0 => write!(f, "n-{c}"),
            SymElem::NMinus(c) => write!(f, "n+{}", -c),
        }
    }
}

/// Valid (core, k) table cells and the m offset: m = n - offset with
/// offset = 2k - 1 + Sum_{x in core}(x-1). The em-dash cells of the table are
/// exactly the (core, k) pairs with no incoming transition of arity k.
fn allowed_ks(core: &Multiset) -> Vec<u32> {
    match format!("{core}").as_str() {
        "" => vec![1, 2, 3],
        "2" => vec![0, 1, 2],
        "3" => vec![1, 2],
        "4" => vec![1, 2],
        "22" => vec![0, 1],
        "23" => vec![0, 1],
        "24" => vec![0],
        "222" => vec![0],
        _ => vec![],
    }
}

fn core_weight(core: &Multiset) -> i64 {
    core.expand().map(|x| x as i64 - 1).sum()
}

/// m_i for a mature generation with core R and k new appearances in the
/// previous generation, as an expression in the local n = |mu(S_i)|.
pub fn expected_top(r: &Multiset, k: u32) -> Result<SymElem> {
    if !allowed_ks(r).contains(&k) {
        return Err(Error::ImpossibleCell { core: r.to_string(), k });
    }
    Ok(SymElem::NMinus(2 * k as i64 - 1 + core_weight(r)))
}

/// The set of elements newly appearing in mu(S_j): some of the core constants
/// and/or the top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Appearances {
    pub consts: BTreeSet<u64>,
    pub top: bool,
}

impl Appearances {
    pub fn len(&self) -> u32 {
        self.consts.len() as u32 + u32::from(self.top)
    }
    pub fn is_empty(&self) -> bool {
        self.consts.is_empty() && !self.top
    }
}

impl fmt::Display for Appearances {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.consts.iter().map(|c| c.to_string()).collect();
        if self.top {
            parts.push("m".into());
        }
        write!(f, "{}", parts.join("&"))
    }
}

/// The mature transition: each distinct core value x keeps multiplicity
/// mult(x) plus one unless x is newly appearing; counts below 2 fall out of
/// the core; an old top re-enters as a 2. The new top is the 1-count plus one
/// and is never part of the core.
pub fn forward_core(r: &Multiset, w: &Appearances) -> Multiset {
    let mut next = Multiset::new();
    for (x, mult) in r.iter() {
        let c = mult + u64::from(!w.consts.contains(&x));
        if c >= 2 {
            next.insert(c, 1).unwrap();
        }
    }
    if !w.top {
        next.insert(2, 1).unwrap();
    }
    next
}

/// A symbolic mu(S_j): (n - |core| - 1) ones, small constant core, symbolic
/// top. `k` is the arity of the incoming transition (how many elements newly
/// appeared one step earlier), `drop` counts appearances between this
/// generation and the anchor, so the top is n - drop - (2k - 1 + weight).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymAdjState {
    pub core: Multiset,
    pub k: u32,
    pub drop: u32,
    pub top: SymElem,
}

impl SymAdjState {
    fn new(core: Multiset, k: u32, drop: u32) -> Result<Self> {
        let top = match expected_top(&core, k)? {
            SymElem::NMinus(c) => SymElem::NMinus(c + drop as i64),
            c => c,
        };
        Ok(SymAdjState { core, k, drop, top })
    }

    /// Values present in this mu (besides the 1s).
    fn values(&self) -> Vec<SymElem> {
        let mut v: Vec<SymElem> = self.core.iter().map(|(e, _)| SymElem::Const(e)).collect();
        v.push(self.top);
        v
    }

    pub fn render(&self) -> String {
        let mut s = String::from("1..1");
        for e in self.core.expand() {
            write!(s, "{e}").unwrap();
        }
        write!(s, "({})", self.top).unwrap();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LeafReason {
    /// The sequence matured at this generation; no mature predecessor is
    /// claimed. Always a possible end of the backward chain.
    MaturityBoundary,
    /// A value is present here although its unique first appearance was
    /// recorded at a later generation.
    Contradiction { value: SymElem, present_at_back: usize, appeared_at_back: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct BtNode {
    pub state: Option<SymAdjState>,
    /// Steps before the anchor generation.
    pub gen_back: usize,
    /// Appearance set on the transition from this node to its (later) parent.
    pub edge: Option<Appearances>,
    pub leaf: Option<LeafReason>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BacktrackTree {
    pub target: (Multiset, Multiset),
    pub nodes: Vec<BtNode>,
    pub root: usize,
    /// Height in backward steps (max gen_back over all nodes).
    pub height: usize,
    /// Maximum number of target-edge occurrences over all root-to-leaf paths.
    pub max_occurrences: usize,
    /// The validity threshold: conclusions hold for n >= this.
    pub valid_for_n_at_least: i64,
}

/// Expands every mature symbolic predecessor chain of a target edge that
/// consists of the new appearance of the top alone (222->4 or 24->22).
pub fn backtrack_tree(edge: (&Multiset, &Multiset), budget: usize) -> Result<BacktrackTree> {
    let target_w = Appearances { consts: BTreeSet::new(), top: true };
    if forward_core(edge.0, &target_w) != *edge.1 {
        return Err(Error::UnknownEdge(edge.0.to_string(), edge.1.to_string()));
    }
    let ks = allowed_ks(edge.0);
    if ks.len() != 1 {
        return Err(Error::UnknownEdge(edge.0.to_string(), edge.1.to_string()));
    }
    let root_state = SymAdjState::new(edge.0.clone(), ks[0], 0)?;
    // the anchor edge claims the new appearance of m_i at back-step 0
    let records = vec![(root_state.top, 0usize)];
    let mut tree = BacktrackTree {
        target: (edge.0.clone(), edge.1.clone()),
        nodes: vec![BtNode {
            state: Some(root_state.clone()),
            gen_back: 0,
            edge: None,
            leaf: None,
            children: vec![],
        }],
        root: 0,
        height: 0,
        max_occurrences: 0,
    valid_for_n_at_least: 0,
    };
    let cores = mature_cores();
    expand(&mut tree, 0, &root_state, &records, 1, &cores, budget)?;
    tree.height = tree.nodes.iter().map(|n| n.gen_back).max().unwrap_or(0);
    tree.max_occurrences = max_path_occurrences(&tree, tree.root, 1);
    // NMinus values must all exceed the constants (max const 4): n - c > 4
    let max_offset = tree
        .nodes
        .iter()
        .filter_map(|n| n.state.as_ref())
        .map(|s| match s.top {
            SymElem::NMinus(c) => c,
            SymElem::Const(_) => 0,
        })
        .max()
        .unwrap_or(0);
    tree.valid_for_n_at_least = max_offset + 5;
    Ok(tree)
}

fn push_node(tree: &mut BacktrackTree, parent: usize, node: BtNode, budget: usize) -> Result<usize> {
    if tree.nodes.len() >= budget {
        return Err(Error::NodeBudget { budget, got: tree.nodes.len() });
    }
    let idx = tree.nodes.len();
    tree.nodes.push(node);
    tree.nodes[parent].children.push(idx);
    Ok(idx)
}

fn expand(
    tree: &mut BacktrackTree,
    node_idx: usize,
    state: &SymAdjState,
    records: &[(SymElem, usize)],
    gen_back: usize,
    cores: &[Multiset],
    budget: usize,
) -> Result<()> {
    // the chain may simply stop here: the sequence matured at this generation
    push_node(
        tree,
        node_idx,
        BtNode {
            state: None,
            gen_back,
            edge: None,
            leaf: Some(LeafReason::MaturityBoundary),
            children: vec![],
        },
        budget,
    )?;

    for prev_core in cores {
        for w in appearance_sets(prev_core) {
            if w.len() != state.k || forward_core(prev_core, &w) != state.core {
                continue;
            }
            for k_prev in allowed_ks(prev_core) {
                let prev = SymAdjState::new(prev_core.clone(), k_prev, state.drop + state.k)?;
                // record the new appearances claimed on this transition
                let mut recs = records.to_vec();
                for &c in &w.consts {
                    recs.push((SymElem::Const(c), gen_back));
                }
                if w.top {
                    recs.push((prev.top, gen_back));
                }
                // a value present here whose recorded first appearance is
                // strictly later in time (smaller gen_back) is a contradiction
                let mut contradiction = None;
                'outer: for v in prev.values() {
                    for &(rv, rb) in &recs {
                        if rv == v && rb < gen_back {
                            contradiction = Some(LeafReason::Contradiction {
                                value: v,
                                present_at_back: gen_back,
                                appeared_at_back: rb,
                            });
                            break 'outer;
                        }
                    }
                }
                // nothing appears for the first time twice
                if contradiction.is_none() {
                    let mut seen = BTreeSet::new();
                    for &(rv, rb) in &recs {
                        if !seen.insert(rv) {
                            contradiction = Some(LeafReason::Contradiction {
                                value: rv,
                                present_at_back: gen_back,
                                appeared_at_back: rb,
                            });
                        }
                    }
                }
                let idx = push_node(
                    tree,
                    node_idx,
                    BtNode {
                        state: Some(prev.clone()),
                        gen_back,
                        edge: Some(w.clone()),
                        leaf: contradiction.clone(),
                        children: vec![],
                    },
                    budget,
                )?;
                if contradiction.is_none() {
                    expand(tree, idx, &prev, &recs, gen_back + 1, cores, budget)?;
                }
            }
        }
    }
    Ok(())
}

/// Every subset of [R] plus optionally the top.
fn appearance_sets(core: &Multiset) -> Vec<Appearances> {
    let distinct: Vec<u64> = core.iter().map(|(e, _)| e).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << distinct.len()) {
        let consts: BTreeSet<u64> = distinct
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        out.push(Appearances { consts: consts.clone(), top: false });
        out.push(Appearances { consts, top: true });
    }
    out
}

/// Counts occurrences of the target edge along each root-to-leaf path; the
/// anchor edge itself counts once.
fn max_path_occurrences(tree: &BacktrackTree, idx: usize, count: usize) -> usize {
    let node = &tree.nodes[idx];
    if node.children.is_empty() {
        return count;
    }
    node.children
        .iter()
        .map(|&c| {
            let child = &tree.nodes[c];
            let hit = match (&child.state, &child.edge) {
                (Some(s), Some(w)) => {
                    w.top
                        && w.consts.is_empty()
                        && s.core == tree.target.0
                        && node.state.as_ref().map(|p| &p.core) == Some(&tree.target.1)
                }
                _ => false,
            };
            max_path_occurrences(tree, c, count + usize::from(hit))
        })
        .max()
        .unwrap_or(count)
}

/// Per-path occurrence counts of an arbitrary mature edge inside a concrete
/// orbit's core trajectory, for the empirical cross-check of the bounds.
pub fn count_edge_occurrences(cores_in_order: &[Multiset], edge: (&Multiset, &Multiset)) -> usize {
    cores_in_order
        .windows(2)
        .filter(|w| &w[0] == edge.0 && &w[1] == edge.1)
        .count()
}

/// The tabulated per-edge maxima for mature transitions.
pub fn edge_occurrence_bound(from: &Multiset, to: &Multiset) -> Result<u64> {
    let f = from.to_string();
    let t = to.to_string();
    let bound = match (f.as_str(), t.as_str()) {
        ("222", "3") | ("222", "4") | ("222", "23") => 1,
        ("24", "") => 1,
        ("24", "22") => 4,
        ("23", "2") | ("24", "2") => 2,
        ("23", "") => 1,
        ("22", "2") | ("22", "22") => 1,
        ("2", "") | ("3", "") | ("4", "") => 1,
        _ => return Err(Error::UnknownEdge(f, t)),
    };
    Ok(bound)
}

impl BacktrackTree {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph backtrack {\n  rankdir=TB;\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let (label, color) = match (&node.state, &node.leaf) {
                (Some(st), None) => (st.render(), "lightblue"),
                (Some(st), Some(LeafReason::Contradiction { value, .. })) => {
                    (format!("{}\\ncontradiction: {}", st.render(), value), "salmon")
                }
                (None, Some(LeafReason::MaturityBoundary)) => ("immature".to_string(), "gray"),
                _ => ("?".to_string(), "white"),
            };
            writeln!(s, "  n{i} [label=\"{label}\", style=filled, fillcolor={color}];").unwrap();
        }
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                let lbl = match &self.nodes[c].edge {
                    Some(w) if !w.is_empty() => format!(" [label=\"{w}\"]"),
                    Some(_) => String::new(),
                    None => " [style=dotted]".to_string(),
                };
                writeln!(s, "  n{i} -> n{c}{lbl};").unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(s: &str) -> Multiset {
        parse_notation(s).unwrap()
    }

    #[test]
    fn expected_top_table() {
        // the full table, m = n - offset
        let rows: [(&str, &[(u32, i64)]); 8] = [
            ("", &[(1, 1), (2, 3), (3, 5)]),
            ("2", &[(0, 0), (1, 2), (2, 4)]),
            ("3", &[(1, 3), (2, 5)]),
            ("4", &[(1, 4), (2, 6)]),
            ("22", &[(0, 1), (1, 3)]),
            ("23", &[(0, 2), (1, 4)]),
            ("24", &[(0, 3)]),
            ("222", &[(0, 2)]),
        ];
        for (core, cells) in rows {
            let r = ms(core);
            for &(k, off) in cells {
                assert_eq!(expected_top(&r, k).unwrap(), SymElem::NMinus(off), "{core} k={k}");
            }
            for k in 0..=3u32 {
                if !cells.iter().any(|&(ck, _)| ck == k) {
                    assert!(
                        matches!(expected_top(&r, k), Err(Error::ImpossibleCell { .. })),
                        "{core} k={k} should be impossible"
                    );
                }
            }
        }
    }

    /// The non-dash cells must cover every (core, k) pair reachable by a
    /// mature transition of arity k (derived from forward_core). The table
    /// keeps one conservative extra cell, (4, k=2), which no mature
    /// predecessor can actually produce.
    #[test]
    fn valid_cells_cover_incoming_arities() {
        for target in mature_cores() {
            let mut reachable: BTreeSet<u32> = BTreeSet::new();
            for prev in mature_cores() {
                for w in appearance_sets(&prev) {
                    if forward_core(&prev, &w) == target {
                        reachable.insert(w.len());
                    }
                }
            }
            let allowed: BTreeSet<u32> = allowed_ks(&target).into_iter().collect();
            assert!(reachable.is_subset(&allowed), "core {target}: {reachable:?} vs {allowed:?}");
            let mut extra: Vec<u32> = allowed.difference(&reachable).copied().collect();
            if target.to_string() == "4" {
                assert_eq!(extra, vec![2], "core 4 keeps the one conservative cell");
                extra.clear();
            }
            assert!(extra.is_empty(), "core {target}: unexpected extra cells {extra:?}");
        }
    }

    #[test]
    fn forward_matches_g_naive_without_appearances() {
        use crate::adjectives::g_naive;
        let none = Appearances { consts: BTreeSet::new(), top: false };
        for r in mature_cores() {
            assert_eq!(forward_core(&r, &none), g_naive(&r).unwrap(), "core {r}");
        }
    }

    #[test]
    fn tree_222_to_4() {
        let tree = backtrack_tree((&ms("222"), &ms("4")), 10_000).unwrap();
        assert_eq!(tree.max_occurrences, 1);
        assert!(tree.height <= 4, "height {}", tree.height);
        // paper's tree has 9 nodes; ours may differ in redundancy
        assert!(tree.nodes.len() < 40, "unexpectedly large: {}", tree.nodes.len());
        // every leaf has a reason, every non-leaf has children
        for n in &tree.nodes {
            assert!(n.leaf.is_some() || !n.children.is_empty());
        }
    }

    #[test]
    fn tree_24_to_22() {
        let tree = backtrack_tree((&ms("24"), &ms("22")), 1_000_000).unwrap();
        assert!(tree.max_occurrences <= 2, "occurrences {}", tree.max_occurrences);
        assert!(tree.height <= 14, "height {}", tree.height);
    }

    #[test]
    fn tree_rejects_other_edges() {
        assert!(backtrack_tree((&ms("22"), &ms("23")), 100).is_err());
    }

    #[test]
    fn occurrence_bounds_table() {
        assert_eq!(edge_occurrence_bound(&ms("24"), &ms("22")).unwrap(), 4);
        assert_eq!(edge_occurrence_bound(&ms("222"), &ms("3")).unwrap(), 1);
        assert_eq!(edge_occurrence_bound(&ms("23"), &ms("2")).unwrap(), 2);
        assert!(edge_occurrence_bound(&ms("2"), &ms("9")).is_err());
    }

    #[test]
    fn dot_export_is_wellformed() {
        let tree = backtrack_tree((&ms("222"), &ms("4")), 10_000).unwrap();
        let dot = tree.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("contradiction"));
        assert!(dot.contains("immature"));
    }
}
