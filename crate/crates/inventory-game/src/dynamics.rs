//! The forward map, orbit iteration with exact cycle detection, and complete
//! preimage / ancestry enumeration.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::adjectives::{decompose, AdjectiveState};
use crate::multiset::Multiset;
use crate::{Error, Result};

/// f(S) = [S] + mu(S).
pub fn step(s: &Multiset) -> Multiset {
    s.support().add(&s.mu())
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEntry {
    pub generation: usize,
    pub order: u64,
    /// Max element; 0 for the empty multiset.
    pub height: u64,
    /// c_i = number of distinct adjectives.
    pub distinct_adjectives: u64,
    pub state: Option<AdjectiveState>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub start: Multiset,
    pub preperiod: usize,
    pub period: usize,
    /// The loop in orbit order, starting at generation `preperiod`.
    pub loop_states: Vec<Multiset>,
    /// Generations 0 ..= preperiod + period.
    pub trace: Vec<TraceEntry>,
}

fn trace_entry(generation: usize, s: &Multiset) -> TraceEntry {
    TraceEntry {
        generation,
        order: s.order(),
        height: s.max_elem().unwrap_or(0),
        distinct_adjectives: s.mu().distinct(),
        state: decompose(s).ok(),
    }
}

/// Iterates `step` until the first repeated state, recording everything seen.
/// A full seen-state map (not Floyd/Brent) because the minimal pre-period is a
/// deliverable and can dwarf the period.
pub fn orbit(s0: &Multiset, max_iters: usize) -> Result<OrbitReport> {
    let mut seen: HashMap<Multiset, usize> = HashMap::new();
    let mut states: Vec<Multiset> = vec![s0.clone()];
    seen.insert(s0.clone(), 0);
    for i in 0..max_iters {
        let next = step(&states[i]);
        if let Some(&first) = seen.get(&next) {
            let preperiod = first;
            let period = i + 1 - first;
            let trace = states.iter().enumerate().map(|(g, s)| trace_entry(g, s)).collect();
            return Ok(OrbitReport {
                start: s0.clone(),
                preperiod,
                period,
                loop_states: states[first..first + period].to_vec(),
                trace,
            });
        }
        seen.insert(next.clone(), i + 1);
        states.push(next);
    }
    Err(Error::OrbitBudget(max_iters))
}

/// All P with f(P) = S. The nouns [P] must be `order(S)/2` distinct elements
/// drawn from S; the remaining half of S is assigned to them as multiplicities.
pub fn preimages(s: &Multiset) -> BTreeSet<Multiset> {
    let mut out = BTreeSet::new();
    let order = s.order();
    if order % 2 != 0 {
        return out;
    }
    if order == 0 {
        out.insert(Multiset::new());
        return out;
    }
    let n = (order / 2) as usize;
    let distinct: Vec<u64> = s.iter().map(|(e, _)| e).collect();
    if distinct.len() < n {
        return out; // |S| > 2|[S]|: too few distinct elements to serve as nouns
    }
    let mut nouns: Vec<u64> = Vec::with_capacity(n);
    choose_nouns(s, &distinct, 0, n, &mut nouns, &mut out);
    out
}

fn choose_nouns(
    s: &Multiset,
    distinct: &[u64],
    from: usize,
    n: usize,
    nouns: &mut Vec<u64>,
    out: &mut BTreeSet<Multiset>,
) {
    if nouns.len() == n {
        let noun_set = Multiset::from_elems(nouns.iter().copied()).unwrap();
        let adjectives = s.subtract(&noun_set);
        if adjectives.order() as usize != n {
            return;
        }
        let mut assignment: Vec<(u64, u64)> = Vec::with_capacity(n);
        let mut remaining = adjectives;
        assign_adjectives(s, nouns, 0, &mut remaining, &mut assignment, out);
        return;
    }
    if distinct.len() - from < n - nouns.len() {
        return;
    }
    for i in from..distinct.len() {
        nouns.push(distinct[i]);
        choose_nouns(s, distinct, i + 1, n, nouns, out);
        nouns.pop();
    }
}

/// Distinct assignments of the adjective multiset onto the noun list; walking
/// distinct values only (not permutations of equal copies) deduplicates.
fn assign_adjectives(
    s: &Multiset,
    nouns: &[u64],
    idx: usize,
    remaining: &mut Multiset,
    assignment: &mut Vec<(u64, u64)>,
    out: &mut BTreeSet<Multiset>,
) {
    if idx == nouns.len() {
        let p = Multiset::from_pairs(assignment.iter().copied()).unwrap();
        if step(&p) == *s {
            out.insert(p);
        }
        return;
    }
    let values: Vec<u64> = remaining.iter().map(|(e, _)| e).collect();
    for v in values {
        remaining.remove(v, 1);
        assignment.push((nouns[idx], v));
        assign_adjectives(s, nouns, idx + 1, remaining, assignment, out);
        assignment.pop();
        remaining.insert(v, 1).unwrap();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TerminalReason {
    /// Odd order: f always doubles a support count.
    OddOrder,
    /// |S| > 2|[S]|: not enough distinct elements to serve as nouns.
    TooManyElements,
    /// Even order and enough nouns, but no assignment works.
    NoParents,
}

#[derive(Debug, Clone, Serialize)]
pub struct AncestryNode {
    pub state: Multiset,
    pub depth: usize,
    pub parents: Vec<Multiset>,
    pub terminal: Option<TerminalReason>,
    /// True for the deepest level, where parents were not expanded.
    pub frontier: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AncestryTree {
    pub root: Multiset,
    pub nodes: BTreeMap<Multiset, AncestryNode>,
}

impl AncestryTree {
    /// Nodes at a given depth (root is depth 0).
    pub fn level(&self, depth: usize) -> Vec<&Multiset> {
        self.nodes.values().filter(|n| n.depth == depth).map(|n| &n.state).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ancestry {\n  rankdir=BT;\n");
        for node in self.nodes.values() {
            let color = match node.terminal {
                Some(TerminalReason::OddOrder) => "orange",
                Some(TerminalReason::TooManyElements) => "orange",
                Some(TerminalReason::NoParents) => "gray",
                None => "lightblue",
            };
            let label = if node.state.is_empty() { "{}".to_string() } else { node.state.to_string() };
            writeln!(
                s,
                "  \"{}\" [label=\"{}\", style=filled, fillcolor={}];",
                node.state, label, color
            )
            .unwrap();
            for p in &node.parents {
                writeln!(s, "  \"{}\" -> \"{}\";", p, node.state).unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first closure of `preimages` up to `max_depth` levels above `root`.
pub fn ancestry_tree(root: &Multiset, max_depth: usize, node_budget: usize) -> Result<AncestryTree> {
    let mut tree = AncestryTree { root: root.clone(), nodes: BTreeMap::new() };
    let mut frontier = vec![root.clone()];
    tree.nodes.insert(
        root.clone(),
        AncestryNode { state: root.clone(), depth: 0, parents: vec![], terminal: None, frontier: max_depth == 0 },
    );
    for depth in 0..max_depth {
        let mut next = Vec::new();
        for state in frontier {
            let parents = preimages(&state);
            let terminal = if parents.is_empty() {
                Some(if state.order() % 2 == 1 {
                    TerminalReason::OddOrder
                } else if state.order() > 2 * state.distinct() {
                    TerminalReason::TooManyElements
                } else {
                    TerminalReason::NoParents
                })
            } else {
                None
            };
            let node = tree.nodes.get_mut(&state).unwrap();
            node.terminal = terminal;
            node.parents = parents.iter().cloned().collect();
            for p in parents {
                if !tree.nodes.contains_key(&p) {
                    if tree.nodes.len() >= node_budget {
                        return Err(Error::NodeBudget { budget: node_budget, got: tree.nodes.len() });
                    }
                    tree.nodes.insert(
                        p.clone(),
                        AncestryNode {
                            state: p.clone(),
                            depth: depth + 1,
                            parents: vec![],
                            terminal: None,
                            frontier: depth + 1 == max_depth,
                        },
                    );
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(tree)
}

/// Per-generation heights plus the first generation attaining the global max.
pub fn height_profile(report: &OrbitReport) -> (Vec<(usize, u64)>, usize) {
    let profile: Vec<(usize, u64)> = report.trace.iter().map(|t| (t.generation, t.height)).collect();
    let max = profile.iter().map(|&(_, h)| h).max().unwrap_or(0);
    let first = profile.iter().find(|&&(_, h)| h == max).map(|&(g, _)| g).unwrap_or(0);
    (profile, first)
}
