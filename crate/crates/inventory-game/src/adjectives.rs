//! Adjective-space dynamics: the padded map g_n on T_n*, cycle enumeration,
//! the core/top/ones decomposition, the idealized core map g_naive, and the
//! Deterioration relation tying the two together.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::multiset::Multiset;
use crate::{Error, Result};

/// mu_+(S): every multiplicity incremented by one.
pub fn mu_plus(s: &Multiset) -> Multiset {
    let mut out = Multiset::new();
    for (_, c) in s.iter() {
        out.insert(c + 1, 1).unwrap();
    }
    out
}

/// g_n(S) = mu_+(S) + (n - |mu_+(S)|){1}: pad with 1s up to order n.
pub fn g_n(s: &Multiset, n: u64) -> Result<Multiset> {
    let mp = mu_plus(s);
    let support = mp.order();
    if support > n {
        return Err(Error::NegativePadding { n, support });
    }
    let mut out = mp;
    out.insert(1, n - support).unwrap();
    Ok(out)
}

/// T_n*: multisets of order n whose elements sum to 2n, i.e. partitions of 2n
/// into exactly n parts >= 1.
pub fn enumerate_tn(n: u64) -> Result<Vec<Multiset>> {
    const LIMIT: u64 = 12;
    if n > LIMIT {
        return Err(Error::LimitExceeded(format!("n = {n} > {LIMIT}")));
    }
    Ok(partitions_with_min(2 * n, n, 1)
        .into_iter()
        .map(|v| Multiset::from_elems(v).unwrap())
        .collect())
}

/// All ascending lists of exactly `parts` elements, each >= `min`, summing to
/// `sum`.
pub(crate) fn partitions_with_min(sum: u64, parts: u64, min: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(sum: u64, parts: u64, min: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 0 {
            if sum == 0 {
                out.push(current.clone());
            }
            return;
        }
        // remaining parts are >= v each, so v can't exceed sum/parts rounded up
        let mut v = min;
        while v * parts <= sum {
            current.push(v);
            rec(sum - v, parts - 1, v, current, out);
            current.pop();
            v += 1;
        }
    }
    rec(sum, parts, min, &mut current, &mut out);
    out
}

/// Runs g_n from every member of T_n* and collects the distinct cycles, each
/// rotated so its lexicographically least member comes first.
pub fn find_gn_cycles(n: u64) -> Result<Vec<Vec<Multiset>>> {
    let tn = enumerate_tn(n)?;
    let mut cycles: BTreeSet<Vec<Multiset>> = BTreeSet::new();
    for start in &tn {
        let mut seen: BTreeMap<Multiset, usize> = BTreeMap::new();
        let mut states = vec![start.clone()];
        seen.insert(start.clone(), 0);
        loop {
            let next = g_n(states.last().unwrap(), n)?;
            if let Some(&first) = seen.get(&next) {
                let cycle = states[first..].to_vec();
                cycles.insert(canonical_rotation(cycle));
                break;
            }
            seen.insert(next.clone(), states.len());
            states.push(next);
        }
    }
    Ok(cycles.into_iter().collect())
}

fn canonical_rotation(cycle: Vec<Multiset>) -> Vec<Multiset> {
    let least = cycle.iter().enumerate().min_by_key(|&(_, m)| m).map(|(i, _)| i).unwrap_or(0);
    let mut rotated = cycle;
    rotated.rotate_left(least);
    rotated
}

/// The full functional graph of g_n on T_n* in DOT, cycle nodes doubled.
pub fn gn_graph_dot(n: u64) -> Result<String> {
    let tn = enumerate_tn(n)?;
    let cycles = find_gn_cycles(n)?;
    let in_cycle: BTreeSet<&Multiset> = cycles.iter().flatten().collect();
    let mut s = String::new();
    writeln!(s, "digraph g{n} {{").unwrap();
    for m in &tn {
        let shape = if in_cycle.contains(m) { "doublecircle" } else { "ellipse" };
        writeln!(s, "  \"{m}\" [shape={shape}];").unwrap();
    }
    for m in &tn {
        writeln!(s, "  \"{m}\" -> \"{}\";", g_n(m, n)?).unwrap();
    }
    s.push_str("}\n");
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjectiveState {
    /// Count of 1s among the adjectives (excluding the top if the top is 1).
    pub ones: u64,
    /// R_i: adjectives with the 1s and one copy of the maximum removed.
    pub core: Multiset,
    /// m_i = max mu(S).
    pub top: u64,
}

/// Splits mu(S) as ones{1} + core + {top}. When every adjective is 1 the split
/// degenerates to top = 1, empty core.
pub fn decompose(s: &Multiset) -> Result<AdjectiveState> {
    let mu = s.mu();
    let top = mu.max_elem().ok_or(Error::EmptyMultiset)?;
    let mut rest = mu;
    rest.remove(top, 1);
    let ones = rest.mult_of(1);
    rest.remove(1, ones);
    Ok(AdjectiveState { ones, core: rest, top })
}

impl AdjectiveState {
    /// Inverse of `decompose`: rebuilds mu(S).
    pub fn recompose(&self) -> Multiset {
        let mut m = self.core.clone();
        m.insert(1, self.ones).unwrap();
        m.insert(self.top, 1).unwrap();
        m
    }
}

/// g_naive(R) = {2} + mu_+(R): the idealized core-adjective step.
pub fn g_naive(r: &Multiset) -> Result<Multiset> {
    if r.contains(1) {
        return Err(Error::OneInCore);
    }
    let mut out = mu_plus(r);
    out.insert(2, 1).unwrap();
    Ok(out)
}

/// One round of Deterioration: decrement any nonempty sub-multiset (discarding
/// the 1s that result), and/or drop the maximum to a smaller value or remove
/// it entirely. The source itself is not included.
pub fn deteriorates(r: &Multiset) -> Result<BTreeSet<Multiset>> {
    if r.contains(1) {
        return Err(Error::OneInCore);
    }
    let mut out = BTreeSet::new();
    for after_op2 in op2_results(r) {
        // op2 alone, and op2 followed by op1
        out.insert(after_op2.clone());
        for d in op1_results(&after_op2) {
            out.insert(d);
        }
    }
    for d in op1_results(r) {
        out.insert(d);
    }
    out.remove(r);
    Ok(out)
}

/// Decrement every choice of nonempty sub-multiset, discarding resulting 1s.
fn op1_results(r: &Multiset) -> Vec<Multiset> {
    let entries: Vec<(u64, u64)> = r.iter().collect();
    let mut out = Vec::new();
    let mut picks: Vec<u64> = vec![0; entries.len()];
    fn rec(
        entries: &[(u64, u64)],
        idx: usize,
        picks: &mut Vec<u64>,
        out: &mut Vec<Multiset>,
    ) {
        if idx == entries.len() {
            if picks.iter().all(|&p| p == 0) {
                return; // must decrement something
            }
            let mut m = Multiset::new();
            for (i, &(e, c)) in entries.iter().enumerate() {
                m.insert(e, c - picks[i]).unwrap();
                if e - 1 >= 2 {
                    m.insert(e - 1, picks[i]).unwrap();
                }
            }
            out.push(m);
            return;
        }
        for p in 0..=entries[idx].1 {
            picks[idx] = p;
            rec(entries, idx + 1, picks, out);
        }
        picks[idx] = 0;
    }
    rec(&entries, 0, &mut picks, &mut out);
    out
}

/// Replace the maximum by a single value in [2, max), or discard it.
fn op2_results(r: &Multiset) -> Vec<Multiset> {
    let Some(max) = r.max_elem() else { return Vec::new() };
    let mut base = r.clone();
    base.remove(max, 1);
    let mut out = vec![base.clone()];
    for v in 2..max {
        let mut m = base.clone();
        m.insert(v, 1).unwrap();
        out.push(m);
    }
    out
}

/// Lemma test: candidate is the source itself or one Deterioration of it.
pub fn is_deteriorate(candidate: &Multiset, source: &Multiset) -> Result<bool> {
    if candidate == source {
        return Ok(true);
    }
    Ok(deteriorates(source)?.contains(candidate))
}

/// Every candidate core multiset: 1-free, at most 6 elements, Sum(r-1) <= 8,
/// plus the empty multiset. Exactly 64 of them.
pub fn the_64_list() -> Vec<Multiset> {
    let mut out: BTreeSet<Multiset> = BTreeSet::new();
    out.insert(Multiset::new());
    // elements are >= 2 and r-1 <= 8 each, so elements range over 2..=9
    fn rec(min: u64, weight_left: u64, size_left: u64, cur: &mut Vec<u64>, out: &mut BTreeSet<Multiset>) {
        for e in min..=9 {
            if e - 1 > weight_left || size_left == 0 {
                break;
            }
            cur.push(e);
            out.insert(Multiset::from_elems(cur.iter().copied()).unwrap());
            rec(e, weight_left - (e - 1), size_left - 1, cur, out);
            cur.pop();
        }
    }
    rec(2, 8, 6, &mut Vec::new(), &mut out);
    out.into_iter().collect()
}

/// DOT of g_naive (black) and Deterioration (dashed) edges over the 64-list,
/// ranked by Sum(r-1).
pub fn g_naive_graph_dot() -> String {
    let list = the_64_list();
    let weight = |m: &Multiset| m.expand().map(|e| e - 1).sum::<u64>();
    let mut by_weight: BTreeMap<u64, Vec<&Multiset>> = BTreeMap::new();
    for m in &list {
        by_weight.entry(weight(m)).or_default().push(m);
    }
    let name = |m: &Multiset| if m.is_empty() { "{}".to_string() } else { m.to_string() };
    let mut s = String::from("digraph g_naive {\n  rankdir=BT;\n");
    for (w, nodes) in &by_weight {
        write!(s, "  {{ rank=same; /* weight {w} */").unwrap();
        for m in nodes {
            write!(s, " \"{}\";", name(m)).unwrap();
        }
        s.push_str(" }\n");
    }
    let in_list: BTreeSet<&Multiset> = list.iter().collect();
    for m in &list {
        let g = g_naive(m).unwrap();
        if in_list.contains(&g) {
            writeln!(s, "  \"{}\" -> \"{}\";", name(m), name(&g)).unwrap();
        }
        for d in deteriorates(m).unwrap() {
            if in_list.contains(&d) {
                writeln!(s, "  \"{}\" -> \"{}\" [style=dashed, color=gray];", name(m), name(&d))
                    .unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}

/// The six order-n multisets one of which every T_n* cycle member must
/// contain, n >= 8: pad {2,n}, {3,n-1}, {2,2,n-1}, {2,3,n-2}, {2,2,2,n-2},
/// {2,2,3,n-3} with 1s to order n.
pub fn required_cycle_elements(n: u64) -> Result<Vec<Multiset>> {
    if n < 8 {
        return Err(Error::LimitExceeded(format!("n = {n} < 8")));
    }
    let bases: [&[u64]; 6] =
        [&[2, n], &[3, n - 1], &[2, 2, n - 1], &[2, 3, n - 2], &[2, 2, 2, n - 2], &[2, 2, 3, n - 3]];
    Ok(bases
        .iter()
        .map(|base| {
            let mut m = Multiset::from_elems(base.iter().copied()).unwrap();
            m.insert(1, n - base.len() as u64).unwrap();
            m
        })
        .collect())
}
