//! The generalized game on multiplicity functions: a state is a function
//! sigma from a ground set to counts, stored as finite overrides plus a
//! default value (so cofinite fibers stay representable). One step is
//!
//!   sigma'(x) = (|sigma^-1(x)| if x is significant, else 0)
//!             + (r if sigma(x) is significant, else 0)
//!
//! which specializes to the classic game, the nounless decimal game, the
//! self-titled game on N with infinity, higher noun-mention counts r, custom
//! significance sets, and ground sets with a negative floor.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::adjectives::partitions_with_min;
use crate::multiset::Multiset;
use crate::{Error, Result};

/// A count that may be infinite. Infinity absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ExtValue {
    Finite(i64),
    Infinity,
}

impl ExtValue {
    pub fn add(self, other: ExtValue) -> ExtValue {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinity,
        }
    }
    pub fn is_zero(self) -> bool {
        self == ExtValue::Finite(0)
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(v) => write!(f, "{v}"),
            ExtValue::Infinity => write!(f, "∞"),
        }
    }
}

impl From<i64> for ExtValue {
    fn from(v: i64) -> Self {
        ExtValue::Finite(v)
    }
}

/// A multiplicity function: finitely many overrides and a default image for
/// every other key. Canonical form never stores an override equal to the
/// default.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sigma {
    overrides: std::collections::BTreeMap<ExtValue, ExtValue>,
    default: ExtValue,
}

impl Sigma {
    pub fn new<I>(overrides: I, default: ExtValue) -> Self
    where
        I: IntoIterator<Item = (ExtValue, ExtValue)>,
    {
        let mut s = Sigma { overrides: overrides.into_iter().collect(), default };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        let d = self.default;
        self.overrides.retain(|_, v| *v != d);
    }

    pub fn get(&self, key: ExtValue) -> ExtValue {
        *self.overrides.get(&key).unwrap_or(&self.default)
    }

    pub fn default_value(&self) -> ExtValue {
        self.default
    }

    pub fn overrides(&self) -> impl Iterator<Item = (ExtValue, ExtValue)> + '_ {
        self.overrides.iter().map(|(k, v)| (*k, *v))
    }

    /// Sum of all override values (the order of the corresponding multiset
    /// when the default is 0 and all values are finite).
    pub fn finite_weight(&self) -> Option<i64> {
        let mut total = 0i64;
        for (_, v) in self.overrides() {
            match v {
                ExtValue::Finite(n) => total += n,
                ExtValue::Infinity => return None,
            }
        }
        Some(total)
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.overrides {
            write!(f, "{k}→{v}, ")?;
        }
        write!(f, "*→{}", self.default)
    }
}

impl Serialize for Sigma {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Sigma", 2)?;
        let pairs: Vec<(ExtValue, ExtValue)> = self.overrides().collect();
        st.serialize_field("overrides", &pairs)?;
        st.serialize_field("default", &self.default)?;
        st.end()
    }
}

/// The ground set the keys live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Domain {
    /// Positive naturals.
    Naturals,
    /// Naturals plus a point at infinity.
    NaturalsWithInfinity,
    /// The digits 0..base with counts wrapping mod base.
    ModularDigits(u64),
    /// Integers bounded below.
    IntegersWithFloor(i64),
}

/// The set I of insignificant values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Insignificant {
    Within(BTreeSet<ExtValue>),
    /// Everything except the listed values.
    Outside(BTreeSet<ExtValue>),
}

impl Insignificant {
    pub fn contains(&self, v: ExtValue) -> bool {
        match self {
            Insignificant::Within(s) => s.contains(&v),
            Insignificant::Outside(s) => !s.contains(&v),
        }
    }
    pub fn zero_only() -> Self {
        Insignificant::Within([ExtValue::Finite(0)].into())
    }
}

/// How to measure a fiber of sigma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CardinalityRule {
    /// Plain counting; a cofinite fiber is not representable.
    Count,
    /// Counting modulo the (finite) domain size.
    CountMod(u64),
    /// Plain counting with cofinite fibers measured as infinity.
    CofiniteIsInfinity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariationConfig {
    pub domain: Domain,
    pub insignificant: Insignificant,
    pub cardinality: CardinalityRule,
    /// How many times each present key mentions itself.
    pub r: i64,
}

impl VariationConfig {
    pub fn classic() -> Self {
        VariationConfig {
            domain: Domain::Naturals,
            insignificant: Insignificant::zero_only(),
            cardinality: CardinalityRule::Count,
            r: 1,
        }
    }
    pub fn stig() -> Self {
        VariationConfig {
            domain: Domain::NaturalsWithInfinity,
            insignificant: Insignificant::zero_only(),
            cardinality: CardinalityRule::CofiniteIsInfinity,
            r: 1,
        }
    }
    pub fn nounless10() -> Self {
        VariationConfig {
            domain: Domain::ModularDigits(10),
            insignificant: Insignificant::Within(BTreeSet::new()),
            cardinality: CardinalityRule::CountMod(10),
            r: 0,
        }
    }
    /// Classic rules but every present key mentions itself r times.
    pub fn oeig(r: i64) -> Self {
        VariationConfig { r, ..VariationConfig::classic() }
    }
    /// Classic rules with significance restricted to the given values.
    pub fn significance<I: IntoIterator<Item = i64>>(significant: I) -> Self {
        VariationConfig {
            insignificant: Insignificant::Outside(
                significant.into_iter().map(ExtValue::Finite).collect(),
            ),
            ..VariationConfig::classic()
        }
    }
    pub fn floor(min: i64) -> Self {
        VariationConfig { domain: Domain::IntegersWithFloor(min), ..VariationConfig::classic() }
    }
}

/// The multiplicity function of a multiset: its entries as overrides over a
/// default of 0.
pub fn sigma_from_multiset(s: &Multiset) -> Sigma {
    Sigma::new(
        s.iter().map(|(e, c)| (ExtValue::Finite(e as i64), ExtValue::Finite(c as i64))),
        ExtValue::Finite(0),
    )
}

/// The state describing "every positive natural appears once": 0 and
/// infinity appear zero times, everything else once.
pub fn stig_nplus_seed() -> Sigma {
    Sigma::new(
        [
            (ExtValue::Finite(0), ExtValue::Finite(0)),
            (ExtValue::Infinity, ExtValue::Finite(0)),
        ],
        ExtValue::Finite(1),
    )
}

/// |sigma^-1(x)|, measured by the config's cardinality rule. `histogram`
/// counts override values, so each fiber lookup is a single probe.
fn fiber_size(
    s: &Sigma,
    histogram: &std::collections::BTreeMap<ExtValue, i64>,
    x: ExtValue,
    cfg: &VariationConfig,
) -> Result<ExtValue> {
    let finite: i64 = histogram.get(&x).copied().unwrap_or(0);
    if x != s.default_value() {
        return Ok(match cfg.cardinality {
            CardinalityRule::CountMod(base) => ExtValue::Finite(finite.rem_euclid(base as i64)),
            _ => ExtValue::Finite(finite),
        });
    }
    // x is the image of the default: the fiber covers all unlisted keys
    match cfg.cardinality {
        CardinalityRule::Count => Err(Error::Unrepresentable),
        CardinalityRule::CofiniteIsInfinity => Ok(ExtValue::Infinity),
        CardinalityRule::CountMod(base) => {
            let listed = s.overrides().count() as i64;
            Ok(ExtValue::Finite((finite + base as i64 - listed).rem_euclid(base as i64)))
        }
    }
}

/// One generalized inventory step.
pub fn variation_step(s: &Sigma, cfg: &VariationConfig) -> Result<Sigma> {
    let insig = |v: ExtValue| cfg.insignificant.contains(v);
    let r = ExtValue::Finite(cfg.r);

    // a generic key: nothing maps to it, and its own image is the default
    let new_default = if insig(s.default_value()) { ExtValue::Finite(0) } else { r };

    // only keys that are overridden or appear in the image can deviate
    let mut candidates: BTreeSet<ExtValue> = s.overrides().map(|(k, _)| k).collect();
    candidates.extend(s.overrides().map(|(_, v)| v));
    candidates.insert(s.default_value());
    if let Domain::ModularDigits(base) = cfg.domain {
        candidates = (0..base as i64).map(ExtValue::Finite).collect();
    }

    let mut histogram: std::collections::BTreeMap<ExtValue, i64> = Default::default();
    for (_, v) in s.overrides() {
        *histogram.entry(v).or_insert(0) += 1;
    }

    let mut overrides = Vec::new();
    for x in candidates {
        let a = if insig(x) { ExtValue::Finite(0) } else { fiber_size(s, &histogram, x, cfg)? };
        let b = if insig(s.get(x)) { ExtValue::Finite(0) } else { r };
        overrides.push((x, a.add(b)));
    }
    Ok(Sigma::new(overrides, new_default))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum VariationOutcome {
    Looped { preperiod: usize, period: usize },
    /// No repeat within the budget; flags whether the total weight grew
    /// strictly over the final quarter of the run.
    NoCycleWithin { budget: usize, monotone_growth: bool },
}

#[derive(Debug, Clone, Serialize)]
pub struct VariationOrbit {
    pub start: Sigma,
    pub outcome: VariationOutcome,
    /// States up to the repeat (or the whole budget when none).
    pub trace: Vec<Sigma>,
    pub loop_states: Vec<Sigma>,
}

/// Iterates the variation until the first repeated state or the budget runs
/// out (the latter is a reported outcome, not an error).
pub fn variation_orbit(s0: &Sigma, cfg: &VariationConfig, max_iters: usize) -> Result<VariationOrbit> {
    let mut seen: std::collections::HashMap<Sigma, usize> =
        std::collections::HashMap::from([(s0.clone(), 0)]);
    let mut states: Vec<Sigma> = vec![s0.clone()];
    for i in 0..max_iters {
        let next = variation_step(&states[i], cfg)?;
        if let Some(&first) = seen.get(&next) {
            let period = i + 1 - first;
            return Ok(VariationOrbit {
                start: s0.clone(),
                outcome: VariationOutcome::Looped { preperiod: first, period },
                loop_states: states[first..first + period].to_vec(),
                trace: states,
            });
        }
        seen.insert(next.clone(), i + 1);
        states.push(next);
    }
    let tail = max_iters / 4;
    let weights: Vec<Option<i64>> = states[states.len().saturating_sub(tail + 1)..]
        .iter()
        .map(|s| s.finite_weight())
        .collect();
    let monotone_growth = weights.len() > 1
        && weights.windows(2).all(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => b > a,
            _ => false,
        });
    Ok(VariationOrbit {
        start: s0.clone(),
        outcome: VariationOutcome::NoCycleWithin { budget: max_iters, monotone_growth },
        loop_states: vec![],
        trace: states,
    })
}

/// All multisets of order n with elements >= r totalling (r+1)n, as ascending
/// element lists (elements may be 0 when r = 0, which the positive-only
/// Multiset type cannot carry).
pub fn enumerate_tnr(n: u64, r: u64) -> Vec<Vec<u64>> {
    partitions_with_min((r + 1) * n, n, r)
}

/// Adds t - r to every element, mapping the order-n states for mention count
/// r bijectively onto those for mention count t.
pub fn tnr_shift(s: &[u64], r: u64, t: u64) -> Result<Vec<u64>> {
    if t < r {
        return Err(Error::LimitExceeded(format!("shift target {t} below source {r}")));
    }
    let n = s.len() as u64;
    let total: u64 = s.iter().sum();
    if s.iter().any(|&e| e < r) || total != (r + 1) * n {
        return Err(Error::Counterexample(format!(
            "{s:?} is not an order-{n} state for mention count {r}"
        )));
    }
    Ok(s.iter().map(|&e| e + (t - r)).collect())
}

/// Runs each seed to its verdict; divergence is heuristic (budget exhaustion
/// plus monotone weight growth) and labeled as such by the outcome type.
pub fn divergence_search(
    cfg: &VariationConfig,
    seeds: &[Sigma],
    budget: usize,
) -> Result<Vec<(Sigma, VariationOutcome)>> {
    seeds
        .iter()
        .map(|s| variation_orbit(s, cfg, budget).map(|o| (s.clone(), o.outcome)))
        .collect()
}

/// Every multiset of order 1..=max_order over elements min..=max, as sigmas.
pub fn enumerate_seeds(min: i64, max: i64, max_order: usize) -> Vec<Sigma> {
    let mut out = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    fn rec(out: &mut Vec<Sigma>, current: &mut Vec<i64>, from: i64, max: i64, left: usize) {
        if !current.is_empty() {
            let mut counts: std::collections::BTreeMap<i64, i64> = Default::default();
            for &e in current.iter() {
                *counts.entry(e).or_insert(0) += 1;
            }
            out.push(Sigma::new(
                counts.into_iter().map(|(k, v)| (ExtValue::Finite(k), ExtValue::Finite(v))),
                ExtValue::Finite(0),
            ));
        }
        if left == 0 {
            return;
        }
        for e in from..=max {
            current.push(e);
            rec(out, current, e, max, left - 1);
            current.pop();
        }
    }
    rec(&mut out, &mut current, min, max, max_order);
    out
}
