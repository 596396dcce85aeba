//! Canonical multiset of positive integers plus the digit-string codec.
//!
//! Storage is an ordered element -> multiplicity map, so equality and hashing
//! are structural and cheap — orbit cycle detection leans on that. Ordering is
//! lexicographic over the expanded, sorted element sequence (so {1,1} < {1,2}
//! < {2}), which is what sorted "digit string" order means.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Multiset {
    entries: BTreeMap<u64, u64>,
}

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from repeated elements; zero elements are rejected.
    pub fn from_elems<I: IntoIterator<Item = u64>>(elems: I) -> Result<Self> {
        let mut m = Self::new();
        for e in elems {
            m.insert(e, 1)?;
        }
        Ok(m)
    }

    /// Builds from (element, multiplicity) pairs.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Result<Self> {
        let mut m = Self::new();
        for (e, c) in pairs {
            m.insert(e, c)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, elem: u64, count: u64) -> Result<()> {
        if elem == 0 {
            return Err(Error::Parse { offset: 0, msg: "element 0 is not allowed".into() });
        }
        if count == 0 {
            return Ok(());
        }
        let slot = self.entries.entry(elem).or_insert(0);
        *slot = slot.checked_add(count).ok_or(Error::Overflow("multiplicity"))?;
        Ok(())
    }

    /// Removes up to `count` copies of `elem`; returns how many were removed.
    pub fn remove(&mut self, elem: u64, count: u64) -> u64 {
        match self.entries.get_mut(&elem) {
            None => 0,
            Some(c) if *c > count => {
                *c -= count;
                count
            }
            Some(c) => {
                let removed = *c;
                self.entries.remove(&elem);
                removed.min(count)
            }
        }
    }

    pub fn mult_of(&self, elem: u64) -> u64 {
        self.entries.get(&elem).copied().unwrap_or(0)
    }

    pub fn contains(&self, elem: u64) -> bool {
        self.entries.contains_key(&elem)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// |S|: number of elements counted with multiplicity.
    pub fn order(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Sum of all elements with multiplicity; loud on overflow.
    pub fn total(&self) -> Result<u64> {
        let mut t: u64 = 0;
        for (&e, &c) in &self.entries {
            let part = e.checked_mul(c).ok_or(Error::Overflow("total"))?;
            t = t.checked_add(part).ok_or(Error::Overflow("total"))?;
        }
        Ok(t)
    }

    pub fn max_elem(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    pub fn min_elem(&self) -> Option<u64> {
        self.entries.keys().next().copied()
    }

    /// Number of distinct elements.
    pub fn distinct(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&e, &c)| (e, c))
    }

    /// Elements expanded with multiplicity, ascending.
    pub fn expand(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().flat_map(|(&e, &c)| std::iter::repeat(e).take(c as usize))
    }

    /// [S]: each distinct element once.
    pub fn support(&self) -> Multiset {
        Multiset { entries: self.entries.keys().map(|&e| (e, 1)).collect() }
    }

    /// mu(S): the multiset of multiplicities.
    pub fn mu(&self) -> Multiset {
        let mut m = Multiset::new();
        for &c in self.entries.values() {
            m.insert(c, 1).expect("multiplicities are positive");
        }
        m
    }

    /// A + B: concatenation.
    pub fn add(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.insert(e, c).expect("concatenation overflow");
        }
        out
    }

    /// A^B: elements of A (with A's multiplicities) that occur in B.
    pub fn restrict(&self, other: &Multiset) -> Multiset {
        Multiset {
            entries: self
                .entries
                .iter()
                .filter(|(e, _)| other.contains(**e))
                .map(|(&e, &c)| (e, c))
                .collect(),
        }
    }

    /// A^{not B}: elements of A that do not occur in B.
    pub fn exclude(&self, other: &Multiset) -> Multiset {
        Multiset {
            entries: self
                .entries
                .iter()
                .filter(|(e, _)| !other.contains(**e))
                .map(|(&e, &c)| (e, c))
                .collect(),
        }
    }

    /// Multiset difference: removes other's copies from self, saturating.
    pub fn subtract(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.remove(e, c);
        }
        out
    }

    /// Sub-multiset test: every multiplicity of self fits inside other.
    pub fn subset_of(&self, other: &Multiset) -> bool {
        self.iter().all(|(e, c)| other.mult_of(e) >= c)
    }
}

/// Parses Integer Notation: digits are single elements, parenthesized runs are
/// one multi-digit element. "113777(12)(77)" is {1,1,3,7,7,7,12,77}.
pub fn parse_notation(text: &str) -> Result<Multiset> {
    let bytes = text.as_bytes();
    let mut m = Multiset::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'1'..=b'9' => {
                m.insert((bytes[i] - b'0') as u64, 1)?;
                i += 1;
            }
            b'0' => {
                return Err(Error::Parse { offset: i, msg: "element 0 is not allowed".into() })
            }
            b'(' => {
                let start = i;
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j >= bytes.len() || bytes[j] != b')' {
                    return Err(Error::Parse { offset: start, msg: "unclosed '('".into() });
                }
                if j == i + 1 {
                    return Err(Error::Parse { offset: start, msg: "empty parentheses".into() });
                }
                let val: u64 = text[i + 1..j].parse().map_err(|_| Error::Parse {
                    offset: i + 1,
                    msg: "element does not fit in u64".into(),
                })?;
                if val == 0 {
                    return Err(Error::Parse {
                        offset: i + 1,
                        msg: "element 0 is not allowed".into(),
                    });
                }
                m.insert(val, 1)?;
                i = j + 1;
            }
            b')' => return Err(Error::Parse { offset: i, msg: "unmatched ')'".into() }),
            c => {
                return Err(Error::Parse {
                    offset: i,
                    msg: format!("unexpected byte {:?}", c as char),
                })
            }
        }
    }
    Ok(m)
}

/// Canonical inverse of `parse_notation`: ascending, multi-digit parenthesized.
pub fn format_notation(m: &Multiset) -> String {
    let mut s = String::new();
    for e in m.expand() {
        if e < 10 {
            s.push((b'0' + e as u8) as char);
        } else {
            s.push('(');
            s.push_str(&e.to_string());
            s.push(')');
        }
    }
    s
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_notation(self))
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multiset({})", format_notation(self))
    }
}

impl Ord for Multiset {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on the expanded ascending element sequence. This is
        // NOT the derived BTreeMap order: {1,1} must sort before {1,2}.
        self.expand().cmp(other.expand())
    }
}

impl PartialOrd for Multiset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Multiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (e, c) in self.iter() {
            seq.serialize_element(&[e, c])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Multiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Multiset;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a sequence of [element, multiplicity] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Multiset, A::Error> {
                let mut m = Multiset::new();
                while let Some([e, c]) = seq.next_element::<[u64; 2]>()? {
                    m.insert(e, c).map_err(serde::de::Error::custom)?;
                }
                Ok(m)
            }
        }
        deserializer.deserialize_seq(V)
    }
}
