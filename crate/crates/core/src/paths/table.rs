use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    /// Number of starred arrows (equivalently, the τ⁻-power).
    Star,
    /// Path length.
    Length,
}

/// One nonzero entry: classes of degree `p` from vertex `i` to vertex `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub i: String,
    pub j: String,
    pub p: u32,
    pub dim: usize,
}

/// Dimensions indexed by `(i, j, p)`, the common output of all constructions.
///
/// Only nonzero entries are stored. Entries are ordered lexicographically by
/// `(i, j, p)` on the vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimTable {
    grading: Grading,
    entries: BTreeMap<(String, String, u32), usize>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    grading: Grading,
    entries: Vec<DimEntry>,
    total: usize,
}

impl Serialize for GradedDimTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableRepr { grading: self.grading, entries: self.entries().collect(), total: self.total() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedDimTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TableRepr::deserialize(d)?;
        let mut t = GradedDimTable::new(repr.grading);
        for e in repr.entries {
            t.add(&e.i, &e.j, e.p, e.dim);
        }
        if t.total() != repr.total {
            return Err(serde::de::Error::custom(format!(
                "total {} does not match the sum of entries {}",
                repr.total,
                t.total()
            )));
        }
        Ok(t)
    }
}

/// First entry where two tables differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDifference {
    pub i: String,
    pub j: String,
    pub p: u32,
    pub left: usize,
    pub right: usize,
}

impl fmt::Display for TableDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(i={}, j={}, p={}): {} vs {}", self.i, self.j, self.p, self.left, self.right)
    }
}

impl GradedDimTable {
    pub fn new(grading: Grading) -> Self {
        GradedDimTable { grading, entries: BTreeMap::new() }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Adds `dim` to the entry `(i, j, p)`.
    pub fn add(&mut self, i: &str, j: &str, p: u32, dim: usize) {
        if dim == 0 {
            return;
        }
        *self.entries.entry((i.to_string(), j.to_string(), p)).or_insert(0) += dim;
    }

    pub fn get(&self, i: &str, j: &str, p: u32) -> usize {
        self.entries.get(&(i.to_string(), j.to_string(), p)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = DimEntry> + '_ {
        self.entries.iter().map(|((i, j, p), &dim)| DimEntry { i: i.clone(), j: j.clone(), p: *p, dim })
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn degree_totals(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for ((_, _, p), d) in &self.entries {
            *out.entry(*p).or_insert(0) += d;
        }
        out
    }

    /// Entries of a single degree.
    pub fn degree(&self, p: u32) -> BTreeMap<(String, String), usize> {
        self.entries
            .iter()
            .filter(|((_, _, q), _)| *q == p)
            .map(|((i, j, _), d)| ((i.clone(), j.clone()), *d))
            .collect()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.keys().map(|k| k.2).max()
    }

    /// Keeps only degrees `<= p`.
    pub fn truncated(&self, p: u32) -> GradedDimTable {
        GradedDimTable {
            grading: self.grading,
            entries: self.entries.iter().filter(|(k, _)| k.2 <= p).map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }

    /// Lexicographically first `(i, j, p)` where the tables disagree.
    pub fn first_difference(&self, other: &GradedDimTable) -> Option<TableDifference> {
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (l, r) = (self.entries.get(k).copied().unwrap_or(0), other.entries.get(k).copied().unwrap_or(0));
            (l != r).then(|| TableDifference { i: k.0.clone(), j: k.1.clone(), p: k.2, left: l, right: r })
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }

    /// Aligned text rendering, one row per entry.
    pub fn to_text(&self) -> String {
        let rows: Vec<[String; 4]> = self
            .entries()
            .map(|e| [e.p.to_string(), e.i, e.j, e.dim.to_string()])
            .collect();
        let header = [
            match self.grading {
                Grading::Star => "p".to_string(),
                Grading::Length => "len".to_string(),
            },
            "i".to_string(),
            "j".to_string(),
            "dim".to_string(),
        ];
        let mut widths = header.clone().map(|h| h.len());
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |r: &[String; 4]| {
            r.iter().zip(widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
        };
        let mut out = line(&header);
        out.push('\n');
        for r in &rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out.push_str(&format!("total {}\n", self.total()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> GradedDimTable {
        let mut t = GradedDimTable::new(Grading::Star);
        t.add("1", "1", 0, 1);
        t.add("2", "2", 0, 1);
        t.add("1", "2", 0, 1);
        t.add("2", "1", 1, 1);
        t
    }

    #[test]
    fn json_layout() {
        assert_eq!(
            a2().to_json(),
            r#"{"grading":"star","entries":[{"i":"1","j":"1","p":0,"dim":1},{"i":"1","j":"2","p":0,"dim":1},{"i":"2","j":"1","p":1,"dim":1},{"i":"2","j":"2","p":0,"dim":1}],"total":4}"#
        );
        let bad = r#"{"grading":"star","entries":[{"i":"1","j":"1","p":0,"dim":1}],"total":2}"#;
        assert!(serde_json::from_str::<GradedDimTable>(bad).is_err());
    }

    #[test]
    fn differences() {
        let mut b = a2();
        assert_eq!(a2().first_difference(&b), None);
        b.add("1", "1", 3, 2);
        b.add("2", "2", 0, 1);
        let d = a2().first_difference(&b).unwrap();
        assert_eq!((d.i.as_str(), d.j.as_str(), d.p, d.left, d.right), ("1", "1", 3, 0, 2));
    }

    #[test]
    fn text_rendering() {
        let text = a2().to_text();
        assert!(text.starts_with("p  i  j  dim\n"));
        assert!(text.ends_with("total 4\n"));
    }

    proptest! {
        #[test]
        fn json_round_trip(entries in proptest::collection::vec(("[1-4]", "[1-4]", 0u32..4, 1usize..5), 0..12)) {
            let mut t = GradedDimTable::new(Grading::Length);
            for (i, j, p, d) in entries {
                t.add(&i, &j, p, d);
            }
            let json = t.to_json();
            let back: GradedDimTable = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(&back, &t);
            prop_assert_eq!(back.to_json(), json);
        }
    }
}
