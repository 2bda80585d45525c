use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An ordered finite set of distinct string labels.
///
/// The index of a label is its position in the list. Two sets are equal only
/// when their label sequences are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    labels: Vec<String>,
}

impl FiniteSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySet);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(FiniteSet { labels })
    }

    /// The set `{"0", "1", ..., "n-1"}`.
    pub fn range(n: usize) -> Self {
        assert!(n >= 1, "a finite set needs at least one label");
        FiniteSet {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    /// The two-point set `{"0", "1"}`.
    pub fn binary() -> Self {
        Self::range(2)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Index of `(a, b)` in the squared set, A-major: `a * n + b`.
    pub fn pair_index(&self, a: usize, b: usize) -> usize {
        a * self.size() + b
    }

    /// Inverse of [`FiniteSet::pair_index`].
    pub fn pair_of(&self, index: usize) -> (usize, usize) {
        (index / self.size(), index % self.size())
    }

    pub fn squared_size(&self) -> usize {
        self.size() * self.size()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

impl Serialize for FiniteSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<String>::deserialize(deserializer)?;
        FiniteSet::new(labels).map_err(serde::de::Error::custom)
    }
}
