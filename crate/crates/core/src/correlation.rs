//! The correlation data model: column-stochastic matrices between squared finite sets.
//!
//! A correlation `p(y_A, y_B | x_A, x_B)` from `X` to `Y` is stored as a
//! `|Y|² × |X|²` matrix with row index `y_A·|Y| + y_B` and column index
//! `x_A·|X| + x_B`. Every value of [`Correlation`] is validated on
//! construction: entries are nonnegative and each column sums to exactly one.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::set::FiniteSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correlation {
    input: FiniteSet,
    output: FiniteSet,
    /// Row-major, `|Y|²` rows by `|X|²` columns.
    entries: Vec<Rational>,
}

impl Correlation {
    /// Validates a `|Y|² × |X|²` matrix given as rows.
    pub fn new(input: FiniteSet, output: FiniteSet, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let (nrows, ncols) = (output.squared_size(), input.squared_size());
        let found_cols = rows.first().map_or(0, Vec::len);
        if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch {
                expected: format!("{nrows}x{ncols}"),
                found: format!("{}x{}", rows.len(), found_cols),
            });
        }
        Self::from_flat(input, output, rows.into_iter().flatten().collect())
    }

    /// Validates a row-major flat matrix.
    pub fn from_flat(input: FiniteSet, output: FiniteSet, entries: Vec<Rational>) -> Result<Self> {
        let (nrows, ncols) = (output.squared_size(), input.squared_size());
        if entries.len() != nrows * ncols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", nrows * ncols),
                found: format!("{} entries", entries.len()),
            });
        }
        for (i, v) in entries.iter().enumerate() {
            if v.is_negative() {
                return Err(Error::NegativeEntry {
                    row: i / ncols,
                    col: i % ncols,
                });
            }
        }
        for col in 0..ncols {
            let sum = (0..nrows).fold(Rational::zero(), |acc, row| acc + &entries[row * ncols + col]);
            if !sum.is_one() {
                return Err(Error::ColumnSumNotOne { col, sum });
            }
        }
        Ok(Correlation {
            input,
            output,
            entries,
        })
    }

    /// Builds a correlation column by column from `f(x_A, x_B)`, which returns
    /// the distribution over `(y_A, y_B)` as a flat `|Y|²` vector.
    pub fn from_columns(
        input: FiniteSet,
        output: FiniteSet,
        mut column: impl FnMut(usize, usize) -> Vec<Rational>,
    ) -> Result<Self> {
        let (nrows, ncols) = (output.squared_size(), input.squared_size());
        let mut entries = vec![Rational::zero(); nrows * ncols];
        for c in 0..ncols {
            let (xa, xb) = input.pair_of(c);
            let col = column(xa, xb);
            if col.len() != nrows {
                return Err(Error::ShapeMismatch {
                    expected: format!("column of length {nrows}"),
                    found: format!("column of length {}", col.len()),
                });
            }
            for (r, v) in col.into_iter().enumerate() {
                entries[r * ncols + c] = v;
            }
        }
        Self::from_flat(input, output, entries)
    }

    /// `p(x_A', x_B' | x_A, x_B) = 1{x_A' = x_A} 1{x_B' = x_B}`.
    pub fn identity(set: &FiniteSet) -> Self {
        let n = set.squared_size();
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        Correlation {
            input: set.clone(),
            output: set.clone(),
            entries,
        }
    }

    pub fn input_set(&self) -> &FiniteSet {
        &self.input
    }

    pub fn output_set(&self) -> &FiniteSet {
        &self.output
    }

    pub fn rows(&self) -> usize {
        self.output.squared_size()
    }

    pub fn cols(&self) -> usize {
        self.input.squared_size()
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols() + col]
    }

    /// `p(y_A, y_B | x_A, x_B)` by indices.
    pub fn at(&self, ya: usize, yb: usize, xa: usize, xb: usize) -> &Rational {
        self.get(self.output.pair_index(ya, yb), self.input.pair_index(xa, xb))
    }

    /// `p(y_A, y_B | x_A, x_B)` by labels.
    pub fn entry(&self, ya: &str, yb: &str, xa: &str, xb: &str) -> Result<Rational> {
        let (ya, yb) = (self.output.index_of(ya)?, self.output.index_of(yb)?);
        let (xa, xb) = (self.input.index_of(xa)?, self.input.index_of(xb)?);
        Ok(self.at(ya, yb, xa, xb).clone())
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        (0..self.rows()).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.cols()).map(<[_]>::to_vec).collect()
    }

    pub fn flat(&self) -> &[Rational] {
        &self.entries
    }

    /// Same matrix, relabelled sets of the same sizes.
    pub fn with_sets(&self, input: FiniteSet, output: FiniteSet) -> Result<Self> {
        if input.size() != self.input.size() || output.size() != self.output.size() {
            return Err(Error::ShapeMismatch {
                expected: format!("sets of sizes {} and {}", self.input.size(), self.output.size()),
                found: format!("sets of sizes {} and {}", input.size(), output.size()),
            });
        }
        Ok(Correlation {
            input,
            output,
            entries: self.entries.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("correlation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CorrelationFile = serde_json::from_str(text).map_err(json_error)?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> CorrelationFile {
        CorrelationFile {
            input_set: self.input.labels().to_vec(),
            output_set: self.output.labels().to_vec(),
            entries: self
                .entries
                .chunks(self.cols())
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn from_file(file: CorrelationFile) -> Result<Self> {
        let input = FiniteSet::new(file.input_set)?;
        let output = FiniteSet::new(file.output_set)?;
        let rows = file
            .entries
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, s)| parse_entry(s, &format!("entries[{r}][{c}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(input, output, rows)
    }
}

/// On-disk form of a [`Correlation`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationFile {
    pub input_set: Vec<String>,
    pub output_set: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

pub(crate) fn json_error(err: serde_json::Error) -> Error {
    Error::Parse {
        location: format!("line {}, column {}", err.line(), err.column()),
        message: err.to_string(),
    }
}

/// Pretty JSON object with fields in the given order.
pub(crate) fn ordered_json(fields: &[(&str, serde_json::Value)]) -> String {
    let map: serde_json::Map<String, serde_json::Value> =
        fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("json serializes")
}

pub(crate) fn parse_entry(text: &str, location: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse {
            location: location.to_string(),
            message,
        },
        other => other,
    })
}

/// A deterministic strategy pair `F = (f_A, f_B) : X² → Y²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeterministicPair {
    input: FiniteSet,
    output: FiniteSet,
    /// Indexed by the pair index of `(x_A, x_B)`.
    f_a: Vec<usize>,
    f_b: Vec<usize>,
}

impl DeterministicPair {
    pub fn new(input: FiniteSet, output: FiniteSet, f_a: Vec<usize>, f_b: Vec<usize>) -> Result<Self> {
        let n = input.squared_size();
        if f_a.len() != n || f_b.len() != n {
            return Err(Error::ShapeMismatch {
                expected: format!("maps defined on all {n} input pairs"),
                found: format!("{} and {} values", f_a.len(), f_b.len()),
            });
        }
        if let Some(&bad) = f_a.iter().chain(&f_b).find(|&&y| y >= output.size()) {
            return Err(Error::UnknownLabel(format!("output index {bad}")));
        }
        Ok(DeterministicPair {
            input,
            output,
            f_a,
            f_b,
        })
    }

    /// Builds the pair from a map on index pairs.
    pub fn from_fn(
        input: FiniteSet,
        output: FiniteSet,
        map: impl Fn(usize, usize) -> (usize, usize),
    ) -> Result<Self> {
        let (f_a, f_b) = (0..input.squared_size())
            .map(|c| {
                let (xa, xb) = input.pair_of(c);
                map(xa, xb)
            })
            .unzip();
        Self::new(input, output, f_a, f_b)
    }

    pub fn input_set(&self) -> &FiniteSet {
        &self.input
    }

    pub fn output_set(&self) -> &FiniteSet {
        &self.output
    }

    /// `F(x_A, x_B)`.
    pub fn apply(&self, xa: usize, xb: usize) -> (usize, usize) {
        let c = self.input.pair_index(xa, xb);
        (self.f_a[c], self.f_b[c])
    }

    /// `F` as a map between pair indices of `X²` and `Y²`.
    pub fn pair_map(&self) -> Vec<usize> {
        (0..self.input.squared_size())
            .map(|c| self.output.pair_index(self.f_a[c], self.f_b[c]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A nullspace element, indexed over the squared `base` set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelVector {
    pub side: Side,
    pub base: FiniteSet,
    pub entries: Vec<Rational>,
}

impl KernelVector {
    pub fn new(side: Side, base: FiniteSet, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != base.squared_size() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", base.squared_size()),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(KernelVector { side, base, entries })
    }

    /// Entry at `(a, b)` of the squared base set.
    pub fn at(&self, a: usize, b: usize) -> &Rational {
        &self.entries[self.base.pair_index(a, b)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn set(labels: &[&str]) -> FiniteSet {
        FiniteSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn singleton_identity() {
        let x = set(&["0"]);
        let p = Correlation::new(x.clone(), x.clone(), vec![vec![int(1)]]).unwrap();
        assert_eq!(p, Correlation::identity(&x));
    }

    #[test]
    fn constant_correlation() {
        let p = Correlation::new(set(&["0", "1"]), set(&["0"]), vec![vec![int(1); 4]]).unwrap();
        assert_eq!(p.entry("0", "0", "0", "1").unwrap(), int(1));
    }

    #[test]
    fn column_sum_error() {
        let rows = vec![vec![rat(1, 2)], vec![rat(1, 3)], vec![int(0)], vec![int(0)]];
        let err = Correlation::new(set(&["0"]), set(&["0", "1"]), rows).unwrap_err();
        assert_eq!(err, Error::ColumnSumNotOne { col: 0, sum: rat(5, 6) });
    }

    #[test]
    fn negative_and_shape_errors() {
        let rows = vec![vec![rat(3, 2)], vec![rat(-1, 2)], vec![int(0)], vec![int(0)]];
        let err = Correlation::new(set(&["0"]), set(&["0", "1"]), rows).unwrap_err();
        assert_eq!(err, Error::NegativeEntry { row: 1, col: 0 });
        let err = Correlation::new(set(&["0"]), set(&["0", "1"]), vec![vec![int(1)]]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }

    #[test]
    fn identity_entries() {
        let p = Correlation::identity(&set(&["0", "1"]));
        assert_eq!(p.entry("0", "1", "0", "1").unwrap(), int(1));
        assert_eq!(p.entry("0", "1", "1", "0").unwrap(), int(0));
        assert_eq!(p.entry("0", "2", "1", "0"), Err(Error::UnknownLabel("2".into())));
        assert_eq!(p.rows(), 4);
    }

    #[test]
    fn json_roundtrip_and_normalization() {
        let p = Correlation::identity(&set(&["b", "a"]));
        let text = p.to_json();
        assert!(text.contains("\"input_set\""));
        assert_eq!(Correlation::from_json(&text).unwrap(), p);

        let text = r#"{"input_set":["0"],"output_set":["0","1"],
            "entries":[["2/4"],["0"],["0"],["1/2"]]}"#;
        let q = Correlation::from_json(text).unwrap();
        assert_eq!(q.get(0, 0), &rat(1, 2));
        assert!(q.to_json().contains("\"1/2\""));

        let text = r#"{"input_set":["0"],"output_set":["0","1"],
            "entries":[["3/2"],["-1/2"],["0"],["0"]]}"#;
        assert_eq!(
            Correlation::from_json(text),
            Err(Error::NegativeEntry { row: 1, col: 0 })
        );
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = Correlation::from_json("{").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let text = r#"{"input_set":["0"],"output_set":["0"],"entries":[["1/0"]]}"#;
        match Correlation::from_json(text).unwrap_err() {
            Error::Parse { location, .. } => assert_eq!(location, "entries[0][0]"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
