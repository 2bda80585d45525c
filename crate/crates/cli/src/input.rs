//! Parsing of inline command-line values and input files.

use std::fs;
use std::path::Path;

use syncgames::rational::parse_rational;
use syncgames::{Error, FiniteSet, Rational, Result};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })
}

fn syntax(location: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.to_string(),
        message: message.into(),
    }
}

/// `a,b,c` as a set of labels.
pub fn labels(text: &str) -> Result<FiniteSet> {
    FiniteSet::new(text.split(',').map(str::trim))
}

/// Rows separated by `;`, entries by `,`: `1/2,0;0,1/2`.
pub fn matrix(text: &str, flag: &str) -> Result<Vec<Vec<Rational>>> {
    text.split(';')
        .map(|row| row.split(',').map(|v| parse_rational(v.trim()).map_err(|e| located(e, flag))).collect())
        .collect()
}

pub fn rational(text: &str, flag: &str) -> Result<Rational> {
    parse_rational(text.trim()).map_err(|e| located(e, flag))
}

fn located(err: Error, flag: &str) -> Error {
    match err {
        Error::Parse { message, .. } => syntax(flag, message),
        other => other,
    }
}

/// `x:y,x:y` pairs of labels.
pub fn function_map(text: &str) -> Result<Vec<(String, String)>> {
    text.split(',')
        .map(|item| {
            let (x, y) = item
                .split_once(':')
                .ok_or_else(|| syntax("--map", format!("expected `x:y`, found `{item}`")))?;
            Ok((x.trim().to_string(), y.trim().to_string()))
        })
        .collect()
}

type LabelPair = (String, String);

/// `xa,xb:ya,yb;…` pairs of label pairs.
pub fn pair_map(text: &str) -> Result<Vec<(LabelPair, LabelPair)>> {
    let pair = |s: &str| -> Result<LabelPair> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| syntax("--map", format!("expected `a,b`, found `{s}`")))?;
        Ok((a.trim().to_string(), b.trim().to_string()))
    };
    text.split(';')
        .map(|item| {
            let (from, to) = item
                .split_once(':')
                .ok_or_else(|| syntax("--map", format!("expected `xa,xb:ya,yb`, found `{item}`")))?;
            Ok((pair(from)?, pair(to)?))
        })
        .collect()
}

/// Distinct labels in numeric order when all are integers, lexicographic otherwise.
pub fn sorted_labels<'a>(values: impl IntoIterator<Item = &'a String>) -> Result<FiniteSet> {
    let mut distinct: Vec<&String> = values.into_iter().collect();
    distinct.sort();
    distinct.dedup();
    if distinct.iter().all(|v| v.parse::<i64>().is_ok()) {
        distinct.sort_by_key(|v| v.parse::<i64>().expect("checked"));
    }
    FiniteSet::new(distinct.into_iter().cloned())
}
