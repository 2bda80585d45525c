use std::collections::BTreeMap;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::correlation::{json_error, ordered_json, parse_entry, Correlation};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::set::FiniteSet;

use super::check_function;

/// All functions `{0..domain} → {0..codomain}` as index tuples, in lexicographic order.
pub fn hom_set(domain: usize, codomain: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = codomain.checked_pow(domain as u32).expect("hom-set size overflows");
    (0..total).map(move |mut k| {
        let mut f = vec![0; domain];
        for slot in f.iter_mut().rev() {
            *slot = k % codomain;
            k /= codomain;
        }
        f
    })
}

/// A probability measure on `Hom(X, Y)`; functions are keyed by their output-index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalModel {
    input: FiniteSet,
    output: FiniteSet,
    mu: BTreeMap<Vec<usize>, Rational>,
}

impl ClassicalModel {
    /// Zero weights are dropped.
    pub fn new(
        input: FiniteSet,
        output: FiniteSet,
        mu: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<Self> {
        let mut weights: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (f, w) in mu {
            check_function(&input, &output, &f)?;
            *weights.entry(f).or_insert_with(Rational::zero) += w;
        }
        let total = weights.values().fold(Rational::zero(), |acc, w| acc + w);
        if weights.values().any(Signed::is_negative) || total != Rational::from_integer(1.into()) {
            return Err(Error::WeightsNotNormalized(total));
        }
        weights.retain(|_, w| !w.is_zero());
        Ok(ClassicalModel {
            input,
            output,
            mu: weights,
        })
    }

    pub fn input_set(&self) -> &FiniteSet {
        &self.input
    }

    pub fn output_set(&self) -> &FiniteSet {
        &self.output
    }

    /// Support of the measure with its weights, in lexicographic order of functions.
    pub fn weights(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.mu
    }

    pub fn weight(&self, f: &[usize]) -> Rational {
        self.mu.get(f).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> String {
        let mu: serde_json::Map<String, serde_json::Value> = self
            .mu
            .iter()
            .map(|(f, w)| (format_function_key(f), format_rational(w).into()))
            .collect();
        ordered_json(&[
            ("input_set", serde_json::json!(self.input.labels())),
            ("output_set", serde_json::json!(self.output.labels())),
            ("mu", serde_json::Value::Object(mu)),
        ])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize, Serialize)]
        struct File {
            input_set: Vec<String>,
            output_set: Vec<String>,
            mu: BTreeMap<String, String>,
        }
        let file: File = serde_json::from_str(text).map_err(json_error)?;
        let input = FiniteSet::new(file.input_set)?;
        let output = FiniteSet::new(file.output_set)?;
        let mu = file
            .mu
            .iter()
            .map(|(k, v)| Ok((parse_function_key(k)?, parse_entry(v, &format!("mu[{k}]"))?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(input, output, mu)
    }
}

/// `"(0,1,1)"` for the function with output indices `[0, 1, 1]`.
pub fn format_function_key(f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn parse_function_key(key: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse {
        location: format!("mu key `{key}`"),
        message: "expected a tuple of output indices like (0,1)".into(),
    };
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    inner
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
        .collect()
}

/// `p(y_A, y_B | x_A, x_B) = Σ_f μ(f) 1{y_A = f(x_A)} 1{y_B = f(x_B)}`.
pub fn from_classical_model(model: &ClassicalModel) -> Result<Correlation> {
    let (input, output) = (model.input_set(), model.output_set());
    let (nrows, ncols) = (output.squared_size(), input.squared_size());
    let mut entries = vec![Rational::zero(); nrows * ncols];
    for (f, w) in model.weights() {
        for c in 0..ncols {
            let (xa, xb) = input.pair_of(c);
            let r = output.pair_index(f[xa], f[xb]);
            entries[r * ncols + c] += w;
        }
    }
    Correlation::from_flat(input.clone(), output.clone(), entries)
}
