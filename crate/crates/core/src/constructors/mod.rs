//! Correlations built from generative descriptions: functions, deterministic
//! pairs, hidden-variable mixtures, tracial quantum models, and the two-point
//! domain/range constructions.

mod classical;
mod lemmas;
mod quantum;
mod random;

pub use classical::{format_function_key, from_classical_model, hom_set, parse_function_key, ClassicalModel};
pub use lemmas::{
    appendix_classical, lemma1_nonsignaling, lemma2_classical, lemma3_nonsignaling, AppendixMeasure,
    PairDistribution, PairWeights,
};
pub use quantum::{from_quantum_model, product_model, QuantumModel};
pub use random::{
    random_appendix_weights, random_classical_model, random_correlation, random_lemma1_pair,
    random_lemma3_weights, random_pair_distribution, random_quantum_model, rng_from_seed, uniform_classical_model, RandomKind,
};

use num::{One, Zero};

use crate::correlation::{Correlation, DeterministicPair};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::FiniteSet;

/// `p(y_A, y_B | x_A, x_B) = 1{y_A = f(x_A)} 1{y_B = f(x_B)}` for `f` given by output indices.
pub fn from_function(input: &FiniteSet, output: &FiniteSet, f: &[usize]) -> Result<Correlation> {
    check_function(input, output, f)?;
    let pair = DeterministicPair::from_fn(input.clone(), output.clone(), |xa, xb| (f[xa], f[xb]))?;
    from_deterministic_pair(&pair)
}

/// [`from_function`] with the map given as `(x, y)` label pairs.
pub fn from_labelled_function(
    input: &FiniteSet,
    output: &FiniteSet,
    map: &[(String, String)],
) -> Result<Correlation> {
    let mut f: Vec<Option<usize>> = vec![None; input.size()];
    for (x, y) in map {
        f[input.index_of(x)?] = Some(output.index_of(y)?);
    }
    let f = f
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::UnknownLabel(format!("no image for {}", input.label(i)))))
        .collect::<Result<Vec<_>>>()?;
    from_function(input, output, &f)
}

pub(crate) fn check_function(input: &FiniteSet, output: &FiniteSet, f: &[usize]) -> Result<()> {
    if f.len() != input.size() {
        return Err(Error::ShapeMismatch {
            expected: format!("function on {} points", input.size()),
            found: format!("{} values", f.len()),
        });
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= output.size()) {
        return Err(Error::UnknownLabel(format!("output index {bad}")));
    }
    Ok(())
}

/// `p(y_A, y_B | x_A, x_B) = 1{y_A = f_A(x_A, x_B)} 1{y_B = f_B(x_A, x_B)}`.
pub fn from_deterministic_pair(pair: &DeterministicPair) -> Result<Correlation> {
    let output = pair.output_set();
    Correlation::from_columns(pair.input_set().clone(), output.clone(), |xa, xb| {
        let (ya, yb) = pair.apply(xa, xb);
        let mut col = vec![Rational::zero(); output.squared_size()];
        col[output.pair_index(ya, yb)] = Rational::one();
        col
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn identity_function() {
        let x = FiniteSet::binary();
        assert_eq!(from_function(&x, &x, &[0, 1]).unwrap(), Correlation::identity(&x));
    }

    #[test]
    fn constant_function() {
        let x = FiniteSet::binary();
        let p = from_function(&x, &x, &[0, 0]).unwrap();
        for c in 0..4 {
            assert_eq!(p.column(c), vec![int(1), int(0), int(0), int(0)]);
        }
    }

    #[test]
    fn negation() {
        let x = FiniteSet::binary();
        let p = from_function(&x, &x, &[1, 0]).unwrap();
        assert_eq!(p.entry("1", "0", "0", "1").unwrap(), int(1));
        assert_eq!(p.entry("0", "1", "0", "1").unwrap(), int(0));
    }

    #[test]
    fn labelled_function_errors() {
        let x = FiniteSet::binary();
        let map = vec![("0".to_string(), "7".to_string())];
        assert_eq!(
            from_labelled_function(&x, &x, &map),
            Err(Error::UnknownLabel("7".into()))
        );
        assert!(from_function(&x, &x, &[0, 2]).is_err());
    }

    #[test]
    fn pair_reduces_to_function() {
        let x = FiniteSet::range(3);
        let y = FiniteSet::binary();
        let f = [0, 1, 1];
        let pair = DeterministicPair::from_fn(x.clone(), y.clone(), |a, b| (f[a], f[b])).unwrap();
        assert_eq!(from_deterministic_pair(&pair).unwrap(), from_function(&x, &y, &f).unwrap());
    }
}
