//! Seeded generators of valid models and correlations.
//!
//! Every generator samples small integers on a grid and normalizes, so all
//! outputs are exact rationals. The same seed always gives the same output.

use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{GaussianRational, GaussianRationalMatrix};
use crate::correlation::{Correlation, DeterministicPair};
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::set::FiniteSet;

use super::classical::{from_classical_model, hom_set, ClassicalModel};
use super::lemmas::{lemma1_nonsignaling, lemma3_nonsignaling, PairDistribution, PairWeights};
use super::quantum::QuantumModel;
use super::from_deterministic_pair;

const GRID: i64 = 8;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomKind {
    Synchronous,
    Classical,
    Lemma1Ns,
    Lemma3Ns,
    DeterministicPair,
}

impl std::str::FromStr for RandomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "synchronous" => Ok(RandomKind::Synchronous),
            "classical" => Ok(RandomKind::Classical),
            "lemma1_ns" => Ok(RandomKind::Lemma1Ns),
            "lemma3_ns" => Ok(RandomKind::Lemma3Ns),
            "deterministic_pair" => Ok(RandomKind::DeterministicPair),
            other => Err(Error::Parse {
                location: "kind".into(),
                message: format!("unknown random kind `{other}`"),
            }),
        }
    }
}

/// Nonnegative grid integers scaled to sum to one; never all zero.
fn random_simplex_point(rng: &mut impl Rng, len: usize) -> Vec<Rational> {
    let mut raw: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=GRID)).collect();
    if raw.iter().all(|&v| v == 0) {
        raw[rng.gen_range(0..len)] = 1;
    }
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|v| rat(v, total)).collect()
}

pub fn random_pair_distribution(rng: &mut impl Rng, set: &FiniteSet) -> PairDistribution {
    let n = set.size();
    let flat = random_simplex_point(rng, n * n);
    PairDistribution::new(set.clone(), flat.chunks(n).map(<[_]>::to_vec).collect())
        .expect("normalized by construction")
}

/// A measure supported on up to four random functions.
pub fn random_classical_model(rng: &mut impl Rng, input: &FiniteSet, output: &FiniteSet) -> ClassicalModel {
    let support = rng.gen_range(1..=4);
    let functions: Vec<Vec<usize>> = (0..support)
        .map(|_| (0..input.size()).map(|_| rng.gen_range(0..output.size())).collect())
        .collect();
    let weights = random_simplex_point(rng, support);
    ClassicalModel::new(input.clone(), output.clone(), functions.into_iter().zip(weights))
        .expect("normalized by construction")
}

/// `(u, v)` with `v = t·uᵀ + (1 − t)·φ ⊗ θ`, which meets both marginal conditions.
pub fn random_lemma1_pair(rng: &mut impl Rng, set: &FiniteSet) -> (PairDistribution, PairDistribution) {
    let u = random_pair_distribution(rng, set);
    let t = rat(rng.gen_range(0..=GRID), GRID);
    let (theta, phi) = (u.row_sums(), u.col_sums());
    let ut = u.transpose();
    let n = set.size();
    let rows = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| &t * ut.get(a, b) + (Rational::one() - &t) * &phi[a] * &theta[b])
                .collect()
        })
        .collect();
    let v = PairDistribution::new(set.clone(), rows).expect("convex combination of distributions");
    (u, v)
}

/// Weights meeting the three two-point-range hypotheses; not necessarily symmetric.
pub fn random_lemma3_weights(rng: &mut impl Rng, set: &FiniteSet) -> PairWeights {
    let n = set.size();
    let diag: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(0..=GRID), GRID)).collect();
    let rows = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    if a == b {
                        return diag[a].clone();
                    }
                    let lo = (&diag[a] + &diag[b] - Rational::one()).max(Rational::zero());
                    let hi = diag[a].clone().min(diag[b].clone());
                    let s = rat(rng.gen_range(0..=GRID), GRID);
                    &lo + (hi - &lo) * s
                })
                .collect()
        })
        .collect();
    PairWeights::new(set.clone(), rows).expect("nonnegative by construction")
}

/// Symmetric weights meeting the three hypotheses of the hidden-variable two-point-range construction.
pub fn random_appendix_weights(rng: &mut impl Rng, set: &FiniteSet) -> PairWeights {
    let n = set.size();
    let denom = GRID * GRID;
    let mut w = vec![vec![Rational::zero(); n]; n];
    let mut budget = Rational::zero();
    for j in 0..n {
        for k in j + 1..n {
            let v = rat(rng.gen_range(0..=GRID), denom);
            budget += &v;
            w[j][k] = v.clone();
            w[k][j] = v;
        }
    }
    for j in 0..n {
        let slack = rat(rng.gen_range(0..=GRID), denom);
        budget += &slack;
        w[j][j] = (0..n).filter(|&k| k != j).fold(slack, |acc, k| acc + &w[j][k]);
    }
    // Hypothesis three reads Σ_{j<k} w + Σ slack ≤ 1; both sides scale together.
    if budget > Rational::one() {
        let scale = Rational::one() / budget;
        for v in w.iter_mut().flatten() {
            *v *= &scale;
        }
    }
    PairWeights::new(set.clone(), w).expect("nonnegative by construction")
}

/// Householder reflection `I − 2 v v* / (v* v)`, unitary and Hermitian.
fn householder(v: &[GaussianRational]) -> GaussianRationalMatrix {
    let d = v.len();
    let norm = v.iter().fold(Rational::zero(), |acc, z| acc + z.norm_sqr());
    let factor = Rational::from_integer(2.into()) / norm;
    let mut m = GaussianRationalMatrix::identity(d);
    for i in 0..d {
        for j in 0..d {
            let term = (&v[i] * &v[j].conj()).scale(&factor);
            let cur = m.get(i, j).clone();
            m.set(i, j, &cur - &term);
        }
    }
    m
}

fn random_unitary(rng: &mut impl Rng, d: usize) -> GaussianRationalMatrix {
    let mut u = GaussianRationalMatrix::identity(d);
    for _ in 0..2 {
        let v: Vec<GaussianRational> = loop {
            let v: Vec<GaussianRational> = (0..d)
                .map(|_| {
                    GaussianRational::new(
                        Rational::from_integer(rng.gen_range(-3i64..=3).into()),
                        Rational::from_integer(rng.gen_range(-3i64..=3).into()),
                    )
                })
                .collect();
            if v.iter().any(|z| !z.is_zero()) {
                break v;
            }
        };
        u = householder(&v).mul(&u);
    }
    u
}

/// Each input gets a random orthonormal basis whose vectors are assigned to random outputs.
pub fn random_quantum_model(rng: &mut impl Rng, input: &FiniteSet, output: &FiniteSet) -> QuantumModel {
    let d = rng.gen_range(1..=3);
    let pvm = (0..input.size())
        .map(|_| {
            let u = random_unitary(rng, d);
            let mut ops = vec![GaussianRationalMatrix::zeros(d); output.size()];
            let mut targets: Vec<usize> = (0..d).map(|_| rng.gen_range(0..output.size())).collect();
            targets.shuffle(rng);
            for (col, &y) in targets.iter().enumerate() {
                let mut proj = GaussianRationalMatrix::zeros(d);
                for i in 0..d {
                    for j in 0..d {
                        proj.set(i, j, u.get(i, col) * &u.get(j, col).conj());
                    }
                }
                ops[y] = ops[y].add(&proj);
            }
            ops
        })
        .collect();
    QuantumModel::new(input.clone(), output.clone(), d, pvm).expect("shapes agree")
}

fn random_synchronous(rng: &mut impl Rng, input: &FiniteSet, output: &FiniteSet) -> Correlation {
    let ny = output.size();
    Correlation::from_columns(input.clone(), output.clone(), |xa, xb| {
        if xa == xb {
            let diag = random_simplex_point(rng, ny);
            let mut col = vec![Rational::zero(); ny * ny];
            for (y, v) in diag.into_iter().enumerate() {
                col[y * ny + y] = v;
            }
            col
        } else {
            random_simplex_point(rng, ny * ny)
        }
    })
    .expect("columns are distributions")
}

/// Deterministic pair sending diagonal inputs to diagonal outputs.
fn random_deterministic(rng: &mut impl Rng, input: &FiniteSet, output: &FiniteSet) -> Result<Correlation> {
    let ny = output.size();
    let images: Vec<(usize, usize)> = (0..input.squared_size())
        .map(|c| {
            let (xa, xb) = input.pair_of(c);
            let ya = rng.gen_range(0..ny);
            let yb = if xa == xb { ya } else { rng.gen_range(0..ny) };
            (ya, yb)
        })
        .collect();
    let pair = DeterministicPair::from_fn(input.clone(), output.clone(), |xa, xb| images[input.pair_index(xa, xb)])?;
    from_deterministic_pair(&pair)
}

/// A random member of the requested class from `X` to `Y`.
pub fn random_correlation(kind: RandomKind, input: &FiniteSet, output: &FiniteSet, seed: u64) -> Result<Correlation> {
    let mut rng = rng_from_seed(seed);
    match kind {
        RandomKind::Synchronous => Ok(random_synchronous(&mut rng, input, output)),
        RandomKind::Classical => from_classical_model(&random_classical_model(&mut rng, input, output)),
        RandomKind::DeterministicPair => random_deterministic(&mut rng, input, output),
        RandomKind::Lemma1Ns => {
            if input.size() != 2 {
                return Err(Error::UnsupportedShape(format!(
                    "lemma1_ns needs a two-point input set, got {}",
                    input.size()
                )));
            }
            let (u, v) = random_lemma1_pair(&mut rng, output);
            lemma1_nonsignaling(&u, &v)?.with_sets(input.clone(), output.clone())
        }
        RandomKind::Lemma3Ns => {
            if output.size() != 2 || input.size() < 2 {
                return Err(Error::UnsupportedShape(format!(
                    "lemma3_ns needs a two-point output set and at least two inputs, got {} and {}",
                    output.size(),
                    input.size()
                )));
            }
            let w = random_lemma3_weights(&mut rng, input);
            lemma3_nonsignaling(&w)?.with_sets(input.clone(), output.clone())
        }
    }
}

/// Every function `X → Y` with probability `1/|Y|^|X|`.
pub fn uniform_classical_model(input: &FiniteSet, output: &FiniteSet) -> ClassicalModel {
    let fs: Vec<Vec<usize>> = hom_set(input.size(), output.size()).collect();
    let w = rat(1, fs.len() as i64);
    ClassicalModel::new(input.clone(), output.clone(), fs.into_iter().map(|f| (f, w.clone())))
        .expect("uniform weights sum to one")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{appendix_classical, from_quantum_model};

    #[test]
    fn deterministic_in_seed() {
        let x = FiniteSet::binary();
        for kind in [
            RandomKind::Synchronous,
            RandomKind::Classical,
            RandomKind::Lemma1Ns,
            RandomKind::Lemma3Ns,
            RandomKind::DeterministicPair,
        ] {
            assert_eq!(
                random_correlation(kind, &x, &x, 1).unwrap(),
                random_correlation(kind, &x, &x, 1).unwrap()
            );
        }
    }

    #[test]
    fn lemma_kinds_reject_shapes() {
        let (two, three) = (FiniteSet::binary(), FiniteSet::range(3));
        assert!(matches!(
            random_correlation(RandomKind::Lemma1Ns, &three, &two, 0),
            Err(Error::UnsupportedShape(_))
        ));
        assert!(matches!(
            random_correlation(RandomKind::Lemma3Ns, &two, &three, 0),
            Err(Error::UnsupportedShape(_))
        ));
        assert!(random_correlation(RandomKind::Lemma1Ns, &two, &three, 0).is_ok());
        assert!(random_correlation(RandomKind::Lemma3Ns, &three, &two, 0).is_ok());
    }

    #[test]
    fn generated_models_are_valid() {
        let (x, y) = (FiniteSet::range(3), FiniteSet::binary());
        for seed in 0..30 {
            let mut rng = rng_from_seed(seed);
            from_quantum_model(&random_quantum_model(&mut rng, &x, &y)).unwrap();
            appendix_classical(&random_appendix_weights(&mut rng, &FiniteSet::range(4))).unwrap();
            lemma3_nonsignaling(&random_lemma3_weights(&mut rng, &x)).unwrap();
            let (u, v) = random_lemma1_pair(&mut rng, &x);
            lemma1_nonsignaling(&u, &v).unwrap();
        }
    }

    #[test]
    fn uniform_model() {
        let m = uniform_classical_model(&FiniteSet::binary(), &FiniteSet::binary());
        assert_eq!(m.weights().len(), 4);
    }
}
