//! Correlations with a two-point domain or a two-point range.

use num::{One, Signed, Zero};

use crate::boole::{intersections_to_atoms, weight2_vector, BooleVector};
use crate::correlation::Correlation;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::FiniteSet;

use super::classical::{from_classical_model, ClassicalModel};

fn square(set: &FiniteSet, rows: Vec<Vec<Rational>>) -> Result<Vec<Rational>> {
    let n = set.size();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch {
            expected: format!("{n}x{n} matrix"),
            found: format!("{} rows", rows.len()),
        });
    }
    Ok(rows.into_iter().flatten().collect())
}

/// A probability distribution `u(y_A, y_B)` on `Y²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDistribution {
    set: FiniteSet,
    u: Vec<Rational>,
}

impl PairDistribution {
    pub fn new(set: FiniteSet, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let u = square(&set, rows)?;
        let total = u.iter().fold(Rational::zero(), |acc, v| acc + v);
        if u.iter().any(Signed::is_negative) || !total.is_one() {
            return Err(Error::WeightsNotNormalized(total));
        }
        Ok(PairDistribution { set, u })
    }

    /// Point mass at `(a, b)`.
    pub fn point(set: FiniteSet, a: usize, b: usize) -> Self {
        let n = set.size();
        let mut u = vec![Rational::zero(); n * n];
        u[a * n + b] = Rational::one();
        PairDistribution { set, u }
    }

    pub fn set(&self) -> &FiniteSet {
        &self.set
    }

    pub fn get(&self, a: usize, b: usize) -> &Rational {
        &self.u[a * self.set.size() + b]
    }

    pub fn transpose(&self) -> Self {
        let n = self.set.size();
        let u = (0..n * n).map(|i| self.get(i % n, i / n).clone()).collect();
        PairDistribution {
            set: self.set.clone(),
            u,
        }
    }

    /// `θ(y) = Σ_{y'} u(y, y')`.
    pub fn row_sums(&self) -> Vec<Rational> {
        let n = self.set.size();
        (0..n)
            .map(|a| (0..n).fold(Rational::zero(), |acc, b| acc + self.get(a, b)))
            .collect()
    }

    /// `φ(y) = Σ_{y'} u(y', y)`.
    pub fn col_sums(&self) -> Vec<Rational> {
        self.transpose().row_sums()
    }
}

/// Nonnegative weights `w(x_A, x_B)` on `X²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWeights {
    set: FiniteSet,
    w: Vec<Rational>,
}

impl PairWeights {
    pub fn new(set: FiniteSet, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let w = square(&set, rows)?;
        if let Some(bad) = w.iter().find(|v| v.is_negative()) {
            return Err(Error::OutOfRange(bad.clone()));
        }
        Ok(PairWeights { set, w })
    }

    pub fn set(&self) -> &FiniteSet {
        &self.set
    }

    pub fn get(&self, a: usize, b: usize) -> &Rational {
        &self.w[a * self.set.size() + b]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.w.chunks(self.set.size()).map(<[_]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.set.size();
        (0..n).all(|a| (0..a).all(|b| self.get(a, b) == self.get(b, a)))
    }
}

fn diagonal(n: usize, d: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n * n];
    for (y, v) in d.iter().enumerate() {
        out[y * n + y] = v.clone();
    }
    out
}

/// Blocks `diag θ, u, v, diag φ` on inputs `(0,0), (0,1), (1,0), (1,1)`.
fn two_point_domain(u: &PairDistribution, v: &PairDistribution, theta: &[Rational], phi: &[Rational]) -> Result<Correlation> {
    let n = u.set.size();
    let blocks = [diagonal(n, theta), u.u.clone(), v.u.clone(), diagonal(n, phi)];
    Correlation::from_columns(FiniteSet::binary(), u.set.clone(), |xa, xb| blocks[2 * xa + xb].clone())
}

/// Synchronous nonsignaling correlation from `{0,1}` to `Y` with `p(·|0,1) = u`, `p(·|1,0) = v`.
pub fn lemma1_nonsignaling(u: &PairDistribution, v: &PairDistribution) -> Result<Correlation> {
    if u.set != v.set {
        return Err(Error::SetMismatch(format!("u lives on {}, v on {}", u.set, v.set)));
    }
    let theta = u.row_sums();
    let phi = u.col_sums();
    for (condition, lhs, rhs) in [(1u8, &theta, v.col_sums()), (2, &phi, v.row_sums())] {
        if let Some(y) = (0..lhs.len()).find(|&y| lhs[y] != rhs[y]) {
            return Err(Error::MarginalMismatch { y, condition });
        }
    }
    two_point_domain(u, v, &theta, &phi)
}

/// Synchronous classical correlation from `{0,1}` to `Y` with `p(·|0,1) = u`, `p(·|1,0) = uᵀ`.
pub fn lemma2_classical(u: &PairDistribution) -> Result<Correlation> {
    two_point_domain(u, &u.transpose(), &u.row_sums(), &u.col_sums())
}

/// Synchronous nonsignaling correlation from `X` to `{0,1}` with `p(1,1|x_A,x_B) = w(x_A,x_B)`.
pub fn lemma3_nonsignaling(w: &PairWeights) -> Result<Correlation> {
    let x = &w.set;
    if x.size() < 2 {
        return Err(Error::DomainTooSmall);
    }
    let one = Rational::one();
    for xa in 0..x.size() {
        for xb in 0..x.size() {
            let (ab, aa, bb) = (w.get(xa, xb), w.get(xa, xa), w.get(xb, xb));
            let failed = if ab > aa {
                Some(1)
            } else if ab > bb {
                Some(2)
            } else if aa + bb > &one + ab {
                Some(3)
            } else {
                None
            };
            if let Some(condition) = failed {
                return Err(Error::ConditionViolated {
                    condition,
                    at: Some((xa, xb)),
                });
            }
        }
    }
    Ok(two_point_range(w))
}

fn two_point_range(w: &PairWeights) -> Correlation {
    Correlation::from_columns(w.set.clone(), FiniteSet::binary(), |xa, xb| {
        let (ab, aa, bb) = (w.get(xa, xb), w.get(xa, xa), w.get(xb, xb));
        vec![
            Rational::one() + ab - aa - bb,
            bb - ab,
            aa - ab,
            ab.clone(),
        ]
    })
    .expect("lemma hypotheses give a column-stochastic matrix")
}

/// Hidden-variable realization of symmetric pairwise weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixMeasure {
    /// Measure on `Hom(X, {0,1})`.
    pub model: ClassicalModel,
    /// Atom vector in bit order: atom `j` is the function with `f(x_k) = bit k of j`.
    pub atoms: BooleVector,
    pub correlation: Correlation,
}

/// Measure on `Hom(X, {0,1})` with `Pr(f(x_j) = f(x_k) = 1) = w(x_j, x_k)`, supported on
/// functions taking the value 1 at most twice.
pub fn appendix_classical(w: &PairWeights) -> Result<AppendixMeasure> {
    if !w.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = w.set.size();
    for j in 0..n {
        let off = (0..n)
            .filter(|&k| k != j)
            .fold(Rational::zero(), |acc, k| acc + w.get(j, k));
        if *w.get(j, j) < off {
            return Err(Error::ConditionViolated {
                condition: 2,
                at: Some((j, j)),
            });
        }
    }
    let diag = (0..n).fold(Rational::zero(), |acc, j| acc + w.get(j, j));
    let upper = (0..n).fold(Rational::one(), |acc, j| {
        (j + 1..n).fold(acc, |acc, k| acc + w.get(j, k))
    });
    if diag > upper {
        return Err(Error::ConditionViolated { condition: 3, at: None });
    }

    let reconstruction = intersections_to_atoms(&weight2_vector(&w.rows())?)?;
    assert!(reconstruction.feasible(), "hypotheses guarantee nonnegative atoms");
    let atoms = reconstruction.atoms;
    let mu = atoms.entries().iter().enumerate().map(|(j, p)| {
        let f: Vec<usize> = (0..n).map(|k| (j >> k) & 1).collect();
        (f, p.clone())
    });
    let model = ClassicalModel::new(w.set.clone(), FiniteSet::binary(), mu)?;
    let correlation = from_classical_model(&model)?;
    Ok(AppendixMeasure {
        model,
        atoms,
        correlation,
    })
}
