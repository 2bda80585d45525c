use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::category::{compose, is_symmetric};
use crate::constructors::{
    appendix_classical, from_classical_model, hom_set, lemma1_nonsignaling, lemma2_classical, lemma3_nonsignaling,
    ClassicalModel, PairDistribution, PairWeights,
};
use crate::correlation::{ordered_json, Correlation, KernelVector, Side};
use crate::error::{Error, Result};
use crate::linalg::{mat_vec, transpose};
use crate::rational::{format_rational, positive_part, Rational};
use crate::set::FiniteSet;

use super::{check_membership, in_category, left_nullspace_basis, right_nullspace_basis, CategoryTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessSide {
    /// `p ∘ q₊ = p ∘ q₋` with `q±` from `{0,1}`.
    Mono,
    /// `q₊ ∘ p = q₋ ∘ p` with `q±` into `{0,1}` or `{0,1,2}`.
    Epi,
}

/// The construction that produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessPath {
    /// Kernel vector at input `(0,1)`, point mass at `(x̂, x̂)` elsewhere.
    MonoPadding,
    /// Blocks from a pair distribution and its transpose.
    MonoClassical,
    /// Blocks from two pair distributions with matching marginals.
    MonoNonsignaling,
    /// `q(1,1|·) = w±`, `q(0,0|·) = 1 − w±`.
    EpiTwoBlock,
    /// Quarter-padded weights through the two-point range construction.
    EpiNonsignaling,
    /// Symmetric part of the kernel vector through the hidden-variable weights construction.
    EpiSymmetric,
    /// Skew part of the kernel vector through measures on `Hom(Y, {0,1,2})`.
    EpiSkew,
}

/// Two distinct morphisms with equal compositions against `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub side: WitnessSide,
    pub category: CategoryTag,
    pub path: WitnessPath,
    pub q_plus: Correlation,
    pub q_minus: Correlation,
    /// The rescaled kernel vector the construction used.
    pub kernel_vector: KernelVector,
}

impl WitnessPair {
    /// `q₊ ≠ q₋`, the compositions with `p` agree exactly and both lie in the category.
    pub fn verify(&self, p: &Correlation) -> bool {
        let composed = match self.side {
            WitnessSide::Mono => (compose(p, &self.q_plus), compose(p, &self.q_minus)),
            WitnessSide::Epi => (compose(&self.q_plus, p), compose(&self.q_minus, p)),
        };
        let equal = matches!(composed, (Ok(a), Ok(b)) if a == b);
        equal
            && self.q_plus != self.q_minus
            && in_category(&self.q_plus, self.category)
            && in_category(&self.q_minus, self.category)
    }

    pub fn to_json(&self) -> String {
        let correlation = |q: &Correlation| serde_json::to_value(q.to_file()).expect("json serializes");
        let kernel: Vec<String> = self.kernel_vector.entries.iter().map(format_rational).collect();
        ordered_json(&[
            ("side", serde_json::to_value(self.side).expect("json serializes")),
            ("category", self.category.to_string().into()),
            ("q_plus", correlation(&self.q_plus)),
            ("q_minus", correlation(&self.q_minus)),
            ("kernel_vector", kernel.into()),
        ])
    }
}

fn parts(v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let plus = v.iter().map(positive_part).collect();
    let minus = v.iter().map(|x| positive_part(&-x)).collect();
    (plus, minus)
}

fn scaled(v: &[Rational], factor: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * factor).collect()
}

fn total(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x)
}

fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero)
}

fn rows_of(v: &[Rational], n: usize) -> Vec<Vec<Rational>> {
    v.chunks(n).map(<[Rational]>::to_vec).collect()
}

fn pad_diagonal(v: &[Rational], n: usize, c: &Rational) -> Vec<Vec<Rational>> {
    let mut out = rows_of(v, n);
    for (y, row) in out.iter_mut().enumerate() {
        row[y] += c;
    }
    out
}

fn finish(
    p: &Correlation,
    side: WitnessSide,
    cat: CategoryTag,
    path: WitnessPath,
    (q_plus, q_minus): (Correlation, Correlation),
    kernel_vector: KernelVector,
) -> WitnessPair {
    let pair = WitnessPair {
        side,
        category: cat,
        path,
        q_plus,
        q_minus,
        kernel_vector,
    };
    assert!(pair.verify(p), "{path:?} construction must yield a valid witness");
    pair
}

fn check_kernel(p: &Correlation, v: &KernelVector, side: Side) -> Result<()> {
    let (base, matrix) = match side {
        Side::Right => (p.input_set(), p.matrix()),
        Side::Left => (p.output_set(), transpose(&p.matrix(), p.cols())),
    };
    if v.side != side || &v.base != base {
        return Err(Error::SetMismatch(format!("kernel vector over {} does not match {}", v.base, base)));
    }
    if v.is_zero() || !mat_vec(&matrix, &v.entries).iter().all(Zero::is_zero) {
        return Err(Error::UnsupportedShape("vector is not a nonzero nullspace element".into()));
    }
    Ok(())
}

/// Witness that `p` is not monic in `cat`, built from the first right nullspace basis vector.
pub fn mono_witness(p: &Correlation, cat: CategoryTag) -> Result<Option<WitnessPair>> {
    check_membership(p, cat)?;
    match right_nullspace_basis(p).into_iter().next() {
        Some(u) => mono_witness_from_kernel(p, cat, &u).map(Some),
        None => Ok(None),
    }
}

/// Mono witness from a chosen nonzero `u` with `P u = 0`.
pub fn mono_witness_from_kernel(p: &Correlation, cat: CategoryTag, u: &KernelVector) -> Result<WitnessPair> {
    check_membership(p, cat)?;
    check_kernel(p, u, Side::Right)?;
    let x = p.input_set().clone();
    let (plus, minus) = parts(&u.entries);
    let norm = total(&plus).recip();
    let (plus, minus) = (scaled(&plus, &norm), scaled(&minus, &norm));
    let kernel = KernelVector::new(Side::Right, x.clone(), scaled(&u.entries, &norm))?;
    let n = x.size();
    let distribution = |v: &[Rational]| PairDistribution::new(x.clone(), rows_of(v, n));

    let (path, pair) = match cat {
        CategoryTag::S => {
            let build = |v: &[Rational]| {
                let hat = PairDistribution::point(x.clone(), 0, 0);
                let d = distribution(v)?;
                Correlation::from_columns(FiniteSet::binary(), x.clone(), |a, b| {
                    let block = if (a, b) == (0, 1) { &d } else { &hat };
                    (0..x.squared_size()).map(|c| {
                        let (i, j) = x.pair_of(c);
                        block.get(i, j).clone()
                    })
                    .collect()
                })
            };
            (WitnessPath::MonoPadding, (build(&plus)?, build(&minus)?))
        }
        CategoryTag::HV | CategoryTag::Q => {
            if !is_symmetric(p) {
                return Err(Error::SymmetryRequired);
            }
            let build = |v: &[Rational]| lemma2_classical(&distribution(v)?);
            (WitnessPath::MonoClassical, (build(&plus)?, build(&minus)?))
        }
        CategoryTag::NS => (WitnessPath::MonoNonsignaling, mono_nonsignaling(&x, &plus, &minus)?),
    };
    Ok(finish(p, WitnessSide::Mono, cat, path, pair, kernel))
}

/// Nonsignaling mono witness from `u± ≥ 0` with `Σ u± = 1`.
///
/// When the row sums `θ±` of `u±` differ, the diagonal vector `w = diag(θ₊ − θ₋)` is itself in
/// the kernel and constant blocks `w±` give the pair; likewise for column sums. When both marginals
/// agree, `lemma1(u±, u₊ᵀ)` differ only in the `(0,1)` block.
fn mono_nonsignaling(x: &FiniteSet, plus: &[Rational], minus: &[Rational]) -> Result<(Correlation, Correlation)> {
    let n = x.size();
    let distribution = |v: &[Rational]| PairDistribution::new(x.clone(), rows_of(v, n));
    let (up, um) = (distribution(plus)?, distribution(minus)?);
    for (mp, mm) in [(up.row_sums(), um.row_sums()), (up.col_sums(), um.col_sums())] {
        let diff: Vec<Rational> = mp.iter().zip(&mm).map(|(a, b)| a - b).collect();
        if diff.iter().all(Zero::is_zero) {
            continue;
        }
        let (dp, dm) = parts(&diff);
        let norm = total(&dp).recip();
        let diagonal = |d: &[Rational]| {
            let mut rows = vec![vec![Rational::zero(); n]; n];
            for (y, v) in d.iter().enumerate() {
                rows[y][y] = v * &norm;
            }
            PairDistribution::new(x.clone(), rows)
        };
        let (wp, wm) = (diagonal(&dp)?, diagonal(&dm)?);
        return Ok((lemma1_nonsignaling(&wp, &wp)?, lemma1_nonsignaling(&wm, &wm)?));
    }
    let v = up.transpose();
    Ok((lemma1_nonsignaling(&up, &v)?, lemma1_nonsignaling(&um, &v)?))
}

/// Witness that `p` is not epic in `cat`, built from the first left nullspace basis vector.
pub fn epi_witness(p: &Correlation, cat: CategoryTag) -> Result<Option<WitnessPair>> {
    check_membership(p, cat)?;
    match left_nullspace_basis(p).into_iter().next() {
        Some(w) => epi_witness_from_kernel(p, cat, &w).map(Some),
        None => Ok(None),
    }
}

/// Epi witness from a chosen nonzero `w` with `w P = 0`.
pub fn epi_witness_from_kernel(p: &Correlation, cat: CategoryTag, w: &KernelVector) -> Result<WitnessPair> {
    check_membership(p, cat)?;
    check_kernel(p, w, Side::Left)?;
    let y = p.output_set().clone();
    let n = y.size();
    let kernel = |v: Vec<Rational>| KernelVector::new(Side::Left, y.clone(), v);

    match cat {
        CategoryTag::S => {
            let v = scaled(&w.entries, &max_abs(&w.entries).recip());
            let (plus, minus) = parts(&v);
            let build = |v: &[Rational]| {
                Correlation::from_columns(y.clone(), FiniteSet::binary(), |ya, yb| {
                    let t = &v[y.pair_index(ya, yb)];
                    vec![Rational::one() - t, Rational::zero(), Rational::zero(), t.clone()]
                })
            };
            let pair = (build(&plus)?, build(&minus)?);
            Ok(finish(p, WitnessSide::Epi, cat, WitnessPath::EpiTwoBlock, pair, kernel(v)?))
        }
        CategoryTag::NS => {
            let v = scaled(&w.entries, &(max_abs(&w.entries) * Rational::from_integer(4.into())).recip());
            let (plus, minus) = parts(&v);
            let quarter = Rational::new(1.into(), 4.into());
            let build = |v: &[Rational]| lemma3_nonsignaling(&PairWeights::new(y.clone(), pad_diagonal(v, n, &quarter))?);
            let pair = (build(&plus)?, build(&minus)?);
            Ok(finish(p, WitnessSide::Epi, cat, WitnessPath::EpiNonsignaling, pair, kernel(v)?))
        }
        CategoryTag::HV | CategoryTag::Q => {
            if !is_symmetric(p) {
                return Err(Error::SymmetryRequired);
            }
            let half = Rational::new(1.into(), 2.into());
            let (sym, skew): (Vec<Rational>, Vec<Rational>) = (0..n * n)
                .map(|c| {
                    let (a, b) = y.pair_of(c);
                    let (ab, ba) = (&w.entries[c], &w.entries[y.pair_index(b, a)]);
                    ((ab + ba) * &half, (ab - ba) * &half)
                })
                .unzip();
            if !sym.iter().all(Zero::is_zero) {
                let eps = Rational::new(1.into(), ((n * n + 1) as i64).into());
                let pad = Rational::new(1.into(), (n as i64).into()) - &eps;
                let v = scaled(&sym, &(eps / max_abs(&sym)));
                let (plus, minus) = parts(&v);
                let build = |v: &[Rational]| -> Result<Correlation> {
                    Ok(appendix_classical(&PairWeights::new(y.clone(), pad_diagonal(v, n, &pad))?)?.correlation)
                };
                let pair = (build(&plus)?, build(&minus)?);
                Ok(finish(p, WitnessSide::Epi, cat, WitnessPath::EpiSymmetric, pair, kernel(v)?))
            } else {
                let (mu_plus, mu_minus) = skew_measures(&y, &skew)?;
                let l1 = skew.iter().map(Signed::abs).fold(Rational::zero(), |acc, x| acc + x);
                let v = scaled(&skew, &(Rational::new(2.into(), 3.into()) / l1));
                let pair = (from_classical_model(&mu_plus)?, from_classical_model(&mu_minus)?);
                Ok(finish(p, WitnessSide::Epi, cat, WitnessPath::EpiSkew, pair, kernel(v)?))
            }
        }
    }
}

/// The measures `μ±` on `Hom(Y, {0,1,2})` for a nonzero skew vector `v` over `Y²`, after
/// normalizing to `‖v‖₁ = 2/3`:
/// `f` with `f(y₀) = 0`, `f(y₁) = 1`, else 2 gets `v±(y₀, y₁)`;
/// `f` with `f(y₀) = 1`, else 2 gets `Σ_{y'} v±(y₀, y')`;
/// `f` with `f(y₁) = 0`, else 2 gets `Σ_{y'} v±(y', y₁)`.
pub fn skew_measures(set: &FiniteSet, v: &[Rational]) -> Result<(ClassicalModel, ClassicalModel)> {
    let n = set.size();
    if v.len() != n * n {
        return Err(Error::ShapeMismatch {
            expected: format!("{} entries", n * n),
            found: format!("{} entries", v.len()),
        });
    }
    let skew = (0..n).all(|a| (0..n).all(|b| v[a * n + b] == -&v[b * n + a]));
    if !skew || v.iter().all(Zero::is_zero) {
        return Err(Error::UnsupportedShape("nonzero skew-symmetric vector required".into()));
    }
    let l1 = v.iter().map(Signed::abs).fold(Rational::zero(), |acc, x| acc + x);
    let v = scaled(v, &(Rational::new(2.into(), 3.into()) / l1));
    let (plus, minus) = parts(&v);
    let three = FiniteSet::range(3);
    let measure = |part: &[Rational]| {
        let weight = |f: &[usize]| -> Rational {
            let zeros: Vec<usize> = (0..n).filter(|&k| f[k] == 0).collect();
            let ones: Vec<usize> = (0..n).filter(|&k| f[k] == 1).collect();
            match (zeros.as_slice(), ones.as_slice()) {
                ([y0], [y1]) => part[y0 * n + y1].clone(),
                ([], [y0]) => (0..n).fold(Rational::zero(), |acc, k| acc + &part[y0 * n + k]),
                ([y1], []) => (0..n).fold(Rational::zero(), |acc, k| acc + &part[k * n + y1]),
                _ => Rational::zero(),
            }
        };
        ClassicalModel::new(set.clone(), three.clone(), hom_set(n, 3).map(|f| {
            let w = weight(&f);
            (f, w)
        }))
    };
    Ok((measure(&plus)?, measure(&minus)?))
}
