//! Composition of correlations and membership in the nested hom-sets
//! `Hom ⊆ Hom_HV ⊆ Hom_Q ⊆ Hom_NS ⊆ Hom^S`.

use num::{One, Zero};

use crate::constructors::{from_classical_model, hom_set, ClassicalModel};
use crate::correlation::{Correlation, DeterministicPair};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::simplex::find_feasible;

/// `(q ∘ p)(z | x) = Σ_y q(z | y) p(y | x)`, the matrix product `Q·P`.
pub fn compose(q: &Correlation, p: &Correlation) -> Result<Correlation> {
    if q.input_set() != p.output_set() {
        return Err(Error::SetMismatch(format!(
            "cannot compose: inner correlation outputs {} but outer takes {}",
            p.output_set(),
            q.input_set()
        )));
    }
    let (n_out, n_mid, n_in) = (q.rows(), q.cols(), p.cols());
    let mut entries = vec![Rational::zero(); n_out * n_in];
    for r in 0..n_out {
        for k in 0..n_mid {
            let a = q.get(r, k);
            if a.is_zero() {
                continue;
            }
            for c in 0..n_in {
                let b = p.get(k, c);
                if !b.is_zero() {
                    entries[r * n_in + c] += a * b;
                }
            }
        }
    }
    Correlation::from_flat(p.input_set().clone(), q.output_set().clone(), entries)
}

/// No mass on differing outputs when the inputs agree.
pub fn is_synchronous(p: &Correlation) -> bool {
    let (nx, ny) = (p.input_set().size(), p.output_set().size());
    (0..nx).all(|x| {
        (0..ny).all(|ya| (0..ny).all(|yb| ya == yb || p.at(ya, yb, x, x).is_zero()))
    })
}

/// Each party's marginal is independent of the other party's input.
pub fn is_nonsignaling(p: &Correlation) -> bool {
    let (nx, ny) = (p.input_set().size(), p.output_set().size());
    let alice = |ya: usize, xa: usize, xb: usize| {
        (0..ny).fold(Rational::zero(), |acc, yb| acc + p.at(ya, yb, xa, xb))
    };
    let bob = |yb: usize, xa: usize, xb: usize| {
        (0..ny).fold(Rational::zero(), |acc, ya| acc + p.at(ya, yb, xa, xb))
    };
    for y in 0..ny {
        for x in 0..nx {
            let (a0, b0) = (alice(y, x, 0), bob(y, 0, x));
            for other in 1..nx {
                if alice(y, x, other) != a0 || bob(y, other, x) != b0 {
                    return false;
                }
            }
        }
    }
    true
}

/// `p(y_A, y_B | x_A, x_B) = p(y_B, y_A | x_B, x_A)`.
pub fn is_symmetric(p: &Correlation) -> bool {
    let (nx, ny) = (p.input_set().size(), p.output_set().size());
    (0..nx).all(|xa| {
        (0..nx).all(|xb| {
            (0..ny).all(|ya| (0..ny).all(|yb| p.at(ya, yb, xa, xb) == p.at(yb, ya, xb, xa)))
        })
    })
}

/// The strategy pair when every column is a point mass.
pub fn is_deterministic(p: &Correlation) -> Option<DeterministicPair> {
    let out = p.output_set();
    let mut f_a = Vec::with_capacity(p.cols());
    let mut f_b = Vec::with_capacity(p.cols());
    for c in 0..p.cols() {
        let r = (0..p.rows()).find(|&r| p.get(r, c).is_one())?;
        let (ya, yb) = out.pair_of(r);
        f_a.push(ya);
        f_b.push(yb);
    }
    Some(DeterministicPair::new(p.input_set().clone(), out.clone(), f_a, f_b).expect("indices in range"))
}

/// Deterministic pair that is a single function applied by both parties.
pub fn as_function(p: &Correlation) -> Option<Vec<usize>> {
    let pair = is_deterministic(p)?;
    let nx = p.input_set().size();
    let f: Vec<usize> = (0..nx).map(|x| pair.apply(x, 0).0).collect();
    let consistent = (0..nx).all(|xa| (0..nx).all(|xb| pair.apply(xa, xb) == (f[xa], f[xb])));
    consistent.then_some(f)
}

/// A measure `μ` on `Hom(X, Y)` reproducing `p`, found by exact LP, or `None` if none exists.
pub fn classical_decomposition(p: &Correlation) -> Result<Option<ClassicalModel>> {
    if !is_synchronous(p) {
        return Err(Error::NotSynchronous);
    }
    let (input, output) = (p.input_set(), p.output_set());
    let (nx, ny) = (input.size(), output.size());
    // Only functions compatible with the support of p can carry weight.
    let functions: Vec<Vec<usize>> = hom_set(nx, ny)
        .filter(|f| (0..nx).all(|xa| (0..nx).all(|xb| !p.at(f[xa], f[xb], xa, xb).is_zero())))
        .collect();
    if functions.is_empty() {
        return Ok(None);
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for r in 0..p.rows() {
        let (ya, yb) = output.pair_of(r);
        for c in 0..p.cols() {
            let (xa, xb) = input.pair_of(c);
            let row: Vec<Rational> = functions
                .iter()
                .map(|f| {
                    if f[xa] == ya && f[xb] == yb {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            let rhs = p.get(r, c).clone();
            if rhs.is_zero() && row.iter().all(Zero::is_zero) {
                continue;
            }
            a.push(row);
            b.push(rhs);
        }
    }
    a.push(vec![Rational::one(); functions.len()]);
    b.push(Rational::one());
    let Some(mu) = find_feasible(&a, &b, functions.len()) else {
        return Ok(None);
    };
    let model = ClassicalModel::new(input.clone(), output.clone(), functions.into_iter().zip(mu))?;
    assert_eq!(&from_classical_model(&model)?, p, "LP witness re-expands to p");
    Ok(Some(model))
}

/// Membership flags of a correlation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLabel {
    pub synchronous: bool,
    pub nonsignaling: bool,
    pub symmetric: bool,
    pub deterministic: Option<DeterministicPair>,
    /// Decided only for synchronous correlations.
    pub classical: Option<ClassicalModel>,
}

impl ClassLabel {
    pub fn is_deterministic(&self) -> bool {
        self.deterministic.is_some()
    }

    pub fn is_classical(&self) -> bool {
        self.classical.is_some()
    }
}

pub fn classify(p: &Correlation) -> ClassLabel {
    let synchronous = is_synchronous(p);
    let classical = if synchronous {
        classical_decomposition(p).expect("synchronous checked")
    } else {
        None
    };
    let label = ClassLabel {
        synchronous,
        nonsignaling: is_nonsignaling(p),
        symmetric: is_symmetric(p),
        deterministic: is_deterministic(p),
        classical,
    };
    if label.is_classical() {
        assert!(label.synchronous && label.symmetric && label.nonsignaling);
    }
    label
}
