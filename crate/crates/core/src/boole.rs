//! Atom and intersection probabilities of `n` events, the triangular tensor-power
//! transforms between them, and the Boole-type bounds they imply.
//!
//! Index `j` of a length-`2ⁿ` vector encodes the subset `{k : bit k of j is 1}`
//! (little-endian). For atoms, `p_j` is the mass of the function `f_j` with
//! `f_j(x_k) = bit k of j`; for intersections, `w_j = Pr(∩_{k ∈ j} S_k)` with
//! `S_k = {f : f(x_k) = 1}`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::correlation::{json_error, ordered_json, parse_entry};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpretation {
    Atoms,
    Intersections,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleVector {
    n: usize,
    interpretation: Interpretation,
    entries: Vec<Rational>,
}

impl BooleVector {
    pub fn new(n: usize, interpretation: Interpretation, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != 1 << n {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries for n = {n}", 1usize << n),
                found: entries.len().to_string(),
            });
        }
        Ok(BooleVector {
            n,
            interpretation,
            entries,
        })
    }

    /// Infers `n` from the length, which must be a power of two.
    pub fn from_entries(interpretation: Interpretation, entries: Vec<Rational>) -> Result<Self> {
        let len = entries.len();
        if !len.is_power_of_two() {
            return Err(Error::ShapeMismatch {
                expected: "a power-of-two number of entries".into(),
                found: len.to_string(),
            });
        }
        Self::new(len.trailing_zeros() as usize, interpretation, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interpretation
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, j: usize) -> &Rational {
        &self.entries[j]
    }

    pub fn to_json(&self) -> String {
        ordered_json(&[
            ("n", self.n.into()),
            ("interpretation", serde_json::to_value(self.interpretation).expect("serializes")),
            (
                "entries",
                self.entries.iter().map(format_rational).collect::<Vec<_>>().into(),
            ),
        ])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct File {
            n: usize,
            interpretation: Interpretation,
            entries: Vec<String>,
        }
        let file: File = serde_json::from_str(text).map_err(json_error)?;
        let entries = file
            .entries
            .iter()
            .enumerate()
            .map(|(i, s)| parse_entry(s, &format!("entries[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.n, file.interpretation, entries)
    }
}

/// `p_j = μ(f_j)` for a measure given on all `2ⁿ` functions `X → {0,1}` in bit order.
pub fn measure_to_atoms(mu: &[Rational]) -> Result<BooleVector> {
    let total = mu.iter().fold(Rational::zero(), |acc, v| acc + v);
    if mu.iter().any(Signed::is_negative) || !total.is_one() {
        return Err(Error::WeightsNotNormalized(total));
    }
    BooleVector::from_entries(Interpretation::Atoms, mu.to_vec())
}

/// One factor of the tensor power per bit: `M = (1 1; 0 1)` adds, `N = (1 -1; 0 1)` subtracts.
fn triangular_passes(entries: &mut [Rational], n: usize, add: bool) {
    for bit in 0..n {
        let mask = 1 << bit;
        for j in 0..entries.len() {
            if j & mask == 0 {
                let upper = entries[j | mask].clone();
                if add {
                    entries[j] += upper;
                } else {
                    entries[j] -= upper;
                }
            }
        }
    }
}

/// `w⃗ = M^⊗n p⃗`.
pub fn atoms_to_intersections(p: &BooleVector) -> BooleVector {
    let mut entries = p.entries.clone();
    triangular_passes(&mut entries, p.n, true);
    BooleVector {
        n: p.n,
        interpretation: Interpretation::Intersections,
        entries,
    }
}

/// Result of inverting an intersection vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomReconstruction {
    pub atoms: BooleVector,
    /// Indices of negative atoms; empty iff some measure has these intersections.
    pub negative: Vec<usize>,
}

impl AtomReconstruction {
    pub fn feasible(&self) -> bool {
        self.negative.is_empty()
    }
}

/// `p⃗ = N^⊗n w⃗`.
pub fn intersections_to_atoms(w: &BooleVector) -> Result<AtomReconstruction> {
    if !w.entries[0].is_one() {
        return Err(Error::NotNormalizedAtEmptySet(w.entries[0].clone()));
    }
    let mut entries = w.entries.clone();
    triangular_passes(&mut entries, w.n, false);
    let negative = (0..entries.len()).filter(|&j| entries[j].is_negative()).collect();
    Ok(AtomReconstruction {
        atoms: BooleVector {
            n: w.n,
            interpretation: Interpretation::Atoms,
            entries,
        },
        negative,
    })
}

fn check_unit(v: &Rational) -> Result<()> {
    if v.is_negative() || *v > Rational::one() {
        return Err(Error::OutOfRange(v.clone()));
    }
    Ok(())
}

/// Range of `Pr(A ∩ B)` given `Pr(A) = a`, `Pr(B) = b`.
pub fn boole_pair_bounds(a: &Rational, b: &Rational) -> Result<(Rational, Rational)> {
    check_unit(a)?;
    check_unit(b)?;
    let lower = (a + b - Rational::one()).max(Rational::zero());
    let upper = a.clone().min(b.clone());
    Ok((lower, upper))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleBounds {
    pub lowers: [Rational; 4],
    pub uppers: [Rational; 4],
    pub feasible: bool,
}

impl TripleBounds {
    pub fn max_lower(&self) -> Rational {
        self.lowers.iter().max().cloned().expect("four lowers")
    }

    pub fn min_upper(&self) -> Rational {
        self.uppers.iter().min().cloned().expect("four uppers")
    }
}

/// Admissible range of the triple intersection `w₇` given symmetric pairwise weights on three points.
pub fn triple_bounds(w: &[Vec<Rational>]) -> Result<TripleBounds> {
    if w.len() != 3 || w.iter().any(|r| r.len() != 3) {
        return Err(Error::ShapeMismatch {
            expected: "3x3 weights".into(),
            found: format!("{} rows", w.len()),
        });
    }
    for row in w {
        for v in row {
            check_unit(v)?;
        }
    }
    for j in 0..3 {
        for k in 0..j {
            if w[j][k] != w[k][j] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let (w00, w11, w22) = (&w[0][0], &w[1][1], &w[2][2]);
    let (w01, w02, w12) = (&w[0][1], &w[0][2], &w[1][2]);
    let lowers = [
        Rational::zero(),
        w01 + w02 - w00,
        w01 + w12 - w11,
        w02 + w12 - w22,
    ];
    let uppers = [
        Rational::one() - w00 - w11 - w22 + w01 + w02 + w12,
        w01.clone(),
        w02.clone(),
        w12.clone(),
    ];
    let feasible = lowers.iter().max() <= uppers.iter().min();
    Ok(TripleBounds {
        lowers,
        uppers,
        feasible,
    })
}

/// Variable of the three-event inequality system, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    One,
    /// `w(x_j, x_k)` with `j ≤ k`.
    Pair(usize, usize),
    /// The triple intersection `w₇`.
    Triple,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::One => f.write_str("1"),
            Symbol::Pair(j, k) => write!(f, "w(x{j},x{k})"),
            Symbol::Triple => f.write_str("w7"),
        }
    }
}

pub type AffineForm = BTreeMap<Symbol, Rational>;

/// `lhs ≤ rhs`, with zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub lhs: AffineForm,
    pub rhs: AffineForm,
}

impl Inequality {
    /// `rhs − lhs`, which is `≥ 0` when the inequality holds.
    pub fn slack(&self) -> AffineForm {
        let mut out = self.rhs.clone();
        for (s, c) in &self.lhs {
            *out.entry(*s).or_insert_with(Rational::zero) -= c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn evaluate(form: &AffineForm, w: &[Vec<Rational>], w7: &Rational) -> Rational {
        form.iter().fold(Rational::zero(), |acc, (s, c)| {
            let v = match s {
                Symbol::One => Rational::one(),
                Symbol::Pair(j, k) => w[*j][*k].clone(),
                Symbol::Triple => w7.clone(),
            };
            acc + c * v
        })
    }
}

fn render_form(form: &AffineForm) -> String {
    if form.is_empty() {
        return "0".into();
    }
    form.iter()
        .map(|(s, c)| {
            let sign = if c.is_negative() { "-" } else { "+" };
            format!("{sign}{}·{s}", format_rational(&c.abs()))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≤ {}", render_form(&self.lhs), render_form(&self.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySystem {
    pub inequalities: Vec<Inequality>,
}

impl InequalitySystem {
    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    pub fn to_text(&self) -> String {
        self.inequalities.iter().map(|i| format!("{i}\n")).collect()
    }

    pub fn to_json(&self) -> String {
        let form = |f: &AffineForm| {
            let map: serde_json::Map<String, serde_json::Value> =
                f.iter().map(|(s, c)| (s.to_string(), format_rational(c).into())).collect();
            serde_json::Value::Object(map)
        };
        let list: Vec<serde_json::Value> = self
            .inequalities
            .iter()
            .map(|i| serde_json::json!({ "lhs": form(&i.lhs), "rhs": form(&i.rhs) }))
            .collect();
        serde_json::to_string_pretty(&list).expect("json serializes")
    }
}

fn form(terms: &[(Symbol, i64)]) -> AffineForm {
    let mut out = AffineForm::new();
    for &(s, c) in terms {
        *out.entry(s).or_insert_with(Rational::zero) += Rational::from_integer(c.into());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The sixteen inequalities `lower_i ≤ upper_j` on pairwise weights of three events.
pub fn generate_triple_inequalities() -> InequalitySystem {
    use Symbol::{One, Pair};
    let lowers = [
        form(&[]),
        form(&[(Pair(0, 0), -1), (Pair(0, 1), 1), (Pair(0, 2), 1)]),
        form(&[(Pair(1, 1), -1), (Pair(0, 1), 1), (Pair(1, 2), 1)]),
        form(&[(Pair(2, 2), -1), (Pair(0, 2), 1), (Pair(1, 2), 1)]),
    ];
    let uppers = [
        form(&[
            (One, 1),
            (Pair(0, 0), -1),
            (Pair(1, 1), -1),
            (Pair(2, 2), -1),
            (Pair(0, 1), 1),
            (Pair(0, 2), 1),
            (Pair(1, 2), 1),
        ]),
        form(&[(Pair(0, 1), 1)]),
        form(&[(Pair(0, 2), 1)]),
        form(&[(Pair(1, 2), 1)]),
    ];
    let inequalities = lowers
        .iter()
        .flat_map(|lhs| {
            uppers.iter().map(move |rhs| Inequality {
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            })
        })
        .collect();
    InequalitySystem { inequalities }
}

/// Intersection vector supported on subsets of size at most two.
pub fn weight2_vector(w: &[Vec<Rational>]) -> Result<BooleVector> {
    let n = w.len();
    if w.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch {
            expected: format!("{n}x{n} weights"),
            found: "ragged rows".into(),
        });
    }
    for j in 0..n {
        for k in 0..j {
            if w[j][k] != w[k][j] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    if let Some(v) = w.iter().flatten().find(|v| v.is_negative()) {
        return Err(Error::OutOfRange(v.clone()));
    }
    let mut entries = vec![Rational::zero(); 1 << n];
    entries[0] = Rational::one();
    for l in 0..n {
        entries[1 << l] = w[l][l].clone();
        for m in l + 1..n {
            entries[(1 << l) | (1 << m)] = w[l][m].clone();
        }
    }
    BooleVector::new(n, Interpretation::Intersections, entries)
}
