//! Sections, retractions, monomorphisms, epimorphisms, bimorphisms and
//! isomorphisms in the categories of synchronous correlations.
//!
//! Monomorphisms and epimorphisms are decided by the right and left nullspaces of
//! the stochastic matrix in all four categories; when one is nonzero, a pair of
//! distinct morphisms with equal compositions is constructed as a certificate.

mod inverse;
mod witness;

pub use inverse::{
    is_isomorphism, is_retraction, is_section, retraction_right_inverse, retraction_right_inverse_in,
    section_left_inverse, section_left_inverse_in,
};
pub use witness::{
    epi_witness, epi_witness_from_kernel, mono_witness, mono_witness_from_kernel, skew_measures, WitnessPair,
    WitnessPath, WitnessSide,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::category::{classical_decomposition, is_nonsignaling, is_symmetric, is_synchronous};
use crate::correlation::{Correlation, KernelVector, Side};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank, transpose};

/// `S` (synchronous), `NS` (nonsignaling), `Q` (quantum), `HV` (hidden variables).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CategoryTag {
    S,
    NS,
    Q,
    HV,
}

impl CategoryTag {
    pub const ALL: [CategoryTag; 4] = [CategoryTag::S, CategoryTag::NS, CategoryTag::Q, CategoryTag::HV];
}

impl fmt::Display for CategoryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CategoryTag::S => "S",
            CategoryTag::NS => "NS",
            CategoryTag::Q => "Q",
            CategoryTag::HV => "HV",
        };
        f.write_str(s)
    }
}

impl FromStr for CategoryTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(CategoryTag::S),
            "NS" => Ok(CategoryTag::NS),
            "Q" => Ok(CategoryTag::Q),
            "HV" => Ok(CategoryTag::HV),
            other => Err(Error::Parse {
                location: "category".into(),
                message: format!("unknown category `{other}` (expected S, NS, Q or HV)"),
            }),
        }
    }
}

/// Whether `p` is a morphism of `cat`.
///
/// `Q` accepts any synchronous, nonsignaling, symmetric correlation, since
/// quantum membership of an arbitrary correlation is not decidable here.
pub fn in_category(p: &Correlation, cat: CategoryTag) -> bool {
    if !is_synchronous(p) {
        return false;
    }
    match cat {
        CategoryTag::S => true,
        CategoryTag::NS => is_nonsignaling(p),
        CategoryTag::Q => is_nonsignaling(p) && is_symmetric(p),
        CategoryTag::HV => matches!(classical_decomposition(p), Ok(Some(_))),
    }
}

pub fn check_membership(p: &Correlation, cat: CategoryTag) -> Result<()> {
    if in_category(p, cat) {
        Ok(())
    } else {
        Err(Error::NotInCategory(cat.to_string()))
    }
}

/// Basis of `{u : P u = 0}`, indexed over `X²`.
pub fn right_nullspace_basis(p: &Correlation) -> Vec<KernelVector> {
    nullspace(&p.matrix(), p.cols())
        .into_iter()
        .map(|v| KernelVector::new(Side::Right, p.input_set().clone(), v).expect("length |X|²"))
        .collect()
}

/// Basis of `{w : w P = 0}`, indexed over `Y²`.
pub fn left_nullspace_basis(p: &Correlation) -> Vec<KernelVector> {
    nullspace(&transpose(&p.matrix(), p.cols()), p.rows())
        .into_iter()
        .map(|v| KernelVector::new(Side::Left, p.output_set().clone(), v).expect("length |Y|²"))
        .collect()
}

/// Left cancelable in `cat`: the right nullspace is zero.
pub fn is_monomorphism(p: &Correlation, cat: CategoryTag) -> Result<bool> {
    check_membership(p, cat)?;
    Ok(rank(&p.matrix(), p.cols()) == p.cols())
}

/// Right cancelable in `cat`: the left nullspace is zero.
pub fn is_epimorphism(p: &Correlation, cat: CategoryTag) -> Result<bool> {
    check_membership(p, cat)?;
    Ok(rank(&p.matrix(), p.cols()) == p.rows())
}

/// Monic and epic: the stochastic matrix is square and nonsingular.
pub fn is_bimorphism(p: &Correlation, cat: CategoryTag) -> Result<bool> {
    check_membership(p, cat)?;
    Ok(p.rows() == p.cols() && rank(&p.matrix(), p.cols()) == p.rows())
}
