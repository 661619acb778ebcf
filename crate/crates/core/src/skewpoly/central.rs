use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::upoly;

/// A polynomial ĥ(x) ∈ F[x], standing for the central element ĥ(t^n) of
/// K[t;σ]. Coefficients are stored constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralPoly {
    coeffs: Vec<FieldElement>,
}

impl CentralPoly {
    /// Checks that every coefficient lies in F and trims trailing zeros.
    pub fn new(tower: &FieldTower, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|&c| !tower.in_fixed_field(c)) {
            return Err(Error::NotInFixedField);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(CentralPoly { coeffs })
    }

    pub(crate) fn from_trusted(coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.last().is_none_or(|c| !c.is_zero()));
        CentralPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    pub fn is_irreducible(&self, tower: &FieldTower) -> bool {
        upoly::is_irreducible(tower, &self.coeffs, tower.q())
    }

    /// Text form over `x`, e.g. `x^2+x+1`.
    pub fn format(&self, tower: &FieldTower) -> String {
        crate::skewpoly::format_terms(tower, &self.coeffs, "x")
    }
}
