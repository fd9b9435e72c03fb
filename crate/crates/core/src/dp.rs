//! The truncated divided-power complex over a prime field.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::complex::{monomials_of_degree, Complex, ComplexError, Monomial, PowerRule};
use crate::exactla::PrimeField;

pub type DpComplex = Complex<PrimeField>;

/// Prime `p > 3` and one height `t_j >= 1` per odd generator; odd divided
/// powers run over `0 <= r_j < p^{t_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    p: u64,
    t: Vec<u32>,
}

impl Truncation {
    pub fn new(p: u64, t: Vec<u32>) -> Result<Self, ComplexError> {
        PrimeField::new(p)?;
        if t.contains(&0) {
            return Err(ComplexError::InvalidTruncation("every height must be at least 1".into()));
        }
        for &x in &t {
            let fits = p.checked_pow(x).is_some_and(|b| b <= u64::from(u32::MAX));
            if !fits {
                return Err(ComplexError::InvalidTruncation(format!("{p}^{x} is too large")));
            }
        }
        Ok(Truncation { p, t })
    }

    /// All heights equal to one.
    pub fn ones(p: u64, n_odd: usize) -> Result<Self, ComplexError> {
        Truncation::new(p, vec![1; n_odd])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn heights(&self) -> &[u32] {
        &self.t
    }

    /// Exponent bounds `p^{t_j}`.
    pub fn bounds(&self) -> Vec<u32> {
        self.t.iter().map(|&x| self.p.pow(x) as u32).collect()
    }

    pub fn rule(&self) -> PowerRule {
        PowerRule::Divided { bounds: self.bounds() }
    }

    /// `2^{#even} · Π p^{t_j}`.
    pub fn total_dim(&self, n_even: usize) -> u128 {
        self.bounds().iter().fold(1u128 << n_even, |acc, &b| acc * u128::from(b))
    }
}

pub fn dp_complex(spec: &AlgebraSpec, trunc: &Truncation) -> Result<DpComplex, ComplexError> {
    if trunc.heights().len() != spec.odd_dim() {
        return Err(ComplexError::MixedTruncation);
    }
    let field = PrimeField::new(trunc.p())?;
    Complex::new(field, Arc::new(spec.clone()), trunc.rule())
}

/// Degree-`k` divided-power monomials; empty above the top degree.
pub fn dp_basis_of_degree(spec: &AlgebraSpec, trunc: &Truncation, k: usize) -> Vec<Monomial> {
    monomials_of_degree(spec.even_dim(), spec.odd_dim(), k, &trunc.rule())
}

/// `a · b` in the divided-power algebra, or `None` when it vanishes.
pub fn dp_multiply(a: &Monomial, b: &Monomial, trunc: &Truncation) -> Result<Option<(Monomial, u64)>, ComplexError> {
    if a.odd_exps().len() != trunc.heights().len() || b.odd_exps().len() != trunc.heights().len() {
        return Err(ComplexError::MixedTruncation);
    }
    let field = PrimeField::new(trunc.p())?;
    Ok(a.times(b, &field, &trunc.rule()))
}

/// Per-degree dimensions of the divided-power cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DphSummary {
    pub dims: Vec<usize>,
    pub total: usize,
}

impl DpComplex {
    pub fn dph(&self) -> Result<DphSummary, ComplexError> {
        let top = self.top_degree().expect("divided-power complexes are finite");
        let dims = (0..=top).map(|k| self.betti(k)).collect::<Result<Vec<_>, _>>()?;
        let total = dims.iter().sum();
        Ok(DphSummary { dims, total })
    }
}
