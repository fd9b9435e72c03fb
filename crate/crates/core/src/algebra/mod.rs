//! Lie superalgebras given by structure constants.
//!
//! The global basis is ordered with all even elements first, then all odd
//! ones. Brackets are stored for index pairs `k <= l` only; the remaining
//! pairs follow from skew-supersymmetry.

mod catalog;
mod document;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{format_rational, rref, Rationals, SparseVec};

pub use catalog::{catalog, catalog_names, model_filiform, model_shape, CatalogEntry, CATALOG};
pub use document::{load_algebra, parse_algebra, to_document, AlgebraDocument, BracketEntry};

/// Sparse coefficient vector over the global basis.
pub type BasisVector = SparseVec<BigRational>;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("unknown algebra name {0:?}")]
    UnknownName(String),
    #[error("unknown basis element {0:?}")]
    UnknownBasisElement(String),
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("descending sequences do not reach zero: algebra is not nilpotent")]
    NonNilpotent,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("algebra violates the superalgebra axioms: {0}")]
    Validation(ValidationReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    even: Vec<String>,
    odd: Vec<String>,
    brackets: BTreeMap<(usize, usize), BasisVector>,
}

impl AlgebraSpec {
    /// Builds an algebra from named generators and brackets
    /// `(left, right, [(output, coefficient)])`.
    ///
    /// Structural problems (unknown names, `left > right`, even diagonal
    /// pairs, repeated pairs) are errors; axiom violations are left to
    /// [`AlgebraSpec::validate`].
    pub fn new<S: AsRef<str>>(
        even: &[S],
        odd: &[S],
        brackets: &[(&str, &str, Vec<(&str, BigRational)>)],
    ) -> Result<Self, AlgebraError> {
        let mut spec = AlgebraSpec::empty(
            even.iter().map(|s| s.as_ref().to_string()).collect(),
            odd.iter().map(|s| s.as_ref().to_string()).collect(),
        )?;
        for (left, right, out) in brackets {
            let k = spec.index_of(left)?;
            let l = spec.index_of(right)?;
            let mut vec = Vec::with_capacity(out.len());
            for (name, c) in out {
                vec.push((spec.index_of(name)?, c.clone()));
            }
            spec.insert_bracket(k, l, vec)?;
        }
        Ok(spec)
    }

    pub(crate) fn empty(even: Vec<String>, odd: Vec<String>) -> Result<Self, AlgebraError> {
        let mut seen = std::collections::HashSet::new();
        for name in even.iter().chain(&odd) {
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::Malformed(format!("duplicate basis name {name:?}")));
            }
        }
        if even.len() > 64 || odd.len() > 64 {
            return Err(AlgebraError::InvalidDimension(
                "at most 64 even and 64 odd basis elements are supported".into(),
            ));
        }
        Ok(AlgebraSpec {
            even,
            odd,
            brackets: BTreeMap::new(),
        })
    }

    pub(crate) fn insert_bracket(&mut self, k: usize, l: usize, out: BasisVector) -> Result<(), AlgebraError> {
        let dim = self.dim();
        if k >= dim || l >= dim {
            return Err(AlgebraError::IndexOutOfRange(k.max(l)));
        }
        if k > l {
            return Err(AlgebraError::Malformed(format!(
                "bracket [{}, {}] must list the lower basis index first",
                self.name(k),
                self.name(l)
            )));
        }
        if k == l && !self.is_odd(k) {
            return Err(AlgebraError::Malformed(format!(
                "even diagonal bracket [{0}, {0}] must vanish",
                self.name(k)
            )));
        }
        if out.iter().any(|(i, _)| *i >= dim) {
            return Err(AlgebraError::Malformed("bracket output out of range".into()));
        }
        let out = crate::exactla::sparse_normalize(&Rationals, out);
        if self.brackets.contains_key(&(k, l)) {
            return Err(AlgebraError::Malformed(format!(
                "bracket [{}, {}] given twice",
                self.name(k),
                self.name(l)
            )));
        }
        if !out.is_empty() {
            self.brackets.insert((k, l), out);
        }
        Ok(())
    }

    pub fn even_names(&self) -> &[String] {
        &self.even
    }
    pub fn odd_names(&self) -> &[String] {
        &self.odd
    }
    pub fn even_dim(&self) -> usize {
        self.even.len()
    }
    pub fn odd_dim(&self) -> usize {
        self.odd.len()
    }
    pub fn dim(&self) -> usize {
        self.even.len() + self.odd.len()
    }
    pub fn is_odd(&self, i: usize) -> bool {
        i >= self.even.len()
    }
    pub fn parity(&self, i: usize) -> u8 {
        u8::from(self.is_odd(i))
    }
    pub fn name(&self, i: usize) -> &str {
        if i < self.even.len() {
            &self.even[i]
        } else {
            &self.odd[i - self.even.len()]
        }
    }
    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.even
            .iter()
            .chain(&self.odd)
            .position(|n| n == name)
            .ok_or_else(|| AlgebraError::UnknownBasisElement(name.to_string()))
    }

    /// Stored brackets `(k, l) -> [x_k, x_l]` with `k <= l`.
    pub fn stored_brackets(&self) -> impl Iterator<Item = (&(usize, usize), &BasisVector)> {
        self.brackets.iter()
    }

    /// Structure constant `a_{kl}^i` for `k <= l` as stored (zero when absent).
    pub fn structure_constant(&self, k: usize, l: usize, i: usize) -> BigRational {
        self.brackets
            .get(&(k, l))
            .and_then(|v| crate::exactla::sparse_get(v, i).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `[x_k, x_l]` for any pair, using `[x_l, x_k] = -(-1)^{|k||l|} [x_k, x_l]`.
    pub fn bracket(&self, k: usize, l: usize) -> Result<BasisVector, AlgebraError> {
        let dim = self.dim();
        if k >= dim {
            return Err(AlgebraError::IndexOutOfRange(k));
        }
        if l >= dim {
            return Err(AlgebraError::IndexOutOfRange(l));
        }
        Ok(self.bracket_unchecked(k, l))
    }

    fn bracket_unchecked(&self, k: usize, l: usize) -> BasisVector {
        if k <= l {
            return self.brackets.get(&(k, l)).cloned().unwrap_or_default();
        }
        let stored = self.brackets.get(&(l, k)).cloned().unwrap_or_default();
        let both_odd = self.is_odd(k) && self.is_odd(l);
        if both_odd {
            stored
        } else {
            stored.into_iter().map(|(i, c)| (i, -c)).collect()
        }
    }

    /// Bilinear extension of the bracket to arbitrary vectors.
    pub fn bracket_vectors(&self, a: &BasisVector, b: &BasisVector) -> BasisVector {
        let mut acc = Vec::new();
        for (k, x) in a {
            for (l, y) in b {
                for (i, c) in self.bracket_unchecked(*k, *l) {
                    acc.push((i, x * y * c));
                }
            }
        }
        crate::exactla::sparse_normalize(&Rationals, acc)
    }

    fn unit(&self, i: usize) -> BasisVector {
        vec![(i, BigRational::one())]
    }

    /// Parity consistency and the graded Jacobi identity on all basis triples.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (&(k, l), out) in &self.brackets {
            let expected = (self.parity(k) + self.parity(l)) % 2;
            for (i, _) in out {
                if self.parity(*i) != expected {
                    violations.push(Violation::Parity {
                        left: self.name(k).to_string(),
                        right: self.name(l).to_string(),
                        output: self.name(*i).to_string(),
                    });
                }
            }
        }
        let dim = self.dim();
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let defect = self.jacobi_defect(a, b, c);
                    if defect.is_empty() {
                        continue;
                    }
                    let mut key = [a, b, c];
                    key.sort_unstable();
                    if seen.insert(key) {
                        violations.push(Violation::Jacobi {
                            triple: [a, b, c].map(|i| self.name(i).to_string()),
                            defect: defect
                                .iter()
                                .map(|(i, q)| (self.name(*i).to_string(), format_rational(q)))
                                .collect(),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// `(-1)^{|a||c|}[a,[b,c]] + (-1)^{|b||a|}[b,[c,a]] + (-1)^{|c||b|}[c,[a,b]]`.
    pub fn jacobi_defect(&self, a: usize, b: usize, c: usize) -> BasisVector {
        let term = |x: usize, y: usize, z: usize| {
            let inner = self.bracket_unchecked(y, z);
            let v = self.bracket_vectors(&self.unit(x), &inner);
            if self.is_odd(x) && self.is_odd(z) {
                v.into_iter().map(|(i, q)| (i, -q)).collect()
            } else {
                v
            }
        };
        let mut acc = term(a, b, c);
        acc.extend(term(b, c, a));
        acc.extend(term(c, a, b));
        crate::exactla::sparse_normalize(&Rationals, acc)
    }

    /// Super-nilindex from the two descending sequences `L_0^{i+1} = [L_0, L_0^i]`
    /// and `L_1^{i+1} = [L_0, L_1^i]`.
    pub fn nilindex(&self) -> Result<NilindexReport, AlgebraError> {
        let m = self.even_dim();
        let evens: Vec<BasisVector> = (0..m).map(|i| self.unit(i)).collect();
        let odds: Vec<BasisVector> = (m..self.dim()).map(|i| self.unit(i)).collect();
        let even_index = self.descending_index(&evens, evens.clone())?;
        let odd_index = self.descending_index(&evens, odds)?;
        let is_filiform =
            m >= 1 && even_index + 1 == m && odd_index == self.odd_dim();
        Ok(NilindexReport {
            even_index,
            odd_index,
            is_filiform,
        })
    }

    fn descending_index(&self, acting: &[BasisVector], start: Vec<BasisVector>) -> Result<usize, AlgebraError> {
        let dim = self.dim();
        let mut current = rref(&Rationals, start, dim);
        let mut index = 0;
        while !current.is_empty() {
            if index > dim {
                return Err(AlgebraError::NonNilpotent);
            }
            let mut next = Vec::new();
            for a in acting {
                for v in &current {
                    let w = self.bracket_vectors(a, v);
                    if !w.is_empty() {
                        next.push(w);
                    }
                }
            }
            let next = rref(&Rationals, next, dim);
            if next == current {
                return Err(AlgebraError::NonNilpotent);
            }
            current = next;
            index += 1;
        }
        Ok(index)
    }

    /// Copy of the algebra with one stored bracket replaced; used to build
    /// deliberately broken fixtures.
    pub fn with_bracket(&self, left: &str, right: &str, out: &[(&str, BigRational)]) -> Result<Self, AlgebraError> {
        let k = self.index_of(left)?;
        let l = self.index_of(right)?;
        let mut next = self.clone();
        next.brackets.remove(&(k, l));
        let mut vec = Vec::new();
        for (name, c) in out {
            vec.push((self.index_of(name)?, c.clone()));
        }
        next.insert_bracket(k, l, vec)?;
        Ok(next)
    }
}

/// Outcome of [`AlgebraSpec::validate`]; empty means the axioms hold.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Parity {
        left: String,
        right: String,
        output: String,
    },
    Jacobi {
        triple: [String; 3],
        defect: Vec<(String, String)>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Parity { left, right, output } => {
                write!(f, "parity: [{left}, {right}] has a component along {output}")
            }
            Violation::Jacobi { triple, defect } => {
                let terms: Vec<String> = defect.iter().map(|(n, c)| format!("{c}*{n}")).collect();
                write!(f, "jacobi({}, {}, {}) = {}", triple[0], triple[1], triple[2], terms.join(" + "))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilindexReport {
    pub even_index: usize,
    pub odd_index: usize,
    pub is_filiform: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn bracket_examples() {
        let l12 = model_filiform(1, 2).unwrap();
        let x0 = l12.index_of("X0").unwrap();
        let y1 = l12.index_of("Y1").unwrap();
        let y2 = l12.index_of("Y2").unwrap();
        assert_eq!(l12.bracket(x0, y1).unwrap(), vec![(y2, q(1))]);
        assert_eq!(l12.bracket(y1, x0).unwrap(), vec![(y2, q(-1))]);
        assert_eq!(l12.bracket(y1, y1).unwrap(), vec![]);
        assert!(matches!(l12.bracket(0, 9), Err(AlgebraError::IndexOutOfRange(9))));

        let f3 = catalog("F12_3").unwrap();
        let (y1, x1) = (f3.index_of("Y1").unwrap(), f3.index_of("X1").unwrap());
        assert_eq!(f3.bracket(y1, y1).unwrap(), vec![(x1, q(1))]);
    }

    #[test]
    fn skew_supersymmetry_on_catalog() {
        for name in catalog_names() {
            let spec = catalog(name).unwrap();
            for k in 0..spec.dim() {
                for l in 0..spec.dim() {
                    let a = spec.bracket(k, l).unwrap();
                    let b = spec.bracket(l, k).unwrap();
                    let sign = if spec.is_odd(k) && spec.is_odd(l) { q(1) } else { q(-1) };
                    let expected: BasisVector = b.into_iter().map(|(i, c)| (i, c * &sign)).collect();
                    assert_eq!(a, expected, "{name} ({k},{l})");
                }
            }
        }
    }

    #[test]
    fn broken_jacobi_is_reported_with_witness() {
        let f3 = catalog("F12_3").unwrap();
        let broken = f3.with_bracket("Y1", "Y1", &[("X0", q(1))]).unwrap();
        let report = broken.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::Jacobi { triple, .. } if triple == &["Y1", "Y1", "Y1"].map(String::from)
        )));
    }

    #[test]
    fn parity_violation_is_reported() {
        let spec = AlgebraSpec::new(&["X0", "X1"], &["Y1"], &[("X0", "X1", vec![("Y1", q(1))])]).unwrap();
        let report = spec.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Parity { output, .. } if output == "Y1")));
    }

    #[test]
    fn abelian_is_valid() {
        let spec = AlgebraSpec::new(&["X0", "X1"], &["Y1"], &[]).unwrap();
        assert!(spec.validate().is_valid());
        assert!(spec.is_abelian());
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            AlgebraSpec::new(&["X0", "X0"], &[], &[]),
            Err(AlgebraError::Malformed(_))
        ));
        assert!(matches!(
            AlgebraSpec::new(&["X0", "X1"], &[], &[("X1", "X0", vec![])]),
            Err(AlgebraError::Malformed(_))
        ));
        assert!(matches!(
            AlgebraSpec::new(&["X0", "X1"], &[], &[("X0", "X0", vec![("X1", q(1))])]),
            Err(AlgebraError::Malformed(_))
        ));
        assert!(matches!(
            AlgebraSpec::new(&["X0"], &[], &[("X0", "Z", vec![])]),
            Err(AlgebraError::UnknownBasisElement(_))
        ));
    }

    #[test]
    fn nilindex_examples() {
        let l22 = model_filiform(2, 2).unwrap();
        assert_eq!(
            l22.nilindex().unwrap(),
            NilindexReport { even_index: 2, odd_index: 2, is_filiform: true }
        );
        for name in ["F22_1", "F22_2", "F22_3", "F22_4", "F22_5"] {
            let r = catalog(name).unwrap().nilindex().unwrap();
            assert_eq!((r.even_index, r.odd_index, r.is_filiform), (2, 2, true), "{name}");
        }
        for name in ["F12_1", "F12_2", "F12_3"] {
            let r = catalog(name).unwrap().nilindex().unwrap();
            assert_eq!((r.even_index, r.odd_index, r.is_filiform), (1, 2, true), "{name}");
        }
        for n in 1..=6 {
            for m in 1..=6 {
                let r = model_filiform(n, m).unwrap().nilindex().unwrap();
                assert_eq!((r.even_index, r.odd_index, r.is_filiform), (n, m, true));
            }
        }
    }

    #[test]
    fn degenerate_nilindex() {
        let one = AlgebraSpec::new(&["X0"], &[], &[]).unwrap();
        let r = one.nilindex().unwrap();
        assert_eq!((r.even_index, r.odd_index, r.is_filiform), (1, 0, false));
        let odd_only = AlgebraSpec::new::<&str>(&[], &["Y1"], &[]).unwrap();
        let r = odd_only.nilindex().unwrap();
        assert_eq!((r.even_index, r.odd_index, r.is_filiform), (0, 1, false));
    }

    #[test]
    fn non_nilpotent_detected() {
        // [H, E] = E never terminates
        let spec = AlgebraSpec::new(&["H", "E"], &[], &[("H", "E", vec![("E", q(1))])]).unwrap();
        assert!(spec.validate().is_valid());
        assert_eq!(spec.nilindex(), Err(AlgebraError::NonNilpotent));
    }
}
