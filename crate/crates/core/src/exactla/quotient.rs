//! Coordinates of a vector in a complement modulo a subspace.

use super::field::Field;
use super::matrix::{sparse_axpy, sparse_scale, SparseVec};
use super::LinAlgError;

/// Solves `v = Σ s_i·S_i + Σ c_j·C_j` for a fixed independent family `S ∪ C`.
///
/// The family is echelonized once; every stored row remembers which
/// combination of the original vectors produced it.
#[derive(Clone, Debug)]
pub struct QuotientSolver<F: Field> {
    field: F,
    subspace_len: usize,
    complement_len: usize,
    // (pivot, reduced vector, combination of the input family)
    rows: Vec<(usize, SparseVec<F::Elem>, Vec<F::Elem>)>,
}

impl<F: Field> QuotientSolver<F> {
    pub fn new(
        field: F,
        subspace: &[SparseVec<F::Elem>],
        complement: &[SparseVec<F::Elem>],
    ) -> Result<Self, LinAlgError> {
        let total = subspace.len() + complement.len();
        let mut solver = QuotientSolver {
            field,
            subspace_len: subspace.len(),
            complement_len: complement.len(),
            rows: Vec::with_capacity(total),
        };
        for (idx, v) in subspace.iter().chain(complement).enumerate() {
            let mut tag = vec![solver.field.zero(); total];
            tag[idx] = solver.field.one();
            let (rest, tag) = solver.reduce(v.clone(), tag);
            let Some((lead, coeff)) = rest.first().cloned() else {
                return Err(LinAlgError::LinearlyDependent);
            };
            let inv = solver.field.inv(&coeff).expect("nonzero lead");
            let rest = sparse_scale(&solver.field, &inv, &rest);
            let tag = tag.iter().map(|t| solver.field.mul(&inv, t)).collect();
            let at = solver.rows.partition_point(|(p, _, _)| *p < lead);
            solver.rows.insert(at, (lead, rest, tag));
        }
        Ok(solver)
    }

    pub fn complement_len(&self) -> usize {
        self.complement_len
    }

    // Eliminates every stored pivot from `v`, accumulating the subtracted
    // combination into `tag`.
    fn reduce(&self, mut v: SparseVec<F::Elem>, mut tag: Vec<F::Elem>) -> (SparseVec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        for (pivot, row, row_tag) in &self.rows {
            let Ok(pos) = v.binary_search_by_key(pivot, |(i, _)| *i) else { continue };
            let c = f.neg(&v[pos].1);
            v = sparse_axpy(f, &v, &c, row);
            for (t, rt) in tag.iter_mut().zip(row_tag) {
                *t = f.add(t, &f.mul(&c, rt));
            }
        }
        (v, tag)
    }

    /// Complement coordinates of `v` modulo the subspace.
    pub fn coords(&self, v: &SparseVec<F::Elem>) -> Result<Vec<F::Elem>, LinAlgError> {
        let total = self.subspace_len + self.complement_len;
        let (rest, tag) = self.reduce(v.clone(), vec![self.field.zero(); total]);
        if !rest.is_empty() {
            return Err(LinAlgError::NotInSpan);
        }
        // v - Σ tag_i b_i = 0, and tag holds the negated coefficients
        Ok(tag[self.subspace_len..]
            .iter()
            .map(|t| self.field.neg(t))
            .collect())
    }

    /// True when `v` lies in the span of the subspace alone.
    pub fn in_subspace(&self, v: &SparseVec<F::Elem>) -> Result<bool, LinAlgError> {
        let coords = self.coords(v)?;
        Ok(coords.iter().all(|c| self.field.is_zero(c)))
    }
}

/// One-shot form of [`QuotientSolver::coords`].
pub fn quotient_coords<F: Field>(
    field: &F,
    v: &SparseVec<F::Elem>,
    subspace_basis: &[SparseVec<F::Elem>],
    complement_basis: &[SparseVec<F::Elem>],
) -> Result<Vec<F::Elem>, LinAlgError> {
    QuotientSolver::new(field.clone(), subspace_basis, complement_basis)?.coords(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Rationals;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    fn basis() -> (Vec<SparseVec<BigRational>>, Vec<SparseVec<BigRational>>) {
        let sub = vec![vec![(0, q(1)), (1, q(1))]];
        let comp = vec![vec![(1, q(1)), (2, q(3))], vec![(2, q(1))]];
        (sub, comp)
    }

    #[test]
    fn subspace_vector_has_zero_coords() {
        let (s, c) = basis();
        let v = vec![(0, q(2)), (1, q(2))];
        assert_eq!(quotient_coords(&Rationals, &v, &s, &c).unwrap(), vec![q(0), q(0)]);
    }

    #[test]
    fn complement_vector_is_unit() {
        let (s, c) = basis();
        assert_eq!(quotient_coords(&Rationals, &c[0], &s, &c).unwrap(), vec![q(1), q(0)]);
        assert_eq!(quotient_coords(&Rationals, &c[1], &s, &c).unwrap(), vec![q(0), q(1)]);
    }

    #[test]
    fn mixed_combination() {
        let (s, c) = basis();
        // s0 + 2*c0 = (1, 3, 6)
        let v = vec![(0, q(1)), (1, q(3)), (2, q(6))];
        assert_eq!(quotient_coords(&Rationals, &v, &s, &c).unwrap(), vec![q(2), q(0)]);
    }

    #[test]
    fn outside_span_is_rejected() {
        let s = vec![vec![(0, q(1))]];
        let c = vec![vec![(1, q(1))]];
        let v = vec![(2, q(1))];
        assert_eq!(quotient_coords(&Rationals, &v, &s, &c), Err(LinAlgError::NotInSpan));
        let dup = vec![vec![(0, q(2))]];
        assert!(matches!(
            QuotientSolver::new(Rationals, &s, &dup),
            Err(LinAlgError::LinearlyDependent)
        ));
    }
}
