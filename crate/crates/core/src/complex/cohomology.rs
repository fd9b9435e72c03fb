//! Canonical cohomology bases, reduction of cocycles to class coordinates,
//! and the cup product on classes.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{cached_result, Cochain, Complex, ComplexError};
use crate::exactla::{rref, sparse_normalize, Field, SparseVec};

/// `H^k` presented by canonical representatives.
///
/// Coboundaries and cocycles are stored in reduced echelon form. The
/// representatives are the reduced echelon basis of the cocycles after
/// eliminating every coboundary pivot, so they vanish at those pivots and
/// each class has a unique normal form.
#[derive(Clone, Debug)]
pub struct CohomologyBasis<F: Field> {
    pub degree: usize,
    pub representatives: Vec<SparseVec<F::Elem>>,
    pub coboundary_basis: Vec<SparseVec<F::Elem>>,
    pub cocycle_basis: Vec<SparseVec<F::Elem>>,
    parities: Vec<u8>,
    coboundary_pivots: HashMap<usize, usize>,
}

impl<F: Field> CohomologyBasis<F> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cocycle_basis.len()
    }

    pub fn image_rank(&self) -> usize {
        self.coboundary_basis.len()
    }

    /// Parity of each representative (they are parity-homogeneous).
    pub fn parities(&self) -> &[u8] {
        &self.parities
    }

    // v minus its projection onto the coboundaries along their pivots.
    fn strip_coboundaries(&self, field: &F, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc: Vec<(usize, F::Elem)> = v.clone();
        for (i, x) in v {
            if let Some(&b) = self.coboundary_pivots.get(i) {
                let c = field.neg(x);
                acc.extend(self.coboundary_basis[b].iter().map(|(j, y)| (*j, field.mul(&c, y))));
            }
        }
        sparse_normalize(field, acc)
    }

    /// Coordinates of the class of cocycle `v` in the representative basis.
    pub fn class_coords(&self, field: &F, v: &SparseVec<F::Elem>) -> Result<Vec<F::Elem>, ComplexError> {
        let mut rest = self.strip_coboundaries(field, v);
        let mut coords = Vec::with_capacity(self.representatives.len());
        let mut acc = Vec::new();
        for r in &self.representatives {
            let c = crate::exactla::sparse_get(&rest, r[0].0).cloned().unwrap_or_else(|| field.zero());
            if !field.is_zero(&c) {
                let neg = field.neg(&c);
                acc.extend(r.iter().map(|(j, y)| (*j, field.mul(&neg, y))));
            }
            coords.push(c);
        }
        rest.extend(acc);
        if !sparse_normalize(field, rest).is_empty() {
            return Err(ComplexError::Linear(crate::exactla::LinAlgError::NotInSpan));
        }
        Ok(coords)
    }

    /// Whether `v` is a coboundary.
    pub fn is_coboundary(&self, field: &F, v: &SparseVec<F::Elem>) -> bool {
        self.strip_coboundaries(field, v).is_empty()
    }
}

/// A basis class: degree and index among that degree's representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassId {
    pub degree: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductEntry<E> {
    pub left: ClassId,
    pub right: ClassId,
    /// Sparse coordinates in degree `left.degree + right.degree`.
    pub result: SparseVec<E>,
}

/// All products of pairs of basis classes with total degree at most `kmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductTable<E> {
    pub kmax: usize,
    pub dims: Vec<usize>,
    pub parities: Vec<Vec<u8>>,
    pub entries: Vec<ProductEntry<E>>,
}

impl<E> ProductTable<E> {
    pub fn get(&self, left: ClassId, right: ClassId) -> Option<&SparseVec<E>> {
        self.entries
            .binary_search_by(|e| (e.left, e.right).cmp(&(left, right)))
            .ok()
            .map(|i| &self.entries[i].result)
    }
}

impl<F: Field> Complex<F> {
    /// Canonical basis of `H^k`.
    pub fn cohomology(&self, k: usize) -> Result<std::sync::Arc<CohomologyBasis<F>>, ComplexError> {
        cached_result(&self.cohomology, k, || self.compute_cohomology(k))
    }

    fn compute_cohomology(&self, k: usize) -> Result<CohomologyBasis<F>, ComplexError> {
        let f = &self.field;
        let dim = self.basis(k).len();
        let cocycles = if dim == 0 { Vec::new() } else { self.differential(k).kernel_basis() };
        let coboundaries = if k == 0 || dim == 0 {
            Vec::new()
        } else {
            self.differential(k - 1).column_space()
        };
        let coboundary_pivots: HashMap<usize, usize> =
            coboundaries.iter().enumerate().map(|(b, v)| (v[0].0, b)).collect();
        let mut partial = CohomologyBasis {
            degree: k,
            representatives: Vec::new(),
            coboundary_basis: coboundaries,
            cocycle_basis: Vec::new(),
            parities: Vec::new(),
            coboundary_pivots,
        };
        let stripped: Vec<_> = cocycles.par_iter().map(|z| partial.strip_coboundaries(f, z)).collect();
        let representatives = rref(f, stripped, dim);
        let expected = cocycles.len().checked_sub(partial.coboundary_basis.len());
        if expected != Some(representatives.len()) {
            return Err(ComplexError::InternalInvariantBroken(format!(
                "degree {k}: {} cocycles, {} coboundaries, {} classes",
                cocycles.len(),
                partial.coboundary_basis.len(),
                representatives.len()
            )));
        }
        let basis = self.basis(k);
        let mut parities = Vec::with_capacity(representatives.len());
        for r in &representatives {
            let p = basis.monomials()[r[0].0].parity();
            if r.iter().any(|(i, _)| basis.monomials()[*i].parity() != p) {
                return Err(ComplexError::InternalInvariantBroken(format!(
                    "degree {k}: representative is not parity-homogeneous"
                )));
            }
            parities.push(p);
        }
        partial.representatives = representatives;
        partial.cocycle_basis = cocycles;
        partial.parities = parities;
        Ok(partial)
    }

    pub fn betti(&self, k: usize) -> Result<usize, ComplexError> {
        Ok(self.cohomology(k)?.dim())
    }

    /// Betti numbers for degrees `0..=kmax`.
    pub fn betti_numbers(&self, kmax: usize) -> Result<Vec<usize>, ComplexError> {
        (0..=kmax).map(|k| self.betti(k)).collect()
    }

    /// Representative cochain of a class given by coordinates.
    pub fn class_cochain(&self, k: usize, coords: &[F::Elem]) -> Result<Cochain<F::Elem>, ComplexError> {
        let h = self.cohomology(k)?;
        if coords.len() != h.dim() {
            return Err(ComplexError::InvalidClass(format!(
                "degree {k} has {} classes, got {} coordinates",
                h.dim(),
                coords.len()
            )));
        }
        let f = &self.field;
        let mut acc = Vec::new();
        for (c, r) in coords.iter().zip(&h.representatives) {
            if !f.is_zero(c) {
                acc.extend(r.iter().map(|(i, y)| (*i, f.mul(c, y))));
            }
        }
        Ok(self.cochain_from_vector(k, &sparse_normalize(f, acc)))
    }

    /// Class coordinates of a cocycle cochain.
    pub fn class_of(&self, c: &Cochain<F::Elem>) -> Result<Vec<F::Elem>, ComplexError> {
        if !self.d(c).is_zero() {
            return Err(ComplexError::InvalidClass("cochain is not a cocycle".into()));
        }
        let h = self.cohomology(c.degree)?;
        h.class_coords(&self.field, &self.vector_from_cochain(c))
    }

    /// Cup product of classes `a ∈ H^j` and `b ∈ H^k` in coordinates.
    pub fn cup_product(&self, j: usize, a: &[F::Elem], k: usize, b: &[F::Elem]) -> Result<Vec<F::Elem>, ComplexError> {
        let ca = self.class_cochain(j, a)?;
        let cb = self.class_cochain(k, b)?;
        self.reduce_product(&ca, &cb)
    }

    fn reduce_product(&self, a: &Cochain<F::Elem>, b: &Cochain<F::Elem>) -> Result<Vec<F::Elem>, ComplexError> {
        let prod = self.multiply(a, b);
        let k = a.degree + b.degree;
        let h = self.cohomology(k)?;
        let v = self.vector_from_cochain(&prod);
        if !self.differential(k).apply(&v).is_empty() {
            return Err(ComplexError::InternalInvariantBroken(format!(
                "product of cocycles in degrees {} and {} is not closed",
                a.degree, b.degree
            )));
        }
        h.class_coords(&self.field, &v).map_err(|_| {
            ComplexError::InternalInvariantBroken(format!("degree {k}: product does not reduce to a class"))
        })
    }

    /// Every product of two basis classes with total degree `<= kmax`.
    pub fn product_table(&self, kmax: usize) -> Result<ProductTable<F::Elem>, ComplexError> {
        let mut dims = Vec::with_capacity(kmax + 1);
        let mut parities = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let h = self.cohomology(k)?;
            dims.push(h.dim());
            parities.push(h.parities().to_vec());
        }
        let mut reps: Vec<Vec<Cochain<F::Elem>>> = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let h = self.cohomology(k)?;
            reps.push(h.representatives.iter().map(|r| self.cochain_from_vector(k, r)).collect());
        }
        let mut pairs = Vec::new();
        for j in 0..=kmax {
            for k in 0..=kmax - j {
                for a in 0..dims[j] {
                    for b in 0..dims[k] {
                        pairs.push((ClassId { degree: j, index: a }, ClassId { degree: k, index: b }));
                    }
                }
            }
        }
        let entries = pairs
            .into_par_iter()
            .map(|(left, right)| {
                let coords = self.reduce_product(&reps[left.degree][left.index], &reps[right.degree][right.index])?;
                let result = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !self.field.is_zero(c))
                    .collect();
                Ok(ProductEntry { left, right, result })
            })
            .collect::<Result<Vec<_>, ComplexError>>()?;
        let mut entries = entries;
        entries.sort_by_key(|e: &ProductEntry<F::Elem>| (e.left, e.right));
        Ok(ProductTable {
            kmax,
            dims,
            parities,
            entries,
        })
    }

    /// Pairs violating `a·b = (−1)^{‖a‖‖b‖ + |a||b|} b·a` in a table.
    pub fn supercommutativity_failures(&self, table: &ProductTable<F::Elem>) -> Vec<(ClassId, ClassId)> {
        let f = &self.field;
        let mut out = Vec::new();
        for e in &table.entries {
            if e.left > e.right {
                continue;
            }
            let Some(swapped) = table.get(e.right, e.left) else { continue };
            let pa = u64::from(table.parities[e.left.degree][e.left.index]);
            let pb = u64::from(table.parities[e.right.degree][e.right.index]);
            let exp = (e.left.degree * e.right.degree) as u64 + pa * pb;
            let sign = f.pow_neg_one(exp);
            let scaled: SparseVec<F::Elem> = swapped.iter().map(|(i, c)| (*i, f.mul(&sign, c))).collect();
            if scaled != e.result {
                out.push((e.left, e.right));
            }
        }
        out
    }

    /// Triples of basis classes violating `(a·b)·c = a·(b·c)` up to total degree `kmax`.
    pub fn associativity_failures(&self, table: &ProductTable<F::Elem>) -> Vec<[ClassId; 3]> {
        let f = &self.field;
        let kmax = table.kmax;
        let times_class = |v: &SparseVec<F::Elem>, deg: usize, c: ClassId, left: bool| -> SparseVec<F::Elem> {
            let mut acc = Vec::new();
            for (i, x) in v {
                let basis_class = ClassId { degree: deg, index: *i };
                let (l, r) = if left { (basis_class, c) } else { (c, basis_class) };
                if let Some(prod) = table.get(l, r) {
                    acc.extend(prod.iter().map(|(j, y)| (*j, f.mul(x, y))));
                }
            }
            sparse_normalize(f, acc)
        };
        let mut out = Vec::new();
        for e in &table.entries {
            let ab_deg = e.left.degree + e.right.degree;
            for dc in 0..=kmax - ab_deg {
                for ic in 0..table.dims[dc] {
                    let c = ClassId { degree: dc, index: ic };
                    let lhs = times_class(&e.result, ab_deg, c, true);
                    let Some(bc) = table.get(e.right, c) else { continue };
                    let rhs = times_class(bc, e.right.degree + dc, e.left, false);
                    if lhs != rhs {
                        out.push([e.left, e.right, c]);
                    }
                }
            }
        }
        out
    }
}
