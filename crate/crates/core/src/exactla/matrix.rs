//! Sparse exact matrices, echelon forms, rank and kernels.
//!
//! Vectors are sorted coordinate lists without explicit zeros. All echelon
//! routines use the leftmost nonzero coordinate as the pivot, so a reduced
//! echelon basis of a subspace does not depend on the order of the input
//! vectors.

use rayon::prelude::*;

use super::field::Field;

/// Sorted `(index, value)` pairs; no zero values are stored.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Entry lookup by binary search.
pub fn sparse_get<E>(v: &SparseVec<E>, index: usize) -> Option<&E> {
    v.binary_search_by_key(&index, |(i, _)| *i)
        .ok()
        .map(|pos| &v[pos].1)
}

/// `a + c·b`.
pub fn sparse_axpy<F: Field>(field: &F, a: &SparseVec<F::Elem>, c: &F::Elem, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale<F: Field>(field: &F, c: &F::Elem, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(c, x))).collect()
}

/// Sorts by index, merges duplicates and drops zeros.
pub fn sparse_normalize<F: Field>(field: &F, mut entries: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    entries.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(entries.len());
    for (i, x) in entries {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

pub fn dense_to_sparse<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense<F: Field>(field: &F, v: &SparseVec<F::Elem>, dim: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// A sparse matrix over an exact field, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from (possibly unsorted, duplicated) columns.
    pub fn from_columns(field: F, rows: usize, columns: Vec<Vec<(usize, F::Elem)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| {
                let c = sparse_normalize(&field, c);
                assert!(c.last().is_none_or(|(i, _)| *i < rows), "row index out of range");
                c
            })
            .collect();
        ExactMatrix {
            field,
            rows,
            cols,
            columns,
        }
    }

    pub fn from_dense(field: F, dense: &[Vec<F::Elem>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); cols];
        for (i, row) in dense.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, x) in row.iter().enumerate() {
                if !field.is_zero(x) {
                    columns[j].push((i, x.clone()));
                }
            }
        }
        ExactMatrix {
            field,
            rows,
            cols,
            columns,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, field.one())]).collect();
        ExactMatrix {
            field,
            rows: n,
            cols: n,
            columns,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn column(&self, j: usize) -> &SparseVec<F::Elem> {
        &self.columns[j]
    }
    pub fn columns(&self) -> &[SparseVec<F::Elem>] {
        &self.columns
    }
    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        sparse_get(&self.columns[j], i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Rows as sparse vectors.
    pub fn row_vectors(&self) -> Vec<SparseVec<F::Elem>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                rows[*i].push((j, x.clone()));
            }
        }
        rows
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            columns: self.row_vectors(),
        }
    }

    /// `self · v`.
    pub fn apply(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc = Vec::new();
        for (j, x) in v {
            for (i, y) in &self.columns[*j] {
                acc.push((*i, self.field.mul(x, y)));
            }
        }
        sparse_normalize(&self.field, acc)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &ExactMatrix<F>) -> ExactMatrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let columns = other.columns.par_iter().map(|c| self.apply(c)).collect();
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn rank(&self) -> usize {
        rank_of_vectors(&self.field, self.columns.clone(), self.rows)
    }

    /// Canonical basis of the right null space, in reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<SparseVec<F::Elem>> {
        let field = &self.field;
        let row_space = rref(field, self.row_vectors(), self.cols);
        let mut is_pivot = vec![false; self.cols];
        for r in &row_space {
            is_pivot[r[0].0] = true;
        }
        let mut raw = Vec::with_capacity(self.cols - row_space.len());
        for free in (0..self.cols).filter(|c| !is_pivot[*c]) {
            let mut v: SparseVec<F::Elem> = vec![(free, field.one())];
            for r in &row_space {
                if let Some(x) = sparse_get(r, free) {
                    v.push((r[0].0, field.neg(x)));
                }
            }
            raw.push(sparse_normalize(field, v));
        }
        rref(field, raw, self.cols)
    }

    /// Reduced echelon basis of the column space.
    pub fn column_space(&self) -> Vec<SparseVec<F::Elem>> {
        rref(&self.field, self.columns.clone(), self.rows)
    }
}

/// Rank of a family of vectors in `F^dim`.
pub fn rank_of_vectors<F: Field>(field: &F, vectors: Vec<SparseVec<F::Elem>>, dim: usize) -> usize {
    split_blocks(vectors, dim)
        .into_par_iter()
        .map(|block| echelon(field, block).len())
        .sum()
}

/// Reduced row echelon basis of the span of `vectors`, sorted by pivot.
///
/// Every basis vector has leading coefficient one and vanishes at the pivots
/// of the others, so the result is the unique canonical basis of the span.
pub fn rref<F: Field>(field: &F, vectors: Vec<SparseVec<F::Elem>>, dim: usize) -> Vec<SparseVec<F::Elem>> {
    let mut out: Vec<SparseVec<F::Elem>> = split_blocks(vectors, dim)
        .into_par_iter()
        .flat_map_iter(|block| back_substitute(field, echelon(field, block)))
        .collect();
    out.sort_by_key(|v| v[0].0);
    out
}

/// Groups vectors into classes whose supports are connected through shared
/// coordinates; elimination never mixes different classes.
fn split_blocks<E: Clone>(vectors: Vec<SparseVec<E>>, dim: usize) -> Vec<Vec<SparseVec<E>>> {
    let vectors: Vec<_> = vectors.into_iter().filter(|v| !v.is_empty()).collect();
    if vectors.len() <= 1 {
        return vec![vectors];
    }
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for v in &vectors {
        for (i, _) in &v[1..] {
            let a = find(&mut parent, v[0].0);
            let b = find(&mut parent, *i);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut slot = std::collections::HashMap::new();
    let mut blocks: Vec<Vec<SparseVec<E>>> = Vec::new();
    for v in vectors {
        let root = find(&mut parent, v[0].0);
        let idx = *slot.entry(root).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[idx].push(v);
    }
    blocks
}

/// Forward elimination: returns an echelon basis (distinct pivots, leading
/// coefficient one) sorted by pivot.
fn echelon<F: Field>(field: &F, vectors: Vec<SparseVec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    let mut by_pivot: std::collections::BTreeMap<usize, SparseVec<F::Elem>> = Default::default();
    for mut v in vectors {
        loop {
            let Some((lead, coeff)) = v.first().cloned() else { break };
            match by_pivot.get(&lead) {
                Some(row) => {
                    let c = field.neg(&coeff);
                    v = sparse_axpy(field, &v, &c, row);
                }
                None => {
                    let inv = field.inv(&coeff).expect("nonzero lead");
                    let v = sparse_scale(field, &inv, &v);
                    by_pivot.insert(lead, v);
                    break;
                }
            }
        }
    }
    by_pivot.into_values().collect()
}

/// Clears every entry above each pivot, turning an echelon basis into the
/// reduced one.
fn back_substitute<F: Field>(field: &F, mut rows: Vec<SparseVec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    for i in (0..rows.len()).rev() {
        let pivot = rows[i][0].0;
        let (head, tail) = rows.split_at_mut(i);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            if let Some(x) = sparse_get(row, pivot) {
                let c = field.neg(x);
                *row = sparse_axpy(field, row, &c, pivot_row);
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let m = ExactMatrix::zeros(Rationals, 3, 3);
        assert_eq!(m.rank(), 0);
        let k = m.kernel_basis();
        assert_eq!(k, (0..3).map(|i| vec![(i, q(1))]).collect::<Vec<_>>());
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = ExactMatrix::identity(Rationals, 4);
        assert_eq!(m.rank(), 4);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn rank_one_example() {
        let m = ExactMatrix::from_dense(Rationals, &[vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // span of (-2, 1); canonical form has leading coefficient one
        let v = &k[0];
        assert_eq!(v, &vec![(0, q(1)), (1, BigRational::new((-1).into(), 2.into()))]);
        assert!(m.apply(v).is_empty());
    }

    #[test]
    fn prime_field_rank_drops() {
        let f = PrimeField::new(5).unwrap();
        // det = 1*7 - 2*1 = 5 = 0 mod 5
        let m = ExactMatrix::from_dense(f, &[vec![1, 2], vec![1, 7 % 5]]);
        assert_eq!(m.rank(), 1);
        let mq = ExactMatrix::from_dense(Rationals, &[vec![q(1), q(2)], vec![q(1), q(7)]]);
        assert_eq!(mq.rank(), 2);
    }

    #[test]
    fn block_split_respects_coupling() {
        // two blocks coupled through coordinate 3 in the last vector
        let vs = vec![
            vec![(0, q(1)), (1, q(1))],
            vec![(2, q(1)), (3, q(1))],
            vec![(1, q(1)), (3, q(-1))],
            vec![(4, q(2))],
        ];
        assert_eq!(rank_of_vectors(&Rationals, vs.clone(), 5), 4);
        let basis = rref(&Rationals, vs, 5);
        let pivots: Vec<_> = basis.iter().map(|v| v[0].0).collect();
        assert_eq!(pivots, vec![0, 1, 2, 4]);
    }
}
