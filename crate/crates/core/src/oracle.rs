//! Independent checks for the model filiform algebras: the lattice-point
//! Betti formula, the operator induced by `X0` on the dual of the abelian
//! ideal `I = span{X1..Xn, Y1..Ym}`, its weight decomposition, and the
//! split of `H•` into a kernel part and an ideal part.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::model_filiform;
use crate::ce::ce_complex;
use crate::complex::{monomials_of_degree, ComplexError, Monomial, PowerRule};
use crate::exactla::{rank_of_vectors, ExactMatrix, Rationals, SparseVec};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("graded piece (k={k}, s={s}, l={l}) is outside the admissible range")]
    KeyOutOfBounds { k: usize, s: usize, l: usize },
    #[error("model algebra needs n, m >= 1")]
    InvalidDimension,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn check_dims(n: usize, m: usize) -> Result<(), OracleError> {
    if n == 0 || m == 0 {
        Err(OracleError::InvalidDimension)
    } else {
        Ok(())
    }
}

/// Target sum for `f_count`: `⌊(k0(n+1) + k1(m+1))/2⌋ + k1(k1−1)/2`.
pub fn lattice_target(n: usize, m: usize, k0: usize, k1: usize) -> usize {
    (k0 * (n + 1) + k1 * (m + 1)) / 2 + k1 * k1.saturating_sub(1) / 2
}

/// Number of pairs of strictly increasing tuples `1 <= i_1 < … < i_{k0} <= n`
/// and `1 <= j_1 < … < j_{k1} <= m + k1 − 1` whose entries sum to
/// [`lattice_target`]. Counted by backtracking.
pub fn f_count(n: usize, m: usize, k0: usize, k1: usize) -> u64 {
    let target = lattice_target(n, m, k0, k1);
    let odd_top = (m + k1).saturating_sub(1);
    let mut total = 0;
    let mut by_sum: BTreeMap<usize, u64> = BTreeMap::new();
    increasing_sums(1, n, k0, 0, &mut |s| *by_sum.entry(s).or_default() += 1);
    for (s, c) in by_sum {
        if s <= target {
            let mut hits = 0u64;
            let rest = target - s;
            increasing_sums(1, odd_top, k1, 0, &mut |t| {
                if t == rest {
                    hits += 1;
                }
            });
            total += c * hits;
        }
    }
    total
}

fn increasing_sums(start: usize, top: usize, count: usize, acc: usize, emit: &mut dyn FnMut(usize)) {
    if count == 0 {
        emit(acc);
        return;
    }
    // need `count` distinct values >= start, <= top
    let mut v = start;
    while v + count - 1 <= top {
        increasing_sums(v + 1, top, count - 1, acc + v, emit);
        v += 1;
    }
}

/// Same count as [`f_count`] by dynamic programming over partial sums.
pub fn f_count_by_table(n: usize, m: usize, k0: usize, k1: usize) -> u64 {
    let target = lattice_target(n, m, k0, k1);
    let even = subset_sum_table(n, k0, target);
    let odd = subset_sum_table((m + k1).saturating_sub(1), k1, target);
    (0..=target).map(|s| even[s] * odd[target - s]).sum()
}

// table[s] = number of `size`-subsets of {1..top} with sum s, for s <= cap
fn subset_sum_table(top: usize, size: usize, cap: usize) -> Vec<u64> {
    let mut t = vec![vec![0u64; cap + 1]; size + 1];
    t[0][0] = 1;
    for v in 1..=top {
        for c in (1..=size).rev() {
            for s in (v..=cap).rev() {
                t[c][s] += t[c - 1][s - v];
            }
        }
    }
    t.swap_remove(size)
}

/// `Σ_{k0} f(k0, k−k0) + Σ_{k0} f(k0, k−k0−1)`.
pub fn betti_formula(n: usize, m: usize, k: usize) -> u64 {
    kernel_formula(n, m, k) + if k == 0 { 0 } else { kernel_formula(n, m, k - 1) }
}

/// `Σ_{k0} f(k0, k−k0)`, the predicted dimension of `Ker D_k`.
pub fn kernel_formula(n: usize, m: usize, k: usize) -> u64 {
    (0..=k).map(|k0| f_count(n, m, k0, k - k0)).sum()
}

/// Monomials of `Λ^k I*`: even slot `i` stands for `X(i+1)*`, odd slot `j`
/// for `Y(j+1)*`.
pub fn ideal_basis(n: usize, m: usize, k: usize) -> Vec<Monomial> {
    monomials_of_degree(n, m, k, &PowerRule::Plain)
}

/// Weight with `X_i*` and `Y_j*` of weight `i` and `j`.
pub fn weight(mono: &Monomial) -> usize {
    mono.even_indices().map(|i| i + 1).sum::<usize>()
        + mono.odd_exps().iter().enumerate().map(|(j, &e)| (j + 1) * e as usize).sum::<usize>()
}

/// Cartan eigenvalue `k0(n+1) + k1(m+1) − 2·weight` of a monomial.
pub fn cartan_eigenvalue(n: usize, m: usize, mono: &Monomial) -> i64 {
    let k0 = mono.even_count() as i64;
    let k1 = mono.odd_total() as i64;
    k0 * (n as i64 + 1) + k1 * (m as i64 + 1) - 2 * weight(mono) as i64
}

/// `D` applied to a monomial: the even derivation with `X_i* ↦ X_{i−1}*`,
/// `Y_j* ↦ Y_{j−1}*` and `X_1*, Y_1* ↦ 0`.
pub fn lower(mono: &Monomial) -> Vec<(Monomial, BigRational)> {
    let q = Rationals;
    let n_odd = mono.odd_exps().len();
    let mut out: Vec<(Monomial, BigRational)> = Vec::new();
    for (pos, i) in mono.even_indices().enumerate() {
        if i == 0 {
            continue;
        }
        let rest = mono.without_even(i);
        let shifted = Monomial::from_parts(&[i - 1], vec![0; n_odd]);
        if let Some((m, c)) = shifted.times(&rest, &q, &PowerRule::Plain) {
            // moving X_i* to the front past `pos` even duals
            let c = if pos % 2 == 1 { -c } else { c };
            out.push((m, c));
        }
    }
    for (j, &e) in mono.odd_exps().iter().enumerate() {
        if j == 0 || e == 0 {
            continue;
        }
        let mut exps = mono.odd_exps().to_vec();
        exps[j] -= 1;
        exps[j - 1] += 1;
        let evens: Vec<usize> = mono.even_indices().collect();
        out.push((Monomial::from_parts(&evens, exps), BigRational::from_integer(e.into())));
    }
    let mut merged: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    for (m, c) in out {
        *merged.entry(m).or_insert_with(BigRational::zero) += c;
    }
    merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn lowering_matrix(source: &[Monomial], target: &[Monomial]) -> ExactMatrix<Rationals> {
    let index: std::collections::HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let columns = source
        .iter()
        .map(|u| {
            lower(u)
                .into_iter()
                .map(|(m, c)| (*index.get(&m).expect("lowering stays in the target"), c))
                .collect()
        })
        .collect();
    ExactMatrix::from_columns(Rationals, target.len(), columns)
}

/// Matrix of `D_k` on `Λ^k I*` in the canonical monomial basis.
pub fn d_matrix(n: usize, m: usize, k: usize) -> ExactMatrix<Rationals> {
    let basis = ideal_basis(n, m, k);
    lowering_matrix(&basis, &basis)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCounts {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// `dim Ker D_k` by rank computation.
    pub by_rank: usize,
    /// Monomials with Cartan eigenvalue zero or one.
    pub by_weights: usize,
    /// Lattice-point sum.
    pub by_formula: u64,
}

impl KernelCounts {
    pub fn agree(&self) -> bool {
        self.by_rank == self.by_weights && self.by_rank as u64 == self.by_formula
    }
}

pub fn kernel_counts(n: usize, m: usize, k: usize) -> Result<KernelCounts, OracleError> {
    check_dims(n, m)?;
    let basis = ideal_basis(n, m, k);
    let d = lowering_matrix(&basis, &basis);
    let by_rank = basis.len() - d.rank();
    let by_weights = basis
        .iter()
        .filter(|u| matches!(cartan_eigenvalue(n, m, u), 0 | 1))
        .count();
    Ok(KernelCounts {
        n,
        m,
        k,
        by_rank,
        by_weights,
        by_formula: kernel_formula(n, m, k),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub betti_direct: usize,
    pub kernel_dim: usize,
    pub previous_dim: usize,
    pub previous_rank: usize,
    pub holds: bool,
}

/// `dim H^k = dim Ker D_k + (dim Λ^{k−1} I* − rank D_{k−1})`.
pub fn hs_decomposition_check(n: usize, m: usize, k: usize) -> Result<DecompositionReport, OracleError> {
    check_dims(n, m)?;
    let complex = ce_complex(&model_filiform(n, m).map_err(|_| OracleError::InvalidDimension)?);
    let betti_direct = complex.betti(k)?;
    let kernel_dim = {
        let d = d_matrix(n, m, k);
        d.cols() - d.rank()
    };
    let (previous_dim, previous_rank) = if k == 0 {
        (0, 0)
    } else {
        let d = d_matrix(n, m, k - 1);
        (d.cols(), d.rank())
    };
    Ok(DecompositionReport {
        n,
        m,
        k,
        betti_direct,
        kernel_dim,
        previous_dim,
        previous_rank,
        holds: betti_direct == kernel_dim + previous_dim - previous_rank,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GradedPieceKey {
    pub k: usize,
    pub s: usize,
    pub l: usize,
}

impl GradedPieceKey {
    /// Least admissible weight `s(s+1)/2 + k − s`.
    pub fn lower_bound(k: usize, s: usize) -> usize {
        s * (s + 1) / 2 + k - s
    }
    /// Greatest admissible weight `s(2n−s+1)/2 + (k−s)m`.
    pub fn upper_bound(n: usize, m: usize, k: usize, s: usize) -> usize {
        s * (2 * n + 1 - s) / 2 + (k - s) * m
    }
}

/// The piece of `Λ^k I*` with `s` even factors and weight `l`, and the
/// restriction of `D` into weight `l − 1`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub key: GradedPieceKey,
    pub basis: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub map: ExactMatrix<Rationals>,
}

impl GradedPiece {
    pub fn kernel_dim(&self) -> usize {
        self.basis.len() - self.map.rank()
    }
}

pub fn graded_piece(n: usize, m: usize, k: usize, s: usize, l: usize) -> Result<GradedPiece, OracleError> {
    check_dims(n, m)?;
    let key = GradedPieceKey { k, s, l };
    if s > k || s > n || l < GradedPieceKey::lower_bound(k, s) || l > GradedPieceKey::upper_bound(n, m, k, s) {
        return Err(OracleError::KeyOutOfBounds { k, s, l });
    }
    let pick = |w: usize| -> Vec<Monomial> {
        ideal_basis(n, m, k)
            .into_iter()
            .filter(|u| u.even_count() == s && weight(u) == w)
            .collect()
    };
    let basis = pick(l);
    let target = if l == 0 { Vec::new() } else { pick(l - 1) };
    let map = lowering_matrix(&basis, &target);
    Ok(GradedPiece { key, basis, target, map })
}

/// All admissible pieces of degree `k`.
pub fn graded_pieces(n: usize, m: usize, k: usize) -> Result<Vec<GradedPiece>, OracleError> {
    let mut out = Vec::new();
    for s in 0..=k.min(n) {
        let lo = GradedPieceKey::lower_bound(k, s);
        let hi = GradedPieceKey::upper_bound(n, m, k, s);
        for l in lo..=hi {
            out.push(graded_piece(n, m, k, s, l)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectReport {
    pub n: usize,
    pub m: usize,
    pub kmax: usize,
    pub direct_sum: bool,
    pub kernel_part_closed: bool,
    pub ideal_square_zero: bool,
    pub ideal_stable: bool,
    pub violations: Vec<String>,
}

impl SemidirectReport {
    pub fn passed(&self) -> bool {
        self.direct_sum && self.kernel_part_closed && self.ideal_square_zero && self.ideal_stable
    }
}

// a spanning set of coordinate vectors, reduced to echelon form
struct Span {
    rows: Vec<SparseVec<BigRational>>,
    dim: usize,
}

impl Span {
    fn new(vectors: Vec<Vec<BigRational>>, dim: usize) -> Self {
        let sparse = vectors.into_iter().map(|v| dense_to_sparse(&v)).collect();
        Span {
            rows: crate::exactla::rref(&Rationals, sparse, dim),
            dim,
        }
    }
    fn contains(&self, v: &[BigRational]) -> bool {
        let mut all = self.rows.clone();
        all.push(dense_to_sparse(v));
        rank_of_vectors(&Rationals, all, self.dim) == self.rows.len()
    }
}

fn dense_to_sparse(v: &[BigRational]) -> SparseVec<BigRational> {
    crate::exactla::dense_to_sparse(&Rationals, v)
}

/// Checks that `H•(L_{n,m})` is a semidirect product of the kernel part (classes
/// of `Ker D` inside `Λ•I*`) and the ideal part (classes `X0* ∧ u`) with
/// trivial multiplication on the ideal, using cup products up to `kmax`.
pub fn semidirect_check(n: usize, m: usize, kmax: usize) -> Result<SemidirectReport, OracleError> {
    check_dims(n, m)?;
    let spec = model_filiform(n, m).map_err(|_| OracleError::InvalidDimension)?;
    let complex = ce_complex(&spec);
    let mut report = SemidirectReport {
        n,
        m,
        kmax,
        direct_sum: true,
        kernel_part_closed: true,
        ideal_square_zero: true,
        ideal_stable: true,
        violations: Vec::new(),
    };
    let embed = |u: &Monomial, with_x0: bool| -> Monomial {
        let mut evens: Vec<usize> = u.even_indices().map(|i| i + 1).collect();
        if with_x0 {
            evens.insert(0, 0);
        }
        Monomial::from_parts(&evens, u.odd_exps().to_vec())
    };
    // class coordinates of the two parts in each degree
    let mut kernel_part: Vec<Vec<Vec<BigRational>>> = Vec::new();
    let mut ideal_part: Vec<Vec<Vec<BigRational>>> = Vec::new();
    for k in 0..=kmax {
        let ideal = ideal_basis(n, m, k);
        let d = lowering_matrix(&ideal, &ideal);
        let mut kp = Vec::new();
        for v in d.kernel_basis() {
            let terms = v.iter().map(|(i, c)| (embed(&ideal[*i], false), c.clone())).collect();
            kp.push(complex.class_of(&complex.cochain(terms))?);
        }
        let mut ip = Vec::new();
        if k >= 1 {
            for u in ideal_basis(n, m, k - 1) {
                let c = complex.cochain(vec![(embed(&u, true), BigRational::one())]);
                ip.push(complex.class_of(&c)?);
            }
        }
        let dim = complex.betti(k)?;
        let kernel_span = Span::new(kp.clone(), dim);
        let ideal_span = Span::new(ip.clone(), dim);
        let mut both = kp.clone();
        both.extend(ip.iter().cloned());
        let total = Span::new(both, dim);
        if total.rows.len() != dim || kernel_span.rows.len() + ideal_span.rows.len() != dim {
            report.direct_sum = false;
            report.violations.push(format!("degree {k}: parts do not split H^{k}"));
        }
        kernel_part.push(kp);
        ideal_part.push(ip);
    }
    let spans = |parts: &Vec<Vec<Vec<BigRational>>>, k: usize| -> Result<Span, OracleError> {
        Ok(Span::new(parts[k].clone(), complex.betti(k)?))
    };
    for j in 0..=kmax {
        for k in 0..=(kmax - j) {
            let kernel_target = spans(&kernel_part, j + k)?;
            let ideal_target = spans(&ideal_part, j + k)?;
            for a in &kernel_part[j] {
                for b in &kernel_part[k] {
                    let prod = complex.cup_product(j, a, k, b)?;
                    if !kernel_target.contains(&prod) {
                        report.kernel_part_closed = false;
                        report.violations.push(format!("kernel part product in degrees ({j},{k}) leaves the kernel part"));
                    }
                }
                for b in &ideal_part[k] {
                    let left = complex.cup_product(j, a, k, b)?;
                    let right = complex.cup_product(k, b, j, a)?;
                    if !ideal_target.contains(&left) || !ideal_target.contains(&right) {
                        report.ideal_stable = false;
                        report.violations.push(format!("ideal part not stable in degrees ({j},{k})"));
                    }
                }
            }
            for a in &ideal_part[j] {
                for b in &ideal_part[k] {
                    let prod = complex.cup_product(j, a, k, b)?;
                    if prod.iter().any(|x| !x.is_zero()) {
                        report.ideal_square_zero = false;
                        report.violations.push(format!("ideal part product in degrees ({j},{k}) is nonzero"));
                    }
                }
            }
        }
    }
    report.violations.dedup();
    Ok(report)
}
