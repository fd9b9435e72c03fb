//! Cochain complexes of a Lie superalgebra: the ordinary complex over the
//! rationals and the truncated divided-power complex over a prime field share
//! one implementation that differs only in the power rule.

mod cohomology;
mod monomial;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::AlgebraSpec;
use crate::exactla::{sparse_normalize, ExactMatrix, Field, LinAlgError, SparseVec};

pub use cohomology::{ClassId, CohomologyBasis, ProductEntry, ProductTable};
pub use monomial::{count_of_degree, monomials_of_degree, Monomial, PowerRule};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ComplexError {
    #[error(transparent)]
    Linear(#[from] LinAlgError),
    #[error("structure constant {value} has a denominator divisible by {p}")]
    DenominatorDivisibleByP { value: String, p: u64 },
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("cochains come from complexes with different truncations")]
    MixedTruncation,
}

/// Sparse linear combination of monomials of one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<E> {
    pub degree: usize,
    /// Sorted by canonical monomial order, no zero coefficients.
    pub terms: Vec<(Monomial, E)>,
}

impl<E> Cochain<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Ordered monomial basis of one degree.
#[derive(Debug)]
pub struct Basis {
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    fn new(degree: usize, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Basis {
            degree,
            monomials,
            index,
        }
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn len(&self) -> usize {
        self.monomials.len()
    }
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

type Terms<E> = Vec<(Monomial, E)>;

/// A cochain complex with per-degree caches. Every cache entry is written
/// once; concurrent readers share the stored `Arc`.
pub struct Complex<F: Field> {
    field: F,
    spec: Arc<AlgebraSpec>,
    rule: PowerRule,
    generator_differentials: Vec<Terms<F::Elem>>,
    bases: Mutex<BTreeMap<usize, Arc<Basis>>>,
    differentials: Mutex<BTreeMap<usize, Arc<ExactMatrix<F>>>>,
    cohomology: Mutex<BTreeMap<usize, Arc<CohomologyBasis<F>>>>,
}

impl<F: Field> std::fmt::Debug for Complex<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Complex")
            .field("field", &self.field.kind())
            .field("rule", &self.rule)
            .finish_non_exhaustive()
    }
}

fn cached<V>(map: &Mutex<BTreeMap<usize, Arc<V>>>, k: usize, make: impl FnOnce() -> V) -> Arc<V> {
    if let Some(v) = map.lock().expect("cache lock").get(&k) {
        return Arc::clone(v);
    }
    let value = Arc::new(make());
    Arc::clone(map.lock().expect("cache lock").entry(k).or_insert(value))
}

fn cached_result<V, E>(
    map: &Mutex<BTreeMap<usize, Arc<V>>>,
    k: usize,
    make: impl FnOnce() -> Result<V, E>,
) -> Result<Arc<V>, E> {
    if let Some(v) = map.lock().expect("cache lock").get(&k) {
        return Ok(Arc::clone(v));
    }
    let value = Arc::new(make()?);
    Ok(Arc::clone(map.lock().expect("cache lock").entry(k).or_insert(value)))
}

impl<F: Field> Complex<F> {
    /// Builds the complex. Diagonal brackets `[x_k, x_k] = Σ a^i x_i` contribute
    /// `−½ a x_k²` to `d(x_i*)` with plain powers and `−a x_k^(2)` with divided
    /// powers.
    pub fn new(field: F, spec: Arc<AlgebraSpec>, rule: PowerRule) -> Result<Self, ComplexError> {
        if let PowerRule::Divided { bounds } = &rule {
            if bounds.len() != spec.odd_dim() || bounds.iter().any(|&b| b < 2) {
                return Err(ComplexError::InvalidTruncation(format!(
                    "need one bound >= 2 per odd generator, got {bounds:?}"
                )));
            }
        }
        let convert = |q: &BigRational| {
            field.from_rational(q).map_err(|e| match e {
                LinAlgError::DenominatorDivisibleByP { value, p } => ComplexError::DenominatorDivisibleByP { value, p },
                other => ComplexError::Linear(other),
            })
        };
        let half = match rule {
            PowerRule::Plain => BigRational::new(1.into(), 2.into()),
            PowerRule::Divided { .. } => BigRational::from_integer(1.into()),
        };
        let n_odd = spec.odd_dim();
        let mut generator_differentials = vec![Vec::new(); spec.dim()];
        for (&(k, l), out) in spec.stored_brackets() {
            let (m, scale) = if k == l {
                (Monomial::odd_power(n_odd, k - spec.even_dim(), 2), -half.clone())
            } else {
                let (m, c) = Monomial::generator(&spec, k)
                    .times(&Monomial::generator(&spec, l), &field, &rule)
                    .expect("distinct generators multiply to a basis monomial");
                debug_assert!(field.is_one(&c));
                let sign = if spec.is_odd(k) && spec.is_odd(l) { -1 } else { 1 };
                (m, BigRational::from_integer(sign.into()))
            };
            for (i, a) in out {
                let c = convert(&(a * &scale))?;
                generator_differentials[*i].push((m.clone(), c));
            }
        }
        let generator_differentials = generator_differentials
            .into_iter()
            .map(|terms| normalize_terms(&field, terms))
            .collect();
        Ok(Complex {
            field,
            spec,
            rule,
            generator_differentials,
            bases: Mutex::default(),
            differentials: Mutex::default(),
            cohomology: Mutex::default(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }
    pub fn rule(&self) -> &PowerRule {
        &self.rule
    }
    pub fn is_divided(&self) -> bool {
        matches!(self.rule, PowerRule::Divided { .. })
    }

    /// Highest nonzero degree, when finite.
    pub fn top_degree(&self) -> Option<usize> {
        match &self.rule {
            PowerRule::Divided { bounds } => {
                Some(self.spec.even_dim() + bounds.iter().map(|&b| b as usize - 1).sum::<usize>())
            }
            PowerRule::Plain if self.spec.odd_dim() == 0 => Some(self.spec.even_dim()),
            PowerRule::Plain => None,
        }
    }

    pub fn basis(&self, k: usize) -> Arc<Basis> {
        cached(&self.bases, k, || {
            let monomials = monomials_of_degree(self.spec.even_dim(), self.spec.odd_dim(), k, &self.rule);
            Basis::new(k, monomials)
        })
    }

    /// `d(x_g*)` as a degree-2 cochain.
    pub fn d_generator(&self, g: usize) -> Cochain<F::Elem> {
        Cochain {
            degree: 2,
            terms: self.generator_differentials[g].clone(),
        }
    }

    pub fn generator_is_closed(&self, g: usize) -> bool {
        self.generator_differentials[g].is_empty()
    }

    /// Graded Leibniz rule on one monomial:
    /// `d(u) = Σ_j ± c_j d(x_j*) · u/x_j*` where the sign is
    /// `(−1)^{(degree before j) + |x_j|·(odd degree before j)}` and `c_j` is the
    /// exponent of `x_j*` for plain powers and `1` for divided powers.
    pub fn d_monomial(&self, u: &Monomial) -> Terms<F::Elem> {
        let f = &self.field;
        let m = self.spec.even_dim();
        let mut acc: Vec<(Monomial, F::Elem)> = Vec::new();
        let mut before = 0u64;
        for i in u.even_indices() {
            let dg = &self.generator_differentials[i];
            if !dg.is_empty() {
                let rest = u.without_even(i);
                let sign = f.pow_neg_one(before);
                self.push_products(&mut acc, dg, &rest, &sign);
            }
            before += 1;
        }
        let mut odd_before = 0u64;
        for (j, &r) in u.odd_exps().iter().enumerate() {
            if r == 0 {
                continue;
            }
            let dg = &self.generator_differentials[m + j];
            if !dg.is_empty() {
                let rest = u.lowered_odd(j);
                let mut scale = f.pow_neg_one(before + odd_before);
                if !self.is_divided() {
                    scale = f.mul(&scale, &f.from_i64(i64::from(r)));
                }
                self.push_products(&mut acc, dg, &rest, &scale);
            }
            before += u64::from(r);
            odd_before += u64::from(r);
        }
        normalize_terms(f, acc)
    }

    fn push_products(&self, acc: &mut Terms<F::Elem>, left: &Terms<F::Elem>, right: &Monomial, scale: &F::Elem) {
        for (m2, c) in left {
            if let Some((prod, coeff)) = m2.times(right, &self.field, &self.rule) {
                let c = self.field.mul(&self.field.mul(c, scale), &coeff);
                acc.push((prod, c));
            }
        }
    }

    /// Matrix of `d: C^k → C^{k+1}` in the canonical bases.
    pub fn differential(&self, k: usize) -> Arc<ExactMatrix<F>> {
        cached(&self.differentials, k, || {
            let source = self.basis(k);
            let target = self.basis(k + 1);
            let columns: Vec<SparseVec<F::Elem>> = source
                .monomials()
                .par_iter()
                .map(|u| {
                    self.d_monomial(u)
                        .into_iter()
                        .map(|(m, c)| (target.position(&m).expect("differential stays in the basis"), c))
                        .collect()
                })
                .collect();
            ExactMatrix::from_columns(self.field.clone(), target.len(), columns)
        })
    }

    pub fn cochain_from_vector(&self, k: usize, v: &SparseVec<F::Elem>) -> Cochain<F::Elem> {
        let basis = self.basis(k);
        let mut terms: Terms<F::Elem> = v.iter().map(|(i, c)| (basis.monomials()[*i].clone(), c.clone())).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Cochain { degree: k, terms }
    }

    pub fn vector_from_cochain(&self, c: &Cochain<F::Elem>) -> SparseVec<F::Elem> {
        let basis = self.basis(c.degree);
        let v = c
            .terms
            .iter()
            .map(|(m, x)| (basis.position(m).expect("monomial of the stated degree"), x.clone()))
            .collect();
        sparse_normalize(&self.field, v)
    }

    pub fn cochain(&self, terms: Vec<(Monomial, F::Elem)>) -> Cochain<F::Elem> {
        let degree = terms.first().map_or(0, |(m, _)| m.degree());
        assert!(terms.iter().all(|(m, _)| m.degree() == degree), "inhomogeneous cochain");
        Cochain {
            degree,
            terms: normalize_terms(&self.field, terms),
        }
    }

    pub fn d(&self, c: &Cochain<F::Elem>) -> Cochain<F::Elem> {
        let mut acc = Vec::new();
        for (m, x) in &c.terms {
            for (m2, y) in self.d_monomial(m) {
                acc.push((m2, self.field.mul(x, &y)));
            }
        }
        Cochain {
            degree: c.degree + 1,
            terms: normalize_terms(&self.field, acc),
        }
    }

    /// Product of two cochains in the (divided-power) exterior algebra.
    pub fn multiply(&self, a: &Cochain<F::Elem>, b: &Cochain<F::Elem>) -> Cochain<F::Elem> {
        let f = &self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (ma, ca) in &a.terms {
            let cab: Vec<_> = b.terms.iter().map(|(mb, cb)| (mb, f.mul(ca, cb))).collect();
            for (mb, c) in cab {
                if let Some((m, coeff)) = ma.times(mb, f, &self.rule) {
                    let c = f.mul(&c, &coeff);
                    let slot = acc.entry(m).or_insert_with(|| f.zero());
                    *slot = f.add(slot, &c);
                }
            }
        }
        let mut terms: Terms<F::Elem> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|x, y| x.0.cmp(&y.0));
        Cochain {
            degree: a.degree + b.degree,
            terms,
        }
    }

    /// Text form with coefficients, e.g. `X0*∧X1* - 1/2 Y1*^2`.
    pub fn render(&self, c: &Cochain<F::Elem>) -> String {
        if c.terms.is_empty() {
            return "0".into();
        }
        let divided = self.is_divided();
        let mut out = String::new();
        for (idx, (m, x)) in c.terms.iter().enumerate() {
            let s = self.field.to_scalar(x).to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = m.render(&self.spec, divided);
            if mag == "1" {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mag);
            } else {
                out.push_str(&format!("{mag} {body}"));
            }
        }
        out
    }
}

fn normalize_terms<F: Field>(field: &F, mut terms: Terms<F::Elem>) -> Terms<F::Elem> {
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Terms<F::Elem> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((last, acc)) if *last == m => *acc = field.add(acc, &c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !field.is_zero(c));
    out
}
