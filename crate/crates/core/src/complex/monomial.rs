//! Basis monomials of the super-exterior algebra on the dual space: a set of
//! even duals (exterior part) and an exponent vector on the odd duals
//! (polynomial or divided-power part).

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::algebra::AlgebraSpec;
use crate::exactla::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    even: u64,
    odd: Vec<u32>,
}

/// How odd exponents combine under multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerRule {
    /// Ordinary powers: `y^a · y^b = y^{a+b}`.
    Plain,
    /// Divided powers with `y^(a) · y^(b) = C(a+b, a) y^(a+b)` and exponents
    /// bounded strictly by `bounds[j]`.
    Divided { bounds: Vec<u32> },
}

impl PowerRule {
    pub fn bound(&self, j: usize) -> Option<u32> {
        match self {
            PowerRule::Plain => None,
            PowerRule::Divided { bounds } => Some(bounds[j]),
        }
    }
}

impl Monomial {
    pub fn one(n_odd: usize) -> Self {
        Monomial {
            even: 0,
            odd: vec![0; n_odd],
        }
    }

    pub fn from_parts(even_indices: &[usize], odd_exps: Vec<u32>) -> Self {
        let mut even = 0u64;
        for &i in even_indices {
            assert!(i < 64, "even index out of range");
            even |= 1 << i;
        }
        Monomial { even, odd: odd_exps }
    }

    /// Degree-one monomial for global basis index `g`.
    pub fn generator(spec: &AlgebraSpec, g: usize) -> Self {
        let mut m = Monomial::one(spec.odd_dim());
        if spec.is_odd(g) {
            m.odd[g - spec.even_dim()] = 1;
        } else {
            m.even = 1 << g;
        }
        m
    }

    /// Like [`Monomial::generator`] but with an arbitrary power on an odd dual.
    pub fn odd_power(n_odd: usize, j: usize, power: u32) -> Self {
        let mut m = Monomial::one(n_odd);
        m.odd[j] = power;
        m
    }

    pub fn even_mask(&self) -> u64 {
        self.even
    }

    pub fn even_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.even;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn has_even(&self, i: usize) -> bool {
        self.even >> i & 1 == 1
    }

    pub fn odd_exps(&self) -> &[u32] {
        &self.odd
    }

    pub fn even_count(&self) -> usize {
        self.even.count_ones() as usize
    }

    pub fn odd_total(&self) -> u64 {
        self.odd.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn degree(&self) -> usize {
        self.even_count() + self.odd_total() as usize
    }

    pub fn parity(&self) -> u8 {
        (self.odd_total() % 2) as u8
    }

    pub(crate) fn without_even(&self, i: usize) -> Self {
        let mut m = self.clone();
        m.even &= !(1 << i);
        m
    }

    pub(crate) fn lowered_odd(&self, j: usize) -> Self {
        let mut m = self.clone();
        m.odd[j] -= 1;
        m
    }

    /// Product `self · other` as `(monomial, coefficient)`, or `None` when it
    /// vanishes.
    ///
    /// Even duals anticommute among themselves and with odd duals; odd duals
    /// commute with each other. The sign is that of sorting the concatenated
    /// word.
    pub fn times<F: Field>(&self, other: &Monomial, field: &F, rule: &PowerRule) -> Option<(Monomial, F::Elem)> {
        if self.even & other.even != 0 {
            return None;
        }
        let mut inversions = u64::from(other.even.count_ones()) * self.odd_total();
        for g in other.even_indices() {
            inversions += u64::from((self.even >> g >> 1).count_ones());
        }
        let mut coeff = field.pow_neg_one(inversions);
        let mut odd = Vec::with_capacity(self.odd.len());
        for (j, (&r, &s)) in self.odd.iter().zip(&other.odd).enumerate() {
            let sum = r + s;
            if let PowerRule::Divided { bounds } = rule {
                if r > 0 && s > 0 {
                    let c = field.binomial(u64::from(sum), u64::from(r));
                    if sum >= bounds[j] {
                        assert!(field.is_zero(&c), "carry past the truncation must kill the binomial");
                        return None;
                    }
                    if field.is_zero(&c) {
                        return None;
                    }
                    coeff = field.mul(&coeff, &c);
                } else if sum >= bounds[j] {
                    return None;
                }
            }
            odd.push(sum);
        }
        Some((
            Monomial {
                even: self.even | other.even,
                odd,
            },
            coeff,
        ))
    }

    /// Parses the forms produced by [`Monomial::render`], also accepting
    /// whitespace separators and omitted `*`: `X0 Y1^2`, `X0*∧Y1*^(2)`, `1`.
    pub fn parse(spec: &AlgebraSpec, text: &str) -> Option<Monomial> {
        let mut m = Monomial::one(spec.odd_dim());
        let cleaned = text.replace('∧', " ").replace('*', "");
        for token in cleaned.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, power) = match token.split_once('^') {
                Some((n, e)) => (n, e.trim_start_matches('(').trim_end_matches(')').parse::<u32>().ok()?),
                None => (token, 1),
            };
            let g = spec.index_of(name).ok()?;
            if spec.is_odd(g) {
                m.odd[g - spec.even_dim()] += power;
            } else {
                if power != 1 || m.has_even(g) {
                    return None;
                }
                m.even |= 1 << g;
            }
        }
        Some(m)
    }

    /// Human-readable form such as `X0*∧Y1*^2`, or `X0*∧Y1*^(2)` for divided
    /// powers; the unit is `1`.
    pub fn render(&self, spec: &AlgebraSpec, divided: bool) -> String {
        let mut parts: Vec<String> = self.even_indices().map(|i| format!("{}*", spec.name(i))).collect();
        for (j, &e) in self.odd.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut s = format!("{}*", spec.name(spec.even_dim() + j));
            if e > 1 {
                if divided {
                    let _ = write!(s, "^({e})");
                } else {
                    let _ = write!(s, "^{e}");
                }
            }
            parts.push(s);
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("∧")
        }
    }
}

impl Ord for Monomial {
    /// Even index lists compared lexicographically (a proper prefix sorts
    /// first), then odd exponent vectors lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.even ^ other.even;
        if diff != 0 {
            let low = diff.trailing_zeros();
            let self_has = self.even >> low & 1 == 1;
            // The side holding index `low` is smaller at this position unless
            // the other side has no entries left.
            let rest_of_other = if self_has { other.even } else { self.even } >> low;
            let holder_smaller = rest_of_other != 0;
            return if holder_smaller == self_has { Ordering::Less } else { Ordering::Greater };
        }
        self.odd.cmp(&other.odd)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `k`, in canonical order.
pub fn monomials_of_degree(n_even: usize, n_odd: usize, k: usize, rule: &PowerRule) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut subset = Vec::new();
    for s in 0..=k.min(n_even) {
        let mut odd_parts = Vec::new();
        let mut exps = vec![0u32; n_odd];
        odd_vectors(&mut exps, 0, (k - s) as u32, rule, &mut odd_parts);
        if odd_parts.is_empty() {
            continue;
        }
        subsets(n_even, s, 0, &mut subset, &mut |set| {
            for odd in &odd_parts {
                out.push(Monomial::from_parts(set, odd.clone()));
            }
        });
    }
    out.sort();
    out
}

fn subsets(n: usize, size: usize, start: usize, current: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if current.len() == size {
        emit(current);
        return;
    }
    for i in start..n {
        if n - i < size - current.len() {
            break;
        }
        current.push(i);
        subsets(n, size, i + 1, current, emit);
        current.pop();
    }
}

fn odd_vectors(exps: &mut Vec<u32>, j: usize, remaining: u32, rule: &PowerRule, out: &mut Vec<Vec<u32>>) {
    if j == exps.len() {
        if remaining == 0 {
            out.push(exps.clone());
        }
        return;
    }
    let cap = rule.bound(j).map_or(remaining, |b| remaining.min(b - 1));
    for e in 0..=cap {
        exps[j] = e;
        odd_vectors(exps, j + 1, remaining - e, rule, out);
    }
    exps[j] = 0;
}

/// `dim` of the degree-`k` piece, from the closed form
/// `Σ_s C(n_even, s) · #{odd vectors of weight k − s}`.
pub fn count_of_degree(n_even: usize, n_odd: usize, k: usize, rule: &PowerRule) -> u128 {
    // counts[w] = number of odd exponent vectors of weight w
    let mut counts = vec![0u128; k + 1];
    counts[0] = 1;
    for j in 0..n_odd {
        let cap = rule.bound(j).map_or(k, |b| (b as usize - 1).min(k));
        let mut next = vec![0u128; k + 1];
        for (w, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for e in 0..=cap.min(k - w) {
                next[w + e] += c;
            }
        }
        counts = next;
    }
    let mut total = 0u128;
    let mut binom = 1u128;
    for s in 0..=n_even.min(k) {
        total += binom * counts[k - s];
        binom = binom * (n_even - s) as u128 / (s as u128 + 1);
    }
    total
}
