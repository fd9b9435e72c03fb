//! Scalar fields: the rationals and prime fields `F_p` with `p > 3`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinAlgError;

/// A field whose elements are manipulated through a field value.
///
/// Keeping the arithmetic on the field rather than on the element lets prime
/// field elements be plain `u64`s while the modulus lives in one place.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; fails when the denominator is not invertible.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, LinAlgError>;
    /// Binomial coefficient `C(n, k)` as a field element.
    fn binomial(&self, n: u64, k: u64) -> Self::Elem;
    fn kind(&self) -> FieldKind;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem, LinAlgError>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, LinAlgError> {
        let inv = self.inv(b).ok_or(LinAlgError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn pow_neg_one(&self, exponent: u64) -> Self::Elem {
        if exponent % 2 == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }
}

/// Field tag carried by scalars, matrices and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rational,
    ModP(u64),
}

impl FieldKind {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::ModP(p) => *p,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::ModP(p) => write!(f, "F_{p}"),
        }
    }
}

/// The field of rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, LinAlgError> {
        Ok(q.clone())
    }
    fn binomial(&self, n: u64, k: u64) -> BigRational {
        BigRational::from_integer(binomial_exact(n, k))
    }
    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational, LinAlgError> {
        match s {
            Scalar::Rational(q) => Ok(q.clone()),
            Scalar::ModP { .. } => Err(LinAlgError::MixedField),
        }
    }
}

/// The prime field `F_p`; construction rejects non-primes and `p ∈ {2, 3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinAlgError> {
        if p <= 3 || !is_prime(p) || p >= (1 << 31) {
            return Err(LinAlgError::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = n.mod_floor(&m);
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        mod_inverse(*a, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64, LinAlgError> {
        let den = self.reduce_bigint(q.denom());
        let inv = mod_inverse(den, self.p).ok_or(LinAlgError::DenominatorDivisibleByP {
            value: q.to_string(),
            p: self.p,
        })?;
        Ok(self.mul(&self.reduce_bigint(q.numer()), &inv))
    }
    fn binomial(&self, n: u64, k: u64) -> u64 {
        binomial_lucas(n, k, self.p)
    }
    fn kind(&self) -> FieldKind {
        FieldKind::ModP(self.p)
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::ModP {
            value: *a,
            modulus: self.p,
        }
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u64, LinAlgError> {
        match s {
            Scalar::ModP { value, modulus } if *modulus == self.p => Ok(*value),
            _ => Err(LinAlgError::MixedField),
        }
    }
}

/// A tagged exact scalar: a reduced rational or a residue modulo a prime `p > 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    ModP { value: u64, modulus: u64 },
}

/// Arithmetic operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn mod_p(value: i64, modulus: u64) -> Result<Scalar, LinAlgError> {
        let field = PrimeField::new(modulus)?;
        Ok(Scalar::ModP {
            value: field.from_i64(value),
            modulus,
        })
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::ModP { modulus, .. } => FieldKind::ModP(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::ModP { value, .. } => *value == 0,
        }
    }

    /// Image of a rational scalar in `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar, LinAlgError> {
        let field = PrimeField::new(p)?;
        match self {
            Scalar::Rational(q) => Ok(field.to_scalar(&field.from_rational(q)?)),
            Scalar::ModP { modulus, .. } if *modulus == p => Ok(self.clone()),
            Scalar::ModP { .. } => Err(LinAlgError::MixedField),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::ModP { value, .. } => write!(f, "{value}"),
        }
    }
}

pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, LinAlgError> {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => {
            let q = Rationals;
            let r = match op {
                ArithOp::Add => q.add(x, y),
                ArithOp::Sub => q.sub(x, y),
                ArithOp::Mul => q.mul(x, y),
                ArithOp::Div => q.div(x, y)?,
            };
            Ok(Scalar::Rational(r))
        }
        (
            Scalar::ModP { value: x, modulus: p },
            Scalar::ModP { value: y, modulus: p2 },
        ) if p == p2 => {
            let f = PrimeField::new(*p)?;
            let r = match op {
                ArithOp::Add => f.add(x, y),
                ArithOp::Sub => f.sub(x, y),
                ArithOp::Mul => f.mul(x, y),
                ArithOp::Div => f.div(x, y)?,
            };
            Ok(f.to_scalar(&r))
        }
        _ => Err(LinAlgError::MixedField),
    }
}

/// `C(n, k)` in the field described by `kind`: exact over `Q`, via Lucas over `F_p`.
pub fn binomial(n: u64, k: u64, kind: FieldKind) -> Result<Scalar, LinAlgError> {
    match kind {
        FieldKind::Rational => Ok(Scalar::Rational(Rationals.binomial(n, k))),
        FieldKind::ModP(p) => {
            let f = PrimeField::new(p)?;
            Ok(f.to_scalar(&f.binomial(n, k)))
        }
    }
}

/// Exact binomial coefficient, zero when `k > n`.
pub fn binomial_exact(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k) mod p` by Lucas' theorem: the product of digitwise binomials in base `p`.
pub fn binomial_lucas(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binomial_mod(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    // n < p, so every factor below is invertible.
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_inverse(den, p).expect("k < p") % p
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    Some(old_s.rem_euclid(p as i128) as u64)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses `"int"` or `"int/int"` into a reduced rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Canonical `"p/q"` (or `"p"` when integral) rendering of a rational.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_addition_is_reduced() {
        let r = field_arith(&Scalar::rational(1, 2), &Scalar::rational(1, 3), ArithOp::Add).unwrap();
        assert_eq!(r, Scalar::rational(5, 6));
        assert_eq!(Scalar::rational(2, 4), Scalar::rational(1, 2));
    }

    #[test]
    fn prime_field_division() {
        let a = Scalar::mod_p(2, 5).unwrap();
        let b = Scalar::mod_p(3, 5).unwrap();
        assert_eq!(
            field_arith(&a, &b, ArithOp::Div).unwrap(),
            Scalar::ModP { value: 4, modulus: 5 }
        );
    }

    #[test]
    fn half_reduces_to_three_mod_five() {
        // 2 * 3 = 6 = 1 mod 5
        assert_eq!(
            Scalar::rational(1, 2).reduce_mod(5).unwrap(),
            Scalar::ModP { value: 3, modulus: 5 }
        );
        assert!(matches!(
            Scalar::rational(1, 5).reduce_mod(5),
            Err(LinAlgError::DenominatorDivisibleByP { .. })
        ));
    }

    #[test]
    fn arithmetic_errors() {
        let zero = Scalar::rational(0, 1);
        assert_eq!(
            field_arith(&Scalar::rational(1, 1), &zero, ArithOp::Div),
            Err(LinAlgError::DivisionByZero)
        );
        let a = Scalar::mod_p(1, 5).unwrap();
        let b = Scalar::mod_p(1, 7).unwrap();
        assert_eq!(field_arith(&a, &b, ArithOp::Add), Err(LinAlgError::MixedField));
        assert_eq!(
            field_arith(&a, &Scalar::rational(1, 1), ArithOp::Mul),
            Err(LinAlgError::MixedField)
        );
    }

    #[test]
    fn small_characteristics_rejected() {
        for p in [0, 1, 2, 3, 4, 9, 15] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        assert!(PrimeField::new(5).is_ok());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(
            binomial(5, 2, FieldKind::ModP(5)).unwrap(),
            Scalar::ModP { value: 0, modulus: 5 }
        );
        assert_eq!(binomial(4, 2, FieldKind::Rational).unwrap(), Scalar::rational(6, 1));
        assert_eq!(
            binomial(3, 0, FieldKind::ModP(7)).unwrap(),
            Scalar::ModP { value: 1, modulus: 7 }
        );
        assert_eq!(binomial_exact(3, 5), BigInt::zero());
    }

    #[test]
    fn lucas_matches_exact_reduction() {
        for p in [5u64, 7, 11] {
            let m = BigInt::from(p);
            for n in 0..=200u64 {
                for k in 0..=n + 1 {
                    let exact = binomial_exact(n, k).mod_floor(&m).to_u64().unwrap();
                    assert_eq!(binomial_lucas(n, k, p), exact, "C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2"), Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("-3"), Some(BigRational::from_integer((-3).into())));
        assert_eq!(parse_rational(" 4/-6 "), Some(BigRational::new((-2).into(), 3.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&BigRational::new(3.into(), (-6).into())), "-1/2");
    }
}
