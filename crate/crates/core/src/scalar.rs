//! Exact scalar fields.
//!
//! Everything in the crate is generic over [`Scalar`]. Two fields are
//! provided: arbitrary-precision rationals ([`Rational`]) and prime fields
//! with a runtime modulus ([`Fp`]). There is no floating point anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational numbers, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Which field a scalar value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Prime(u64),
    /// A prime-field constant that has not yet met a value carrying a modulus
    /// (produced by `zero()`, `one()`, `from_i64`).
    Unbound,
}

impl FieldKind {
    /// Two kinds are compatible when they can meet in one computation.
    pub fn compatible(self, other: FieldKind) -> bool {
        match (self, other) {
            (FieldKind::Unbound, _) | (_, FieldKind::Unbound) => true,
            (a, b) => a == b,
        }
    }
}

/// Field declaration as it appears in fixture files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("`{0}` is not an exact coefficient (floating-point literals are rejected)")]
    NotExact(String),
    #[error("`{0}` is not a valid coefficient")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("coefficient `{value}` belongs to F_{found}, but the fixture field is {expected}")]
    WrongField {
        value: String,
        found: u64,
        expected: FieldSpec,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("`{found}` is not in canonical form (expected `{canonical}`)")]
    NonCanonical { found: String, canonical: String },
}

/// An exact field element.
///
/// Arithmetic never rounds; `try_inv` returns `None` exactly on zero.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn try_inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    fn field(&self) -> FieldKind;

    /// Parses a coefficient string in the given field.
    fn parse_in(s: &str, field: FieldSpec) -> Result<Self, ScalarParseError>;

    /// Brings a value into the given field; a no-op for fields without
    /// runtime context.
    fn bind(self, _field: FieldSpec) -> Self {
        self
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let mut t = a.clone();
        t *= b;
        *self += &t;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut t = self.clone();
        t *= other;
        t
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        other.try_inv().map(|inv| self.mul_ref(&inv))
    }
}

fn reject_inexact(s: &str) -> Result<(), ScalarParseError> {
    if s.contains(['.', 'e', 'E']) {
        return Err(ScalarParseError::NotExact(s.to_string()));
    }
    Ok(())
}

fn parse_bigint(s: &str, whole: &str) -> Result<BigInt, ScalarParseError> {
    let t = s.trim();
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ScalarParseError::Malformed(whole.to_string()));
    }
    BigInt::from_str(t).map_err(|_| ScalarParseError::Malformed(whole.to_string()))
}

/// Parses `"p/q"` or `"n"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarParseError> {
    let s = s.trim();
    reject_inexact(s)?;
    match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_bigint(num, s)?;
            let den = parse_bigint(den, s)?;
            if den.is_zero() {
                return Err(ScalarParseError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_bigint(s, s)?)),
    }
}

impl Scalar for Rational {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn field(&self) -> FieldKind {
        FieldKind::Rational
    }

    fn parse_in(s: &str, field: FieldSpec) -> Result<Self, ScalarParseError> {
        match field {
            FieldSpec::Rational => parse_rational(s),
            FieldSpec::Prime { .. } => Err(ScalarParseError::Malformed(format!(
                "{s} (rational scalar requested for a prime-field fixture)"
            ))),
        }
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// Trial-division primality test; moduli in fixtures are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Residue modulo a prime chosen at runtime.
///
/// Constants created without a modulus (`zero()`, `one()`, `from_i64`) are
/// unbound integers and adopt the modulus of the first bound value they are
/// combined with. Combining two different moduli panics.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    value: i128,
    modulus: u64,
}

impl Fp {
    /// Residue of `v` modulo the prime `p`.
    pub fn new(v: i64, p: u64) -> Result<Self, ScalarParseError> {
        if !is_prime(p) {
            return Err(ScalarParseError::NotPrime(p));
        }
        Ok(Self::unbound(v as i128).with_modulus(p))
    }

    fn unbound(value: i128) -> Self {
        Fp { value, modulus: 0 }
    }

    fn with_modulus(self, p: u64) -> Self {
        debug_assert!(p > 0);
        Fp {
            value: self.value.rem_euclid(p as i128),
            modulus: p,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        (self.modulus != 0).then_some(self.modulus)
    }

    /// Canonical representative in `0..p` (or the raw integer when unbound).
    pub fn residue(&self) -> i128 {
        self.value
    }

    fn align(a: Fp, b: Fp) -> (Fp, Fp, u64) {
        match (a.modulus, b.modulus) {
            (x, y) if x == y => (a, b, x),
            (0, y) => (a.with_modulus(y), b, y),
            (x, 0) => (a, b.with_modulus(x), x),
            (x, y) => panic!("arithmetic mixes F_{x} and F_{y}"),
        }
    }

    fn finish(value: i128, modulus: u64) -> Fp {
        if modulus == 0 {
            Fp::unbound(value)
        } else {
            Fp {
                value: value.rem_euclid(modulus as i128),
                modulus,
            }
        }
    }

    fn pow_mod(mut base: i128, mut exp: u64, p: i128) -> i128 {
        let mut acc = 1i128;
        base = base.rem_euclid(p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (self.modulus, other.modulus) {
            (x, y) if x == y => self.value == other.value,
            (0, y) => self.with_modulus(y).value == other.value,
            (x, 0) => self.value == other.with_modulus(x).value,
            _ => false,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::align(self, rhs);
        Fp::finish(
            a.value.checked_add(b.value).expect("unbound integer overflow"),
            p,
        )
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::align(self, rhs);
        Fp::finish(
            a.value.checked_sub(b.value).expect("unbound integer overflow"),
            p,
        )
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::align(self, rhs);
        Fp::finish(
            a.value.checked_mul(b.value).expect("unbound integer overflow"),
            p,
        )
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::finish(-self.value, self.modulus)
    }
}

impl<'a> AddAssign<&'a Fp> for Fp {
    fn add_assign(&mut self, rhs: &'a Fp) {
        *self = *self + *rhs;
    }
}

impl<'a> SubAssign<&'a Fp> for Fp {
    fn sub_assign(&mut self, rhs: &'a Fp) {
        *self = *self - *rhs;
    }
}

impl<'a> MulAssign<&'a Fp> for Fp {
    fn mul_assign(&mut self, rhs: &'a Fp) {
        *self = *self * *rhs;
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp::unbound(0)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp::unbound(1)
    }
}

impl Scalar for Fp {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.modulus == 0 {
            return match self.value {
                1 | -1 => Some(*self),
                _ => None,
            };
        }
        let p = self.modulus as i128;
        Some(Fp {
            value: Fp::pow_mod(self.value, self.modulus - 2, p),
            modulus: self.modulus,
        })
    }

    fn from_i64(v: i64) -> Self {
        Fp::unbound(v as i128)
    }

    fn field(&self) -> FieldKind {
        if self.modulus == 0 {
            FieldKind::Unbound
        } else {
            FieldKind::Prime(self.modulus)
        }
    }

    fn parse_in(s: &str, field: FieldSpec) -> Result<Self, ScalarParseError> {
        let FieldSpec::Prime { p } = field else {
            return Err(ScalarParseError::Malformed(format!(
                "{s} (prime-field scalar requested for a rational fixture)"
            )));
        };
        if !is_prime(p) {
            return Err(ScalarParseError::NotPrime(p));
        }
        let t = s.trim();
        reject_inexact(t)?;
        let (body, declared) = match t.split_once("mod") {
            Some((r, m)) => {
                let m = parse_bigint(m, t)?;
                let m: u64 = m
                    .try_into()
                    .map_err(|_| ScalarParseError::Malformed(t.to_string()))?;
                (r.trim(), Some(m))
            }
            None => (t, None),
        };
        if let Some(m) = declared {
            if m != p {
                return Err(ScalarParseError::WrongField {
                    value: t.to_string(),
                    found: m,
                    expected: field,
                });
            }
        }
        // Rational literals are read as num * den^{-1} in F_p.
        let (num, den) = match body.split_once('/') {
            Some((a, b)) => (parse_bigint(a, t)?, parse_bigint(b, t)?),
            None => (parse_bigint(body, t)?, BigInt::one()),
        };
        let pm = BigInt::from(p);
        let reduce = |x: &BigInt| -> i128 {
            let r = x.mod_floor(&pm);
            i128::try_from(r).expect("residue fits")
        };
        let num = Fp {
            value: reduce(&num),
            modulus: p,
        };
        let den = Fp {
            value: reduce(&den),
            modulus: p,
        };
        let inv = den
            .try_inv()
            .ok_or_else(|| ScalarParseError::ZeroDenominator(t.to_string()))?;
        Ok(num * inv)
    }

    fn bind(self, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Prime { p } if self.modulus == 0 => self.with_modulus(p),
            _ => self,
        }
    }
}

/// Canonical string form: `"p/q"`, `"n"` or `"r mod p"`.
pub fn format_scalar<S: Scalar>(x: &S, field: FieldSpec) -> String {
    x.clone().bind(field).to_string()
}

/// True when a rational is in canonical form.
pub fn is_canonical(x: &Rational) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn rational_parse_and_print() {
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("-3").to_string(), "-3");
        assert_eq!(q("4/-2").to_string(), "-2");
        assert_eq!(q("0/5").to_string(), "0");
    }

    #[test]
    fn rational_rejects_floats_and_junk() {
        assert!(matches!(parse_rational("0.5"), Err(ScalarParseError::NotExact(_))));
        assert!(matches!(parse_rational("1e3"), Err(ScalarParseError::NotExact(_))));
        assert!(matches!(parse_rational("1/0"), Err(ScalarParseError::ZeroDenominator(_))));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("+-1").is_err());
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(q("2/3").try_inv(), Some(q("3/2")));
        assert_eq!(Rational::zero().try_inv(), None);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f7 = FieldSpec::Prime { p: 7 };
        let a = Fp::parse_in("3 mod 7", f7).unwrap();
        let b = Fp::parse_in("5", f7).unwrap();
        assert_eq!((a + b).to_string(), "1 mod 7");
        assert_eq!((a * b).to_string(), "1 mod 7");
        assert_eq!(a.try_inv().unwrap(), b);
        assert_eq!(Fp::parse_in("1/2", f7).unwrap().to_string(), "4 mod 7");
        assert_eq!((-a).to_string(), "4 mod 7");
    }

    #[test]
    fn unbound_constants_adopt_modulus() {
        let f5 = FieldSpec::Prime { p: 5 };
        let three = Fp::parse_in("3", f5).unwrap();
        let mut acc = Fp::zero();
        acc += &three;
        assert_eq!(acc.field(), FieldKind::Prime(5));
        assert_eq!(Fp::from_i64(8), three);
        assert_eq!(Fp::one() - Fp::from_i64(3) * Fp::one(), Fp::new(3, 5).unwrap());
    }

    #[test]
    fn prime_parse_errors() {
        let f5 = FieldSpec::Prime { p: 5 };
        assert!(matches!(
            Fp::parse_in("2 mod 7", f5),
            Err(ScalarParseError::WrongField { .. })
        ));
        assert!(matches!(
            Fp::parse_in("1", FieldSpec::Prime { p: 6 }),
            Err(ScalarParseError::NotPrime(6))
        ));
        assert!(matches!(Fp::parse_in("1/5", f5), Err(ScalarParseError::ZeroDenominator(_))));
        assert!(matches!(Fp::parse_in("0.5", f5), Err(ScalarParseError::NotExact(_))));
    }

    #[test]
    #[should_panic(expected = "mixes")]
    fn mixed_moduli_panic() {
        let _ = Fp::new(1, 5).unwrap() + Fp::new(1, 7).unwrap();
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rat() -> impl Strategy<Value = Rational> {
            (-50i64..50, 1i64..50).prop_map(|(n, d)| {
                Rational::new(BigInt::from(n), BigInt::from(d))
            })
        }

        proptest! {
            #[test]
            fn rational_results_are_canonical(a in rat(), b in rat(), c in rat()) {
                let x = a.clone() * b.clone() + c.clone();
                let y = (a - c) * b;
                prop_assert!(is_canonical(&x));
                prop_assert!(is_canonical(&y));
                prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
            }

            #[test]
            fn fp_inverse_is_inverse(v in 1i64..1000) {
                let x = Fp::new(v, 101).unwrap();
                if !x.is_zero() {
                    prop_assert_eq!(x * x.try_inv().unwrap(), Fp::one());
                }
            }
        }
    }
}
