//! Exact field arithmetic over the rationals and prime fields.
//!
//! Every computation downstream (structure constants, kernels, cup-length
//! spans) runs over these scalars, so arithmetic is exact by construction:
//! rationals use arbitrary-precision integers, prime-field residues are kept
//! canonically in `[0, p)`.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero in {0}")]
    DivisionByZero(FieldSpec),
    #[error("cannot parse {0:?} as a coefficient over {1}")]
    BadCoefficient(String, FieldSpec),
    #[error("cannot parse {0:?} as a field (expected \"Q\" or \"Fp:<p>\")")]
    BadFieldSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum FieldKind {
    Rationals,
    Prime(u64),
}

/// A coefficient field: the rationals, or a prime field of order `p`.
///
/// Primality is checked at construction, so a `FieldSpec` in hand is always
/// a genuine field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    kind: FieldKind,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { kind: FieldKind::Rationals }
    }

    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldSpec { kind: FieldKind::Prime(p) })
    }

    /// Characteristic of the field: `0` for the rationals, `p` otherwise.
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => p,
        }
    }

    /// Parses the textual form used by files and the CLI: `"Q"` or `"Fp:<p>"`.
    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        let text = text.trim();
        if text == "Q" {
            return Ok(Self::rationals());
        }
        if let Some(p) = text.strip_prefix("Fp:") {
            let p: u64 =
                p.trim().parse().map_err(|_| ScalarError::BadFieldSpec(text.to_string()))?;
            return Self::prime(p);
        }
        Err(ScalarError::BadFieldSpec(text.to_string()))
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            FieldKind::Rationals => {
                Scalar { field: *self, repr: Repr::Rational(BigRational::zero()) }
            }
            FieldKind::Prime(_) => Scalar { field: *self, repr: Repr::Residue(0) },
        }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// The image of an integer in the field.
    pub fn integer(&self, value: i64) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar {
                field: *self,
                repr: Repr::Rational(BigRational::from_integer(BigInt::from(value))),
            },
            FieldKind::Prime(p) => {
                let r = (value as i128).rem_euclid(p as i128) as u64;
                Scalar { field: *self, repr: Repr::Residue(r) }
            }
        }
    }

    /// The fraction `num/den` in the field; over a prime field this is
    /// `num * den^{-1}`.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero(*self));
        }
        self.integer(num).div(&self.integer(den))
    }

    /// Parses `"int"` or `"int/int"` coefficient syntax.
    pub fn parse_coeff(&self, text: &str) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::BadCoefficient(text.to_string(), *self);
        let text = text.trim();
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num: BigInt = num_text.parse().map_err(|_| bad())?;
        let den: BigInt = match den_text {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero(*self));
        }
        match self.kind {
            FieldKind::Rationals => {
                Ok(Scalar { field: *self, repr: Repr::Rational(BigRational::new(num, den)) })
            }
            FieldKind::Prime(p) => {
                let reduce = |b: &BigInt| -> u64 {
                    let m = b % BigInt::from(p);
                    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
                    u64::try_from(m).expect("residue fits in u64")
                };
                let n = Scalar { field: *self, repr: Repr::Residue(reduce(&num)) };
                let d = Scalar { field: *self, repr: Repr::Residue(reduce(&den)) };
                n.div(&d)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
}

/// An exact field element. Values are kept in canonical form (reduced
/// fraction with positive denominator, or residue in `[0, p)`), so equality
/// is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_one(),
            Repr::Residue(r) => *r == 1,
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.characteristic();
                Repr::Residue(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            _ => unreachable!("repr always matches field"),
        };
        Ok(Scalar { field: self.field, repr })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.characteristic();
                Repr::Residue(((*a as u128 * *b as u128) % p as u128) as u64)
            }
            _ => unreachable!("repr always matches field"),
        };
        Ok(Scalar { field: self.field, repr })
    }

    pub fn neg(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Residue(0) => Repr::Residue(0),
            Repr::Residue(a) => Repr::Residue(self.field.characteristic() - a),
        };
        Scalar { field: self.field, repr }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero(self.field));
        }
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(a.recip()),
            Repr::Residue(a) => Repr::Residue(mod_inverse(*a, self.field.characteristic())),
        };
        Ok(Scalar { field: self.field, repr })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.mul(&other.inv()?)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) => write!(f, "{r}"),
            Repr::Residue(r) => write!(f, "{r}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
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

/// Inverse of `a` modulo prime `p` by the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of a unit modulo a prime");
    t0.rem_euclid(p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn rational_add() {
        let half = q().ratio(1, 2).unwrap();
        let third = q().ratio(1, 3).unwrap();
        assert_eq!(half.add(&third).unwrap(), q().ratio(5, 6).unwrap());
    }

    #[test]
    fn prime_field_mul() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.integer(3).mul(&f5.integer(4)).unwrap(), f5.integer(2));
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(q().integer(-2).inv().unwrap(), q().ratio(-1, 2).unwrap());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(q().zero().inv(), Err(ScalarError::DivisionByZero(_))));
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(f7.zero().inv().is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(q().one().add(&f5.one()), Err(ScalarError::FieldMismatch(_, _))));
    }

    #[test]
    fn primality_checked() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(97).is_ok());
    }

    #[test]
    fn parse_field_and_coefficients() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), q());
        assert_eq!(FieldSpec::parse("Fp:5").unwrap(), FieldSpec::prime(5).unwrap());
        assert!(FieldSpec::parse("Fp:6").is_err());
        assert!(FieldSpec::parse("R").is_err());
        assert_eq!(q().parse_coeff("-3/4").unwrap(), q().ratio(-3, 4).unwrap());
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.parse_coeff("7").unwrap(), f5.integer(2));
        assert_eq!(f5.parse_coeff("1/2").unwrap(), f5.integer(3));
    }

    fn arb_field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::rationals()),
            prop::sample::select(vec![2u64, 3, 5, 7, 13])
                .prop_map(|p| FieldSpec::prime(p).unwrap()),
        ]
    }

    fn arb_scalar(field: FieldSpec) -> impl Strategy<Value = Scalar> {
        (-40i64..=40, 1i64..=12).prop_map(move |(n, mut d)| {
            let p = field.characteristic() as i64;
            if p > 0 && d % p == 0 {
                d = 1;
            }
            field.ratio(n, d).unwrap()
        })
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_field().prop_flat_map(|f| {
            (arb_scalar(f), arb_scalar(f), arb_scalar(f))
        })) {
            // associativity and commutativity
            prop_assert_eq!(
                a.add(&b).unwrap().add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            // distributivity
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            // inverses
            prop_assert!(a.add(&a.neg()).unwrap().is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
            }
        }
    }
}
