//! Exact arithmetic in a real quadratic field Q(√D).
//!
//! Every coordinate, slope, and comparison in the geometry modules is a
//! [`QuadNum`] `a + b√D` with arbitrary-precision rational `a`, `b` and a
//! fixed positive square-free `D`. Signs are decided by integer arithmetic
//! only; `to_f64` exists for reporting and SVG emission and is never used
//! in a comparison.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed quadratic fields: sqrt({0}) vs sqrt({1})")]
    MixedField(u64, u64),
    #[error("{0} is not a valid radicand (must be positive, square-free, non-square)")]
    BadRadicand(u64),
    #[error("malformed rational string {0:?}")]
    BadRational(String),
}

/// Returns true if `d` is square-free and not a perfect square (d >= 2).
pub fn is_valid_radicand(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Splits `n > 0` as `f^2 * d` with `d` square-free; returns `(d, f)`.
pub fn squarefree_part(n: u64) -> (u64, u64) {
    let mut d = n;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            f *= p;
        }
        p += 1;
    }
    (d, f)
}

/// An element `a + b*sqrt(d)` of the real quadratic field Q(sqrt(d)),
/// under the real embedding with sqrt(d) > 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl QuadNum {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        debug_assert!(is_valid_radicand(d), "invalid radicand {d}");
        QuadNum { a, b, d }
    }

    pub fn rational(a: BigRational, d: u64) -> Self {
        QuadNum::new(a, BigRational::zero(), d)
    }

    pub fn from_int(n: i64, d: u64) -> Self {
        QuadNum::rational(BigRational::from_integer(BigInt::from(n)), d)
    }

    pub fn zero(d: u64) -> Self {
        QuadNum::from_int(0, d)
    }

    pub fn one(d: u64) -> Self {
        QuadNum::from_int(1, d)
    }

    /// sqrt(d) itself.
    pub fn root(d: u64) -> Self {
        QuadNum::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.a
    }

    pub fn root_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        QuadNum::new(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a^2 - b^2 d`, a rational.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    fn check_field(&self, other: &Self) -> Result<(), ExactError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(ExactError::MixedField(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_field(other)?;
        Ok(QuadNum::new(&self.a + &other.a, &self.b + &other.b, self.d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_field(other)?;
        Ok(QuadNum::new(&self.a - &other.a, &self.b - &other.b, self.d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_field(other)?;
        let d = BigRational::from_integer(BigInt::from(self.d));
        Ok(QuadNum::new(
            &self.a * &other.a + &self.b * &other.b * &d,
            &self.a * &other.b + &self.b * &other.a,
            self.d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_field(other)?;
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // x / y = x * conj(y) / norm(y); norm(y) != 0 since sqrt(d) is irrational.
        let n = other.norm();
        let prod = self.checked_mul(&other.conj())?;
        Ok(QuadNum::new(prod.a / &n, prod.b / &n, self.d))
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        QuadNum::one(self.d).checked_div(self)
    }

    /// Exact sign under the real embedding sqrt(d) > 0.
    pub fn sign(&self) -> Ordering {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // Opposite signs: compare a^2 vs b^2 d; the sign of the larger
            // magnitude term wins.
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => unreachable!("sqrt({}) rational", self.d),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering, ExactError> {
        Ok(self.checked_sub(other)?.sign())
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Integer power, negative exponents via exact inversion.
    pub fn powi(&self, k: i32) -> Self {
        let base = if k < 0 {
            self.inv().expect("powi of zero with negative exponent")
        } else {
            self.clone()
        };
        let mut acc = QuadNum::one(self.d);
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Nearest-representable double. Non-authoritative: never used in
    /// comparisons.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Exact floor. Float guess verified and corrected with exact
    /// comparisons only.
    pub fn floor(&self) -> BigInt {
        let guess = self.to_f64().floor();
        let mut n = if guess.is_finite() {
            BigInt::from(guess as i64)
        } else {
            BigInt::zero()
        };
        let cmp_int = |n: &BigInt| -> Ordering {
            // self vs n
            QuadNum::new(
                &self.a - BigRational::from_integer(n.clone()),
                self.b.clone(),
                self.d,
            )
            .sign()
        };
        while cmp_int(&n) == Ordering::Less {
            n -= 1;
        }
        loop {
            let next = &n + 1;
            if cmp_int(&next) == Ordering::Less {
                break;
            }
            n = next;
        }
        n
    }

    pub fn half(&self) -> Self {
        let two = QuadNum::from_int(2, self.d);
        self.checked_div(&two).unwrap()
    }
}

fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                self.$checked(rhs)
                    .expect("QuadNum operands from different fields")
            }
        }
        impl $trait for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(-self.a.clone(), -self.b.clone(), self.d)
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.checked_cmp(other)
            .expect("QuadNum operands from different fields")
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let bad = || ExactError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.trim().parse().map_err(|_| bad())?;
    let d: BigInt = den.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize, Deserialize)]
struct QuadNumWire {
    a: String,
    b: String,
    #[serde(rename = "D")]
    d: u64,
}

impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadNumWire {
            a: rational_string(&self.a),
            b: rational_string(&self.b),
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let w = QuadNumWire::deserialize(de)?;
        if !is_valid_radicand(w.d) {
            return Err(D::Error::custom(ExactError::BadRadicand(w.d).to_string()));
        }
        let a = parse_rational(&w.a).map_err(|e| D::Error::custom(e.to_string()))?;
        let b = parse_rational(&w.b).map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(QuadNum::new(a, b, w.d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn q(a: (i64, i64), b: (i64, i64), d: u64) -> QuadNum {
        QuadNum::new(
            BigRational::new(BigInt::from(a.0), BigInt::from(a.1)),
            BigRational::new(BigInt::from(b.0), BigInt::from(b.1)),
            d,
        )
    }

    #[test]
    fn golden_ratio_square() {
        // phi^2 = phi + 1
        let phi = q((1, 2), (1, 2), 5);
        let sq = &phi * &phi;
        assert_eq!(sq, q((3, 2), (1, 2), 5));
    }

    #[test]
    fn mul_identity() {
        let x = q((7, 3), (-2, 5), 5);
        assert_eq!(&x * &QuadNum::one(5), x);
    }

    #[test]
    fn norm_one_eigenvalue() {
        // ((3+sqrt5)/2)((3-sqrt5)/2) = 1
        let l = q((3, 2), (1, 2), 5);
        assert_eq!(&l * &l.conj(), QuadNum::one(5));
    }

    #[test]
    fn cmp_cases() {
        let l = q((3, 2), (1, 2), 5);
        assert_eq!(
            l.checked_cmp(&QuadNum::from_int(2, 5)).unwrap(),
            Ordering::Greater
        );
        assert_eq!(l.checked_cmp(&l).unwrap(), Ordering::Equal);
        // (1+sqrt5)/2 < 13/8 since sqrt5 < 9/4 (80 < 81)
        let phi = q((1, 2), (1, 2), 5);
        assert_eq!(
            phi.checked_cmp(&q((13, 8), (0, 1), 5)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn mixed_field_rejected() {
        let x = QuadNum::one(5);
        let y = QuadNum::one(2);
        assert_eq!(
            x.checked_add(&y).unwrap_err(),
            ExactError::MixedField(5, 2)
        );
        assert!(matches!(
            x.checked_cmp(&y).unwrap_err(),
            ExactError::MixedField(5, 2)
        ));
    }

    #[test]
    fn division_by_zero() {
        let x = QuadNum::one(5);
        assert_eq!(
            x.checked_div(&QuadNum::zero(5)).unwrap_err(),
            ExactError::DivisionByZero
        );
    }

    #[test]
    fn to_f64_values() {
        let l = q((3, 2), (1, 2), 5);
        assert_eq!(l.to_f64(), 2.618033988749895);
        assert_eq!(QuadNum::zero(5).to_f64(), 0.0);
        assert_eq!(q((1, 3), (0, 1), 5).to_f64(), 0.3333333333333333);
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut r = |rng: &mut rand_chacha::ChaCha8Rng| {
            q(
                (rng.gen_range(-20..20), rng.gen_range(1..9)),
                (rng.gen_range(-20..20), rng.gen_range(1..9)),
                13,
            )
        };
        for _ in 0..200 {
            let (x, y, z) = (r(&mut rng), r(&mut rng), r(&mut rng));
            assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !y.is_zero() {
                assert_eq!(&(&x / &y) * &y, x);
            }
        }
    }

    #[test]
    fn lambda_powers_cancel() {
        let l = q((3, 2), (1, 2), 5);
        for k in [1, 2, 7, 31, 64] {
            assert_eq!(&l.powi(k) * &l.powi(-k), QuadNum::one(5));
        }
    }

    #[test]
    fn cmp_consistent_with_float() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let x = q(
                (rng.gen_range(-50..50), rng.gen_range(1..20)),
                (rng.gen_range(-50..50), rng.gen_range(1..20)),
                5,
            );
            let y = q(
                (rng.gen_range(-50..50), rng.gen_range(1..20)),
                (rng.gen_range(-50..50), rng.gen_range(1..20)),
                5,
            );
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-12 {
                assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap(), "{x:?} vs {y:?}");
            }
        }
    }

    #[test]
    fn floor_exact() {
        assert_eq!(q((3, 2), (1, 2), 5).floor(), BigInt::from(2));
        assert_eq!(q((-3, 2), (-1, 2), 5).floor(), BigInt::from(-3));
        assert_eq!(QuadNum::from_int(7, 5).floor(), BigInt::from(7));
        assert_eq!(q((0, 1), (1, 1), 2).floor(), BigInt::from(1));
        assert_eq!(q((0, 1), (-1, 1), 2).floor(), BigInt::from(-2));
    }

    #[test]
    fn radicand_validation() {
        assert!(is_valid_radicand(5));
        assert!(is_valid_radicand(2));
        assert!(!is_valid_radicand(4));
        assert!(!is_valid_radicand(12));
        assert!(!is_valid_radicand(1));
        assert_eq!(squarefree_part(45), (5, 3));
        assert_eq!(squarefree_part(5), (5, 1));
    }

    #[test]
    fn json_round_trip() {
        let x = q((3, 2), (-1, 7), 5);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"3/2","b":"-1/7","D":5}"#);
        let y: QuadNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<QuadNum>(r#"{"a":"1","b":"0","D":4}"#).is_err());
    }
}
