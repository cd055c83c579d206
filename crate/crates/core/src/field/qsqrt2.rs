//! Exact arithmetic in the real quadratic field Q[√2].

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldError;

/// The number `p + q·√2` with arbitrary-precision rational `p` and `q`.
///
/// Every element has exactly one such representation, so equality and
/// hashing are componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    p: BigRational,
    q: BigRational,
}

impl QSqrt2 {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        QSqrt2 { p, q }
    }

    pub fn from_rational(p: BigRational) -> Self {
        QSqrt2 { p, q: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num/den`, panicking on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn sqrt2() -> Self {
        QSqrt2 { p: BigRational::zero(), q: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Rational part `p`.
    pub fn rational_part(&self) -> &BigRational {
        &self.p
    }

    /// Coefficient `q` of √2.
    pub fn sqrt2_part(&self) -> &BigRational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Galois conjugate `p − q·√2`.
    pub fn conjugate(&self) -> Self {
        QSqrt2 { p: self.p.clone(), q: -self.q.clone() }
    }

    /// Field norm `p² − 2q²`; zero only for zero.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - BigRational::from_integer(2.into()) * &self.q * &self.q
    }

    /// Exact sign: −1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        if sp == sq {
            return sp;
        }
        // Opposite signs: the term with the larger square wins.
        let p2 = &self.p * &self.p;
        let q2 = BigRational::from_integer(2.into()) * &self.q * &self.q;
        match p2.cmp(&q2) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => unreachable!("√2 is irrational"),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn checked_inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QSqrt2 { p: &self.p / &n, q: -(&self.q / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.checked_inv()?)
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        QSqrt2 { p: &self.p * r, q: &self.q * r }
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * std::f64::consts::SQRT_2
    }

    /// Largest denominator among the two rational coordinates.
    pub fn max_denominator(&self) -> BigInt {
        self.p.denom().clone().max(self.q.denom().clone())
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<BigRational> for QSqrt2 {
    fn from(p: BigRational) -> Self {
        Self::from_rational(p)
    }
}

impl From<i64> for QSqrt2 {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl<'a> Add<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2 { p: &self.p + &rhs.p, q: &self.q + &rhs.q }
    }
}

impl<'a> Sub<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2 { p: &self.p - &rhs.p, q: &self.q - &rhs.q }
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(2.into());
        QSqrt2 {
            p: &self.p * &rhs.p + two * &self.q * &rhs.q,
            q: &self.p * &rhs.q + &self.q * &rhs.p,
        }
    }
}

/// Panics on division by zero; use [`QSqrt2::checked_div`] to handle it.
impl<'a> Div<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn div(self, rhs: &QSqrt2) -> QSqrt2 {
        self.checked_div(rhs).expect("division by zero in Q[√2]")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: &QSqrt2) -> QSqrt2 {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 { p: -self.p, q: -self.q }
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        -self.clone()
    }
}

impl<'a> AddAssign<&'a QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, rhs: &QSqrt2) {
        self.p += &rhs.p;
        self.q += &rhs.q;
    }
}

impl AddAssign for QSqrt2 {
    fn add_assign(&mut self, rhs: QSqrt2) {
        self.p += rhs.p;
        self.q += rhs.q;
    }
}

impl<'a> SubAssign<&'a QSqrt2> for QSqrt2 {
    fn sub_assign(&mut self, rhs: &QSqrt2) {
        self.p -= &rhs.p;
        self.q -= &rhs.q;
    }
}

impl<'a> MulAssign<&'a QSqrt2> for QSqrt2 {
    fn mul_assign(&mut self, rhs: &QSqrt2) {
        *self = &*self * rhs;
    }
}

impl Sum for QSqrt2 {
    fn sum<I: Iterator<Item = QSqrt2>>(iter: I) -> Self {
        iter.fold(QSqrt2::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl<'a> Sum<&'a QSqrt2> for QSqrt2 {
    fn sum<I: Iterator<Item = &'a QSqrt2>>(iter: I) -> Self {
        iter.fold(QSqrt2::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

/// Literal form `a/b`, `a/b+c/d*r2` or `a/b-c/d*r2`.
impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p.numer(), self.p.denom())?;
        if !self.q.is_zero() {
            let sign = if self.q.is_negative() { '-' } else { '+' };
            let q = self.q.abs();
            write!(f, "{}{}/{}*r2", sign, q.numer(), q.denom())?;
        }
        Ok(())
    }
}

impl FromStr for QSqrt2 {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::BadLiteral(s.to_string());
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(bad());
        }
        let (rational, irrational) = match s.strip_suffix("*r2") {
            None => (s, None),
            Some(head) => {
                // The split point is the last sign that is not the leading one.
                let idx = head
                    .char_indices()
                    .skip(1)
                    .filter(|&(_, c)| c == '+' || c == '-')
                    .map(|(i, _)| i)
                    .last()
                    .ok_or_else(bad)?;
                (&head[..idx], Some(&head[idx..]))
            }
        };
        let p = parse_rational(rational).ok_or_else(bad)?;
        let q = match irrational {
            None => BigRational::zero(),
            Some(t) => {
                let (neg, body) = match t.as_bytes()[0] {
                    b'+' => (false, &t[1..]),
                    _ => (true, &t[1..]),
                };
                if body.starts_with(['+', '-']) {
                    return Err(bad());
                }
                let q = parse_rational(body).ok_or_else(bad)?;
                if neg {
                    -q
                } else {
                    q
                }
            }
        };
        Ok(QSqrt2 { p, q })
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QSqrt2 {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = q("1/1+1/1*r2");
        let b = q("-1/1+1/1*r2");
        assert_eq!(&a * &b, QSqrt2::one());
    }

    #[test]
    fn inverse_of_sqrt2() {
        assert_eq!(QSqrt2::sqrt2().checked_inv().unwrap(), q("0/1+1/2*r2"));
        assert_eq!(QSqrt2::zero().checked_inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn addition_of_parts() {
        assert_eq!(q("3/4") + q("0/1+1/4*r2"), q("3/4+1/4*r2"));
    }

    #[test]
    fn signs() {
        assert_eq!(q("3/1-2/1*r2").signum(), 1);
        assert_eq!(q("1/1-1/1*r2").signum(), -1);
        assert_eq!(QSqrt2::zero().signum(), 0);
        assert_eq!(q("-7/5+1/1*r2").signum(), 1);
        assert_eq!(q("-3/2+1/1*r2").signum(), -1);
    }

    #[test]
    fn literal_round_trip() {
        for s in ["0/1", "5/3", "-1/2+3/7*r2", "2/1-1/1*r2", "0/1+1/2*r2"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("3"), QSqrt2::from_int(3));
        assert_eq!(q("-4/6"), QSqrt2::ratio(-2, 3));
    }

    #[test]
    fn rejects_malformed_literals() {
        for s in ["", "1/0", "1 /2", "a/b", "1/2+*r2", "1/2+-1/3*r2", "1/-2", "r2"] {
            assert!(s.parse::<QSqrt2>().is_err(), "{s} should not parse");
        }
    }
}
