use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::QSqrt2;

/// Closest rational to `x` with denominator at most `max_den`.
///
/// Walks the continued-fraction expansion of the exact binary value of `x`
/// and compares the last convergent with the best semiconvergent.
pub fn best_rational(x: f64, max_den: &BigInt) -> BigRational {
    assert!(x.is_finite(), "cannot round a non-finite value");
    assert!(max_den.is_positive(), "denominator bound must be positive");
    let target = BigRational::from_f64(x).expect("finite");
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            // Largest admissible semiconvergent (h1·t + h0)/(k1·t + k0).
            let t = (max_den - &k0).div_floor(&k1);
            let semi = BigRational::new(&h1 * &t + &h0, &k1 * &t + &k0);
            let conv = BigRational::new(h1, k1);
            let ds = (&semi - &target).abs();
            let dc = (&conv - &target).abs();
            return if ds < dc { semi } else { conv };
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return BigRational::new(h1, k1);
        }
        rest = frac.recip();
    }
}

/// Rounds the coordinates of `p + q·√2` independently.
pub fn round_to_qsqrt2(p: f64, q: f64, max_den: &BigInt) -> QSqrt2 {
    QSqrt2::new(best_rational(p, max_den), best_rational(q, max_den))
}
