//! Test-only reference values that do not share code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Fixed-point fraction bits for the big-integer series.
const FRAC_BITS: i64 = 400;

/// `x = mantissa * 2^exp`, exactly.
fn decompose(x: f64) -> (BigInt, i64) {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 {
        (BigInt::from(frac), -1074)
    } else {
        (BigInt::from(frac | (1u64 << 52)), exp - 1075)
    }
}

fn shift(v: BigInt, by: i64) -> BigInt {
    if by >= 0 {
        v << by as usize
    } else {
        v >> (-by) as usize
    }
}

/// `J_order(x)` for `x >= 0` from the ascending power series evaluated in
/// 400-bit fixed point. The argument is taken exactly as the f64 given, so
/// the only rounding is the final conversion.
pub fn bessel_j_exact(order: u32, x: f64) -> f64 {
    assert!(x >= 0.0 && x.is_finite());
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let (m, e) = decompose(x);
    // term_0 = (x/2)^n / n!
    let mut term = BigInt::one() << FRAC_BITS as usize;
    for i in 1..=order {
        term = shift(term * &m, e - 1) / BigInt::from(i);
    }
    let m2 = &m * &m;
    let mut sum = term.clone();
    let mut k: u64 = 1;
    loop {
        term = -(shift(term * &m2, 2 * e - 2) / BigInt::from(k * (k + u64::from(order))));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    let scaled = (sum >> (FRAC_BITS - 120) as usize).to_f64().unwrap();
    scaled / 2f64.powi(120)
}

/// Bisection on the exact series.
pub fn exact_zero(order: u32, mut lo: f64, mut hi: f64) -> f64 {
    let flo = bessel_j_exact(order, lo);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if (bessel_j_exact(order, mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
