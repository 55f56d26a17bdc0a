//! Conversions between exact big numbers and log-domain reals.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) fn pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Natural log of a nonnegative big integer; `-inf` for zero.
#[cfg(test)]
pub(crate) fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 960 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `(mantissa, exponent)` with `n/d ≈ mantissa·2^exponent`, `mantissa ∈ [0.5, 2)`,
/// from a 64-bit integer quotient.
fn scaled_ratio(n: &BigUint, d: &BigUint) -> (f64, i64) {
    let shift = 64 + d.bits() as i64 - n.bits() as i64;
    let q = if shift >= 0 { (n << shift as u64) / d } else { n / (d << (-shift) as u64) };
    (q.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(64), 64 - shift)
}

/// Natural log of a nonnegative rational; `-inf` for zero.
pub(crate) fn ratio_ln(r: &BigRational) -> f64 {
    debug_assert!(!r.is_negative());
    let n = r.numer().magnitude();
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = scaled_ratio(n, r.denom().magnitude());
    m.ln() + e as f64 * std::f64::consts::LN_2
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    let n = r.numer().magnitude();
    if n.is_zero() {
        return 0.0;
    }
    let (m, e) = scaled_ratio(n, r.denom().magnitude());
    let v = m * 2f64.powi(e.clamp(-2000, 2000) as i32);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

pub(crate) fn log_sum_exp(terms: impl IntoIterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// `ln(e^a - e^b)` for `a ≥ b`; `None` when the difference is negative.
pub(crate) fn log_sub_exp(a: f64, b: f64) -> Option<f64> {
    if b == f64::NEG_INFINITY {
        return Some(a);
    }
    if b > a {
        return None;
    }
    if b == a {
        return Some(f64::NEG_INFINITY);
    }
    Some(a + (-(b - a).exp()).ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ln_of_large_integers() {
        let x = pow(3, 2000);
        let expect = 2000.0 * 3f64.ln();
        assert!((big_ln(&x) - expect).abs() / expect < 1e-14);
        assert_eq!(big_ln(&BigUint::from(1u32)), 0.0);
    }

    #[test]
    fn rationals() {
        let r = BigRational::new(BigInt::from(2), BigInt::from(3));
        assert!((ratio_to_f64(&r) - 2.0 / 3.0).abs() < 1e-16);
        assert!((ratio_ln(&r) - (2.0f64 / 3.0).ln()).abs() < 1e-15);
        let tiny = BigRational::new(BigInt::from(1), BigInt::from(pow(7, 900)));
        assert!((ratio_ln(&tiny) + 900.0 * 7f64.ln()).abs() < 1e-9);
        assert_eq!(ratio_to_f64(&tiny), 0.0);
    }

    #[test]
    fn log_arith() {
        let s = log_sum_exp([2f64.ln(), 3f64.ln()]);
        assert!((s - 5f64.ln()).abs() < 1e-15);
        assert!((log_sub_exp(5f64.ln(), 3f64.ln()).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(log_sub_exp(1.0, 2.0).is_none());
    }
}
