//! Certified rational bounds for fractional powers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Denominator used when a root is not an exact rational.
fn scale() -> BigInt {
    BigInt::one() << 64
}

fn exact_root(v: &BigInt, k: u32) -> Option<BigInt> {
    let r = v.nth_root(k);
    (r.pow(k) == *v).then_some(r)
}

/// Bracket `lo ≤ q^{1/k} ≤ hi`; `lo == hi` exactly when the root is rational.
pub fn root_bounds(q: &BigRational, k: u32) -> (BigRational, BigRational) {
    assert!(k >= 1);
    assert!(!q.is_negative(), "root of a negative rational");
    if q.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    if let (Some(n), Some(d)) = (exact_root(q.numer(), k), exact_root(q.denom(), k)) {
        let r = BigRational::new(n, d);
        return (r.clone(), r);
    }
    let s = scale();
    let scaled = (q * BigRational::from_integer(s.pow(k))).floor().to_integer();
    let a = scaled.nth_root(k);
    (
        BigRational::new(a.clone(), s.clone()),
        BigRational::new(a + 1, s),
    )
}

/// Largest value of the form used by [`root_bounds`] not exceeding `q^{num/den}`.
pub fn pow_frac_lower(q: &BigRational, num: u32, den: u32) -> BigRational {
    root_bounds(&q.pow(num as i32), den).0
}

pub fn pow_frac_upper(q: &BigRational, num: u32, den: u32) -> BigRational {
    root_bounds(&q.pow(num as i32), den).1
}

pub fn pow_frac_is_exact(q: &BigRational, num: u32, den: u32) -> bool {
    let (lo, hi) = root_bounds(&q.pow(num as i32), den);
    lo == hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};
    use proptest::prelude::*;

    #[test]
    fn exact_fifth_root() {
        let (lo, hi) = root_bounds(&qi(1024), 5);
        assert_eq!(lo, qi(4));
        assert_eq!(hi, qi(4));
        assert!(pow_frac_is_exact(&qi(1024), 1, 5));
        assert_eq!(root_bounds(&q(8, 27), 3).0, q(2, 3));
    }

    #[test]
    fn inexact_root_brackets() {
        let (lo, hi) = root_bounds(&qi(2), 2);
        assert!(lo.pow(2) <= qi(2) && hi.pow(2) >= qi(2));
        assert!(hi - lo <= q(1, 1 << 62));
    }

    proptest! {
        #[test]
        fn bounds_bracket(n in 1i64..1_000_000, d in 1i64..10_000, k in 1u32..7) {
            let v = q(n, d);
            let (lo, hi) = root_bounds(&v, k);
            prop_assert!(lo.pow(k as i32) <= v);
            prop_assert!(hi.pow(k as i32) >= v);
        }
    }
}
