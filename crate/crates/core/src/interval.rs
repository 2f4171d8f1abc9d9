//! Certified rational enclosures of natural logarithms.
//!
//! `ln q = k·ln 2 + 2·atanh(u)` with `q = 2ᵏ·r`, `r ∈ [1, 2)` and
//! `u = (r − 1)/(r + 1) < 1/3`. The series is summed in fixed point and
//! the truncation tail bounded explicitly; endpoints are rounded outward
//! to the grid `2⁻⁶⁴`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::roots::root_bounds;
use crate::exact::{fmt_q, parse_q};

/// Closed interval `[lo, hi]` with rational endpoints. Serialises as `["lo", "hi"]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_q(&self.lo), fmt_q(&self.hi))
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [fmt_q(&self.lo), fmt_q(&self.hi)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_q(&lo).map_err(D::Error::custom)?;
        let hi = parse_q(&hi).map_err(D::Error::custom)?;
        if lo > hi {
            return Err(D::Error::custom("interval endpoints out of order"));
        }
        Ok(Interval { lo, hi })
    }
}

const GRID_BITS: u32 = 64;
const WORK_BITS: u32 = 128;

fn grid() -> BigInt {
    BigInt::one() << GRID_BITS
}

fn round_down(v: &BigRational) -> BigRational {
    let g = grid();
    BigRational::new((v * BigRational::from_integer(g.clone())).floor().to_integer(), g)
}

fn round_up(v: &BigRational) -> BigRational {
    let g = grid();
    BigRational::new((v * BigRational::from_integer(g.clone())).ceil().to_integer(), g)
}

impl Interval {
    pub fn point(v: BigRational) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// Endpoints rounded outward to the `2⁻⁶⁴` grid.
    pub fn outward(&self) -> Self {
        Self {
            lo: round_down(&self.lo),
            hi: round_up(&self.hi),
        }
    }

    fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Product of intervals with positive endpoints.
    pub fn mul_pos(&self, other: &Self) -> Self {
        assert!(self.is_positive() && other.is_positive());
        Self {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    /// Quotient of intervals with positive endpoints.
    pub fn div_pos(&self, other: &Self) -> Self {
        assert!(self.is_positive() && other.is_positive());
        Self {
            lo: &self.lo / &other.hi,
            hi: &self.hi / &other.lo,
        }
    }

    /// `[c·lo, c·hi]` for `c ≥ 0`.
    pub fn scale(&self, c: &BigRational) -> Self {
        assert!(!c.is_negative());
        Self {
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }

    /// Enclosure of `√v` for `v` in an interval with non-negative endpoints.
    pub fn sqrt(&self) -> Self {
        Self {
            lo: root_bounds(&self.lo, 2).0,
            hi: root_bounds(&self.hi, 2).1,
        }
    }

    /// Enclosure of `ln v` for `v` in an interval with positive endpoints.
    pub fn ln(&self) -> Self {
        Self {
            lo: ln(&self.lo).lo,
            hi: ln(&self.hi).hi,
        }
    }
}

/// Lower bound of `2·atanh(u)` in units of `2^-WORK_BITS`, and an error bound in the same units.
fn atanh2_fixed(u: &BigRational) -> (BigInt, BigInt) {
    debug_assert!(!u.is_negative() && u < &BigRational::new(BigInt::one(), BigInt::from(2)));
    let scale = BigInt::one() << WORK_BITS;
    let u2 = u * u;
    let mut power = u.clone();
    let mut sum = BigInt::zero();
    let mut terms = 0u32;
    let tiny = BigRational::new(BigInt::one(), scale.clone());
    loop {
        let k = BigInt::from(2 * terms + 1);
        let term = &power / BigRational::from_integer(k);
        sum += (BigRational::from_integer(BigInt::from(2) * &scale) * &term).floor().to_integer();
        terms += 1;
        power = &power * &u2;
        if power < tiny {
            break;
        }
    }
    // tail ≤ 2·u^{2N+1}/((2N+1)(1 − u²)) < 4·power for u < 1/2; plus one unit per floored term
    let tail = (BigRational::from_integer(BigInt::from(4) * &scale) * &power).ceil().to_integer();
    (sum, tail + BigInt::from(terms))
}

/// Enclosure of `ln q` for rational `q > 0`, endpoints on the `2⁻⁶⁴` grid.
pub fn ln(q: &BigRational) -> Interval {
    assert!(q.is_positive(), "ln of a non-positive rational");
    if q.is_one() {
        return Interval::point(BigRational::zero());
    }
    // q = 2^k · r with 1 ≤ r < 2
    let mut k: i64 = q.numer().bits() as i64 - q.denom().bits() as i64;
    let two = BigRational::from_integer(BigInt::from(2));
    let pow2 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as u64)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as u64)
        }
    };
    let mut r = q / pow2(k);
    while r >= two {
        r /= &two;
        k += 1;
    }
    while r < BigRational::one() {
        r *= &two;
        k -= 1;
    }
    let one = BigRational::one();
    let u = (&r - &one) / (&r + &one);
    let (s_r, e_r) = atanh2_fixed(&u);
    let (s_2, e_2) = atanh2_fixed(&BigRational::new(BigInt::one(), BigInt::from(3)));
    let kk = BigInt::from(k);
    let scale = BigInt::one() << WORK_BITS;
    let (lo_fixed, hi_fixed) = if k >= 0 {
        (&kk * &s_2 + &s_r, &kk * (&s_2 + &e_2) + &s_r + &e_r)
    } else {
        (&kk * (&s_2 + &e_2) + &s_r, &kk * &s_2 + &s_r + &e_r)
    };
    Interval {
        lo: BigRational::new(lo_fixed, scale.clone()),
        hi: BigRational::new(hi_fixed, scale),
    }
    .outward()
}

/// `x·r·(ln ln x)²/(ln x)²` for `x ≥ 3`, `r ≥ 0`.
pub fn log_sq_statistic(x: i64, r: &BigRational) -> Interval {
    let (l, ll) = logs(x);
    let a = BigRational::from_integer(BigInt::from(x)) * r;
    if a.is_zero() {
        return Interval::point(BigRational::zero());
    }
    ll.mul_pos(&ll).div_pos(&l.mul_pos(&l)).scale(&a).outward()
}

/// `x·r·ln ln x/√(ln x)` for `x ≥ 3`, `r ≥ 0`.
pub fn log_sqrt_statistic(x: i64, r: &BigRational) -> Interval {
    let (l, ll) = logs(x);
    let a = BigRational::from_integer(BigInt::from(x)) * r;
    if a.is_zero() {
        return Interval::point(BigRational::zero());
    }
    ll.div_pos(&l.sqrt()).scale(&a).outward()
}

fn logs(x: i64) -> (Interval, Interval) {
    assert!(x >= 3, "log-log statistics need x >= 3");
    let l = ln(&BigRational::from_integer(BigInt::from(x)));
    let ll = l.ln();
    (l, ll)
}
