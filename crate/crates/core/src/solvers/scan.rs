//! Record scan of `|xθ − α − y|` over primitive `(x, y)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{log_sq_statistic, log_sqrt_statistic, Interval};
use crate::qser;

/// A primitive `(x, y)` whose residual is smaller than at every smaller `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveRecord {
    pub x: i64,
    pub y: i64,
    #[serde(with = "qser::scalar")]
    pub residual: BigRational,
    /// `x·residual`.
    #[serde(with = "qser::scalar")]
    pub product: BigRational,
    /// `x·r·(ln ln x)²/(ln x)²`, for `x ≥ 3`.
    pub log_sq: Option<Interval>,
    /// `x·r·ln ln x/√(ln x)`, for `x ≥ 3`.
    pub log_sqrt: Option<Interval>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveScan {
    pub x_max: i64,
    pub records: Vec<PrimitiveRecord>,
    /// Largest upper endpoint of the `(ln x/ln ln x)²`-normalised statistic over the records.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub log_sq_max: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub log_sqrt_max: Option<BigRational>,
}

fn to_i128(v: &BigInt) -> Result<i128> {
    i128::try_from(v).map_err(|_| Error::Usage(format!("integer {v} too large for the scan")))
}

/// Nearest `y` to `num/den` with `gcd(x, y) = 1`; ties go to the smaller `y`.
fn nearest_coprime(x: i128, num: i128, den: i128) -> (i128, i128) {
    let mut lo = Integer::div_floor(&num, &den);
    let mut hi = lo + 1;
    loop {
        let (dl, dh) = (num - lo * den, hi * den - num);
        if dl <= dh {
            if lo.gcd(&x) == 1 {
                return (lo, dl);
            }
            lo -= 1;
        } else {
            if hi.gcd(&x) == 1 {
                return (hi, dh);
            }
            hi += 1;
        }
    }
}

/// Strict records of `min_y |xθ − α − y|` over primitive `(x, y)`, `1 ≤ x ≤ x_max`.
pub fn primitive_record_scan(theta: &BigRational, alpha: &BigRational, x_max: i64) -> Result<PrimitiveScan> {
    if x_max < 100 {
        return Err(Error::Precondition(format!("x_max must be at least 100, got {x_max}")));
    }
    let den_big = theta.denom().lcm(alpha.denom());
    let den = to_i128(&den_big)?;
    let tn = to_i128(&(theta.numer() * (&den_big / theta.denom())))?;
    let an = to_i128(&(alpha.numer() * (&den_big / alpha.denom())))?;
    tn.checked_mul(x_max as i128)
        .and_then(|v| v.checked_sub(an))
        .ok_or_else(|| Error::Usage("scan range overflows 128-bit arithmetic".into()))?;

    let mut records = Vec::new();
    let mut best: Option<i128> = None;
    for x in 1..=x_max {
        let (y, dist) = nearest_coprime(x as i128, tn * x as i128 - an, den);
        if best.is_some_and(|b| dist >= b) {
            continue;
        }
        best = Some(dist);
        let residual = BigRational::new(BigInt::from(dist), den_big.clone());
        let (log_sq, log_sqrt) = if x >= 3 {
            (Some(log_sq_statistic(x, &residual)), Some(log_sqrt_statistic(x, &residual)))
        } else {
            (None, None)
        };
        records.push(PrimitiveRecord {
            x,
            y: i64::try_from(y).map_err(|_| Error::Usage("y does not fit in 64 bits".into()))?,
            product: &residual * BigRational::from_integer(BigInt::from(x)),
            residual,
            log_sq,
            log_sqrt,
        });
    }
    let max_hi = |f: fn(&PrimitiveRecord) -> Option<&Interval>| records.iter().filter_map(f).map(|i| i.hi.clone()).max();
    Ok(PrimitiveScan {
        x_max,
        log_sq_max: max_hi(|r| r.log_sq.as_ref()),
        log_sqrt_max: max_hi(|r| r.log_sqrt.as_ref()),
        records,
    })
}
