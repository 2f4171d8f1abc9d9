//! Size bounds for the minima points `z(ν)` in terms of `T = 1/ψ(t)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::MinimaReport;
use crate::error::{Error, Result};
use crate::exact::roots::{pow_frac_is_exact, pow_frac_lower, root_bounds};
use crate::exact::{apply_theta_bar_homogeneous, factorial_q, qi, sup_norm, ApproximationProblem};
use crate::qser;

/// Bounds on `|x(ν)|` and `|Θ̄z(ν)|`, separately for `ν = 1` and `ν ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSet {
    #[serde(with = "qser::scalar")]
    pub x_first: BigRational,
    #[serde(with = "qser::scalar")]
    pub x_rest: BigRational,
    #[serde(with = "qser::scalar")]
    pub residual_first: BigRational,
    #[serde(with = "qser::scalar")]
    pub residual_rest: BigRational,
}

impl BoundSet {
    /// Whether the primal minima points of `report` satisfy every bound.
    pub fn holds(&self, p: &ApproximationProblem, report: &MinimaReport) -> Result<bool> {
        for (nu, z) in report.points_primal.iter().enumerate() {
            let (xb, rb) = if nu == 0 {
                (&self.x_first, &self.residual_first)
            } else {
                (&self.x_rest, &self.residual_rest)
            };
            let x = BigRational::from_integer(BigInt::from(z.x_norm()));
            let r = sup_norm(&apply_theta_bar_homogeneous(p, z)?)?;
            if &x > xb || &r > rb {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Bounds on the minima with `T = 1/ψ(t)`:
/// `|x(ν)| ≤ (d−1)!·T`, `|Θ̄z(1)| ≤ (d−1)!·(d!)^{1/d}/(Tt)^{m/d}`, `|Θ̄z(ν)| ≤ (d−1)!/t`.
///
/// The fractional power is replaced by a certified rational upper bound;
/// `exact` reports whether it was a rational root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimaBounds {
    #[serde(with = "qser::scalar")]
    pub big_t: BigRational,
    pub bounds: BoundSet,
    pub exact: bool,
}

pub fn hilfssatz3_bounds(p: &ApproximationProblem, report: &MinimaReport) -> MinimaBounds {
    let (m, d) = (p.m(), p.d());
    let big_t = report.psi.recip();
    let f = factorial_q(d - 1);
    // (d!)^{1/d} / (Tt)^{m/d} = (d! / (Tt)^m)^{1/d}
    let inner = factorial_q(d) / (&big_t * &report.t).pow(m as i32);
    let (lo, hi) = root_bounds(&inner, d as u32);
    let exact = lo == hi;
    MinimaBounds {
        bounds: BoundSet {
            x_first: &f * &big_t,
            x_rest: &f * &big_t,
            residual_first: &f * hi,
            residual_rest: &f / &report.t,
        },
        exact,
        big_t,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundCase {
    /// `μ_{m+1}(t) ≥ W`.
    A,
    /// `μ_{m+1}(t) < W`.
    B,
}

/// For `n = 1`: given `t/T ≥ M ≥ 1` and `W ≥ 1`, the bounds of case (a) or (b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBounds {
    pub case: BoundCase,
    #[serde(with = "qser::scalar")]
    pub big_t: BigRational,
    pub bounds: BoundSet,
}

pub fn split_bounds(
    p: &ApproximationProblem,
    report: &MinimaReport,
    w: &BigRational,
    big_m: &BigRational,
) -> Result<SplitBounds> {
    if p.n() != 1 || p.m() < 2 {
        return Err(Error::Precondition("split bounds need n = 1, m >= 2".into()));
    }
    let m = p.m();
    let one = BigRational::one();
    let big_t = report.psi.recip();
    if big_m < &one || w < &one {
        return Err(Error::Precondition("need W >= 1 and M >= 1".into()));
    }
    if &(&report.t / &big_t) < big_m {
        return Err(Error::Precondition("need t·ψ(t) >= M".into()));
    }
    let fm = factorial_q(m);
    let (case, bounds) = if &report.mus[m] >= w {
        (
            BoundCase::A,
            BoundSet {
                x_first: &fm * &big_t / w,
                x_rest: &fm * &big_t,
                residual_first: &fm / (&big_t * w),
                residual_rest: &fm / (&big_t * big_m),
            },
        )
    } else {
        let r = &fm * factorial_q(m + 1) * w.pow(m as i32 + 1) / big_t.pow(m as i32);
        (
            BoundCase::B,
            BoundSet {
                x_first: &fm * &big_t,
                x_rest: &fm * &big_t,
                residual_first: r.clone(),
                residual_rest: r,
            },
        )
    };
    Ok(SplitBounds { case, big_t, bounds })
}

/// Choice of `W` for `n = 1, m ≥ 2`: `W = T^{(m−1)/(m+3)}`, `T₁ = T` or `T·W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WSelection {
    /// Largest certified rational not exceeding `T^{(m−1)/(m+3)}`.
    #[serde(with = "qser::scalar")]
    pub w: BigRational,
    pub w_exact: bool,
    #[serde(with = "qser::scalar")]
    pub t1: BigRational,
    pub case: BoundCase,
    pub bounds: BoundSet,
    /// `W^{m+1}/T^m`, `1/(T·W²)`, `1/(T₁·W)`; equal in case (b) when `W` is exact.
    #[serde(with = "qser::vector")]
    pub identity_chain: Vec<BigRational>,
}

pub fn w_select(
    big_t: &BigRational,
    m: usize,
    big_m: &BigRational,
    mu_top: &BigRational,
) -> Result<WSelection> {
    if m < 2 {
        return Err(Error::Precondition("choosing W needs m >= 2".into()));
    }
    if !big_t.is_positive() {
        return Err(Error::Precondition("T must be positive".into()));
    }
    let (num, den) = ((m - 1) as u32, (m + 3) as u32);
    let w = pow_frac_lower(big_t, num, den);
    let w_exact = pow_frac_is_exact(big_t, num, den);
    if &w < big_m {
        return Err(Error::Precondition(format!(
            "W = T^{{{num}/{den}}} is below M (W >= {})",
            crate::fmt_q(&w)
        )));
    }
    let (case, t1) = if mu_top >= &w {
        (BoundCase::A, big_t.clone())
    } else {
        (BoundCase::B, big_t * &w)
    };
    let fm = factorial_q(m);
    let c = &fm * factorial_q(m + 1);
    let bounds = BoundSet {
        x_first: &fm * &t1 / &w,
        x_rest: &fm * &t1,
        residual_first: &c / (&t1 * &w),
        residual_rest: &c / (&t1 * big_m),
    };
    let identity_chain = vec![
        w.pow(m as i32 + 1) / big_t.pow(m as i32),
        (big_t * w.pow(2)).recip(),
        (&t1 * &w).recip(),
    ];
    Ok(WSelection {
        w,
        w_exact,
        t1,
        case,
        bounds,
        identity_chain,
    })
}

/// Exponent `(m−1)/(m+3)` of `W`.
pub fn w_exponent(m: usize) -> BigRational {
    qi(m as i64 - 1) / qi(m as i64 + 3)
}
