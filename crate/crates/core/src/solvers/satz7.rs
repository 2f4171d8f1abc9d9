//! Primitive solutions: a lattice point near the shift `𝔷 = (0, −α)`,
//! made primitive by adding a multiple of the first basis vector.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{Parameters, SolutionCertificate};
use crate::error::{Error, Result};
use crate::exact::roots::pow_frac_upper;
use crate::exact::{factorial_q, fmt_q, int_to_i64, qi, ApproximationProblem, LatticePoint, SearchOptions};
use crate::linalg::integer_coordinates;
use crate::minima::{
    basis_extend, w_select, fundamental_cover_find, split_bounds, minima_report, WSelection, GaugeKind,
    GaugeSpec, MinimaReport,
};
use crate::psi::psi_records;
use crate::qser;

/// Smallest `v ≥ 0` with `gcd(u1 + v, u2) = 1`.
///
/// # Panics
/// If `u2 == 0`.
pub fn gcd_shift(u1: i64, u2: i64) -> i64 {
    assert!(u2 != 0, "gcd_shift needs u2 != 0");
    let (a, b) = (u1 as i128, u2 as i128);
    (0..).find(|&v| (a + v as i128).gcd(&b) == 1).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Satz7Case {
    /// `n ≥ 2`: `|Θ̄z − α| < ε`.
    A,
    /// `n = 1, m ≥ 2`: `|Θ̄z − α| < ε/|x|`.
    B,
}

impl Satz7Case {
    fn select(p: &ApproximationProblem) -> Result<Self> {
        match (p.n(), p.m()) {
            (n, _) if n >= 2 => Ok(Satz7Case::A),
            (1, m) if m >= 2 => Ok(Satz7Case::B),
            (n, m) => Err(Error::Precondition(format!(
                "primitive solutions need n >= 2, or n = 1 and m >= 2 (got n = {n}, m = {m})"
            ))),
        }
    }

    /// Exponent in `v = O(|u_j|^δ)`.
    pub fn delta(self, m: usize, n: usize) -> BigRational {
        let d = (m + n) as i64;
        let m = m as i64;
        match self {
            Satz7Case::A => qi(m) / qi(d * d),
            Satz7Case::B => qi(m - 1) / qi((m + 1) * (m + 3)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satz7Options {
    /// Number of distinct certificates to return.
    pub count: usize,
    /// Forced case; `None` selects from the shape.
    pub case: Option<Satz7Case>,
    /// Smallest `t` tried; the default depends on the case.
    pub t_start: Option<BigRational>,
    pub t_cap: BigRational,
}

impl Default for Satz7Options {
    fn default() -> Self {
        Self {
            count: 1,
            case: None,
            t_start: None,
            t_cap: qi(1 << 20),
        }
    }
}

/// How a primitive certificate was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Satz7Trace {
    pub case: Satz7Case,
    #[serde(with = "qser::scalar")]
    pub t: BigRational,
    #[serde(with = "qser::scalar")]
    pub psi: BigRational,
    /// Extended basis `z'(1), …, z'(d)`.
    pub basis: Vec<LatticePoint>,
    /// The point before primitivisation.
    pub z: LatticePoint,
    /// Coordinates of `z` over the basis.
    pub u: Vec<i64>,
    /// 1-based index `j ≥ 2` with `u_j ≠ 0`.
    pub j: usize,
    pub v: i64,
    /// Basis index whose point was added to the shift, if the plain shift gave `u_j = 0` for all `j ≥ 2`.
    pub offset_index: Option<usize>,
    /// Extra steps of `v` needed to reach a primitive point; zero on valid input.
    pub repairs: u32,
    #[serde(with = "qser::scalar")]
    pub delta: BigRational,
    /// Upper bound of `|u_j|^δ`.
    #[serde(with = "qser::scalar")]
    pub uj_delta_upper: BigRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_selection: Option<WSelection>,
    /// Whether the minima points meet the `W`-dependent size bounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds_hold: Option<bool>,
}

struct Construction {
    point: LatticePoint,
    trace: Satz7Trace,
}

fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(int_to_i64).collect()
}

fn construct(p: &ApproximationProblem, report: &MinimaReport, case: Satz7Case) -> Result<Construction> {
    let (m, n, d) = (p.m(), p.n(), p.d());
    let g = GaugeSpec::with_psi(p, &report.t, &report.psi, GaugeKind::Primal)?;
    let basis = basis_extend(&report.points_primal, &g)?;
    let cols: Vec<Vec<i64>> = basis.iter().map(|b| b.z().to_vec()).collect();

    // shift with Θ̄𝔷 = α: x-part x₀, y-part Θx₀ − α
    let shift_for = |x0: &[i64]| -> Result<Vec<BigRational>> {
        let tx = p.theta().mul_int(x0)?;
        let mut s: Vec<BigRational> = x0.iter().map(|&c| qi(c)).collect();
        s.extend(tx.iter().zip(p.alpha()).map(|(a, al)| a - al));
        Ok(s)
    };

    let mut attempt = None;
    for offset in std::iter::once(None).chain((1..d).map(Some)) {
        let x0 = match offset {
            None => vec![0; m],
            Some(k) => basis[k].x().to_vec(),
        };
        let z = fundamental_cover_find(&g, report, &shift_for(&x0)?)?;
        let u = to_i64_vec(&integer_coordinates(&cols, z.z())?)?;
        if let Some(j) = (1..d).find(|&j| u[j] != 0) {
            attempt = Some((z, u, j, offset.map(|k| k + 1)));
            break;
        }
    }
    let (z, u, j, offset_index) =
        attempt.ok_or_else(|| Error::Defect("no basis coordinate beyond the first is nonzero for any offset".into()))?;

    let mut v = gcd_shift(u[0], u[j]);
    let mut repairs = 0u32;
    let mut point = z.add_scaled(&basis[0], v);
    while !point.is_primitive() {
        repairs += 1;
        if repairs > 10_000 {
            return Err(Error::Defect("primitivity repair did not terminate".into()));
        }
        v += 1 + gcd_shift(u[0] + v + 1, u[j]);
        point = z.add_scaled(&basis[0], v);
    }

    let delta = case.delta(m, n);
    let (num, den) = (delta.numer().to_u32(), delta.denom().to_u32());
    let (num, den) = num.zip(den).ok_or_else(|| Error::Defect("delta out of range".into()))?;
    let uj_delta_upper = pow_frac_upper(&qi(u[j].abs()), num, den);

    Ok(Construction {
        point,
        trace: Satz7Trace {
            case,
            t: report.t.clone(),
            psi: report.psi.clone(),
            basis,
            z,
            u,
            j: j + 1,
            v,
            offset_index,
            repairs,
            delta,
            uj_delta_upper,
            w_selection: None,
            bounds_hold: None,
        },
    })
}

/// `count` distinct primitive points solving the inhomogeneous problem.
///
/// For each `t` the minima points of `Π(t)` are extended to a basis, the
/// shift `𝔷 = (0, −α)` is covered by a lattice point `z` of `𝔷 + d!·Π(t)`,
/// and `z* = z + v·z'(1)` with `v` minimal such that the first coordinate
/// and some later nonzero coordinate of `z` over the basis become coprime.
///
/// Case A doubles `t` from `⌈d!/ε⌉ + 1`. Case B walks `t = s − 1` over the
/// record thresholds `s` of `ψ`, where `t·ψ(t)` peaks between records. A
/// point is kept if it meets its bound, is new, and `|x|` does not
/// decrease; the search stops with [`Error::NotFound`] past `t_cap`.
pub fn solve_primitive_satz7(
    p: &ApproximationProblem,
    epsilon: &BigRational,
    options: &Satz7Options,
    opts: &SearchOptions,
) -> Result<Vec<SolutionCertificate>> {
    let auto = Satz7Case::select(p)?;
    let case = options.case.unwrap_or(auto);
    if case != auto {
        return Err(Error::Precondition(format!("case {case:?} does not apply to n = {}, m = {}", p.n(), p.m())));
    }
    if !epsilon.is_positive() {
        return Err(Error::Precondition(format!("epsilon must be positive, got {}", fmt_q(epsilon))));
    }
    if options.count == 0 {
        return Ok(Vec::new());
    }
    let ts = candidate_ts(p, case, epsilon, options, opts)?;

    let mut out: Vec<SolutionCertificate> = Vec::new();
    let mut seen = BTreeSet::new();
    for t in ts {
        let report = minima_report(p, &t, None, opts)?;
        let mut c = construct(p, &report, case)?;
        let x_norm = c.point.x_norm();
        if seen.contains(&c.point) || out.last().is_some_and(|prev| x_norm < prev.x_norm) {
            continue;
        }
        let big_t = report.psi.recip();
        let mut params = Parameters {
            epsilon: Some(epsilon.clone()),
            t: Some(t.clone()),
            big_t: Some(big_t.clone()),
            ..Default::default()
        };
        let bound = match case {
            Satz7Case::A => epsilon.clone(),
            Satz7Case::B => {
                if x_norm == 0 {
                    continue;
                }
                let big_m = &t * &report.psi;
                params.big_m = Some(big_m.clone());
                if let Ok(f) = w_select(&big_t, p.m(), &big_m, &report.mus[p.m()]) {
                    params.w = Some(f.w.clone());
                    params.t1 = Some(f.t1.clone());
                    c.trace.bounds_hold = split_bounds(p, &report, &f.w, &big_m)
                        .and_then(|h| h.bounds.holds(p, &report))
                        .ok();
                    c.trace.w_selection = Some(f);
                }
                epsilon / qi(x_norm)
            }
        };
        let mut cert = SolutionCertificate::new(p, c.point.clone(), bound, true, params)?;
        if !cert.meets_bound() {
            continue;
        }
        if !cert.primitive {
            return Err(Error::Defect("constructed point is not primitive".into()));
        }
        cert.construction = Some(c.trace);
        seen.insert(c.point);
        out.push(cert);
        if out.len() == options.count {
            return Ok(out);
        }
    }
    Err(Error::NotFound {
        cap: fmt_q(&options.t_cap),
    })
}

fn candidate_ts(
    p: &ApproximationProblem,
    case: Satz7Case,
    epsilon: &BigRational,
    options: &Satz7Options,
    opts: &SearchOptions,
) -> Result<Vec<BigRational>> {
    let cap = &options.t_cap;
    match case {
        Satz7Case::A => {
            let start = options
                .t_start
                .clone()
                .unwrap_or_else(|| BigRational::from_integer((factorial_q(p.d()) / epsilon).ceil().to_integer() + 1));
            let mut t = start.max(BigRational::one());
            let mut ts = Vec::new();
            while &t <= cap {
                ts.push(t.clone());
                t = &t * qi(2);
            }
            Ok(ts)
        }
        Satz7Case::B => {
            let start = options.t_start.clone().unwrap_or_else(BigRational::one);
            let table = psi_records(p, int_to_i64(&cap.floor().to_integer())?, opts)?;
            let mut ts: Vec<BigRational> = table
                .records
                .iter()
                .skip(1)
                .filter_map(|r| {
                    let t = r.t - 1;
                    let psi = table.value_at(t)?;
                    let tq = qi(t);
                    (tq >= start && &tq * &psi >= BigRational::one()).then_some(tq)
                })
                .collect();
            if ts.is_empty() && table.degenerate {
                let at = table.degenerate_at.as_ref().expect("degenerate table records its height");
                return Err(Error::Degenerate {
                    height: at.t,
                    witness: at.witness.clone(),
                });
            }
            ts.dedup();
            Ok(ts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn gcd_shift_examples() {
        assert_eq!(gcd_shift(3, 5), 0);
        assert_eq!(gcd_shift(4, 2), 1);
        assert_eq!(gcd_shift(0, 30), 1);
        assert_eq!(gcd_shift(-6, 1), 0);
        assert_eq!(gcd_shift(2, -30), 5);
    }

    #[test]
    fn gcd_shift_is_minimal() {
        for u1 in -40..40i64 {
            for u2 in (-40..40i64).filter(|&v| v != 0) {
                let v = gcd_shift(u1, u2);
                assert_eq!((u1 + v).gcd(&u2), 1);
                assert!((0..v).all(|w| (u1 + w).gcd(&u2) != 1));
            }
        }
    }

    #[test]
    fn deltas() {
        assert_eq!(Satz7Case::A.delta(1, 2), q(1, 9));
        assert_eq!(Satz7Case::B.delta(2, 1), q(1, 15));
    }

    #[test]
    fn shape_selects_case() {
        let one = ApproximationProblem::from_rows(vec![vec![q(1, 3)]], vec![qi(0)]).unwrap();
        assert!(matches!(
            solve_primitive_satz7(&one, &q(1, 2), &Satz7Options::default(), &SearchOptions::default()),
            Err(Error::Precondition(_))
        ));
    }
}
