//! Naive reference implementations.
//!
//! Everything here walks full integer boxes with `BigRational` arithmetic
//! and shares no enumeration, kernel or elimination code with the rest of
//! the crate. It is slow by design and meant for small instances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{box_count, ApproximationProblem, LatticePoint, SearchOptions};
use crate::minima::{GaugeKind, GaugeSpec};
use crate::qser;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Quantity {
    Psi,
    Minima,
    BestInhom,
    BestPrimitive,
    Cover,
}

/// Result of one oracle run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub quantity: Quantity,
    pub instance: String,
    #[serde(with = "qser::vector")]
    pub values: Vec<BigRational>,
    pub witnesses: Vec<Vec<i64>>,
    /// Sup-norm radius of the box searched.
    pub search_box: i64,
}

fn r(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn frac_dist(v: &BigRational) -> BigRational {
    let f = v - v.floor();
    let g = BigRational::from_integer(BigInt::from(1)) - &f;
    if f < g {
        f
    } else {
        g
    }
}

fn sup(v: &[BigRational]) -> BigRational {
    v.iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
}

/// Every vector of `{−b, …, b}^k` in lexicographic order.
fn cube(k: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * (2 * b as usize + 1));
        for prefix in &out {
            for c in -b..=b {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn first_nonzero_negative(v: &[i64]) -> bool {
    v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
}

fn theta_x(p: &ApproximationProblem, x: &[i64]) -> Vec<BigRational> {
    (0..p.n())
        .map(|i| (0..p.m()).map(|j| p.theta().get(i, j) * r(x[j])).sum())
        .collect()
}

fn theta_t_y(p: &ApproximationProblem, y: &[i64]) -> Vec<BigRational> {
    (0..p.m())
        .map(|j| (0..p.n()).map(|i| p.theta().get(i, j) * r(y[i])).sum())
        .collect()
}

/// `ψ(t)` over `0 < |y| ≤ ⌊t⌋` with the lexicographically smallest minimiser
/// among `y` whose first nonzero coordinate is negative.
pub fn brute_psi(p: &ApproximationProblem, t: i64, opts: &SearchOptions) -> Result<OracleReport> {
    if t < 1 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    opts.charge(box_count(&vec![t; p.n()]))?;
    let best = match integer_columns(p, t) {
        Some(cols) => brute_psi_int(&cols, p.n(), t),
        None => brute_psi_rational(p, t),
    };
    let (value, witness) = best.expect("t >= 1 gives candidates");
    Ok(OracleReport {
        quantity: Quantity::Psi,
        instance: format!("t = {t}"),
        values: vec![value],
        witnesses: vec![witness],
        search_box: t,
    })
}

fn brute_psi_rational(p: &ApproximationProblem, t: i64) -> Option<(BigRational, Vec<i64>)> {
    let mut best: Option<(BigRational, Vec<i64>)> = None;
    for y in cube(p.n(), t) {
        if !first_nonzero_negative(&y) {
            continue;
        }
        let v = theta_t_y(p, &y).iter().map(frac_dist).max().unwrap();
        if best.as_ref().is_none_or(|(b, _)| &v < b) {
            best = Some((v, y));
        }
    }
    best
}

/// Column `j` of `Θ` as integers `a_ij` over a common denominator `D_j`.
struct IntColumn {
    a: Vec<i128>,
    den: i128,
}

/// `None` unless `|Σ a_ij·y_i| ≤ n·max|a|·t` and the cross products `D_j·D_k` fit in `i128`.
fn integer_columns(p: &ApproximationProblem, t: i64) -> Option<Vec<IntColumn>> {
    const LIMIT: i128 = 1 << 60;
    (0..p.m())
        .map(|j| {
            let col = p.theta().column(j);
            let den = col.iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
            let den = i128::try_from(&den).ok().filter(|&d| d < LIMIT)?;
            let a = col
                .iter()
                .map(|v| {
                    let k = i128::try_from(v.numer() * (BigInt::from(den) / v.denom())).ok()?;
                    (k.abs() < LIMIT / (p.n() as i128 * t as i128)).then_some(k)
                })
                .collect::<Option<Vec<_>>>()?;
            Some(IntColumn { a, den })
        })
        .collect()
}

fn brute_psi_int(cols: &[IntColumn], n: usize, t: i64) -> Option<(BigRational, Vec<i64>)> {
    // ‖Θᵀy‖ as an unreduced fraction num/den
    let mut best: Option<(i128, i128, Vec<i64>)> = None;
    for y in cube(n, t) {
        if !first_nonzero_negative(&y) {
            continue;
        }
        let (mut num, mut den) = (0i128, 1i128);
        for c in cols {
            let s: i128 = c.a.iter().zip(&y).map(|(&a, &yi)| a * yi as i128).sum();
            let r = s.rem_euclid(c.den);
            let dist = r.min(c.den - r);
            if dist * den > num * c.den {
                (num, den) = (dist, c.den);
            }
        }
        if best.as_ref().is_none_or(|(bn, bd, _)| num * bd < bn * den) {
            best = Some((num, den, y));
        }
    }
    best.map(|(num, den, y)| (BigRational::new(BigInt::from(num), BigInt::from(den)), y))
}

fn gauge(g: &GaugeSpec, z: &[i64]) -> BigRational {
    let p = g.problem();
    let (x, y) = z.split_at(p.m());
    match g.kind() {
        GaugeKind::Primal => {
            let res: Vec<BigRational> = theta_x(p, x).iter().zip(y).map(|(a, &b)| a - r(b)).collect();
            let xs: Vec<BigRational> = x.iter().map(|&c| r(c)).collect();
            (g.t() * sup(&res)).max(g.psi_t() * sup(&xs))
        }
        GaugeKind::Dual => {
            let res: Vec<BigRational> = theta_t_y(p, y).iter().zip(x).map(|(a, &b)| a - r(b)).collect();
            let ys: Vec<BigRational> = y.iter().map(|&c| r(c)).collect();
            (sup(&res) / g.psi_t()).max(sup(&ys) / g.t())
        }
    }
}

/// The gauge as `max_k |c_k·z|·num_k/den_k` with integer forms `c_k`.
struct IntGauge {
    forms: Vec<(Vec<i128>, i128, i128)>,
}

impl IntGauge {
    /// `None` unless every value and cross product fits in `i128` on `|z| ≤ radius`.
    fn new(g: &GaugeSpec, radius: i64) -> Option<Self> {
        let p = g.problem();
        let (m, n, d) = (p.m(), p.n(), p.d());
        let one = r(1);
        let mut rational_forms: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        match g.kind() {
            GaugeKind::Primal => {
                for i in 0..n {
                    let mut c = vec![BigRational::zero(); d];
                    for j in 0..m {
                        c[j] = p.theta().get(i, j).clone();
                    }
                    c[m + i] = -one.clone();
                    rational_forms.push((c, g.t().clone()));
                }
                for j in 0..m {
                    let mut c = vec![BigRational::zero(); d];
                    c[j] = one.clone();
                    rational_forms.push((c, g.psi_t().clone()));
                }
            }
            GaugeKind::Dual => {
                for j in 0..m {
                    let mut c = vec![BigRational::zero(); d];
                    for i in 0..n {
                        c[m + i] = p.theta().get(i, j).clone();
                    }
                    c[j] = -one.clone();
                    rational_forms.push((c, g.psi_t().recip()));
                }
                for i in 0..n {
                    let mut c = vec![BigRational::zero(); d];
                    c[m + i] = one.clone();
                    rational_forms.push((c, g.t().recip()));
                }
            }
        }
        let mut max_num = BigInt::zero();
        let mut max_den = BigInt::zero();
        let mut forms = Vec::new();
        for (c, w) in rational_forms {
            let den = c.iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
            let ints: Vec<BigInt> = c.iter().map(|v| v.numer() * (&den / v.denom())).collect();
            let span: BigInt = ints.iter().map(|v| v.abs()).sum::<BigInt>() * BigInt::from(radius);
            let num = w.numer().clone();
            let fden = w.denom() * &den;
            max_num = max_num.max(&span * &num);
            max_den = max_den.max(fden.clone());
            let ints = ints.iter().map(|v| i128::try_from(v).ok()).collect::<Option<Vec<_>>>()?;
            forms.push((ints, i128::try_from(&num).ok()?, i128::try_from(&fden).ok()?));
        }
        (max_num * max_den < BigInt::from(1) << 126).then_some(Self { forms })
    }

    fn value(&self, z: &[i64]) -> (i128, i128) {
        let (mut num, mut den) = (0i128, 1i128);
        for (c, wn, wd) in &self.forms {
            let s: i128 = c.iter().zip(z).map(|(&a, &b)| a * b as i128).sum();
            let v = s.abs() * wn;
            if v * den > num * wd {
                (num, den) = (v, *wd);
            }
        }
        (num, den)
    }

    /// Canonical points sorted by `(gauge, z)`.
    fn sorted(&self, pts: Vec<Vec<i64>>) -> Vec<(BigRational, Vec<i64>)> {
        let mut keyed: Vec<((i128, i128), Vec<i64>)> = pts
            .into_iter()
            .filter(|z| first_nonzero_negative(z))
            .map(|z| (self.value(&z), z))
            .collect();
        keyed.sort_by(|((an, ad), az), ((bn, bd), bz)| (an * bd).cmp(&(bn * ad)).then_with(|| az.cmp(bz)));
        keyed
            .into_iter()
            .map(|((n, d), z)| (BigRational::new(BigInt::from(n), BigInt::from(d)), z))
            .collect()
    }
}

/// Rank of integer vectors by fraction-field Gaussian elimination.
fn rational_rank(vs: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vs.iter().map(|v| v.iter().map(|&c| r(c)).collect()).collect();
    let cols = rows.first().map_or(0, |v| v.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[rank][c];
                for k in 0..cols {
                    let sub = &f * &rows[rank][k];
                    rows[i][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Successive minima by sorting every canonical point of `|z| ≤ radius`
/// by `(gauge, z)` and picking greedily.
pub fn brute_minima(g: &GaugeSpec, radius: i64, opts: &SearchOptions) -> Result<OracleReport> {
    let d = g.problem().d();
    opts.charge(box_count(&vec![radius; d]))?;
    let pts = match IntGauge::new(g, radius) {
        Some(ig) => ig.sorted(cube(d, radius)),
        None => {
            let mut pts: Vec<(BigRational, Vec<i64>)> = cube(d, radius)
                .into_iter()
                .filter(|z| first_nonzero_negative(z))
                .map(|z| (gauge(g, &z), z))
                .collect();
            pts.sort();
            pts
        }
    };
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    let mut values = Vec::new();
    for (v, z) in pts {
        chosen.push(z);
        if rational_rank(&chosen) == chosen.len() {
            values.push(v);
            if chosen.len() == d {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    if chosen.len() < d {
        return Err(Error::RadiusInsufficient {
            radius,
            found: chosen.len(),
            needed: d,
            certified_scale: BigRational::zero(),
        });
    }
    Ok(OracleReport {
        quantity: Quantity::Minima,
        instance: format!("{:?} t = {}", g.kind(), crate::fmt_q(g.t())),
        values,
        witnesses: chosen,
        search_box: radius,
    })
}

/// Least `|Θ̄z − α|` over `0 < |x| ≤ X`, with `z` primitive if asked.
///
/// Ties go to the lexicographically smallest `z = (x, y)`.
pub fn brute_best_inhomogeneous(
    p: &ApproximationProblem,
    x_bound: i64,
    primitive_only: bool,
    opts: &SearchOptions,
) -> Result<OracleReport> {
    let (m, n) = (p.m(), p.n());
    opts.charge(box_count(&vec![x_bound; m]))?;
    let mut best: Option<(BigRational, Vec<i64>)> = None;
    for x in cube(m, x_bound) {
        if x.iter().all(|&c| c == 0) {
            continue;
        }
        let target: Vec<BigRational> = theta_x(p, &x).iter().zip(p.alpha()).map(|(a, b)| a - b).collect();
        let near: Vec<i64> = target
            .iter()
            .map(|v| (v + BigRational::new(1.into(), 2.into())).floor().to_integer().try_into().unwrap())
            .collect();
        let g = x.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        let ys = if primitive_only {
            // g + 1 consecutive integers always include one coprime to g
            cube(n, g + 1)
                .into_iter()
                .map(|off| off.iter().zip(&near).map(|(a, b)| a + b).collect::<Vec<i64>>())
                .collect()
        } else {
            vec![near]
        };
        for y in ys {
            let mut z = x.clone();
            z.extend(&y);
            if primitive_only && z.iter().fold(0i64, |acc, &c| acc.gcd(&c)) != 1 {
                continue;
            }
            let res: Vec<BigRational> = target.iter().zip(&y).map(|(a, &b)| a - r(b)).collect();
            let cand = (sup(&res), z);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let (value, witness) = best.ok_or_else(|| Error::Precondition("no candidate point".into()))?;
    Ok(OracleReport {
        quantity: if primitive_only { Quantity::BestPrimitive } else { Quantity::BestInhom },
        instance: format!("X = {x_bound}"),
        values: vec![value],
        witnesses: vec![witness],
        search_box: x_bound,
    })
}

/// Least gauge of `z − shift` over lattice points within `radius` of the rounded shift.
pub fn brute_cover(g: &GaugeSpec, shift: &[BigRational], radius: i64, opts: &SearchOptions) -> Result<OracleReport> {
    let d = g.problem().d();
    opts.charge(box_count(&vec![radius; d]))?;
    if shift.len() != d {
        return Err(Error::Dimension(format!("shift must have length {d}")));
    }
    let centre: Vec<i64> = shift.iter().map(|s| s.round().to_integer().try_into().unwrap()).collect();
    let mut best: Option<(BigRational, Vec<i64>)> = None;
    for off in cube(d, radius) {
        let z: Vec<i64> = off.iter().zip(&centre).map(|(a, b)| a + b).collect();
        let diff: Vec<BigRational> = z.iter().zip(shift).map(|(&a, s)| r(a) - s).collect();
        let v = g.value_rational(&diff)?;
        let cand = (v, z);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    let (value, witness) = best.expect("the box is nonempty");
    Ok(OracleReport {
        quantity: Quantity::Cover,
        instance: format!("shift {:?}", shift.iter().map(crate::fmt_q).collect::<Vec<_>>()),
        values: vec![value],
        witnesses: vec![witness],
        search_box: radius,
    })
}

/// First nonzero `x` with `|x| ≤ x_max` in order of increasing `|x|`
/// (lexicographic within a shell) such that `‖Θx − α‖·|x| < ε`.
pub fn brute_first_product_witness(p: &ApproximationProblem, epsilon: &BigRational, x_max: i64) -> Option<Vec<i64>> {
    let m = p.m();
    for shell in 1..=x_max {
        for x in cube(m, shell) {
            let norm = x.iter().map(|c| c.abs()).max().unwrap();
            if norm != shell {
                continue;
            }
            let dist = theta_x(p, &x)
                .iter()
                .zip(p.alpha())
                .map(|(a, b)| frac_dist(&(a - b)))
                .max()
                .unwrap();
            if dist * r(norm) < *epsilon {
                return Some(x);
            }
        }
    }
    None
}

/// Point lookup helper for reports holding a single witness.
pub fn witness_point(report: &OracleReport, m: usize) -> Option<LatticePoint> {
    report.witnesses.first().map(|z| LatticePoint::from_z(z.clone(), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn cube_order() {
        assert_eq!(cube(2, 1).len(), 9);
        assert_eq!(cube(2, 1)[0], vec![-1, -1]);
        assert_eq!(cube(0, 3), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn integer_and_rational_psi_paths_agree() {
        let rows = vec![
            vec![q(2611, 7268), q(-451, 3207)],
            vec![q(3593, 5211), q(1, 2)],
            vec![q(3587, 4928), q(9999, 10000)],
        ];
        let p = ApproximationProblem::from_rows(rows, vec![qi(0); 3]).unwrap();
        for t in [1, 2, 7] {
            let cols = integer_columns(&p, t).unwrap();
            assert_eq!(brute_psi_int(&cols, 3, t), brute_psi_rational(&p, t));
        }
    }

    #[test]
    fn integer_gauge_matches_rational_gauge() {
        let p = ApproximationProblem::from_rows(vec![vec![q(3593, 5211), q(-7, 9)]], vec![qi(0)]).unwrap();
        for kind in [GaugeKind::Primal, GaugeKind::Dual] {
            let g = GaugeSpec::with_psi(&p, &qi(4), &q(1, 13), kind).unwrap();
            let ig = IntGauge::new(&g, 3).unwrap();
            for z in cube(3, 3) {
                let (n, d) = ig.value(&z);
                assert_eq!(BigRational::new(BigInt::from(n), BigInt::from(d)), gauge(&g, &z));
            }
        }
    }

    #[test]
    fn rank_by_elimination() {
        assert_eq!(rational_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rational_rank(&[vec![1, 2], vec![2, 5]]), 2);
    }

    #[test]
    fn psi_of_a_third() {
        let p = ApproximationProblem::from_rows(vec![vec![q(1, 3)]], vec![qi(0)]).unwrap();
        let o = SearchOptions::default();
        let r = brute_psi(&p, 2, &o).unwrap();
        assert_eq!(r.values[0], q(1, 3));
        assert_eq!(r.witnesses[0], vec![-2]);
        assert_eq!(brute_psi(&p, 3, &o).unwrap().values[0], qi(0));
        let seven = ApproximationProblem::from_rows(vec![vec![q(7, 10)]], vec![qi(0)]).unwrap();
        assert_eq!(brute_psi(&seven, 1, &o).unwrap().values[0], q(3, 10));
        let half = ApproximationProblem::from_rows(vec![vec![q(1, 2)]], vec![qi(0)]).unwrap();
        assert_eq!(brute_psi(&half, 2, &o).unwrap().values[0], qi(0));
    }

    #[test]
    fn primitive_subset_is_used() {
        let p = ApproximationProblem::from_rows(vec![vec![q(1, 2)]], vec![qi(0)]).unwrap();
        let o = SearchOptions::default();
        let best = brute_best_inhomogeneous(&p, 2, false, &o).unwrap();
        assert_eq!(best.values[0], qi(0));
        assert_eq!(best.witnesses[0], vec![-2, -1]);
        let prim = brute_best_inhomogeneous(&p, 2, true, &o).unwrap();
        assert_eq!(prim.values[0], qi(0));
        let tiny = brute_best_inhomogeneous(&p.with_alpha(vec![q(1, 4)]).unwrap(), 1, true, &o).unwrap();
        assert_eq!(tiny.values[0], q(1, 4));
        assert_eq!(tiny.witnesses[0], vec![-1, -1]);
    }
}
