//! Successive minima of the parallelepipeds
//!
//! ```text
//! Π(t)  = { z = (x, y) : |Θx − y| ≤ 1/t,  |x| ≤ 1/ψ(t) }
//! Π*(t) = { z = (x, y) : |Θᵀy − x| ≤ ψ(t), |y| ≤ t }
//! ```
//!
//! with `ψ = ψ_{Θᵀ}`. Both bodies are described by their gauges
//! `F(z) = max(t·|Θx − y|, ψ·|x|)` and `G(z) = max(|Θᵀy − x|/ψ, |y|/t)`.
//! The minima `λ_ν` (of `Π`) and `μ_ν` (of `Π*`) are computed exactly by
//! enumerating the gauge ball at increasing scales and selecting points
//! greedily in order of gauge value.

mod basis;
mod bounds;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    box_count, factorial_q, fmt_q, int_to_i64, sup_norm, ApproximationProblem, BoxIter, LatticePoint,
    SearchOptions,
};
use crate::exec::map_range;
use crate::kernel::{with_forms, FormSpec, Forms, Frac, Int, Kernel};
use crate::linalg::{det_rational, IndependentSet};
use crate::psi::psi;
use crate::qser;

pub use basis::{basis_extend, fundamental_cover_find};
pub use bounds::{
    w_select, hilfssatz3_bounds, split_bounds, w_exponent, BoundSet, WSelection, MinimaBounds, SplitBounds,
    BoundCase,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GaugeKind {
    /// Gauge of `Π(t)`.
    Primal,
    /// Gauge of `Π*(t)`.
    Dual,
}

/// A gauge of `Π(t)` or `Π*(t)` with `ψ(t)` cached. `ψ(t) > 0` always holds.
#[derive(Debug, Clone)]
pub struct GaugeSpec {
    problem: ApproximationProblem,
    t: BigRational,
    psi_t: BigRational,
    kind: GaugeKind,
}

impl GaugeSpec {
    /// Computes `ψ(t)` and rejects the gauge if it vanishes.
    pub fn new(problem: &ApproximationProblem, t: &BigRational, kind: GaugeKind, opts: &SearchOptions) -> Result<Self> {
        let value = psi(problem, t, opts)?;
        if value.degenerate {
            return Err(Error::Degenerate {
                height: crate::exact::sup_norm_int(&value.witness),
                witness: value.witness,
            });
        }
        Self::with_psi(problem, t, &value.value, kind)
    }

    /// Uses a precomputed `ψ(t)`, which the caller vouches for.
    pub fn with_psi(problem: &ApproximationProblem, t: &BigRational, psi_t: &BigRational, kind: GaugeKind) -> Result<Self> {
        if t < &BigRational::one() {
            return Err(Error::Precondition(format!("gauge needs t >= 1, got {}", fmt_q(t))));
        }
        if !psi_t.is_positive() {
            return Err(Error::Degenerate {
                height: int_to_i64(&t.floor().to_integer())?,
                witness: Vec::new(),
            });
        }
        Ok(Self {
            problem: problem.clone(),
            t: t.clone(),
            psi_t: psi_t.clone(),
            kind,
        })
    }

    /// The same `Θ`, `t` and `ψ(t)` with the other body.
    pub fn switch(&self, kind: GaugeKind) -> Self {
        Self { kind, ..self.clone() }
    }

    pub fn problem(&self) -> &ApproximationProblem {
        &self.problem
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn psi_t(&self) -> &BigRational {
        &self.psi_t
    }

    pub fn kind(&self) -> GaugeKind {
        self.kind
    }

    /// Gauge of a rational vector `(x, y)` of length `d`.
    pub fn value_rational(&self, z: &[BigRational]) -> Result<BigRational> {
        let p = &self.problem;
        let (m, n) = (p.m(), p.n());
        if z.len() != m + n {
            return Err(Error::Dimension(format!("gauge needs a vector of length {}, got {}", m + n, z.len())));
        }
        let (x, y) = z.split_at(m);
        let theta = p.theta();
        let value = match self.kind {
            GaugeKind::Primal => {
                let resid: Vec<BigRational> = (0..n)
                    .map(|i| dot(theta.row(i), x) - &y[i])
                    .collect();
                let a = &self.t * sup_norm(&resid)?;
                let b = &self.psi_t * sup_norm(x)?;
                a.max(b)
            }
            GaugeKind::Dual => {
                let resid: Vec<BigRational> = (0..m)
                    .map(|j| dot(&theta.column(j), y) - &x[j])
                    .collect();
                let a = sup_norm(&resid)? / &self.psi_t;
                let b = sup_norm(y)? / &self.t;
                a.max(b)
            }
        };
        Ok(value)
    }

    /// Integer forms whose maximum is the gauge, as a function of `z`.
    fn specs(&self) -> Vec<FormSpec> {
        let p = &self.problem;
        let (m, n) = (p.m(), p.n());
        let d = m + n;
        let mut specs = Vec::with_capacity(d);
        match self.kind {
            GaugeKind::Primal => {
                for (i, row) in p.scaled_rows_homogeneous().iter().enumerate() {
                    let mut coeffs = row.coeffs.clone();
                    coeffs.extend((0..n).map(|k| if k == i { -row.denom.clone() } else { BigInt::zero() }));
                    let w = &self.t / BigRational::from_integer(row.denom.clone());
                    specs.push(FormSpec::abs(coeffs, BigInt::zero(), &w));
                }
                specs.extend((0..m).map(|k| FormSpec::coordinate(d, k, &self.psi_t)));
            }
            GaugeKind::Dual => {
                for (j, col) in p.scaled_cols().iter().enumerate() {
                    let mut coeffs: Vec<BigInt> =
                        (0..m).map(|k| if k == j { -col.denom.clone() } else { BigInt::zero() }).collect();
                    coeffs.extend(col.coeffs.iter().cloned());
                    let w = (&self.psi_t * BigRational::from_integer(col.denom.clone())).recip();
                    specs.push(FormSpec::abs(coeffs, BigInt::zero(), &w));
                }
                let w = self.t.recip();
                specs.extend((0..n).map(|i| FormSpec::coordinate(d, m + i, &w)));
            }
        }
        specs
    }

    /// `c` with `gauge(z) ≤ s ⟹ |z| ≤ c·s`.
    fn box_factor(&self) -> BigRational {
        let p = &self.problem;
        let theta = p.theta();
        match self.kind {
            GaugeKind::Primal => {
                let row_sum = (0..p.n())
                    .map(|i| theta.row(i).iter().map(|v| v.abs()).sum::<BigRational>())
                    .max()
                    .unwrap_or_default();
                let x = self.psi_t.recip();
                let y = &row_sum / &self.psi_t + self.t.recip();
                x.max(y)
            }
            GaugeKind::Dual => {
                let col_sum = (0..p.m())
                    .map(|j| theta.column(j).iter().map(|v| v.abs()).sum::<BigRational>())
                    .max()
                    .unwrap_or_default();
                let y = self.t.clone();
                let x = &col_sum * &self.t + &self.psi_t;
                x.max(y)
            }
        }
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

/// Exact gauge value of a lattice point.
pub fn gauge_value(g: &GaugeSpec, z: &LatticePoint) -> Result<BigRational> {
    if z.m() != g.problem.m() {
        return Err(Error::Dimension(format!(
            "point has m = {}, problem has m = {}",
            z.m(),
            g.problem.m()
        )));
    }
    let v: Vec<BigRational> = z.z().iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
    g.value_rational(&v)
}

/// Box radius that contains every point of gauge at most `2·(d−1)!`.
pub fn default_radius(g: &GaugeSpec) -> i64 {
    let s = BigRational::from_integer(BigInt::from(2)) * factorial_q(g.problem.d() - 1);
    (s * g.box_factor()).ceil().to_integer().to_i64().unwrap_or(i64::MAX)
}

/// Minima of one body together with realising points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuccessiveMinima {
    pub kind: GaugeKind,
    #[serde(with = "qser::vector")]
    pub minima: Vec<BigRational>,
    pub points: Vec<LatticePoint>,
    pub radius: i64,
    /// Gauge ball scale of the last enumeration; every minimum is at most this.
    #[serde(with = "qser::scalar")]
    pub scale: BigRational,
}

/// One variable `u` determined by the outer variables through `|L − q·u| ≤ w·q`, `w = a/b`.
struct Inner<I> {
    pos: usize,
    /// `b·L` as coefficients over the outer variables.
    coeffs: Vec<I>,
    /// `a·q`.
    half: I,
    /// `b·q`.
    den: I,
}

/// Lattice points of gauge at most `s`, described as outer box plus inner strips.
struct Ball<I> {
    d: usize,
    outer: Vec<usize>,
    outer_bound: i64,
    inner: Vec<Inner<I>>,
}

struct BallPlan {
    outer: Vec<usize>,
    outer_bound: i64,
    /// `(position, coefficients over outer variables, modulus q)`.
    inner: Vec<(usize, Vec<BigInt>, BigInt)>,
    width: BigRational,
}

impl BallPlan {
    fn new(g: &GaugeSpec, s: &BigRational) -> Result<Self> {
        let p = &g.problem;
        let (m, n) = (p.m(), p.n());
        Ok(match g.kind {
            GaugeKind::Primal => BallPlan {
                outer: (0..m).collect(),
                outer_bound: int_to_i64(&(s / &g.psi_t).floor().to_integer())?,
                inner: p
                    .scaled_rows_homogeneous()
                    .iter()
                    .enumerate()
                    .map(|(i, r)| (m + i, r.coeffs.clone(), r.denom.clone()))
                    .collect(),
                width: s / &g.t,
            },
            GaugeKind::Dual => BallPlan {
                outer: (m..m + n).collect(),
                outer_bound: int_to_i64(&(s * &g.t).floor().to_integer())?,
                inner: p
                    .scaled_cols()
                    .iter()
                    .enumerate()
                    .map(|(j, c)| (j, c.coeffs.clone(), c.denom.clone()))
                    .collect(),
                width: s * &g.psi_t,
            },
        })
    }

    fn cost(&self) -> u128 {
        let outer = box_count(&vec![self.outer_bound; self.outer.len()]);
        let strip = (BigRational::from_integer(BigInt::from(2)) * &self.width)
            .floor()
            .to_integer()
            .to_u128()
            .unwrap_or(u128::MAX)
            .saturating_add(1);
        self.inner.iter().fold(outer, |acc, _| acc.saturating_mul(strip))
    }

    /// Per-coordinate bounds of `z` over the ball and the magnitudes the strip arithmetic reaches.
    fn magnitudes(&self, d: usize) -> (Vec<i64>, Vec<BigInt>) {
        let a = self.width.numer();
        let b = self.width.denom();
        let mut bounds = vec![0i64; d];
        let mut extra = Vec::new();
        for &k in &self.outer {
            bounds[k] = self.outer_bound;
        }
        for (pos, coeffs, q) in &self.inner {
            let l: BigInt = coeffs.iter().map(|c| c.abs()).sum::<BigInt>() * BigInt::from(self.outer_bound);
            let top = b * &l + a * q;
            let u: BigInt = (&top / (b * q)) + 1;
            bounds[*pos] = u.to_i64().unwrap_or(i64::MAX);
            extra.push(top);
            extra.push(b * q);
        }
        (bounds, extra)
    }

    fn instantiate<I: Int>(&self, d: usize) -> Ball<I> {
        let a = self.width.numer();
        let b = self.width.denom();
        Ball {
            d,
            outer: self.outer.clone(),
            outer_bound: self.outer_bound,
            inner: self
                .inner
                .iter()
                .map(|(pos, coeffs, q)| Inner {
                    pos: *pos,
                    coeffs: coeffs.iter().map(|c| I::from_big(&(b * c))).collect(),
                    half: I::from_big(&(a * q)),
                    den: I::from_big(&(b * q)),
                })
                .collect(),
        }
    }
}

fn floor_div<I: Int>(a: I, b: &I) -> I {
    a.div_floor(b)
}

fn ceil_div<I: Int>(a: I, b: &I) -> I {
    -((-a).div_floor(b))
}

/// `z` is the lexicographically smaller of `±z` and nonzero.
fn canonical(z: &[i64]) -> bool {
    z.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
}

fn to_i64<I: Int>(v: &I) -> i64 {
    v.to_big().to_i64().expect("strip bounds fit the coordinate box")
}

fn ball_points<I: Int>(ball: &Ball<I>, forms: &Forms<I>, opts: &SearchOptions) -> Vec<(Frac<I>, Vec<i64>)> {
    let k = ball.outer.len();
    let bnd = ball.outer_bound;
    let parts = map_range(opts.exec, -bnd, bnd, |lead| {
        let mut out = Vec::new();
        let mut z = vec![0i64; ball.d];
        let tail = BoxIter::new(vec![(-bnd, bnd); k - 1]);
        for rest in tail {
            let mut outer = Vec::with_capacity(k);
            outer.push(lead);
            outer.extend(rest);
            let ranges: Vec<(i64, i64)> = ball
                .inner
                .iter()
                .map(|v| {
                    let l = v
                        .coeffs
                        .iter()
                        .zip(&outer)
                        .fold(I::zero(), |acc, (c, &o)| acc + c.clone() * I::from(o));
                    let lo = ceil_div(l.clone() - v.half.clone(), &v.den);
                    let hi = floor_div(l + v.half.clone(), &v.den);
                    (to_i64(&lo), to_i64(&hi))
                })
                .collect();
            for (&pos, &o) in ball.outer.iter().zip(&outer) {
                z[pos] = o;
            }
            for inner in BoxIter::new(ranges) {
                for (v, u) in ball.inner.iter().zip(&inner) {
                    z[v.pos] = *u;
                }
                if canonical(&z) {
                    out.push((forms.max(&z), z.clone()));
                }
            }
        }
        out
    });
    parts.into_iter().flatten().collect()
}

/// Greedy selection over candidates sorted by `(gauge, z)`.
fn greedy<I: Int>(mut cands: Vec<(Frac<I>, Vec<i64>)>, d: usize) -> Vec<(BigRational, Vec<i64>)> {
    cands.sort_by(|a, b| a.0.cmp_value(&b.0).then_with(|| a.1.cmp(&b.1)));
    let mut set = IndependentSet::new();
    let mut chosen = Vec::new();
    for (value, z) in cands {
        if set.insert(&z) {
            chosen.push((value.to_q(), z));
            if chosen.len() == d {
                break;
            }
        }
    }
    chosen
}

/// Points of gauge at most `s` selected greedily, up to `d` of them.
fn minima_at_scale(g: &GaugeSpec, s: &BigRational, opts: &SearchOptions) -> Result<Vec<(BigRational, Vec<i64>)>> {
    let d = g.problem.d();
    let plan = BallPlan::new(g, s)?;
    opts.charge(plan.cost())?;
    let (bounds, extra) = plan.magnitudes(d);
    let kernel = Kernel::build(g.specs(), &bounds, &extra);
    Ok(with_forms!(&kernel, f => {
        let ball = plan.instantiate(d);
        greedy(ball_points(&ball, f, opts), d)
    }))
}

/// Exact successive minima of the gauge `g` among lattice points in the box `|z| ≤ radius`.
///
/// The search enumerates gauge balls of scale `1, 2, 4, …` capped at the
/// largest scale whose ball fits in the box. Each ball is complete, so the
/// greedy choice over it is exact as soon as `d` independent points appear.
/// Chosen points are primitive: a proper divisor of a point has smaller
/// gauge and would have been selected first.
pub fn successive_minima(g: &GaugeSpec, radius: i64, opts: &SearchOptions) -> Result<SuccessiveMinima> {
    if radius < 1 {
        return Err(Error::Precondition(format!("radius must be >= 1, got {radius}")));
    }
    let d = g.problem.d();
    let m = g.problem.m();
    let cap = BigRational::from_integer(BigInt::from(radius)) / g.box_factor();
    let mut s = BigRational::one().min(cap.clone());
    loop {
        let chosen = minima_at_scale(g, &s, opts)?;
        if chosen.len() == d {
            let (minima, points) = chosen
                .into_iter()
                .map(|(v, z)| (v, LatticePoint::from_z(z, m)))
                .unzip();
            return Ok(SuccessiveMinima {
                kind: g.kind,
                minima,
                points,
                radius,
                scale: s,
            });
        }
        if s >= cap {
            return Err(Error::RadiusInsufficient {
                radius,
                found: chosen.len(),
                needed: d,
                certified_scale: cap,
            });
        }
        s = (&s * BigRational::from_integer(BigInt::from(2))).min(cap.clone());
    }
}

/// `λ_ν(t)` and `μ_ν(t)` with realising points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimaReport {
    #[serde(with = "qser::scalar")]
    pub t: BigRational,
    #[serde(with = "qser::scalar")]
    pub psi: BigRational,
    #[serde(with = "qser::vector")]
    pub lambdas: Vec<BigRational>,
    #[serde(with = "qser::vector")]
    pub mus: Vec<BigRational>,
    pub points_primal: Vec<LatticePoint>,
    pub points_dual: Vec<LatticePoint>,
    pub search_radius: i64,
}

impl MinimaReport {
    pub fn d(&self) -> usize {
        self.lambdas.len()
    }
}

/// Both sides at parameter `t`.
///
/// With `radius = None` the box starts at [`default_radius`] and doubles
/// until the minima are found or the budget runs out.
pub fn minima_report(
    p: &ApproximationProblem,
    t: &BigRational,
    radius: Option<i64>,
    opts: &SearchOptions,
) -> Result<MinimaReport> {
    let primal = GaugeSpec::new(p, t, GaugeKind::Primal, opts)?;
    let dual = primal.switch(GaugeKind::Dual);
    let (lam, mu) = match radius {
        Some(r) => (successive_minima(&primal, r, opts)?, successive_minima(&dual, r, opts)?),
        None => (escalate(&primal, opts)?, escalate(&dual, opts)?),
    };
    Ok(MinimaReport {
        t: t.clone(),
        psi: primal.psi_t.clone(),
        search_radius: lam.radius.max(mu.radius),
        lambdas: lam.minima,
        mus: mu.minima,
        points_primal: lam.points,
        points_dual: mu.points,
    })
}

fn escalate(g: &GaugeSpec, opts: &SearchOptions) -> Result<SuccessiveMinima> {
    let mut r = default_radius(g).max(1);
    loop {
        match successive_minima(g, r, opts) {
            Err(Error::RadiusInsufficient { .. }) if r < i64::MAX / 2 => r *= 2,
            other => return other,
        }
    }
}

/// One row of the duality check `1/d ≤ λ_ν·μ_{d+1−ν} ≤ (d−1)!`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MahlerRow {
    pub nu: usize,
    #[serde(with = "qser::scalar")]
    pub product: BigRational,
    #[serde(with = "qser::scalar")]
    pub lower: BigRational,
    #[serde(with = "qser::scalar")]
    pub upper: BigRational,
    pub pass: bool,
}

pub fn mahler_check(report: &MinimaReport) -> Vec<MahlerRow> {
    let d = report.d();
    let lower = BigRational::new(BigInt::one(), BigInt::from(d));
    let upper = factorial_q(d - 1);
    (1..=d)
        .map(|nu| {
            let product = &report.lambdas[nu - 1] * &report.mus[d - nu];
            MahlerRow {
                nu,
                pass: product >= lower && product <= upper,
                product,
                lower: lower.clone(),
                upper: upper.clone(),
            }
        })
        .collect()
}

/// `μ_d^d·tⁿ·ψ^m ≥ 1/d!` and `Vol Π*(t) = 2^d·tⁿ·ψ^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinkowskiCheck {
    #[serde(with = "qser::scalar")]
    pub lhs: BigRational,
    #[serde(with = "qser::scalar")]
    pub bound: BigRational,
    /// Volume of `Π*(t)` from its constraint matrix.
    #[serde(with = "qser::scalar")]
    pub volume: BigRational,
    #[serde(with = "qser::scalar")]
    pub volume_formula: BigRational,
    pub pass: bool,
}

pub fn minkowski_dual_check(g: &GaugeSpec, report: &MinimaReport) -> Result<MinkowskiCheck> {
    let p = &g.problem;
    let (m, n, d) = (p.m(), p.n(), p.d());
    if report.d() != d {
        return Err(Error::Dimension(format!("report has d = {}, problem has d = {d}", report.d())));
    }
    let t_n = g.t.pow(n as i32);
    let psi_m = g.psi_t.pow(m as i32);
    let mu_d = report.mus[d - 1].clone();
    let lhs = mu_d.pow(d as i32) * &t_n * &psi_m;
    let bound = factorial_q(d).recip();

    // Π* = { z : |ℓ_k(z)| ≤ h_k }: volume ∏(2h_k) / |det ℓ|
    let theta = p.theta();
    let mut rows = Vec::with_capacity(d);
    let mut halves = Vec::with_capacity(d);
    for j in 0..m {
        let mut row = vec![BigRational::zero(); d];
        row[j] = -BigRational::one();
        for i in 0..n {
            row[m + i] = theta.get(i, j).clone();
        }
        rows.push(row);
        halves.push(g.psi_t.clone());
    }
    for i in 0..n {
        let mut row = vec![BigRational::zero(); d];
        row[m + i] = BigRational::one();
        rows.push(row);
        halves.push(g.t.clone());
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let volume = halves.iter().fold(BigRational::one(), |acc, h| acc * &two * h) / det_rational(&rows).abs();
    let volume_formula = two.pow(d as i32) * &t_n * &psi_m;
    Ok(MinkowskiCheck {
        pass: lhs >= bound && volume == volume_formula,
        lhs,
        bound,
        volume,
        volume_formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    fn golden() -> ApproximationProblem {
        ApproximationProblem::from_rows(vec![vec![q(1618034, 1000000)]], vec![qi(0)]).unwrap()
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn gauge_of_origin_and_scaling() {
        let g = GaugeSpec::new(&golden(), &qi(5), GaugeKind::Primal, &opts()).unwrap();
        assert_eq!(gauge_value(&g, &LatticePoint::zero(1, 1)).unwrap(), qi(0));
        let z = LatticePoint::new(vec![3], vec![5]);
        let v = gauge_value(&g, &z).unwrap();
        assert_eq!(gauge_value(&g, &z.scaled(-2)).unwrap(), qi(2) * v);
    }

    #[test]
    fn primal_boundary_point() {
        // Θ = 1/2, t = 3: ψ(3) = 1/2, and z = (2, 1) has Θx = y with |x| = 2 = 1/ψ
        let p = ApproximationProblem::from_rows(vec![vec![q(1, 2)]], vec![qi(0)]).unwrap();
        let g = GaugeSpec::with_psi(&p, &qi(3), &q(1, 2), GaugeKind::Primal).unwrap();
        assert_eq!(gauge_value(&g, &LatticePoint::new(vec![2], vec![1])).unwrap(), qi(1));
    }

    #[test]
    fn zero_theta_is_rejected() {
        let p = ApproximationProblem::from_rows(vec![vec![qi(0)]], vec![qi(0)]).unwrap();
        let err = GaugeSpec::new(&p, &qi(3), GaugeKind::Primal, &opts()).unwrap_err();
        assert!(matches!(err, Error::Degenerate { .. }));
    }

    #[test]
    fn golden_minima_at_five() {
        let r = minima_report(&golden(), &qi(5), None, &opts()).unwrap();
        assert_eq!(r.psi, q(9017, 100000));
        assert_eq!(r.lambdas, vec![q(9017, 20000), q(9017, 12500)]);
        assert_eq!(r.points_primal, vec![LatticePoint::new(vec![-5], vec![-8]), LatticePoint::new(vec![-8], vec![-13])]);
        assert_eq!(r.mus, vec![qi(1), q(8, 5)]);
        assert_eq!(r.points_dual, vec![LatticePoint::new(vec![-8], vec![-5]), LatticePoint::new(vec![-13], vec![-8])]);
        assert!(mahler_check(&r).iter().all(|row| row.pass));
    }

    #[test]
    fn mahler_bounds_by_dimension() {
        let r = MinimaReport {
            t: qi(1),
            psi: q(1, 2),
            lambdas: vec![qi(1); 3],
            mus: vec![qi(1); 3],
            points_primal: vec![],
            points_dual: vec![],
            search_radius: 1,
        };
        let rows = mahler_check(&r);
        assert_eq!(rows[0].lower, q(1, 3));
        assert_eq!(rows[0].upper, qi(2));
    }

    #[test]
    fn minkowski_negative_control() {
        let p = golden();
        let g = GaugeSpec::new(&p, &qi(5), GaugeKind::Dual, &opts()).unwrap();
        let mut r = minima_report(&p, &qi(5), None, &opts()).unwrap();
        assert!(minkowski_dual_check(&g, &r).unwrap().pass);
        r.mus[1] = q(1, 1000);
        assert!(!minkowski_dual_check(&g, &r).unwrap().pass);
    }
}
