//! Transference: `‖Θx − α‖ ≤ C` with `|x| ≤ X`, the hypothesis that
//! guarantees it, and the Kronecker and `ε/|x|` solvers built on it.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{transference_constant, Parameters, SolutionCertificate};
use crate::error::{Error, Result};
use crate::exact::{
    box_count, common_denominator, fmt_q, int_to_i64, sup_norm_int, ApproximationProblem, BoxIter, SearchOptions,
    ShellIter,
};
use crate::exec::{map_items, map_range};
use crate::kernel::{frac_of, with_forms, FormSpec, Forms, Frac, Int, Kernel};
use crate::psi::{jarnik_search, psi};
use crate::qser;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Exhaustive: the `x` of least residual in the whole box.
    Minimal,
    /// The first acceptable `x` in order of increasing `|x|`, lexicographic within a shell.
    FirstFeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Satz1Options {
    pub mode: SearchMode,
    /// Exclude `x = 0`.
    pub nonzero: bool,
    /// Require `‖Θx − α‖ < C` instead of `≤ C`.
    pub strict: bool,
}

impl Default for Satz1Options {
    fn default() -> Self {
        Self {
            mode: SearchMode::Minimal,
            nonzero: false,
            strict: false,
        }
    }
}

/// Forms `dist((Θx − α)ᵢ)` over `x`.
fn residual_specs(p: &ApproximationProblem) -> Vec<FormSpec> {
    p.scaled_rows()
        .iter()
        .map(|r| FormSpec::dist(r.coeffs.clone(), r.offset.clone(), r.denom.clone(), &BigRational::new(BigInt::one(), r.denom.clone())))
        .collect()
}

fn x_bound(x: &BigRational) -> Result<i64> {
    if !x.is_positive() {
        return Err(Error::Precondition(format!("X must be positive, got {}", fmt_q(x))));
    }
    int_to_i64(&x.floor().to_integer())
}

type Best<I> = Option<(Frac<I>, Vec<i64>)>;

fn better<I: Int>(a: &(Frac<I>, Vec<i64>), b: &(Frac<I>, Vec<i64>)) -> bool {
    match a.0.cmp_value(&b.0) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.1 < b.1,
    }
}

fn minimal_scan<I: Int>(forms: &Forms<I>, m: usize, xb: i64, nonzero: bool, opts: &SearchOptions) -> Best<I> {
    let parts = map_range(opts.exec, -xb, xb, |lead| {
        let mut best: Best<I> = None;
        for rest in BoxIter::new(vec![(-xb, xb); m - 1]) {
            let mut x = Vec::with_capacity(m);
            x.push(lead);
            x.extend(rest);
            if nonzero && x.iter().all(|&c| c == 0) {
                continue;
            }
            let cand = (forms.max(&x), x);
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        }
        best
    });
    parts.into_iter().fold(None, |acc, next| match (acc, next) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if better(&b, &a) { b } else { a }),
    })
}

/// Acceptance test for the first-feasible search, in kernel width.
struct Accept<I> {
    limit: Frac<I>,
    strict: bool,
    /// `value·|x| < eps`.
    product: Option<Frac<I>>,
}

impl<I: Int> Accept<I> {
    fn ok(&self, value: &Frac<I>, x: &[i64]) -> bool {
        let c = value.cmp_value(&self.limit);
        let within = if self.strict { c == Ordering::Less } else { c != Ordering::Greater };
        within
            && self.product.as_ref().is_none_or(|eps| {
                let lhs = value.num.clone() * I::from(sup_norm_int(x)) * eps.den.clone();
                lhs < eps.num.clone() * value.den.clone()
            })
    }
}

/// Vectors with `|x| = r` whose first coordinate is `v`, in lexicographic order.
fn shell_slice(m: usize, r: i64, v: i64) -> Box<dyn Iterator<Item = Vec<i64>> + Send> {
    let prefix = move |rest: Vec<i64>| {
        let mut x = Vec::with_capacity(m);
        x.push(v);
        x.extend(rest);
        x
    };
    if m == 1 {
        return Box::new((v.abs() == r).then(|| vec![v]).into_iter());
    }
    if v.abs() == r {
        Box::new(BoxIter::new(vec![(-r, r); m - 1]).map(prefix))
    } else {
        Box::new(ShellIter::new(m - 1, r).map(prefix))
    }
}

fn first_feasible<I: Int>(
    forms: &Forms<I>,
    m: usize,
    xb: i64,
    nonzero: bool,
    accept: &Accept<I>,
    opts: &SearchOptions,
) -> Result<Option<Vec<i64>>> {
    let start = if nonzero { 1 } else { 0 };
    for r in start..=xb {
        opts.charge(box_count(&vec![r; m]))?;
        if r == 0 {
            let x = vec![0; m];
            if accept.ok(&forms.max(&x), &x) {
                return Ok(Some(x));
            }
            continue;
        }
        let firsts: Vec<i64> = (-r..=r).collect();
        let hits = map_items(opts.exec, &firsts, |&v| {
            shell_slice(m, r, v).find(|x| accept.ok(&forms.max(x), x))
        });
        if let Some(x) = hits.into_iter().flatten().next() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

enum Criterion<'a> {
    Bound { c: &'a BigRational, strict: bool },
    BoundAndProduct { c: &'a BigRational, eps: &'a BigRational },
}

/// Core search shared by the solvers; returns the chosen `x`.
fn search(
    p: &ApproximationProblem,
    xb: i64,
    mode: SearchMode,
    nonzero: bool,
    criterion: Criterion<'_>,
    opts: &SearchOptions,
) -> Result<Vec<i64>> {
    let m = p.m();
    let bounds = vec![xb; m];
    let (c, eps) = match &criterion {
        Criterion::Bound { c, .. } => (*c, None),
        Criterion::BoundAndProduct { c, eps } => (*c, Some(*eps)),
    };
    let mut extra = vec![c.numer().clone(), c.denom().clone(), BigInt::from(xb)];
    if let Some(e) = eps {
        extra.push(e.numer() * BigInt::from(xb));
        extra.push(e.denom() * BigInt::from(xb));
    }
    let kernel = Kernel::build(residual_specs(p), &bounds, &extra);
    let strict = matches!(criterion, Criterion::Bound { strict: true, .. });
    let found = match mode {
        SearchMode::Minimal => {
            opts.charge(box_count(&bounds))?;
            with_forms!(&kernel, f => {
                minimal_scan(f, m, xb, nonzero, opts).and_then(|(v, x)| {
                    let accept = Accept { limit: frac_of(c), strict, product: eps.map(frac_of) };
                    accept.ok(&v, &x).then_some(x)
                })
            })
        }
        SearchMode::FirstFeasible => with_forms!(&kernel, f => {
            let accept = Accept { limit: frac_of(c), strict, product: eps.map(frac_of) };
            first_feasible(f, m, xb, nonzero, &accept, opts)?
        }),
    };
    match found {
        Some(x) => Ok(x),
        None => {
            let best = with_forms!(&kernel, f => {
                minimal_scan(f, m, xb, nonzero, opts).map(|(v, x)| (v.to_q(), x))
            });
            let (best_residual, best_x) = best.unwrap_or((BigRational::zero(), Vec::new()));
            Err(Error::NoSolution { best_residual, best_x })
        }
    }
}

/// A solution of `‖Θx − α‖ ≤ C`, `|x| ≤ X`.
///
/// In [`SearchMode::Minimal`] the returned `x` minimises the residual over
/// the box (ties to the lexicographically smallest `x`).
pub fn solve_satz1(
    p: &ApproximationProblem,
    c: &BigRational,
    x: &BigRational,
    options: Satz1Options,
    opts: &SearchOptions,
) -> Result<SolutionCertificate> {
    if !c.is_positive() {
        return Err(Error::Precondition(format!("C must be positive, got {}", fmt_q(c))));
    }
    let xb = x_bound(x)?;
    let found = search(
        p,
        xb,
        options.mode,
        options.nonzero,
        Criterion::Bound {
            c,
            strict: options.strict,
        },
        opts,
    )?;
    let point = p.nearest_point(&found)?;
    let params = Parameters {
        c: Some(c.clone()),
        x: Some(x.clone()),
        ..Default::default()
    };
    SolutionCertificate::new(p, point, c.clone(), options.strict, params)
}

/// The tightest `u` in the bounded check of
/// `‖α·u‖ ≤ K·max(X·‖Θᵀu‖, C·|u|)`: `ratio = lhs/rhs`, violated iff `ratio > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub u: Vec<i64>,
    #[serde(with = "qser::scalar")]
    pub lhs: BigRational,
    #[serde(with = "qser::scalar")]
    pub rhs: BigRational,
    #[serde(with = "qser::scalar")]
    pub ratio: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KhintchineCheck {
    pub holds: bool,
    pub u_bound: i64,
    /// `⌊1/(2KC)⌋`: checking up to here proves the hypothesis for all `u`.
    pub cutoff: i64,
    pub complete: bool,
    #[serde(with = "qser::scalar")]
    pub k: BigRational,
    pub tightest: Option<Violation>,
}

/// Ratio `a/b` with `b > 0` held unreduced.
#[derive(Clone)]
struct Ratio {
    num: BigInt,
    den: BigInt,
}

impl Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

/// Checks the transference hypothesis for every `0 < |u| ≤ u_bound` (default: the cutoff).
pub fn khintchine_hypothesis_check(
    p: &ApproximationProblem,
    c: &BigRational,
    x: &BigRational,
    u_bound: Option<i64>,
    opts: &SearchOptions,
) -> Result<KhintchineCheck> {
    if !c.is_positive() || !x.is_positive() {
        return Err(Error::Precondition("C and X must be positive".into()));
    }
    let n = p.n();
    let k = transference_constant(n, p.m());
    let two = BigRational::from_integer(BigInt::from(2));
    let cutoff = int_to_i64(&(two * &k * c).recip().floor().to_integer())?;
    let ub = u_bound.unwrap_or(cutoff);
    if ub < 0 {
        return Err(Error::Usage(format!("u bound must be >= 0, got {ub}")));
    }
    let complete = ub >= cutoff;
    if ub == 0 {
        return Ok(KhintchineCheck {
            holds: true,
            u_bound: 0,
            cutoff,
            complete,
            k,
            tightest: None,
        });
    }
    let bounds = vec![ub; n];
    opts.charge(box_count(&bounds) / 2)?;

    // form 0: α·u mod 1; forms 1..=m: (Θᵀu)_j mod 1
    let da = common_denominator(p.alpha().iter());
    let da_q = BigRational::from_integer(da.clone());
    let mut specs = vec![FormSpec::dist(
        p.alpha().iter().map(|a| (a * &da_q).to_integer()).collect(),
        BigInt::zero(),
        da.clone(),
        &da_q.recip(),
    )];
    specs.extend(p.scaled_cols().iter().map(|col| {
        FormSpec::dist(
            col.coeffs.clone(),
            BigInt::zero(),
            col.denom.clone(),
            &BigRational::new(BigInt::one(), col.denom.clone()),
        )
    }));
    let kernel = Kernel::build(specs, &bounds, &[]);

    let (kn, kd) = (k.numer().clone(), k.denom().clone());
    let (xn, xd) = (x.numer().clone(), x.denom().clone());
    let (cn, cd) = (c.numer().clone(), c.denom().clone());

    // (ratio, u, lhs, rhs) with lhs, rhs as (num, den)
    type Tight = (Ratio, Vec<i64>, Ratio, Ratio);
    let tightest = with_forms!(&kernel, f => {
        let slices: Vec<(usize, i64)> = (0..n).flat_map(|i| (-ub..=-1).map(move |v| (i, v))).collect();
        let parts = map_items(opts.exec, &slices, |&(lead, v)| {
            let ranges: Vec<(i64, i64)> = (0..n)
                .map(|i| match i.cmp(&lead) {
                    Ordering::Less => (0, 0),
                    Ordering::Equal => (v, v),
                    Ordering::Greater => (-ub, ub),
                })
                .collect();
            let mut best: Option<Tight> = None;
            for u in BoxIter::new(ranges) {
                let a = f.term(0, &u);
                let mut b = Frac::zero();
                for j in 1..f.len() {
                    let tj = f.term(j, &u);
                    if tj.cmp_value(&b) == Ordering::Greater {
                        b = tj;
                    }
                }
                let norm = BigInt::from(sup_norm_int(&u));
                // X·b vs C·|u|
                let xb_num = &xn * b.num.to_big();
                let xb_den = &xd * b.den.to_big();
                let cu_num = &cn * &norm;
                let rhs_inner = if &xb_num * &cd >= &cu_num * &xb_den {
                    Ratio { num: xb_num, den: xb_den }
                } else {
                    Ratio { num: cu_num, den: cd.clone() }
                };
                let rhs = Ratio { num: &kn * &rhs_inner.num, den: &kd * &rhs_inner.den };
                let lhs = Ratio { num: a.num.to_big(), den: a.den.to_big() };
                let ratio = Ratio { num: &lhs.num * &rhs.den, den: &lhs.den * &rhs.num };
                if best.as_ref().is_none_or(|bst| ratio.cmp(&bst.0) == Ordering::Greater) {
                    best = Some((ratio, u, lhs, rhs));
                }
            }
            best
        });
        parts.into_iter().fold(None::<Tight>, |acc, next| match (acc, next) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(match b.0.cmp(&a.0) {
                Ordering::Greater => b,
                Ordering::Less => a,
                Ordering::Equal => if b.1 < a.1 { b } else { a },
            }),
        })
    });
    let tightest = tightest.map(|(ratio, u, lhs, rhs)| Violation {
        u,
        lhs: BigRational::new(lhs.num, lhs.den),
        rhs: BigRational::new(rhs.num, rhs.den),
        ratio: BigRational::new(ratio.num, ratio.den),
    });
    Ok(KhintchineCheck {
        holds: tightest.as_ref().is_none_or(|v| v.ratio <= BigRational::one()),
        u_bound: ub,
        cutoff,
        complete,
        k,
        tightest,
    })
}

/// `‖Θx − α‖ < ε` with `X` derived from `ψ(1/(2Kε))`.
///
/// With `C = ε` the hypothesis holds once `X = 1/(2K·ψ(1/(2KC)))`; the
/// search then runs in order of increasing `|x|`.
pub fn solve_kronecker(p: &ApproximationProblem, epsilon: &BigRational, opts: &SearchOptions) -> Result<SolutionCertificate> {
    if !epsilon.is_positive() {
        return Err(Error::Precondition(format!("epsilon must be positive, got {}", fmt_q(epsilon))));
    }
    let k = transference_constant(p.n(), p.m());
    let two = BigRational::from_integer(BigInt::from(2));
    let c = epsilon.clone();
    let s = (&two * &k * &c).recip().max(BigRational::one());
    let ps = psi(p, &s, opts)?;
    if ps.degenerate {
        return Err(Error::Degenerate {
            height: sup_norm_int(&ps.witness),
            witness: ps.witness,
        });
    }
    let x = (&two * &k * &ps.value).recip();
    let xb = x_bound(&x)?;
    let found = search(
        p,
        xb,
        SearchMode::FirstFeasible,
        false,
        Criterion::Bound { c: &c, strict: true },
        opts,
    )?;
    let point = p.nearest_point(&found)?;
    let params = Parameters {
        epsilon: Some(epsilon.clone()),
        k: Some(k),
        c: Some(c.clone()),
        x: Some(x),
        s: Some(s),
        psi_s: Some(ps.value),
        ..Default::default()
    };
    SolutionCertificate::new(p, point, c, true, params)
}

/// `‖θ·x − α‖ < ε/|x|` with `x ≠ 0`, for `n = 1`, `m ≥ 2`.
///
/// Finds `t` with `t·ψ(t/(2Kε)) ≥ 1/K`, so that `X = 1/(K·ψ(t/(2Kε))) ≤ t`,
/// then solves with `C = ε/t`.
pub fn solve_satz3(
    p: &ApproximationProblem,
    epsilon: &BigRational,
    t_cap: &BigRational,
    opts: &SearchOptions,
) -> Result<SolutionCertificate> {
    if p.n() != 1 || p.m() < 2 {
        return Err(Error::Precondition(format!(
            "the eps/|x| solver needs n = 1, m >= 2 (got n = {}, m = {})",
            p.n(),
            p.m()
        )));
    }
    if !epsilon.is_positive() {
        return Err(Error::Precondition(format!("epsilon must be positive, got {}", fmt_q(epsilon))));
    }
    let k = transference_constant(1, p.m());
    let big_m = k.recip();
    let hit = jarnik_search(p, epsilon, &big_m, t_cap)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let s = &hit.t / (&two * &k * epsilon);
    let x = (&k * &hit.psi).recip();
    let c = epsilon / &hit.t;
    let xb = x_bound(&x)?;
    let found = search(
        p,
        xb,
        SearchMode::FirstFeasible,
        true,
        Criterion::BoundAndProduct { c: &c, eps: epsilon },
        opts,
    )?;
    let point = p.nearest_point(&found)?;
    let bound = epsilon / BigRational::from_integer(BigInt::from(sup_norm_int(&found)));
    let params = Parameters {
        epsilon: Some(epsilon.clone()),
        k: Some(k),
        c: Some(c),
        x: Some(x),
        s: Some(s),
        psi_s: Some(hit.psi.clone()),
        t: Some(hit.t.clone()),
        big_m: Some(big_m),
        ..Default::default()
    };
    SolutionCertificate::new(p, point, bound, true, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    fn scalar(theta: BigRational, alpha: BigRational) -> ApproximationProblem {
        ApproximationProblem::from_rows(vec![vec![theta]], vec![alpha]).unwrap()
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn representable_target_has_zero_residual() {
        let p = scalar(q(2, 7), q(6, 7));
        let cert = solve_satz1(&p, &q(1, 100), &qi(10), Satz1Options::default(), &opts()).unwrap();
        assert_eq!(cert.residual_norm, qi(0));
        cert.revalidate(&p).unwrap();
    }

    #[test]
    fn half_bound_is_always_met() {
        let p = scalar(q(1618034, 1000000), q(1, 3));
        let o = Satz1Options {
            mode: SearchMode::FirstFeasible,
            ..Default::default()
        };
        let cert = solve_satz1(&p, &q(1, 2), &qi(5), o, &opts()).unwrap();
        assert_eq!(cert.point.x(), &[0]);
    }

    #[test]
    fn khintchine_trivial_cases() {
        let p = scalar(q(1618034, 1000000), qi(0));
        let c = khintchine_hypothesis_check(&p, &q(1, 10), &qi(10), Some(0), &opts()).unwrap();
        assert!(c.holds && c.tightest.is_none());
        assert_eq!(c.k, q(1, 4));
        let full = khintchine_hypothesis_check(&p, &q(1, 10), &qi(10), None, &opts()).unwrap();
        assert!(full.holds && full.complete);
        assert_eq!(full.cutoff, 20);
    }

    #[test]
    fn kronecker_rational_dependence() {
        let p = scalar(q(1, 2), q(1, 4));
        assert!(matches!(solve_kronecker(&p, &q(1, 10), &opts()), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn kronecker_golden() {
        let p = scalar(q(1618034, 1000000), q(1, 3));
        let cert = solve_kronecker(&p, &q(1, 100), &opts()).unwrap();
        assert!(cert.residual_norm < q(1, 100));
        cert.revalidate(&p).unwrap();
    }
}
