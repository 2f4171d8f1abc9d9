//! Seeded property suite over random rational instances.
//!
//! Instance `i` draws from its own ChaCha stream seeded by `(seed, i)`, so
//! results do not depend on `--jobs` or on how many instances are run.

use std::collections::BTreeMap;

use diophant::exact::box_count;
use diophant::minima::{
    basis_extend, fundamental_cover_find, gauge_value, mahler_check, minima_report, minkowski_dual_check,
    successive_minima, GaugeKind, GaugeSpec, MinimaReport,
};
use diophant::oracle::{brute_best_inhomogeneous, brute_minima, brute_psi};
use diophant::psi::{psi, psi_records};
use diophant::solvers::{khintchine_hypothesis_check, solve_satz1, Satz1Options, SearchMode};
use diophant::{fmt_q, parse_q, q, qi, ApproximationProblem, Error, SearchOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest box the brute-force minima oracle is asked to walk.
const MINIMA_ORACLE_POINTS: u128 = 1_000_000;
const COVER_SHIFTS: usize = 100;
const MINIMA_MAX_D: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<Option<String>>) -> Self {
        Self {
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            detail: if pass { None } else { detail.into() },
        }
    }

    fn skip(name: &str, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Skip,
            detail: Some(why.into()),
        }
    }

    fn error(name: &str, e: &Error) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            detail: Some(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub index: usize,
    pub theta: Vec<Vec<String>>,
    pub alpha: Vec<String>,
    pub t_psi: i64,
    pub t_minima: i64,
}

impl Instance {
    pub fn problem(&self) -> ApproximationProblem {
        let rows = self.theta.iter().map(|r| r.iter().map(|s| parse_q(s).unwrap()).collect()).collect();
        let alpha = self.alpha.iter().map(|s| parse_q(s).unwrap()).collect();
        ApproximationProblem::from_rows(rows, alpha).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub instance: Instance,
    pub degenerate: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub instances: usize,
    pub summary: BTreeMap<String, Tally>,
    pub results: Vec<InstanceResult>,
    pub pass: bool,
}

fn rational(rng: &mut ChaCha8Rng, max_den: i64) -> BigRational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(0..den);
    q(num, den)
}

/// Instance `index` of the suite seeded by `seed`.
pub fn instance(seed: u64, index: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let m = rng.gen_range(1..=3usize);
    let n = rng.gen_range(1..=3usize);
    let theta = (0..n)
        .map(|_| (0..m).map(|_| fmt_q(&rational(&mut rng, 10_000))).collect())
        .collect();
    let alpha = (0..n).map(|_| fmt_q(&rational(&mut rng, 1_000))).collect();
    Instance {
        index,
        theta,
        alpha,
        t_psi: rng.gen_range(1..=50),
        t_minima: rng.gen_range(2..=6),
    }
}

fn psi_checks(p: &ApproximationProblem, t: i64, opts: &SearchOptions, out: &mut Vec<Check>) {
    let tq = qi(t);
    match (psi(p, &tq, opts), brute_psi(p, t, opts)) {
        (Ok(a), Ok(b)) => out.push(Check::new(
            "psi_oracle",
            a.value == b.values[0] && a.witness == b.witnesses[0],
            format!("psi {} vs oracle {}", fmt_q(&a.value), fmt_q(&b.values[0])),
        )),
        (Err(e), _) | (_, Err(e)) => out.push(Check::error("psi_oracle", &e)),
    }
    match psi_records(p, t, opts) {
        Ok(table) => {
            let mut prev: Option<BigRational> = None;
            let mut ok = true;
            for s in 1..=t {
                let v = match psi(p, &qi(s), opts) {
                    Ok(v) => v.value,
                    Err(e) => return out.push(Check::error("psi_monotone", &e)),
                };
                ok &= prev.as_ref().is_none_or(|pv| &v <= pv) && table.value_at(s).as_ref() == Some(&v);
                prev = Some(v);
            }
            out.push(Check::new("psi_monotone", ok, "psi increases or disagrees with its record table".to_string()));
        }
        Err(e) => out.push(Check::error("psi_monotone", &e)),
    }
}

/// Radius that contains every point of gauge `≤ s`, computed from the gauge definition.
fn oracle_radius(g: &GaugeSpec, s: &BigRational) -> i64 {
    let p = g.problem();
    let th = p.theta();
    let c = match g.kind() {
        GaugeKind::Primal => {
            let rs = (0..p.n())
                .map(|i| th.row(i).iter().map(|v| v.abs()).sum::<BigRational>())
                .max()
                .unwrap();
            (&rs / g.psi_t() + g.t().recip()).max(g.psi_t().recip())
        }
        GaugeKind::Dual => {
            let cs = (0..p.m())
                .map(|j| th.column(j).iter().map(|v| v.abs()).sum::<BigRational>())
                .max()
                .unwrap();
            (&cs * g.t() + g.psi_t()).max(g.t().clone())
        }
    };
    (c * s).floor().to_integer().try_into().unwrap_or(i64::MAX)
}

fn minima_oracle_check(g: &GaugeSpec, report: &MinimaReport, opts: &SearchOptions) -> Check {
    let lambdas = match g.kind() {
        GaugeKind::Primal => &report.lambdas,
        GaugeKind::Dual => &report.mus,
    };
    let name = match g.kind() {
        GaugeKind::Primal => "minima_oracle_primal",
        GaugeKind::Dual => "minima_oracle_dual",
    };
    let r = oracle_radius(g, lambdas.last().unwrap());
    let d = g.problem().d();
    if box_count(&vec![r; d]) > MINIMA_ORACLE_POINTS {
        return Check::skip(name, format!("oracle box radius {r} in dimension {d} exceeds the cap"));
    }
    match brute_minima(g, r, opts) {
        Ok(b) => Check::new(name, &b.values == lambdas, format!("oracle minima differ at radius {r}")),
        Err(e) => Check::error(name, &e),
    }
}

fn minima_checks(p: &ApproximationProblem, t: i64, rng: &mut ChaCha8Rng, opts: &SearchOptions, out: &mut Vec<Check>) -> bool {
    let tq = qi(t);
    let report = match minima_report(p, &tq, None, opts) {
        Ok(r) => r,
        Err(Error::Degenerate { .. }) => return true,
        Err(e) => {
            out.push(Check::error("minima", &e));
            return false;
        }
    };
    let d = p.d();
    let dfact: BigRational = (1..=d as i64).map(qi).product();
    out.push(Check::new("mu1", report.mus[0] == BigRational::one(), format!("mu_1 = {}", fmt_q(&report.mus[0]))));
    let rows = mahler_check(&report);
    out.push(Check::new("mahler", rows.iter().all(|r| r.pass), "a product lies outside [1/d, (d-1)!]".to_string()));

    let primal = GaugeSpec::with_psi(p, &tq, &report.psi, GaugeKind::Primal).unwrap();
    let dual = primal.switch(GaugeKind::Dual);
    match minkowski_dual_check(&dual, &report) {
        Ok(c) => out.push(Check::new(
            "minkowski",
            c.pass,
            format!("mu_d^d t^n psi^m = {} < 1/d!", fmt_q(&c.lhs)),
        )),
        Err(e) => out.push(Check::error("minkowski", &e)),
    }

    // the minima at an explicit radius agree with the escalated ones
    let again = successive_minima(&primal, report.search_radius, opts).map(|s| s.minima == report.lambdas);
    out.push(match again {
        Ok(ok) => Check::new("minima_radius_stable", ok, "explicit radius changes the minima".to_string()),
        Err(e) => Check::error("minima_radius_stable", &e),
    });
    out.push(minima_oracle_check(&primal, &report, opts));
    out.push(minima_oracle_check(&dual, &report, opts));

    match basis_extend(&report.points_primal, &primal) {
        Ok(basis) => {
            let cols: Vec<Vec<i64>> = basis.iter().map(|b| b.z().to_vec()).collect();
            let unimodular = diophant::linalg::det(&cols).abs() == BigInt::one();
            let keeps_first = basis[0] == report.points_primal[0];
            let gauges_ok = basis.iter().all(|b| gauge_value(&primal, b).is_ok_and(|v| v <= dfact));
            out.push(Check::new(
                "basis",
                unimodular && keeps_first && gauges_ok,
                format!("unimodular {unimodular}, keeps z(1) {keeps_first}, gauges within d! {gauges_ok}"),
            ));
        }
        Err(e) => out.push(Check::error("basis", &e)),
    }

    let mut cover_ok = true;
    let mut detail = None;
    for _ in 0..COVER_SHIFTS {
        let shift: Vec<BigRational> = (0..d).map(|_| q(rng.gen_range(-500..=500), rng.gen_range(1..=100))).collect();
        match fundamental_cover_find(&primal, &report, &shift) {
            Ok(z) => {
                let diff: Vec<BigRational> =
                    z.z().iter().zip(&shift).map(|(&a, s)| qi(a) - s).collect();
                if primal.value_rational(&diff).map_or(true, |v| v > dfact) {
                    cover_ok = false;
                    detail = Some(format!("shift {:?}", shift.iter().map(fmt_q).collect::<Vec<_>>()));
                    break;
                }
            }
            Err(e) => {
                cover_ok = false;
                detail = Some(e.to_string());
                break;
            }
        }
    }
    out.push(Check::new("cover", cover_ok, detail));
    false
}

fn satz1_checks(p: &ApproximationProblem, rng: &mut ChaCha8Rng, opts: &SearchOptions, out: &mut Vec<Check>) {
    if p.d() > 3 {
        return;
    }
    let x_bound = if p.m() == 1 { rng.gen_range(1..=100) } else { rng.gen_range(1..=30) };
    let c = q(rng.gen_range(10..=50), 100);
    match khintchine_hypothesis_check(p, &c, &qi(x_bound), None, opts) {
        Ok(h) if h.holds && h.complete => {
            let r = solve_satz1(p, &c, &qi(x_bound), Satz1Options::default(), opts);
            out.push(match r {
                Ok(cert) => Check::new("khintchine_satz1", cert.meets_bound(), "certificate misses C".to_string()),
                Err(e) => Check::error("khintchine_satz1", &e),
            });
        }
        Ok(h) => out.push(Check::skip("khintchine_satz1", format!("hypothesis fails below the cutoff {}", h.cutoff))),
        Err(Error::Budget { .. }) => out.push(Check::skip("khintchine_satz1", "cutoff box exceeds the budget")),
        Err(e) => out.push(Check::error("khintchine_satz1", &e)),
    }

    let o = Satz1Options {
        mode: SearchMode::Minimal,
        nonzero: true,
        strict: false,
    };
    let main = solve_satz1(p, &qi(1), &qi(x_bound), o, opts);
    let oracle = brute_best_inhomogeneous(p, x_bound, false, opts);
    out.push(match (main, oracle) {
        (Ok(cert), Ok(b)) => Check::new(
            "satz1_oracle",
            cert.residual_norm == b.values[0] && cert.x_norm <= x_bound,
            format!("solver {} vs oracle {}", fmt_q(&cert.residual_norm), fmt_q(&b.values[0])),
        ),
        (Err(e), _) | (_, Err(e)) => Check::error("satz1_oracle", &e),
    });
}

/// The ψ checks alone: oracle agreement at `t_psi` and monotonicity on `[1, t_psi]`.
pub fn run_psi(inst: &Instance, opts: &SearchOptions) -> Vec<Check> {
    let mut checks = Vec::new();
    psi_checks(&inst.problem(), inst.t_psi, opts, &mut checks);
    checks
}

pub fn run_instance(inst: &Instance, seed: u64, opts: &SearchOptions) -> InstanceResult {
    let p = inst.problem();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    rng.set_stream(inst.index as u64);
    let mut checks = Vec::new();
    psi_checks(&p, inst.t_psi, opts, &mut checks);
    let degenerate = p.d() <= MINIMA_MAX_D && minima_checks(&p, inst.t_minima, &mut rng, opts, &mut checks);
    satz1_checks(&p, &mut rng, opts, &mut checks);
    InstanceResult {
        instance: inst.clone(),
        degenerate,
        checks,
    }
}

/// Runs instances `0..count`; the caller's rayon pool sets the parallelism.
pub fn run(seed: u64, count: usize, opts: &SearchOptions) -> SuiteReport {
    let results: Vec<InstanceResult> = (0..count)
        .into_par_iter()
        .map(|i| run_instance(&instance(seed, i), seed, opts))
        .collect();
    let mut summary: BTreeMap<String, Tally> = BTreeMap::new();
    for c in results.iter().flat_map(|r| &r.checks) {
        let t = summary.entry(c.name.clone()).or_default();
        match c.status {
            Status::Pass => t.pass += 1,
            Status::Fail => t.fail += 1,
            Status::Skip => t.skip += 1,
        }
    }
    let pass = summary.values().all(|t| t.fail == 0);
    SuiteReport {
        seed,
        instances: count,
        summary,
        results,
        pass,
    }
}
