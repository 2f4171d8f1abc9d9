//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use diophant::exact::gcd_all;
use diophant::oracle::brute_first_product_witness;
use diophant::psi::psi_records;
use diophant::solvers::{
    gcd_shift, primitive_record_scan, solve_primitive_satz7, solve_satz3, Satz7Case, Satz7Options, SolutionCertificate,
};
use diophant::{q, qi, ApproximationProblem, SearchOptions};
use diophant_cli::report::Report;
use diophant_cli::suite::{self, Status, SuiteReport};
use num_integer::Integer;
use num_rational::BigRational;

const SEED: u64 = 7;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn phi_hat() -> BigRational {
    q(1618034, 1000000)
}

fn sqrt23(alpha: BigRational) -> ApproximationProblem {
    ApproximationProblem::from_rows(
        vec![vec![q(1414213562373, 1000000000000), q(1732050807568, 1000000000000)]],
        vec![alpha],
    )
    .unwrap()
}

fn verify_bytes() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_diophant"))
        .args(["verify", "--seed", &SEED.to_string()])
        .output()
        .expect("run diophant verify");
    assert!(
        out.status.success(),
        "verify exited with {:?}: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

/// First `diophant verify --seed 7` run, shared by criteria 3 to 7 and 11.
fn suite_run() -> &'static (Vec<u8>, SuiteReport) {
    static RUN: OnceLock<(Vec<u8>, SuiteReport)> = OnceLock::new();
    RUN.get_or_init(|| {
        let bytes = verify_bytes();
        let report: Report = serde_json::from_slice(&bytes).expect("verify writes a report");
        let suite: SuiteReport = serde_json::from_value(report.result).expect("verify result is a suite report");
        (bytes, suite)
    })
}

/// `(pass, fail, skip)` for one check name across the suite.
fn tally(name: &str) -> (usize, usize, usize) {
    let s = &suite_run().1;
    let t = s.summary.get(name).cloned().unwrap_or_default();
    (t.pass, t.fail, t.skip)
}

fn suite_criterion(names: &[&str], min_pass: usize) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        let (p, f, s) = tally(name);
        ok &= f == 0 && p >= min_pass;
        parts.push(format!("{name} {p}/{f}/{s}"));
    }
    outcome(ok, format!("pass/fail/skip: {}", parts.join(", ")))
}

fn c1_psi_oracle() -> Outcome {
    let opts = SearchOptions::default();
    let (mut pass, mut fail) = (0, 0);
    let mut first_failure = None;
    for i in 0..200 {
        let inst = suite::instance(SEED, i);
        for c in suite::run_psi(&inst, &opts) {
            match c.status {
                Status::Pass => pass += 1,
                _ => {
                    fail += 1;
                    first_failure.get_or_insert(format!("instance {i} {}: {:?}", c.name, c.detail));
                }
            }
        }
    }
    let detail = match first_failure {
        Some(f) => format!("{pass} checks pass, {fail} fail; first: {f}"),
        None => format!("200 instances, {pass} checks (oracle + monotone) pass"),
    };
    outcome(fail == 0 && pass == 400, detail)
}

fn c2_golden_records() -> Outcome {
    let p = ApproximationProblem::from_rows(vec![vec![phi_hat()]], vec![qi(0)]).unwrap();
    let table = psi_records(&p, 60, &SearchOptions::default()).unwrap();
    let expected = [
        (1, q(190983, 500000)),
        (2, q(59017, 250000)),
        (3, q(72949, 500000)),
        (5, q(9017, 100000)),
        (8, q(3483, 62500)),
        (13, q(17221, 500000)),
        (21, q(10643, 500000)),
        (34, q(3289, 250000)),
        (55, q(813, 100000)),
    ];
    let got: Vec<(i64, BigRational)> = table.records.iter().map(|r| (r.t, r.psi.clone())).collect();
    let witnesses_ok = table.records.iter().all(|r| r.witness == [-r.t]);
    outcome(
        got == expected && witnesses_ok && !table.degenerate,
        format!("thresholds {:?}", table.thresholds()),
    )
}

fn c3_mu1() -> Outcome {
    let (p, f, _) = tally("mu1");
    outcome(f == 0 && p >= 50, format!("mu_1 = 1 on {p} non-degenerate minima instances (d <= 4), {f} failures"))
}

fn c4_mahler() -> Outcome {
    suite_criterion(&["mahler"], 50)
}

fn c5_minkowski() -> Outcome {
    suite_criterion(&["minkowski"], 50)
}

fn c6_basis_cover() -> Outcome {
    suite_criterion(&["basis", "cover"], 50)
}

fn c7_satz1() -> Outcome {
    suite_criterion(&["khintchine_satz1", "satz1_oracle"], 1)
}

fn c8_satz3() -> Outcome {
    let eps = q(1, 2);
    let mut parts = Vec::new();
    let mut ok = true;
    for alpha in [q(1, 3), q(1, 7)] {
        let p = sqrt23(alpha.clone());
        let cert = solve_satz3(&p, &eps, &qi(1_000_000), &SearchOptions::default()).unwrap();
        let product = &cert.residual_norm * qi(cert.x_norm);
        ok &= product < eps && cert.x_norm > 0 && cert.revalidate(&p).is_ok();
        let w = brute_first_product_witness(&p, &eps, 10_000);
        ok &= w.as_deref() == Some(&[-1, -1][..]);
        parts.push(format!("alpha {alpha}: x = {:?}, oracle witness {:?}", cert.point.x(), w));
    }
    outcome(ok, parts.join("; "))
}

fn satz7_ok(certs: &[SolutionCertificate], p: &ApproximationProblem, count: usize) -> bool {
    let distinct = certs.iter().enumerate().all(|(i, a)| certs[..i].iter().all(|b| a.point != b.point));
    let each = certs.iter().all(|c| {
        let tr = c.construction.as_ref().unwrap();
        let (u1, uj) = (tr.u[0], tr.u[tr.j - 1]);
        let minimal = gcd_shift(u1, uj) == tr.v
            && (u1 + tr.v).gcd(&uj) == 1
            && (0..tr.v).all(|w| (u1 + w).gcd(&uj) != 1);
        c.primitive && gcd_all(c.point.z()) == 1 && c.meets_bound() && c.revalidate(p).is_ok() && minimal && tr.repairs == 0
    });
    certs.len() == count && distinct && each
}

fn c9_satz7() -> Outcome {
    let opts = SearchOptions::default();
    let o = Satz7Options {
        count: 3,
        ..Default::default()
    };
    let a = ApproximationProblem::from_rows(vec![vec![phi_hat()], vec![q(1414213562373, 1000000000000)]], vec![q(1, 3), q(1, 7)])
        .unwrap();
    let certs = solve_primitive_satz7(&a, &q(1, 2), &o, &opts).unwrap();
    let mut ok = satz7_ok(&certs, &a, 3) && certs.iter().all(|c| c.construction.as_ref().unwrap().case == Satz7Case::A);
    let mut parts = vec![format!("case a x = {:?}", certs.iter().map(|c| c.point.x()[0]).collect::<Vec<_>>())];
    for alpha in [q(1, 3), q(1, 7)] {
        let p = sqrt23(alpha.clone());
        let certs = solve_primitive_satz7(&p, &q(1, 2), &o, &opts).unwrap();
        ok &= satz7_ok(&certs, &p, 3) && certs.iter().all(|c| c.construction.as_ref().unwrap().case == Satz7Case::B);
        parts.push(format!("case b alpha {alpha}: {} certificates", certs.len()));
    }
    let exhaustive = (-60..60i64)
        .flat_map(|a| (-60..60i64).filter(|&b| b != 0).map(move |b| (a, b)))
        .all(|(a, b)| {
            let v = gcd_shift(a, b);
            (a + v).gcd(&b) == 1 && (0..v).all(|w| (a + w).gcd(&b) != 1)
        });
    ok &= exhaustive;
    parts.push(format!("gcd_shift minimal on |u| < 60: {exhaustive}"));
    outcome(ok, parts.join("; "))
}

fn c10_primitive_scan() -> Outcome {
    let scan = primitive_record_scan(&phi_hat(), &qi(0), 10_000).unwrap();
    let xs: Vec<i64> = scan.records.iter().map(|r| r.x).collect();
    let expected = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584, 6765];
    let fib: Vec<i64> = std::iter::successors(Some((1i64, 2i64)), |&(a, b)| Some((b, a + b)))
        .map(|(a, _)| a)
        .take_while(|&a| a <= 10_000)
        .collect();
    let all_fib = xs.iter().all(|x| fib.contains(x));
    let pinned = BigRational::new(1113881934976643861u64.into(), (1u128 << 64).into());
    let max = scan.log_sq_max.clone().unwrap();
    let below = scan.records.iter().filter_map(|r| r.log_sq.as_ref()).all(|i| i.hi <= pinned);
    outcome(
        xs == expected && all_fib && max == pinned && below,
        format!("records at {xs:?}; max normalised statistic {} (about 0.0604)", diophant::fmt_q(&max)),
    )
}

fn c11_determinism() -> Outcome {
    let first = &suite_run().0;
    let second = verify_bytes();
    outcome(first == &second, format!("two runs of verify --seed {SEED}: {} bytes each", first.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("psi oracle equivalence", c1_psi_oracle),
        ("golden-ratio psi records", c2_golden_records),
        ("mu_1 = 1", c3_mu1),
        ("Mahler duality", c4_mahler),
        ("dual Minkowski bound", c5_minkowski),
        ("basis extension and cover", c6_basis_cover),
        ("transference solver", c7_satz1),
        ("eps/|x| solver", c8_satz3),
        ("primitive solver", c9_satz7),
        ("primitive record scan", c10_primitive_scan),
        ("determinism", c11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}) [{:.1}s]",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
