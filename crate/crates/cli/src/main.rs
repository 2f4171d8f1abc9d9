use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diophant::minima::{mahler_check, minima_report, minkowski_dual_check, GaugeKind, GaugeSpec};
use diophant::oracle::{brute_best_inhomogeneous, brute_minima, brute_psi};
use diophant::psi::{psi, psi_records};
use diophant::solvers::{
    khintchine_hypothesis_check, primitive_record_scan, solve_kronecker, solve_primitive_satz7, solve_satz1, solve_satz3,
    Satz1Options, Satz7Case, Satz7Options, SearchMode, SolutionCertificate,
};
use diophant::{parse_q, Error, SearchOptions};
use diophant_cli::problem::{load, LoadedProblem};
use diophant_cli::report::{write_file, write_psi_csv, write_scan_csv, Report};
use diophant_cli::suite::{self, Check};
use num_rational::BigRational;
use serde_json::json;

#[derive(Parser)]
#[command(name = "diophant", version, about = "Exact inhomogeneous Diophantine approximation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Largest number of lattice points a single enumeration may visit.
    #[arg(long, global = true, env = "DIOPHANT_BUDGET")]
    budget: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write the record table as CSV (psi --t-max, scan-primitive).
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// Problem file (JSON).
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// ψ at one t, or its record table on [1, t-max].
    Psi {
        #[command(flatten)]
        input: Input,
        #[arg(short = 't', long = "t", value_parser = rational)]
        t: Option<BigRational>,
        #[arg(long)]
        t_max: Option<i64>,
    },
    /// Successive minima of Π(t) and Π*(t) with the duality checks.
    Minima {
        #[command(flatten)]
        input: Input,
        #[arg(short = 't', long = "t", value_parser = rational)]
        t: BigRational,
        #[arg(long)]
        radius: Option<i64>,
    },
    /// Products λ_ν·μ_{d+1−ν} against [1/d, (d−1)!].
    Mahler {
        #[command(flatten)]
        input: Input,
        #[arg(short = 't', long = "t", value_parser = rational)]
        t: BigRational,
        #[arg(long)]
        radius: Option<i64>,
    },
    Solve {
        #[command(subcommand)]
        which: Solve,
    },
    /// Records of |xθ − α − y| over primitive (x, y) for a 1×1 problem.
    ScanPrimitive {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10_000)]
        x_max: i64,
    },
    /// Seeded property suite over random rational instances.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
    /// Brute-force reference values.
    Oracle {
        #[arg(value_enum)]
        quantity: OracleQuantity,
        #[command(flatten)]
        input: Input,
        #[arg(short = 't', long = "t", value_parser = rational)]
        t: Option<BigRational>,
        #[arg(long)]
        radius: Option<i64>,
        #[arg(long)]
        x_max: Option<i64>,
        #[arg(long, value_enum, default_value_t = Side::Primal)]
        side: Side,
    },
}

#[derive(Subcommand)]
enum Solve {
    /// ‖Θx − α‖ ≤ C with |x| ≤ X.
    Satz1 {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = rational)]
        c: BigRational,
        #[arg(long, value_parser = rational)]
        x: BigRational,
        #[arg(long, value_enum, default_value_t = Mode::Minimal)]
        mode: Mode,
        /// Exclude x = 0.
        #[arg(long)]
        nonzero: bool,
        /// Check the hypothesis only for |u| up to this bound instead of the cutoff.
        #[arg(long)]
        u_bound: Option<i64>,
    },
    /// ‖Θx − α‖ < ε.
    Kronecker {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = rational)]
        epsilon: BigRational,
    },
    /// ‖θ·x − α‖ < ε/|x| for n = 1, m ≥ 2.
    Satz3 {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = rational)]
        epsilon: BigRational,
        #[arg(long, value_parser = rational, default_value = "1000000")]
        t_cap: BigRational,
    },
    /// Primitive solutions.
    Satz7 {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = rational)]
        epsilon: BigRational,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum)]
        case: Option<Case>,
        #[arg(long, value_parser = rational, default_value = "1048576")]
        t_cap: BigRational,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Minimal,
    FirstFeasible,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Primal,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleQuantity {
    Psi,
    Minima,
    BestInhom,
    BestPrimitive,
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_q(s).map_err(|e| e.to_string())
}

fn int_t(t: &BigRational) -> Result<i64, Error> {
    i64::try_from(t.floor().to_integer()).map_err(|_| Error::Usage("t out of range".into()))
}

/// Result of a command: the report and, when set, an exit code that overrides pass/fail.
struct Outcome {
    report: Report,
    code: Option<u8>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, code: None }
    }
}

fn certificate_checks(p: &LoadedProblem, certs: &[SolutionCertificate]) -> Vec<Check> {
    certs
        .iter()
        .enumerate()
        .map(|(i, c)| match c.revalidate(&p.problem) {
            Ok(()) => Check {
                name: format!("certificate_{}", i + 1),
                status: suite::Status::Pass,
                detail: None,
            },
            Err(e) => Check {
                name: format!("certificate_{}", i + 1),
                status: suite::Status::Fail,
                detail: Some(e.to_string()),
            },
        })
        .collect()
}

fn pass_check(name: &str, pass: bool) -> Check {
    Check {
        name: name.into(),
        status: if pass { suite::Status::Pass } else { suite::Status::Fail },
        detail: None,
    }
}

fn run(cli: &Cli, opts: &SearchOptions) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Psi { input, t, t_max } => {
            let lp = load(&input.input)?;
            match (t, t_max) {
                (None, Some(t_max)) => {
                    let table = psi_records(&lp.problem, *t_max, opts)?;
                    if let Some(path) = &cli.csv {
                        write_psi_csv(path, &table).map_err(|e| Error::Usage(e.to_string()))?;
                    }
                    let code = table.degenerate.then_some(3);
                    let report = Report::new("psi", Some(lp.sha256), json!({ "t_max": t_max }), &table, vec![]);
                    Ok(Outcome { report, code })
                }
                (Some(t), None) => {
                    let v = psi(&lp.problem, t, opts)?;
                    let code = v.degenerate.then_some(3);
                    let params = json!({ "t": diophant::fmt_q(t) });
                    Ok(Outcome {
                        report: Report::new("psi", Some(lp.sha256), params, &v, vec![]),
                        code,
                    })
                }
                _ => Err(Error::Usage("give exactly one of --t and --t-max".into())),
            }
        }
        Cmd::Minima { input, t, radius } => {
            let lp = load(&input.input)?;
            let r = minima_report(&lp.problem, t, *radius, opts)?;
            let dual = GaugeSpec::with_psi(&lp.problem, t, &r.psi, GaugeKind::Dual)?;
            let mk = minkowski_dual_check(&dual, &r)?;
            let rows = mahler_check(&r);
            let checks = vec![
                pass_check("mu1", r.mus[0] == diophant::qi(1)),
                pass_check("mahler", rows.iter().all(|r| r.pass)),
                pass_check("minkowski", mk.pass),
            ];
            let params = json!({ "t": diophant::fmt_q(t), "radius": radius });
            let result = json!({ "minima": r, "mahler": rows, "minkowski": mk });
            Ok(Report::new("minima", Some(lp.sha256), params, result, checks).into())
        }
        Cmd::Mahler { input, t, radius } => {
            let lp = load(&input.input)?;
            let r = minima_report(&lp.problem, t, *radius, opts)?;
            let rows = mahler_check(&r);
            let checks = rows.iter().map(|row| pass_check(&format!("nu_{}", row.nu), row.pass)).collect();
            let params = json!({ "t": diophant::fmt_q(t), "radius": radius });
            Ok(Report::new("mahler", Some(lp.sha256), params, &rows, checks).into())
        }
        Cmd::Solve { which } => solve(which, opts),
        Cmd::ScanPrimitive { input, x_max } => {
            let lp = load(&input.input)?;
            let p = &lp.problem;
            if p.m() != 1 || p.n() != 1 {
                return Err(Error::Dimension("scan-primitive needs a 1x1 problem".into()));
            }
            let scan = primitive_record_scan(p.theta().get(0, 0), &p.alpha()[0], *x_max)?;
            if let Some(path) = &cli.csv {
                write_scan_csv(path, &scan).map_err(|e| Error::Usage(e.to_string()))?;
            }
            let params = json!({ "x_max": x_max });
            Ok(Report::new("scan-primitive", Some(lp.sha256), params, &scan, vec![]).into())
        }
        Cmd::Verify { seed, instances } => {
            let s = suite::run(*seed, *instances, opts);
            let checks = s
                .summary
                .iter()
                .map(|(name, t)| Check {
                    name: name.clone(),
                    status: if t.fail > 0 {
                        suite::Status::Fail
                    } else if t.pass == 0 {
                        suite::Status::Skip
                    } else {
                        suite::Status::Pass
                    },
                    detail: Some(format!("{} pass, {} fail, {} skip", t.pass, t.fail, t.skip)),
                })
                .collect();
            let params = json!({ "seed": seed, "instances": instances });
            Ok(Report::new("verify", None, params, &s, checks).into())
        }
        Cmd::Oracle {
            quantity,
            input,
            t,
            radius,
            x_max,
            side,
        } => {
            let lp = load(&input.input)?;
            let p = &lp.problem;
            let need = |v: Option<i64>, flag: &str| v.ok_or_else(|| Error::Usage(format!("{flag} is required")));
            let report = match quantity {
                OracleQuantity::Psi => {
                    let t = t.as_ref().ok_or_else(|| Error::Usage("--t is required".into()))?;
                    brute_psi(p, int_t(t)?, opts)?
                }
                OracleQuantity::Minima => {
                    let t = t.as_ref().ok_or_else(|| Error::Usage("--t is required".into()))?;
                    let kind = match side {
                        Side::Primal => GaugeKind::Primal,
                        Side::Dual => GaugeKind::Dual,
                    };
                    let g = GaugeSpec::new(p, t, kind, opts)?;
                    brute_minima(&g, need(*radius, "--radius")?, opts)?
                }
                OracleQuantity::BestInhom => brute_best_inhomogeneous(p, need(*x_max, "--x-max")?, false, opts)?,
                OracleQuantity::BestPrimitive => brute_best_inhomogeneous(p, need(*x_max, "--x-max")?, true, opts)?,
            };
            let params = json!({
                "t": t.as_ref().map(diophant::fmt_q),
                "radius": radius,
                "x_max": x_max,
            });
            Ok(Report::new("oracle", Some(lp.sha256), params, &report, vec![]).into())
        }
    }
}

fn solve(which: &Solve, opts: &SearchOptions) -> Result<Outcome, Error> {
    match which {
        Solve::Satz1 {
            input,
            c,
            x,
            mode,
            nonzero,
            u_bound,
        } => {
            let lp = load(&input.input)?;
            let h = khintchine_hypothesis_check(&lp.problem, c, x, *u_bound, opts)?;
            let o = Satz1Options {
                mode: match mode {
                    Mode::Minimal => SearchMode::Minimal,
                    Mode::FirstFeasible => SearchMode::FirstFeasible,
                },
                nonzero: *nonzero,
                strict: false,
            };
            let cert = solve_satz1(&lp.problem, c, x, o, opts)?;
            let mut checks = certificate_checks(&lp, std::slice::from_ref(&cert));
            // the hypothesis is sufficient, not necessary: only a proved hypothesis is checked
            if h.holds && h.complete {
                checks.push(pass_check("hypothesis_implies_solution", cert.meets_bound()));
            }
            let params = json!({ "c": diophant::fmt_q(c), "x": diophant::fmt_q(x), "nonzero": nonzero });
            let result = json!({ "hypothesis": h, "certificate": cert });
            Ok(Report::new("solve satz1", Some(lp.sha256), params, result, checks).into())
        }
        Solve::Kronecker { input, epsilon } => {
            let lp = load(&input.input)?;
            let cert = solve_kronecker(&lp.problem, epsilon, opts)?;
            let checks = certificate_checks(&lp, std::slice::from_ref(&cert));
            let params = json!({ "epsilon": diophant::fmt_q(epsilon) });
            Ok(Report::new("solve kronecker", Some(lp.sha256), params, &cert, checks).into())
        }
        Solve::Satz3 { input, epsilon, t_cap } => {
            let lp = load(&input.input)?;
            let cert = solve_satz3(&lp.problem, epsilon, t_cap, opts)?;
            let checks = certificate_checks(&lp, std::slice::from_ref(&cert));
            let params = json!({ "epsilon": diophant::fmt_q(epsilon), "t_cap": diophant::fmt_q(t_cap) });
            Ok(Report::new("solve satz3", Some(lp.sha256), params, &cert, checks).into())
        }
        Solve::Satz7 {
            input,
            epsilon,
            count,
            case,
            t_cap,
        } => {
            let lp = load(&input.input)?;
            let o = Satz7Options {
                count: *count,
                case: case.map(|c| match c {
                    Case::A => Satz7Case::A,
                    Case::B => Satz7Case::B,
                }),
                t_start: None,
                t_cap: t_cap.clone(),
            };
            let certs = solve_primitive_satz7(&lp.problem, epsilon, &o, opts)?;
            let mut checks = certificate_checks(&lp, &certs);
            checks.push(pass_check("primitive", certs.iter().all(|c| c.primitive)));
            let distinct = certs.iter().enumerate().all(|(i, a)| certs[..i].iter().all(|b| a.point != b.point));
            checks.push(pass_check("distinct", distinct));
            let params = json!({ "epsilon": diophant::fmt_q(epsilon), "count": count, "t_cap": diophant::fmt_q(t_cap) });
            Ok(Report::new("solve satz7", Some(lp.sha256), params, &certs, checks).into())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("diophant: {e}");
            return ExitCode::from(2);
        }
    }
    let mut opts = SearchOptions::default();
    if let Some(b) = cli.budget {
        opts = opts.with_budget(b);
    }
    match run(&cli, &opts) {
        Ok(out) => {
            let text = out.report.to_json();
            print!("{text}");
            if let Some(path) = &cli.json {
                if let Err(e) = write_file(path, &text) {
                    eprintln!("diophant: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            match out.code {
                Some(c) => ExitCode::from(c),
                None if out.report.pass => ExitCode::SUCCESS,
                None => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("diophant: {e}");
            ExitCode::from(diophant_cli::exit_code(&e) as u8)
        }
    }
}
