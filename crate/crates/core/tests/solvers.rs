use diophant::exact::q;
use diophant::solvers::{
    solve_kronecker, solve_primitive_satz7, solve_satz1, solve_satz3, Satz1Options, Satz7Case, Satz7Options, SearchMode,
};
use diophant::{qi, ApproximationProblem, SearchOptions};
use num_rational::BigRational;

fn golden(alpha: BigRational) -> ApproximationProblem {
    ApproximationProblem::from_rows(vec![vec![q(1618034, 1000000)]], vec![alpha]).unwrap()
}

fn sqrt23(alpha: BigRational) -> ApproximationProblem {
    ApproximationProblem::from_rows(
        vec![vec![q(1414213562373, 1000000000000), q(1732050807568, 1000000000000)]],
        vec![alpha],
    )
    .unwrap()
}

#[test]
fn satz1_golden_half() {
    let p = golden(q(1, 2));
    let o = Satz1Options {
        mode: SearchMode::Minimal,
        nonzero: true,
        strict: false,
    };
    let cert = solve_satz1(&p, &q(1, 100), &qi(100), o, &SearchOptions::default()).unwrap();
    assert_eq!(cert.residual_norm, q(97, 62500));
    assert_eq!(cert.point.x(), &[-72]);
    assert_eq!(cert.point.y(), &[-117]);
}

#[test]
fn kronecker_golden_third() {
    let p = golden(q(1, 3));
    let cert = solve_kronecker(&p, &q(1, 100), &SearchOptions::default()).unwrap();
    assert_eq!(cert.point.x(), &[7]);
    assert_eq!(cert.residual_norm, q(10643, 1500000));
    cert.revalidate(&p).unwrap();
}

#[test]
fn satz3_fixtures() {
    for (alpha, x) in [(q(1, 3), [-104, -9]), (q(1, 7), [63, 67])] {
        let p = sqrt23(alpha);
        let cert = solve_satz3(&p, &q(1, 2), &qi(1_000_000), &SearchOptions::default()).unwrap();
        assert_eq!(cert.point.x(), &x);
        assert_eq!(cert.parameters.t, Some(q(281250000000, 846179)));
        assert!(&cert.residual_norm * qi(cert.x_norm) < q(1, 2));
        cert.revalidate(&p).unwrap();
    }
}

#[test]
fn satz7_case_a() {
    let p = ApproximationProblem::from_rows(
        vec![vec![q(1618034, 1000000)], vec![q(1414213562373, 1000000000000)]],
        vec![q(1, 3), q(1, 7)],
    )
    .unwrap();
    let o = Satz7Options {
        count: 3,
        ..Default::default()
    };
    let certs = solve_primitive_satz7(&p, &q(1, 2), &o, &SearchOptions::default()).unwrap();
    assert_eq!(certs.len(), 3);
    let xs: Vec<i64> = certs.iter().map(|c| c.point.x()[0]).collect();
    assert_eq!(xs, [-205, 418, -20576]);
    assert_eq!(certs[1].residual_norm, q(3659, 750000));
    for c in &certs {
        assert!(c.primitive && c.meets_bound());
        assert_eq!(c.construction.as_ref().unwrap().case, Satz7Case::A);
        assert_eq!(c.construction.as_ref().unwrap().repairs, 0);
        c.revalidate(&p).unwrap();
    }
    for w in certs.windows(2) {
        assert!(w[0].point != w[1].point && w[0].x_norm <= w[1].x_norm);
    }
}

#[test]
fn satz7_case_b() {
    let expected = [
        (q(1, 3), [[-2, 3, 2], [5, -1, 5], [3, -19, -29]]),
        (q(1, 7), [[1, 1, 3], [-1, -2, -5], [5, -4, 0]]),
    ];
    for (alpha, zs) in expected {
        let p = sqrt23(alpha);
        let o = Satz7Options {
            count: 3,
            ..Default::default()
        };
        let certs = solve_primitive_satz7(&p, &q(1, 2), &o, &SearchOptions::default()).unwrap();
        assert_eq!(certs.len(), 3);
        for c in &certs {
            assert!(c.primitive && c.meets_bound() && c.x_norm > 0);
            assert_eq!(c.construction.as_ref().unwrap().repairs, 0);
            c.revalidate(&p).unwrap();
        }
        let got: Vec<&[i64]> = certs.iter().map(|c| c.point.z()).collect();
        assert_eq!(got, zs);
    }
}
