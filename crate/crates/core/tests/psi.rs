use diophant::oracle::brute_psi;
use diophant::psi::{jarnik_search, psi, psi_records};
use diophant::{q, qi, ApproximationProblem, Exec, SearchOptions};
use num_rational::BigRational;
use proptest::prelude::*;

fn one_by_one(theta: BigRational) -> ApproximationProblem {
    ApproximationProblem::from_rows(vec![vec![theta]], vec![qi(0)]).unwrap()
}

#[test]
fn golden_records_at_fibonacci_numbers() {
    let table = psi_records(&one_by_one(q(1618034, 1000000)), 60, &SearchOptions::default()).unwrap();
    assert_eq!(table.thresholds(), [1, 2, 3, 5, 8, 13, 21, 34, 55]);
    let values: Vec<BigRational> = table.records.iter().map(|r| r.psi.clone()).collect();
    assert_eq!(
        values,
        [
            q(190983, 500000),
            q(59017, 250000),
            q(72949, 500000),
            q(9017, 100000),
            q(3483, 62500),
            q(17221, 500000),
            q(10643, 500000),
            q(3289, 250000),
            q(813, 100000),
        ]
    );
    assert!(table.records.iter().all(|r| r.witness == [-r.t]));
    assert_eq!(table.value_at(54), Some(q(3289, 250000)));
}

#[test]
fn convergent_ratio_at_two() {
    let v = psi(&one_by_one(q(103993, 64281)), &qi(2), &SearchOptions::default()).unwrap();
    assert_eq!(v.value, q(15143, 64281));
    assert_eq!(v.witness, [-2]);
}

#[test]
fn half_degenerates_at_two() {
    let p = one_by_one(q(1, 2));
    let opts = SearchOptions::default();
    assert_eq!(psi(&p, &qi(1), &opts).unwrap().value, q(1, 2));
    let v = psi(&p, &qi(2), &opts).unwrap();
    assert!(v.degenerate && v.value == qi(0));
    let table = psi_records(&p, 10, &opts).unwrap();
    assert!(table.degenerate);
    assert_eq!(table.degenerate_at.as_ref().map(|r| r.t), Some(2));
    assert_eq!(table.value_at(7), Some(qi(0)));
}

#[test]
fn rational_t_uses_its_floor() {
    let p = one_by_one(q(1618034, 1000000));
    let opts = SearchOptions::default();
    assert_eq!(psi(&p, &q(59, 10), &opts).unwrap(), psi(&p, &qi(5), &opts).unwrap());
}

#[test]
fn jarnik_sqrt2_sqrt3() {
    let p = ApproximationProblem::from_rows(
        vec![vec![q(1414213562373, 1000000000000), q(1732050807568, 1000000000000)]],
        vec![qi(0)],
    )
    .unwrap();
    let hit = jarnik_search(&p, &q(1, 10), &qi(10), &qi(1_000_000)).unwrap();
    assert_eq!(hit.t, q(78125000000, 846179));
    assert_eq!(hit.s, 2151016);
    assert_eq!(hit.psi, q(846179, 7812500000));
    assert!(hit.product >= qi(10));
}

#[test]
fn strategies_agree() {
    let p = ApproximationProblem::from_rows(
        vec![vec![q(2611, 7268), q(451, 3207)], vec![q(3593, 5211), q(1466, 1745)]],
        vec![qi(0), qi(0)],
    )
    .unwrap();
    let seq = SearchOptions::default().with_exec(Exec::Sequential);
    let par = SearchOptions::default().with_exec(Exec::Parallel);
    assert_eq!(psi_records(&p, 80, &seq).unwrap(), psi_records(&p, 80, &par).unwrap());
}

#[test]
fn budget_is_enforced() {
    let p = one_by_one(q(1, 3));
    let err = psi(&p, &qi(1000), &SearchOptions::default().with_budget(10)).unwrap_err();
    assert!(matches!(err, diophant::Error::Budget { .. }));
}

fn small_problem() -> impl Strategy<Value = (ApproximationProblem, i64)> {
    (1usize..=2, 1usize..=3, 1i64..=30).prop_flat_map(|(m, n, t)| {
        proptest::collection::vec((0i64..1000, 1i64..1000), m * n).prop_map(move |entries| {
            let rows = entries.chunks(m).map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect();
            (ApproximationProblem::from_rows(rows, vec![qi(0); n]).unwrap(), t)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_matches_brute_force((p, t) in small_problem()) {
        let opts = SearchOptions::default();
        let a = psi(&p, &qi(t), &opts).unwrap();
        let b = brute_psi(&p, t, &opts).unwrap();
        prop_assert_eq!(&a.value, &b.values[0]);
        prop_assert_eq!(&a.witness, &b.witnesses[0]);
    }
}
