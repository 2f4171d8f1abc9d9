//! The irrationality-measure function
//! `ψ_{Θᵀ}(t) = min { ‖Θᵀy‖ : y ∈ ℤⁿ, 0 < |y| ≤ t }`,
//! its step-function record table, and the search for parameters `t` with
//! large `t·ψ(t/(2Kε))`.
//!
//! `ψ` only changes at integer `t`, so thresholds are stored as integers.
//! At any fixed rational precision `ψ` eventually reaches `0`; that state is
//! reported as degeneracy rather than treated as a failure of the search.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{box_count, int_to_i64, ApproximationProblem, BoxIter, SearchOptions};
use crate::exec::map_items;
use crate::kernel::{with_forms, Frac, FormSpec, Forms, Int, Kernel};
use crate::qser;
use crate::solvers::transference_constant;

/// `ψ(t)` with its lexicographically smallest minimiser.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiValue {
    #[serde(with = "qser::scalar")]
    pub value: BigRational,
    pub witness: Vec<i64>,
    /// `value == 0`: `Θᵀ·witness` is an integer vector.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiRecord {
    pub t: i64,
    #[serde(with = "qser::scalar")]
    pub psi: BigRational,
    pub witness: Vec<i64>,
}

/// Step-function form of `ψ` on `[1, t_max]`: `ψ(t) = psi_k` for `t_k ≤ t < t_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiRecordTable {
    pub records: Vec<PsiRecord>,
    pub t_max: i64,
    pub degenerate: bool,
    /// First height at which `ψ` vanishes; the table stops just before it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate_at: Option<PsiRecord>,
}

impl PsiRecordTable {
    /// `ψ(t)` read off the table; `None` outside `[1, t_max]`.
    pub fn value_at(&self, t: i64) -> Option<BigRational> {
        if t < 1 || t > self.t_max {
            return None;
        }
        if let Some(z) = &self.degenerate_at {
            if t >= z.t {
                return Some(BigRational::zero());
            }
        }
        self.records
            .iter()
            .take_while(|r| r.t <= t)
            .last()
            .map(|r| r.psi.clone())
    }

    pub fn thresholds(&self) -> Vec<i64> {
        self.records.iter().map(|r| r.t).collect()
    }
}

fn check_t(t: &BigRational) -> Result<i64> {
    if t < &BigRational::one() {
        return Err(Error::Precondition(format!("psi needs t >= 1, got {}", crate::fmt_q(t))));
    }
    int_to_i64(&t.floor().to_integer())
}

/// Forms `dist(Θᵀy)_j` over `y`, one per column of `Θ`.
fn psi_specs(p: &ApproximationProblem) -> Vec<FormSpec> {
    p.scaled_cols()
        .iter()
        .map(|col| {
            FormSpec::dist(
                col.coeffs.clone(),
                BigInt::zero(),
                col.denom.clone(),
                &BigRational::new(BigInt::one(), col.denom.clone()),
            )
        })
        .collect()
}

/// The half of the box `0 < |y| ≤ r` whose first nonzero coordinate is negative,
/// split into slices by the position and value of that coordinate.
fn half_box_slices(n: usize, r: i64) -> Vec<(usize, i64)> {
    (0..n).flat_map(|k| (-r..=-1).map(move |v| (k, v))).collect()
}

fn slice_iter(n: usize, r: i64, (k, v): (usize, i64)) -> BoxIter {
    let ranges = (0..n)
        .map(|i| match i.cmp(&k) {
            Ordering::Less => (0, 0),
            Ordering::Equal => (v, v),
            Ordering::Greater => (-r, r),
        })
        .collect();
    BoxIter::new(ranges)
}

type Best<I> = Option<(Frac<I>, Vec<i64>)>;

/// Smaller value wins; ties go to the lexicographically smaller vector.
fn better<I: Int>(a: &(Frac<I>, Vec<i64>), b: &(Frac<I>, Vec<i64>)) -> bool {
    match a.0.cmp_value(&b.0) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.1 < b.1,
    }
}

fn merge<I: Int>(acc: Best<I>, next: Best<I>) -> Best<I> {
    match (acc, next) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if better(&b, &a) { b } else { a }),
    }
}

fn psi_scan<I: Int>(forms: &Forms<I>, n: usize, r: i64, opts: &SearchOptions) -> (Frac<I>, Vec<i64>) {
    let slices = half_box_slices(n, r);
    let parts = map_items(opts.exec, &slices, |&slice| {
        let mut best: Best<I> = None;
        for y in slice_iter(n, r, slice) {
            let cand = (forms.max(&y), y);
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        }
        best
    });
    parts.into_iter().fold(None, merge).expect("r >= 1 gives a nonempty box")
}

/// `ψ_{Θᵀ}(t)` by enumeration of `0 < |y| ≤ ⌊t⌋`.
///
/// The minimiser set is symmetric under `y ↦ −y`, so only vectors whose
/// first nonzero coordinate is negative are visited; the lexicographically
/// smallest minimiser always lies in that half.
pub fn psi(p: &ApproximationProblem, t: &BigRational, opts: &SearchOptions) -> Result<PsiValue> {
    let r = check_t(t)?;
    let n = p.n();
    let bounds = vec![r; n];
    opts.charge(box_count(&bounds) / 2)?;
    let kernel = Kernel::build(psi_specs(p), &bounds, &[]);
    let (value, witness) = with_forms!(&kernel, f => {
        let (v, w) = psi_scan(f, n, r, opts);
        (v.to_q(), w)
    });
    Ok(PsiValue {
        degenerate: value.is_zero(),
        value,
        witness,
    })
}

/// Record table of `ψ` on `[1, t_max]`.
pub fn psi_records(p: &ApproximationProblem, t_max: i64, opts: &SearchOptions) -> Result<PsiRecordTable> {
    if t_max < 1 {
        return Err(Error::Precondition(format!("t_max must be >= 1, got {t_max}")));
    }
    let n = p.n();
    let bounds = vec![t_max; n];
    opts.charge(box_count(&bounds) / 2)?;

    let mut records = Vec::new();
    let mut degenerate_at = None;
    let mut push = |h: i64, value: BigRational, witness: Vec<i64>| {
        let rec = PsiRecord { t: h, psi: value, witness };
        if rec.psi.is_zero() {
            degenerate_at = Some(rec);
            ControlFlow::Break(())
        } else {
            records.push(rec);
            ControlFlow::Continue(())
        }
    };

    if n == 1 {
        let (a, q) = column_residues(p);
        match crate::exact::int_fits_small(&q) {
            true => stream_records_1d::<i128>(&a, &q, t_max, |h, v| push(h, v.to_q(), vec![-h])),
            false => stream_records_1d::<BigInt>(&a, &q, t_max, |h, v| push(h, v.to_q(), vec![-h])),
        };
    } else {
        let kernel = Kernel::build(psi_specs(p), &bounds, &[]);
        let per_height = with_forms!(&kernel, f => {
            best_per_height(f, n, t_max, opts)
                .into_iter()
                .map(|b| b.map(|(v, w)| (v.to_q(), w)))
                .collect::<Vec<_>>()
        });
        let mut current: Option<BigRational> = None;
        for (h, best) in per_height.into_iter().enumerate().skip(1) {
            let (value, witness) = best.expect("every height is populated");
            if current.as_ref().is_none_or(|c| &value < c) {
                current = Some(value.clone());
                if push(h as i64, value, witness).is_break() {
                    break;
                }
            }
        }
    }

    Ok(PsiRecordTable {
        records,
        t_max,
        degenerate: degenerate_at.is_some(),
        degenerate_at,
    })
}

fn best_per_height<I: Int>(forms: &Forms<I>, n: usize, t_max: i64, opts: &SearchOptions) -> Vec<Best<I>> {
    let slices = half_box_slices(n, t_max);
    let parts = map_items(opts.exec, &slices, |&slice| {
        let mut best: Vec<Best<I>> = vec![None; t_max as usize + 1];
        for y in slice_iter(n, t_max, slice) {
            let h = crate::exact::sup_norm_int(&y) as usize;
            let cand = (forms.max(&y), y);
            if best[h].as_ref().is_none_or(|b| better(&cand, b)) {
                best[h] = Some(cand);
            }
        }
        best
    });
    parts
        .into_iter()
        .reduce(|acc, next| acc.into_iter().zip(next).map(|(a, b)| merge(a, b)).collect())
        .unwrap_or_default()
}

/// Column numerators reduced modulo their common denominators (`n = 1`).
fn column_residues(p: &ApproximationProblem) -> (Vec<BigInt>, Vec<BigInt>) {
    p.scaled_cols()
        .iter()
        .map(|c| (c.coeffs[0].mod_floor(&c.denom), c.denom.clone()))
        .unzip()
}

/// Walks `y = −1, −2, …, −t_max` keeping `A_j·y mod Q_j` incrementally and
/// reports every strict decrease of `max_j dist(A_j y, Q_j)/Q_j`.
fn stream_records_1d<I: Int>(
    a: &[BigInt],
    q: &[BigInt],
    t_max: i64,
    mut on_record: impl FnMut(i64, Frac<I>) -> ControlFlow<()>,
) {
    let a: Vec<I> = a.iter().map(I::from_big).collect();
    let q: Vec<I> = q.iter().map(I::from_big).collect();
    let mut res: Vec<I> = vec![I::zero(); a.len()];
    let mut current: Option<Frac<I>> = None;
    for h in 1..=t_max {
        let mut value = Frac::zero();
        for j in 0..a.len() {
            let mut r = res[j].clone() - a[j].clone();
            if r.is_negative() {
                r = r + q[j].clone();
            }
            let other = q[j].clone() - r.clone();
            let dist = Frac {
                num: r.clone().min(other),
                den: q[j].clone(),
            };
            res[j] = r;
            if dist.cmp_value(&value) == Ordering::Greater {
                value = dist;
            }
        }
        if current.as_ref().is_none_or(|c| value.cmp_value(c) == Ordering::Less) {
            current = Some(value.clone());
            if on_record(h, value).is_break() {
                return;
            }
        }
    }
}

/// Outcome of [`jarnik_search`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JarnikHit {
    /// Smallest `t` with `t·ψ(t/(2Kε)) ≥ M`.
    #[serde(with = "qser::scalar")]
    pub t: BigRational,
    /// Record threshold `s` of `ψ` in effect at `t/(2Kε)`.
    pub s: i64,
    #[serde(with = "qser::scalar")]
    pub psi: BigRational,
    pub witness: Vec<i64>,
    #[serde(with = "qser::scalar")]
    pub product: BigRational,
    #[serde(with = "qser::scalar")]
    pub k: BigRational,
}

/// Smallest `t ≤ t_cap` with `t·ψ_{Θᵀ}(t/(2Kε)) ≥ M`, `K = 2^{n−1}/(d!)²`.
///
/// Between consecutive record thresholds `ψ` is constant and the product is
/// linear in `t`, so only one candidate per record is examined: the larger of
/// the interval start and `M/ψ_k`.
pub fn jarnik_search(
    p: &ApproximationProblem,
    epsilon: &BigRational,
    m_target: &BigRational,
    t_cap: &BigRational,
) -> Result<JarnikHit> {
    if p.n() != 1 || p.m() < 2 {
        return Err(Error::Precondition(format!(
            "jarnik_search needs n = 1, m >= 2 (got n = {}, m = {})",
            p.n(),
            p.m()
        )));
    }
    if !epsilon.is_positive() || m_target.is_negative() {
        return Err(Error::Precondition("need epsilon > 0 and M >= 0".into()));
    }
    let k = transference_constant(p.n(), p.m());
    let step = BigRational::from_integer(BigInt::from(2)) * &k * epsilon; // t = step·s
    let s_cap = int_to_i64(&(t_cap / &step).floor().to_integer())?;
    if s_cap < 1 {
        return Err(Error::NotFound {
            cap: crate::fmt_q(t_cap),
        });
    }

    let (a, q) = column_residues(p);
    let mut pending: Option<(i64, BigRational)> = None;
    let mut hit: Option<JarnikHit> = None;
    let mut degenerate: Option<i64> = None;

    let candidate = |s: i64, psi: &BigRational, next: Option<i64>| -> Option<BigRational> {
        if psi.is_zero() {
            return m_target.is_zero().then(|| &step * BigRational::from_integer(s.into()));
        }
        let start = &step * BigRational::from_integer(BigInt::from(s));
        let t = std::cmp::max(start, m_target / psi);
        let inside = match next {
            Some(next) => t < &step * BigRational::from_integer(BigInt::from(next)),
            None => &t <= t_cap,
        };
        inside.then_some(t)
    };

    let mut visit = |s: i64, value: BigRational| {
        if let Some((prev_s, prev_psi)) = pending.take() {
            if let Some(t) = candidate(prev_s, &prev_psi, Some(s)) {
                hit = Some(make_hit(t, prev_s, prev_psi, &k, &step));
                return ControlFlow::Break(());
            }
        }
        if value.is_zero() {
            degenerate = Some(s);
            return ControlFlow::Break(());
        }
        pending = Some((s, value));
        ControlFlow::Continue(())
    };

    if crate::exact::int_fits_small(&q) {
        stream_records_1d::<i128>(&a, &q, s_cap, |s, v| visit(s, v.to_q()));
    } else {
        stream_records_1d::<BigInt>(&a, &q, s_cap, |s, v| visit(s, v.to_q()));
    }

    if let Some(h) = hit {
        return Ok(h);
    }
    if let Some((s, psi)) = pending {
        if let Some(t) = candidate(s, &psi, None) {
            return Ok(make_hit(t, s, psi, &k, &step));
        }
    }
    if let Some(s) = degenerate {
        return Err(Error::Degenerate {
            height: s,
            witness: vec![-s],
        });
    }
    Err(Error::NotFound {
        cap: crate::fmt_q(t_cap),
    })
}

fn make_hit(t: BigRational, s: i64, psi: BigRational, k: &BigRational, _step: &BigRational) -> JarnikHit {
    JarnikHit {
        product: &t * &psi,
        t,
        s,
        psi,
        witness: vec![-s],
        k: k.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    fn scalar(n: i64, d: i64) -> ApproximationProblem {
        ApproximationProblem::from_rows(vec![vec![q(n, d)]], vec![qi(0)]).unwrap()
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn third_is_degenerate_at_three() {
        let v = psi(&scalar(1, 3), &qi(3), &opts()).unwrap();
        assert_eq!(v.value, qi(0));
        assert_eq!(v.witness, vec![-3]);
        assert!(v.degenerate);
    }

    #[test]
    fn single_candidate_at_t_one() {
        let v = psi(&scalar(7, 10), &qi(1), &opts()).unwrap();
        assert_eq!(v.value, q(3, 10));
        assert_eq!(v.witness, vec![-1]);
        assert!(!v.degenerate);
    }

    #[test]
    fn convergent_at_t_two() {
        // y ∈ {±1, ±2}: ‖103993/64281‖ = 24288/64281, ‖2·103993/64281‖ = 15143/64281
        let v = psi(&scalar(103993, 64281), &qi(2), &opts()).unwrap();
        assert_eq!(v.value, q(15143, 64281));
        assert_eq!(v.witness, vec![-2]);
    }

    #[test]
    fn rational_t_uses_floor() {
        let p = scalar(7, 10);
        assert_eq!(psi(&p, &q(5, 2), &opts()).unwrap(), psi(&p, &qi(2), &opts()).unwrap());
        assert!(matches!(psi(&p, &q(1, 2), &opts()), Err(Error::Precondition(_))));
    }

    #[test]
    fn lexicographic_tie_break() {
        // Θ = 1/2: y = ±2, ±4 all vanish; −4 is lexicographically smallest
        let v = psi(&scalar(1, 2), &qi(4), &opts()).unwrap();
        assert_eq!(v.witness, vec![-4]);
    }

    #[test]
    fn half_is_degenerate_at_two() {
        let table = psi_records(&scalar(1, 2), 5, &opts()).unwrap();
        assert_eq!(table.records.len(), 1);
        assert_eq!(table.records[0].t, 1);
        assert_eq!(table.records[0].psi, q(1, 2));
        assert!(table.degenerate);
        assert_eq!(table.degenerate_at.as_ref().unwrap().t, 2);
        assert_eq!(table.value_at(3), Some(qi(0)));
    }

    #[test]
    fn t_max_one_gives_one_record() {
        for p in [scalar(7, 10), scalar(1, 3)] {
            let table = psi_records(&p, 1, &opts()).unwrap();
            assert_eq!(table.records.len(), 1);
            assert_eq!(table.records[0].t, 1);
        }
        let p2 = ApproximationProblem::from_rows(vec![vec![q(1, 3)], vec![q(2, 7)]], vec![qi(0), qi(0)]).unwrap();
        assert_eq!(psi_records(&p2, 1, &opts()).unwrap().records.len(), 1);
    }

    #[test]
    fn records_agree_with_pointwise_psi() {
        let p = ApproximationProblem::from_rows(
            vec![vec![q(3, 7), q(11, 13)], vec![q(5, 17), q(2, 9)]],
            vec![qi(0), qi(0)],
        )
        .unwrap();
        let table = psi_records(&p, 12, &opts()).unwrap();
        for t in 1..=12 {
            let direct = psi(&p, &qi(t), &opts()).unwrap();
            assert_eq!(table.value_at(t), Some(direct.value), "t = {t}");
        }
    }

    #[test]
    fn json_shape() {
        let table = psi_records(&scalar(7, 10), 3, &opts()).unwrap();
        let json = serde_json::to_value(&table).unwrap();
        assert_eq!(json["t_max"], 3);
        assert_eq!(json["degenerate"], false);
        assert_eq!(json["records"][0]["psi"], "3/10");
        assert_eq!(json["records"][0]["witness"], serde_json::json!([-1]));
        assert!(json.get("degenerate_at").is_none());
    }

    #[test]
    fn jarnik_trivial_target() {
        let p = ApproximationProblem::from_rows(vec![vec![q(14142, 10000), q(17320, 10000)]], vec![qi(0)]).unwrap();
        let hit = jarnik_search(&p, &q(1, 10), &qi(0), &qi(10)).unwrap();
        // K = 1/36, 2Kε = 1/180: the first grid point s = 1
        assert_eq!(hit.t, q(1, 180));
        assert_eq!(hit.s, 1);
    }

    #[test]
    fn jarnik_degenerate_and_preconditions() {
        let p = ApproximationProblem::from_rows(vec![vec![q(1, 2), q(1, 3)]], vec![qi(0)]).unwrap();
        assert!(matches!(
            jarnik_search(&p, &q(1, 10), &qi(10), &qi(100)),
            Err(Error::Degenerate { height: 6, .. })
        ));
        assert!(matches!(
            jarnik_search(&scalar(1, 3), &q(1, 10), &qi(1), &qi(100)),
            Err(Error::Precondition(_))
        ));
    }
}
