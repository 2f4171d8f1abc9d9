//! Unimodular bases and fundamental domains inside `d!·Π(t)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{GaugeSpec, MinimaReport};
use crate::error::{Error, Result};
use crate::exact::{factorial_q, nearest_int, LatticePoint};
use crate::linalg::{det, lower_echelon_basis, solve};

/// Basis `z'(1) = z(1), z'(2), …, z'(d)` of `ℤᵈ` inside the half-open
/// parallelepiped spanned by the independent points `z(1), …, z(d)`.
///
/// In coordinates relative to the `z(ν)`, `ℤᵈ` is a lattice containing
/// `ℤᵈ` itself. A triangular basis `h_k` of it (zero beyond position `k`,
/// diagonal in `(0, 1]`, off-diagonal in `[0, h_ii)`) gives
/// `z'(k) = Σ_{i≤k} h_k[i]·z(i)`, so each `z'(k)` has gauge at most
/// `Σ_{i≤k} λ_i`. If the `z(ν)` are already a basis they are returned as is.
pub fn basis_extend(points: &[LatticePoint], g: &GaugeSpec) -> Result<Vec<LatticePoint>> {
    let d = g.problem().d();
    let m = g.problem().m();
    if points.len() != d || points.iter().any(|p| p.z().len() != d || p.m() != m) {
        return Err(Error::Dimension(format!("basis_extend needs {d} points of dimension {d}")));
    }
    let cols: Vec<Vec<i64>> = points.iter().map(|p| p.z().to_vec()).collect();
    let big_d = det(&cols).abs();
    if big_d.is_zero() {
        return Err(Error::Precondition("points are linearly dependent".into()));
    }
    if !points[0].is_primitive() {
        return Err(Error::Precondition("first point is not primitive".into()));
    }
    let dq = BigRational::from_integer(big_d.clone());

    // generators of D·Z⁻¹ℤᵈ: D·Z⁻¹e_i and D·e_i
    let mut gens = Vec::with_capacity(2 * d);
    for i in 0..d {
        let mut e = vec![BigRational::zero(); d];
        e[i] = dq.clone();
        let c = solve(&cols, &e)?;
        gens.push(c.into_iter().map(|v| v.to_integer()).collect::<Vec<BigInt>>());
        let mut u = vec![BigInt::zero(); d];
        u[i] = big_d.clone();
        gens.push(u);
    }
    let h = lower_echelon_basis(gens, d)?;

    let basis: Vec<LatticePoint> = h
        .iter()
        .map(|hk| {
            let z = (0..d)
                .map(|r| {
                    let s: BigInt = (0..d).map(|i| &hk[i] * BigInt::from(cols[i][r])).sum();
                    debug_assert!((&s % &big_d).is_zero());
                    (s / &big_d).to_i64().ok_or_else(|| Error::Defect("basis vector overflow".into()))
                })
                .collect::<Result<Vec<i64>>>()?;
            Ok(LatticePoint::from_z(z, m))
        })
        .collect::<Result<_>>()?;

    let check: Vec<Vec<i64>> = basis.iter().map(|p| p.z().to_vec()).collect();
    if det(&check).abs() != BigInt::from(1) {
        return Err(Error::Defect("extended basis is not unimodular".into()));
    }
    if basis[0] != points[0] {
        return Err(Error::Defect("extended basis does not keep the first point".into()));
    }
    Ok(basis)
}

/// A lattice point `z` with `gauge(z − shift) ≤ d!/2`.
///
/// The shift is written over the minima points `z(ν)` of the primal side
/// and each coefficient is rounded to the nearest integer, so the error
/// gauge is at most `Σ λ_ν / 2 ≤ d·(d−1)!/2`.
pub fn fundamental_cover_find(g: &GaugeSpec, report: &MinimaReport, shift: &[BigRational]) -> Result<LatticePoint> {
    let d = g.problem().d();
    let m = g.problem().m();
    if shift.len() != d {
        return Err(Error::Dimension(format!("shift must have length {d}, got {}", shift.len())));
    }
    if report.points_primal.len() != d {
        return Err(Error::Dimension("report does not hold d primal points".into()));
    }
    let cols: Vec<Vec<i64>> = report.points_primal.iter().map(|p| p.z().to_vec()).collect();
    let coeffs = solve(&cols, shift)?;
    let rounded: Vec<BigInt> = coeffs.iter().map(nearest_int).collect();
    let z = (0..d)
        .map(|r| {
            let s: BigInt = (0..d).map(|i| &rounded[i] * BigInt::from(cols[i][r])).sum();
            s.to_i64().ok_or_else(|| Error::Usage("shift too large for 64-bit coordinates".into()))
        })
        .collect::<Result<Vec<i64>>>()?;
    let z = LatticePoint::from_z(z, m);
    let diff: Vec<BigRational> = z
        .z()
        .iter()
        .zip(shift)
        .map(|(&a, s)| BigRational::from_integer(BigInt::from(a)) - s)
        .collect();
    let half_sum = report.lambdas.iter().sum::<BigRational>() / BigRational::from_integer(BigInt::from(2));
    if g.value_rational(&diff)? > half_sum.min(factorial_q(d)) {
        return Err(Error::Defect("rounded point is outside the shifted d!·Π(t)".into()));
    }
    Ok(z)
}
