//! Exact rational scalars, vectors and matrices, the two norms used
//! throughout the crate, the approximation problem `Θ`/`Θ̄`, and bounded
//! integer-box enumeration.
//!
//! `Θ` is stored with `n` rows and `m` columns so that `Θx ∈ ℚⁿ` for
//! `x ∈ ℤᵐ` and `Θᵀy ∈ ℚᵐ` for `y ∈ ℤⁿ`.

mod enumerate;
pub mod roots;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{box_count, box_enumerate, BoxIter, ShellIter};

pub type RationalScalar = BigRational;
pub type RationalVector = Vec<BigRational>;

/// Default cap on the number of lattice points a single enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Enumeration limits and execution strategy shared by every search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub exec: crate::exec::Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            exec: crate::exec::Exec::default(),
        }
    }
}

impl SearchOptions {
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_exec(mut self, exec: crate::exec::Exec) -> Self {
        self.exec = exec;
        self
    }

    pub(crate) fn charge(&self, needed: u128) -> Result<()> {
        if needed > self.budget as u128 {
            Err(Error::Budget {
                needed,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"1.414213562373"`.
pub fn parse_q(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Usage(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Usage(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => BigInt::from_str(digits).map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let mut numer = int_part * &scale + frac_part;
        if negative {
            numer = -numer;
        }
        return Ok(BigRational::new(numer, scale));
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Canonical `"p/q"` rendering; integers keep their `/1`.
pub fn fmt_q(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// `min_{a∈ℤ} |w − a|`, always in `[0, 1/2]`.
pub fn dist_to_int(w: &BigRational) -> BigRational {
    let frac = w - w.floor();
    let other = BigRational::one() - &frac;
    if frac <= other {
        frac
    } else {
        other
    }
}

/// Nearest integer, halves rounded down.
pub fn nearest_int(w: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (w - half).ceil().to_integer()
}

/// Sup-norm `max_j |w_j|`.
pub fn sup_norm(w: &[BigRational]) -> Result<BigRational> {
    w.iter()
        .map(|c| c.abs())
        .max()
        .ok_or_else(|| Error::Usage("sup-norm of an empty vector".into()))
}

/// `‖w‖ = max_j min_{a∈ℤ} |w_j − a|`.
pub fn nearest_int_distance(w: &[BigRational]) -> Result<BigRational> {
    w.iter()
        .map(dist_to_int)
        .max()
        .ok_or_else(|| Error::Usage("distance of an empty vector".into()))
}

pub fn sup_norm_int(v: &[i64]) -> i64 {
    v.iter().map(|c| c.abs()).max().unwrap_or(0)
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &c| g.gcd(&c))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::Dimension("matrix must be non-empty".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_int(&self, v: &[i64]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(_, &c)| c != 0)
                    .fold(BigRational::zero(), |acc, (a, &c)| {
                        acc + a * BigRational::from_integer(BigInt::from(c))
                    })
            })
            .collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(fmt_q).collect())
            .collect();
        f.debug_struct("RationalMatrix").field("rows", &rows).finish()
    }
}

/// One row of an integer-scaled linear form: `value = (coeffs·v + offset) / denom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRow {
    pub coeffs: Vec<BigInt>,
    pub offset: BigInt,
    pub denom: BigInt,
}

impl ScaledRow {
    fn from_rationals(coeffs: &[BigRational], offset: &BigRational) -> Self {
        let denom = common_denominator(coeffs.iter().chain(std::iter::once(offset)));
        let scale = |v: &BigRational| (v * BigRational::from_integer(denom.clone())).to_integer();
        Self {
            coeffs: coeffs.iter().map(scale).collect(),
            offset: scale(offset),
            denom,
        }
    }
}

/// `Θ` (n rows × m columns) together with the inhomogeneous target `α ∈ ℚⁿ`.
#[derive(Clone, PartialEq)]
pub struct ApproximationProblem {
    theta: RationalMatrix,
    alpha: Vec<BigRational>,
    /// Rows of `Θx − α`, one per `i`, each over its own common denominator.
    rows: Vec<ScaledRow>,
    /// Rows of `Θx` (no target).
    rows_homogeneous: Vec<ScaledRow>,
    /// Rows of `Θᵀy`, one per column `j` of `Θ`.
    cols: Vec<ScaledRow>,
}

impl ApproximationProblem {
    pub fn new(theta: RationalMatrix, alpha: Vec<BigRational>) -> Result<Self> {
        if alpha.len() != theta.nrows() {
            return Err(Error::Dimension(format!(
                "alpha has length {}, theta has {} rows",
                alpha.len(),
                theta.nrows()
            )));
        }
        let zero = BigRational::zero();
        let rows = (0..theta.nrows())
            .map(|i| ScaledRow::from_rationals(theta.row(i), &-alpha[i].clone()))
            .collect();
        let rows_homogeneous = (0..theta.nrows())
            .map(|i| ScaledRow::from_rationals(theta.row(i), &zero))
            .collect();
        let cols = (0..theta.ncols())
            .map(|j| ScaledRow::from_rationals(&theta.column(j), &zero))
            .collect();
        Ok(Self {
            theta,
            alpha,
            rows,
            rows_homogeneous,
            cols,
        })
    }

    /// Homogeneous problem (`α = 0`).
    pub fn homogeneous(theta: RationalMatrix) -> Result<Self> {
        let n = theta.nrows();
        Self::new(theta, vec![BigRational::zero(); n])
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, alpha: Vec<BigRational>) -> Result<Self> {
        Self::new(RationalMatrix::from_rows(rows)?, alpha)
    }

    pub fn with_alpha(&self, alpha: Vec<BigRational>) -> Result<Self> {
        Self::new(self.theta.clone(), alpha)
    }

    pub fn theta(&self) -> &RationalMatrix {
        &self.theta
    }

    pub fn alpha(&self) -> &[BigRational] {
        &self.alpha
    }

    pub fn m(&self) -> usize {
        self.theta.ncols()
    }

    pub fn n(&self) -> usize {
        self.theta.nrows()
    }

    pub fn d(&self) -> usize {
        self.m() + self.n()
    }

    /// `Θ̄ = [Θ | −Iₙ]`, an `n × d` matrix.
    pub fn theta_bar(&self) -> RationalMatrix {
        let (n, m) = (self.n(), self.m());
        let rows = (0..n)
            .map(|i| {
                let mut row = self.theta.row(i).to_vec();
                row.extend((0..n).map(|k| if k == i { -BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        let bar = RationalMatrix::from_rows(rows).expect("non-empty");
        debug_assert_eq!(bar.ncols(), m + n);
        bar
    }

    pub(crate) fn scaled_rows(&self) -> &[ScaledRow] {
        &self.rows
    }

    pub(crate) fn scaled_rows_homogeneous(&self) -> &[ScaledRow] {
        &self.rows_homogeneous
    }

    pub(crate) fn scaled_cols(&self) -> &[ScaledRow] {
        &self.cols
    }

    /// `Θᵀy`.
    pub fn theta_t_apply(&self, y: &[i64]) -> Result<Vec<BigRational>> {
        self.theta.transpose().mul_int(y)
    }

    /// `‖Θx − α‖`.
    pub fn inhomogeneous_distance(&self, x: &[i64]) -> Result<BigRational> {
        let v = self.theta.mul_int(x)?;
        let shifted: Vec<_> = v.iter().zip(&self.alpha).map(|(a, b)| a - b).collect();
        nearest_int_distance(&shifted)
    }

    /// Completes `x` to a lattice point by choosing each `yᵢ` nearest to `(Θx − α)ᵢ`.
    pub fn nearest_point(&self, x: &[i64]) -> Result<LatticePoint> {
        let v = self.theta.mul_int(x)?;
        let y = v
            .iter()
            .zip(&self.alpha)
            .map(|(a, b)| int_to_i64(&nearest_int(&(a - b))))
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticePoint::new(x.to_vec(), y))
    }
}

impl fmt::Debug for ApproximationProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ApproximationProblem")
            .field("theta", &self.theta)
            .field("alpha", &self.alpha.iter().map(fmt_q).collect::<Vec<_>>())
            .finish()
    }
}

/// All moduli below `2^60`, so residues and their pairwise products fit in `i128`.
pub(crate) fn int_fits_small(q: &[BigInt]) -> bool {
    let limit = BigInt::one() << 60;
    q.iter().all(|v| v.abs() < limit)
}

pub(crate) fn int_to_i64(v: &BigInt) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Usage(format!("integer {v} does not fit in 64 bits")))
}

/// `z = (x, y) ∈ ℤᵈ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "PointRepr", try_from = "PointRepr")]
pub struct LatticePoint {
    z: Vec<i64>,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    x: Vec<i64>,
    y: Vec<i64>,
    #[serde(default, skip_deserializing)]
    primitive: bool,
}

impl From<LatticePoint> for PointRepr {
    fn from(p: LatticePoint) -> Self {
        Self {
            primitive: p.is_primitive(),
            x: p.x().to_vec(),
            y: p.y().to_vec(),
        }
    }
}

impl TryFrom<PointRepr> for LatticePoint {
    type Error = String;

    fn try_from(r: PointRepr) -> std::result::Result<Self, String> {
        Ok(LatticePoint::new(r.x, r.y))
    }
}

impl LatticePoint {
    pub fn new(x: Vec<i64>, y: Vec<i64>) -> Self {
        let m = x.len();
        let mut z = x;
        z.extend(y);
        Self { z, m }
    }

    pub fn from_z(z: Vec<i64>, m: usize) -> Self {
        assert!(m <= z.len());
        Self { z, m }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Self {
            z: vec![0; m + n],
            m,
        }
    }

    pub fn x(&self) -> &[i64] {
        &self.z[..self.m]
    }

    pub fn y(&self) -> &[i64] {
        &self.z[self.m..]
    }

    pub fn z(&self) -> &[i64] {
        &self.z
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().all(|&c| c == 0)
    }

    /// `gcd(z₁, …, z_d) = 1`.
    pub fn is_primitive(&self) -> bool {
        gcd_all(&self.z) == 1
    }

    pub fn x_norm(&self) -> i64 {
        sup_norm_int(self.x())
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            z: self.z.iter().map(|c| c * k).collect(),
            m: self.m,
        }
    }

    pub fn add_scaled(&self, other: &Self, k: i64) -> Self {
        assert_eq!(self.z.len(), other.z.len());
        Self {
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + k * b).collect(),
            m: self.m,
        }
    }
}

/// `Θ̄z − α = Θx − y − α`.
pub fn apply_theta_bar(p: &ApproximationProblem, z: &LatticePoint) -> Result<Vec<BigRational>> {
    if z.m() != p.m() || z.y().len() != p.n() {
        return Err(Error::Dimension(format!(
            "point has (m, n) = ({}, {}), problem has ({}, {})",
            z.m(),
            z.y().len(),
            p.m(),
            p.n()
        )));
    }
    let tx = p.theta().mul_int(z.x())?;
    Ok(tx
        .into_iter()
        .zip(z.y())
        .zip(p.alpha())
        .map(|((a, &y), al)| a - BigRational::from_integer(BigInt::from(y)) - al)
        .collect())
}

/// `Θ̄z` without the target, i.e. `Θx − y`.
pub fn apply_theta_bar_homogeneous(p: &ApproximationProblem, z: &LatticePoint) -> Result<Vec<BigRational>> {
    let tx = p.theta().mul_int(z.x())?;
    if z.y().len() != p.n() {
        return Err(Error::Dimension("y has wrong length".into()));
    }
    Ok(tx
        .into_iter()
        .zip(z.y())
        .map(|(a, &y)| a - BigRational::from_integer(BigInt::from(y)))
        .collect())
}

pub(crate) fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub(crate) fn factorial_q(k: usize) -> BigRational {
    BigRational::from_integer(factorial(k))
}
