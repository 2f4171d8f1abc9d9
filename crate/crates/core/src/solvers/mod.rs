//! Constructive inhomogeneous approximation: the transference solver and
//! its Kronecker and `ε/|x|` specialisations, primitive solutions, and the
//! primitive record scan.

mod satz1;
mod satz7;
mod scan;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{apply_theta_bar, factorial, sup_norm, ApproximationProblem, LatticePoint};
use crate::qser;

pub use satz1::{
    khintchine_hypothesis_check, solve_kronecker, solve_satz1, solve_satz3, KhintchineCheck, Satz1Options,
    SearchMode, Violation,
};
pub use satz7::{gcd_shift, solve_primitive_satz7, Satz7Case, Satz7Options, Satz7Trace};
pub use scan::{primitive_record_scan, PrimitiveRecord, PrimitiveScan};

/// `K = 2^{n−1}/(d!)²`.
pub fn transference_constant(n: usize, m: usize) -> BigRational {
    assert!(n >= 1 && m >= 1);
    let d = factorial(n + m);
    BigRational::new(BigInt::one() << (n - 1), &d * &d)
}

/// Parameters that led to a certificate; only the ones that apply are present.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub epsilon: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub k: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub c: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub x: Option<BigRational>,
    /// Argument of `ψ` used to derive `X`.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub s: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub psi_s: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub t: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub big_t: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub w: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub big_m: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qser::option")]
    pub t1: Option<BigRational>,
}

/// A lattice point with its exact residual `|Θ̄z − α|` and the bound it meets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionCertificate {
    pub point: LatticePoint,
    #[serde(with = "qser::scalar")]
    pub residual_norm: BigRational,
    pub x_norm: i64,
    #[serde(with = "qser::scalar")]
    pub bound_required: BigRational,
    /// `residual_norm < bound_required` rather than `≤`.
    pub strict: bool,
    pub primitive: bool,
    pub parameters: Parameters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Satz7Trace>,
}

impl SolutionCertificate {
    pub(crate) fn new(
        p: &ApproximationProblem,
        point: LatticePoint,
        bound_required: BigRational,
        strict: bool,
        parameters: Parameters,
    ) -> Result<Self> {
        let residual_norm = sup_norm(&apply_theta_bar(p, &point)?)?;
        Ok(Self {
            x_norm: point.x_norm(),
            primitive: point.is_primitive(),
            point,
            residual_norm,
            bound_required,
            strict,
            parameters,
            construction: None,
        })
    }

    pub fn meets_bound(&self) -> bool {
        if self.strict {
            self.residual_norm < self.bound_required
        } else {
            self.residual_norm <= self.bound_required
        }
    }

    /// Recomputes residual, norms and primitivity from scratch and checks the bound.
    pub fn revalidate(&self, p: &ApproximationProblem) -> Result<()> {
        let residual = sup_norm(&apply_theta_bar(p, &self.point)?)?;
        if residual != self.residual_norm {
            return Err(Error::Defect("stored residual does not match the point".into()));
        }
        if self.point.x_norm() != self.x_norm || self.point.is_primitive() != self.primitive {
            return Err(Error::Defect("stored norms do not match the point".into()));
        }
        if !self.meets_bound() {
            return Err(Error::Defect("certificate misses its bound".into()));
        }
        if self.bound_required.is_negative() {
            return Err(Error::Defect("negative bound".into()));
        }
        Ok(())
    }
}
