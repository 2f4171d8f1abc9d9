//! Integer evaluation of the rational quantities the searches minimise.
//!
//! Every gauge, distance and residual in this crate is a maximum of terms
//! `w · f(c·v + e)` where `v` is an integer vector, `c`, `e` are integers,
//! `w = wn/wd` is a positive rational weight and `f` is either `|·|` or the
//! distance to the nearest multiple of a modulus. Holding the terms as
//! numerator/denominator pairs lets the inner loops run on `i128` whenever a
//! worst-case magnitude bound over the enumeration box fits, and on `BigInt`
//! otherwise. Results are identical either way.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) trait Int: Clone + Ord + Send + Sync + Debug + Integer + Signed + From<i64> {
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Int for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("kernel bound check admitted an oversized value")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Non-negative fraction with positive denominator; not reduced.
#[derive(Debug, Clone)]
pub(crate) struct Frac<I> {
    pub num: I,
    pub den: I,
}

impl<I: Int> Frac<I> {
    pub fn zero() -> Self {
        Self {
            num: I::zero(),
            den: I::one(),
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
    }

    pub fn to_q(&self) -> BigRational {
        BigRational::new(self.num.to_big(), self.den.to_big())
    }
}

/// `value = wn · f(coeffs·v + offset) / wd`.
#[derive(Debug, Clone)]
pub(crate) struct FormSpec {
    pub coeffs: Vec<BigInt>,
    pub offset: BigInt,
    /// `Some(q)`: `f` is the distance to the nearest multiple of `q`; `None`: `f = |·|`.
    pub modulus: Option<BigInt>,
    pub wn: BigInt,
    pub wd: BigInt,
}

impl FormSpec {
    pub fn abs(coeffs: Vec<BigInt>, offset: BigInt, weight: &BigRational) -> Self {
        Self {
            coeffs,
            offset,
            modulus: None,
            wn: weight.numer().clone(),
            wd: weight.denom().clone(),
        }
    }

    pub fn dist(coeffs: Vec<BigInt>, offset: BigInt, modulus: BigInt, weight: &BigRational) -> Self {
        Self {
            coeffs,
            offset,
            modulus: Some(modulus),
            wn: weight.numer().clone(),
            wd: weight.denom().clone(),
        }
    }

    /// Unit vector `e_k` of length `len` with weight `w`.
    pub fn coordinate(len: usize, k: usize, weight: &BigRational) -> Self {
        let mut coeffs = vec![BigInt::zero(); len];
        coeffs[k] = BigInt::one();
        Self::abs(coeffs, BigInt::zero(), weight)
    }
}

#[derive(Debug, Clone)]
struct Form<I> {
    coeffs: Vec<(usize, I)>,
    offset: I,
    modulus: Option<I>,
    wn: I,
    wd: I,
}

#[derive(Debug, Clone)]
pub(crate) struct Forms<I> {
    forms: Vec<Form<I>>,
}

impl<I: Int> Forms<I> {
    fn from_specs(specs: &[FormSpec]) -> Self {
        let forms = specs
            .iter()
            .map(|s| Form {
                coeffs: s
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, I::from_big(c)))
                    .collect(),
                offset: I::from_big(&s.offset),
                modulus: s.modulus.as_ref().map(I::from_big),
                wn: I::from_big(&s.wn),
                wd: I::from_big(&s.wd),
            })
            .collect();
        Self { forms }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    /// Raw linear value `coeffs·v + offset` of form `k`.
    pub fn linear(&self, k: usize, v: &[i64]) -> I {
        let f = &self.forms[k];
        f.coeffs
            .iter()
            .fold(f.offset.clone(), |acc, (j, c)| acc + c.clone() * I::from(v[*j]))
    }

    pub fn term(&self, k: usize, v: &[i64]) -> Frac<I> {
        let f = &self.forms[k];
        let l = self.linear(k, v);
        let shaped = match &f.modulus {
            None => l.abs(),
            Some(q) => {
                let r = l.mod_floor(q);
                let other = q.clone() - r.clone();
                r.min(other)
            }
        };
        Frac {
            num: f.wn.clone() * shaped,
            den: f.wd.clone(),
        }
    }

    /// `max_k term_k(v)`; zero when there are no forms.
    pub fn max(&self, v: &[i64]) -> Frac<I> {
        let mut best = Frac::zero();
        for k in 0..self.forms.len() {
            let t = self.term(k, v);
            if t.cmp_value(&best) == Ordering::Greater {
                best = t;
            }
        }
        best
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Kernel {
    Small(Forms<i128>),
    Big(Forms<BigInt>),
}

/// `2^120`: leaves headroom for the sums and cross products formed on top of a bounded term.
fn small_limit() -> BigInt {
    BigInt::one() << 120
}

impl Kernel {
    /// Chooses the integer width from a bound on `|vⱼ| ≤ boundsⱼ` over the enumeration box.
    ///
    /// `extra` lists further magnitudes the caller will combine with the
    /// forms' values (for example a comparison threshold).
    pub fn build(specs: Vec<FormSpec>, bounds: &[i64], extra: &[BigInt]) -> Self {
        let mut num_max = BigInt::zero();
        let mut den_max = BigInt::one();
        let mut lin_max = BigInt::zero();
        for s in &specs {
            assert_eq!(s.coeffs.len(), bounds.len(), "form arity");
            assert!(s.wd.is_positive() && !s.wn.is_negative(), "weights must be positive");
            let lin = s
                .coeffs
                .iter()
                .zip(bounds)
                .fold(s.offset.abs(), |acc, (c, &b)| acc + c.abs() * BigInt::from(b.unsigned_abs()));
            let shaped = match &s.modulus {
                Some(q) => q.abs(),
                None => lin.clone(),
            };
            num_max = num_max.max(&s.wn * shaped);
            den_max = den_max.max(s.wd.clone());
            lin_max = lin_max.max(lin);
        }
        let extra_max = extra.iter().map(|e| e.abs()).max().unwrap_or_default();
        let scale = (&num_max).max(&den_max).max(&extra_max).clone() + BigInt::one();
        let fits = &scale * &scale < small_limit() && lin_max < small_limit();
        if fits {
            Kernel::Small(Forms::from_specs(&specs))
        } else {
            Kernel::Big(Forms::from_specs(&specs))
        }
    }

    #[cfg(test)]
    pub fn is_small(&self) -> bool {
        matches!(self, Kernel::Small(_))
    }
}

/// Dispatches a generic expression over the concrete kernel width.
macro_rules! with_forms {
    ($kernel:expr, $forms:ident => $body:expr) => {
        match $kernel {
            $crate::kernel::Kernel::Small($forms) => $body,
            $crate::kernel::Kernel::Big($forms) => $body,
        }
    };
}
pub(crate) use with_forms;

/// Exact rational as a `(num, den)` pair of the kernel width.
pub(crate) fn frac_of<I: Int>(v: &BigRational) -> Frac<I> {
    Frac {
        num: I::from_big(v.numer()),
        den: I::from_big(v.denom()),
    }
}
