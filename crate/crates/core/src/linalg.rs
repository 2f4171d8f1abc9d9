//! Exact linear algebra on small integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Determinant of the square matrix whose columns are `cols` (Bareiss).
pub fn det(cols: &[Vec<i64>]) -> BigInt {
    let n = cols.len();
    assert!(cols.iter().all(|c| c.len() == n), "det needs a square matrix");
    if n == 0 {
        return BigInt::one();
    }
    // work on rows of the transpose; the determinant is the same
    let mut a: Vec<Vec<BigInt>> = cols.iter().map(|c| to_big(c)).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of a square rational matrix given by rows.
pub fn det_rational(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "det needs a square matrix");
    let mut a = rows.to_vec();
    let mut acc = BigRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if piv != k {
            a.swap(piv, k);
            acc = -acc;
        }
        acc *= &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
        }
    }
    acc
}

/// Incrementally maintained set of linearly independent integer vectors.
#[derive(Debug, Clone, Default)]
pub struct IndependentSet {
    /// Echelon rows `(pivot, row)` with primitive content.
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IndependentSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &[i64]) -> Vec<BigInt> {
        let mut w = to_big(v);
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = w[*p].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                *wj = &*wj * &a - rj * &b;
            }
            let g = w.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            if !g.is_zero() && !g.is_one() {
                w.iter_mut().for_each(|c| *c = &*c / &g);
            }
        }
        w
    }

    pub fn is_independent(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().any(|c| !c.is_zero())
    }

    /// Adds `v` if it is independent of the current set; reports whether it was added.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|c| !c.is_zero()) {
            Some(p) => {
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }
}

pub fn rank(vectors: &[Vec<i64>]) -> usize {
    let mut set = IndependentSet::new();
    vectors.iter().filter(|v| set.insert(v)).count()
}

/// Solves `Σ cₖ·colsₖ = target` for a nonsingular square system.
pub fn solve(cols: &[Vec<i64>], target: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = cols.len();
    if target.len() != n || cols.iter().any(|c| c.len() != n) {
        return Err(Error::Dimension("solve needs a square system".into()));
    }
    // augmented rows: a[i] = (col_0[i], …, col_{n−1}[i] | target[i])
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = cols
                .iter()
                .map(|c| BigRational::from_integer(BigInt::from(c[i])))
                .collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    for k in 0..n {
        let piv = (k..n)
            .find(|&i| !a[i][k].is_zero())
            .ok_or_else(|| Error::Precondition("singular system".into()))?;
        a.swap(k, piv);
        let inv = a[k][k].recip();
        for j in k..=n {
            a[k][j] = &a[k][j] * &inv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in k..=n {
                    let v = &a[i][j] - &f * &a[k][j];
                    a[i][j] = v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Coordinates of `target` in the basis `cols`, which must be integral.
pub fn integer_coordinates(cols: &[Vec<i64>], target: &[i64]) -> Result<Vec<BigInt>> {
    let t: Vec<BigRational> = target
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    solve(cols, &t)?
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Defect("coordinates in a unimodular basis must be integers".into()))
            }
        })
        .collect()
}

/// Basis `h₀, …, h_{d−1}` of the lattice generated by `gens ⊂ ℤᵈ` with
/// `hₖ[i] = 0` for `i > k`, `hₖ[k] > 0` and `0 ≤ hₖ[i] < hᵢ[i]` for `i < k`.
///
/// The generators must span `ℚᵈ`.
pub fn lower_echelon_basis(gens: Vec<Vec<BigInt>>, d: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut pool: Vec<Vec<BigInt>> = gens.into_iter().filter(|g| g.iter().any(|c| !c.is_zero())).collect();
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; d];
    for c in (0..d).rev() {
        loop {
            let mut active: Vec<usize> = (0..pool.len()).filter(|&i| !pool[i][c].is_zero()).collect();
            if active.len() <= 1 {
                break;
            }
            active.sort_by(|&i, &j| pool[i][c].abs().cmp(&pool[j][c].abs()));
            let pivot = pool[active[0]].clone();
            for &i in &active[1..] {
                let f = pool[i][c].div_floor(&pivot[c]);
                for (x, p) in pool[i].iter_mut().zip(&pivot) {
                    *x = &*x - &f * p;
                }
            }
            pool.retain(|g| g.iter().any(|x| !x.is_zero()));
        }
        let idx = (0..pool.len())
            .find(|&i| !pool[i][c].is_zero())
            .ok_or_else(|| Error::Precondition("generators do not span full rank".into()))?;
        let mut h = pool.swap_remove(idx);
        if h[c].is_negative() {
            h.iter_mut().for_each(|x| *x = -&*x);
        }
        basis[c] = Some(h);
    }
    let mut basis: Vec<Vec<BigInt>> = basis.into_iter().map(Option::unwrap).collect();
    for k in 0..d {
        for i in (0..k).rev() {
            let f = basis[k][i].div_floor(&basis[i][i]);
            if !f.is_zero() {
                let hi = basis[i].clone();
                for (x, p) in basis[k].iter_mut().zip(&hi) {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![1, 0], vec![1, 2]]), BigInt::from(2));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), BigInt::zero());
        assert_eq!(det(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]), BigInt::from(6));
        let r = vec![vec![q(1, 2), q(1, 3)], vec![qi(2), qi(5)]];
        assert_eq!(det_rational(&r), q(11, 6));
    }

    #[test]
    fn independence() {
        let mut s = IndependentSet::new();
        assert!(s.insert(&[2, 4, 0]));
        assert!(!s.insert(&[-1, -2, 0]));
        assert!(s.insert(&[0, 1, 0]));
        assert!(!s.is_independent(&[5, 7, 0]));
        assert!(s.insert(&[0, 0, 3]));
        assert_eq!(s.len(), 3);
        assert_eq!(rank(&[vec![1, 1], vec![2, 2], vec![0, 0]]), 1);
    }

    #[test]
    fn solving() {
        let c = solve(&[vec![1, 0], vec![1, 2]], &[qi(1), qi(1)]).unwrap();
        assert_eq!(c, vec![q(1, 2), q(1, 2)]);
        assert!(solve(&[vec![1, 1], vec![2, 2]], &[qi(1), qi(1)]).is_err());
        assert!(integer_coordinates(&[vec![1, 0], vec![1, 2]], &[1, 1]).is_err());
        let u = integer_coordinates(&[vec![1, 0], vec![1, 1]], &[3, 5]).unwrap();
        assert_eq!(u, vec![BigInt::from(-2), BigInt::from(5)]);
    }

    #[test]
    fn echelon_basis_of_index_two_lattice() {
        // lattice generated by (2, 0) and (1, 1)
        let gens = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(1)],
        ];
        let b = lower_echelon_basis(gens, 2).unwrap();
        assert_eq!(b[0], vec![BigInt::from(2), BigInt::from(0)]);
        assert_eq!(b[1], vec![BigInt::from(1), BigInt::from(1)]);
    }
}
