use crate::error::{Error, Result};

use super::SearchOptions;

/// `∏(2bⱼ + 1)`, saturating.
pub fn box_count(bounds: &[i64]) -> u128 {
    bounds
        .iter()
        .fold(1u128, |acc, &b| acc.saturating_mul(2 * b.max(0) as u128 + 1))
}

/// All integer vectors with `|vⱼ| ≤ boundsⱼ`, lexicographic, most significant coordinate first.
pub fn box_enumerate(bounds: &[i64], opts: &SearchOptions) -> Result<BoxIter> {
    if let Some(b) = bounds.iter().find(|&&b| b < 0) {
        return Err(Error::Usage(format!("negative enumeration bound {b}")));
    }
    opts.charge(box_count(bounds))?;
    Ok(BoxIter::new(bounds.iter().map(|&b| (-b, b)).collect()))
}

/// Odometer over a product of inclusive integer ranges.
#[derive(Debug, Clone)]
pub struct BoxIter {
    ranges: Vec<(i64, i64)>,
    current: Option<Vec<i64>>,
}

impl BoxIter {
    /// Empty ranges (`lo > hi`) yield nothing.
    pub fn new(ranges: Vec<(i64, i64)>) -> Self {
        let current = if ranges.iter().any(|&(lo, hi)| lo > hi) {
            None
        } else {
            Some(ranges.iter().map(|&(lo, _)| lo).collect())
        };
        Self { ranges, current }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            if cur[k] < self.ranges[k].1 {
                cur[k] += 1;
                break;
            }
            cur[k] = self.ranges[k].0;
        }
        Some(out)
    }
}

/// Integer vectors of length `dim` with sup-norm exactly `r`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct ShellIter {
    r: i64,
    current: Option<Vec<i64>>,
}

impl ShellIter {
    pub fn new(dim: usize, r: i64) -> Self {
        assert!(dim > 0 && r >= 0);
        Self {
            r,
            current: Some(vec![-r; dim]),
        }
    }
}

impl Iterator for ShellIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.current.clone()?;
        let r = self.r;
        let cur = self.current.as_mut().unwrap();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.current = None;
                return Some(out);
            }
            k -= 1;
            if cur[k] < r {
                cur[k] += 1;
                break;
            }
            cur[k] = -r;
        }
        // with an interior prefix only the two faces of the last coordinate are on the shell
        let last = cur.len() - 1;
        if cur.iter().all(|c| c.abs() < r) {
            cur[last] = r;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn one_dimensional_box() {
        let pts: Vec<_> = box_enumerate(&[1], &SearchOptions::default()).unwrap().collect();
        assert_eq!(pts, vec![vec![-1], vec![0], vec![1]]);
    }

    #[test]
    fn small_counts() {
        let opts = SearchOptions::default();
        assert_eq!(box_enumerate(&[1, 1], &opts).unwrap().count(), 9);
        let zero: Vec<_> = box_enumerate(&[0, 0], &opts).unwrap().collect();
        assert_eq!(zero, vec![vec![0, 0]]);
    }

    #[test]
    fn budget_and_negative_bounds() {
        let opts = SearchOptions::default().with_budget(8);
        assert!(matches!(box_enumerate(&[1, 1], &opts), Err(Error::Budget { needed: 9, .. })));
        assert!(matches!(
            box_enumerate(&[-1], &SearchOptions::default()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn shells_partition_the_box() {
        for dim in 1..=3 {
            let mut seen = Vec::new();
            for r in 0..=3 {
                let shell: Vec<_> = ShellIter::new(dim, r).collect();
                assert!(shell.windows(2).all(|w| w[0] < w[1]), "shell not lexicographic");
                assert!(shell.iter().all(|v| v.iter().map(|c| c.abs()).max() == Some(r)));
                seen.extend(shell);
            }
            let boxed: Vec<_> = BoxIter::new(vec![(-3, 3); dim]).collect();
            assert_eq!(seen.len(), boxed.len());
            let a: HashSet<_> = seen.into_iter().collect();
            let b: HashSet<_> = boxed.into_iter().collect();
            assert_eq!(a, b);
        }
    }

    proptest! {
        #[test]
        fn box_is_lexicographic_and_complete(bounds in proptest::collection::vec(0i64..4, 1..4)) {
            let pts: Vec<_> = box_enumerate(&bounds, &SearchOptions::default()).unwrap().collect();
            prop_assert_eq!(pts.len() as u128, box_count(&bounds));
            prop_assert!(pts.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(pts.iter().all(|v| v.iter().zip(&bounds).all(|(c, b)| c.abs() <= *b)));
        }
    }
}
