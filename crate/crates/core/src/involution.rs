//! The step-swapping sign-reversing involution behind the shifted
//! alternating-sum identity, plus signed enumeration and the fixed-point
//! census it leaves behind.
//!
//! On a path of length at least `4m` the involution finds the least `i`
//! (1-based, `i <= 2m`) with `s_i != s_{2m+i}` and swaps those two steps.
//! Swapping changes the number of Rights among the first `2m` steps by
//! one, so the antidiagonal index `k` flips parity: non-fixed paths
//! cancel in pairs and only the fixed ones contribute to the signed sum.

use std::collections::BTreeMap;

use crate::exact::{binomial, BigNat, SignedBig};
use crate::lattice::{for_each_seq, GridPoint, LatticePath, Step};
use crate::{Error, Result, DEFAULT_ENUM_BUDGET};

/// A diagonal-to-diagonal path with its antidiagonal index `k` and the
/// sign `(-1)^k` it contributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPath {
    path: LatticePath,
    k: i64,
}

impl SignedPath {
    /// Wraps a path from `(0,0)` to `(m+n, m+n)` with `n >= m`.
    pub fn new(path: LatticePath, m: u64) -> Result<SignedPath> {
        if path.origin() != GridPoint::ORIGIN {
            return Err(Error::BadPath(format!(
                "signed paths start at (0, 0), got {}",
                path.origin()
            )));
        }
        let end = path.end();
        if end.x != end.y || !path.len().is_multiple_of(2) {
            return Err(Error::BadPath(format!(
                "signed paths end on the diagonal, got {end}"
            )));
        }
        if path.len() < 4 * m as usize {
            return Err(Error::PathTooShort {
                len: path.len(),
                needed: 4 * m as usize,
            });
        }
        let k = path.antidiagonal_k(m)?;
        Ok(SignedPath { path, k })
    }

    pub fn path(&self) -> &LatticePath {
        &self.path
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn sign(&self) -> i32 {
        if self.k.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

fn check_length(path: &LatticePath, m: u64) -> Result<()> {
    let needed = 4 * m as usize;
    if path.len() < needed {
        return Err(Error::PathTooShort {
            len: path.len(),
            needed,
        });
    }
    Ok(())
}

/// Applies the involution: swap the least differing pair `(i, 2m+i)`, or
/// return the path unchanged if it is a fixed point.
pub fn apply(path: &LatticePath, m: u64) -> Result<LatticePath> {
    check_length(path, m)?;
    let mut steps = path.steps().to_vec();
    let block = 2 * m as usize;
    for i in 0..block {
        if steps[i] != steps[block + i] {
            steps.swap(i, block + i);
            return Ok(LatticePath::new(path.origin(), steps));
        }
    }
    Ok(path.clone())
}

/// True iff `s_i = s_{2m+i}` for all `1 <= i <= 2m`.
pub fn is_fixed(path: &LatticePath, m: u64) -> Result<bool> {
    check_length(path, m)?;
    let steps = path.steps();
    let block = 2 * m as usize;
    Ok((0..block).all(|i| steps[i] == steps[block + i]))
}

fn seq_is_fixed(steps: &[Step], block: usize) -> bool {
    (0..block).all(|i| steps[i] == steps[block + i])
}

fn seq_k(steps: &[Step], m: u64) -> i64 {
    let block = 2 * m as usize;
    let rights = steps[..block].iter().filter(|s| **s == Step::Right).count() as i64;
    rights - m as i64
}

fn check_budget(m: u64, n: u64, budget: u64) -> Result<()> {
    if m > n {
        return Err(Error::InvalidParams(format!(
            "signed enumeration needs m <= n, got m={m}, n={n}"
        )));
    }
    let needed = binomial(2 * (m + n), (m + n) as i64);
    if needed > BigNat::from(budget) {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Sum of `(-1)^k` over all `C(2m+2n, m+n)` paths `(0,0) -> (m+n, m+n)`;
/// equals `S(m, n)`.
pub fn signed_path_sum(m: u64, n: u64) -> Result<SignedBig> {
    signed_path_sum_with_budget(m, n, DEFAULT_ENUM_BUDGET)
}

pub fn signed_path_sum_with_budget(m: u64, n: u64, budget: u64) -> Result<SignedBig> {
    check_budget(m, n, budget)?;
    let half = (m + n) as usize;
    let mut plus = 0u64;
    let mut minus = 0u64;
    for_each_seq(half, half, |steps| {
        if seq_k(steps, m).rem_euclid(2) == 0 {
            plus += 1;
        } else {
            minus += 1;
        }
    });
    Ok(SignedBig::from(plus) - SignedBig::from(minus))
}

/// Counts the involution's fixed paths grouped by antidiagonal index `k`.
/// Only nonzero classes appear in the map.
pub fn fixed_point_census(m: u64, n: u64) -> Result<BTreeMap<i64, BigNat>> {
    fixed_point_census_with_budget(m, n, DEFAULT_ENUM_BUDGET)
}

pub fn fixed_point_census_with_budget(
    m: u64,
    n: u64,
    budget: u64,
) -> Result<BTreeMap<i64, BigNat>> {
    check_budget(m, n, budget)?;
    let half = (m + n) as usize;
    let block = 2 * m as usize;
    let mut counts = vec![0u64; 2 * m as usize + 1];
    for_each_seq(half, half, |steps| {
        if seq_is_fixed(steps, block) {
            counts[(seq_k(steps, m) + m as i64) as usize] += 1;
        }
    });
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(i, c)| (i as i64 - m as i64, BigNat::from(c)))
        .collect())
}

/// The product formula `C(2m, m-k) * C(2n-2m, n-m+2k)` that the census
/// entry at `k` must reproduce. Invariant under `k -> -k`.
pub fn fixed_census_expected(m: u64, n: u64, k: i64) -> BigNat {
    binomial(2 * m, m as i64 - k) * binomial(2 * n - 2 * m, (n - m) as i64 + 2 * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::super_catalan_direct;
    use crate::lattice::enumerate_paths;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn path(text: &str) -> LatticePath {
        LatticePath::parse(text, GridPoint::ORIGIN).unwrap()
    }

    #[test]
    fn apply_swaps_least_differing_pair() {
        // s_1 = R differs from s_3 = U; swapping gives URRURU.
        assert_eq!(apply(&path("RRUURU"), 1).unwrap(), path("URRURU"));
        // s_1 = s_3 and s_2 = s_4: fixed.
        let fixed = path("RURURU");
        assert_eq!(apply(&fixed, 1).unwrap(), fixed);
        assert!(matches!(
            apply(&path("RU"), 1),
            Err(Error::PathTooShort { len: 2, needed: 4 })
        ));
    }

    #[test]
    fn is_fixed_examples() {
        assert!(is_fixed(&path("RURU"), 1).unwrap());
        assert!(!is_fixed(&path("RRUU"), 1).unwrap());
        // m = 0: the condition is empty.
        assert!(is_fixed(&path("RU"), 0).unwrap());
    }

    #[test]
    fn signed_sum_examples() {
        assert_eq!(signed_path_sum(1, 1).unwrap(), SignedBig::from(2));
        assert_eq!(signed_path_sum(0, 2).unwrap(), SignedBig::from(6));
        assert_eq!(signed_path_sum(1, 2).unwrap(), SignedBig::from(4));
    }

    #[test]
    fn census_examples() {
        let census = fixed_point_census(1, 1).unwrap();
        assert_eq!(census, BTreeMap::from([(0, BigNat::from(2u32))]));

        let census = fixed_point_census(1, 2).unwrap();
        assert_eq!(census, BTreeMap::from([(0, BigNat::from(4u32))]));

        for n in 0..=4 {
            let census = fixed_point_census(0, n).unwrap();
            assert_eq!(census, BTreeMap::from([(0, binomial(2 * n, n as i64))]));
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            signed_path_sum_with_budget(1, 9, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            fixed_point_census_with_budget(1, 9, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            signed_path_sum(3, 2),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn involution_properties_exhaustive_small() {
        for m in 0u64..=2 {
            for n in m..=4 {
                let half = (m + n) as i64;
                let to = GridPoint::new(half, half);
                let mut signed = SignedBig::from(0);
                for p in enumerate_paths(GridPoint::ORIGIN, to).unwrap() {
                    let q = apply(&p, m).unwrap();
                    assert_eq!(apply(&q, m).unwrap(), p, "involution");
                    let fixed = is_fixed(&p, m).unwrap();
                    assert_eq!(q == p, fixed, "fixed-point characterization");
                    let k = p.antidiagonal_k(m).unwrap();
                    if !fixed {
                        let kq = q.antidiagonal_k(m).unwrap();
                        assert_eq!((kq - k).abs(), 1, "sign reversal");
                    }
                    signed += SignedBig::from(if k.rem_euclid(2) == 0 { 1 } else { -1 });
                }
                assert_eq!(signed, signed_path_sum(m, n).unwrap());
                assert_eq!(signed, SignedBig::from(super_catalan_direct(m, n).unwrap()));

                let census = fixed_point_census(m, n).unwrap();
                for k in -(m as i64)..=m as i64 {
                    let expected = fixed_census_expected(m, n, k);
                    let actual = census.get(&k).cloned().unwrap_or_else(BigNat::zero);
                    assert_eq!(actual, expected, "census entry k={k} for ({m},{n})");
                }
            }
        }
    }

    #[test]
    fn signed_path_wrapper() {
        let sp = SignedPath::new(path("RRUU"), 1).unwrap();
        assert_eq!(sp.k(), 1);
        assert_eq!(sp.sign(), -1);
        assert_eq!(SignedPath::new(path("RURU"), 1).unwrap().sign(), 1);
        assert!(SignedPath::new(path("RRU"), 0).is_err());
        assert!(SignedPath::new(path("RURU"), 2).is_err());
    }

    proptest! {
        #[test]
        fn apply_is_involutive(
            steps in proptest::collection::vec(
                prop_oneof![Just(Step::Right), Just(Step::Up)],
                0..24,
            ),
            m in 0u64..3,
        ) {
            prop_assume!(steps.len() >= 4 * m as usize);
            let p = LatticePath::new(GridPoint::ORIGIN, steps);
            let q = apply(&p, m).unwrap();
            prop_assert_eq!(apply(&q, m).unwrap(), p);
        }
    }
}
