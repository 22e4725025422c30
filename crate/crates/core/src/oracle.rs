//! Independent checks for continued-fraction coefficients: direct
//! enumeration of permutations, and a height-by-height sum over weighted
//! Motzkin paths.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::thread;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fraction::WeightScheme;
use crate::perm::{Permutation, SubsetId};
use crate::poly::{mask, Exponents, Marks, MultiPoly};

pub const DEFAULT_CAP: usize = 9;
pub const WORKERS_ENV: &str = "PERMPATH_WORKERS";

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub cap: usize,
    pub workers: usize,
}

impl Default for OracleConfig {
    /// Cap 9; worker count from `PERMPATH_WORKERS`, else the available
    /// parallelism.
    fn default() -> Self {
        let workers = std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&w| w > 0)
            .unwrap_or_else(|| thread::available_parallelism().map_or(1, NonZeroUsize::get));
        Self {
            cap: DEFAULT_CAP,
            workers,
        }
    }
}

/// Exponent vector `(fp, exc, dexc, cyc, inv)` of a permutation.
pub fn stat_exponents(perm: &Permutation) -> Exponents {
    let s = perm.stats();
    [s.fp, s.exc, s.dexc, s.cyc, s.inv].map(|e| e as u32)
}

/// `Σ x^fp v^exc w^dexc t^cyc q^inv` over members of `subset` in `S_n`,
/// keeping only the marked variables.
pub fn brute_force_distribution(n: usize, subset: SubsetId, marks: Marks) -> Result<MultiPoly> {
    brute_force_with(n, &OracleConfig::default(), marks, |p| {
        subset.contains(p).then(|| stat_exponents(p))
    })
}

/// Sums `monomial(π)` over `S_n`, skipping permutations mapped to `None`.
/// The work is split by the value of π(1); partial sums commute, so the
/// result does not depend on the worker count.
pub fn brute_force_with<F>(n: usize, config: &OracleConfig, marks: Marks, monomial: F) -> Result<MultiPoly>
where
    F: Fn(&Permutation) -> Option<Exponents> + Sync,
{
    if n > config.cap {
        return Err(Error::OracleCap { n, cap: config.cap });
    }
    let tally = |perms: &mut dyn Iterator<Item = Permutation>, acc: &mut HashMap<Exponents, u64>| {
        for p in perms {
            if let Some(e) = monomial(&p) {
                *acc.entry(e).or_default() += 1;
            }
        }
    };
    let mut total: HashMap<Exponents, u64> = HashMap::new();
    if n == 0 {
        tally(&mut Permutation::all(0), &mut total);
    } else {
        let workers = config.workers.clamp(1, n);
        let parts: Vec<HashMap<Exponents, u64>> = thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let tally = &tally;
                    scope.spawn(move || {
                        let mut acc = HashMap::new();
                        for first in (1..=n).skip(w).step_by(workers) {
                            tally(&mut Permutation::with_first(n, first), &mut acc);
                        }
                        acc
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("oracle worker panicked"))
                .collect()
        });
        for part in parts {
            for (e, c) in part {
                *total.entry(e).or_default() += c;
            }
        }
    }
    Ok(MultiPoly::from_terms(
        total.into_iter().map(|(e, c)| (mask(e, marks), BigInt::from(c))),
    ))
}

/// Count of members of `subset` in `S_n`.
pub fn brute_force_count(n: usize, subset: SubsetId) -> Result<BigInt> {
    Ok(brute_force_distribution(n, subset, Marks::NONE)?.constant_term())
}

/// Weighted Motzkin paths of length `n` under `scheme`, summed by a
/// transfer recursion over heights. Elevated schemes count paths that touch
/// the axis only at their endpoints, plus the single level step.
pub fn weighted_path_sum(scheme: &WeightScheme, n: usize) -> MultiPoly {
    if !scheme.is_elevated() {
        return path_sum(n, |h| scheme.level(h), |h| scheme.close(h));
    }
    match n {
        0 => MultiPoly::zero(),
        1 => scheme.level(0),
        _ => &scheme.close(1) * &path_sum(n - 2, |h| scheme.level(h + 1), |h| scheme.close(h + 1)),
    }
}

fn path_sum(n: usize, level: impl Fn(usize) -> MultiPoly, close: impl Fn(usize) -> MultiPoly) -> MultiPoly {
    let top = n / 2;
    let levels: Vec<MultiPoly> = (0..=top).map(&level).collect();
    let closes: Vec<MultiPoly> = (0..=top)
        .map(|h| if h == 0 { MultiPoly::zero() } else { close(h) })
        .collect();
    let mut cur = vec![MultiPoly::zero(); top + 2];
    cur[0] = MultiPoly::one();
    for step in 0..n {
        let remaining = n - step - 1;
        let mut next = vec![MultiPoly::zero(); top + 2];
        for h in 0..=top {
            if cur[h].is_zero() {
                continue;
            }
            if h <= remaining {
                next[h] += &(&cur[h] * &levels[h]);
            }
            if h < remaining {
                next[h + 1] += &cur[h];
            }
            if h >= 1 && h - 1 <= remaining {
                next[h - 1] += &(&cur[h] * &closes[h]);
            }
        }
        cur = next;
    }
    cur.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::scheme_for;
    use crate::poly::Var;

    #[test]
    fn trivial_and_small() {
        let one = brute_force_distribution(0, SubsetId::All, Marks::FULL).unwrap();
        assert_eq!(one.to_string(), "1");
        let t3 = brute_force_distribution(3, SubsetId::All, Marks::of(&[Var::T])).unwrap();
        assert_eq!(t3.to_string(), "t^3 + 3*t^2 + 2*t");
        assert_eq!(brute_force_count(0, SubsetId::Cyclic).unwrap(), 0.into());
    }

    #[test]
    fn cap_enforced() {
        let cfg = OracleConfig { cap: 4, workers: 2 };
        assert_eq!(
            brute_force_with(5, &cfg, Marks::NONE, |_| Some([0; 5])),
            Err(Error::OracleCap { n: 5, cap: 4 })
        );
    }

    #[test]
    fn worker_count_does_not_matter() {
        let run = |workers| {
            let cfg = OracleConfig { cap: 9, workers };
            brute_force_with(6, &cfg, Marks::FULL, |p| Some(stat_exponents(p))).unwrap()
        };
        let one = run(1);
        assert_eq!(one, run(3));
        assert_eq!(one, run(16));
        assert_eq!(one.at_ones(), 720.into());
    }

    #[test]
    fn path_sum_counts() {
        let all = scheme_for(SubsetId::All, Marks::NONE).unwrap();
        let facts: Vec<BigInt> = (0..=7).map(|n| weighted_path_sum(&all, n).constant_term()).collect();
        assert_eq!(facts, [1, 1, 2, 6, 24, 120, 720, 5040].map(BigInt::from));
        let cyc = scheme_for(SubsetId::Cyclic, Marks::NONE).unwrap();
        let c: Vec<BigInt> = (0..=6).map(|n| weighted_path_sum(&cyc, n).constant_term()).collect();
        assert_eq!(c, [0, 1, 1, 2, 6, 24, 120].map(BigInt::from));
    }
}
