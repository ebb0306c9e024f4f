use super::{Answer, Family, Param, ProblemInstance, Symbol, S1_MODULUS};
use crate::error::{Error, Result};
use num_bigint::BigUint;

/// Size bound for `S1` brute-force instances.
pub const BRUTE_MAX_X: u64 = 2000;
/// Size bound for `S2`/`S3` brute-force instances.
pub const BRUTE_MAX_LEN: usize = 12;

/// Independent verification oracle.
///
/// Answers are computed by structurally different methods than the solvers:
/// `S1` builds the full big-integer product and reduces once at the end;
/// `S2` and `S3` enumerate subsets exhaustively. Instances above the size
/// bounds (`x <= 2000`, list length `<= 12`) are rejected.
pub fn brute_oracle(instance: &ProblemInstance) -> Result<Answer> {
    instance.validate()?;
    match (instance.symbol.family, &instance.param) {
        (Family::S1, Param::X(x)) => {
            if *x > BRUTE_MAX_X {
                return Err(Error::invalid(format!(
                    "brute oracle bound exceeded: x = {x} > {BRUTE_MAX_X}"
                )));
            }
            Ok(Answer::residue(brute_s1(instance.symbol.symbol, *x)))
        }
        (Family::S2, Param::Intervals(ivs)) => {
            if ivs.len() > BRUTE_MAX_LEN {
                return Err(Error::invalid(format!(
                    "brute oracle bound exceeded: {} intervals > {BRUTE_MAX_LEN}",
                    ivs.len()
                )));
            }
            Ok(Answer::count(brute_s2(instance.symbol.symbol, ivs)))
        }
        (Family::S3, Param::Array(a)) => {
            if a.len() > BRUTE_MAX_LEN {
                return Err(Error::invalid(format!(
                    "brute oracle bound exceeded: {} elements > {BRUTE_MAX_LEN}",
                    a.len()
                )));
            }
            if a.is_empty() && instance.symbol.symbol == Symbol::H {
                return Err(Error::invalid(
                    "distinct-LIS count is undefined for an empty array",
                ));
            }
            Ok(Answer::count(brute_s3(instance.symbol.symbol, a)))
        }
        _ => Err(Error::invalid("parameter does not match family")),
    }
}

fn brute_s1(symbol: Symbol, x: u64) -> u64 {
    let mut product = BigUint::from(1u32);
    match symbol {
        Symbol::F => {
            for k in 1..=x {
                product *= BigUint::from(k);
            }
        }
        Symbol::G | Symbol::H => {
            let (mut a, mut b) = if symbol == Symbol::G {
                (BigUint::from(1u32), BigUint::from(1u32))
            } else {
                (BigUint::from(1u32), BigUint::from(3u32))
            };
            for _ in 1..=x {
                product *= &a;
                let next = &a + &b;
                a = std::mem::replace(&mut b, next);
            }
        }
        Symbol::I => {
            let one = BigUint::from(1u32);
            let mut pow = BigUint::from(1u32);
            for _ in 1..=x {
                pow <<= 1;
                product *= &pow - &one;
            }
        }
    }
    let rem = product % BigUint::from(S1_MODULUS);
    rem.iter_u64_digits().next().unwrap_or(0)
}

fn pairwise_non_overlapping(selected: &[(i64, i64)]) -> bool {
    for (idx, &(s1, e1)) in selected.iter().enumerate() {
        for &(s2, e2) in &selected[idx + 1..] {
            // Touching endpoints are allowed.
            if s1 < e2 && s2 < e1 {
                return false;
            }
        }
    }
    true
}

fn brute_s2(symbol: Symbol, intervals: &[(i64, i64)]) -> u64 {
    let n = intervals.len();
    match symbol {
        Symbol::F => {
            let mut best = 0u64;
            for mask in 0u32..(1 << n) {
                let chosen: Vec<(i64, i64)> = (0..n)
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| intervals[k])
                    .collect();
                if pairwise_non_overlapping(&chosen) {
                    best = best.max(chosen.len() as u64);
                }
            }
            best
        }
        Symbol::G => {
            // Enumerate removal sets directly instead of using n - f.
            let mut best = n as u64;
            for mask in 0u32..(1 << n) {
                let kept: Vec<(i64, i64)> = (0..n)
                    .filter(|k| mask >> k & 1 == 0)
                    .map(|k| intervals[k])
                    .collect();
                if pairwise_non_overlapping(&kept) {
                    best = best.min(mask.count_ones() as u64);
                }
            }
            best
        }
        Symbol::H => {
            // Peak concurrency over every candidate time (interval starts).
            let mut peak = 0u64;
            for &(point, _) in intervals {
                let open = intervals
                    .iter()
                    .filter(|&&(s, e)| s <= point && point < e)
                    .count() as u64;
                peak = peak.max(open);
            }
            peak
        }
        Symbol::I => brute_arrows(intervals),
    }
}

/// Minimum piercing set via subset dynamic programming: candidate arrow
/// positions are interval endpoints.
fn brute_arrows(intervals: &[(i64, i64)]) -> u64 {
    let n = intervals.len();
    if n == 0 {
        return 0;
    }
    let mut candidates: Vec<i64> = intervals.iter().flat_map(|&(s, e)| [s, e]).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let full = (1u32 << n) - 1;
    let mut cost = vec![u64::MAX; (full + 1) as usize];
    cost[0] = 0;
    for mask in 0..=full {
        if cost[mask as usize] == u64::MAX {
            continue;
        }
        if mask == full {
            break;
        }
        let first_open = (0..n).find(|k| mask >> k & 1 == 0).unwrap();
        let (lo, hi) = intervals[first_open];
        for &p in candidates.iter().filter(|&&p| lo <= p && p <= hi) {
            let mut covered = mask;
            for (k, &(s, e)) in intervals.iter().enumerate() {
                if s <= p && p <= e {
                    covered |= 1 << k;
                }
            }
            let next = cost[mask as usize] + 1;
            if next < cost[covered as usize] {
                cost[covered as usize] = next;
            }
        }
    }
    cost[full as usize]
}

fn brute_s3(symbol: Symbol, array: &[i64]) -> u64 {
    let n = array.len();
    let subsequences = (0u32..(1 << n)).map(|mask| {
        (0..n)
            .filter(move |k| mask >> k & 1 == 1)
            .map(|k| array[k])
            .collect::<Vec<i64>>()
    });
    let strictly_increasing = |s: &[i64]| s.windows(2).all(|w| w[0] < w[1]);
    match symbol {
        Symbol::F => subsequences
            .filter(|s| strictly_increasing(s))
            .map(|s| s.len() as u64)
            .max()
            .unwrap_or(0),
        Symbol::G => subsequences
            .filter(|s| strictly_increasing(s))
            .map(|s| (n - s.len()) as u64)
            .min()
            .unwrap_or(n as u64),
        Symbol::H => {
            let mut best = 0usize;
            let mut count = 0u64;
            for s in subsequences {
                if s.is_empty() || !strictly_increasing(&s) {
                    continue;
                }
                match s.len().cmp(&best) {
                    std::cmp::Ordering::Greater => {
                        best = s.len();
                        count = 1;
                    }
                    std::cmp::Ordering::Equal => count += 1,
                    std::cmp::Ordering::Less => {}
                }
            }
            count
        }
        Symbol::I => {
            let bitonic = |s: &[i64]| {
                (0..s.len()).any(|peak| {
                    s[..=peak].windows(2).all(|w| w[0] < w[1])
                        && s[peak..].windows(2).all(|w| w[0] > w[1])
                })
            };
            subsequences
                .filter(|s| !s.is_empty() && bitonic(s))
                .map(|s| s.len() as u64)
                .max()
                .unwrap_or(0)
        }
    }
}
